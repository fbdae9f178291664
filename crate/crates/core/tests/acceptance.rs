//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//! Run with `cargo test --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use monadic_kripke::enumeration::{int_frames, ms4_frames, enumerate_frames, EnumerationConfig, Filter};
use monadic_kripke::frames::{samples, Frame, FrameKind, KripkeFrame, Ms4Frame, Relation};
use monadic_kripke::functors::{sigma, skeleton};
use monadic_kripke::morphisms::{enumerate_morphisms, enumerate_reductions, lift_reduction};
use monadic_kripke::semantics::{frame_validates, subformula_truth_sets, upsets, Valuation, ValidityOptions};
use monadic_kripke::syntax::{corpus, godel_translate, CorpusName};
use monadic_kripke::workbench::{run_experiment, translation_formulas};

type Check = fn() -> Result<String, String>;

struct Criterion {
    name: &'static str,
    limit: Duration,
    check: Check,
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn experiment(id: &str, n: Option<usize>, target: Option<usize>) -> Result<usize, String> {
    let report = run_experiment(id, n, target).map_err(|e| e.to_string())?;
    ensure(report.passed(), || format!("experiment {id} failed: {:?}", report.failures))?;
    Ok(report.instances)
}

fn set(xs: &[usize]) -> BTreeSet<usize> {
    xs.iter().copied().collect()
}

fn counterexample() -> Result<String, String> {
    // F₁: a < b > c with Q-classes {a,b}, {c}; F₂: u < v, Q total
    let r1 = vec![vec![true, true, false], vec![false, true, false], vec![false, true, true]];
    let q1 = vec![vec![true, true, false], vec![true, true, false], vec![true, true, true]];
    let r2 = vec![vec![true, true], vec![false, true]];
    let q2 = vec![vec![true, true], vec![true, true]];
    ensure(is_int_frame(&r1, &q1) && is_int_frame(&r2, &q2), || "sample frames invalid".into())?;
    let (lr, lq) = mat_of(&samples::f1());
    ensure(lr == r1 && lq == q1, || "library F1 differs".into())?;
    let f = [0usize, 1, 1];
    let (e1, e2) = (sym_part(&q1), sym_part(&q2));
    let c = 2;
    let e_fc: Vec<usize> = (0..2).filter(|&y| e2[f[c]][y]).collect();
    let f_e_c: BTreeSet<usize> = (0..3).filter(|&z| e1[c][z]).map(|z| f[z]).collect();
    let r_f_e_c: Vec<usize> = (0..2).filter(|&y| f_e_c.iter().any(|&w| r2[y][w])).collect();
    ensure(set(&e_fc) == set(&[0, 1]), || format!("E_Q2[f(c)] = {e_fc:?}"))?;
    ensure(f_e_c == set(&[1]), || format!("f E_Q1[c] = {f_e_c:?}"))?;
    ensure(set(&r_f_e_c) == set(&[0, 1]), || format!("R2^-1 f E_Q1[c] = {r_f_e_c:?}"))?;
    let mipc = p_morphism(&f, &r1, &r2) && p_morphism(&f, &q1, &q2) && back_condition(&f, &r2, &q1, &q2);
    let ms4 = p_morphism(&f, &r1, &r2) && p_morphism(&f, &e1, &e2);
    ensure(mipc && !ms4, || format!("oracle: mipc {mipc}, sigma ms4 {ms4}"))?;
    let instances = experiment("counterexample", None, None)?;
    ensure(instances == 1, || format!("{instances} instances"))?;
    Ok("f is an MIPC-morphism, sigma f is not; E_Q2[f(c)] = {u,v}, f E_Q1[c] = {v}, R2^-1 f E_Q1[c] = {u,v}".into())
}

fn casari_clean() -> Result<String, String> {
    let casari = corpus(CorpusName::MonadicCasari).remove(0);
    let frames = int_frames(4);
    for f in &frames {
        let (r, q) = mat_of(f);
        let lib = frame_validates(f, &casari, ValidityOptions::default()).map_err(|e| e.to_string())?;
        let oracle = valid(Reading::Intuitionistic, &r, &q, &casari);
        ensure(lib == oracle, || format!("model checkers disagree on {f:?}"))?;
        ensure(lib == clean(&r, &q), || format!("Casari {lib} but clean {} on {f:?}", clean(&r, &q)))?;
    }
    experiment("clean-casari", Some(4), None)?;
    let valid_count = frames.iter().filter(|f| {
        let (r, q) = mat_of(*f);
        clean(&r, &q)
    });
    Ok(format!("{} frames, {} with clean clusters, zero disagreements", frames.len(), valid_count.count()))
}

fn grz() -> Result<String, String> {
    let grz = corpus(CorpusName::Grz).remove(0);
    let mut orders = 0;
    for n in 1..=4 {
        for r in monadic_kripke::enumeration::enumerate_quasi_orders(n) {
            orders += 1;
            let g = Ms4Frame::with_default_names(r.clone(), Relation::identity(n)).map_err(|e| e.to_string())?;
            let (rm, em) = mat_of(&g);
            let max_check = monadic_kripke::frames::grz_max_check(&r);
            let anti = antisymmetric(&rm);
            let lib = frame_validates(&g, &grz, ValidityOptions::default()).map_err(|e| e.to_string())?;
            let oracle = valid(Reading::Modal, &rm, &em, &grz);
            ensure(max_check == anti && anti == lib && lib == oracle, || {
                format!("max {max_check}, antisym {anti}, grz {lib}, oracle {oracle} on {g:?}")
            })?;
        }
    }
    experiment("grz-finite", Some(4), None)?;
    Ok(format!("{orders} quasi-orders, zero disagreements"))
}

fn roundtrips() -> Result<String, String> {
    let ints = int_frames(4);
    for f in &ints {
        let (skel, pi) = skeleton(&sigma(f));
        ensure(pi.classes() == f.len() && (0..f.len()).all(|x| pi.class_of(x) == x), || {
            format!("classes of skeleton(sigma F) are not singletons for {f:?}")
        })?;
        ensure(mat_of(&skel) == mat_of(f), || format!("x -> {{x}} is not an isomorphism for {f:?}"))?;
    }
    let grz: Vec<Ms4Frame> = ms4_frames(4).into_iter().filter(|g| antisymmetric(&mat_of(g).0)).collect();
    for g in &grz {
        let (skel, pi) = skeleton(g);
        ensure((0..g.len()).all(|x| pi.class_of(x) == x) && pi.classes() == g.len(), || {
            format!("E_R-classes are not singletons for {g:?}")
        })?;
        ensure(mat_of(&sigma(&skel)) == mat_of(g), || format!("{{x}} -> x is not an isomorphism for {g:?}"))?;
    }
    experiment("roundtrips", Some(4), None)?;
    Ok(format!("{} int frames, {} MGrz frames, singleton-class witness throughout", ints.len(), grz.len()))
}

fn e_eqe() -> Result<String, String> {
    let mut grz = 0;
    let mut witnesses = Vec::new();
    for g in ms4_frames(4) {
        let (r, e) = mat_of(&g);
        let recovered = sym_part(&compose(&r, &e)) == e;
        if antisymmetric(&r) {
            grz += 1;
            ensure(recovered, || format!("E differs from E_(Q_E) on {g:?}"))?;
        } else if !recovered {
            witnesses.push(g);
        }
    }
    ensure(!witnesses.is_empty(), || "no non-MGrz witness found".into())?;
    let (r, e) = mat_of(&samples::cluster_ms4());
    ensure(sym_part(&compose(&r, &e)) != e, || "two-point cluster is not a witness".into())?;
    experiment("e-eqe", Some(4), None)?;
    Ok(format!("{grz} MGrz frames recover E; {} non-MGrz witnesses", witnesses.len()))
}

fn translation() -> Result<String, String> {
    let formulas = translation_formulas();
    ensure(formulas.len() == 9 + 1 + 200, || format!("{} formulas", formulas.len()))?;
    let translated: Vec<_> = formulas.iter().map(|f| godel_translate(f).expect("intuitionistic")).collect();
    let frames = ms4_frames(3);
    let mut checks = 0;
    for g in &frames {
        let (skel, _) = skeleton(g);
        let (sr, sq) = mat_of(&skel);
        let (gr, ge) = mat_of(g);
        for (phi, t) in formulas.iter().zip(&translated) {
            checks += 1;
            let lhs = valid(Reading::Intuitionistic, &sr, &sq, phi);
            let rhs = valid(Reading::Modal, &gr, &ge, t);
            ensure(lhs == rhs, || format!("{phi} disagrees on {g:?}"))?;
        }
    }
    let instances = experiment("translation", Some(3), None)?;
    ensure(instances == checks, || format!("experiment saw {instances}, oracle {checks}"))?;
    Ok(format!("{} frames x {} formulas, zero disagreements", frames.len(), formulas.len()))
}

fn sigma_functor() -> Result<String, String> {
    let frames = int_frames(3);
    let mut checked = 0;
    let mut witnesses = 0;
    for a in &frames {
        for b in &frames {
            let ((r1, q1), (r2, q2)) = (mat_of(a), mat_of(b));
            let both_clean = clean(&r1, &q1) && clean(&r2, &q2);
            let mut oracle = Vec::new();
            for f in all_maps(a.len(), b.len()) {
                if !(p_morphism(&f, &r1, &r2) && p_morphism(&f, &q1, &q2) && back_condition(&f, &r2, &q1, &q2)) {
                    continue;
                }
                let sigma_ok = p_morphism(&f, &sym_part(&q1), &sym_part(&q2));
                if both_clean {
                    checked += 1;
                    ensure(sigma_ok, || format!("sigma {f:?} fails between clean {a:?} and {b:?}"))?;
                } else if !sigma_ok {
                    witnesses += 1;
                }
                oracle.push(f);
            }
            let lib: Vec<Vec<usize>> = enumerate_morphisms(a, b)
                .map_err(|e| e.to_string())?
                .into_iter()
                .map(|f| f.image().to_vec())
                .collect();
            ensure(lib == oracle, || format!("morphism lists differ for {a:?} -> {b:?}"))?;
        }
    }
    ensure(witnesses > 0, || "no failure witness among non-clean frames".into())?;
    let instances = experiment("sigma-functor", Some(3), None)?;
    ensure(instances == checked, || format!("experiment saw {instances}, oracle {checked}"))?;
    Ok(format!("{checked} morphisms between clean frames preserved; {witnesses} failure witnesses, including the three-point map"))
}

fn lifting() -> Result<String, String> {
    let hs = ms4_frames(4);
    let targets: Vec<_> = int_frames(3)
        .into_iter()
        .filter(|f| {
            let (r, q) = mat_of(f);
            clean(&r, &q)
        })
        .collect();
    let mut triples = 0;
    for h in &hs {
        let (skel, pi) = skeleton(h);
        let (hr, he) = mat_of(h);
        for t in &targets {
            let (sr, se) = mat_of(&sigma(t));
            for f in enumerate_reductions(&skel, t).map_err(|e| e.to_string())? {
                triples += 1;
                let g = lift_reduction(h, t, &f).map_err(|e| format!("{e} for {h:?} -> {t:?} via {:?}", f.image()))?;
                let expected: Vec<usize> = (0..h.len()).map(|y| f.apply(pi.class_of(y))).collect();
                ensure(g.image() == expected.as_slice(), || "g is not f after the quotient".into())?;
                ensure(
                    onto(g.image(), t.len()) && p_morphism(g.image(), &hr, &sr) && p_morphism(g.image(), &he, &se),
                    || format!("oracle rejects g = {:?} for {h:?}", g.image()),
                )?;
            }
        }
    }
    let instances = experiment("lifting", Some(4), Some(3))?;
    ensure(instances == triples, || format!("experiment saw {instances}, oracle {triples}"))?;
    Ok(format!("{triples} triples over {} frames H and {} clean targets", hs.len(), targets.len()))
}

/// Brute force: every relation pair on up to 3 points, checked with the
/// naive validators and deduplicated by naive canonical forms.
fn enumeration() -> Result<String, String> {
    let mut summary = Vec::new();
    for n in 1..=3usize {
        let mut oracle_int = BTreeSet::new();
        let mut oracle_ms4 = BTreeSet::new();
        for a in 0..1u32 << (n * n) {
            let r = from_bits(n, a);
            if !reflexive(&r) || !transitive(&r) {
                continue;
            }
            for b in 0..1u32 << (n * n) {
                let s = from_bits(n, b);
                if is_int_frame(&r, &s) {
                    oracle_int.insert(canon(&r, &s));
                }
                if is_ms4_frame(&r, &s) {
                    oracle_ms4.insert(canon(&r, &s));
                }
            }
        }
        let keys = |frames: Vec<Frame>| -> Vec<Vec<bool>> {
            frames
                .into_iter()
                .filter(|f| f.len() == n)
                .map(|f| match f {
                    Frame::Int(x) => mat_of(&x),
                    Frame::Ms4(x) => mat_of(&x),
                })
                .map(|(r, s)| canon(&r, &s))
                .collect()
        };
        for (kind, oracle) in [(FrameKind::Int, &oracle_int), (FrameKind::Ms4, &oracle_ms4)] {
            let emitted = keys(enumerate_frames(&EnumerationConfig::new(kind, n)).map_err(|e| e.to_string())?);
            let distinct: BTreeSet<Vec<bool>> = emitted.iter().cloned().collect();
            ensure(distinct.len() == emitted.len(), || format!("{kind} n={n}: isomorphic duplicates"))?;
            ensure(&distinct == oracle, || {
                format!("{kind} n={n}: emitted {} classes, oracle {}", distinct.len(), oracle.len())
            })?;
        }
        let grz_oracle = oracle_ms4.iter().filter(|k| {
            let r: Mat = (0..n).map(|i| k[i * n..(i + 1) * n].to_vec()).collect();
            antisymmetric(&r)
        });
        let grz_cfg = EnumerationConfig::new(FrameKind::Ms4, n).with_filter(Filter::Mgrz);
        let grz_emitted = keys(enumerate_frames(&grz_cfg).map_err(|e| e.to_string())?);
        let grz_count = grz_oracle.count();
        ensure(grz_emitted.len() == grz_count, || format!("mgrz n={n}: {} vs {grz_count}", grz_emitted.len()))?;
        summary.push(format!("n={n}: int {} ms4 {} mgrz {grz_count}", oracle_int.len(), oracle_ms4.len()));
    }
    Ok(summary.join("; "))
}

fn soundness() -> Result<String, String> {
    let opts = ValidityOptions::default();
    let ints = int_frames(4);
    let mipc = corpus(CorpusName::MipcAxioms);
    let mut triples = 0usize;
    for f in &ints {
        for phi in &mipc {
            ensure(frame_validates(f, phi, opts).map_err(|e| e.to_string())?, || format!("{phi} fails on {f:?}"))?;
        }
        // persistence, over every upset valuation of p and q
        let ups = upsets(f.r());
        for &p in &ups {
            for &q in &ups {
                let v = Valuation::new().with("p", p).with("q", q);
                for phi in &mipc {
                    for (node, set) in subformula_truth_sets(f, &v, phi).map_err(|e| e.to_string())? {
                        triples += 1;
                        ensure(f.r().image(set).is_subset(set), || format!("{node:?} not an upset on {f:?}"))?;
                    }
                }
            }
        }
    }
    let ms4 = ms4_frames(4);
    let axioms = corpus(CorpusName::Ms4Axioms);
    for g in &ms4 {
        for phi in &axioms {
            ensure(frame_validates(g, phi, opts).map_err(|e| e.to_string())?, || format!("{phi} fails on {g:?}"))?;
        }
    }
    Ok(format!(
        "{} MIPC axioms on {} int frames, {} MS4 axioms on {} ms4 frames, {triples} persistence triples",
        mipc.len(),
        ints.len(),
        axioms.len(),
        ms4.len()
    ))
}

const CRITERIA: [Criterion; 10] = [
    Criterion { name: "counterexample reproduction", limit: Duration::from_secs(1), check: counterexample },
    Criterion { name: "Casari iff clean clusters, n <= 4", limit: Duration::from_secs(60), check: casari_clean },
    Criterion { name: "finite Grz characterization, n <= 4", limit: Duration::from_secs(60), check: grz },
    Criterion { name: "round trips, n <= 4", limit: Duration::from_secs(60), check: roundtrips },
    Criterion { name: "E = E_(Q_E) on MGrz frames, n <= 4", limit: Duration::from_secs(30), check: e_eqe },
    Criterion { name: "translation correspondence, n <= 3", limit: Duration::from_secs(300), check: translation },
    Criterion { name: "sigma functoriality, n <= 3", limit: Duration::from_secs(120), check: sigma_functor },
    Criterion { name: "lifting claim, |H| <= 4, |F| <= 3", limit: Duration::from_secs(300), check: lifting },
    Criterion { name: "enumeration against brute force, n <= 3", limit: Duration::from_secs(120), check: enumeration },
    Criterion { name: "soundness corpora and persistence, n <= 4", limit: Duration::from_secs(300), check: soundness },
];

fn main() -> ExitCode {
    let mut failed = 0;
    for (i, c) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let result = (c.check)();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(_) if elapsed >= c.limit => ("FAIL", format!("exceeded {:?}", c.limit)),
            Ok(detail) => ("PASS", detail),
            Err(why) => ("FAIL", why),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} criterion {:>2}: {} [{:.2?}] {detail}", i + 1, c.name, elapsed);
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
