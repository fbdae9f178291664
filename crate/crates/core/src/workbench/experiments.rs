use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::random::{random_formulas, FormulaShape};
use super::WorkbenchError;
use crate::enumeration::{
    enumerate_frames, enumerate_quasi_orders, int_frames, is_m_plus_grz, ms4_frames, EnumerationConfig, Filter,
};
use crate::frames::{
    er, grz_max_check, has_clean_clusters, is_finite_mgrz, qe, samples, Frame, FrameFile, FrameKind, IntFrame,
    KripkeFrame, Ms4Frame, PointSet, Relation,
};
use crate::functors::{find_isomorphism, is_isomorphism, rho_sigma_is_identity, sigma, sigma_map, skeleton};
use crate::morphisms::{enumerate_morphisms, enumerate_reductions, is_mipc_morphism, is_ms4_morphism, lift_reduction, FrameMap};
use crate::semantics::{countermodel, frame_validates, ValidityOptions};
use crate::syntax::{corpus, godel_translate, parse, print, CorpusName, Formula, Language};

/// Seed of the random formula stream in the `translation` experiment.
pub const TRANSLATION_SEED: u64 = 0x6d69_7063;
pub const TRANSLATION_RANDOM_FORMULAS: usize = 200;

/// Size bounds: `n` for the main enumeration, `target` where a second
/// family of frames is involved. A default of 0 marks an unused slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub n: usize,
    pub target: usize,
}

impl Bounds {
    pub const fn new(n: usize, target: usize) -> Bounds {
        Bounds { n, target }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub id: String,
    pub anchor: String,
    pub instances: usize,
    pub failures: Vec<Value>,
    pub millis: u64,
}

impl ExperimentReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// The report without its wall time, which is the only field that can
    /// vary between runs.
    pub fn stable_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        v.as_object_mut().expect("report is an object").remove("millis");
        v.to_string()
    }
}

pub struct Experiment {
    pub id: &'static str,
    pub anchor: &'static str,
    pub defaults: Bounds,
    run: fn(Bounds) -> Outcome,
}

#[derive(Default)]
struct Outcome {
    instances: usize,
    failures: Vec<Value>,
}

const MAX_BOUND: usize = 5;

pub static EXPERIMENTS: [Experiment; 9] = [
    Experiment {
        id: "counterexample",
        anchor: "an MIPC-morphism between finite frames whose sigma image is not an MS4-morphism",
        defaults: Bounds::new(0, 0),
        run: counterexample,
    },
    Experiment {
        id: "clean-casari",
        anchor: "a finite MIPC-frame validates the monadic Casari formula iff its clusters are clean",
        defaults: Bounds::new(4, 0),
        run: clean_casari,
    },
    Experiment {
        id: "grz-finite",
        anchor: "a finite quasi-order validates grz iff it is a partial order iff every subset lies below its maximal points",
        defaults: Bounds::new(4, 0),
        run: grz_finite,
    },
    Experiment {
        id: "roundtrips",
        anchor: "skeleton after sigma and sigma after skeleton return isomorphic finite frames",
        defaults: Bounds::new(4, 0),
        run: roundtrips,
    },
    Experiment {
        id: "e-eqe",
        anchor: "on finite MGrz-frames E is recovered from Q_E, and antisymmetry is needed for this",
        defaults: Bounds::new(4, 0),
        run: e_eqe,
    },
    Experiment {
        id: "translation",
        anchor: "the skeleton validates a formula iff the frame validates its Goedel translation",
        defaults: Bounds::new(3, 0),
        run: translation,
    },
    Experiment {
        id: "sigma-functor",
        anchor: "sigma sends MIPC-morphisms between clean-cluster frames to MS4-morphisms, and not beyond them",
        defaults: Bounds::new(3, 0),
        run: sigma_functor,
    },
    Experiment {
        id: "lifting",
        anchor: "a reduction of the skeleton of H onto a clean-cluster frame F lifts to a reduction of H onto sigma F",
        defaults: Bounds::new(4, 3),
        run: lifting,
    },
    Experiment {
        id: "companion-witness",
        anchor: "every finite clean-cluster frame is reduced from the skeleton of a finite M+Grz-frame",
        defaults: Bounds::new(4, 0),
        run: companion_witness,
    },
];

pub fn experiment_ids() -> impl Iterator<Item = &'static str> {
    EXPERIMENTS.iter().map(|e| e.id)
}

/// Runs a registered experiment; omitted bounds take the defaults.
pub fn run_experiment(id: &str, n: Option<usize>, target: Option<usize>) -> Result<ExperimentReport, WorkbenchError> {
    let exp = EXPERIMENTS
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| WorkbenchError::UnknownExperiment(id.to_string()))?;
    let bounds = Bounds::new(n.unwrap_or(exp.defaults.n), target.unwrap_or(exp.defaults.target));
    for (bound, used) in [(bounds.n, exp.defaults.n > 0), (bounds.target, exp.defaults.target > 0)] {
        if used && bound == 0 {
            return Err(WorkbenchError::EmptyBound { id: exp.id });
        }
        if bound > MAX_BOUND {
            return Err(WorkbenchError::BoundExceeded {
                id: exp.id,
                bound,
                max: MAX_BOUND,
            });
        }
    }
    let start = Instant::now();
    let outcome = (exp.run)(bounds);
    Ok(ExperimentReport {
        id: exp.id.to_string(),
        anchor: exp.anchor.to_string(),
        instances: outcome.instances,
        failures: outcome.failures,
        millis: start.elapsed().as_millis() as u64,
    })
}

fn frame_json<F: KripkeFrame>(f: &F) -> Value {
    serde_json::to_value(FrameFile::from_frame(f)).expect("frames serialize")
}

fn names_of<F: KripkeFrame>(f: &F, set: PointSet) -> Vec<String> {
    set.iter().map(|x| f.names()[x].clone()).collect()
}

/// Order-preserving parallel map over instances, keeping all failures.
fn sweep<T: Sync>(items: &[T], check: impl Fn(&T) -> Vec<Value> + Sync + Send) -> Vec<Value> {
    items.par_iter().map(check).collect::<Vec<_>>().into_iter().flatten().collect()
}

fn clean_int_frames(n: usize) -> Vec<IntFrame> {
    int_frames(n).into_iter().filter(has_clean_clusters).collect()
}

fn counterexample(_: Bounds) -> Outcome {
    let (a, b) = (samples::f1(), samples::f2());
    let f = FrameMap::new(vec![0, 1, 1], 2).expect("in range");
    let c = 2;
    let e_image = b.eq().successors(f.apply(c));
    let f_e = f.apply_set(a.eq().successors(c));
    let r_f_e = b.r().preimage(f_e);
    let uv = PointSet::full(2);
    let checks = [
        ("f is an MIPC-morphism", is_mipc_morphism(&f, &a, &b), json!(f.image())),
        (
            "sigma f is not an MS4-morphism",
            !is_ms4_morphism(&sigma_map(&f), &sigma(&a), &sigma(&b)),
            json!(f.image()),
        ),
        ("E_Q2[f(c)] = {u,v}", e_image == uv, json!(names_of(&b, e_image))),
        ("f E_Q1[c] = {v}", f_e == PointSet::singleton(1), json!(names_of(&b, f_e))),
        ("R2^-1 f E_Q1[c] = {u,v}", r_f_e == uv, json!(names_of(&b, r_f_e))),
    ];
    Outcome {
        instances: 1,
        failures: checks
            .into_iter()
            .filter(|(_, ok, _)| !ok)
            .map(|(check, _, found)| json!({ "check": check, "found": found }))
            .collect(),
    }
}

fn clean_casari(b: Bounds) -> Outcome {
    let casari = corpus(CorpusName::MonadicCasari).remove(0);
    let frames = int_frames(b.n);
    let mut failures = sweep(&frames, |f| {
        let valid = frame_validates(f, &casari, ValidityOptions::unbounded()).expect("one letter");
        let clean = has_clean_clusters(f);
        if valid == clean {
            return vec![];
        }
        let cm = countermodel(f, &casari, ValidityOptions::unbounded())
            .expect("one letter")
            .map(|c| c.to_json());
        vec![json!({ "frame": frame_json(f), "casari_valid": valid, "clean": clean, "countermodel": cm })]
    });
    let filtered = enumerate_frames(&EnumerationConfig::new(FrameKind::Int, b.n.max(1)).with_filter(Filter::MPlus))
        .expect("bound checked");
    let clean: Vec<Frame> = frames.iter().filter(|f| has_clean_clusters(f)).cloned().map(Frame::Int).collect();
    if b.n > 0 && filtered != clean {
        failures.push(json!({ "check": "m_plus filter", "filtered": filtered.len(), "clean": clean.len() }));
    }
    Outcome {
        instances: frames.len(),
        failures,
    }
}

fn grz_finite(b: Bounds) -> Outcome {
    let grz = corpus(CorpusName::Grz).remove(0);
    let orders: Vec<Relation> = (1..=b.n).flat_map(enumerate_quasi_orders).collect();
    let mut failures = sweep(&orders, |r| {
        let g = Ms4Frame::with_default_names(r.clone(), Relation::identity(r.len())).expect("E = id is valid");
        let (max_check, antisym) = (grz_max_check(r), r.is_antisymmetric());
        let valid = frame_validates(&g, &grz, ValidityOptions::unbounded()).expect("one letter");
        if max_check == antisym && antisym == valid {
            return vec![];
        }
        vec![json!({ "frame": frame_json(&g), "max_check": max_check, "antisymmetric": antisym, "grz_valid": valid })]
    });
    let frames = ms4_frames(b.n);
    failures.extend(sweep(&frames, |g| {
        let bare = Ms4Frame::with_default_names(g.r().clone(), Relation::identity(g.len())).expect("valid");
        let valid = frame_validates(&bare, &grz, ValidityOptions::unbounded()).expect("one letter");
        if valid == is_finite_mgrz(g) {
            return vec![];
        }
        vec![json!({ "frame": frame_json(g), "mgrz": !valid, "grz_valid": valid })]
    }));
    Outcome {
        instances: orders.len() + frames.len(),
        failures,
    }
}

fn roundtrips(b: Bounds) -> Outcome {
    let ints = int_frames(b.n);
    let mut failures = sweep(&ints, |f| {
        let (skel, _) = skeleton(&sigma(f));
        if rho_sigma_is_identity(f) && find_isomorphism(f, &skel).is_some() {
            return vec![];
        }
        vec![json!({ "direction": "skeleton(sigma F)", "frame": frame_json(f) })]
    });
    let grz: Vec<Ms4Frame> = ms4_frames(b.n).into_iter().filter(is_finite_mgrz).collect();
    failures.extend(sweep(&grz, |g| {
        let (skel, pi) = skeleton(g);
        let singletons = pi.classes() == g.len() && (0..g.len()).all(|x| pi.class_of(x) == x);
        let back = sigma(&skel);
        let identity: Vec<usize> = (0..g.len()).collect();
        if singletons && is_isomorphism(g, &back, &identity) && find_isomorphism(g, &back).is_some() {
            return vec![];
        }
        vec![json!({ "direction": "sigma(skeleton G)", "frame": frame_json(g) })]
    }));
    Outcome {
        instances: ints.len() + grz.len(),
        failures,
    }
}

fn recovers_e(g: &Ms4Frame) -> bool {
    er(&qe(g.r(), g.e())).ok().as_ref() == Some(g.e())
}

fn e_eqe(b: Bounds) -> Outcome {
    let (grz, other): (Vec<Ms4Frame>, Vec<Ms4Frame>) = ms4_frames(b.n).into_iter().partition(is_finite_mgrz);
    let mut failures = sweep(&grz, |g| {
        if recovers_e(g) {
            vec![]
        } else {
            vec![json!({ "frame": frame_json(g), "E_QE": er(&qe(g.r(), g.e())).ok().map(|e| e.pairs().map(|(i, j)| [i, j]).collect::<Vec<_>>()) })]
        }
    });
    let cluster = samples::cluster_ms4();
    let witnesses = other.iter().filter(|g| !recovers_e(g)).count();
    if recovers_e(&cluster) {
        failures.push(json!({ "check": "two-point cluster with discrete E is a witness", "frame": frame_json(&cluster) }));
    }
    if b.n >= 2 && witnesses == 0 {
        failures.push(json!({ "check": "some non-MGrz frame fails E = E_{Q_E}", "searched": other.len() }));
    }
    Outcome {
        instances: grz.len() + 1,
        failures,
    }
}

/// The formulas of the `translation` experiment: the MIPC axioms, the
/// monadic Casari formula, then the seeded random stream.
pub fn translation_formulas() -> Vec<Formula> {
    let mut out = corpus(CorpusName::MipcAxioms);
    out.extend(corpus(CorpusName::MonadicCasari));
    out.extend(random_formulas(
        TRANSLATION_SEED,
        TRANSLATION_RANDOM_FORMULAS,
        FormulaShape { letters: 2, max_depth: 4 },
    ));
    out
}

fn translation(b: Bounds) -> Outcome {
    let formulas: Vec<(Formula, Formula)> = translation_formulas()
        .into_iter()
        .map(|f| {
            let t = godel_translate(&f).expect("intuitionistic");
            (f, t)
        })
        .collect();
    let frames = ms4_frames(b.n);
    let opts = ValidityOptions::unbounded();
    let failures = sweep(&frames, |g| {
        let (skel, _) = skeleton(g);
        formulas
            .iter()
            .filter_map(|(phi, t)| {
                let lhs = frame_validates(&skel, phi, opts).expect("within caps");
                let rhs = frame_validates(g, t, opts).expect("within caps");
                (lhs != rhs).then(|| {
                    json!({ "frame": frame_json(g), "formula": print(phi), "skeleton_valid": lhs, "translation_valid": rhs })
                })
            })
            .collect()
    });
    Outcome {
        instances: frames.len() * formulas.len(),
        failures,
    }
}

fn sigma_functor(b: Bounds) -> Outcome {
    let all = int_frames(b.n);
    let pairs: Vec<(&IntFrame, &IntFrame)> = all.iter().flat_map(|x| all.iter().map(move |y| (x, y))).collect();
    let results: Vec<(usize, Vec<Value>, usize)> = pairs
        .par_iter()
        .map(|&(x, y)| {
            let clean = has_clean_clusters(x) && has_clean_clusters(y);
            let (sx, sy) = (sigma(x), sigma(y));
            let mut checked = 0;
            let mut failures = Vec::new();
            let mut witnesses = 0;
            for f in enumerate_morphisms(x, y).expect("within cap") {
                let ok = is_ms4_morphism(&sigma_map(&f), &sx, &sy);
                if clean {
                    checked += 1;
                    if !ok {
                        failures.push(json!({ "source": frame_json(x), "target": frame_json(y), "map": f.image() }));
                    }
                } else if !ok {
                    witnesses += 1;
                }
            }
            (checked, failures, witnesses)
        })
        .collect();
    let mut outcome = Outcome::default();
    let mut witnesses = 0;
    for (checked, failures, w) in results {
        outcome.instances += checked;
        outcome.failures.extend(failures);
        witnesses += w;
    }
    let (a, c) = (samples::f1(), samples::f2());
    let f = FrameMap::new(vec![0, 1, 1], 2).expect("in range");
    if !(is_mipc_morphism(&f, &a, &c) && !is_ms4_morphism(&f, &sigma(&a), &sigma(&c))) {
        outcome.failures.push(json!({ "check": "the three-point map is a failure witness" }));
    }
    if b.n >= 3 && witnesses == 0 {
        outcome.failures.push(json!({ "check": "failure witnesses among non-clean frames" }));
    }
    outcome
}

fn lifting(b: Bounds) -> Outcome {
    let hs = ms4_frames(b.n);
    let targets = clean_int_frames(b.target);
    let results: Vec<(usize, Vec<Value>)> = hs
        .par_iter()
        .map(|h| {
            let (skel, _) = skeleton(h);
            let mut count = 0;
            let mut failures = Vec::new();
            for t in &targets {
                for f in enumerate_reductions(&skel, t).expect("skeleton within cap") {
                    count += 1;
                    if let Err(e) = lift_reduction(h, t, &f) {
                        failures.push(json!({
                            "H": frame_json(h), "F": frame_json(t), "map": f.image(), "error": e.to_string()
                        }));
                    }
                }
            }
            (count, failures)
        })
        .collect();
    let mut outcome = Outcome::default();
    for (count, failures) in results {
        outcome.instances += count;
        outcome.failures.extend(failures);
    }
    outcome
}

fn companion_witness(b: Bounds) -> Outcome {
    let frames = clean_int_frames(b.n);
    let failures = sweep(&frames, |f| {
        let g = sigma(f);
        let (skel, _) = skeleton(&g);
        let m_plus_grz = is_m_plus_grz(&g);
        let reduces = !enumerate_reductions(&skel, f).expect("within cap").is_empty();
        if m_plus_grz && reduces {
            return vec![];
        }
        vec![json!({ "frame": frame_json(f), "m_plus_grz": m_plus_grz, "reduction_found": reduces })]
    });
    Outcome {
        instances: frames.len(),
        failures,
    }
}

/// Parses a formula for the frame kind: intuitionistic for `int`, modal
/// for `ms4`.
pub fn parse_for(kind: FrameKind, text: &str) -> Result<Formula, WorkbenchError> {
    let language = match kind {
        FrameKind::Int => Language::Intuitionistic,
        FrameKind::Ms4 => Language::Modal,
    };
    Ok(parse(text, language)?)
}
