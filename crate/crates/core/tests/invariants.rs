//! Exhaustive checks of module invariants over small enumerated frames.

mod common;

use common::*;
use monadic_kripke::enumeration::{int_frames, is_m_plus_grz, m_plus_grz_shortcut, ms4_frames};
use monadic_kripke::frames::{has_clean_clusters, samples, IntFrame, KripkeFrame};
use monadic_kripke::functors::{find_isomorphism, sigma, skeleton, skeleton_map};
use monadic_kripke::morphisms::{
    condition4, condition4_eform, enumerate_morphisms, is_mipc_morphism, is_p_morphism, FrameMap,
};
use monadic_kripke::semantics::{frame_validates, truth_set_with, upsets, ExistsClause, Valuation, ValidityOptions};
use monadic_kripke::syntax::{corpus, parse, CorpusName, Language};

fn all_frame_maps(a: &IntFrame, b: &IntFrame) -> Vec<FrameMap> {
    all_maps(a.len(), b.len())
        .into_iter()
        .map(|f| FrameMap::new(f, b.len()).unwrap())
        .collect()
}

#[test]
fn eform_matches_condition4_on_p_morphisms() {
    let frames = int_frames(3);
    let mut compared = 0;
    for a in &frames {
        for b in &frames {
            for f in all_frame_maps(a, b) {
                if is_p_morphism(&f, a.r(), b.r()) && is_p_morphism(&f, a.q(), b.q()) {
                    compared += 1;
                    assert_eq!(condition4(&f, a, b), condition4_eform(&f, a, b), "{a:?} -> {b:?} via {f:?}");
                }
            }
        }
    }
    assert!(compared > 100);
}

/// Read as an equality, the E-form already fails for an identity map.
#[test]
fn eform_equality_reading_fails_for_identity() {
    let f = samples::f1();
    let id = FrameMap::identity(3);
    assert!(condition4(&id, &f, &f));
    let eq = f.eq();
    let lhs = eq.successors(0);
    let rhs = f.r().preimage(id.apply_set(eq.successors(0)));
    assert_ne!(lhs, rhs);
}

#[test]
fn ms4_morphisms_induce_mipc_morphisms_of_skeletons() {
    let frames = ms4_frames(3);
    let mut seen = 0;
    for a in &frames {
        for b in &frames {
            let (ka, _) = skeleton(a);
            let (kb, _) = skeleton(b);
            for f in enumerate_morphisms(a, b).unwrap() {
                seen += 1;
                let g = skeleton_map(&f, a, b).unwrap();
                assert!(is_mipc_morphism(&g, &ka, &kb), "{a:?} -> {b:?} via {f:?}");
            }
        }
    }
    assert!(seen > 0);
}

#[test]
fn exists_clauses_agree_on_enumerated_frames() {
    let formulas = ["exists p", "exists (p & ~ forall q)", "forall exists p -> exists (p | q)"]
        .map(|t| parse(t, Language::Intuitionistic).unwrap());
    for f in int_frames(4) {
        let ups = upsets(f.r());
        for &p in &ups {
            for &q in &ups {
                let v = Valuation::new().with("p", p).with("q", q);
                for phi in &formulas {
                    assert_eq!(
                        truth_set_with(&f, &v, phi, ExistsClause::QPredecessor),
                        truth_set_with(&f, &v, phi, ExistsClause::EqPartner)
                    );
                }
            }
        }
    }
}

#[test]
fn m_plus_grz_shortcut_agrees_with_model_checking() {
    for g in ms4_frames(4) {
        assert_eq!(is_m_plus_grz(&g), m_plus_grz_shortcut(&g), "{g:?}");
    }
}

#[test]
fn skeleton_casari_matches_translated_casari() {
    let casari = corpus(CorpusName::MonadicCasari).remove(0);
    let translated = corpus(CorpusName::CasariTranslated).remove(0);
    let opts = ValidityOptions::default();
    for g in ms4_frames(4) {
        let (skel, _) = skeleton(&g);
        assert_eq!(
            frame_validates(&skel, &casari, opts).unwrap(),
            frame_validates(&g, &translated, opts).unwrap(),
            "{g:?}"
        );
    }
}

#[test]
fn sigma_round_trips_to_an_isomorphic_copy() {
    for f in int_frames(4) {
        let (skel, _) = skeleton(&sigma(&f));
        assert!(find_isomorphism(&f, &skel).is_some());
    }
}

#[test]
fn library_validity_matches_naive_oracle() {
    let formulas = [
        "p | ~p",
        "~ ~ p -> p",
        "forall (p | q) -> forall p | exists q",
        "exists p -> forall exists p",
        "(p -> q) | (q -> p)",
    ]
    .map(|t| parse(t, Language::Intuitionistic).unwrap());
    for f in int_frames(3) {
        let (r, q) = mat_of(&f);
        for phi in &formulas {
            assert_eq!(
                frame_validates(&f, phi, ValidityOptions::default()).unwrap(),
                valid(Reading::Intuitionistic, &r, &q, phi),
                "{phi} on {f:?}"
            );
        }
    }
}

#[test]
fn clean_frames_are_the_m_plus_filter() {
    use monadic_kripke::enumeration::{enumerate_frames, EnumerationConfig, Filter};
    use monadic_kripke::frames::{Frame, FrameKind};
    let cfg = EnumerationConfig::new(FrameKind::Int, 4).with_filter(Filter::MPlus);
    let filtered = enumerate_frames(&cfg).unwrap();
    let clean: Vec<Frame> = int_frames(4).into_iter().filter(has_clean_clusters).map(Frame::Int).collect();
    assert_eq!(filtered, clean);
}
