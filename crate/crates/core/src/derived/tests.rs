use super::*;
use crate::codes::canonical_mus;
use crate::geometry::{pseudoregulus_design, sporadic_design};
use proptest::prelude::*;

fn g() -> Guards {
    Guards::default()
}

fn sporadic_union() -> PointSet {
    let c = sporadic_design(2, &g()).unwrap();
    PointSet::from_system(&c.system, &g()).unwrap()
}

// q = 3, m = 2, k = 2, t = 1: a single scattered line of PG(1, 9)
fn pseudoregulus_union() -> PointSet {
    let t = FieldTower::new(3, 1, 2).unwrap();
    let mus = canonical_mus(&t, 1).unwrap();
    let c = pseudoregulus_design(&t, 1, 1, &mus).unwrap();
    PointSet::from_system(&c.system, &g()).unwrap()
}

#[test]
fn sporadic_union_is_two_intersecting() {
    let s = sporadic_union();
    assert_eq!(s.len(), 126);
    let p = intersection_profile(&s, &g()).unwrap();
    assert_eq!(p.hyperplanes, 273);
    assert_eq!(p.predicted_values, Some([6, 10]));
    assert_eq!(p.histogram, BTreeMap::from([(6, 147), (10, 126)]));
    assert!(p.two_intersection);
}

#[test]
fn full_space_and_empty_set_profiles() {
    let t = FieldTower::new(2, 1, 2).unwrap();
    let all = PointSet::full(&t, 3, &g()).unwrap();
    assert_eq!(all.len(), 21);
    let p = intersection_profile(&all, &g()).unwrap();
    assert_eq!(p.histogram, BTreeMap::from([(5, 21)]));
    let empty = PointSet::from_vectors(&t, 3, &[]).unwrap();
    let p = intersection_profile(&empty, &g()).unwrap();
    assert_eq!(p.histogram, BTreeMap::from([(0, 21)]));
    assert!(!p.two_intersection);
}

#[test]
fn repeated_points_are_rejected() {
    let t = FieldTower::new(3, 1, 2).unwrap();
    let a = vec![FieldElement(1), FieldElement(4)];
    let b = vec![FieldElement(2), t.mul(FieldElement(2), FieldElement(4))];
    let err = PointSet::from_vectors(&t, 2, &[a, b]).unwrap_err();
    assert!(matches!(
        err,
        Error::Precondition {
            name: "multiplicity-free",
            ..
        }
    ));
    let c = pseudoregulus_design(&t, 1, 1, &canonical_mus(&t, 1).unwrap()).unwrap();
    let u = c.system.spaces()[0].clone();
    let doubled = System::new(&t, 2, vec![u.clone(), u]).unwrap();
    assert!(PointSet::from_system(&doubled, &g()).is_err());
}

#[test]
fn pseudoregulus_graph_is_strongly_regular() {
    let s = pseudoregulus_union();
    assert_eq!(s.len(), 4);
    let want = SrgParams {
        v: 81,
        k: 32,
        lambda: 13,
        mu: 12,
    };
    for method in [SrgMethod::MatrixIdentity, SrgMethod::NeighborCount] {
        let (graph, r) = build_srg(&s, method, &g()).unwrap();
        assert!(graph.is_symmetric());
        assert_eq!(r.computed, want);
        assert_eq!(r.predicted, Some(want));
        assert!(r.strongly_regular && r.verdict, "{r:?}");
        assert!(r.computed.feasible());
    }
}

#[test]
fn single_point_gives_disjoint_cliques() {
    let t = FieldTower::new(3, 1, 2).unwrap();
    let s = PointSet::from_vectors(&t, 2, &[vec![FieldElement(1), FieldElement(0)]]).unwrap();
    for method in [SrgMethod::MatrixIdentity, SrgMethod::NeighborCount] {
        let (graph, r) = build_srg(&s, method, &g()).unwrap();
        assert_eq!(r.computed.k, 8);
        assert_eq!(r.computed.lambda, 7);
        assert!(!r.strongly_regular && !r.verdict);
        let w = r.witness.unwrap();
        assert_eq!(w.kind, "disconnected");
        assert_eq!(graph.common(w.vertices[0], w.vertices[1]), 0);
        assert!(r.predicted.is_none());
    }
}

#[test]
fn lattice_graph_and_a_refuted_graph() {
    // two points of PG(1, 9): the 9 x 9 rook's graph
    let t = FieldTower::new(3, 1, 2).unwrap();
    let e = |i: usize, k: usize| {
        let mut v = vec![FieldElement::ZERO; k];
        v[i] = FieldElement::ONE;
        v
    };
    let s = PointSet::from_vectors(&t, 2, &[e(0, 2), e(1, 2)]).unwrap();
    let (_, r) = build_srg(&s, SrgMethod::MatrixIdentity, &g()).unwrap();
    assert!(r.strongly_regular);
    assert_eq!(
        r.computed,
        SrgParams {
            v: 81,
            k: 16,
            lambda: 7,
            mu: 2
        }
    );
    assert!(!r.verdict);

    // two points of PG(2, 4) meet lines in 0, 1 or 2 points
    let t = FieldTower::new(2, 1, 2).unwrap();
    let s = PointSet::from_vectors(&t, 3, &[e(0, 3), e(1, 3)]).unwrap();
    assert_eq!(intersection_profile(&s, &g()).unwrap().histogram.len(), 3);
    for method in [SrgMethod::MatrixIdentity, SrgMethod::NeighborCount] {
        let (graph, r) = build_srg(&s, method, &g()).unwrap();
        assert!(!r.strongly_regular && !r.verdict);
        let w = r.witness.clone().unwrap();
        assert_eq!(w.kind, "mu");
        assert_eq!(graph.common(w.vertices[0], w.vertices[1]) as u64, w.found);
        assert_ne!(w.found, w.expected);
    }
}

#[test]
fn graph_guard() {
    let s = sporadic_union();
    let small = Guards {
        graph_vertices: 1000,
        ..g()
    };
    let err = build_srg(&s, SrgMethod::MatrixIdentity, &small).unwrap_err();
    assert!(matches!(
        err,
        Error::GuardExceeded {
            guard: "graph_vertices",
            ..
        }
    ));
}

#[test]
fn two_weight_codes() {
    let s = pseudoregulus_union();
    let (code, r) = two_weight_code(&s, &g()).unwrap();
    assert_eq!(code.length, 4);
    assert_eq!(r.dimension, 2);
    assert_eq!(r.nonzero_weights, vec![(3, 32), (4, 48)]);
    assert!(r.verdict);

    let s = sporadic_union();
    let (code, r) = two_weight_code(&s, &g()).unwrap();
    assert_eq!((code.length, r.dimension), (126, 3));
    assert_eq!(r.nonzero_weights, vec![(116, 1890), (120, 2205)]);
    let p = r.predicted.unwrap();
    assert_eq!((p.h1, p.h0, p.d), (126, 147, 116));
    assert!(r.verdict);
}

#[test]
fn weights_match_hyperplane_intersections_pointwise() {
    let s = sporadic_union();
    let (code, _) = two_weight_code(&s, &g()).unwrap();
    let t = s.tower().clone();
    let gen = code.generator();
    let prof = intersection_profile(&s, &g()).unwrap();
    for i in 0..linalg::projective_count(t.order(), 3) {
        let x = linalg::leading_one_vector(&t, 3, i);
        // the codeword xG computed entry by entry
        let word: Vec<FieldElement> = (0..code.length)
            .map(|j| {
                (0..3).fold(FieldElement::ZERO, |acc, r| {
                    t.add(acc, t.mul(x[r], gen[r][j]))
                })
            })
            .collect();
        let weight = word.iter().filter(|e| !e.is_zero()).count();
        assert_eq!(weight, s.len() - s.hyperplane_count(&x));
    }
    for (&i, &c) in &prof.histogram {
        assert_eq!(code.count(s.len() - i), c * (t.order() as u128 - 1));
    }
}

#[test]
fn sporadic_prediction_values() {
    let p = DesignParameters::infer(2, 4, 3, 126).unwrap();
    assert_eq!(p.t, 2);
    assert_eq!(
        p.srg(),
        Some(SrgParams {
            v: 4096,
            k: 1890,
            lambda: 874,
            mu: 870
        })
    );
    assert!(DesignParameters::infer(2, 4, 3, 125).is_none());
    assert!(DesignParameters::infer(2, 3, 3, 14).is_none());
}

proptest! {
    #[test]
    fn predicted_parameters_are_consistent(q in prop::sample::select(vec![2u64, 3, 4, 5, 7]), m in 2u32..5, k in 2usize..5, t in 1u64..8) {
        prop_assume!((m as usize * k) % 2 == 0);
        let unit = (q.pow(m * k as u32 / 2) - 1) / (q - 1);
        let size = (t * unit) as usize;
        if let Some(p) = DesignParameters::infer(q, m, k, size) {
            prop_assert_eq!(p.t, t);
            let qm = q.pow(m) as u128;
            let hyper = ((q as u128).pow(m * k as u32) - 1) / (qm - 1);
            if let Some(tw) = p.two_weight() {
                prop_assert_eq!(tw.h0 + tw.h1, hyper);
                // each point lies on (Q^{k-1}-1)/(Q-1) hyperplanes
                let per_point = (qm.pow(k as u32 - 1) - 1) / (qm - 1);
                prop_assert_eq!(tw.h0 * p.w0 as u128 + tw.h1 * p.w1 as u128, size as u128 * per_point);
            }
            if let Some(srg) = p.srg() {
                prop_assert!(srg.feasible());
            }
        }
    }
}
