use super::*;
use proptest::prelude::*;

fn tower(p: u64, e: u32, m: u32) -> Arc<FieldTower> {
    FieldTower::new(p, e, m).unwrap()
}

#[test]
fn f4_basics() {
    let t = tower(2, 1, 2);
    assert_eq!(t.top_modulus(), &[1, 1, 1]);
    let g = t.generator();
    assert_eq!(g, FieldElement(2));
    assert_eq!(t.rel_trace(g), FieldElement::ONE);
    assert_eq!(t.norm(g), FieldElement::ONE);
    assert_eq!(t.mul(g, g), FieldElement(3));
}

#[test]
fn rejects_bad_parameters() {
    assert_eq!(FieldTower::new(4, 1, 2).unwrap_err(), Error::NotPrime(4));
    assert!(matches!(
        FieldTower::new(2, 1, 49),
        Err(Error::FieldTooLarge { .. })
    ));
    assert!(FieldTower::new(3, 1, 0).is_err());
    let t = tower(3, 1, 4);
    assert!(t.rel_norm(FieldElement(5), 3).is_err());
    assert!(t.subfield_member(FieldElement(5), 3).is_err());
}

#[test]
fn table_and_polynomial_multiplication_agree() {
    for (p, e, m) in [(2, 1, 6), (3, 1, 4), (2, 2, 3), (5, 1, 2), (3, 2, 2)] {
        let t = tower(p, e, m);
        for a in t.elements().step_by(7) {
            for b in t.elements().step_by(5) {
                assert_eq!(t.mul(a, b), t.mul_poly(a, b), "p={p} e={e} m={m}");
            }
        }
    }
}

#[test]
fn generator_has_full_order() {
    for (p, e, m) in [(2, 1, 4), (3, 1, 2), (2, 2, 2), (7, 1, 2)] {
        let t = tower(p, e, m);
        let g = t.generator();
        let mut x = g;
        let mut k = 1;
        while x != FieldElement::ONE {
            x = t.mul(x, g);
            k += 1;
        }
        assert_eq!(k, t.order() - 1);
        // smallest such element
        assert!((1..g.0).all(|c| !t.is_primitive(FieldElement(c))));
    }
}

#[test]
fn base_field_embedding_for_composite_q() {
    let t = tower(2, 2, 3);
    assert_eq!(t.q(), 4);
    assert_eq!(t.base_modulus(), &[1, 1, 1]);
    let th = t.theta();
    // theta^2 + theta + 1 = 0
    let v = t.add(t.add(t.mul(th, th), th), FieldElement::ONE);
    assert!(v.is_zero());
    // F_q elements are exactly the fixed points of x -> x^q
    let fixed: Vec<FieldElement> = t.elements().filter(|&x| t.frobenius(x, 1) == x).collect();
    let mut emb: Vec<FieldElement> = (0..4).map(|c| t.embed_base(c)).collect();
    emb.sort();
    assert_eq!(fixed, emb);
    // base field tables agree with tower arithmetic
    let b = t.base();
    for x in 0..4 {
        for y in 0..4 {
            assert_eq!(
                t.embed_base(b.mul(x, y)),
                t.mul(t.embed_base(x), t.embed_base(y))
            );
            assert_eq!(
                t.embed_base(b.add(x, y)),
                t.add(t.embed_base(x), t.embed_base(y))
            );
        }
    }
}

#[test]
fn coordinates_round_trip() {
    for (p, e, m) in [(3, 1, 3), (2, 2, 3), (3, 2, 2)] {
        let t = tower(p, e, m);
        for x in t.elements() {
            let c = t.fq_coords(x);
            assert_eq!(c.len(), m as usize);
            assert!(c.iter().all(|&ci| ci < t.q()));
            assert_eq!(t.from_fq_coords(&c), x);
        }
    }
}

#[test]
fn subfields_have_expected_sizes() {
    let t = tower(2, 1, 6);
    for r in [1, 2, 3, 6] {
        let s = t.subfield_elements(r).unwrap();
        assert_eq!(s.len() as u64, 2u64.pow(r));
        let members = t
            .elements()
            .filter(|&x| t.subfield_member(x, r).unwrap())
            .count();
        assert_eq!(members, s.len());
    }
}

#[test]
fn norm_and_trace_land_in_base_field() {
    let t = tower(3, 1, 4);
    for x in t.elements() {
        assert!(t.base_index(t.norm(x)).is_some());
        assert!(t.base_index(t.rel_trace(x)).is_some());
        let n2 = t.rel_norm(x, 2).unwrap();
        assert!(t.subfield_member(n2, 2).unwrap());
    }
    // the norm is surjective onto F_q^* with fibres of equal size
    let mut counts = [0usize; 3];
    for x in t.elements().skip(1) {
        counts[t.base_index(t.norm(x)).unwrap() as usize] += 1;
    }
    assert_eq!(counts, [0, 40, 40]);
}

#[test]
fn partial_norm_matches_definition() {
    let t = tower(3, 1, 3);
    let mu = FieldElement(7);
    assert_eq!(t.partial_norm(mu, 0), FieldElement::ONE);
    assert_eq!(t.partial_norm(mu, 1), mu);
    assert_eq!(t.partial_norm(mu, 3), t.norm(mu));
}

#[test]
fn large_field_without_tables() {
    let t = tower(7, 1, 12);
    assert!(t.tables.is_none());
    let a = FieldElement(123_456_789);
    let b = FieldElement(987_654_321);
    let ab = t.mul(a, b);
    assert_eq!(t.mul(ab, t.inv(b)), a);
    assert_eq!(t.frobenius(a, 3), t.pow(a, 343));
    assert_eq!(t.pow(a, (t.order() - 1) as u128), FieldElement::ONE);
}

#[test]
fn subfield_embedding_is_a_homomorphism() {
    let small = tower(2, 1, 4);
    let large = tower(2, 1, 12);
    let emb = SubfieldEmbedding::new(small.clone(), large.clone()).unwrap();
    assert_eq!(emb.degree(), 3);
    for a in small.elements().step_by(3) {
        for b in small.elements().step_by(5) {
            assert_eq!(
                emb.embed(small.mul(a, b)),
                large.mul(emb.embed(a), emb.embed(b))
            );
            assert_eq!(
                emb.embed(small.add(a, b)),
                large.add(emb.embed(a), emb.embed(b))
            );
        }
        assert!(large.subfield_member(emb.embed(a), 4).unwrap());
    }
    for x in large.elements().step_by(17) {
        let c = emb.coords(x);
        assert_eq!(emb.combine(&c), x);
    }
    assert!(SubfieldEmbedding::new(tower(2, 1, 5), large).is_err());
}

proptest! {
    #[test]
    fn field_axioms(a in 0u64..6561, b in 0u64..6561, c in 0u64..6561) {
        let t = FieldTower::new(3, 1, 8).unwrap();
        let (a, b, c) = (FieldElement(a), FieldElement(b), FieldElement(c));
        prop_assert_eq!(t.mul(a, t.add(b, c)), t.add(t.mul(a, b), t.mul(a, c)));
        prop_assert_eq!(t.add(a, t.neg(a)), FieldElement::ZERO);
        prop_assert_eq!(t.sub(t.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(t.mul(a, t.inv(a)), FieldElement::ONE);
        }
    }

    #[test]
    fn frobenius_is_additive_and_multiplicative(a in 0u64..4096, b in 0u64..4096, s in 0u32..6) {
        let t = FieldTower::new(2, 2, 6).unwrap();
        let (a, b) = (FieldElement(a), FieldElement(b));
        prop_assert_eq!(t.frobenius(t.add(a, b), s), t.add(t.frobenius(a, s), t.frobenius(b, s)));
        prop_assert_eq!(t.frobenius(t.mul(a, b), s), t.mul(t.frobenius(a, s), t.frobenius(b, s)));
        prop_assert_eq!(t.norm(t.mul(a, b)), t.mul(t.norm(a), t.norm(b)));
        prop_assert_eq!(t.rel_trace(t.add(a, b)), t.add(t.rel_trace(a), t.rel_trace(b)));
    }
}
