use super::*;
use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tower(p: u64, e: u32, m: u32) -> Arc<FieldTower> {
    FieldTower::new(p, e, m).unwrap()
}

fn lrs_small(k: usize) -> SumRankCode {
    let t = tower(3, 1, 2);
    let mus = canonical_mus(&t, 2).unwrap();
    let betas = canonical_betas(&t, 2).unwrap();
    lrs_code(&t, k, &mus, &betas).unwrap()
}

/// Smallest d violating `mk <= N - d + 1`-type bounds in the two special cases.
fn simple_bound(lens: &[usize], m: usize, k: usize) -> Option<usize> {
    let n1 = lens[0];
    let total: usize = lens.iter().sum();
    if m >= n1 {
        return Some(total + 1 - k);
    }
    if lens.iter().all(|&x| x == n1) {
        let t = lens.len();
        // largest d with m k <= n (t m - d + 1)
        return (1..=t * m).rev().find(|&d| m * k <= n1 * (t * m + 1 - d));
    }
    None
}

#[test]
fn singleton_bound_matches_special_cases() {
    for m in 1..=5 {
        for lens in [
            vec![2, 2],
            vec![3, 1],
            vec![4, 4, 4],
            vec![6, 6],
            vec![2, 2, 1],
            vec![5],
        ] {
            let shape = BlockShape::new(lens.clone()).unwrap();
            let total = shape.total();
            for k in 1..=total {
                if let Some(b) = simple_bound(&lens, m, k) {
                    // the general bound may be unattainable for large k in the
                    // equal-length case; compare only when an admissible d exists
                    if m * k <= lens[0] * lens.len() * m {
                        assert_eq!(
                            singleton_bound(&shape, m, k).unwrap(),
                            b,
                            "m={m} lens={lens:?} k={k}"
                        );
                    }
                }
            }
        }
    }
    // two blocks of length 6 over an extension of degree 4, dimension 3
    assert_eq!(
        singleton_bound(&BlockShape::uniform(2, 6).unwrap(), 4, 3).unwrap(),
        7
    );
    assert_eq!(
        singleton_bound(&BlockShape::uniform(2, 6).unwrap(), 4, 9).unwrap(),
        3
    );
}

#[test]
fn lrs_distances() {
    for (k, d) in [(1, 4), (2, 3), (3, 2)] {
        let c = lrs_small(k);
        let (bd, w) = min_distance_bruteforce(&c, &Guards::default()).unwrap();
        assert_eq!(bd, d);
        assert_eq!(c.weight(&w), d);
        assert!(c.contains(&w));
        assert_eq!(min_distance_geometric(&c, &Guards::default()).unwrap(), d);
        let cert = is_msrd(&c, &Guards::default()).unwrap();
        assert!(cert.is_msrd());
        assert_eq!(cert.bound, d);
    }
}

#[test]
fn formula_matches_enumeration_for_lrs_and_duals() {
    for k in 1..=3 {
        let c = lrs_small(k);
        for code in [c.clone(), dual_code(&c).unwrap()] {
            let bf = weight_distribution_bruteforce(&code, &Guards::default()).unwrap();
            let f = msrd_weight_formula(&code, &Guards::default()).unwrap();
            assert_eq!(bf.counts, f.counts);
            assert_eq!(f.total(), BigUint::from(9u32).pow(code.k() as u32));
        }
    }
}

#[test]
fn formula_reproduces_mds_weights() {
    // a [4,2] MDS code over F_5 (length-one blocks, m = 1): A_3 = 16, A_4 = 8
    let w = msrd_weights(5, 1, 1, 4, 3);
    assert_eq!(
        w,
        vec![1u32, 0, 0, 16, 8]
            .into_iter()
            .map(BigUint::from)
            .collect::<Vec<_>>()
    );
}

#[test]
fn formula_rejects_unequal_shapes_and_non_msrd() {
    let t = tower(2, 1, 2);
    let shape = BlockShape::new(vec![2, 1]).unwrap();
    let c = SumRankCode::from_rows(
        &t,
        shape,
        vec![vec![FieldElement(1), FieldElement(2), FieldElement(3)]],
    )
    .unwrap();
    assert!(matches!(
        msrd_weight_formula(&c, &Guards::default()),
        Err(Error::Precondition {
            name: "equal-block-lengths",
            ..
        })
    ));
    let shape = BlockShape::uniform(2, 2).unwrap();
    let c = SumRankCode::from_rows(
        &t,
        shape,
        vec![vec![
            FieldElement(1),
            FieldElement(0),
            FieldElement(0),
            FieldElement(0),
        ]],
    )
    .unwrap();
    assert!(matches!(
        msrd_weight_formula(&c, &Guards::default()),
        Err(Error::Precondition { name: "msrd", .. })
    ));
}

#[test]
fn double_dual_and_nondegeneracy() {
    let c = lrs_small(2);
    let d = dual_code(&c).unwrap();
    assert_eq!(d.k(), 2);
    assert!(dual_code(&d).unwrap().same_code(&c));
    let rep = is_nondegenerate(&c, &Guards::default()).unwrap();
    assert!(rep.nondegenerate && rep.columns_independent);
    // repeated column inside a block
    let t = tower(3, 1, 2);
    let c = SumRankCode::from_rows(
        &t,
        BlockShape::uniform(2, 2).unwrap(),
        vec![
            vec![
                FieldElement(1),
                FieldElement(1),
                FieldElement(3),
                FieldElement(4),
            ],
            vec![
                FieldElement(0),
                FieldElement(0),
                FieldElement(1),
                FieldElement(7),
            ],
        ],
    )
    .unwrap();
    let rep = is_nondegenerate(&c, &Guards::default()).unwrap();
    assert!(!rep.nondegenerate && !rep.columns_independent);
    let full = lrs_small(4);
    assert!(
        !is_nondegenerate(&full, &Guards::default())
            .unwrap()
            .nondegenerate
    );
}

#[test]
fn tlrs_examples() {
    let t = tower(5, 1, 2);
    let betas = canonical_betas(&t, 2).unwrap();
    // one block with norm 1: any eta of norm != 1 works since km is even
    let mus = canonical_mus(&t, 1).unwrap();
    assert_eq!(t.norm(mus[0]), FieldElement::ONE);
    let eta = t
        .elements()
        .skip(1)
        .find(|&x| t.norm(x) != FieldElement::ONE)
        .unwrap();
    let c = tlrs_code(&t, 2, &mus, &betas, eta).unwrap();
    assert_eq!(c.codeword_count(), 625);
    assert!(is_msrd(&c, &Guards::default()).unwrap().is_msrd());
    // eta = 0 gives back the untwisted code
    let c0 = tlrs_code(&t, 2, &mus, &betas, FieldElement::ZERO).unwrap();
    assert!(c0.same_code(&lrs_code(&t, 2, &mus, &betas).unwrap()));
    // norms {1, 2} generate all of F_5^*, so no nonzero eta is admissible
    let mu2 = t
        .elements()
        .find(|&x| t.norm(x) == FieldElement(2))
        .unwrap();
    let mus2 = [mus[0], mu2];
    assert_eq!(norm_subgroup(&t, &mus2).len(), 4);
    for eta in t.elements().skip(1) {
        assert!(matches!(
            tlrs_code(&t, 2, &mus2, &betas, eta),
            Err(Error::Precondition {
                name: "twist-outside-norm-subgroup",
                ..
            })
        ));
    }
}

#[test]
fn lrs_validation() {
    let t = tower(3, 1, 2);
    let betas = canonical_betas(&t, 2).unwrap();
    assert!(canonical_mus(&t, 3).is_err());
    let same_norm = [FieldElement(1), FieldElement(2)];
    assert_eq!(t.norm(FieldElement(2)), t.norm(FieldElement(1)));
    assert!(matches!(
        lrs_code(&t, 1, &same_norm, &betas),
        Err(Error::Precondition {
            name: "distinct-norms",
            ..
        })
    ));
    let mus = canonical_mus(&t, 2).unwrap();
    assert!(lrs_code(&t, 5, &mus, &betas).is_err());
    assert!(lrs_code(&t, 1, &mus, &[FieldElement(1), FieldElement(2)]).is_err());
    assert!(canonical_betas(&t, 3).is_err());
}

#[test]
fn isometries_preserve_weights() {
    let c = lrs_small(2);
    let t = c.tower().clone();
    let a = vec![vec![1, 1], vec![0, 2]];
    let b = vec![vec![0, 1], vec![1, 0]];
    let iso = apply_isometry(&c, &[FieldElement(5), FieldElement(1)], &[1, 0], &[a, b]).unwrap();
    let g = Guards::default();
    assert_eq!(
        weight_distribution_bruteforce(&c, &g).unwrap(),
        weight_distribution_bruteforce(&iso, &g).unwrap()
    );
    let shape = BlockShape::new(vec![2, 1]).unwrap();
    let c2 = SumRankCode::from_rows(
        &t,
        shape,
        vec![vec![FieldElement(1), FieldElement(3), FieldElement(1)]],
    )
    .unwrap();
    let err = apply_isometry(
        &c2,
        &[FieldElement(1), FieldElement(1)],
        &[1, 0],
        &[vec![vec![1, 0], vec![0, 1]], vec![vec![1]]],
    );
    assert!(matches!(
        err,
        Err(Error::Precondition {
            name: "length-preserving-permutation",
            ..
        })
    ));
    let singular = apply_isometry(
        &c,
        &[FieldElement(1), FieldElement(1)],
        &[0, 1],
        &[vec![vec![1, 1], vec![1, 1]], vec![vec![1, 0], vec![0, 1]]],
    );
    assert!(singular.is_err());
}

#[test]
fn generalized_weights_of_lrs() {
    let g = Guards::default();
    let c = lrs_small(2);
    let ds: Vec<usize> = (1..=2)
        .map(|r| generalized_weight(&c, r, &g).unwrap())
        .collect();
    assert_eq!(ds, vec![3, 4]);
    assert!(generalized_weight(&c, 3, &g).is_err());
}

#[test]
fn support_search_agrees_with_enumeration() {
    let g = Guards::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (p, m, lens, k) in [
        (2, 2, vec![2, 2], 2),
        (3, 2, vec![2, 1], 1),
        (2, 3, vec![3, 2], 3),
    ] {
        let t = tower(p, 1, m);
        let shape = BlockShape::new(lens).unwrap();
        for _ in 0..5 {
            let c = random_code(&t, &shape, k, &mut rng).unwrap();
            let parity = dual_code(&c).unwrap().generator().to_rows();
            let (d, _) = min_distance_bruteforce(&c, &g).unwrap();
            let (ds, y) = min_weight_by_supports(&t, &shape, &parity, shape.total(), &g)
                .unwrap()
                .unwrap();
            assert_eq!(d, ds);
            assert!(c.contains(&y));
            assert_eq!(c.weight(&y), d);
        }
    }
}

#[test]
fn guards_stop_large_enumerations() {
    let c = lrs_small(3);
    let g = Guards {
        codewords: 10,
        ..Guards::default()
    };
    assert!(matches!(
        weight_distribution_bruteforce(&c, &g),
        Err(Error::GuardExceeded {
            guard: "codewords",
            ..
        })
    ));
}

#[test]
fn weight_distribution_json_shape() {
    let c = lrs_small(1);
    let w = weight_distribution_bruteforce(&c, &Guards::default()).unwrap();
    let j = serde_json::to_value(&w).unwrap();
    assert_eq!(j["provenance"], "brute-force");
    assert_eq!(j["counts"][0], 1);
}

fn wei_holds(c: &SumRankCode, g: &Guards) -> bool {
    let n = c.length();
    let d = dual_code(c).unwrap();
    let mut all: Vec<usize> = (1..=c.k())
        .map(|r| generalized_weight(c, r, g).unwrap())
        .collect();
    all.extend((1..=d.k()).map(|r| n + 1 - generalized_weight(&d, r, g).unwrap()));
    all.sort_unstable();
    all == (1..=n).collect::<Vec<_>>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_code_invariants(seed in any::<u64>(), choice in 0usize..4) {
        let (p, m, lens, k) = [(2, 2, vec![2, 2], 2), (3, 1, vec![1, 1, 1], 2), (2, 3, vec![2, 1], 1), (3, 2, vec![2, 1], 2)][choice].clone();
        let t = tower(p, 1, m);
        let shape = BlockShape::new(lens).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_code(&t, &shape, k, &mut rng).unwrap();
        let g = Guards::default();
        let (d, _) = min_distance_bruteforce(&c, &g).unwrap();
        prop_assert!(d <= singleton_bound(&shape, m as usize, k).unwrap());
        prop_assert!(dual_code(&dual_code(&c).unwrap()).unwrap().same_code(&c));
        let nd = is_nondegenerate(&c, &g).unwrap();
        if nd.nondegenerate {
            prop_assert_eq!(min_distance_geometric(&c, &g).unwrap(), d);
            let dual = dual_code(&c).unwrap();
            if is_nondegenerate(&dual, &g).unwrap().nondegenerate {
                prop_assert!(wei_holds(&c, &g));
            }
            let ds: Vec<usize> = (1..=k).map(|r| generalized_weight(&c, r, &g).unwrap()).collect();
            prop_assert!(ds.windows(2).all(|w| w[0] < w[1]));
            prop_assert_eq!(ds[k - 1], c.length());
        }
        let wd = weight_distribution_bruteforce(&c, &g).unwrap();
        prop_assert_eq!(wd.total(), BigUint::from(c.codeword_count()));
        prop_assert_eq!(wd.min_distance(), Some(d));
    }
}

#[test]
fn sum_rank_distance_is_a_metric() {
    let t = tower(2, 1, 2);
    let shape = BlockShape::new(vec![2, 1]).unwrap();
    let all: Vec<Vec<FieldElement>> = (0..64u64)
        .map(|i| (0..3).map(|j| FieldElement((i >> (2 * j)) & 3)).collect())
        .collect();
    let d = |x: &[FieldElement], y: &[FieldElement]| {
        let diff: Vec<FieldElement> = x.iter().zip(y).map(|(&a, &b)| t.sub(a, b)).collect();
        sum_rank_weight(&t, &shape, &diff)
    };
    for x in &all {
        assert_eq!(d(x, x), 0);
        for y in &all {
            assert_eq!(d(x, y), d(y, x));
            for z in &all {
                assert!(d(x, z) <= d(x, y) + d(y, z));
            }
        }
    }
}

#[test]
fn weight_equals_rank_of_blown_blocks() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let t = tower(3, 1, 2);
    let shape = BlockShape::new(vec![3, 2, 1]).unwrap();
    for _ in 0..200 {
        let x: Vec<FieldElement> = (0..6).map(|_| FieldElement(rng.gen_range(0..9))).collect();
        let off = shape.offsets();
        let by_matrices: usize = (0..3)
            .map(|i| {
                let rows: Vec<Vec<u64>> = x[off[i]..off[i + 1]]
                    .iter()
                    .map(|&e| t.fq_coords(e))
                    .collect();
                linalg::rank(t.base(), &rows)
            })
            .sum();
        assert_eq!(sum_rank_weight(&t, &shape, &x), by_matrices);
    }
}

#[test]
fn small_distance_examples() {
    let g = Guards::default();
    // G = (I | I) over F_4 with two blocks of length 2
    let t = tower(2, 1, 2);
    let one = FieldElement::ONE;
    let zero = FieldElement::ZERO;
    let c = SumRankCode::from_rows(
        &t,
        BlockShape::uniform(2, 2).unwrap(),
        vec![vec![one, zero, one, zero], vec![zero, one, zero, one]],
    )
    .unwrap();
    assert_eq!(min_distance_bruteforce(&c, &g).unwrap().0, 2);
    // k = N with an invertible square generator
    let t3 = tower(3, 1, 2);
    let sq = SumRankCode::from_rows(
        &t3,
        BlockShape::uniform(2, 1).unwrap(),
        vec![
            vec![FieldElement(1), FieldElement(4)],
            vec![FieldElement(0), FieldElement(5)],
        ],
    )
    .unwrap();
    assert_eq!(min_distance_bruteforce(&sq, &g).unwrap().0, 1);
    // k = 1 LRS: every nonzero word has weight tn
    let c1 = lrs_small(1);
    let wd = weight_distribution_bruteforce(&c1, &g).unwrap();
    assert_eq!(wd.count(4), BigUint::from(8u32));
    assert_eq!(wd.total(), BigUint::from(9u32));
}

#[test]
fn random_isometries_preserve_weights() {
    let g = Guards::default();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let t = tower(3, 1, 2);
    let shape = BlockShape::uniform(2, 2).unwrap();
    let c = random_code(&t, &shape, 2, &mut rng).unwrap();
    let base = weight_distribution_bruteforce(&c, &g).unwrap();
    for _ in 0..100 {
        let mats: Vec<Vec<Vec<u64>>> = (0..2)
            .map(|_| loop {
                let a: Vec<Vec<u64>> = (0..2)
                    .map(|_| (0..2).map(|_| rng.gen_range(0..3)).collect())
                    .collect();
                if linalg::rank(t.base(), &a) == 2 {
                    break a;
                }
            })
            .collect();
        let scalars: Vec<FieldElement> =
            (0..2).map(|_| FieldElement(rng.gen_range(1..9))).collect();
        let perm = if rng.gen_bool(0.5) {
            vec![0, 1]
        } else {
            vec![1, 0]
        };
        let iso = apply_isometry(&c, &scalars, &perm, &mats).unwrap();
        assert_eq!(weight_distribution_bruteforce(&iso, &g).unwrap(), base);
    }
}

#[test]
fn msrd_instances_dual_and_positive_weights() {
    let g = Guards::default();
    let t5 = tower(5, 1, 2);
    let mut instances = vec![lrs_small(1), lrs_small(2), lrs_small(3)];
    let mus = canonical_mus(&t5, 2).unwrap();
    let betas = canonical_betas(&t5, 2).unwrap();
    instances.push(lrs_code(&t5, 2, &mus, &betas).unwrap());
    for c in instances {
        let cert = is_msrd(&c, &g).unwrap();
        assert!(cert.is_msrd());
        let d = dual_code(&c).unwrap();
        assert!(is_msrd(&d, &g).unwrap().is_msrd());
        assert_eq!(c.k() + d.k(), c.length());
        let wd = weight_distribution_bruteforce(&c, &g).unwrap();
        let top = c.shape().max_weight(c.m());
        for w in cert.d..=top {
            assert!(wd.count(w) > BigUint::from(0u32), "W_{w} = 0");
        }
    }
}

#[test]
fn wei_partition_of_lrs() {
    let g = Guards::default();
    let c = lrs_small(2);
    let w = wei_partition(&c, &g).unwrap();
    assert_eq!(w.code, vec![3, 4]);
    assert_eq!(w.dual_shifted, vec![2, 1]);
    assert!(w.exact);
    let c1 = lrs_small(1);
    let w = wei_partition(&c1, &g).unwrap();
    assert_eq!(w.code, vec![4]);
    assert!(w.exact);
}

#[test]
fn code_json_round_trip() {
    let c = lrs_small(2);
    let j = serde_json::to_string(&c.to_json()).unwrap();
    let back = SumRankCode::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
    assert!(back.same_code(&c));
    let mut bad = c.to_json();
    bad.generator[0][0] = FieldElement(9);
    assert!(SumRankCode::from_json(&bad).is_err());
}
