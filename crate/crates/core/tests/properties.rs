use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use sunit_core::analyze::census_equivalence_classes;
use sunit_core::diophantine::{solve_bounded, UnitEquation};
use sunit_core::graphcore::{complete_bipartite, cycle, is_isomorphic, random_graph, VertexMap};
use sunit_core::sintring::{PrimeSet, SInteger};
use sunit_core::synthesis::{hypercube_embed, CubeEmbedding};
use sunit_core::unitgraph::{build_graph, canonicalize};

fn s23() -> PrimeSet {
    PrimeSet::new(vec![2, 3]).unwrap()
}

/// S-integers over {2,3}: `n / (2^a 3^b)`.
fn s_integer() -> impl Strategy<Value = SInteger> {
    (-500i64..500, 0u32..4, 0u32..3).prop_map(|(n, a, b)| {
        let d = BigInt::from(2u32.pow(a) * 3u32.pow(b));
        SInteger::from_rational(&BigInt::from(n), &d, &s23()).unwrap()
    })
}

fn s_unit() -> impl Strategy<Value = SInteger> {
    (any::<bool>(), -4i64..5, -3i64..4).prop_map(|(neg, a, b)| SInteger::unit(&s23(), neg, vec![a, b]))
}

fn point_set() -> impl Strategy<Value = Vec<SInteger>> {
    prop::collection::btree_set(-60i64..60, 1..7)
        .prop_map(|set| set.into_iter().map(|x| SInteger::from_i64(x, &s23())).collect())
}

proptest! {
    #[test]
    fn ring_operations_match_rationals(a in s_integer(), b in s_integer()) {
        let (ra, rb): (BigRational, BigRational) = (a.to_ratio(), b.to_ratio());
        prop_assert_eq!(a.checked_add(&b).unwrap().to_ratio(), &ra + &rb);
        prop_assert_eq!(a.checked_sub(&b).unwrap().to_ratio(), &ra - &rb);
        prop_assert_eq!(a.checked_mul(&b).unwrap().to_ratio(), &ra * &rb);
        prop_assert_eq!((-&a).to_ratio(), -ra.clone());
        prop_assert_eq!(a.cmp(&b), ra.cmp(&rb));
    }

    #[test]
    fn text_round_trip(a in s_integer()) {
        prop_assert_eq!(SInteger::parse(&a.to_string(), &s23()).unwrap(), a);
    }

    #[test]
    fn affine_images_share_class_and_graph(pts in point_set(), u in s_unit(), b in s_integer()) {
        let primes = s23();
        let moved: Vec<SInteger> = pts
            .iter()
            .map(|x| u.checked_mul(x).unwrap().checked_add(&b).unwrap())
            .collect();
        prop_assert_eq!(canonicalize(&primes, &pts).unwrap(), canonicalize(&primes, &moved).unwrap());
        // point k maps to point k, so the graphs are equal, not merely isomorphic
        prop_assert_eq!(build_graph(&primes, &pts).unwrap(), build_graph(&primes, &moved).unwrap());
    }

    #[test]
    fn canonical_form_is_idempotent(pts in point_set()) {
        let primes = s23();
        let c = canonicalize(&primes, &pts).unwrap();
        prop_assert_eq!(canonicalize(&primes, &c).unwrap(), c);
    }

    #[test]
    fn isomorphism_is_symmetric_and_relabel_invariant(n in 1usize..8, seed in any::<u64>(), shift in 0usize..8) {
        let g = random_graph(n, 0.5, seed).unwrap();
        let perm = VertexMap::new((0..n).map(|i| (i + shift) % n).collect()).unwrap();
        let h = g.relabel(&perm);
        let forward = is_isomorphic(&g, &h).expect("relabelled graph is isomorphic");
        prop_assert!(forward.is_isomorphism(&g, &h));
        let back = is_isomorphic(&h, &g).expect("symmetric");
        prop_assert!(back.is_isomorphism(&h, &g));
        let other = random_graph(n, 0.5, seed ^ 0x5eed).unwrap();
        prop_assert_eq!(is_isomorphic(&g, &other).is_some(), is_isomorphic(&other, &g).is_some());
    }

    #[test]
    fn embeddings_are_induced_and_serialize(n in 1usize..7, seed in any::<u64>()) {
        let g = random_graph(n, 0.4, seed).unwrap();
        if let Some(emb) = hypercube_embed(&g, 6).unwrap() {
            prop_assert!(emb.check(&g).is_ok());
            let json = serde_json::to_string(&emb).unwrap();
            prop_assert_eq!(serde_json::from_str::<CubeEmbedding>(&json).unwrap(), emb);
        } else {
            prop_assert!(!g.is_forest());
        }
    }
}

fn pairs(primes: &[u64], bound: u32) -> BTreeSet<(String, String)> {
    let eq = UnitEquation::all_ones(2, PrimeSet::new(primes.to_vec()).unwrap(), bound).unwrap();
    solve_bounded(&eq)
        .unwrap()
        .into_iter()
        .map(|s| (s.values[0].to_string(), s.values[1].to_string()))
        .collect()
}

#[test]
fn solutions_are_symmetric_and_grow_with_the_bound() {
    for primes in [&[2][..], &[2, 3], &[2, 5], &[3, 7]] {
        let mut previous = BTreeSet::new();
        for bound in 0..=5 {
            let now = pairs(primes, bound);
            for (x, y) in &now {
                assert!(now.contains(&(y.clone(), x.clone())));
            }
            assert!(previous.is_subset(&now));
            previous = now;
        }
    }
}

#[test]
fn census_grows_with_the_window() {
    let primes = s23();
    for g in [complete_bipartite(2, 2).unwrap(), cycle(3).unwrap()] {
        let mut last = 0;
        for limit in [4, 8, 16, 24, 32] {
            let c = census_equivalence_classes(&g, &primes, limit).count;
            assert!(c >= last);
            last = c;
        }
    }
}
