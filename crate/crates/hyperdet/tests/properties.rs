//! Property tests for the algebraic substrate and the matrix/combinatorics
//! layers: ring laws, exact division, serialization round-trips, taxonomy
//! invariance, slicing coherence, and enumeration counts.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use proptest::prelude::*;

use hyperdet::exactalg::{
    rat, sylvester_resultant, univariate_discriminant, EntryVar, Monomial, Polynomial, UniPoly,
};
use hyperdet::mdmatrix::{Format, FormatClass, MDMatrix};
use hyperdet::qpaths::QSpace;

fn arb_var() -> impl Strategy<Value = EntryVar> {
    (1u16..=3, 1u16..=3).prop_map(|(i, j)| EntryVar::new(vec![i, j]))
}

fn arb_monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec((arb_var(), 1u32..=3), 0..4).prop_map(Monomial::from_pairs)
}

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((arb_monomial(), -9i64..=9), 0..6).prop_map(|terms| {
        let mut map: BTreeMap<Monomial, num_bigint::BigInt> = BTreeMap::new();
        for (m, c) in terms {
            *map.entry(m).or_default() += c;
        }
        Polynomial::from_term_map(map)
    })
}

proptest! {
    #[test]
    fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&a.neg()), Polynomial::zero());
    }

    #[test]
    fn division_inverts_multiplication(a in arb_poly(), b in arb_poly()) {
        prop_assume!(!b.is_zero());
        let product = a.mul(&b);
        prop_assert_eq!(product.exact_div(&b).unwrap(), a);
    }

    #[test]
    fn text_round_trip(a in arb_poly()) {
        let text = a.to_string();
        let back: Polynomial = text.parse().unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn json_round_trip(a in arb_poly()) {
        let json = serde_json::to_string(&a.to_json()).unwrap();
        let back = Polynomial::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn eval_is_multiplicative(a in arb_poly(), b in arb_poly(), vals in prop::collection::vec(-5i64..=5, 9)) {
        let mut assignment = BTreeMap::new();
        let mut k = 0;
        for i in 1u16..=3 {
            for j in 1u16..=3 {
                assignment.insert(EntryVar::new(vec![i, j]), rat(vals[k]));
                k += 1;
            }
        }
        let lhs = a.mul(&b).eval(&assignment).unwrap();
        let rhs = a.eval(&assignment).unwrap() * b.eval(&assignment).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn double_root_kills_discriminant(coeffs in prop::collection::vec(-6i64..=6, 1..3), r in -5i64..=5) {
        // p(z) * (z - r)^2 always has a multiple root
        let mut p = UniPoly::from_constants(&coeffs);
        prop_assume!(!p.is_zero());
        let factor = UniPoly::from_constants(&[-r, 1]);
        p = p.mul(&factor).mul(&factor);
        let disc = univariate_discriminant(&p).unwrap();
        prop_assert!(disc.is_zero());
    }

    #[test]
    fn shared_factor_kills_resultant(a in prop::collection::vec(-6i64..=6, 2..4),
                                     b in prop::collection::vec(-6i64..=6, 2..4),
                                     r in -5i64..=5) {
        let factor = UniPoly::from_constants(&[-r, 1]);
        let p = UniPoly::from_constants(&a).mul(&factor);
        let q = UniPoly::from_constants(&b).mul(&factor);
        prop_assume!(p.degree().unwrap_or(0) >= 1 && q.degree().unwrap_or(0) >= 1);
        let res = sylvester_resultant(&p, &q).unwrap();
        prop_assert!(res.is_zero());
    }

    #[test]
    fn classification_permutation_invariant(dims in prop::collection::vec(1usize..=4, 1..4), seed in any::<u64>()) {
        let f = Format::new(dims.clone());
        let class = f.classify();
        let mut permuted = dims;
        let n = permuted.len();
        if n > 1 {
            let i = (seed as usize) % n;
            let j = (seed as usize / n) % n;
            permuted.swap(i, j);
        }
        let same_kind = matches!(
            (class, Format::new(permuted).classify()),
            (FormatClass::Square2d, FormatClass::Square2d)
                | (FormatClass::Inner, FormatClass::Inner)
                | (FormatClass::Boundary { .. }, FormatClass::Boundary { .. })
                | (FormatClass::Grassman, FormatClass::Grassman)
        );
        prop_assert!(same_kind);
    }

    #[test]
    fn slice_commutes_with_subtensor(seed in any::<u64>()) {
        let f = Format::new(vec![2, 3, 2]);
        let a = MDMatrix::random_rational(f, seed, 9);
        // keep rows {1,2}, columns {1,3}, layers {1,2}; then pin direction 2
        let selections = vec![vec![1, 2], vec![1, 3], vec![1, 2]];
        let sub_then_slice = a.subtensor(&selections).unwrap().slice(2, 2).unwrap();
        let mut rest = selections.clone();
        rest.remove(1);
        let slice_then_sub = a.slice(2, 3).unwrap().subtensor(&rest).unwrap();
        prop_assert_eq!(sub_then_slice, slice_then_sub);
    }

    #[test]
    fn enumeration_counts_match_formula(levels in prop::collection::vec(1usize..=3, 1..4)) {
        let m_d: usize = 1 + levels.iter().map(|&n| n - 1).sum::<usize>();
        prop_assume!(m_d <= 8);
        let space = QSpace::new(&levels, 1 << 22).unwrap();
        let mut expect = factorial(m_d);
        for &n in &levels {
            expect /= factorial(n - 1);
        }
        prop_assert_eq!(BigUint::from(space.len()), expect);
        // every path climbs one level per step and tops out within range
        for i in 0..space.len() {
            let data = space.seq_data(i);
            prop_assert!(data.path[0] == 1);
            let j = *data.path.last().unwrap() as usize;
            prop_assert!(1 <= j && j <= m_d);
        }
    }

    #[test]
    fn block_sizes_sum_and_admissibility(levels in prop::collection::vec(2usize..=3, 1..3)) {
        let space = QSpace::new(&levels, 1 << 20).unwrap();
        for k in 1..=space.d() {
            for q in space.c_set(k) {
                let total: usize = space.blocks(k, q).iter().map(Vec::len).sum();
                prop_assert_eq!(total, space.m()[k - 1]);
            }
        }
        for i in 0..space.len() {
            let q = space.qseq(i);
            let diagram = space.initial_diagram(&q);
            for k in 1..=space.d() {
                let sizes: Vec<usize> =
                    space.blocks(k, &q.subsets[k - 1]).iter().map(Vec::len).collect();
                let mut counts = vec![0usize; sizes.len()];
                for &v in &diagram.maps[k - 1] {
                    counts[v as usize - 1] += 1;
                }
                prop_assert!(counts.iter().zip(&sizes).all(|(c, s)| c <= s));
            }
        }
    }
}

fn factorial(n: usize) -> BigUint {
    let mut r = BigUint::from(1u32);
    for i in 2..=n {
        r *= BigUint::from(i);
    }
    r
}
