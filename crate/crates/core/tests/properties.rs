use birsym::classes::{linear_pn_class, ActionDescription};
use birsym::linalg::{RationalOptions, SparseVec};
use birsym::quotient::{Coefficients, SymbolQuotient, Variant};
use birsym::symbols::{AntisymmetryMode, Symbol, SymbolBasis};
use birsym::FinAbGroup;
use proptest::prelude::*;

const MINUS: Variant = Variant::Minus(AntisymmetryMode::SingleEntry);

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn quotient(n_group: i64, n: usize, variant: Variant, coeff: Coefficients) -> SymbolQuotient {
    let g = FinAbGroup::cyclic(n_group).unwrap();
    SymbolQuotient::new(&g, n, variant, coeff, &RationalOptions::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn linear_actions_vanish_in_minus(order in 3i64..40, n in 2usize..4, rest in prop::collection::vec(0i64..1000, 3)) {
        let mut w = vec![0, 1];
        w.extend(rest.iter().take(n - 1).map(|x| x % order));
        let action = linear_pn_class(order as u32, &w).unwrap();
        for coeff in [Coefficients::Rational, Coefficients::Prime(2), Coefficients::Prime(3)] {
            let q = quotient(order, n, MINUS, coeff);
            let v = action.beta(q.basis()).unwrap();
            prop_assert!(q.is_zero(&v).unwrap(), "weights {:?} over {}", w, coeff);
        }
    }

    #[test]
    fn automorphisms_preserve_vanishing(order in 3i64..25, u in 1i64..25, picks in prop::collection::vec((0usize..400, -3i64..4), 1..6)) {
        prop_assume!(gcd(u, order) == 1);
        let q = quotient(order, 2, Variant::Plain, Coefficients::Rational);
        let basis = q.basis();
        let g = basis.group().clone();
        let sigma = g.scalar_automorphism(u).unwrap();
        let v = SparseVec::from_pairs(picks.iter().map(|&(i, k)| ((i % basis.len()) as u32, k)));
        let perm = basis.apply_automorphism(&sigma).unwrap();
        let image = SparseVec::from_pairs(v.entries().iter().map(|&(c, k)| (perm[c as usize], k)));
        prop_assert_eq!(q.is_zero(&v).unwrap(), q.is_zero(&image).unwrap());
    }

    #[test]
    fn rational_dimension_bounded_by_modular(order in 2i64..30, n in 2usize..4) {
        let dq = quotient(order, n, Variant::Plain, Coefficients::Rational).dim();
        for p in [2, 3, 5] {
            prop_assert!(dq <= quotient(order, n, Variant::Plain, Coefficients::Prime(p)).dim());
        }
    }

    #[test]
    fn rational_dimension_is_seed_independent(order in 2i64..40, seed in any::<u64>()) {
        let g = FinAbGroup::cyclic(order).unwrap();
        let opts = RationalOptions { seed, ..RationalOptions::default() };
        let a = SymbolQuotient::new(&g, 2, MINUS, Coefficients::Rational, &opts).unwrap().dim();
        prop_assert_eq!(a, quotient(order, 2, MINUS, Coefficients::Rational).dim());
    }

    #[test]
    fn delta_vanishes_rationally(order in 2i64..41, a in 0i64..41, b in 0i64..41) {
        let (a, b) = (a % order, b % order);
        prop_assume!(gcd(gcd(a, b), order) == 1);
        let q = quotient(order, 2, Variant::Plain, Coefficients::Rational);
        let g = q.basis().group().clone();
        let mut terms = Vec::new();
        for (x, y) in [(a, b), (-a, b), (a, -b), (-a, -b)] {
            let (x, y) = (x.rem_euclid(order), y.rem_euclid(order));
            let k = if x != 0 && y != 0 { 2 } else { 1 };
            terms.push((k, Symbol::cyclic(&g, &[x, y]).unwrap()));
        }
        prop_assert!(q.is_zero_sum(&terms).unwrap());
    }

    #[test]
    fn action_files_round_trip(order in 2u32..30, rest in prop::collection::vec(0i64..100, 1..3)) {
        let mut w = vec![0, 1];
        w.extend(rest.iter().map(|x| x % order as i64));
        let a = linear_pn_class(order, &w).unwrap();
        prop_assert_eq!(ActionDescription::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn negated_basis_vectors_agree_in_minus(order in 3i64..25, i in 0usize..400) {
        let q = quotient(order, 2, MINUS, Coefficients::Rational);
        let basis: &SymbolBasis = q.basis();
        let g = basis.group().clone();
        let s = basis.symbol(i % basis.len());
        let mut e = s.entries().to_vec();
        e[0] = g.neg(&e[0]);
        let t = Symbol::new(&g, e).unwrap();
        prop_assert!(q.is_zero_sum(&[(1, s), (1, t)]).unwrap());
    }
}
