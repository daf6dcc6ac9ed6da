use proptest::prelude::*;

use spinhol::appendix::{self, SpectrumCandidate};
use spinhol::lie::close_span;
use spinhol::spin::SpinRep;
use spinhol::{Blade, MultiVector, Rational};

fn multivector(n: usize, max_terms: usize) -> impl Strategy<Value = MultiVector> {
    prop::collection::vec((0u16..(1 << n), -3i64..=3), 0..=max_terms)
        .prop_map(move |t| MultiVector::from_terms(n, t.into_iter().map(|(b, c)| (Blade(b), Rational::from(c)))))
}

fn homogeneous(n: usize, k: usize) -> impl Strategy<Value = MultiVector> {
    multivector(n, 8).prop_map(move |m| m.grade_project(k))
}

fn vector(n: usize) -> impl Strategy<Value = MultiVector> {
    prop::collection::vec(-3i64..=3, n).prop_map(move |c| MultiVector::vector(n, &c.into_iter().map(Rational::from).collect::<Vec<_>>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative_and_distributive(a in multivector(7, 6), b in multivector(7, 6), c in multivector(7, 6)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn involutions_respect_products(a in multivector(8, 6), b in multivector(8, 6)) {
        let ab = &a * &b;
        prop_assert_eq!(ab.transpose(), &b.transpose() * &a.transpose());
        prop_assert_eq!(ab.alpha(), &a.alpha() * &b.alpha());
    }

    #[test]
    fn vectors_satisfy_clifford_relation(x in vector(6), y in vector(6)) {
        let lhs = &(&x * &y) + &(&y * &x);
        let rhs = MultiVector::scalar(6, x.inner_product(&y) * Rational::from(-2));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn l_operator_scales_each_grade(f in multivector(8, 10)) {
        for g in 0..=8usize {
            let part = f.grade_project(g);
            let sign = if g % 2 == 0 { 1 } else { -1 };
            let factor = Rational::from(sign * (2 * g as i64 - 8));
            prop_assert_eq!(part.l_operator(), part.scale(&factor));
        }
    }

    #[test]
    fn commutator_satisfies_jacobi(a in multivector(6, 5), b in multivector(6, 5), c in multivector(6, 5)) {
        let j = &(&a.commutator(&b.commutator(&c)) + &b.commutator(&c.commutator(&a))) + &c.commutator(&a.commutator(&b));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn wedge_is_associative(a in multivector(6, 5), b in multivector(6, 5), c in multivector(6, 5)) {
        prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
    }

    #[test]
    fn vector_contraction_lowers_degree(x in vector(8), t in homogeneous(8, 4)) {
        let c = MultiVector::contract_vector(&x, &t).unwrap();
        prop_assert!(c.is_zero() || c.is_homogeneous(3));
        let expected = (&(&t.alpha() * &x) - &(&x * &t)).scale(&Rational::new(1, 2));
        prop_assert_eq!(c, expected);
    }

    #[test]
    fn spinor_action_is_a_representation(a in multivector(8, 4), b in multivector(8, 4), coords in prop::collection::vec(-2i64..=2, 16)) {
        let rep = SpinRep::shared(8).unwrap();
        let x: Vec<Rational> = coords.into_iter().map(Rational::from).collect();
        let lhs = rep.act(&(&a * &b), &x).unwrap();
        let rhs = rep.act(&a, &rep.act(&b, &x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn json_round_trip(a in multivector(9, 10)) {
        prop_assert_eq!(MultiVector::from_json(&a.to_json()).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn closure_is_closed(gens in prop::collection::vec(homogeneous(5, 2), 1..3)) {
        let g = close_span(5, &gens);
        let basis = g.basis();
        for a in &basis {
            for b in &basis {
                prop_assert!(g.contains(&a.commutator(b)));
            }
        }
        for x in &gens {
            prop_assert!(g.contains(x));
        }
    }

    #[test]
    fn combin_failure_is_monotone_in_k_max(idx in 0usize..400) {
        let pool = appendix::Grid::default().traceless_candidates();
        let c = &pool[idx % pool.len()];
        for i in 0..c.len() {
            for j in 0..c.len() {
                if i == j {
                    continue;
                }
                if !appendix::combin_condition(c, i, j, 2).unwrap() {
                    prop_assert!(!appendix::combin_condition(c, i, j, 6).unwrap());
                }
            }
        }
    }

    #[test]
    fn families_are_scale_invariant(l in 1i64..=4, m in 1i64..=4, s in 2i64..=3) {
        prop_assume!(l != m);
        let a = SpectrumCandidate::from_ints(&[(l, 1), (-l, 1), (m, 1), (-m, 1)]).unwrap();
        let b = SpectrumCandidate::from_ints(&[(s * l, 1), (-s * l, 1), (s * m, 1), (-s * m, 1)]).unwrap();
        prop_assert_eq!(appendix::family_of(&a), appendix::family_of(&b));
        prop_assert_eq!(appendix::combin_pairs(&a, 4).is_empty(), appendix::combin_pairs(&b, 4).is_empty());
    }
}
