use proptest::prelude::*;

use quadmap_core::autnorm::cm_operator;
use quadmap_core::exactalg::{
    BiholoPoly, GaussianRational, HoloPoly, Monomial, Poly, Rational, VariableSpace,
};
use quadmap_core::lemmas::{divide_by_form, polarized_form, Division};
use quadmap_core::quadric::standard_signs;

const N: usize = 3;

fn space() -> VariableSpace {
    VariableSpace::new(N).unwrap()
}

fn coeff() -> impl Strategy<Value = GaussianRational> {
    (-3i64..=3, -3i64..=3).prop_map(|(a, b)| GaussianRational::from_ints(a, b))
}

/// w-free bi-polynomial in `(z, ξ̄)`.
fn biholo() -> impl Strategy<Value = BiholoPoly> {
    prop::collection::vec((prop::array::uniform4(0u16..=2), coeff()), 0..6).prop_map(|terms| {
        let poly = Poly::from_terms(
            2 * N,
            terms
                .into_iter()
                .map(|(e, c)| (Monomial::from_exps(&[e[0], e[1], 0, e[2], e[3], 0]), c)),
        );
        BiholoPoly::from_poly(space(), poly)
    })
}

fn holo() -> impl Strategy<Value = HoloPoly> {
    prop::collection::vec((prop::array::uniform3(0u16..=2), coeff()), 0..5).prop_map(|terms| {
        let poly = Poly::from_terms(
            N,
            terms.into_iter().map(|(e, c)| (Monomial::from_exps(&e), c)),
        );
        HoloPoly::from_poly(space(), poly)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiples_of_form_divide(t in biholo(), ell in 0usize..=1) {
        let q = polarized_form(space(), ell);
        let s = &t * &q;
        match divide_by_form(&s, ell) {
            Division::Divisible { quotient } => prop_assert_eq!(quotient, t),
            Division::NotDivisible { .. } => prop_assert!(false, "multiple of the form not divisible"),
        }
    }

    #[test]
    fn division_verdict_is_sound(t in biholo(), r in biholo(), ell in 0usize..=1) {
        let q = polarized_form(space(), ell);
        let s = &(&t * &q) + &r;
        match divide_by_form(&s, ell) {
            Division::Divisible { quotient } => prop_assert_eq!(&quotient * &q, s),
            Division::NotDivisible { z, xibar, value } => {
                let pad = |v: &[GaussianRational]| {
                    let mut v = v.to_vec();
                    v.push(GaussianRational::zero());
                    v
                };
                let (zp, xp) = (pad(&z), pad(&xibar));
                prop_assert!(q.evaluate(&zp, &xp).unwrap().is_zero());
                let got = s.evaluate(&zp, &xp).unwrap();
                prop_assert!(!got.is_zero());
                prop_assert_eq!(got, value);
            }
        }
    }

    #[test]
    fn cm_operator_is_real_linear(
        p1 in prop::collection::vec(holo(), N - 1),
        p2 in prop::collection::vec(holo(), N - 1),
        q1 in holo(),
        q2 in holo(),
        c in -4i64..=4,
    ) {
        let s = space();
        let signs = standard_signs(N - 1, 1);
        let r = GaussianRational::from(Rational::from(c));
        let sum_p: Vec<HoloPoly> = p1.iter().zip(&p2).map(|(a, b)| a + &b.scale(&r)).collect();
        let lhs = cm_operator(s, &signs, &sum_p, &(&q1 + &q2.scale(&r))).unwrap();
        let rhs = &cm_operator(s, &signs, &p1, &q1).unwrap()
            + &cm_operator(s, &signs, &p2, &q2).unwrap().scale(&r);
        prop_assert_eq!(lhs, rhs);
    }
}
