use proptest::prelude::*;

use quadmap_cli::parse::parse_expression;
use quadmap_core::exactalg::{GaussianRational, HoloPoly, Monomial, Poly, Rational, VariableSpace};

fn coeff() -> impl Strategy<Value = GaussianRational> {
    (-20i64..=20, 1i64..=9, -20i64..=20, 1i64..=9)
        .prop_map(|(a, b, c, d)| GaussianRational::new(Rational::new(a, b), Rational::new(c, d)))
}

fn holo(n: usize) -> impl Strategy<Value = HoloPoly> {
    prop::collection::vec((prop::collection::vec(0u16..=4, n), coeff()), 0..8).prop_map(
        move |terms| {
            let space = VariableSpace::new(n).unwrap();
            let poly = Poly::from_terms(
                n,
                terms.into_iter().map(|(e, c)| (Monomial::from_exps(&e), c)),
            );
            HoloPoly::from_poly(space, poly)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn printed_polynomials_parse_back(p in (2usize..=5).prop_flat_map(holo)) {
        let back = parse_expression(&p.to_string(), p.space()).unwrap();
        prop_assert_eq!(back, p);
    }
}
