use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quadmap_core::autnorm::{
    compose, make_automorphism, normalize, random_aut_params, Jet, NormalForm,
};
use quadmap_core::exactalg::{GaussianRational, HermPoly, HoloPoly, VariableSpace};
use quadmap_core::gallery::{example_degenerate, example_sharp, linear_embedding, normal_form_map};
use quadmap_core::qmap::{multiplier, span_dimension};

#[test]
fn gallery_maps_have_verified_multipliers() {
    for map in [example_degenerate(), example_sharp(), linear_embedding()] {
        let cert = multiplier(&map).unwrap();
        assert!(cert.is_verified());
        assert!(cert.recheck(&map));
    }
}

#[test]
fn linear_embedding_has_unit_multiplier() {
    let map = linear_embedding();
    let a = multiplier(&map).unwrap().a().unwrap().clone();
    assert_eq!(a, HermPoly::constant(map.space(), 1.into()));
}

#[test]
fn composition_carries_the_multiplier() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for map in [example_degenerate(), example_sharp()] {
        let cert = multiplier(&map).unwrap();
        for _ in 0..5 {
            let p = random_aut_params(&map.target, 2, true, &mut rng);
            let scale = p.scale_factor();
            let tau = make_automorphism(&map.target, p).unwrap();
            let comp = compose(&tau, &map, &cert).unwrap();
            assert!(comp.certificate.recheck(&comp.map));
            let direct = multiplier(&comp.map).unwrap();
            assert_eq!(direct.a().unwrap(), &cert.a().unwrap().scale(&scale));
        }
    }
}

#[test]
fn normal_forms_are_fixed_by_normalization() {
    let s = VariableSpace::new(5).unwrap();
    let psi =
        vec![&HoloPoly::z(s, 0).pow(2) + &HoloPoly::z(s, 3).pow(3).scale(&GaussianRational::i())];
    let map = normal_form_map(5, 2, 7, 3, &psi).unwrap();
    let out = normalize(&map, 6).unwrap();
    assert!(
        matches!(out.normal_form, NormalForm::Reached { .. }),
        "{:?}",
        out.normal_form
    );
    assert_eq!(
        out.normalized.jet.comps,
        Jet::from_map(&map, 6).unwrap().comps
    );
    assert_eq!(span_dimension(&map), 6);
}

#[test]
fn sharp_example_is_not_transversal_at_origin() {
    let map = example_sharp();
    let cert = multiplier(&map).unwrap();
    let origin = vec![GaussianRational::zero(); map.space().n()];
    assert!(cert.a_at(&origin).unwrap().is_zero());
    assert!(normalize(&map, 4).is_err());
}
