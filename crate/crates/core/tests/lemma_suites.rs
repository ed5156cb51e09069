use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quadmap_core::exactalg::{HoloPoly, VariableSpace};
use quadmap_core::lemmas::*;

#[test]
fn exhaustive_family_n3() {
    let mut divisible = 0;
    let total = for_each_exhaustive_instance(3, |inst| {
        let r = divisibility_check(inst);
        assert_ne!(r.verdict, DivisibilityVerdict::Counterexample, "{inst:?}");
        divisible += usize::from(r.divisible());
    });
    assert_eq!(total, 200);
    assert_eq!(divisible, 0);
}

#[test]
fn random_instances_never_contradict() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for shape in [
        InstanceShape::Generic,
        InstanceShape::Cancelling,
        InstanceShape::NearMiss,
    ] {
        for _ in 0..20 {
            let r = divisibility_check(&random_divisibility_instance(5, 2, shape, &mut rng));
            assert_ne!(r.verdict, DivisibilityVerdict::Counterexample);
            if shape == InstanceShape::Cancelling {
                assert_eq!(r.verdict, DivisibilityVerdict::Confirmed);
            }
        }
    }
}

#[test]
fn signature_gap_on_random_isometric_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let s = VariableSpace::new(7).unwrap();
    for m in 2..=4 {
        let (a, b, _) = random_isometric_pair(s, 2, m, &mut rng);
        let r = signature_gap_check(7, 3, &a, &b).unwrap();
        assert!(
            matches!(
                r.verdict,
                SignatureGapVerdict::Confirmed | SignatureGapVerdict::Certified
            ),
            "{:?}",
            r.verdict
        );
    }
}

#[test]
fn swapped_pair_gives_permutation() {
    let s = VariableSpace::new(3).unwrap();
    let a = [HoloPoly::z(s, 0), HoloPoly::z(s, 1)];
    let b = [HoloPoly::z(s, 1), HoloPoly::z(s, 0)];
    let IsometryResult::Exact { u } = isometry_decompose(s, &a, &b) else {
        panic!("expected an exact unitary")
    };
    assert!(is_coisometry(&u));
    assert!(u.get(0, 0).is_zero() && u.get(0, 1).is_one());
}
