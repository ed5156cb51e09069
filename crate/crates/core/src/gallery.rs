//! Built-in example maps.

use crate::autnorm::sign_placement;
use crate::error::{Error, Result};
use crate::exactalg::{GaussianRational, HoloPoly};
use crate::qmap::QuadricMap;
use crate::quadric::Hyperquadric;

fn c(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> GaussianRational {
    GaussianRational::from_fracs(re_n, re_d, im_n, im_d)
}

/// `(4z1z2, 4z2², 2z2(i+w), 2z2(i−w), 4z2z3, 4z2z4, 0)` from `ℍ⁵₂` to `ℍ⁷₃`.
pub fn example_degenerate() -> QuadricMap {
    let src = Hyperquadric::standard(5, 2).unwrap();
    let tgt = Hyperquadric::standard(7, 3).unwrap();
    let s = src.space();
    let z = |j| HoloPoly::z(s, j);
    let w = HoloPoly::w(s);
    let i = HoloPoly::constant(s, GaussianRational::i());
    let four = GaussianRational::from(4);
    let two = GaussianRational::from(2);
    let f = vec![
        (&z(0) * &z(1)).scale(&four),
        (&z(1) * &z(1)).scale(&four),
        (&z(1) * &(&i + &w)).scale(&two),
        (&z(1) * &(&i - &w)).scale(&two),
        (&z(1) * &z(2)).scale(&four),
        (&z(1) * &z(3)).scale(&four),
    ];
    QuadricMap::new(src, tgt, f, HoloPoly::zero(s)).unwrap()
}

/// The five-component map from `ℍ³₁` to `ℍ⁵₂` with multiplier `z1 + z̄1`.
pub fn example_sharp() -> QuadricMap {
    let src = Hyperquadric::standard(3, 1).unwrap();
    let tgt = Hyperquadric::standard(5, 2).unwrap();
    let s = src.space();
    let z1 = HoloPoly::z(s, 0);
    let z2 = HoloPoly::z(s, 1);
    let w = HoloPoly::w(s);
    let z1sq = &z1 * &z1;
    let z1z2 = &z1 * &z2;
    let half = c(1, 2, 0, 1);
    let iq = c(0, 1, 1, 4);
    let f = vec![
        &(&z1 + &z1sq.scale(&half)) - &w.scale(&iq),
        &z2 - &z1z2.scale(&half),
        &(&z1 - &z1sq.scale(&half)) + &w.scale(&iq),
        &z2 + &z1z2.scale(&half),
    ];
    QuadricMap::new(src, tgt, f, &z1 * &w).unwrap()
}

/// `(z1, 0, z2, 0, w)` from `ℍ³₁` to `ℍ⁵₂`.
pub fn linear_embedding() -> QuadricMap {
    let src = Hyperquadric::standard(3, 1).unwrap();
    let tgt = Hyperquadric::standard(5, 2).unwrap();
    let s = src.space();
    let f = vec![
        HoloPoly::z(s, 0),
        HoloPoly::zero(s),
        HoloPoly::z(s, 1),
        HoloPoly::zero(s),
    ];
    QuadricMap::new(src, tgt, f, HoloPoly::w(s)).unwrap()
}

/// `(z_1, …, z_ℓ, ψ, z_{ℓ+1}, …, z_{n−1}, ψ, 0, …, 0, w)` into `ℍᴺ_{ℓ'}`, with
/// `ψ` of length `ℓ' − ℓ`.
pub fn normal_form_map(
    n: usize,
    ell: usize,
    big_n: usize,
    ell_target: usize,
    psi: &[HoloPoly],
) -> Result<QuadricMap> {
    let src = Hyperquadric::standard(n, ell)?;
    let tgt = Hyperquadric::standard(big_n, ell_target)?;
    if ell > ell_target || psi.len() != ell_target - ell {
        return Err(Error::Dimension {
            expected: ell_target.saturating_sub(ell),
            got: psi.len(),
        });
    }
    let s = src.space();
    let (placement, rest) = sign_placement(src.signs(), tgt.signs()).ok_or_else(|| {
        Error::Regime(format!(
            "n - ell = {} > N - ell' = {}",
            n - ell,
            big_n - ell_target
        ))
    })?;
    let mut f = vec![HoloPoly::zero(s); big_n - 1];
    for (j, &k) in placement.iter().enumerate() {
        f[k] = HoloPoly::z(s, j);
    }
    let neg: Vec<usize> = rest
        .iter()
        .copied()
        .filter(|&k| tgt.signs()[k] < 0)
        .collect();
    let pos: Vec<usize> = rest
        .iter()
        .copied()
        .filter(|&k| tgt.signs()[k] > 0)
        .collect();
    if neg.len() < psi.len() || pos.len() < psi.len() {
        return Err(Error::Regime(format!(
            "no room for {} pairs of psi components in dimension N = {big_n}",
            psi.len()
        )));
    }
    for (i, p) in psi.iter().enumerate() {
        f[neg[i]] = p.clone();
        f[pos[i]] = p.clone();
    }
    QuadricMap::new(src, tgt, f, HoloPoly::w(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{HermPoly, Rational};
    use crate::qmap::{
        multiplier, nontransversality_locus, recenter, segre_containment, span_dimension,
    };

    #[test]
    fn degenerate_multiplier_is_sixteen_abs_z2_squared() {
        let m = example_degenerate();
        let c = multiplier(&m).unwrap();
        let s = m.space();
        let expect = HermPoly::abs_sq(&HoloPoly::z(s, 1)).scale(&Rational::from(16));
        assert_eq!(c.a().unwrap(), &expect);
        assert!(c.recheck(&m));
        assert_eq!(nontransversality_locus(&m).unwrap().describe(), "z2 = 0");
        assert_eq!(span_dimension(&m), 6);
        assert!(
            segre_containment(&m, &vec![GaussianRational::zero(); 5])
                .unwrap()
                .holds
        );
    }

    #[test]
    fn sharp_multiplier_is_twice_real_part() {
        let m = example_sharp();
        let c = multiplier(&m).unwrap();
        let s = m.space();
        assert_eq!(
            c.a().unwrap(),
            &HermPoly::re_of(&HoloPoly::z(s, 0)).scale(&Rational::from(2))
        );
        assert_eq!(c.a().unwrap().to_string(), "z1 + conj(z1)");
        assert_eq!(span_dimension(&m), 5);
    }

    #[test]
    fn sharp_example_recentered_is_transversal() {
        let m = example_sharp();
        let p = vec![
            GaussianRational::one(),
            GaussianRational::zero(),
            -GaussianRational::i(),
        ];
        let r = recenter(&m, &p).unwrap();
        assert!(r.map.base_normalized());
        let origin = vec![GaussianRational::zero(); 3];
        assert_eq!(r.certificate.a_at(&origin).unwrap(), Rational::one());
    }

    #[test]
    fn sharp_example_leaves_segre_variety_off_the_transversal_set() {
        let m = example_sharp();
        // z1 purely imaginary, on the quadric: A(q) = 0
        for (y, x2) in [(1, 0), (2, 1), (-1, 3)] {
            let z = vec![
                GaussianRational::from_ints(0, y),
                GaussianRational::from_ints(x2, 0),
            ];
            let q = m.source.lift_point(&z, &Rational::zero()).unwrap();
            assert!(!segre_containment(&m, &q).unwrap().holds);
        }
    }

    #[test]
    fn normal_form_maps_verify() {
        let s = crate::exactalg::VariableSpace::new(5).unwrap();
        let psi =
            &(&HoloPoly::z(s, 0) * &HoloPoly::z(s, 2)) + &(&HoloPoly::z(s, 1) * &HoloPoly::w(s));
        let m = normal_form_map(5, 2, 7, 3, &[psi]).unwrap();
        let c = multiplier(&m).unwrap();
        assert_eq!(c.a().unwrap(), &HermPoly::constant(s, Rational::one()));
        assert_eq!(span_dimension(&m), 6);
    }

    #[test]
    fn linear_embedding_spans_its_dimension() {
        let m = linear_embedding();
        assert_eq!(span_dimension(&m), 3);
    }
}
