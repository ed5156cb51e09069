//! Coordinate maps between quadrics with different sign layouts.

use super::hyperquadric::Hyperquadric;
use super::signature::GeneralizedDelta;
use crate::error::Result;
use crate::exactalg::{GaussianRational, HoloPoly};
use crate::qmap::QuadricMap;

/// Zero-based source index placed at each target position by the interchange
/// map: `z_1..z_ℓ`, then `z_{ℓ'+1}..z_{ℓ'+n−1−ℓ}`, then `z_{ℓ+1}..z_{ℓ'}`, then
/// the remaining coordinates.
pub fn interchange_permutation(d: &GeneralizedDelta) -> Vec<usize> {
    let (ell, lp, n, big_n) = (d.ell, d.ell_target, d.n, d.big_n);
    let mut perm: Vec<usize> = (0..ell).collect();
    perm.extend(lp..lp + (n - 1 - ell));
    perm.extend(ell..lp);
    perm.extend(lp + (n - 1 - ell)..big_n - 1);
    perm
}

/// The linear map from `ℍᴺ_{ℓ'}` onto the quadric with the generalized pattern.
pub fn interchange_map(d: GeneralizedDelta) -> Result<QuadricMap> {
    let source = Hyperquadric::standard(d.big_n, d.ell_target)?;
    let target = Hyperquadric::generalized(d);
    let space = source.space();
    let f = interchange_permutation(&d)
        .into_iter()
        .map(|k| HoloPoly::z(space, k))
        .collect();
    QuadricMap::new(source, target, f, HoloPoly::w(space))
}

/// `σ*(z, w) = (z_{ℓ*+1}, …, z_{n−1}, z_1, …, z_{ℓ*}, −w)` with `ℓ* = n−1−ℓ`,
/// from `ℍⁿ_{ℓ*}` to `ℍⁿ_ℓ`. Its multiplier is `−1`.
pub fn flip_map(n: usize, ell: usize) -> Result<QuadricMap> {
    let target = Hyperquadric::standard(n, ell)?;
    let ell_star = n - 1 - ell;
    let source = Hyperquadric::standard(n, ell_star)?;
    let space = source.space();
    let f = (ell_star..n - 1)
        .chain(0..ell_star)
        .map(|k| HoloPoly::z(space, k))
        .collect();
    let g = HoloPoly::w(space).scale(&GaussianRational::from(-1));
    QuadricMap::new(source, target, f, g)
}
