//! Linear span of the image and Segre containment.

use std::collections::BTreeSet;

use super::map::QuadricMap;
use crate::error::{Error, Result};
use crate::exactalg::{GaussianRational, HoloPoly, Matrix, Monomial};

/// Dimension of the smallest projective subspace containing `[D : N_1 : … : N_N]`.
///
/// For polynomial maps this is the rank of the non-constant parts of the
/// components, i.e. the dimension of the affine span of the image.
pub fn span_dimension(map: &QuadricMap) -> usize {
    let mut rows = vec![map.denominator()];
    rows.extend(map.components());
    coefficient_matrix(&rows).rank() - 1
}

fn coefficient_matrix(polys: &[HoloPoly]) -> Matrix {
    let monos: BTreeSet<Monomial> = polys
        .iter()
        .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
        .collect();
    let monos: Vec<Monomial> = monos.into_iter().collect();
    Matrix::from_rows(
        polys
            .iter()
            .map(|p| monos.iter().map(|m| p.coeff(m)).collect())
            .collect(),
    )
}

#[derive(Clone, Debug)]
pub struct SegreContainment {
    pub holds: bool,
    /// `D·(g − conj g(q) − 2i⟨f̃, conj f̃(q)⟩')` as a polynomial in the source.
    pub residual: HoloPoly,
    pub image: Vec<GaussianRational>,
}

/// Whether `F` maps a neighbourhood into the Segre variety of the target at `F(q)`.
pub fn segre_containment(map: &QuadricMap, q: &[GaussianRational]) -> Result<SegreContainment> {
    if q.len() != map.source.n() {
        return Err(Error::Dimension {
            expected: map.source.n(),
            got: q.len(),
        });
    }
    let image = map.evaluate(q)?;
    let nt = map.target.n() - 1;
    let d = map.denominator();
    let two_i = GaussianRational::from_ints(0, 2);
    let mut r = &map.g - &d.scale(&image[nt].conj());
    for ((nj, c), &s) in map.f.iter().zip(&image[..nt]).zip(map.target.signs()) {
        let k = (&two_i * &c.conj()).scale(&(s as i64).into());
        r = &r - &nj.scale(&k);
    }
    Ok(SegreContainment {
        holds: r.is_zero(),
        residual: r,
        image,
    })
}
