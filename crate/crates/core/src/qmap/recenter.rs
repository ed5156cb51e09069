//! Moving a base point to the origin on both sides.

use super::map::QuadricMap;
use super::multiplier::{multiplier, MultiplierCertificate};
use crate::error::{Error, Result};
use crate::exactalg::norms::norm_preimage;
use crate::exactalg::{GaussianRational, HoloPoly, Rational};
use crate::quadric::Hyperquadric;

#[derive(Clone, Debug)]
pub struct RecenteredMap {
    pub base: Vec<GaussianRational>,
    /// `σ(z, w) = (z + z_p, w + w_p + 2i⟨z, z̄_p⟩)`, a self-map of the source quadric.
    pub source_translation: QuadricMap,
    /// `λ(p) = |A(p)|`, or 1 where `A(p) = 0`.
    pub lambda: Rational,
    /// `μ` with `|μ|² = 1/λ(p)` used to rescale the target, when one exists.
    pub scale: Option<GaussianRational>,
    pub map: QuadricMap,
    pub certificate: MultiplierCertificate,
}

/// Heisenberg translation of a quadric taking 0 to `p`.
pub fn source_translation(quadric: &Hyperquadric, p: &[GaussianRational]) -> Result<QuadricMap> {
    let rho = quadric.rho_at(p)?;
    if !rho.is_zero() {
        return Err(Error::NotOnQuadric(rho.to_string()));
    }
    let space = quadric.space();
    let m = space.nz();
    let f: Vec<HoloPoly> = (0..m)
        .map(|j| &HoloPoly::z(space, j) + &HoloPoly::constant(space, p[j].clone()))
        .collect();
    let two_i = GaussianRational::from_ints(0, 2);
    let mut g = &HoloPoly::w(space) + &HoloPoly::constant(space, p[m].clone());
    for (j, &s) in quadric.signs().iter().enumerate() {
        let c = (&two_i * &p[j].conj()).scale(&(s as i64).into());
        g = &g + &HoloPoly::z(space, j).scale(&c);
    }
    QuadricMap::new(quadric.clone(), quadric.clone(), f, g)
}

pub fn recenter(map: &QuadricMap, p: &[GaussianRational]) -> Result<RecenteredMap> {
    let cert = multiplier(map)?;
    if !cert.is_verified() {
        return Err(Error::Unverified);
    }
    let sigma = source_translation(&map.source, p)?;
    let moved = map.precompose(&sigma)?;
    let value = map.evaluate(p)?;
    let space = map.space();
    let nt = map.target.n() - 1;
    let d = moved.denominator();
    let fp = &value[..nt];
    let gp = &value[nt];
    // T(z*, w*) = (z* − f(p), w* − conj g(p) − 2i⟨z*, conj f(p)⟩'), on numerators
    let f: Vec<HoloPoly> = moved
        .f
        .iter()
        .zip(fp)
        .map(|(nj, c)| nj - &d.scale(c))
        .collect();
    let two_i = GaussianRational::from_ints(0, 2);
    let mut g = &moved.g - &d.scale(&gp.conj());
    for ((nj, c), &s) in moved.f.iter().zip(fp).zip(map.target.signs()) {
        let k = (&two_i * &c.conj()).scale(&(s as i64).into());
        g = &g - &nj.scale(&k);
    }
    let a_p = cert.a_at(p)?;
    let lambda = if a_p.is_zero() {
        Rational::one()
    } else {
        a_p.abs()
    };
    let scale = if a_p.is_zero() {
        None
    } else {
        norm_preimage(&lambda.recip().unwrap())
    };
    let (f, g) = match &scale {
        Some(mu) => {
            let m2 = GaussianRational::from(mu.norm_sqr());
            (f.iter().map(|x| x.scale(mu)).collect(), g.scale(&m2))
        }
        None => (f, g),
    };
    let out = match moved.denom {
        Some(den) => QuadricMap::rational(map.source.clone(), map.target.clone(), f, g, den)?,
        None => QuadricMap::new(map.source.clone(), map.target.clone(), f, g)?,
    };
    debug_assert_eq!(out.space(), space);
    let certificate = multiplier(&out)?;
    Ok(RecenteredMap {
        base: p.to_vec(),
        source_translation: sigma,
        lambda,
        scale,
        map: out,
        certificate,
    })
}
