//! The isotropy group of a hyperquadric at the origin.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{GaussianRational, HermPoly, HoloPoly, Matrix, Rational};
use crate::qmap::{multiplier, CertStatus, MultiplierCertificate, QuadricMap};
use crate::quadric::Hyperquadric;

/// `τ(z', w') = (λ(z' − a w')U / Δ, ε|λ|² w' / Δ)` with
/// `Δ = 1 + 2i⟨z', ā⟩ + (r − i⟨a, ā⟩)w'`.
///
/// `λ` may be any nonzero Gaussian rational; a positive real `λ` is the
/// classical parametrization.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AutParams {
    pub lambda: GaussianRational,
    pub epsilon: i8,
    pub a: Vec<GaussianRational>,
    pub r: Rational,
    pub u: Matrix,
}

impl AutParams {
    pub fn identity(dim: usize) -> Self {
        AutParams {
            lambda: GaussianRational::one(),
            epsilon: 1,
            a: vec![GaussianRational::zero(); dim],
            r: Rational::zero(),
            u: Matrix::identity(dim),
        }
    }

    pub fn linear(lambda: GaussianRational, u: Matrix) -> Self {
        let dim = u.rows();
        AutParams {
            lambda,
            u,
            ..Self::identity(dim)
        }
    }

    pub fn translation(a: Vec<GaussianRational>, r: Rational) -> Self {
        AutParams {
            a,
            r,
            ..Self::identity(0)
        }
        .with_identity_u()
    }

    fn with_identity_u(mut self) -> Self {
        self.u = Matrix::identity(self.a.len());
        self
    }

    /// `ε|λ|²`, the constant multiplier of the automorphism.
    pub fn scale_factor(&self) -> Rational {
        let l2 = self.lambda.norm_sqr();
        if self.epsilon < 0 {
            -l2
        } else {
            l2
        }
    }

    pub fn validate(&self, target: &Hyperquadric) -> Result<()> {
        let dim = target.n() - 1;
        if self.a.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                got: self.a.len(),
            });
        }
        if self.u.rows() != dim || self.u.cols() != dim {
            return Err(Error::Dimension {
                expected: dim,
                got: self.u.rows(),
            });
        }
        if self.lambda.is_zero() {
            return Err(Error::Invalid("lambda must be nonzero".into()));
        }
        if self.epsilon != 1 && self.epsilon != -1 {
            return Err(Error::Invalid("epsilon must be +1 or -1".into()));
        }
        let res = self.u.isometry_residual(target.signs(), self.epsilon);
        if !res.is_zero() {
            return Err(Error::NotIsometry(format!("{res:?}")));
        }
        Ok(())
    }

    /// `Δ` evaluated on the components `(f̃, g)` of a map (numerators, with `d` the denominator).
    pub fn delta_of(&self, f: &[HoloPoly], g: &HoloPoly, d: &HoloPoly, signs: &[i8]) -> HoloPoly {
        let two_i = GaussianRational::from_ints(0, 2);
        let mut out = d.clone();
        let mut a_sq = Rational::zero();
        for ((fj, aj), &s) in f.iter().zip(&self.a).zip(signs) {
            let c = (&two_i * &aj.conj()).scale(&Rational::from(s as i64));
            out = &out + &fj.scale(&c);
            let t = aj.norm_sqr();
            if s < 0 {
                a_sq -= &t;
            } else {
                a_sq += &t;
            }
        }
        let cw = GaussianRational::new(self.r.clone(), -a_sq);
        &out + &g.scale(&cw)
    }

    /// Numerators `(λ(f̃ − a g)U, ε|λ|² g)`.
    pub fn numerators(&self, f: &[HoloPoly], g: &HoloPoly) -> (Vec<HoloPoly>, HoloPoly) {
        let space = g.space();
        let shifted: Vec<HoloPoly> = f
            .iter()
            .zip(&self.a)
            .map(|(fj, aj)| fj - &g.scale(aj))
            .collect();
        let dim = f.len();
        let mut out = vec![HoloPoly::zero(space); dim];
        for (j, sj) in shifted.iter().enumerate() {
            if sj.is_zero() {
                continue;
            }
            for (k, ok) in out.iter_mut().enumerate() {
                let c = self.u.get(j, k);
                if !c.is_zero() {
                    *ok = &*ok + &sj.scale(&(&self.lambda * c));
                }
            }
        }
        (out, g.scale(&GaussianRational::from(self.scale_factor())))
    }
}

#[derive(Clone, Debug)]
pub struct Automorphism {
    pub params: AutParams,
    pub map: QuadricMap,
}

/// Realizes `τ` as a rational self-map and checks `|Δ|²·ρ'∘τ = ε|λ|²·ρ'`.
pub fn make_automorphism(target: &Hyperquadric, params: AutParams) -> Result<Automorphism> {
    params.validate(target)?;
    let space = target.space();
    let dim = target.n() - 1;
    let z: Vec<HoloPoly> = (0..dim).map(|j| HoloPoly::z(space, j)).collect();
    let w = HoloPoly::w(space);
    let (f, g) = params.numerators(&z, &w);
    let delta = params.delta_of(&z, &w, &HoloPoly::one(space), target.signs());
    let map = QuadricMap::rational(target.clone(), target.clone(), f, g, delta)?;
    let cert = multiplier(&map)?;
    let expect = HermPoly::constant(space, params.scale_factor());
    if cert.a().ok() != Some(&expect) {
        return Err(Error::Invalid("automorphism identity fails".into()));
    }
    Ok(Automorphism { params, map })
}

#[derive(Clone, Debug)]
pub struct Composition {
    pub map: QuadricMap,
    /// `|D'|²·ρ'∘(τ∘F) = ε|λ|²·M·ρ`, where `M` is the multiplier numerator of `F`.
    pub certificate: MultiplierCertificate,
}

/// `τ∘F` with the multiplier carried over from `F` rather than recomputed.
pub fn compose(
    tau: &Automorphism,
    map: &QuadricMap,
    cert: &MultiplierCertificate,
) -> Result<Composition> {
    if map.target.n() != tau.map.source.n() {
        return Err(Error::Dimension {
            expected: tau.map.source.n(),
            got: map.target.n(),
        });
    }
    let m = cert.a()?;
    let p = &tau.params;
    let (f, g) = p.numerators(&map.f, &map.g);
    let d = p.delta_of(&map.f, &map.g, &map.denominator(), map.target.signs());
    let out = QuadricMap::rational(map.source.clone(), map.target.clone(), f, g, d)?;
    let denom_sq = out.denom.as_ref().map(HermPoly::abs_sq);
    let certificate = MultiplierCertificate {
        status: CertStatus::Verified,
        multiplier: Some(m.scale(&p.scale_factor())),
        denom_sq,
        remainder: None,
        witness: None,
        witness_value: None,
    };
    Ok(Composition {
        map: out,
        certificate,
    })
}

fn small_rational<R: Rng>(rng: &mut R, height: i64) -> Rational {
    Rational::new(
        rng.gen_range(-height..=height),
        rng.gen_range(1..=height.max(1)),
    )
}

/// Seeded exact `U` with `U E Ūᵗ = E`, `E = diag(−1 ×ℓ, +1 ×(m−ℓ))`.
///
/// Products of rational rotations within same-sign pairs, rational boosts
/// across opposite-sign pairs, and unit diagonal phases.
pub fn random_indefinite_unitary<R: Rng>(
    ell: usize,
    m: usize,
    factors: usize,
    height: i64,
    rng: &mut R,
) -> Matrix {
    let mut u = Matrix::identity(m);
    if m == 0 {
        return u;
    }
    let signs = crate::quadric::standard_signs(m, ell);
    let one = Rational::one();
    for _ in 0..factors {
        let kind = rng.gen_range(0..3);
        let t = small_rational(rng, height);
        let t2 = &t * &t;
        let mut g = Matrix::identity(m);
        match kind {
            0 | 1 if m >= 2 => {
                let i = rng.gen_range(0..m);
                let mut j = rng.gen_range(0..m - 1);
                if j >= i {
                    j += 1;
                }
                let (i, j) = (i.min(j), i.max(j));
                if signs[i] == signs[j] {
                    let den = &one + &t2;
                    let c = &(&one - &t2) / &den;
                    let s = &(&t + &t) / &den;
                    g.set(i, i, c.clone().into());
                    g.set(j, j, c.into());
                    g.set(i, j, s.clone().into());
                    g.set(j, i, (-s).into());
                } else {
                    let den = &one - &t2;
                    if den.is_zero() {
                        continue;
                    }
                    let c = &(&one + &t2) / &den;
                    let s = &(&t + &t) / &den;
                    g.set(i, i, c.clone().into());
                    g.set(j, j, c.into());
                    g.set(i, j, s.clone().into());
                    g.set(j, i, s.into());
                }
            }
            _ => {
                let k = rng.gen_range(0..m);
                let phase = match rng.gen_range(0..5) {
                    0 => GaussianRational::from(-1),
                    1 => GaussianRational::i(),
                    2 => -GaussianRational::i(),
                    3 => GaussianRational::one(),
                    _ => {
                        let den = &one + &t2;
                        GaussianRational::new(&(&one - &t2) / &den, &(&t + &t) / &den)
                    }
                };
                g.set(k, k, phase);
            }
        }
        u = u.mul(&g).expect("square");
    }
    u
}

/// Random valid parameters for the standard quadric `ℍᴺ_{ℓ'}`.
///
/// `ε = −1` is only drawn when the sign counts are equal.
pub fn random_aut_params<R: Rng>(
    target: &Hyperquadric,
    height: i64,
    allow_flip: bool,
    rng: &mut R,
) -> AutParams {
    let m = target.n() - 1;
    let ell = target.ell();
    let mut u = random_indefinite_unitary(ell, m, 3, height, rng);
    let mut epsilon = 1;
    if allow_flip && 2 * ell == m && rng.gen_bool(0.5) {
        epsilon = -1;
        let mut swap = Matrix::zeros(m, m);
        for k in 0..m {
            swap.set(k, (k + ell) % m, GaussianRational::one());
        }
        u = swap.mul(&u).expect("square");
    }
    let lambda = loop {
        let l = GaussianRational::new(small_rational(rng, height), small_rational(rng, height));
        if !l.is_zero() {
            break l;
        }
    };
    let a = (0..m)
        .map(|_| GaussianRational::new(small_rational(rng, height), small_rational(rng, height)))
        .collect();
    AutParams {
        lambda,
        epsilon,
        a,
        r: small_rational(rng, height),
        u,
    }
}
