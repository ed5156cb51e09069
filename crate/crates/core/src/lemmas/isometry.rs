//! Isometry recovery for `Σ|a_i|² = Σ|b_j|²` and the signed-sum lemma.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::division::{divide_by_form, Division};
use super::products::random_germ;
use crate::autnorm::random_indefinite_unitary;
use crate::exactalg::matrix::witt_extend;
use crate::exactalg::{BiholoPoly, GaussianRational, HoloPoly, Matrix, Monomial, VariableSpace};

#[derive(Clone, Debug)]
pub enum IsometryResult {
    /// `b = a·U` and `U·Ū^t = Id_k`, both checked exactly.
    Exact { u: Matrix },
    /// The Gram identity holds but no exact `U` was produced.
    Certificate { rank: usize, reason: String },
    /// `Σ|a|² ≠ Σ|b|²`, with a point `z` where the two sides differ.
    Refuted {
        z: Vec<GaussianRational>,
        difference: GaussianRational,
    },
}

impl IsometryResult {
    pub fn matrix(&self) -> Option<&Matrix> {
        match self {
            IsometryResult::Exact { u } => Some(u),
            _ => None,
        }
    }
}

/// `Σ_j b_j·conj(b_j) − Σ_i a_i·conj(a_i)` in polarized form.
pub fn signed_gram_difference(space: VariableSpace, a: &[HoloPoly], b: &[HoloPoly]) -> BiholoPoly {
    let mut s = BiholoPoly::zero(space);
    for p in b {
        s = &s + &BiholoPoly::holo_times_conj(p, p);
    }
    for p in a {
        s = &s - &BiholoPoly::holo_times_conj(p, p);
    }
    s
}

/// Coefficient rows of `family` over a shared monomial list.
fn coefficient_rows(family: &[HoloPoly], monos: &[Monomial]) -> Vec<Vec<GaussianRational>> {
    family
        .iter()
        .map(|p| monos.iter().map(|m| p.coeff(m)).collect())
        .collect()
}

/// Recovers `U` with `b = a·U`, `U·Ū^t = Id`, from `Σ|a_i|² = Σ|b_j|²`.
pub fn isometry_decompose(space: VariableSpace, a: &[HoloPoly], b: &[HoloPoly]) -> IsometryResult {
    let k = a.len();
    let m = b.len();
    let diff = signed_gram_difference(space, a, b);
    if !diff.is_zero() {
        let (z, difference) = real_witness(&diff);
        return IsometryResult::Refuted { z, difference };
    }
    let monos: Vec<Monomial> = a
        .iter()
        .chain(b)
        .flat_map(|p| p.poly().terms().map(|(mm, _)| mm.clone()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let ca = Matrix::from_rows(coefficient_rows(a, &monos));
    let cb = Matrix::from_rows(coefficient_rows(b, &monos));
    let rank = if k == 0 { 0 } else { ca.rank() };
    if k > m {
        return IsometryResult::Certificate {
            rank,
            reason: format!("k = {k} exceeds m = {m}; no k x m coisometry exists"),
        };
    }
    if k == 0 {
        return IsometryResult::Exact {
            u: Matrix::zeros(0, m),
        };
    }
    let u = if rank == k {
        // C_b = Uᵗ C_a, i.e. C_aᵗ U = C_bᵗ
        match ca.transpose().solve(&cb.transpose()) {
            Some(u) => u,
            None => {
                return IsometryResult::Certificate {
                    rank,
                    reason: "linear system b = a U is inconsistent".into(),
                }
            }
        }
    } else {
        // Gram equality pairs the monomial columns isometrically; extend in ℂ^m
        let pad = |c: Vec<GaussianRational>| {
            let mut c = c;
            c.resize(m, GaussianRational::zero());
            c
        };
        let sources: Vec<_> = (0..monos.len()).map(|j| pad(ca.col(j))).collect();
        let targets: Vec<_> = (0..monos.len()).map(|j| pad(cb.col(j))).collect();
        match witt_extend(&sources, &targets, &vec![1; m]) {
            Ok(w) => Matrix::from_rows((0..k).map(|i| w.row(i)).collect()),
            Err(e) => {
                return IsometryResult::Certificate {
                    rank,
                    reason: format!("no exact completion: {e}"),
                }
            }
        }
    };
    if !is_coisometry(&u) || ca.transpose().mul(&u).ok().as_ref() != Some(&cb.transpose()) {
        return IsometryResult::Certificate {
            rank,
            reason: "recovered matrix failed the exact checks".into(),
        };
    }
    IsometryResult::Exact { u }
}

/// `U·Ū^t = Id`.
pub fn is_coisometry(u: &Matrix) -> bool {
    u.mul(&u.conj_transpose())
        .is_ok_and(|p| p == Matrix::identity(u.rows()))
}

/// A point `z` (with `ξ = z`) where the polarized polynomial is nonzero.
fn real_witness(diff: &BiholoPoly) -> (Vec<GaussianRational>, GaussianRational) {
    let space = diff.space();
    let nz = space.nz();
    let mut rng = ChaCha8Rng::seed_from_u64(0xda_9e10);
    for attempt in 0..4000u32 {
        let h = 1 + (attempt / 200) as i64;
        let z: Vec<GaussianRational> = (0..nz)
            .map(|_| GaussianRational::from_ints(rng.gen_range(-h..=h), rng.gen_range(-h..=h)))
            .collect();
        let mut holo = z.clone();
        holo.push(GaussianRational::zero());
        let anti: Vec<GaussianRational> = holo.iter().map(GaussianRational::conj).collect();
        let v = diff.evaluate(&holo, &anti).expect("dimensions match");
        if !v.is_zero() {
            return (z, v);
        }
    }
    unreachable!("a nonzero real-analytic polynomial is nonzero at some Gaussian integer point")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignatureGapVerdict {
    /// Hypotheses hold, `A ≡ 0`, and an exact isometry was recovered.
    Confirmed,
    /// Hypotheses hold, `A ≡ 0`, Gram identity certified without exact `U`.
    Certified,
    /// Hypotheses hold and the signed sum is not divisible.
    NotDivisible,
    /// `k < ℓ ≤ (n−1)/2` or `k ≤ m` fails; reported without a claim.
    HypothesisViolated,
    /// Hypotheses hold, divisible, and `A ≠ 0` or the decomposition fails.
    Counterexample,
}

#[derive(Clone, Debug)]
pub struct SignatureGapReport {
    pub n: usize,
    pub ell: usize,
    pub k: usize,
    pub m: usize,
    pub hypotheses: bool,
    pub quotient: Option<BiholoPoly>,
    pub witness: Option<(
        Vec<GaussianRational>,
        Vec<GaussianRational>,
        GaussianRational,
    )>,
    pub decomposition: Option<IsometryResult>,
    pub verdict: SignatureGapVerdict,
}

/// Tests `−Σ|a_i|² + Σ|b_j|² = A·|z|²_ℓ` by polarized division, then recovers
/// the isometry when `A ≡ 0`.
pub fn signature_gap_check(
    n: usize,
    ell: usize,
    a: &[HoloPoly],
    b: &[HoloPoly],
) -> crate::Result<SignatureGapReport> {
    let space = VariableSpace::new(n)?;
    if let Some(p) = a
        .iter()
        .chain(b)
        .find(|p| p.space() != space || !p.is_w_free())
    {
        return Err(crate::Error::Invalid(format!(
            "{p} is not a germ in z_1..z_{}",
            n - 1
        )));
    }
    let (k, m) = (a.len(), b.len());
    let hypotheses = k < ell && 2 * ell < n && k <= m;
    let s = signed_gram_difference(space, a, b);
    let (quotient, witness) = match divide_by_form(&s, ell) {
        Division::Divisible { quotient } => (Some(quotient), None),
        Division::NotDivisible { z, xibar, value } => (None, Some((z, xibar, value))),
    };
    let decomposition = quotient
        .as_ref()
        .filter(|q| q.is_zero())
        .map(|_| isometry_decompose(space, a, b));
    let verdict = match (&quotient, &decomposition, hypotheses) {
        (_, _, false) => SignatureGapVerdict::HypothesisViolated,
        (None, _, true) => SignatureGapVerdict::NotDivisible,
        (Some(_), Some(IsometryResult::Exact { .. }), true) => SignatureGapVerdict::Confirmed,
        (Some(_), Some(IsometryResult::Certificate { .. }), true) => SignatureGapVerdict::Certified,
        (Some(_), _, true) => SignatureGapVerdict::Counterexample,
    };
    Ok(SignatureGapReport {
        n,
        ell,
        k,
        m,
        hypotheses,
        quotient,
        witness,
        decomposition,
        verdict,
    })
}

/// `a` random of size `k`, `b = a·U₀` with `U₀` the first `k` rows of a
/// random rational unitary `m × m` matrix.
pub fn random_isometric_pair<R: Rng>(
    space: VariableSpace,
    k: usize,
    m: usize,
    rng: &mut R,
) -> (Vec<HoloPoly>, Vec<HoloPoly>, Matrix) {
    let a: Vec<HoloPoly> = (0..k)
        .map(|_| random_germ(space, 2, rng.gen_range(1..=3), 2, rng))
        .collect();
    let full = random_indefinite_unitary(0, m, 4, 3, rng);
    let u0 = Matrix::from_rows((0..k).map(|i| full.row(i)).collect());
    let b = (0..m)
        .map(|j| {
            let mut bj = HoloPoly::zero(space);
            for (i, ai) in a.iter().enumerate() {
                bj = &bj + &ai.scale(u0.get(i, j));
            }
            bj
        })
        .collect();
    (a, b, u0)
}
