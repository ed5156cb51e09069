//! Exact division by the polarized form `⟨z, ξ̄⟩_ℓ`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactalg::{BiholoPoly, GaussianRational, Monomial, Poly, VariableSpace};
use crate::quadric::standard_signs;

/// `Q = Σ s_j z_j ξ̄_j` with the first `ℓ` signs negative.
pub fn polarized_form(space: VariableSpace, ell: usize) -> BiholoPoly {
    let mut q = BiholoPoly::zero(space);
    for (j, &s) in standard_signs(space.nz(), ell).iter().enumerate() {
        let t = &BiholoPoly::z(space, j) * &BiholoPoly::xibar(space, j);
        q = &q + &t.scale(&GaussianRational::from(s as i64));
    }
    q
}

#[derive(Clone, Debug)]
pub enum Division {
    Divisible {
        quotient: BiholoPoly,
    },
    /// `(z, ξ̄)` on `Q = 0` with `S ≠ 0` there.
    NotDivisible {
        z: Vec<GaussianRational>,
        xibar: Vec<GaussianRational>,
        value: GaussianRational,
    },
}

impl Division {
    pub fn quotient(&self) -> Option<&BiholoPoly> {
        match self {
            Division::Divisible { quotient } => Some(quotient),
            Division::NotDivisible { .. } => None,
        }
    }
}

/// Reduces `s` modulo `Q`; returns `(quotient, remainder)` with `s = quotient·Q + remainder`
/// and no term of the remainder divisible by `z_1 ξ̄_1`.
///
/// `{Q}` is a Gröbner basis of the ideal it generates, so the remainder is
/// zero exactly when `Q` divides `s`.
pub fn reduce_by_form(s: &BiholoPoly, ell: usize) -> (BiholoPoly, BiholoPoly) {
    let space = s.space();
    let n = space.n();
    let nv = 2 * n;
    let q = polarized_form(space, ell);
    let lead = {
        let mut e = vec![0u16; nv];
        e[0] = 1;
        e[n] = 1;
        Monomial::from_exps(&e)
    };
    let lead_inv = q
        .poly()
        .coeff(&lead)
        .inv()
        .expect("nonzero leading coefficient");
    let mut rem = s.poly().clone();
    let mut quot = Poly::zero(nv);
    // each step trades one z1·ξ̄1 factor for z_j·ξ̄_j with j ≥ 2, so this terminates
    loop {
        let Some((m, c)) = rem
            .terms()
            .rev()
            .find(|(m, _)| lead.divides(m))
            .map(|(m, c)| (m.clone(), c.clone()))
        else {
            break;
        };
        let t = Poly::monomial(lead.quotient_of(&m), &c * &lead_inv);
        rem = &rem - &(&t * q.poly());
        quot = &quot + &t;
    }
    (
        BiholoPoly::from_poly(space, quot),
        BiholoPoly::from_poly(space, rem),
    )
}

pub fn divide_by_form(s: &BiholoPoly, ell: usize) -> Division {
    let (quotient, rem) = reduce_by_form(s, ell);
    if rem.is_zero() {
        return Division::Divisible { quotient };
    }
    let (z, xibar, value) =
        zero_set_witness(s, ell).expect("a nonzero remainder is nonzero somewhere on Q = 0");
    Division::NotDivisible { z, xibar, value }
}

/// A point of `{Q = 0}` where `s ≠ 0`, searched with a fixed seed.
pub fn zero_set_witness(
    s: &BiholoPoly,
    ell: usize,
) -> Option<(
    Vec<GaussianRational>,
    Vec<GaussianRational>,
    GaussianRational,
)> {
    let space = s.space();
    let m = space.nz();
    let signs = standard_signs(m, ell);
    let mut rng = ChaCha8Rng::seed_from_u64(0xd1_5150);
    for attempt in 0..2000u32 {
        let h = 1 + (attempt / 100) as i64;
        let mut gen = || GaussianRational::from_ints(rng.gen_range(-h..=h), rng.gen_range(-h..=h));
        let mut z: Vec<GaussianRational> = (0..m).map(|_| gen()).collect();
        let mut xb: Vec<GaussianRational> = (0..m).map(|_| gen()).collect();
        if m == 1 {
            // Q = s_1 z_1 ξ̄_1 vanishes only on the two coordinate branches
            if attempt % 2 == 0 {
                z[0] = GaussianRational::zero();
            } else {
                xb[0] = GaussianRational::zero();
            }
        } else {
            if z[0].is_zero() {
                continue;
            }
            let mut rest = GaussianRational::zero();
            for j in 1..m {
                rest += &(&(&z[j] * &xb[j]) * &GaussianRational::from(signs[j] as i64));
            }
            let denom = &z[0] * &GaussianRational::from(signs[0] as i64);
            xb[0] = -(&rest / &denom);
        }
        let mut holo = z.clone();
        holo.push(GaussianRational::zero());
        let mut anti = xb.clone();
        anti.push(GaussianRational::zero());
        let v = s.evaluate(&holo, &anti).ok()?;
        if !v.is_zero() {
            debug_assert!(polarized_form(space, ell)
                .evaluate(&holo, &anti)
                .unwrap()
                .is_zero());
            return Some((z, xb, v));
        }
    }
    None
}
