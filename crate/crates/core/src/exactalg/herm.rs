//! Real-valued polynomials in `(z, w, z̄, w̄)` and their polarizations.
//!
//! Both types store a polynomial in `2n` variables laid out as
//! `z_1..z_{n-1}, w, z̄_1..z̄_{n-1}, w̄`. For a [`BiholoPoly`] the second half
//! is read as independent variables `ξ̄, η̄`.

use std::fmt;
use std::ops::Deref;

use super::gaussian::GaussianRational;
use super::holo::{HoloPoly, VariableSpace};
use super::poly::Poly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Swaps the holomorphic and antiholomorphic halves and conjugates coefficients.
pub(crate) fn conj_swap(p: &Poly, n: usize) -> Poly {
    let map: Vec<usize> = (0..2 * n)
        .map(|i| if i < n { i + n } else { i - n })
        .collect();
    p.remap_vars(2 * n, &map).conj_coeffs()
}

/// `f(z, w)` placed in the holomorphic half.
pub(crate) fn lift_holo(f: &HoloPoly) -> Poly {
    let n = f.space().n();
    let map: Vec<usize> = (0..n).collect();
    f.poly().remap_vars(2 * n, &map)
}

/// `conj(f)(z̄, w̄)` placed in the antiholomorphic half.
pub(crate) fn lift_anti(f: &HoloPoly) -> Poly {
    let n = f.space().n();
    let map: Vec<usize> = (n..2 * n).collect();
    f.poly().remap_vars(2 * n, &map).conj_coeffs()
}

fn herm_names(space: VariableSpace, bar: &str) -> Vec<String> {
    let mut v = space.names();
    if bar == "conj" {
        for s in space.names() {
            v.push(format!("conj({s})"));
        }
    } else {
        for j in 1..space.n() {
            v.push(format!("xibar{j}"));
        }
        v.push("etabar".into());
    }
    v
}

fn herm_weights(space: VariableSpace) -> Vec<u32> {
    let mut w = space.weights();
    w.extend(space.weights());
    w
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HermPoly {
    space: VariableSpace,
    poly: Poly,
}

impl HermPoly {
    /// Wraps `poly`, rejecting coefficient tables without Hermitian symmetry.
    pub fn new(space: VariableSpace, poly: Poly) -> Result<Self> {
        if poly.nvars() != 2 * space.n() {
            return Err(Error::SpaceMismatch(2 * space.n(), poly.nvars()));
        }
        if conj_swap(&poly, space.n()) != poly {
            return Err(Error::Invalid(
                "coefficient table is not Hermitian-symmetric".into(),
            ));
        }
        Ok(HermPoly { space, poly })
    }

    pub fn zero(space: VariableSpace) -> Self {
        HermPoly {
            space,
            poly: Poly::zero(2 * space.n()),
        }
    }

    pub fn constant(space: VariableSpace, r: Rational) -> Self {
        HermPoly {
            space,
            poly: Poly::constant(2 * space.n(), r.into()),
        }
    }

    /// `|f|² = f·conj(f)`.
    pub fn abs_sq(f: &HoloPoly) -> Self {
        HermPoly {
            space: f.space(),
            poly: &lift_holo(f) * &lift_anti(f),
        }
    }

    /// `Re(f) = (f + conj f)/2`.
    pub fn re_of(f: &HoloPoly) -> Self {
        let half = GaussianRational::from(Rational::new(1, 2));
        HermPoly {
            space: f.space(),
            poly: (&lift_holo(f) + &lift_anti(f)).scale(&half),
        }
    }

    /// `Im(f) = (f − conj f)/(2i)`.
    pub fn im_of(f: &HoloPoly) -> Self {
        let c = GaussianRational::from_fracs(0, 1, -1, 2);
        HermPoly {
            space: f.space(),
            poly: (&lift_holo(f) - &lift_anti(f)).scale(&c),
        }
    }

    /// `Re` of an arbitrary polynomial in the `2n` variables.
    pub fn real_part(space: VariableSpace, p: &Poly) -> Self {
        let half = GaussianRational::from(Rational::new(1, 2));
        HermPoly {
            space,
            poly: (p + &conj_swap(p, space.n())).scale(&half),
        }
    }

    pub fn space(&self) -> VariableSpace {
        self.space
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn scale(&self, r: &Rational) -> Self {
        HermPoly {
            space: self.space,
            poly: self.poly.scale_rational(r),
        }
    }

    pub fn weights(&self) -> Vec<u32> {
        herm_weights(self.space)
    }

    pub fn weighted_degree(&self) -> u32 {
        self.poly.weighted_degree(&self.weights())
    }

    pub fn is_hermitian(&self) -> bool {
        conj_swap(&self.poly, self.space.n()) == self.poly
    }

    /// Value at `(z, w)`; the conjugate slots receive `conj` of the point.
    pub fn evaluate(&self, point: &[GaussianRational]) -> Result<GaussianRational> {
        if point.len() != self.space.n() {
            return Err(Error::Dimension {
                expected: self.space.n(),
                got: point.len(),
            });
        }
        let mut full: Vec<GaussianRational> = point.to_vec();
        full.extend(point.iter().map(|x| x.conj()));
        self.poly.eval(&full)
    }

    /// Real value at `(z, w)`.
    pub fn evaluate_real(&self, point: &[GaussianRational]) -> Result<Rational> {
        let v = self.evaluate(point)?;
        debug_assert!(v.is_real());
        Ok(v.re)
    }

    pub fn polarize(&self) -> BiholoPoly {
        BiholoPoly {
            space: self.space,
            poly: self.poly.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        HermPoly {
            space: self.space,
            poly: self.poly.pow(e),
        }
    }
}

impl Deref for HermPoly {
    type Target = Poly;
    fn deref(&self) -> &Poly {
        &self.poly
    }
}

impl fmt::Display for HermPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.fmt_with(&herm_names(self.space, "conj")))
    }
}

impl fmt::Debug for HermPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

super::wrapper_ops!(HermPoly, space);

/// A polynomial in independent variables `(z, w)` and `(ξ̄, η̄)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiholoPoly {
    space: VariableSpace,
    poly: Poly,
}

/// Result of setting `ξ = z`, `η = w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalRestriction {
    pub space: VariableSpace,
    pub poly: Poly,
    /// False when the source lacked Hermitian symmetry; values may then be non-real.
    pub hermitian: bool,
}

impl DiagonalRestriction {
    pub fn into_herm(self) -> Option<HermPoly> {
        self.hermitian.then_some(HermPoly {
            space: self.space,
            poly: self.poly,
        })
    }
}

impl BiholoPoly {
    pub fn from_poly(space: VariableSpace, poly: Poly) -> Self {
        assert_eq!(
            poly.nvars(),
            2 * space.n(),
            "polynomial arity does not match space"
        );
        BiholoPoly { space, poly }
    }

    pub fn zero(space: VariableSpace) -> Self {
        Self::from_poly(space, Poly::zero(2 * space.n()))
    }

    /// `a(z, w) · conj(b)(ξ̄, η̄)`.
    pub fn holo_times_conj(a: &HoloPoly, b: &HoloPoly) -> Self {
        assert_eq!(a.space(), b.space(), "variable space mismatch");
        BiholoPoly {
            space: a.space(),
            poly: &lift_holo(a) * &lift_anti(b),
        }
    }

    /// `z_{j+1}`, in the holomorphic half.
    pub fn z(space: VariableSpace, j: usize) -> Self {
        Self::from_poly(space, Poly::var(2 * space.n(), j))
    }

    /// `ξ̄_{j+1}`.
    pub fn xibar(space: VariableSpace, j: usize) -> Self {
        Self::from_poly(space, Poly::var(2 * space.n(), space.n() + j))
    }

    pub fn space(&self) -> VariableSpace {
        self.space
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        BiholoPoly {
            space: self.space,
            poly: self.poly.scale(c),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        BiholoPoly {
            space: self.space,
            poly: self.poly.pow(e),
        }
    }

    pub fn restrict_diagonal(&self) -> DiagonalRestriction {
        DiagonalRestriction {
            space: self.space,
            poly: self.poly.clone(),
            hermitian: conj_swap(&self.poly, self.space.n()) == self.poly,
        }
    }

    /// Value at independent points `(z, w)` and `(ξ̄, η̄)`.
    pub fn evaluate(
        &self,
        holo: &[GaussianRational],
        anti: &[GaussianRational],
    ) -> Result<GaussianRational> {
        let n = self.space.n();
        if holo.len() != n || anti.len() != n {
            return Err(Error::Dimension {
                expected: n,
                got: holo.len().min(anti.len()),
            });
        }
        let mut full = holo.to_vec();
        full.extend_from_slice(anti);
        self.poly.eval(&full)
    }
}

impl Deref for BiholoPoly {
    type Target = Poly;
    fn deref(&self) -> &Poly {
        &self.poly
    }
}

impl fmt::Display for BiholoPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.fmt_with(&herm_names(self.space, "xi")))
    }
}

impl fmt::Debug for BiholoPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

super::wrapper_ops!(BiholoPoly, space);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::monomial::Monomial;
    use proptest::prelude::*;

    fn sp(n: usize) -> VariableSpace {
        VariableSpace::new(n).unwrap()
    }

    #[test]
    fn abs_sq_product_is_single_term() {
        let s = sp(3);
        let a = HermPoly::abs_sq(&HoloPoly::z(s, 0));
        let b = HermPoly::abs_sq(&HoloPoly::z(s, 1));
        let p = &a * &b;
        assert_eq!(p.len(), 1);
        let (m, c) = p.terms().next().unwrap();
        assert_eq!(m.exps(), &[1, 1, 0, 1, 1, 0]);
        assert!(c.is_one());
        assert!(p.is_hermitian());
    }

    #[test]
    fn evaluation_is_real() {
        let s = sp(2);
        let a = HermPoly::abs_sq(&HoloPoly::z(s, 0));
        let v = a.evaluate(&[GaussianRational::i(), 0.into()]).unwrap();
        assert_eq!(v, GaussianRational::one());
    }

    #[test]
    fn polarize_and_restrict() {
        let s = sp(3);
        let a = HermPoly::abs_sq(&HoloPoly::z(s, 0));
        let b = a.polarize();
        assert_eq!(b.to_string(), "z1*xibar1");
        let back = b.restrict_diagonal();
        assert!(back.hermitian);
        assert_eq!(back.into_herm().unwrap(), a);
        let odd = BiholoPoly::holo_times_conj(&HoloPoly::z(s, 0), &HoloPoly::z(s, 1));
        let r = odd.restrict_diagonal();
        assert!(!r.hermitian);
        assert!(r.into_herm().is_none());
    }

    #[test]
    fn rejects_non_hermitian() {
        let s = sp(2);
        let p = Poly::var(4, 0);
        assert!(HermPoly::new(s, p).is_err());
    }

    fn small_herm(n: usize) -> impl Strategy<Value = HermPoly> {
        // up to five terms of degree <= 3, symmetrized
        let nv = 2 * n;
        proptest::collection::vec(
            (proptest::collection::vec(0u16..2, nv), -3i64..4, -3i64..4),
            0..5,
        )
        .prop_map(move |terms| {
            let mut p = Poly::zero(nv);
            for (e, a, b) in terms {
                let m = Monomial::from_exps(&e);
                if m.degree() <= 3 {
                    p.add_term(m, &GaussianRational::from_ints(a, b));
                }
            }
            HermPoly::real_part(VariableSpace::new(n).unwrap(), &p)
        })
    }

    proptest! {
        #[test]
        fn round_trip_polarization(h in small_herm(2)) {
            prop_assert!(h.is_hermitian());
            let back = h.polarize().restrict_diagonal();
            prop_assert!(back.hermitian);
            prop_assert_eq!(back.into_herm().unwrap(), h);
        }

        #[test]
        fn closure(a in small_herm(2), b in small_herm(2)) {
            prop_assert!((&a * &b).is_hermitian());
            prop_assert!((&a + &b).is_hermitian());
            prop_assert!((-&a).is_hermitian());
        }
    }
}
