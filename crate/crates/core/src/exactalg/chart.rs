//! Polynomials on the quadric chart `(z, z̄, u)`, where `w = u + i·H(z, z̄)`.

use std::fmt;
use std::ops::Deref;

use super::gaussian::GaussianRational;
use super::herm::HermPoly;
use super::holo::{HoloPoly, VariableSpace};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Variables `z_1..z_{n-1}, z̄_1..z̄_{n-1}, u`; `u` is real.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ChartPoly {
    space: VariableSpace,
    poly: Poly,
}

fn nvars(space: VariableSpace) -> usize {
    2 * space.nz() + 1
}

/// Images of `(z, w, z̄, w̄)` in chart coordinates for the form with signs `signs`.
fn chart_images(space: VariableSpace, signs: &[i8]) -> Vec<Poly> {
    let m = space.nz();
    let nv = nvars(space);
    assert_eq!(signs.len(), m, "sign vector length");
    let mut h = Poly::zero(nv);
    for (j, &s) in signs.iter().enumerate() {
        let zz = &Poly::var(nv, j) * &Poly::var(nv, m + j);
        h = &h + &zz.scale(&GaussianRational::from(s as i64));
    }
    let u = Poly::var(nv, 2 * m);
    let ih = h.scale(&GaussianRational::i());
    let mut images: Vec<Poly> = (0..m).map(|j| Poly::var(nv, j)).collect();
    images.push(&u + &ih);
    images.extend((0..m).map(|j| Poly::var(nv, m + j)));
    images.push(&u - &ih);
    images
}

impl ChartPoly {
    pub fn from_poly(space: VariableSpace, poly: Poly) -> Self {
        assert_eq!(poly.nvars(), nvars(space), "chart arity");
        ChartPoly { space, poly }
    }

    pub fn zero(space: VariableSpace) -> Self {
        Self::from_poly(space, Poly::zero(nvars(space)))
    }

    /// Restriction of a Hermitian polynomial to the quadric with signs `signs`.
    pub fn from_herm(h: &HermPoly, signs: &[i8]) -> Self {
        let images = chart_images(h.space(), signs);
        let poly = h.poly().substitute(&images).expect("chart images");
        ChartPoly {
            space: h.space(),
            poly,
        }
    }

    /// Restriction of a general polynomial in `(z, w, z̄, w̄)`.
    pub fn from_mixed(space: VariableSpace, p: &Poly, signs: &[i8]) -> Self {
        let images = chart_images(space, signs);
        ChartPoly {
            space,
            poly: p.substitute(&images).expect("chart images"),
        }
    }

    /// Restriction of a holomorphic polynomial.
    pub fn from_holo(f: &HoloPoly, signs: &[i8]) -> Self {
        let space = f.space();
        let images = chart_images(space, signs);
        let poly = f
            .poly()
            .substitute(&images[..space.n()])
            .expect("chart images");
        ChartPoly { space, poly }
    }

    pub fn space(&self) -> VariableSpace {
        self.space
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn weights(&self) -> Vec<u32> {
        let mut w = vec![1; 2 * self.space.nz()];
        w.push(2);
        w
    }

    pub fn names(&self) -> Vec<String> {
        let m = self.space.nz();
        let mut v: Vec<String> = (1..=m).map(|j| format!("z{j}")).collect();
        v.extend((1..=m).map(|j| format!("conj(z{j})")));
        v.push("u".into());
        v
    }

    pub fn conj(&self) -> Self {
        let m = self.space.nz();
        let map: Vec<usize> = (0..2 * m + 1)
            .map(|i| {
                if i < m {
                    i + m
                } else if i < 2 * m {
                    i - m
                } else {
                    i
                }
            })
            .collect();
        ChartPoly {
            space: self.space,
            poly: self.poly.remap_vars(nvars(self.space), &map).conj_coeffs(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// `(p − conj p)/(2i)`.
    pub fn imag_part(&self) -> Self {
        let c = GaussianRational::from_fracs(0, 1, -1, 2);
        ChartPoly {
            space: self.space,
            poly: (&self.poly - &self.conj().poly).scale(&c),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        ChartPoly {
            space: self.space,
            poly: self.poly.scale(c),
        }
    }

    /// Value at `z` and real `u`.
    pub fn evaluate(
        &self,
        z: &[GaussianRational],
        u: &GaussianRational,
    ) -> Result<GaussianRational> {
        if z.len() != self.space.nz() {
            return Err(Error::Dimension {
                expected: self.space.nz(),
                got: z.len(),
            });
        }
        let mut full = z.to_vec();
        full.extend(z.iter().map(|x| x.conj()));
        full.push(u.clone());
        self.poly.eval(&full)
    }

    pub fn weighted_degree(&self) -> u32 {
        self.poly.weighted_degree(&self.weights())
    }
}

impl Deref for ChartPoly {
    type Target = Poly;
    fn deref(&self) -> &Poly {
        &self.poly
    }
}

impl fmt::Display for ChartPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.fmt_with(&self.names()))
    }
}

impl fmt::Debug for ChartPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

super::wrapper_ops!(ChartPoly, space);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w_restricts_to_u_plus_i_h() {
        let s = VariableSpace::new(3).unwrap();
        let c = ChartPoly::from_holo(&HoloPoly::w(s), &[-1, 1]);
        assert_eq!(c.to_string(), "u - i*z1*conj(z1) + i*z2*conj(z2)");
        assert_eq!(c.imag_part().to_string(), "-z1*conj(z1) + z2*conj(z2)");
        assert!(c.imag_part().is_real());
    }
}
