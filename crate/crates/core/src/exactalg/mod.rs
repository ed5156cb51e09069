//! Exact scalars, sparse polynomials, Hermitian polynomials and linear algebra.

pub mod chart;
pub mod gaussian;
pub mod herm;
pub mod holo;
pub mod matrix;
pub mod monomial;
pub mod norms;
pub mod poly;
pub mod rational;

pub use chart::ChartPoly;
pub use gaussian::GaussianRational;
pub use herm::{BiholoPoly, DiagonalRestriction, HermPoly};
pub use holo::{HoloPoly, VariableSpace};
pub use matrix::Matrix;
pub use monomial::Monomial;
pub use poly::Poly;
pub use rational::Rational;

/// Operator impls for a polynomial wrapper `{ $field, poly }`; operands must
/// agree on `$field`.
macro_rules! wrapper_ops {
    ($t:ident, $field:ident) => {
        impl<'a> std::ops::Add<&'a $t> for &'a $t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                assert_eq!(self.$field, rhs.$field, "variable space mismatch");
                $t {
                    $field: self.$field,
                    poly: &self.poly + &rhs.poly,
                }
            }
        }
        impl<'a> std::ops::Sub<&'a $t> for &'a $t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                assert_eq!(self.$field, rhs.$field, "variable space mismatch");
                $t {
                    $field: self.$field,
                    poly: &self.poly - &rhs.poly,
                }
            }
        }
        impl<'a> std::ops::Mul<&'a $t> for &'a $t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                assert_eq!(self.$field, rhs.$field, "variable space mismatch");
                $t {
                    $field: self.$field,
                    poly: &self.poly * &rhs.poly,
                }
            }
        }
        impl std::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $t {
                    $field: self.$field,
                    poly: -&self.poly,
                }
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
        impl std::ops::Add<$t> for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl std::ops::Sub<$t> for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl std::ops::Mul<$t> for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
    };
}

pub(crate) use wrapper_ops;
