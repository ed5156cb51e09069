//! Gaussian rationals `a + b·i` with `a, b ∈ ℚ`.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use super::rational::{ParseRationalError, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from(Rational::one())
    }

    pub fn i() -> Self {
        GaussianRational {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational {
            re: re.into(),
            im: im.into(),
        }
    }

    /// `(rn/rd) + (in/id)·i`
    pub fn from_fracs(rn: i64, rd: i64, inum: i64, id: i64) -> Self {
        GaussianRational {
            re: Rational::new(rn, rd),
            im: Rational::new(inum, id),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `|x|² = x·conj(x)`, always rational.
    pub fn norm_sqr(&self) -> Rational {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr().recip()?;
        Some(GaussianRational {
            re: &self.re * &n,
            im: -(&self.im * &n),
        })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussianRational {
            re: &self.re * r,
            im: &self.im * r,
        }
    }

    /// Multiply by `i`.
    pub fn mul_i(&self) -> Self {
        GaussianRational {
            re: -&self.im,
            im: self.re.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn height_bits(&self) -> u64 {
        self.re.height_bits().max(self.im.height_bits())
    }

    /// Crude complex value, for display and diagnostics only.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl From<Rational> for GaussianRational {
    fn from(re: Rational) -> Self {
        GaussianRational {
            re,
            im: Rational::zero(),
        }
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from(Rational::from(n))
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() {
            if rhs.im.is_zero() {
                return GaussianRational::from(&self.re * &rhs.re);
            }
            return rhs.scale(&self.re);
        }
        if rhs.im.is_zero() {
            return self.scale(&rhs.re);
        }
        GaussianRational {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        if rhs.im.is_zero() {
            let r = rhs.re.recip().expect("division by zero");
            return self.scale(&r);
        }
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

impl Sum for GaussianRational {
    fn sum<I: Iterator<Item = GaussianRational>>(iter: I) -> Self {
        let mut acc = GaussianRational::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |im: &Rational| -> String {
            if im.is_one() {
                "i".to_string()
            } else {
                format!("{im}*i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                if self.im == -Rational::one() {
                    write!(f, "-i")
                } else {
                    write!(f, "{}", im_part(&self.im))
                }
            }
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}", self.re, im_part(&-&self.im))
                } else {
                    write!(f, "{}+{}", self.re, im_part(&self.im))
                }
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussianRational {
    type Err = ParseRationalError;

    /// Accepts `a`, `a/b`, `c*i`, `i`, `-i`, `a/b+c/d*i`, `a-c*i`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        if !t.ends_with('i') {
            return Ok(GaussianRational::from(
                t.parse::<Rational>().map_err(|_| err())?,
            ));
        }
        let body = &t[..t.len() - 1];
        let body = body.strip_suffix('*').unwrap_or(body);
        // split position: last sign that is not the leading one
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .next_back();
        let (re_s, im_s) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let re = if re_s.is_empty() {
            Rational::zero()
        } else {
            re_s.parse().map_err(|_| err())?
        };
        let im = match im_s {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            x => x.parse().map_err(|_| err())?,
        };
        Ok(GaussianRational { re, im })
    }
}

impl serde::Serialize for GaussianRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for GaussianRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gq() -> impl Strategy<Value = GaussianRational> {
        (-20i64..20, 1i64..9, -20i64..20, 1i64..9)
            .prop_map(|(a, b, c, d)| GaussianRational::from_fracs(a, b, c, d))
    }

    #[test]
    fn display_parse() {
        for s in [
            "0",
            "3",
            "-1/2",
            "i",
            "-i",
            "2*i",
            "1/2+3/4*i",
            "-1-i",
            "5-2/3*i",
        ] {
            let x: GaussianRational = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert!("1/0*i".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn i_squared() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from(-1));
    }

    proptest! {
        #[test]
        fn field_axioms(a in gq(), b in gq(), c in gq()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert!((&a * &a.conj()).is_real());
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
            let back: GaussianRational = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
