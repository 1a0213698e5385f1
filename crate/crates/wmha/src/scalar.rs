//! The base field: Gaussian rationals ℚ(i).
//!
//! A [`Scalar`] is a pair of arbitrary-precision rationals `re + im·i`.
//! All arithmetic is exact; equality is exact structural equality
//! (rationals are kept in reduced form by `num`).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An element of ℚ(i), stored as real and imaginary rational parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Scalar { re: BigRational::one(), im: BigRational::zero() }
    }

    /// The imaginary unit `i`.
    pub fn i() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { re: BigRational::from_integer(BigInt::from(n)), im: BigRational::zero() }
    }

    /// `p/q` as a real rational scalar. Panics if `q == 0`.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar {
            re: BigRational::new(BigInt::from(p), BigInt::from(q)),
            im: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// Complex conjugate `re - im·i`.
    pub fn conj(&self) -> Self {
        Scalar { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `re² + im²` — zero exactly when the scalar is zero.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        let n = self.norm_sq();
        assert!(!n.is_zero(), "division by zero scalar");
        Scalar { re: &self.re / &n, im: -(&self.im / &n) }
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl<'a> Add<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar { re: self.re + &rhs.re, im: self.im + &rhs.im }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl<'a, 'b> Sub<&'b Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        (&self).mul(&rhs)
    }
}

impl<'a, 'b> Mul<&'b Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = (&*self).mul(rhs);
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        (&self).mul(&rhs.inv())
    }
}

impl<'a, 'b> Div<&'b Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.mul(&rhs.inv())
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// Renders like `"3/2"`, `"-1"`, `"i"`, `"2-3i"`, `"1/2+i"`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let im_part = {
            let mag = self.im.abs();
            let mag = if mag.is_one() { String::new() } else { fmt_rational(&mag) };
            if self.im.is_negative() { format!("-{mag}i") } else { format!("{mag}i") }
        };
        if self.re.is_zero() {
            write!(f, "{im_part}")
        } else if self.im.is_negative() {
            write!(f, "{}{im_part}", fmt_rational(&self.re))
        } else {
            write!(f, "{}+{im_part}", fmt_rational(&self.re))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parse error for [`Scalar::from_str`].
#[derive(Debug, thiserror::Error)]
#[error("invalid scalar literal `{0}`")]
pub struct ParseScalarError(String);

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Accepts the same surface syntax [`Display`](fmt::Display)
    /// produces: `a`, `bi`, `a+bi`, `a-bi` with rational `a`, `b`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError(s.to_string());
        let s = s.trim();
        if s.is_empty() {
            return Err(err());
        }
        let parse_rat = |t: &str| -> Option<BigRational> {
            let t = t.trim();
            match t {
                "" | "+" => Some(BigRational::one()),
                "-" => Some(-BigRational::one()),
                _ => BigRational::from_str(t).ok(),
            }
        };
        if let Some(im_text) = s.strip_suffix('i') {
            // Split off a real part if one precedes the imaginary term:
            // scan for a '+'/'-' that is not leading and not inside the
            // exponent-free rational syntax (only '/' and digits occur).
            let mut split = None;
            for (idx, ch) in im_text.char_indices().skip(1) {
                if ch == '+' || ch == '-' {
                    split = Some(idx);
                }
            }
            if let Some(idx) = split {
                let (re_text, im_sign_text) = im_text.split_at(idx);
                let re = parse_rat(re_text).ok_or_else(err)?;
                let im = parse_rat(im_sign_text).ok_or_else(err)?;
                Ok(Scalar { re, im })
            } else {
                let im = parse_rat(im_text).ok_or_else(err)?;
                Ok(Scalar { re: BigRational::zero(), im })
            }
        } else {
            let re = parse_rat(s).ok_or_else(err)?;
            Ok(Scalar { re, im: BigRational::zero() })
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn field_arithmetic_is_exact() {
        let a = s("1/3");
        let b = s("2/3");
        assert_eq!(a + b, Scalar::one());
        assert_eq!(Scalar::i().clone() * Scalar::i(), -Scalar::one());
        let c = s("3-4i");
        assert_eq!((&c * &c.inv()), Scalar::one());
    }

    #[test]
    fn display_round_trips() {
        for text in ["0", "1", "-1", "3/2", "i", "-i", "2i", "1/2+i", "2-3i", "-5/7+2/3i"] {
            let v = s(text);
            assert_eq!(v.to_string(), text);
            assert_eq!(s(&v.to_string()), v);
        }
    }

    #[test]
    fn serde_uses_string_form() {
        let v = s("2-3i");
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, "\"2-3i\"");
        let back: Scalar = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn rejects_garbage() {
        assert!("".parse::<Scalar>().is_err());
        assert!("1.5".parse::<Scalar>().is_err());
        assert!("x+i".parse::<Scalar>().is_err());
    }
}
