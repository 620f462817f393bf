//! Exact complex-rational numbers `re + im·i`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn imag(im: BigRational) -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// `re + im·i` from small integers.
    pub fn gaussian(re: i64, im: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    pub fn i() -> Self {
        Self::gaussian(0, 1)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl From<BigRational> for GaussianRational {
    fn from(re: BigRational) -> Self {
        Self::real(re)
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: GaussianRational) -> GaussianRational {
        &self + &o
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: GaussianRational) -> GaussianRational {
        &self - &o
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussianRational::real(&self.re * &o.re);
        }
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: GaussianRational) -> GaussianRational {
        &self * &o
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

/// Renders a rational as `n` or `n/d`.
pub fn fmt_ratio(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `n` or `n/d` (optional sign, no spaces).
pub fn parse_ratio(s: &str) -> Result<BigRational, ParseError> {
    let s = s.trim();
    let bad = || ParseError::Number(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

impl fmt::Display for GaussianRational {
    /// `a`, `b i`, or `a + b i` / `a - b i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_ratio(&self.re)),
            (true, false) => write!(f, "{} i", fmt_ratio(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(
                    f,
                    "{} {} {} i",
                    fmt_ratio(&self.re),
                    sign,
                    fmt_ratio(&self.im.abs())
                )
            }
        }
    }
}

impl FromStr for GaussianRational {
    type Err = ParseError;

    /// Inverse of `Display`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let s = s.trim();
        let bad = || ParseError::Number(s.to_string());
        if let Some(body) = s.strip_suffix('i') {
            let body = body.trim_end();
            // split at a binary +/- separated by spaces
            for (pos, sep) in [(body.rfind(" + "), 1i8), (body.rfind(" - "), -1i8)] {
                if let Some(p) = pos {
                    let re = parse_ratio(&body[..p])?;
                    let mut im = parse_ratio(&body[p + 3..])?;
                    if sep < 0 {
                        im = -im;
                    }
                    return Ok(GaussianRational { re, im });
                }
            }
            if body.is_empty() {
                return Err(bad());
            }
            return Ok(GaussianRational::imag(parse_ratio(body)?));
        }
        Ok(GaussianRational::real(parse_ratio(s)?))
    }
}

#[derive(Serialize, Deserialize)]
struct Parts {
    re: String,
    im: String,
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Parts {
            re: fmt_ratio(&self.re),
            im: fmt_ratio(&self.im),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let p = Parts::deserialize(d)?;
        let re = parse_ratio(&p.re).map_err(serde::de::Error::custom)?;
        let im = parse_ratio(&p.im).map_err(serde::de::Error::custom)?;
        Ok(GaussianRational { re, im })
    }
}

/// Serde adapter writing a `BigRational` as its `n/d` string.
pub mod ratio_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_ratio(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_ratio(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = GaussianRational::gaussian(1, 2);
        let b = GaussianRational::gaussian(3, -1);
        assert_eq!(&a * &b, GaussianRational::gaussian(5, 5));
        assert_eq!(&a + &b, GaussianRational::gaussian(4, 1));
        assert_eq!(&a - &b, GaussianRational::gaussian(-2, 3));
        assert_eq!(&GaussianRational::i() * &GaussianRational::i(), GaussianRational::from_int(-1));
        assert_eq!(a.conj(), GaussianRational::gaussian(1, -2));
    }

    #[test]
    fn reduced_after_operations() {
        let x = GaussianRational::ratio(2, 4);
        assert_eq!(x.re.numer(), &BigInt::from(1));
        assert_eq!(x.re.denom(), &BigInt::from(2));
        let y = &x + &GaussianRational::ratio(1, 2);
        assert_eq!(y, GaussianRational::from_int(1));
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "-1/8", "3/16 i", "-1/4 i", "1/2 + 3/4 i", "1/2 - 3/4 i"] {
            let v: GaussianRational = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert!("1/0".parse::<GaussianRational>().is_err());
        assert!("abc".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let v = GaussianRational::new(
            BigRational::new(BigInt::from(-5), BigInt::from(128)),
            BigRational::new(BigInt::from(7), BigInt::from(3)),
        );
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"re":"-5/128","im":"7/3"}"#);
        let back: GaussianRational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
