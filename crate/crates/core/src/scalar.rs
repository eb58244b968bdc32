//! Scalar fields: complex doubles and Gaussian rationals behind one trait.
//!
//! Every algorithm in this crate is written once, generically over [`Scalar`].
//! The float mode ([`num_complex::Complex64`]) is fast and tolerance-based;
//! the exact mode ([`GaussRational`]) runs the same code with exact
//! arithmetic, where zero tests need no thresholds.

use crate::error::Error;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A complex scalar field element.
///
/// `EXACT` selects the numerical policy: exact scalars use structural zero
/// tests and ignore tolerances; float scalars use the thresholds from
/// [`crate::config`].
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic is exact and zero tests are structural.
    const EXACT: bool;
    /// Mode tag used in the JSON wire formats.
    const MODE: &'static str;

    fn from_i64(v: i64) -> Self;
    /// Embed a complex double. Exact mode converts each part to the exact
    /// binary rational it denotes; the input must be finite.
    fn from_c64(z: Complex64) -> Self;
    /// The imaginary unit.
    fn imag_unit() -> Self;
    fn conj(&self) -> Self;
    /// Squared magnitude as f64 (approximate in exact mode; used only for
    /// pivot ranking and norm diagnostics, never for exactness claims).
    fn abs2(&self) -> f64;
    fn to_c64(&self) -> Complex64;
    /// Canonical wire form of one entry, per the matrix JSON formats.
    fn json_entry(&self) -> String;

    fn is_real(&self) -> bool {
        self.conj() == *self
    }
    fn abs(&self) -> f64 {
        self.abs2().sqrt()
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;
    const MODE: &'static str = "float";

    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn from_c64(z: Complex64) -> Self {
        z
    }
    fn imag_unit() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn abs2(&self) -> f64 {
        self.norm_sqr()
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn json_entry(&self) -> String {
        format!("[{},{}]", crate::json::fmt_f64(self.re), crate::json::fmt_f64(self.im))
    }
}

/// A Gaussian rational: a complex number with arbitrary-precision rational
/// real and imaginary parts. Field operations are exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussRational {
    re: BigRational,
    im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussRational {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    /// re/im as a ratio of integers, e.g. `gauss(1, 2, -3, 4)` = 1/2 - (3/4)i.
    pub fn from_ratios(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        GaussRational {
            re: BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
            im: BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Add for GaussRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussRational { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for GaussRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussRational { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Neg for GaussRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussRational { re: -self.re, im: -self.im }
    }
}

impl Mul for GaussRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone();
        let im = self.re * rhs.im + self.im * rhs.re;
        GaussRational { re, im }
    }
}

impl Div for GaussRational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let den = rhs.re.clone() * rhs.re.clone() + rhs.im.clone() * rhs.im.clone();
        assert!(!den.is_zero(), "division of Gaussian rationals by zero");
        let re = (self.re.clone() * rhs.re.clone() + self.im.clone() * rhs.im.clone()) / den.clone();
        let im = (self.im * rhs.re - self.re * rhs.im) / den;
        GaussRational { re, im }
    }
}

impl Zero for GaussRational {
    fn zero() -> Self {
        GaussRational { re: BigRational::zero(), im: BigRational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRational {
    fn one() -> Self {
        GaussRational { re: BigRational::one(), im: BigRational::zero() }
    }
}

impl Scalar for GaussRational {
    const EXACT: bool = true;
    const MODE: &'static str = "rational";

    fn from_i64(v: i64) -> Self {
        GaussRational::from_ints(v, 0)
    }
    fn from_c64(z: Complex64) -> Self {
        let part = |x: f64| {
            BigRational::from_float(x).expect("finite float required for exact conversion")
        };
        GaussRational { re: part(z.re), im: part(z.im) }
    }
    fn imag_unit() -> Self {
        GaussRational::from_ints(0, 1)
    }
    fn conj(&self) -> Self {
        GaussRational { re: self.re.clone(), im: -self.im.clone() }
    }
    fn abs2(&self) -> f64 {
        let sq = self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone();
        sq.to_f64().unwrap_or(f64::INFINITY)
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
    fn json_entry(&self) -> String {
        format!("[\"{}\",\"{}\"]", self.re, self.im)
    }
}

/// Parse a real rational from "p/q", integer, or decimal notation
/// ("-3/4", "12", "1.25", "2e-3"). Decimal forms convert exactly.
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    if !s.contains('.') && !s.contains('e') && !s.contains('E') {
        let n: BigInt = s.parse().map_err(|_| Error::Parse(format!("bad integer {s:?}")))?;
        return Ok(BigRational::from_integer(n));
    }
    // Decimal with optional exponent: digits[.digits][e[+-]digits]
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e.parse().map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            (m, exp)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = if digits.is_empty() || digits == "-" || digits == "+" {
        return Err(Error::Parse(format!("bad decimal {s:?}")));
    } else {
        digits.parse().map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?
    };
    let shift = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let value = if shift >= 0 {
        BigRational::from_integer(n * ten.pow(shift as u32))
    } else {
        BigRational::new(n, ten.pow((-shift) as u32))
    };
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn gauss_rational_field_ops_are_exact() {
        // a + b - b == a identically, with denominators that do not share factors.
        let a = GaussRational::from_ratios(1, 3, -2, 7);
        let b = GaussRational::from_ratios(5, 11, 4, 13);
        assert_eq!(a.clone() + b.clone() - b.clone(), a);

        // (a * b) / b == a for nonzero b.
        assert_eq!(a.clone() * b.clone() / b, a);
    }

    #[test]
    fn gauss_rational_division() {
        // (1 + i) / (1 - i) = i
        let a = GaussRational::from_ints(1, 1);
        let b = GaussRational::from_ints(1, -1);
        assert_eq!(a / b, GaussRational::from_ints(0, 1));
    }

    #[test]
    fn conjugation_and_reality() {
        let r = GaussRational::from_ratios(3, 2, 0, 1);
        assert!(r.is_real());
        let z = GaussRational::from_ints(1, 1);
        assert!(!z.is_real());
        assert_eq!(z.clone() * z.conj(), GaussRational::from_ints(2, 0));
    }

    #[test]
    fn float_scalar_basics() {
        let i = <Complex64 as Scalar>::imag_unit();
        assert_eq!(i * i, Complex64::new(-1.0, 0.0));
        assert!(Complex64::new(2.5, 0.0).is_real());
        assert!(!Complex64::new(0.0, 1e-30).is_real());
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("3/4").unwrap(), q(3, 4));
        assert_eq!(parse_rational("-3/4").unwrap(), q(-3, 4));
        assert_eq!(parse_rational("12").unwrap(), q(12, 1));
        assert_eq!(parse_rational("1.25").unwrap(), q(5, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), q(-1, 2));
        assert_eq!(parse_rational("2e-3").unwrap(), q(1, 500));
        assert_eq!(parse_rational("1.2e1").unwrap(), q(12, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn from_c64_is_exact_for_dyadic() {
        let z = GaussRational::from_c64(Complex64::new(0.5, -0.25));
        assert_eq!(z, GaussRational::from_ratios(1, 2, -1, 4));
    }
}
