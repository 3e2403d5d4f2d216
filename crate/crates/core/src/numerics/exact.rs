use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use rug::{Float, Integer, Rational};

use super::Complex;
use crate::error::Error;

/// Complex number with exact rational components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactComplex {
    pub re: Rational,
    pub im: Rational,
}

impl ExactComplex {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::new() }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(k: i64) -> Self {
        Self::real(Rational::from(k))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(Rational::from((num, den)))
    }

    /// Exact value of a finite binary double (`0.1` becomes its dyadic value).
    pub fn from_f64(re: f64, im: f64) -> Option<Self> {
        Some(Self { re: Rational::from_f64(re)?, im: Rational::from_f64(im)? })
    }

    pub fn is_zero(&self) -> bool {
        self.re.cmp0().is_eq() && self.im.cmp0().is_eq()
    }

    pub fn is_real(&self) -> bool {
        self.im.cmp0().is_eq()
    }

    /// `Some(m)` when the value is exactly the nonpositive integer `-m`.
    pub fn nonpositive_integer(&self) -> Option<u64> {
        if !self.is_real() || !self.re.is_integer() || self.re.cmp0().is_gt() {
            return None;
        }
        (-self.re.numer().clone()).to_u64()
    }

    /// `Some(m)` when the value is exactly the nonnegative integer `m`.
    pub fn nonnegative_integer(&self) -> Option<u64> {
        if !self.is_real() || !self.re.is_integer() || self.re.cmp0().is_lt() {
            return None;
        }
        self.re.numer().to_u64()
    }

    pub fn add_int(&self, k: i64) -> Self {
        Self { re: Rational::from(&self.re + k), im: self.im.clone() }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self { re: Rational::from(&self.re * k), im: Rational::from(&self.im * k) }
    }

    /// `self / 2`.
    pub fn half(&self) -> Self {
        self.scale(&Rational::from((1, 2)))
    }

    pub fn norm_sqr(&self) -> Rational {
        Rational::from(self.re.square_ref()) + Rational::from(self.im.square_ref())
    }

    pub fn checked_div(&self, rhs: &ExactComplex) -> Option<ExactComplex> {
        if rhs.is_zero() {
            return None;
        }
        if rhs.is_real() {
            return Some(Self { re: Rational::from(&self.re / &rhs.re), im: Rational::from(&self.im / &rhs.re) });
        }
        let den = rhs.norm_sqr();
        let re = Rational::from(&self.re * &rhs.re) + Rational::from(&self.im * &rhs.im);
        let im = Rational::from(&self.im * &rhs.re) - Rational::from(&self.re * &rhs.im);
        Some(Self { re: re / &den, im: im / den })
    }

    pub fn to_complex(&self, prec: u32) -> Complex {
        Complex::new(Float::with_val(prec, &self.re), Float::with_val(prec, &self.im))
    }

    /// Nearest doubles (`Rational::to_f64` truncates).
    pub fn to_f64_pair(&self) -> [f64; 2] {
        let nearest = |q: &Rational| Float::with_val(f64::MANTISSA_DIGITS, q).to_f64();
        [nearest(&self.re), nearest(&self.im)]
    }

    pub fn pole_distance(&self) -> f64 {
        let [re, im] = self.to_f64_pair();
        let k = re.round().min(0.0);
        (re - k).hypot(im)
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            return write!(f, "{}", self.re);
        }
        if self.re.cmp0().is_eq() {
            return write!(f, "{}i", self.im);
        }
        if self.im.cmp0().is_lt() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

fn parse_rational(text: &str) -> Result<Rational, Error> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_rational(n)?;
        let d = parse_rational(d)?;
        if d.cmp0().is_eq() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(n / d);
    }
    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(pos) => (&body[..pos], body[pos + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (body, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from(Integer::from_str(&digits).map_err(|_| bad())?);
    let shift = exponent - frac_part.len() as i32;
    let scale = Integer::from(Integer::u_pow_u(10, shift.unsigned_abs()));
    if shift >= 0 {
        value *= scale;
    } else {
        value /= scale;
    }
    Ok(if negative { -value } else { value })
}

/// Accepts `re`, `re+imi`, `re-imi`, `imi`, with decimal (`0.25`, `1e-3`) or
/// fractional (`3/2`) components. Decimals are read exactly.
impl FromStr for ExactComplex {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Self::real(parse_rational(&s)?));
        };
        let bytes = body.as_bytes();
        let split =
            (1..bytes.len()).rev().find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        let (re_text, im_text) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im_text {
            "" | "+" => Rational::from(1),
            "-" => Rational::from(-1),
            t => parse_rational(t)?,
        };
        Ok(Self { re: parse_rational(re_text)?, im })
    }
}

impl Neg for &ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex { re: Rational::from(-&self.re), im: Rational::from(-&self.im) }
    }
}

impl Add<&ExactComplex> for &ExactComplex {
    type Output = ExactComplex;
    fn add(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex { re: Rational::from(&self.re + &rhs.re), im: Rational::from(&self.im + &rhs.im) }
    }
}

impl Sub<&ExactComplex> for &ExactComplex {
    type Output = ExactComplex;
    fn sub(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex { re: Rational::from(&self.re - &rhs.re), im: Rational::from(&self.im - &rhs.im) }
    }
}

impl Mul<&ExactComplex> for &ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: &ExactComplex) -> ExactComplex {
        if self.is_real() && rhs.is_real() {
            return ExactComplex::real(Rational::from(&self.re * &rhs.re));
        }
        let re = Rational::from(&self.re * &rhs.re) - Rational::from(&self.im * &rhs.im);
        let im = Rational::from(&self.re * &rhs.im) + Rational::from(&self.im * &rhs.re);
        ExactComplex { re, im }
    }
}

macro_rules! forward_owned {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait<ExactComplex> for ExactComplex {
            type Output = ExactComplex;
            fn $method(self, rhs: ExactComplex) -> ExactComplex {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&ExactComplex> for ExactComplex {
            type Output = ExactComplex;
            fn $method(self, rhs: &ExactComplex) -> ExactComplex {
                (&self).$method(rhs)
            }
        }
        impl $trait<ExactComplex> for &ExactComplex {
            type Output = ExactComplex;
            fn $method(self, rhs: ExactComplex) -> ExactComplex {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        -&self
    }
}

impl std::ops::AddAssign<&ExactComplex> for ExactComplex {
    fn add_assign(&mut self, rhs: &ExactComplex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl std::ops::MulAssign<&ExactComplex> for ExactComplex {
    fn mul_assign(&mut self, rhs: &ExactComplex) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> ExactComplex {
        s.parse().unwrap()
    }

    #[test]
    fn doubles_round_to_nearest() {
        let v = ExactComplex { re: Rational::from((2_235_691, 1_000_000)), im: Rational::from((-1, 3)) };
        assert_eq!(v.to_f64_pair(), [2.235691, -1.0 / 3.0]);
    }

    #[test]
    fn parses_reals_and_fractions() {
        assert_eq!(q("1.5"), ExactComplex::ratio(3, 2));
        assert_eq!(q("3/2"), ExactComplex::ratio(3, 2));
        assert_eq!(q("-0.25"), ExactComplex::ratio(-1, 4));
        assert_eq!(q("2.5e-1"), ExactComplex::ratio(1, 4));
        assert_eq!(q("1e2"), ExactComplex::from_int(100));
        assert_eq!(q(".5"), ExactComplex::ratio(1, 2));
    }

    #[test]
    fn parses_complex_forms() {
        let z = q("0.3-0.2i");
        assert_eq!(z.re, Rational::from((3, 10)));
        assert_eq!(z.im, Rational::from((-1, 5)));
        assert_eq!(q("2i"), ExactComplex::new(Rational::new(), Rational::from(2)));
        assert_eq!(q("-i").im, Rational::from(-1));
        assert_eq!(q("1e-1+1e-1i").re, Rational::from((1, 10)));
        assert_eq!(q("1/3+2/5i").im, Rational::from((2, 5)));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1.2.3", "1/0", "--1", "1+", "i1"] {
            assert!(bad.parse::<ExactComplex>().is_err(), "{bad} accepted");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["7/3", "-1/2+3i", "5-2/7i", "4i"] {
            let z = q(s);
            assert_eq!(q(&z.to_string()), z);
        }
    }

    #[test]
    fn division_is_exact() {
        let a = q("1+2i");
        let b = q("3-4i");
        let r = a.checked_div(&b).unwrap();
        assert_eq!(&r * &b, a);
        assert!(a.checked_div(&ExactComplex::zero()).is_none());
    }

    #[test]
    fn integer_classification() {
        assert_eq!(q("-4").nonpositive_integer(), Some(4));
        assert_eq!(q("0").nonpositive_integer(), Some(0));
        assert_eq!(q("-4/3").nonpositive_integer(), None);
        assert_eq!(q("5").nonnegative_integer(), Some(5));
        assert_eq!(q("-1").nonnegative_integer(), None);
    }
}
