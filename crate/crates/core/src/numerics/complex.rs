use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::Float;

/// Complex number at a fixed binary precision.
///
/// Binary operations take the larger precision of their operands.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

impl Complex {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_f64(0.0, 0.0, prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_f64(1.0, 0.0, prec)
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        Self { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn from_int(k: i64, prec: u32) -> Self {
        Self { re: Float::with_val(prec, k), im: Float::new(prec) }
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        Self { re, im }
    }

    pub fn pi(prec: u32) -> Float {
        Float::with_val(prec, Constant::Pi)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// Rounds (or extends) both components to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        Self { re: Float::with_val(prec, &self.re), im: Float::with_val(prec, &self.im) }
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: Float::with_val(self.im.prec(), -&self.im) }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        let rr = Float::with_val(p, self.re.square_ref());
        let ii = Float::with_val(p, self.im.square_ref());
        rr + ii
    }

    pub fn recip(&self) -> Self {
        Self::one(self.prec()) / self
    }

    pub fn scale(&self, k: &Float) -> Self {
        let p = self.prec().max(k.prec());
        Self { re: Float::with_val(p, &self.re * k), im: Float::with_val(p, &self.im * k) }
    }

    pub fn add_int(&self, k: i64) -> Self {
        let p = self.prec();
        Self { re: Float::with_val(p, &self.re + k), im: self.im.clone() }
    }

    pub fn add_u64(&self, k: u64) -> Self {
        let p = self.prec();
        Self { re: Float::with_val(p, &self.re + k), im: self.im.clone() }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        self.scale(&Float::with_val(64, k))
    }

    pub fn div_u64(&self, k: u64) -> Self {
        let p = self.prec();
        let k = Float::with_val(64, k);
        Self { re: Float::with_val(p, &self.re / &k), im: Float::with_val(p, &self.im / &k) }
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let c = Float::with_val(p, self.im.cos_ref());
        let s = Float::with_val(p, self.im.sin_ref());
        Self { re: Float::with_val(p, &m * &c), im: Float::with_val(p, &m * &s) }
    }

    /// Principal logarithm, imaginary part in (-pi, pi].
    pub fn ln(&self) -> Self {
        let p = self.prec();
        Self { re: Float::with_val(p, self.abs().ln_ref()), im: self.arg() }
    }

    /// Principal power `self^w = exp(w ln self)`; `0^w = 0` for `Re w > 0`.
    pub fn powc(&self, w: &Complex) -> Self {
        if self.is_zero() {
            return Self::zero(self.prec());
        }
        (w * &self.ln()).exp()
    }

    pub fn powu(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.prec());
        while n > 0 {
            if n & 1 == 1 {
                acc *= &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn to_f64_pair(&self) -> [f64; 2] {
        [self.re.to_f64(), self.im.to_f64()]
    }

    /// `Some(m)` when the value lies within `tol` of the nonpositive integer `-m`.
    pub fn nonpositive_integer(&self, tol: f64) -> Option<u64> {
        if !self.is_finite() || self.im.to_f64().abs() >= tol {
            return None;
        }
        let k = Float::with_val(self.re.prec(), self.re.round_ref());
        if k > 0 {
            return None;
        }
        let dist = Float::with_val(self.re.prec(), &self.re - &k);
        if dist.to_f64().abs() < tol {
            k.to_integer().and_then(|i| (-i).to_u64())
        } else {
            None
        }
    }

    /// Euclidean distance to the nearest nonpositive integer.
    pub fn pole_distance(&self) -> f64 {
        let [re, im] = self.to_f64_pair();
        let k = re.round().min(0.0);
        (re - k).hypot(im)
    }

    /// Decimal rendering with `digits` significant digits per component.
    pub fn to_string_digits(&self, digits: usize) -> String {
        let re = self.re.to_string_radix(10, Some(digits));
        let im_abs = Float::with_val(self.im.prec(), self.im.abs_ref());
        let sign = if self.im.is_sign_negative() { '-' } else { '+' };
        format!("{re} {sign} {}i", im_abs.to_string_radix(10, Some(digits)))
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        f.write_str(&self.to_string_digits(digits))
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex { re: Float::with_val(self.re.prec(), -&self.re), im: Float::with_val(self.im.prec(), -&self.im) }
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        -&self
    }
}

impl Add<&Complex> for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        let p = self.prec().max(rhs.prec());
        Complex { re: Float::with_val(p, &self.re + &rhs.re), im: Float::with_val(p, &self.im + &rhs.im) }
    }
}

impl Sub<&Complex> for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        let p = self.prec().max(rhs.prec());
        Complex { re: Float::with_val(p, &self.re - &rhs.re), im: Float::with_val(p, &self.im - &rhs.im) }
    }
}

impl Mul<&Complex> for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        let p = self.prec().max(rhs.prec());
        if self.im.is_zero() && rhs.im.is_zero() {
            return Complex { re: Float::with_val(p, &self.re * &rhs.re), im: Float::new(p) };
        }
        let ac = Float::with_val(p, &self.re * &rhs.re);
        let bd = Float::with_val(p, &self.im * &rhs.im);
        let ad = Float::with_val(p, &self.re * &rhs.im);
        let bc = Float::with_val(p, &self.im * &rhs.re);
        Complex { re: ac - bd, im: ad + bc }
    }
}

impl Div<&Complex> for &Complex {
    type Output = Complex;
    fn div(self, rhs: &Complex) -> Complex {
        let p = self.prec().max(rhs.prec());
        if rhs.im.is_zero() {
            return Complex { re: Float::with_val(p, &self.re / &rhs.re), im: Float::with_val(p, &self.im / &rhs.re) };
        }
        let den = rhs.norm_sqr();
        let ac = Float::with_val(p, &self.re * &rhs.re);
        let bd = Float::with_val(p, &self.im * &rhs.im);
        let bc = Float::with_val(p, &self.im * &rhs.re);
        let ad = Float::with_val(p, &self.re * &rhs.im);
        Complex { re: (ac + bd) / &den, im: (bc - ad) / &den }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Complex> for Complex {
            type Output = Complex;
            fn $method(self, rhs: Complex) -> Complex {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Complex> for Complex {
            type Output = Complex;
            fn $method(self, rhs: &Complex) -> Complex {
                (&self).$method(rhs)
            }
        }
        impl $tr<Complex> for &Complex {
            type Output = Complex;
            fn $method(self, rhs: Complex) -> Complex {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Complex> for Complex {
    fn add_assign(&mut self, rhs: &Complex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl AddAssign<Complex> for Complex {
    fn add_assign(&mut self, rhs: Complex) {
        *self += &rhs;
    }
}

impl SubAssign<&Complex> for Complex {
    fn sub_assign(&mut self, rhs: &Complex) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Complex> for Complex {
    fn mul_assign(&mut self, rhs: &Complex) {
        *self = &*self * rhs;
    }
}
