//! Arbitrary-precision complex scalars.
//!
//! [`BigComplex`] is a pair of [`astro_float::BigFloat`] components carrying an
//! explicit working precision. Binary operations run at the smaller of the two
//! operand precisions. [`Real`] wraps a single component and is used for
//! magnitudes, residuals and tolerances.

mod theta;

pub use theta::{epoch, epoch_multi, theta, theta_by_product, theta_multi, Nome, ThetaTruncation};

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

use crate::error::{Error, Result};

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

/// Smallest accepted working precision in bits.
pub const MIN_PRECISION: usize = 64;
/// Working precision used when nothing else is configured.
pub const DEFAULT_PRECISION: usize = 256;

/// Checks the precision invariant shared by every scalar.
pub fn check_precision(bits: usize) -> Result<usize> {
    if bits < MIN_PRECISION {
        Err(Error::InvalidPrecision(bits))
    } else {
        Ok(bits)
    }
}

/// `log2 |x|` to double precision, `-inf` for zero.
fn log2_abs_bf(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (Some(exp), Some(words)) = (x.exponent(), x.mantissa_digits()) else {
        return f64::INFINITY;
    };
    // Mantissa words are least-significant first and normalized so the top
    // bit of the last word is set; the value is 0.1xxx * 2^exp.
    let top = *words.last().unwrap_or(&0) as f64;
    f64::from(exp) + libm::log2(top) - 64.0
}

/// Complex number with arbitrary-precision components.
#[derive(Clone)]
pub struct BigComplex {
    re: BigFloat,
    im: BigFloat,
    prec: usize,
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64_lossy();
        write!(f, "BigComplex({re:e} + {im:e}i @{} bits)", self.prec)
    }
}

impl PartialEq for BigComplex {
    fn eq(&self, other: &Self) -> bool {
        self.re == other.re && self.im == other.im
    }
}

impl BigComplex {
    /// Builds a value from components, rounding them to `prec` bits.
    pub fn new(mut re: BigFloat, mut im: BigFloat, prec: usize) -> Result<Self> {
        check_precision(prec)?;
        // set_precision only fails on allocation failure or special values,
        // which keep their meaning unchanged.
        let _ = re.set_precision(prec, RM);
        let _ = im.set_precision(prec, RM);
        Ok(BigComplex { re, im, prec })
    }

    fn raw(re: BigFloat, im: BigFloat, prec: usize) -> Self {
        BigComplex { re, im, prec }
    }

    /// Exact conversion from a pair of doubles.
    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        let prec = prec.max(MIN_PRECISION);
        Self::raw(BigFloat::from_f64(re, prec), BigFloat::from_f64(im, prec), prec)
    }

    pub fn from_i64(v: i64, prec: usize) -> Self {
        let prec = prec.max(MIN_PRECISION);
        Self::raw(BigFloat::from_i64(v, prec), BigFloat::new(prec), prec)
    }

    /// `r * exp(i angle)`, with both components rounded to doubles first so the
    /// result is an exact binary value.
    pub fn from_polar_f64(r: f64, angle: f64, prec: usize) -> Self {
        Self::from_f64(r * libm::cos(angle), r * libm::sin(angle), prec)
    }

    pub fn zero(prec: usize) -> Self {
        Self::from_i64(0, prec)
    }

    pub fn one(prec: usize) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.im.is_zero() && self.re == BigFloat::from_word(1, MIN_PRECISION)
    }

    pub fn is_finite(&self) -> bool {
        !(self.re.is_nan() || self.im.is_nan() || self.re.is_inf() || self.im.is_inf())
    }

    /// Re-rounds to a different precision.
    pub fn with_precision(&self, prec: usize) -> Self {
        let mut re = self.re.clone();
        let mut im = self.im.clone();
        let _ = re.set_precision(prec, RM);
        let _ = im.set_precision(prec, RM);
        Self::raw(re, im, prec)
    }

    pub fn conj(&self) -> Self {
        Self::raw(self.re.clone(), BigFloat::neg(&self.im), self.prec)
    }

    pub fn norm_sqr(&self) -> Real {
        let p = self.prec;
        let rr = self.re.mul(&self.re, p, RM);
        let ii = self.im.mul(&self.im, p, RM);
        Real(rr.add(&ii, p, RM))
    }

    pub fn abs(&self) -> Real {
        Real(self.norm_sqr().0.sqrt(self.prec, RM))
    }

    /// `log2 |z|` as a double; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        let a = log2_abs_bf(&self.re);
        let b = log2_abs_bf(&self.im);
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        if hi == f64::NEG_INFINITY {
            return hi;
        }
        hi + 0.5 * libm::log2(1.0 + libm::exp2(2.0 * (lo - hi)))
    }

    /// Lossy conversion for diagnostics and sampling heuristics.
    pub fn to_f64_lossy(&self) -> (f64, f64) {
        (bf_to_f64(&self.re), bf_to_f64(&self.im))
    }

    pub fn recip(&self) -> Self {
        BigComplex::one(self.prec).div_by(self)
    }

    /// Integer power by repeated squaring; negative exponents invert the result.
    pub fn powi(&self, e: i64) -> Self {
        let mut base = self.clone();
        let mut n = e.unsigned_abs();
        let mut acc = BigComplex::one(self.prec);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_by(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_by(&base);
            }
        }
        if e < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    fn add_to(&self, o: &Self) -> Self {
        let p = self.prec.min(o.prec);
        Self::raw(self.re.add(&o.re, p, RM), self.im.add(&o.im, p, RM), p)
    }

    fn sub_from(&self, o: &Self) -> Self {
        let p = self.prec.min(o.prec);
        Self::raw(self.re.sub(&o.re, p, RM), self.im.sub(&o.im, p, RM), p)
    }

    fn mul_by(&self, o: &Self) -> Self {
        let p = self.prec.min(o.prec);
        if self.im.is_zero() && o.im.is_zero() {
            return Self::raw(self.re.mul(&o.re, p, RM), BigFloat::new(p), p);
        }
        let ac = self.re.mul(&o.re, p, RM);
        let bd = self.im.mul(&o.im, p, RM);
        let ad = self.re.mul(&o.im, p, RM);
        let bc = self.im.mul(&o.re, p, RM);
        Self::raw(ac.sub(&bd, p, RM), ad.add(&bc, p, RM), p)
    }

    fn div_by(&self, o: &Self) -> Self {
        let p = self.prec.min(o.prec);
        if o.im.is_zero() {
            return Self::raw(self.re.div(&o.re, p, RM), self.im.div(&o.re, p, RM), p);
        }
        let den = o.re.mul(&o.re, p, RM).add(&o.im.mul(&o.im, p, RM), p, RM);
        let re = self.re.mul(&o.re, p, RM).add(&self.im.mul(&o.im, p, RM), p, RM);
        let im = self.im.mul(&o.re, p, RM).sub(&self.re.mul(&o.im, p, RM), p, RM);
        Self::raw(re.div(&den, p, RM), im.div(&den, p, RM), p)
    }
}

fn bf_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let l = log2_abs_bf(x);
    let m = libm::exp2(l);
    if x.is_negative() {
        -m
    } else {
        m
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<'a> $tr<&'a BigComplex> for &'a BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: &'a BigComplex) -> BigComplex {
                self.$inner(rhs)
            }
        }
        impl $tr<BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: BigComplex) -> BigComplex {
                self.$inner(&rhs)
            }
        }
        impl<'a> $tr<&'a BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: &'a BigComplex) -> BigComplex {
                self.$inner(rhs)
            }
        }
        impl<'a> $tr<BigComplex> for &'a BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: BigComplex) -> BigComplex {
                self.$inner(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_to);
forward_binop!(Sub, sub, sub_from);
forward_binop!(Mul, mul, mul_by);
forward_binop!(Div, div, div_by);

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex::raw(BigFloat::neg(&self.re), BigFloat::neg(&self.im), self.prec)
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        -&self
    }
}

/// Nonnegative-or-signed real at arbitrary precision.
#[derive(Clone)]
pub struct Real(pub(crate) BigFloat);

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({:e})", self.to_f64_lossy())
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.cmp(&other.0).map(|c| c.cmp(&0))
    }
}

impl Real {
    pub fn zero(prec: usize) -> Self {
        Real(BigFloat::new(prec.max(MIN_PRECISION)))
    }

    /// Not-a-number, used for residuals of failed evaluations.
    pub fn nan() -> Self {
        Real(BigFloat::nan(None))
    }

    /// Exactly `2^exp`.
    pub fn pow2(exp: i32, prec: usize) -> Self {
        let mut one = BigFloat::from_word(1, prec.max(MIN_PRECISION));
        // 1 is stored as 0.1b * 2^1.
        one.set_exponent(exp + 1);
        Real(one)
    }

    pub fn from_f64(v: f64, prec: usize) -> Self {
        Real(BigFloat::from_f64(v, prec.max(MIN_PRECISION)))
    }

    pub fn inner(&self) -> &BigFloat {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !(self.0.is_nan() || self.0.is_inf())
    }

    /// `log2 |x|` as a double.
    pub fn log2(&self) -> f64 {
        log2_abs_bf(&self.0)
    }

    pub fn to_f64_lossy(&self) -> f64 {
        bf_to_f64(&self.0)
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn div(&self, other: &Real, prec: usize) -> Real {
        Real(self.0.div(&other.0, prec, RM))
    }

    /// Decimal rendering carrying every significant digit of the mantissa.
    pub fn to_decimal_string(&self) -> String {
        if self.0.is_zero() {
            return "0".to_string();
        }
        if self.0.is_nan() {
            return "NaN".to_string();
        }
        match Consts::new() {
            Ok(mut cc) => self
                .0
                .format(Radix::Dec, RM, &mut cc)
                .unwrap_or_else(|_| "NaN".to_string()),
            Err(_) => "NaN".to_string(),
        }
    }

    /// Parses a string produced by [`Real::to_decimal_string`].
    pub fn parse_decimal(s: &str, prec: usize) -> Option<Real> {
        let mut cc = Consts::new().ok()?;
        let v = BigFloat::parse(s, Radix::Dec, prec.max(MIN_PRECISION), RM, &mut cc);
        if v.is_nan() && s != "NaN" {
            None
        } else {
            Some(Real(v))
        }
    }
}

/// Relative residual `|l - r| / max(|l|, |r|, 2^(-prec/2))` at the smaller of
/// the two precisions. Symmetric in its arguments.
pub fn residual(lhs: &BigComplex, rhs: &BigComplex) -> Real {
    let prec = lhs.prec.min(rhs.prec);
    if !lhs.is_finite() || !rhs.is_finite() {
        return Real(BigFloat::nan(None));
    }
    let diff = (lhs - rhs).abs();
    if diff.is_zero() {
        return Real::zero(prec);
    }
    let floor = Real::pow2(-((prec / 2) as i32), prec);
    let scale = lhs.abs().max(rhs.abs()).max(floor);
    diff.div(&scale, prec)
}

/// The default verification tolerance `2^(-prec/2)`.
pub fn default_tolerance(prec: usize) -> Real {
    Real::pow2(-((prec / 2) as i32), prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log2_of_small_integers() {
        let three = BigComplex::from_i64(3, 256);
        assert!((three.log2_abs() - libm::log2(3.0)).abs() < 1e-12);
        let z = BigComplex::from_f64(0.0, -0.125, 256);
        assert!((z.log2_abs() + 3.0).abs() < 1e-12);
        assert_eq!(BigComplex::zero(64).log2_abs(), f64::NEG_INFINITY);
    }

    #[test]
    fn pow2_is_exact() {
        let h = Real::pow2(-1, 128);
        assert_eq!(h, Real::from_f64(0.5, 128));
        let big = Real::pow2(10, 128);
        assert_eq!(big, Real::from_f64(1024.0, 128));
        assert!((Real::pow2(-128, 256).log2() + 128.0).abs() < 1e-12);
    }

    #[test]
    fn mixed_precision_takes_the_minimum() {
        let a = BigComplex::from_f64(1.5, 0.25, 128);
        let b = BigComplex::from_f64(-0.5, 2.0, 320);
        assert_eq!((&a * &b).prec(), 128);
        assert_eq!((&b + &a).prec(), 128);
        assert_eq!((&b / &a).prec(), 128);
    }

    #[test]
    fn field_operations() {
        let a = BigComplex::from_f64(1.5, -0.25, 256);
        let b = BigComplex::from_f64(-0.75, 2.0, 256);
        let q = &(&a * &b) / &b;
        assert!(residual(&q, &a).log2() < -250.0);
        let back = &(&a - &b) + &b;
        assert!(residual(&back, &a).log2() < -250.0);
        let r = a.powi(-3);
        let check = &r * &a.powi(3);
        assert!(residual(&check, &BigComplex::one(256)).log2() < -248.0);
    }

    #[test]
    fn residual_examples() {
        let x = BigComplex::from_f64(0.3, 0.7, 256);
        assert!(residual(&x, &x).is_zero());
        let one = BigComplex::one(256);
        let zero = BigComplex::zero(256);
        assert_eq!(residual(&one, &zero), Real::from_f64(1.0, 256));
        let eps = BigComplex::from_f64(1e-20, 0.0, 256);
        let r = residual(&(&one + &eps), &one).to_f64_lossy();
        assert!((r / 1e-20 - 1.0).abs() < 1e-6);
        assert_eq!(residual(&one, &x), residual(&x, &one));
    }

    #[test]
    fn decimal_round_trip() {
        let x = Real::pow2(-130, 256).div(&Real::from_f64(3.0, 256), 256);
        let s = x.to_decimal_string();
        let back = Real::parse_decimal(&s, 256).unwrap();
        let rel = (back.to_f64_lossy() - x.to_f64_lossy()).abs() / x.to_f64_lossy();
        assert!(rel < 1e-15, "{s}");
        assert_eq!(Real::zero(256).to_decimal_string(), "0");
    }
}
