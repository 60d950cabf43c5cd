//! Evaluation context shared by every term of an identity.
//!
//! An [`Evaluator`] fixes `p`, `q` and the working precision, caches integer
//! powers of `q`, and memoizes theta values by the exact bits of their
//! argument, so repeated factors across lattice points cost one evaluation.
//! Every theta factor that lands in a denominator is checked against the
//! degeneracy floor.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::arith::{theta, BigComplex, Nome, ThetaTruncation, MIN_PRECISION};
use crate::error::{Error, Result};

/// Range of cached powers `q^k`, `|k| <= QPOW_CACHE`.
const QPOW_CACHE: i64 = 64;

/// Threshold used while screening sampled parameters.
pub const SCAN_FLOOR_LOG2: f64 = -40.0;

/// Bits below the working precision at which a denominator factor counts as zero.
pub const FLOOR_MARGIN_BITS: usize = 32;

/// Whether an evaluator produces results or only screens denominators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Full-precision evaluation; denominators must clear `2^(32 - prec)`.
    Evaluate,
    /// 64-bit pass that rejects any denominator factor below `2^-40`.
    Scan,
}

type Key = Vec<u64>;

fn push_component(key: &mut Key, x: &astro_float::BigFloat) {
    if x.is_zero() {
        key.push(0);
        return;
    }
    key.push(if x.is_negative() { 2 } else { 1 });
    key.push(x.exponent().unwrap_or(0) as i64 as u64);
    if let Some(words) = x.mantissa_digits() {
        // Mantissa words are 32 bits wide on some targets.
        #[allow(clippy::unnecessary_cast)]
        key.extend(words.iter().map(|&w| w as u64));
    }
}

fn key_of(x: &BigComplex) -> Key {
    let mut key = Vec::with_capacity(16);
    key.push(x.prec() as u64);
    push_component(&mut key, x.re());
    push_component(&mut key, x.im());
    key
}

/// Fixed `p`, `q` and precision, with a theta memo.
pub struct Evaluator {
    nome: Nome,
    trunc: ThetaTruncation,
    q: BigComplex,
    prec: usize,
    mode: Mode,
    floor_log2: f64,
    qpows: Vec<BigComplex>,
    memo: RefCell<BTreeMap<Key, BigComplex>>,
}

impl core::fmt::Debug for Evaluator {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Evaluator")
            .field("p", self.nome.value())
            .field("q", &self.q)
            .field("prec", &self.prec)
            .field("mode", &self.mode)
            .finish()
    }
}

impl Evaluator {
    /// Builds an evaluator. In [`Mode::Scan`] `p` and `q` are rounded to
    /// 64 bits and the precision argument is ignored.
    pub fn new(p: &BigComplex, q: &BigComplex, prec: usize, mode: Mode) -> Result<Self> {
        let (prec, floor_log2) = match mode {
            Mode::Evaluate => {
                crate::arith::check_precision(prec)?;
                (prec, -((prec - FLOOR_MARGIN_BITS) as f64))
            }
            Mode::Scan => (MIN_PRECISION, SCAN_FLOOR_LOG2),
        };
        if q.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let trunc = ThetaTruncation::default();
        let nome = Nome::new(p.with_precision(prec), trunc)?;
        let q = q.with_precision(prec);
        let inv = q.recip();
        let mut qpows = Vec::with_capacity(2 * QPOW_CACHE as usize + 1);
        let mut neg = Vec::with_capacity(QPOW_CACHE as usize);
        let mut acc = BigComplex::one(prec);
        for _ in 0..QPOW_CACHE {
            acc = &acc * &inv;
            neg.push(acc.clone());
        }
        qpows.extend(neg.into_iter().rev());
        let mut acc = BigComplex::one(prec);
        qpows.push(acc.clone());
        for _ in 0..QPOW_CACHE {
            acc = &acc * &q;
            qpows.push(acc.clone());
        }
        Ok(Evaluator {
            nome,
            trunc,
            q,
            prec,
            mode,
            floor_log2,
            qpows,
            memo: RefCell::new(BTreeMap::new()),
        })
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn nome(&self) -> &Nome {
        &self.nome
    }

    pub fn q(&self) -> &BigComplex {
        &self.q
    }

    /// `log2` of the smallest admissible denominator factor.
    pub fn floor_log2(&self) -> f64 {
        self.floor_log2
    }

    pub fn one(&self) -> BigComplex {
        BigComplex::one(self.prec)
    }

    pub fn int(&self, v: i64) -> BigComplex {
        BigComplex::from_i64(v, self.prec)
    }

    /// Rounds an externally supplied value to the working precision.
    pub fn lift(&self, x: &BigComplex) -> BigComplex {
        x.with_precision(self.prec)
    }

    /// `q^k`.
    pub fn qpow(&self, k: i64) -> BigComplex {
        if k.abs() <= QPOW_CACHE {
            self.qpows[(k + QPOW_CACHE) as usize].clone()
        } else {
            self.q.powi(k)
        }
    }

    /// `x q^k`.
    pub fn shift(&self, x: &BigComplex, k: i64) -> BigComplex {
        if k == 0 {
            x.clone()
        } else {
            x * &self.qpow(k)
        }
    }

    /// Number of distinct theta arguments evaluated so far.
    pub fn memo_len(&self) -> usize {
        self.memo.borrow().len()
    }

    /// `theta(x; p)`, memoized.
    pub fn theta(&self, x: &BigComplex) -> Result<BigComplex> {
        let key = key_of(x);
        if let Some(v) = self.memo.borrow().get(&key) {
            return Ok(v.clone());
        }
        let v = theta(x, &self.nome, &self.trunc)?;
        self.memo.borrow_mut().insert(key, v.clone());
        Ok(v)
    }

    /// `theta(x; p)` for a factor that will divide; fails below the floor.
    pub fn theta_den(&self, x: &BigComplex) -> Result<BigComplex> {
        let v = self.theta(x)?;
        if v.log2_abs() < self.floor_log2 {
            return Err(Error::DegenerateConfiguration("theta factor in a denominator"));
        }
        Ok(v)
    }

    /// `(x)_k = theta(x) theta(xq) ... theta(xq^{k-1})`.
    pub fn poch(&self, x: &BigComplex, k: usize) -> Result<BigComplex> {
        let mut acc = self.one();
        for j in 0..k {
            acc = &acc * &self.theta(&self.shift(x, j as i64))?;
        }
        Ok(acc)
    }

    /// `(x)_k` with every factor checked against the floor.
    pub fn poch_den(&self, x: &BigComplex, k: usize) -> Result<BigComplex> {
        let mut acc = self.one();
        for j in 0..k {
            acc = &acc * &self.theta_den(&self.shift(x, j as i64))?;
        }
        Ok(acc)
    }

    pub fn product(&self) -> Product<'_> {
        Product { ev: self, num: self.one(), den: self.one() }
    }
}

/// Running quotient `num / den` of factors.
#[derive(Clone, Debug)]
pub struct Product<'e> {
    ev: &'e Evaluator,
    num: BigComplex,
    den: BigComplex,
}

impl<'e> Product<'e> {
    pub fn evaluator(&self) -> &'e Evaluator {
        self.ev
    }

    pub fn mul(&mut self, x: &BigComplex) -> &mut Self {
        self.num = &self.num * x;
        self
    }

    /// Divides by a nonzero scalar.
    pub fn div(&mut self, x: &BigComplex) -> Result<&mut Self> {
        if x.is_zero() {
            return Err(Error::DegenerateConfiguration("zero scalar in a denominator"));
        }
        self.den = &self.den * x;
        Ok(self)
    }

    pub fn theta(&mut self, x: &BigComplex) -> Result<&mut Self> {
        let v = self.ev.theta(x)?;
        self.num = &self.num * &v;
        Ok(self)
    }

    pub fn theta_den(&mut self, x: &BigComplex) -> Result<&mut Self> {
        let v = self.ev.theta_den(x)?;
        self.den = &self.den * &v;
        Ok(self)
    }

    pub fn poch(&mut self, x: &BigComplex, k: usize) -> Result<&mut Self> {
        let v = self.ev.poch(x, k)?;
        self.num = &self.num * &v;
        Ok(self)
    }

    pub fn poch_den(&mut self, x: &BigComplex, k: usize) -> Result<&mut Self> {
        let v = self.ev.poch_den(x, k)?;
        self.den = &self.den * &v;
        Ok(self)
    }

    /// Multiplies by `q^k`.
    pub fn qpow(&mut self, k: i64) -> &mut Self {
        if k != 0 {
            self.num = &self.num * &self.ev.qpow(k);
        }
        self
    }

    pub fn negate_if(&mut self, odd: bool) -> &mut Self {
        if odd {
            self.num = -&self.num;
        }
        self
    }

    /// Folds another product in.
    pub fn absorb(&mut self, other: &Product<'_>) -> &mut Self {
        self.num = &self.num * &other.num;
        self.den = &self.den * &other.den;
        self
    }

    pub fn value(&self) -> BigComplex {
        &self.num / &self.den
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::residual;

    fn ev(p: (f64, f64), q: (f64, f64)) -> Evaluator {
        Evaluator::new(
            &BigComplex::from_f64(p.0, p.1, 256),
            &BigComplex::from_f64(q.0, q.1, 256),
            256,
            Mode::Evaluate,
        )
        .unwrap()
    }

    #[test]
    fn q_powers_agree_with_repeated_products() {
        let e = ev((0.2, 0.1), (0.8, 0.7));
        let q = e.q().clone();
        for k in [-70i64, -64, -3, 0, 1, 5, 64, 65] {
            let r = residual(&e.qpow(k), &q.powi(k));
            assert!(r.log2() < -240.0, "k={k}");
        }
    }

    #[test]
    fn memo_returns_identical_values() {
        let e = ev((0.2, 0.1), (0.8, 0.7));
        let x = BigComplex::from_f64(0.4, -1.1, 256);
        let a = e.theta(&x).unwrap();
        assert_eq!(e.memo_len(), 1);
        let b = e.theta(&x).unwrap();
        assert_eq!(a, b);
        assert_eq!(e.memo_len(), 1);
        let direct = theta(&x, e.nome(), &ThetaTruncation::default()).unwrap();
        assert_eq!(a, direct);
    }

    #[test]
    fn denominator_zero_is_rejected() {
        let e = ev((0.2, 0.1), (0.8, 0.7));
        assert_eq!(
            e.theta_den(&e.one()),
            Err(Error::DegenerateConfiguration("theta factor in a denominator"))
        );
        let mut prod = e.product();
        assert!(prod.poch_den(&e.qpow(-2), 3).is_err());
        assert!(e.poch(&e.qpow(-2), 3).unwrap().log2_abs() < -240.0);
    }

    #[test]
    fn scan_mode_runs_at_minimum_precision() {
        let e = Evaluator::new(
            &BigComplex::from_f64(0.2, 0.1, 256),
            &BigComplex::from_f64(0.8, 0.7, 256),
            256,
            Mode::Scan,
        )
        .unwrap();
        assert_eq!(e.prec(), 64);
        let near = BigComplex::from_f64(1.0 + 1e-13, 0.0, 256);
        assert!(e.theta_den(&near).is_err());
        let full = ev((0.2, 0.1), (0.8, 0.7));
        assert!(full.theta_den(&near).is_ok());
    }

    #[test]
    fn product_collects_numerator_and_denominator() {
        let e = ev((0.0, 0.0), (0.5, 0.0));
        let x = BigComplex::from_f64(0.25, 0.0, 256);
        let mut prod = e.product();
        prod.poch(&x, 2).unwrap();
        prod.poch_den(&x, 1).unwrap();
        prod.qpow(2);
        // (1 - 1/4)(1 - 1/8) / (1 - 1/4) * 1/4 = 7/32
        assert_eq!(prod.value(), BigComplex::from_f64(7.0 / 32.0, 0.0, 256));
    }
}
