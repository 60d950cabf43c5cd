//! The modified Jacobi theta function and elliptic Pochhammer symbols.
//!
//! `theta(x) = prod_{j>=0} (1 - p^j x)(1 - p^{j+1}/x)`.
//!
//! Evaluation reduces `x` into the annulus `|p|^{1/2} <= |x0| <= |p|^{-1/2}`
//! with the quasi-period and then sums the Jacobi triple product series
//! `sum_n (-1)^n p^{n(n-1)/2} x0^n = (p;p)_inf theta(x0)`, whose terms decay
//! like `|p|^{n^2/2}`. The literal product is kept as [`theta_by_product`].

use alloc::vec::Vec;

use super::{check_precision, BigComplex};
use crate::error::{Error, Result};

/// Extra bits carried through coefficient tables and Horner evaluation.
const GUARD_BITS: usize = 64;
/// Slack on the reduced annulus, which is only estimated in double precision.
const ANNULUS: f64 = 0.6;

/// How far the theta series is summed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThetaTruncation {
    /// Upper limit on the number of series terms, including the Euler
    /// function normalization.
    pub max_terms: usize,
    /// The omitted tail is below `2^-(prec + tail_bound_bits)` relative.
    pub tail_bound_bits: usize,
}

impl Default for ThetaTruncation {
    fn default() -> Self {
        ThetaTruncation { max_terms: 10_000, tail_bound_bits: 32 }
    }
}

impl ThetaTruncation {
    pub fn new(max_terms: usize, tail_bound_bits: usize) -> Result<Self> {
        if max_terms == 0 {
            return Err(Error::InvalidTruncation("max_terms must be positive"));
        }
        if tail_bound_bits < 16 {
            return Err(Error::InvalidTruncation("tail_bound_bits must be at least 16"));
        }
        Ok(ThetaTruncation { max_terms, tail_bound_bits })
    }
}

/// A nome `p` with `|p| < 1`, together with its series coefficients.
#[derive(Clone, Debug)]
pub struct Nome {
    value: BigComplex,
    log2_abs: f64,
    trunc: ThetaTruncation,
    /// `c_n = (-1)^n p^{n(n-1)/2} / (p;p)_inf` for `n = 0, 1, ...`.
    pos: Vec<BigComplex>,
    /// `c_{-m}` for `m = 1, 2, ...`.
    neg: Vec<BigComplex>,
}

impl Nome {
    /// Validates `|p| < 1` and precomputes the series for `trunc`.
    pub fn new(value: BigComplex, trunc: ThetaTruncation) -> Result<Self> {
        check_precision(value.prec())?;
        if !value.is_finite() {
            return Err(Error::NonFinite);
        }
        let one = super::Real::from_f64(1.0, value.prec());
        if value.norm_sqr() >= one {
            return Err(Error::NomeOutOfRange);
        }
        let log2_abs = value.log2_abs();
        let mut nome = Nome { value, log2_abs, trunc, pos: Vec::new(), neg: Vec::new() };
        if !nome.value.is_zero() {
            nome.build_series()?;
        }
        Ok(nome)
    }

    /// Convenience constructor with the default truncation.
    pub fn with_default(value: BigComplex) -> Result<Self> {
        Nome::new(value, ThetaTruncation::default())
    }

    pub fn value(&self) -> &BigComplex {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn prec(&self) -> usize {
        self.value.prec()
    }

    pub fn truncation(&self) -> ThetaTruncation {
        self.trunc
    }

    /// `log2 |p|`, `-inf` for `p = 0`.
    pub fn log2_abs(&self) -> f64 {
        self.log2_abs
    }

    /// Number of series terms used per evaluation.
    pub fn series_len(&self) -> usize {
        self.pos.len() + self.neg.len()
    }

    fn build_series(&mut self) -> Result<()> {
        let lp = -self.log2_abs;
        let target = (self.prec() + self.trunc.tail_bound_bits) as f64;
        let ratio = libm::exp2(-lp * (1.0 - ANNULUS));
        let slack = 1.0 - libm::log2(1.0 - ratio);
        let need = target + slack;

        let mut n_pos = 1usize;
        while {
            let n = (n_pos + 1) as f64;
            (n * (n - 1.0) / 2.0 - ANNULUS * n) * lp < need
        } {
            n_pos += 1;
            if n_pos > self.trunc.max_terms {
                return Err(Error::PrecisionExhausted { max_terms: self.trunc.max_terms });
            }
        }
        let mut n_neg = 1usize;
        while {
            let m = (n_neg + 1) as f64;
            (m * (m + 1.0) / 2.0 - ANNULUS * m) * lp < need
        } {
            n_neg += 1;
            if n_neg > self.trunc.max_terms {
                return Err(Error::PrecisionExhausted { max_terms: self.trunc.max_terms });
            }
        }
        let mut n_euler = 1usize;
        while {
            let k = n_euler as f64;
            k * (3.0 * k - 1.0) / 2.0 * lp < need
        } {
            n_euler += 1;
        }
        let total = n_pos + 1 + n_neg + 2 * n_euler + 1;
        if total > self.trunc.max_terms {
            return Err(Error::PrecisionExhausted { max_terms: self.trunc.max_terms });
        }

        let wp = self.prec() + GUARD_BITS;
        let p = self.value.with_precision(wp);
        let euler = euler_function(&p, n_euler);
        let c0 = euler.recip();

        let mut pos = Vec::with_capacity(n_pos + 1);
        let mut c = c0.clone();
        let mut pn = BigComplex::one(wp);
        for _ in 0..=n_pos {
            pos.push(c.clone());
            c = -(&c * &pn);
            pn = &pn * &p;
        }
        let mut neg = Vec::with_capacity(n_neg);
        let mut c = -(&c0 * &p);
        let mut pk = p.clone();
        for _ in 0..n_neg {
            neg.push(c.clone());
            pk = &pk * &p;
            c = -(&c * &pk);
        }
        self.pos = pos;
        self.neg = neg;
        Ok(())
    }

    /// `theta(x0)` for `x0` already in the reduced annulus, at `wp` bits.
    fn series(&self, x0: &BigComplex) -> BigComplex {
        let mut acc = self.pos.last().cloned().unwrap_or_else(|| BigComplex::zero(x0.prec()));
        for c in self.pos.iter().rev().skip(1) {
            acc = &(&acc * x0) + c;
        }
        if self.neg.is_empty() {
            return acc;
        }
        let inv = x0.recip();
        let mut tail = self.neg.last().cloned().unwrap_or_else(|| BigComplex::zero(x0.prec()));
        for c in self.neg.iter().rev().skip(1) {
            tail = &(&tail * &inv) + c;
        }
        &acc + &(&tail * &inv)
    }
}

/// `(p;p)_inf` from the pentagonal number theorem, summing `|k| <= terms`.
fn euler_function(p: &BigComplex, terms: usize) -> BigComplex {
    let mut acc = BigComplex::one(p.prec());
    for k in 1..=terms as i64 {
        let a = p.powi(k * (3 * k - 1) / 2);
        let b = p.powi(k * (3 * k + 1) / 2);
        let s = &a + &b;
        acc = if k % 2 == 1 { &acc - &s } else { &acc + &s };
    }
    acc
}

/// The theta function `theta(x; p)`.
///
/// Returns exactly `1 - x` when `p = 0` and exactly `0` when `x = 1`. If
/// `trunc` differs from the truncation the nome was prepared with, the series
/// is rebuilt for this call.
pub fn theta(x: &BigComplex, p: &Nome, trunc: &ThetaTruncation) -> Result<BigComplex> {
    if x.is_zero() {
        return Err(Error::ZeroArgument);
    }
    if !x.is_finite() {
        return Err(Error::NonFinite);
    }
    let prec = x.prec().min(p.prec());
    if p.is_zero() {
        return Ok(&BigComplex::one(prec) - x);
    }
    if x.is_one() {
        return Ok(BigComplex::zero(prec));
    }
    if *trunc != p.trunc {
        let local = Nome::new(p.value.clone(), *trunc)?;
        return theta(x, &local, trunc);
    }

    let wp = prec + GUARD_BITS;
    let xw = x.with_precision(wp);
    let k = libm::round(xw.log2_abs() / p.log2_abs);
    if !k.is_finite() || k.abs() > 1.0e6 {
        return Err(Error::NonFinite);
    }
    let k = k as i64;
    if k == 0 {
        return Ok(p.series(&xw).with_precision(prec));
    }
    let pw = p.value.with_precision(wp);
    let x0 = &xw / &pw.powi(k);
    let base = p.series(&x0);
    // theta(p^k x0) = (-1)^k p^{-k(k-1)/2} x0^{-k} theta(x0)
    let factor = &pw.powi(-(k * (k - 1) / 2)) * &x0.powi(-k);
    let mut out = &base * &factor;
    if k % 2 != 0 {
        out = -out;
    }
    Ok(out.with_precision(prec))
}

/// `theta(x_1) ... theta(x_n)`; the empty product is 1.
pub fn theta_multi(xs: &[BigComplex], p: &Nome, trunc: &ThetaTruncation) -> Result<BigComplex> {
    let prec = xs.iter().map(BigComplex::prec).fold(p.prec(), usize::min);
    let mut acc = BigComplex::one(prec);
    for x in xs {
        acc = &acc * &theta(x, p, trunc)?;
    }
    Ok(acc)
}

/// The elliptic Pochhammer symbol `(a)_k = theta(a) theta(aq) ... theta(aq^{k-1})`.
pub fn epoch(
    a: &BigComplex,
    k: usize,
    q: &BigComplex,
    p: &Nome,
    trunc: &ThetaTruncation,
) -> Result<BigComplex> {
    let prec = a.prec().min(q.prec()).min(p.prec());
    let mut acc = BigComplex::one(prec);
    let mut x = a.clone();
    for j in 0..k {
        acc = &acc * &theta(&x, p, trunc)?;
        if j + 1 < k {
            x = &x * q;
        }
    }
    Ok(acc)
}

/// `(a_1, ..., a_n)_k = (a_1)_k ... (a_n)_k`.
pub fn epoch_multi(
    as_: &[BigComplex],
    k: usize,
    q: &BigComplex,
    p: &Nome,
    trunc: &ThetaTruncation,
) -> Result<BigComplex> {
    let prec = as_.iter().map(BigComplex::prec).fold(q.prec().min(p.prec()), usize::min);
    let mut acc = BigComplex::one(prec);
    for a in as_ {
        acc = &acc * &epoch(a, k, q, p, trunc)?;
    }
    Ok(acc)
}

/// Direct evaluation of the defining product, stopping once
/// `|p|^J max(|x|, |1/x|, 1) / (1 - |p|)` is below `2^-target_bits`.
///
/// Slow for `|p|` close to 1; intended as an independent reference.
pub fn theta_by_product(
    x: &BigComplex,
    p: &BigComplex,
    target_bits: usize,
    max_terms: usize,
) -> Result<BigComplex> {
    if x.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let prec = x.prec().min(p.prec());
    let one = BigComplex::one(prec);
    let mut acc = &one - x;
    if p.is_zero() {
        return Ok(acc);
    }
    let lp = p.log2_abs();
    let lx = x.log2_abs().abs();
    let geometric = -libm::log2(1.0 - libm::exp2(lp));
    let xinv = x.recip();
    let mut pj = p.clone();
    let mut j = 1usize;
    loop {
        // factor pair for this j: (1 - p^j x)(1 - p^j / x)
        acc = &acc * &(&one - &(&pj * x));
        acc = &acc * &(&one - &(&pj * &xinv));
        let bound = lp * (j + 1) as f64 + lx + geometric;
        if bound < -(target_bits as f64) {
            break;
        }
        j += 1;
        if j > max_terms {
            return Err(Error::PrecisionExhausted { max_terms });
        }
        pj = &pj * p;
    }
    Ok(acc)
}
