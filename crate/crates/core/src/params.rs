//! Named parameters of one identity instance and the shape of its domain.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::BigComplex;
use crate::error::{Error, Result};
use crate::lattice::MultiIndex;

/// Size of a summation domain: none, a simplex total `N`, or box bounds `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Size {
    Unsized,
    Total(usize),
    Bounds(MultiIndex),
}

/// Rank `n` plus the domain size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    pub rank: usize,
    pub size: Size,
}

impl Shape {
    pub fn rank_only(rank: usize) -> Self {
        Shape { rank, size: Size::Unsized }
    }

    pub fn total(rank: usize, n: usize) -> Self {
        Shape { rank, size: Size::Total(n) }
    }

    pub fn bounds(m: MultiIndex) -> Self {
        Shape { rank: m.len(), size: Size::Bounds(m) }
    }

    pub fn uniform_box(rank: usize, bound: usize) -> Self {
        Shape::bounds(MultiIndex::uniform(rank, bound))
    }

    /// `N` for a simplex, `|m|` for a box, 0 otherwise.
    pub fn magnitude(&self) -> usize {
        match &self.size {
            Size::Unsized => 0,
            Size::Total(n) => *n,
            Size::Bounds(m) => m.weight(),
        }
    }

    pub fn total_value(&self) -> Option<usize> {
        match self.size {
            Size::Total(n) => Some(n),
            _ => None,
        }
    }

    pub fn bounds_value(&self) -> Option<&MultiIndex> {
        match &self.size {
            Size::Bounds(m) => Some(m),
            _ => None,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.size {
            Size::Unsized => write!(f, "n={}", self.rank),
            Size::Total(n) => write!(f, "n={},N={}", self.rank, n),
            Size::Bounds(m) => write!(f, "n={},m={}", self.rank, m),
        }
    }
}

/// All values that parametrize one instance of an identity.
#[derive(Clone, Debug, PartialEq)]
pub struct ParameterSet {
    /// Nome value; `|p| < 1` is checked when an evaluator is built.
    pub p: BigComplex,
    pub q: BigComplex,
    pub scalars: BTreeMap<&'static str, BigComplex>,
    pub lists: BTreeMap<&'static str, Vec<BigComplex>>,
    pub ints: BTreeMap<&'static str, usize>,
    pub indices: BTreeMap<&'static str, MultiIndex>,
    pub shape: Shape,
}

impl ParameterSet {
    pub fn new(p: BigComplex, q: BigComplex, shape: Shape) -> Self {
        ParameterSet {
            p,
            q,
            scalars: BTreeMap::new(),
            lists: BTreeMap::new(),
            ints: BTreeMap::new(),
            indices: BTreeMap::new(),
            shape,
        }
    }

    pub fn rank(&self) -> usize {
        self.shape.rank
    }

    pub fn scalar(&self, name: &'static str) -> Result<&BigComplex> {
        self.scalars.get(name).ok_or(Error::MissingParameter(name))
    }

    pub fn list(&self, name: &'static str) -> Result<&[BigComplex]> {
        self.lists.get(name).map(Vec::as_slice).ok_or(Error::MissingParameter(name))
    }

    pub fn int(&self, name: &'static str) -> Result<usize> {
        self.ints.get(name).copied().ok_or(Error::MissingParameter(name))
    }

    pub fn index(&self, name: &'static str) -> Result<&MultiIndex> {
        self.indices.get(name).ok_or(Error::MissingParameter(name))
    }

    pub fn total(&self) -> Result<usize> {
        self.shape.total_value().ok_or(Error::MissingParameter("N"))
    }

    pub fn bounds(&self) -> Result<&MultiIndex> {
        self.shape.bounds_value().ok_or(Error::MissingParameter("m"))
    }

    pub fn set_scalar(&mut self, name: &'static str, v: BigComplex) {
        self.scalars.insert(name, v);
    }

    pub fn set_list(&mut self, name: &'static str, v: Vec<BigComplex>) {
        self.lists.insert(name, v);
    }

    /// Every complex value rounded to `prec` bits.
    pub fn with_precision(&self, prec: usize) -> Self {
        let mut out = self.clone();
        out.p = self.p.with_precision(prec);
        out.q = self.q.with_precision(prec);
        for v in out.scalars.values_mut() {
            *v = v.with_precision(prec);
        }
        for l in out.lists.values_mut() {
            for v in l.iter_mut() {
                *v = v.with_precision(prec);
            }
        }
        out
    }

    /// Checks that every complex entry is nonzero and finite.
    pub fn validate(&self) -> Result<()> {
        let all = core::iter::once(&self.q)
            .chain(self.scalars.values())
            .chain(self.lists.values().flatten());
        for v in all {
            if !v.is_finite() {
                return Err(Error::NonFinite);
            }
            if v.is_zero() {
                return Err(Error::ZeroArgument);
            }
        }
        Ok(())
    }

    /// Compact text rendering with double-precision approximations.
    pub fn summary(&self) -> String {
        let fmt_c = |v: &BigComplex| {
            let (re, im) = v.to_f64_lossy();
            format!("{re:.6}{im:+.6}i")
        };
        let mut s = format!("{} p={} q={}", self.shape, fmt_c(&self.p), fmt_c(&self.q));
        for (k, v) in &self.scalars {
            s.push_str(&format!(" {k}={}", fmt_c(v)));
        }
        for (k, l) in &self.lists {
            let parts: Vec<String> = l.iter().map(fmt_c).collect();
            s.push_str(&format!(" {k}=[{}]", parts.join(", ")));
        }
        for (k, v) in &self.ints {
            s.push_str(&format!(" {k}={v}"));
        }
        for (k, v) in &self.indices {
            s.push_str(&format!(" {k}={v}"));
        }
        s
    }
}
