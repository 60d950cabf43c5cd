//! Summation domains: the exact simplex `|y| = N`, the solid simplex
//! `|y| <= N` and the box `0 <= y_k <= m_k`.
//!
//! All streams are lexicographic.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A vector of nonnegative integers `(y_1, ..., y_n)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(entries: Vec<usize>) -> Self {
        MultiIndex(entries)
    }

    pub fn zeros(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn uniform(n: usize, value: usize) -> Self {
        MultiIndex(vec![value; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|y|`, the sum of the entries.
    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, k: usize) -> usize {
        self.0[k]
    }

    pub fn iter(&self) -> core::slice::Iter<'_, usize> {
        self.0.iter()
    }
}

impl From<Vec<usize>> for MultiIndex {
    fn from(v: Vec<usize>) -> Self {
        MultiIndex(v)
    }
}

impl core::ops::Index<usize> for MultiIndex {
    type Output = usize;
    fn index(&self, k: usize) -> &usize {
        &self.0[k]
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// A finite summation domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    /// `|y| = N` with `n` coordinates.
    SimplexExact { n: usize, total: usize },
    /// `|y| <= N` with `n` coordinates.
    SimplexLe { n: usize, total: usize },
    /// `0 <= y_k <= m_k`.
    Box(MultiIndex),
}

impl Domain {
    pub fn iter(&self) -> DomainIter {
        match self {
            Domain::SimplexExact { n, total } => simplex_exact(*n, *total),
            Domain::SimplexLe { n, total } => simplex_le(*n, *total),
            Domain::Box(m) => box_iter(m),
        }
    }

    /// Closed-form number of points.
    pub fn count(&self) -> usize {
        match self {
            Domain::SimplexExact { n, total } => binomial(total + n - 1, n - 1),
            Domain::SimplexLe { n, total } => binomial(total + n, *n),
            Domain::Box(m) => m.iter().map(|v| v + 1).product(),
        }
    }
}

/// `C(n, k)` by the multiplicative formula, exact for the small arguments used here.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[derive(Clone, Debug)]
enum Kind {
    Exact(usize),
    Le(usize),
    Box(MultiIndex),
}

/// Lexicographic stream over a [`Domain`].
#[derive(Clone, Debug)]
pub struct DomainIter {
    kind: Kind,
    next: Option<Vec<usize>>,
}

/// Every `y` of length `n` with `|y| = total`.
///
/// # Panics
/// If `n == 0`.
pub fn simplex_exact(n: usize, total: usize) -> DomainIter {
    assert!(n >= 1, "simplex needs at least one coordinate");
    let mut first = vec![0; n];
    first[n - 1] = total;
    DomainIter { kind: Kind::Exact(total), next: Some(first) }
}

/// Every `y` of length `n` with `|y| <= total`.
pub fn simplex_le(n: usize, total: usize) -> DomainIter {
    DomainIter { kind: Kind::Le(total), next: Some(vec![0; n]) }
}

/// Every `y` with `0 <= y_k <= m_k`.
pub fn box_iter(m: &MultiIndex) -> DomainIter {
    DomainIter { kind: Kind::Box(m.clone()), next: Some(vec![0; m.len()]) }
}

/// Advances `y` to the lexicographic successor inside `|y| <= total`.
fn advance_le(y: &mut [usize], total: usize) -> bool {
    let mut prefix: usize = y.iter().sum();
    for i in (0..y.len()).rev() {
        prefix -= y[i];
        if prefix + y[i] < total {
            y[i] += 1;
            for v in &mut y[i + 1..] {
                *v = 0;
            }
            return true;
        }
    }
    false
}

impl Iterator for DomainIter {
    type Item = MultiIndex;

    fn next(&mut self) -> Option<MultiIndex> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let more = match &self.kind {
            Kind::Le(total) => advance_le(&mut succ, *total),
            Kind::Exact(total) => {
                // The last coordinate is determined by the prefix.
                let n = succ.len();
                let ok = advance_le(&mut succ[..n - 1], *total);
                if ok {
                    let w: usize = succ[..n - 1].iter().sum();
                    succ[n - 1] = total - w;
                }
                ok
            }
            Kind::Box(m) => {
                let mut ok = false;
                for i in (0..succ.len()).rev() {
                    if succ[i] < m[i] {
                        succ[i] += 1;
                        for v in &mut succ[i + 1..] {
                            *v = 0;
                        }
                        ok = true;
                        break;
                    }
                }
                ok
            }
        };
        if more {
            self.next = Some(succ);
        }
        Some(MultiIndex(current))
    }
}
