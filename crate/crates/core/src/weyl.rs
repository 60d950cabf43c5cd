//! Factors coupling the summation indices: the elliptic Vandermonde product,
//! its shift ratio, and the `A_n`, `C_n` and `D_n` weight blocks.
//!
//! The `*_into` methods fold their factors into a [`Product`] so each term of
//! a series keeps a single numerator and denominator.

use crate::arith::{residual, BigComplex, Real};
use crate::error::Result;
use crate::eval::{Evaluator, Product};
use crate::lattice::MultiIndex;

/// Points `z_1, ..., z_n` together with the evaluator that fixes `p` and `q`.
#[derive(Clone, Copy, Debug)]
pub struct PointConfig<'a> {
    pub ev: &'a Evaluator,
    pub z: &'a [BigComplex],
}

fn sign_of(k: usize) -> bool {
    k % 2 == 1
}

impl<'a> PointConfig<'a> {
    pub fn new(ev: &'a Evaluator, z: &'a [BigComplex]) -> Self {
        PointConfig { ev, z }
    }

    pub fn rank(&self) -> usize {
        self.z.len()
    }

    fn ratio(&self, j: usize, k: usize) -> BigComplex {
        &self.z[k] / &self.z[j]
    }

    /// `Delta(z) = prod_{j<k} z_j theta(z_k/z_j)`.
    pub fn vandermonde(&self) -> Result<BigComplex> {
        let mut acc = self.ev.one();
        for k in 0..self.rank() {
            for j in 0..k {
                let t = self.ev.theta(&self.ratio(j, k))?;
                acc = &acc * &(&self.z[j] * &t);
            }
        }
        Ok(acc)
    }

    /// Folds `Delta(z q^y) / Delta(z)` into `prod`.
    pub fn vandermonde_ratio_into(&self, prod: &mut Product<'_>, y: &MultiIndex) -> Result<()> {
        for k in 0..self.rank() {
            for j in 0..k {
                let r = self.ratio(j, k);
                prod.qpow(y[j] as i64);
                prod.theta(&self.ev.shift(&r, y[k] as i64 - y[j] as i64))?;
                prod.theta_den(&r)?;
            }
        }
        Ok(())
    }

    /// `Delta(z q^y) / Delta(z)`.
    pub fn vandermonde_ratio(&self, y: &MultiIndex) -> Result<BigComplex> {
        let mut prod = self.ev.product();
        self.vandermonde_ratio_into(&mut prod, y)?;
        Ok(prod.value())
    }

    /// `prod_k theta(a z_k q^{y_k + |y|}) / theta(a z_k)`, the `A_n`
    /// very-well-poised weight.
    pub fn an_weight_into(&self, prod: &mut Product<'_>, a: &BigComplex, y: &MultiIndex) -> Result<()> {
        let w = y.weight() as i64;
        for k in 0..self.rank() {
            let az = a * &self.z[k];
            prod.theta(&self.ev.shift(&az, y[k] as i64 + w))?;
            prod.theta_den(&az)?;
        }
        Ok(())
    }

    /// `prod_{j<=k} theta(a z_j z_k q^{y_j + y_k}) / theta(a z_j z_k)`.
    pub fn cn_weight_into(&self, prod: &mut Product<'_>, a: &BigComplex, y: &MultiIndex) -> Result<()> {
        for k in 0..self.rank() {
            for j in 0..=k {
                let x = &(a * &self.z[j]) * &self.z[k];
                prod.theta(&self.ev.shift(&x, (y[j] + y[k]) as i64))?;
                prod.theta_den(&x)?;
            }
        }
        Ok(())
    }

    pub fn cn_weight(&self, a: &BigComplex, y: &MultiIndex) -> Result<BigComplex> {
        let mut prod = self.ev.product();
        self.cn_weight_into(&mut prod, a, y)?;
        Ok(prod.value())
    }

    /// `prod_{j<k} 1 / (z_j z_k)_{y_j + y_k}`.
    pub fn dn_coupling_into(&self, prod: &mut Product<'_>, y: &MultiIndex) -> Result<()> {
        for k in 0..self.rank() {
            for j in 0..k {
                prod.poch_den(&(&self.z[j] * &self.z[k]), y[j] + y[k])?;
            }
        }
        Ok(())
    }

    pub fn dn_coupling(&self, y: &MultiIndex) -> Result<BigComplex> {
        let mut prod = self.ev.product();
        self.dn_coupling_into(&mut prod, y)?;
        Ok(prod.value())
    }

    /// `prod_{j,k} (q^{-m_j} z_k/z_j)_{y_k} / (q z_k/z_j)_{y_k}`, the factor
    /// that truncates a sum to the box `y <= m`.
    pub fn box_factor_into(&self, prod: &mut Product<'_>, m: &MultiIndex, y: &MultiIndex) -> Result<()> {
        for j in 0..self.rank() {
            for k in 0..self.rank() {
                let r = self.ratio(j, k);
                prod.poch(&self.ev.shift(&r, -(m[j] as i64)), y[k])?;
                prod.poch_den(&self.ev.shift(&r, 1), y[k])?;
            }
        }
        Ok(())
    }

    /// `prod_{j,k} 1 / (q z_k/z_j)_{y_k}`, the simplex analogue of
    /// [`PointConfig::box_factor_into`] without the truncating numerator.
    pub fn q_factorials_into(&self, prod: &mut Product<'_>, y: &MultiIndex) -> Result<()> {
        for j in 0..self.rank() {
            for k in 0..self.rank() {
                prod.poch_den(&self.ev.shift(&self.ratio(j, k), 1), y[k])?;
            }
        }
        Ok(())
    }

    /// Residual of `(-1)^{|y|} q^{|y| + C(|y|,2)} Delta(zq^y)/Delta(z)
    /// prod_{j,k} (q^{-y_j} z_k/z_j)_{y_k} / (q z_k/z_j)_{y_k}` against 1.
    pub fn det_identity_check(&self, y: &MultiIndex) -> Result<Real> {
        let w = y.weight();
        let mut prod = self.ev.product();
        prod.negate_if(sign_of(w));
        prod.qpow((w + w * w.saturating_sub(1) / 2) as i64);
        self.vandermonde_ratio_into(&mut prod, y)?;
        self.box_factor_into(&mut prod, y, y)?;
        Ok(residual(&prod.value(), &self.ev.one()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::Mode;
    use alloc::vec;
    use alloc::vec::Vec;

    fn c(re: f64, im: f64) -> BigComplex {
        BigComplex::from_f64(re, im, 256)
    }

    fn ev(p: f64) -> Evaluator {
        Evaluator::new(&c(p, 0.12), &c(0.7, 0.55), 256, Mode::Evaluate).unwrap()
    }

    fn zs() -> Vec<BigComplex> {
        vec![c(0.9, 0.2), c(-0.4, 1.3), c(1.1, -0.8)]
    }

    #[test]
    fn rank_one_products_are_empty() {
        let e = ev(0.2);
        let z = [c(0.9, 0.2)];
        let pc = PointConfig::new(&e, &z);
        assert!(pc.vandermonde().unwrap().is_one());
        assert!(pc.dn_coupling(&MultiIndex::new(vec![3])).unwrap().is_one());
    }

    #[test]
    fn rational_vandermonde_at_zero_nome() {
        let e = Evaluator::new(&c(0.0, 0.0), &c(0.7, 0.55), 256, Mode::Evaluate).unwrap();
        let z = [c(0.9, 0.2), c(-0.4, 1.3)];
        let v = PointConfig::new(&e, &z).vandermonde().unwrap();
        assert!(residual(&v, &(&z[0] - &z[1])).log2() < -250.0);
    }

    #[test]
    fn uniform_shift_ratio_is_q_for_two_points() {
        let e = ev(0.2);
        let z = [c(0.9, 0.2), c(-0.4, 1.3)];
        let r = PointConfig::new(&e, &z).vandermonde_ratio(&MultiIndex::new(vec![1, 1])).unwrap();
        assert!(residual(&r, e.q()).log2() < -250.0);
    }

    #[test]
    fn ratio_matches_quotient_of_vandermondes() {
        let e = ev(0.25);
        let z = zs();
        let pc = PointConfig::new(&e, &z);
        let y = MultiIndex::new(vec![2, 0, 3]);
        let shifted: Vec<_> = z.iter().zip(y.iter()).map(|(zk, &yk)| e.shift(zk, yk as i64)).collect();
        let want = &PointConfig::new(&e, &shifted).vandermonde().unwrap() / &pc.vandermonde().unwrap();
        assert!(residual(&pc.vandermonde_ratio(&y).unwrap(), &want).log2() < -240.0);
    }

    #[test]
    fn swapping_points_negates_vandermonde() {
        let e = ev(0.25);
        let z = zs();
        let base = PointConfig::new(&e, &z).vandermonde().unwrap();
        for (a, b) in [(0usize, 1usize), (1, 2), (0, 2)] {
            let mut w = z.clone();
            w.swap(a, b);
            let v = PointConfig::new(&e, &w).vandermonde().unwrap();
            assert!(residual(&v, &-&base).log2() < -240.0);
        }
    }

    #[test]
    fn single_point_cn_weight() {
        let e = ev(0.25);
        let z = [c(0.9, 0.2)];
        let a = c(0.6, -0.7);
        let y = MultiIndex::new(vec![2]);
        let got = PointConfig::new(&e, &z).cn_weight(&a, &y).unwrap();
        let az2 = &(&a * &z[0]) * &z[0];
        let want = &e.theta(&e.shift(&az2, 4)).unwrap() / &e.theta(&az2).unwrap();
        assert!(residual(&got, &want).log2() < -250.0);
    }

    #[test]
    fn det_identity_small_cases() {
        let e = ev(0.25);
        let z = zs();
        let pc = PointConfig::new(&e, &z);
        assert!(pc.det_identity_check(&MultiIndex::zeros(3)).unwrap().is_zero());
        let one = [c(1.3, 0.4)];
        for n in 0..4 {
            let r = PointConfig::new(&e, &one).det_identity_check(&MultiIndex::new(vec![n])).unwrap();
            assert!(r.log2() < -240.0, "N={n}");
        }
        let r = pc.det_identity_check(&MultiIndex::new(vec![1, 3, 2])).unwrap();
        assert!(r.log2() < -230.0);
    }
}
