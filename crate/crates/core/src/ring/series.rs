//! Truncated formal power series with polynomial coefficients.
//!
//! A series carries an explicit truncation order; binary operations propagate
//! the minimum order of the operands and never extend silently. sqrt, log and
//! exp use the standard coefficient recursions, so every division is by an
//! integer and the arithmetic stays exact over the rationals.

use std::ops::{Add, Mul, Sub};


use super::poly::{MPoly, Var};
use super::rat::Rat;
use crate::{Error, Result};

/// Truncated power series in one designated variable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    var: Var,
    coeffs: Vec<MPoly>, // length = order + 1
}

impl Series {
    /// Build from coefficients; missing entries are zero-padded to `order + 1`.
    pub fn new(var: Var, order: usize, mut coeffs: Vec<MPoly>) -> Series {
        coeffs.truncate(order + 1);
        coeffs.resize(order + 1, MPoly::zero());
        debug_assert!(coeffs.iter().all(|c| !c.mentions(var)));
        Series { var, coeffs }
    }

    pub fn zero(var: Var, order: usize) -> Series {
        Series::new(var, order, vec![])
    }

    pub fn one(var: Var, order: usize) -> Series {
        Series::new(var, order, vec![MPoly::one()])
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &MPoly {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Series {
        Series::new(self.var, order.min(self.order()), self.coeffs.clone())
    }

    fn check_unit_constant(&self) -> Result<()> {
        if self.coeffs[0].is_one() {
            Ok(())
        } else {
            Err(Error::ConstantTermNotOne(self.coeffs[0].to_string()))
        }
    }

    pub fn scale(&self, c: &MPoly) -> Series {
        Series {
            var: self.var,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Square root of a series with constant term 1, by the coefficient
    /// recursion `2 t_k = s_k - sum_{i=1}^{k-1} t_i t_{k-i}`.
    pub fn sqrt(&self) -> Result<Series> {
        self.check_unit_constant()?;
        let n = self.order();
        let half = Rat::new(1.into(), 2.into());
        let mut t: Vec<MPoly> = vec![MPoly::one()];
        for k in 1..=n {
            let mut acc = self.coeffs[k].clone();
            for i in 1..k {
                acc -= &t[i] * &t[k - i];
            }
            t.push(acc.mul_rat(&half));
        }
        Ok(Series { var: self.var, coeffs: t })
    }

    /// log of a series with constant term 1: `k l_k = k s_k - sum m l_m s_{k-m}`.
    pub fn log(&self) -> Result<Series> {
        self.check_unit_constant()?;
        let n = self.order();
        let mut l: Vec<MPoly> = vec![MPoly::zero()];
        for k in 1..=n {
            let mut acc = self.coeffs[k].mul_rat(&Rat::from_integer(k.into()));
            for m in 1..k {
                acc -= (&l[m] * &self.coeffs[k - m]).mul_rat(&Rat::from_integer(m.into()));
            }
            l.push(acc.mul_rat(&Rat::new(1.into(), (k as i64).into())));
        }
        Ok(Series { var: self.var, coeffs: l })
    }

    /// exp of a series with constant term 0: `k e_k = sum m u_m e_{k-m}`.
    pub fn exp(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Invalid(format!(
                "exp requires zero constant term, found {}",
                self.coeffs[0]
            )));
        }
        let n = self.order();
        let mut e: Vec<MPoly> = vec![MPoly::one()];
        for k in 1..=n {
            let mut acc = MPoly::zero();
            for m in 1..=k {
                acc += (&self.coeffs[m] * &e[k - m]).mul_rat(&Rat::from_integer(m.into()));
            }
            e.push(acc.mul_rat(&Rat::new(1.into(), (k as i64).into())));
        }
        Ok(Series { var: self.var, coeffs: e })
    }

    /// `self^exponent = exp(exponent * log self)` for any polynomial exponent,
    /// requiring constant term 1.
    pub fn pow_poly(&self, exponent: &MPoly) -> Result<Series> {
        self.log()?.scale(exponent).exp()
    }

    fn min_order(&self, rhs: &Series) -> usize {
        assert_eq!(self.var, rhs.var, "series variables differ");
        self.order().min(rhs.order())
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let n = self.min_order(rhs);
        Series::new(
            self.var,
            n,
            (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        )
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let n = self.min_order(rhs);
        Series::new(
            self.var,
            n,
            (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        )
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let n = self.min_order(rhs);
        let mut coeffs = vec![MPoly::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        Series { var: self.var, coeffs }
    }
}
