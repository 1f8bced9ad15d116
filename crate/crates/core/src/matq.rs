//! Small dense matrices over the rationals: exact Gaussian elimination for
//! rank and inverse, plus the handful of products the subalgebra machinery
//! needs.

use num::{One, Signed, Zero};

use crate::ring::{MPoly, Rat};
use crate::{Error, Result};

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Result<RatMat> {
        if data.len() != rows * cols {
            return Err(Error::Invalid(format!(
                "expected {} entries for a {rows}x{cols} matrix, found {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(RatMat { rows, cols, data })
    }

    pub fn zero(rows: usize, cols: usize) -> RatMat {
        RatMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> RatMat {
        let mut m = RatMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> RatMat {
        RatMat {
            rows,
            cols,
            data: data.iter().map(|&v| Rat::from_integer(v.into())).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> RatMat {
        let mut out = RatMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &RatMat) -> RatMat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = RatMat::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = &self[(i, k)] * &rhs[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a += b.clone();
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> RatMat {
        RatMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    /// Rank by fraction-free forward elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut col = 0;
        while rank < m.rows && col < m.cols {
            let pivot = (rank..m.rows).find(|&r| !m[(r, col)].is_zero());
            let Some(p) = pivot else {
                col += 1;
                continue;
            };
            if p != rank {
                for c in 0..m.cols {
                    let a = m[(rank, c)].clone();
                    let b = m[(p, c)].clone();
                    m[(rank, c)] = b;
                    m[(p, c)] = a;
                }
            }
            for r in rank + 1..m.rows {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] / &m[(rank, col)];
                for c in col..m.cols {
                    let sub = &factor * &m[(rank, c)];
                    m[(r, c)] -= sub;
                }
            }
            rank += 1;
            col += 1;
        }
        rank
    }

    /// Exact inverse by Gauss-Jordan; None when singular.
    pub fn inverse(&self) -> Option<RatMat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = RatMat::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[(r, col)].is_zero())?;
            if pivot != col {
                for c in 0..n {
                    let (a, b) = (m[(col, c)].clone(), m[(pivot, c)].clone());
                    m[(col, c)] = b;
                    m[(pivot, c)] = a;
                    let (a, b) = (inv[(col, c)].clone(), inv[(pivot, c)].clone());
                    inv[(col, c)] = b;
                    inv[(pivot, c)] = a;
                }
            }
            let d = m[(col, col)].clone();
            for c in 0..n {
                m[(col, c)] /= d.clone();
                inv[(col, c)] /= d.clone();
            }
            for r in 0..n {
                if r == col || m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone();
                for c in 0..n {
                    let sm = &f * &m[(col, c)];
                    m[(r, c)] -= sm;
                    let si = &f * &inv[(col, c)];
                    inv[(r, c)] -= si;
                }
            }
        }
        Some(inv)
    }

    /// Lift to a constant polynomial matrix.
    pub fn to_poly(&self) -> Vec<MPoly> {
        self.data.iter().map(|c| MPoly::constant(c.clone())).collect()
    }

    /// Try to read a polynomial matrix whose entries are all constants.
    pub fn from_poly(n: usize, entries: &[MPoly]) -> Option<RatMat> {
        let data: Option<Vec<Rat>> = entries.iter().map(|p| p.constant_value()).collect();
        Some(RatMat {
            rows: n,
            cols: n,
            data: data?,
        })
    }

    /// True iff B^T = B or B^T = -B; returns the sign.
    pub fn symmetry_sign(&self) -> Option<i8> {
        let t = self.transpose();
        if t == *self {
            Some(1)
        } else if t == self.scale(&-Rat::one()) {
            Some(-1)
        } else {
            None
        }
    }
}

impl std::ops::Index<(usize, usize)> for RatMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl std::fmt::Display for RatMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", crate::ring::format_rat(&self[(i, j)]))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[allow(dead_code)]
fn is_positive(r: &Rat) -> bool {
    r.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_inverse() {
        let m = RatMat::from_i64(3, 3, &[1, 1, 1, 1, 2, 4, 0, 1, 0]);
        assert_eq!(m.rank(), 3);
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv), RatMat::identity(3));

        let sing = RatMat::from_i64(2, 2, &[1, 2, 2, 4]);
        assert_eq!(sing.rank(), 1);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn rectangular_rank() {
        let m = RatMat::from_i64(2, 3, &[1, 2, 3, 2, 4, 6]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn symmetry_signs() {
        assert_eq!(RatMat::identity(2).symmetry_sign(), Some(1));
        let j = RatMat::from_i64(2, 2, &[0, 1, -1, 0]);
        assert_eq!(j.symmetry_sign(), Some(-1));
        let other = RatMat::from_i64(2, 2, &[0, 1, 2, 0]);
        assert_eq!(other.symmetry_sign(), None);
    }
}
