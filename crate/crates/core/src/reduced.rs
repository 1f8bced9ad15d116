//! Products in the reduced space.
//!
//! With the identification `Q_n ↦ X^n` the k-th product of reduced elements is
//!
//! ```text
//! X^m A <k> X^n B = [d(σ)_{m,n,k} A·B + (-1)^{k+1} d(-σ)_{m,n,k} B·A] X^{m+n-k}
//! ```
//!
//! where the structure constants come from a double-binomial sum. The
//! brute-force route — lift to `gc_N`, take the k-th product, project — must
//! give the same answer; [`reduced_bracket_oracle`] implements it and the test
//! suites compare the two everywhere they can afford to.

use crate::ring::{binom_uint, factorial, MPoly, Rat};
use crate::virasoro::{project, q_basis, ReducedElem, VirasoroElem};
use crate::{Error, Result};

/// One side of a reduced product: degree m together with an N×N coefficient
/// matrix over ℚ[σ] (row-major).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReducedPart {
    pub degree: u16,
    pub matrix: Vec<MPoly>,
}

impl ReducedPart {
    pub fn new(degree: u16, matrix: Vec<MPoly>) -> ReducedPart {
        ReducedPart { degree, matrix }
    }

    /// Scalar (N = 1) part `X^degree` with unit coefficient.
    pub fn scalar(degree: u16) -> ReducedPart {
        ReducedPart::new(degree, vec![MPoly::one()])
    }

    fn size(&self) -> usize {
        let n = (self.matrix.len() as f64).sqrt() as usize;
        debug_assert_eq!(n * n, self.matrix.len());
        n
    }
}

/// The structure constant `d(σ)_{m,n,k}`:
///
/// ```text
/// k! / (binom(2m,m) binom(2n,n)) ·
///   Σ_{i+j=k, i≤m, j≤n} binom(2m-i,m) binom(m+σ,i) binom(2n-j,n) binom(n-σ,j)
/// ```
pub fn d_coeff(m: u16, n: u16, k: u16, sigma: &MPoly) -> Result<MPoly> {
    if k > m + n {
        return Err(Error::ProductRange {
            k: k as usize,
            max: (m + n) as usize,
        });
    }
    let m_plus = &MPoly::int(m as i64) + sigma;
    let n_minus = &MPoly::int(n as i64) - sigma;
    let mut acc = MPoly::zero();
    let lo = k.saturating_sub(n);
    let hi = k.min(m);
    for i in lo..=hi {
        let j = k - i;
        let c = binom_uint((2 * m - i) as u64, m as u64) * binom_uint((2 * n - j) as u64, n as u64);
        let term = &MPoly::binom(&m_plus, i) * &MPoly::binom(&n_minus, j);
        acc += term.mul_rat(&Rat::from_integer(c));
    }
    let scale = Rat::new(
        factorial(k as u64),
        binom_uint(2 * m as u64, m as u64) * binom_uint(2 * n as u64, n as u64),
    );
    Ok(acc.mul_rat(&scale))
}

/// The closed-form k-th product `X^m A <k> X^n B` as a single-component
/// reduced element at degree m+n-k.
pub fn reduced_product(a: &ReducedPart, b: &ReducedPart, k: u16, sigma: &MPoly) -> Result<ReducedElem> {
    let n_mat = a.size();
    if n_mat != b.size() {
        return Err(Error::SizeMismatch(n_mat, b.size()));
    }
    let (m, n) = (a.degree, b.degree);
    let d_pos = d_coeff(m, n, k, sigma)?;
    let d_neg = d_coeff(m, n, k, &-sigma)?;
    let ab = mat_mul_poly(n_mat, &a.matrix, &b.matrix);
    let ba = mat_mul_poly(n_mat, &b.matrix, &a.matrix);
    let sign = if k % 2 == 0 { MPoly::int(-1) } else { MPoly::one() };
    let entries: Vec<MPoly> = ab
        .iter()
        .zip(&ba)
        .map(|(u, v)| &(u * &d_pos) + &(&(v * &d_neg) * &sign))
        .collect();
    ReducedElem::single(n_mat, m + n - k, entries)
}

fn mat_mul_poly(n: usize, a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let mut out = vec![MPoly::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            if a[i * n + k].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[k * n + j].is_zero() {
                    continue;
                }
                out[i * n + j] += &a[i * n + k] * &b[k * n + j];
            }
        }
    }
    out
}

/// Brute-force oracle for the same product: lift `X^m A` and `X^n B` to
/// `gc_N` as `Q_m·A` and `Q_n·B`, take the k-th product there, and project
/// back onto the reduced space.
pub fn reduced_bracket_oracle(
    a: &ReducedPart,
    b: &ReducedPart,
    k: u16,
    sigma: &MPoly,
) -> Result<ReducedElem> {
    let n_mat = a.size();
    if n_mat != b.size() {
        return Err(Error::SizeMismatch(n_mat, b.size()));
    }
    if k > a.degree + b.degree {
        return Err(Error::ProductRange {
            k: k as usize,
            max: (a.degree + b.degree) as usize,
        });
    }
    let alpha = (&MPoly::one() - sigma).mul_rat(&crate::ring::rat(1, 2));
    let vir = VirasoroElem::new(alpha, n_mat)?;
    let lift = |part: &ReducedPart| -> Result<crate::gc::GcElem> {
        let q = q_basis(sigma, part.degree);
        crate::gc::GcElem::new(n_mat, part.matrix.iter().map(|e| &q * e).collect())
    };
    let ga = lift(a)?;
    let gb = lift(b)?;
    let prod = crate::gc::nth_product(&ga, &gb, k)?;
    project(&prod, &vir)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat_int, Var};

    fn s() -> MPoly {
        MPoly::var(Var::Sigma)
    }

    fn p(src: &str) -> MPoly {
        src.parse().unwrap()
    }

    fn scalar_product(m: u16, n: u16, k: u16) -> ReducedElem {
        reduced_product(&ReducedPart::scalar(m), &ReducedPart::scalar(n), k, &s()).unwrap()
    }

    #[test]
    fn d_low_values() {
        // d_{m,n,0} = 1
        for m in 0..=6 {
            for n in 0..=6 {
                assert_eq!(d_coeff(m, n, 0, &s()).unwrap(), MPoly::one());
            }
        }
        // d_{m,n,1} = (m+n)/2 for m,n >= 1; spot value d_{1,1,1} = 1
        assert_eq!(d_coeff(1, 1, 1, &s()).unwrap(), MPoly::one());
        for m in 1..=5i64 {
            for n in 1..=5i64 {
                let expect = MPoly::constant(crate::ring::rat(m + n, 2));
                assert_eq!(d_coeff(m as u16, n as u16, 1, &s()).unwrap(), expect);
            }
        }
        // d_{2,2,3} = (4 - σ^2)/2
        assert_eq!(d_coeff(2, 2, 3, &s()).unwrap(), p("2 - 1/2*s^2"));
    }

    #[test]
    fn d_rejects_out_of_range() {
        assert!(d_coeff(1, 2, 4, &s()).is_err());
    }

    #[test]
    fn d_symmetry() {
        // d(σ)_{m,n,k} = d(-σ)_{n,m,k}
        let neg = -&s();
        for m in 0..=6u16 {
            for n in 0..=6u16 {
                for k in 0..=(m + n).min(8) {
                    assert_eq!(
                        d_coeff(m, n, k, &s()).unwrap(),
                        d_coeff(n, m, k, &neg).unwrap(),
                        "m={m} n={n} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn first_product_table() {
        // X^m <1> X^n = (m+n) X^{m+n-1}
        for m in 0..=5u16 {
            for n in 0..=5u16 {
                if m + n < 1 {
                    continue;
                }
                let r = scalar_product(m, n, 1);
                let expect = ReducedElem::single(
                    1,
                    m + n - 1,
                    vec![MPoly::constant(rat_int((m + n) as i64))],
                )
                .unwrap();
                assert_eq!(r, expect, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn second_product_table() {
        // X^m <2> X^n = 0 for m,n >= 1; X^0 <2> X^n = -σ(n-1) X^{n-2}
        for m in 1..=5u16 {
            for n in 1..=5u16 {
                if m + n < 2 {
                    continue;
                }
                assert!(scalar_product(m, n, 2).is_zero(), "m={m} n={n}");
            }
        }
        for n in 2..=6u16 {
            let r = scalar_product(0, n, 2);
            let coeff = (-&s()).mul_rat(&rat_int((n - 1) as i64));
            assert_eq!(r, ReducedElem::single(1, n - 2, vec![coeff]).unwrap());
        }
    }

    #[test]
    fn near_top_products() {
        // X^1 <3> X^2 = (1-σ^2) X^0
        let r = scalar_product(1, 2, 3);
        assert_eq!(r, ReducedElem::single(1, 0, vec![p("1 - s^2")]).unwrap());
        // X^m <2m> X^m = 0
        for m in 1..=5u16 {
            assert!(scalar_product(m, m, 2 * m).is_zero(), "m={m}");
        }
        // X^m <2m-1> X^m = (2(m+1)/binom(2m,m)) ∏_{i=2}^m (i^2-σ^2) X^1
        for m in 1..=5u16 {
            let mut expect = MPoly::constant(Rat::new(
                (2 * (m as i64 + 1)).into(),
                binom_uint(2 * m as u64, m as u64),
            ));
            for i in 2..=m as i64 {
                expect = &expect * &(&MPoly::int(i * i) - &s().pow(2));
            }
            assert_eq!(
                scalar_product(m, m, 2 * m - 1),
                ReducedElem::single(1, 1, vec![expect]).unwrap(),
                "m={m}"
            );
        }
    }

    #[test]
    fn reduced_skewsymmetry() {
        // X^m A <k> X^n B = (-1)^{k+1} X^n B <k> X^m A
        for m in 0..=5u16 {
            for n in 0..=5u16 {
                for k in 0..=(m + n).min(5) {
                    let ab = scalar_product(m, n, k);
                    let ba = scalar_product(n, m, k);
                    let sign = if k % 2 == 0 {
                        MPoly::int(-1)
                    } else {
                        MPoly::one()
                    };
                    let flipped = ReducedElem::single(
                        1,
                        m + n - k,
                        vec![&ba.component(m + n - k)[0] * &sign],
                    )
                    .unwrap();
                    assert_eq!(ab, flipped, "m={m} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn oracle_agrees_scalar() {
        for m in 0..=4u16 {
            for n in 0..=4u16 {
                for k in 0..=m + n {
                    let a = ReducedPart::scalar(m);
                    let b = ReducedPart::scalar(n);
                    let fast = reduced_product(&a, &b, k, &s()).unwrap();
                    let slow = reduced_bracket_oracle(&a, &b, k, &s()).unwrap();
                    assert_eq!(fast, slow, "m={m} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn oracle_agrees_matrix_case() {
        // N = 2 with non-commuting integer matrices
        let a = ReducedPart::new(2, vec![p("1"), p("2"), p("0"), p("1")]);
        let b = ReducedPart::new(3, vec![p("0"), p("1"), p("3"), p("-1")]);
        for k in 0..=5u16 {
            let fast = reduced_product(&a, &b, k, &s()).unwrap();
            let slow = reduced_bracket_oracle(&a, &b, k, &s()).unwrap();
            assert_eq!(fast, slow, "k={k}");
        }
    }

    #[test]
    fn positivity_pattern_for_integer_sigma() {
        // for σ = ±S and m,n >= S: d > 0 iff m+n-k >= S, and = 0 otherwise
        for s_val in 0..=3i64 {
            for &sg in &[s_val, -s_val] {
                let sigma = MPoly::int(sg);
                for m in s_val..=6 {
                    for n in s_val..=6 {
                        for k in 0..=(m + n) as u16 {
                            let d = d_coeff(m as u16, n as u16, k, &sigma)
                                .unwrap()
                                .constant_value()
                                .unwrap();
                            if (m + n) as u16 - k >= s_val as u16 {
                                assert!(
                                    crate::ring::rat::is_positive(&d),
                                    "σ={sg} m={m} n={n} k={k}: {d}"
                                );
                            } else {
                                assert!(d == Rat::from_integer(0.into()), "σ={sg} m={m} n={n} k={k}");
                            }
                        }
                    }
                }
            }
        }
    }
}
