//! The coefficients `D(σ; m,n,l)` of products of Jacobi polynomials, their
//! vanishing/symmetry laws, and the rank certificate behind the interpolation
//! argument.
//!
//! `D` is a four-binomial sum, related to the reduced structure constants by
//! `D(σ; m,n,l) = binom(2m,m) binom(2n,n) / (m+n-l)! · d(σ)_{m,n,m+n-l}`, and
//! expands the product `P_m^{(σ,-σ)}(2x+1) P_n^{(-σ,σ)}(2x+1) = Σ_l D·x^l`.

use num::{One, Zero};

use crate::jacobi::{jacobi_poly, JacobiParams};
use crate::matq::RatMat;
use crate::reduced::d_coeff;
use crate::ring::{binom_uint, factorial, rat_int, MPoly, Rat, Var};
use crate::{Error, Result};

/// The coefficient
///
/// ```text
/// D(σ; m,n,l) = Σ_{i+j=l, i≤m, j≤n}
///     binom(m+i,m) binom(m+σ,m-i) binom(n+j,n) binom(n-σ,n-j)
/// ```
///
/// as an exact polynomial in σ.
pub fn big_d(m: u16, n: u16, l: u16) -> Result<MPoly> {
    if l > m + n {
        return Err(Error::ProductRange {
            k: l as usize,
            max: (m + n) as usize,
        });
    }
    let sigma = MPoly::var(Var::Sigma);
    let m_plus = &MPoly::int(m as i64) + &sigma;
    let n_minus = &MPoly::int(n as i64) - &sigma;
    let mut acc = MPoly::zero();
    let lo = l.saturating_sub(n);
    let hi = l.min(m);
    for i in lo..=hi {
        let j = l - i;
        let ints = binom_uint((m + i) as u64, m as u64) * binom_uint((n + j) as u64, n as u64);
        let term = &MPoly::binom(&m_plus, m - i) * &MPoly::binom(&n_minus, n - j);
        acc += term.mul_rat(&Rat::from_integer(ints));
    }
    Ok(acc)
}

/// Evaluate `D(σ; m,n,l)` at a rational σ.
pub fn big_d_at(m: u16, n: u16, l: u16, sigma: &Rat) -> Result<Rat> {
    Ok(big_d(m, n, l)?
        .subst_one(Var::Sigma, &MPoly::constant(sigma.clone()))
        .constant_value()
        .expect("fully evaluated"))
}

/// Check the product expansion
/// `P_m^{(σ,-σ)}(2x+1) P_n^{(-σ,σ)}(2x+1) = Σ_l D(σ; m,n,l) x^l`
/// and the cross-link `D·(m+n-l)!/(binom(2m,m) binom(2n,n)) = d(σ)_{m,n,m+n-l}`.
pub fn product_expansion_check(m: u16, n: u16) -> Result<bool> {
    let sigma = MPoly::var(Var::Sigma);
    let arg = &MPoly::var(Var::X).mul_rat(&rat_int(2)) + &MPoly::one();
    let pm = jacobi_poly(&JacobiParams::new(sigma.clone(), -&sigma), m).subst_one(Var::Y, &arg);
    let pn = jacobi_poly(&JacobiParams::sigma_pair(&sigma), n).subst_one(Var::Y, &arg);
    let product = &pm * &pn;
    let norm = Rat::from_integer(binom_uint(2 * m as u64, m as u64) * binom_uint(2 * n as u64, n as u64));
    for l in 0..=(m + n) {
        let d = big_d(m, n, l)?;
        if product.coeff_of(Var::X, l) != d {
            return Ok(false);
        }
        // agreement with the reduced structure constants
        let k = m + n - l;
        let scale = Rat::new(factorial(k as u64), norm.numer().clone());
        if d.mul_rat(&scale) != d_coeff(m, n, k, &sigma)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of sweeping the vanishing/symmetry facts for one (m, n).
#[derive(Clone, Debug)]
pub struct FactsReport {
    pub m: u16,
    pub n: u16,
    /// (l, σ, description) triples for every failed evaluation.
    pub failures: Vec<(u16, i64, String)>,
}

impl FactsReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For m ≤ n and every l ≤ m+n, check that `D(σ) = D(-σ)` at σ = 0..m, and
/// that `D(σ) = 0` at σ = l+1..n whenever l < n.
pub fn verify_facts(m: u16, n: u16) -> Result<FactsReport> {
    if m > n {
        return Err(Error::Invalid(format!("need m <= n, got m = {m}, n = {n}")));
    }
    let mut failures = Vec::new();
    for l in 0..=(m + n) {
        let d = big_d(m, n, l)?;
        // degree bound in σ
        if d.degree_in(Var::Sigma) as u32 > (m + n - l) as u32 {
            failures.push((l, 0, format!("σ-degree exceeds {}", m + n - l)));
        }
        for s in 0..=m as i64 {
            let at_pos = d.subst_one(Var::Sigma, &MPoly::int(s));
            let at_neg = d.subst_one(Var::Sigma, &MPoly::int(-s));
            if at_pos != at_neg {
                failures.push((l, s, "D(σ) != D(-σ)".into()));
            }
        }
        if l < n {
            for s in (l as i64 + 1)..=(n as i64) {
                let at_s = d.subst_one(Var::Sigma, &MPoly::int(s));
                if !at_s.is_zero() {
                    failures.push((l, s, "D(σ) != 0".into()));
                }
            }
        }
    }
    Ok(FactsReport { m, n, failures })
}

/// Divisibility pattern of the structure corollary: for n-m ≤ l ≤ m+n (m ≤ n),
/// `D(σ; m,n,l) = ∏_{i=l+1..n} (i²-σ²) · R(σ)` with R an even polynomial.
/// Returns false when a division is inexact or the quotient is not even.
pub fn even_quotient_check(m: u16, n: u16, l: u16) -> Result<bool> {
    if m > n || l < n - m || l > m + n {
        return Err(Error::Invalid(format!(
            "need m <= n and n-m <= l <= m+n, got m = {m}, n = {n}, l = {l}"
        )));
    }
    let mut d = big_d(m, n, l)?;
    if l < n {
        for i in (l as i64 + 1)..=(n as i64) {
            // divide by (i² - σ²) = -(σ - i)(σ + i)
            let step = d
                .div_exact_linear(Var::Sigma, &MPoly::int(i))
                .and_then(|q| q.div_exact_linear(Var::Sigma, &MPoly::int(-i)));
            match step {
                Some(q) => d = -&q,
                None => return Ok(false),
            }
        }
    }
    let mirrored = d.subst_one(Var::Sigma, &-&MPoly::var(Var::Sigma));
    Ok(d == mirrored)
}

/// Build the interpolation matrix of the rank lemma and certify
/// `rank(M) >= d - 1` by exact elimination. Takes the Vandermonde nodes `xs`
/// and the odd-power nodes `ys`; requires |xs| + |ys| = d and all entries
/// distinct and positive within each list.
pub fn rank_certificate(xs: &[Rat], ys: &[Rat], d: usize) -> Result<bool> {
    if xs.len() + ys.len() != d {
        return Err(Error::Invalid(format!(
            "need |xs| + |ys| = d, got {} + {} != {d}",
            xs.len(),
            ys.len()
        )));
    }
    for list in [xs, ys] {
        for (i, v) in list.iter().enumerate() {
            if *v <= Rat::zero() {
                return Err(Error::Invalid("nodes must be positive".into()));
            }
            if list[..i].contains(v) {
                return Err(Error::Invalid("nodes must be distinct".into()));
            }
        }
    }
    let mut mat = RatMat::zero(d, d);
    for (r, x) in xs.iter().enumerate() {
        let mut pw = Rat::one();
        for c in 0..d {
            mat[(r, c)] = pw.clone();
            pw *= x.clone();
        }
    }
    for (r, y) in ys.iter().enumerate() {
        for c in (1..d).step_by(2) {
            mat[(xs.len() + r, c)] = y.pow(c as i32);
        }
    }
    Ok(mat.rank() >= d.saturating_sub(1))
}
