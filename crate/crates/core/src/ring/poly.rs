//! Sparse multivariate polynomials over exact rationals.
//!
//! The variable universe is fixed: `(d, x, y, l, m, s, a, b, z)` standing for
//! (∂, x, y, λ, μ, σ, α, β, z), in that canonical order. Polynomials are
//! stored as a map from exponent vectors to non-zero rational coefficients,
//! so equality is plain map equality and printing is deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::{One, Signed, Zero};

use super::rat::{binom_uint, factorial, format_rat, Rat};
use crate::{Error, Result};

/// Number of variables in the fixed universe.
pub const NVARS: usize = 9;

/// A variable of the polynomial ring, in canonical order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    /// ∂, printed `d`.
    D = 0,
    /// x
    X = 1,
    /// y
    Y = 2,
    /// λ, printed `l`.
    Lambda = 3,
    /// μ, printed `m`; scratch variable for two-parameter identities.
    Mu = 4,
    /// σ, printed `s`.
    Sigma = 5,
    /// α, printed `a`.
    Alpha = 6,
    /// β, printed `b`.
    Beta = 7,
    /// z, the series variable.
    Z = 8,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::D,
        Var::X,
        Var::Y,
        Var::Lambda,
        Var::Mu,
        Var::Sigma,
        Var::Alpha,
        Var::Beta,
        Var::Z,
    ];

    /// One-letter name used by the text grammar.
    pub fn symbol(self) -> char {
        match self {
            Var::D => 'd',
            Var::X => 'x',
            Var::Y => 'y',
            Var::Lambda => 'l',
            Var::Mu => 'm',
            Var::Sigma => 's',
            Var::Alpha => 'a',
            Var::Beta => 'b',
            Var::Z => 'z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.symbol() == c)
    }
}

/// Exponent vector over the fixed variable universe.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Mono(pub [u16; NVARS]);

impl Mono {
    pub fn unit() -> Mono {
        Mono::default()
    }

    pub fn var(v: Var, e: u16) -> Mono {
        let mut m = Mono::default();
        m.0[v as usize] = e;
        m
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v as usize]
    }

    pub fn with_exp(mut self, v: Var, e: u16) -> Mono {
        self.0[v as usize] = e;
        self
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut m = *self;
        for i in 0..NVARS {
            m.0[i] += other.0[i];
        }
        m
    }

    pub fn total_degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn degree_in(&self, vars: &[Var]) -> usize {
        vars.iter().map(|&v| self.exp(v) as usize).sum()
    }
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Invariant: no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct MPoly {
    terms: BTreeMap<Mono, Rat>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly::default()
    }

    pub fn one() -> MPoly {
        MPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::unit(), c);
        }
        MPoly { terms }
    }

    pub fn int(n: i64) -> MPoly {
        MPoly::constant(Rat::from_integer(n.into()))
    }

    pub fn var(v: Var) -> MPoly {
        MPoly::monomial(Mono::var(v, 1), Rat::one())
    }

    pub fn monomial(m: Mono, c: Rat) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Mono::unit())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// Some(c) iff the polynomial is the constant c (including 0).
    pub fn constant_value(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&Mono::unit()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    fn insert_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn mul_rat(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u16) -> MPoly {
        let mut out = MPoly::one();
        let mut base = self.clone();
        let mut e = e;
        loop {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e == 0 {
                return out;
            }
            base = &base * &base;
        }
    }

    pub fn mentions(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn total_degree_in(&self, vars: &[Var]) -> usize {
        self.terms.keys().map(|m| m.degree_in(vars)).max().unwrap_or(0)
    }

    /// Simultaneous substitution of the bound variables; unbound variables pass through.
    pub fn subst(&self, bindings: &[(Var, MPoly)]) -> MPoly {
        if bindings.is_empty() {
            return self.clone();
        }
        // per-variable power cache, filled incrementally
        let mut powers: Vec<Vec<MPoly>> = bindings.iter().map(|(_, p)| vec![MPoly::one(), p.clone()]).collect();
        let mut out = MPoly::zero();
        for (mono, c) in &self.terms {
            let mut rem = *mono;
            let mut term = MPoly::constant(c.clone());
            for (bi, (v, _)) in bindings.iter().enumerate() {
                let e = mono.exp(*v) as usize;
                if e == 0 {
                    continue;
                }
                rem = rem.with_exp(*v, 0);
                let cache = &mut powers[bi];
                while cache.len() <= e {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                term = &term * &cache[e];
            }
            out += term.mul_mono(&rem);
        }
        out
    }

    pub fn subst_one(&self, v: Var, p: &MPoly) -> MPoly {
        self.subst(&[(v, p.clone())])
    }

    /// Partial derivative.
    pub fn diff(&self, v: Var) -> MPoly {
        let mut out = MPoly::zero();
        for (mono, c) in &self.terms {
            let e = mono.exp(v);
            if e > 0 {
                let m = mono.with_exp(v, e - 1);
                out.insert_term(m, c * Rat::from_integer(e.into()));
            }
        }
        out
    }

    /// View as a polynomial in `v`: exponent → coefficient (with `v` stripped).
    pub fn collect_var(&self, v: Var) -> BTreeMap<u16, MPoly> {
        let mut out: BTreeMap<u16, MPoly> = BTreeMap::new();
        for (mono, c) in &self.terms {
            let e = mono.exp(v);
            let m = mono.with_exp(v, 0);
            out.entry(e).or_default().insert_term(m, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Coefficient of `v^e`, with `v` stripped out.
    pub fn coeff_of(&self, v: Var, e: u16) -> MPoly {
        let mut out = MPoly::zero();
        for (mono, c) in &self.terms {
            if mono.exp(v) == e {
                out.insert_term(mono.with_exp(v, 0), c.clone());
            }
        }
        out
    }

    /// Split into homogeneous components of total degree in `vars`.
    pub fn homogeneous_parts(&self, vars: &[Var]) -> BTreeMap<usize, MPoly> {
        let mut out: BTreeMap<usize, MPoly> = BTreeMap::new();
        for (mono, c) in &self.terms {
            out.entry(mono.degree_in(vars)).or_default().insert_term(*mono, c.clone());
        }
        out
    }

    pub fn divisible_by_var_pow(&self, v: Var, s: u16) -> bool {
        self.terms.keys().all(|m| m.exp(v) >= s)
    }

    /// Exact division by `v^s`; None if some term has a smaller exponent.
    pub fn div_var_pow(&self, v: Var, s: u16) -> Option<MPoly> {
        if s == 0 {
            return Some(self.clone());
        }
        let mut terms = BTreeMap::new();
        for (mono, c) in &self.terms {
            let e = mono.exp(v);
            if e < s {
                return None;
            }
            terms.insert(mono.with_exp(v, e - s), c.clone());
        }
        Some(MPoly { terms })
    }

    /// Exact division by the linear factor `v - c`, where `c` must not mention `v`.
    /// Returns None when the division leaves a remainder.
    pub fn div_exact_linear(&self, v: Var, c: &MPoly) -> Option<MPoly> {
        debug_assert!(!c.mentions(v));
        let by_deg = self.collect_var(v);
        let top = match by_deg.keys().next_back() {
            None => return Some(MPoly::zero()), // 0 / anything
            Some(&t) => t,
        };
        // synthetic division: self = (v - c) q + r
        let mut quotient = MPoly::zero();
        let mut carry = MPoly::zero(); // q_k while descending
        for k in (1..=top).rev() {
            let coeff = by_deg.get(&k).cloned().unwrap_or_default();
            let qk = &coeff + &(c * &carry);
            quotient += qk.mul_mono(&Mono::var(v, k - 1));
            carry = qk;
        }
        let r = &by_deg.get(&0).cloned().unwrap_or_default() + &(c * &carry);
        if r.is_zero() {
            Some(quotient)
        } else {
            None
        }
    }

    /// Exact division by `(v - c)^s`.
    pub fn div_exact_linear_pow(&self, v: Var, c: &MPoly, s: u16) -> Option<MPoly> {
        let mut p = self.clone();
        for _ in 0..s {
            p = p.div_exact_linear(v, c)?;
        }
        Some(p)
    }

    /// The falling-factorial binomial `binom(top, k) = top (top-1) ... (top-k+1) / k!`.
    pub fn binom(top: &MPoly, k: u16) -> MPoly {
        let mut out = MPoly::one();
        for i in 0..k {
            out = &out * &(top - &MPoly::int(i as i64));
        }
        out.mul_rat(&Rat::new(1.into(), factorial(k as u64)))
    }

    /// Rising factorial `(top)_k = top (top+1) ... (top+k-1)`.
    pub fn rising(top: &MPoly, k: u16) -> MPoly {
        let mut out = MPoly::one();
        for i in 0..k {
            out = &out * &(top + &MPoly::int(i as i64));
        }
        out
    }
}

/// `binom(n, k)` for integer n ≥ 0 as a rational, shared by the bracket tables.
pub fn binom_rat(n: u64, k: u64) -> Rat {
    Rat::from_integer(binom_uint(n, k))
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl AddAssign<MPoly> for MPoly {
    fn add_assign(&mut self, rhs: MPoly) {
        for (m, c) in rhs.terms {
            self.insert_term(m, c);
        }
    }
}

impl SubAssign<MPoly> for MPoly {
    fn sub_assign(&mut self, rhs: MPoly) {
        for (m, c) in rhs.terms {
            self.insert_term(m, -c);
        }
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in &self.terms {
            let neg = coeff.is_negative();
            let abs = coeff.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || mono.total_degree() == 0 {
                factors.push(format_rat(&abs));
            }
            for v in Var::ALL {
                let e = mono.exp(v);
                if e == 1 {
                    factors.push(v.symbol().to_string());
                } else if e > 1 {
                    factors.push(format!("{}^{}", v.symbol(), e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for MPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<MPoly> {
        super::parse::parse_poly(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat::rat;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    #[test]
    fn substitute_rename_and_shift() {
        // x with x -> l + d + x
        let shift = p("l + d + x");
        assert_eq!(MPoly::var(Var::X).subst_one(Var::X, &shift), shift);
    }

    #[test]
    fn substitute_at_zero() {
        // x + (1/2) d at d = 0
        let input = p("x + 1/2*d");
        assert_eq!(input.subst_one(Var::D, &MPoly::zero()), p("x"));
    }

    #[test]
    fn substitute_square_expansion() {
        // x^2 with x -> -d - x gives d^2 + 2 d x + x^2
        let sq = p("x^2").subst_one(Var::X, &p("0 - d - x"));
        assert_eq!(sq, p("d^2 + 2*d*x + x^2"));
    }

    #[test]
    fn binom_poly_values() {
        // binom(2 - s, 2) = (2-s)(1-s)/2
        let top = &MPoly::int(2) - &MPoly::var(Var::Sigma);
        let b = MPoly::binom(&top, 2);
        assert_eq!(b, p("1 - 3/2*s + 1/2*s^2"));
        // k = 0 is the empty product
        assert_eq!(MPoly::binom(&p("x + y"), 0), MPoly::one());
        // top = n - s at s = n kills k >= 1
        let at_n = b.subst_one(Var::Sigma, &MPoly::int(2));
        assert!(at_n.is_zero());
        // integer specializations agree with binom_uint
        for t in 0..=5i64 {
            for k in 0..=2u16 {
                let val = MPoly::binom(&MPoly::int(t), k).constant_value().unwrap();
                assert_eq!(val, Rat::from_integer(binom_uint(t as u64, k as u64)));
            }
        }
    }

    #[test]
    fn linear_division() {
        // (x + d)^2 * (x - 3) divides back out exactly
        let f = &p("x + d").pow(2) * &p("x - 3");
        let q = f.div_exact_linear(Var::X, &MPoly::int(3)).unwrap();
        assert_eq!(q, p("x + d").pow(2));
        let neg_d = -&MPoly::var(Var::D);
        let q2 = f.div_exact_linear_pow(Var::X, &neg_d, 2).unwrap();
        assert_eq!(q2, p("x - 3"));
        // not divisible
        assert!(p("x + 1").div_exact_linear(Var::X, &MPoly::int(3)).is_none());
    }

    #[test]
    fn var_power_division() {
        let f = p("x^3 + 2*d*x^2");
        assert!(f.divisible_by_var_pow(Var::X, 2));
        assert!(!f.divisible_by_var_pow(Var::X, 3));
        assert_eq!(f.div_var_pow(Var::X, 2).unwrap(), p("x + 2*d"));
        assert!(f.div_var_pow(Var::X, 3).is_none());
    }

    #[test]
    fn display_canonical() {
        let f = p("x^2 + 1/2*d*x - s*d^2");
        assert_eq!(f.to_string(), "x^2 + 1/2*d*x - d^2*s");
        assert_eq!(MPoly::zero().to_string(), "0");
        assert_eq!(MPoly::constant(rat(-1, 2)).to_string(), "-1/2");
    }

    #[test]
    fn diff_and_collect() {
        let f = p("x^2*y + 3*x");
        assert_eq!(f.diff(Var::X), p("2*x*y + 3"));
        let by_x = f.collect_var(Var::X);
        assert_eq!(by_x.get(&2).unwrap(), &p("y"));
        assert_eq!(by_x.get(&1).unwrap(), &p("3"));
    }
}
