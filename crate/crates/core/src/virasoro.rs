//! Virasoro elements, the quasi-primary basis, and the reduced-space
//! decomposition.
//!
//! For `L = (x + α∂)·Id` the quasi-primary elements (those killed by `L_(2)`)
//! of each degree n are spanned by
//!
//! ```text
//! Q_n(∂,x) = binom(2n,n)^{-1} Σ_k binom(2n-k,n) binom(n-σ,k) ∂^k x^{n-k}
//! ```
//!
//! with σ = 1-2α, and every element decomposes uniquely as Σ_i ∂^i a^i with
//! quasi-primary a^i. The projection onto the i = 0 part has a shortcut: set
//! ∂ = 0 and re-read x^n as Q_n.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use crate::gc::{lambda_bracket, nth_product, GcElem};
use crate::ring::{binom_rat, rat, rat_int, MPoly, Mono, Rat, Var};
use crate::{Error, Result};

/// The quasi-primary basis polynomial `Q_n` for the given σ (symbolic or rational).
pub fn q_basis(sigma: &MPoly, n: u16) -> MPoly {
    let nn = MPoly::int(n as i64);
    let top = &nn - sigma;
    let inv = Rat::new(1.into(), crate::ring::binom_uint(2 * n as u64, n as u64));
    let mut out = MPoly::zero();
    for k in 0..=n {
        let c = binom_rat((2 * n - k) as u64, n as u64);
        let b = MPoly::binom(&top, k);
        let mono = Mono::var(Var::D, k).mul(&Mono::var(Var::X, n - k));
        out += b.mul_rat(&c).mul_mono(&mono);
    }
    out.mul_rat(&inv)
}

/// `R_n(∂,y) = Q_n(∂, (y-∂)/2)`, the same basis in the symmetric coordinates.
pub fn r_basis(sigma: &MPoly, n: u16) -> MPoly {
    let half = rat(1, 2);
    let repl = (&MPoly::var(Var::Y) - &MPoly::var(Var::D)).mul_rat(&half);
    q_basis(sigma, n).subst_one(Var::X, &repl)
}

/// A Virasoro element `L = (x + α∂)·Id` of `gc_N`; the defining bracket
/// relation `[L λ L] = (∂ + 2λ)L` is verified at construction time.
#[derive(Clone, Debug)]
pub struct VirasoroElem {
    alpha: MPoly,
    n: usize,
    elem: GcElem,
}

impl VirasoroElem {
    pub fn new(alpha: MPoly, n: usize) -> Result<VirasoroElem> {
        for v in [Var::D, Var::X, Var::Y, Var::Lambda, Var::Mu, Var::Z] {
            if alpha.mentions(v) {
                return Err(Error::NotVirasoro(format!(
                    "α must be a scalar in σ, found variable '{}'",
                    v.symbol()
                )));
            }
        }
        let poly = &MPoly::var(Var::X) + &(&MPoly::var(Var::D) * &alpha);
        let elem = GcElem::scalar(n, poly);
        let vir = VirasoroElem { alpha, n, elem };
        vir.check_relation()?;
        Ok(vir)
    }

    fn check_relation(&self) -> Result<()> {
        let br = lambda_bracket(&self.elem, &self.elem)?;
        let ok = br.max_degree() <= 1
            && br.coeff(0) == self.elem.mul_d(1)
            && br.coeff(1) == self.elem.scale(&MPoly::int(2));
        if ok {
            Ok(())
        } else {
            Err(Error::NotVirasoro(format!("[L λ L] != (∂+2λ)L for α = {}", self.alpha)))
        }
    }

    /// The standard symbolic element with α = (1-σ)/2.
    pub fn standard(n: usize) -> VirasoroElem {
        let alpha = (&MPoly::one() - &MPoly::var(Var::Sigma)).mul_rat(&rat(1, 2));
        VirasoroElem::new(alpha, n).expect("symbolic Virasoro element")
    }

    /// `L_S^(±) = (x + (1∓S)/2 ∂)·Id`, the element normalizing the integer-σ
    /// subalgebra families (σ = ±S).
    pub fn for_integer_sigma(sign_plus: bool, s: u16, n: usize) -> VirasoroElem {
        let s = rat_int(if sign_plus { s as i64 } else { -(s as i64) });
        let alpha = MPoly::constant((Rat::from_integer(1.into()) - s) / Rat::from_integer(2.into()));
        VirasoroElem::new(alpha, n).expect("rational Virasoro element")
    }

    pub fn with_rational_alpha(alpha: Rat, n: usize) -> VirasoroElem {
        VirasoroElem::new(MPoly::constant(alpha), n).expect("rational Virasoro element")
    }

    pub fn alpha(&self) -> &MPoly {
        &self.alpha
    }

    /// σ = 1 - 2α.
    pub fn sigma(&self) -> MPoly {
        &MPoly::one() - &self.alpha.mul_rat(&rat_int(2))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn gc_elem(&self) -> &GcElem {
        &self.elem
    }
}

/// Append-only cache of the `Q_n` polynomials for one fixed σ.
pub struct QBasis {
    sigma: MPoly,
    cache: Mutex<Vec<MPoly>>,
}

impl QBasis {
    pub fn new(sigma: MPoly) -> QBasis {
        QBasis {
            sigma,
            cache: Mutex::new(Vec::new()),
        }
    }

    pub fn for_virasoro(vir: &VirasoroElem) -> QBasis {
        QBasis::new(vir.sigma())
    }

    pub fn sigma(&self) -> &MPoly {
        &self.sigma
    }

    pub fn get(&self, n: u16) -> MPoly {
        let mut cache = self.cache.lock().unwrap();
        while cache.len() <= n as usize {
            let k = cache.len() as u16;
            cache.push(q_basis(&self.sigma, k));
        }
        cache[n as usize].clone()
    }
}

/// An element of the reduced space: a finite sum Σ_m Q_m·(matrix), stored as
/// degree → N×N matrix over ℚ[σ].
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ReducedElem {
    n: usize,
    components: BTreeMap<u16, Vec<MPoly>>,
}

impl ReducedElem {
    pub fn zero(n: usize) -> ReducedElem {
        ReducedElem {
            n,
            components: BTreeMap::new(),
        }
    }

    /// Single component `degree -> matrix` (row-major entries).
    pub fn single(n: usize, degree: u16, entries: Vec<MPoly>) -> Result<ReducedElem> {
        if entries.len() != n * n {
            return Err(Error::Invalid(format!(
                "expected {} matrix entries, found {}",
                n * n,
                entries.len()
            )));
        }
        let mut out = ReducedElem::zero(n);
        out.add_component(degree, &entries);
        Ok(out)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> impl Iterator<Item = (&u16, &Vec<MPoly>)> {
        self.components.iter()
    }

    pub fn component(&self, degree: u16) -> Vec<MPoly> {
        self.components
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| vec![MPoly::zero(); self.n * self.n])
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    fn add_component(&mut self, degree: u16, entries: &[MPoly]) {
        let slot = self
            .components
            .entry(degree)
            .or_insert_with(|| vec![MPoly::zero(); self.n * self.n]);
        for (s, e) in slot.iter_mut().zip(entries) {
            *s = &*s + e;
        }
        if slot.iter().all(|p| p.is_zero()) {
            self.components.remove(&degree);
        }
    }

    /// Lift back to `gc_N`: Σ_m Q_m^{(σ)}·M_m.
    pub fn to_gc(&self, basis: &QBasis) -> GcElem {
        let mut out = GcElem::zero(self.n);
        for (&m, entries) in &self.components {
            let q = basis.get(m);
            for (idx, e) in entries.iter().enumerate() {
                let i = idx / self.n;
                let j = idx % self.n;
                *out.entry_mut(i, j) = &*out.entry(i, j) + &(&q * e);
            }
        }
        out
    }
}

impl fmt::Display for ReducedElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return writeln!(f, "0");
        }
        for (m, entries) in &self.components {
            write!(f, "X^{m} * [")?;
            for i in 0..self.n {
                if i > 0 {
                    write!(f, "; ")?;
                }
                for j in 0..self.n {
                    if j > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{}", entries[i * self.n + j])?;
                }
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// True iff `L_(2) a = 0`.
pub fn is_quasi_primary(a: &GcElem, vir: &VirasoroElem) -> Result<bool> {
    Ok(nth_product(vir.gc_elem(), a, 2)?.is_zero())
}

/// Decompose `a = Σ_i ∂^i a^i` with each `a^i` quasi-primary, returning the
/// map i → a^i as reduced elements.
///
/// Works degree by degree: within total degree d, writing the ∂^k x^{d-k}
/// coefficient ladder against ∂^k Q_{d-k} is unitriangular (Q has unit leading
/// x-coefficient), so plain forward elimination solves it with no divisions.
pub fn decompose(a: &GcElem, vir: &VirasoroElem) -> Result<BTreeMap<u16, ReducedElem>> {
    if a.size() != vir.size() {
        return Err(Error::SizeMismatch(a.size(), vir.size()));
    }
    let n = a.size();
    let basis = QBasis::for_virasoro(vir);
    let mut out: BTreeMap<u16, ReducedElem> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let p = a.entry(i, j);
            if p.mentions(Var::Y) {
                return Err(Error::Invalid("decompose expects the x coordinates".into()));
            }
            for (d, part) in p.homogeneous_parts(&[Var::D, Var::X]) {
                let d = d as u16;
                // b[k] = coefficient of ∂^k x^{d-k} (a polynomial in σ)
                let mut b: Vec<MPoly> = (0..=d)
                    .map(|k| {
                        part.coeff_of(Var::D, k)
                            .coeff_of(Var::X, d - k)
                    })
                    .collect();
                for k in 0..=d {
                    let u = b[k as usize].clone();
                    if u.is_zero() {
                        continue;
                    }
                    // subtract u · ∂^k Q_{d-k}
                    let q = basis.get(d - k);
                    for (mono, c) in q.terms() {
                        let jj = mono.exp(Var::D);
                        let rest = mono.with_exp(Var::D, 0).with_exp(Var::X, 0);
                        let contrib = u.mul_mono(&rest).mul_rat(c);
                        b[(k + jj) as usize] -= contrib;
                    }
                    out.entry(k)
                        .or_insert_with(|| ReducedElem::zero(n))
                        .add_component_entry(d - k, i, j, &u);
                }
                debug_assert!(b.iter().all(|c| c.is_zero()));
            }
        }
    }
    out.retain(|_, r| !r.is_zero());
    Ok(out)
}

impl ReducedElem {
    fn add_component_entry(&mut self, degree: u16, i: usize, j: usize, v: &MPoly) {
        let n = self.n;
        let slot = self
            .components
            .entry(degree)
            .or_insert_with(|| vec![MPoly::zero(); n * n]);
        slot[i * n + j] = &slot[i * n + j] + v;
        if slot.iter().all(|p| p.is_zero()) {
            self.components.remove(&degree);
        }
    }
}

/// Reassemble `Σ_i ∂^i a^i` from a decomposition.
pub fn reconstruct(parts: &BTreeMap<u16, ReducedElem>, vir: &VirasoroElem) -> GcElem {
    let basis = QBasis::for_virasoro(vir);
    let mut out = GcElem::zero(vir.size());
    for (&i, r) in parts {
        out = out.add(&r.to_gc(&basis).mul_d(i));
    }
    out
}

/// The projection π(a) onto the reduced space, computed by the shortcut:
/// set ∂ = 0 and re-read powers of x as basis degrees.
pub fn project(a: &GcElem, vir: &VirasoroElem) -> Result<ReducedElem> {
    if a.size() != vir.size() {
        return Err(Error::SizeMismatch(a.size(), vir.size()));
    }
    let n = a.size();
    let mut out = ReducedElem::zero(n);
    for i in 0..n {
        for j in 0..n {
            let at0 = a.entry(i, j).subst_one(Var::D, &MPoly::zero());
            for (deg, coeff) in at0.collect_var(Var::X) {
                out.add_component_entry(deg, i, j, &coeff);
            }
        }
    }
    Ok(out)
}
