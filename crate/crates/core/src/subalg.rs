//! The classified normalized subalgebra families of `gc_N` and their
//! verifiers.
//!
//! For integer σ = ±S the families are
//!
//! ```text
//! R+(S,k)  = Mat ℂ[∂,x] (I_k + x^S Ī_k)          columns k..N divisible by x^S
//! R-(S,k)  = (I_k + (x+∂)^S Ī_k) Mat ℂ[∂,x]      rows    k..N divisible by (x+∂)^S
//! R+(*,S)  = { x^S [P + (-1)^{S+1} P*(∂,-∂-x)] }
//! R-(*,S)  = { (x+∂)^S [P + (-1)^{S+1} P*(∂,-∂-x)] }
//! ```
//!
//! with `*` a linear antiinvolution of Mat_N ℂ. Membership is checked by exact
//! polynomial divisibility, which is the defining characterization, so closure
//! of a bracket sweep at any truncation degree is a genuine necessary
//! condition. The verifiers report every violation rather than stopping at
//! the first.

use std::collections::BTreeSet;
use std::fmt;

use num::{One, Signed, Zero};
use rayon::prelude::*;

use crate::gc::{action_coeffs, lambda_action, lambda_bracket, nth_product, GcElem, ModVec};
use crate::matq::RatMat;
use crate::reduced::d_coeff;
use crate::ring::{MPoly, Mono, Rat, Var};
use crate::virasoro::{project, VirasoroElem};
use crate::{Error, Result};

/// The ± sign selecting between the x^S and (x+∂)^S families.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A linear antiinvolution A ↦ B·Aᵀ·B⁻¹ with Bᵀ = ±B.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Antiinvolution {
    b: RatMat,
    b_inv: RatMat,
    name: String,
}

impl Antiinvolution {
    pub fn new(b: RatMat, name: impl Into<String>) -> Result<Antiinvolution> {
        if b.rows() != b.cols() {
            return Err(Error::BadAntiinvolution("B must be square".into()));
        }
        if b.symmetry_sign().is_none() {
            return Err(Error::BadAntiinvolution("B must satisfy B^T = ±B".into()));
        }
        let b_inv = b
            .inverse()
            .ok_or_else(|| Error::BadAntiinvolution("B must be invertible".into()))?;
        Ok(Antiinvolution {
            b,
            b_inv,
            name: name.into(),
        })
    }

    /// A ↦ Aᵀ.
    pub fn transpose(n: usize) -> Antiinvolution {
        Antiinvolution::new(RatMat::identity(n), "transpose").expect("identity is symmetric")
    }

    /// A ↦ J·Aᵀ·J⁻¹ with J the standard symplectic form; N must be even.
    pub fn symplectic(n: usize) -> Result<Antiinvolution> {
        if n % 2 != 0 {
            return Err(Error::BadAntiinvolution(format!(
                "symplectic antiinvolution needs even size, got {n}"
            )));
        }
        let half = n / 2;
        let mut j = RatMat::zero(n, n);
        for i in 0..half {
            j[(i, half + i)] = Rat::one();
            j[(half + i, i)] = -Rat::one();
        }
        Antiinvolution::new(j, "symplectic")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.b.rows()
    }

    pub fn apply_rat(&self, m: &RatMat) -> RatMat {
        self.b.matmul(&m.transpose()).matmul(&self.b_inv)
    }

    /// Apply to a polynomial matrix (the coefficients pass through untouched).
    pub fn apply_poly(&self, n: usize, entries: &[MPoly]) -> Vec<MPoly> {
        let mut transposed = vec![MPoly::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                transposed[j * n + i] = entries[i * n + j].clone();
            }
        }
        let left = poly_scalar_mul(n, &self.b, &transposed, true);
        poly_scalar_mul(n, &self.b_inv, &left, false)
    }
}

/// rational-matrix × poly-matrix (left = true) or poly-matrix × rational-matrix.
fn poly_scalar_mul(n: usize, scalar: &RatMat, poly: &[MPoly], left: bool) -> Vec<MPoly> {
    let mut out = vec![MPoly::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (c, p) = if left {
                    (&scalar[(i, k)], &poly[k * n + j])
                } else {
                    (&scalar[(k, j)], &poly[i * n + k])
                };
                if !c.is_zero() && !p.is_zero() {
                    out[i * n + j] += p.mul_rat(c);
                }
            }
        }
    }
    out
}

/// The diagonal rank-k idempotent `I_{k,N}` and its complement.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct IkN {
    pub k: usize,
    pub n: usize,
}

impl IkN {
    pub fn new(k: usize, n: usize) -> Result<IkN> {
        if k > n {
            return Err(Error::Invalid(format!("need k <= N, got k = {k}, N = {n}")));
        }
        Ok(IkN { k, n })
    }

    pub fn matrix(&self) -> RatMat {
        let mut m = RatMat::zero(self.n, self.n);
        for i in 0..self.k {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn complement(&self) -> RatMat {
        let mut m = RatMat::zero(self.n, self.n);
        for i in self.k..self.n {
            m[(i, i)] = Rat::one();
        }
        m
    }
}

/// Which family inside Theorem-level classification: a rank-k ideal family or
/// an antiinvolution (star) family.
#[derive(Clone, Debug)]
pub enum Variant {
    RankIdeal { k: usize },
    Star(Antiinvolution),
}

/// A family from the classification: sign, S, variant, and the matrix size N.
#[derive(Clone, Debug)]
pub struct SubalgebraSpec {
    pub sign: Sign,
    pub s: u16,
    pub variant: Variant,
    pub n: usize,
}

impl SubalgebraSpec {
    pub fn rank_ideal(sign: Sign, s: u16, k: usize, n: usize) -> Result<SubalgebraSpec> {
        if k > n {
            return Err(Error::Invalid(format!("need k <= N, got k = {k}, N = {n}")));
        }
        Ok(SubalgebraSpec {
            sign,
            s,
            variant: Variant::RankIdeal { k },
            n,
        })
    }

    pub fn star(sign: Sign, s: u16, anti: Antiinvolution, n: usize) -> Result<SubalgebraSpec> {
        if anti.size() != n {
            return Err(Error::SizeMismatch(anti.size(), n));
        }
        Ok(SubalgebraSpec {
            sign,
            s,
            variant: Variant::Star(anti),
            n,
        })
    }

    /// σ = +S or -S.
    pub fn sigma(&self) -> i64 {
        match self.sign {
            Sign::Plus => self.s as i64,
            Sign::Minus => -(self.s as i64),
        }
    }

    /// The normalizing Virasoro element `L_S^(±) = (x + (1∓S)/2 ∂)·Id`.
    pub fn virasoro(&self) -> VirasoroElem {
        VirasoroElem::for_integer_sigma(self.sign == Sign::Plus, self.s, self.n)
    }

    /// The divisor polynomial: x for sign +, x+∂ for sign -. Divisibility by
    /// its S-th power characterizes membership.
    fn divisor_root(&self) -> MPoly {
        match self.sign {
            Sign::Plus => MPoly::zero(),
            Sign::Minus => -&MPoly::var(Var::D),
        }
    }

    fn entry_divisible(&self, p: &MPoly) -> bool {
        match self.sign {
            Sign::Plus => p.divisible_by_var_pow(Var::X, self.s),
            Sign::Minus => p
                .div_exact_linear_pow(Var::X, &self.divisor_root(), self.s)
                .is_some(),
        }
    }

    fn entry_quotient(&self, p: &MPoly) -> Option<MPoly> {
        match self.sign {
            Sign::Plus => p.div_var_pow(Var::X, self.s),
            Sign::Minus => p.div_exact_linear_pow(Var::X, &self.divisor_root(), self.s),
        }
    }

    /// Exact membership test. RankIdeal families require divisibility of the
    /// trailing columns (sign +) or rows (sign -); star families require a
    /// global factor and the twisted symmetry of the quotient.
    pub fn membership(&self, a: &GcElem) -> bool {
        assert_eq!(a.size(), self.n, "element size must match the family");
        match &self.variant {
            Variant::RankIdeal { k } => {
                for i in 0..self.n {
                    for j in 0..self.n {
                        let trailing = match self.sign {
                            Sign::Plus => j >= *k,
                            Sign::Minus => i >= *k,
                        };
                        if trailing && !self.entry_divisible(a.entry(i, j)) {
                            return false;
                        }
                    }
                }
                true
            }
            Variant::Star(anti) => {
                let mut quotient = Vec::with_capacity(self.n * self.n);
                for i in 0..self.n {
                    for j in 0..self.n {
                        match self.entry_quotient(a.entry(i, j)) {
                            Some(q) => quotient.push(q),
                            None => return false,
                        }
                    }
                }
                let twisted = star_twist(anti, self.n, &quotient);
                let expect: Vec<MPoly> = if self.s % 2 == 0 {
                    twisted.iter().map(|p| -p).collect()
                } else {
                    twisted
                };
                quotient == expect
            }
        }
    }

    /// Generators of the family up to the given total degree. Every returned
    /// element passes [`membership`].
    pub fn spanning_set(&self, max_degree: u16) -> Vec<GcElem> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let mut push = |e: GcElem| {
            if e.is_zero() {
                return;
            }
            let e = canonical_sign(e);
            if seen.insert(e.clone()) {
                out.push(e);
            }
        };
        match &self.variant {
            Variant::RankIdeal { k } => {
                let factor = self.divisor_poly();
                for i in 0..self.n {
                    for j in 0..self.n {
                        let trailing = match self.sign {
                            Sign::Plus => j >= *k,
                            Sign::Minus => i >= *k,
                        };
                        let extra = if trailing { self.s } else { 0 };
                        for a in 0..=max_degree.saturating_sub(extra) {
                            for b in 0..=max_degree.saturating_sub(extra + a) {
                                let mono =
                                    MPoly::monomial(Mono::var(Var::D, a).mul(&Mono::var(Var::X, b)), Rat::one());
                                let p = if trailing { &mono * &factor } else { mono };
                                push(GcElem::single(self.n, i, j, p));
                            }
                        }
                    }
                }
            }
            Variant::Star(anti) => {
                let factor = self.divisor_poly();
                for i in 0..self.n {
                    for j in 0..self.n {
                        for a in 0..=max_degree.saturating_sub(self.s) {
                            for b in 0..=max_degree.saturating_sub(self.s + a) {
                                let mut p = vec![MPoly::zero(); self.n * self.n];
                                p[i * self.n + j] =
                                    MPoly::monomial(Mono::var(Var::D, a).mul(&Mono::var(Var::X, b)), Rat::one());
                                let twisted = star_twist(anti, self.n, &p);
                                let entries: Vec<MPoly> = p
                                    .iter()
                                    .zip(&twisted)
                                    .map(|(u, t)| {
                                        let combined = if self.s % 2 == 0 { u - t } else { u + t };
                                        &combined * &factor
                                    })
                                    .collect();
                                push(GcElem::new(self.n, entries).expect("valid entries"));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// x^S or (x+∂)^S.
    fn divisor_poly(&self) -> MPoly {
        match self.sign {
            Sign::Plus => MPoly::var(Var::X).pow(self.s),
            Sign::Minus => (&MPoly::var(Var::X) + &MPoly::var(Var::D)).pow(self.s),
        }
    }
}

impl fmt::Display for SubalgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.variant {
            Variant::RankIdeal { k } => {
                write!(f, "R({}){{S={}, k={}, N={}}}", self.sign.symbol(), self.s, k, self.n)
            }
            Variant::Star(anti) => write!(
                f,
                "R({}){{S={}, *={}, N={}}}",
                self.sign.symbol(),
                self.s,
                anti.name(),
                self.n
            ),
        }
    }
}

/// `P*(∂, -∂-x)`: the antiinvolution followed by the coordinate twist.
fn star_twist(anti: &Antiinvolution, n: usize, entries: &[MPoly]) -> Vec<MPoly> {
    let repl = &(-&MPoly::var(Var::D)) - &MPoly::var(Var::X);
    anti.apply_poly(n, entries)
        .into_iter()
        .map(|p| p.subst_one(Var::X, &repl))
        .collect()
}

/// Scale by -1 when the leading coefficient of the first non-zero entry is
/// negative; keeps spanning sets free of ±duplicates.
fn canonical_sign(e: GcElem) -> GcElem {
    for p in e.entries() {
        if let Some((_, c)) = p.terms().next() {
            if c.is_negative() {
                return e.scale(&MPoly::int(-1));
            }
            break;
        }
    }
    e
}

/// One failed check inside a verification sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Indices into the spanning set (b_index unused for unary sweeps).
    pub a_index: usize,
    pub b_index: usize,
    /// What failed, e.g. `lambda^2 coefficient not a member`.
    pub detail: String,
}

/// Outcome of a verification sweep; empty `violations` means the property held
/// everywhere it was checked.
#[derive(Clone, Debug)]
pub struct Report {
    pub family: String,
    pub what: String,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} {}: {} checks, {} violations",
            self.family,
            self.what,
            self.checked,
            self.violations.len()
        )?;
        for v in &self.violations {
            writeln!(f, "  pair ({}, {}): {}", v.a_index, v.b_index, v.detail)?;
        }
        Ok(())
    }
}

/// Closure sweep over an explicit element list and membership predicate.
/// Exposed separately so negative controls can run the same machinery.
pub fn closure_violations<F>(elements: &[GcElem], member: F) -> Vec<Violation>
where
    F: Fn(&GcElem) -> bool + Sync,
{
    let pairs: Vec<(usize, usize)> = (0..elements.len())
        .flat_map(|i| (0..elements.len()).map(move |j| (i, j)))
        .collect();
    let mut violations: Vec<Violation> = pairs
        .par_iter()
        .flat_map_iter(|&(i, j)| {
            let br = lambda_bracket(&elements[i], &elements[j]).expect("sizes match");
            let mut out = Vec::new();
            for (&deg, coeff) in br.coeffs() {
                if !member(coeff) {
                    out.push(Violation {
                        a_index: i,
                        b_index: j,
                        detail: format!("lambda^{deg} coefficient escapes the family"),
                    });
                }
            }
            out
        })
        .collect();
    violations.sort_by_key(|v| (v.a_index, v.b_index, v.detail.clone()));
    violations
}

/// Check that every bracket of spanning elements stays in the family.
pub fn verify_closure(spec: &SubalgebraSpec, max_degree: u16) -> Report {
    let elements = spec.spanning_set(max_degree);
    let violations = closure_violations(&elements, |e| spec.membership(e));
    Report {
        family: spec.to_string(),
        what: format!("closure (deg <= {max_degree})"),
        checked: elements.len() * elements.len(),
        violations,
    }
}

/// Check `L_(i) a ∈ R` for i = 0, 1, 2 over the spanning set, with the
/// family's own Virasoro element.
pub fn verify_normalized(spec: &SubalgebraSpec, max_degree: u16) -> Report {
    let elements = spec.spanning_set(max_degree);
    let vir = spec.virasoro();
    let mut violations: Vec<Violation> = elements
        .par_iter()
        .enumerate()
        .flat_map_iter(|(idx, a)| {
            let mut out = Vec::new();
            for i in 0..=2u16 {
                let prod = nth_product(vir.gc_elem(), a, i).expect("sizes match");
                if !spec.membership(&prod) {
                    out.push(Violation {
                        a_index: idx,
                        b_index: i as usize,
                        detail: format!("L_({i}) image escapes the family"),
                    });
                }
            }
            out
        })
        .collect();
    violations.sort_by_key(|v| (v.a_index, v.b_index));
    Report {
        family: spec.to_string(),
        what: format!("normalization (deg <= {max_degree})"),
        checked: elements.len() * 3,
        violations,
    }
}

/// Report for the invariant-submodule witness of the sign-minus families.
#[derive(Clone, Debug)]
pub struct SubmoduleReport {
    pub report: Report,
    /// U is a proper submodule exactly when k != N and S != 0.
    pub proper: bool,
}

/// Verify that `U = { (v_k, ∂^S v_{N-k}) }` is invariant under the
/// lambda-action of `R-(S,k)`. Only defined for the sign-minus rank-ideal
/// families.
pub fn verify_submodule(spec: &SubalgebraSpec, max_degree: u16) -> Result<SubmoduleReport> {
    let k = match (&spec.variant, spec.sign) {
        (Variant::RankIdeal { k }, Sign::Minus) => *k,
        _ => {
            return Err(Error::Invalid(
                "the invariant submodule witness exists for the sign-minus rank-ideal families only"
                    .into(),
            ))
        }
    };
    let n = spec.n;
    let elements = spec.spanning_set(max_degree);
    // spanning vectors of U up to the same ∂-degree
    let mut vectors: Vec<ModVec> = Vec::new();
    for i in 0..n {
        let base = if i < k { 0 } else { spec.s };
        for c in 0..=max_degree {
            let mut entries = vec![MPoly::zero(); n];
            entries[i] = MPoly::monomial(Mono::var(Var::D, base + c), Rat::one());
            vectors.push(ModVec::new(n, entries).expect("module vector"));
        }
    }
    let s = spec.s;
    let mut violations: Vec<Violation> = elements
        .par_iter()
        .enumerate()
        .flat_map_iter(|(ai, a)| {
            let mut out = Vec::new();
            for (ui, u) in vectors.iter().enumerate() {
                let av = lambda_action(a, u).expect("sizes match");
                for (deg, comps) in action_coeffs(&av, Var::Lambda) {
                    for (ci, comp) in comps.iter().enumerate().skip(k) {
                        if !comp.divisible_by_var_pow(Var::D, s) {
                            out.push(Violation {
                                a_index: ai,
                                b_index: ui,
                                detail: format!(
                                    "lambda^{deg} coefficient, component {ci} not divisible by d^{s}"
                                ),
                            });
                        }
                    }
                }
            }
            out
        })
        .collect();
    violations.sort_by_key(|v| (v.a_index, v.b_index, v.detail.clone()));
    Ok(SubmoduleReport {
        report: Report {
            family: spec.to_string(),
            what: format!("invariant submodule (deg <= {max_degree})"),
            checked: elements.len() * vectors.len(),
            violations,
        },
        proper: k != n && spec.s != 0,
    })
}

/// The coefficient-space ladder `n → V_n` of a family in the reduced space.
#[derive(Clone, Debug)]
pub enum MatrixSpace {
    Full,
    /// Mat·I_k: support on the first k columns.
    ColumnsSupported(usize),
    /// I_k·Mat: support on the first k rows.
    RowsSupported(usize),
    Zero,
    /// {A | A* = sign·A} for the family's antiinvolution.
    AntiEigen { anti: Antiinvolution, sign: i8 },
}

impl MatrixSpace {
    pub fn contains(&self, m: &RatMat) -> bool {
        match self {
            MatrixSpace::Full => true,
            MatrixSpace::Zero => m.is_zero(),
            MatrixSpace::ColumnsSupported(k) => {
                (0..m.rows()).all(|i| (*k..m.cols()).all(|j| m[(i, j)].is_zero()))
            }
            MatrixSpace::RowsSupported(k) => {
                (*k..m.rows()).all(|i| (0..m.cols()).all(|j| m[(i, j)].is_zero()))
            }
            MatrixSpace::AntiEigen { anti, sign } => {
                let starred = anti.apply_rat(m);
                if *sign > 0 {
                    starred == *m
                } else {
                    starred == m.scale(&-Rat::one())
                }
            }
        }
    }

    /// A spanning set (not necessarily a basis) used for sampling.
    pub fn spanning(&self, n: usize) -> Vec<RatMat> {
        let unit = |i: usize, j: usize| {
            let mut m = RatMat::zero(n, n);
            m[(i, j)] = Rat::one();
            m
        };
        match self {
            MatrixSpace::Full => (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| unit(i, j))
                .collect(),
            MatrixSpace::Zero => Vec::new(),
            MatrixSpace::ColumnsSupported(k) => (0..n)
                .flat_map(|i| (0..*k).map(move |j| (i, j)))
                .map(|(i, j)| unit(i, j))
                .collect(),
            MatrixSpace::RowsSupported(k) => (0..*k)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| unit(i, j))
                .collect(),
            MatrixSpace::AntiEigen { anti, sign } => {
                let mut out: Vec<RatMat> = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        let e = unit(i, j);
                        let proj = if *sign > 0 {
                            e.add(&anti.apply_rat(&e))
                        } else {
                            e.add(&anti.apply_rat(&e).scale(&-Rat::one()))
                        };
                        if !proj.is_zero() && !out.contains(&proj) {
                            out.push(proj);
                        }
                    }
                }
                out
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            MatrixSpace::Full => "Mat_N".into(),
            MatrixSpace::Zero => "0".into(),
            MatrixSpace::ColumnsSupported(k) => format!("Mat_N·I_{k}"),
            MatrixSpace::RowsSupported(k) => format!("I_{k}·Mat_N"),
            MatrixSpace::AntiEigen { sign, .. } => {
                if *sign > 0 {
                    "{A | A* = A}".into()
                } else {
                    "{A | A* = -A}".into()
                }
            }
        }
    }
}

/// The declared ladder `V_n` of the family in the reduced space.
pub fn reduced_family(spec: &SubalgebraSpec, degree: u16) -> MatrixSpace {
    match &spec.variant {
        Variant::RankIdeal { k } => {
            if degree < spec.s {
                match spec.sign {
                    Sign::Plus => MatrixSpace::ColumnsSupported(*k),
                    Sign::Minus => MatrixSpace::RowsSupported(*k),
                }
            } else {
                MatrixSpace::Full
            }
        }
        Variant::Star(anti) => {
            if degree < spec.s {
                MatrixSpace::Zero
            } else {
                let sign = if degree % 2 == 1 { 1 } else { -1 };
                MatrixSpace::AntiEigen {
                    anti: anti.clone(),
                    sign,
                }
            }
        }
    }
}

/// Consistency of the declared ladder: projections of the spanning set land
/// in the declared `V_n`, and the reduced-product condition
/// `d(σ) AB + (-1)^{k+1} d(-σ) BA ∈ V_{m+n-k}` holds on spanning matrices.
pub fn verify_reduced_family(spec: &SubalgebraSpec, max_degree: u16, ladder_max: u16) -> Report {
    let mut violations = Vec::new();
    let mut checked = 0usize;

    // projections of spanning elements
    let vir = spec.virasoro();
    for (idx, a) in spec.spanning_set(max_degree).iter().enumerate() {
        let reduced = project(a, &vir).expect("sizes match");
        for (&deg, entries) in reduced.components() {
            checked += 1;
            match RatMat::from_poly(spec.n, entries) {
                Some(m) => {
                    if !reduced_family(spec, deg).contains(&m) {
                        violations.push(Violation {
                            a_index: idx,
                            b_index: deg as usize,
                            detail: format!("projection component at degree {deg} escapes V_{deg}"),
                        });
                    }
                }
                None => violations.push(Violation {
                    a_index: idx,
                    b_index: deg as usize,
                    detail: "projection component is not a constant matrix".into(),
                }),
            }
        }
    }

    // condition (2) on the ladder itself
    let sigma = MPoly::int(spec.sigma());
    let neg_sigma = MPoly::int(-spec.sigma());
    for m in 0..=ladder_max {
        for n in 0..=ladder_max {
            let va = reduced_family(spec, m).spanning(spec.n);
            let vb = reduced_family(spec, n).spanning(spec.n);
            for k in 0..=(m + n) {
                let d_pos = d_coeff(m, n, k, &sigma)
                    .expect("k <= m+n")
                    .constant_value()
                    .expect("constant");
                let d_neg = d_coeff(m, n, k, &neg_sigma)
                    .expect("k <= m+n")
                    .constant_value()
                    .expect("constant");
                let target = reduced_family(spec, m + n - k);
                for a in &va {
                    for b in &vb {
                        checked += 1;
                        let mut combo = a.matmul(b).scale(&d_pos);
                        let flip = if k % 2 == 0 { -Rat::one() } else { Rat::one() };
                        combo = combo.add(&b.matmul(a).scale(&(d_neg.clone() * flip)));
                        if !target.contains(&combo) {
                            violations.push(Violation {
                                a_index: m as usize,
                                b_index: n as usize,
                                detail: format!("condition (2) fails at k = {k}"),
                            });
                        }
                    }
                }
            }
        }
    }

    violations.sort_by_key(|v| (v.a_index, v.b_index, v.detail.clone()));
    violations.dedup();
    Report {
        family: spec.to_string(),
        what: format!("reduced-family ladder (deg <= {max_degree}, V_n up to {ladder_max})"),
        checked,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(src: &str) -> MPoly {
        src.parse().unwrap()
    }

    #[test]
    fn antiinvolution_axioms() {
        for anti in [Antiinvolution::transpose(2), Antiinvolution::symplectic(2).unwrap()] {
            let a = RatMat::from_i64(2, 2, &[1, 2, 3, 4]);
            let b = RatMat::from_i64(2, 2, &[0, 1, -1, 5]);
            // (A*)* = A
            assert_eq!(anti.apply_rat(&anti.apply_rat(&a)), a);
            // (AB)* = B* A*
            assert_eq!(
                anti.apply_rat(&a.matmul(&b)),
                anti.apply_rat(&b).matmul(&anti.apply_rat(&a))
            );
        }
        assert!(Antiinvolution::symplectic(3).is_err());
        let bad = RatMat::from_i64(2, 2, &[0, 1, 2, 0]);
        assert!(Antiinvolution::new(bad, "bad").is_err());
    }

    #[test]
    fn ikn_idempotents() {
        let i = IkN::new(1, 3).unwrap();
        let m = i.matrix();
        let c = i.complement();
        assert_eq!(m.matmul(&m), m);
        assert_eq!(c.matmul(&c), c);
        assert!(m.matmul(&c).is_zero());
        assert_eq!(m.add(&c), RatMat::identity(3));
        assert!(IkN::new(4, 3).is_err());
    }

    #[test]
    fn scalar_membership() {
        // N = 1, family (+, S, k=0): x^S in R, 1 not in R for S >= 1
        let spec = SubalgebraSpec::rank_ideal(Sign::Plus, 2, 0, 1).unwrap();
        let xs = GcElem::scalar(1, p("x^2"));
        let one = GcElem::scalar(1, MPoly::one());
        assert!(spec.membership(&xs));
        assert!(!spec.membership(&one));
        // k = N means everything is a member
        let all = SubalgebraSpec::rank_ideal(Sign::Plus, 2, 1, 1).unwrap();
        assert!(all.membership(&one));
    }

    #[test]
    fn star_membership_odd_s() {
        // S odd, transpose star: 2 x^S Id is a member (p = Id)
        let spec = SubalgebraSpec::star(Sign::Plus, 1, Antiinvolution::transpose(2), 2).unwrap();
        let elem = GcElem::scalar(2, p("2*x"));
        assert!(spec.membership(&elem));
        // but x·e_{01} alone is not symmetric under the twist
        let single = GcElem::single(2, 0, 1, p("x"));
        assert!(!spec.membership(&single));
    }

    #[test]
    fn spanning_scalar_example() {
        // (+, S=1, k=0), N=1, degree 2: {x, x^2, ∂x}
        let spec = SubalgebraSpec::rank_ideal(Sign::Plus, 1, 0, 1).unwrap();
        let span = spec.spanning_set(2);
        let set: BTreeSet<String> = span.iter().map(|e| e.entry(0, 0).to_string()).collect();
        let expect: BTreeSet<String> =
            ["x", "x^2", "d*x"].iter().map(|s| s.to_string()).collect();
        assert_eq!(set, expect);
    }

    #[test]
    fn spanning_passes_membership() {
        for spec in [
            SubalgebraSpec::rank_ideal(Sign::Plus, 2, 1, 2).unwrap(),
            SubalgebraSpec::rank_ideal(Sign::Minus, 1, 1, 2).unwrap(),
            SubalgebraSpec::star(Sign::Plus, 1, Antiinvolution::transpose(2), 2).unwrap(),
            SubalgebraSpec::star(Sign::Minus, 2, Antiinvolution::symplectic(2).unwrap(), 2).unwrap(),
        ] {
            let span = spec.spanning_set(3);
            assert!(!span.is_empty());
            for e in &span {
                assert!(spec.membership(e), "family {spec}: {e}");
            }
        }
    }

    #[test]
    fn star_degree_zero_split() {
        // S = 0, transpose star: degree-0 outputs split by symmetry
        let spec = SubalgebraSpec::star(Sign::Plus, 0, Antiinvolution::transpose(2), 2).unwrap();
        let span = spec.spanning_set(0);
        // p = e_{ij} constants: p + (-1)^{0+1} p*(∂,-∂-x) = e_{ij} - e_{ji}: the
        // skew part survives, the symmetric part cancels
        assert_eq!(span.len(), 1);
        let e = &span[0];
        assert_eq!(e.entry(0, 1), &(-&(e.entry(1, 0).clone())));
    }

    #[test]
    fn closure_small_families() {
        let spec = SubalgebraSpec::rank_ideal(Sign::Plus, 1, 0, 1).unwrap();
        let rep = verify_closure(&spec, 3);
        assert!(rep.passed(), "{rep}");
        let star = SubalgebraSpec::star(Sign::Minus, 1, Antiinvolution::transpose(2), 2).unwrap();
        let rep = verify_closure(&star, 2);
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn closure_negative_control() {
        // x·ℂ[∂,x] with 1 adjoined is not closed: [1 λ x] = λ has a constant
        // λ-coefficient outside x·ℂ[∂,x]
        let spec = SubalgebraSpec::rank_ideal(Sign::Plus, 1, 0, 1).unwrap();
        let mut elems = spec.spanning_set(2);
        elems.push(GcElem::scalar(1, MPoly::one()));
        let violations = closure_violations(&elems, |e| spec.membership(e));
        assert!(!violations.is_empty());
    }

    #[test]
    fn normalization_small_families() {
        let spec = SubalgebraSpec::rank_ideal(Sign::Plus, 2, 0, 1).unwrap();
        let rep = verify_normalized(&spec, 3);
        assert!(rep.passed(), "{rep}");
        // L_(2) x^S = 0: x^S is quasi-primary for L_S^(+)
        let vir = spec.virasoro();
        let xs = GcElem::scalar(1, p("x^2"));
        assert!(nth_product(vir.gc_elem(), &xs, 2).unwrap().is_zero());
    }

    #[test]
    fn submodule_witness() {
        let spec = SubalgebraSpec::rank_ideal(Sign::Minus, 1, 1, 2).unwrap();
        let rep = verify_submodule(&spec, 3).unwrap();
        assert!(rep.report.passed(), "{}", rep.report);
        assert!(rep.proper);
        // S = 0: invariant but not proper
        let trivial = SubalgebraSpec::rank_ideal(Sign::Minus, 0, 1, 2).unwrap();
        let rep = verify_submodule(&trivial, 2).unwrap();
        assert!(rep.report.passed());
        assert!(!rep.proper);
        // the witness is specific to the sign-minus rank-ideal families
        let plus = SubalgebraSpec::rank_ideal(Sign::Plus, 1, 1, 2).unwrap();
        assert!(verify_submodule(&plus, 2).is_err());
    }

    #[test]
    fn reduced_family_ladders() {
        let spec = SubalgebraSpec::rank_ideal(Sign::Plus, 2, 1, 2).unwrap();
        assert!(matches!(reduced_family(&spec, 0), MatrixSpace::ColumnsSupported(1)));
        assert!(matches!(reduced_family(&spec, 2), MatrixSpace::Full));
        let star = SubalgebraSpec::star(Sign::Plus, 1, Antiinvolution::transpose(2), 2).unwrap();
        assert!(matches!(reduced_family(&star, 0), MatrixSpace::Zero));
        assert!(matches!(
            reduced_family(&star, 1),
            MatrixSpace::AntiEigen { sign: 1, .. }
        ));
        assert!(matches!(
            reduced_family(&star, 2),
            MatrixSpace::AntiEigen { sign: -1, .. }
        ));
    }

    #[test]
    fn reduced_family_consistency() {
        let star = SubalgebraSpec::star(Sign::Plus, 1, Antiinvolution::transpose(2), 2).unwrap();
        let rep = verify_reduced_family(&star, 3, 4);
        assert!(rep.passed(), "{rep}");
        let ideal = SubalgebraSpec::rank_ideal(Sign::Minus, 1, 1, 2).unwrap();
        let rep = verify_reduced_family(&ideal, 3, 4);
        assert!(rep.passed(), "{rep}");
    }
}
