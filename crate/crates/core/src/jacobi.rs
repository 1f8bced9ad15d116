//! Jacobi polynomials with exact symbolic parameters, and their bridge to the
//! quasi-primary basis.
//!
//! `P_n^{(α,β)}` is built from the terminating hypergeometric series with the
//! binomial prefactor cancelled analytically, so the coefficients are honest
//! polynomials in α and β:
//!
//! ```text
//! P_n = Σ_j (α+j+1)_{n-j} (-n)_j (n+α+β+1)_j / (n! j!) · ((1-y)/2)^j
//! ```
//!
//! The bridge identity `binom(2n,n) R_n(∂,y) = ∂^n P_n^{(-σ,σ)}(y/∂)` connects
//! them to the reduced space, and the subalgebra classification yields the
//! divisibility/parity corollary checked by [`parity_factorization`].

use crate::ring::{binom_uint, factorial, rat, MPoly, Rat, Series, Var};
use crate::virasoro::{q_basis, r_basis};
use crate::Result;

/// The parameter pair (α, β); entries are polynomials, typically constants,
/// the symbolic variables themselves, or (−σ, σ).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JacobiParams {
    pub alpha: MPoly,
    pub beta: MPoly,
}

impl JacobiParams {
    pub fn new(alpha: MPoly, beta: MPoly) -> JacobiParams {
        JacobiParams { alpha, beta }
    }

    /// Fully symbolic parameters (the variables α and β).
    pub fn symbolic() -> JacobiParams {
        JacobiParams::new(MPoly::var(Var::Alpha), MPoly::var(Var::Beta))
    }

    /// The pair (−σ, σ) tied to the reduced space.
    pub fn sigma_pair(sigma: &MPoly) -> JacobiParams {
        JacobiParams::new(-sigma, sigma.clone())
    }

    /// Integer pair (−S, S) or (S, −S).
    pub fn integer_pair(s: i64) -> JacobiParams {
        JacobiParams::new(MPoly::int(-s), MPoly::int(s))
    }
}

/// The Jacobi polynomial `P_n^{(α,β)}(y)`, exact in y and the parameters.
pub fn jacobi_poly(params: &JacobiParams, n: u16) -> MPoly {
    let a = &params.alpha;
    let b = &params.beta;
    let t = (&MPoly::one() - &MPoly::var(Var::Y)).mul_rat(&rat(1, 2));
    let nabp1 = &(&MPoly::int(n as i64 + 1) + a) + b; // n+α+β+1
    let mut out = MPoly::zero();
    let mut t_pow = MPoly::one();
    for j in 0..=n {
        // (α+j+1)_{n-j} · (-n)_j · (n+α+β+1)_j / (n! j!)
        let lead = MPoly::rising(&(&MPoly::int(j as i64 + 1) + a), n - j);
        let falling = MPoly::rising(&MPoly::int(-(n as i64)), j);
        let rising = MPoly::rising(&nabp1, j);
        let denom = Rat::new(1.into(), factorial(n as u64) * factorial(j as u64));
        let coeff = (&(&lead * &falling) * &rising).mul_rat(&denom);
        out += &coeff * &t_pow;
        if j < n {
            t_pow = &t_pow * &t;
        }
    }
    out
}

/// True iff `P_n` solves the Jacobi differential equation
/// `(1-y²)u'' + [β-α-(α+β+2)y]u' + n(n+α+β+1)u = 0` exactly.
pub fn check_ode(params: &JacobiParams, n: u16) -> bool {
    let u = jacobi_poly(params, n);
    let y = MPoly::var(Var::Y);
    let du = u.diff(Var::Y);
    let ddu = du.diff(Var::Y);
    let one_minus_y2 = &MPoly::one() - &y.pow(2);
    let a = &params.alpha;
    let b = &params.beta;
    let linear = &(b - a) - &(&y * &(&(a + b) + &MPoly::int(2)));
    let constant = (&(&(a + b) + &MPoly::int(n as i64 + 1))).mul_rat(&Rat::from_integer(n.into()));
    let lhs = &(&(&one_minus_y2 * &ddu) + &(&linear * &du)) + &(&constant * &u);
    lhs.is_zero()
}

/// True iff `P_n^{(α,β)}(y) = (-1)^n P_n^{(β,α)}(-y)` exactly.
pub fn check_symmetry(params: &JacobiParams, n: u16) -> bool {
    let lhs = jacobi_poly(params, n);
    let swapped = JacobiParams::new(params.beta.clone(), params.alpha.clone());
    let mut rhs = jacobi_poly(&swapped, n).subst_one(Var::Y, &-&MPoly::var(Var::Y));
    if n % 2 == 1 {
        rhs = -&rhs;
    }
    lhs == rhs
}

/// Expand the generating function
///
/// ```text
/// (1 - 2yz + ∂²z²)^{-1/2} · [(1 - ∂z + R)/(1 + ∂z + R)]^σ,  R = sqrt(1 - 2yz + ∂²z²)
/// ```
///
/// as a series in z and compare its z^n coefficient against
/// `binom(2n,n)·R_n(∂,y)` for every n ≤ order.
pub fn generating_check(sigma: &MPoly, order: usize) -> Result<bool> {
    let gen = generating_series(sigma, order)?;
    for n in 0..=order {
        let expect = r_basis(sigma, n as u16)
            .mul_rat(&Rat::from_integer(binom_uint(2 * n as u64, n as u64)));
        if gen.coeff(n) != &expect {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The generating series itself (exposed for the CLI and the book).
pub fn generating_series(sigma: &MPoly, order: usize) -> Result<Series> {
    let d = MPoly::var(Var::D);
    let y = MPoly::var(Var::Y);
    let radicand = Series::new(
        Var::Z,
        order,
        vec![MPoly::one(), (-&y).mul_rat(&rat(2, 1)), d.pow(2)],
    );
    let root = radicand.sqrt()?;
    let dz = Series::new(Var::Z, order, vec![MPoly::zero(), d.clone()]);
    let one = Series::one(Var::Z, order);
    // halves of (1 ∓ ∂z + R): constant terms are exactly 1
    let upper = (&(&one - &dz) + &root).scale(&MPoly::constant(rat(1, 2)));
    let lower = (&(&one + &dz) + &root).scale(&MPoly::constant(rat(1, 2)));
    let ratio_pow = &upper.pow_poly(sigma)? * &lower.pow_poly(&-sigma)?;
    let inv_root = radicand.pow_poly(&MPoly::constant(rat(-1, 2)))?;
    Ok(&inv_root * &ratio_pow)
}

/// True iff `binom(2n,n) R_n(∂,y) = ∂^n P_n^{(-σ,σ)}(y/∂)` (homogenized), and
/// equivalently for `Q_n` in the x coordinates.
pub fn qn_jacobi_relation(sigma: &MPoly, n: u16) -> bool {
    let p = jacobi_poly(&JacobiParams::sigma_pair(sigma), n);
    // homogenize: y^j ↦ ∂^{n-j} y^j
    let mut rhs_r = MPoly::zero();
    for (deg, coeff) in p.collect_var(Var::Y) {
        let mono = crate::ring::Mono::var(Var::D, n - deg).mul(&crate::ring::Mono::var(Var::Y, deg));
        rhs_r += coeff.mul_mono(&mono);
    }
    let scale = Rat::from_integer(binom_uint(2 * n as u64, n as u64));
    let lhs_r = r_basis(sigma, n).mul_rat(&scale);
    if lhs_r != rhs_r {
        return false;
    }
    // independent x-form assertion: substitute y = 2x + ∂ into the homogenized
    // Jacobi side and compare against binom(2n,n)·Q_n directly
    let y_sub = &MPoly::var(Var::X).mul_rat(&rat(2, 1)) + &MPoly::var(Var::D);
    let rhs_q = rhs_r.subst_one(Var::Y, &y_sub);
    let lhs_q = q_basis(sigma, n).mul_rat(&scale);
    lhs_q == rhs_q
}

/// Result of the divisibility/parity factorization at integer S.
#[derive(Clone, Debug)]
pub struct ParityFactorization {
    /// The common quotient polynomial when everything checks out.
    pub quotient: MPoly,
    /// Both divisions exact, quotients equal, parity (-1)^{n-S}, and the
    /// companion Q-factorization holds.
    pub ok: bool,
    /// Human-readable description of the first failure, if any.
    pub detail: Option<String>,
}

/// Check that `P_n^{(-S,S)}` is divisible by `(y-1)^S`, that `P_n^{(S,-S)}`
/// is divisible by `(y+1)^S`, that the two quotients coincide and have parity
/// `(-1)^{n-S}`, and that `Q_n^{(S)} = x^S·Q̃` with `Q̃(∂,x) = Q̃(-∂,∂+x)`.
pub fn parity_factorization(s: u16, n: u16) -> Result<ParityFactorization> {
    if n < s {
        return Err(crate::Error::Invalid(format!("need n >= S, got n = {n}, S = {s}")));
    }
    let p_minus = jacobi_poly(&JacobiParams::integer_pair(s as i64), n);
    let p_plus = jacobi_poly(&JacobiParams::integer_pair(-(s as i64)), n);

    let fail = |quotient: MPoly, msg: String| {
        Ok(ParityFactorization {
            quotient,
            ok: false,
            detail: Some(msg),
        })
    };

    let q1 = match p_minus.div_exact_linear_pow(Var::Y, &MPoly::one(), s) {
        Some(q) => q,
        None => return fail(MPoly::zero(), format!("P_{n}^(-{s},{s}) not divisible by (y-1)^{s}")),
    };
    let q2 = match p_plus.div_exact_linear_pow(Var::Y, &MPoly::int(-1), s) {
        Some(q) => q,
        None => return fail(q1, format!("P_{n}^({s},-{s}) not divisible by (y+1)^{s}")),
    };
    if q1 != q2 {
        return fail(q1, "ratio polynomials differ".to_string());
    }
    let mut mirrored = q1.subst_one(Var::Y, &-&MPoly::var(Var::Y));
    if (n - s) % 2 == 1 {
        mirrored = -&mirrored;
    }
    if mirrored != q1 {
        return fail(q1, format!("quotient does not have parity (-1)^{}", n - s));
    }
    // companion factorization of the basis polynomial itself
    let qn = q_basis(&MPoly::int(s as i64), n);
    let tilde = match qn.div_var_pow(Var::X, s) {
        Some(t) => t,
        None => return fail(q1, format!("Q_{n}^({s}) not divisible by x^{s}")),
    };
    let reflected = tilde.subst(&[
        (Var::D, -&MPoly::var(Var::D)),
        (Var::X, &MPoly::var(Var::D) + &MPoly::var(Var::X)),
    ]);
    if reflected != tilde {
        return fail(q1, format!("Q̃_{n}^({s}) not invariant under (∂,x) -> (-∂,∂+x)"));
    }
    Ok(ParityFactorization {
        quotient: q1,
        ok: true,
        detail: None,
    })
}
