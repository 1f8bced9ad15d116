//! Exact scalar, polynomial and power-series arithmetic.

pub mod parse;
pub mod poly;
pub mod rat;
pub mod series;

pub use parse::{parse_poly, parse_scalar_or_var};
pub use poly::{binom_rat, MPoly, Mono, Var, NVARS};
pub use rat::{binom_uint, factorial, format_rat, rat, rat_int, Rat};
pub use series::Series;
