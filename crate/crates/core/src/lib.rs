//! Exact and p-adic computations for Lambda-adic Eisenstein series,
//! Kubota-Leopoldt p-adic L-functions and the cusp combinatorics of X_1(N).

pub mod arith;
pub mod characters;
pub mod error;
pub mod lvalues;
pub mod eisenstein;
pub mod padic_lfun;
pub mod cusps;
pub mod residues;
pub mod iwasawa;

pub use arith::{binom_series, s_exponent, teichmuller, CyclotomicRational, LambdaSeries, OkRing, PadicScalar, Pole};
pub use error::{Error, Result};
pub use characters::DirichletCharacter;
