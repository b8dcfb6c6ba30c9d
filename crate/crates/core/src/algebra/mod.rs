//! Exact arithmetic: rationals, roots of unity, cyclotomic fields, polynomials.

pub mod arith;
pub mod cyclo;
pub mod embed;
pub mod linalg;
pub mod mpoly;
pub mod rational;
pub mod root;

pub use cyclo::{order_cap, Cyclo};
pub use embed::ComplexApprox;
pub use linalg::{min_poly, rational_ratio, RatioOutcome};
pub use mpoly::{parse_poly, Coeff, MPoly};
pub use rational::{int, parse_rational, rat, Rational};
pub use root::RootOfUnity;
