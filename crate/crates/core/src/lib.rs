//! Waldschmidt constants of square-free principal Borel ideals.
//!
//! For a square-free monomial `m`, the ideal `sfBorel(m)` is generated by all
//! square-free monomials reachable from `m` by replacing a variable with one of
//! smaller index. This crate computes its Waldschmidt constant exactly through
//! a covering LP over the associated primes when that LP is small enough, and
//! through closed forms and certified bounds otherwise. A brute-force
//! symbolic-power search provides an independent check at small scale.
//!
//! ```
//! use sfborel::{parse_monomial, waldschmidt_lp, upper_bound, rational::ratio};
//!
//! let m = parse_monomial("2,3,5,6,8,10").unwrap();
//! assert_eq!(waldschmidt_lp(&m, 200_000).unwrap().value, ratio(19, 6));
//! assert_eq!(upper_bound(&m), ratio(19, 6));
//! ```

pub mod error;
pub mod lp;
pub mod monomial;
pub mod primes;
pub mod rational;
pub mod symbolic;
pub mod waldschmidt;

pub use error::{Error, Result};
pub use lp::{solve_covering_lp, verify_certificates, CoveringLP, LPSolution};
pub use monomial::{
    borel_dominates, jump_profile, minimal_elements, parse_monomial, sfborel_generators, GeneratorSet,
    JumpProfile, SquareFreeMonomial, DEFAULT_ENUMERATION_CAP,
};
pub use primes::{
    associated_primes, fms_base_monomials, minimal_cover_primes, prime_matrix, reduce_variables,
    AssociatedPrimeSystem, PrimeCountEstimate, PrimeMatrix, PrimeSupport,
};
pub use rational::Rational;
pub use symbolic::{
    alpha_ideal, alpha_symbolic, convergence_report, symbolic_power_members_bruteforce, ConvergenceReport,
    SymbolicAlphaQuery,
};
pub use waldschmidt::{
    bound_interval, coarse_upper_bound, construct_for_rational, exact_formula, lower_bound, shift_last,
    upper_bound, upper_bound_certificate, waldschmidt_auto, waldschmidt_lp, BoundInterval, Estimate,
    ExactResult, Method, UpperBoundCertificate,
};
