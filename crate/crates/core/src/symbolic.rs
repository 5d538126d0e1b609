//! Brute-force computation of `alpha(I^(s))` for `I = sfBorel(m)`, kept
//! independent of the LP path apart from using its value as a starting point.
//!
//! `x^a` lies in `P^s` for a monomial prime `P` exactly when the exponents of
//! `a` over the support of `P` sum to at least `s`, so `alpha(I^(s))` is the
//! least total degree of a nonnegative integer vector meeting every prime
//! with weight `s`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::lp::{solve_covering_lp, CoveringLP};
use crate::monomial::{GeneratorSet, SquareFreeMonomial, DEFAULT_ENUMERATION_CAP};
use crate::primes::{associated_primes, prime_matrix, AssociatedPrimeSystem};
use crate::rational::{ceil, from_usize, Rational};

/// Default number of exponent vectors [`alpha_symbolic`] may examine.
pub const DEFAULT_SEARCH_BUDGET: u64 = 20_000_000;

pub const ORACLE_MAX_VARS: usize = 6;
pub const ORACLE_MAX_POWER: u32 = 3;
pub const ORACLE_MAX_DEGREE: u32 = 18;

/// Smallest degree of a generator.
pub fn alpha_ideal(gens: &GeneratorSet) -> Result<usize> {
    if gens.truncated {
        return Err(Error::Truncated);
    }
    gens.monomials
        .iter()
        .map(|g| g.degree())
        .min()
        .ok_or_else(|| Error::Internal("empty generator set".into()))
}

#[derive(Debug, Clone, Copy)]
pub struct SymbolicAlphaQuery<'a> {
    pub primes: &'a AssociatedPrimeSystem,
    pub s: u32,
}

/// Exact `alpha(I^(s))` with the default budget.
pub fn alpha_symbolic(q: SymbolicAlphaQuery<'_>) -> Result<u64> {
    alpha_symbolic_with_budget(q, DEFAULT_SEARCH_BUDGET)
}

pub fn alpha_symbolic_with_budget(q: SymbolicAlphaQuery<'_>, budget: u64) -> Result<u64> {
    check_query(&q)?;
    let lp = CoveringLP::from_prime_matrix(&prime_matrix(q.primes)?)?;
    let value = solve_covering_lp(&lp)?.value;
    search_from(q, &value, budget)
}

fn check_query(q: &SymbolicAlphaQuery<'_>) -> Result<()> {
    if q.primes.truncated {
        return Err(Error::Truncated);
    }
    if q.s == 0 {
        return Err(Error::OracleLimits("symbolic power order must be at least 1".into()));
    }
    Ok(())
}

/// Tests total degrees starting at `ceil(s * lp_value)`. Feasibility is
/// monotone in the total, so going up until feasible, or down while still
/// feasible, lands on the minimum whatever the starting value.
fn search_from(q: SymbolicAlphaQuery<'_>, lp_value: &Rational, budget: u64) -> Result<u64> {
    let masks = PrimeWeights::new(q.primes);
    let start = ceil(&(lp_value * from_usize(q.s as usize)));
    let mut total: u64 = start.try_into().unwrap_or(0);
    let mut spent = 0u64;

    if masks.feasible(total, q.s, budget, &mut spent)? {
        while total > 0 && masks.feasible(total - 1, q.s, budget, &mut spent)? {
            total -= 1;
        }
        Ok(total)
    } else {
        loop {
            total += 1;
            if masks.feasible(total, q.s, budget, &mut spent)? {
                return Ok(total);
            }
        }
    }
}

struct PrimeWeights {
    n: usize,
    primes: Vec<Vec<usize>>,
}

impl PrimeWeights {
    fn new(system: &AssociatedPrimeSystem) -> Self {
        Self {
            n: system.n_eff,
            primes: system
                .primes
                .iter()
                .map(|p| p.variables().iter().map(|v| v - 1).collect())
                .collect(),
        }
    }

    fn meets_all(&self, a: &[u64], s: u32) -> bool {
        self.primes
            .iter()
            .all(|p| p.iter().map(|&j| a[j]).sum::<u64>() >= s as u64)
    }

    /// Is there an exponent vector with exactly this total meeting every prime?
    fn feasible(&self, total: u64, s: u32, budget: u64, spent: &mut u64) -> Result<bool> {
        let mut a = vec![0u64; self.n];
        self.fill(0, total, &mut a, s, budget, spent)
    }

    fn fill(&self, pos: usize, left: u64, a: &mut [u64], s: u32, budget: u64, spent: &mut u64) -> Result<bool> {
        if pos + 1 == self.n {
            a[pos] = left;
            *spent += 1;
            if *spent > budget {
                return Err(Error::BudgetExceeded(budget));
            }
            return Ok(self.meets_all(a, s));
        }
        for v in 0..=left {
            a[pos] = v;
            if self.fill(pos + 1, left - v, a, s, budget, spent)? {
                return Ok(true);
            }
        }
        a[pos] = 0;
        Ok(false)
    }
}

/// Every exponent vector of total degree at most `degree_cap` whose monomial
/// lies in each `P^s`, where `P^s` is expanded into its generators (products
/// of `s` variables of `P`) and membership is tested by divisibility.
pub fn symbolic_power_members_bruteforce(
    primes: &AssociatedPrimeSystem,
    s: u32,
    degree_cap: u32,
) -> Result<BTreeSet<Vec<u32>>> {
    if primes.truncated {
        return Err(Error::Truncated);
    }
    let n = primes.n_eff;
    if n > ORACLE_MAX_VARS || s > ORACLE_MAX_POWER || s == 0 || degree_cap > ORACLE_MAX_DEGREE {
        return Err(Error::OracleLimits(format!(
            "need n_eff <= {ORACLE_MAX_VARS}, 1 <= s <= {ORACLE_MAX_POWER}, degree cap <= {ORACLE_MAX_DEGREE}; \
             got n_eff = {n}, s = {s}, cap = {degree_cap}"
        )));
    }

    let power_gens: Vec<Vec<Vec<u32>>> = primes
        .primes
        .iter()
        .map(|p| {
            let mut gens = Vec::new();
            multisets(p.variables(), s as usize, 0, &mut vec![0u32; n], &mut gens);
            gens
        })
        .collect();

    let in_power = |a: &[u32], gens: &[Vec<u32>]| gens.iter().any(|g| g.iter().zip(a).all(|(x, y)| x <= y));

    let mut members = BTreeSet::new();
    let mut a = vec![0u32; n];
    loop {
        if power_gens.iter().all(|gens| in_power(&a, gens)) {
            members.insert(a.clone());
        }
        if !next_bounded_vector(&mut a, degree_cap) {
            break;
        }
    }
    Ok(members)
}

/// Exponent vectors of the size-`len` variable multisets drawn from `vars`.
fn multisets(vars: &[usize], len: usize, from: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if len == 0 {
        out.push(cur.clone());
        return;
    }
    for i in from..vars.len() {
        cur[vars[i] - 1] += 1;
        multisets(vars, len - 1, i, cur, out);
        cur[vars[i] - 1] -= 1;
    }
}

/// Odometer step over vectors with coordinate sum at most `cap`.
fn next_bounded_vector(a: &mut [u32], cap: u32) -> bool {
    let mut sum: u32 = a.iter().sum();
    for x in a.iter_mut() {
        if sum < cap {
            *x += 1;
            return true;
        }
        sum -= *x;
        *x = 0;
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceRow {
    pub s: u32,
    /// `(alpha(I^(s)), alpha(I^(s)) / s)` or the error that stopped the search.
    pub outcome: std::result::Result<(u64, Rational), Error>,
    /// Set when the ratio falls below the reference value.
    pub below_reference: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    /// The Waldschmidt constant from the covering LP.
    pub reference: Rational,
}

impl ConvergenceReport {
    pub fn alphas(&self) -> Vec<(u32, u64)> {
        self.rows
            .iter()
            .filter_map(|r| r.outcome.as_ref().ok().map(|(a, _)| (r.s, *a)))
            .collect()
    }

    /// Pairs `(s, t)` with `alpha(s + t) > alpha(s) + alpha(t)` among computed rows.
    pub fn subadditivity_violations(&self) -> Vec<(u32, u32)> {
        let alphas: std::collections::HashMap<u32, u64> = self.alphas().into_iter().collect();
        let mut out = Vec::new();
        for (&s, &a) in &alphas {
            for (&t, &b) in &alphas {
                if s <= t {
                    if let Some(&c) = alphas.get(&(s + t)) {
                        if c > a + b {
                            out.push((s, t));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn has_errors(&self) -> bool {
        self.rows.iter().any(|r| r.outcome.is_err())
    }
}

pub fn convergence_report(m: &SquareFreeMonomial, s_max: u32) -> Result<ConvergenceReport> {
    convergence_report_with(m, s_max, DEFAULT_ENUMERATION_CAP, DEFAULT_SEARCH_BUDGET)
}

/// `alpha(I^(s))` and `alpha(I^(s))/s` for `s = 1..=s_max`, compared with the
/// LP value. Per-row search failures are recorded in the row.
pub fn convergence_report_with(
    m: &SquareFreeMonomial,
    s_max: u32,
    cap: usize,
    budget: u64,
) -> Result<ConvergenceReport> {
    let system = associated_primes(m, cap)?;
    if system.truncated {
        return Err(Error::EnumerationCapExceeded {
            predicted: system.predicted.clone().expect("set by associated_primes"),
            cap,
        });
    }
    let lp = CoveringLP::from_prime_matrix(&prime_matrix(&system)?)?;
    let reference = solve_covering_lp(&lp)?.value;

    let rows = (1..=s_max)
        .map(|s| {
            let q = SymbolicAlphaQuery { primes: &system, s };
            let outcome = search_from(q, &reference, budget)
                .map(|alpha| (alpha, Rational::new((alpha as i64).into(), (s as i64).into())));
            let below_reference = matches!(&outcome, Ok((_, r)) if *r < reference);
            ConvergenceRow {
                s,
                outcome,
                below_reference,
            }
        })
        .collect();
    Ok(ConvergenceReport { rows, reference })
}
