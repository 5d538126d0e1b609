//! Associated primes of `sfBorel(m)`.
//!
//! The primes are read off the minimal generators of the square-free Borel
//! ideal spanned by the consecutive-index blocks `x_{t_j} ... x_{i_{t_j}}` of
//! the jump profile. An exhaustive minimal-vertex-cover search is kept next to
//! it as an independent check for small inputs.

use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::{
    borel_dominates, jump_profile, sfborel_generators, GeneratorSet, JumpProfile, SquareFreeMonomial,
};

/// Hard ceiling on the variable count the exhaustive cover oracle accepts.
pub const MAX_COVER_ORACLE_VARS: usize = 20;

/// Counts above this are rendered as binomial expressions.
pub const SYMBOLIC_COUNT_THRESHOLD: u128 = 1_000_000_000_000_000_000;

/// Support of a monomial prime `<x_{j_1}, ..., x_{j_l}>`, sorted and 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeSupport(Vec<usize>);

impl PrimeSupport {
    pub fn new(mut variables: Vec<usize>) -> Self {
        variables.sort_unstable();
        variables.dedup();
        assert!(!variables.is_empty(), "a prime needs at least one variable");
        assert!(variables[0] >= 1, "variables are 1-based");
        Self(variables)
    }

    pub fn variables(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, var: usize) -> bool {
        self.0.binary_search(&var).is_ok()
    }

    pub fn is_subset_of(&self, other: &PrimeSupport) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }
}

impl fmt::Display for PrimeSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Upper estimate `sum_j C(i_{t_j}, t_j - 1)` of the number of associated primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeCountEstimate {
    /// `(n, k)` per block, with `k` normalized to `min(k, n - k)`.
    pub terms: Vec<(usize, usize)>,
    /// Exact total when it is at most [`SYMBOLIC_COUNT_THRESHOLD`].
    pub value: Option<u128>,
}

impl PrimeCountEstimate {
    pub fn for_profile(profile: &JumpProfile) -> Self {
        let terms: Vec<(usize, usize)> = (0..=profile.k())
            .map(|j| {
                let n = profile.it[j];
                let k = profile.t[j] - 1;
                (n, k.min(n - k))
            })
            .collect();
        let value = terms.iter().try_fold(0u128, |acc, &(n, k)| {
            let c = binomial_capped(n, k, SYMBOLIC_COUNT_THRESHOLD)?;
            Some(acc + c).filter(|&v| v <= SYMBOLIC_COUNT_THRESHOLD)
        });
        Self { terms, value }
    }

    pub fn exceeds(&self, cap: usize) -> bool {
        self.value.is_none_or(|v| v > cap as u128)
    }
}

impl fmt::Display for PrimeCountEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            Some(v) => write!(f, "{v}"),
            None => {
                let parts: Vec<String> = self.terms.iter().map(|(n, k)| format!("C({n},{k})")).collect();
                f.write_str(&parts.join(" + "))
            }
        }
    }
}

/// `C(n, k)` if it is at most `limit`, otherwise `None`.
pub fn binomial_capped(n: usize, k: usize, limit: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    // acc = C(n - k + i, i) after step i, which only grows
    for i in 1..=k {
        acc = acc.checked_mul((n - k + i) as u128)? / i as u128;
        if acc > limit {
            return None;
        }
    }
    Some(acc)
}

/// Associated primes of `sfBorel(m)` with the block each one comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociatedPrimeSystem {
    pub primes: Vec<PrimeSupport>,
    /// Profile index `j` of the block a prime's generator is a Borel move of;
    /// `None` for systems built by the cover oracle.
    pub base_index: Vec<Option<usize>>,
    /// Ambient variable count, `i_s` for `sfBorel(m)`.
    pub n_eff: usize,
    pub truncated: bool,
    pub predicted: Option<PrimeCountEstimate>,
}

impl AssociatedPrimeSystem {
    pub fn sorted_primes(&self) -> Vec<PrimeSupport> {
        let mut p = self.primes.clone();
        p.sort();
        p
    }
}

/// The blocks `x_{t_j} x_{t_j+1} ... x_{i_{t_j}}` for `j = k, k-1, ..., 0`.
pub fn fms_base_monomials(profile: &JumpProfile) -> Vec<SquareFreeMonomial> {
    (0..=profile.k())
        .rev()
        .map(|j| SquareFreeMonomial::range(profile.t[j], profile.it[j]).expect("t_j <= i_{t_j}"))
        .collect()
}

/// Ambient dimension all downstream computation uses: `i_s`.
pub fn reduce_variables(m: &SquareFreeMonomial) -> usize {
    m.max_index()
}

/// Associated primes of `sfBorel(m)`.
///
/// The size estimate is consulted first; if it already exceeds `cap` nothing
/// is enumerated and a truncated system carrying the estimate is returned.
pub fn associated_primes(m: &SquareFreeMonomial, cap: usize) -> Result<AssociatedPrimeSystem> {
    let profile = jump_profile(m);
    let predicted = PrimeCountEstimate::for_profile(&profile);
    let n_eff = reduce_variables(m);
    if predicted.exceeds(cap) {
        return Ok(AssociatedPrimeSystem {
            primes: Vec::new(),
            base_index: Vec::new(),
            n_eff,
            truncated: true,
            predicted: Some(predicted),
        });
    }

    let bases = fms_base_monomials(&profile);
    let gens = sfborel_generators(&bases, cap);
    if gens.truncated {
        let primes: Vec<PrimeSupport> = gens
            .monomials
            .iter()
            .map(|g| PrimeSupport::new(g.indices().to_vec()))
            .collect();
        return Ok(AssociatedPrimeSystem {
            base_index: vec![None; primes.len()],
            primes,
            n_eff,
            truncated: true,
            predicted: Some(predicted),
        });
    }

    let mut primes = Vec::with_capacity(gens.monomials.len());
    let mut base_index = Vec::with_capacity(gens.monomials.len());
    for g in &gens.monomials {
        let mut owners = (0..=profile.k())
            .filter(|&j| borel_dominates(g, &bases[profile.k() - j]));
        let j = owners
            .next()
            .ok_or_else(|| Error::Internal(format!("generator {g} is not a Borel move of any block")))?;
        if let Some(other) = owners.next() {
            return Err(Error::Internal(format!(
                "generator {g} is a Borel move of blocks {j} and {other}"
            )));
        }
        primes.push(PrimeSupport::new(g.indices().to_vec()));
        base_index.push(Some(j));
    }
    Ok(AssociatedPrimeSystem {
        primes,
        base_index,
        n_eff,
        truncated: false,
        predicted: Some(predicted),
    })
}

/// 0/1 incidence matrix of primes against variables `1..=n_vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeMatrix {
    pub rows: Vec<Vec<u8>>,
    pub n_vars: usize,
}

impl PrimeMatrix {
    /// 1-based column supports of each row.
    pub fn supports(&self) -> Vec<Vec<usize>> {
        self.rows
            .iter()
            .map(|r| (1..=self.n_vars).filter(|&c| r[c - 1] == 1).collect())
            .collect()
    }
}

pub fn prime_matrix(system: &AssociatedPrimeSystem) -> Result<PrimeMatrix> {
    if system.truncated {
        return Err(Error::Truncated);
    }
    let rows = system
        .primes
        .iter()
        .map(|p| {
            let mut row = vec![0u8; system.n_eff];
            for &v in p.variables() {
                if v > system.n_eff {
                    return Err(Error::Internal(format!("prime {p} exceeds n_eff = {}", system.n_eff)));
                }
                row[v - 1] = 1;
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PrimeMatrix {
        rows,
        n_vars: system.n_eff,
    })
}

/// Inclusion-minimal variable sets meeting every generator: the associated
/// primes of the square-free ideal the generators span. Exhaustive over all
/// subsets of `1..=n`.
pub fn minimal_cover_primes(gens: &GeneratorSet) -> Result<AssociatedPrimeSystem> {
    if gens.truncated {
        return Err(Error::Truncated);
    }
    let n = gens.n_vars();
    if n > MAX_COVER_ORACLE_VARS {
        return Err(Error::TooManyVariables {
            what: "cover oracle input",
            actual: n,
            limit: MAX_COVER_ORACLE_VARS,
        });
    }
    let edges: Vec<u32> = gens
        .monomials
        .iter()
        .map(|g| g.indices().iter().fold(0u32, |acc, &v| acc | 1 << (v - 1)))
        .collect();
    let covers = |mask: u32| edges.iter().all(|&e| e & mask != 0);

    let mut primes = Vec::new();
    for mask in 1u32..(1u32 << n) {
        if !covers(mask) {
            continue;
        }
        let minimal = (0..n)
            .filter(|b| mask & (1 << b) != 0)
            .all(|b| !covers(mask & !(1 << b)));
        if minimal {
            primes.push(PrimeSupport::new(
                (0..n).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect(),
            ));
        }
    }
    primes.sort_by(|a, b| (a.len(), a.variables()).cmp(&(b.len(), b.variables())));
    Ok(AssociatedPrimeSystem {
        base_index: vec![None; primes.len()],
        primes,
        n_eff: n,
        truncated: false,
        predicted: None,
    })
}
