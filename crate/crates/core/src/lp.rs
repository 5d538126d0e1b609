//! Exact rational solver for covering programs
//! `min 1'y  s.t.  A y >= 1, y >= 0` with `A` a 0/1 matrix.
//!
//! The solver runs the primal simplex on the packing dual
//! `max 1'z  s.t.  A'z <= 1, z >= 0`, which starts feasible at `z = 0` with
//! the slack basis. The covering optimum is read from the reduced costs of the
//! slack columns in the final tableau. Entering and leaving choices follow
//! Bland's rule, so the method terminates without perturbation.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::primes::PrimeMatrix;
use crate::rational::Rational;

pub const DEFAULT_MAX_ROWS: usize = 50_000;
pub const DEFAULT_MAX_COLS: usize = 2_000;
/// Pivot ceiling. Bland's rule cannot cycle, so hitting this means a bug.
pub const PIVOT_GUARD: usize = 10_000_000;

/// A covering program given by the 1-based column supports of its rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringLP {
    rows: Vec<Vec<usize>>,
    n_vars: usize,
}

impl CoveringLP {
    pub fn new(n_vars: usize, mut rows: Vec<Vec<usize>>) -> Result<Self> {
        if n_vars == 0 || rows.is_empty() {
            return Err(Error::EmptyProgram);
        }
        for (r, row) in rows.iter_mut().enumerate() {
            row.sort_unstable();
            row.dedup();
            if row.is_empty() {
                return Err(Error::EmptyRow(r));
            }
            if let Some(&c) = row.iter().find(|&&c| c == 0 || c > n_vars) {
                return Err(Error::ColumnOutOfRange {
                    row: r,
                    column: c,
                    n_vars,
                });
            }
        }
        Ok(Self { rows, n_vars })
    }

    /// From dense 0/1 rows; any nonzero entry counts as a one.
    pub fn from_dense<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let n_vars = rows.first().map_or(0, |r| r.as_ref().len());
        let mut supports = Vec::with_capacity(rows.len());
        for r in rows {
            let r = r.as_ref();
            if r.len() != n_vars {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {n_vars} columns",
                    r.len()
                )));
            }
            supports.push((1..=n_vars).filter(|&c| r[c - 1] != 0).collect());
        }
        Self::new(n_vars, supports)
    }

    pub fn from_prime_matrix(matrix: &PrimeMatrix) -> Result<Self> {
        Self::new(matrix.n_vars, matrix.supports())
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Same program with `extra` all-zero columns appended.
    pub fn with_extra_columns(&self, extra: usize) -> Self {
        Self {
            rows: self.rows.clone(),
            n_vars: self.n_vars + extra,
        }
    }
}

/// Optimal primal/dual pair of a covering program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LPSolution {
    pub value: Rational,
    /// Covering vector `y`, one entry per column.
    pub primal: Vec<Rational>,
    /// Packing vector `z`, one entry per row.
    pub dual: Vec<Rational>,
    pub pivots: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverLimits {
    pub max_rows: usize,
    pub max_cols: usize,
}

impl Default for SolverLimits {
    fn default() -> Self {
        Self {
            max_rows: DEFAULT_MAX_ROWS,
            max_cols: DEFAULT_MAX_COLS,
        }
    }
}

pub fn solve_covering_lp(lp: &CoveringLP) -> Result<LPSolution> {
    solve_covering_lp_with(lp, SolverLimits::default())
}

pub fn solve_covering_lp_with(lp: &CoveringLP, limits: SolverLimits) -> Result<LPSolution> {
    if lp.n_rows() > limits.max_rows || lp.n_vars() > limits.max_cols {
        return Err(Error::SolverCapExceeded {
            rows: lp.n_rows(),
            cols: lp.n_vars(),
            max_rows: limits.max_rows,
            max_cols: limits.max_cols,
        });
    }
    Tableau::new(lp).run()
}

/// Dense tableau of the packing problem. Row `c` is the constraint of
/// column `c` of `A`; tableau columns are `z_0..z_{R-1}` then slacks.
struct Tableau {
    n_packing: usize,
    body: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    /// Reduced costs in "objective row" form: optimal when none is negative.
    cost: Vec<Rational>,
    objective: Rational,
    basis: Vec<usize>,
}

impl Tableau {
    fn new(lp: &CoveringLP) -> Self {
        let n_rows = lp.n_vars();
        let n_packing = lp.n_rows();
        let width = n_packing + n_rows;
        let mut body = vec![vec![Rational::zero(); width]; n_rows];
        for (r, row) in lp.rows().iter().enumerate() {
            for &c in row {
                body[c - 1][r] = Rational::one();
            }
        }
        for (c, line) in body.iter_mut().enumerate() {
            line[n_packing + c] = Rational::one();
        }
        let mut cost = vec![Rational::zero(); width];
        for v in cost.iter_mut().take(n_packing) {
            *v = -Rational::one();
        }
        Self {
            n_packing,
            body,
            rhs: vec![Rational::one(); n_rows],
            cost,
            objective: Rational::zero(),
            basis: (n_packing..width).collect(),
        }
    }

    fn run(mut self) -> Result<LPSolution> {
        let mut pivots = 0;
        while let Some(enter) = self.cost.iter().position(|c| c.is_negative()) {
            let leave = self.ratio_test(enter).ok_or_else(|| {
                Error::Internal("packing problem reported unbounded; every row must be nonzero".into())
            })?;
            self.pivot(leave, enter);
            pivots += 1;
            if pivots > PIVOT_GUARD {
                return Err(Error::PivotGuard(pivots));
            }
        }

        let n_rows = self.body.len();
        let primal: Vec<Rational> = (0..n_rows).map(|c| self.cost[self.n_packing + c].clone()).collect();
        let mut dual = vec![Rational::zero(); self.n_packing];
        for (row, &b) in self.basis.iter().enumerate() {
            if b < self.n_packing {
                dual[b] = self.rhs[row].clone();
            }
        }
        Ok(LPSolution {
            value: self.objective,
            primal,
            dual,
            pivots,
        })
    }

    /// Minimum ratio row; ties go to the smallest basic variable index.
    fn ratio_test(&self, enter: usize) -> Option<usize> {
        let mut best: Option<(usize, Rational)> = None;
        for (row, line) in self.body.iter().enumerate() {
            let a = &line[enter];
            if !a.is_positive() {
                continue;
            }
            let ratio = &self.rhs[row] / a;
            let better = match &best {
                None => true,
                Some((b, r)) => ratio < *r || (ratio == *r && self.basis[row] < self.basis[*b]),
            };
            if better {
                best = Some((row, ratio));
            }
        }
        best.map(|(row, _)| row)
    }

    fn pivot(&mut self, leave: usize, enter: usize) {
        let p = self.body[leave][enter].clone();
        if !p.is_one() {
            for v in self.body[leave].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
            self.rhs[leave] /= &p;
        }
        let pivot_row = self.body[leave].clone();
        let pivot_rhs = self.rhs[leave].clone();
        let nonzero: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();

        for row in 0..self.body.len() {
            if row == leave {
                continue;
            }
            let f = self.body[row][enter].clone();
            if f.is_zero() {
                continue;
            }
            let line = &mut self.body[row];
            for &j in &nonzero {
                line[j] -= &f * &pivot_row[j];
            }
            self.rhs[row] -= &f * &pivot_rhs;
        }
        let f = self.cost[enter].clone();
        if !f.is_zero() {
            for &j in &nonzero {
                self.cost[j] -= &f * &pivot_row[j];
            }
            self.objective -= &f * &pivot_rhs;
        }
        self.basis[leave] = enter;
    }
}

/// Re-checks primal feasibility, dual feasibility and equality of both
/// objectives with the reported value, all in exact arithmetic.
pub fn verify_certificates(lp: &CoveringLP, sol: &LPSolution) -> Result<bool> {
    if sol.primal.len() != lp.n_vars() {
        return Err(Error::DimensionMismatch(format!(
            "primal has {} entries for {} columns",
            sol.primal.len(),
            lp.n_vars()
        )));
    }
    if sol.dual.len() != lp.n_rows() {
        return Err(Error::DimensionMismatch(format!(
            "dual has {} entries for {} rows",
            sol.dual.len(),
            lp.n_rows()
        )));
    }
    let zero = Rational::zero();
    let one = Rational::one();

    if sol.primal.iter().any(|y| *y < zero) || sol.dual.iter().any(|z| *z < zero) {
        return Ok(false);
    }
    let covered = lp
        .rows()
        .iter()
        .all(|row| row.iter().map(|&c| &sol.primal[c - 1]).sum::<Rational>() >= one);
    if !covered {
        return Ok(false);
    }
    let mut load = vec![Rational::zero(); lp.n_vars()];
    for (row, z) in lp.rows().iter().zip(&sol.dual) {
        for &c in row {
            load[c - 1] += z;
        }
    }
    if load.iter().any(|l| *l > one) {
        return Ok(false);
    }
    let primal_sum: Rational = sol.primal.iter().sum();
    let dual_sum: Rational = sol.dual.iter().sum();
    Ok(primal_sum == sol.value && dual_sum == sol.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn triangle() -> CoveringLP {
        CoveringLP::from_dense(&[[1u8, 1, 0], [1, 0, 1], [0, 1, 1]]).unwrap()
    }

    fn identity(n: usize) -> CoveringLP {
        CoveringLP::new(n, (1..=n).map(|c| vec![c]).collect()).unwrap()
    }

    #[test]
    fn triangle_optimum() {
        let lp = triangle();
        let sol = solve_covering_lp(&lp).unwrap();
        assert_eq!(sol.value, ratio(3, 2));
        assert_eq!(sol.primal, vec![ratio(1, 2); 3]);
        assert!(verify_certificates(&lp, &sol).unwrap());
    }

    #[test]
    fn identity_optimum() {
        let lp = identity(3);
        let sol = solve_covering_lp(&lp).unwrap();
        assert_eq!(sol.value, int(3));
        assert_eq!(sol.primal, vec![int(1); 3]);
        assert!(verify_certificates(&lp, &sol).unwrap());
    }

    #[test]
    fn single_full_row() {
        let lp = CoveringLP::from_dense(&[[1u8, 1, 1, 1]]).unwrap();
        let sol = solve_covering_lp(&lp).unwrap();
        assert_eq!(sol.value, int(1));
        assert!(verify_certificates(&lp, &sol).unwrap());
    }

    #[test]
    fn verification_catches_bad_certificates() {
        let lp = triangle();
        let gap = LPSolution {
            value: ratio(3, 2),
            primal: vec![ratio(1, 2); 3],
            dual: vec![int(0); 3],
            pivots: 0,
        };
        assert!(!verify_certificates(&lp, &gap).unwrap());

        let lp = identity(3);
        let infeasible = LPSolution {
            value: int(2),
            primal: vec![int(1), int(1), int(0)],
            dual: vec![int(1), int(1), int(0)],
            pivots: 0,
        };
        assert!(!verify_certificates(&lp, &infeasible).unwrap());

        let short = LPSolution {
            value: int(2),
            primal: vec![int(1), int(1)],
            dual: vec![int(1), int(1), int(0)],
            pivots: 0,
        };
        assert!(matches!(
            verify_certificates(&lp, &short),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(CoveringLP::new(0, vec![vec![1]]), Err(Error::EmptyProgram));
        assert_eq!(CoveringLP::new(2, vec![]), Err(Error::EmptyProgram));
        assert_eq!(CoveringLP::new(2, vec![vec![1], vec![]]), Err(Error::EmptyRow(1)));
        assert!(matches!(
            CoveringLP::new(2, vec![vec![3]]),
            Err(Error::ColumnOutOfRange { column: 3, .. })
        ));
        assert!(matches!(
            CoveringLP::from_dense(&[vec![1u8, 0], vec![1]]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn solver_cap() {
        let lp = identity(5);
        let limits = SolverLimits {
            max_rows: 4,
            max_cols: 10,
        };
        assert!(matches!(
            solve_covering_lp_with(&lp, limits),
            Err(Error::SolverCapExceeded { .. })
        ));
    }

    #[test]
    fn zero_column_gets_zero_weight() {
        let lp = triangle().with_extra_columns(2);
        let sol = solve_covering_lp(&lp).unwrap();
        assert_eq!(sol.value, ratio(3, 2));
        assert!(sol.primal[3].is_zero() && sol.primal[4].is_zero());
    }
}
