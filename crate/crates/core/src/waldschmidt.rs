//! Waldschmidt constants of `sfBorel(m)`: the exact LP value, the closed form,
//! the segment-vector and coarse upper bounds, the recursive lower bound, the
//! last-variable shift and the construction realizing a given rational.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lp::{solve_covering_lp, verify_certificates, CoveringLP, LPSolution};
use crate::monomial::{jump_profile, JumpProfile, SquareFreeMonomial};
use crate::primes::{associated_primes, prime_matrix, AssociatedPrimeSystem, PrimeCountEstimate};
use crate::rational::{from_usize, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Solved covering LP over the full matrix of associated primes.
    LpExact,
    /// `1 + (s-1)/(i_{t_k} - t_k + 1)`, valid when `t_0 <= i_{t_k}`.
    ClosedForm,
    /// Sum of the explicit block-constant covering vector.
    SegmentUpper,
    /// `(t_0 - t_ell + i_{t_ell}) / (i_{t_k} - t_k + 1)`.
    CoarseUpper,
    /// Recursion on the prefix `x_{i_1} ... x_{i_{t_{ell+1}}}`.
    RecursiveLower,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::LpExact => "lp-exact",
            Method::ClosedForm => "closed-form",
            Method::SegmentUpper => "segment-upper",
            Method::CoarseUpper => "coarse-upper",
            Method::RecursiveLower => "recursive-lower",
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Method::LpExact | Method::ClosedForm)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub value: Rational,
    pub method: Method,
    pub certificate: Option<LPSolution>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundInterval {
    pub lower: Rational,
    pub upper: Rational,
    pub lower_method: Method,
    pub upper_method: Method,
}

impl BoundInterval {
    pub fn new(lower: Rational, lower_method: Method, upper: Rational, upper_method: Method) -> Result<Self> {
        if lower > upper {
            return Err(Error::Internal(format!("bound interval inverted: {lower} > {upper}")));
        }
        if (lower_method.is_exact() || upper_method.is_exact()) && lower != upper {
            return Err(Error::Internal("exact method on a non-degenerate interval".into()));
        }
        Ok(Self {
            lower,
            upper,
            lower_method,
            upper_method,
        })
    }
}

/// Outcome of the automatic method selection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Estimate {
    Exact(ExactResult),
    Interval(BoundInterval),
}

fn width(profile: &JumpProfile, j: usize) -> Rational {
    from_usize(profile.block_width(j))
}

/// Exact value from the covering LP on the associated primes, in `i_s` variables.
pub fn waldschmidt_lp(m: &SquareFreeMonomial, cap: usize) -> Result<ExactResult> {
    let system = associated_primes(m, cap)?;
    waldschmidt_lp_from_system(&system, cap)
}

/// Solves the covering LP of an already enumerated prime system.
pub fn waldschmidt_lp_from_system(system: &AssociatedPrimeSystem, cap: usize) -> Result<ExactResult> {
    if system.truncated {
        return Err(Error::EnumerationCapExceeded {
            predicted: system.predicted.clone().unwrap_or(PrimeCountEstimate {
                terms: Vec::new(),
                value: None,
            }),
            cap,
        });
    }
    let lp = CoveringLP::from_prime_matrix(&prime_matrix(system)?)?;
    let sol = solve_covering_lp(&lp)?;
    if !verify_certificates(&lp, &sol)? {
        return Err(Error::Internal("solver returned certificates that do not verify".into()));
    }
    Ok(ExactResult {
        value: sol.value.clone(),
        method: Method::LpExact,
        certificate: Some(sol),
    })
}

/// `(t_0 - t_ell)/D_ell + sum_{j=ell}^{k-1} (i_{t_j} - i_{t_{j+1}})/D_j + i_{t_k}/D_k`
/// with `D_j = i_{t_j} - t_j + 1`.
pub fn upper_bound(m: &SquareFreeMonomial) -> Rational {
    upper_bound_for(&jump_profile(m))
}

pub fn upper_bound_for(p: &JumpProfile) -> Rational {
    let (k, ell) = (p.k(), p.ell);
    let mut total = from_usize(p.t[0] - p.t[ell]) / width(p, ell);
    for j in ell..k {
        total += from_usize(p.it[j] - p.it[j + 1]) / width(p, j);
    }
    total + from_usize(p.it[k]) / width(p, k)
}

/// `(t_0 - t_ell + i_{t_ell}) / (i_{t_k} - t_k + 1)`.
pub fn coarse_upper_bound(m: &SquareFreeMonomial) -> Rational {
    let p = jump_profile(m);
    from_usize(p.t[0] - p.t[p.ell] + p.it[p.ell]) / width(&p, p.k())
}

/// `1 + (s - 1)/(i_{t_k} - t_k + 1)` when `t_0 <= i_{t_k}`, otherwise `None`.
pub fn exact_formula(m: &SquareFreeMonomial) -> Option<ExactResult> {
    closed_form_for(&jump_profile(m)).map(|value| ExactResult {
        value,
        method: Method::ClosedForm,
        certificate: None,
    })
}

fn closed_form_for(p: &JumpProfile) -> Option<Rational> {
    if !p.is_closed_form() {
        return None;
    }
    Some(Rational::one() + from_usize(p.degree() - 1) / width(p, p.k()))
}

/// Recursive lower bound. When `ell < k`, with `nu = i_{t_{ell+1}} + 1`:
/// `lower(m) = lower(x_{i_1}...x_{i_{t_{ell+1}}}) + 1 + (t_0 - nu)/(i_nu - nu + 1)`,
/// where `i_nu` is read from `m` itself. Bottoms out in the closed form.
pub fn lower_bound(m: &SquareFreeMonomial) -> Rational {
    let mut current = m.clone();
    let mut total = Rational::zero();
    loop {
        let p = jump_profile(&current);
        if let Some(base) = closed_form_for(&p) {
            return total + base;
        }
        let nu = p.nu.expect("nu exists whenever ell < k");
        let t0 = p.t[0];
        let i_nu = current.index_at(nu);
        total += Rational::one() + from_usize(t0 - nu) / from_usize(i_nu - nu + 1);
        current = current
            .prefix(p.t[p.ell + 1])
            .expect("prefix of positive length");
    }
}

/// `m` with its last index `i_s` moved to `i_s + r`.
pub fn shift_last(m: &SquareFreeMonomial, r: usize) -> SquareFreeMonomial {
    let mut ix = m.indices().to_vec();
    *ix.last_mut().expect("nonempty") += r;
    SquareFreeMonomial::new(ix).expect("raising the last index keeps the support increasing")
}

/// A monomial whose square-free principal Borel ideal has Waldschmidt
/// constant `a/b`: `x_1` for `a/b = 1`, otherwise `x_b x_{b+1} ... x_a`
/// after reducing the fraction.
pub fn construct_for_rational(a: i64, b: i64) -> Result<SquareFreeMonomial> {
    if a <= 0 || b <= 0 || a < b {
        return Err(Error::InvalidTarget {
            numerator: a,
            denominator: b,
        });
    }
    let g = a.gcd(&b);
    let (a, b) = ((a / g) as usize, (b / g) as usize);
    if a == b {
        SquareFreeMonomial::new(vec![1])
    } else {
        SquareFreeMonomial::range(b, a)
    }
}

/// The explicit covering vector behind [`upper_bound`], constant on blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperBoundCertificate {
    /// `y_1 .. y_{i_s}`.
    pub y: Vec<Rational>,
    /// `i_{t_ell} - t_ell + 1`.
    pub a: Rational,
    /// `(first, last, value)` for each constant block, 1-based inclusive,
    /// in increasing position order.
    pub segment_values: Vec<(usize, usize, Rational)>,
    pub bound: Rational,
}

impl UpperBoundCertificate {
    /// `y_first + ... + y_last` for a 1-based inclusive range.
    fn window(&self, first: usize, last: usize) -> Rational {
        self.y[first - 1..last].iter().sum()
    }
}

/// Builds the block vector and checks, exactly, that it covers each
/// diagonal block row, is nonincreasing on `1..=i_{t_ell}`, peaks at
/// `i_{t_ell}` on the tail, and sums to [`upper_bound`].
///
/// Those three conditions imply `A y >= 1` for the full matrix of associated
/// primes without enumerating it. Any failure is an internal error.
pub fn upper_bound_certificate(m: &SquareFreeMonomial) -> Result<UpperBoundCertificate> {
    let p = jump_profile(m);
    let (k, ell) = (p.k(), p.ell);
    let a = width(&p, ell);

    let mut segments = vec![(1, p.it[k], Rational::one() / width(&p, k))];
    for j in (0..k).rev() {
        let (first, last) = (p.it[j + 1] + 1, p.it[j]);
        let value = if j >= ell {
            Rational::one() / width(&p, j)
        } else {
            from_usize(p.t[j] - p.t[j + 1]) / (from_usize(p.it[j] - p.it[j + 1]) * &a)
        };
        segments.push((first, last, value));
    }

    let n = m.max_index();
    let mut y = Vec::with_capacity(n);
    for (first, last, v) in &segments {
        y.extend(std::iter::repeat_n(v.clone(), last - first + 1));
    }
    let cert = UpperBoundCertificate {
        bound: y.iter().sum(),
        y,
        a,
        segment_values: segments,
    };

    if cert.y.len() != n {
        return Err(Error::Internal(format!("segments cover {} of {n} positions", cert.y.len())));
    }
    let one = Rational::one();
    for j in 0..=k {
        if cert.window(p.t[j], p.it[j]) < one {
            return Err(Error::Internal(format!("block row {j} is not covered")));
        }
    }
    let peak = p.it[ell];
    for j in 1..peak.min(n) {
        if cert.y[j - 1] < cert.y[j] {
            return Err(Error::Internal(format!("y increases at position {j}")));
        }
    }
    if cert.y[peak - 1..].iter().any(|v| *v > cert.y[peak - 1]) {
        return Err(Error::Internal("tail exceeds y at i_(t_ell)".into()));
    }
    let expected = upper_bound_for(&p);
    if cert.bound != expected {
        return Err(Error::Internal(format!(
            "certificate sums to {} but the bound is {expected}",
            cert.bound
        )));
    }
    Ok(cert)
}

/// Closed form when it applies, otherwise the LP when the predicted prime
/// count fits `cap`, otherwise the interval between the recursive lower bound
/// and the segment upper bound.
pub fn waldschmidt_auto(m: &SquareFreeMonomial, cap: usize) -> Result<Estimate> {
    if let Some(exact) = exact_formula(m) {
        return Ok(Estimate::Exact(exact));
    }
    match waldschmidt_lp(m, cap) {
        Ok(exact) => Ok(Estimate::Exact(exact)),
        Err(Error::EnumerationCapExceeded { .. } | Error::SolverCapExceeded { .. }) => {
            bound_interval(m).map(Estimate::Interval)
        }
        Err(e) => Err(e),
    }
}

pub fn bound_interval(m: &SquareFreeMonomial) -> Result<BoundInterval> {
    if let Some(exact) = exact_formula(m) {
        return BoundInterval::new(exact.value.clone(), Method::ClosedForm, exact.value, Method::ClosedForm);
    }
    BoundInterval::new(
        lower_bound(m),
        Method::RecursiveLower,
        upper_bound(m),
        Method::SegmentUpper,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{parse_monomial, DEFAULT_ENUMERATION_CAP};
    use crate::rational::{int, ratio};

    fn mono(text: &str) -> SquareFreeMonomial {
        parse_monomial(text).unwrap()
    }

    const FINAL: &str = "3..5,8..10,48..50,98..100";

    #[test]
    fn lp_values() {
        let r = waldschmidt_lp(&mono("2,3,5,6,8,10"), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(r.value, ratio(19, 6));
        assert_eq!(r.method, Method::LpExact);
        assert!(r.certificate.is_some());
        assert_eq!(waldschmidt_lp(&mono("2,3"), DEFAULT_ENUMERATION_CAP).unwrap().value, ratio(3, 2));
        assert_eq!(waldschmidt_lp(&mono("1..4"), DEFAULT_ENUMERATION_CAP).unwrap().value, int(4));
    }

    #[test]
    fn lp_refuses_pi_monomial() {
        let err = waldschmidt_lp(&mono("33215..104348"), DEFAULT_ENUMERATION_CAP).unwrap_err();
        assert!(err.to_string().contains("C(104348,33215)"), "{err}");
    }

    #[test]
    fn upper_bounds() {
        assert_eq!(upper_bound(&mono("2,3,5,6,8,10")), ratio(19, 6));
        assert_eq!(upper_bound(&mono(FINAL)), ratio(155, 42));
        assert_eq!(upper_bound(&mono("33215..104348")), ratio(104348, 33215));
    }

    #[test]
    fn coarse_bounds() {
        assert_eq!(coarse_upper_bound(&mono("2,3,5,6,8,10")), int(4));
        assert_eq!(coarse_upper_bound(&mono("33215..104348")), ratio(104348, 33215));
        assert_eq!(coarse_upper_bound(&mono("1")), int(1));
    }

    #[test]
    fn closed_form() {
        let pi = exact_formula(&mono("33215..104348")).unwrap();
        assert_eq!(pi.value, ratio(104348, 33215));
        assert_eq!(pi.method, Method::ClosedForm);
        assert_eq!(exact_formula(&mono("2,3")).unwrap().value, ratio(3, 2));
        assert!(exact_formula(&mono("2,3,5,6,8,10")).is_none());
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(lower_bound(&mono(FINAL)), ratio(982, 267));
        assert_eq!(lower_bound(&mono("3..5,8..10")), ratio(8, 3));
        assert_eq!(lower_bound(&mono("3..5")), ratio(5, 3));
        assert_eq!(lower_bound(&mono("33215..104348")), ratio(104348, 33215));
    }

    #[test]
    fn certificate_for_worked_example() {
        let cert = upper_bound_certificate(&mono("2,3,5,6,8,10")).unwrap();
        assert_eq!(
            cert.segment_values,
            vec![
                (1, 3, ratio(1, 2)),
                (4, 6, ratio(1, 3)),
                (7, 8, ratio(1, 6)),
                (9, 10, ratio(1, 6)),
            ]
        );
        assert_eq!(cert.a, int(3));
        assert_eq!(cert.bound, ratio(19, 6));
    }

    #[test]
    fn certificate_degenerate_cases() {
        let cert = upper_bound_certificate(&mono("1")).unwrap();
        assert_eq!(cert.y, vec![int(1)]);
        assert_eq!(cert.bound, int(1));

        let cert = upper_bound_certificate(&mono("33215..104348")).unwrap();
        assert_eq!(cert.segment_values, vec![(1, 104348, ratio(1, 33215))]);
        assert_eq!(cert.bound, ratio(104348, 33215));
    }

    #[test]
    fn rational_construction() {
        assert_eq!(construct_for_rational(104348, 33215).unwrap(), mono("33215..104348"));
        assert_eq!(construct_for_rational(1, 1).unwrap(), mono("1"));
        assert_eq!(construct_for_rational(6, 6).unwrap(), mono("1"));
        assert_eq!(construct_for_rational(14, 8).unwrap(), mono("4..7"));
        let seven_fourths = waldschmidt_lp(&mono("4..7"), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(seven_fourths.value, ratio(7, 4));
        assert!(construct_for_rational(3, 4).is_err());
        assert!(construct_for_rational(0, 1).is_err());
        assert!(construct_for_rational(3, -1).is_err());
    }

    #[test]
    fn last_variable_shift() {
        assert_eq!(shift_last(&mono("2,3,5,6,8,10"), 1), mono("2,3,5,6,8,11"));
        assert_eq!(shift_last(&mono("2,3"), 0), mono("2,3"));
        let shifted = shift_last(&mono("2,3"), 2);
        assert_eq!(shifted, mono("2,5"));
        assert_eq!(waldschmidt_lp(&shifted, DEFAULT_ENUMERATION_CAP).unwrap().value, ratio(3, 2));
    }

    #[test]
    fn auto_selection() {
        match waldschmidt_auto(&mono("33215..104348"), DEFAULT_ENUMERATION_CAP).unwrap() {
            Estimate::Exact(r) => {
                assert_eq!(r.value, ratio(104348, 33215));
                assert_eq!(r.method, Method::ClosedForm);
            }
            other => panic!("unexpected {other:?}"),
        }
        match waldschmidt_auto(&mono("2,3,5,6,8,10"), DEFAULT_ENUMERATION_CAP).unwrap() {
            Estimate::Exact(r) => {
                assert_eq!(r.value, ratio(19, 6));
                assert_eq!(r.method, Method::LpExact);
            }
            other => panic!("unexpected {other:?}"),
        }
        match waldschmidt_auto(&mono(FINAL), DEFAULT_ENUMERATION_CAP).unwrap() {
            Estimate::Interval(b) => {
                assert_eq!(b.lower, ratio(982, 267));
                assert_eq!(b.upper, ratio(155, 42));
                assert_eq!(b.lower_method, Method::RecursiveLower);
                assert_eq!(b.upper_method, Method::SegmentUpper);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn interval_invariants() {
        assert!(BoundInterval::new(int(2), Method::RecursiveLower, int(1), Method::SegmentUpper).is_err());
        assert!(BoundInterval::new(int(1), Method::LpExact, int(2), Method::SegmentUpper).is_err());
        assert!(BoundInterval::new(int(1), Method::LpExact, int(1), Method::LpExact).is_ok());
    }
}
