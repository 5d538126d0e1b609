use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde_json::{json, Map, Value};
use sfborel::primes::{PrimeCountEstimate, MAX_COVER_ORACLE_VARS};
use sfborel::rational::{parse_fraction, to_decimal, to_fraction_string};
use sfborel::symbolic::convergence_report_with;
use sfborel::*;

use crate::AlphaMethod;

/// Largest predicted prime count for which `construct` runs a confirming LP.
const CONFIRM_LIMIT: u128 = 5_000;

const APPROX_DIGITS: usize = 12;

pub struct Options {
    pub cap: usize,
    pub approx: bool,
}

/// Rows for csv and text rendering of tabular payloads.
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub struct CommandResult {
    pub command: &'static str,
    pub input: String,
    pub payload: Value,
    pub errors: Vec<String>,
    pub table: Option<Table>,
}

impl CommandResult {
    fn ok(command: &'static str, input: String, payload: Value) -> Self {
        CommandResult { command, input, payload, errors: Vec::new(), table: None }
    }

    fn failed(command: &'static str, input: &str, err: impl ToString) -> Self {
        CommandResult {
            command,
            input: input.trim().to_string(),
            payload: Value::Null,
            errors: vec![err.to_string()],
            table: None,
        }
    }

    pub fn envelope(&self) -> Value {
        json!({
            "command": self.command,
            "input": self.input,
            "payload": self.payload,
            "errors": self.errors,
        })
    }
}

fn frac(r: &Rational) -> Value {
    Value::String(to_fraction_string(r))
}

fn with_approx(mut payload: Value, opts: &Options, fields: &[(&str, &Rational)]) -> Value {
    if opts.approx {
        let approx: Map<String, Value> = fields
            .iter()
            .map(|(k, r)| (k.to_string(), Value::String(to_decimal(r, APPROX_DIGITS))))
            .collect();
        payload["approx"] = Value::Object(approx);
    }
    payload
}

pub fn profile(text: &str) -> CommandResult {
    let m = match parse_monomial(text) {
        Ok(m) => m,
        Err(e) => return CommandResult::failed("profile", text, e),
    };
    let p = jump_profile(&m);
    let payload = json!({
        "degree": m.degree(),
        "n_eff": reduce_variables(&m),
        "t": p.t,
        "it": p.it,
        "ell": p.ell,
        "nu": p.nu,
        "nu_block": p.nu_block(),
        "closed_form": p.is_closed_form(),
    });
    CommandResult::ok("profile", m.canonical_text(), payload)
}

pub fn gens(text: &str, opts: &Options) -> CommandResult {
    let m = match parse_monomial(text) {
        Ok(m) => m,
        Err(e) => return CommandResult::failed("gens", text, e),
    };
    let gens = sfborel_generators(std::slice::from_ref(&m), opts.cap);
    let listed: Vec<String> = gens.monomials.iter().map(|g| g.canonical_text()).collect();
    let mut result = CommandResult::ok(
        "gens",
        m.canonical_text(),
        json!({ "count": listed.len(), "truncated": gens.truncated, "generators": listed }),
    );
    if gens.truncated {
        result.errors.push(Error::Truncated.to_string());
    }
    result
}

pub fn primes(text: &str, verify_cover: bool, opts: &Options) -> CommandResult {
    let m = match parse_monomial(text) {
        Ok(m) => m,
        Err(e) => return CommandResult::failed("primes", text, e),
    };
    let sys = match associated_primes(&m, opts.cap) {
        Ok(sys) => sys,
        Err(e) => return CommandResult::failed("primes", &m.canonical_text(), e),
    };
    let predicted = sys
        .predicted
        .clone()
        .unwrap_or_else(|| PrimeCountEstimate::for_profile(&jump_profile(&m)));
    let mut errors = Vec::new();
    let mut cover = Value::Null;
    if verify_cover {
        if sys.truncated {
            errors.push(format!("cannot verify a truncated system: {}", Error::Truncated));
        } else if sys.n_eff > MAX_COVER_ORACLE_VARS {
            errors.push(
                Error::TooManyVariables {
                    what: "vertex-cover enumeration",
                    actual: sys.n_eff,
                    limit: MAX_COVER_ORACLE_VARS,
                }
                .to_string(),
            );
        } else {
            let gens = sfborel_generators(std::slice::from_ref(&m), opts.cap);
            match minimal_cover_primes(&gens) {
                Ok(oracle) => {
                    let agrees = oracle.sorted_primes() == sys.sorted_primes();
                    if !agrees {
                        errors.push("block-derived primes differ from minimal vertex covers".into());
                    }
                    cover = Value::Bool(agrees);
                }
                Err(e) => errors.push(e.to_string()),
            }
        }
    }
    let listed: Vec<Vec<usize>> = if sys.truncated {
        Vec::new()
    } else {
        sys.sorted_primes().iter().map(|p| p.variables().to_vec()).collect()
    };
    let payload = json!({
        "n_eff": sys.n_eff,
        "truncated": sys.truncated,
        "predicted": predicted.to_string(),
        "count": listed.len(),
        "primes": listed,
        "cover_verified": cover,
    });
    CommandResult { errors, ..CommandResult::ok("primes", m.canonical_text(), payload) }
}

fn exact_payload(r: &ExactResult, opts: &Options) -> Value {
    let certificate = match &r.certificate {
        Some(sol) => json!({
            "kind": "lp-duality",
            "pivots": sol.pivots,
            "rows": sol.dual.len(),
            "cols": sol.primal.len(),
            "verified": true,
        }),
        None => Value::Null,
    };
    let payload = json!({
        "kind": "exact",
        "value": frac(&r.value),
        "method": r.method.tag(),
        "certificate": certificate,
    });
    with_approx(payload, opts, &[("value", &r.value)])
}

fn interval_payload(b: &BoundInterval, opts: &Options) -> Value {
    let payload = json!({
        "kind": "interval",
        "lower": frac(&b.lower),
        "upper": frac(&b.upper),
        "lower_method": b.lower_method.tag(),
        "upper_method": b.upper_method.tag(),
    });
    with_approx(payload, opts, &[("lower", &b.lower), ("upper", &b.upper)])
}

fn alpha_payload(m: &SquareFreeMonomial, method: AlphaMethod, opts: &Options) -> Result<Value> {
    Ok(match method {
        AlphaMethod::Auto => match waldschmidt_auto(m, opts.cap)? {
            Estimate::Exact(r) => exact_payload(&r, opts),
            Estimate::Interval(b) => interval_payload(&b, opts),
        },
        AlphaMethod::Lp => exact_payload(&waldschmidt_lp(m, opts.cap)?, opts),
        AlphaMethod::Formula => {
            let p = jump_profile(m);
            let r = exact_formula(m).ok_or(Error::FormulaInapplicable {
                t0: p.t[0],
                itk: p.it[p.k()],
            })?;
            exact_payload(&r, opts)
        }
        AlphaMethod::Interval => interval_payload(&bound_interval(m)?, opts),
        AlphaMethod::Upper => {
            let cert = upper_bound_certificate(m)?;
            let segments: Vec<Value> = cert
                .segment_values
                .iter()
                .map(|(first, last, v)| json!({ "first": first, "last": last, "value": frac(v) }))
                .collect();
            let payload = json!({
                "kind": "upper-bound",
                "value": frac(&cert.bound),
                "method": Method::SegmentUpper.tag(),
                "certificate": { "kind": "segment-vector", "segments": segments, "verified": true },
            });
            with_approx(payload, opts, &[("value", &cert.bound)])
        }
        AlphaMethod::Lower => {
            let v = lower_bound(m);
            let payload = json!({
                "kind": "lower-bound",
                "value": frac(&v),
                "method": Method::RecursiveLower.tag(),
                "certificate": Value::Null,
            });
            with_approx(payload, opts, &[("value", &v)])
        }
    })
}

pub fn alpha(text: &str, method: AlphaMethod, opts: &Options) -> CommandResult {
    let m = match parse_monomial(text) {
        Ok(m) => m,
        Err(e) => return CommandResult::failed("alpha", text, e),
    };
    match alpha_payload(&m, method, opts) {
        Ok(payload) => CommandResult::ok("alpha", m.canonical_text(), payload),
        Err(e) => CommandResult::failed("alpha", &m.canonical_text(), e),
    }
}

fn small_parts(r: &Rational) -> Option<(i64, i64)> {
    Some((r.numer().to_string().parse().ok()?, r.denom().to_string().parse().ok()?))
}

pub fn construct(text: &str, opts: &Options) -> CommandResult {
    let target = match parse_fraction(text.trim()) {
        Ok(r) => r,
        Err(e) => return CommandResult::failed("construct", text, e),
    };
    let input = to_fraction_string(&target);
    let Some((a, b)) = small_parts(&target) else {
        return CommandResult::failed("construct", &input, "target does not fit in 64-bit integers");
    };
    let m = match construct_for_rational(a, b) {
        Ok(m) => m,
        Err(e) => return CommandResult::failed("construct", &input, e),
    };
    let mut errors = Vec::new();
    let estimate = PrimeCountEstimate::for_profile(&jump_profile(&m));
    let small = matches!(estimate.value, Some(n) if n <= CONFIRM_LIMIT && n <= opts.cap as u128);
    let confirmation = if small {
        match waldschmidt_lp(&m, opts.cap) {
            Ok(r) => {
                let agrees = r.value == target;
                if !agrees {
                    errors.push(format!("LP value {} differs from target", to_fraction_string(&r.value)));
                }
                json!({ "value": frac(&r.value), "method": r.method.tag(), "agrees": agrees })
            }
            Err(e) => {
                errors.push(e.to_string());
                Value::Null
            }
        }
    } else {
        Value::Null
    };
    let payload = json!({
        "target": frac(&target),
        "monomial": m.canonical_text(),
        "degree": m.degree(),
        "predicted_primes": estimate.to_string(),
        "confirmation": confirmation,
    });
    let payload = with_approx(payload, opts, &[("target", &target)]);
    CommandResult { errors, ..CommandResult::ok("construct", input, payload) }
}

pub fn oracle(text: &str, smax: u32, budget: u64, opts: &Options) -> CommandResult {
    let m = match parse_monomial(text) {
        Ok(m) => m,
        Err(e) => return CommandResult::failed("oracle", text, e),
    };
    let report = match convergence_report_with(&m, smax, opts.cap, budget) {
        Ok(r) => r,
        Err(e) => return CommandResult::failed("oracle", &m.canonical_text(), e),
    };
    let mut errors = Vec::new();
    let mut rows = Vec::new();
    let mut table = Vec::new();
    for row in &report.rows {
        match &row.outcome {
            Ok((alpha, ratio)) => {
                let mut v = json!({
                    "s": row.s,
                    "alpha": alpha,
                    "ratio": frac(ratio),
                    "below_reference": row.below_reference,
                    "error": Value::Null,
                });
                if opts.approx {
                    v["ratio_approx"] = Value::String(to_decimal(ratio, APPROX_DIGITS));
                }
                rows.push(v);
                table.push(vec![
                    row.s.to_string(),
                    alpha.to_string(),
                    to_fraction_string(ratio),
                    row.below_reference.to_string(),
                    String::new(),
                ]);
            }
            Err(e) => {
                errors.push(format!("s = {}: {e}", row.s));
                rows.push(json!({
                    "s": row.s,
                    "alpha": Value::Null,
                    "ratio": Value::Null,
                    "below_reference": false,
                    "error": e.to_string(),
                }));
                table.push(vec![row.s.to_string(), String::new(), String::new(), String::new(), e.to_string()]);
            }
        }
    }
    let payload = json!({
        "reference": frac(&report.reference),
        "rows": rows,
        "subadditivity_violations": report.subadditivity_violations(),
    });
    let payload = with_approx(payload, opts, &[("reference", &report.reference)]);
    CommandResult {
        errors,
        table: Some(Table {
            headers: vec!["s", "alpha", "ratio", "below_reference", "error"],
            rows: table,
        }),
        ..CommandResult::ok("oracle", m.canonical_text(), payload)
    }
}

struct BatchRow {
    line: usize,
    input: String,
    outcome: std::result::Result<Estimate, Error>,
}

pub fn batch(path: &Path, opts: &Options) -> CommandResult {
    let shown = path.display().to_string();
    let content = match fs::read_to_string(path) {
        Ok(c) => c,
        Err(e) => return CommandResult::failed("batch", &shown, format!("cannot read {shown}: {e}")),
    };
    let lines: Vec<(usize, &str)> = content
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let results: Vec<BatchRow> = lines
        .par_iter()
        .map(|&(line, text)| match parse_monomial(text) {
            Ok(m) => BatchRow {
                line,
                input: m.canonical_text(),
                outcome: waldschmidt_auto(&m, opts.cap),
            },
            Err(e) => BatchRow { line, input: text.to_string(), outcome: Err(e) },
        })
        .collect();

    let mut errors = Vec::new();
    let mut rows = Vec::new();
    let mut table = Vec::new();
    for r in &results {
        let (value, lower, upper, method, error) = match &r.outcome {
            Ok(Estimate::Exact(x)) => (Some(&x.value), None, None, x.method.tag().to_string(), None),
            Ok(Estimate::Interval(b)) => (
                None,
                Some(&b.lower),
                Some(&b.upper),
                format!("{}/{}", b.lower_method.tag(), b.upper_method.tag()),
                None,
            ),
            Err(e) => (None, None, None, String::new(), Some(e.to_string())),
        };
        if let Some(e) = &error {
            errors.push(format!("line {}: {e}", r.line));
        }
        let opt = |x: Option<&Rational>| x.map(frac).unwrap_or(Value::Null);
        let mut row = json!({
            "line": r.line,
            "input": r.input,
            "value": opt(value),
            "lower": opt(lower),
            "upper": opt(upper),
            "method": if error.is_some() { Value::Null } else { Value::String(method.clone()) },
            "error": error,
        });
        if opts.approx {
            if let Some(v) = value {
                row["value_approx"] = Value::String(to_decimal(v, APPROX_DIGITS));
            }
        }
        rows.push(row);
        let cell = |x: Option<&Rational>| x.map(to_fraction_string).unwrap_or_default();
        table.push(vec![
            r.line.to_string(),
            r.input.clone(),
            cell(value),
            cell(lower),
            cell(upper),
            method,
            error.unwrap_or_default(),
        ]);
    }
    CommandResult {
        errors,
        table: Some(Table {
            headers: vec!["line", "input", "value", "lower", "upper", "method", "error"],
            rows: table,
        }),
        ..CommandResult::ok("batch", shown, json!({ "rows": rows }))
    }
}
