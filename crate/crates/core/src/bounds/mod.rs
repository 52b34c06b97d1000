//! Closed-form and numerically optimised upper bounds on the size of sets
//! avoiding a property, each returned as a [`BoundReport`] carrying its own
//! cross-checks.

mod gamma;
mod identifier;
mod linear;
mod poset;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::ffield::is_prime;

pub use gamma::{
    exact_bounded_monomial_count, gamma, gamma_range_check, markov_bound, markov_dominates, GammaBracket, MarkovValue,
};
pub use identifier::{
    c_constant, gamma_exponent_identifier, identifier_exponent_discrepancies, partition_rank_upper_bound_polynomial,
};
pub use linear::{bound_linear_equation, linear_subset_count, partition_rank_upper_bound_linear};
pub use poset::{poset_series_identity, verify_poset_lemma};
pub(crate) use poset::verify_poset_lemma_on;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub description: String,
    pub passed: bool,
    pub detail: String,
}

/// A known disagreement between two formulas for the same quantity. Both
/// values are reported; neither is corrected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Flag {
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub inputs: Map<String, Value>,
    /// Exact value as text: an integer, a fraction `a/b`, or a decimal upper
    /// bracket for numerically optimised bounds.
    pub value: String,
    /// Floating-point rendering of `value`, for plotting.
    pub approx: Option<f64>,
    pub formula: String,
    pub cross_checks: Vec<CrossCheck>,
    pub flags: Vec<Flag>,
}

impl BoundReport {
    pub(crate) fn new(name: &str, inputs: Value, value: impl ToString, formula: &str) -> Self {
        let inputs = match inputs {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        let value = value.to_string();
        BoundReport {
            name: name.to_string(),
            inputs,
            approx: value.parse::<f64>().ok().or_else(|| parse_fraction(&value)),
            value,
            formula: formula.to_string(),
            cross_checks: Vec::new(),
            flags: Vec::new(),
        }
    }

    pub(crate) fn check(&mut self, description: &str, passed: bool, detail: impl Into<String>) {
        self.cross_checks.push(CrossCheck {
            description: description.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    pub(crate) fn flag(&mut self, code: &str, message: impl Into<String>) {
        self.flags.push(Flag {
            code: code.to_string(),
            message: message.into(),
        });
    }

    pub fn all_passed(&self) -> bool {
        self.cross_checks.iter().all(|c| c.passed)
    }

    pub fn is_flagged(&self, code: &str) -> bool {
        self.flags.iter().any(|f| f.code == code)
    }

    /// The exact value, when it is an integer.
    pub fn integer_value(&self) -> Option<BigInt> {
        self.value.parse().ok()
    }
}

fn parse_fraction(s: &str) -> Option<f64> {
    let (a, b) = s.split_once('/')?;
    Some(a.parse::<f64>().ok()? / b.parse::<f64>().ok()?)
}

/// Splits a prime power into `(p, ell)`.
pub(crate) fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut ell = 0;
    while rest % p == 0 {
        rest /= p;
        ell += 1;
    }
    (rest == 1 && is_prime(p)).then_some((p, ell))
}

/// Size bound for sets in `F_q^n` with no distinct triple forming an acute
/// (or obtuse) angle: `C(n+q+1, q-1) + 4`, the count of monomials in the
/// slice decomposition plus the indicator overhead.
pub fn bound_obtuse(n: u64, q: u64) -> Result<BoundReport> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    match prime_power(q) {
        Some((p, _)) if p != 2 => {}
        _ => return Err(Error::domain(format!("q = {q} is not an odd prime power"))),
    }
    let slices = binomial(n + q + 1, q - 1);
    let value = &slices + 4;
    let alt = binomial(n + q + 1, q + 1) + 4u32;
    let mut r = BoundReport::new(
        "obtuse",
        serde_json::json!({"n": n, "q": q}),
        &value,
        "C(n+q+1, q-1) + 4",
    );
    let direct = binomial((n + 3) + (q - 1) - 1, q - 1);
    r.check(
        "monomial count C((n+3)+(q-1)-1, q-1) equals C(n+q+1, q-1)",
        direct == slices,
        format!("{direct} vs {slices}"),
    );
    r.inputs.insert("alternative_value".into(), Value::String(alt.to_string()));
    if alt != value {
        r.flag(
            "statement_variant",
            format!("the variant C(n+q+1, q+1) + 4 = {alt} differs from the derived C(n+q+1, q-1) + 4 = {value}"),
        );
    }
    Ok(r)
}
