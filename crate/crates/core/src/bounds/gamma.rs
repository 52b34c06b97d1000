//! The exponential base `Γ_{p,m}` and the Markov-type estimate it comes
//! from. `φ(x) = (1 - x^p) / (x^a (1 - x))` with `a = (p-1)/m` equals
//! `Σ_{j<p} x^(j-a)`, which is convex in `ln x`, so a golden-section search
//! in `t = ln x` finds the minimum.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::BoundReport;
use crate::error::{Error, Result};
use crate::ffield::is_prime;

const GOLDEN: f64 = 0.618_033_988_749_894_9;
// relative slack used when widening floating-point values outward
const SLACK: f64 = 1e-12;

fn phi(p: u64, m: u64, x: f64) -> f64 {
    let a = (p - 1) as f64 / m as f64;
    (0..p).map(|j| x.powf(j as f64 - a)).sum()
}

/// `Σ_{j<p} x^j` exactly.
fn geometric(p: u64, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    let mut term = BigRational::one();
    for _ in 0..p {
        acc += &term;
        term *= x;
    }
    acc
}

fn rpow(x: &BigRational, e: u64) -> BigRational {
    num_traits::pow(x.clone(), e as usize)
}

/// The minimum of `φ` on `(0, 1)`, with a certified rational upper bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaBracket {
    pub p: u64,
    pub m: u64,
    /// Approximate minimiser.
    pub x_star: f64,
    /// `φ(x_star)` in floating point.
    pub value: f64,
    /// Rational point at which the upper bound is certified.
    pub x_certified: BigRational,
    /// A decimal `U` with `φ(x_certified) <= U`, proved in exact arithmetic;
    /// hence `Γ_{p,m} <= U`.
    pub upper: BigRational,
    /// Width of the final search bracket in `ln x`.
    pub bracket_width: f64,
}

impl GammaBracket {
    pub fn upper_f64(&self) -> f64 {
        self.upper.to_f64().unwrap_or(f64::INFINITY)
    }
}

fn check_pm(p: u64, m: u64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::domain(format!("p = {p} must be an odd prime")));
    }
    if m < 3 {
        return Err(Error::domain(format!("m = {m} must be at least 3")));
    }
    Ok(())
}

/// `φ(x) <= u` decided exactly: `(Σ x^j)^m <= u^m x^(p-1)`.
fn phi_at_most(p: u64, m: u64, x: &BigRational, u: &BigRational) -> bool {
    rpow(&geometric(p, x), m) <= rpow(u, m) * rpow(x, p - 1)
}

fn rational_from_f64(v: f64, denom_bits: u32) -> BigRational {
    let scale = 2f64.powi(denom_bits as i32);
    BigRational::new(BigInt::from((v * scale).round() as i128), BigInt::one() << denom_bits)
}

/// Smallest multiple of `10^-digits` that is at least `v`.
fn decimal_ceil(v: f64, digits: u32) -> BigRational {
    let scale = 10f64.powi(digits as i32);
    BigRational::new(BigInt::from((v * scale).ceil() as i128), BigInt::from(10u64).pow(digits))
}

pub fn gamma(p: u64, m: u64, tol: f64) -> Result<GammaBracket> {
    check_pm(p, m)?;
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    let f = |t: f64| phi(p, m, t.exp());
    // φ -> ∞ as t -> -∞ and φ'(0) > 0 when m >= 3, so the minimum is inside
    let (mut lo, mut hi) = (-60.0f64, 0.0f64);
    let mut c = hi - GOLDEN * (hi - lo);
    let mut d = lo + GOLDEN * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut iterations = 0;
    while hi - lo > tol && iterations < 400 {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - GOLDEN * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + GOLDEN * (hi - lo);
            fd = f(d);
        }
        iterations += 1;
    }
    let t_star = 0.5 * (lo + hi);
    let x_star = t_star.exp();
    let value = phi(p, m, x_star);
    let x_certified = rational_from_f64(x_star, 40);
    let mut upper = decimal_ceil(value * (1.0 + SLACK), 12);
    let step = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(9));
    while !phi_at_most(p, m, &x_certified, &upper) {
        upper += &step;
    }
    Ok(GammaBracket {
        p,
        m,
        x_star,
        value,
        x_certified,
        upper,
        bracket_width: hi - lo,
    })
}

/// Checks `1 <= Γ_{p,m} < p` over a grid, and that `Γ_{p,m}` does not
/// increase with `m`.
pub fn gamma_range_check(ps: &[u64], ms: &[u64]) -> Result<BoundReport> {
    let mut report = BoundReport::new(
        "gamma_range",
        serde_json::json!({"p": ps, "m": ms}),
        "",
        "1 <= min_{0<x<1} (1-x^p)/(x^((p-1)/m)(1-x)) < p",
    );
    let mut table = serde_json::Map::new();
    for &p in ps {
        let mut prev: Option<(u64, f64)> = None;
        let mut base: Option<f64> = None;
        let mut row = Vec::new();
        for &m in ms {
            let g = gamma(p, m, 1e-10)?;
            row.push(serde_json::json!({"m": m, "value": g.value, "upper": g.upper.to_string()}));
            let upper_ok = g.upper < BigRational::from_integer(p.into());
            report.check(
                &format!("Gamma_{{{p},{m}}} < {p}"),
                upper_ok,
                format!("certified upper bound {}", g.upper),
            );
            // the j = 0 term x^(-a) alone exceeds 1 on (0, 1)
            report.check(&format!("Gamma_{{{p},{m}}} >= 1"), g.value >= 1.0, format!("minimum {:.12}", g.value));
            if m == 3 {
                base = Some(g.value);
            }
            if let Some(b) = base {
                report.check(
                    &format!("Gamma_{{{p},{m}}} <= Gamma_{{{p},3}}"),
                    g.value <= b * (1.0 + 1e-9),
                    format!("{:.12} vs {:.12}", g.value, b),
                );
            }
            if let Some((pm, pv)) = prev {
                report.check(
                    &format!("Gamma_{{{p},{m}}} <= Gamma_{{{p},{pm}}}"),
                    g.value <= pv * (1.0 + 1e-9),
                    format!("{:.12} vs {:.12}", g.value, pv),
                );
            }
            prev = Some((m, g.value));
        }
        table.insert(p.to_string(), serde_json::Value::Array(row));
    }
    report.inputs.insert("values".into(), serde_json::Value::Object(table));
    report.value = if report.all_passed() { "pass" } else { "fail" }.to_string();
    Ok(report)
}

/// `#{v in {0..p-1}^n : Σ v_i <= d}` by convolving digit counts.
pub fn exact_bounded_monomial_count(n: u64, p: u64, d: u64) -> BigInt {
    if p == 0 {
        return BigInt::zero();
    }
    let cap = d.min(n * (p - 1)) as usize;
    // ways[s] = number of digit strings so far with sum s
    let mut ways = vec![BigInt::zero(); cap + 1];
    ways[0] = BigInt::one();
    for _ in 0..n {
        let mut next = vec![BigInt::zero(); cap + 1];
        // sliding window sum over the last p entries
        let mut window = BigInt::zero();
        for s in 0..=cap {
            window += &ways[s];
            if s >= p as usize {
                window -= &ways[s - p as usize];
            }
            next[s] = window.clone();
        }
        ways = next;
    }
    ways.into_iter().sum()
}

/// `φ(x)^n`, either exact or as an outward-rounded floating interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MarkovValue {
    Exact { value: BigRational },
    Interval { lo: f64, hi: f64 },
}

impl MarkovValue {
    pub fn lower_f64(&self) -> f64 {
        match self {
            MarkovValue::Exact { value } => value.to_f64().unwrap_or(f64::INFINITY) * (1.0 - SLACK),
            MarkovValue::Interval { lo, .. } => *lo,
        }
    }

    pub fn upper_f64(&self) -> f64 {
        match self {
            MarkovValue::Exact { value } => value.to_f64().unwrap_or(f64::INFINITY) * (1.0 + SLACK),
            MarkovValue::Interval { hi, .. } => *hi,
        }
    }
}

fn check_x(x: &BigRational) -> Result<()> {
    if !x.is_positive() || *x >= BigRational::one() {
        return Err(Error::domain(format!("x = {x} must lie strictly between 0 and 1")));
    }
    Ok(())
}

/// `((1 - x^p) / (x^((p-1)/m) (1 - x)))^n`. Exact when `n(p-1)/m` is an
/// integer, otherwise a floating interval widened outward.
pub fn markov_bound(n: u64, p: u64, m: u64, x: &BigRational) -> Result<MarkovValue> {
    check_x(x)?;
    if m == 0 || p == 0 {
        return Err(Error::domain("p and m must be positive"));
    }
    let e = n * (p - 1);
    let s = rpow(&geometric(p, x), n);
    if e % m == 0 {
        return Ok(MarkovValue::Exact {
            value: s / rpow(x, e / m),
        });
    }
    let xf = x.to_f64().expect("x in (0, 1)");
    let sf = s.to_f64().expect("finite");
    let v = sf * xf.powf(-(e as f64) / m as f64);
    Ok(MarkovValue::Interval {
        lo: v * (1.0 - SLACK),
        hi: v * (1.0 + SLACK),
    })
}

/// Exact test of `count(n, p, ⌊n(p-1)/m⌋) <= φ(x)^n`, through
/// `count^m x^(n(p-1)) <= (Σ_{j<p} x^j)^(nm)`.
pub fn markov_dominates(n: u64, p: u64, m: u64, x: &BigRational) -> Result<(bool, BigInt)> {
    check_x(x)?;
    let e = n * (p - 1);
    let (d, _) = e.div_rem(&m);
    let count = exact_bounded_monomial_count(n, p, d);
    let lhs = rpow(&BigRational::from_integer(count.clone()), m) * rpow(x, e);
    let rhs = rpow(&geometric(p, x), n * m);
    Ok((lhs <= rhs, count))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn gamma_three_three_matches_critical_point() {
        let g = gamma(3, 3, 1e-12).unwrap();
        let x = (-1.0 + 33f64.sqrt()) / 8.0;
        let closed = x.powf(-2.0 / 3.0) + x.powf(1.0 / 3.0) + x.powf(4.0 / 3.0);
        assert!((g.x_star - x).abs() < 1e-4);
        assert!((g.value - closed).abs() < 1e-9);
        assert!((g.value - 2.7551).abs() < 1e-3);
        assert!(g.upper_f64() >= g.value);
        assert!(g.upper_f64() - g.value < 1e-9);
    }

    #[test]
    fn gamma_rejects_bad_input() {
        assert!(gamma(3, 3, 0.0).is_err());
        assert!(gamma(4, 3, 1e-6).is_err());
        assert!(gamma(5, 2, 1e-6).is_err());
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(exact_bounded_monomial_count(2, 3, 1), 3.into());
        assert_eq!(exact_bounded_monomial_count(2, 3, 4), 9.into());
        assert_eq!(exact_bounded_monomial_count(1, 7, 10), 7.into());
        assert_eq!(exact_bounded_monomial_count(3, 3, 0), 1.into());
        // brute force
        for n in 1..=4u64 {
            for p in 2..=4u64 {
                for d in 0..=n * (p - 1) {
                    let brute = (0..p.pow(n as u32))
                        .filter(|&v| {
                            let mut v = v;
                            let mut s = 0;
                            for _ in 0..n {
                                s += v % p;
                                v /= p;
                            }
                            s <= d
                        })
                        .count();
                    assert_eq!(exact_bounded_monomial_count(n, p, d), brute.into());
                }
            }
        }
    }

    #[test]
    fn markov_examples() {
        let v = markov_bound(2, 3, 3, &q(19, 32)).unwrap();
        assert!(v.lower_f64() > 7.5 && v.upper_f64() < 7.7);
        assert!(markov_dominates(2, 3, 3, &q(19, 32)).unwrap().0);
        let v = markov_bound(1, 3, 3, &q(1, 2)).unwrap();
        let expected = 1.75 * 2f64.powf(2.0 / 3.0);
        assert!(v.lower_f64() <= expected && expected <= v.upper_f64());
        // n(p-1)/m integral
        assert_eq!(
            markov_bound(3, 3, 3, &q(1, 2)).unwrap(),
            MarkovValue::Exact {
                value: num_traits::pow(q(7, 4), 3) / q(1, 4)
            }
        );
        assert!(markov_bound(1, 3, 3, &q(1, 1)).is_err());
    }

    #[test]
    fn range_check_passes() {
        let r = gamma_range_check(&[5, 7], &[3, 4, 5]).unwrap();
        assert!(r.all_passed(), "{r:#?}");
    }
}
