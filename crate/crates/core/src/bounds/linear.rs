//! Bounds for sets avoiding nontrivial solutions of a balanced linear
//! equation in which many, but not all, variables coincide.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use super::{exact_bounded_monomial_count, gamma, BoundReport};
use crate::combinatorics::stirling2;
use crate::error::{Error, Result};
use crate::ffield::is_prime;

/// `C_k = 2^k - k - 2`, the number of subsets `S` of `{1..k}` with
/// `1 <= |S| <= k - 2`.
pub fn linear_subset_count(k: u32) -> BigInt {
    (BigInt::from(1) << k) - k - 2
}

fn check_inputs(p: u64, k: u64, m: u64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::domain(format!("p = {p} must be an odd prime")));
    }
    if m < 3 || m > k {
        return Err(Error::domain(format!("need 3 <= m <= k, got m = {m}, k = {k}")));
    }
    Ok(())
}

/// `C_k · count(n, p, ⌊n(p-1)/m⌋)`, the partition-rank estimate before the
/// Markov step.
pub fn partition_rank_upper_bound_linear(n: u64, p: u64, k: u64, m: u64) -> Result<BigInt> {
    check_inputs(p, k, m)?;
    let d = n * (p - 1) / m;
    Ok(linear_subset_count(k as u32) * exact_bounded_monomial_count(n, p, d))
}

/// `C_k · Γ_{p,m}^n` with `Γ` replaced by its certified upper bracket.
pub fn bound_linear_equation(n: u64, p: u64, k: u64, m: u64) -> Result<BoundReport> {
    check_inputs(p, k, m)?;
    let g = gamma(p, m, 1e-12)?;
    let ck = linear_subset_count(k as u32);
    let value = BigRational::from_integer(ck.clone()) * num_traits::pow(g.upper.clone(), n as usize);
    let exact = partition_rank_upper_bound_linear(n, p, k, m)?;
    let approx = num_traits::ToPrimitive::to_f64(&value);
    let mut r = BoundReport::new(
        "linear_equation",
        serde_json::json!({"n": n, "p": p, "k": k, "m": m}),
        &value,
        "(2^k - k - 2) * Gamma_{p,m}^n",
    );
    r.approx = approx;
    r.inputs.insert("C_k".into(), ck.to_string().into());
    r.inputs.insert("gamma_upper".into(), g.upper.to_string().into());
    r.inputs.insert("exact_partition_rank_bound".into(), exact.to_string().into());
    let s = stirling2(k as usize, m as usize);
    let gcd = s.gcd(&BigInt::from(p));
    r.check(
        "gcd(p, S(k, m)) = 1",
        gcd == BigInt::from(1),
        format!("S({k}, {m}) = {s}, gcd with {p} is {gcd}"),
    );
    r.check(
        "exact count bound <= C_k * Gamma^n",
        BigRational::from_integer(exact.clone()) <= value,
        format!("{exact} <= {}", approx.unwrap_or(f64::NAN)),
    );
    let direct = (1..=k as u32 - 2).map(|s| crate::combinatorics::binomial(k, s as u64)).sum::<BigInt>();
    r.check(
        "C_k equals the number of subsets with 1 <= |S| <= k-2",
        direct == ck,
        format!("{direct} vs {ck}"),
    );
    Ok(r)
}
