//! The diagonal value of the rank-`r` generator, computed by its own
//! recursion and compared with the number of rank-`r` partitions, together
//! with the matrix identity `Σ_{l>=1} (I - μ)^l = ζ - I` behind it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::BoundReport;
use crate::combinatorics::stirling2;
use crate::error::{Error, Result};
use crate::ffield::Field;
use crate::indicators::{diagonal_value, rank_generator};
use crate::partition::PartitionLattice;
use crate::scalars::{Rationals, Scalars};

/// Checks `Σ_{l>=1} (I - μ)^l = ζ - I` on `Π_k` in exact integers. `I - μ`
/// is strictly upper triangular, so the series stops after at most `k - 1`
/// powers. Returns the number of nonzero powers and the mismatching pairs.
pub fn poset_series_identity(lattice: &PartitionLattice) -> (usize, Vec<(usize, usize)>) {
    let len = lattice.len();
    let table = lattice.mobius_table();
    // N = I - μ, rows of strictly-above entries
    let n_rows: Vec<Vec<(usize, BigInt)>> = (0..len)
        .map(|a| {
            table
                .row(a)
                .iter()
                .filter(|(b, _)| *b != a)
                .map(|(b, v)| (*b, -v.clone()))
                .collect()
        })
        .collect();
    let mut power: Vec<BTreeMap<usize, BigInt>> = n_rows.iter().map(|r| r.iter().cloned().collect()).collect();
    let mut sum = power.clone();
    let mut powers = 0;
    while power.iter().any(|r| !r.is_empty()) {
        powers += 1;
        let mut next: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); len];
        for (a, row) in power.iter().enumerate() {
            for (c, v) in row {
                for (b, w) in &n_rows[*c] {
                    *next[a].entry(*b).or_insert_with(BigInt::zero) += v * w;
                }
            }
            next[a].retain(|_, v| !v.is_zero());
        }
        for (a, row) in next.iter().enumerate() {
            for (b, v) in row {
                *sum[a].entry(*b).or_insert_with(BigInt::zero) += v;
            }
        }
        power = next;
    }
    let mut bad = Vec::new();
    for a in 0..len {
        for b in 0..len {
            let want = if a != b && lattice.leq(a, b) { BigInt::one() } else { BigInt::zero() };
            let got = sum[a].get(&b).cloned().unwrap_or_default();
            if got != want {
                bad.push((a, b));
            }
        }
    }
    (powers, bad)
}

fn lemma_value<S: Scalars>(lattice: &PartitionLattice, r: usize, s: &S) -> S::Elem {
    let len = lattice.len();
    let top = lattice.top();
    let mut f = vec![s.zero(); len];
    for pi in 0..len {
        let rk = lattice.rank(pi);
        f[pi] = if rk < r {
            s.zero()
        } else if rk == r {
            s.one()
        } else {
            let mut acc = s.zero();
            for tau in 0..pi {
                if lattice.rank(tau) < rk && lattice.leq(tau, pi) && !s.is_zero(&f[tau]) {
                    acc = s.add(&acc, &s.scale(&f[tau], &lattice.mobius_at(tau, pi)));
                }
            }
            s.neg(&acc)
        };
    }
    let mut acc = s.zero();
    for (pi, v) in f.iter().enumerate().take(top) {
        acc = s.add(&acc, &s.scale(v, &lattice.mobius_at(pi, top)));
    }
    s.neg(&acc)
}

/// Checks that `-Σ_{π<1̂} f_r(π) μ(π, 1̂)` equals the number of rank-`r`
/// partitions of `{1..k}`, in `Q` when `field` is `None` and reduced in the
/// field otherwise.
pub fn verify_poset_lemma(k: usize, r: usize, field: Option<&Field>) -> Result<BoundReport> {
    if !(3..=7).contains(&k) {
        return Err(Error::domain(format!("k = {k} outside 3..=7")));
    }
    if r > k - 2 {
        return Err(Error::domain(format!("r = {r} outside 0..={}", k - 2)));
    }
    let lattice = PartitionLattice::new(k)?;
    verify_poset_lemma_on(&lattice, r, field)
}

pub(crate) fn verify_poset_lemma_on(lattice: &PartitionLattice, r: usize, field: Option<&Field>) -> Result<BoundReport> {
    let k = lattice.k();
    let count = lattice.rank_range(r).len();
    let stirling = stirling2(k, k - r);
    let (value, expected, generator) = match field {
        None => {
            let v = lemma_value(lattice, r, &Rationals);
            let g = diagonal_value(&rank_generator(lattice, r, Rationals)?, lattice)?;
            (v.to_string(), BigRational::from_integer(count.into()).to_string(), g.to_string())
        }
        Some(f) => {
            let v = lemma_value(lattice, r, f);
            let g = diagonal_value(&rank_generator(lattice, r, f.clone())?, lattice)?;
            (f.format(v), f.format(f.from_i64(count as i64)), f.format(g))
        }
    };
    let mut report = BoundReport::new(
        "poset_lemma",
        serde_json::json!({"k": k, "r": r, "field": field.map_or("Q".to_string(), |f| f.to_string())}),
        &value,
        "-sum_{pi<top} f_r(pi) mu(pi, top)",
    );
    report.check(
        "diagonal value equals the number of rank-r elements",
        value == expected,
        format!("{value} vs {expected} ({count} elements)"),
    );
    report.check(
        "rank-r count equals S(k, k-r)",
        BigInt::from(count) == stirling,
        format!("{count} vs {stirling}"),
    );
    report.check(
        "agrees with the rank generator's diagonal value",
        value == generator,
        format!("{value} vs {generator}"),
    );
    let (powers, bad) = poset_series_identity(lattice);
    report.check(
        "sum_{l>=1} (I - mu)^l = zeta - I",
        bad.is_empty(),
        format!("{powers} nonzero powers, {} mismatched entries", bad.len()),
    );
    report.check("series terminates within k - 1 powers", powers < k, format!("{powers} powers"));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let r = verify_poset_lemma(4, 1, None).unwrap();
        assert_eq!(r.value, "6");
        assert!(r.all_passed(), "{r:#?}");
        let r = verify_poset_lemma(5, 0, None).unwrap();
        assert_eq!(r.value, "1");
        let f3 = Field::prime(3).unwrap();
        let r = verify_poset_lemma(4, 1, Some(&f3)).unwrap();
        assert_eq!(r.value, "0");
        assert!(r.all_passed());
        assert!(verify_poset_lemma(4, 3, None).is_err());
        assert!(verify_poset_lemma(8, 0, None).is_err());
    }

    #[test]
    fn series_detects_corruption() {
        let mut lat = PartitionLattice::new(4).unwrap();
        assert!(poset_series_identity(&lat).1.is_empty());
        lat.inject_mobius_fault(0, lat.top(), 1);
        assert!(!poset_series_identity(&lat).1.is_empty());
    }
}
