use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{SetPartition, MAX_K};
use crate::combinatorics::{bell, signed_factorial};
use crate::error::{Error, Result};

/// Default enumeration ceiling; `Bell(13) = 27,644,437`.
pub const DEFAULT_MAX_K: usize = 13;

/// All partitions of `{1, ..., k}` in a fixed linear extension of the
/// refinement order: nondecreasing rank, ties broken lexicographically on
/// the restricted growth string. Index 0 is `0̂`, the last index is `1̂`.
///
/// The order relation and rank are computed on demand. The Möbius function
/// is tabulated lazily on first use, one sparse row per element holding the
/// values on its principal up-set.
#[derive(Debug)]
pub struct PartitionLattice {
    k: usize,
    partitions: Vec<SetPartition>,
    rank_offsets: Vec<usize>,
    mobius: OnceLock<IntervalTable>,
}

/// Sparse upper-triangular table: row `a` lists `(b, value)` for every
/// `b >= a`, sorted by `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalTable {
    rows: Vec<Vec<(usize, BigInt)>>,
}

impl IntervalTable {
    pub fn row(&self, a: usize) -> &[(usize, BigInt)] {
        &self.rows[a]
    }

    pub fn get(&self, a: usize, b: usize) -> Option<&BigInt> {
        let row = &self.rows[a];
        row.binary_search_by_key(&b, |(j, _)| *j)
            .ok()
            .map(|pos| &row[pos].1)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Number of stored (comparable) pairs.
    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }
}

/// All restricted growth strings of length `n`, lexicographically.
pub(crate) fn restricted_growth_strings(n: usize) -> Vec<Vec<u8>> {
    fn go(prefix: &mut Vec<u8>, max: u8, n: usize, out: &mut Vec<Vec<u8>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let limit = if prefix.is_empty() { 0 } else { max + 1 };
        for b in 0..=limit {
            prefix.push(b);
            go(prefix, max.max(b), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    go(&mut Vec::with_capacity(n), 0, n, &mut out);
    out
}

impl PartitionLattice {
    /// Enumerates `Π_k` with the default ceiling `k <= 13`.
    pub fn new(k: usize) -> Result<Self> {
        Self::with_max_k(k, DEFAULT_MAX_K)
    }

    pub fn with_max_k(k: usize, max_k: usize) -> Result<Self> {
        if k == 0 || k > max_k.min(MAX_K) {
            return Err(Error::SizeLimit {
                what: format!("partition lattice Π_{k}"),
                needed: format!("Bell({k}) = {}", bell(k)),
                limit: format!("k in 1..={}", max_k.min(MAX_K)),
            });
        }
        let mut buckets: Vec<Vec<SetPartition>> = vec![Vec::new(); k];
        // Lexicographic generation keeps each rank bucket sorted.
        fn go(rgs: &mut [u8; MAX_K], depth: usize, max: u8, k: usize, out: &mut [Vec<SetPartition>]) {
            if depth == k {
                let pi = SetPartition { k: k as u8, rgs: *rgs };
                out[pi.rank()].push(pi);
                return;
            }
            for b in 0..=max + 1 {
                rgs[depth] = b;
                go(rgs, depth + 1, max.max(b), k, out);
            }
            rgs[depth] = 0;
        }
        let mut rgs = [0u8; MAX_K];
        go(&mut rgs, 1, 0, k, &mut buckets);
        Ok(Self::from_buckets(k, buckets))
    }

    fn from_buckets(k: usize, buckets: Vec<Vec<SetPartition>>) -> Self {
        let mut rank_offsets = Vec::with_capacity(k + 1);
        let mut partitions = Vec::with_capacity(buckets.iter().map(Vec::len).sum());
        for bucket in buckets {
            rank_offsets.push(partitions.len());
            partitions.extend(bucket);
        }
        rank_offsets.push(partitions.len());
        PartitionLattice {
            k,
            partitions,
            rank_offsets,
            mobius: OnceLock::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    pub fn partitions(&self) -> &[SetPartition] {
        &self.partitions
    }

    pub fn partition(&self, idx: usize) -> &SetPartition {
        &self.partitions[idx]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.partitions.len() - 1
    }

    pub fn rank(&self, idx: usize) -> usize {
        self.partitions[idx].rank()
    }

    /// Indices of the elements of a given rank, as a contiguous range.
    pub fn rank_range(&self, rank: usize) -> std::ops::Range<usize> {
        self.rank_offsets[rank]..self.rank_offsets[rank + 1]
    }

    pub fn index_of(&self, pi: &SetPartition) -> Option<usize> {
        if pi.k() != self.k {
            return None;
        }
        let range = self.rank_range(pi.rank());
        self.partitions[range.clone()]
            .binary_search(pi)
            .ok()
            .map(|pos| range.start + pos)
    }

    pub(crate) fn require_index(&self, pi: &SetPartition) -> Result<usize> {
        self.index_of(pi).ok_or(Error::Dimension {
            expected: self.k,
            got: pi.k(),
        })
    }

    /// Refinement order on indices.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.partitions[a].refines_unchecked(&self.partitions[b])
    }

    /// Pairs `(a, b)` where `b` covers `a` (merge of two blocks of `a`).
    pub fn covers_of(&self, a: usize) -> Vec<usize> {
        let pi = &self.partitions[a];
        let r = pi.num_blocks();
        let mut out = Vec::new();
        for x in 0..r {
            for y in (x + 1)..r {
                let merged: Vec<u8> = pi
                    .assignment()
                    .iter()
                    .map(|&b| if b as usize == y { x as u8 } else { b })
                    .collect();
                let up = SetPartition::from_labels(&merged).expect("valid labels");
                out.push(self.index_of(&up).expect("cover is in the lattice"));
            }
        }
        out.sort_unstable();
        out
    }

    /// Indices of every `b >= a`, ascending. The up-set of a partition with
    /// `r` blocks is enumerated as the partitions of its blocks.
    pub fn up_set(&self, a: usize) -> Vec<usize> {
        let pi = self.partitions[a];
        let r = pi.num_blocks();
        let mut out: Vec<usize> = restricted_growth_strings(r)
            .into_iter()
            .map(|sigma| {
                let labels: Vec<u8> = pi.assignment().iter().map(|&b| sigma[b as usize]).collect();
                let up = SetPartition::from_labels(&labels).expect("valid labels");
                self.index_of(&up).expect("coarsening is in the lattice")
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// The Möbius table, computed on first use from the defining recursion
    /// `μ(a,a) = 1`, `μ(a,b) = -Σ_{a <= z < b} μ(a,z)`.
    pub fn mobius_table(&self) -> &IntervalTable {
        self.mobius.get_or_init(|| self.build_mobius_table())
    }

    fn build_mobius_table(&self) -> IntervalTable {
        let rows = (0..self.len())
            .map(|a| {
                let ups = self.up_set(a);
                let mut row: Vec<(usize, BigInt)> = Vec::with_capacity(ups.len());
                for (pos, &b) in ups.iter().enumerate() {
                    if b == a {
                        row.push((b, BigInt::one()));
                        continue;
                    }
                    let rank_b = self.rank(b);
                    let mut sum = BigInt::zero();
                    for (z, mu) in &row[..pos] {
                        if self.rank(*z) < rank_b && self.leq(*z, b) {
                            sum += mu;
                        }
                    }
                    row.push((b, -sum));
                }
                row
            })
            .collect();
        IntervalTable { rows }
    }

    /// `μ(a, b)` from the tabulated recursion; zero for incomparable pairs.
    pub fn mobius_recursive(&self, a: &SetPartition, b: &SetPartition) -> Result<BigInt> {
        let (i, j) = (self.require_index(a)?, self.require_index(b)?);
        Ok(self.mobius_at(i, j))
    }

    pub fn mobius_at(&self, a: usize, b: usize) -> BigInt {
        self.mobius_table()
            .get(a, b)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Dense `Bell(k) x Bell(k)` Möbius matrix.
    pub fn mobius_matrix(&self) -> Vec<Vec<BigInt>> {
        let n = self.len();
        let table = self.mobius_table();
        (0..n)
            .map(|a| {
                let mut row = vec![BigInt::zero(); n];
                for (b, mu) in table.row(a) {
                    row[*b] = mu.clone();
                }
                row
            })
            .collect()
    }

    /// Entries where the sparse product ζ·μ differs from the identity, as
    /// `(a, c, value)`. Empty when the table inverts the zeta matrix.
    pub fn zeta_mobius_defects(&self) -> Vec<(usize, usize, BigInt)> {
        let table = self.mobius_table();
        let mut defects = Vec::new();
        for a in 0..self.len() {
            let mut acc: HashMap<usize, BigInt> = HashMap::new();
            for (b, _) in table.row(a) {
                for (c, mu) in table.row(*b) {
                    *acc.entry(*c).or_insert_with(BigInt::zero) += mu;
                }
            }
            // every b >= a appears as a key of row a, so rows cover the support
            let mut entries: Vec<_> = acc.into_iter().collect();
            entries.sort_by_key(|(c, _)| *c);
            for (c, v) in entries {
                let expected = if c == a { BigInt::one() } else { BigInt::zero() };
                if v != expected {
                    defects.push((a, c, v));
                }
            }
            if table.get(a, a).is_none() {
                defects.push((a, a, BigInt::zero()));
            }
        }
        defects
    }

    /// Perturbs one stored Möbius value. Used by self-test fault injection.
    #[doc(hidden)]
    pub fn inject_mobius_fault(&mut self, a: usize, b: usize, delta: i64) {
        self.mobius_table();
        let table = self.mobius.get_mut().expect("table built");
        let row = &mut table.rows[a];
        match row.binary_search_by_key(&b, |(j, _)| *j) {
            Ok(pos) => row[pos].1 += delta,
            Err(pos) => row.insert(pos, (b, BigInt::from(delta))),
        }
    }
}

/// `μ(a, b)` from the product formula: if block `i` of `b` splits into
/// `λ_i` blocks of `a`, the value is `Π (-1)^(λ_i - 1) (λ_i - 1)!`.
pub fn mobius_closed_form(a: &SetPartition, b: &SetPartition) -> Result<BigInt> {
    if !a.refines(b)? {
        return Err(Error::Order(format!("{a} does not refine {b}")));
    }
    let mut lambda = vec![0usize; b.num_blocks()];
    let mut seen = [false; MAX_K];
    for (&ba, &bb) in a.assignment().iter().zip(b.assignment()) {
        if !seen[ba as usize] {
            seen[ba as usize] = true;
            lambda[bb as usize] += 1;
        }
    }
    Ok(lambda
        .into_iter()
        .map(signed_factorial)
        .fold(BigInt::one(), |acc, v| acc * v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{factorial, stirling2};
    use num_traits::ToPrimitive;

    fn p(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    #[test]
    fn pi3_order_and_ranks() {
        let lat = PartitionLattice::new(3).unwrap();
        let names: Vec<String> = lat.partitions().iter().map(|x| x.to_string()).collect();
        assert_eq!(names, ["1|2|3", "12|3", "13|2", "1|23", "123"]);
        assert_eq!(lat.rank(lat.bottom()), 0);
        assert_eq!(lat.rank(lat.top()), 2);
    }

    #[test]
    fn degenerate_ground_set() {
        let lat = PartitionLattice::new(1).unwrap();
        assert_eq!(lat.len(), 1);
        assert_eq!(lat.bottom(), lat.top());
        assert_eq!(lat.mobius_at(0, 0), BigInt::one());
    }

    #[test]
    fn pi4_block_tally() {
        let lat = PartitionLattice::new(4).unwrap();
        assert_eq!(lat.len(), 15);
        let two_blocks = lat.partitions().iter().filter(|x| x.num_blocks() == 2).count();
        assert_eq!(two_blocks, 7);
    }

    #[test]
    fn size_limit_names_bell() {
        let err = PartitionLattice::with_max_k(9, 8).unwrap_err();
        assert!(err.to_string().contains("Bell(9) = 21147"), "{err}");
        assert!(PartitionLattice::new(0).is_err());
        assert!(PartitionLattice::new(14).is_err());
    }

    #[test]
    fn enumeration_counts_match_bell_and_stirling() {
        for k in 1..=9 {
            let lat = PartitionLattice::new(k).unwrap();
            assert_eq!(BigInt::from(lat.len()), bell(k));
            for r in 0..k {
                let count = lat.rank_range(r).len();
                assert_eq!(BigInt::from(count), stirling2(k, k - r), "k={k} r={r}");
            }
            for (i, pi) in lat.partitions().iter().enumerate() {
                assert_eq!(lat.index_of(pi), Some(i));
            }
        }
    }

    #[test]
    fn linear_extension_is_strict_increasing() {
        let lat = PartitionLattice::new(5).unwrap();
        for w in lat.partitions().windows(2) {
            assert!((w[0].rank(), w[0]) < (w[1].rank(), w[1]));
        }
    }

    #[test]
    fn mobius_examples() {
        let lat4 = PartitionLattice::new(4).unwrap();
        let (zero, one) = (SetPartition::finest(4), SetPartition::coarsest(4));
        assert_eq!(lat4.mobius_recursive(&zero, &one).unwrap(), BigInt::from(-6));
        let lat3 = PartitionLattice::new(3).unwrap();
        assert_eq!(lat3.mobius_recursive(&p("12|3"), &p("13|2")).unwrap(), BigInt::zero());
        for pi in lat3.partitions() {
            assert_eq!(lat3.mobius_recursive(pi, pi).unwrap(), BigInt::one());
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            mobius_closed_form(&p("16|28|34|5|7"), &p("1268|34|57")).unwrap(),
            BigInt::one()
        );
        assert_eq!(
            mobius_closed_form(&SetPartition::finest(5), &SetPartition::coarsest(5)).unwrap(),
            BigInt::from(24)
        );
        assert_eq!(mobius_closed_form(&p("13|2"), &p("13|2")).unwrap(), BigInt::one());
        assert!(matches!(
            mobius_closed_form(&p("12|3"), &p("13|2")),
            Err(Error::Order(_))
        ));
    }

    #[test]
    fn bottom_top_mobius_is_signed_factorial() {
        for k in 1..=7 {
            let lat = PartitionLattice::new(k).unwrap();
            let expected = factorial(k as u64 - 1) * if k % 2 == 0 { -1 } else { 1 };
            assert_eq!(lat.mobius_at(lat.bottom(), lat.top()), expected);
        }
    }

    #[test]
    fn closed_form_agrees_with_recursion() {
        for k in 1..=6 {
            let lat = PartitionLattice::new(k).unwrap();
            for a in 0..lat.len() {
                for (b, mu) in lat.mobius_table().row(a) {
                    let cf = mobius_closed_form(lat.partition(a), lat.partition(*b)).unwrap();
                    assert_eq!(&cf, mu);
                }
            }
        }
    }

    #[test]
    fn zeta_times_mobius_is_identity() {
        for k in 1..=8 {
            let lat = PartitionLattice::new(k).unwrap();
            assert!(lat.zeta_mobius_defects().is_empty(), "k={k}");
        }
    }

    #[test]
    fn fault_injection_breaks_the_identity() {
        let mut lat = PartitionLattice::new(4).unwrap();
        lat.inject_mobius_fault(0, lat.top(), 1);
        assert!(!lat.zeta_mobius_defects().is_empty());
    }

    #[test]
    fn upper_interval_sums_vanish() {
        for k in 2..=6 {
            let lat = PartitionLattice::new(k).unwrap();
            for a in 0..lat.top() {
                let s: BigInt = lat
                    .mobius_table()
                    .row(a)
                    .iter()
                    .map(|(_, mu)| mu.clone())
                    .sum();
                assert!(s.is_zero(), "k={k} a={a}");
            }
        }
    }

    #[test]
    fn covers_differ_in_rank_by_one() {
        let lat = PartitionLattice::new(5).unwrap();
        for a in 0..lat.len() {
            for b in lat.covers_of(a) {
                assert_eq!(lat.rank(b), lat.rank(a) + 1);
                assert!(lat.leq(a, b));
            }
        }
        // 0̂ of Π_4 is covered by the C(4,2) two-element merges
        let lat4 = PartitionLattice::new(4).unwrap();
        assert_eq!(lat4.covers_of(0).len(), 6);
    }

    #[test]
    fn order_relation_axioms_on_pi4() {
        let lat = PartitionLattice::new(4).unwrap();
        let n = lat.len();
        for a in 0..n {
            assert!(lat.leq(a, a));
            for b in 0..n {
                if a != b && lat.leq(a, b) {
                    assert!(!lat.leq(b, a));
                    assert!(a < b, "linear extension");
                }
                for c in 0..n {
                    if lat.leq(a, b) && lat.leq(b, c) {
                        assert!(lat.leq(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn meet_and_join_are_lattice_bounds() {
        let lat = PartitionLattice::new(4).unwrap();
        let n = lat.len();
        for a in 0..n {
            for b in 0..n {
                let (pa, pb) = (lat.partition(a), lat.partition(b));
                let m = lat.index_of(&pa.meet(pb).unwrap()).unwrap();
                let j = lat.index_of(&pa.join(pb).unwrap()).unwrap();
                assert!(lat.leq(m, a) && lat.leq(m, b));
                assert!(lat.leq(a, j) && lat.leq(b, j));
                for c in 0..n {
                    if lat.leq(c, a) && lat.leq(c, b) {
                        assert!(lat.leq(c, m));
                    }
                    if lat.leq(a, c) && lat.leq(b, c) {
                        assert!(lat.leq(j, c));
                    }
                }
                assert!(lat.rank(j) >= lat.rank(a).max(lat.rank(b)));
                assert!(lat.rank(m) <= lat.rank(a).min(lat.rank(b)));
            }
        }
    }

    #[test]
    fn dense_matrix_matches_table() {
        let lat = PartitionLattice::new(3).unwrap();
        let m = lat.mobius_matrix();
        let flat: Vec<i64> = m.iter().flatten().map(|v| v.to_i64().unwrap()).collect();
        assert_eq!(
            flat,
            vec![
                1, -1, -1, -1, 2, //
                0, 1, 0, 0, -1, //
                0, 0, 1, 0, -1, //
                0, 0, 0, 1, -1, //
                0, 0, 0, 0, 1,
            ]
        );
    }
}
