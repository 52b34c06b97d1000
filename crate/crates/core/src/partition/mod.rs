//! Set partitions of `{1, ..., k}` and the refinement lattice they form.
//!
//! A [`SetPartition`] is stored as a restricted growth string: position `i`
//! holds the block index of element `i + 1`, blocks are numbered in order
//! of their smallest element, so the encoding is canonical.

mod lattice;

pub use lattice::{mobius_closed_form, IntervalTable, PartitionLattice, DEFAULT_MAX_K};

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest ground set supported by the fixed-size encoding.
pub const MAX_K: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    k: u8,
    rgs: [u8; MAX_K],
}

impl SetPartition {
    /// Builds a partition from a restricted growth string.
    pub fn from_rgs(assignment: &[u8]) -> Result<Self> {
        let k = assignment.len();
        if k == 0 || k > MAX_K {
            return Err(Error::domain(format!(
                "ground set size {k} outside 1..={MAX_K}"
            )));
        }
        let mut next = 0u8;
        for (i, &b) in assignment.iter().enumerate() {
            if b > next {
                return Err(Error::domain(format!(
                    "not a restricted growth string: position {} has block {b}, expected at most {next}",
                    i + 1
                )));
            }
            if b == next {
                next += 1;
            }
        }
        let mut rgs = [0u8; MAX_K];
        rgs[..k].copy_from_slice(assignment);
        Ok(SetPartition { k: k as u8, rgs })
    }

    /// Canonicalises an arbitrary labelling: positions with equal labels
    /// share a block.
    pub fn from_labels<T: PartialEq>(labels: &[T]) -> Result<Self> {
        let k = labels.len();
        if k == 0 || k > MAX_K {
            return Err(Error::domain(format!(
                "ground set size {k} outside 1..={MAX_K}"
            )));
        }
        let mut rgs = [0u8; MAX_K];
        let mut reps: Vec<usize> = Vec::with_capacity(k);
        for i in 0..k {
            match reps.iter().position(|&r| labels[r] == labels[i]) {
                Some(b) => rgs[i] = b as u8,
                None => {
                    rgs[i] = reps.len() as u8;
                    reps.push(i);
                }
            }
        }
        Ok(SetPartition { k: k as u8, rgs })
    }

    /// Builds a partition from blocks of 1-based elements.
    pub fn from_blocks(k: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        if k == 0 || k > MAX_K {
            return Err(Error::domain(format!(
                "ground set size {k} outside 1..={MAX_K}"
            )));
        }
        let mut label = vec![usize::MAX; k];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::parse("empty block"));
            }
            for &e in block {
                if e == 0 || e > k {
                    return Err(Error::parse(format!("element {e} outside 1..={k}")));
                }
                if label[e - 1] != usize::MAX {
                    return Err(Error::parse(format!("duplicate element {e}")));
                }
                label[e - 1] = b;
            }
        }
        if let Some(missing) = label.iter().position(|&l| l == usize::MAX) {
            return Err(Error::parse(format!("missing element {}", missing + 1)));
        }
        Self::from_labels(&label)
    }

    /// `0̂`: every element in its own block.
    pub fn finest(k: usize) -> Self {
        assert!((1..=MAX_K).contains(&k));
        let mut rgs = [0u8; MAX_K];
        for (i, slot) in rgs.iter_mut().enumerate().take(k) {
            *slot = i as u8;
        }
        SetPartition { k: k as u8, rgs }
    }

    /// `1̂`: a single block.
    pub fn coarsest(k: usize) -> Self {
        assert!((1..=MAX_K).contains(&k));
        SetPartition {
            k: k as u8,
            rgs: [0u8; MAX_K],
        }
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    pub fn assignment(&self) -> &[u8] {
        &self.rgs[..self.k()]
    }

    pub fn num_blocks(&self) -> usize {
        self.assignment().iter().copied().max().map_or(0, |m| m as usize + 1)
    }

    /// `k` minus the number of blocks.
    pub fn rank(&self) -> usize {
        self.k() - self.num_blocks()
    }

    pub fn is_finest(&self) -> bool {
        self.num_blocks() == self.k()
    }

    pub fn is_coarsest(&self) -> bool {
        self.num_blocks() == 1
    }

    /// Blocks as sorted lists of 0-based elements, ordered by least element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (i, &b) in self.assignment().iter().enumerate() {
            blocks[b as usize].push(i);
        }
        blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_blocks()];
        for &b in self.assignment() {
            sizes[b as usize] += 1;
        }
        sizes
    }

    fn same_k(&self, other: &Self) -> Result<()> {
        Error::check_dims(self.k(), other.k())
    }

    /// True iff every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Self) -> Result<bool> {
        self.same_k(other)?;
        Ok(self.refines_unchecked(other))
    }

    pub(crate) fn refines_unchecked(&self, other: &Self) -> bool {
        let mut image = [u8::MAX; MAX_K];
        for (&a, &b) in self.assignment().iter().zip(other.assignment()) {
            let slot = &mut image[a as usize];
            if *slot == u8::MAX {
                *slot = b;
            } else if *slot != b {
                return false;
            }
        }
        true
    }

    /// Coarsest common refinement: non-empty pairwise block intersections.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.same_k(other)?;
        let pairs: Vec<(u8, u8)> = self
            .assignment()
            .iter()
            .zip(other.assignment())
            .map(|(&a, &b)| (a, b))
            .collect();
        Self::from_labels(&pairs)
    }

    /// Finest common coarsening, by union-find over both block structures.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.same_k(other)?;
        let k = self.k();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for part in [self, other] {
            let mut first = [usize::MAX; MAX_K];
            for (i, &b) in part.assignment().iter().enumerate() {
                let b = b as usize;
                if first[b] == usize::MAX {
                    first[b] = i;
                } else {
                    let (ra, rb) = (find(&mut parent, first[b]), find(&mut parent, i));
                    if ra != rb {
                        parent[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
        let roots: Vec<usize> = (0..k).map(|i| find(&mut parent, i)).collect();
        Self::from_labels(&roots)
    }

    /// The partition of a tuple: positions grouped by equal value.
    pub fn of_tuple<T: PartialEq>(values: &[T]) -> Result<Self> {
        Self::from_labels(values)
    }

    /// `δ_π`: 1 iff `values` is constant on every block.
    pub fn delta<T: PartialEq>(&self, values: &[T]) -> Result<bool> {
        Error::check_dims(self.k(), values.len())?;
        Ok(self.delta_unchecked(values))
    }

    pub(crate) fn delta_unchecked<T: PartialEq>(&self, values: &[T]) -> bool {
        let mut rep = [usize::MAX; MAX_K];
        for (i, &b) in self.assignment().iter().enumerate() {
            let r = &mut rep[b as usize];
            if *r == usize::MAX {
                *r = i;
            } else if values[*r] != values[i] {
                return false;
            }
        }
        true
    }

    /// Parses `"1268|34|57"` (single digits, `k <= 9`) or `"1,2,6,8|3,4|5,7"`.
    pub fn parse(text: &str, k: usize) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::parse("empty partition string"));
        }
        let mut blocks = Vec::new();
        for raw in text.split('|') {
            let raw = raw.trim();
            if raw.is_empty() {
                return Err(Error::parse(format!("empty block in {text:?}")));
            }
            let block: Vec<usize> = if raw.contains(',') || k > 9 {
                raw.split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::parse(format!("bad element {t:?}")))
                    })
                    .collect::<Result<_>>()?
            } else {
                raw.chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or_else(|| Error::parse(format!("bad element {c:?}")))
                    })
                    .collect::<Result<_>>()?
            };
            blocks.push(block);
        }
        Self::from_blocks(k, &blocks)
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.k() > 9 { "," } else { "" };
        let blocks = self.blocks();
        for (b, block) in blocks.iter().enumerate() {
            if b > 0 {
                f.write_str("|")?;
            }
            for (j, e) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(sep)?;
                }
                write!(f, "{}", e + 1)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetPartition({self})")
    }
}

/// Parses a partition, taking `k` to be the number of listed elements.
impl FromStr for SetPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let count = if s.contains(',') {
            s.split(['|', ',']).filter(|t| !t.trim().is_empty()).count()
        } else {
            s.chars().filter(|c| c.is_ascii_digit()).count()
        };
        Self::parse(s, count)
    }
}

impl Serialize for SetPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SetPartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
