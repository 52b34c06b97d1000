//! Properties of `k`-tuples of vectors in `F_q^n`, each with two independent
//! realisations: a semantic predicate and a tensor built from polynomials.
//! The verification routines in [`verify`] compare the two.

mod polynomial;
mod verify;

use std::collections::HashMap;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{Field, FieldElement, FieldVector};

pub use polynomial::{Expr, PolynomialSpec};
pub use verify::{
    check_identifier, verify_decomposition, verify_diagonalization, verify_tensor_semantics, ConditionResult,
    DecompositionReport, DiagonalizationReport, IdentifierReport, Mode, SemanticsReport, Witness,
};

/// Default ceiling on the number of tuples a verification may evaluate.
pub const DEFAULT_TUPLE_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PropertyKind {
    /// `x_1 .. x_k, x_{k+1}` distinct with the differences `x_j - x_{k+1}`
    /// mutually orthogonal. The tuple arity is `k + 1`.
    KRightCorner,
    /// Distinct `x, y, z` with `<y - x, z - x> = 0` (right angle at `x`).
    RightAngleTriple,
    /// Distinct `x, y, z` with `2<x - y, x - z>` a nonzero square.
    AcuteAngle,
    /// Distinct `x, y, z` with `2<x - y, x - z>` a non-square.
    ObtuseAngle,
    /// `a_1 x_1 + ... + a_k x_k = 0` with `Σ a_i = 0`.
    BalancedLinearEquation { coefficients: Vec<i64> },
    /// `<x_i - x_j, x_j - x_l> = 0` for all distinct indices `i, j, l`.
    RightKConfiguration,
    /// All squared distances `|x_i - x_j|^2`, `i < j`, are equal.
    EqualSquaredDistances,
    /// `<x_i, x_j> = 0` for all `i < j`.
    PairwiseOrthogonal,
    /// The property "g vanishes on every increasing `m`-subset", or, when
    /// `target` is given, the target's predicate with `g` as its claimed
    /// identifier.
    Identifier {
        g: PolynomialSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        target: Option<Box<PropertyKind>>,
    },
}

impl PropertyKind {
    pub fn name(&self) -> &'static str {
        match self {
            PropertyKind::KRightCorner => "k_right_corner",
            PropertyKind::RightAngleTriple => "right_angle_triple",
            PropertyKind::AcuteAngle => "acute_angle",
            PropertyKind::ObtuseAngle => "obtuse_angle",
            PropertyKind::BalancedLinearEquation { .. } => "balanced_linear_equation",
            PropertyKind::RightKConfiguration => "right_k_configuration",
            PropertyKind::EqualSquaredDistances => "equal_squared_distances",
            PropertyKind::PairwiseOrthogonal => "pairwise_orthogonal",
            PropertyKind::Identifier { .. } => "identifier",
        }
    }

    /// The polynomial whose vanishing pattern the tensor tests, for the
    /// kinds built as `Π (1 - g^(q-1))` over increasing `m`-subsets.
    pub fn identifier(&self) -> Option<PolynomialSpec> {
        match self {
            PropertyKind::RightKConfiguration => Some(PolynomialSpec::squared_distance()),
            PropertyKind::EqualSquaredDistances => Some(PolynomialSpec::distance_difference()),
            PropertyKind::PairwiseOrthogonal => Some(PolynomialSpec::dot()),
            PropertyKind::Identifier { g, .. } => Some(g.clone()),
            _ => None,
        }
    }

    pub fn claim(&self) -> TensorClaim {
        match self {
            PropertyKind::RightAngleTriple | PropertyKind::AcuteAngle | PropertyKind::ObtuseAngle => {
                TensorClaim::PatternTable
            }
            _ => TensorClaim::Indicator,
        }
    }
}

/// What the tensor of a property is supposed to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TensorClaim {
    /// `T = 1` exactly on tuples with the property, `0` elsewhere.
    Indicator,
    /// `T = 0` on tuples with a repeated entry and `T = 1` on distinct
    /// tuples without the property; no claim on tuples with it.
    PatternTable,
}

/// Which tuples with the property a set must not contain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Avoidance {
    /// Tuples with pairwise distinct entries.
    Distinct,
    /// Tuples taking between 2 and `max_distinct` distinct values.
    NonTrivial { max_distinct: usize },
}

impl Avoidance {
    pub fn admits(&self, distinct_values: usize, k: usize) -> bool {
        match *self {
            Avoidance::Distinct => distinct_values == k,
            Avoidance::NonTrivial { max_distinct } => (2..=max_distinct).contains(&distinct_values),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawPropertySpec {
    #[serde(flatten)]
    kind: PropertyKind,
    k: usize,
    field: Field,
    n: usize,
}

/// A property on `k`-tuples from `F_q^n`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "RawPropertySpec", into = "RawPropertySpec")]
pub struct PropertySpec {
    kind: PropertyKind,
    k: usize,
    field: Field,
    n: usize,
    identifier: Option<PolynomialSpec>,
    residues: Vec<FieldElement>,
    nonresidues: Vec<FieldElement>,
}

impl PartialEq for PropertySpec {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.k == other.k && self.field == other.field && self.n == other.n
    }
}

impl TryFrom<RawPropertySpec> for PropertySpec {
    type Error = Error;

    fn try_from(raw: RawPropertySpec) -> Result<Self> {
        PropertySpec::new(raw.kind, raw.k, raw.field, raw.n)
    }
}

impl From<PropertySpec> for RawPropertySpec {
    fn from(spec: PropertySpec) -> Self {
        RawPropertySpec {
            kind: spec.kind,
            k: spec.k,
            field: spec.field,
            n: spec.n,
        }
    }
}

fn distinct_count(t: &[&[FieldElement]]) -> usize {
    let mut seen: Vec<&[FieldElement]> = Vec::with_capacity(t.len());
    for v in t {
        if !seen.contains(v) {
            seen.push(v);
        }
    }
    seen.len()
}

fn all_distinct(t: &[&[FieldElement]]) -> bool {
    distinct_count(t) == t.len()
}

/// Calls `visit` on each increasing index sequence of length `m` below `k`
/// until it returns false; reports whether every call returned true.
fn for_each_subset(k: usize, m: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    if m > k {
        return true;
    }
    let mut idx: Vec<usize> = (0..m).collect();
    loop {
        if !visit(&idx) {
            return false;
        }
        let mut i = m;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if idx[i] < k - m + i {
                idx[i] += 1;
                for j in i + 1..m {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

impl PropertySpec {
    pub fn new(kind: PropertyKind, k: usize, field: Field, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::config("dimension n must be at least 1"));
        }
        let need = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::config(format!("{}: {what} (got k = {k})", kind.name())))
            }
        };
        match &kind {
            PropertyKind::KRightCorner => need(k >= 3, "tuple arity must be at least 3")?,
            PropertyKind::RightAngleTriple | PropertyKind::AcuteAngle | PropertyKind::ObtuseAngle => {
                need(k == 3, "angle properties act on triples")?
            }
            PropertyKind::BalancedLinearEquation { coefficients } => {
                need(coefficients.len() == k, "one coefficient per tuple entry")?;
                need(k >= 2, "at least two variables")?;
                let s: i64 = coefficients.iter().sum();
                if field.from_i64(s) != field.zero() {
                    return Err(Error::config(format!(
                        "coefficients {coefficients:?} sum to {s}, which is nonzero in {field}; the equation must be balanced"
                    )));
                }
            }
            PropertyKind::RightKConfiguration => need(k >= 3, "at least three points")?,
            PropertyKind::EqualSquaredDistances => need(k >= 3, "at least three points")?,
            PropertyKind::PairwiseOrthogonal => need(k >= 2, "at least two points")?,
            PropertyKind::Identifier { g, target } => {
                need(g.m >= 1 && g.m <= k, "identifier arity m must satisfy 1 <= m <= k")?;
                g.check(n)?;
                if let Some(t) = target {
                    if matches!(**t, PropertyKind::Identifier { .. }) {
                        return Err(Error::config("identifier target must be a concrete property"));
                    }
                    PropertySpec::new((**t).clone(), k, field.clone(), n)?;
                }
            }
        }
        let (residues, nonresidues) = match kind {
            PropertyKind::AcuteAngle | PropertyKind::ObtuseAngle => (field.quadratic_residues(), field.nonresidues()),
            _ => (Vec::new(), Vec::new()),
        };
        Ok(PropertySpec {
            identifier: kind.identifier(),
            kind,
            k,
            field,
            n,
            residues,
            nonresidues,
        })
    }

    pub fn kind(&self) -> &PropertyKind {
        &self.kind
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn claim(&self) -> TensorClaim {
        self.kind.claim()
    }

    pub fn identifier(&self) -> Option<&PolynomialSpec> {
        self.identifier.as_ref()
    }

    /// The avoidance mode each property is usually paired with.
    pub fn default_avoidance(&self) -> Avoidance {
        match self.kind {
            PropertyKind::BalancedLinearEquation { .. } => Avoidance::NonTrivial { max_distinct: self.k },
            _ => Avoidance::Distinct,
        }
    }

    fn check_tuple(&self, tuple: &[FieldVector]) -> Result<()> {
        Error::check_dims(self.k, tuple.len())?;
        for v in tuple {
            Error::check_dims(self.n, v.len())?;
        }
        Ok(())
    }

    fn dot(&self, u: &[FieldElement], v: &[FieldElement]) -> FieldElement {
        self.field.dot(u, v)
    }

    /// `<a - b, c - d>`.
    fn diff_dot(&self, a: &[FieldElement], b: &[FieldElement], c: &[FieldElement], d: &[FieldElement]) -> FieldElement {
        let f = &self.field;
        (0..a.len()).fold(f.zero(), |acc, s| {
            f.add(acc, f.mul(f.sub(a[s], b[s]), f.sub(c[s], d[s])))
        })
    }

    /// `2<x - y, x - z>`.
    fn angle_value(&self, t: &[&[FieldElement]]) -> FieldElement {
        let v = self.diff_dot(t[0], t[1], t[0], t[2]);
        self.field.add(v, v)
    }

    /// The semantic predicate, computed directly from its definition.
    pub fn holds(&self, tuple: &[FieldVector]) -> Result<bool> {
        self.check_tuple(tuple)?;
        let t: Vec<&[FieldElement]> = tuple.iter().map(FieldVector::entries).collect();
        Ok(self.holds_slices(&t))
    }

    pub(crate) fn holds_slices(&self, t: &[&[FieldElement]]) -> bool {
        relation(self, &self.kind, t)
    }

    /// Value of the tensor realisation.
    pub fn tensor_value(&self, tuple: &[FieldVector]) -> Result<FieldElement> {
        self.check_tuple(tuple)?;
        let t: Vec<&[FieldElement]> = tuple.iter().map(FieldVector::entries).collect();
        Ok(self.tensor_slices(&t))
    }

    pub(crate) fn tensor_slices(&self, t: &[&[FieldElement]]) -> FieldElement {
        let f = &self.field;
        let q1 = f.q() - 1;
        let sep = |x: FieldElement| f.sub(f.one(), f.pow(x, q1));
        match &self.kind {
            PropertyKind::KRightCorner => {
                let apex = t[self.k - 1];
                let mut acc = f.one();
                for j in 0..self.k - 1 {
                    for l in j + 1..self.k - 1 {
                        acc = f.mul(acc, sep(self.diff_dot(t[j], apex, t[l], apex)));
                    }
                }
                acc
            }
            PropertyKind::RightAngleTriple => {
                if t[1] == t[2] {
                    return f.zero();
                }
                f.pow(self.diff_dot(t[1], t[0], t[2], t[0]), q1)
            }
            PropertyKind::AcuteAngle | PropertyKind::ObtuseAngle => {
                if t[1] == t[2] {
                    return f.zero();
                }
                let set = if matches!(self.kind, PropertyKind::AcuteAngle) {
                    &self.residues
                } else {
                    &self.nonresidues
                };
                let v = self.angle_value(t);
                let prod = f.product(set.iter().map(|&a| {
                    let d = f.sub(v, a);
                    f.mul(d, d)
                }));
                f.sub(f.one(), prod)
            }
            PropertyKind::BalancedLinearEquation { coefficients } => {
                let a: Vec<FieldElement> = coefficients.iter().map(|&c| f.from_i64(c)).collect();
                f.product((0..self.n).map(|s| {
                    let lin = f.sum(a.iter().zip(t).map(|(&ai, x)| f.mul(ai, x[s])));
                    sep(lin)
                }))
            }
            _ => {
                let g = self.identifier.as_ref().expect("identifier-based kind");
                let mut acc = f.one();
                let mut args: Vec<&[FieldElement]> = Vec::with_capacity(g.m);
                for_each_subset(self.k, g.m, |idx| {
                    args.clear();
                    args.extend(idx.iter().map(|&i| t[i]));
                    acc = f.mul(acc, sep(g.eval(f, &args)));
                    !f.is_zero(acc)
                });
                acc
            }
        }
    }

    /// Whether `tuple` is one that a set avoiding the property under
    /// `avoid` must not contain.
    pub(crate) fn forbidden_slices(&self, avoid: Avoidance, t: &[&[FieldElement]]) -> bool {
        avoid.admits(distinct_count(t), self.k) && self.holds_slices(t)
    }

    /// `g` vanishes on every increasing `m`-subset of the tuple.
    pub(crate) fn identifier_vanishes(&self, t: &[&[FieldElement]]) -> Option<bool> {
        let g = self.identifier.as_ref()?;
        let f = &self.field;
        let mut args: Vec<&[FieldElement]> = Vec::with_capacity(g.m);
        Some(for_each_subset(self.k, g.m, |idx| {
            args.clear();
            args.extend(idx.iter().map(|&i| t[i]));
            f.is_zero(g.eval(f, &args))
        }))
    }

    /// Semantic check that `x -> x + c` preserves the predicate on
    /// `samples` random tuples.
    pub fn is_translation_invariant(&self, samples: usize, seed: u64) -> bool {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let q = self.field.q();
        let f = &self.field;
        let random_vec = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<FieldElement> {
            (0..self.n).map(|_| f.element(rng.random_range(0..q))).collect()
        };
        (0..samples).all(|_| {
            let tuple: Vec<Vec<FieldElement>> = (0..self.k).map(|_| random_vec(&mut rng)).collect();
            let shift = random_vec(&mut rng);
            let moved: Vec<Vec<FieldElement>> = tuple
                .iter()
                .map(|v| v.iter().zip(&shift).map(|(&a, &b)| f.add(a, b)).collect())
                .collect();
            let t: Vec<&[FieldElement]> = tuple.iter().map(Vec::as_slice).collect();
            let m: Vec<&[FieldElement]> = moved.iter().map(Vec::as_slice).collect();
            self.holds_slices(&t) == self.holds_slices(&m)
        })
    }
}

fn relation(spec: &PropertySpec, kind: &PropertyKind, t: &[&[FieldElement]]) -> bool {
    let f = &spec.field;
    let k = t.len();
    match kind {
        PropertyKind::KRightCorner => {
            if !all_distinct(t) {
                return false;
            }
            let apex = t[k - 1];
            (0..k - 1).all(|j| (j + 1..k - 1).all(|l| f.is_zero(spec.diff_dot(t[j], apex, t[l], apex))))
        }
        PropertyKind::RightAngleTriple => all_distinct(t) && f.is_zero(spec.diff_dot(t[1], t[0], t[2], t[0])),
        PropertyKind::AcuteAngle => all_distinct(t) && spec.residues.binary_search(&spec.angle_value(t)).is_ok(),
        PropertyKind::ObtuseAngle => all_distinct(t) && spec.nonresidues.binary_search(&spec.angle_value(t)).is_ok(),
        PropertyKind::BalancedLinearEquation { coefficients } => (0..spec.n).all(|s| {
            let lin = f.sum(coefficients.iter().zip(t).map(|(&a, x)| f.mul(f.from_i64(a), x[s])));
            f.is_zero(lin)
        }),
        PropertyKind::RightKConfiguration => (0..k).all(|i| {
            (0..k).all(|j| {
                (0..k).all(|l| i == j || j == l || i == l || f.is_zero(spec.diff_dot(t[i], t[j], t[j], t[l])))
            })
        }),
        PropertyKind::EqualSquaredDistances => {
            let d0 = spec.diff_dot(t[0], t[1], t[0], t[1]);
            (0..k).all(|i| (i + 1..k).all(|j| spec.diff_dot(t[i], t[j], t[i], t[j]) == d0))
        }
        PropertyKind::PairwiseOrthogonal => (0..k).all(|i| (i + 1..k).all(|j| f.is_zero(spec.dot(t[i], t[j])))),
        PropertyKind::Identifier { target, .. } => match target {
            Some(target) => relation(spec, target, t),
            None => spec.identifier_vanishes(t).expect("identifier kind"),
        },
    }
}

/// Memoised tensor evaluation, safe to share between threads.
#[derive(Debug)]
pub struct TensorEval {
    spec: PropertySpec,
    memo: Mutex<HashMap<Vec<FieldVector>, FieldElement>>,
}

impl TensorEval {
    pub fn new(spec: PropertySpec) -> Self {
        TensorEval {
            spec,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn spec(&self) -> &PropertySpec {
        &self.spec
    }

    pub fn value(&self, tuple: &[FieldVector]) -> Result<FieldElement> {
        if let Some(v) = self.memo.lock().expect("memo lock").get(tuple) {
            return Ok(*v);
        }
        let v = self.spec.tensor_value(tuple)?;
        self.memo.lock().expect("memo lock").insert(tuple.to_vec(), v);
        Ok(v)
    }

    pub fn memo_len(&self) -> usize {
        self.memo.lock().expect("memo lock").len()
    }
}

/// Result of scanning a set for a forbidden tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AvoidCheck {
    Pass,
    Fail(Vec<FieldVector>),
}

impl AvoidCheck {
    pub fn passed(&self) -> bool {
        matches!(self, AvoidCheck::Pass)
    }
}

/// Scans all of `A^k` in lexicographic order for a forbidden tuple.
pub fn check_avoids(set: &[FieldVector], spec: &PropertySpec, avoid: Avoidance, budget: u64) -> Result<AvoidCheck> {
    for v in set {
        Error::check_dims(spec.n, v.len())?;
    }
    let total = (set.len() as u128).pow(spec.k as u32);
    if total > budget as u128 {
        return Err(Error::budget(format!("{total} tuples to scan, budget is {budget}")));
    }
    if set.is_empty() {
        return Ok(AvoidCheck::Pass);
    }
    let k = spec.k;
    let mut idx = vec![0usize; k];
    let mut t: Vec<&[FieldElement]> = vec![set[0].entries(); k];
    loop {
        for (slot, &i) in t.iter_mut().zip(&idx) {
            *slot = set[i].entries();
        }
        if spec.forbidden_slices(avoid, &t) {
            return Ok(AvoidCheck::Fail(idx.iter().map(|&i| set[i].clone()).collect()));
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(AvoidCheck::Pass);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < set.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Looks for a forbidden tuple over `set ∪ {new}` that uses `new`.
/// `set` must not contain `new`. Each such tuple is visited once, keyed by
/// the first position holding `new`.
pub(crate) fn creates_forbidden(
    spec: &PropertySpec,
    avoid: Avoidance,
    set: &[&[FieldElement]],
    new: &[FieldElement],
) -> bool {
    let k = spec.k;
    let pool_len = set.len() + 1;
    let at = |i: usize| if i == set.len() { new } else { set[i] };
    let mut t: Vec<&[FieldElement]> = vec![new; k];
    let mut idx = vec![0usize; k];
    for first in 0..k {
        // positions before `first` range over set, position `first` is new,
        // later positions over the whole pool
        let limit = |pos: usize| if pos < first { set.len() } else { pool_len };
        if first > 0 && set.is_empty() {
            break;
        }
        for (pos, slot) in idx.iter_mut().enumerate() {
            *slot = if pos == first { set.len() } else { 0 };
        }
        loop {
            for (slot, &i) in t.iter_mut().zip(&idx) {
                *slot = at(i);
            }
            if spec.forbidden_slices(avoid, &t) {
                return true;
            }
            let mut pos = k;
            let mut done = true;
            while pos > 0 {
                pos -= 1;
                if pos == first {
                    continue;
                }
                idx[pos] += 1;
                if idx[pos] < limit(pos) {
                    done = false;
                    break;
                }
                idx[pos] = 0;
            }
            if done {
                break;
            }
        }
    }
    false
}
