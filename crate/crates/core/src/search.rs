//! Largest subsets of `F_q^n` avoiding a property: exact branch-and-bound,
//! seeded greedy lower bounds, a brute-force oracle for tiny spaces, and
//! comparison against the closed-form bounds.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bounds::{
    bound_linear_equation, bound_obtuse, partition_rank_upper_bound_polynomial, BoundReport,
};
use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::ffield::{Field, FieldElement, FieldVector};
use crate::tensors::{check_avoids, creates_forbidden, Avoidance, PropertyKind, PropertySpec};

pub const DEFAULT_MAX_POINTS: u64 = 200;
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;
/// Largest space the all-subsets oracle accepts.
pub const NAIVE_MAX_POINTS: u64 = 30;
const DEGREE_SCAN_LIMIT: u128 = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exact,
    Greedy,
    RandomRestart,
}

/// Order in which points are offered to the search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointOrder {
    /// Ascending degree in the conflict hypergraph, ties by index.
    #[default]
    Degree,
    Index,
    Reverse,
}

fn default_node_budget() -> u64 {
    DEFAULT_NODE_BUDGET
}

fn default_max_points() -> u64 {
    DEFAULT_MAX_POINTS
}

fn default_true() -> bool {
    true
}

fn default_restarts() -> usize {
    32
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub property: PropertySpec,
    /// Defaults to the property's usual avoidance mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub avoidance: Option<Avoidance>,
    pub mode: SearchMode,
    #[serde(default)]
    pub seed: u64,
    /// Per top-level branch of the exact search.
    #[serde(default = "default_node_budget")]
    pub node_budget: u64,
    /// Wall-clock limit. Results that hit it depend on machine speed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_budget_ms: Option<u64>,
    #[serde(default = "default_true")]
    pub symmetry_reduction: bool,
    #[serde(default = "default_max_points")]
    pub max_points: u64,
    #[serde(default)]
    pub order: PointOrder,
    #[serde(default = "default_restarts")]
    pub restarts: usize,
}

impl SearchConfig {
    pub fn new(property: PropertySpec, mode: SearchMode) -> Self {
        SearchConfig {
            property,
            avoidance: None,
            mode,
            seed: 0,
            node_budget: DEFAULT_NODE_BUDGET,
            time_budget_ms: None,
            symmetry_reduction: true,
            max_points: DEFAULT_MAX_POINTS,
            order: PointOrder::Degree,
            restarts: default_restarts(),
        }
    }

    pub fn avoidance(&self) -> Avoidance {
        self.avoidance.unwrap_or_else(|| self.property.default_avoidance())
    }

    pub fn field(&self) -> &Field {
        self.property.field()
    }

    pub fn n(&self) -> usize {
        self.property.n()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProofStatus {
    ExactOptimal,
    LowerBoundOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub property: String,
    pub field: String,
    pub n: usize,
    pub mode: SearchMode,
    pub seed: u64,
    pub order: PointOrder,
    pub symmetry_reduced: bool,
    /// Lexicographic indices of the points of the best set, ascending.
    pub best_indices: Vec<u64>,
    pub best_set: Vec<Value>,
    pub size: usize,
    pub proof_status: ProofStatus,
    pub nodes_explored: u64,
    pub budget_exhausted: bool,
    /// Re-check of the best set from scratch.
    pub witness_check: bool,
}

impl SearchResult {
    pub fn vectors(&self, field: &Field) -> Vec<FieldVector> {
        self.best_indices.iter().map(|&i| field.vector_from_index(i, self.n)).collect()
    }
}

struct Space {
    points: Vec<FieldVector>,
    /// Position in search order -> lexicographic index.
    order: Vec<usize>,
}

fn build_space(config: &SearchConfig) -> Result<Space> {
    let field = config.field();
    let count = (field.q() as u128).saturating_pow(config.n() as u32);
    if count > config.max_points as u128 {
        return Err(Error::SizeLimit {
            what: "points in the search space".into(),
            needed: count.to_string(),
            limit: config.max_points.to_string(),
        });
    }
    let points: Vec<FieldVector> = field.vectors(config.n(), u64::MAX)?.collect();
    let order = match config.order {
        PointOrder::Index => (0..points.len()).collect(),
        PointOrder::Reverse => (0..points.len()).rev().collect(),
        PointOrder::Degree => {
            let degrees = conflict_degrees(&config.property, config.avoidance(), &points);
            let mut idx: Vec<usize> = (0..points.len()).collect();
            if let Some(d) = degrees {
                idx.sort_by_key(|&i| (d[i], i));
            }
            idx
        }
    };
    Ok(Space { points, order })
}

/// Number of forbidden tuples each point takes part in, when the full
/// tuple scan is affordable.
fn conflict_degrees(spec: &PropertySpec, avoid: Avoidance, points: &[FieldVector]) -> Option<Vec<u64>> {
    let total = (points.len() as u128).checked_pow(spec.k() as u32)?;
    if total > DEGREE_SCAN_LIMIT || points.len() > 128 {
        return None;
    }
    let edges = hyperedges(spec, avoid, points);
    let mut deg = vec![0u64; points.len()];
    for e in edges {
        for (i, d) in deg.iter_mut().enumerate() {
            if e >> i & 1 == 1 {
                *d += 1;
            }
        }
    }
    Some(deg)
}

/// Point sets (as bitmasks over `points`) of all forbidden tuples, sorted
/// and deduplicated. Requires at most 128 points.
fn hyperedges(spec: &PropertySpec, avoid: Avoidance, points: &[FieldVector]) -> Vec<u128> {
    assert!(points.len() <= 128);
    let k = spec.k();
    let n = points.len();
    let mut idx = vec![0usize; k];
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    if n == 0 {
        return edges;
    }
    loop {
        // only nondecreasing index sequences; the predicate is checked on
        // every ordering of the multiset below
        let mask = idx.iter().fold(0u128, |m, &i| m | 1 << i);
        if !seen.contains(&mask) && any_ordering_forbidden(spec, avoid, &idx, points) {
            seen.insert(mask);
            edges.push(mask);
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                edges.sort_unstable();
                return edges;
            }
            pos -= 1;
            if idx[pos] + 1 < n {
                idx[pos] += 1;
                for j in pos + 1..k {
                    idx[j] = idx[pos];
                }
                break;
            }
        }
    }
}

fn any_ordering_forbidden(spec: &PropertySpec, avoid: Avoidance, multiset: &[usize], points: &[FieldVector]) -> bool {
    let mut perm = multiset.to_vec();
    let mut t: Vec<&[FieldElement]> = Vec::with_capacity(perm.len());
    loop {
        t.clear();
        t.extend(perm.iter().map(|&i| points[i].entries()));
        if spec.forbidden_slices(avoid, &t) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

struct Explorer<'a> {
    spec: &'a PropertySpec,
    avoid: Avoidance,
    points: &'a [FieldVector],
    node_budget: u64,
    deadline: Option<Instant>,
    nodes: u64,
    exhausted: bool,
    best: Vec<usize>,
    best_size: usize,
}

impl Explorer<'_> {
    fn can_add(&self, set: &[usize], c: usize) -> bool {
        let slices: Vec<&[FieldElement]> = set.iter().map(|&i| self.points[i].entries()).collect();
        !creates_forbidden(self.spec, self.avoid, &slices, self.points[c].entries())
    }

    fn dfs(&mut self, set: &mut Vec<usize>, candidates: &[usize]) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.node_budget
            || (self.nodes % 1024 == 0 && self.deadline.is_some_and(|d| Instant::now() > d))
        {
            self.exhausted = true;
            return;
        }
        if set.len() > self.best_size {
            self.best_size = set.len();
            self.best = set.clone();
        }
        for (pos, &c) in candidates.iter().enumerate() {
            if set.len() + candidates.len() - pos <= self.best_size {
                return;
            }
            set.push(c);
            let rest: Vec<usize> = candidates[pos + 1..]
                .iter()
                .copied()
                .filter(|&d| self.can_add(set, d))
                .collect();
            self.dfs(set, &rest);
            set.pop();
            if self.exhausted {
                return;
            }
        }
    }
}

fn sorted_key(set: &[usize]) -> Vec<usize> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s
}

/// Larger wins; among equal sizes the lexicographically smaller sorted
/// index list wins.
fn better(a: &[usize], b: &[usize]) -> bool {
    a.len() > b.len() || (a.len() == b.len() && sorted_key(a) < sorted_key(b))
}

fn greedy_in_order(spec: &PropertySpec, avoid: Avoidance, points: &[FieldVector], order: &[usize]) -> Vec<usize> {
    let mut set: Vec<usize> = Vec::new();
    let mut slices: Vec<&[FieldElement]> = Vec::new();
    for &c in order {
        if !creates_forbidden(spec, avoid, &slices, points[c].entries()) {
            set.push(c);
            slices.push(points[c].entries());
        }
    }
    set
}

fn random_restart(config: &SearchConfig, space: &Space) -> Vec<usize> {
    let spec = &config.property;
    let avoid = config.avoidance();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let orders: Vec<Vec<usize>> = (0..config.restarts.max(1))
        .map(|_| {
            let mut o = space.order.clone();
            o.shuffle(&mut rng);
            o
        })
        .collect();
    orders
        .par_iter()
        .map(|o| greedy_in_order(spec, avoid, &space.points, o))
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Vec::new(), |best, s| if better(&s, &best) { s } else { best })
}

fn finish(config: &SearchConfig, space: &Space, best: Vec<usize>, status: ProofStatus, nodes: u64, exhausted: bool, sym: bool) -> Result<SearchResult> {
    let field = config.field();
    let best = sorted_key(&best);
    let vectors: Vec<FieldVector> = best.iter().map(|&i| space.points[i].clone()).collect();
    let budget = (vectors.len() as u64).saturating_pow(config.property.k() as u32).max(1);
    let witness_check = check_avoids(&vectors, &config.property, config.avoidance(), budget)?.passed();
    Ok(SearchResult {
        property: config.property.name().to_string(),
        field: field.to_string(),
        n: config.n(),
        mode: config.mode,
        seed: config.seed,
        order: config.order,
        symmetry_reduced: sym,
        best_indices: best.iter().map(|&i| i as u64).collect(),
        best_set: vectors.iter().map(|v| field.vector_to_json(v)).collect(),
        size: best.len(),
        proof_status: status,
        nodes_explored: nodes,
        budget_exhausted: exhausted,
        witness_check,
    })
}

/// Runs the configured search. Budgets that run out give a
/// lower-bound-only result rather than an error.
pub fn max_avoiding_set(config: &SearchConfig) -> Result<SearchResult> {
    let space = build_space(config)?;
    let spec = &config.property;
    let avoid = config.avoidance();
    match config.mode {
        SearchMode::Greedy => {
            let best = greedy_in_order(spec, avoid, &space.points, &space.order);
            finish(config, &space, best, ProofStatus::LowerBoundOnly, 0, false, false)
        }
        SearchMode::RandomRestart => {
            let best = random_restart(config, &space);
            finish(config, &space, best, ProofStatus::LowerBoundOnly, 0, false, false)
        }
        SearchMode::Exact => exact(config, &space),
    }
}

fn exact(config: &SearchConfig, space: &Space) -> Result<SearchResult> {
    let spec = &config.property;
    let avoid = config.avoidance();
    let deadline = config.time_budget_ms.map(|ms| Instant::now() + Duration::from_millis(ms));
    let greedy = greedy_in_order(spec, avoid, &space.points, &space.order);

    let zero = 0usize; // the zero vector has lexicographic index 0
    let sym = config.symmetry_reduction
        && spec.is_translation_invariant(512, config.seed ^ 0x5eed)
        && !creates_forbidden(spec, avoid, &[], space.points[zero].entries());
    let explorer = |best_size: usize| Explorer {
        spec,
        avoid,
        points: &space.points,
        node_budget: config.node_budget,
        deadline,
        nodes: 0,
        exhausted: false,
        best: Vec::new(),
        best_size,
    };

    let (root, root_candidates): (Vec<usize>, Vec<usize>) = if sym {
        let probe = explorer(0);
        let cands = space
            .order
            .iter()
            .copied()
            .filter(|&c| c != zero && probe.can_add(&[zero], c))
            .collect();
        (vec![zero], cands)
    } else {
        (Vec::new(), space.order.clone())
    };

    // each top-level branch fixes its first point and runs on its own, so
    // the outcome does not depend on scheduling
    let floor = greedy.len().saturating_sub(1);
    let branches: Vec<(Vec<usize>, u64, bool)> = (0..root_candidates.len())
        .into_par_iter()
        .map(|pos| {
            let mut ex = explorer(floor);
            let mut set = root.clone();
            let c = root_candidates[pos];
            if set.len() + root_candidates.len() - pos <= floor {
                return (Vec::new(), 0, false);
            }
            set.push(c);
            let rest: Vec<usize> = root_candidates[pos + 1..]
                .iter()
                .copied()
                .filter(|&d| ex.can_add(&set, d))
                .collect();
            ex.dfs(&mut set, &rest);
            (ex.best, ex.nodes, ex.exhausted)
        })
        .collect();

    let mut best = if sym && greedy.len() <= 1 { root.clone() } else { Vec::new() };
    if better(&greedy, &best) {
        best = greedy;
    }
    let mut nodes = 1;
    let mut exhausted = false;
    for (b, n, e) in branches {
        nodes += n;
        exhausted |= e;
        if better(&b, &best) {
            best = b;
        }
    }
    let status = if exhausted { ProofStatus::LowerBoundOnly } else { ProofStatus::ExactOptimal };
    finish(config, space, best, status, nodes, exhausted, sym)
}

/// Largest avoiding subset by checking all `2^N` subsets, for `N <= 30`
/// points. Independent of the branch-and-bound: it works from the list of
/// forbidden point sets.
pub fn naive_max_avoiding(spec: &PropertySpec, avoid: Avoidance) -> Result<(usize, Vec<u64>)> {
    let field = spec.field();
    let count = (field.q() as u128).saturating_pow(spec.n() as u32);
    if count > NAIVE_MAX_POINTS as u128 {
        return Err(Error::SizeLimit {
            what: "points for the all-subsets oracle".into(),
            needed: count.to_string(),
            limit: NAIVE_MAX_POINTS.to_string(),
        });
    }
    let points: Vec<FieldVector> = field.vectors(spec.n(), NAIVE_MAX_POINTS)?.collect();
    let n = points.len();
    let edges = hyperedges(spec, avoid, &points);
    // edges grouped by their highest point
    let mut by_top: Vec<Vec<u32>> = vec![Vec::new(); n];
    for e in edges {
        let top = 127 - e.leading_zeros() as usize;
        by_top[top].push(e as u32);
    }
    let total = 1usize << n;
    let mut ok = vec![0u64; total.div_ceil(64)];
    ok[0] |= 1;
    let mut best = (0u32, 0usize);
    for s in 1..total {
        let top = usize::BITS as usize - 1 - s.leading_zeros() as usize;
        let prev = s & !(1 << top);
        if ok[prev / 64] >> (prev % 64) & 1 == 0 {
            continue;
        }
        let s32 = s as u32;
        if by_top[top].iter().any(|&e| e & s32 == e) {
            continue;
        }
        ok[s / 64] |= 1 << (s % 64);
        let size = s32.count_ones();
        if size > best.0 {
            best = (size, s);
        }
    }
    let indices = (0..n).filter(|i| best.1 >> i & 1 == 1).map(|i| i as u64).collect();
    Ok((best.0 as usize, indices))
}

/// The closed-form bounds that apply to the configured property.
pub fn default_bounds(config: &SearchConfig) -> Result<Vec<BoundReport>> {
    let spec = &config.property;
    let field = spec.field();
    let (n, q, k) = (spec.n() as u64, field.q(), spec.k() as u64);
    let mut out = Vec::new();
    match spec.kind() {
        PropertyKind::AcuteAngle | PropertyKind::ObtuseAngle if q % 2 == 1 => out.push(bound_obtuse(n, q)?),
        PropertyKind::BalancedLinearEquation { .. } if field.ell() == 1 => {
            let m = match config.avoidance() {
                Avoidance::NonTrivial { max_distinct } => max_distinct as u64,
                Avoidance::Distinct => k,
            };
            if (3..=k).contains(&m) && q >= 3 {
                out.push(bound_linear_equation(n, q, k, m)?);
            }
        }
        PropertyKind::KRightCorner => {
            let kp = k - 1;
            let value = binomial(n + (kp - 1) * q, (kp - 1) * (q - 1));
            out.push(BoundReport::new(
                "right_corner",
                serde_json::json!({"n": n, "q": q, "k": kp}),
                value,
                "C(n + (k-1) q, (k-1)(q-1))",
            ));
        }
        PropertyKind::RightKConfiguration
        | PropertyKind::EqualSquaredDistances
        | PropertyKind::PairwiseOrthogonal
        | PropertyKind::Identifier { .. } => {
            let g = spec.identifier().expect("identifier kind");
            out.push(partition_rank_upper_bound_polynomial(n, k, g.m as u64, g.degree() as u64, q)?);
        }
        _ => {}
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SandwichEntry {
    pub bound: String,
    pub value: String,
    pub approx: Option<f64>,
    /// For linear-equation bounds: the exact count bound before the Markov
    /// step.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_value: Option<String>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SandwichReport {
    pub search: SearchResult,
    pub bounds: Vec<SandwichEntry>,
    pub consistent: bool,
}

fn at_most(size: usize, report: &BoundReport) -> bool {
    if let Some(v) = report.integer_value() {
        return num_bigint::BigInt::from(size) <= v;
    }
    if let Ok(r) = report.value.parse::<num_rational::BigRational>() {
        return num_rational::BigRational::from_integer(size.into()) <= r;
    }
    report.approx.is_some_and(|a| size as f64 <= a)
}

/// Compares a search result with upper bounds; a result exceeding any bound
/// makes the report inconsistent.
pub fn sandwich_report(result: SearchResult, bounds: &[BoundReport]) -> SandwichReport {
    let entries: Vec<SandwichEntry> = bounds
        .iter()
        .map(|b| {
            let exact_value = b
                .inputs
                .get("exact_partition_rank_bound")
                .and_then(Value::as_str)
                .map(str::to_string);
            let mut holds = at_most(result.size, b);
            if let Some(e) = &exact_value {
                holds &= e.parse::<num_bigint::BigInt>().is_ok_and(|v| num_bigint::BigInt::from(result.size) <= v);
            }
            SandwichEntry {
                bound: b.name.clone(),
                value: b.value.clone(),
                approx: b.approx,
                exact_value,
                holds,
            }
        })
        .collect();
    SandwichReport {
        consistent: result.witness_check && entries.iter().all(|e| e.holds),
        search: result,
        bounds: entries,
    }
}
