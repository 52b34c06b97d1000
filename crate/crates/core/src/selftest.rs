//! Self-checks over the whole toolkit.
//!
//! The quick level runs small instances of every identity in well under a
//! minute. The full level adds the acceptance criteria at their stated
//! sizes. Each check carries a stable identifier, and a fault can be
//! injected into one of the precomputed tables to confirm that the checks
//! built on it notice.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    bound_obtuse, gamma, gamma_exponent_identifier, gamma_range_check, identifier_exponent_discrepancies,
    markov_bound, markov_dominates, verify_poset_lemma_on, MarkovValue,
};
use crate::combinatorics::{binomial, factorial, signed_factorial, StirlingTable};
use crate::error::Result;
use crate::ffield::{harmonic_inverse_sum, Field, FieldElement, FieldVector};
use crate::indicators::{
    diagonal_value, distinctness_generator, indicator_coefficients, indicator_value_lemma, naslund_sum_check,
    rank_generator, Domain, PartitionFunction,
};
use crate::partition::{mobius_closed_form, PartitionLattice, SetPartition};
use crate::scalars::{Rationals, Scalars};
use crate::search::{
    default_bounds, max_avoiding_set, naive_max_avoiding, sandwich_report, PointOrder, ProofStatus, SearchConfig,
    SearchMode,
};
use crate::tensors::{
    verify_decomposition, verify_diagonalization, verify_tensor_semantics, check_identifier, Avoidance, Mode,
    PropertyKind, PropertySpec, DEFAULT_TUPLE_BUDGET,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Quick,
    Full,
}

/// A table that can be corrupted before the checks run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fault {
    Mobius,
    Stirling,
    Bell,
    Residues,
}

impl Fault {
    pub const ALL: [Fault; 4] = [Fault::Mobius, Fault::Stirling, Fault::Bell, Fault::Residues];

    pub fn name(self) -> &'static str {
        match self {
            Fault::Mobius => "mobius",
            Fault::Stirling => "stirling",
            Fault::Bell => "bell",
            Fault::Residues => "residues",
        }
    }
}

impl std::str::FromStr for Fault {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Fault::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown table {s:?}; expected mobius, stirling, bell or residues"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    /// Acceptance criterion the check belongs to, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criterion: Option<u8>,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub level: Level,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fault: Option<Fault>,
    pub checks: Vec<Check>,
    /// Identifiers of the failed checks, in run order.
    pub failures: Vec<String>,
    pub passed: bool,
}

impl SelftestReport {
    pub fn criterion_passed(&self, c: u8) -> Option<bool> {
        let mut any = false;
        let mut ok = true;
        for check in self.checks.iter().filter(|x| x.criterion == Some(c)) {
            any = true;
            ok &= check.passed;
        }
        any.then_some(ok)
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}

/// The precomputed tables that the checks consume.
pub struct Tables {
    /// `Π_k` for `k = 1..=max_k`, at index `k - 1`.
    pub lattices: Vec<PartitionLattice>,
    pub stirling: StirlingTable,
    pub bell: Vec<BigInt>,
    pub residues: Vec<(Field, Vec<FieldElement>)>,
}

impl Tables {
    pub fn build(max_k: usize) -> Result<Self> {
        let lattices = (1..=max_k).map(PartitionLattice::new).collect::<Result<Vec<_>>>()?;
        for l in &lattices {
            l.mobius_table();
        }
        let stirling = StirlingTable::new(13);
        let bell = (0..=13).map(crate::combinatorics::bell).collect();
        let residues = [3u64, 5, 7, 9, 11, 13, 25, 27]
            .into_iter()
            .map(|q| {
                let f = Field::with_order(q)?;
                let r = f.quadratic_residues();
                Ok((f, r))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Tables {
            lattices,
            stirling,
            bell,
            residues,
        })
    }

    pub fn lattice(&self, k: usize) -> &PartitionLattice {
        &self.lattices[k - 1]
    }

    pub fn inject(&mut self, fault: Fault) {
        match fault {
            Fault::Mobius => {
                let lat = &mut self.lattices[3];
                let top = lat.top();
                lat.inject_mobius_fault(0, top, 1);
            }
            Fault::Stirling => {
                let v = self.stirling.get(5, 3) + 1;
                self.stirling.set(5, 3, v);
            }
            Fault::Bell => self.bell[5] += 1,
            Fault::Residues => {
                let (f, r) = &mut self.residues[2];
                let extra = f.nonresidues()[0];
                r.push(extra);
            }
        }
    }
}

struct Run {
    checks: Vec<Check>,
}

impl Run {
    fn add(&mut self, id: &str, criterion: Option<u8>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            id: id.to_string(),
            criterion,
            passed,
            detail: detail.into(),
        });
    }

    /// Records a check whose body may fail with a library error; the error
    /// counts as a failure.
    fn try_add(&mut self, id: &str, criterion: Option<u8>, body: impl FnOnce() -> Result<(bool, String)>) {
        match body() {
            Ok((passed, detail)) => self.add(id, criterion, passed, detail),
            Err(e) => self.add(id, criterion, false, format!("error: {e}")),
        }
    }
}

pub fn run_selftest(level: Level) -> Result<SelftestReport> {
    run_selftest_with_fault(level, None)
}

pub fn run_selftest_with_fault(level: Level, fault: Option<Fault>) -> Result<SelftestReport> {
    let mut tables = Tables::build(if level == Level::Full { 7 } else { 6 })?;
    if let Some(f) = fault {
        tables.inject(f);
    }
    let mut run = Run { checks: Vec::new() };
    table_checks(&mut run, &tables);
    match level {
        Level::Quick => quick_checks(&mut run, &tables),
        Level::Full => {
            for c in 1..=11 {
                run_criterion(&mut run, &tables, c);
            }
        }
    }
    let failures: Vec<String> = run.checks.iter().filter(|c| !c.passed).map(|c| c.id.clone()).collect();
    Ok(SelftestReport {
        level,
        fault,
        passed: failures.is_empty(),
        failures,
        checks: run.checks,
    })
}

/// Runs the checks of one acceptance criterion (1 to 11) on fresh tables.
pub fn run_criterion_checks(criterion: u8) -> Result<Vec<Check>> {
    let tables = Tables::build(7)?;
    let mut run = Run { checks: Vec::new() };
    run_criterion(&mut run, &tables, criterion);
    Ok(run.checks)
}

fn table_checks(run: &mut Run, t: &Tables) {
    let mut bad = Vec::new();
    for l in &t.lattices {
        let d = l.zeta_mobius_defects();
        if !d.is_empty() {
            bad.push(format!("k={}: {} defects", l.k(), d.len()));
        }
    }
    run.add("mobius.zeta_inverse", None, bad.is_empty(), if bad.is_empty() { "zeta * mu = I on every table".into() } else { bad.join("; ") });

    let bad: Vec<String> = t
        .lattices
        .iter()
        .filter(|l| l.mobius_at(l.bottom(), l.top()) != signed_factorial(l.k()))
        .map(|l| format!("k={}: {}", l.k(), l.mobius_at(l.bottom(), l.top())))
        .collect();
    run.add("mobius.bottom_top", None, bad.is_empty(), bad.join("; "));

    let mut bad = Vec::new();
    for k in 0..=13usize {
        for r in 0..=k {
            let explicit = stirling_explicit(k, r);
            if t.stirling.get(k, r) != explicit {
                bad.push(format!("S({k},{r}) = {} vs {explicit}", t.stirling.get(k, r)));
            }
        }
    }
    run.add("stirling.explicit_formula", None, bad.is_empty(), bad.join("; "));

    let mut bad = Vec::new();
    for l in &t.lattices {
        let k = l.k();
        for rank in 0..k {
            if BigInt::from(l.rank_range(rank).len()) != t.stirling.get(k, k - rank) {
                bad.push(format!("k={k} rank {rank}"));
            }
        }
    }
    run.add("stirling.rank_counts", None, bad.is_empty(), bad.join("; "));

    let bad: Vec<String> = (0..=13usize)
        .filter(|&n| t.bell[n] != (0..=n).map(|r| t.stirling.get(n, r)).sum::<BigInt>())
        .map(|n| format!("B_{n} = {}", t.bell[n]))
        .collect();
    run.add("bell.stirling_row_sum", None, bad.is_empty(), bad.join("; "));

    let bad: Vec<String> = (0..=13usize)
        .filter(|&n| t.bell[n] != bell_triangle(n))
        .map(|n| format!("B_{n} = {} vs {}", t.bell[n], bell_triangle(n)))
        .collect();
    run.add("bell.triangle", None, bad.is_empty(), bad.join("; "));

    let bad: Vec<String> = t
        .lattices
        .iter()
        .filter(|l| BigInt::from(l.len()) != t.bell[l.k()])
        .map(|l| format!("|Pi_{}| = {} vs {}", l.k(), l.len(), t.bell[l.k()]))
        .collect();
    run.add("bell.lattice_size", None, bad.is_empty(), bad.join("; "));

    let mut bad = Vec::new();
    for (f, res) in &t.residues {
        let e = (f.q() - 1) / 2;
        for x in f.elements() {
            let euler = !f.is_zero(x) && f.pow(x, e) == f.one();
            if euler != res.contains(&x) {
                bad.push(format!("{f}: {}", f.format(x)));
            }
        }
    }
    run.add("residues.euler_criterion", None, bad.is_empty(), bad.join("; "));

    let bad: Vec<String> = t
        .residues
        .iter()
        .filter(|(f, r)| {
            let mut sorted = r.clone();
            sorted.sort_by_key(|x| x.packed());
            sorted.dedup();
            sorted.len() != r.len() || r.len() as u64 != (f.q() - 1) / 2
        })
        .map(|(f, r)| format!("{f}: {} residues", r.len()))
        .collect();
    run.add("residues.count", None, bad.is_empty(), bad.join("; "));
}

fn stirling_explicit(n: usize, r: usize) -> BigInt {
    // S(n, r) = (1/r!) Σ_j (-1)^j C(r, j) (r - j)^n
    let mut acc = BigInt::zero();
    for j in 0..=r {
        let term = binomial(r as u64, j as u64) * num_traits::pow(BigInt::from(r - j), n);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc / factorial(r as u64)
}

fn bell_triangle(n: usize) -> BigInt {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![row.last().unwrap().clone()];
        for v in &row {
            let x = next.last().unwrap() + v;
            next.push(x);
        }
        row = next;
    }
    row[0].clone()
}

fn quick_checks(run: &mut Run, t: &Tables) {
    let f3 = Field::prime(3).unwrap();
    let f5 = Field::prime(5).unwrap();

    let mut ok = true;
    for k in 2..=5 {
        let l = t.lattice(k);
        for a in 0..l.len() {
            for b in 0..l.len() {
                if l.leq(a, b) {
                    let closed = mobius_closed_form(l.partition(a), l.partition(b)).unwrap();
                    ok &= closed == l.mobius_at(a, b);
                }
            }
        }
    }
    run.add("mobius.closed_form", None, ok, "closed form equals the table on comparable pairs, k <= 5");

    let mut ok = true;
    for k in 2..=4 {
        let l = t.lattice(k);
        for a in 0..l.len() {
            for b in 0..l.len() {
                let (pa, pb) = (l.partition(a), l.partition(b));
                let m = pa.meet(pb).unwrap();
                let j = pa.join(pb).unwrap();
                let mi = l.index_of(&m).unwrap();
                let ji = l.index_of(&j).unwrap();
                let glb = (0..l.len()).filter(|&c| l.leq(c, a) && l.leq(c, b)).all(|c| l.leq(c, mi));
                let lub = (0..l.len()).filter(|&c| l.leq(a, c) && l.leq(b, c)).all(|c| l.leq(ji, c));
                ok &= glb && lub && l.leq(mi, a) && l.leq(a, ji);
            }
        }
    }
    run.add("partition.meet_join", None, ok, "meet and join are the order's glb and lub, k <= 4");

    let mut ok = true;
    for k in 2..=4 {
        let l = t.lattice(k);
        for_each_word(k, 3, |w| {
            let rho = SetPartition::of_tuple(w).unwrap();
            let best = (0..l.len())
                .filter(|&i| l.partition(i).delta(w).unwrap())
                .all(|i| l.leq(i, l.index_of(&rho).unwrap()));
            ok &= best && rho.delta(w).unwrap();
        });
    }
    run.add("partition.of_tuple_maximum", None, ok, "the equality pattern is the largest partition with delta = 1");

    lemma_agreement(run, t, None, 4, 200);

    run.try_add("indicator.distinctness_values", None, || {
        let l = t.lattice(3);
        let c = indicator_coefficients(&distinctness_generator(l, Rationals), l)?;
        let q = |v: i64| BigRational::from_integer(v.into());
        let got = (c.evaluate(&[0, 0, 0])?, c.evaluate(&[0, 1, 2])?, c.evaluate(&[0, 1, 0])?);
        Ok((got == (q(-2), q(1), q(0)), format!("constant {}, distinct {}, partial {}", got.0, got.1, got.2)))
    });

    rank_generator_checks(run, t, None, 5);

    run.try_add("indicator.naslund", None, || {
        let mut detail = Vec::new();
        let mut ok = true;
        for p in [3, 5] {
            let c = naslund_sum_check(p)?;
            ok &= c.matches_mobius && c.harmonic_sum == -1 && c.full_sum == -1;
            detail.push(format!("p={p}: full sum {}", c.full_sum));
        }
        Ok((ok, detail.join(", ")))
    });

    run.try_add("ffield.inverses", None, || {
        let mut ok = true;
        for q in [3, 9, 25, 27, 49] {
            let f = Field::with_order(q)?;
            for x in f.elements().filter(|&x| !f.is_zero(x)) {
                ok &= f.mul(x, f.inv(x)?) == f.one();
            }
        }
        Ok((ok, "x * x^-1 = 1 in F_3, F_9, F_25, F_27, F_49".into()))
    });

    run.try_add("ffield.harmonic_sum", None, || {
        let ok = [3, 5, 7, 11, 13].into_iter().all(|p| {
            let f = Field::prime(p).unwrap();
            harmonic_inverse_sum(&f) == f.from_i64(-1)
        });
        Ok((ok, "sum of j^-1 for 2 <= j <= p-1 is -1".into()))
    });

    run.try_add("tensor.linear_semantics", None, || {
        let r = verify_tensor_semantics(&cap_spec(1)?, Mode::Exhaustive, DEFAULT_TUPLE_BUDGET)?;
        Ok((r.passed && r.checked == 27, format!("{} tuples, {} violations", r.checked, r.violations)))
    });

    run.try_add("tensor.acute_repeated_zero", None, || {
        let spec = PropertySpec::new(PropertyKind::AcuteAngle, 3, f5.clone(), 1)?;
        let mut ok = true;
        for x in f5.elements() {
            for y in f5.elements() {
                let (vx, vy) = (FieldVector(vec![x]), FieldVector(vec![y]));
                ok &= f5.is_zero(spec.tensor_value(&[vx, vy.clone(), vy])?);
            }
        }
        Ok((ok, "T(x, y, y) = 0 on F_5".into()))
    });

    run.try_add("tensor.corner_degenerate_exposed", None, || {
        let spec = PropertySpec::new(PropertyKind::KRightCorner, 3, f3.clone(), 1)?;
        let r = verify_tensor_semantics(&spec, Mode::Exhaustive, DEFAULT_TUPLE_BUDGET)?;
        Ok((r.degenerate_support > 0, format!("{} degenerate tuples with nonzero tensor", r.degenerate_support)))
    });

    run.try_add("tensor.squared_distance_identifier", None, || {
        let spec = PropertySpec::new(PropertyKind::RightKConfiguration, 3, f3.clone(), 2)?;
        let r = check_identifier(&spec, Mode::Sampled { samples: 2000, seed: 7 }, DEFAULT_TUPLE_BUDGET)?;
        let detail = format!(
            "{} characterisation violations in {}, {} constant-term violations in {}",
            r.characterisation_violations, r.characterisation_checked, r.constant_violations, r.constant_checked
        );
        Ok((r.characterisation_violations == 0 && r.constant_violations == 0, detail))
    });

    diagonalization_instances(run, t, None);
    decomposition_scalar(run, t);
    bound_checks(run, None, false);
    search_checks(run, None, false);
}

fn for_each_word(k: usize, alphabet: u8, mut visit: impl FnMut(&[u8])) {
    let mut w = vec![0u8; k];
    loop {
        visit(&w);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            w[i] += 1;
            if w[i] < alphabet {
                break;
            }
            w[i] = 0;
        }
    }
}

fn random_function<S: Scalars>(l: &PartitionLattice, s: S, rng: &mut ChaCha8Rng) -> PartitionFunction<S> {
    let mut f = PartitionFunction::zero(l, s.clone(), Domain::ExcludesTop);
    for idx in 0..l.top() {
        let v: i64 = rng.random_range(-6..=6);
        f.set(idx, s.from_bigint(&v.into())).expect("below top");
    }
    f
}

fn lemma_on<S: Scalars>(t: &Tables, s: S, max_k: usize, samples: usize, rng: &mut ChaCha8Rng) -> Result<(bool, u64)> {
    let mut count = 0;
    let mut ok = true;
    for k in 2..=max_k {
        let l = t.lattice(k);
        for _ in 0..3 {
            let f = random_function(l, s.clone(), rng);
            let c = indicator_coefficients(&f, l)?;
            for_each_word(k, 3, |w| {
                count += 1;
                ok &= c.evaluate(w).ok() == indicator_value_lemma(&f, l, w).ok();
            });
        }
        for _ in 0..samples / (max_k - 1) {
            let f = random_function(l, s.clone(), rng);
            let c = indicator_coefficients(&f, l)?;
            let w: Vec<u8> = (0..k).map(|_| rng.random_range(0..k as u8)).collect();
            count += 1;
            ok &= c.evaluate(&w)? == indicator_value_lemma(&f, l, &w)?;
        }
    }
    Ok((ok, count))
}

fn lemma_agreement(run: &mut Run, t: &Tables, criterion: Option<u8>, max_k: usize, samples: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e33a);
    run.try_add("indicator.lemma_rationals", criterion, || {
        let (ok, n) = lemma_on(t, Rationals, max_k, samples, &mut rng)?;
        Ok((ok, format!("{n} evaluations over Q")))
    });
    for p in [3, 5, 7] {
        run.try_add(&format!("indicator.lemma_f{p}"), criterion, || {
            let (ok, n) = lemma_on(t, Field::prime(p)?, max_k, samples, &mut rng)?;
            Ok((ok, format!("{n} evaluations over F_{p}")))
        });
    }
}

fn rank_generator_checks(run: &mut Run, t: &Tables, criterion: Option<u8>, max_k: usize) {
    run.try_add("indicator.rank_generator_diagonal", criterion, || {
        let mut bad = Vec::new();
        for k in 3..=max_k {
            let l = t.lattice(k);
            for r in 0..=k - 2 {
                let d = diagonal_value(&rank_generator(l, r, Rationals)?, l)?;
                if d != BigRational::from_integer(t.stirling.get(k, k - r)) {
                    bad.push(format!("k={k} r={r}: {d}"));
                }
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() { format!("3 <= k <= {max_k}") } else { bad.join("; ") }))
    });
    run.try_add("indicator.rank_generator_fields", criterion, || {
        let mut bad = Vec::new();
        for p in [3, 5, 7] {
            let f = Field::prime(p)?;
            for k in 3..=max_k {
                let l = t.lattice(k);
                for r in 0..=k - 2 {
                    let d = diagonal_value(&rank_generator(l, r, f.clone())?, l)?;
                    if d != f.from_bigint(&t.stirling.get(k, k - r)) {
                        bad.push(format!("F_{p} k={k} r={r}: {}", f.format(d)));
                    }
                }
            }
        }
        Ok((bad.is_empty(), bad.join("; ")))
    });
}

fn cap_spec(n: usize) -> Result<PropertySpec> {
    PropertySpec::new(
        PropertyKind::BalancedLinearEquation {
            coefficients: vec![1, 1, 1],
        },
        3,
        Field::prime(3)?,
        n,
    )
}

fn vecs(f: &Field, rows: &[&[i64]]) -> Vec<FieldVector> {
    rows.iter().map(|r| FieldVector::from_ints(f, r)).collect()
}

/// A greedy avoiding set, cut down to at most `max` points.
fn small_avoiding_set(spec: &PropertySpec, avoid: Avoidance, seed: u64, max: usize) -> Result<Vec<FieldVector>> {
    let mut c = SearchConfig::new(spec.clone(), SearchMode::RandomRestart);
    c.avoidance = Some(avoid);
    c.seed = seed;
    c.restarts = 8;
    let r = max_avoiding_set(&c)?;
    let mut v = r.vectors(spec.field());
    v.truncate(max);
    Ok(v)
}

fn diagonalization_instances(run: &mut Run, t: &Tables, criterion: Option<u8>) {
    let f3 = Field::prime(3).unwrap();
    let f5 = Field::prime(5).unwrap();
    let expect = |id: &str, run: &mut Run, want: Option<i64>, body: &dyn Fn() -> Result<(crate::tensors::DiagonalizationReport, Field)>| {
        run.try_add(id, criterion, || {
            let (r, field) = body()?;
            let detail = format!(
                "|A| = {}, diagonal value {}, off-diagonal nonzero {}, conditions {:?}",
                r.set_size,
                r.diagonal_value,
                r.off_diagonal_nonzero,
                r.conditions.iter().map(|c| c.holds).collect::<Vec<_>>()
            );
            let ok = match want {
                Some(v) => {
                    r.is_diagonal
                        && r.conclusion_holds
                        && r.diagonal_value == field.element_to_json(field.from_i64(v))
                }
                // the vanishing-diagonal instance: diagonal, but condition 4 fails
                None => r.is_diagonal && !r.conditions[3].holds && !r.conclusion_holds,
            };
            Ok((ok, detail))
        });
    };

    expect("diag.f5_113_pair", run, Some(3), &|| {
        let l = t.lattice(3);
        let f = rank_generator(l, 1, f5.clone())?;
        let spec = PropertySpec::new(PropertyKind::BalancedLinearEquation { coefficients: vec![1, 1, 3] }, 3, f5.clone(), 1)?;
        Ok((verify_diagonalization(&f, &spec, &vecs(&f5, &[&[0], &[1]]), DEFAULT_TUPLE_BUDGET)?, f5.clone()))
    });
    expect("diag.f3_cap_distinctness", run, Some(-2), &|| {
        let l = t.lattice(3);
        let f = distinctness_generator(l, f3.clone());
        let set = vecs(&f3, &[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]);
        Ok((verify_diagonalization(&f, &cap_spec(2)?, &set, DEFAULT_TUPLE_BUDGET)?, f3.clone()))
    });
    expect("diag.f5_113_plane", run, Some(3), &|| {
        let l = t.lattice(3);
        let f = rank_generator(l, 1, f5.clone())?;
        let spec = PropertySpec::new(PropertyKind::BalancedLinearEquation { coefficients: vec![1, 1, 3] }, 3, f5.clone(), 2)?;
        let set = small_avoiding_set(&spec, Avoidance::NonTrivial { max_distinct: 2 }, 11, 6)?;
        Ok((verify_diagonalization(&f, &spec, &set, DEFAULT_TUPLE_BUDGET)?, f5.clone()))
    });
    expect("diag.f5_1112_rank1", run, Some(6), &|| {
        let l = t.lattice(4);
        let f = rank_generator(l, 1, f5.clone())?;
        let spec = PropertySpec::new(PropertyKind::BalancedLinearEquation { coefficients: vec![1, 1, 1, 2] }, 4, f5.clone(), 2)?;
        let set = small_avoiding_set(&spec, Avoidance::NonTrivial { max_distinct: 3 }, 5, 6)?;
        Ok((verify_diagonalization(&f, &spec, &set, DEFAULT_TUPLE_BUDGET)?, f5.clone()))
    });
    expect("diag.f5_right_configuration", run, Some(-2), &|| {
        let l = t.lattice(3);
        let f = distinctness_generator(l, f5.clone());
        let spec = PropertySpec::new(PropertyKind::RightKConfiguration, 3, f5.clone(), 2)?;
        let set = small_avoiding_set(&spec, Avoidance::Distinct, 3, 6)?;
        Ok((verify_diagonalization(&f, &spec, &set, DEFAULT_TUPLE_BUDGET)?, f5.clone()))
    });
    expect("diag.f3_condition4", run, None, &|| {
        let l = t.lattice(3);
        let f = rank_generator(l, 1, f3.clone())?;
        Ok((verify_diagonalization(&f, &cap_spec(1)?, &vecs(&f3, &[&[0], &[1]]), DEFAULT_TUPLE_BUDGET)?, f3.clone()))
    });
}

fn decomposition_scalar(run: &mut Run, t: &Tables) {
    run.try_add("decomp.scalar", None, || {
        let f3 = Field::prime(3)?;
        let l = t.lattice(3);
        let f = distinctness_generator(l, f3.clone()).with_top(f3.zero());
        let spec = PropertySpec::new(PropertyKind::AcuteAngle, 3, f3.clone(), 2)?;
        let r = verify_decomposition(&f, &spec, &vecs(&f3, &[&[0, 0], &[1, 1]]), DEFAULT_TUPLE_BUDGET)?;
        Ok((
            r.decomposition_holds && r.scalar == f3.element_to_json(f3.from_i64(-2)),
            format!("scalar {}", r.scalar),
        ))
    });
}

/// Acute-avoiding sets from the exact search, checked against
/// `I_f - T = -μ(0̂, 1̂) δ_{1̂}` with `f = δ_{0̂}`.
fn decomposition_criterion(run: &mut Run, t: &Tables, criterion: Option<u8>) {
    for (p, n) in [(3u64, 2usize), (5, 1)] {
        run.try_add(&format!("decomp.acute_f{p}_n{n}"), criterion, || {
            let field = Field::prime(p)?;
            let spec = PropertySpec::new(PropertyKind::AcuteAngle, 3, field.clone(), n)?;
            let res = max_avoiding_set(&SearchConfig::new(spec.clone(), SearchMode::Exact))?;
            let set = res.vectors(&field);
            let l = t.lattice(3);
            let f = distinctness_generator(l, field.clone()).with_top(field.zero());
            let r = verify_decomposition(&f, &spec, &set, DEFAULT_TUPLE_BUDGET)?;
            let ok = r.decomposition_holds && r.scalar == field.element_to_json(field.from_i64(-2));
            let mut detail = format!("|A| = {}, scalar {}, {} mismatched tuples", set.len(), r.scalar, r.mismatches);
            if let Some(w) = r.witnesses.first() {
                let tuple = serde_json::to_string(&w.tuple).unwrap_or_default();
                    detail.push_str(&format!(", e.g. {tuple}: I_f - T = {}, expected {}", w.value, w.expected));
            }
            Ok((ok, detail))
        });
    }
}

fn bound_checks(run: &mut Run, criterion: Option<u8>, full: bool) {
    let c = |n| if full { Some(n) } else { criterion };
    run.try_add("bounds.markov_anchor", c(7), || {
        let g = gamma(3, 3, 1e-12)?;
        let m = markov_bound(2, 3, 3, &g.x_certified)?;
        let (dom, count) = markov_dominates(2, 3, 3, &g.x_certified)?;
        let ok = dom && count == BigInt::from(3) && (m.upper_f64() - 7.59).abs() < 0.01;
        Ok((ok, format!("count {count} <= {:.4}", m.upper_f64())))
    });
    run.try_add("bounds.markov_grid", c(7), || {
        let (max_n, ps, ms, xs): (u64, &[u64], &[u64], u64) =
            if full { (6, &[3, 5, 7], &[3, 4, 5], 20) } else { (3, &[3, 5], &[3, 4], 5) };
        let mut cases = 0;
        let mut bad = Vec::new();
        for n in 1..=max_n {
            for &p in ps {
                for &m in ms {
                    for i in 1..=xs {
                        let x = BigRational::new(i.into(), (xs + 1).into());
                        let (ok, count) = markov_dominates(n, p, m, &x)?;
                        let mv = markov_bound(n, p, m, &x)?;
                        let lower_ok = match &mv {
                            MarkovValue::Exact { value } => BigRational::from_integer(count.clone()) <= *value,
                            MarkovValue::Interval { hi, .. } => count.to_f64().unwrap() <= *hi,
                        };
                        cases += 1;
                        if !ok || !lower_ok {
                            bad.push(format!("n={n} p={p} m={m} x={x}"));
                        }
                    }
                }
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() { format!("{cases} cases") } else { bad.join("; ") }))
    });
    run.try_add("bounds.gamma_33", c(8), || {
        let g = gamma(3, 3, 1e-12)?;
        let x = (-1.0 + 33f64.sqrt()) / 8.0;
        let oracle = (1.0 + x + x * x) / x.powf(2.0 / 3.0);
        Ok(((g.value - oracle).abs() < 1e-3 && (g.value - 2.7551).abs() < 1e-3, format!("{} vs {oracle}", g.value)))
    });
    run.try_add("bounds.gamma_range", c(8), || {
        let ms: Vec<u64> = if full { (3..=10).collect() } else { vec![3, 4, 6] };
        let ps: &[u64] = if full { &[5, 7, 11, 13] } else { &[5, 7] };
        let r = gamma_range_check(ps, &ms)?;
        Ok((r.all_passed(), format!("{} cross-checks", r.cross_checks.len())))
    });
    run.try_add("bounds.identifier_specialisation", c(10), || {
        let mut ok = true;
        for k in 2..=20u64 {
            for q in [2u64, 3, 5, 101] {
                let r = gamma_exponent_identifier(k, 2, 2, q)?;
                ok &= r.value == ((k + 1) * (q - 1)).to_string() && r.all_passed();
            }
        }
        Ok((ok, "(k+1)(q-1) for k <= 20 at four values of q".into()))
    });
    run.try_add("bounds.exponent_flags", c(10), || {
        let mut ok = true;
        for k in 3..=6 {
            for q in [3, 5] {
                ok &= identifier_exponent_discrepancies(k, q)?.iter().all(|r| r.is_flagged("stated_exponent_mismatch"));
            }
        }
        Ok((ok, "both quoted exponents flagged".into()))
    });
    run.try_add("bounds.obtuse_value", c(11), || {
        let r = bound_obtuse(2, 3)?;
        Ok((r.value == "19", format!("{} ({})", r.value, r.formula)))
    });
}

fn poset_checks(run: &mut Run, t: &Tables, criterion: Option<u8>, max_k: usize) {
    run.try_add("bounds.poset_lemma", criterion, || {
        let mut bad = Vec::new();
        for k in 3..=max_k {
            for r in 0..=k - 2 {
                let rep = verify_poset_lemma_on(t.lattice(k), r, None)?;
                if !rep.all_passed() {
                    let failed: Vec<_> = rep.cross_checks.iter().filter(|c| !c.passed).map(|c| c.description.clone()).collect();
                    bad.push(format!("k={k} r={r}: {}", failed.join(", ")));
                }
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() { format!("3 <= k <= {max_k}") } else { bad.join("; ") }))
    });
}

fn search_checks(run: &mut Run, criterion: Option<u8>, full: bool) {
    let max_n = if full { 3 } else { 2 };
    for (n, want) in [(1usize, 2usize), (2, 4), (3, 9)].into_iter().take(max_n) {
        run.try_add(&format!("search.cap_f3_n{n}"), criterion, || {
            let spec = cap_spec(n)?;
            let config = SearchConfig::new(spec.clone(), SearchMode::Exact);
            let r = max_avoiding_set(&config)?;
            let mut ok = r.size == want && r.proof_status == ProofStatus::ExactOptimal && r.witness_check;
            let mut detail = format!("size {} ({:?}), {} nodes", r.size, r.proof_status, r.nodes_explored);
            let mut other = config.clone();
            other.order = PointOrder::Reverse;
            other.symmetry_reduction = false;
            let r2 = max_avoiding_set(&other)?;
            ok &= r2.size == want;
            let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("thread pool");
            let r1 = pool.install(|| max_avoiding_set(&config))?;
            ok &= r1 == r;
            detail.push_str(&format!("; reverse order {}; one thread identical: {}", r2.size, r1 == r));
            if n <= 2 || full {
                let (naive, _) = naive_max_avoiding(&spec, config.avoidance())?;
                ok &= naive == want;
                detail.push_str(&format!("; all-subsets {naive}"));
            }
            let s = sandwich_report(r, &default_bounds(&config)?);
            ok &= s.consistent;
            Ok((ok, detail))
        });
    }
    run.try_add("search.acute_sandwich", criterion, || {
        let spec = PropertySpec::new(PropertyKind::AcuteAngle, 3, Field::prime(3)?, 2)?;
        let config = SearchConfig::new(spec, SearchMode::Exact);
        let r = max_avoiding_set(&config)?;
        let s = sandwich_report(r, &default_bounds(&config)?);
        Ok((
            s.consistent && s.search.proof_status == ProofStatus::ExactOptimal,
            format!("size {} against {:?}", s.search.size, s.bounds.iter().map(|b| &b.value).collect::<Vec<_>>()),
        ))
    });
}

fn run_criterion(run: &mut Run, t: &Tables, c: u8) {
    let cr = Some(c);
    match c {
        1 => {
            run.try_add("criterion1.zeta_inverse", cr, || {
                let bad: Vec<usize> = (2..=7).filter(|&k| !t.lattice(k).zeta_mobius_defects().is_empty()).collect();
                Ok((bad.is_empty(), format!("k in 2..=7, failing k: {bad:?}")))
            });
            run.try_add("criterion1.bottom_top", cr, || {
                let ok = (2..=7).all(|k| {
                    let l = t.lattice(k);
                    l.mobius_at(l.bottom(), l.top()) == signed_factorial(k)
                });
                Ok((ok, "mu(0, 1) = (-1)^(k-1) (k-1)!".into()))
            });
            run.try_add("criterion1.closed_form_pi6", cr, || {
                let l = t.lattice(6);
                let mut pairs = 0;
                let mut bad = 0;
                for a in 0..l.len() {
                    for b in 0..l.len() {
                        if l.leq(a, b) {
                            pairs += 1;
                            let rec = l.mobius_recursive(l.partition(a), l.partition(b))?;
                            if mobius_closed_form(l.partition(a), l.partition(b))? != rec {
                                bad += 1;
                            }
                        }
                    }
                }
                Ok((bad == 0, format!("{pairs} comparable pairs, {bad} mismatches")))
            });
        }
        2 => lemma_agreement(run, t, cr, 5, 1000),
        3 => rank_generator_checks(run, t, cr, 7),
        4 => {
            for p in [3u64, 5, 7] {
                run.try_add(&format!("criterion4.naslund_p{p}"), cr, || {
                    let c = naslund_sum_check(p)?;
                    Ok((
                        c.matches_mobius && c.harmonic_sum == -1 && c.full_sum == -1,
                        format!("matches {}, harmonic {}, full {}", c.matches_mobius, c.harmonic_sum, c.full_sum),
                    ))
                });
            }
        }
        5 => diagonalization_instances(run, t, cr),
        6 => decomposition_criterion(run, t, cr),
        7 | 8 | 10 => {
            let mut sub = Run { checks: Vec::new() };
            bound_checks(&mut sub, None, true);
            run.checks.extend(sub.checks.into_iter().filter(|x| x.criterion == cr).map(|mut x| {
                x.id = format!("criterion{c}.{}", x.id.trim_start_matches("bounds."));
                x
            }));
        }
        9 => poset_checks(run, t, cr, 6),
        11 => {
            search_checks(run, cr, true);
            run.try_add("criterion11.obtuse_bound", cr, || {
                let r = bound_obtuse(2, 3)?;
                Ok((r.value == "19", r.value.clone()))
            });
        }
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn helpers_match_library() {
        for n in 0..10 {
            assert_eq!(bell_triangle(n), crate::combinatorics::bell(n));
            for r in 0..=n {
                assert_eq!(stirling_explicit(n, r), crate::combinatorics::stirling2(n, r));
            }
        }
    }

    #[test]
    fn fault_names_parse() {
        for f in Fault::ALL {
            assert_eq!(f.name().parse::<Fault>().unwrap(), f);
        }
        assert!("zeta".parse::<Fault>().is_err());
    }
}
