//! Mechanical checks of tensor realisations against semantic predicates,
//! and of the two partition-indicator constructions on explicit sets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{PropertySpec, TensorClaim};
use crate::error::{Error, Result};
use crate::ffield::{Field, FieldElement, FieldVector};
use crate::indicators::{diagonal_value, indicator_coefficients, Domain, PartitionFunction};
use crate::partition::{PartitionLattice, SetPartition};

const MAX_WITNESSES: usize = 8;
const CHUNK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

/// A tuple on which a check failed, rendered as JSON so reports stand alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub tuple: Vec<Value>,
    pub value: Value,
    pub expected: Value,
    pub note: String,
}

impl Witness {
    fn new(field: &Field, t: &[&[FieldElement]], value: FieldElement, expected: Value, note: impl Into<String>) -> Self {
        Witness {
            tuple: t.iter().map(|v| field.vector_to_json(&FieldVector(v.to_vec()))).collect(),
            value: field.element_to_json(value),
            expected,
            note: note.into(),
        }
    }
}

fn push_witness(list: &mut Vec<Witness>, w: impl FnOnce() -> Witness) {
    if list.len() < MAX_WITNESSES {
        list.push(w());
    }
}

fn checked_total(points: usize, k: usize, budget: u64) -> Result<u64> {
    let total = (points as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(Error::budget(format!(
            "{points}^{k} = {total} tuples exceed the budget of {budget}"
        )));
    }
    Ok(total as u64)
}

/// Visits every tuple of `points^k` in lexicographic order, split into
/// chunks that run in parallel. Accumulators come back in chunk order so
/// the merged result does not depend on scheduling.
fn par_scan<R, F>(points: &[FieldVector], k: usize, total: u64, init: impl Fn() -> R + Sync, visit: F) -> Vec<R>
where
    R: Send,
    F: Fn(&mut R, &[&[FieldElement]], &[usize]) + Sync,
{
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = init();
            let start = c * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut idx = vec![0usize; k];
            let mut rest = start;
            for slot in idx.iter_mut().rev() {
                *slot = (rest % points.len() as u64) as usize;
                rest /= points.len() as u64;
            }
            let mut t: Vec<&[FieldElement]> = idx.iter().map(|&i| points[i].entries()).collect();
            for _ in start..end {
                visit(&mut acc, &t, &idx);
                for pos in (0..k).rev() {
                    idx[pos] += 1;
                    if idx[pos] < points.len() {
                        t[pos] = points[idx[pos]].entries();
                        break;
                    }
                    idx[pos] = 0;
                    t[pos] = points[0].entries();
                }
            }
            acc
        })
        .collect()
}

fn random_tuple(field: &Field, n: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<FieldVector> {
    (0..k)
        .map(|_| FieldVector((0..n).map(|_| field.element(rng.random_range(0..field.q()))).collect()))
        .collect()
}

fn has_repeat(t: &[&[FieldElement]]) -> bool {
    (0..t.len()).any(|i| (i + 1..t.len()).any(|j| t[i] == t[j]))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemanticsReport {
    pub property: String,
    pub field: String,
    pub n: usize,
    pub k: usize,
    pub claim: TensorClaim,
    pub mode: Mode,
    pub checked: u64,
    /// Tuples on which the claim says nothing.
    pub unconstrained: u64,
    pub violations: u64,
    pub witnesses: Vec<Witness>,
    /// Values outside `{0, 1}`.
    pub non_boolean: u64,
    /// Tuples with a repeated entry on which the tensor is nonzero.
    pub degenerate_support: u64,
    pub degenerate_witness: Option<Witness>,
    pub passed: bool,
}

#[derive(Default)]
struct SemanticsAcc {
    checked: u64,
    unconstrained: u64,
    violations: u64,
    witnesses: Vec<Witness>,
    non_boolean: u64,
    degenerate_support: u64,
    degenerate_witness: Option<Witness>,
}

impl SemanticsAcc {
    fn visit(&mut self, spec: &PropertySpec, t: &[&[FieldElement]]) {
        let f = spec.field();
        let value = spec.tensor_slices(t);
        self.checked += 1;
        if value != f.zero() && value != f.one() {
            self.non_boolean += 1;
        }
        let repeat = has_repeat(t);
        if repeat && !f.is_zero(value) {
            self.degenerate_support += 1;
            if self.degenerate_witness.is_none() {
                let holds = spec.holds_slices(t);
                self.degenerate_witness =
                    Some(Witness::new(f, t, value, Value::Bool(holds), "tensor nonzero on a tuple with a repeated entry"));
            }
        }
        let expected = match spec.claim() {
            TensorClaim::Indicator => {
                if spec.holds_slices(t) {
                    f.one()
                } else {
                    f.zero()
                }
            }
            TensorClaim::PatternTable => {
                if repeat {
                    f.zero()
                } else if spec.holds_slices(t) {
                    self.unconstrained += 1;
                    return;
                } else {
                    f.one()
                }
            }
        };
        if value != expected {
            self.violations += 1;
            let note = match spec.claim() {
                TensorClaim::Indicator => "tensor differs from the predicate's indicator",
                TensorClaim::PatternTable if repeat => "tensor nonzero on a tuple with a repeated entry",
                TensorClaim::PatternTable => "tensor is not 1 on a distinct tuple without the property",
            };
            push_witness(&mut self.witnesses, || Witness::new(f, t, value, f.element_to_json(expected), note));
        }
    }

    fn merge(&mut self, other: SemanticsAcc) {
        self.checked += other.checked;
        self.unconstrained += other.unconstrained;
        self.violations += other.violations;
        for w in other.witnesses {
            push_witness(&mut self.witnesses, || w);
        }
        self.non_boolean += other.non_boolean;
        self.degenerate_support += other.degenerate_support;
        if self.degenerate_witness.is_none() {
            self.degenerate_witness = other.degenerate_witness;
        }
    }
}

/// Compares the tensor against the predicate on every tuple of
/// `(F_q^n)^k`, or on `samples` random tuples.
pub fn verify_tensor_semantics(spec: &PropertySpec, mode: Mode, budget: u64) -> Result<SemanticsReport> {
    let field = spec.field();
    let k = spec.k();
    let acc = match mode {
        Mode::Exhaustive => {
            let points: Vec<FieldVector> = field.vectors(spec.n(), budget)?.collect();
            let total = checked_total(points.len(), k, budget)?;
            let parts = par_scan(&points, k, total, SemanticsAcc::default, |acc, t, _| acc.visit(spec, t));
            parts.into_iter().fold(SemanticsAcc::default(), |mut a, b| {
                a.merge(b);
                a
            })
        }
        Mode::Sampled { samples, seed } => {
            if samples > budget {
                return Err(Error::budget(format!("{samples} samples exceed the budget of {budget}")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut acc = SemanticsAcc::default();
            for _ in 0..samples {
                let tuple = random_tuple(field, spec.n(), k, &mut rng);
                let t: Vec<&[FieldElement]> = tuple.iter().map(FieldVector::entries).collect();
                acc.visit(spec, &t);
            }
            acc
        }
    };
    Ok(SemanticsReport {
        property: spec.name().to_string(),
        field: field.to_string(),
        n: spec.n(),
        k,
        claim: spec.claim(),
        mode,
        checked: acc.checked,
        unconstrained: acc.unconstrained,
        passed: acc.violations == 0,
        violations: acc.violations,
        witnesses: acc.witnesses,
        non_boolean: acc.non_boolean,
        degenerate_support: acc.degenerate_support,
        degenerate_witness: acc.degenerate_witness,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentifierReport {
    pub property: String,
    pub degree: u32,
    pub m: usize,
    /// Tuples on which "g vanishes on every m-subset" was compared with the
    /// predicate.
    pub characterisation_checked: u64,
    pub characterisation_violations: u64,
    pub characterisation_witness: Option<Witness>,
    /// Points `x` on which `g(x, ..., x)` was evaluated.
    pub constant_checked: u64,
    pub constant_violations: u64,
    pub constant_witness: Option<Witness>,
    pub holds: bool,
}

/// Checks that the property's polynomial is an identifier: its vanishing on
/// all increasing `m`-subsets characterises the predicate, and it vanishes
/// on constant arguments.
pub fn check_identifier(spec: &PropertySpec, mode: Mode, budget: u64) -> Result<IdentifierReport> {
    let g = spec
        .identifier()
        .ok_or_else(|| Error::config(format!("{} is not built from an identifier", spec.name())))?;
    let field = spec.field();
    let mut report = IdentifierReport {
        property: spec.name().to_string(),
        degree: g.degree(),
        m: g.m,
        characterisation_checked: 0,
        characterisation_violations: 0,
        characterisation_witness: None,
        constant_checked: 0,
        constant_violations: 0,
        constant_witness: None,
        holds: false,
    };
    let visit_tuple = |t: &[&[FieldElement]], report: &mut IdentifierReport| {
        report.characterisation_checked += 1;
        let holds = spec.holds_slices(t);
        let vanishes = spec.identifier_vanishes(t).expect("identifier present");
        if holds != vanishes {
            report.characterisation_violations += 1;
            if report.characterisation_witness.is_none() {
                report.characterisation_witness = Some(Witness::new(
                    field,
                    t,
                    if vanishes { field.one() } else { field.zero() },
                    Value::Bool(holds),
                    "vanishing pattern of g disagrees with the predicate",
                ));
            }
        }
    };
    let visit_point = |x: &[FieldElement], report: &mut IdentifierReport| {
        report.constant_checked += 1;
        let args = vec![x; g.m];
        let v = g.eval(field, &args);
        if !field.is_zero(v) {
            report.constant_violations += 1;
            if report.constant_witness.is_none() {
                report.constant_witness =
                    Some(Witness::new(field, &args, v, field.element_to_json(field.zero()), "g(x, ..., x) is nonzero"));
            }
        }
    };
    match mode {
        Mode::Exhaustive => {
            let points: Vec<FieldVector> = field.vectors(spec.n(), budget)?.collect();
            let total = checked_total(points.len(), spec.k(), budget)?;
            for x in &points {
                visit_point(x.entries(), &mut report);
            }
            let parts = par_scan(
                &points,
                spec.k(),
                total,
                || (0u64, 0u64, None::<Vec<Vec<FieldElement>>>),
                |acc, t, _| {
                    acc.0 += 1;
                    if spec.holds_slices(t) != spec.identifier_vanishes(t).expect("identifier present") {
                        acc.1 += 1;
                        if acc.2.is_none() {
                            acc.2 = Some(t.iter().map(|v| v.to_vec()).collect());
                        }
                    }
                },
            );
            for (checked, bad, first) in parts {
                report.characterisation_checked += checked;
                report.characterisation_violations += bad;
                if report.characterisation_witness.is_none() {
                    if let Some(tuple) = first {
                        let t: Vec<&[FieldElement]> = tuple.iter().map(Vec::as_slice).collect();
                        let vanishes = spec.identifier_vanishes(&t).expect("identifier present");
                        report.characterisation_witness = Some(Witness::new(
                            field,
                            &t,
                            if vanishes { field.one() } else { field.zero() },
                            Value::Bool(spec.holds_slices(&t)),
                            "vanishing pattern of g disagrees with the predicate",
                        ));
                    }
                }
            }
        }
        Mode::Sampled { samples, seed } => {
            if samples > budget {
                return Err(Error::budget(format!("{samples} samples exceed the budget of {budget}")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let tuple = random_tuple(field, spec.n(), spec.k(), &mut rng);
                let t: Vec<&[FieldElement]> = tuple.iter().map(FieldVector::entries).collect();
                visit_tuple(&t, &mut report);
                visit_point(t[0], &mut report);
            }
        }
    }
    report.holds = report.characterisation_violations == 0 && report.constant_violations == 0;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub id: u8,
    pub statement: String,
    pub holds: bool,
    pub checked: u64,
    pub violations: u64,
    pub witness: Option<Witness>,
}

impl ConditionResult {
    fn new(id: u8, statement: &str) -> Self {
        ConditionResult {
            id,
            statement: statement.to_string(),
            holds: true,
            checked: 0,
            violations: 0,
            witness: None,
        }
    }

    fn record(&mut self, ok: bool, w: impl FnOnce() -> Witness) {
        self.checked += 1;
        if !ok {
            self.holds = false;
            self.violations += 1;
            if self.witness.is_none() {
                self.witness = Some(w());
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagonalizationReport {
    pub property: String,
    pub k: usize,
    pub set_size: usize,
    pub tuples: u64,
    pub conditions: Vec<ConditionResult>,
    /// `-Σ_{π<1̂} f(π) μ(π, 1̂)`.
    pub diagonal_value: Value,
    pub off_diagonal_nonzero: u64,
    pub off_diagonal_witness: Option<Witness>,
    /// Values of `I_f · T` at `(x, ..., x)`, in the order of `A`.
    pub diagonal: Vec<Value>,
    /// Diagonal entries that differ from `diagonal_value · T(x, ..., x)`.
    pub diagonal_mismatches: u64,
    pub is_diagonal: bool,
    pub diagonal_nonzero: bool,
    pub conditions_hold: bool,
    /// `I_f · T` is diagonal with nonzero diagonal, so `|A|` is a lower
    /// bound for its partition rank.
    pub conclusion_holds: bool,
}

fn check_set(spec: &PropertySpec, set: &[FieldVector]) -> Result<()> {
    for v in set {
        Error::check_dims(spec.n(), v.len())?;
    }
    for (i, v) in set.iter().enumerate() {
        if set[..i].contains(v) {
            return Err(Error::config(format!("set contains a repeated vector at position {i}")));
        }
    }
    Ok(())
}

fn lattice_for(f_k: usize, spec: &PropertySpec) -> Result<PartitionLattice> {
    Error::check_dims(spec.k(), f_k)?;
    PartitionLattice::new(spec.k())
}

/// Evaluates `I_f · T` on all of `A^k` and reports each hypothesis of the
/// diagonalization argument separately, together with the conclusion.
pub fn verify_diagonalization(
    f: &PartitionFunction<Field>,
    spec: &PropertySpec,
    set: &[FieldVector],
    budget: u64,
) -> Result<DiagonalizationReport> {
    let lattice = lattice_for(f.k(), spec)?;
    if f.scalars() != spec.field() {
        return Err(Error::config(format!("f takes values in {}, the property lives over {}", f.scalars(), spec.field())));
    }
    check_set(spec, set)?;
    let field = spec.field();
    let k = spec.k();
    let total = checked_total(set.len(), k, budget)?;
    let coeffs = indicator_coefficients(f, &lattice)?;
    let dval = diagonal_value(f, &lattice)?;
    let top = lattice.top();

    let mut c1 = ConditionResult::new(1, "every constant tuple (x, ..., x) with x in A has the property");
    for x in set {
        let t = vec![x.entries(); k];
        c1.record(spec.holds_slices(&t), || {
            Witness::new(field, &t, spec.tensor_slices(&t), Value::Bool(true), "constant tuple lacks the property")
        });
    }

    struct Acc {
        c2: ConditionResult,
        c3: ConditionResult,
        off: u64,
        off_w: Option<Witness>,
    }
    let parts = par_scan(
        set,
        k,
        total,
        || Acc {
            c2: ConditionResult::new(2, "T is 1 on tuples with the property and 0 elsewhere"),
            c3: ConditionResult::new(3, "f vanishes on every pattern below the top realised by a tuple with the property"),
            off: 0,
            off_w: None,
        },
        |acc, t, _| {
            let value = spec.tensor_slices(t);
            let holds = spec.holds_slices(t);
            let want = if holds { field.one() } else { field.zero() };
            acc.c2.record(value == want, || {
                Witness::new(field, t, value, field.element_to_json(want), "tensor differs from the predicate")
            });
            let rho = SetPartition::of_tuple(t).expect("arity checked");
            if rho.is_coarsest() {
                return;
            }
            let idx = lattice.index_of(&rho).expect("pattern in lattice");
            let frho = *f.value_at(idx);
            if holds {
                acc.c3.record(field.is_zero(frho), || {
                    Witness::new(field, t, frho, field.element_to_json(field.zero()), format!("f({rho}) is nonzero"))
                });
            }
            let product = field.mul(coeffs.evaluate(t).expect("arity checked"), value);
            if !field.is_zero(product) {
                acc.off += 1;
                if acc.off_w.is_none() {
                    acc.off_w = Some(Witness::new(
                        field,
                        t,
                        product,
                        field.element_to_json(field.zero()),
                        "I_f * T is nonzero off the diagonal",
                    ));
                }
            }
        },
    );
    let mut c2 = ConditionResult::new(2, "T is 1 on tuples with the property and 0 elsewhere");
    let mut c3 = ConditionResult::new(3, "f vanishes on every pattern below the top realised by a tuple with the property");
    let mut off = 0;
    let mut off_w = None;
    let fold = |into: &mut ConditionResult, from: ConditionResult| {
        into.checked += from.checked;
        into.violations += from.violations;
        into.holds &= from.holds;
        if into.witness.is_none() {
            into.witness = from.witness;
        }
    };
    for part in parts {
        fold(&mut c2, part.c2);
        fold(&mut c3, part.c3);
        off += part.off;
        if off_w.is_none() {
            off_w = part.off_w;
        }
    }

    let mut c4 = ConditionResult::new(4, "the sum of f(pi) mu(pi, top) over pi below the top is nonzero");
    c4.record(!field.is_zero(dval), || Witness {
        tuple: Vec::new(),
        value: field.element_to_json(dval),
        expected: Value::String("nonzero".into()),
        note: format!("diagonal value vanishes in {field}"),
    });

    let mut diagonal = Vec::with_capacity(set.len());
    let mut mismatches = 0;
    let mut nonzero = true;
    for x in set {
        let t = vec![x.entries(); k];
        let tv = spec.tensor_slices(&t);
        let entry = field.mul(coeffs.evaluate(&t)?, tv);
        if entry != field.mul(dval, tv) {
            mismatches += 1;
        }
        nonzero &= !field.is_zero(entry);
        diagonal.push(field.element_to_json(entry));
    }
    debug_assert_eq!(lattice.partition(top), &SetPartition::coarsest(k));

    let conditions = vec![c1, c2, c3, c4];
    let conditions_hold = conditions.iter().all(|c| c.holds);
    let is_diagonal = off == 0;
    Ok(DiagonalizationReport {
        property: spec.name().to_string(),
        k,
        set_size: set.len(),
        tuples: total,
        conditions,
        diagonal_value: field.element_to_json(dval),
        off_diagonal_nonzero: off,
        off_diagonal_witness: off_w,
        diagonal,
        diagonal_mismatches: mismatches,
        is_diagonal,
        diagonal_nonzero: nonzero,
        conditions_hold,
        conclusion_holds: is_diagonal && nonzero && mismatches == 0,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub property: String,
    pub k: usize,
    pub set_size: usize,
    pub tuples: u64,
    /// `-Σ_{π<1̂} f(π) μ(π, 1̂) - f(1̂)`.
    pub scalar: Value,
    pub scalar_nonzero: bool,
    /// `T` equals `f` at the tuple's equality pattern.
    pub pattern_condition: ConditionResult,
    /// Tuples where `I_f - T` differs from `scalar · δ_1̂`.
    pub mismatches: u64,
    pub witnesses: Vec<Witness>,
    pub decomposition_holds: bool,
}

/// Checks `I_f - T = (-Σ_{π<1̂} f(π) μ(π, 1̂) - f(1̂)) · δ_1̂` on all of `A^k`.
pub fn verify_decomposition(
    f: &PartitionFunction<Field>,
    spec: &PropertySpec,
    set: &[FieldVector],
    budget: u64,
) -> Result<DecompositionReport> {
    if f.domain() != Domain::IncludesTop {
        return Err(Error::domain("the decomposition needs f defined on the top partition"));
    }
    let lattice = lattice_for(f.k(), spec)?;
    if f.scalars() != spec.field() {
        return Err(Error::config(format!("f takes values in {}, the property lives over {}", f.scalars(), spec.field())));
    }
    check_set(spec, set)?;
    let field = spec.field();
    let k = spec.k();
    let total = checked_total(set.len(), k, budget)?;
    let coeffs = indicator_coefficients(f, &lattice)?;
    let dval = diagonal_value(f, &lattice)?;
    let scalar = field.sub(dval, *f.value_at(lattice.top()));

    let parts = par_scan(
        set,
        k,
        total,
        || {
            (
                ConditionResult::new(1, "T equals f at the equality pattern of every tuple"),
                0u64,
                Vec::<Witness>::new(),
            )
        },
        |acc, t, _| {
            let value = spec.tensor_slices(t);
            let rho = SetPartition::of_tuple(t).expect("arity checked");
            let fr = *f.value_at(lattice.index_of(&rho).expect("pattern in lattice"));
            acc.0.record(value == fr, || {
                Witness::new(field, t, value, field.element_to_json(fr), format!("T differs from f({rho})"))
            });
            let indicator = coeffs.evaluate(t).expect("arity checked");
            let lhs = field.sub(indicator, value);
            let rhs = if rho.is_coarsest() { scalar } else { field.zero() };
            if lhs != rhs {
                acc.1 += 1;
                push_witness(&mut acc.2, || {
                    Witness::new(field, t, lhs, field.element_to_json(rhs), "I_f - T differs from scalar * delta_top")
                });
            }
        },
    );
    let mut cond = ConditionResult::new(1, "T equals f at the equality pattern of every tuple");
    let mut mismatches = 0;
    let mut witnesses = Vec::new();
    for (c, m, ws) in parts {
        cond.checked += c.checked;
        cond.violations += c.violations;
        cond.holds &= c.holds;
        if cond.witness.is_none() {
            cond.witness = c.witness;
        }
        mismatches += m;
        for w in ws {
            push_witness(&mut witnesses, || w);
        }
    }
    Ok(DecompositionReport {
        property: spec.name().to_string(),
        k,
        set_size: set.len(),
        tuples: total,
        scalar: field.element_to_json(scalar),
        scalar_nonzero: !field.is_zero(scalar),
        pattern_condition: cond,
        decomposition_holds: mismatches == 0,
        mismatches,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indicators::{distinctness_generator, rank_generator};
    use crate::tensors::{PropertyKind, PolynomialSpec, DEFAULT_TUPLE_BUDGET};

    fn pts(f: &Field, rows: &[&[i64]]) -> Vec<FieldVector> {
        rows.iter().map(|r| FieldVector::from_ints(f, r)).collect()
    }

    fn linear(p: u64, coefficients: Vec<i64>, n: usize) -> PropertySpec {
        let k = coefficients.len();
        PropertySpec::new(
            PropertyKind::BalancedLinearEquation { coefficients },
            k,
            Field::prime(p).unwrap(),
            n,
        )
        .unwrap()
    }

    #[test]
    fn linear_semantics_exhaustive() {
        let r = verify_tensor_semantics(&linear(3, vec![1, 1, 1], 1), Mode::Exhaustive, DEFAULT_TUPLE_BUDGET).unwrap();
        assert_eq!(r.checked, 27);
        assert_eq!(r.violations, 0);
        assert_eq!(r.non_boolean, 0);
    }

    #[test]
    fn corner_tensor_fires_on_degenerate_tuples() {
        let f = Field::prime(3).unwrap();
        let spec = PropertySpec::new(PropertyKind::KRightCorner, 3, f, 1).unwrap();
        let r = verify_tensor_semantics(&spec, Mode::Exhaustive, DEFAULT_TUPLE_BUDGET).unwrap();
        assert!(r.violations > 0);
        assert!(r.degenerate_support > 0);
    }

    #[test]
    fn squared_distance_identifier_sampled() {
        let f = Field::prime(3).unwrap();
        let spec = PropertySpec::new(
            PropertyKind::Identifier {
                g: PolynomialSpec::squared_distance(),
                target: None,
            },
            3,
            f,
            2,
        )
        .unwrap();
        let r = check_identifier(&spec, Mode::Sampled { samples: 2000, seed: 7 }, DEFAULT_TUPLE_BUDGET).unwrap();
        assert!(r.holds);
        let s = verify_tensor_semantics(&spec, Mode::Sampled { samples: 2000, seed: 7 }, DEFAULT_TUPLE_BUDGET).unwrap();
        assert_eq!(s.violations, 0);
    }

    #[test]
    fn dot_is_not_an_identifier() {
        let f = Field::prime(5).unwrap();
        let spec = PropertySpec::new(PropertyKind::PairwiseOrthogonal, 3, f, 1).unwrap();
        let r = check_identifier(&spec, Mode::Exhaustive, DEFAULT_TUPLE_BUDGET).unwrap();
        assert!(r.constant_violations > 0);
        assert_eq!(r.characterisation_violations, 0);
    }

    #[test]
    fn budget_enforced() {
        let spec = linear(3, vec![1, 1, 1], 3);
        assert!(matches!(verify_tensor_semantics(&spec, Mode::Exhaustive, 100), Err(Error::Budget(_))));
    }

    #[test]
    fn diagonalization_small_prime() {
        let f5 = Field::prime(5).unwrap();
        let lattice = PartitionLattice::new(3).unwrap();
        let f = rank_generator(&lattice, 1, f5.clone()).unwrap();
        let spec = linear(5, vec![1, 1, 3], 1);
        let set = pts(&f5, &[&[0], &[1]]);
        let r = verify_diagonalization(&f, &spec, &set, DEFAULT_TUPLE_BUDGET).unwrap();
        assert!(r.is_diagonal);
        assert_eq!(r.diagonal_value, Value::from(3));
        assert!(r.conclusion_holds, "{r:#?}");
    }

    #[test]
    fn diagonalization_flags_vanishing_diagonal() {
        let f3 = Field::prime(3).unwrap();
        let lattice = PartitionLattice::new(3).unwrap();
        let f = rank_generator(&lattice, 1, f3.clone()).unwrap();
        let spec = linear(3, vec![1, 1, 1], 1);
        let set = pts(&f3, &[&[0], &[1]]);
        let r = verify_diagonalization(&f, &spec, &set, DEFAULT_TUPLE_BUDGET).unwrap();
        assert!(r.is_diagonal);
        assert!(!r.conditions[3].holds);
        assert!(!r.conclusion_holds);
    }

    #[test]
    fn singleton_is_diagonal() {
        let f5 = Field::prime(5).unwrap();
        let lattice = PartitionLattice::new(3).unwrap();
        let f = distinctness_generator(&lattice, f5.clone());
        let spec = linear(5, vec![1, 1, 3], 2);
        let r = verify_diagonalization(&f, &spec, &pts(&f5, &[&[2, 3]]), DEFAULT_TUPLE_BUDGET).unwrap();
        assert!(r.is_diagonal && r.conclusion_holds);
    }

    #[test]
    fn decomposition_scalar() {
        let f3 = Field::prime(3).unwrap();
        let lattice = PartitionLattice::new(3).unwrap();
        let f = distinctness_generator(&lattice, f3.clone()).with_top(f3.zero());
        let spec = PropertySpec::new(PropertyKind::AcuteAngle, 3, f3.clone(), 2).unwrap();
        let r = verify_decomposition(&f, &spec, &pts(&f3, &[&[0, 0], &[1, 1]]), DEFAULT_TUPLE_BUDGET).unwrap();
        assert_eq!(r.scalar, f3.element_to_json(f3.from_i64(-2)));
        assert!(r.scalar_nonzero);
        assert!(r.decomposition_holds);

        let zero = PartitionFunction::zero(&lattice, f3.clone(), Domain::IncludesTop);
        let r = verify_decomposition(&zero, &spec, &pts(&f3, &[&[0, 0]]), DEFAULT_TUPLE_BUDGET).unwrap();
        assert!(!r.scalar_nonzero);
    }

    #[test]
    fn scans_are_deterministic() {
        let spec = linear(3, vec![1, 1, 1], 2);
        let a = verify_tensor_semantics(&spec, Mode::Exhaustive, DEFAULT_TUPLE_BUDGET).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| verify_tensor_semantics(&spec, Mode::Exhaustive, DEFAULT_TUPLE_BUDGET).unwrap());
        assert_eq!(a, b);
    }
}
