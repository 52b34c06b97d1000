//! Partition functions and their partition indicators.
//!
//! A partition function assigns a scalar to each partition of `{1..k}`.
//! Its indicator is the tensor `I_f = Σ_{τ<1̂} c_τ δ_τ` with
//! `c_τ = Σ_{π≤τ} f(π) μ(π,τ)`; on a tuple whose equality pattern is
//! `π ≠ 1̂` it evaluates to `f(π)`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::ffield::{harmonic_inverse_sum, is_prime, Field, FieldElement};
use crate::partition::{PartitionLattice, SetPartition};
use crate::scalars::Scalars;

/// Whether a partition function is defined at `1̂`.
///
/// Diagonalisation with an indicator only ever reads values below `1̂`; the
/// decomposition check against a tensor that is constant on equality
/// patterns also needs `f(1̂)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    ExcludesTop,
    IncludesTop,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionFunction<S: Scalars> {
    scalars: S,
    k: usize,
    domain: Domain,
    // indexed like the lattice; the top slot is zero under ExcludesTop
    values: Vec<S::Elem>,
}

impl<S: Scalars> PartitionFunction<S> {
    pub fn zero(lattice: &PartitionLattice, scalars: S, domain: Domain) -> Self {
        PartitionFunction {
            k: lattice.k(),
            domain,
            values: vec![scalars.zero(); lattice.len()],
            scalars,
        }
    }

    /// Builds `f` from `(partition, value)` pairs; unlisted partitions map
    /// to zero.
    pub fn from_pairs(
        lattice: &PartitionLattice,
        scalars: S,
        domain: Domain,
        pairs: impl IntoIterator<Item = (SetPartition, S::Elem)>,
    ) -> Result<Self> {
        let mut f = Self::zero(lattice, scalars, domain);
        for (pi, v) in pairs {
            let idx = lattice.require_index(&pi)?;
            f.set(idx, v)?;
        }
        Ok(f)
    }

    pub fn scalars(&self) -> &S {
        &self.scalars
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Number of partitions in the domain.
    pub fn domain_size(&self) -> usize {
        match self.domain {
            Domain::ExcludesTop => self.values.len() - 1,
            Domain::IncludesTop => self.values.len(),
        }
    }

    pub fn values(&self) -> &[S::Elem] {
        &self.values
    }

    pub fn value_at(&self, idx: usize) -> &S::Elem {
        &self.values[idx]
    }

    pub fn get(&self, lattice: &PartitionLattice, pi: &SetPartition) -> Result<S::Elem> {
        self.check_lattice(lattice)?;
        let idx = lattice.require_index(pi)?;
        if idx == self.top() && self.domain == Domain::ExcludesTop {
            return Err(Error::domain(format!("{pi} is outside the domain of f")));
        }
        Ok(self.values[idx].clone())
    }

    pub fn set(&mut self, idx: usize, value: S::Elem) -> Result<()> {
        if idx == self.top() && self.domain == Domain::ExcludesTop && !self.scalars.is_zero(&value) {
            return Err(Error::domain("f is not defined at the top partition".to_string()));
        }
        self.values[idx] = value;
        Ok(())
    }

    /// Extends `f` to all of `Π_k` with the given value at `1̂`.
    pub fn with_top(mut self, value: S::Elem) -> Self {
        self.domain = Domain::IncludesTop;
        let top = self.top();
        self.values[top] = value;
        self
    }

    fn top(&self) -> usize {
        self.values.len() - 1
    }

    pub(crate) fn check_lattice(&self, lattice: &PartitionLattice) -> Result<()> {
        Error::check_dims(self.k, lattice.k())
    }

    /// Value-by-value image under a map into another scalar domain.
    pub fn map_into<T: Scalars>(
        &self,
        target: T,
        mut conv: impl FnMut(&S::Elem) -> Result<T::Elem>,
    ) -> Result<PartitionFunction<T>> {
        Ok(PartitionFunction {
            k: self.k,
            domain: self.domain,
            values: self.values.iter().map(&mut conv).collect::<Result<_>>()?,
            scalars: target,
        })
    }

    /// JSON object keyed by partition strings; zero values are omitted.
    pub fn to_json(&self, lattice: &PartitionLattice) -> Value {
        let mut map = Map::new();
        for (idx, v) in self.values.iter().enumerate() {
            if !self.scalars.is_zero(v) {
                map.insert(lattice.partition(idx).to_string(), self.scalars.to_json(v));
            }
        }
        Value::Object(map)
    }

    pub fn from_json(lattice: &PartitionLattice, scalars: S, domain: Domain, json: &Value) -> Result<Self> {
        let obj = json
            .as_object()
            .ok_or_else(|| Error::parse("partition function must be a JSON object"))?;
        let mut pairs = Vec::with_capacity(obj.len());
        for (key, v) in obj {
            let pi = SetPartition::parse(key, lattice.k())?;
            pairs.push((pi, scalars.from_json(v)?));
        }
        Self::from_pairs(lattice, scalars, domain, pairs)
    }
}

/// The coefficients `c_τ`, one per `τ < 1̂`, in lattice order.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorCoefficients<S: Scalars> {
    scalars: S,
    k: usize,
    entries: Vec<(SetPartition, S::Elem)>,
}

impl<S: Scalars> IndicatorCoefficients<S> {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> &[(SetPartition, S::Elem)] {
        &self.entries
    }

    pub fn get(&self, tau: &SetPartition) -> Option<&S::Elem> {
        self.entries.iter().find(|(t, _)| t == tau).map(|(_, c)| c)
    }

    /// Number of `τ` with `c_τ ≠ 0`.
    pub fn support_size(&self) -> usize {
        self.entries.iter().filter(|(_, c)| !self.scalars.is_zero(c)).count()
    }

    /// `Σ_{τ<1̂} c_τ δ_τ(values)`.
    pub fn evaluate<T: PartialEq>(&self, values: &[T]) -> Result<S::Elem> {
        Error::check_dims(self.k, values.len())?;
        let s = &self.scalars;
        Ok(self
            .entries
            .iter()
            .filter(|(tau, _)| tau.delta_unchecked(values))
            .fold(s.zero(), |acc, (_, c)| s.add(&acc, c)))
    }

    pub fn to_json(&self) -> Value {
        let map: Map<String, Value> = self
            .entries
            .iter()
            .map(|(tau, c)| (tau.to_string(), self.scalars.to_json(c)))
            .collect();
        Value::Object(map)
    }
}

pub fn indicator_coefficients<S: Scalars>(
    f: &PartitionFunction<S>,
    lattice: &PartitionLattice,
) -> Result<IndicatorCoefficients<S>> {
    f.check_lattice(lattice)?;
    let s = &f.scalars;
    let top = lattice.top();
    let mut coeffs = vec![s.zero(); top];
    let table = lattice.mobius_table();
    for (pi, fv) in f.values.iter().enumerate().take(top) {
        if s.is_zero(fv) {
            continue;
        }
        for (tau, mu) in table.row(pi) {
            if *tau != top {
                coeffs[*tau] = s.add(&coeffs[*tau], &s.scale(fv, mu));
            }
        }
    }
    Ok(IndicatorCoefficients {
        scalars: s.clone(),
        k: lattice.k(),
        entries: lattice.partitions()[..top].iter().copied().zip(coeffs).collect(),
    })
}

/// `-Σ_{π<1̂} f(π) μ(π, 1̂)`, the value of `I_f` on constant tuples.
pub fn diagonal_value<S: Scalars>(f: &PartitionFunction<S>, lattice: &PartitionLattice) -> Result<S::Elem> {
    f.check_lattice(lattice)?;
    let s = &f.scalars;
    let top = lattice.top();
    let mut acc = s.zero();
    for (pi, fv) in f.values.iter().enumerate().take(top) {
        if !s.is_zero(fv) {
            acc = s.add(&acc, &s.scale(fv, &lattice.mobius_at(pi, top)));
        }
    }
    Ok(s.neg(&acc))
}

/// The closed form of `I_f(values)`: the diagonal value on constant tuples,
/// otherwise `f` at the tuple's equality pattern.
pub fn indicator_value_lemma<S: Scalars, T: PartialEq>(
    f: &PartitionFunction<S>,
    lattice: &PartitionLattice,
    values: &[T],
) -> Result<S::Elem> {
    f.check_lattice(lattice)?;
    Error::check_dims(f.k, values.len())?;
    let rho = SetPartition::of_tuple(values)?;
    if rho.is_coarsest() {
        diagonal_value(f, lattice)
    } else {
        Ok(f.values[lattice.require_index(&rho)?].clone())
    }
}

/// `f(0̂) = 1`, zero elsewhere.
pub fn distinctness_generator<S: Scalars>(lattice: &PartitionLattice, scalars: S) -> PartitionFunction<S> {
    let mut f = PartitionFunction::zero(lattice, scalars, Domain::ExcludesTop);
    if lattice.len() > 1 {
        f.values[lattice.bottom()] = f.scalars.one();
    }
    f
}

enum Role<E> {
    Zero,
    Fixed(E),
    Cancel,
}

/// Fills `f` in lattice order; `Cancel` entries are chosen so that the
/// coefficient `c_π` of the indicator vanishes.
fn fill<S: Scalars>(
    lattice: &PartitionLattice,
    scalars: S,
    mut role: impl FnMut(usize) -> Role<S::Elem>,
) -> PartitionFunction<S> {
    let top = lattice.top();
    let table = lattice.mobius_table();
    let mut f = PartitionFunction::zero(lattice, scalars, Domain::ExcludesTop);
    let s = f.scalars.clone();
    // below[π] accumulates Σ_{τ<π} f(τ) μ(τ,π) over already filled τ
    let mut below = vec![s.zero(); lattice.len()];
    for idx in 0..top {
        let value = match role(idx) {
            Role::Zero => continue,
            Role::Fixed(v) => v,
            Role::Cancel => s.neg(&below[idx]),
        };
        if s.is_zero(&value) {
            continue;
        }
        for (tau, mu) in table.row(idx) {
            if *tau != idx {
                below[*tau] = s.add(&below[*tau], &s.scale(&value, mu));
            }
        }
        f.values[idx] = value;
    }
    f
}

/// The rank-`r` generator: zero below rank `r`, one at rank `r`, and above
/// rank `r` the unique values that cancel every indicator coefficient.
///
/// `r = k - 1` is rejected: the only partition of that rank is `1̂`, which
/// lies outside the domain.
pub fn rank_generator<S: Scalars>(lattice: &PartitionLattice, r: usize, scalars: S) -> Result<PartitionFunction<S>> {
    let k = lattice.k();
    if k < 2 || r > k - 2 {
        return Err(Error::domain(format!(
            "rank generator needs 0 <= r <= k-2 (got r = {r}, k = {k}); rank k-1 contains only the top partition"
        )));
    }
    let one = scalars.one();
    Ok(fill(lattice, scalars, |idx| match lattice.rank(idx) {
        rk if rk < r => Role::Zero,
        rk if rk == r => Role::Fixed(one.clone()),
        _ => Role::Cancel,
    }))
}

/// The generator supported on `support`, with prescribed values on the
/// minimal elements of the support and cancelling values elsewhere in it.
pub fn zero_set_generator<S: Scalars>(
    lattice: &PartitionLattice,
    support: &[SetPartition],
    minima_values: &[(SetPartition, S::Elem)],
    scalars: S,
) -> Result<PartitionFunction<S>> {
    if support.is_empty() {
        return Err(Error::domain("support must be nonempty"));
    }
    let top = lattice.top();
    let mut in_support = vec![false; lattice.len()];
    for pi in support {
        let idx = lattice.require_index(pi)?;
        if idx == top {
            return Err(Error::domain("the top partition cannot be in the support"));
        }
        in_support[idx] = true;
    }
    let members: Vec<usize> = (0..top).filter(|&i| in_support[i]).collect();
    let is_minimal = |i: usize| !members.iter().any(|&j| j != i && lattice.leq(j, i));
    let minima: Vec<usize> = members.iter().copied().filter(|&i| is_minimal(i)).collect();

    let mut given: Vec<Option<S::Elem>> = vec![None; lattice.len()];
    for (pi, v) in minima_values {
        let idx = lattice.require_index(pi)?;
        if !minima.contains(&idx) {
            return Err(Error::domain(format!("{pi} is not a minimal element of the support")));
        }
        given[idx] = Some(v.clone());
    }
    if let Some(&missing) = minima.iter().find(|&&i| given[i].is_none()) {
        return Err(Error::domain(format!(
            "no value given for minimal element {}",
            lattice.partition(missing)
        )));
    }
    Ok(fill(lattice, scalars, |idx| {
        if !in_support[idx] {
            Role::Zero
        } else if let Some(v) = given[idx].take() {
            Role::Fixed(v)
        } else {
            Role::Cancel
        }
    }))
}

/// Outcome of the sign computation for the sum-free generator on `Π_p`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NaslundCheck {
    pub p: u64,
    /// The generator equals `-μ(0̂, π)` on every two-block partition.
    pub matches_mobius: bool,
    /// `Σ_{j=2}^{p-1} j^{-1}` in `F_p`.
    pub harmonic_sum: i64,
    /// `Σ_{π<1̂} f(π) μ(π, 1̂)` in `F_p`.
    pub full_sum: i64,
    /// `(-1)^p (p-1)! Σ_{j=2}^{p-1} j^{-1}` in `F_p`.
    pub closed_form: i64,
}

fn signed_residue(field: &Field, x: FieldElement) -> i64 {
    let v = field.as_prime_residue(x).expect("prime field") as i64;
    if v > field.p() as i64 / 2 {
        v - field.p() as i64
    } else {
        v
    }
}

/// Builds the generator supported on `{0̂}` and the two-block partitions of
/// `Π_p`, with `f(0̂) = 1`, and evaluates the diagonal sum in `F_p`.
pub fn naslund_sum_check(p: u64) -> Result<NaslundCheck> {
    naslund_sum_check_with_limit(p, 7)
}

pub fn naslund_sum_check_with_limit(p: u64, max_p: u64) -> Result<NaslundCheck> {
    if p < 3 || !is_prime(p) {
        return Err(Error::domain(format!("{p} is not an odd prime")));
    }
    let lattice = PartitionLattice::with_max_k(p as usize, max_p as usize)?;
    let field = Field::prime(p)?;
    let k = p as usize;
    let mut support = vec![lattice.partition(lattice.bottom()).to_owned()];
    support.extend(lattice.rank_range(k - 2).map(|i| *lattice.partition(i)));
    let f = zero_set_generator(&lattice, &support, &[(support[0], field.one())], field.clone())?;

    let matches_mobius = lattice
        .rank_range(k - 2)
        .all(|i| *f.value_at(i) == field.neg(field.from_bigint(&lattice.mobius_at(0, i))));
    let full_sum = field.neg(diagonal_value(&f, &lattice)?);
    let harmonic = harmonic_inverse_sum(&field);
    let fact = crate::combinatorics::factorial(p - 1) * if p % 2 == 0 { 1 } else { -1 };
    let closed = field.mul(field.from_bigint(&BigInt::from(fact)), harmonic);
    Ok(NaslundCheck {
        p,
        matches_mobius,
        harmonic_sum: signed_residue(&field, harmonic),
        full_sum: signed_residue(&field, full_sum),
        closed_form: signed_residue(&field, closed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::stirling2;
    use crate::scalars::Rationals;
    use num_rational::BigRational;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn distinctness_coefficients_for_three() {
        let lat = PartitionLattice::new(3).unwrap();
        let f = distinctness_generator(&lat, Rationals);
        assert_eq!(f.domain_size(), 4);
        let c = indicator_coefficients(&f, &lat).unwrap();
        let values: Vec<BigRational> = c.entries().iter().map(|(_, v)| v.clone()).collect();
        assert_eq!(values, vec![q(1), q(-1), q(-1), q(-1)]);
        assert_eq!(c.evaluate(&['a', 'a', 'a']).unwrap(), q(-2));
        assert_eq!(c.evaluate(&['a', 'b', 'c']).unwrap(), q(1));
        assert_eq!(c.evaluate(&['a', 'b', 'a']).unwrap(), q(0));
    }

    #[test]
    fn zero_function_has_zero_coefficients() {
        let lat = PartitionLattice::new(4).unwrap();
        let f = PartitionFunction::zero(&lat, Rationals, Domain::ExcludesTop);
        let c = indicator_coefficients(&f, &lat).unwrap();
        assert_eq!(c.support_size(), 0);
        assert_eq!(diagonal_value(&f, &lat).unwrap(), q(0));
    }

    #[test]
    fn rank_two_generator_on_four_points() {
        let lat = PartitionLattice::new(4).unwrap();
        let f = rank_generator(&lat, 2, Rationals).unwrap();
        for (idx, v) in f.values().iter().enumerate().take(lat.top()) {
            let expected = if lat.rank(idx) == 2 { q(1) } else { q(0) };
            assert_eq!(v, &expected);
        }
        let c = indicator_coefficients(&f, &lat).unwrap();
        for (tau, v) in c.entries() {
            assert_eq!(v, &if tau.rank() == 2 { q(1) } else { q(0) }, "{tau}");
        }
        assert_eq!(diagonal_value(&f, &lat).unwrap(), q(7));
    }

    #[test]
    fn rank_one_generator_value() {
        let lat = PartitionLattice::new(4).unwrap();
        let f = rank_generator(&lat, 1, Rationals).unwrap();
        let c = indicator_coefficients(&f, &lat).unwrap();
        assert_eq!(c.evaluate(&['a', 'b', 'b', 'a']).unwrap(), q(2));
        assert_eq!(f.get(&lat, &"14|23".parse().unwrap()).unwrap(), q(2));
    }

    #[test]
    fn rank_generator_rejects_top_rank() {
        let lat = PartitionLattice::new(3).unwrap();
        assert!(matches!(rank_generator(&lat, 2, Rationals), Err(Error::Domain(_))));
        assert!(rank_generator(&lat, 1, Rationals).is_ok());
    }

    #[test]
    fn rank_zero_generator_kills_higher_coefficients() {
        for k in 2..=5 {
            let lat = PartitionLattice::new(k).unwrap();
            let f = rank_generator(&lat, 0, Rationals).unwrap();
            let c = indicator_coefficients(&f, &lat).unwrap();
            for (tau, v) in c.entries() {
                assert_eq!(v, &if tau.rank() == 0 { q(1) } else { q(0) });
            }
        }
    }

    #[test]
    fn generator_counts_rank_r_elements_below() {
        // f_r(π) is the number of rank-r partitions below π
        for k in 3..=6 {
            let lat = PartitionLattice::new(k).unwrap();
            for r in 0..=k - 2 {
                let f = rank_generator(&lat, r, Rationals).unwrap();
                for idx in 0..lat.top() {
                    let count = lat.rank_range(r).filter(|&j| lat.leq(j, idx)).count() as i64;
                    assert_eq!(f.value_at(idx), &q(count), "k={k} r={r} idx={idx}");
                }
                assert_eq!(
                    BigRational::from_integer(stirling2(k, k - r)),
                    diagonal_value(&f, &lat).unwrap()
                );
            }
        }
    }

    #[test]
    fn zero_set_generator_matches_rank_generator() {
        for k in 3..=6 {
            let lat = PartitionLattice::new(k).unwrap();
            for r in 0..=k - 2 {
                let support: Vec<SetPartition> = (0..lat.top())
                    .filter(|&i| lat.rank(i) >= r)
                    .map(|i| *lat.partition(i))
                    .collect();
                let minima: Vec<_> = lat.rank_range(r).map(|i| (*lat.partition(i), q(1))).collect();
                let z = zero_set_generator(&lat, &support, &minima, Rationals).unwrap();
                assert_eq!(z, rank_generator(&lat, r, Rationals).unwrap());
            }
        }
    }

    #[test]
    fn zero_set_generator_validates_minima() {
        let lat = PartitionLattice::new(4).unwrap();
        let support: Vec<SetPartition> = vec!["12|3|4".parse().unwrap(), "12|34".parse().unwrap()];
        let wrong = [("12|34".parse().unwrap(), q(1))];
        assert!(zero_set_generator(&lat, &support, &wrong, Rationals).is_err());
        assert!(zero_set_generator(&lat, &support, &[], Rationals).is_err());
        let right = [("12|3|4".parse().unwrap(), q(5))];
        let f = zero_set_generator(&lat, &support, &right, Rationals).unwrap();
        assert_eq!(f.get(&lat, &"12|34".parse().unwrap()).unwrap(), q(5));
        assert!(zero_set_generator::<Rationals>(&lat, &[], &[], Rationals).is_err());
        let top = [SetPartition::coarsest(4)];
        assert!(zero_set_generator::<Rationals>(&lat, &top, &[], Rationals).is_err());
    }

    #[test]
    fn singleton_support_is_distinctness() {
        let lat = PartitionLattice::new(4).unwrap();
        let zero = SetPartition::finest(4);
        let f = zero_set_generator(&lat, &[zero], &[(zero, q(1))], Rationals).unwrap();
        assert_eq!(f, distinctness_generator(&lat, Rationals));
    }

    #[test]
    fn lemma_route_on_all_tuples() {
        let lat = PartitionLattice::new(4).unwrap();
        let f7 = Field::prime(7).unwrap();
        let f = PartitionFunction::from_pairs(
            &lat,
            f7.clone(),
            Domain::ExcludesTop,
            lat.partitions()[..lat.top()]
                .iter()
                .enumerate()
                .map(|(i, pi)| (*pi, f7.from_i64(i as i64 * 3 + 1))),
        )
        .unwrap();
        let c = indicator_coefficients(&f, &lat).unwrap();
        for n in 0..81u32 {
            let t: Vec<u32> = (0..4).map(|i| n / 3u32.pow(i) % 3).collect();
            assert_eq!(c.evaluate(&t).unwrap(), indicator_value_lemma(&f, &lat, &t).unwrap());
        }
    }

    #[test]
    fn distinctness_diagonal_by_wilson() {
        for p in [3u64, 5, 7] {
            let lat = PartitionLattice::new(p as usize).unwrap();
            let field = Field::prime(p).unwrap();
            let f = distinctness_generator(&lat, field.clone());
            assert_eq!(diagonal_value(&f, &lat).unwrap(), field.one());
        }
        let lat = PartitionLattice::new(5).unwrap();
        let f = distinctness_generator(&lat, Rationals);
        assert_eq!(diagonal_value(&f, &lat).unwrap(), q(-24));
    }

    #[test]
    fn naslund_values() {
        for p in [3u64, 5, 7] {
            let c = naslund_sum_check(p).unwrap();
            assert!(c.matches_mobius);
            assert_eq!(c.harmonic_sum, -1);
            assert_eq!(c.full_sum, -1);
            assert_eq!(c.closed_form, -1);
        }
        assert!(naslund_sum_check(9).is_err());
        assert!(matches!(naslund_sum_check(11), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn top_value_requires_full_domain() {
        let lat = PartitionLattice::new(3).unwrap();
        let top = SetPartition::coarsest(3);
        assert!(PartitionFunction::from_pairs(&lat, Rationals, Domain::ExcludesTop, [(top, q(1))]).is_err());
        let f = PartitionFunction::from_pairs(&lat, Rationals, Domain::IncludesTop, [(top, q(1))]).unwrap();
        assert_eq!(f.get(&lat, &top).unwrap(), q(1));
        assert_eq!(f.domain_size(), 5);
    }

    #[test]
    fn json_round_trip() {
        let lat = PartitionLattice::new(3).unwrap();
        let f = rank_generator(&lat, 1, Rationals).unwrap();
        let json = f.to_json(&lat);
        assert_eq!(json, serde_json::json!({"12|3": 1, "13|2": 1, "1|23": 1}));
        let back = PartitionFunction::from_json(&lat, Rationals, Domain::ExcludesTop, &json).unwrap();
        assert_eq!(back, f);
    }
}
