//! Exact arithmetic in `F_p` and `F_{p^ℓ}`.
//!
//! A [`Field`] is a cheap handle (`Arc`) around validated parameters.
//! Elements are plain `Copy` values and all arithmetic goes through the
//! field handle. An element of `F_{p^ℓ}` with coefficient vector
//! `(c_0, ..., c_{ℓ-1})` (constant first) is packed as `Σ c_i p^i`, so the
//! packed values `0..q` enumerate the field in a fixed order.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Extension fields of at most this order use log/exp tables.
const TABLE_LIMIT: u64 = 1 << 16;

/// Default ceiling on `q^n` for [`Field::vectors`].
pub const DEFAULT_VECTOR_BUDGET: u64 = 10_000_000;

/// Field parameters as they appear in configuration files:
/// `{"p": 3, "ell": 2, "modulus": [1, 0, 1]}` with coefficients listed
/// constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    #[serde(default = "one_u32")]
    pub ell: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

fn one_u32() -> u32 {
    1
}

impl FieldSpec {
    pub fn prime(p: u64) -> Self {
        FieldSpec {
            p,
            ell: 1,
            modulus: None,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(u64);

impl FieldElement {
    /// Packed representation, in `0..q`.
    pub fn packed(self) -> u64 {
        self.0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug)]
struct Inner {
    p: u64,
    ell: u32,
    q: u64,
    modulus: Vec<u64>,
    // log/exp tables for small extension fields
    exp: Vec<u32>,
    log: Vec<u32>,
}

#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.ell == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}", self.0.p, self.0.ell)
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.ell == other.0.ell && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.spec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let spec = FieldSpec::deserialize(d)?;
        Field::new(&spec).map_err(serde::de::Error::custom)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Built-in irreducible moduli (constant first) for the extension fields
/// used in the examples and tests.
fn builtin_modulus(p: u64, ell: u32) -> Option<Vec<u64>> {
    match (p, ell) {
        (3, 2) => Some(vec![1, 0, 1]),
        (5, 2) => Some(vec![3, 0, 1]),
        (3, 3) => Some(vec![1, 2, 0, 1]),
        (7, 2) => Some(vec![1, 0, 1]),
        _ => None,
    }
}

// Dense polynomials over F_p, constant first, trimmed of trailing zeros.
mod poly {
    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y % p) % p;
            }
        }
        trim(out)
    }

    pub fn inv_mod(a: u64, p: u64) -> u64 {
        super::pow_mod(a, p - 2, p)
    }

    /// Remainder of `a` modulo `m` (`m` nonzero).
    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while r.len() > dm {
            let dr = r.len() - 1;
            let c = r[dr] * lead_inv % p;
            let shift = dr - dm;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        rem(&mul(a, b, p), m, p)
    }

    pub fn powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            e >>= 1;
        }
        rem(&acc, m, p)
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: a monic `f` of degree `ℓ` is irreducible over `F_p` iff
/// `x^(p^ℓ) = x mod f` and `gcd(x^(p^(ℓ/r)) - x, f) = 1` for every prime
/// `r | ℓ`.
pub fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let ell = modulus.len() - 1;
    if ell == 0 {
        return false;
    }
    if ell == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    // frob[i] = x^(p^i) mod f
    let mut frob = vec![x.clone()];
    for i in 1..=ell {
        let next = poly::powmod(&frob[i - 1], p, modulus, p);
        frob.push(next);
    }
    if poly::trim(frob[ell].clone()) != x {
        return false;
    }
    prime_factors(ell as u64).into_iter().all(|r| {
        let h = poly::sub(&frob[ell / r as usize], &x, p);
        poly::gcd(modulus, &h, p).len() == 1
    })
}

impl Field {
    pub fn new(spec: &FieldSpec) -> Result<Self> {
        let p = spec.p;
        if !is_prime(p) || p >= 1 << 31 {
            return Err(Error::InvalidField(format!("p = {p} is not a prime below 2^31")));
        }
        if p == 2 {
            return Err(Error::InvalidField("characteristic 2 is not supported; q must be odd".into()));
        }
        let ell = spec.ell;
        if ell == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q = (p as u128).checked_pow(ell).filter(|&q| q < 1 << 62).ok_or_else(|| {
            Error::InvalidField(format!("q = {p}^{ell} does not fit the element encoding"))
        })? as u64;
        let modulus = if ell == 1 {
            vec![0, 1]
        } else {
            let m = match &spec.modulus {
                Some(m) => m.clone(),
                None => builtin_modulus(p, ell).map_or_else(|| Self::find_irreducible(p, ell), Ok)?,
            };
            if m.len() != ell as usize + 1 || m[ell as usize] != 1 {
                return Err(Error::InvalidField(format!(
                    "modulus {m:?} is not monic of degree {ell}"
                )));
            }
            if m.iter().any(|&c| c >= p) {
                return Err(Error::InvalidField(format!("modulus {m:?} has coefficients outside 0..{p}")));
            }
            if !is_irreducible(&m, p) {
                return Err(Error::InvalidField(format!("modulus {m:?} is reducible over F_{p}")));
            }
            m
        };
        let mut inner = Inner {
            p,
            ell,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        if ell > 1 && q <= TABLE_LIMIT {
            build_tables(&mut inner);
        }
        Ok(Field(Arc::new(inner)))
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(&FieldSpec::prime(p))
    }

    /// `F_{p^ℓ}` with a built-in modulus when one exists, otherwise the
    /// lexicographically first monic irreducible polynomial.
    pub fn extension(p: u64, ell: u32) -> Result<Self> {
        Self::new(&FieldSpec {
            p,
            ell,
            modulus: None,
        })
    }

    /// The field of order `q`, where `q` is an odd prime power.
    pub fn with_order(q: u64) -> Result<Self> {
        let factors = prime_factors(q);
        if factors.len() != 1 {
            return Err(Error::InvalidField(format!("{q} is not a prime power")));
        }
        let p = factors[0];
        let mut ell = 0;
        let mut r = q;
        while r > 1 {
            r /= p;
            ell += 1;
        }
        Self::extension(p, ell)
    }

    fn find_irreducible(p: u64, ell: u32) -> Result<Vec<u64>> {
        let count = p.checked_pow(ell).unwrap_or(u64::MAX);
        for idx in 0..count {
            let mut m: Vec<u64> = (0..ell).map(|i| idx / p.pow(i) % p).collect();
            m.push(1);
            if m[0] != 0 && is_irreducible(&m, p) {
                return Ok(m);
            }
        }
        Err(Error::InvalidField(format!("no irreducible polynomial of degree {ell} over F_{p}")))
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.0.p,
            ell: self.0.ell,
            modulus: (self.0.ell > 1).then(|| self.0.modulus.clone()),
        }
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn ell(&self) -> u32 {
        self.0.ell
    }

    pub fn q(&self) -> u64 {
        self.0.q
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// The element with packed value `idx`; `idx < q`.
    pub fn element(&self, idx: u64) -> FieldElement {
        debug_assert!(idx < self.0.q);
        FieldElement(idx)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.0.q).map(FieldElement)
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.0.p as i64) as u64)
    }

    pub fn from_bigint(&self, v: &BigInt) -> FieldElement {
        let r = v.mod_floor(&BigInt::from(self.0.p));
        FieldElement(r.to_u64().expect("residue fits"))
    }

    pub fn from_rational(&self, v: &BigRational) -> Result<FieldElement> {
        let den = self.from_bigint(v.denom());
        if den.0 == 0 {
            return Err(Error::DivisionByZero(format!(
                "reducing {v} into {self}: denominator divisible by {}",
                self.0.p
            )));
        }
        Ok(self.mul(self.from_bigint(v.numer()), self.inv(den)?))
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.0.ell as usize {
            return Err(Error::parse(format!(
                "{} coefficients given for an element of {self}",
                coeffs.len()
            )));
        }
        let mut v = 0u64;
        for &c in coeffs.iter().rev() {
            if c >= self.0.p {
                return Err(Error::parse(format!("coefficient {c} is not reduced mod {}", self.0.p)));
            }
            v = v * self.0.p + c;
        }
        Ok(FieldElement(v))
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u64> {
        let p = self.0.p;
        let mut v = x.0;
        (0..self.0.ell)
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    /// Integer value of an element of the prime subfield, if it is one.
    pub fn as_prime_residue(&self, x: FieldElement) -> Option<u64> {
        (x.0 < self.0.p).then_some(x.0)
    }

    pub fn is_zero(&self, x: FieldElement) -> bool {
        x.0 == 0
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.0.p;
        if self.0.ell == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= p { s - p } else { s });
        }
        let (mut x, mut y, mut out, mut scale) = (a.0, b.0, 0u64, 1u64);
        for _ in 0..self.0.ell {
            out += (x % p + y % p) % p * scale;
            x /= p;
            y /= p;
            scale *= p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.0.p;
        if self.0.ell == 1 {
            return FieldElement(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let (mut x, mut out, mut scale) = (a.0, 0u64, 1u64);
        for _ in 0..self.0.ell {
            out += (p - x % p) % p * scale;
            x /= p;
            scale *= p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let inner = &*self.0;
        if inner.ell == 1 {
            return FieldElement(a.0 * b.0 % inner.p);
        }
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        if !inner.log.is_empty() {
            let s = inner.log[a.0 as usize] + inner.log[b.0 as usize];
            return FieldElement(inner.exp[s as usize] as u64);
        }
        let prod = poly::mulmod(&self.coeffs(a), &self.coeffs(b), &inner.modulus, inner.p);
        self.from_coeffs(&prod).expect("reduced product")
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero(format!("inverse of zero in {self}")));
        }
        let inner = &*self.0;
        if inner.ell == 1 {
            return Ok(FieldElement(pow_mod(a.0, inner.p - 2, inner.p)));
        }
        if !inner.log.is_empty() {
            let l = inner.log[a.0 as usize];
            let order = (inner.q - 1) as u32;
            return Ok(FieldElement(inner.exp[((order - l) % order) as usize] as u64));
        }
        Ok(self.pow(a, inner.q - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn sum(&self, items: impl IntoIterator<Item = FieldElement>) -> FieldElement {
        items.into_iter().fold(self.zero(), |acc, x| self.add(acc, x))
    }

    pub fn product(&self, items: impl IntoIterator<Item = FieldElement>) -> FieldElement {
        items.into_iter().fold(self.one(), |acc, x| self.mul(acc, x))
    }

    /// Nonzero squares, sorted by packed value.
    pub fn quadratic_residues(&self) -> Vec<FieldElement> {
        let mut seen = vec![false; self.0.q as usize];
        for x in self.elements().skip(1) {
            seen[self.mul(x, x).0 as usize] = true;
        }
        (1..self.0.q).filter(|&i| seen[i as usize]).map(FieldElement).collect()
    }

    /// `F_q \ (Q ∪ {0})`.
    pub fn nonresidues(&self) -> Vec<FieldElement> {
        let q = self.quadratic_residues();
        self.elements()
            .skip(1)
            .filter(|x| q.binary_search(x).is_err())
            .collect()
    }

    /// Euler's criterion, for nonzero `x`.
    pub fn is_residue(&self, x: FieldElement) -> bool {
        x.0 != 0 && self.pow(x, (self.0.q - 1) / 2) == self.one()
    }

    /// `Π_{α ∈ S} (-α)`.
    pub fn residue_product_sign(&self, set: &[FieldElement]) -> FieldElement {
        self.product(set.iter().map(|&a| self.neg(a)))
    }

    pub fn inner_product(&self, u: &FieldVector, v: &FieldVector) -> Result<FieldElement> {
        Error::check_dims(u.len(), v.len())?;
        Ok(self.dot(&u.0, &v.0))
    }

    pub(crate) fn dot(&self, u: &[FieldElement], v: &[FieldElement]) -> FieldElement {
        u.iter()
            .zip(v)
            .fold(self.zero(), |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
    }

    pub fn vector_sub(&self, u: &FieldVector, v: &FieldVector) -> Result<FieldVector> {
        Error::check_dims(u.len(), v.len())?;
        Ok(FieldVector(u.0.iter().zip(&v.0).map(|(&a, &b)| self.sub(a, b)).collect()))
    }

    /// The vector with lexicographic index `idx` among all `q^n` vectors;
    /// the first coordinate is the most significant digit.
    pub fn vector_from_index(&self, mut idx: u64, n: usize) -> FieldVector {
        let q = self.0.q;
        let mut entries = vec![FieldElement(0); n];
        for slot in entries.iter_mut().rev() {
            *slot = FieldElement(idx % q);
            idx /= q;
        }
        FieldVector(entries)
    }

    pub fn vector_index(&self, v: &FieldVector) -> u64 {
        v.0.iter().fold(0u64, |acc, x| acc * self.0.q + x.0)
    }

    /// Number of vectors in `F_q^n`, or a budget error.
    pub fn vector_count(&self, n: usize, budget: u64) -> Result<u64> {
        let count = (self.0.q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if count > budget as u128 {
            return Err(Error::budget(format!(
                "{self}^{n} has {count} vectors, budget is {budget}"
            )));
        }
        Ok(count as u64)
    }

    /// All of `F_q^n` in lexicographic order.
    pub fn vectors(&self, n: usize, budget: u64) -> Result<impl Iterator<Item = FieldVector> + '_> {
        let count = self.vector_count(n, budget)?;
        Ok((0..count).map(move |i| self.vector_from_index(i, n)))
    }

    pub fn element_to_json(&self, x: FieldElement) -> serde_json::Value {
        if self.0.ell == 1 {
            serde_json::Value::from(x.0)
        } else {
            serde_json::Value::from(self.coeffs(x))
        }
    }

    /// Accepts an integer (reduced mod `p`, negatives allowed) or a
    /// coefficient array.
    pub fn element_from_json(&self, v: &serde_json::Value) -> Result<FieldElement> {
        match v {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(|i| self.from_i64(i))
                .ok_or_else(|| Error::parse(format!("{n} is not an integer"))),
            serde_json::Value::Array(items) => {
                let coeffs = items
                    .iter()
                    .map(|c| {
                        c.as_i64()
                            .map(|i| i.rem_euclid(self.0.p as i64) as u64)
                            .ok_or_else(|| Error::parse(format!("{c} is not an integer")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                self.from_coeffs(&coeffs)
            }
            other => Err(Error::parse(format!("{other} is not a field element"))),
        }
    }

    pub fn vector_to_json(&self, v: &FieldVector) -> serde_json::Value {
        serde_json::Value::Array(v.0.iter().map(|&x| self.element_to_json(x)).collect())
    }

    pub fn vector_from_json(&self, v: &serde_json::Value) -> Result<FieldVector> {
        let items = v
            .as_array()
            .ok_or_else(|| Error::parse(format!("{v} is not a vector")))?;
        Ok(FieldVector(
            items.iter().map(|x| self.element_from_json(x)).collect::<Result<_>>()?,
        ))
    }

    pub fn format(&self, x: FieldElement) -> String {
        if self.0.ell == 1 {
            return x.0.to_string();
        }
        let c = self.coeffs(x);
        let terms: Vec<String> = c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &ci)| ci != 0)
            .map(|(i, &ci)| match (i, ci) {
                (0, _) => ci.to_string(),
                (1, 1) => "a".into(),
                (1, _) => format!("{ci}a"),
                (_, 1) => format!("a^{i}"),
                _ => format!("{ci}a^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

fn build_tables(inner: &mut Inner) {
    let field = Field(Arc::new(Inner {
        p: inner.p,
        ell: inner.ell,
        q: inner.q,
        modulus: inner.modulus.clone(),
        exp: Vec::new(),
        log: Vec::new(),
    }));
    let order = inner.q - 1;
    let factors = prime_factors(order);
    let generator = (2..inner.q)
        .map(FieldElement)
        .find(|&g| factors.iter().all(|&r| field.pow(g, order / r) != field.one()))
        .expect("multiplicative group is cyclic");
    let mut exp = vec![0u32; 2 * order as usize];
    let mut log = vec![0u32; inner.q as usize];
    let mut x = field.one();
    for i in 0..order as usize {
        exp[i] = x.0 as u32;
        exp[i + order as usize] = x.0 as u32;
        log[x.0 as usize] = i as u32;
        x = field.mul(x, generator);
    }
    inner.exp = exp;
    inner.log = log;
}

/// A vector in `F_q^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldVector(pub Vec<FieldElement>);

impl FieldVector {
    pub fn zero(n: usize) -> Self {
        FieldVector(vec![FieldElement(0); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.0
    }

    /// Vector over a prime field from integer coordinates.
    pub fn from_ints(field: &Field, coords: &[i64]) -> Self {
        FieldVector(coords.iter().map(|&c| field.from_i64(c)).collect())
    }
}

/// `Σ_{j=2}^{p-1} j^{-1}` in `F_p`.
pub fn harmonic_inverse_sum(field: &Field) -> FieldElement {
    let p = field.p() as i64;
    field.sum((2..p).map(|j| field.inv(field.from_i64(j)).expect("nonzero")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_prime_arithmetic() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.inv(f7.from_i64(3)).unwrap(), f7.from_i64(5));
        assert!(f7.inv(f7.zero()).is_err());
        for x in f7.elements() {
            assert_eq!(f7.add(x, f7.neg(x)), f7.zero());
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(2).is_err());
        let reducible = FieldSpec {
            p: 3,
            ell: 2,
            modulus: Some(vec![2, 0, 1]),
        };
        assert!(matches!(Field::new(&reducible), Err(Error::InvalidField(_))));
        let not_monic = FieldSpec {
            p: 3,
            ell: 2,
            modulus: Some(vec![1, 0, 2]),
        };
        assert!(Field::new(&not_monic).is_err());
        assert!(Field::with_order(15).is_err());
    }

    #[test]
    fn builtin_extensions_are_fields() {
        for q in [9u64, 25, 27, 49, 81, 125] {
            let f = Field::with_order(q).unwrap();
            assert_eq!(f.q(), q);
            for x in f.elements().skip(1) {
                assert_eq!(f.pow(x, q - 1), f.one(), "q={q} x={x:?}");
                assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
            }
        }
    }

    #[test]
    fn table_and_polynomial_multiplication_agree() {
        let f = Field::with_order(9).unwrap();
        let m = f.spec().modulus.unwrap();
        for a in f.elements() {
            for b in f.elements() {
                let slow = poly::mulmod(&f.coeffs(a), &f.coeffs(b), &m, 3);
                assert_eq!(f.coeffs(f.mul(a, b))[..slow.len()], slow[..]);
            }
        }
    }

    #[test]
    fn residues() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.quadratic_residues(), vec![f5.from_i64(1), f5.from_i64(4)]);
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.quadratic_residues(), vec![f3.one()]);
        let f9 = Field::with_order(9).unwrap();
        assert_eq!(f9.quadratic_residues().len(), 4);
        for f in [f3, f5, f9, Field::prime(7).unwrap()] {
            let q = f.quadratic_residues();
            for x in f.elements().skip(1) {
                assert_eq!(q.contains(&x), f.is_residue(x));
            }
        }
    }

    #[test]
    fn residue_products() {
        let f5 = Field::prime(5).unwrap();
        let q = f5.quadratic_residues();
        assert_eq!(f5.residue_product_sign(&q), f5.from_i64(-1));
        let nonzero: Vec<_> = f5.elements().skip(1).collect();
        assert_eq!(f5.residue_product_sign(&nonzero), f5.from_i64(-1));
        assert_eq!(f5.residue_product_sign(&[]), f5.one());
    }

    #[test]
    fn inner_products() {
        let f3 = Field::prime(3).unwrap();
        let v = |c: &[i64]| FieldVector::from_ints(&f3, c);
        assert_eq!(f3.inner_product(&v(&[1, 0]), &v(&[0, 1])).unwrap(), f3.zero());
        assert_eq!(f3.inner_product(&v(&[1, 1, 1]), &v(&[1, 1, 1])).unwrap(), f3.zero());
        assert_eq!(f3.inner_product(&v(&[2, 0]), &v(&[1, 2])).unwrap(), f3.from_i64(2));
        assert!(matches!(
            f3.inner_product(&v(&[1]), &v(&[1, 2])),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn vector_enumeration() {
        let f3 = Field::prime(3).unwrap();
        let all: Vec<_> = f3.vectors(2, DEFAULT_VECTOR_BUDGET).unwrap().collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], FieldVector::zero(2));
        assert_eq!(all[1], FieldVector::from_ints(&f3, &[0, 1]));
        for (i, v) in all.iter().enumerate() {
            assert_eq!(f3.vector_index(v), i as u64);
        }
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.vectors(2, DEFAULT_VECTOR_BUDGET).unwrap().count(), 25);
        assert!(matches!(f5.vectors(20, DEFAULT_VECTOR_BUDGET), Err(Error::Budget(_))));
    }

    #[test]
    fn rational_reduction() {
        let f5 = Field::prime(5).unwrap();
        let third = BigRational::new(1.into(), 3.into());
        assert_eq!(f5.from_rational(&third).unwrap(), f5.from_i64(2));
        let f3 = Field::prime(3).unwrap();
        assert!(matches!(f3.from_rational(&third), Err(Error::DivisionByZero(_))));
        assert_eq!(f3.from_bigint(&BigInt::from(-7)), f3.from_i64(2));
    }

    #[test]
    fn harmonic_sums_are_minus_one() {
        for p in [3u64, 5, 7, 11, 13] {
            let f = Field::prime(p).unwrap();
            assert_eq!(harmonic_inverse_sum(&f), f.from_i64(-1), "p={p}");
        }
    }

    #[test]
    fn json_forms() {
        let spec: FieldSpec = serde_json::from_str(r#"{"p":3,"ell":2,"modulus":[1,0,1]}"#).unwrap();
        let f = Field::new(&spec).unwrap();
        let x = f.from_coeffs(&[2, 1]).unwrap();
        assert_eq!(f.element_to_json(x), serde_json::json!([2, 1]));
        assert_eq!(f.element_from_json(&serde_json::json!([2, 1])).unwrap(), x);
        assert_eq!(f.format(x), "a+2");
        let round: Field = serde_json::from_value(serde_json::to_value(&f).unwrap()).unwrap();
        assert_eq!(round, f);
        let f7: Field = serde_json::from_str(r#"{"p":7}"#).unwrap();
        assert_eq!(f7.element_from_json(&serde_json::json!(-1)).unwrap(), f7.from_i64(6));
    }
}
