//! Coefficient domains for partition functions: exact rationals, or a
//! finite field.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::ffield::{Field, FieldElement};

pub trait Scalars: Clone + Debug + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// `a * v` for an integer `v`, the usual shape of a Möbius term.
    fn scale(&self, a: &Self::Elem, v: &BigInt) -> Self::Elem {
        self.mul(a, &self.from_bigint(v))
    }

    fn to_json(&self, a: &Self::Elem) -> Value;
    fn from_json(&self, v: &Value) -> Result<Self::Elem>;
    fn name(&self) -> String;
}

/// The rational numbers, characteristic zero.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Scalars for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn scale(&self, a: &BigRational, v: &BigInt) -> BigRational {
        a * v
    }

    fn to_json(&self, a: &BigRational) -> Value {
        if a.is_integer() {
            match i64::try_from(a.numer()) {
                Ok(i) => Value::from(i),
                Err(_) => Value::from(a.numer().to_string()),
            }
        } else {
            Value::from(a.to_string())
        }
    }

    /// Integers, or strings such as `"-3/4"`.
    fn from_json(&self, v: &Value) -> Result<BigRational> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(|i| BigRational::from_integer(i.into()))
                .ok_or_else(|| Error::parse(format!("{n} is not an integer"))),
            Value::String(s) => s
                .trim()
                .parse::<BigRational>()
                .map_err(|e| Error::parse(format!("{s:?}: {e}"))),
            other => Err(Error::parse(format!("{other} is not a rational"))),
        }
    }

    fn name(&self) -> String {
        "Q".into()
    }
}

impl Scalars for Field {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        Field::zero(self)
    }

    fn one(&self) -> FieldElement {
        Field::one(self)
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        Field::add(self, *a, *b)
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        Field::neg(self, *a)
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        Field::mul(self, *a, *b)
    }

    fn from_bigint(&self, v: &BigInt) -> FieldElement {
        Field::from_bigint(self, v)
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        Field::is_zero(self, *a)
    }

    fn to_json(&self, a: &FieldElement) -> Value {
        self.element_to_json(*a)
    }

    fn from_json(&self, v: &Value) -> Result<FieldElement> {
        self.element_from_json(v)
    }

    fn name(&self) -> String {
        self.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_json_round_trip() {
        let q = Rationals;
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(q.to_json(&half), Value::from("1/2"));
        assert_eq!(q.from_json(&Value::from("1/2")).unwrap(), half);
        assert_eq!(q.from_json(&Value::from(-3)).unwrap(), BigRational::from_integer((-3).into()));
        assert!(q.from_json(&Value::Bool(true)).is_err());
    }

    #[test]
    fn field_scaling_reduces() {
        let f = Field::prime(5).unwrap();
        let x = Scalars::scale(&f, &f.one(), &BigInt::from(-24));
        assert_eq!(x, f.one());
    }
}
