//! Polynomials in the coordinates of `m` vector arguments, stored as
//! expression trees so that they stay independent of the dimension `n`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{Field, FieldElement};

/// One node of a polynomial expression.
///
/// `Coord { arg, index: None }` refers to the coordinate bound by the
/// nearest enclosing `SumCoords`, which sums its body over `s = 1..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Expr {
    Const {
        value: i64,
    },
    Coord {
        arg: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        index: Option<usize>,
    },
    Add {
        terms: Vec<Expr>,
    },
    Mul {
        factors: Vec<Expr>,
    },
    Neg {
        expr: Box<Expr>,
    },
    Sub {
        left: Box<Expr>,
        right: Box<Expr>,
    },
    Pow {
        base: Box<Expr>,
        exp: u32,
    },
    SumCoords {
        body: Box<Expr>,
    },
}

impl Expr {
    pub fn constant(value: i64) -> Self {
        Expr::Const { value }
    }

    /// Coordinate `s` of argument `arg`, where `s` is bound by `SumCoords`.
    pub fn bound(arg: usize) -> Self {
        Expr::Coord { arg, index: None }
    }

    pub fn coord(arg: usize, index: usize) -> Self {
        Expr::Coord {
            arg,
            index: Some(index),
        }
    }

    pub fn add(terms: Vec<Expr>) -> Self {
        Expr::Add { terms }
    }

    pub fn mul(factors: Vec<Expr>) -> Self {
        Expr::Mul { factors }
    }

    pub fn sub(left: Expr, right: Expr) -> Self {
        Expr::Sub {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn pow(base: Expr, exp: u32) -> Self {
        Expr::Pow {
            base: Box::new(base),
            exp,
        }
    }

    pub fn sum_coords(body: Expr) -> Self {
        Expr::SumCoords { body: Box::new(body) }
    }

    /// `Σ_s (x_a(s) - x_b(s)) (x_c(s) - x_d(s))`.
    pub fn difference_dot(a: usize, b: usize, c: usize, d: usize) -> Self {
        Expr::sum_coords(Expr::mul(vec![
            Expr::sub(Expr::bound(a), Expr::bound(b)),
            Expr::sub(Expr::bound(c), Expr::bound(d)),
        ]))
    }

    /// Syntactic total degree.
    pub fn degree(&self) -> u32 {
        match self {
            Expr::Const { .. } => 0,
            Expr::Coord { .. } => 1,
            Expr::Add { terms } => terms.iter().map(Expr::degree).max().unwrap_or(0),
            Expr::Mul { factors } => factors.iter().map(Expr::degree).sum(),
            Expr::Neg { expr } => expr.degree(),
            Expr::Sub { left, right } => left.degree().max(right.degree()),
            Expr::Pow { base, exp } => base.degree() * exp,
            Expr::SumCoords { body } => body.degree(),
        }
    }

    fn check(&self, m: usize, n: usize, bound: bool) -> Result<()> {
        match self {
            Expr::Const { .. } => Ok(()),
            Expr::Coord { arg, index } => {
                if *arg >= m {
                    return Err(Error::config(format!("argument {arg} out of range for arity {m}")));
                }
                match index {
                    Some(i) if *i >= n => Err(Error::config(format!("coordinate {i} out of range for n = {n}"))),
                    None if !bound => Err(Error::config("free coordinate outside a coordinate sum")),
                    _ => Ok(()),
                }
            }
            Expr::Add { terms } => terms.iter().try_for_each(|t| t.check(m, n, bound)),
            Expr::Mul { factors } => factors.iter().try_for_each(|t| t.check(m, n, bound)),
            Expr::Neg { expr } => expr.check(m, n, bound),
            Expr::Sub { left, right } => {
                left.check(m, n, bound)?;
                right.check(m, n, bound)
            }
            Expr::Pow { base, .. } => base.check(m, n, bound),
            Expr::SumCoords { body } => body.check(m, n, true),
        }
    }

    fn eval(&self, field: &Field, args: &[&[FieldElement]], s: Option<usize>) -> FieldElement {
        match self {
            Expr::Const { value } => field.from_i64(*value),
            Expr::Coord { arg, index } => {
                let i = index.or(s).expect("checked at construction");
                args[*arg][i]
            }
            Expr::Add { terms } => field.sum(terms.iter().map(|t| t.eval(field, args, s))),
            Expr::Mul { factors } => {
                let mut acc = field.one();
                for f in factors {
                    if field.is_zero(acc) {
                        break;
                    }
                    acc = field.mul(acc, f.eval(field, args, s));
                }
                acc
            }
            Expr::Neg { expr } => field.neg(expr.eval(field, args, s)),
            Expr::Sub { left, right } => field.sub(left.eval(field, args, s), right.eval(field, args, s)),
            Expr::Pow { base, exp } => field.pow(base.eval(field, args, s), *exp as u64),
            Expr::SumCoords { body } => {
                let n = args.first().map_or(0, |a| a.len());
                field.sum((0..n).map(|i| body.eval(field, args, Some(i))))
            }
        }
    }
}

/// A polynomial `g : (F_q^n)^m -> F_q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialSpec {
    pub m: usize,
    pub expr: Expr,
}

impl PolynomialSpec {
    pub fn new(m: usize, expr: Expr) -> Self {
        PolynomialSpec { m, expr }
    }

    pub fn degree(&self) -> u32 {
        self.expr.degree()
    }

    /// Validates argument and coordinate references for dimension `n`.
    pub fn check(&self, n: usize) -> Result<()> {
        if self.m == 0 {
            return Err(Error::config("polynomial arity must be at least 1"));
        }
        self.expr.check(self.m, n, false)
    }

    pub fn eval(&self, field: &Field, args: &[&[FieldElement]]) -> FieldElement {
        debug_assert_eq!(args.len(), self.m);
        self.expr.eval(field, args, None)
    }

    /// `g(s, t) = <s - t, s - t>`.
    pub fn squared_distance() -> Self {
        PolynomialSpec::new(2, Expr::difference_dot(0, 1, 0, 1))
    }

    /// `g(x, y) = <x, y>`.
    pub fn dot() -> Self {
        PolynomialSpec::new(2, Expr::sum_coords(Expr::mul(vec![Expr::bound(0), Expr::bound(1)])))
    }

    /// `g(x, y, z) = |x - y|^2 - |y - z|^2`.
    pub fn distance_difference() -> Self {
        PolynomialSpec::new(
            3,
            Expr::sub(Expr::difference_dot(0, 1, 0, 1), Expr::difference_dot(1, 2, 1, 2)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::FieldVector;

    #[test]
    fn builtin_degrees() {
        assert_eq!(PolynomialSpec::squared_distance().degree(), 2);
        assert_eq!(PolynomialSpec::dot().degree(), 2);
        assert_eq!(PolynomialSpec::distance_difference().degree(), 2);
        let cubic = PolynomialSpec::new(1, Expr::pow(Expr::add(vec![Expr::coord(0, 0), Expr::constant(1)]), 3));
        assert_eq!(cubic.degree(), 3);
    }

    #[test]
    fn evaluation() {
        let f = Field::prime(5).unwrap();
        let x = FieldVector::from_ints(&f, &[1, 2]);
        let y = FieldVector::from_ints(&f, &[3, 3]);
        let g = PolynomialSpec::squared_distance();
        // (1-3)^2 + (2-3)^2 = 5 = 0
        assert_eq!(g.eval(&f, &[x.entries(), y.entries()]), f.zero());
        let d = PolynomialSpec::dot();
        assert_eq!(d.eval(&f, &[x.entries(), y.entries()]), f.from_i64(9));
    }

    #[test]
    fn validation() {
        assert!(PolynomialSpec::squared_distance().check(3).is_ok());
        let bad_arg = PolynomialSpec::new(1, Expr::coord(1, 0));
        assert!(bad_arg.check(2).is_err());
        let bad_index = PolynomialSpec::new(1, Expr::coord(0, 5));
        assert!(bad_index.check(2).is_err());
        let free = PolynomialSpec::new(1, Expr::bound(0));
        assert!(free.check(2).is_err());
    }

    #[test]
    fn json_shape() {
        let g = PolynomialSpec::dot();
        let json = serde_json::to_value(&g).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"m": 2, "expr": {"op": "sum_coords", "body": {"op": "mul", "factors": [
                {"op": "coord", "arg": 0}, {"op": "coord", "arg": 1}]}}})
        );
        let back: PolynomialSpec = serde_json::from_value(json).unwrap();
        assert_eq!(back, g);
    }
}
