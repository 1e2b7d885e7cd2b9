//! Exact rationals, small combinatorial helpers and the commutative target
//! algebras characters take values in.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn catalan(r: u32) -> BigInt {
    binomial(2 * r, r) / BigInt::from(r + 1)
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"-0.25"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational number: `{text}`"));
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let q = Rational::new(n, d);
        return Ok(if negative { -q } else { q });
    }
    let n: BigInt = text.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Reads a rational from a JSON string (`"p/q"`, integer or decimal) or an
/// integer number.
pub fn json_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(text) => parse_rational(text),
        Value::Number(x) if x.is_i64() => Ok(int(x.as_i64().expect("checked"))),
        Value::Number(x) => parse_rational(&x.to_string()),
        _ => Err(Error::Parse(format!("not a rational: {v}"))),
    }
}

/// A commutative unital algebra with a submultiplicative norm and `‖1‖ = 1`.
pub trait TargetAlgebra: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    /// Tag used in character files.
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn norm(&self) -> f64;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;

    /// The norm as an exact rational, when the algebra has one.
    fn exact_norm(&self) -> Option<Rational> {
        None
    }

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    fn scaled(&self, q: &Rational) -> Self {
        self.times(&Self::from_rational(q))
    }
}

impl TargetAlgebra for Rational {
    const NAME: &'static str = "rational";
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn norm(&self) -> f64 {
        to_f64(&self.abs())
    }
    fn exact_norm(&self) -> Option<Rational> {
        Some(self.abs())
    }
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }
    fn from_json(v: &Value) -> Result<Self> {
        json_rational(v)
    }
    fn scaled(&self, q: &Rational) -> Self {
        self * q
    }
}

impl TargetAlgebra for f64 {
    const NAME: &'static str = "float";
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_rational(q: &Rational) -> Self {
        to_f64(q)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn norm(&self) -> f64 {
        self.abs()
    }
    fn to_json(&self) -> Value {
        serde_json::json!(self)
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(x) => x.as_f64().ok_or_else(|| Error::Parse(format!("not a float: {v}"))),
            Value::String(text) => text
                .trim()
                .parse()
                .or_else(|_| parse_rational(text).map(|q| to_f64(&q)))
                .map_err(|_| Error::Parse(format!("not a float: {v}"))),
            _ => Err(Error::Parse(format!("not a float: {v}"))),
        }
    }
}

/// Dual numbers `re + ε·eps` with `ε² = 0`, normed by `|re| + |eps|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dual {
    pub re: Rational,
    pub eps: Rational,
}

impl Dual {
    pub fn new(re: Rational, eps: Rational) -> Self {
        Self { re, eps }
    }
}

impl Serialize for Dual {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Dual", 2)?;
        st.serialize_field("re", &format_rational(&self.re))?;
        st.serialize_field("eps", &format_rational(&self.eps))?;
        st.end()
    }
}

impl TargetAlgebra for Dual {
    const NAME: &'static str = "dual";
    fn zero() -> Self {
        Self::new(Zero::zero(), Zero::zero())
    }
    fn one() -> Self {
        Self::new(One::one(), Zero::zero())
    }
    fn from_rational(q: &Rational) -> Self {
        Self::new(q.clone(), Zero::zero())
    }
    fn plus(&self, other: &Self) -> Self {
        Self::new(&self.re + &other.re, &self.eps + &other.eps)
    }
    fn times(&self, other: &Self) -> Self {
        Self::new(
            &self.re * &other.re,
            &self.re * &other.eps + &self.eps * &other.re,
        )
    }
    fn negated(&self) -> Self {
        Self::new(-&self.re, -&self.eps)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.eps)
    }
    fn norm(&self) -> f64 {
        to_f64(&(self.re.abs() + self.eps.abs()))
    }
    fn exact_norm(&self) -> Option<Rational> {
        Some(self.re.abs() + self.eps.abs())
    }
    fn to_json(&self) -> Value {
        serde_json::json!({ "re": format_rational(&self.re), "eps": format_rational(&self.eps) })
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Object(map) => {
                let field = |k: &str| map.get(k).map(json_rational).unwrap_or_else(|| Ok(<Rational as Zero>::zero()));
                Ok(Self::new(field("re")?, field("eps")?))
            }
            _ => Ok(Self::from_rational(&json_rational(v)?)),
        }
    }
}
