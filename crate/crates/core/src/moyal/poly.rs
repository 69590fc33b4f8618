use std::collections::BTreeMap;
use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// Largest total degree (in x, p and hbar) a symbol may carry.
pub const DEGREE_GUARD: u32 = 64;

/// Coefficient ring of [`PolySymbol`].
pub trait Coeff:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_ratio(num: i64, den: i64) -> Self;
    fn to_f64(&self) -> f64;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl Coeff for BigRational {
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => s
                .parse::<BigRational>()
                .map_err(|e| Error::Input(format!("bad rational {s:?}: {e}"))),
            Value::Number(n) => n
                .as_i64()
                .map(|i| BigRational::from_integer(BigInt::from(i)))
                .ok_or_else(|| Error::Input(format!("non-integer number {n} for a rational coefficient"))),
            _ => Err(Error::Input(format!("bad coefficient {v}"))),
        }
    }
}

impl Coeff for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self).map_or(Value::Null, Value::Number)
    }

    fn from_json(v: &Value) -> Result<Self> {
        v.as_f64().ok_or_else(|| Error::Input(format!("bad coefficient {v}")))
    }
}

/// Exponents of `x`, `p` and `hbar`.
pub type Mono = (u32, u32, u32);

/// Polynomial phase-space symbol with coefficients in `C[hbar]`.
#[derive(Clone, PartialEq)]
pub struct PolySymbol<C> {
    terms: BTreeMap<Mono, C>,
}

pub type RationalSymbol = PolySymbol<BigRational>;

impl<C: Coeff> Debug for PolySymbol<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Coeff> Display for PolySymbol<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(i, j, k), c)| {
                let mut s = format!("({c})");
                for (name, e) in [("x", i), ("p", j), ("hbar", k)] {
                    match e {
                        0 => {}
                        1 => s.push_str(&format!("*{name}")),
                        _ => s.push_str(&format!("*{name}^{e}")),
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn falling(n: u32, k: u32) -> i64 {
    (0..k).map(|i| (n - i) as i64).product()
}

impl<C: Coeff> PolySymbol<C> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::term(c, 0, 0, 0)
    }

    /// `c x^i p^j`.
    pub fn monomial(c: C, i: u32, j: u32) -> Self {
        Self::term(c, i, j, 0)
    }

    /// `c x^i p^j hbar^k`.
    pub fn term(c: C, i: u32, j: u32, k: u32) -> Self {
        let mut s = Self::zero();
        s.push((i, j, k), c);
        s
    }

    pub fn x() -> Self {
        Self::monomial(C::one(), 1, 0)
    }

    pub fn p() -> Self {
        Self::monomial(C::one(), 0, 1)
    }

    pub fn hbar() -> Self {
        Self::term(C::one(), 0, 0, 1)
    }

    /// Builds a symbol from `(exponents, coefficient)` pairs, checking the guard.
    pub fn from_terms<I: IntoIterator<Item = (Mono, C)>>(terms: I) -> Result<Self> {
        let mut s = Self::zero();
        for (m, c) in terms {
            if m.0 + m.1 + m.2 > DEGREE_GUARD {
                return Err(Error::DegreeGuard(m.0 + m.1 + m.2));
            }
            s.push(m, c);
        }
        Ok(s)
    }

    fn push(&mut self, m: Mono, c: C) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&m) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32, k: u32) -> C {
        self.terms.get(&(i, j, k)).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest `i + j` over the terms (hbar not counted).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.0 + m.1).max().unwrap_or(0)
    }

    pub fn hbar_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.2).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut s = Self::zero();
        for (m, v) in &self.terms {
            s.push(*m, v.clone() * c.clone());
        }
        s
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let mut s = Self::zero();
        for (a, u) in &self.terms {
            for (b, v) in &other.terms {
                let m = (a.0 + b.0, a.1 + b.1, a.2 + b.2);
                if m.0 + m.1 + m.2 > DEGREE_GUARD {
                    return Err(Error::DegreeGuard(m.0 + m.1 + m.2));
                }
                s.push(m, u.clone() * v.clone());
            }
        }
        Ok(s)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut out = Self::constant(C::one());
        for _ in 0..n {
            out = out.try_mul(self)?;
        }
        Ok(out)
    }

    /// `d^a/dx^a d^b/dp^b`.
    pub fn deriv(&self, a: u32, b: u32) -> Self {
        let mut s = Self::zero();
        for (&(i, j, k), c) in &self.terms {
            if i >= a && j >= b {
                let f = falling(i, a) * falling(j, b);
                s.push((i - a, j - b, k), c.clone() * C::from_ratio(f, 1));
            }
        }
        s
    }

    pub fn dx(&self) -> Self {
        self.deriv(1, 0)
    }

    pub fn dp(&self) -> Self {
        self.deriv(0, 1)
    }

    /// Multiplies by `hbar^k`.
    pub fn times_hbar(&self, k: u32) -> Self {
        let mut s = Self::zero();
        for (&(i, j, e), c) in &self.terms {
            s.push((i, j, e + k), c.clone());
        }
        s
    }

    /// Divides by `hbar`; fails if a term has no hbar factor.
    pub fn div_hbar(&self) -> Result<Self> {
        let mut s = Self::zero();
        for (&(i, j, k), c) in &self.terms {
            if k == 0 {
                return Err(Error::Convention(format!("term x^{i} p^{j} has no hbar factor")));
            }
            s.push((i, j, k - 1), c.clone());
        }
        Ok(s)
    }

    /// The coefficient of `hbar^k`, as an hbar-free symbol.
    pub fn hbar_part(&self, k: u32) -> Self {
        let mut s = Self::zero();
        for (&(i, j, e), c) in &self.terms {
            if e == k {
                s.push((i, j, 0), c.clone());
            }
        }
        s
    }

    /// Replaces `x` and `p` by the symbols `sx`, `sp`.
    pub fn substitute(&self, sx: &Self, sp: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (&(i, j, k), c) in &self.terms {
            let t = sx.pow(i)?.try_mul(&sp.pow(j)?)?.times_hbar(k).scale(c);
            out = out + t;
        }
        Ok(out)
    }

    pub fn eval(&self, x: f64, p: f64, hbar: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j, k), c)| c.to_f64() * x.powi(i as i32) * p.powi(j as i32) * hbar.powi(k as i32))
            .sum()
    }

    pub fn map_coeffs<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> PolySymbol<D> {
        let mut s = PolySymbol::<D>::zero();
        for (m, c) in &self.terms {
            s.push(*m, f(c));
        }
        s
    }

    /// JSON object `{"i,j": c}`, or `{"i,j,k": c}` for terms carrying hbar.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (&(i, j, k), c) in &self.terms {
            let key = if k == 0 { format!("{i},{j}") } else { format!("{i},{j},{k}") };
            map.insert(key, c.to_json());
        }
        Value::Object(map)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Input("symbol JSON must be an object".into()))?;
        let mut terms = Vec::new();
        for (key, c) in obj {
            let e: Vec<u32> = key
                .split(',')
                .map(|s| s.trim().parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Input(format!("bad exponent key {key:?}")))?;
            let m = match e.as_slice() {
                [i, j] => (*i, *j, 0),
                [i, j, k] => (*i, *j, *k),
                _ => return Err(Error::Input(format!("bad exponent key {key:?}"))),
            };
            terms.push((m, C::from_json(c)?));
        }
        Self::from_terms(terms)
    }
}

impl<C: Coeff> Add for PolySymbol<C> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (m, c) in o.terms {
            self.push(m, c);
        }
        self
    }
}

impl<C: Coeff> Neg for PolySymbol<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<C: Coeff> Sub for PolySymbol<C> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

/// Rational shorthand.
pub fn q(num: i64, den: i64) -> BigRational {
    BigRational::from_ratio(num, den)
}
