//! Bi-differential operators acting on functions of two phase-space points.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::Serialize;

use super::poly::{Coeff, PolySymbol, DEGREE_GUARD};
use crate::error::{Error, Result};

/// Exponents of `x1, p1, x2, p2, hbar`.
pub type TwoMono = [u32; 5];

/// Polynomial in two phase-space points.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPoint<C> {
    terms: BTreeMap<TwoMono, C>,
}

fn falling(n: u32, k: u32) -> i64 {
    (0..k).map(|i| (n - i) as i64).product()
}

impl<C: Coeff> TwoPoint<C> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn term(c: C, e: TwoMono) -> Self {
        let mut s = Self::zero();
        s.push(e, c);
        s
    }

    fn push(&mut self, e: TwoMono, c: C) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&e) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    /// `f(x1, p1) g(x2, p2)`.
    pub fn product(f: &PolySymbol<C>, g: &PolySymbol<C>) -> Result<Self> {
        let mut s = Self::zero();
        for (&(a, b, h), u) in f.terms() {
            for (&(c, d, k), v) in g.terms() {
                if a + b + c + d + h + k > DEGREE_GUARD {
                    return Err(Error::DegreeGuard(a + b + c + d + h + k));
                }
                s.push([a, b, c, d, h + k], u.clone() * v.clone());
            }
        }
        Ok(s)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(mut self, o: &Self) -> Self {
        for (e, c) in &o.terms {
            self.push(*e, c.clone());
        }
        self
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut s = Self::zero();
        for (e, v) in &self.terms {
            s.push(*e, v.clone() * c.clone());
        }
        s
    }

    pub fn times_hbar(&self, k: u32) -> Self {
        let mut s = Self::zero();
        for (e, v) in &self.terms {
            let mut e = *e;
            e[4] += k;
            s.push(e, v.clone());
        }
        s
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let mut s = Self::zero();
        for (a, u) in &self.terms {
            for (b, v) in &o.terms {
                let e = [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3], a[4] + b[4]];
                let total: u32 = e.iter().sum();
                if total > DEGREE_GUARD {
                    return Err(Error::DegreeGuard(total));
                }
                s.push(e, u.clone() * v.clone());
            }
        }
        Ok(s)
    }

    /// Partial derivative with orders `[x1, p1, x2, p2]`.
    pub fn deriv(&self, orders: [u32; 4]) -> Self {
        let mut s = Self::zero();
        'terms: for (e, c) in &self.terms {
            let mut f = 1i64;
            let mut out = *e;
            for v in 0..4 {
                if e[v] < orders[v] {
                    continue 'terms;
                }
                f *= falling(e[v], orders[v]);
                out[v] -= orders[v];
            }
            s.push(out, c.clone() * C::from_ratio(f, 1));
        }
        s
    }

    /// Sets `x1 = x2 = x`, `p1 = p2 = p`.
    pub fn identify(&self) -> PolySymbol<C> {
        let mut out = PolySymbol::zero();
        for (e, c) in &self.terms {
            out = out + PolySymbol::term(c.clone(), e[0] + e[2], e[1] + e[3], e[4]);
        }
        out
    }
}

/// `sum c_k(x1, p1, x2, p2) d^{k}` with multi-index `k = [x1, p1, x2, p2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BiDiffOperator<C> {
    terms: BTreeMap<[u32; 4], TwoPoint<C>>,
}

/// Upper bound on operator powers before a series is declared divergent.
const MAX_POWER: u32 = 128;

impl<C: Coeff> BiDiffOperator<C> {
    pub fn new() -> Self {
        Self { terms: BTreeMap::new() }
    }

    /// Adds `coeff * d^orders`.
    pub fn with_term(mut self, orders: [u32; 4], coeff: TwoPoint<C>) -> Self {
        let entry = self.terms.remove(&orders).unwrap_or_else(TwoPoint::zero).add(&coeff);
        if !entry.is_zero() {
            self.terms.insert(orders, entry);
        }
        self
    }

    /// `d_x1 d_p2 - d_p1 d_x2`.
    pub fn poisson() -> Self {
        Self::new()
            .with_term([1, 0, 0, 1], TwoPoint::term(C::one(), [0; 5]))
            .with_term([0, 1, 1, 0], TwoPoint::term(-C::one(), [0; 5]))
    }

    /// The Poisson operator after the point transformation `x' = -p`,
    /// `p' = x + p^2`, written in the old variables:
    /// `2 (p1 - p2) d_x1 d_x2 + d_x1 d_p2 - d_p1 d_x2`.
    pub fn poisson_nonlinear() -> Self {
        let two = C::from_ratio(2, 1);
        let c = TwoPoint::term(two.clone(), [0, 1, 0, 0, 0]).add(&TwoPoint::term(-two, [0, 0, 0, 1, 0]));
        Self::poisson().with_term([1, 0, 1, 0], c)
    }

    pub fn apply(&self, f: &TwoPoint<C>) -> Result<TwoPoint<C>> {
        let mut out = TwoPoint::zero();
        for (orders, c) in &self.terms {
            let d = f.deriv(*orders);
            if !d.is_zero() {
                out = out.add(&c.mul(&d)?);
            }
        }
        Ok(out)
    }

    /// `[O^0 F, O^1 F, ...]` up to the first vanishing power.
    pub fn powers(&self, f: &TwoPoint<C>) -> Result<Vec<TwoPoint<C>>> {
        let mut out = vec![f.clone()];
        loop {
            let next = self.apply(out.last().expect("non-empty"))?;
            if next.is_zero() {
                return Ok(out);
            }
            if out.len() as u32 > MAX_POWER {
                return Err(Error::DegreeGuard(MAX_POWER));
            }
            out.push(next);
        }
    }

    /// `exp(i hbar O / 2)` applied to `f(1) g(2)`, identified; `(re, im)`.
    pub fn star(&self, f: &PolySymbol<C>, g: &PolySymbol<C>) -> Result<(PolySymbol<C>, PolySymbol<C>)> {
        let mut re = PolySymbol::zero();
        let mut im = PolySymbol::zero();
        for (k, t) in self.powers(&TwoPoint::product(f, g)?)?.iter().enumerate() {
            let k = k as u32;
            let sign = if k % 4 < 2 { 1 } else { -1 };
            let den: i64 = (1i64 << k) * (1..=k as i64).product::<i64>();
            let t = t.identify().times_hbar(k).scale(&C::from_ratio(sign, den));
            if k % 2 == 0 {
                re = re + t;
            } else {
                im = im + t;
            }
        }
        Ok((re, im))
    }

    /// `(2/hbar) sin(hbar O / 2)` applied to `f(1) g(2)`, identified.
    pub fn moyal(&self, f: &PolySymbol<C>, g: &PolySymbol<C>) -> Result<PolySymbol<C>> {
        let mut out = PolySymbol::zero();
        for (k, t) in self.powers(&TwoPoint::product(f, g)?)?.iter().enumerate() {
            let k = k as u32;
            if k % 2 == 0 {
                continue;
            }
            let j = (k - 1) / 2;
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let den: i64 = (1i64 << (2 * j)) * (1..=k as i64).product::<i64>();
            out = out + t.identify().times_hbar(2 * j).scale(&C::from_ratio(sign, den));
        }
        Ok(out)
    }
}

impl<C: Coeff> Default for BiDiffOperator<C> {
    fn default() -> Self {
        Self::new()
    }
}

/// Outcome of comparing the Poisson and Moyal operators before and after a
/// nonlinear point transformation.
#[derive(Debug, Clone, Serialize)]
pub struct NonlinearReport {
    /// Whether the transformed two-point operator agrees with the original on all test pairs.
    #[serde(rename = "P12_equal")]
    pub p12_equal: bool,
    /// Whether the identified Poisson brackets agree.
    #[serde(rename = "identified_P_equal")]
    pub identified_p_equal: bool,
    /// Whether the identified Moyal brackets agree.
    #[serde(rename = "identified_M_equal")]
    pub identified_m_equal: bool,
    pub pairs_tested: usize,
    /// Pairs whose identified Moyal brackets differ.
    pub moyal_mismatches: usize,
    /// Identified star products `x^3 *' x^3 - x^3 * x^3`, real part.
    pub cubic_star_difference: String,
}

/// Runs the comparison on all monomial pairs `x^a p^b` of degree at most 4.
pub fn nonlinear_ct_example() -> Result<NonlinearReport> {
    let p = BiDiffOperator::<BigRational>::poisson();
    let pn = BiDiffOperator::<BigRational>::poisson_nonlinear();
    let basis: Vec<PolySymbol<BigRational>> = (0..=4u32)
        .flat_map(|d| (0..=d).map(move |a| (a, d - a)))
        .map(|(a, b)| PolySymbol::monomial(BigRational::from_integer(1.into()), a, b))
        .collect();
    let mut report = NonlinearReport {
        p12_equal: true,
        identified_p_equal: true,
        identified_m_equal: true,
        pairs_tested: 0,
        moyal_mismatches: 0,
        cubic_star_difference: String::new(),
    };
    for f in &basis {
        for g in &basis {
            report.pairs_tested += 1;
            let fg = TwoPoint::product(f, g)?;
            let (a, b) = (p.apply(&fg)?, pn.apply(&fg)?);
            if a != b {
                report.p12_equal = false;
            }
            if a.identify() != b.identify() {
                report.identified_p_equal = false;
            }
            if p.moyal(f, g)? != pn.moyal(f, g)? {
                report.identified_m_equal = false;
                report.moyal_mismatches += 1;
            }
        }
    }
    let x3 = PolySymbol::monomial(BigRational::from_integer(1.into()), 3, 0);
    let (re_n, _) = pn.star(&x3, &x3)?;
    let (re, _) = p.star(&x3, &x3)?;
    report.cubic_star_difference = (re_n - re).to_string();
    Ok(report)
}
