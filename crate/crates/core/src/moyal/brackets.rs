use serde::Serialize;

use super::poly::{Coeff, PolySymbol};
use crate::error::{Error, Result};

/// `f * g = re + i im`, both parts polynomial in `hbar`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct StarProduct<C: Coeff> {
    #[serde(serialize_with = "ser_symbol")]
    pub re: PolySymbol<C>,
    #[serde(serialize_with = "ser_symbol")]
    pub im: PolySymbol<C>,
}

pub(crate) fn ser_symbol<C: Coeff, S: serde::Serializer>(
    s: &PolySymbol<C>,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&s.to_json(), ser)
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn factorial(n: u32) -> i64 {
    (1..=n as i64).product()
}

/// `P^k (f, g)`: the k-th power of `d_x1 d_p2 - d_p1 d_x2`, identified.
pub fn poisson_power<C: Coeff>(f: &PolySymbol<C>, g: &PolySymbol<C>, k: u32) -> Result<PolySymbol<C>> {
    let mut out = PolySymbol::zero();
    for j in 0..=k {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let a = f.deriv(k - j, j);
        if a.is_zero() {
            continue;
        }
        let b = g.deriv(j, k - j);
        out = out + a.try_mul(&b)?.scale(&C::from_ratio(sign * binomial(k, j), 1));
    }
    Ok(out)
}

/// `{f, g} = f_x g_p - f_p g_x`.
pub fn poisson_bracket<C: Coeff>(f: &PolySymbol<C>, g: &PolySymbol<C>) -> Result<PolySymbol<C>> {
    poisson_power(f, g, 1)
}

/// Groenewold star product, summed to the last non-vanishing order.
pub fn star_product<C: Coeff>(f: &PolySymbol<C>, g: &PolySymbol<C>) -> Result<StarProduct<C>> {
    let mut re = PolySymbol::zero();
    let mut im = PolySymbol::zero();
    for k in 0..=f.degree().min(g.degree()) {
        let term = poisson_power(f, g, k)?;
        if term.is_zero() {
            continue;
        }
        let den = (1i64 << k) * factorial(k);
        let sign = if k % 4 < 2 { 1 } else { -1 };
        let term = term.times_hbar(k).scale(&C::from_ratio(sign, den));
        if k % 2 == 0 {
            re = re + term;
        } else {
            im = im + term;
        }
    }
    Ok(StarProduct { re, im })
}

/// `(f * g - g * f) / (i hbar)`.
pub fn moyal_bracket<C: Coeff>(f: &PolySymbol<C>, g: &PolySymbol<C>) -> Result<PolySymbol<C>> {
    let a = star_product(f, g)?;
    let b = star_product(g, f)?;
    let re = a.re - b.re;
    if !re.is_zero() {
        return Err(Error::Convention(format!(
            "star commutator has a real part {re}; the two star products disagree on symmetric orders"
        )));
    }
    (a.im - b.im).div_hbar()
}
