//! Exact star products and brackets of polynomial symbols.

use formpreserve::moyal::{
    moyal_bracket, nonlinear_ct_example, poisson_bracket, q, star_product, RationalSymbol,
};

fn main() -> formpreserve::Result<()> {
    let (x, p) = (RationalSymbol::x(), RationalSymbol::p());
    let xp = star_product(&x, &p)?;
    println!("x * p = {} + i ({})", xp.re, xp.im);
    println!("[[x, p]] = {}", moyal_bracket(&x, &p)?);

    let h = p.pow(2)?.scale(&q(1, 2)) + x.pow(4)?;
    let w = x.try_mul(&p.pow(3)?)?;
    println!("{{H, W}}   = {}", poisson_bracket(&h, &w)?);
    println!("[[H, W]]   = {}", moyal_bracket(&h, &w)?);

    let r = nonlinear_ct_example()?;
    println!("{}", serde_json::to_string_pretty(&r)?);
    Ok(())
}
