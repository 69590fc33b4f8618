use num_rational::BigRational;
use proptest::prelude::*;

use formpreserve::moyal::*;
use formpreserve::numerics::Grid1D;
use formpreserve::transform::{free_ho_params, identity_params, senitzky_params};
use formpreserve::wavefields::Potential1D;
use formpreserve::wigner::PhaseSpaceGrid;
use formpreserve::Error;

type S = RationalSymbol;

fn mono(c: i64, i: u32, j: u32) -> S {
    S::monomial(q(c, 1), i, j)
}

fn from_list(terms: &[(i64, u32, u32)]) -> S {
    terms.iter().fold(S::zero(), |acc, &(c, i, j)| acc + mono(c, i, j))
}

#[test]
fn poisson_examples() {
    assert_eq!(poisson_bracket(&S::x(), &S::p()).unwrap(), mono(1, 0, 0));
    let half_p2 = S::monomial(q(1, 2), 0, 2);
    assert_eq!(poisson_bracket(&half_p2, &S::x()).unwrap(), mono(-1, 0, 1));
    let f = from_list(&[(1, 3, 1), (2, 0, 2)]);
    assert!(poisson_bracket(&f, &f).unwrap().is_zero());
}

#[test]
fn star_of_canonical_pair() {
    let xp = star_product(&S::x(), &S::p()).unwrap();
    assert_eq!(xp.re, mono(1, 1, 1));
    assert_eq!(xp.im, S::term(q(1, 2), 0, 0, 1));
    let px = star_product(&S::p(), &S::x()).unwrap();
    assert_eq!(px.re, mono(1, 1, 1));
    assert_eq!(px.im, S::term(q(-1, 2), 0, 0, 1));
    assert_eq!(xp.im - px.im, S::hbar());
    assert_eq!(moyal_bracket(&S::x(), &S::p()).unwrap(), mono(1, 0, 0));
}

#[test]
fn star_with_unit_is_identity() {
    let f = from_list(&[(3, 2, 1), (-1, 0, 4), (5, 1, 0)]);
    let s = star_product(&f, &mono(1, 0, 0)).unwrap();
    assert_eq!(s.re, f);
    assert!(s.im.is_zero());
}

#[test]
fn kinetic_bracket_collapses_to_poisson() {
    let h = S::monomial(q(1, 6), 0, 2); // p^2/2m with m = 3
    let g = mono(1, 3, 0);
    let m = moyal_bracket(&h, &g).unwrap();
    assert_eq!(m, poisson_bracket(&h, &g).unwrap());
    assert_eq!(m, S::monomial(q(-1, 1), 2, 1));
}

#[test]
fn quartic_bracket_hbar_squared_term() {
    let m = moyal_bracket(&mono(1, 4, 0), &mono(1, 0, 4)).unwrap();
    let pb = poisson_bracket(&mono(1, 4, 0), &mono(1, 0, 4)).unwrap();
    assert_eq!(m.hbar_part(0), pb);
    // sinc series at hbar^2: -(1/4)/3! P^3, with P^3(x^4, p^4) = (d_x^3 x^4)(d_p^3 p^4) = 576 x p
    assert_eq!(m.hbar_part(2), S::monomial(q(-576, 24), 1, 1));
    assert_eq!(m.hbar_part(2), mono(-24, 1, 1));
    assert_eq!(m.hbar_degree(), 2);
}

#[test]
fn kinetic_reduction_examples() {
    let m = q(1, 1);
    assert_eq!(kinetic_moyal_reduction(&mono(1, 2, 0), &m).unwrap(), mono(-2, 1, 1));
    assert!(kinetic_moyal_reduction(&mono(1, 0, 5), &m).unwrap().is_zero());
    assert_eq!(kinetic_moyal_reduction(&mono(1, 1, 1), &m).unwrap(), mono(-1, 0, 2));
    let m = q(5, 2);
    assert_eq!(
        kinetic_moyal_reduction(&mono(1, 2, 0), &m).unwrap(),
        S::monomial(q(-4, 5), 1, 1)
    );
}

#[test]
fn degree_guard() {
    let big = mono(1, 40, 0);
    assert!(matches!(big.try_mul(&big), Err(Error::DegreeGuard(80))));
    assert!(matches!(S::from_terms([((65, 0, 0), q(1, 1))]), Err(Error::DegreeGuard(65))));
}

#[test]
fn json_round_trip() {
    let f = from_list(&[(3, 2, 1), (-1, 0, 4)]) + S::term(q(1, 3), 1, 1, 2);
    let v = f.to_json();
    assert_eq!(v["2,1"], "3");
    assert_eq!(v["1,1,2"], "1/3");
    assert_eq!(S::from_json(&v).unwrap(), f);
    let g: PolySymbol<f64> = PolySymbol::from_json(&serde_json::json!({"0,2": 0.5, "1,0": -2.0})).unwrap();
    assert_eq!(g.coeff(0, 2, 0), 0.5);
    assert!(S::from_json(&serde_json::json!({"a": 1})).is_err());
}

#[test]
fn star_matches_operator_exponential() {
    let p = BiDiffOperator::<BigRational>::poisson();
    let f = from_list(&[(2, 3, 1), (-1, 1, 2), (1, 0, 0)]);
    let g = from_list(&[(1, 2, 2), (3, 0, 3), (-2, 1, 0)]);
    let direct = star_product(&f, &g).unwrap();
    let (re, im) = p.star(&f, &g).unwrap();
    assert_eq!(direct.re, re);
    assert_eq!(direct.im, im);
    assert_eq!(moyal_bracket(&f, &g).unwrap(), p.moyal(&f, &g).unwrap());
}

#[test]
fn nonlinear_counterexample() {
    let r = nonlinear_ct_example().unwrap();
    assert!(!r.p12_equal);
    assert!(r.identified_p_equal);
    assert!(!r.identified_m_equal);
    assert_eq!(r.pairs_tested, 225);
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["P12_equal"], false);
    assert_eq!(json["identified_P_equal"], true);
    assert_eq!(json["identified_M_equal"], false);
}

#[test]
fn nonlinear_operator_on_squares() {
    let p = BiDiffOperator::<BigRational>::poisson();
    let pn = BiDiffOperator::<BigRational>::poisson_nonlinear();
    let x2 = mono(1, 2, 0);
    let fg = TwoPoint::product(&x2, &x2).unwrap();
    let diff = pn.apply(&fg).unwrap().add(&p.apply(&fg).unwrap().scale(&q(-1, 1)));
    // 8 (p1 - p2) x1 x2
    let expected = TwoPoint::term(q(8, 1), [1, 1, 1, 0, 0]).add(&TwoPoint::term(q(-8, 1), [1, 0, 1, 1, 0]));
    assert_eq!(diff, expected);
    assert!(diff.identify().is_zero());

    let (x, pp) = (S::x(), S::p());
    let fg = TwoPoint::product(&x, &pp).unwrap();
    assert_eq!(pn.apply(&fg).unwrap().identify(), mono(1, 0, 0));
    assert_eq!(p.apply(&fg).unwrap().identify(), mono(1, 0, 0));
}

#[test]
fn nonlinear_cubic_star_differs_at_hbar_squared() {
    let p = BiDiffOperator::<BigRational>::poisson();
    let pn = BiDiffOperator::<BigRational>::poisson_nonlinear();
    let x3 = mono(1, 3, 0);
    let (re_n, im_n) = pn.star(&x3, &x3).unwrap();
    let (re, im) = p.star(&x3, &x3).unwrap();
    let d = re_n - re;
    assert!(!d.is_zero());
    assert!(d.hbar_part(0).is_zero());
    assert!(!d.hbar_part(2).is_zero());
    // the hbar^2 term is -(1/8) I P'^2; the unprimed P^2 annihilates x1^3 x2^3
    let two = TwoPoint::product(&x3, &x3).unwrap();
    assert!(p.apply(&p.apply(&two).unwrap()).unwrap().is_zero());
    let sq = pn.apply(&pn.apply(&two).unwrap()).unwrap().identify();
    assert_eq!(d.hbar_part(2), sq.scale(&q(-1, 8)));
    assert!(im.is_zero());
    assert!(im_n.is_zero());
}

#[test]
fn associativity_on_low_monomials() {
    let basis: Vec<S> = (0..=3u32)
        .flat_map(|d| (0..=d).map(move |a| mono(1, a, d - a)))
        .collect();
    let star = |a: &S, b: &S| -> (S, S) {
        let s = star_product(a, b).unwrap();
        (s.re, s.im)
    };
    // (a0 + i a1) * (b0 + i b1) by bilinearity
    let cstar = |a: &(S, S), b: &(S, S)| -> (S, S) {
        let (rr, ri) = star(&a.0, &b.0);
        let (ir, ii) = star(&a.1, &b.1);
        let (r1, i1) = star(&a.0, &b.1);
        let (r2, i2) = star(&a.1, &b.0);
        (rr - ir - i1 - i2, ri - ii + r1 + r2)
    };
    for f in &basis {
        for g in &basis {
            for h in &basis {
                let fg = star(f, g);
                let left = cstar(&fg, &(h.clone(), S::zero()));
                let gh = star(g, h);
                let right = cstar(&(f.clone(), S::zero()), &gh);
                assert_eq!(left, right, "({f}) ({g}) ({h})");
            }
        }
    }
}

#[test]
fn potential_law_identity() {
    let params = identity_params(1.0, 1.0).unwrap();
    let v = PolySymbol::from_terms([((2, 0, 0), 0.7), ((1, 0, 0), -0.3), ((3, 0, 0), 0.1)]).unwrap();
    let law = moyal_potential_law(&params, &v, 0.4).unwrap();
    for k in 1..=3 {
        assert!((law.coeff(k, 0, 0) - v.coeff(k, 0, 0)).abs() < 1e-15);
    }
}

#[test]
fn potential_law_senitzky_and_free_ho() {
    let (omega, m) = (1.3, 0.8);
    let v = Potential1D::Harmonic { omega };
    let vs = PolySymbol::monomial(0.5 * m * omega * omega, 2, 0);
    let sen = senitzky_params(1.5, 0.2, omega, 1.0, m).unwrap();
    let fho = free_ho_params(0.4, -0.3, omega, 1.0, m).unwrap();
    for t in [-0.7, 0.0, 0.3, 0.9] {
        assert!(potential_law_agreement(&sen, &vs, &v, t).unwrap() < 1e-12);
        assert!(potential_law_agreement(&fho, &vs, &v, t).unwrap() < 1e-12);
        let law = moyal_potential_law(&fho, &vs, t).unwrap();
        assert!(law.coeff(2, 0, 0).abs() < 1e-12 && law.coeff(1, 0, 0).abs() < 1e-12);
    }
}

#[test]
fn potential_law_free_to_oscillator_coefficient() {
    let (omega, m) = (0.9, 1.7);
    let fho = free_ho_params(0.4, -0.3, omega, 1.0, m).unwrap();
    let zero = PolySymbol::<f64>::zero();
    for t in [-0.5, 0.2, 1.1] {
        let law = moyal_potential_law(&fho, &zero, t).unwrap();
        let g = (omega * t).cos();
        let expected = -0.5 * m * omega * omega * g.powi(4);
        assert!((law.coeff(2, 0, 0) - expected).abs() < 1e-12);
        assert!(potential_law_agreement(&fho, &zero, &Potential1D::Free, t).unwrap() < 1e-12);
    }
}

#[test]
fn potential_law_rejects_momentum() {
    let params = identity_params(1.0, 1.0).unwrap();
    let v = PolySymbol::monomial(1.0, 1, 1);
    assert!(moyal_potential_law(&params, &v, 0.0).is_err());
}

#[test]
fn oscillator_states_are_stationary() {
    let axis = Grid1D::symmetric(6.0, 601).unwrap();
    let grid = PhaseSpaceGrid::new(axis, axis);
    for n in 0..=3 {
        let r = stationary_flow_residual(n, 1.0, 1.0, 1.0, &grid).unwrap();
        assert!(r < 1e-5, "n = {n}: {r:.3e}");
    }
}

fn arb_symbol(max_deg: u32) -> impl Strategy<Value = S> {
    prop::collection::vec((-5i64..=5, 0..=max_deg, 0..=max_deg), 1..6).prop_map(move |ts| {
        ts.into_iter()
            .filter(|&(_, i, j)| i + j <= max_deg)
            .fold(S::zero(), |acc, (c, i, j)| acc + mono(c, i, j))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn brackets_antisymmetric_and_bilinear(f in arb_symbol(5), g in arb_symbol(5), h in arb_symbol(5), a in -4i64..4) {
        for br in [poisson_bracket::<BigRational>, moyal_bracket::<BigRational>] {
            prop_assert_eq!(br(&f, &g).unwrap(), -br(&g, &f).unwrap());
            let lin = br(&(f.scale(&q(a, 1)) + h.clone()), &g).unwrap();
            prop_assert_eq!(lin, br(&f, &g).unwrap().scale(&q(a, 1)) + br(&h, &g).unwrap());
        }
        let comm = star_product(&f, &g).unwrap();
        let anti = star_product(&g, &f).unwrap();
        prop_assert_eq!(comm.re.clone(), anti.re.clone());
        prop_assert_eq!(comm.im, -anti.im);
    }

    #[test]
    fn poisson_jacobi(f in arb_symbol(4), g in arb_symbol(4), h in arb_symbol(4)) {
        let pb = |a: &S, b: &S| poisson_bracket(a, b).unwrap();
        let sum = pb(&f, &pb(&g, &h)) + pb(&g, &pb(&h, &f)) + pb(&h, &pb(&f, &g));
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn classical_limit(f in arb_symbol(5), g in arb_symbol(5)) {
        prop_assert_eq!(moyal_bracket(&f, &g).unwrap().hbar_part(0), poisson_bracket(&f, &g).unwrap());
    }

    #[test]
    fn quadratic_symbols_collapse(f in arb_symbol(2), g in arb_symbol(6)) {
        prop_assert!(quadratic_collapse(&f, &g).unwrap());
    }
}
