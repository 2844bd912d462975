use super::*;
use crate::texp::{texp_derive, x_series};

fn xp(k: i64) -> Transseries {
    Transseries::monomial(TransMonomial::x_pow(qi(k)))
}
fn xq(e: Q) -> Transseries {
    Transseries::monomial(TransMonomial::x_pow(e))
}
fn ex() -> Transseries {
    Transseries::monomial(TransMonomial::exp_of(x_series()))
}
fn t() -> Transseries {
    Transseries::t()
}
fn field(gens: Vec<Transseries>) -> GeneratorSet {
    GeneratorSet::new(Kind::Field, TowerConfig::default(), gens)
}
fn budget(cut: Transseries) -> ClosureBudget {
    ClosureBudget::new(cut)
}

#[test]
fn truncation_closure_examples() {
    let b = budget(xp(-6));
    let e = field(vec![xp(1).add(&Transseries::one()).add(&t())]);
    let c = truncation_closure(&e, &b).unwrap();
    assert!(c.contains(&xp(1)));
    assert!(c.contains(&xp(1).add(&Transseries::one())));
    assert_eq!(c.len(), 3);
    assert!(verify_truncation_closed(&c, &b, 50).passed());
    let again = truncation_closure(&c, &b).unwrap();
    assert_eq!(again.generators(), c.generators());
}

#[test]
fn two_term_field_is_not_closed() {
    let b = budget(xp(-12));
    let f = two_term_example(qi(1), qi(2));
    let raw = field(vec![f.clone()]);
    let r = verify_truncation_closed(&raw, &b, 50);
    assert!(!r.passed());
    assert_eq!(r.failures[0].truncation, t());
    let c = truncation_closure(&raw, &b).unwrap();
    assert!(c.contains(&t()));
    assert!(verify_truncation_closed(&c, &b, 50).passed());

    let f = two_term_example(q(-1, 2), q(1, 3));
    let r = verify_truncation_closed(&field(vec![f]), &b, 50);
    assert!(r.failures.iter().any(|x| x.truncation == xq(q(1, 2))));
}

#[test]
fn differential_closure_examples() {
    let b = budget(xp(-6));
    let e = truncation_closure(&field(vec![xp(1)]), &b).unwrap();
    let d = differential_closure(&e, &b).unwrap();
    assert_eq!(d.generators(), e.generators());
    assert_eq!(d.kind, Kind::DifferentialField);

    let cut = ex().mul(&xp(-6));
    let b = budget(cut);
    let e = truncation_closure(&field(vec![xp(1), ex(), xp(1).mul(&ex())]), &b).unwrap();
    let d = differential_closure(&e, &b).unwrap();
    assert!(d.contains(&xp(1).mul(&ex()).add(&xp(2).mul(&ex()))));
    assert!(verify_truncation_closed(&d, &b, 80).passed());

    let bad = truncation_closure(&field(vec![xp(1).mul(&ex())]), &b).unwrap();
    match differential_closure(&bad, &b) {
        Err(Error::Precondition(msg)) => assert!(msg.contains("witness: x)"), "{msg}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn exp_closure_examples() {
    let b = budget(xp(-4));
    let e = truncation_closure(&field(vec![t()]), &b).unwrap();
    let c = exp_closure(&e, &b).unwrap();
    let expected = texp_exp(&t(), &xp(-4), &TowerConfig::default()).unwrap();
    assert!(c.contains(&expected));

    let e = truncation_closure(&field(vec![xp(1)]), &b).unwrap();
    let c = exp_closure(&e, &b).unwrap();
    assert!(c.contains(&ex()));
    assert!(c.splits().splits);

    let e = truncation_closure(&field(vec![xp(1).add(&t())]), &b).unwrap();
    let c = exp_closure(&e, &b).unwrap();
    assert!(c.contains(&ex()));
    assert!(c.contains(&expected));
}

#[test]
fn adjoin_solution_examples() {
    let b = budget(xp(-4));
    let e = truncation_closure(&field(vec![t()]), &b).unwrap();
    let same = adjoin_solution(&e, &Transseries::zero(), &t(), &b).unwrap();
    assert_eq!(same.generators(), e.generators());
    let same = adjoin_solution(&e, &t(), &Transseries::zero(), &b).unwrap();
    assert_eq!(same.generators(), e.generators());

    // y = t + t·∂y with ∂tⁿ = -n tⁿ under x·d/dx
    let c = adjoin_solution(&e, &t(), &t(), &b).unwrap();
    let y = t().sub(&xp(-2)).add(&xp(-3).scale(&qi(2))).sub(&xp(-4).scale(&qi(6)));
    assert!(c.contains(&y));
    assert!(c.same_monomials(&e));
    assert!(matches!(adjoin_solution(&e, &xp(1), &t(), &b), Err(Error::NotSmall(_))));
}

#[test]
fn liouville_examples() {
    let b = budget(xp(-4));
    let k = differential_closure(&truncation_closure(&field(vec![xp(1)]), &b).unwrap(), &b).unwrap();
    let l = liouville_close(&k, &b).unwrap();
    assert!(l.contains(&Transseries::ell(1)));
    assert!(l.contains(&ex()));
    assert!(l.splits().splits);

    let cut = ex().mul(&xp(-4));
    let b = budget(cut.clone());
    let k = differential_closure(&truncation_closure(&field(vec![ex()]), &b).unwrap(), &b).unwrap();
    let l = liouville_close(&k, &b).unwrap();
    let g = ex().mul(&xp(-1).add(&xp(-2)).add(&xp(-3).scale(&qi(2))).add(&xp(-4).scale(&qi(6))));
    assert!(l.contains(&g));
    assert!(l.splits().splits);
    assert!(texp_derive(&g, &cut).unwrap().sub(&ex()).above(&cut.mul(&xp(1))).unwrap().is_zero());
}

#[test]
fn whole_ambient_passes() {
    let b = budget(xp(-5));
    let e = GeneratorSet::new(Kind::Ring, TowerConfig::default(), (-5..=3).map(xp));
    assert!(verify_truncation_closed(&e, &b, 100).passed());
}

/// `exp(x³ + x^(5/2) + x^2 + x + x^(1/2) + x^(1/3))`: the truncation `g` of `f†` at the
/// β block is missed by the bounded span of the differential field generated by `f`.
#[test]
fn two_grid_counterexample() {
    let alpha = [qi(3), q(5, 2), qi(2)];
    let beta = [qi(1), q(1, 2), q(1, 3)];
    let f = two_grid_monomial(&alpha, &beta);
    let b = budget(xp(-3));
    let d1 = derive_exact(&f);
    let d2 = derive_exact(&d1);
    let e = GeneratorSet::new(Kind::DifferentialField, TowerConfig::default(), vec![f.clone(), d1, d2]);
    let r = verify_truncation_closed(&e, &b, 20);
    let g = xp(3).scale(&qi(3)).add(&xq(q(5, 2)).scale(&q(5, 2))).add(&xp(2).scale(&qi(2)));
    assert!(r.failures.iter().any(|x| x.truncation == g), "{r}");
    assert!(e.splits().splits);
}
