//! Derivations from c-maps, Gⁿₘ expansions and the linear solver y = a∂y + f.

use truncal::exponents::{Basis, PlainMonomial};
use truncal::hahn::FiniteSeries;
use truncal::operators::{a_d_power, derive, gnm_expansion, gnm_polynomial, solve_linear, DerivationSpec};
use truncal::rational::{q, qi};

fn main() {
    let basis = Basis::single("t");
    let t = |k: i64| PlainMonomial::t(&basis, qi(k));
    let cut = t(10);
    // ∂t = -t, the derivation x·d/dx with t = 1/x.
    let d = DerivationSpec::new(&basis, vec![qi(-1)]);

    let f = FiniteSeries::from_terms(&basis, [(t(0), qi(1)), (t(1), qi(2))]);
    println!("∂f = {}", derive(&d, &f, &cut).unwrap());

    for m in 1..=3 {
        println!("G^3_{m} = {}", gnm_polynomial(3, m).unwrap());
    }
    let a = FiniteSeries::from_terms(&basis, [(t(1), q(1, 2))]);
    let lhs = a_d_power(&a, &d, &f, 3, &cut).unwrap();
    let rhs = gnm_expansion(&a, &d, &f, 3, &cut).unwrap();
    println!("(a∂)^3 f = {lhs}");
    assert_eq!(lhs, rhs);

    let y = solve_linear(&a, &f, &d, &cut).unwrap();
    println!("y - a∂y = f: y = {y}");
}
