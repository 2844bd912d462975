//! Lazy grid series, exact arithmetic at a cutoff, inverse, exp and log.

use truncal::exponents::{Basis, GridDescriptor, Monomial, PlainMonomial};
use truncal::hahn::{FiniteSeries, GridSeries};
use truncal::rational::{q, qi};

fn main() {
    let basis = Basis::single("t");
    let t = |k| PlainMonomial::t(&basis, qi(k));
    let cut = t(8);

    // Σ t^n / (n+1), read off the exponent.
    let grid = GridDescriptor::new(t(0), vec![t(1)]).unwrap();
    let g = GridSeries::new(grid, |m| q(1, 1) / (m.exp.coords[0].clone() + qi(1)));
    let f = g.materialize(&cut).unwrap();
    println!("f      = {f}");

    let inv = f.invert(&cut).unwrap();
    println!("1/f    = {inv}");
    println!("f·(1/f) = {}", f.mul_cut(&inv, &cut));

    let a = FiniteSeries::from_terms(&basis, [(t(1), qi(1)), (t(2), q(-1, 2))]);
    let e = a.exp_small(&cut).unwrap();
    println!("exp a  = {e}");
    let back = e.sub(&FiniteSeries::one(&basis)).log_one_plus(&cut).unwrap();
    println!("log exp a = {back}");
    assert_eq!(back, a);
    println!("t^8 ≺ 1: {}", cut.is_small());
}
