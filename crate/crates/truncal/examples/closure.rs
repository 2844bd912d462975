//! Closing a generator set and checking it is truncation closed.

use truncal::closure::{
    differential_closure, exp_closure, liouville_close, truncation_closure, verify_truncation_closed, ClosureBudget, GeneratorSet, Kind,
};
use truncal::rational::qi;
use truncal::texp::{TransMonomial, Transseries};

fn main() {
    let xp = |k: i64| Transseries::monomial(TransMonomial::x_pow(qi(k)));
    let b = ClosureBudget::new(xp(-4));
    let e = GeneratorSet::new(Kind::Field, b.tower(), [xp(1).add(&Transseries::one()).add(&xp(-1))]);
    println!("E = {e}");

    let tc = truncation_closure(&e, &b).unwrap();
    println!("truncations: {tc}");
    let dc = differential_closure(&tc, &b).unwrap();
    println!("derivatives: {dc}");
    let xc = exp_closure(&dc, &b).unwrap();
    println!("exponentials: {xc}");
    let lc = liouville_close(&dc, &b).unwrap();
    println!("Liouville: {lc}");
    println!("verify: {}", verify_truncation_closed(&lc, &b, b.verify_samples));
    println!("splits: {}", lc.splits().splits);
}
