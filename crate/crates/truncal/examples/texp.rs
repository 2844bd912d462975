//! Transseries: exp, log, derivative, antiderivative and the upward shift.

use truncal::rational::qi;
use truncal::texp::{antiderivative, derive_exact, shift, texp_exp, texp_log, TowerConfig, TransMonomial, Transseries};

fn main() {
    let cfg = TowerConfig::default();
    let x = Transseries::x();
    let xp = |k: i64| Transseries::monomial(TransMonomial::x_pow(qi(k)));

    let f = x.add(&xp(-1));
    let e = texp_exp(&f, &Transseries::monomial(TransMonomial::exp_of(x.body().clone())).mul(&xp(-4)), &cfg).unwrap();
    println!("exp(x + 1/x) = {e}");
    println!("log(exp(x + 1/x)) = {}", texp_log(&e, &xp(-4), &cfg).unwrap());

    let l1 = Transseries::ell(1);
    println!("∂(x·log x) = {}", derive_exact(&x.mul(&l1)));

    // ∫ eˣ = eˣ(1/x + 1/x² + 2/x³ + 6/x⁴ + …) with ∂ = x·d/dx.
    let ex = Transseries::monomial(TransMonomial::exp_of(x.body().clone()));
    println!("∫ eˣ = {}", antiderivative(&ex, &ex.mul(&xp(-4)), &cfg).unwrap());
    println!("∫ 1 = {}", antiderivative(&Transseries::one(), &xp(-4), &cfg).unwrap());

    println!("x↑ = {}", shift(&x, 1, &cfg).unwrap());
    println!("(log x)↑ = {}", shift(&l1, 1, &cfg).unwrap());
}
