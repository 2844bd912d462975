#![allow(dead_code)]

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use truncal::exponents::{Basis, GridDescriptor, Monomial, PlainMonomial};
use truncal::hahn::{FiniteSeries, GridSeries};
use truncal::operators::DerivationSpec;
use truncal::rational::{q, qi, Q};
use truncal::texp::{x_series, TSeries, TransMonomial, Transseries};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn basis() -> Basis {
    Basis::new(&["t", "u"])
}

pub fn mono(a: Q, b: Q) -> PlainMonomial {
    PlainMonomial::new(&basis(), vec![a, b])
}

pub fn one() -> PlainMonomial {
    PlainMonomial::one(&basis())
}

fn small_q(r: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> Q {
    q(r.gen_range(lo..=hi), den)
}

pub fn coeff(r: &mut ChaCha8Rng) -> Q {
    let n = [-3, -2, -1, 1, 2, 3].choose(r).copied().unwrap();
    q(n, r.gen_range(1..=2))
}

/// A grid series with `1..=max_ratios` ratios `t^a u^b`, `a ∈ {1/2,…,2}`, and
/// pseudo-random coefficients seeded per sample.
pub fn grid_series(r: &mut ChaCha8Rng, max_ratios: usize, small_anchor: bool) -> GridSeries {
    let k = r.gen_range(1..=max_ratios);
    let ratios: Vec<PlainMonomial> = (0..k).map(|_| mono(small_q(r, 1, 4, 2), qi(r.gen_range(-1..=1)))).collect();
    let a0 = if small_anchor { small_q(r, 1, 3, 2) } else { small_q(r, -2, 2, 2) };
    let anchor = mono(a0, qi(r.gen_range(-1..=1)));
    let seed: u64 = r.gen();
    let grid = GridDescriptor::new(anchor, ratios).unwrap();
    GridSeries::new(grid, move |m| {
        let mut h = DefaultHasher::new();
        seed.hash(&mut h);
        m.exp.hash(&mut h);
        let v = h.finish();
        let n = (v % 7) as i64 - 3;
        let n = if n == 0 { 1 } else { n };
        q(n, 1 + ((v >> 8) % 2) as i64)
    })
}

/// `anchor · r^depth` for the `≺`-largest ratio `r`.
pub fn depth_cutoff(g: &GridSeries, depth: i64) -> PlainMonomial {
    let top = g.grid().ratios.iter().max().unwrap();
    g.grid().anchor.mul(&top.pow(depth))
}

pub fn anchor(g: &GridSeries) -> PlainMonomial {
    g.grid().anchor.clone()
}

pub fn spec(r: &mut ChaCha8Rng) -> DerivationSpec {
    DerivationSpec::new(&basis(), vec![small_q(r, -3, 3, 1), small_q(r, -2, 2, 2)])
}

pub fn finite(r: &mut ChaCha8Rng, terms: usize, small: bool) -> FiniteSeries {
    let lo = if small { 1 } else { -4 };
    FiniteSeries::from_terms(&basis(), (0..terms).map(|_| (mono(small_q(r, lo, 8, 2), qi(r.gen_range(-1..=1))), coeff(r))))
}

pub fn xp(k: Q) -> Transseries {
    Transseries::monomial(TransMonomial::x_pow(k))
}

pub fn xi(k: i64) -> Transseries {
    xp(qi(k))
}

/// `e^(λx)`.
pub fn exp_lx(l: i64) -> Transseries {
    Transseries::monomial(TransMonomial::exp_of(x_series().scale(&qi(l))))
}

/// A finite transseries of `1..=max_terms` terms `c·x^q·e^(λx)`, `λ ∈ {-1, 0, 1, 2}`.
pub fn transseries(r: &mut ChaCha8Rng, max_terms: usize) -> Transseries {
    let terms = r.gen_range(1..=max_terms);
    (0..terms).fold(Transseries::zero(), |acc, _| {
        let l = [-1, 0, 0, 1, 2].choose(r).copied().unwrap();
        let m = exp_lx(l).mul(&xp(small_q(r, -6, 6, 2)));
        acc.add(&m.scale(&coeff(r)))
    })
}

/// A purely large part `Σ c·x^q` with `q > 0` plus an infinitesimal `Σ c·x^-q`.
pub fn exponent_argument(r: &mut ChaCha8Rng) -> Transseries {
    let mut f = Transseries::zero();
    for _ in 0..r.gen_range(0..=2) {
        f = f.add(&xp(small_q(r, 1, 4, 2)).scale(&coeff(r)));
    }
    for _ in 0..r.gen_range(1..=3) {
        f = f.add(&xp(small_q(r, -6, -1, 2)).scale(&coeff(r)));
    }
    f
}

pub fn tseries(terms: &[(i64, Q)]) -> TSeries {
    TSeries::from_terms(&(), terms.iter().map(|(c, e)| (TransMonomial::x_pow(e.clone()), qi(*c))))
}
