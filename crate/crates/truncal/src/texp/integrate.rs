use std::collections::BTreeMap;

use super::monomial::{cmap0, d0, frak_e, level_components};
use super::{check_depth, TSeries, TowerConfig, TransMonomial, Transseries};
use crate::error::{Error, Result};
use crate::exponents::{Depth, Monomial};
use crate::operators::{neumann_inverse, Support, SupportedOperator};

/// `g` with `∂g = f` up to `cutoff`, raising the depth while `1/𝔢ₙ ∈ supp f`.
pub fn antiderivative(f: &Transseries, cutoff: &Transseries, cfg: &TowerConfig) -> Result<Transseries> {
    let mut n = f.depth().max(cutoff.depth());
    loop {
        check_depth(n, cfg)?;
        if !obstructed(f, n) {
            return antiderivative_at_depth(f, cutoff, n);
        }
        n += 1;
    }
}

fn obstructed(f: &Transseries, n: u32) -> bool {
    f.body_at(n).mul_monomial(&frak_e(n)).contains(&TransMonomial::one(&()))
}

/// Integration with bodies at depth `n`; fails when `1/𝔢ₙ ∈ supp f`.
pub fn antiderivative_at_depth(f: &Transseries, cutoff: &Transseries, n: u32) -> Result<Transseries> {
    if n < f.depth() || n < cutoff.depth() {
        return Err(Error::Precondition(format!("depth {n} is below the input depth")));
    }
    if obstructed(f, n) {
        return Err(Error::domain(format!("1 lies in the support at depth {n}")));
    }
    let h = f.body_at(n).mul_monomial(&frak_e(n));
    let cut = cutoff.monomial_at(n)?;
    let mut groups: BTreeMap<TransMonomial, TSeries> = BTreeMap::new();
    for (m, c) in h.iter() {
        let top = m.height().saturating_sub(1) as usize;
        let a_top = level_components(m.exp_part(), top).pop().unwrap_or_else(|| TSeries::zero(&()));
        let key = TransMonomial::exp_of(a_top);
        groups.entry(key.clone()).or_insert_with(|| TSeries::zero(&())).add_term(m.div(&key), c.clone());
    }
    let mut out = TSeries::zero(&());
    for (key, hm) in groups {
        let g = if key.is_one() { integrate_powers(&hm) } else { integrate_level(&key, &hm, &cut)? };
        out = out.add(&g.mul_monomial(&key));
    }
    Ok(Transseries::new(n, out.above(&cut)))
}

/// `x^q ↦ x^q/q` on a series free of exponentials.
fn integrate_powers(h: &TSeries) -> TSeries {
    TSeries::from_terms(&(), h.iter().map(|(m, c)| (m.clone(), c / m.q())))
}

/// Solves `∂y + (∂a)·y = h` for `y`, where `key = e^a`.
fn integrate_level(key: &TransMonomial, h: &TSeries, cut: &TransMonomial) -> Result<TSeries> {
    let c = d0(key.exp_part());
    debug_assert!(!c.is_zero());
    let cut_y = cut.div(key);
    let y0 = h.divide(&c, &cut_y)?;
    let Some(top) = y0.dominant() else { return Ok(y0) };
    if let Depth::Unbounded = neumann_depth(&c, &y0, &cut_y.div(top)) {
        // The bound over-approximates; try a few terms before giving up.
        let mut acc = TSeries::zero(&());
        let mut term = y0;
        for _ in 0..UNBOUNDED_TRIES {
            if term.is_zero() {
                return Ok(acc);
            }
            acc = acc.add(&term);
            term = d0(&term).neg().divide(&c, &cut_y)?;
        }
        return Err(Error::domain("the antiderivative has infinitely many terms above the cutoff"));
    }
    let p = SupportedOperator::new(Support::Infinitesimal, move |y: &TSeries, k: &TransMonomial| {
        d0(y).neg().divide(&c, k)
    });
    neumann_inverse(&p, &y0, &cut_y)
}

const UNBOUNDED_TRIES: usize = 32;

/// Word-length bound for `y ↦ -∂y/c`: since `cmap0` is additive, every ratio
/// `supp P(y) / supp y` lies in the words over these monomials.
fn neumann_depth(c: &TSeries, y0: &TSeries, floor: &TransMonomial) -> Depth {
    let dc = c.dominant().unwrap();
    let mut ratios: Vec<TransMonomial> = c.support().iter().filter(|m| *m != dc).map(|m| m.div(dc)).collect();
    for m in y0.support() {
        ratios.extend(cmap0(&m).support().iter().map(|n| n.div(dc)));
    }
    if ratios.iter().any(|r| !r.is_small()) {
        return Depth::Unknown;
    }
    TransMonomial::word_depth(&ratios, floor)
}
