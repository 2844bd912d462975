use num_traits::{One, Zero};

use super::{TSeries, TransMonomial, Transseries};
use crate::hahn::join_terms;
use crate::rational::{fmt_exp, fmt_q, Q};

/// Name of the variable the body is written in at depth `n`.
fn var(n: u32) -> String {
    if n == 0 {
        "x".to_string()
    } else {
        format!("l{n}")
    }
}

fn power(name: String, e: &Q) -> Option<String> {
    if e.is_zero() {
        None
    } else if e.is_one() {
        Some(name)
    } else {
        Some(format!("{name}^{}", fmt_exp(e)))
    }
}

/// At depth `n`, `exp(k·lⱼ)` is written `lⱼ₋₁^k` (with `l₀ = x`); the rest stays inside `exp`.
fn split(e: &TSeries, n: u32) -> (Vec<String>, TSeries) {
    let mut rest = e.clone();
    let mut factors = Vec::new();
    let mut l = TransMonomial::x_pow(Q::one());
    for j in (1..=n).rev() {
        let k = rest.coeff(&l);
        rest.add_term(l.clone(), -k.clone());
        factors.extend(power(var(j - 1), &k));
        l = TransMonomial::exp_of(TSeries::monomial(l));
    }
    factors.reverse();
    (factors, rest)
}

/// Terms sharing an exponential part are collected as `(…)*exp(a)`.
fn series(s: &TSeries, n: u32) -> String {
    let mut groups: Vec<(TSeries, Vec<(String, String)>)> = Vec::new();
    for (m, c) in s.iter() {
        let (mut parts, rest) = split(m.exp_part(), n);
        parts.extend(power(var(n), m.q()));
        let item = (fmt_q(c), parts.join("*"));
        match groups.last_mut() {
            Some((e, items)) if *e == rest => items.push(item),
            _ => groups.push((rest, vec![item])),
        }
    }
    let mut out = Vec::new();
    for (e, items) in groups {
        if e.is_zero() {
            out.extend(items);
            continue;
        }
        let ex = format!("exp({})", series(&e, n));
        if items.len() == 1 {
            let (c, m) = items.into_iter().next().unwrap();
            out.push((c, if m.is_empty() { ex } else { format!("{m}*{ex}") }));
        } else {
            out.push(("1".to_string(), format!("({})*{ex}", join_terms(&items))));
        }
    }
    join_terms(&out)
}

pub(super) fn render(t: &Transseries) -> String {
    series(t.body(), t.depth())
}
