use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exponents::{Depth, Monomial};
use crate::hahn::coeff::CoefficientField;
use crate::rational::{factorial, q, Q};

/// Upper bound on expansion steps when the monomial group gives no depth bound.
pub const EXPANSION_CAP: usize = 4096;

/// A finitely supported series `Σ f_𝔪 𝔪` with no zero coefficients stored.
#[derive(Clone, PartialEq)]
pub struct Series<M: Monomial, C: CoefficientField = Q> {
    ctx: M::Ctx,
    terms: BTreeMap<M, C>,
}

/// Outcome of comparing two series by their dominant monomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dominance {
    /// `Less` means `f ≺ g`, `Equal` means `f ≍ g`.
    pub relation: Ordering,
    /// `Some(f ∼ g)` when both are nonzero.
    pub similar: Option<bool>,
}

impl<M: Monomial, C: CoefficientField> Series<M, C> {
    pub fn zero(ctx: &M::Ctx) -> Self {
        Series { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &M::Ctx) -> Self {
        Self::constant(ctx, C::one())
    }

    pub fn constant(ctx: &M::Ctx, c: C) -> Self {
        Self::term(c, M::one(ctx))
    }

    pub fn monomial(m: M) -> Self {
        Self::term(C::one(), m)
    }

    pub fn term(c: C, m: M) -> Self {
        let mut s = Self::zero(&m.context());
        s.add_term(m, c);
        s
    }

    pub fn from_terms(ctx: &M::Ctx, terms: impl IntoIterator<Item = (M, C)>) -> Self {
        let mut s = Self::zero(ctx);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    pub fn ctx(&self) -> &M::Ctx {
        &self.ctx
    }

    pub fn add_term(&mut self, m: M, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in `≻`-descending order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&M, &C)> + '_ {
        self.terms.iter().rev()
    }

    pub fn support(&self) -> Vec<M> {
        self.terms.keys().rev().cloned().collect()
    }

    pub fn coeff(&self, m: &M) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn contains(&self, m: &M) -> bool {
        self.terms.contains_key(m)
    }

    pub fn leading(&self) -> Option<(&M, &C)> {
        self.terms.iter().next_back()
    }

    /// Dominant monomial `𝔡(f)`.
    pub fn dominant(&self) -> Option<&M> {
        self.leading().map(|(m, _)| m)
    }

    /// Smallest monomial in the support.
    pub fn last(&self) -> Option<&M> {
        self.terms.keys().next()
    }

    pub fn is_monomial(&self) -> bool {
        self.len() == 1 && self.leading().map_or(false, |(_, c)| c.is_one())
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&M::one(&self.ctx))
    }

    pub fn check_ctx(&self, o: &Self) -> Result<()> {
        if self.ctx == o.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!("{:?} vs {:?}", self.ctx, o.ctx)))
        }
    }

    fn check_mon(&self, m: &M) -> Result<()> {
        if self.ctx == m.context() {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!("{:?} vs {:?}", self.ctx, m.context())))
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero(&self.ctx);
        }
        self.map_coeffs(|c| c.clone() * k.clone())
    }

    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        Self::from_terms(&self.ctx, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn mul_monomial(&self, n: &M) -> Self {
        Series { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(m, c)| (m.mul(n), c.clone())).collect() }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check_ctx(o)?;
        Ok(self.add(o))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check_ctx(o)?;
        Ok(self.mul(o))
    }

    /// Exact convolution product.
    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(&self.ctx);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                r.add_term(a.mul(b), ca.clone() * cb.clone());
            }
        }
        r
    }

    /// Product restricted to monomials `≽ cutoff`.
    pub fn mul_cut(&self, o: &Self, cutoff: &M) -> Self {
        let mut r = Self::zero(&self.ctx);
        let Some(ob) = o.dominant() else { return r };
        for (a, ca) in self.iter() {
            if a.mul(ob) < *cutoff {
                break;
            }
            for (b, cb) in o.iter() {
                let m = a.mul(b);
                if m < *cutoff {
                    break;
                }
                r.add_term(m, ca.clone() * cb.clone());
            }
        }
        r
    }

    /// Terms `≽ cutoff`.
    pub fn above(&self, cutoff: &M) -> Self {
        Series { ctx: self.ctx.clone(), terms: self.terms.range(cutoff.clone()..).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Truncation `f|_𝔫 = Σ_{𝔪 ≻ 𝔫} f_𝔪 𝔪`.
    pub fn truncate(&self, n: &M) -> Self {
        use std::ops::Bound::{Excluded, Unbounded};
        Series {
            ctx: self.ctx.clone(),
            terms: self.terms.range((Excluded(n.clone()), Unbounded)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Terms strictly `≺ n`.
    pub fn below(&self, n: &M) -> Self {
        Series { ctx: self.ctx.clone(), terms: self.terms.range(..n.clone()).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// All proper truncations, one per support monomial, largest cut first.
    pub fn truncations(&self) -> Vec<Self> {
        self.support().iter().map(|m| self.truncate(m)).collect()
    }

    /// Split into purely large part, constant term and infinitesimal part.
    pub fn decompose(&self) -> (Self, C, Self) {
        let one = M::one(&self.ctx);
        (self.truncate(&one), self.constant_term(), self.below(&one))
    }

    pub fn is_small(&self) -> bool {
        self.dominant().map_or(true, |m| m.is_small())
    }

    pub fn is_purely_large(&self) -> bool {
        self.last().map_or(true, |m| *m > M::one(&self.ctx))
    }

    pub fn dominance(&self, o: &Self) -> Result<Dominance> {
        self.check_ctx(o)?;
        let relation = match (self.dominant(), o.dominant()) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => a.cmp(b),
        };
        let similar = (!self.is_zero() && !o.is_zero()).then(|| {
            let d = self.sub(o);
            d.dominant().map_or(true, |m| m < self.dominant().unwrap())
        });
        Ok(Dominance { relation, similar })
    }

    /// `f ∼ g`, undefined when either side is zero.
    pub fn similar(&self, o: &Self) -> Result<bool> {
        self.dominance(o)?.similar.ok_or_else(|| Error::domain("asymptotic equivalence with 0"))
    }

    fn require_small(&self, what: &str) -> Result<()> {
        if self.is_small() {
            Ok(())
        } else {
            Err(Error::domain(format!("{what}: argument is not ≺ 1")))
        }
    }

    /// `Σ_n a_n εⁿ` over all powers with a term `≽ cutoff`.
    pub fn power_sum(&self, coeff: impl Fn(u32) -> C, cutoff: &M) -> Result<Self> {
        self.require_small("power series")?;
        self.check_mon(cutoff)?;
        if let Depth::Unbounded = M::word_depth(&self.support(), cutoff) {
            return Err(Error::domain("infinitely many powers stay above the cutoff"));
        }
        let mut acc = Self::zero(&self.ctx);
        let mut p = Self::one(&self.ctx).above(cutoff);
        let mut n = 0u32;
        while !p.is_zero() {
            let a = coeff(n);
            if !a.is_zero() {
                acc = acc.add(&p.scale(&a));
            }
            n += 1;
            if n as usize > EXPANSION_CAP {
                return Err(Error::budget("power series expansion did not terminate above the cutoff"));
            }
            p = p.mul_cut(self, cutoff);
        }
        Ok(acc)
    }

    /// `f⁻¹` up to `cutoff`.
    pub fn invert(&self, cutoff: &M) -> Result<Self> {
        let (d, c) = self.leading().ok_or(Error::DivisionByZero)?;
        let ci = c.inverse().ok_or(Error::DivisionByZero)?;
        let d = d.clone();
        let eps = self.mul_monomial(&d.inv()).scale(&ci).sub(&Self::one(&self.ctx));
        let inner = cutoff.mul(&d);
        let geo = eps.power_sum(|n| if n % 2 == 0 { C::one() } else { -C::one() }, &inner)?;
        Ok(geo.mul_monomial(&d.inv()).scale(&ci))
    }

    /// `f / g` up to `cutoff`.
    pub fn divide(&self, g: &Self, cutoff: &M) -> Result<Self> {
        self.check_ctx(g)?;
        let Some(fd) = self.dominant() else { return Ok(Self::zero(&self.ctx)) };
        let gd = g.dominant().ok_or(Error::DivisionByZero)?;
        let gi = g.invert(&cutoff.div(fd))?;
        let _ = gd;
        Ok(self.mul_cut(&gi, cutoff))
    }

    pub fn exp_small(&self, cutoff: &M) -> Result<Self> {
        self.require_small("exp_small")?;
        self.power_sum(|n| C::from_q(&factorial(n).recip()), cutoff)
    }

    pub fn log_one_plus(&self, cutoff: &M) -> Result<Self> {
        self.require_small("log_one_plus")?;
        self.power_sum(
            |n| match n {
                0 => C::zero(),
                n if n % 2 == 1 => C::from_q(&q(1, n as i64)),
                n => C::from_q(&q(-1, n as i64)),
            },
            cutoff,
        )
    }

    pub fn map_monomials(&self, f: impl Fn(&M) -> M) -> Self {
        Self::from_terms(&self.ctx, self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }
}

impl<M: Monomial + fmt::Display, C: CoefficientField> fmt::Display for Series<M, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, String)> =
            self.iter().map(|(m, c)| (c.render(), if m.is_one() { String::new() } else { m.to_string() })).collect();
        write!(f, "{}", join_terms(&terms))
    }
}

impl<M: Monomial + fmt::Display, C: CoefficientField> fmt::Debug for Series<M, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Joins `(coefficient, monomial)` renderings as `a*m + b*n - …`.
pub fn join_terms(terms: &[(String, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (c, m)) in terms.iter().enumerate() {
        let (neg, mag) = match c.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, c.as_str()),
        };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_empty() {
            out.push_str(mag);
        } else if mag == "1" {
            out.push_str(m);
        } else {
            out.push_str(mag);
            out.push('*');
            out.push_str(m);
        }
    }
    out
}
