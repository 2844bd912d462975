//! The exponential tower `𝕋_exp` and its logarithmic extension.
//!
//! An element at depth `n` is stored as a body `g ∈ 𝕋_exp` and stands for
//! `g(ℓₙ)`, with `ℓ₀ = x` and `ℓₙ₊₁ = log ℓₙ`. Bodies are kept at the least
//! depth that can express them.

mod format;
mod integrate;
mod monomial;

use std::fmt;

use num_traits::{Signed, Zero};

pub use integrate::{antiderivative, antiderivative_at_depth};
pub use monomial::{cmap0, d0, e_k, frak_e, level_components, x_series, TSeries, TransMonomial};

use crate::error::{Error, Result};
use crate::exponents::Monomial;
use crate::hahn::{CoefficientField, Series};
use crate::operators::Derivation;
use crate::rational::{qi, Q};

/// Bounds on exponential height and logarithmic depth.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TowerConfig {
    /// Maximal height of a canonical body, counted above its depth.
    pub max_height: u32,
    pub max_depth: u32,
}

impl Default for TowerConfig {
    fn default() -> Self {
        TowerConfig { max_height: 4, max_depth: 3 }
    }
}

/// A depth-tagged transseries.
#[derive(Clone, PartialEq)]
pub struct Transseries {
    depth: u32,
    body: TSeries,
}

impl Transseries {
    /// Builds `g(ℓₙ)` and lowers it to canonical depth.
    pub fn new(depth: u32, body: TSeries) -> Self {
        let mut t = Transseries { depth, body };
        while t.depth > 0 {
            match monomial::down_series(&t.body) {
                Some(b) => {
                    t.body = b;
                    t.depth -= 1;
                }
                None => break,
            }
        }
        t
    }

    pub fn zero() -> Self {
        Transseries { depth: 0, body: TSeries::zero(&()) }
    }

    pub fn constant(c: Q) -> Self {
        Transseries { depth: 0, body: TSeries::constant(&(), c) }
    }

    pub fn one() -> Self {
        Self::constant(qi(1))
    }

    pub fn x() -> Self {
        Transseries { depth: 0, body: x_series() }
    }

    /// `t = x⁻¹`.
    pub fn t() -> Self {
        Self::monomial(TransMonomial::x_pow(qi(-1)))
    }

    /// `ℓₙ`, the n-fold logarithm of `x`.
    pub fn ell(n: u32) -> Self {
        Self::new(n, x_series())
    }

    pub fn monomial(m: TransMonomial) -> Self {
        Self::new(0, TSeries::monomial(m))
    }

    pub fn term(c: Q, m: TransMonomial) -> Self {
        Self::new(0, TSeries::term(c, m))
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn body(&self) -> &TSeries {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn len(&self) -> usize {
        self.body.len()
    }

    pub fn is_empty(&self) -> bool {
        self.body.is_empty()
    }

    /// Height of the body above what its depth already accounts for.
    pub fn height(&self) -> u32 {
        let h = self.body.iter().map(|(m, _)| m.height()).max().unwrap_or(0);
        h.saturating_sub(self.depth)
    }

    pub fn is_monomial(&self) -> bool {
        self.body.is_monomial()
    }

    /// The body at depth `n ≥ self.depth`, i.e. `(self)↑ⁿ`'s representation.
    pub fn body_at(&self, n: u32) -> TSeries {
        assert!(n >= self.depth, "cannot lower the depth of a body");
        let mut b = self.body.clone();
        for _ in self.depth..n {
            b = monomial::up_series(&b);
        }
        b
    }

    /// The unique monomial of a monomial element, at depth `n`.
    pub fn monomial_at(&self, n: u32) -> Result<TransMonomial> {
        let b = self.body_at(n);
        match b.leading() {
            Some((m, _)) if b.len() == 1 => Ok(m.clone()),
            _ => Err(Error::domain(format!("{self} is not a monomial"))),
        }
    }

    pub fn leading_coefficient(&self) -> Option<Q> {
        self.body.leading().map(|(_, c)| c.clone())
    }

    /// The dominant monomial `𝔡(f)` as an element.
    pub fn dominant(&self) -> Option<Transseries> {
        self.body.dominant().map(|m| Transseries::new(self.depth, TSeries::monomial(m.clone())))
    }

    fn align(&self, o: &Self) -> (u32, TSeries, TSeries) {
        let n = self.depth.max(o.depth);
        (n, self.body_at(n), o.body_at(n))
    }

    pub fn add(&self, o: &Self) -> Self {
        let (n, a, b) = self.align(o);
        Self::new(n, a.add(&b))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Transseries { depth: self.depth, body: self.body.neg() }
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.depth, self.body.scale(c))
    }

    /// Exact product.
    pub fn mul(&self, o: &Self) -> Self {
        let (n, a, b) = self.align(o);
        Self::new(n, a.mul(&b))
    }

    /// Product restricted to `≽ cutoff`.
    pub fn mul_cut(&self, o: &Self, cutoff: &Self) -> Result<Self> {
        let n = self.depth.max(o.depth).max(cutoff.depth);
        let c = cutoff.monomial_at(n)?;
        Ok(Self::new(n, self.body_at(n).mul_cut(&o.body_at(n), &c)))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Rational power of a monomial element.
    pub fn monomial_pow(&self, r: &Q) -> Result<Self> {
        let m = self.monomial_at(self.depth)?;
        Ok(Self::new(self.depth, TSeries::monomial(TransMonomial::new(m.q() * r, m.exp_part().scale(r)))))
    }

    /// Terms `≽ cutoff`.
    pub fn above(&self, cutoff: &Self) -> Result<Self> {
        let n = self.depth.max(cutoff.depth);
        Ok(Self::new(n, self.body_at(n).above(&cutoff.monomial_at(n)?)))
    }

    /// Truncation `f|_𝔫`.
    pub fn truncate(&self, n: &Self) -> Result<Self> {
        let d = self.depth.max(n.depth);
        Ok(Self::new(d, self.body_at(d).truncate(&n.monomial_at(d)?)))
    }

    pub fn truncations(&self) -> Vec<Self> {
        self.body.truncations().into_iter().map(|b| Self::new(self.depth, b)).collect()
    }

    pub fn support(&self) -> Vec<Transseries> {
        self.body.support().into_iter().map(|m| Self::new(self.depth, TSeries::monomial(m))).collect()
    }

    /// Terms as `(coefficient, monomial element)` pairs, `≻`-descending.
    pub fn terms(&self) -> Vec<(Q, Transseries)> {
        self.body.iter().map(|(m, c)| (c.clone(), Self::new(self.depth, TSeries::monomial(m.clone())))).collect()
    }

    /// `(purely large, constant, infinitesimal)` parts.
    pub fn decompose(&self) -> (Self, Q, Self) {
        let (l, c, e) = self.body.decompose();
        (Self::new(self.depth, l), c, Self::new(self.depth, e))
    }

    pub fn is_small(&self) -> bool {
        self.body.is_small()
    }

    pub fn is_purely_large(&self) -> bool {
        self.body.is_purely_large()
    }

    /// `f⁻¹` up to `cutoff`.
    pub fn invert(&self, cutoff: &Self) -> Result<Self> {
        let n = self.depth.max(cutoff.depth);
        Ok(Self::new(n, self.body_at(n).invert(&cutoff.monomial_at(n)?)?))
    }

    pub fn divide(&self, o: &Self, cutoff: &Self) -> Result<Self> {
        let n = self.depth.max(o.depth).max(cutoff.depth);
        Ok(Self::new(n, self.body_at(n).divide(&o.body_at(n), &cutoff.monomial_at(n)?)?))
    }

    /// Compares dominant monomials: `Less` means `self ≺ o`.
    pub fn dominance(&self, o: &Self) -> std::cmp::Ordering {
        let (_, a, b) = self.align(o);
        a.dominance(&b).map(|d| d.relation).unwrap_or(std::cmp::Ordering::Equal)
    }
}

impl fmt::Debug for Transseries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Transseries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format::render(self))
    }
}

fn check_height(f: &Transseries, cfg: &TowerConfig) -> Result<()> {
    if f.height() > cfg.max_height {
        Err(Error::budget(format!("exponential height {} exceeds {}", f.height(), cfg.max_height)))
    } else {
        Ok(())
    }
}

fn check_depth(n: u32, cfg: &TowerConfig) -> Result<()> {
    if n > cfg.max_depth {
        Err(Error::budget(format!("logarithmic depth {} exceeds {}", n, cfg.max_depth)))
    } else {
        Ok(())
    }
}

/// `exp f` up to `cutoff`.
pub fn texp_exp(f: &Transseries, cutoff: &Transseries, cfg: &TowerConfig) -> Result<Transseries> {
    let n = f.depth.max(cutoff.depth);
    let (large, c, small) = f.body_at(n).decompose();
    let ec = c.exp_const().ok_or_else(|| Error::domain(format!("exp of the constant {} is not rational", crate::rational::fmt_q(&c))))?;
    let m = TransMonomial::exp_of(large);
    let cut = cutoff.monomial_at(n)?.div(&m);
    let body = small.exp_small(&cut)?.mul_monomial(&m).scale(&ec);
    let out = Transseries::new(n, body);
    check_height(&out, cfg)?;
    Ok(out)
}

/// `log f` up to `cutoff`, for `f` with positive leading coefficient.
pub fn texp_log(f: &Transseries, cutoff: &Transseries, cfg: &TowerConfig) -> Result<Transseries> {
    let (_, c) = f.body.leading().ok_or_else(|| Error::domain("log of 0"))?;
    if !c.is_positive() {
        return Err(Error::domain("log of a series with nonpositive leading coefficient"));
    }
    let lc = c.log_const().ok_or_else(|| Error::domain(format!("log of the constant {} is not rational", crate::rational::fmt_q(c))))?;
    let mut n = f.depth.max(cutoff.depth);
    if !Zero::is_zero(f.body_at(n).dominant().unwrap().q()) {
        n += 1;
        check_depth(n, cfg)?;
    }
    let body = f.body_at(n);
    let (m, c) = body.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
    let eps = body.mul_monomial(&m.inv()).scale(&c.recip()).sub(&TSeries::one(&()));
    let mut out = eps.log_one_plus(&cutoff.monomial_at(n)?)?;
    out = out.add(m.exp_part());
    out.add_term(TransMonomial::one(&()), lc);
    Ok(Transseries::new(n, out))
}

/// The derivation `x·d/dx`.
pub fn texp_derive(f: &Transseries, cutoff: &Transseries) -> Result<Transseries> {
    let n = f.depth.max(cutoff.depth);
    let body = d0(&f.body_at(n)).mul_monomial(&frak_e(n).inv());
    Ok(Transseries::new(n, body.above(&cutoff.monomial_at(n)?)))
}

/// Exact derivative; bodies are finite so no cutoff is needed.
pub fn derive_exact(f: &Transseries) -> Transseries {
    let n = f.depth;
    Transseries::new(n, d0(&f.body).mul_monomial(&frak_e(n).inv()))
}

/// `f = a₀ + a₁ + …` with `aᵢ` collecting the level-`i` terms of a purely large `f`.
pub fn level_decompose(f: &Transseries) -> Result<Vec<Transseries>> {
    if !f.is_purely_large() {
        return Err(Error::domain(format!("{f} is not purely large")));
    }
    let top = f.body.iter().map(|(m, _)| m.height()).max().unwrap_or(0) as usize;
    Ok(level_components(&f.body, top).into_iter().map(|c| Transseries::new(f.depth, c)).collect())
}

/// Outcome of a splitting test.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitReport {
    pub splits: bool,
    pub witness: Option<Transseries>,
}

/// Whether every level factor of every member of `s` lies in `s`.
pub fn splits(s: &[Transseries]) -> Result<SplitReport> {
    let n = s.iter().map(|m| m.depth).max().unwrap_or(0);
    let set: std::collections::BTreeSet<TransMonomial> =
        s.iter().map(|m| m.monomial_at(n)).collect::<Result<_>>()?;
    for m in &set {
        for factor in m.level_factors() {
            if !set.contains(&factor) {
                let witness = Transseries::new(n, TSeries::monomial(factor));
                return Ok(SplitReport { splits: false, witness: Some(witness) });
            }
        }
    }
    Ok(SplitReport { splits: true, witness: None })
}

/// Upward shift `f ↦ f(eˣ)` applied `k` times; negative `k` shifts down.
pub fn shift(f: &Transseries, k: i32, cfg: &TowerConfig) -> Result<Transseries> {
    let mut g = f.clone();
    if k >= 0 {
        for _ in 0..k {
            g = if g.depth > 0 {
                Transseries { depth: g.depth - 1, body: g.body }
            } else {
                Transseries { depth: 0, body: monomial::up_series(&g.body) }
            };
        }
        check_height(&g, cfg)?;
    } else {
        for _ in 0..k.unsigned_abs() {
            check_depth(g.depth + 1, cfg)?;
            g = Transseries::new(g.depth + 1, g.body);
        }
    }
    Ok(g)
}

/// The tower derivation on bodies at a fixed depth: `c(𝔪) = (q + ∂a)/𝔢ₙ`.
#[derive(Clone, Copy, Debug)]
pub struct TowerDerivation {
    pub depth: u32,
}

impl Derivation<TransMonomial, Q> for TowerDerivation {
    fn cmap(&self, m: &TransMonomial) -> Result<Series<TransMonomial, Q>> {
        Ok(cmap0(m).mul_monomial(&frak_e(self.depth).inv()))
    }
}
