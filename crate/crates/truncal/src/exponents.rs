//! Ordered exponent groups, monomials and grid supports.
//!
//! Monomials are ordered asymptotically: `a < b` in [`Ord`] means `a ≺ b`.
//! For plain monomials `t^γ` this is the reverse of the lexicographic order
//! on exponents, so `t ≺ 1`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{floor_div, fmt_exp, Q};

/// Upper bound on grid words visited when no exact depth bound is known.
pub const ENUMERATION_CAP: usize = 200_000;

/// A group of monomials usable as the support of a series.
pub trait Monomial: Clone + Ord + fmt::Debug + Send + Sync + 'static {
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn context(&self) -> Self::Ctx;
    fn one(ctx: &Self::Ctx) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    fn is_one(&self) -> bool;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut acc = Self::one(&self.context());
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    fn is_small(&self) -> bool {
        *self < Self::one(&self.context())
    }

    /// How long a word in `ratios` (all `≺ 1`) can get while staying `≽ floor`.
    fn word_depth(_ratios: &[Self], _floor: &Self) -> Depth {
        Depth::Unknown
    }
}

/// Result of a word-length analysis over a set of ratios.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Depth {
    /// Every word longer than this falls strictly below the floor.
    Bounded(usize),
    /// Infinitely many words stay above the floor.
    Unbounded,
    Unknown,
}

/// Names of the generators of an exponent group `ℚ^k`, most significant first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Basis(Arc<[String]>);

impl Basis {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Basis(names.iter().map(|s| s.as_ref().to_string()).collect())
    }

    pub fn single(name: &str) -> Self {
        Basis::new(&[name])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }
}

impl fmt::Debug for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.join(","))
    }
}

/// A vector of rational coordinates under the lexicographic order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Exponent {
    pub coords: Vec<Q>,
}

impl Exponent {
    pub fn zero(rank: usize) -> Self {
        Exponent { coords: vec![Q::zero(); rank] }
    }

    pub fn new(coords: Vec<Q>) -> Self {
        Exponent { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Exponent) -> Exponent {
        Exponent::new(self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> Exponent {
        Exponent::new(self.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &Q) -> Exponent {
        Exponent::new(self.coords.iter().map(|a| a * k).collect())
    }

    /// Index of the first nonzero coordinate.
    pub fn lead_index(&self) -> Option<usize> {
        self.coords.iter().position(|c| !c.is_zero())
    }
}

/// `t^γ` over an explicit basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlainMonomial {
    pub basis: Basis,
    pub exp: Exponent,
}

impl PlainMonomial {
    pub fn new(basis: &Basis, coords: Vec<Q>) -> Self {
        assert_eq!(basis.rank(), coords.len(), "exponent rank must match basis");
        PlainMonomial { basis: basis.clone(), exp: Exponent::new(coords) }
    }

    pub fn from_ints(basis: &Basis, coords: &[i64]) -> Self {
        Self::new(basis, coords.iter().map(|&c| crate::rational::qi(c)).collect())
    }

    /// `t^e` over a single-generator basis.
    pub fn t(basis: &Basis, e: Q) -> Self {
        Self::new(basis, vec![e])
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.basis == o.basis {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!("{:?} vs {:?}", self.basis, o.basis)))
        }
    }
}

impl Ord for PlainMonomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.basis.cmp(&o.basis).then_with(|| o.exp.cmp(&self.exp))
    }
}

impl PartialOrd for PlainMonomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for PlainMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for PlainMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .basis
            .names()
            .iter()
            .zip(&self.exp.coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| if c == &crate::rational::qi(1) { n.clone() } else { format!("{}^{}", n, fmt_exp(c)) })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl Monomial for PlainMonomial {
    type Ctx = Basis;

    fn context(&self) -> Basis {
        self.basis.clone()
    }

    fn one(ctx: &Basis) -> Self {
        PlainMonomial { basis: ctx.clone(), exp: Exponent::zero(ctx.rank()) }
    }

    fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.basis, o.basis);
        PlainMonomial { basis: self.basis.clone(), exp: self.exp.add(&o.exp) }
    }

    fn inv(&self) -> Self {
        PlainMonomial { basis: self.basis.clone(), exp: self.exp.neg() }
    }

    fn is_one(&self) -> bool {
        self.exp.is_zero()
    }

    fn pow(&self, n: i64) -> Self {
        PlainMonomial { basis: self.basis.clone(), exp: self.exp.scale(&crate::rational::qi(n)) }
    }

    fn word_depth(ratios: &[Self], floor: &Self) -> Depth {
        // Words w ≽ floor are exactly those with exponent ≤ exponent(floor).
        let d = &floor.exp;
        let j = match d.lead_index() {
            None => return Depth::Bounded(0),
            Some(j) if d.coords[j].is_negative() => return Depth::Bounded(0),
            Some(j) => j,
        };
        let mut best: Option<i64> = None;
        for r in ratios {
            match r.exp.lead_index() {
                Some(i) if i > j => return Depth::Unbounded,
                Some(i) if i == j => {
                    let k = floor_div(&d.coords[j], &r.exp.coords[j]);
                    best = Some(best.map_or(k, |b: i64| b.max(k)));
                }
                _ => {}
            }
        }
        Depth::Bounded(best.unwrap_or(0).max(0) as usize)
    }
}

/// Compares two plain monomials under `≺`.
pub fn compare_monomials(a: &PlainMonomial, b: &PlainMonomial) -> Result<Ordering> {
    a.check(b)?;
    Ok(a.cmp(b))
}

pub fn monomial_product(a: &PlainMonomial, b: &PlainMonomial) -> Result<PlainMonomial> {
    a.check(b)?;
    Ok(a.mul(b))
}

/// The set `anchor · ratios*`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridDescriptor<M: Monomial = PlainMonomial> {
    pub anchor: M,
    pub ratios: Vec<M>,
}

impl<M: Monomial> GridDescriptor<M> {
    pub fn new(anchor: M, ratios: Vec<M>) -> Result<Self> {
        let ctx = anchor.context();
        for r in &ratios {
            if r.context() != ctx {
                return Err(Error::ContextMismatch("grid ratio from another basis".into()));
            }
            if !r.is_small() {
                return Err(Error::InvalidGrid(format!("ratio {:?} is not ≺ 1", r)));
            }
        }
        Ok(GridDescriptor { anchor, ratios })
    }

    /// Product grid: anchors multiply, ratios are pooled.
    pub fn product(&self, o: &Self) -> Self {
        let mut ratios = self.ratios.clone();
        for r in &o.ratios {
            if !ratios.contains(r) {
                ratios.push(r.clone());
            }
        }
        GridDescriptor { anchor: self.anchor.mul(&o.anchor), ratios }
    }

    pub fn contains(&self, m: &M) -> Result<bool> {
        Ok(enumerate_grid(self, m)?.last() == Some(m))
    }
}

/// All members of `g` that are `≽ cutoff`, sorted `≻`-descending.
pub fn enumerate_grid<M: Monomial>(g: &GridDescriptor<M>, cutoff: &M) -> Result<Vec<M>> {
    let ctx = g.anchor.context();
    if cutoff.context() != ctx {
        return Err(Error::ContextMismatch("cutoff from another basis".into()));
    }
    if let Some(r) = g.ratios.iter().find(|r| !r.is_small()) {
        return Err(Error::InvalidGrid(format!("ratio {:?} is not ≺ 1", r)));
    }
    let floor = cutoff.div(&g.anchor);
    if let Depth::Unbounded = M::word_depth(&g.ratios, &floor) {
        return Err(Error::domain(format!("grid has infinitely many members above {:?}", cutoff)));
    }
    let mut out = BTreeSet::new();
    let mut visited = 0usize;
    // Words are non-decreasing index sequences, so each multiset is seen once.
    let mut stack = vec![(g.anchor.clone(), 0usize)];
    while let Some((m, start)) = stack.pop() {
        if m < *cutoff {
            continue;
        }
        visited += 1;
        if visited > ENUMERATION_CAP {
            return Err(Error::budget("grid enumeration exceeded its cap"));
        }
        for (i, r) in g.ratios.iter().enumerate().skip(start) {
            stack.push((m.mul(r), i));
        }
        out.insert(m);
    }
    Ok(out.into_iter().rev().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn t(e: i64) -> PlainMonomial {
        PlainMonomial::from_ints(&Basis::single("t"), &[e])
    }

    #[test]
    fn reversed_order() {
        assert_eq!(compare_monomials(&t(1), &t(0)).unwrap(), Ordering::Less);
        assert_eq!(compare_monomials(&t(0), &t(0)).unwrap(), Ordering::Equal);
        let b = Basis::new(&["a", "b"]);
        let x = PlainMonomial::from_ints(&b, &[1, 0]);
        let y = PlainMonomial::from_ints(&b, &[0, 5]);
        assert!(x < y);
    }

    #[test]
    fn products() {
        assert_eq!(monomial_product(&t(1), &t(2)).unwrap(), t(3));
        assert!(monomial_product(&t(1), &t(-1)).unwrap().is_one());
        let b = Basis::new(&["a", "b"]);
        let p = monomial_product(
            &PlainMonomial::from_ints(&b, &[1, 2]),
            &PlainMonomial::from_ints(&b, &[0, -2]),
        )
        .unwrap();
        assert_eq!(p, PlainMonomial::from_ints(&b, &[1, 0]));
        assert!(monomial_product(&t(1), &p).is_err());
    }

    #[test]
    fn grid_examples() {
        let one = t(0);
        let g = GridDescriptor::new(one.clone(), vec![t(1)]).unwrap();
        assert_eq!(enumerate_grid(&g, &t(3)).unwrap(), vec![t(0), t(1), t(2), t(3)]);
        let g = GridDescriptor::new(t(-1), vec![t(1)]).unwrap();
        assert_eq!(enumerate_grid(&g, &t(0)).unwrap(), vec![t(-1), t(0)]);
        assert!(GridDescriptor::new(one.clone(), vec![t(-1)]).is_err());
    }

    /// Independent oracle: every word of length ≤ 6 over {2, 3}, deduplicated.
    #[test]
    fn grid_two_three_matches_brute_force() {
        let g = GridDescriptor::new(t(0), vec![t(2), t(3)]).unwrap();
        let mut brute = BTreeSet::new();
        for i in 0..=6i64 {
            for j in 0..=6i64 {
                let e = 2 * i + 3 * j;
                if e <= 6 {
                    brute.insert(e);
                }
            }
        }
        let expected: Vec<_> = brute.into_iter().map(t).collect();
        assert_eq!(expected, vec![t(0), t(2), t(3), t(4), t(5), t(6)]);
        assert_eq!(enumerate_grid(&g, &t(6)).unwrap(), expected);
    }

    #[test]
    fn lexicographic_grid_can_be_infinite() {
        let b = Basis::new(&["a", "b"]);
        let g = GridDescriptor::new(PlainMonomial::one(&b), vec![PlainMonomial::from_ints(&b, &[0, 1])]).unwrap();
        let cutoff = PlainMonomial::from_ints(&b, &[1, 0]);
        assert!(matches!(enumerate_grid(&g, &cutoff), Err(Error::Domain(_))));
        let cutoff = PlainMonomial::from_ints(&b, &[0, 3]);
        assert_eq!(enumerate_grid(&g, &cutoff).unwrap().len(), 4);
    }

    #[test]
    fn fractional_depth() {
        let b = Basis::single("t");
        let half = PlainMonomial::t(&b, crate::rational::q(1, 2));
        assert_eq!(PlainMonomial::word_depth(&[half], &PlainMonomial::t(&b, qi(2))), Depth::Bounded(4));
    }
}
