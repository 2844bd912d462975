use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::exponents::{Depth, Monomial};
use crate::hahn::Series;
use crate::rational::{floor_div, fmt_exp, qi, Q};

/// Series over transmonomials: the bodies of elements of the exp tower.
pub type TSeries = Series<TransMonomial, Q>;

/// `x^q · exp(a)` with `a` purely large.
#[derive(Clone)]
pub struct TransMonomial {
    q: Q,
    e: Arc<TSeries>,
}

impl TransMonomial {
    pub fn new(q: Q, e: TSeries) -> Self {
        debug_assert!(e.is_purely_large(), "exp-part must be purely large");
        TransMonomial { q, e: Arc::new(e) }
    }

    pub fn x_pow(q: Q) -> Self {
        TransMonomial { q, e: Arc::new(TSeries::zero(&())) }
    }

    pub fn exp_of(a: TSeries) -> Self {
        Self::new(Q::zero(), a)
    }

    pub fn q(&self) -> &Q {
        &self.q
    }

    pub fn exp_part(&self) -> &TSeries {
        &self.e
    }

    /// Exponential height: 0 for `x^q`, otherwise one more than the exp-part.
    pub fn height(&self) -> u32 {
        self.e.iter().map(|(m, _)| m.height() + 1).max().unwrap_or(0)
    }

    /// Factors `𝔪₀·𝔪₁⋯𝔪ₕ` with `𝔪ᵢ` of level `i`, plus a trailing `1`.
    pub fn level_factors(&self) -> Vec<TransMonomial> {
        let h = self.height() as usize;
        let mut out = vec![TransMonomial::x_pow(self.q.clone())];
        let comps = level_components(&self.e, h.saturating_sub(1));
        for c in comps.into_iter().take(h) {
            out.push(TransMonomial::exp_of(c));
        }
        out.push(TransMonomial::one(&()));
        out
    }

    /// `(x^q e^a)↑ = exp(q·x + a↑)`.
    pub fn up(&self) -> TransMonomial {
        let mut e = up_series(&self.e);
        e.add_term(TransMonomial::x_pow(qi(1)), self.q.clone());
        TransMonomial::exp_of(e)
    }

    /// Inverse of [`up`](Self::up) when the result stays inside the exp tower.
    pub fn down(&self) -> Option<TransMonomial> {
        if !self.q.is_zero() {
            return None;
        }
        let x = TransMonomial::x_pow(qi(1));
        let r = self.e.coeff(&x);
        let mut rest = (*self.e).clone();
        rest.add_term(x, -r.clone());
        let rest = down_series(&rest)?;
        rest.is_purely_large().then(|| TransMonomial::new(r, rest))
    }
}

/// Splits a series into its level components `0..=top` by monomial height.
pub fn level_components(a: &TSeries, top: usize) -> Vec<TSeries> {
    let mut comps = vec![TSeries::zero(&()); top + 1];
    for (m, c) in a.iter() {
        let h = m.height() as usize;
        if h >= comps.len() {
            comps.resize(h + 1, TSeries::zero(&()));
        }
        comps[h].add_term(m.clone(), c.clone());
    }
    comps
}

pub fn up_series(a: &TSeries) -> TSeries {
    TSeries::from_terms(&(), a.iter().map(|(m, c)| (m.up(), c.clone())))
}

pub fn down_series(a: &TSeries) -> Option<TSeries> {
    let mut out = TSeries::zero(&());
    for (m, c) in a.iter() {
        out.add_term(m.down()?, c.clone());
    }
    Some(out)
}

/// Sign of the leading coefficient of `a - b`.
fn cmp_exp_parts(a: &TSeries, b: &TSeries) -> Ordering {
    let sign = |c: &Q| if c.is_positive() { Ordering::Greater } else { Ordering::Less };
    let (mut ia, mut ib) = (a.iter().peekable(), b.iter().peekable());
    loop {
        match (ia.peek(), ib.peek()) {
            (None, None) => return Ordering::Equal,
            (Some((_, c)), None) => return sign(c),
            (None, Some((_, c))) => return sign(c).reverse(),
            (Some((ma, ca)), Some((mb, cb))) => match ma.cmp(mb) {
                Ordering::Greater => return sign(ca),
                Ordering::Less => return sign(cb).reverse(),
                Ordering::Equal => {
                    if ca != cb {
                        return sign(&((*ca).clone() - (*cb).clone()));
                    }
                    ia.next();
                    ib.next();
                }
            },
        }
    }
}

impl PartialEq for TransMonomial {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}

impl Eq for TransMonomial {}

impl Ord for TransMonomial {
    fn cmp(&self, o: &Self) -> Ordering {
        let e = if Arc::ptr_eq(&self.e, &o.e) { Ordering::Equal } else { cmp_exp_parts(&self.e, &o.e) };
        e.then_with(|| self.q.cmp(&o.q))
    }
}

impl PartialOrd for TransMonomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Monomial for TransMonomial {
    type Ctx = ();

    fn context(&self) {}

    fn one(_: &()) -> Self {
        TransMonomial::x_pow(Q::zero())
    }

    fn mul(&self, o: &Self) -> Self {
        let e = if o.e.is_zero() {
            self.e.clone()
        } else if self.e.is_zero() {
            o.e.clone()
        } else {
            Arc::new(self.e.add(&o.e))
        };
        TransMonomial { q: &self.q + &o.q, e }
    }

    fn inv(&self) -> Self {
        TransMonomial { q: -&self.q, e: Arc::new(self.e.neg()) }
    }

    fn is_one(&self) -> bool {
        self.q.is_zero() && self.e.is_zero()
    }

    fn pow(&self, n: i64) -> Self {
        let k = qi(n);
        TransMonomial { q: &self.q * &k, e: Arc::new(self.e.scale(&k)) }
    }

    fn word_depth(ratios: &[Self], floor: &Self) -> Depth {
        // log(x^q e^a) = a + q·log x; compare Archimedean classes of the logarithms.
        if !floor.is_small() {
            return Depth::Bounded(0);
        }
        let (fc, fl) = floor.log_class();
        let mut best = 0i64;
        for r in ratios {
            let (rc, rl) = r.log_class();
            match rc.cmp(&fc) {
                Ordering::Less => return Depth::Unbounded,
                Ordering::Equal => best = best.max(floor_div(&fl, &rl)),
                Ordering::Greater => {}
            }
        }
        Depth::Bounded(best.max(0) as usize)
    }
}

impl TransMonomial {
    /// Dominant monomial (`None` for the class of `log x`) and `|leading coefficient|`
    /// of the logarithm.
    fn log_class(&self) -> (Option<TransMonomial>, Q) {
        match self.e.leading() {
            Some((m, c)) => (Some(m.clone()), c.abs()),
            None => (None, self.q.abs()),
        }
    }
}

impl fmt::Display for TransMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.q.is_zero() {
            parts.push(if self.q.is_one() { "x".to_string() } else { format!("x^{}", fmt_exp(&self.q)) });
        }
        if !self.e.is_zero() {
            parts.push(format!("exp({})", self.e));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl fmt::Debug for TransMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// `x` as a series.
pub fn x_series() -> TSeries {
    TSeries::monomial(TransMonomial::x_pow(qi(1)))
}

/// `eₖ`: `e₀ = x`, `eₖ₊₁ = exp(eₖ)`.
pub fn e_k(k: u32) -> TransMonomial {
    let mut m = TransMonomial::x_pow(qi(1));
    for _ in 0..k {
        m = TransMonomial::exp_of(TSeries::monomial(m));
    }
    m
}

/// `𝔢ₙ = e₀e₁⋯eₙ₋₁`.
pub fn frak_e(n: u32) -> TransMonomial {
    (0..n).fold(TransMonomial::one(&()), |acc, k| acc.mul(&e_k(k)))
}

/// The tower derivation `x·d/dx` on bodies, computed exactly.
pub fn d0(a: &TSeries) -> TSeries {
    let mut out = TSeries::zero(&());
    for (m, c) in a.iter() {
        let cm = cmap0(m);
        out = out.add(&cm.mul_monomial(m).scale(c));
    }
    out
}

/// `c(x^q e^a) = q + ∂a`.
pub fn cmap0(m: &TransMonomial) -> TSeries {
    let mut c = d0(&m.e);
    c.add_term(TransMonomial::one(&()), m.q.clone());
    c
}
