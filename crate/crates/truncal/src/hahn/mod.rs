//! Grid-based Hahn series over a pluggable coefficient field.

mod coeff;
mod grid;
mod series;

use std::sync::Arc;

pub use coeff::CoefficientField;
pub use grid::GridSeries;
pub use series::{join_terms, Dominance, Series, EXPANSION_CAP};

use crate::error::{Error, Result};
use crate::exponents::{Depth, Monomial, PlainMonomial};
use crate::rational::{factorial, q, Q};

/// Series with finite support over plain monomials `t^γ`.
pub type FiniteSeries = Series<PlainMonomial, Q>;

/// A formal power series `Σ_ν c_ν X^ν` in finitely many variables.
#[derive(Clone)]
pub struct PowerSeries<C: CoefficientField = Q> {
    pub vars: usize,
    coeff: Arc<dyn Fn(&[u32]) -> C + Send + Sync>,
}

impl<C: CoefficientField> PowerSeries<C> {
    pub fn new(vars: usize, coeff: impl Fn(&[u32]) -> C + Send + Sync + 'static) -> Self {
        PowerSeries { vars, coeff: Arc::new(coeff) }
    }

    pub fn coeff(&self, nu: &[u32]) -> C {
        (self.coeff)(nu)
    }

    /// `Σ Xⁿ`.
    pub fn geometric() -> Self {
        Self::new(1, |_| C::one())
    }

    /// `Σ Xⁿ / n!`.
    pub fn exp() -> Self {
        Self::new(1, |nu| C::from_q(&factorial(nu[0]).recip()))
    }

    /// `Σ_{n≥1} (-1)^{n+1} Xⁿ / n`.
    pub fn log_one_plus() -> Self {
        Self::new(1, |nu| match nu[0] {
            0 => C::zero(),
            n => C::from_q(&q(if n % 2 == 1 { 1 } else { -1 }, n as i64)),
        })
    }

    /// `Σ aᵢ Xᵢ`.
    pub fn linear(a: Vec<C>) -> Self {
        let n = a.len();
        Self::new(n, move |nu| {
            let total: u32 = nu.iter().sum();
            if total != 1 {
                return C::zero();
            }
            let i = nu.iter().position(|&k| k == 1).unwrap();
            a[i].clone()
        })
    }
}

/// `F(ε₁, …, ε_k)` summed over every multi-index with a term `≽ cutoff`.
pub fn substitute<M: Monomial, C: CoefficientField>(
    f: &PowerSeries<C>,
    eps: &[Series<M, C>],
    cutoff: &M,
) -> Result<Series<M, C>> {
    if eps.len() != f.vars {
        return Err(Error::domain(format!("expected {} arguments, got {}", f.vars, eps.len())));
    }
    let ctx = cutoff.context();
    for e in eps {
        if *e.ctx() != ctx {
            return Err(Error::ContextMismatch("substitution argument from another context".into()));
        }
        if !e.is_small() {
            return Err(Error::domain("substitution argument is not ≺ 1"));
        }
    }
    let leads: Vec<M> = eps.iter().filter_map(|e| e.dominant().cloned()).collect();
    if let Depth::Unbounded = M::word_depth(&leads, cutoff) {
        return Err(Error::domain("infinitely many multi-indices stay above the cutoff"));
    }
    let mut acc = Series::zero(&ctx);
    let mut nu = vec![0u32; f.vars];
    let mut visited = 0usize;
    walk(f, eps, cutoff, &mut nu, 0, Series::one(&ctx).above(cutoff), &mut acc, &mut visited)?;
    Ok(acc)
}

#[allow(clippy::too_many_arguments)]
fn walk<M: Monomial, C: CoefficientField>(
    f: &PowerSeries<C>,
    eps: &[Series<M, C>],
    cutoff: &M,
    nu: &mut Vec<u32>,
    start: usize,
    p: Series<M, C>,
    acc: &mut Series<M, C>,
    visited: &mut usize,
) -> Result<()> {
    if p.is_zero() {
        return Ok(());
    }
    *visited += 1;
    if *visited > EXPANSION_CAP * 4 {
        return Err(Error::budget("substitution did not terminate above the cutoff"));
    }
    let c = f.coeff(nu);
    if !c.is_zero() {
        *acc = acc.add(&p.scale(&c));
    }
    for i in start..eps.len() {
        if eps[i].is_zero() {
            continue;
        }
        nu[i] += 1;
        let next = p.mul_cut(&eps[i], cutoff);
        walk(f, eps, cutoff, nu, i, next, acc, visited)?;
        nu[i] -= 1;
    }
    Ok(())
}

/// An indexed family of series.
pub enum Family<M: Monomial, C: CoefficientField = Q> {
    Finite(Vec<Series<M, C>>),
    /// Members `base · stepⁿ` for `n ≥ 0`.
    Powers { base: Series<M, C>, step: Series<M, C> },
}

/// Coefficientwise sum of a summable family, restricted to `≽ cutoff`.
pub fn sum_family<M: Monomial, C: CoefficientField>(fam: &Family<M, C>, cutoff: &M) -> Result<Series<M, C>> {
    let ctx = cutoff.context();
    match fam {
        Family::Finite(v) => {
            let mut acc = Series::zero(&ctx);
            for s in v {
                acc = acc.try_add(&s.above(cutoff))?;
            }
            Ok(acc)
        }
        Family::Powers { base, step } => {
            base.check_ctx(step)?;
            let Some(bd) = base.dominant() else { return Ok(Series::zero(&ctx)) };
            if step.is_zero() {
                return Ok(base.above(cutoff));
            }
            if !step.is_small() {
                return Err(Error::NotSummable(format!("{:?} is hit by infinitely many members", bd)));
            }
            let geo = step.power_sum(|_| C::one(), &cutoff.div(bd)).map_err(|e| match e {
                Error::Domain(m) => Error::NotSummable(m),
                e => e,
            })?;
            Ok(base.mul_cut(&geo, cutoff))
        }
    }
}
