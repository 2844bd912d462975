//! Supported operators, Neumann inversion and derivations induced by c-maps.

mod derivation;
mod gnm;

use std::collections::BTreeSet;
use std::sync::Arc;

pub use derivation::{derive, log_derivative, DerivationSpec, Derivation};
pub use gnm::{a_d_power, gnm_expansion, gnm_polynomial, gnm_table, solve_linear, solve_linear_gnm, DiffPoly};

use crate::error::{Error, Result};
use crate::exponents::{Depth, GridDescriptor, Monomial, PlainMonomial};
use crate::hahn::{CoefficientField, GridSeries, Series, EXPANSION_CAP};
use crate::rational::Q;

/// Declared support of an operator.
#[derive(Clone, Debug)]
pub enum Support<M: Monomial> {
    Monomials(BTreeSet<M>),
    Grid(GridDescriptor<M>),
    /// Every output monomial lies strictly below the dominant input monomial.
    Infinitesimal,
    /// Nothing declared; no containment check is possible.
    Any,
}

impl<M: Monomial> Support<M> {
    pub fn one(ctx: &M::Ctx) -> Self {
        Support::Monomials([M::one(ctx)].into_iter().collect())
    }

    pub fn is_small(&self) -> bool {
        match self {
            Support::Monomials(s) => s.iter().all(|m| m.is_small()),
            Support::Grid(g) => g.anchor.is_small(),
            Support::Infinitesimal => true,
            Support::Any => false,
        }
    }

    /// Largest monomial of the support, if it has one.
    pub fn top(&self) -> Option<M> {
        match self {
            Support::Monomials(s) => s.iter().next_back().cloned(),
            Support::Grid(g) => Some(g.anchor.clone()),
            _ => None,
        }
    }

    /// Support of `P ∘ Q` from the supports of `P` and `Q`.
    pub fn compose(&self, o: &Self) -> Self {
        match (self, o) {
            (Support::Monomials(a), Support::Monomials(b)) => {
                Support::Monomials(a.iter().flat_map(|x| b.iter().map(move |y| x.mul(y))).collect())
            }
            (Support::Grid(a), Support::Grid(b)) => Support::Grid(a.product(b)),
            (Support::Grid(g), Support::Monomials(s)) | (Support::Monomials(s), Support::Grid(g)) => {
                let mut out = g.clone();
                if s.len() == 1 {
                    out.anchor = out.anchor.mul(s.iter().next().unwrap());
                    Support::Grid(out)
                } else {
                    Support::Any
                }
            }
            (a, b) if a.is_small() && b.is_small() => Support::Infinitesimal,
            (Support::Infinitesimal, b) | (b, Support::Infinitesimal) if b.top().map_or(false, |m| !(m > M::one(&m.context()))) => {
                Support::Infinitesimal
            }
            _ => Support::Any,
        }
    }

    /// Checks `supp out ⊆ support · supp input`.
    pub fn check(&self, input: &Series<M, impl CoefficientField>, out: &Series<M, impl CoefficientField>) -> Result<()> {
        let ins = input.support();
        for m in out.support() {
            let ok = match self {
                Support::Any => true,
                Support::Infinitesimal => input.dominant().map_or(false, |d| m < *d),
                Support::Monomials(s) => ins.iter().any(|n| s.contains(&m.div(n))),
                Support::Grid(g) => {
                    let mut found = false;
                    for n in &ins {
                        if g.contains(&m.div(n))? {
                            found = true;
                            break;
                        }
                    }
                    found
                }
            };
            if !ok {
                return Err(Error::ContractViolation(format!("output monomial {:?} escapes the declared support", m)));
            }
        }
        Ok(())
    }
}

type Action<M, C> = Arc<dyn Fn(&Series<M, C>, &M) -> Result<Series<M, C>> + Send + Sync>;

/// An additive series operator with a declared support.
///
/// The action receives the input and the cutoff, and returns all output terms
/// `≽ cutoff`.
#[derive(Clone)]
pub struct SupportedOperator<M: Monomial, C: CoefficientField = Q> {
    action: Action<M, C>,
    pub support: Support<M>,
}

impl<M: Monomial, C: CoefficientField> SupportedOperator<M, C> {
    pub fn new(
        support: Support<M>,
        action: impl Fn(&Series<M, C>, &M) -> Result<Series<M, C>> + Send + Sync + 'static,
    ) -> Self {
        SupportedOperator { action: Arc::new(action), support }
    }

    pub fn identity(ctx: &M::Ctx) -> Self {
        Self::new(Support::one(ctx), |f, c| Ok(f.above(c)))
    }

    pub fn null() -> Self {
        Self::new(Support::Monomials(BTreeSet::new()), |f, _| Ok(Series::zero(f.ctx())))
    }

    /// Multiplication by a fixed series.
    pub fn multiplication(a: Series<M, C>) -> Self {
        let support = Support::Monomials(a.support().into_iter().collect());
        Self::new(support, move |f, c| {
            f.check_ctx(&a)?;
            let Some(d) = f.dominant() else { return Ok(f.clone()) };
            Ok(a.mul_cut(&f.above(&c.div(a.dominant().unwrap_or(d))), c))
        })
    }

    /// The derivation as an operator.
    pub fn derivation<D: Derivation<M, C> + Clone + 'static>(d: D) -> Self {
        let support = match d.growth() {
            Some(g) if g.is_one() => Support::one(&g.context()),
            _ => Support::Any,
        };
        Self::new(support, move |f, c| derive(&d, f, c))
    }

    pub fn is_small(&self) -> bool {
        self.support.is_small()
    }

    /// Applies without the containment check.
    pub fn raw(&self, f: &Series<M, C>, cutoff: &M) -> Result<Series<M, C>> {
        (self.action)(f, cutoff)
    }

    pub fn apply(&self, f: &Series<M, C>, cutoff: &M) -> Result<Series<M, C>> {
        if *f.ctx() != cutoff.context() {
            return Err(Error::ContextMismatch("cutoff from another context".into()));
        }
        let out = self.raw(f, cutoff)?;
        self.support.check(f, &out)?;
        Ok(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let (p, q) = (self.clone(), other.clone());
        let support = self.support.compose(&other.support);
        // Inner results must keep terms that P can lift back above the cutoff.
        let lift = self.support.top();
        Self::new(support, move |f, c| {
            let inner_cut = match &lift {
                Some(t) if *t > M::one(&t.context()) => c.div(t),
                _ => c.clone(),
            };
            let g = q.raw(f, &inner_cut)?;
            p.raw(&g, c)
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let (p, q) = (self.clone(), other.clone());
        let support = match (&self.support, &other.support) {
            (Support::Monomials(a), Support::Monomials(b)) => Support::Monomials(a.union(b).cloned().collect()),
            (a, b) if a.is_small() && b.is_small() => Support::Infinitesimal,
            _ => Support::Any,
        };
        Self::new(support, move |f, c| Ok(p.raw(f, c)?.add(&q.raw(f, c)?)))
    }

    /// `a · P`.
    pub fn premultiply(&self, a: Series<M, C>) -> Self {
        SupportedOperator::multiplication(a).compose(self)
    }
}

impl SupportedOperator<PlainMonomial, Q> {
    /// Applies to a lazy grid series by materializing exactly the inputs that
    /// can reach the cutoff.
    pub fn apply_grid(&self, g: &GridSeries, cutoff: &PlainMonomial) -> Result<crate::hahn::FiniteSeries> {
        let top = self
            .support
            .top()
            .ok_or_else(|| Error::NotSummable("no support bound, the termwise family is not known to be summable".into()))?;
        let input = g.materialize(&cutoff.div(&top))?;
        self.apply(&input, cutoff)
    }
}

/// Builds the strong operator extending a coefficient-monomial action.
pub fn operator_from_monomial_action<M: Monomial, C: CoefficientField>(
    phi: impl Fn(&C, &M) -> Series<M, C> + Send + Sync + 'static,
    support: Support<M>,
) -> SupportedOperator<M, C> {
    SupportedOperator::new(support, move |f, c| {
        let mut acc = Series::zero(f.ctx());
        for (m, a) in f.iter() {
            acc = acc.add(&phi(a, m).above(c));
        }
        Ok(acc)
    })
}

/// `(I - P)⁻¹ f = Σₙ Pⁿ f` up to `cutoff`, for a small `P`.
pub fn neumann_inverse<M: Monomial, C: CoefficientField>(
    p: &SupportedOperator<M, C>,
    f: &Series<M, C>,
    cutoff: &M,
) -> Result<Series<M, C>> {
    if !p.is_small() {
        return Err(Error::NotSmall(format!("declared support {:?}", p.support)));
    }
    let Some(d) = f.dominant() else { return Ok(f.clone()) };
    let bound = match &p.support {
        Support::Grid(g) => {
            let mut ratios = g.ratios.clone();
            ratios.push(g.anchor.clone());
            M::word_depth(&ratios, &cutoff.div(d))
        }
        Support::Monomials(s) => M::word_depth(&s.iter().cloned().collect::<Vec<_>>(), &cutoff.div(d)),
        _ => Depth::Unknown,
    };
    let limit = match bound {
        Depth::Unbounded => return Err(Error::domain("Neumann series has infinitely many terms above the cutoff")),
        Depth::Bounded(n) => n + 1,
        Depth::Unknown => EXPANSION_CAP,
    };
    let mut acc = Series::zero(f.ctx());
    let mut term = f.above(cutoff);
    for _ in 0..limit {
        if term.is_zero() {
            return Ok(acc);
        }
        acc = acc.add(&term);
        term = p.apply(&term, cutoff)?;
    }
    if term.is_zero() {
        Ok(acc)
    } else if let Depth::Bounded(_) = bound {
        Err(Error::ContractViolation("Neumann terms outlived the grid depth bound".into()))
    } else {
        Err(Error::budget("Neumann series did not terminate above the cutoff"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponents::Basis;
    use crate::hahn::FiniteSeries;
    use crate::rational::qi;

    fn b() -> Basis {
        Basis::single("t")
    }
    fn t(e: i64) -> PlainMonomial {
        PlainMonomial::from_ints(&b(), &[e])
    }
    fn s(terms: &[(i64, i64)]) -> FiniteSeries {
        FiniteSeries::from_terms(&b(), terms.iter().map(|&(c, e)| (t(e), qi(c))))
    }
    fn mult_t() -> SupportedOperator<PlainMonomial> {
        SupportedOperator::multiplication(s(&[(1, 1)]))
    }

    #[test]
    fn apply_examples() {
        let f = s(&[(1, 0), (3, 2)]);
        assert_eq!(SupportedOperator::identity(&b()).apply(&f, &t(5)).unwrap(), f);
        assert_eq!(mult_t().apply(&s(&[(1, 0), (1, 1)]), &t(5)).unwrap(), s(&[(1, 1), (1, 2)]));
        let d = SupportedOperator::derivation(DerivationSpec::new(&b(), vec![qi(1)]));
        assert_eq!(d.apply(&s(&[(1, 2)]), &t(5)).unwrap(), s(&[(2, 2)]));
    }

    #[test]
    fn containment_is_enforced() {
        let liar = SupportedOperator::new(Support::one(&b()), |f: &FiniteSeries, _| Ok(f.mul_monomial(&t(1))));
        assert!(matches!(liar.apply(&s(&[(1, 0)]), &t(3)), Err(Error::ContractViolation(_))));
    }

    #[test]
    fn neumann_examples() {
        assert_eq!(neumann_inverse(&mult_t(), &s(&[(1, 0)]), &t(3)).unwrap(), s(&[(1, 0), (1, 1), (1, 2), (1, 3)]));
        let f = s(&[(2, 0), (1, 5)]);
        assert_eq!(neumann_inverse(&SupportedOperator::null(), &f, &t(9)).unwrap(), f);
        assert!(matches!(
            neumann_inverse(&SupportedOperator::identity(&b()), &f, &t(3)),
            Err(Error::NotSmall(_))
        ));
    }

    /// Oracle: (I - t∂)(y) - f vanishes above t⁴.
    #[test]
    fn neumann_t_derivation() {
        let spec = DerivationSpec::new(&b(), vec![qi(1)]);
        let p = SupportedOperator::derivation(spec.clone()).premultiply(s(&[(1, 1)]));
        assert!(p.is_small());
        let f = s(&[(1, 1)]);
        let y = neumann_inverse(&p, &f, &t(4)).unwrap();
        let residual = y.sub(&p.apply(&y, &t(4)).unwrap()).sub(&f);
        assert!(residual.above(&t(4)).is_zero());
        assert_eq!(y, s(&[(1, 1), (1, 2), (2, 3), (6, 4)]));
    }

    #[test]
    fn monomial_action_examples() {
        let spec = DerivationSpec::new(&b(), vec![qi(1)]);
        let sp = spec.clone();
        let op = operator_from_monomial_action(
            move |c: &Q, m: &PlainMonomial| FiniteSeries::term(c.clone() * sp.c(m), m.clone()),
            Support::one(&b()),
        );
        let f = s(&[(1, -1), (4, 2), (1, 3)]);
        assert_eq!(op.apply(&f, &t(6)).unwrap(), derive(&spec, &f, &t(6)).unwrap());
        let zero = operator_from_monomial_action(|_: &Q, m: &PlainMonomial| FiniteSeries::zero(&m.basis), Support::Monomials(BTreeSet::new()));
        assert!(zero.apply(&f, &t(6)).unwrap().is_zero());
        let shift = operator_from_monomial_action(
            |c: &Q, m: &PlainMonomial| FiniteSeries::term(c.clone(), m.mul(&t(1))),
            Support::Monomials([t(1)].into_iter().collect()),
        );
        let geo = GridSeries::new(GridDescriptor::new(t(0), vec![t(1)]).unwrap(), |_| qi(1));
        assert_eq!(shift.apply_grid(&geo, &t(4)).unwrap(), s(&[(1, 1), (1, 2), (1, 3), (1, 4)]));
        let unbounded = operator_from_monomial_action(|c: &Q, _: &PlainMonomial| FiniteSeries::constant(&b(), c.clone()), Support::Any);
        assert!(matches!(unbounded.apply_grid(&geo, &t(4)), Err(Error::NotSummable(_))));
    }

    #[test]
    fn composition_support_is_product_grid() {
        let g1 = GridDescriptor::new(t(1), vec![t(2)]).unwrap();
        let g2 = GridDescriptor::new(t(1), vec![t(3)]).unwrap();
        let s = Support::Grid(g1.clone()).compose(&Support::Grid(g2.clone()));
        match s {
            Support::Grid(g) => assert_eq!(g, g1.product(&g2)),
            _ => panic!("expected a grid"),
        }
    }
}
