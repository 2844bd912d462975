use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exponents::{Basis, Monomial, PlainMonomial};
use crate::hahn::{CoefficientField, Series};
use crate::rational::Q;

/// A derivation determined by its values on monomials, `𝔪' = c(𝔪)·𝔪`.
pub trait Derivation<M: Monomial, C: CoefficientField>: Send + Sync {
    /// The logarithmic derivative `c(𝔪)` of a monomial.
    fn cmap(&self, m: &M) -> Result<Series<M, C>>;

    /// Derivation on coefficients; trivial by default.
    fn coeff_derivative(&self, _c: &C) -> C {
        C::zero()
    }

    fn trivial_base(&self) -> bool {
        true
    }

    /// A monomial `𝔟` with `∂g ≼ 𝔟·g` for every `g`, when one exists.
    fn growth(&self) -> Option<M> {
        None
    }
}

/// `∂f = Σ (∂f_𝔪 + f_𝔪 c(𝔪)) 𝔪`, restricted to `≽ cutoff`.
pub fn derive<M: Monomial, C: CoefficientField, D: Derivation<M, C> + ?Sized>(
    d: &D,
    f: &Series<M, C>,
    cutoff: &M,
) -> Result<Series<M, C>> {
    if *f.ctx() != cutoff.context() {
        return Err(Error::ContextMismatch("cutoff from another context".into()));
    }
    let mut acc = Series::zero(f.ctx());
    for (m, a) in f.iter() {
        if !d.trivial_base() {
            acc.add_term(m.clone(), d.coeff_derivative(a));
        }
        let cm = d.cmap(m)?;
        acc = acc.add(&cm.mul_monomial(m).scale(a).above(cutoff));
    }
    Ok(acc.above(cutoff))
}

/// `f† = ∂f / f` up to `cutoff`.
pub fn log_derivative<M: Monomial, C: CoefficientField, D: Derivation<M, C> + ?Sized>(
    d: &D,
    f: &Series<M, C>,
    cutoff: &M,
) -> Result<Series<M, C>> {
    let fd = f.dominant().ok_or_else(|| Error::domain("logarithmic derivative of 0"))?;
    let df = derive(d, f, &cutoff.mul(fd))?;
    df.divide(f, cutoff)
}

/// The c-map `c(t^γ) = Σ wᵢγᵢ` with constant values and trivial base derivation.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivationSpec {
    pub basis: Basis,
    pub weights: Vec<Q>,
}

impl DerivationSpec {
    pub fn new(basis: &Basis, weights: Vec<Q>) -> Self {
        assert_eq!(basis.rank(), weights.len(), "one weight per generator");
        DerivationSpec { basis: basis.clone(), weights }
    }

    pub fn c(&self, m: &PlainMonomial) -> Q {
        m.exp.coords.iter().zip(&self.weights).map(|(g, w)| g * w).sum()
    }

    /// Whether `∂f = 0` forces `f` to be constant: decided only for a trivial
    /// base derivation, where it amounts to `c` being injective.
    pub fn constants_are_trivial(&self) -> Option<bool> {
        Some(self.weights.len() == 1 && !Zero::is_zero(&self.weights[0]))
    }
}

impl Derivation<PlainMonomial, Q> for DerivationSpec {
    fn cmap(&self, m: &PlainMonomial) -> Result<Series<PlainMonomial, Q>> {
        if m.basis != self.basis {
            return Err(Error::ContextMismatch("derivation over another basis".into()));
        }
        Ok(Series::constant(&self.basis, self.c(m)))
    }

    fn growth(&self) -> Option<PlainMonomial> {
        Some(PlainMonomial::one(&self.basis))
    }
}
