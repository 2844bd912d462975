use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exponents::Monomial;
use crate::hahn::{CoefficientField, Series, EXPANSION_CAP};
use crate::operators::derivation::{derive, Derivation};
use crate::operators::{neumann_inverse, Support, SupportedOperator};
use crate::rational::{fmt_q, qi, Q};

/// A differential polynomial in one indeterminate `X` with rational coefficients.
///
/// Keys list the multiplicities of `X, X', X'', …` with trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct DiffPoly {
    terms: BTreeMap<Vec<u32>, Q>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly::default()
    }

    pub fn x() -> Self {
        Self::monomial(vec![1], qi(1))
    }

    pub fn monomial(mut key: Vec<u32>, c: Q) -> Self {
        while key.last() == Some(&0) {
            key.pop();
        }
        let mut p = DiffPoly::zero();
        p.push(key, c);
        p
    }

    fn push(&mut self, key: Vec<u32>, c: Q) {
        let e = self.terms.entry(key).or_insert_with(|| qi(0));
        *e += c;
        self.terms.retain(|_, v| !num_traits::Zero::is_zero(v));
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Q)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.push(k.clone(), c.clone());
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = DiffPoly::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                let n = k1.len().max(k2.len());
                let key = (0..n).map(|i| k1.get(i).unwrap_or(&0) + k2.get(i).unwrap_or(&0)).collect();
                r.push(key, c1 * c2);
            }
        }
        r
    }

    /// Formal derivative with `(X^{(k)})' = X^{(k+1)}`.
    pub fn derivative(&self) -> Self {
        let mut r = DiffPoly::zero();
        for (k, c) in &self.terms {
            for i in 0..k.len() {
                if k[i] == 0 {
                    continue;
                }
                let mut key = k.clone();
                key[i] -= 1;
                if key.len() == i + 1 {
                    key.push(0);
                }
                key[i + 1] += 1;
                while key.last() == Some(&0) {
                    key.pop();
                }
                r.push(key, c * qi(k[i] as i64));
            }
        }
        r
    }

    /// Highest derivative order that occurs.
    pub fn order(&self) -> usize {
        self.terms.keys().map(|k| k.len().saturating_sub(1)).max().unwrap_or(0)
    }

    /// Evaluates at `X^{(k)} = derivs[k]`, keeping terms `≽ cutoff`.
    ///
    /// Every `derivs[k]` must be `≼ 1` for the cut products to be exact.
    pub fn eval<M: Monomial, C: CoefficientField>(&self, derivs: &[Series<M, C>], cutoff: &M) -> Series<M, C> {
        let ctx = cutoff.context();
        let mut acc = Series::zero(&ctx);
        for (k, c) in &self.terms {
            let mut p = Series::one(&ctx);
            for (i, &e) in k.iter().enumerate() {
                for _ in 0..e {
                    p = p.mul_cut(&derivs[i], cutoff);
                }
            }
            acc = acc.add(&p.scale(&C::from_q(c)));
        }
        acc
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (i, &e) in k.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = format!("X{}", "'".repeat(i));
                factors.push(if e == 1 { base } else { format!("{base}^{e}") });
            }
            let mon = factors.join("*");
            parts.push((fmt_q(c), mon));
        }
        write!(f, "{}", crate::hahn::join_terms(&parts))
    }
}

impl fmt::Debug for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Rows `G^n_0 … G^n_n` for `n = 0..=n_max`.
pub fn gnm_table(n_max: usize) -> Vec<Vec<DiffPoly>> {
    let mut table = vec![vec![DiffPoly::monomial(vec![], qi(1))]];
    if n_max == 0 {
        return table;
    }
    table.push(vec![DiffPoly::zero(), DiffPoly::x()]);
    for n in 1..n_max {
        let prev = &table[n];
        let mut row = vec![DiffPoly::zero()];
        for m in 1..=n + 1 {
            let d = prev.get(m).map(DiffPoly::derivative).unwrap_or_default();
            row.push(DiffPoly::x().mul(&d.add(&prev[m - 1])));
        }
        table.push(row);
    }
    table
}

/// `G^n_m`, defined for `n ≥ 1` and `0 ≤ m ≤ n`.
pub fn gnm_polynomial(n: usize, m: usize) -> Result<DiffPoly> {
    if n == 0 || m > n {
        return Err(Error::domain(format!("G^{n}_{m} is out of range")));
    }
    Ok(gnm_table(n).swap_remove(n).swap_remove(m))
}

/// `(a∂)ⁿ f` computed directly.
pub fn a_d_power<M: Monomial, C: CoefficientField, D: Derivation<M, C> + ?Sized>(
    a: &Series<M, C>,
    d: &D,
    f: &Series<M, C>,
    n: usize,
    cutoff: &M,
) -> Result<Series<M, C>> {
    let mut g = f.above(cutoff);
    for _ in 0..n {
        g = a.mul_cut(&derive(d, &g, cutoff)?, cutoff);
    }
    Ok(g)
}

fn derivatives<M: Monomial, C: CoefficientField, D: Derivation<M, C> + ?Sized>(
    d: &D,
    f: &Series<M, C>,
    count: usize,
    cutoff: &M,
) -> Result<Vec<Series<M, C>>> {
    let mut out = vec![f.above(cutoff)];
    for _ in 1..count {
        let next = derive(d, out.last().unwrap(), cutoff)?;
        out.push(next);
    }
    Ok(out)
}

fn require_unit_growth<M: Monomial, C: CoefficientField, D: Derivation<M, C> + ?Sized>(d: &D) -> Result<()> {
    match d.growth() {
        Some(g) if g.is_one() => Ok(()),
        _ => Err(Error::domain("the G^n_m expansion needs a derivation with ∂g ≼ g")),
    }
}

/// `Σ_{m=1..n} G^n_m(a) ∂ᵐ f`.
pub fn gnm_expansion<M: Monomial, C: CoefficientField, D: Derivation<M, C> + ?Sized>(
    a: &Series<M, C>,
    d: &D,
    f: &Series<M, C>,
    n: usize,
    cutoff: &M,
) -> Result<Series<M, C>> {
    require_unit_growth(d)?;
    let row = &gnm_table(n)[n];
    let mut acc = Series::zero(f.ctx());
    let Some(fd) = f.dominant() else { return Ok(acc) };
    let da = derivatives(d, a, n + 1, &cutoff.div(fd))?;
    let df = derivatives(d, f, n + 1, cutoff)?;
    for m in 1..=n {
        let Some(dm) = df[m].dominant() else { continue };
        acc = acc.add(&row[m].eval(&da, &cutoff.div(dm)).mul_cut(&df[m], cutoff));
    }
    Ok(acc)
}

fn check_solver_input<M: Monomial, C: CoefficientField>(a: &Series<M, C>, f: &Series<M, C>, cutoff: &M) -> Result<()> {
    a.check_ctx(f)?;
    if *f.ctx() != cutoff.context() {
        return Err(Error::ContextMismatch("cutoff from another context".into()));
    }
    if !a.is_small() {
        return Err(Error::domain("solve_linear needs a ≺ 1"));
    }
    Ok(())
}

/// `y = (I - a∂)⁻¹ f` through the double sum `f + Σ_n Σ_m G^n_m(a) ∂ᵐ f`,
/// taken block by block in `n` (the total grid depth in `a`).
pub fn solve_linear_gnm<M: Monomial, C: CoefficientField, D: Derivation<M, C> + ?Sized>(
    a: &Series<M, C>,
    f: &Series<M, C>,
    d: &D,
    cutoff: &M,
) -> Result<Series<M, C>> {
    check_solver_input(a, f, cutoff)?;
    require_unit_growth(d)?;
    let mut y = f.above(cutoff);
    let (Some(ad), Some(fd)) = (a.dominant(), f.dominant()) else { return Ok(y) };
    // Block n is ≼ 𝔡(a)ⁿ 𝔡(f); find the last block that can reach the cutoff.
    let mut n_max = 0;
    let mut bound = fd.clone();
    loop {
        bound = bound.mul(ad);
        if bound < *cutoff {
            break;
        }
        n_max += 1;
        if n_max > EXPANSION_CAP {
            return Err(Error::budget("G^n_m expansion did not terminate above the cutoff"));
        }
    }
    let table = gnm_table(n_max);
    let da = derivatives(d, a, n_max + 1, &cutoff.div(fd))?;
    let df = derivatives(d, f, n_max + 1, cutoff)?;
    for (n, row) in table.iter().enumerate().skip(1) {
        for m in 1..=n {
            if df[m].is_zero() {
                continue;
            }
            let inner = cutoff.div(df[m].dominant().unwrap());
            y = y.add(&row[m].eval(&da, &inner).mul_cut(&df[m], cutoff));
        }
    }
    Ok(y)
}

/// The unique `y` with `y - a∂y = f` up to `cutoff`.
///
/// The Neumann series of `a∂` is the answer; when the derivation satisfies
/// `∂g ≼ g`, the `G^n_m` double sum is evaluated as well and must agree.
pub fn solve_linear<M, C, D>(a: &Series<M, C>, f: &Series<M, C>, d: &D, cutoff: &M) -> Result<Series<M, C>>
where
    M: Monomial,
    C: CoefficientField,
    D: Derivation<M, C> + Clone + 'static,
{
    check_solver_input(a, f, cutoff)?;
    let support = match d.growth() {
        Some(g) => Support::Monomials(a.support().iter().map(|m| m.mul(&g)).collect()),
        None => Support::Infinitesimal,
    };
    let (aa, dd) = (a.clone(), d.clone());
    let p = SupportedOperator::new(support, move |g, c| Ok(aa.mul_cut(&derive(&dd, g, c)?, c)));
    let y = neumann_inverse(&p, f, cutoff)?;
    if matches!(d.growth(), Some(g) if g.is_one()) {
        let y2 = solve_linear_gnm(a, f, d, cutoff)?;
        if y2 != y {
            return Err(Error::Verification("Neumann and G^n_m solver paths disagree".into()));
        }
    }
    Ok(y)
}
