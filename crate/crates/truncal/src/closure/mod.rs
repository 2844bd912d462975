//! Truncation-closed subfields presented by finitely many generators, and
//! the extension steps that keep them truncation closed.

mod span;
mod verify;

use std::fmt;

pub use span::Span;
pub use verify::{verify_truncation_closed, VerificationFailure, VerificationReport};

use crate::error::{Error, Result};
use crate::exponents::Monomial;
use crate::operators::solve_linear;
use crate::rational::{q, qi, Q};
use crate::texp::{
    antiderivative, derive_exact, texp_exp, SplitReport, TSeries, TowerConfig, TowerDerivation, TransMonomial,
    Transseries,
};

/// What the generators generate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    Ring,
    Field,
    DifferentialField,
}

/// Limits shared by every closure step.
#[derive(Clone, Debug)]
pub struct ClosureBudget {
    /// Infinite results are materialized down to this monomial.
    pub cutoff: Transseries,
    pub max_generators: usize,
    pub max_depth: u32,
    pub max_height: u32,
    pub max_solver_calls: usize,
    /// Passes of the derivative and Liouville schedules.
    pub rounds: u32,
    /// Degree of the monomial words spanning the verification space.
    pub verify_degree: u32,
    pub verify_samples: usize,
    /// `n` for the monomial roots adjoined by [`liouville_close`]; 1 disables them.
    pub root_degree: u32,
}

impl ClosureBudget {
    pub fn new(cutoff: Transseries) -> Self {
        ClosureBudget {
            cutoff,
            max_generators: 200,
            max_depth: 3,
            max_height: 3,
            max_solver_calls: 200,
            rounds: 1,
            verify_degree: 2,
            verify_samples: 60,
            root_degree: 1,
        }
    }

    pub fn tower(&self) -> TowerConfig {
        TowerConfig { max_height: self.max_height, max_depth: self.max_depth }
    }
}

/// A finite generator list together with what it is meant to generate.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    generators: Vec<Transseries>,
    pub kind: Kind,
    pub tower: TowerConfig,
    pub truncation_closed: bool,
    /// One line per extension step applied.
    pub history: Vec<String>,
}

impl GeneratorSet {
    pub fn new(kind: Kind, tower: TowerConfig, generators: impl IntoIterator<Item = Transseries>) -> Self {
        let mut e = GeneratorSet { generators: Vec::new(), kind, tower, truncation_closed: false, history: Vec::new() };
        for g in generators {
            if !g.is_zero() && !e.generators.contains(&g) {
                e.generators.push(g);
            }
        }
        e
    }

    pub fn generators(&self) -> &[Transseries] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, g: &Transseries) -> bool {
        g.is_zero() || self.generators.contains(g)
    }

    /// Adds a generator; returns whether it was new.
    pub fn adjoin(&mut self, g: Transseries, b: &ClosureBudget) -> Result<bool> {
        if self.contains(&g) {
            return Ok(false);
        }
        if self.generators.len() >= b.max_generators {
            return Err(Error::budget(format!("more than {} generators", b.max_generators)));
        }
        self.generators.push(g);
        self.truncation_closed = false;
        Ok(true)
    }

    /// Least depth at which every generator has a body.
    pub fn depth(&self) -> u32 {
        self.generators.iter().map(|g| g.depth()).max().unwrap_or(0)
    }

    /// The support monomials of the generators, plus `1`.
    pub fn monomials(&self) -> Vec<Transseries> {
        let mut out = vec![Transseries::one()];
        for g in &self.generators {
            for m in g.support() {
                if !out.contains(&m) {
                    out.push(m);
                }
            }
        }
        out
    }

    /// The divisible hull of [`monomials`](Self::monomials) as a ℚ-span at depth `n`.
    fn hull(&self, n: u32) -> Span {
        let mut s = Span::new();
        for m in self.monomials() {
            s.insert(&log_vector(&m.monomial_at(n).expect("support element")));
        }
        s
    }

    /// Whether `m` lies in the divisible hull of the recorded monomials.
    pub fn hull_contains(&self, m: &Transseries) -> Result<bool> {
        let n = self.depth().max(m.depth());
        Ok(self.hull(n).contains(&log_vector(&m.monomial_at(n)?)))
    }

    /// Equality of divisible monomial hulls.
    pub fn same_monomials(&self, o: &GeneratorSet) -> bool {
        let n = self.depth().max(o.depth());
        let (a, b) = (self.hull(n), o.hull(n));
        a.dim() == b.dim() && o.monomials().iter().all(|m| a.contains(&log_vector(&m.monomial_at(n).unwrap())))
    }

    /// Splitting of the monomial group, tested modulo its divisible hull.
    pub fn splits(&self) -> SplitReport {
        let n = self.depth();
        let hull = self.hull(n);
        for m in self.monomials() {
            for factor in m.monomial_at(n).unwrap().level_factors() {
                if !hull.contains(&log_vector(&factor)) {
                    let witness = Transseries::new(n, TSeries::monomial(factor));
                    return SplitReport { splits: false, witness: Some(witness) };
                }
            }
        }
        SplitReport { splits: true, witness: None }
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "{{{}}}", gens.join(", "))
    }
}

/// `x^q e^a ↦ a + q`, an injective group morphism into the additive group of series.
fn log_vector(m: &TransMonomial) -> TSeries {
    let mut v = m.exp_part().clone();
    v.add_term(TransMonomial::one(&()), m.q().clone());
    v
}

fn require_closed(e: &GeneratorSet, op: &str) -> Result<()> {
    if e.truncation_closed {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{op} needs a truncation closed generator set")))
    }
}

fn check_verified(e: &GeneratorSet, b: &ClosureBudget) -> Result<()> {
    let r = verify_truncation_closed(e, b, b.verify_samples);
    match r.failures.first() {
        None => Ok(()),
        Some(f) => Err(Error::Verification(format!("{} truncations of {} fail: {}", r.failures.len(), f.element, f.reason))),
    }
}

/// Adjoins every truncation of every generator.
pub fn truncation_closure(e: &GeneratorSet, b: &ClosureBudget) -> Result<GeneratorSet> {
    let mut out = e.clone();
    let mut i = 0;
    while i < out.generators.len() {
        for t in out.generators[i].truncations() {
            out.adjoin(t, b)?;
        }
        i += 1;
    }
    let added = out.len() - e.len();
    out.truncation_closed = true;
    out.history.push(format!("truncation closure: {added} new"));
    Ok(out)
}

/// Adjoins derivatives of generators for `b.rounds` passes, keeping the set truncation closed.
/// Refuses when the monomial group does not split.
pub fn differential_closure(e: &GeneratorSet, b: &ClosureBudget) -> Result<GeneratorSet> {
    require_closed(e, "differential closure")?;
    let s = e.splits();
    if !s.splits {
        let w = s.witness.unwrap();
        return Err(Error::Precondition(format!(
            "monomials do not split (witness: {w}); the generated differential field need not be truncation closed"
        )));
    }
    let mut out = e.clone();
    for round in 0..b.rounds {
        let before = out.len();
        for g in out.generators.clone() {
            out.adjoin(derive_exact(&g), b)?;
        }
        out = truncation_closure(&out, b)?;
        out.history.push(format!("derivatives, pass {}: {} new", round + 1, out.len() - before));
        if out.len() == before {
            break;
        }
    }
    out.kind = Kind::DifferentialField;
    check_verified(&out, b)?;
    Ok(out)
}

/// For each generator `L + c + ε`, adjoins `exp ε` at the cutoff and the monomial `e^L`
/// when it fits the height budget.
pub fn exp_closure(e: &GeneratorSet, b: &ClosureBudget) -> Result<GeneratorSet> {
    require_closed(e, "exp closure")?;
    let mut out = e.clone();
    let cfg = b.tower();
    let before = out.len();
    for g in e.generators.clone() {
        let (large, _, small) = g.decompose();
        if !small.is_zero() {
            out.adjoin(texp_exp(&small, &b.cutoff, &cfg)?, b)?;
        }
        if !large.is_zero() {
            let m = Transseries::new(large.depth(), TSeries::monomial(TransMonomial::exp_of(large.body().clone())));
            if m.height() <= b.max_height {
                out.adjoin(m, b)?;
            } else {
                out.history.push(format!("exp({large}) skipped: height budget"));
            }
        }
    }
    out.history.push(format!("exp closure: {} new", out.len() - before));
    let out = truncation_closure(&out, b)?;
    check_splitting(&out)?;
    check_verified(&out, b)?;
    Ok(out)
}

fn check_splitting(e: &GeneratorSet) -> Result<()> {
    let s = e.splits();
    if s.splits {
        Ok(())
    } else {
        Err(Error::Verification(format!("splitting lost (witness: {})", s.witness.unwrap())))
    }
}

/// Adjoins `y = (I - a∂)⁻¹ f` and its truncations.
pub fn adjoin_solution(e: &GeneratorSet, a: &Transseries, f: &Transseries, b: &ClosureBudget) -> Result<GeneratorSet> {
    if !a.is_small() {
        return Err(Error::NotSmall(format!("{a} is not infinitesimal")));
    }
    let n = e.depth().max(a.depth()).max(f.depth()).max(b.cutoff.depth());
    let d = TowerDerivation { depth: n };
    let body_a = a.body_at(n);
    for m in e.monomials().iter().chain(f.support().iter()) {
        let c = crate::texp::cmap0(&m.monomial_at(n)?).mul_monomial(&crate::texp::frak_e(n).inv());
        if !c.mul(&body_a).is_small() {
            return Err(Error::Precondition(format!("a∂ is not contracting at {m}")));
        }
    }
    let y = solve_linear(&body_a, &f.body_at(n), &d, &b.cutoff.monomial_at(n)?)?;
    let y = Transseries::new(n, y);
    let mut out = e.clone();
    out.adjoin(y.clone(), b)?;
    out.history.push(format!("solution {y} adjoined"));
    let out = truncation_closure(&out, b)?;
    if !out.same_monomials(e) {
        return Err(Error::ContractViolation("solution leaves the monomial group".into()));
    }
    check_verified(&out, b)?;
    Ok(out)
}

/// Bounded Liouville closure: per round, derivatives, monomial roots, exponentials
/// and antiderivatives, each followed by truncation closure.
pub fn liouville_close(k: &GeneratorSet, b: &ClosureBudget) -> Result<GeneratorSet> {
    require_closed(k, "Liouville closure")?;
    if k.kind != Kind::DifferentialField {
        return Err(Error::Precondition("Liouville closure needs a differential field".into()));
    }
    let s = k.splits();
    if !s.splits {
        return Err(Error::Precondition(format!("monomials do not split (witness: {})", s.witness.unwrap())));
    }
    let cfg = b.tower();
    let mut solver_calls = 0;
    let mut out = k.clone();
    for round in 0..b.rounds {
        let mut start = out.generators.clone();
        if out.kind >= Kind::Field {
            start.insert(0, Transseries::one());
        }
        if b.root_degree > 1 {
            let r = q(1, b.root_degree as i64);
            for m in out.monomials() {
                if !m.is_zero() && m != Transseries::one() {
                    out.adjoin(m.monomial_pow(&r)?, b)?;
                }
            }
            out = truncation_closure(&out, b)?;
        }
        out = exp_closure(&out, b)?;
        for f in &start {
            solver_calls += 1;
            if solver_calls > b.max_solver_calls {
                return Err(Error::budget(format!("more than {} solver calls", b.max_solver_calls)));
            }
            match antiderivative(f, &b.cutoff, &cfg) {
                Ok(g) if !g.is_zero() => {
                    out.adjoin(g, b)?;
                }
                Ok(_) => {}
                Err(Error::Budget(msg)) => out.history.push(format!("integral of {f} skipped: {msg}")),
                Err(err) => return Err(err),
            }
        }
        out = truncation_closure(&out, b)?;
        out.history.push(format!("Liouville pass {}: {} generators", round + 1, out.len()));
    }
    out.kind = Kind::DifferentialField;
    check_splitting(&out)?;
    check_verified(&out, b)?;
    Ok(out)
}

/// `t^a + t^b`; for `a ≠ b` the field it generates is not truncation closed.
pub fn two_term_example(a: Q, b: Q) -> Transseries {
    let t = |e: Q| Transseries::monomial(TransMonomial::x_pow(-e));
    t(a).add(&t(b))
}

/// `exp(Σ x^αᵢ + Σ x^βⱼ)`: its logarithmic derivative splits as `g + h` with `g` and `h`
/// supported on the α and β exponents.
pub fn two_grid_monomial(alpha: &[Q], beta: &[Q]) -> Transseries {
    let mut a = TSeries::zero(&());
    for e in alpha.iter().chain(beta) {
        a.add_term(TransMonomial::x_pow(e.clone()), qi(1));
    }
    Transseries::monomial(TransMonomial::exp_of(a))
}

#[cfg(test)]
mod tests;
