use std::fmt;

use super::{ClosureBudget, GeneratorSet, Kind, Span};
use crate::exponents::Monomial;
use crate::texp::{TSeries, Transseries};

/// Words beyond this count are not generated.
const MAX_WORDS: usize = 20_000;

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationFailure {
    pub element: Transseries,
    pub truncation: Transseries,
    pub reason: String,
}

/// Outcome of the bounded span check. A failure is a truncation outside the span
/// of words of the configured degree; a pass is evidence, not proof.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub checked: usize,
    pub truncations_checked: usize,
    pub words: usize,
    pub span_dim: usize,
    pub failures: Vec<VerificationFailure>,
    pub incomplete: bool,
    /// Roots are adjoined only for monomials; no real closure is attempted.
    pub real_closure_partial: bool,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "passed (sound, incomplete)")?;
        } else {
            write!(f, "FAILED")?;
        }
        write!(
            f,
            ": {} elements, {} truncations, {} words spanning dimension {}",
            self.checked, self.truncations_checked, self.words, self.span_dim
        )?;
        for x in &self.failures {
            write!(f, "\n  {} truncated to {}: {}", x.element, x.truncation, x.reason)?;
        }
        Ok(())
    }
}

/// Multisets of `0..=degree` indices into `0..n`, in lexicographic order.
fn multisets(n: usize, degree: u32) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..degree {
        let mut next = Vec::new();
        for w in &frontier {
            let start = w.last().copied().unwrap_or(0);
            for i in start..n {
                let mut v: Vec<usize> = w.clone();
                v.push(i);
                next.push(v);
                if out.len() + next.len() >= MAX_WORDS {
                    out.extend(next);
                    return out;
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Tests, for sampled elements of the generated ring or field, that every truncation lies
/// in the span at the cutoff of the generator words of degree `b.verify_degree`.
pub fn verify_truncation_closed(e: &GeneratorSet, b: &ClosureBudget, samples: usize) -> VerificationReport {
    let n = e.depth().max(b.cutoff.depth());
    let cut = b.cutoff.monomial_at(n).expect("cutoff must be a monomial");
    let gens: Vec<TSeries> = e.generators().iter().map(|g| g.body_at(n)).collect();
    let deg = b.verify_degree.max(1);

    // Only monomial generators are inverted, so every word is a finite series.
    let mut pool: Vec<TSeries> = gens.clone();
    if e.kind >= Kind::Field {
        for g in gens.iter().filter(|g| g.is_monomial()) {
            pool.push(g.leading().map(|(m, c)| TSeries::term(c.recip(), m.inv())).unwrap());
        }
    }

    let mut span = Span::new();
    let words = multisets(pool.len(), deg);
    for w in &words {
        let word = w.iter().fold(TSeries::one(&()), |acc, &i| acc.mul(&pool[i]));
        span.insert(&word.above(&cut));
    }

    let mut cands: Vec<TSeries> = gens.clone();
    for inv in &pool[gens.len()..] {
        for g in &gens {
            cands.push(g.mul(inv));
        }
    }
    for (i, g) in gens.iter().enumerate() {
        for h in &gens[i..] {
            cands.push(g.mul(h));
        }
    }

    let mut report = VerificationReport {
        checked: 0,
        truncations_checked: 0,
        words: words.len(),
        span_dim: span.dim(),
        failures: Vec::new(),
        incomplete: true,
        real_closure_partial: true,
    };
    for s in cands.into_iter().take(samples) {
        let s = s.above(&cut);
        report.checked += 1;
        for m in s.support() {
            let t = s.truncate(&m);
            report.truncations_checked += 1;
            if !span.contains(&t) {
                report.failures.push(VerificationFailure {
                    element: Transseries::new(n, s.clone()),
                    truncation: Transseries::new(n, t),
                    reason: format!("not in the span of words of degree {deg}"),
                });
            }
        }
    }
    report
}
