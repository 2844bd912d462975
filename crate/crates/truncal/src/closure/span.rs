use std::collections::BTreeMap;

use num_traits::One;

use crate::rational::Q;
use crate::texp::{TSeries, TransMonomial};

/// Exact row-echelon basis of a ℚ-span of series, viewed as sparse vectors
/// indexed by monomials. Each basis vector is normalized at its leading monomial.
#[derive(Clone, Debug, Default)]
pub struct Span {
    rows: BTreeMap<TransMonomial, TSeries>,
}

impl Span {
    pub fn new() -> Self {
        Span::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// The remainder of `v` after elimination; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &TSeries) -> TSeries {
        let mut r = v.clone();
        let mut done = TSeries::zero(&());
        while let Some((m, c)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            match self.rows.get(&m) {
                Some(row) => r = r.sub(&row.scale(&c)),
                None => {
                    // Keep the unmatched term aside and continue below it.
                    done.add_term(m.clone(), c.clone());
                    r.add_term(m, -c);
                }
            }
        }
        done
    }

    pub fn contains(&self, v: &TSeries) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &TSeries) -> bool {
        let r = self.reduce(v);
        let Some((m, c)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) else { return false };
        let row = r.scale(&(Q::one() / c));
        self.rows.insert(m, row);
        true
    }
}
