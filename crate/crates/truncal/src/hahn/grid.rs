use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::error::Result;
use crate::exponents::{enumerate_grid, GridDescriptor, PlainMonomial};
use crate::hahn::FiniteSeries;
use crate::rational::Q;

type Oracle = Arc<dyn Fn(&PlainMonomial) -> Q + Send + Sync>;

/// A lazily evaluated series supported on a grid.
///
/// Coefficients come from a deterministic oracle; materializations are cached
/// per cutoff.
#[derive(Clone)]
pub struct GridSeries {
    grid: GridDescriptor,
    oracle: Oracle,
    cache: Arc<Mutex<BTreeMap<PlainMonomial, FiniteSeries>>>,
}

impl GridSeries {
    pub fn new(grid: GridDescriptor, oracle: impl Fn(&PlainMonomial) -> Q + Send + Sync + 'static) -> Self {
        GridSeries { grid, oracle: Arc::new(oracle), cache: Arc::default() }
    }

    pub fn grid(&self) -> &GridDescriptor {
        &self.grid
    }

    pub fn coeff(&self, m: &PlainMonomial) -> Result<Q> {
        if self.grid.contains(m)? {
            Ok((self.oracle)(m))
        } else {
            Ok(num_traits::Zero::zero())
        }
    }

    /// All terms `≽ cutoff`.
    pub fn materialize(&self, cutoff: &PlainMonomial) -> Result<FiniteSeries> {
        if let Some(s) = self.cache.lock().unwrap().get(cutoff) {
            return Ok(s.clone());
        }
        let support = enumerate_grid(&self.grid, cutoff)?;
        let s = FiniteSeries::from_terms(&self.grid.anchor.basis, support.into_iter().map(|m| {
            let c = (self.oracle)(&m);
            (m, c)
        }));
        self.cache.lock().unwrap().insert(cutoff.clone(), s.clone());
        Ok(s)
    }
}

impl std::fmt::Debug for GridSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GridSeries({:?})", self.grid)
    }
}
