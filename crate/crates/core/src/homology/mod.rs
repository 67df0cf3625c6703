//! Mod-p group homology from minimal free resolutions, induced maps by
//! chain-map lifting, and bar-complex computations (mod p and integral) that
//! serve as an independent check.

mod bar;
mod chain_map;
mod integral;
mod resolution;

use std::sync::Arc;

pub use bar::{bar_boundary, bar_dimension, bar_homology_fp};
pub use chain_map::{induced_map, ChainMap, InducedHomologyMap};
pub use integral::{induced_triple, integral_homology, integral_induced_triple, IntegralHomology, InvariantTriple};
pub use resolution::MinimalResolution;

use crate::config::Budget;
use crate::error::Result;
use crate::group::FiniteGroup;

/// The prime to compute with: the group's prime, or 2 for the trivial group.
pub fn default_prime(g: &FiniteGroup) -> u8 {
    g.prime().map_or(2, |p| p as u8)
}

/// `dim H_n(G, F_p)` for `n = 0..=max_degree`.
pub fn homology_dims(g: &Arc<FiniteGroup>, p: u8, max_degree: usize, budget: Budget) -> Result<Vec<usize>> {
    Ok(MinimalResolution::compute(g.clone(), p, max_degree, budget)?.ranks().to_vec())
}

/// `dim H_n(G, F_p)` predicted by the universal coefficient theorem from
/// integral homology in degrees `n` and `n - 1`.
pub fn universal_coefficients(p: u64, h_n: &IntegralHomology, h_prev: Option<&IntegralHomology>) -> usize {
    let count = |h: &IntegralHomology| h.invariants.iter().filter(|&&d| d == 0 || d % p == 0).count();
    let tor = h_prev.map_or(0, |h| h.torsion().iter().filter(|&&d| d % p == 0).count());
    count(h_n) + tor
}
