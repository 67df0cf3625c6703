use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Budget;
use crate::error::Result;
use crate::group::{quotient_chain, FiniteGroup, Functor, QuotientChain};
use crate::homology::{induced_triple, integral_homology, IntegralHomology, InvariantTriple};

/// Upper triangular matrix of invariant triples for the maps
/// `H_n(Q_i, Z) -> H_n(Q_j, Z)`; entries below the diagonal are `None`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegralPersistenceMatrix {
    pub group: String,
    pub functor: Functor,
    pub degree: usize,
    #[serde(rename = "termOrders")]
    pub term_orders: Vec<usize>,
    pub matrix: Vec<Vec<Option<InvariantTriple>>>,
}

impl IntegralPersistenceMatrix {
    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    /// Entry `(i, j)`, one based.
    pub fn get(&self, i: usize, j: usize) -> Option<&InvariantTriple> {
        self.matrix.get(i.checked_sub(1)?)?.get(j.checked_sub(1)?)?.as_ref()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("matrix serializes")
    }
}

fn list(v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("[{}]", parts.join(","))
}

impl fmt::Display for IntegralPersistenceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, e) in row.iter().enumerate().skip(i) {
                if let Some(t) = e {
                    writeln!(f, "({},{}) {} {} {}", i + 1, j + 1, list(&t.a), list(&t.b), list(&t.c))?;
                }
            }
        }
        Ok(())
    }
}

fn matrix_for(chain: &QuotientChain, homology: &[IntegralHomology], n: usize) -> Result<IntegralPersistenceMatrix> {
    let size = chain.len();
    let mut matrix = vec![vec![None; size]; size];
    for i in 0..size {
        for j in i..size {
            let hom = chain.composite(i, j)?;
            matrix[i][j] = Some(induced_triple(&hom, &homology[i], &homology[j])?);
        }
    }
    Ok(IntegralPersistenceMatrix {
        group: chain.groups()[0].name().to_string(),
        functor: chain.functor(),
        degree: n,
        term_orders: chain.term_orders(),
        matrix,
    })
}

/// `IP_n^F(G)` from the integral bar complexes of the chain terms.
pub fn integral_persistence_matrix(
    g: &Arc<FiniteGroup>,
    functor: Functor,
    n: usize,
    budget: Budget,
) -> Result<IntegralPersistenceMatrix> {
    Ok(integral_persistence_sequence(g, functor, n, n, budget)?.pop().expect("one degree"))
}

/// `IP_n^F(G)` for `n = from..=to`, sharing one quotient chain.
pub fn integral_persistence_sequence(
    g: &Arc<FiniteGroup>,
    functor: Functor,
    from: usize,
    to: usize,
    budget: Budget,
) -> Result<Vec<IntegralPersistenceMatrix>> {
    let chain = quotient_chain(g, functor)?;
    (from..=to)
        .map(|n| {
            let homology = chain
                .groups()
                .par_iter()
                .map(|q| integral_homology(q, n, &budget))
                .collect::<Result<Vec<_>>>()?;
            matrix_for(&chain, &homology, n)
        })
        .collect()
}
