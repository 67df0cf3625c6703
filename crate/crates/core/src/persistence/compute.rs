use std::sync::Arc;

use rayon::prelude::*;

use super::matrix::PersistenceMatrix;
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::group::{quotient_chain, FiniteGroup, Functor, QuotientChain};
use crate::homology::{default_prime, ChainMap, MinimalResolution};
use crate::linalg::FpMatrix;

/// Resolutions of every term of a quotient chain together with the chain
/// maps over its links, enough to produce `P_n` for `n <= max_degree`.
pub struct ChainHomology {
    chain: QuotientChain,
    prime: u8,
    max_degree: usize,
    resolutions: Vec<MinimalResolution>,
    links: Vec<ChainMap>,
}

impl ChainHomology {
    pub fn compute(g: &Arc<FiniteGroup>, functor: Functor, max_degree: usize, budget: Budget) -> Result<Self> {
        let chain = quotient_chain(g, functor)?;
        Self::from_chain(chain, max_degree, budget)
    }

    pub fn from_chain(chain: QuotientChain, max_degree: usize, budget: Budget) -> Result<Self> {
        let prime = default_prime(&chain.groups()[0]);
        let resolutions = chain
            .groups()
            .par_iter()
            .map(|q| {
                MinimalResolution::compute(q.clone(), prime, max_degree, budget).map_err(|e| match e {
                    Error::Budget { what, needed, budget } => Error::Budget {
                        what: format!("{what} (chain term {})", q.name()),
                        needed,
                        budget,
                    },
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let links = chain
            .links()
            .par_iter()
            .enumerate()
            .map(|(t, hom)| ChainMap::lift(hom, &resolutions[t], &resolutions[t + 1], max_degree))
            .collect::<Result<Vec<_>>>()?;
        Ok(ChainHomology {
            chain,
            prime,
            max_degree,
            resolutions,
            links,
        })
    }

    pub fn chain(&self) -> &QuotientChain {
        &self.chain
    }

    pub fn prime(&self) -> u8 {
        self.prime
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn resolutions(&self) -> &[MinimalResolution] {
        &self.resolutions
    }

    /// Matrix of `H_n(Q_{t+1}) -> H_n(Q_{t+2})` (zero based `t`).
    pub fn link_matrix(&self, t: usize, n: usize) -> FpMatrix {
        self.links[t].homology_matrix(n)
    }

    /// `P_n`: ranks of products of consecutive link matrices.
    pub fn matrix(&self, n: usize) -> Result<PersistenceMatrix> {
        if n > self.max_degree {
            return Err(Error::InvalidInput(format!(
                "degree {n} requested, homology computed to degree {}",
                self.max_degree
            )));
        }
        let size = self.chain.len();
        let link_matrices: Vec<FpMatrix> = (0..size.saturating_sub(1)).map(|t| self.link_matrix(t, n)).collect();
        let mut matrix = vec![vec![0usize; size]; size];
        for i in 0..size {
            let mut product = FpMatrix::identity(self.prime, self.resolutions[i].rank(n));
            matrix[i][i] = product.nrows();
            for j in i + 1..size {
                product = product.mul(&link_matrices[j - 1])?;
                let r = product.echelon().rank();
                matrix[i][j] = r;
                if r == 0 {
                    break;
                }
            }
        }
        Ok(PersistenceMatrix {
            group: self.chain.groups()[0].name().to_string(),
            functor: self.chain.functor(),
            degree: n,
            term_orders: self.chain.term_orders(),
            matrix,
        })
    }
}

/// `P_n^F(G)`.
pub fn persistence_matrix(g: &Arc<FiniteGroup>, functor: Functor, n: usize, budget: Budget) -> Result<PersistenceMatrix> {
    ChainHomology::compute(g, functor, n, budget)?.matrix(n)
}

/// `P_1, ..., P_t` sharing one chain and one set of resolutions. When the
/// budget runs out the sequence stops early and `failure` says why.
#[derive(Clone, Debug)]
pub struct PersistenceSequence {
    pub matrices: Vec<PersistenceMatrix>,
    pub requested: usize,
    pub failure: Option<String>,
}

impl PersistenceSequence {
    pub fn is_complete(&self) -> bool {
        self.failure.is_none()
    }
}

pub fn persistence_sequence(g: &Arc<FiniteGroup>, functor: Functor, t: usize, budget: Budget) -> Result<PersistenceSequence> {
    let mut degree = t;
    let mut failure = None;
    loop {
        match ChainHomology::compute(g, functor, degree, budget) {
            Ok(h) => {
                let matrices = (1..=degree).map(|n| h.matrix(n)).collect::<Result<Vec<_>>>()?;
                return Ok(PersistenceSequence {
                    matrices,
                    requested: t,
                    failure,
                });
            }
            Err(e) if e.is_budget() && degree > 1 => {
                failure.get_or_insert_with(|| e.to_string());
                degree -= 1;
            }
            Err(e) => return Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Permutation;

    fn dihedral(m: usize) -> Arc<FiniteGroup> {
        let r = Permutation::from_images((0..m).map(|i| (i + 1) % m).collect());
        let s = Permutation::from_images((0..m).map(|i| (m - i) % m).collect());
        Arc::new(FiniteGroup::from_permutations(&[r, s], &format!("D{}", 2 * m)).unwrap())
    }

    #[test]
    fn dihedral_64_degree_two() {
        let p = persistence_matrix(&dihedral(32), Functor::L, 2, Budget::default()).unwrap();
        assert_eq!(p.term_orders, vec![64, 32, 16, 8, 4]);
        for i in 1..=5 {
            for j in i..=5 {
                assert_eq!(p.get(i, j), if i == j { 3 } else { 2 });
            }
        }
    }

    #[test]
    fn cyclic_sequence() {
        let c = Arc::new(
            FiniteGroup::from_permutations(&[Permutation::from_images(vec![1, 2, 0])], "C3").unwrap(),
        );
        let s = persistence_sequence(&c, Functor::L, 5, Budget::default()).unwrap();
        assert!(s.is_complete());
        let diag: Vec<usize> = s.matrices.iter().map(|m| m.get(1, 1)).collect();
        assert_eq!(diag, vec![1; 5]);
    }

    #[test]
    fn budget_truncates_sequence() {
        let tight = Budget {
            fp_entries: 2_000,
            int_entries: 0,
        };
        let s = persistence_sequence(&dihedral(8), Functor::L, 6, tight).unwrap();
        assert!(!s.is_complete());
        assert!(!s.matrices.is_empty() && s.matrices.len() < 6);
    }
}
