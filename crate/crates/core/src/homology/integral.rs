use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::bar::{bar_boundary, bar_dimension, tuple_index};
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};
use crate::linalg::{local_cokernel, local_left_kernel, Cokernel, SparseRow};

/// `H_n(G, Z)` from the normalized bar complex, keeping a cycle basis and the
/// boundary relations so that induced maps can be evaluated.
#[derive(Clone, Debug)]
pub struct IntegralHomology {
    pub group: Arc<FiniteGroup>,
    pub degree: usize,
    /// Invariant factors `> 1`, then one `0` per free summand.
    pub invariants: Vec<u64>,
    /// Generators of the cycles modulo `p^cycle_exponent`.
    cycles: Vec<SparseRow>,
    cycle_exponent: u32,
    cycle_rank: usize,
    boundaries: Vec<SparseRow>,
    chains: usize,
}

/// Abelian invariants of the source, target and cokernel of an induced map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InvariantTriple {
    #[serde(rename = "A")]
    pub a: Vec<u64>,
    #[serde(rename = "B")]
    pub b: Vec<u64>,
    #[serde(rename = "C")]
    pub c: Vec<u64>,
}

fn prime(g: &FiniteGroup) -> u64 {
    g.prime().unwrap_or(2) as u64
}

/// Cokernel of relations among `chains` generators for a `p`-group: its
/// torsion has exponent dividing `|G|`, so `Z/(p |G|)` arithmetic is exact.
fn cokernel(g: &FiniteGroup, chains: usize, relations: &[SparseRow]) -> Result<Cokernel> {
    local_cokernel(chains, relations, prime(g), g.log_order() + 1)
}

fn entries(rows: &[SparseRow]) -> u128 {
    rows.iter().map(|r| r.len() as u128).sum()
}

/// Integral homology in degree `n`.
pub fn integral_homology(g: &Arc<FiniteGroup>, n: usize, budget: &Budget) -> Result<IntegralHomology> {
    let order = g.order();
    let too_big = || Error::Budget {
        what: format!("integral bar complex of {} in degree {}", g.name(), n + 1),
        needed: u128::MAX,
        budget: budget.int_entries,
    };
    let chains = bar_dimension(order, n).ok_or_else(too_big)?;
    let upper_rows = bar_dimension(order, n + 1).ok_or_else(too_big)?;
    // each boundary row has at most n + 2 faces
    budget.check_int(
        || format!("integral bar complex of {} in degree {}", g.name(), n + 1),
        upper_rows as u128 * (n as u128 + 2),
    )?;
    // With |G| = p^a, a vector killed by the boundary modulo p^(2a+1) is a
    // cycle plus a multiple of p^(a+1) (the torsion of H_(n-1) has exponent
    // at most p^a), which vanishes in every cokernel taken modulo p^(b+1)
    // for a target of order p^b <= p^a.
    let cycle_exponent = 2 * g.log_order() + 1;
    let (cycles, cycle_rank) = if n == 0 {
        (vec![vec![(0u32, 1i64)]], 1)
    } else {
        let previous = bar_dimension(order, n - 1).ok_or_else(too_big)?;
        let (gens, rank) = local_left_kernel(previous, &bar_boundary(g, n), prime(g), cycle_exponent)?;
        (gens, chains - rank)
    };
    let boundaries = bar_boundary(g, n + 1);
    debug_assert!(entries(&boundaries) <= upper_rows as u128 * (n as u128 + 2));
    let coker = cokernel(g, chains, &boundaries)?;
    let mut invariants = coker.torsion.clone();
    let free = cycle_rank - coker.rank;
    invariants.extend(std::iter::repeat(0).take(free));
    Ok(IntegralHomology {
        group: g.clone(),
        degree: n,
        invariants,
        cycles,
        cycle_exponent,
        cycle_rank,
        boundaries,
        chains,
    })
}

impl IntegralHomology {
    /// Torsion invariants only.
    pub fn torsion(&self) -> Vec<u64> {
        self.invariants.iter().copied().filter(|&d| d > 0).collect()
    }

    pub fn free_rank(&self) -> usize {
        self.invariants.iter().filter(|&&d| d == 0).count()
    }

    /// Rank of the cycle group.
    pub fn cycle_rank(&self) -> usize {
        self.cycle_rank
    }
}

/// Image of a chain under a homomorphism: tuples are mapped entrywise and
/// vanish when an entry maps to the identity.
fn push_forward(hom: &GroupHom, chain: &SparseRow, n: usize, order: usize) -> SparseRow {
    let target_order = hom.target().order();
    let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
    let mut tuple = vec![0usize; n];
    for &(idx, v) in chain {
        let mut rest = idx as usize;
        for slot in tuple.iter_mut().rev() {
            *slot = rest % (order - 1) + 1;
            rest /= order - 1;
        }
        let mapped: Vec<usize> = tuple.iter().map(|&x| hom.apply(x)).collect();
        if mapped.contains(&0) {
            continue;
        }
        *acc.entry(tuple_index(&mapped, target_order) as u32).or_default() += v;
    }
    acc.into_iter().filter(|e| e.1 != 0).collect()
}

/// Source, target and cokernel invariants of `H_n(hom)`, reusing computed
/// homology of both groups.
pub fn induced_triple(hom: &GroupHom, source: &IntegralHomology, target: &IntegralHomology) -> Result<InvariantTriple> {
    let n = source.degree;
    if target.degree != n {
        return Err(Error::InvalidInput("homology in different degrees".into()));
    }
    let order = hom.source().order();
    if n > 0 && source.cycle_exponent < hom.source().log_order() + hom.target().log_order() + 1 {
        return Err(Error::InvalidInput(format!(
            "{} is larger than {}",
            hom.target().name(),
            hom.source().name()
        )));
    }
    let mut relations = target.boundaries.clone();
    if n == 0 {
        relations.extend(source.cycles.iter().cloned());
    } else if order > 1 && hom.target().order() > 1 {
        relations.extend(source.cycles.iter().map(|z| push_forward(hom, z, n, order)));
    }
    let coker = cokernel(hom.target(), target.chains, &relations)?;
    let mut c = coker.torsion;
    c.extend(std::iter::repeat(0).take(target.cycle_rank - coker.rank));
    Ok(InvariantTriple {
        a: source.invariants.clone(),
        b: target.invariants.clone(),
        c,
    })
}

/// Source, target and cokernel invariants of `H_n(hom)` with integer
/// coefficients.
pub fn integral_induced_triple(hom: &GroupHom, n: usize, budget: &Budget) -> Result<InvariantTriple> {
    let source = integral_homology(hom.source(), n, budget)?;
    let target = integral_homology(hom.target(), n, budget)?;
    induced_triple(hom, &source, &target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{quotient, Permutation, Subgroup};

    fn cyclic(n: usize) -> Arc<FiniteGroup> {
        Arc::new(
            FiniteGroup::from_permutations(&[Permutation::from_images((0..n).map(|i| (i + 1) % n).collect())], "C")
                .unwrap(),
        )
    }

    #[test]
    fn small_examples() {
        let b = Budget::default();
        assert_eq!(integral_homology(&cyclic(4), 1, &b).unwrap().invariants, vec![4]);
        assert!(integral_homology(&cyclic(2), 2, &b).unwrap().invariants.is_empty());
        assert_eq!(integral_homology(&cyclic(2), 3, &b).unwrap().invariants, vec![2]);
        assert_eq!(integral_homology(&cyclic(3), 0, &b).unwrap().invariants, vec![0]);
        let r = Permutation::from_cycles(4, &[&[1, 2, 3, 4]]);
        let s = Permutation::from_cycles(4, &[&[2, 4]]);
        let d8 = Arc::new(FiniteGroup::from_permutations(&[r, s], "D8").unwrap());
        assert_eq!(integral_homology(&d8, 1, &b).unwrap().invariants, vec![2, 2]);
        assert_eq!(integral_homology(&d8, 2, &b).unwrap().invariants, vec![2]);
    }

    #[test]
    fn triples() {
        let b = Budget::default();
        let c4 = cyclic(4);
        let id = GroupHom::identity(c4.clone());
        let t = integral_induced_triple(&id, 1, &b).unwrap();
        assert_eq!((t.a, t.b, t.c), (vec![4], vec![4], vec![]));
        let half = Subgroup::generated(&c4, &[c4.pow(c4.generators()[0], 2)]);
        let (_, h) = quotient(&c4, &half).unwrap();
        let t = integral_induced_triple(&h, 1, &b).unwrap();
        assert_eq!((t.a, t.b, t.c), (vec![4], vec![2], vec![]));
        // C4 -> C2 is zero on H_3 = Z/4 -> Z/2
        let t = integral_induced_triple(&h, 3, &b).unwrap();
        assert_eq!((t.a, t.b, t.c), (vec![4], vec![2], vec![2]));
        let triv = GroupHom::to_trivial(c4.clone());
        let t = integral_induced_triple(&triv, 2, &b).unwrap();
        assert_eq!((t.b, t.c), (vec![], vec![]));
    }
}
