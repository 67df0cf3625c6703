//! The normalized bar complex with trivial coefficients. Chains of degree
//! `n` are spanned by tuples of non-identity elements.

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{Echelon, SparseRow};

/// Number of degree-`n` basis tuples, `(|G| - 1)^n`, or `None` on overflow.
pub fn bar_dimension(order: usize, n: usize) -> Option<usize> {
    (order.max(1) - 1).checked_pow(n as u32)
}

/// Index of a tuple of non-identity elements.
#[inline]
pub(crate) fn tuple_index(tuple: &[usize], order: usize) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * (order - 1) + (x - 1))
}

#[inline]
fn decode(mut index: usize, n: usize, order: usize, out: &mut Vec<usize>) {
    out.clear();
    out.resize(n, 0);
    for slot in out.iter_mut().rev() {
        *slot = index % (order - 1) + 1;
        index /= order - 1;
    }
}

/// Faces of a degree-`n` tuple as `(index in degree n-1, sign)`; faces with
/// an identity entry vanish.
fn faces(g: &FiniteGroup, tuple: &[usize], scratch: &mut Vec<usize>, out: &mut Vec<(usize, i64)>) {
    let n = tuple.len();
    let order = g.order();
    out.clear();
    out.push((tuple_index(&tuple[1..], order), 1));
    for i in 1..n {
        let prod = g.mul(tuple[i - 1], tuple[i]);
        if prod == 0 {
            continue;
        }
        scratch.clear();
        scratch.extend_from_slice(&tuple[..i - 1]);
        scratch.push(prod);
        scratch.extend_from_slice(&tuple[i + 1..]);
        let sign = if i % 2 == 0 { 1 } else { -1 };
        out.push((tuple_index(scratch, order), sign));
    }
    let sign = if n % 2 == 0 { 1 } else { -1 };
    out.push((tuple_index(&tuple[..n - 1], order), sign));
}

/// Row `index` of the boundary `d_n`, with repeated faces combined.
pub(crate) fn boundary_row(g: &FiniteGroup, n: usize, index: usize) -> SparseRow {
    let mut tuple = Vec::new();
    let mut scratch = Vec::new();
    let mut f = Vec::new();
    decode(index, n, g.order(), &mut tuple);
    faces(g, &tuple, &mut scratch, &mut f);
    f.sort_unstable();
    let mut row: SparseRow = Vec::with_capacity(f.len());
    for (c, s) in f {
        match row.last_mut() {
            Some(last) if last.0 == c as u32 => last.1 += s,
            _ => row.push((c as u32, s)),
        }
    }
    row.retain(|e| e.1 != 0);
    row
}

/// All rows of `d_n: C_n -> C_{n-1}`.
pub fn bar_boundary(g: &FiniteGroup, n: usize) -> Vec<SparseRow> {
    let rows = bar_dimension(g.order(), n).unwrap_or(0);
    if n == 0 {
        return vec![Vec::new(); rows];
    }
    (0..rows).map(|i| boundary_row(g, n, i)).collect()
}

/// Rank of `d_n` over F_p, streaming rows into a dense echelon form.
fn rank_fp(g: &FiniteGroup, n: usize, p: u8, budget: &Budget) -> Result<usize> {
    if n == 0 || g.order() == 1 {
        return Ok(0);
    }
    let order = g.order();
    let too_big = || Error::Budget {
        what: format!("bar complex of {} in degree {n}", g.name()),
        needed: u128::MAX,
        budget: budget.fp_entries,
    };
    let rows = bar_dimension(order, n).ok_or_else(too_big)?;
    let cols = bar_dimension(order, n - 1).ok_or_else(too_big)?;
    budget.check_fp(|| format!("bar complex of {} in degree {n}", g.name()), rows as u128 * cols as u128)?;
    let mut e = Echelon::new(p, cols);
    let mut dense = vec![0u8; cols];
    for i in 0..rows {
        if e.rank() == cols {
            break;
        }
        let row = boundary_row(g, n, i);
        if row.is_empty() {
            continue;
        }
        dense.iter_mut().for_each(|x| *x = 0);
        let mut nonzero = false;
        for (c, v) in row {
            let r = v.rem_euclid(p as i64) as u8;
            dense[c as usize] = r;
            nonzero |= r != 0;
        }
        if nonzero {
            e.insert(dense.clone());
        }
    }
    Ok(e.rank())
}

/// `dim H_n(G, F_p)` from the normalized bar complex.
pub fn bar_homology_fp(g: &FiniteGroup, p: u8, n: usize, budget: &Budget) -> Result<usize> {
    if n == 0 {
        return Ok(1);
    }
    let chains = bar_dimension(g.order(), n).ok_or_else(|| Error::Budget {
        what: format!("bar complex of {}", g.name()),
        needed: u128::MAX,
        budget: budget.fp_entries,
    })?;
    let below = rank_fp(g, n, p, budget)?;
    let above = rank_fp(g, n + 1, p, budget)?;
    Ok(chains - below - above)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Permutation;

    fn cyclic(n: usize) -> FiniteGroup {
        FiniteGroup::from_permutations(&[Permutation::from_images((0..n).map(|i| (i + 1) % n).collect())], "C")
            .unwrap()
    }

    #[test]
    fn indices_round_trip() {
        let mut t = Vec::new();
        for i in 0..343 {
            decode(i, 3, 8, &mut t);
            assert_eq!(tuple_index(&t, 8), i);
        }
    }

    #[test]
    fn boundary_squares_to_zero() {
        let g = cyclic(4);
        for n in 2..4 {
            let upper = bar_boundary(&g, n);
            let lower = bar_boundary(&g, n - 1);
            for r in &upper {
                let mut acc = vec![0i64; bar_dimension(4, n - 2).unwrap()];
                for &(c, v) in r {
                    for &(c2, w) in &lower[c as usize] {
                        acc[c2 as usize] += v * w;
                    }
                }
                assert!(acc.iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn small_examples() {
        let b = Budget::default();
        let c2 = cyclic(2);
        for n in 0..=4 {
            assert_eq!(bar_homology_fp(&c2, 2, n, &b).unwrap(), 1);
        }
        let t = FiniteGroup::from_permutations(&[Permutation::identity(1)], "1").unwrap();
        assert_eq!(bar_homology_fp(&t, 2, 2, &b).unwrap(), 0);
        let k = FiniteGroup::from_permutations(
            &[Permutation::from_cycles(4, &[&[1, 2]]), Permutation::from_cycles(4, &[&[3, 4]])],
            "V4",
        )
        .unwrap();
        assert_eq!(bar_homology_fp(&k, 2, 2, &b).unwrap(), 3);
    }

    #[test]
    fn budget_is_enforced() {
        let tiny = Budget {
            fp_entries: 10,
            int_entries: 10,
        };
        assert!(bar_homology_fp(&cyclic(4), 2, 2, &tiny).unwrap_err().is_budget());
    }
}
