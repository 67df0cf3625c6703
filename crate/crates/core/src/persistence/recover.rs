//! Reading group data back out of persistence matrices of the p-central
//! series.

use super::matrix::PersistenceMatrix;
use crate::error::{Error, Result};
use crate::group::Functor;

fn check_pair(p1: &PersistenceMatrix, p2: &PersistenceMatrix) -> Result<()> {
    if p1.degree != 1 || p2.degree != 2 {
        return Err(Error::InvalidInput("expected matrices of degrees 1 and 2".into()));
    }
    if p1.functor != p2.functor || p1.size() != p2.size() || p1.group != p2.group {
        return Err(Error::InvalidInput("matrices come from different chains".into()));
    }
    Ok(())
}

/// `log_p` of the kernel orders of the chain links, computed from the five
/// term sequence of each central extension
/// `H_2(Q_t) -> H_2(Q_{t+1}) -> K_t -> H_1(Q_t) -> H_1(Q_{t+1}) -> 0`,
/// followed by `log_p |Q_N|`.
pub fn kernel_dimensions(p1: &PersistenceMatrix, p2: &PersistenceMatrix) -> Result<Vec<usize>> {
    check_pair(p1, p2)?;
    if !matches!(p1.functor, Functor::Zp | Functor::Lp) {
        return Err(Error::InvalidInput(format!(
            "the {} series does not have elementary abelian central factors",
            p1.functor
        )));
    }
    let n = p1.size();
    let mut dims = Vec::with_capacity(n);
    for t in 1..n {
        let h2 = p2.get(t + 1, t + 1) as i64 - p2.get(t, t + 1) as i64;
        let h1 = p1.get(t, t) as i64 - p1.get(t, t + 1) as i64;
        if h2 < 0 || h1 < 0 {
            return Err(Error::Inconsistent(format!("negative kernel contribution at column {t} of {}", p1.group)));
        }
        dims.push((h2 + h1) as usize);
    }
    dims.push(p1.get(n, n));
    Ok(dims)
}

/// `|G|` from `P_1` and `P_2` of the upper or lower p-central series.
pub fn recover_order(p1: &PersistenceMatrix, p2: &PersistenceMatrix, p: u64) -> Result<u64> {
    let total: usize = kernel_dimensions(p1, p2)?.iter().sum();
    p.checked_pow(total as u32)
        .ok_or_else(|| Error::Inconsistent(format!("order p^{total} does not fit in 64 bits")))
}

/// Abelian invariants of an abelian group from its upper p-central `P_1`.
///
/// The chain is `G/Ω_0 -> G/Ω_1 -> ...`, so the diagonal entry `t` counts
/// cyclic factors of order at least `p^t`. Starting from the elementary
/// abelian last term, each earlier term multiplies every factor by `p` and
/// adds factors of order `p` up to its rank. When `P_2` is given the kernel
/// orders from the five term sequence are checked against the result.
pub fn recover_abelian_invariants(p1: &PersistenceMatrix, p2: Option<&PersistenceMatrix>, p: u64) -> Result<Vec<u64>> {
    if p1.functor != Functor::Zp || p1.degree != 1 {
        return Err(Error::InvalidInput("expected the degree 1 matrix of the upper p-central series".into()));
    }
    let n = p1.size();
    for t in 1..n {
        if p1.get(t, t + 1) != p1.get(t + 1, t + 1) || p1.get(t, t) < p1.get(t + 1, t + 1) {
            return Err(Error::Inconsistent(format!(
                "{}: H_1 maps of an abelian chain are onto and ranks shrink",
                p1.group
            )));
        }
    }
    let mut invariants: Vec<u64> = Vec::new();
    for t in (1..=n).rev() {
        for x in invariants.iter_mut() {
            *x *= p;
        }
        while invariants.len() < p1.get(t, t) {
            invariants.push(p);
        }
    }
    invariants.sort_unstable();
    if let Some(p2) = p2 {
        let dims = kernel_dimensions(p1, p2)?;
        // |Q_t| / |Q_{t+1}| = p^{#factors of order >= p^t}
        let expected: Vec<usize> = (1..=n).map(|t| p1.get(t, t)).collect();
        if dims != expected {
            return Err(Error::Inconsistent(format!(
                "{}: kernel orders {dims:?} disagree with ranks {expected:?}",
                p1.group
            )));
        }
    }
    Ok(invariants)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(functor: Functor, degree: usize, rows: Vec<Vec<usize>>) -> PersistenceMatrix {
        PersistenceMatrix {
            group: "G".into(),
            functor,
            degree,
            term_orders: Vec::new(),
            matrix: rows,
        }
    }

    #[test]
    fn backward_reconstruction() {
        // C2 x C4 x C4 x C16: ranks of p^{t-1} G are 4, 3, 1, 1
        let p1 = pm(
            Functor::Zp,
            1,
            vec![vec![4, 3, 1, 1], vec![0, 3, 1, 1], vec![0, 0, 1, 1], vec![0, 0, 0, 1]],
        );
        assert_eq!(recover_abelian_invariants(&p1, None, 2).unwrap(), vec![2, 4, 4, 16]);
        let e = pm(Functor::Zp, 1, vec![vec![3]]);
        assert_eq!(recover_abelian_invariants(&e, None, 2).unwrap(), vec![2, 2, 2]);
    }

    #[test]
    fn rejects_wrong_functor() {
        let p1 = pm(Functor::L, 1, vec![vec![2]]);
        let p2 = pm(Functor::L, 2, vec![vec![1]]);
        assert!(recover_order(&p1, &p2, 2).is_err());
        assert!(recover_abelian_invariants(&p1, None, 2).is_err());
    }

    #[test]
    fn elementary_abelian_order() {
        let p1 = pm(Functor::Lp, 1, vec![vec![3]]);
        let p2 = pm(Functor::Lp, 2, vec![vec![6]]);
        assert_eq!(recover_order(&p1, &p2, 2).unwrap(), 8);
    }
}
