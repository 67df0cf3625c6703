use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{agemo_closure, commutator_subgroup, quotient, FiniteGroup, GroupHom, Subgroup};
use crate::error::{Error, Result};

/// The five normal series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Functor {
    /// Lower central series.
    L,
    /// Lower p-central series.
    Lp,
    /// Derived series.
    D,
    /// Upper central series.
    Z,
    /// Upper p-central series.
    Zp,
}

impl Functor {
    pub const ALL: [Functor; 5] = [Functor::Z, Functor::Zp, Functor::L, Functor::Lp, Functor::D];

    pub fn is_descending(self) -> bool {
        matches!(self, Functor::L | Functor::Lp | Functor::D)
    }

    pub fn tag(self) -> &'static str {
        match self {
            Functor::L => "L",
            Functor::Lp => "Lp",
            Functor::D => "D",
            Functor::Z => "Z",
            Functor::Zp => "Zp",
        }
    }
}

impl fmt::Display for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Functor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Functor> {
        match s {
            "L" => Ok(Functor::L),
            "Lp" | "LP" | "L^p" => Ok(Functor::Lp),
            "D" => Ok(Functor::D),
            "Z" => Ok(Functor::Z),
            "Zp" | "ZP" | "Z^p" => Ok(Functor::Zp),
            other => Err(Error::InvalidInput(format!("unknown series {other:?}"))),
        }
    }
}

/// A normal series of a group. Descending series run from `G` down to the
/// trivial subgroup, ascending ones from the trivial subgroup up to `G`.
#[derive(Clone, Debug)]
pub struct NormalSeries {
    functor: Functor,
    terms: Vec<Subgroup>,
}

impl NormalSeries {
    pub fn functor(&self) -> Functor {
        self.functor
    }

    pub fn terms(&self) -> &[Subgroup] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Recomputes every step from scratch and checks normality and strict
    /// monotonicity.
    pub fn verify(&self, g: &FiniteGroup) -> bool {
        let ends_ok = match (self.terms.first(), self.terms.last()) {
            (Some(a), Some(b)) if self.functor.is_descending() => a.is_whole() && b.is_trivial(),
            (Some(a), Some(b)) => a.is_trivial() && b.is_whole(),
            _ => false,
        };
        ends_ok
            && self.terms.iter().all(|t| t.is_subgroup_of(g) && t.is_normal_in(g))
            && self.terms.windows(2).all(|w| {
                w[0].order() != w[1].order() && step(g, self.functor, &w[0]) == w[1]
            })
    }
}

fn upper_step(g: &FiniteGroup, s: &Subgroup, p_power: bool) -> Subgroup {
    let p = g.prime().unwrap_or(1) as u64;
    let gens = g.generators();
    // x lies in the next term iff [x, g] is in s for all generators g
    // (s is normal), and for the p-central variant also x^p is in s.
    Subgroup::from_mask(
        (0..g.order())
            .map(|x| {
                gens.iter().all(|&y| s.contains(g.commutator(x, y)))
                    && (!p_power || s.contains(g.pow(x, p)))
            })
            .collect(),
    )
}

fn step(g: &FiniteGroup, functor: Functor, current: &Subgroup) -> Subgroup {
    let whole = Subgroup::whole(g);
    match functor {
        Functor::L => commutator_subgroup(g, current, &whole),
        Functor::Lp => agemo_closure(g, current, &whole),
        Functor::D => commutator_subgroup(g, current, current),
        Functor::Z => upper_step(g, current, false),
        Functor::Zp => upper_step(g, current, true),
    }
}

/// Computes the full series until it reaches its required end.
pub fn series(g: &FiniteGroup, functor: Functor) -> Result<NormalSeries> {
    let (mut current, done): (Subgroup, fn(&Subgroup) -> bool) = if functor.is_descending() {
        (Subgroup::whole(g), Subgroup::is_trivial)
    } else {
        (Subgroup::trivial(g), Subgroup::is_whole)
    };
    let mut terms = vec![current.clone()];
    while !done(&current) {
        let next = step(g, functor, &current);
        if next == current {
            return Err(Error::Internal(format!(
                "{functor} series of {} stalls at order {}",
                g.name(),
                current.order()
            )));
        }
        terms.push(next.clone());
        current = next;
    }
    Ok(NormalSeries { functor, terms })
}

/// The chain of quotients `Q_1 = G -> Q_2 -> ... -> Q_N` induced by a series.
///
/// For descending series `G = F_1 > ... > F_k = 1` the terms are
/// `Q_t = G/F_{k+1-t}` for `t = 1..k-1`; for ascending series
/// `1 = S_0 < ... < S_c = G` they are `Q_t = G/S_{t-1}` for `t = 1..c`. In
/// both cases column 1 is `G` itself and trivial quotients are omitted.
#[derive(Clone, Debug)]
pub struct QuotientChain {
    functor: Functor,
    series: NormalSeries,
    groups: Vec<Arc<FiniteGroup>>,
    links: Vec<GroupHom>,
    projections: Vec<GroupHom>,
    term_index: Vec<usize>,
}

impl QuotientChain {
    pub fn functor(&self) -> Functor {
        self.functor
    }

    pub fn series(&self) -> &NormalSeries {
        &self.series
    }

    pub fn groups(&self) -> &[Arc<FiniteGroup>] {
        &self.groups
    }

    /// `links[t]` is the surjection `Q_{t+1} -> Q_{t+2}` (zero based).
    pub fn links(&self) -> &[GroupHom] {
        &self.links
    }

    /// `projections[t]` is the quotient map `G -> Q_{t+1}`.
    pub fn projections(&self) -> &[GroupHom] {
        &self.projections
    }

    /// For each chain term, the index into `series().terms()` it quotients by.
    pub fn term_index(&self) -> &[usize] {
        &self.term_index
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn term_orders(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.order()).collect()
    }

    /// Composite surjection `Q_i -> Q_j` (zero based, `i <= j`).
    pub fn composite(&self, i: usize, j: usize) -> Result<GroupHom> {
        let mut hom = GroupHom::identity(self.groups[i].clone());
        for link in &self.links[i..j] {
            hom = hom.then(link)?;
        }
        Ok(hom)
    }
}

pub fn quotient_chain(g: &Arc<FiniteGroup>, functor: Functor) -> Result<QuotientChain> {
    if g.is_trivial() {
        return Err(Error::InvalidInput("the trivial group has an empty quotient chain".into()));
    }
    let series = series(g, functor)?;
    let k = series.len();
    let term_index: Vec<usize> = if functor.is_descending() {
        (1..k).map(|t| k - t).collect()
    } else {
        (1..k).map(|t| t - 1).collect()
    };
    let mut groups = Vec::with_capacity(term_index.len());
    let mut projections = Vec::with_capacity(term_index.len());
    for &idx in &term_index {
        let (q, proj) = quotient(g, &series.terms()[idx])?;
        if q.is_trivial() {
            continue;
        }
        let q = Arc::new(
            Arc::try_unwrap(q)
                .unwrap_or_else(|a| (*a).clone())
                .with_name(format!("{}/{}{}", g.name(), functor, idx)),
        );
        let proj = GroupHom::new_unchecked(g.clone(), q.clone(), proj.map().collect(), true);
        groups.push(q);
        projections.push(proj);
    }
    // Q_1 is G itself: identical table, so reuse the original group.
    if let Some(first) = groups.first_mut() {
        if first.order() == g.order() {
            *first = g.clone();
            projections[0] = GroupHom::identity(g.clone());
        }
    }
    let mut links = Vec::with_capacity(groups.len().saturating_sub(1));
    for t in 0..groups.len().saturating_sub(1) {
        // Q_t -> Q_{t+1}: send the coset of x to the coset of x.
        let (src, dst) = (&projections[t], &projections[t + 1]);
        let mut map = vec![usize::MAX; groups[t].order()];
        for x in 0..g.order() {
            map[src.apply(x)] = dst.apply(x);
        }
        links.push(GroupHom::new_unchecked(groups[t].clone(), groups[t + 1].clone(), map, true));
    }
    Ok(QuotientChain {
        functor,
        series,
        groups,
        links,
        projections,
        term_index,
    })
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

    fn q8() -> Arc<FiniteGroup> {
        let i = Permutation::from_cycles(8, &[&[1, 2, 5, 6], &[3, 8, 7, 4]]);
        let j = Permutation::from_cycles(8, &[&[1, 3, 5, 7], &[2, 4, 6, 8]]);
        Arc::new(FiniteGroup::from_permutations(&[i, j], "Q8").unwrap())
    }

    fn cyclic(n: usize) -> Arc<FiniteGroup> {
        let c = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect());
        Arc::new(FiniteGroup::from_permutations(&[c], &format!("C{n}")).unwrap())
    }

    fn orders(s: &NormalSeries) -> Vec<usize> {
        s.terms().iter().map(Subgroup::order).collect()
    }

    #[test]
    fn lower_central_of_d8() {
        let g = dihedral(4);
        let s = series(&g, Functor::L).unwrap();
        assert_eq!(orders(&s), vec![8, 2, 1]);
        let r = g.generators()[0];
        assert_eq!(s.terms()[1].members(), &[0, g.pow(r, 2)]);
        assert!(s.verify(&g));
    }

    #[test]
    fn upper_central_of_q8() {
        let g = q8();
        let s = series(&g, Functor::Z).unwrap();
        assert_eq!(orders(&s), vec![1, 2, 8]);
        assert_eq!(s.terms()[1], g.center());
    }

    #[test]
    fn abelian_lower_central_is_short() {
        let g = cyclic(8);
        assert_eq!(orders(&series(&g, Functor::L).unwrap()), vec![8, 1]);
        let chain = quotient_chain(&g, Functor::L).unwrap();
        assert_eq!(chain.term_orders(), vec![8]);
    }

    #[test]
    fn upper_p_central_of_c4_does_not_stall() {
        let g = cyclic(4);
        let s = series(&g, Functor::Zp).unwrap();
        assert_eq!(orders(&s), vec![1, 2, 4]);
        let s = series(&cyclic(8), Functor::Zp).unwrap();
        assert_eq!(orders(&s), vec![1, 2, 4, 8]);
    }

    #[test]
    fn all_series_verify() {
        for g in [dihedral(8), q8(), cyclic(9), dihedral(16)] {
            for f in Functor::ALL {
                let s = series(&g, f).unwrap();
                assert!(s.verify(&g), "{f} series of {}", g.name());
            }
        }
    }

    #[test]
    fn d32_lower_central_chain() {
        let g = dihedral(32);
        assert_eq!(g.order(), 64);
        let chain = quotient_chain(&g, Functor::L).unwrap();
        assert_eq!(chain.term_orders(), vec![64, 32, 16, 8, 4]);
        assert!(Arc::ptr_eq(&chain.groups()[0], &g));
        for link in chain.links() {
            assert!(link.is_homomorphism());
            assert_eq!(link.kernel().order(), 2);
        }
    }

    #[test]
    fn q8_upper_central_chain() {
        let g = q8();
        let chain = quotient_chain(&g, Functor::Z).unwrap();
        assert_eq!(chain.term_orders(), vec![8, 4]);
        assert_eq!(chain.groups()[1].exponent(), 2);
    }

    #[test]
    fn composed_links_match_projections() {
        let g = dihedral(16);
        for f in Functor::ALL {
            let chain = quotient_chain(&g, f).unwrap();
            let last = chain.len() - 1;
            let comp = chain.composite(0, last).unwrap();
            for x in 0..g.order() {
                assert_eq!(comp.apply(x), chain.projections()[last].apply(x));
            }
        }
    }

    #[test]
    fn trivial_group_has_no_chain() {
        let g = Arc::new(FiniteGroup::from_permutations(&[Permutation::identity(2)], "1").unwrap());
        assert!(quotient_chain(&g, Functor::L).is_err());
    }
}
