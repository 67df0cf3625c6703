use std::sync::Arc;

use super::{FiniteGroup, GroupHom};
use crate::error::{Error, Result};

/// A subgroup, stored as a sorted member list plus a membership mask over the
/// parent's elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    parent_order: usize,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub(crate) fn from_sorted(g: &FiniteGroup, members: Vec<usize>) -> Subgroup {
        let mut mask = vec![false; g.order()];
        for &m in &members {
            mask[m] = true;
        }
        Subgroup {
            parent_order: g.order(),
            members,
            mask,
        }
    }

    pub(crate) fn from_mask(mask: Vec<bool>) -> Subgroup {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect();
        Subgroup {
            parent_order: mask.len(),
            members,
            mask,
        }
    }

    pub fn trivial(g: &FiniteGroup) -> Subgroup {
        Subgroup::from_sorted(g, vec![0])
    }

    pub fn whole(g: &FiniteGroup) -> Subgroup {
        Subgroup::from_sorted(g, (0..g.order()).collect())
    }

    /// The subgroup generated by `seeds`: closure of `{1}` under right
    /// multiplication by the seeds.
    pub fn generated(g: &FiniteGroup, seeds: &[usize]) -> Subgroup {
        let mut mask = vec![false; g.order()];
        mask[0] = true;
        let mut useful: Vec<usize> = Vec::new();
        let mut members = vec![0usize];
        for &s in seeds {
            if mask[s] {
                continue;
            }
            useful.push(s);
            // Re-close with the enlarged seed set, starting from current members.
            let mut frontier = members.clone();
            while let Some(x) = frontier.pop() {
                for &t in &useful {
                    let y = g.mul(x, t);
                    if !mask[y] {
                        mask[y] = true;
                        members.push(y);
                        frontier.push(y);
                    }
                }
            }
        }
        Subgroup::from_mask(mask)
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent_order
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    /// Closed under the group law and inverses, contains the identity.
    pub fn is_subgroup_of(&self, g: &FiniteGroup) -> bool {
        self.contains(0)
            && self.members.iter().all(|&x| {
                self.contains(g.inv(x)) && self.members.iter().all(|&y| self.contains(g.mul(x, y)))
            })
    }

    pub fn is_normal_in(&self, g: &FiniteGroup) -> bool {
        let conj = |x: usize, n: usize| g.mul(g.mul(g.inv(x), n), x);
        (0..g.order()).all(|x| self.members.iter().all(|&n| self.contains(conj(x, n))))
    }

    /// Image under a homomorphism, as a subgroup of the target.
    pub fn image(&self, hom: &GroupHom) -> Subgroup {
        let mut mask = vec![false; hom.target().order()];
        for &x in &self.members {
            mask[hom.apply(x)] = true;
        }
        Subgroup::from_mask(mask)
    }

    /// Preimage of a target subgroup.
    pub fn preimage(hom: &GroupHom, target: &Subgroup) -> Subgroup {
        Subgroup::from_mask((0..hom.source().order()).map(|x| target.contains(hom.apply(x))).collect())
    }
}

/// `[A, B]`, generated by all `a^{-1} b^{-1} a b`.
pub fn commutator_subgroup(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut seen = vec![false; g.order()];
    let mut seeds = Vec::new();
    for &x in a.members() {
        for &y in b.members() {
            let c = g.commutator(x, y);
            if !seen[c] {
                seen[c] = true;
                seeds.push(c);
            }
        }
    }
    Subgroup::generated(g, &seeds)
}

/// `[A, B] A^p`: generated by the commutators and the p-th powers of `A`.
pub fn agemo_closure(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let p = g.prime().unwrap_or(1) as u64;
    let comm = commutator_subgroup(g, a, b);
    let mut seeds: Vec<usize> = comm.members().to_vec();
    seeds.extend(a.members().iter().map(|&x| g.pow(x, p)));
    Subgroup::generated(g, &seeds)
}

/// `G/N` on minimal coset representatives, with the canonical surjection.
///
/// Quotient elements are numbered by increasing minimal representative, so
/// the identity coset is element `0`.
pub fn quotient(g: &Arc<FiniteGroup>, n: &Subgroup) -> Result<(Arc<FiniteGroup>, GroupHom)> {
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal(g.name().to_string()));
    }
    let order = g.order();
    let mut coset = vec![u32::MAX; order];
    let mut reps = Vec::new();
    for x in 0..order {
        if coset[x] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for &m in n.members() {
            coset[g.mul(x, m)] = id;
        }
    }
    let q = reps.len();
    let mut table = vec![0u32; q * q];
    for (a, &ra) in reps.iter().enumerate() {
        for (b, &rb) in reps.iter().enumerate() {
            table[a * q + b] = coset[g.mul(ra, rb)];
        }
    }
    let gens = g.generators().iter().map(|&x| coset[x] as usize).collect();
    let name = if n.is_trivial() {
        g.name().to_string()
    } else {
        format!("{}/N{}", g.name(), n.order())
    };
    let group = Arc::new(FiniteGroup::from_parts(name, g.prime(), table, gens));
    let map = coset.into_iter().map(|c| c as usize).collect();
    let hom = GroupHom::new_unchecked(g.clone(), group.clone(), map, true);
    Ok((group, hom))
}
