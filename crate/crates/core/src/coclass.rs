//! The coclass 1 families of 2-groups and the persistent homology of their
//! coclass tree along the dihedral main line.
//!
//! Level `l` holds groups of order `2^l`. The parent of a group is its
//! quotient by the last nontrivial term of its lower central series; every
//! dihedral, quaternion and semidihedral group of order `2^{l+1}` has the
//! dihedral group of order `2^l` as parent.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::builders::{dihedral_generators, quaternion_generators, semidihedral_generators};
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::group::{quotient, series, FiniteGroup, Functor, GroupHom};
use crate::homology::{ChainMap, MinimalResolution};
use crate::linalg::FpMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Dihedral,
    Quaternion,
    Semidihedral,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 3] = [FamilyKind::Dihedral, FamilyKind::Quaternion, FamilyKind::Semidihedral];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Dihedral => "dihedral",
            FamilyKind::Quaternion => "quaternion",
            FamilyKind::Semidihedral => "semidihedral",
        }
    }

    /// Smallest level at which the family has a member.
    pub fn first_level(self) -> u32 {
        match self {
            FamilyKind::Dihedral => 2,
            FamilyKind::Quaternion => 3,
            FamilyKind::Semidihedral => 4,
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilyKind> {
        match s {
            "dihedral" | "D" => Ok(FamilyKind::Dihedral),
            "quaternion" | "Q" => Ok(FamilyKind::Quaternion),
            "semidihedral" | "SD" | "QD" => Ok(FamilyKind::Semidihedral),
            other => Err(Error::InvalidInput(format!("unknown family {other:?}"))),
        }
    }
}

/// The member of order `2^l` of a family.
pub fn family(kind: FamilyKind, l: u32) -> Result<Arc<FiniteGroup>> {
    if l < kind.first_level() {
        return Err(Error::InvalidInput(format!(
            "the {kind} family starts at level {}",
            kind.first_level()
        )));
    }
    if l >= usize::BITS - 1 {
        return Err(Error::OrderCap {
            order: usize::MAX,
            cap: crate::config::DEFAULT_ORDER_CAP,
        });
    }
    let order = 1usize << l;
    if order > crate::config::DEFAULT_ORDER_CAP {
        return Err(Error::OrderCap {
            order,
            cap: crate::config::DEFAULT_ORDER_CAP,
        });
    }
    let (gens, name) = match kind {
        FamilyKind::Dihedral => (dihedral_generators(order / 2), format!("D{order}")),
        FamilyKind::Quaternion => (quaternion_generators(l)?, format!("Q{order}")),
        FamilyKind::Semidihedral => (semidihedral_generators(l)?, format!("QD{order}")),
    };
    Ok(Arc::new(FiniteGroup::from_permutations(&gens, &name)?))
}

/// Order, class `l - 1` and the derived subgroup of index 4 (so `G/[G,G]` is
/// `C_2 x C_2`).
pub fn verify_level(g: &FiniteGroup, l: u32) -> bool {
    let Ok(d) = series(g, Functor::D) else {
        return false;
    };
    let derived_index = g.order() / d.terms().get(1).map_or(1, |t| t.order());
    g.order() == 1 << l && g.nilpotency_class() as u32 == l - 1 && (l < 3 || derived_index == 4)
}

/// An isomorphism `a -> b`, searching images of `a`'s generators with
/// matching element orders; the breadth first extension checks every
/// Cayley graph edge, so a complete extension is a homomorphism.
fn isomorphism(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Option<GroupHom> {
    if a.order() != b.order() {
        return None;
    }
    let gens = a.generators().to_vec();
    let n = a.order();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| (0..n).filter(|&y| b.element_order(y) == a.element_order(g)).collect())
        .collect();
    let mut choice = vec![0usize; gens.len()];
    'outer: loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if let Some(map) = extend(a, b, &gens, &images) {
            return GroupHom::new(a.clone(), b.clone(), map).ok();
        }
        for k in (0..choice.len()).rev() {
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                continue 'outer;
            }
            choice[k] = 0;
        }
        return None;
    }
}

fn extend(a: &FiniteGroup, b: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let n = a.order();
    let mut map = vec![usize::MAX; n];
    let mut hit = vec![false; n];
    map[0] = 0;
    hit[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&g, &h) in gens.iter().zip(images) {
            let y = a.mul(x, g);
            let want = b.mul(map[x], h);
            if map[y] == usize::MAX {
                if hit[want] {
                    return None;
                }
                hit[want] = true;
                map[y] = want;
                queue.push_back(y);
            } else if map[y] != want {
                return None;
            }
        }
    }
    Some(map)
}

/// The tree edge from the `kind` group of level `from` to the dihedral group
/// of level `to = from - 1`: the quotient by the last lower central term,
/// identified with the family member by an explicit isomorphism.
pub fn tree_link(kind: FamilyKind, from: u32, to: u32) -> Result<GroupHom> {
    if from != to + 1 {
        return Err(Error::InvalidInput(format!("no tree edge from level {from} to level {to}")));
    }
    let source = family(kind, from)?;
    let target = family(FamilyKind::Dihedral, to)?;
    tree_link_between(&source, &target)
}

fn tree_link_between(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>) -> Result<GroupHom> {
    let lower = series(source, Functor::L)?;
    let terms = lower.terms();
    let last = &terms[terms.len() - 2];
    if last.order() != 2 {
        return Err(Error::Internal(format!("{}: last lower central term has order {}", source.name(), last.order())));
    }
    let (q, proj) = quotient(source, last)?;
    let iso = isomorphism(&q, target).ok_or_else(|| {
        Error::Internal(format!("{} / L_c is not isomorphic to {}", source.name(), target.name()))
    })?;
    proj.then(&iso)
}

/// Images of `H_n(G_{l+k}) -> H_n(G_l)` along the dihedral main line.
#[derive(Clone, Debug, Serialize)]
pub struct TreePersistenceReport {
    pub family: String,
    pub degree: usize,
    /// Levels `l` of the window with at least one level above them.
    pub levels: Vec<u32>,
    /// `dim ∩_k Im(H_n(G_{l+k}) -> H_n(G_l))` over the window, per level.
    #[serde(rename = "imageDims")]
    pub image_dims: Vec<usize>,
    /// `dim Im(H_n(G_{l+1}) -> H_n(G_l))`, per level.
    #[serde(rename = "singleStepDims")]
    pub single_step_dims: Vec<usize>,
    /// `dim H_n(G_l)` for every level of the window, including the top.
    #[serde(rename = "homologyDims")]
    pub homology_dims: Vec<usize>,
    #[serde(rename = "stabilizationLevel")]
    pub stabilization_level: Option<u32>,
    #[serde(rename = "stabilizedDim")]
    pub stabilized_dim: Option<usize>,
}

impl TreePersistenceReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Start of the constant tail of `values` if it has at least two entries.
fn stable_tail(values: &[usize]) -> Option<usize> {
    let last = *values.last()?;
    let start = values.iter().rposition(|&v| v != last).map_or(0, |i| i + 1);
    (values.len() - start >= 2).then_some(start)
}

/// Persistent homology of the coclass tree along the dihedral main line in
/// degree `n`, over levels `l_min..=l_max`.
pub fn tree_persistence(kind: FamilyKind, n: usize, l_min: u32, l_max: u32, budget: Budget) -> Result<TreePersistenceReport> {
    if kind != FamilyKind::Dihedral {
        return Err(Error::InvalidInput("tree persistence follows the dihedral main line".into()));
    }
    let l_min = l_min.max(kind.first_level());
    if l_max <= l_min {
        return Err(Error::InvalidInput(format!("empty level window {l_min}..{l_max}")));
    }
    let levels: Vec<u32> = (l_min..=l_max).collect();
    let groups = levels.iter().map(|&l| family(kind, l)).collect::<Result<Vec<_>>>()?;
    let resolutions = groups
        .par_iter()
        .map(|g| MinimalResolution::compute(g.clone(), 2, n, budget))
        .collect::<Result<Vec<_>>>()?;
    // matrices[i]: H_n(G_{levels[i+1]}) -> H_n(G_{levels[i]})
    let matrices = (0..groups.len() - 1)
        .into_par_iter()
        .map(|i| {
            let link = tree_link_between(&groups[i + 1], &groups[i])?;
            Ok(ChainMap::lift(&link, &resolutions[i + 1], &resolutions[i], n)?.homology_matrix(n))
        })
        .collect::<Result<Vec<FpMatrix>>>()?;
    let top = groups.len() - 1;
    let mut image_dims = Vec::with_capacity(top);
    let mut single_step_dims = Vec::with_capacity(top);
    for i in 0..top {
        single_step_dims.push(matrices[i].echelon().rank());
        // the composite from the top level: G_top -> ... -> G_{levels[i]}
        let mut product = matrices[top - 1].clone();
        for m in matrices[i..top - 1].iter().rev() {
            product = product.mul(m)?;
        }
        image_dims.push(product.echelon().rank());
    }
    let stabilization = stable_tail(&single_step_dims);
    Ok(TreePersistenceReport {
        family: kind.name().to_string(),
        degree: n,
        levels: levels[..top].to_vec(),
        stabilization_level: stabilization.map(|i| levels[i]),
        stabilized_dim: stabilization.map(|i| single_step_dims[i]),
        image_dims,
        single_step_dims,
        homology_dims: resolutions.iter().map(|r| r.rank(n)).collect(),
    })
}

/// One group in the `H_2` splitting check.
#[derive(Clone, Debug, Serialize)]
pub struct SplittingRow {
    pub group: String,
    pub level: u32,
    pub leaf: bool,
    pub h2: usize,
    /// Lower bound `dim PH_2 + 1` on the number of relators, for non-leaves.
    #[serde(rename = "relatorBound", skip_serializing_if = "Option::is_none")]
    pub relator_bound: Option<usize>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SplittingReport {
    pub family: String,
    /// Estimated `dim PH_2` of the tree.
    pub estimate: Option<usize>,
    #[serde(rename = "stabilizationLevel")]
    pub stabilization_level: Option<u32>,
    pub rows: Vec<SplittingRow>,
}

impl SplittingReport {
    pub fn passed(&self) -> bool {
        self.estimate.is_some() && self.rows.iter().all(|r| r.passed)
    }
}

/// Compares `dim H_2` of the family members on `levels` with the estimate
/// of `dim PH_2` from the dihedral main line: non-leaf (dihedral) groups at
/// or above the stabilization level must have `dim H_2 = dim PH_2 + 1`,
/// leaves `dim H_2 >= dim PH_2`.
pub fn check_h2_splitting(kind: FamilyKind, levels: std::ops::RangeInclusive<u32>, budget: Budget) -> Result<SplittingReport> {
    let (lo, hi) = (*levels.start(), *levels.end());
    let mut report = SplittingReport {
        family: kind.name().to_string(),
        estimate: None,
        stabilization_level: None,
        rows: Vec::new(),
    };
    if levels.is_empty() {
        return Ok(report);
    }
    // the main line window must reach one level above the checked groups
    let tree = tree_persistence(FamilyKind::Dihedral, 2, lo.saturating_sub(1).max(2), hi + 1, budget)?;
    report.estimate = tree.stabilized_dim;
    report.stabilization_level = tree.stabilization_level;
    let leaf = kind != FamilyKind::Dihedral;
    let rows = levels
        .filter(|&l| l >= kind.first_level())
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|l| {
            let g = family(kind, l)?;
            let h2 = MinimalResolution::compute(g.clone(), 2, 2, budget)?.rank(2);
            let above = tree.stabilization_level.is_some_and(|s| l >= s);
            let passed = match (report.estimate, leaf) {
                (Some(e), true) => h2 >= e,
                (Some(e), false) => !above || h2 == e + 1,
                (None, _) => false,
            };
            Ok(SplittingRow {
                group: g.name().to_string(),
                level: l,
                leaf,
                h2,
                relator_bound: (!leaf).then(|| report.estimate.map(|e| e + 1)).flatten(),
                passed,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    report.rows = rows;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::abelian_invariants;

    #[test]
    fn families_have_coclass_one() {
        for kind in FamilyKind::ALL {
            for l in kind.first_level().max(3)..=7 {
                let g = family(kind, l).unwrap();
                assert!(verify_level(&g, l), "{kind} level {l}");
            }
        }
        assert!(family(FamilyKind::Semidihedral, 3).is_err());
        let sd = family(FamilyKind::Semidihedral, 4).unwrap();
        let ab = quotient(&sd, &series(&sd, Functor::D).unwrap().terms()[1]).unwrap().0;
        assert_eq!(abelian_invariants(&ab).unwrap(), vec![2, 2]);
    }

    #[test]
    fn links() {
        for kind in FamilyKind::ALL {
            let l = kind.first_level().max(3);
            let hom = tree_link(kind, l + 1, l).unwrap();
            assert!(hom.is_surjective());
            assert_eq!(hom.kernel().order(), 2);
        }
        assert!(tree_link(FamilyKind::Dihedral, 4, 4).is_err());
    }

    #[test]
    fn stable_tails() {
        assert_eq!(stable_tail(&[3, 2, 2]), Some(1));
        assert_eq!(stable_tail(&[2, 3]), None);
        assert_eq!(stable_tail(&[2, 2, 2]), Some(0));
    }

    #[test]
    fn main_line_degree_two() {
        let r = tree_persistence(FamilyKind::Dihedral, 2, 3, 6, Budget::default()).unwrap();
        assert_eq!(r.levels, vec![3, 4, 5]);
        assert_eq!(r.stabilized_dim, Some(2));
        assert_eq!(r.homology_dims, vec![3, 3, 3, 3]);
        assert!(r.image_dims.windows(2).all(|w| w[0] <= w[1]));
    }
}
