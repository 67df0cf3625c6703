//! The bundled group catalog, group files and rendering.
//!
//! Bundled ids follow the `order.index` numbering of the small groups
//! library for the p-groups of order at most 16 and order 27. The coclass
//! families up to order 256 are `order.dihedral`, `order.quaternion` and
//! `order.semidihedral`; abelian groups are `C2xC4x...`.

pub mod builders;
mod io;
mod svg;

use std::path::PathBuf;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Permutation};
use builders::*;

pub use io::{load_catalog, read_group_file, write_catalog, GroupFile};
pub use svg::render_svg;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Bundled,
    Ingested,
}

/// A catalog group: its id, the file describing it and the constructed group
/// (named by the id).
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub file: GroupFile,
    pub provenance: Provenance,
    pub path: Option<PathBuf>,
    pub group: Arc<FiniteGroup>,
}

impl CatalogEntry {
    /// Builds an entry from its group file, checking that an `order.index`
    /// id agrees with the constructed order.
    pub fn from_file(id: &str, file: GroupFile, provenance: Provenance, path: Option<PathBuf>) -> Result<Self> {
        let gens = file.permutations()?;
        let group = FiniteGroup::from_permutations(&gens, id)?;
        if let Some(order) = id.split('.').next().and_then(|s| s.parse::<usize>().ok()) {
            if order != group.order() && id.contains('.') {
                return Err(Error::InvalidInput(format!("{id} has order {}", group.order())));
            }
        }
        Ok(CatalogEntry {
            id: id.to_string(),
            file,
            provenance,
            path,
            group: Arc::new(group),
        })
    }

    pub fn label(&self) -> &str {
        &self.file.name
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }
}

fn entry(id: &str, label: &str, gens: Vec<Permutation>, tags: &[&str]) -> CatalogEntry {
    let mut all_tags = vec!["bundled".to_string()];
    all_tags.extend(tags.iter().map(|t| t.to_string()));
    let file = GroupFile::new(label, &gens, all_tags);
    CatalogEntry::from_file(id, file, Provenance::Bundled, None).expect("bundled groups are valid")
}

fn meta(m: usize, n: usize, r: usize, s: usize) -> Vec<Permutation> {
    metacyclic_generators(m, n, r, s).expect("valid parameters")
}

fn family_generators(kind: &str, l: u32) -> Option<Vec<Permutation>> {
    match kind {
        "dihedral" if l >= 2 => Some(dihedral_generators(1 << (l - 1))),
        "quaternion" if l >= 3 => quaternion_generators(l).ok(),
        "semidihedral" if l >= 4 => semidihedral_generators(l).ok(),
        _ => None,
    }
}

/// Label for an abelian group with the given cyclic factor orders.
pub fn abelian_label(orders: &[usize]) -> String {
    if orders.is_empty() {
        return "1".into();
    }
    orders.iter().map(|n| format!("C{n}")).collect::<Vec<_>>().join("x")
}

/// The abelian group `C_{n_1} x ... x C_{n_k}` as a catalog entry.
pub fn abelian_entry(orders: &[usize]) -> CatalogEntry {
    let label = abelian_label(orders);
    entry(&label, &label, abelian_generators(orders), &["abelian"])
}

fn partitions(k: usize, max: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=k.min(max)).rev() {
        for mut rest in partitions(k - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All abelian groups of order `p^k`, one per partition of `k`.
pub fn abelian_groups(p: usize, k: usize) -> Vec<CatalogEntry> {
    partitions(k, k)
        .into_iter()
        .map(|parts| {
            let mut orders: Vec<usize> = parts.iter().map(|&e| p.pow(e as u32)).collect();
            orders.sort_unstable();
            abelian_entry(&orders)
        })
        .collect()
}

/// Small group ids of the bundled p-groups of a given order, with labels.
fn small_group_ids(order: usize) -> Vec<(&'static str, fn() -> Vec<Permutation>)> {
    match order {
        1 => vec![("1", || vec![Permutation::identity(1)])],
        2 => vec![("C2", || abelian_generators(&[2]))],
        3 => vec![("C3", || abelian_generators(&[3]))],
        4 => vec![("C4", || abelian_generators(&[4])), ("C2xC2", || abelian_generators(&[2, 2]))],
        5 => vec![("C5", || abelian_generators(&[5]))],
        7 => vec![("C7", || abelian_generators(&[7]))],
        8 => vec![
            ("C8", || abelian_generators(&[8])),
            ("C4xC2", || abelian_generators(&[4, 2])),
            ("D8", || dihedral_generators(4)),
            ("Q8", || meta(4, 2, 3, 2)),
            ("C2xC2xC2", || abelian_generators(&[2, 2, 2])),
        ],
        9 => vec![("C9", || abelian_generators(&[9])), ("C3xC3", || abelian_generators(&[3, 3]))],
        11 => vec![("C11", || abelian_generators(&[11]))],
        13 => vec![("C13", || abelian_generators(&[13]))],
        16 => vec![
            ("C16", || abelian_generators(&[16])),
            ("C4xC4", || abelian_generators(&[4, 4])),
            ("(C4xC2):C2", swap_semidirect_generators),
            ("C4:C4", || meta(4, 4, 3, 0)),
            ("C8xC2", || abelian_generators(&[8, 2])),
            ("M16", || meta(8, 2, 5, 0)),
            ("D16", || dihedral_generators(8)),
            ("QD16", || meta(8, 2, 3, 0)),
            ("Q16", || meta(8, 2, 7, 4)),
            ("C4xC2xC2", || abelian_generators(&[4, 2, 2])),
            ("C2xD8", || direct_product_generators(&[vec![cycle(2)], dihedral_generators(4)])),
            ("C2xQ8", || direct_product_generators(&[vec![cycle(2)], meta(4, 2, 3, 2)])),
            ("C4oD8", pauli_generators),
            ("C2xC2xC2xC2", || abelian_generators(&[2, 2, 2, 2])),
        ],
        27 => vec![
            ("C27", || abelian_generators(&[27])),
            ("C9xC3", || abelian_generators(&[9, 3])),
            ("He3", || heisenberg_generators(3)),
            ("C9:C3", || meta(9, 3, 4, 0)),
            ("C3xC3xC3", || abelian_generators(&[3, 3, 3])),
        ],
        _ => Vec::new(),
    }
}

/// Bundled groups of a given order with small group ids, in id order.
pub fn bundled_order(order: usize) -> Vec<CatalogEntry> {
    small_group_ids(order)
        .into_iter()
        .enumerate()
        .map(|(i, (label, gens))| entry(&format!("{order}.{}", i + 1), label, gens(), &[]))
        .collect()
}

/// Member of a coclass family of 2-groups, of order `2^l`.
pub fn family_entry(kind: &str, l: u32) -> Option<CatalogEntry> {
    let gens = family_generators(kind, l)?;
    let order = 1usize << l;
    let label = match kind {
        "dihedral" => format!("D{order}"),
        "quaternion" => format!("Q{order}"),
        _ => format!("QD{order}"),
    };
    Some(entry(&format!("{order}.{kind}"), &label, gens, &["coclass-1", kind]))
}

/// Orders with small group ids in the bundled catalog.
pub const BUNDLED_ORDERS: [usize; 11] = [1, 2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

/// Named abelian groups used in examples.
pub const NAMED_ABELIAN: [&[usize]; 2] = [&[2, 4, 4, 16], &[3, 9]];

/// The whole bundled catalog: small group ids, the coclass families to
/// order 256 and the named abelian groups.
pub fn bundled() -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = BUNDLED_ORDERS.iter().chain(&[27]).flat_map(|&k| bundled_order(k)).collect();
    for kind in ["dihedral", "quaternion", "semidihedral"] {
        out.extend((3..=8).filter_map(|l| family_entry(kind, l)));
    }
    out.extend(NAMED_ABELIAN.iter().map(|o| abelian_entry(o)));
    out
}

/// Looks up a single bundled group by id without building the rest.
pub fn bundled_entry(id: &str) -> Option<CatalogEntry> {
    let (order, rest) = id.split_once('.')?;
    let order: usize = order.parse().ok()?;
    if let Ok(i) = rest.parse::<usize>() {
        return bundled_order(order).into_iter().nth(i.checked_sub(1)?);
    }
    let l = order.trailing_zeros();
    if order != 1 << l {
        return None;
    }
    family_entry(rest, l)
}

/// Resolves a catalog name: `bundled`, `bundledK` for a bundled order `K`,
/// or a directory of group files.
pub fn resolve_catalog(name: &str) -> Result<Vec<CatalogEntry>> {
    if name == "bundled" {
        return Ok(bundled());
    }
    if let Some(k) = name.strip_prefix("bundled") {
        let order: usize = k
            .parse()
            .map_err(|_| Error::InvalidInput(format!("unknown bundled catalog {name:?}")))?;
        let entries = bundled_order(order);
        if entries.is_empty() {
            return Err(Error::InvalidInput(format!("no bundled groups of order {order}")));
        }
        return Ok(entries);
    }
    load_catalog(name)
}

/// Resolves a group selector: `catalog:ID`, a bundled id, an abelian label
/// such as `C2xC4`, or a group file path.
pub fn resolve_group(selector: &str) -> Result<CatalogEntry> {
    let id = selector.strip_prefix("catalog:").unwrap_or(selector);
    if let Some(e) = bundled_entry(id) {
        return Ok(e);
    }
    if let Some(orders) = parse_abelian(id) {
        return Ok(abelian_entry(&orders));
    }
    if selector.starts_with("catalog:") {
        return Err(Error::InvalidInput(format!("no bundled group with id {id:?}")));
    }
    let path = PathBuf::from(selector);
    let file = read_group_file(&path)?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(selector).to_string();
    CatalogEntry::from_file(&stem, file, Provenance::Ingested, Some(path))
}

fn parse_abelian(s: &str) -> Option<Vec<usize>> {
    let orders: Option<Vec<usize>> = s
        .split('x')
        .map(|t| t.strip_prefix('C').and_then(|n| n.parse().ok()).filter(|&n: &usize| n > 1))
        .collect();
    orders.filter(|o| !o.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{abelian_invariants, min_generators};

    #[test]
    fn bundled_counts_and_orders() {
        assert_eq!(bundled_order(8).len(), 5);
        assert_eq!(bundled_order(16).len(), 14);
        assert_eq!(bundled_order(27).len(), 5);
        for k in [8, 16, 27] {
            for e in bundled_order(k) {
                assert_eq!(e.order(), k, "{}", e.id);
            }
        }
    }

    #[test]
    fn order_sixteen_groups_are_pairwise_different() {
        // exponent, center, generator count, involutions and class separate all 14
        let sig = |g: &FiniteGroup| {
            let inv = (1..g.order()).filter(|&x| g.element_order(x) == 2).count();
            (g.exponent(), g.center().order(), min_generators(g), inv, g.nilpotency_class())
        };
        let sigs: std::collections::HashSet<_> = bundled_order(16).iter().map(|e| sig(&e.group)).collect();
        assert_eq!(sigs.len(), 14);
    }

    #[test]
    fn lookups() {
        let d = resolve_group("catalog:64.dihedral").unwrap();
        assert_eq!((d.order(), d.group.nilpotency_class()), (64, 5));
        assert_eq!(resolve_group("8.4").unwrap().label(), "Q8");
        let a = resolve_group("C2xC4xC4xC16").unwrap();
        assert_eq!(abelian_invariants(&a.group).unwrap(), vec![2, 4, 4, 16]);
        assert!(resolve_group("catalog:99.1").is_err());
        assert_eq!(abelian_groups(2, 4).len(), 5);
        assert_eq!(abelian_groups(3, 4).len(), 5);
        assert!(family_entry("semidihedral", 3).is_none());
    }
}
