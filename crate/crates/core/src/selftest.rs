//! Invariant suites over the bundled catalog, as run by `pgph selftest`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{abelian_groups, bundled, load_catalog, write_catalog, CatalogEntry};
use crate::config::Budget;
use crate::error::Result;
use crate::group::{min_generators, FiniteGroup, Functor};
use crate::homology::{bar_homology_fp, default_prime, homology_dims};
use crate::persistence::{
    barcode, check_lower_central_structure, matrix_from_barcode, persistence_sequence, recover_abelian_invariants,
    recover_order,
};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub subject: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(suite: &'static str, subject: impl Into<String>, failure: Option<String>) -> Check {
        Check {
            suite,
            subject: subject.into(),
            passed: failure.is_none(),
            detail: failure,
        }
    }

    fn from_result(suite: &'static str, subject: impl Into<String>, r: Result<Option<String>>) -> Check {
        Check::new(suite, subject, r.unwrap_or_else(|e| Some(e.to_string())))
    }
}

/// Bundled groups of order at most `max_order`.
fn small(max_order: usize) -> Vec<Arc<FiniteGroup>> {
    bundled()
        .into_iter()
        .filter(|e| e.order() > 1 && e.order() <= max_order)
        .map(|e| e.group)
        .collect()
}

/// Persistence matrices in degrees 1 and 2 for every series: monotone,
/// barcode round trip, `H_1` diagonal, column counts and recovered orders.
fn matrix_checks(g: &Arc<FiniteGroup>, budget: Budget) -> Vec<Check> {
    Functor::ALL
        .iter()
        .map(|&f| {
            let subject = format!("{} {f}", g.name());
            let r = (|| -> Result<Option<String>> {
                let seq = persistence_sequence(g, f, 2, budget)?;
                if let Some(reason) = seq.failure {
                    return Ok(Some(reason));
                }
                for m in &seq.matrices {
                    if !m.is_monotone() {
                        return Ok(Some(format!("P_{} is not monotone", m.degree)));
                    }
                    if matrix_from_barcode(&barcode(m)?).matrix != m.matrix {
                        return Ok(Some(format!("P_{} does not survive the barcode round trip", m.degree)));
                    }
                }
                let p1 = &seq.matrices[0];
                if p1.get(1, 1) != min_generators(g) {
                    return Ok(Some(format!("p_11 = {} but d(G) = {}", p1.get(1, 1), min_generators(g))));
                }
                if matches!(f, Functor::L | Functor::Z) && !g.is_trivial() && p1.size() != g.nilpotency_class() {
                    return Ok(Some(format!("{} columns for class {}", p1.size(), g.nilpotency_class())));
                }
                if matches!(f, Functor::Lp | Functor::Zp) {
                    let order = recover_order(p1, &seq.matrices[1], default_prime(g) as u64)?;
                    if order != g.order() as u64 {
                        return Ok(Some(format!("recovered order {order}")));
                    }
                }
                Ok(None)
            })();
            Check::from_result("matrices", subject, r)
        })
        .collect()
}

fn structure_check(g: &Arc<FiniteGroup>, budget: Budget) -> Check {
    let r = check_lower_central_structure(g, budget).map(|rep| {
        rep.clauses
            .iter()
            .find(|c| !c.passed)
            .map(|c| format!("{}: {}", c.clause, c.witness.clone().unwrap_or_default()))
    });
    Check::from_result("lower-central-structure", g.name(), r)
}

fn oracle_check(g: &Arc<FiniteGroup>, max_degree: usize, budget: Budget) -> Check {
    let p = default_prime(g);
    let r = (|| -> Result<Option<String>> {
        let dims = homology_dims(g, p, max_degree, budget)?;
        for (n, &d) in dims.iter().enumerate().skip(1) {
            let bar = bar_homology_fp(g, p, n, &budget)?;
            if bar != d {
                return Ok(Some(format!("degree {n}: minimal {d}, bar {bar}")));
            }
        }
        Ok(None)
    })();
    Check::from_result("oracle", g.name(), r)
}

fn abelian_check(e: &CatalogEntry, budget: Budget) -> Check {
    let g = &e.group;
    let p = default_prime(g) as u64;
    let r = (|| -> Result<Option<String>> {
        let seq = persistence_sequence(g, Functor::Zp, 2, budget)?;
        let got = recover_abelian_invariants(&seq.matrices[0], seq.matrices.get(1), p)?;
        let want = crate::group::abelian_invariants(g)?;
        Ok((got != want).then(|| format!("recovered {got:?}, expected {want:?}")))
    })();
    Check::from_result("abelian-invariants", e.id.clone(), r)
}

fn round_trip_check() -> Check {
    let r = (|| -> Result<Option<String>> {
        let dir = std::env::temp_dir().join(format!("pgph-selftest-{}", std::process::id()));
        let entries = bundled();
        write_catalog(&dir, &entries)?;
        let loaded = load_catalog(&dir);
        let _ = std::fs::remove_dir_all(&dir);
        let loaded = loaded?;
        if loaded.len() != entries.len() {
            return Ok(Some(format!("{} of {} entries reloaded", loaded.len(), entries.len())));
        }
        for e in &entries {
            match loaded.iter().find(|l| l.id == e.id) {
                Some(l) if l.group.cayley() == e.group.cayley() => {}
                _ => return Ok(Some(format!("{} changed", e.id))),
            }
        }
        Ok(None)
    })();
    Check::from_result("round-trip", "bundled catalog", r)
}

/// Runs every suite. `quick` limits the groups to order 16 and the oracle
/// to order 8.
pub fn run_selftest(budget: Budget, quick: bool) -> Vec<Check> {
    let (matrix_cap, oracle_cap, oracle_degree) = if quick { (16, 8, 3) } else { (32, 16, 3) };
    let mut checks = vec![round_trip_check()];
    let groups = small(matrix_cap);
    checks.extend(groups.par_iter().flat_map_iter(|g| matrix_checks(g, budget)).collect::<Vec<_>>());
    checks.extend(
        groups
            .par_iter()
            .filter(|g| !g.is_abelian())
            .map(|g| structure_check(g, budget))
            .collect::<Vec<_>>(),
    );
    checks.extend(
        small(oracle_cap)
            .par_iter()
            .map(|g| oracle_check(g, oracle_degree, budget))
            .collect::<Vec<_>>(),
    );
    let abelian: Vec<CatalogEntry> = [(2, 1..=5), (3, 1..=3)]
        .into_iter()
        .flat_map(|(p, ks)| ks.flat_map(move |k| abelian_groups(p, k)))
        .collect();
    checks.extend(abelian.par_iter().map(|e| abelian_check(e, budget)).collect::<Vec<_>>());
    checks
}
