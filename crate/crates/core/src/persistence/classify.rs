use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::compute::persistence_sequence;
use super::integral::{integral_persistence_sequence, IntegralPersistenceMatrix};
use super::matrix::PersistenceMatrix;
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Functor};

/// Canonical text of one degree of a matrix sequence: functor tag, size and
/// the upper triangular entries row by row.
fn degree_key(m: &PersistenceMatrix) -> String {
    let mut s = format!("{}:{}:{}:", m.functor, m.degree, m.size());
    for i in 1..=m.size() {
        for j in i..=m.size() {
            let _ = write!(s, "{},", m.get(i, j));
        }
        s.push(';');
    }
    s
}

fn integral_degree_key(m: &IntegralPersistenceMatrix) -> String {
    let mut s = format!("I{}:{}:{}:", m.functor, m.degree, m.size());
    for i in 1..=m.size() {
        for j in i..=m.size() {
            let t = m.get(i, j).expect("upper triangle is filled");
            let _ = write!(s, "{:?}|{:?}|{:?},", t.a, t.b, t.c);
        }
        s.push(';');
    }
    s
}

/// The invariant `(P_1, ..., P_t)` (or its integral version) of one group in
/// a canonical serialized form; equal keys mean equal matrix sequences.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct InvariantFingerprint {
    pub group: String,
    pub functor: Functor,
    pub integral: bool,
    /// One key per degree `1..=t`.
    pub degrees: Vec<String>,
}

impl InvariantFingerprint {
    pub fn from_matrices(group: &str, functor: Functor, matrices: &[PersistenceMatrix]) -> Self {
        InvariantFingerprint {
            group: group.to_string(),
            functor,
            integral: false,
            degrees: matrices.iter().map(degree_key).collect(),
        }
    }

    pub fn from_integral(group: &str, functor: Functor, matrices: &[IntegralPersistenceMatrix]) -> Self {
        InvariantFingerprint {
            group: group.to_string(),
            functor,
            integral: true,
            degrees: matrices.iter().map(integral_degree_key).collect(),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.len()
    }

    /// Key of the degrees `1..=t`.
    pub fn prefix(&self, t: usize) -> String {
        self.degrees[..t.min(self.degrees.len())].join("\n")
    }

    pub fn key(&self) -> String {
        self.prefix(self.degrees.len())
    }

    /// Key of degree `d` alone.
    pub fn single(&self, d: usize) -> &str {
        &self.degrees[d - 1]
    }
}

/// Fingerprint of `G` for degrees `1..=t`.
pub fn fingerprint(g: &Arc<FiniteGroup>, functor: Functor, t: usize, integral: bool, budget: Budget) -> Result<InvariantFingerprint> {
    if integral {
        let ms = integral_persistence_sequence(g, functor, 1, t, budget)?;
        return Ok(InvariantFingerprint::from_integral(g.name(), functor, &ms));
    }
    let seq = persistence_sequence(g, functor, t, budget)?;
    if let Some(reason) = seq.failure {
        return Err(Error::Budget {
            what: format!("degree {t} for {}: {reason}", g.name()),
            needed: u128::MAX,
            budget: budget.fp_entries,
        });
    }
    Ok(InvariantFingerprint::from_matrices(g.name(), functor, &seq.matrices))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionStats {
    pub degree: usize,
    pub classes: usize,
    #[serde(rename = "maxClassSize")]
    pub max_class_size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub group: String,
    pub reason: String,
}

/// Classes of a catalog under the invariant `P_{*<=t}^F`.
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub functor: Functor,
    #[serde(rename = "maxDegree")]
    pub max_degree: usize,
    pub integral: bool,
    pub groups: usize,
    pub classes: usize,
    #[serde(rename = "maxClassSize")]
    pub max_class_size: usize,
    /// Smallest `t' <= t` whose prefix `P_1..P_t'` gives the same partition
    /// as the full invariant.
    #[serde(rename = "minimalPrefix")]
    pub minimal_prefix: usize,
    /// `minimal_prefix + 1`: the same threshold counted from degree 0, the
    /// convention of the published tables.
    #[serde(rename = "stableT")]
    pub stable_t: usize,
    /// Best single degree: most classes, smallest degree on ties.
    #[serde(rename = "singleDegree")]
    pub single_degree: PartitionStats,
    /// `single_degree.degree + 1`, counted like `stable_t`.
    #[serde(rename = "singleT")]
    pub single_t: usize,
    /// Partition sizes of `P_{*<=t'}` for `t' = 1..=t`.
    pub prefixes: Vec<PartitionStats>,
    /// Partition sizes of `P_d` alone for `d = 1..=t`.
    #[serde(rename = "perDegree")]
    pub per_degree: Vec<PartitionStats>,
    /// Group names per class, in catalog order.
    pub members: Vec<Vec<String>>,
    pub partial: bool,
    pub failures: Vec<Failure>,
}

impl ClassificationReport {
    /// `{"classes", "maxClassSize", "stableT"}`.
    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::json!({
            "classes": self.classes,
            "maxClassSize": self.max_class_size,
            "stableT": self.stable_t,
        })
    }

    pub const CSV_HEADER: &'static str = "functor,groups,classes,max,t,single_classes,single_max,d,partial";

    /// One row shaped like the summary tables.
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.functor,
            self.groups,
            self.classes,
            self.max_class_size,
            self.stable_t,
            self.single_degree.classes,
            self.single_degree.max_class_size,
            self.single_t,
            self.partial
        )
    }
}

/// Groups bucketed by key, classes ordered by first member.
fn partition(keys: impl Iterator<Item = (usize, String)>) -> Vec<Vec<usize>> {
    let mut buckets: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, k) in keys {
        buckets.entry(k).or_default().push(i);
    }
    let mut classes: Vec<Vec<usize>> = buckets.into_values().collect();
    classes.sort();
    classes
}

fn stats(degree: usize, classes: &[Vec<usize>]) -> PartitionStats {
    PartitionStats {
        degree,
        classes: classes.len(),
        max_class_size: classes.iter().map(Vec::len).max().unwrap_or(0),
    }
}

/// Partition statistics of already computed fingerprints.
pub fn classify_fingerprints(
    prints: &[InvariantFingerprint],
    functor: Functor,
    t: usize,
    integral: bool,
    failures: Vec<Failure>,
) -> ClassificationReport {
    let full = partition(prints.iter().enumerate().map(|(i, f)| (i, f.prefix(t))));
    let prefixes: Vec<Vec<Vec<usize>>> = (1..=t)
        .map(|s| partition(prints.iter().enumerate().map(|(i, f)| (i, f.prefix(s)))))
        .collect();
    let per_degree: Vec<PartitionStats> = (1..=t)
        .map(|d| stats(d, &partition(prints.iter().enumerate().map(|(i, f)| (i, f.single(d).to_string())))))
        .collect();
    let minimal_prefix = prefixes.iter().position(|p| *p == full).map_or(t, |i| i + 1);
    let single_degree = per_degree
        .iter()
        .copied()
        .fold(None::<PartitionStats>, |best, s| match best {
            Some(b) if b.classes >= s.classes => Some(b),
            _ => Some(s),
        })
        .unwrap_or(PartitionStats {
            degree: 0,
            classes: 0,
            max_class_size: 0,
        });
    let overall = stats(t, &full);
    ClassificationReport {
        functor,
        max_degree: t,
        integral,
        groups: prints.len(),
        classes: overall.classes,
        max_class_size: overall.max_class_size,
        minimal_prefix,
        stable_t: minimal_prefix + 1,
        single_t: single_degree.degree + 1,
        single_degree,
        prefixes: prefixes.iter().enumerate().map(|(i, p)| stats(i + 1, p)).collect(),
        per_degree,
        members: full
            .iter()
            .map(|c| c.iter().map(|&i| prints[i].group.clone()).collect())
            .collect(),
        partial: !failures.is_empty(),
        failures,
    }
}

/// Classifies groups by `P_{*<=t}^F` (or `IP_{*<=t}^F`), computing groups in
/// parallel. Groups that fail are listed and left out.
pub fn classify(groups: &[Arc<FiniteGroup>], functor: Functor, t: usize, integral: bool, budget: Budget) -> ClassificationReport {
    let results: Vec<Result<InvariantFingerprint>> = groups
        .par_iter()
        .map(|g| fingerprint(g, functor, t, integral, budget))
        .collect();
    let mut prints = Vec::new();
    let mut failures = Vec::new();
    for (g, r) in groups.iter().zip(results) {
        match r {
            Ok(f) => prints.push(f),
            Err(e) => failures.push(Failure {
                group: g.name().to_string(),
                reason: e.to_string(),
            }),
        }
    }
    classify_fingerprints(&prints, functor, t, integral, failures)
}
