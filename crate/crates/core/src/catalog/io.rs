use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{CatalogEntry, Provenance};
use crate::error::{Error, Result};
use crate::group::Permutation;

const INDEX: &str = "index.json";

/// On-disk description of a group by permutation generators with one-based
/// image lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    #[serde(default)]
    pub tags: Vec<String>,
}

impl GroupFile {
    pub fn new(name: &str, generators: &[Permutation], tags: Vec<String>) -> GroupFile {
        let degree = generators.iter().map(Permutation::degree).max().unwrap_or(1);
        GroupFile {
            name: name.to_string(),
            degree,
            generators: generators.iter().map(|g| g.extended(degree).one_based()).collect(),
            tags,
        }
    }

    pub fn permutations(&self) -> Result<Vec<Permutation>> {
        if self.generators.is_empty() {
            return Err(Error::InvalidInput("no generators".into()));
        }
        self.generators
            .iter()
            .map(|g| {
                if g.len() != self.degree {
                    return Err(Error::InvalidInput(format!(
                        "generator has {} images, degree is {}",
                        g.len(),
                        self.degree
                    )));
                }
                Permutation::from_one_based(g)
            })
            .collect()
    }
}

pub fn read_group_file(path: &Path) -> Result<GroupFile> {
    let text = fs::read_to_string(path).map_err(|e| Error::data(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::data(path, e))
}

/// Sort key: numeric order, then numeric index when there is one.
fn id_key(id: &str) -> (usize, usize, String) {
    match id.split_once('.') {
        Some((o, i)) => (
            o.parse().unwrap_or(usize::MAX),
            i.parse().unwrap_or(usize::MAX),
            id.to_string(),
        ),
        None => (usize::MAX, usize::MAX, id.to_string()),
    }
}

/// Loads every group listed in `dir/index.json` (a JSON array of ids; group
/// `id` lives in `dir/id.json`). A directory without an index is empty.
pub fn load_catalog(dir: impl AsRef<Path>) -> Result<Vec<CatalogEntry>> {
    let dir = dir.as_ref();
    if !dir.is_dir() {
        return Err(Error::data(dir, "not a catalog directory"));
    }
    let index_path = dir.join(INDEX);
    if !index_path.exists() {
        return Ok(Vec::new());
    }
    let text = fs::read_to_string(&index_path).map_err(|e| Error::data(&index_path, e))?;
    let ids: Vec<String> = serde_json::from_str(&text).map_err(|e| Error::data(&index_path, e))?;
    let mut seen = std::collections::HashSet::new();
    let mut entries = Vec::with_capacity(ids.len());
    for id in ids {
        if !seen.insert(id.clone()) {
            return Err(Error::data(&index_path, format!("duplicate id {id}")));
        }
        let path: PathBuf = dir.join(format!("{id}.json"));
        let file = read_group_file(&path)?;
        let provenance = if file.tags.iter().any(|t| t == "bundled") {
            Provenance::Bundled
        } else {
            Provenance::Ingested
        };
        let entry = CatalogEntry::from_file(&id, file, provenance, Some(path.clone()))
            .map_err(|e| Error::data(&path, e))?;
        entries.push(entry);
    }
    entries.sort_by_key(|e| id_key(&e.id));
    Ok(entries)
}

/// Writes group files and the index for `entries`.
pub fn write_catalog(dir: impl AsRef<Path>, entries: &[CatalogEntry]) -> Result<()> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    for e in entries {
        let text = serde_json::to_string_pretty(&e.file).expect("group file serializes");
        fs::write(dir.join(format!("{}.json", e.id)), text + "\n")?;
    }
    let ids: Vec<&str> = entries.iter().map(|e| e.id.as_str()).collect();
    fs::write(dir.join(INDEX), serde_json::to_string_pretty(&ids).expect("ids serialize") + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::bundled_order;

    #[test]
    fn round_trip_preserves_tables() {
        let dir = tempfile::tempdir().unwrap();
        let entries = bundled_order(8);
        write_catalog(dir.path(), &entries).unwrap();
        let loaded = load_catalog(dir.path()).unwrap();
        assert_eq!(loaded.len(), 5);
        for (a, b) in entries.iter().zip(&loaded) {
            assert_eq!(a.id, b.id);
            assert_eq!(a.group.cayley(), b.group.cayley());
            assert_eq!(b.provenance, Provenance::Bundled);
        }
    }

    #[test]
    fn empty_and_malformed() {
        let dir = tempfile::tempdir().unwrap();
        assert!(load_catalog(dir.path()).unwrap().is_empty());
        fs::write(dir.path().join(INDEX), "[\"8.9\"]").unwrap();
        fs::write(dir.path().join("8.9.json"), "{\"name\": 3}").unwrap();
        match load_catalog(dir.path()) {
            Err(Error::Data { file, .. }) => assert!(file.ends_with("8.9.json")),
            other => panic!("expected a data error, got {other:?}"),
        }
    }
}
