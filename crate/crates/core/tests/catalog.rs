use std::fs;
use std::process::Command;

use pgph::catalog::{bundled, bundled_order, load_catalog, resolve_catalog, write_catalog};
use pgph::Error;

#[test]
fn round_trip_keeps_every_bundled_group() {
    let dir = tempfile::tempdir().unwrap();
    let entries = bundled();
    write_catalog(dir.path(), &entries).unwrap();
    let loaded = load_catalog(dir.path()).unwrap();
    assert_eq!(loaded.len(), entries.len());
    for e in &entries {
        let l = loaded.iter().find(|l| l.id == e.id).expect("id survives");
        assert_eq!(l.group.cayley(), e.group.cayley(), "{}", e.id);
        assert_eq!(l.file, e.file);
    }
}

#[test]
fn ids_sort_numerically() {
    let dir = tempfile::tempdir().unwrap();
    write_catalog(dir.path(), &bundled_order(16)).unwrap();
    let ids: Vec<String> = load_catalog(dir.path()).unwrap().into_iter().map(|e| e.id).collect();
    let want: Vec<String> = (1..=14).map(|i| format!("16.{i}")).collect();
    assert_eq!(ids, want);
}

#[test]
fn directory_without_index_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    assert!(load_catalog(dir.path()).unwrap().is_empty());
    assert!(matches!(load_catalog(dir.path().join("missing")), Err(Error::Data { .. })));
}

#[test]
fn malformed_file_is_named() {
    let dir = tempfile::tempdir().unwrap();
    write_catalog(dir.path(), &bundled_order(4)).unwrap();
    fs::write(dir.path().join("4.2.json"), r#"{"name": "V4", "degree": 4, "generators": [[1, 1, 3, 4]]}"#).unwrap();
    match load_catalog(dir.path()) {
        Err(Error::Data { file, .. }) => assert!(file.ends_with("4.2.json"), "{file:?}"),
        other => panic!("expected a data error, got {other:?}"),
    }
    fs::write(dir.path().join("4.2.json"), "[").unwrap();
    let err = load_catalog(dir.path()).unwrap_err();
    assert!(err.to_string().contains("4.2.json"), "{err}");
}

#[test]
fn duplicate_ids_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    write_catalog(dir.path(), &bundled_order(4)).unwrap();
    fs::write(dir.path().join("index.json"), r#"["4.1", "4.2", "4.1"]"#).unwrap();
    let err = load_catalog(dir.path()).unwrap_err();
    assert!(err.to_string().contains("duplicate id 4.1"), "{err}");
}

#[test]
fn missing_group_file() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("index.json"), r#"["9.1"]"#).unwrap();
    let err = load_catalog(dir.path()).unwrap_err();
    assert!(err.to_string().contains("9.1.json"), "{err}");
}

#[test]
fn bundled_catalog_names() {
    assert_eq!(resolve_catalog("bundled8").unwrap().len(), 5);
    assert_eq!(resolve_catalog("bundled16").unwrap().len(), 14);
    assert_eq!(resolve_catalog("bundled27").unwrap().len(), 5);
    assert!(matches!(resolve_catalog("bundled6"), Err(Error::InvalidInput(_))));
    assert!(matches!(resolve_catalog("bundledX"), Err(Error::InvalidInput(_))));
}

fn csv(catalog: &str, max_degree: &str) -> Vec<String> {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let o = Command::new(env!("CARGO_BIN_EXE_pgph"))
        .args(["classify", "--catalog", catalog, "--series", "all", "--max-degree", max_degree])
        .args(["--csv", path.to_str().unwrap()])
        .env_remove("PGPH_BUDGET")
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    fs::read_to_string(path).unwrap().lines().map(str::to_string).collect()
}

#[test]
fn csv_rows_for_orders_8_and_27() {
    let header = "functor,groups,classes,max,t,single_classes,single_max,d,partial";
    assert_eq!(
        csv("bundled8", "4"),
        vec![
            header,
            "Z,5,5,1,3,5,1,3,false",
            "Zp,5,5,1,3,5,1,3,false",
            "L,5,5,1,3,5,1,3,false",
            "Lp,5,4,2,3,4,2,3,false",
            "D,5,5,1,3,5,1,3,false",
        ]
    );
    let rows = csv("bundled27", "3");
    assert_eq!(rows.len(), 6);
    for (row, f) in rows[1..].iter().zip(["Z", "Zp", "L", "Lp", "D"]) {
        assert_eq!(row, &format!("{f},5,5,1,3,5,1,3,false"));
    }
}

#[test]
fn csv_class_counts_for_order_16() {
    let rows = csv("bundled16", "4");
    let counts: Vec<(String, String, String)> = rows[1..]
        .iter()
        .map(|r| {
            let c: Vec<&str> = r.split(',').collect();
            (c[0].to_string(), c[2].to_string(), c[3].to_string())
        })
        .collect();
    let want = [("Z", "13", "2"), ("Zp", "13", "2"), ("L", "12", "2"), ("Lp", "9", "2"), ("D", "10", "2")];
    let want: Vec<(String, String, String)> =
        want.iter().map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string())).collect();
    assert_eq!(counts, want);
}
