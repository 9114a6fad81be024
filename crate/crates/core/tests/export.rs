//! The export bundle as a downstream reader sees it.

use std::fs;

use otw_core::decomp::{decompose, DecompOptions};
use otw_core::export::{ExportBundle, Format};
use otw_core::terwilliger::TerwilligerAlgebra;
use otw_core::Error;

fn bundle(m: usize, format: Format) -> ExportBundle {
    let alg = TerwilligerAlgebra::build(m).unwrap();
    let dec = decompose(&alg, DecompOptions::default()).unwrap();
    ExportBundle::new(&alg, &dec, format)
}

#[test]
fn m3_files_and_counts() {
    let b = bundle(3, Format::Csv);
    let dir = tempfile::tempdir().unwrap();
    let files = b.write(dir.path()).unwrap();
    let names: Vec<String> = files.iter().map(|f| f.file_name().unwrap().to_string_lossy().into_owned()).collect();
    assert_eq!(names, b.manifest.files);

    let upsilon = fs::read_to_string(dir.path().join("upsilon.csv")).unwrap();
    let mut lines = upsilon.lines();
    assert_eq!(lines.next(), Some("mu,d,block_dim,multiplicity"));
    assert_eq!(lines.count(), 6);

    let blocks: serde_json::Value = serde_json::from_slice(&fs::read(dir.path().join("blocks.json")).unwrap()).unwrap();
    let elements = blocks["elements"].as_array().unwrap();
    assert_eq!(elements.len(), 35);
    assert!(elements.iter().all(|e| e["blocks"].as_array().unwrap().len() == 6));
    // every entry is [row, col, "p/q"], sorted row-major
    for e in elements {
        for block in e["blocks"].as_array().unwrap() {
            let entries: Vec<(u64, u64)> = block
                .as_array()
                .unwrap()
                .iter()
                .map(|t| {
                    assert!(t[2].is_string());
                    (t[0].as_u64().unwrap(), t[1].as_u64().unwrap())
                })
                .collect();
            assert!(entries.windows(2).all(|w| w[0] < w[1]));
        }
    }

    let manifest: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["algebra_dimension"], 35);
    assert_eq!(manifest["vector_count"], 35);
    assert_eq!(manifest["eigenvalues"], serde_json::json!([4, -3, 2, -1]));
    assert_eq!(manifest["multiplicities"], serde_json::json!([1, 6, 14, 14]));
}

#[test]
fn round_trip_and_stable_bytes() {
    for format in [Format::Json, Format::Csv] {
        let b = bundle(3, format);
        let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        let files = b.write(d1.path()).unwrap();
        bundle(3, format).write(d2.path()).unwrap();
        for f in &files {
            let name = f.file_name().unwrap();
            assert_eq!(fs::read(f).unwrap(), fs::read(d2.path().join(name)).unwrap(), "{name:?}");
        }
        assert_eq!(ExportBundle::read(d1.path()).unwrap(), b);
    }
}

#[test]
fn corrupt_files_are_reported_with_their_path() {
    let b = bundle(3, Format::Json);
    let dir = tempfile::tempdir().unwrap();
    b.write(dir.path()).unwrap();

    let path = dir.path().join("upsilon.csv");
    let text = fs::read_to_string(&path).unwrap();
    fs::write(&path, text.lines().take(3).collect::<Vec<_>>().join("\n")).unwrap();
    assert!(matches!(ExportBundle::read(dir.path()), Err(Error::Parse { .. })));

    b.write(dir.path()).unwrap();
    let path = dir.path().join("change_of_basis.json");
    let text = fs::read_to_string(&path).unwrap().replacen("\"1\"", "\"2/2\"", 1);
    fs::write(&path, text).unwrap();
    match ExportBundle::read(dir.path()) {
        Err(Error::Parse { context, .. }) => assert!(context.contains("change_of_basis.json")),
        other => panic!("expected a parse error, got {other:?}"),
    }

    fs::remove_file(dir.path().join("blocks.json")).unwrap();
    match ExportBundle::read(dir.path()) {
        Err(Error::Io { path, .. }) => assert!(path.ends_with("blocks.json")),
        other => panic!("expected an i/o error, got {other:?}"),
    }
}
