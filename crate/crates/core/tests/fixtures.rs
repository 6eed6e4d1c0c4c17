//! The JSON files under `fixtures/` must match the builders.
//! Run with `MULTIDET_BLESS=1` to rewrite them.

use std::path::PathBuf;

use multidet::fixtures;
use multidet::workspace::{load_workspace, Workspace};

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

#[test]
fn bundled_files_match_builders() {
    let bless = std::env::var_os("MULTIDET_BLESS").is_some();
    for (stem, file) in fixtures::all().unwrap() {
        let text = Workspace::from_file(file).unwrap().emit();
        let path = dir().join(format!("{stem}.json"));
        if bless {
            std::fs::write(&path, &text).unwrap();
        }
        let on_disk = std::fs::read_to_string(&path).unwrap_or_default();
        assert!(on_disk == text, "{} is stale; rerun with MULTIDET_BLESS=1", path.display());
    }
}

#[test]
fn bundled_files_load_together() {
    let paths: Vec<PathBuf> = ["graded_lines", "rings", "cubes"].iter().map(|s| dir().join(format!("{s}.json"))).collect();
    let ws = load_workspace(&paths).unwrap();
    assert_eq!(ws.presentations.len(), 1);
    assert!(ws.catrings.contains_key("Z"));
    assert!(ws.cubes.contains_key("broken-square"));
}
