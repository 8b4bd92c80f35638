//! Keeps the JSON fixture files in `fixtures/` in sync with the
//! programmatic tables, which are the oracles.
//!
//! To regenerate the algebra files after changing a table:
//! `cargo test -p superbracket --test fixture_files -- --ignored regenerate`

use std::path::PathBuf;

use superbracket::coeff::Coeff;
use superbracket::fixtures;
use superbracket::poisson::PoissonStructure;
use superbracket::superpoly::Coordinates;
use superbracket::tensor::{BracketTables, StructureTensor};

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn algebra_fixtures() -> Vec<(&'static str, StructureTensor)> {
    vec![
        ("gl2.json", fixtures::gl2()),
        ("quaternions.json", fixtures::quaternions()),
        ("octonions.json", fixtures::octonions()),
        ("grassmann2.json", fixtures::grassmann2()),
        ("gl11.json", fixtures::gl11()),
        ("zero.json", fixtures::zero_algebra(2)),
    ]
}

#[test]
fn algebra_files_match_programmatic_tables() {
    for (file, expected) in algebra_fixtures() {
        let path = fixture_dir().join(file);
        let loaded = StructureTensor::from_json_file(&path)
            .unwrap_or_else(|e| panic!("loading {file}: {e}"));
        assert_eq!(loaded, expected, "{file} drifted from the programmatic table");
    }
}

#[test]
fn brackets_file_matches_programmatic_tables() {
    let path = fixture_dir().join("su2_f_only.json");
    let loaded = BracketTables::from_json_file(&path).expect("su2 tables load");
    assert_eq!(loaded, fixtures::su2_f_only());
}

#[test]
fn poisson_files_load_and_have_expected_shape() {
    let canonical = PoissonStructure::from_json_file(fixture_dir().join("poisson_canonical.json"))
        .expect("canonical structure loads");
    assert_eq!(canonical.coords(), Coordinates::new(2, 1));
    assert_eq!(canonical.even_entry(0, 1).to_string(), "1");
    assert_eq!(canonical.odd_entry(0, 0), Coeff::one());

    let nonjacobi = PoissonStructure::from_json_file(fixture_dir().join("poisson_nonjacobi.json"))
        .expect("counterexample structure loads");
    assert_eq!(nonjacobi.coords(), Coordinates::new(3, 0));
    assert_eq!(nonjacobi.even_entry(0, 1).to_string(), "z1");
    assert_eq!(nonjacobi.even_entry(0, 2).to_string(), "1");
}

#[test]
#[ignore = "writes the algebra fixture files; run explicitly after table changes"]
fn regenerate() {
    let dir = fixture_dir();
    std::fs::create_dir_all(&dir).expect("fixtures directory");
    for (file, tensor) in algebra_fixtures() {
        std::fs::write(dir.join(file), tensor.to_json_string() + "\n").expect("write fixture");
    }
    std::fs::write(
        dir.join("su2_f_only.json"),
        fixtures::su2_f_only().to_json_string() + "\n",
    )
    .expect("write fixture");
}
