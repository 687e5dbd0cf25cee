mod common;

use std::fs;

use common::*;
use dimlab::verify::{check_dim_quotients, finite_corpus, FiniteGroupTable, PresentationSpec, Status};

fn entries(dir: &str, ext: &str) -> Vec<std::path::PathBuf> {
    let mut v: Vec<_> = fs::read_dir(data(dir)).unwrap().map(|e| e.unwrap().path()).filter(|p| p.extension().is_some_and(|e| e == ext)).collect();
    v.sort();
    v
}

#[test]
fn bundled_tables_match_the_generated_corpus() {
    let files = entries("groups", "tbl");
    let corpus = finite_corpus().unwrap();
    assert_eq!(files.len(), corpus.len());
    for (name, g) in &corpus {
        let loaded = FiniteGroupTable::load(data(&format!("groups/{name}.tbl"))).unwrap();
        assert_eq!(loaded.order(), g.order(), "{name}");
        assert_eq!(loaded.abelianization(), g.abelianization(), "{name}");
    }
}

#[test]
fn bundled_tables_have_trivial_low_dimension_quotients() {
    for path in entries("groups", "tbl") {
        let g = FiniteGroupTable::load(&path).unwrap();
        let r = check_dim_quotients(&path.display().to_string(), &g);
        assert_eq!(r.status, Status::Verified, "{r:?}");
    }
}

#[test]
fn presentations_parse_to_the_named_groups() {
    let expected: &[(&str, &[i64])] = &[
        ("d8", &[2, 2]),
        ("klein", &[2, 2]),
        ("klein_rank3", &[2, 2]),
        ("z", &[0]),
        ("z2", &[2]),
        ("z2_cubed", &[2, 2, 2]),
        ("z2_z4", &[2, 4]),
        ("z4_z2", &[2, 4]),
        ("z4_z4", &[4, 4]),
        ("z_z", &[0, 0]),
    ];
    assert_eq!(entries("presentations", "pres").len(), expected.len());
    for (name, inv) in expected {
        let p = PresentationSpec::load(data(&format!("presentations/{name}.pres"))).unwrap();
        assert_eq!(invariants(&p.abelianization()), invariants_of_cyclics(inv), "{name}");
    }
}

#[test]
fn malformed_table_is_rejected() {
    // Not associative: a Latin square on three letters without an identity row.
    assert!(FiniteGroupTable::new(vec![vec![1, 0, 2], vec![0, 2, 1], vec![2, 1, 0]]).is_err());
}
