#![allow(dead_code)]

pub mod brute;
pub mod gen;
pub mod mutate;
pub mod reference;

use std::path::{Path, PathBuf};

use rankprover::engine::{saturate, Limits, Strategy};
use rankprover::parser::parse_statement;
use rankprover::{SaturationState, Statement};

/// Corpus statements small enough for every test run, with whether all
/// conclusions are expected to be proved.
pub const SMALL_CORPUS: &[(&str, bool)] = &[
    ("plane_intersection.stmt", true),
    ("plane_intersection_converse.stmt", true),
    ("desargues3d_noncoplanar.stmt", true),
    ("extra/relation_one.stmt", true),
    ("extra/triangle_lemma_am1.stmt", true),
    ("extra/triangle_lemma_am2.stmt", true),
    ("extra/distinct.stmt", false),
];

pub fn statements_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../statements")
}

pub fn load(name: &str) -> Statement {
    let path = statements_dir().join(name);
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("reading {}: {e}", path.display()));
    parse_statement(&text, 3).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn saturated(stmt: &Statement, strategy: Strategy) -> SaturationState {
    let mut state = SaturationState::initialize(stmt);
    saturate(&mut state, strategy, Limits::default()).expect("no limits set");
    state
}
