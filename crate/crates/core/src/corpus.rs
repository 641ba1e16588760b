//! Bundled triangulations and categories.
//!
//! Files are embedded at build time. Setting `TYINV_CORPUS_DIR` makes the
//! loaders read `<dir>/triangulations/<name>.json` and
//! `<dir>/categories/<name>.json` instead, falling back to the embedded copy.

use crate::triangulation::{Triangulation, TriangulationError};
use crate::tycat::{CategoryError, TYData};
use thiserror::Error;

macro_rules! embed {
    ($dir:literal: $($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../corpus/", $dir, "/", $name, ".json")))),*]
    };
}

const TRIANGULATIONS: &[(&str, &str)] = embed!("triangulations":
    "s3_one_tet", "s3_two_tet", "s3_three_tet", "rp3", "rp3_two_vertex", "l31",
    "s2xs1", "quaternionic", "census_q8_30", "rp3_sum_rp3", "nonorientable",
);

const CATEGORIES: &[(&str, &str)] = embed!("categories":
    "z2_plus", "z2_minus", "z3_k1_plus", "z3_k1_minus", "z3_k2_plus", "z3_k2_minus",
    "z4_k1_plus", "z4_k1_minus", "z4_k3_plus", "z4_k3_minus",
    "z2z2_diag_plus", "z2z2_diag_minus", "z2z2_hyp_plus", "z2z2_hyp_minus",
);

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("no bundled {kind} named {name:?}")]
    Unknown { kind: &'static str, name: String },
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

fn source(kind: &'static str, table: &[(&str, &str)], name: &str) -> Result<String, CorpusError> {
    if let Ok(dir) = std::env::var("TYINV_CORPUS_DIR") {
        let path = std::path::Path::new(&dir).join(kind).join(format!("{name}.json"));
        if let Ok(text) = std::fs::read_to_string(path) {
            return Ok(text);
        }
    }
    table
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| text.to_string())
        .ok_or_else(|| CorpusError::Unknown { kind, name: name.to_string() })
}

pub fn triangulation_names() -> Vec<&'static str> {
    TRIANGULATIONS.iter().map(|(n, _)| *n).collect()
}

pub fn category_names() -> Vec<&'static str> {
    CATEGORIES.iter().map(|(n, _)| *n).collect()
}

pub fn triangulation_source(name: &str) -> Result<String, CorpusError> {
    source("triangulations", TRIANGULATIONS, name)
}

pub fn category_source(name: &str) -> Result<String, CorpusError> {
    source("categories", CATEGORIES, name)
}

pub fn load_triangulation(name: &str) -> Result<Triangulation, CorpusError> {
    Ok(Triangulation::from_json(&triangulation_source(name)?)?)
}

pub fn load_category(name: &str) -> Result<TYData, CorpusError> {
    Ok(TYData::from_json(&category_source(name)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_bundled_category_parses() {
        for name in category_names() {
            load_category(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn unknown_names_are_reported() {
        assert!(matches!(load_triangulation("nope"), Err(CorpusError::Unknown { .. })));
    }
}
