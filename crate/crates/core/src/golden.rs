//! The golden dataset: the 55 root systems and their invariants, shipped
//! as versioned data files. The classification is compared against this
//! dataset, never derived from it.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::lattice::Root;
use crate::words::parse_word;

pub const GOLDEN_JSON: &str = include_str!("../data/golden.json");
pub const APPENDIX_TEXT: &str = include_str!("../data/appendix.txt");

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct HomInfo {
    pub order: usize,
    pub name: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct GoldenSystem {
    pub nr: usize,
    pub words: Vec<String>,
    pub orbit_size: usize,
    pub cover_size: usize,
    pub hom: HomInfo,
    /// Plane-size histogram, keys are the sizes as decimal strings.
    pub planes: BTreeMap<String, usize>,
}

impl GoldenSystem {
    /// Positive roots in the listed (canonical) order.
    pub fn roots(&self) -> Vec<Root> {
        self.words.iter().map(|w| parse_word(w).expect("golden word")).collect()
    }
}

pub fn golden() -> &'static [GoldenSystem] {
    static DATA: OnceLock<Vec<GoldenSystem>> = OnceLock::new();
    DATA.get_or_init(|| {
        let v: Vec<GoldenSystem> = serde_json::from_str(GOLDEN_JSON).expect("golden.json");
        assert_eq!(v.len(), 55);
        v
    })
}

pub fn golden_system(nr: usize) -> Option<&'static GoldenSystem> {
    golden().get(nr.checked_sub(1)?).filter(|g| g.nr == nr)
}

/// Render one system the way the appendix file does.
pub fn appendix_lines(nr: usize, words: &[String]) -> String {
    format!("Nr. {nr} with {} positive roots:\n{}\n", words.len(), words.join(", "))
}
