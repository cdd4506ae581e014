//! The full pipeline: enumerate candidates from the seed, verify each by
//! orbit closure, canonicalize, deduplicate, compute invariants, and
//! compare against the golden dataset.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::golden::{HomInfo, golden};
use crate::groupoid::{self, OrbitRecord, OrderKey};
use crate::lattice::Root;
use crate::search::{self, SearchConfig};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct ClassifyConfig {
    pub search: SearchConfig,
    pub order: OrderKey,
    /// Worker threads; `None` keeps the global default.
    pub threads: Option<usize>,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig { search: SearchConfig::default(), order: OrderKey::HeightLex, threads: None }
    }
}

/// One classified system, in the JSON schema of the report file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemRecord {
    pub nr: usize,
    /// Positive roots of the canonical representative, in canonical order.
    pub roots: Vec<[i64; 3]>,
    /// Cartan matrix of the canonical object.
    pub cartan: [[i64; 3]; 3],
    pub orbit_size: usize,
    pub cover_size: usize,
    pub hom: HomInfo,
    pub planes: BTreeMap<String, usize>,
}

impl SystemRecord {
    pub fn root_vecs(&self) -> Vec<Root> {
        self.roots.iter().map(|&c| Root::from_coords(c)).collect()
    }
}

pub struct ClassifyOutcome {
    pub records: Vec<SystemRecord>,
    /// Deduplicated candidate sets the search emitted.
    pub emitted: usize,
    /// How many of them failed orbit verification.
    pub invalid: usize,
}

/// Build the record of one verified system given its canonical sequence.
pub fn record_for(canonical: &[Root], order: OrderKey) -> Result<SystemRecord> {
    let promote = |e: groupoid::Invalid| Error::InconsistentCover(e.to_string());
    let rec = OrbitRecord::compute(canonical).map_err(promote)?;
    debug_assert_eq!(groupoid::canonical_form(&rec.orbit, order), canonical);
    let base = &rec.orbit.objects()[0];
    let cartan = groupoid::cartan_matrix(base).map_err(|e| Error::InconsistentCover(e.to_string()))?;
    let (census, _) = groupoid::plane_census(base);
    Ok(SystemRecord {
        nr: 0,
        roots: canonical.iter().map(|r| r.coords()).collect(),
        cartan: cartan.0,
        orbit_size: rec.orbit.len(),
        cover_size: rec.cover_size,
        hom: HomInfo { order: rec.hom_order, name: rec.hom_name },
        planes: census.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
    })
}

pub fn classify(cfg: &ClassifyConfig) -> Result<ClassifyOutcome> {
    match cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InconsistentCover(e.to_string()))?
            .install(|| classify_inner(cfg)),
        None => classify_inner(cfg),
    }
}

fn classify_inner(cfg: &ClassifyConfig) -> Result<ClassifyOutcome> {
    let emitted_sets = search::enumerate(&cfg.search);
    let emitted = emitted_sets.len();
    let canons: Vec<Option<Vec<Root>>> = emitted_sets
        .par_iter()
        .map(|set| groupoid::orbit(set).ok().map(|orb| groupoid::canonical_form(&orb, cfg.order)))
        .collect();
    let invalid = canons.iter().filter(|c| c.is_none()).count();
    let mut unique: Vec<Vec<Root>> = canons.into_iter().flatten().collect();
    unique.sort();
    unique.dedup();
    let mut records = unique
        .par_iter()
        .map(|canonical| record_for(canonical, cfg.order))
        .collect::<Result<Vec<SystemRecord>>>()?;
    records.sort_by(|a, b| {
        a.roots
            .len()
            .cmp(&b.roots.len())
            .then_with(|| cfg.order.seq_cmp(&a.root_vecs(), &b.root_vecs()))
    });
    for (i, r) in records.iter_mut().enumerate() {
        r.nr = i + 1;
    }
    Ok(ClassifyOutcome { records, emitted, invalid })
}

/// Differences between classified records and the golden dataset; empty
/// means an exact match of all 55 systems and their invariants.
pub fn compare_golden(records: &[SystemRecord]) -> Vec<String> {
    let mut diffs = Vec::new();
    let gold = golden();
    if records.len() != gold.len() {
        diffs.push(format!("found {} systems, expected {}", records.len(), gold.len()));
    }
    for (rec, g) in records.iter().zip(gold) {
        let nr = g.nr;
        let grs: Vec<[i64; 3]> = g.roots().iter().map(|r| r.coords()).collect();
        if rec.roots != grs {
            diffs.push(format!("nr {nr}: roots differ\n  got      {:?}\n  expected {grs:?}", rec.roots));
        }
        if rec.orbit_size != g.orbit_size {
            diffs.push(format!("nr {nr}: |O| = {}, expected {}", rec.orbit_size, g.orbit_size));
        }
        if rec.cover_size != g.cover_size {
            diffs.push(format!("nr {nr}: |A| = {}, expected {}", rec.cover_size, g.cover_size));
        }
        if rec.hom != g.hom {
            diffs.push(format!("nr {nr}: Hom = {:?}, expected {:?}", rec.hom, g.hom));
        }
        if rec.planes != g.planes {
            diffs.push(format!("nr {nr}: planes = {:?}, expected {:?}", rec.planes, g.planes));
        }
    }
    diffs
}
