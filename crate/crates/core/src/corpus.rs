//! Corpus sweeps: every topology on `n ≤ 4` points, or a seeded random
//! sample on up to six points, each verified and reported as one JSON line.
//!
//! Work fans out over a bounded rayon pool; reports are collected in frame
//! order, and wall-clock timings are left out unless asked for, so output is
//! byte-identical across runs and worker counts.

use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{verify, AnalysisError, OracleMode, Report};
use crate::builders::{
    enumerate_topologies, from_topology, random_topology, BuildError, TopologySpec,
};
use crate::spec::{FrameSource, FrameSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    All,
    Random { count: usize, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct CorpusConfig {
    pub points: usize,
    pub selection: Selection,
    pub oracle: bool,
    pub workers: usize,
    /// Keep `runtime_ms` in the reports (makes output non-reproducible).
    pub timings: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub frames: usize,
    pub ed_count: usize,
    pub boolean_count: usize,
    #[serde(rename = "B_equals_M_count")]
    pub b_equals_m_count: usize,
    pub failures: usize,
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

/// Seed of the `index`-th random frame of a run seeded with `seed`.
pub fn frame_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index as u64)
}

/// The named topologies a configuration covers, in output order.
pub fn corpus_topologies(
    config: &CorpusConfig,
) -> Result<Vec<(String, TopologySpec)>, CorpusError> {
    let n = config.points;
    Ok(match config.selection {
        Selection::All => enumerate_topologies(n)?
            .enumerate()
            .map(|(i, t)| (format!("n{n}-all-{i:04}"), t))
            .collect(),
        Selection::Random { count, seed } => (0..count)
            .map(|i| {
                random_topology(n, frame_seed(seed, i))
                    .map(|t| (format!("n{n}-seed{seed}-{i:04}"), t))
            })
            .collect::<Result<_, _>>()?,
    })
}

/// Somewhere finished reports can be kept between runs, keyed by a string
/// that covers the frame spec and every flag affecting the result.
pub trait ReportStore: Sync {
    fn load(&self, key: &str) -> Option<Report>;
    fn store(&self, key: &str, report: &Report);
}

/// A store that never remembers anything.
pub struct NoStore;

impl ReportStore for NoStore {
    fn load(&self, _key: &str) -> Option<Report> {
        None
    }

    fn store(&self, _key: &str, _report: &Report) {}
}

pub fn run_corpus(config: &CorpusConfig) -> Result<Vec<Report>, CorpusError> {
    run_corpus_with(config, &NoStore)
}

pub fn run_corpus_with(
    config: &CorpusConfig,
    store: &dyn ReportStore,
) -> Result<Vec<Report>, CorpusError> {
    let topologies = corpus_topologies(config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .map_err(|e| CorpusError::Pool(e.to_string()))?;
    let mode = if config.oracle {
        OracleMode::IfFeasible
    } else {
        OracleMode::Off
    };
    pool.install(|| {
        topologies
            .par_iter()
            .map(|(name, spec)| {
                let key = format!(
                    "corpus|oracle={}|{}",
                    config.oracle,
                    FrameSpec::named(name.clone(), FrameSource::Topology(spec.clone())).to_json()
                );
                let mut report = match store.load(&key) {
                    Some(report) => report,
                    None => {
                        let frame = from_topology(spec)?;
                        let report = verify(name, &frame, mode)?;
                        store.store(&key, &report);
                        report
                    }
                };
                if !config.timings {
                    report.runtime_ms = None;
                }
                Ok(report)
            })
            .collect()
    })
}

pub fn summarize(reports: &[Report]) -> CorpusSummary {
    let mut s = CorpusSummary {
        frames: reports.len(),
        ..CorpusSummary::default()
    };
    for r in reports {
        s.ed_count += r.flags.ed as usize;
        s.boolean_count += r.flags.boolean as usize;
        s.b_equals_m_count += r.flags.b_equals_m as usize;
        s.failures += !r.ok() as usize;
    }
    s
}

pub fn write_jsonl(reports: &[Report], mut out: impl Write) -> io::Result<()> {
    for r in reports {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}
