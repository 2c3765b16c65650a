//! Suite execution: runs the selected entries, times them, writes witnesses
//! for unexpected violations, and assembles the report structure.

use std::time::Instant;

use rayon::prelude::*;

use pmm_core::checks::CheckResult;

use crate::config::SuiteConfig;
use crate::registry::{filter, registry, CheckSpec};

/// Outcome of one registry entry.
pub struct EntryReport {
    pub name: String,
    pub expected_violation: bool,
    pub result: Option<CheckResult>,
    pub error: Option<String>,
    /// Whether the entry met its expectation (holds for ordinary entries,
    /// fails-with-the-required-margin for catalog entries).
    pub ok: bool,
    pub wall_ms: u64,
    pub witness_ref: Option<String>,
}

pub struct SuiteReport {
    pub config: SuiteConfig,
    pub entries: Vec<EntryReport>,
    pub aggregate: bool,
}

fn execute(spec: &CheckSpec, cfg: &SuiteConfig) -> EntryReport {
    let start = Instant::now();
    let outcome = (spec.run)(cfg);
    let wall_ms = start.elapsed().as_millis() as u64;
    match outcome {
        Ok(result) => {
            let ok = if spec.expected_violation {
                !result.holds
                    && spec
                        .required_margin_raw_max
                        .map_or(true, |bound| result.worst_margin_raw <= bound)
            } else {
                result.holds
            };
            EntryReport {
                name: spec.name.clone(),
                expected_violation: spec.expected_violation,
                result: Some(result),
                error: None,
                ok,
                wall_ms,
                witness_ref: None,
            }
        }
        Err(err) => EntryReport {
            name: spec.name.clone(),
            expected_violation: spec.expected_violation,
            result: None,
            error: Some(err.to_string()),
            ok: false,
            wall_ms,
            witness_ref: None,
        },
    }
}

/// Runs every selected entry. Entries run in parallel (inner trials are
/// parallel too); results are collected in registry order, so the report
/// is independent of scheduling.
pub fn run_suite(cfg: &SuiteConfig) -> pmm_core::Result<SuiteReport> {
    let specs = registry(cfg)?;
    let selected = filter(&specs, &cfg.checks);
    let mut entries: Vec<EntryReport> = selected
        .par_iter()
        .map(|spec| execute(spec, cfg))
        .collect();

    if let Some(dir) = &cfg.witness_dir {
        write_witness_files(&mut entries, dir);
    }

    let aggregate = entries.iter().all(|e| e.ok);
    Ok(SuiteReport {
        config: cfg.clone(),
        entries,
        aggregate,
    })
}

/// Persists the worst-trial witness of every entry that missed its
/// expectation (an unexpected violation) and records the file path.
pub fn write_witness_files(entries: &mut [EntryReport], dir: &std::path::Path) {
    for entry in entries.iter_mut() {
        if entry.ok {
            continue;
        }
        if let Some(result) = &entry.result {
            if std::fs::create_dir_all(dir).is_ok() {
                let file = dir.join(format!("{}.json", entry.name.replace('/', "_")));
                if let Ok(json) = serde_json::to_string_pretty(&result.witness) {
                    if std::fs::write(&file, json).is_ok() {
                        entry.witness_ref = Some(file.display().to_string());
                    }
                }
            }
        }
    }
}
