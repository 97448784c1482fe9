//! Claim registry, reproduction suites and reports.
//!
//! Every claim in `registry/claims.json` is executed exactly and reported as
//! confirmed, refuted, indeterminate or skipped. Claims marked `pinned`
//! compare their computed value against `snapshots/claims.json`; for derived
//! claims the snapshot is the expected value.

mod claim;
pub mod sampling;
pub mod snapshot;
mod suites;
mod table;

use serde::Serialize;
use serde_json::json;

pub use claim::{catalog, claim, Claim, ClaimResult, ClaimStatus, Pin, Provenance, Suite, Summary};
pub use sampling::DEFAULT_SEED;
pub use snapshot::Snapshots;
pub use table::{dimension_table, TableMode, TableRow};

use crate::error::WorkbenchError;
use crate::spencer::LeibnizConvention;

type SuiteFn = fn(&suites::Ctx) -> Result<Vec<ClaimResult>, WorkbenchError>;

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub seed: u64,
    /// `None` runs convention-dependent claims under both conventions.
    pub convention: Option<LeibnizConvention>,
    /// Overwrite snapshots with the computed values instead of comparing.
    pub bless: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            convention: None,
            bless: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub convention: String,
    pub seed: u64,
    pub claims: Vec<ClaimResult>,
    pub summary: Summary,
}

impl Report {
    /// True when some paper-provenance claim is refuted.
    pub fn has_refuted_paper_claim(&self) -> bool {
        self.claims
            .iter()
            .any(|c| c.provenance == Provenance::Paper && c.status == ClaimStatus::Refuted)
    }

    pub fn to_json(&self) -> Result<String, WorkbenchError> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

/// Runs a suite with default options and the embedded snapshots.
pub fn run_claims(suite: Suite) -> Result<Vec<ClaimResult>, WorkbenchError> {
    let mut snaps = Snapshots::embedded();
    Ok(run(suite, &RunOptions::default(), &mut snaps)?.claims)
}

/// Runs a suite; with `bless` set, `snapshots` receives the computed values.
pub fn run(suite: Suite, opts: &RunOptions, snapshots: &mut Snapshots) -> Result<Report, WorkbenchError> {
    let ctx = suites::Ctx {
        seed: opts.seed,
        conventions: match opts.convention {
            Some(c) => vec![c],
            None => LeibnizConvention::ALL.to_vec(),
        },
    };
    let mut claims = Vec::new();
    let parts: [(Suite, SuiteFn); 6] = [
        (Suite::Sl2, suites::sl2_suite),
        (Suite::Su2, suites::su2_suite),
        (Suite::Mirror, suites::mirror_suite),
        (Suite::Nilpotency, suites::nilpotency_suite),
        (Suite::Cartan, suites::cartan_suite),
        (Suite::Formcomplex, suites::formcomplex_suite),
    ];
    for (s, f) in parts {
        if suite.includes(s) {
            claims.extend(f(&ctx)?);
        }
    }
    // Suites interleave per-convention instances; the report follows the registry.
    claims.sort_by_key(|c| catalog().iter().position(|e| e.id == c.catalog_id()));
    for c in &mut claims {
        apply_pin(c, opts.bless, snapshots);
        let status = c.status;
        c.ensure_witness(|| json!({ "reason": format!("{status} without a recorded witness") }));
    }
    let summary = Summary::of(&claims);
    Ok(Report {
        suite,
        convention: opts.convention.map_or_else(|| "both".to_string(), |c| c.to_string()),
        seed: opts.seed,
        claims,
        summary,
    })
}

fn apply_pin(c: &mut ClaimResult, bless: bool, snapshots: &mut Snapshots) {
    let entry = claim(c.catalog_id()).expect("result ids derive from catalogue ids");
    if !entry.pinned {
        return;
    }
    let value = snapshot::pinned_part(&c.computed);
    let derived = c.provenance == Provenance::Derived;
    if bless {
        snapshots.set(&c.id, value.clone());
        c.snapshot = Some(Pin::Blessed);
        if derived {
            c.expected = value;
        }
        return;
    }
    match snapshots.get(&c.id) {
        None => {
            c.snapshot = Some(Pin::Missing);
            if derived {
                c.status = ClaimStatus::Indeterminate;
                c.witness = Some(json!({ "reason": "no pinned snapshot for this claim" }));
            }
        }
        Some(stored) if *stored == value => {
            c.snapshot = Some(Pin::Match);
            if derived {
                c.expected = stored.clone();
            }
        }
        Some(stored) => {
            c.snapshot = Some(Pin::Mismatch);
            if derived {
                c.expected = stored.clone();
            }
            c.witness = Some(json!({
                "reason": "computed value differs from the pinned snapshot",
                "pinned": stored,
                "previous_witness": c.witness.take(),
            }));
            c.status = ClaimStatus::Indeterminate;
        }
    }
}
