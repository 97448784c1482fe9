use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::WorkbenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Paper,
    Trivial,
    Derived,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Confirmed,
    Refuted,
    Indeterminate,
    Skipped,
}

impl ClaimStatus {
    pub fn from_bool(holds: bool) -> Self {
        if holds {
            Self::Confirmed
        } else {
            Self::Refuted
        }
    }
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimStatus::Confirmed => "confirmed",
            ClaimStatus::Refuted => "refuted",
            ClaimStatus::Indeterminate => "indeterminate",
            ClaimStatus::Skipped => "skipped",
        })
    }
}

/// Snapshot state of a pinned claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pin {
    Match,
    Mismatch,
    Missing,
    Blessed,
}

/// Static description of a claim, loaded from the registry catalogue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub suite: String,
    pub paper_location: String,
    pub provenance: Provenance,
    pub statement: String,
    /// Oracle used to produce the computed value.
    #[serde(default)]
    pub oracle: Option<String>,
    /// Whether the computed value is compared against a stored snapshot.
    #[serde(default)]
    pub pinned: bool,
}

const CATALOG_JSON: &str = include_str!("../../registry/claims.json");

/// The registry catalogue, in registry order.
pub fn catalog() -> &'static [Claim] {
    static CATALOG: OnceLock<Vec<Claim>> = OnceLock::new();
    CATALOG.get_or_init(|| serde_json::from_str(CATALOG_JSON).expect("embedded claim catalogue is valid"))
}

pub fn claim(id: &str) -> Result<&'static Claim, WorkbenchError> {
    catalog()
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| WorkbenchError::InvalidOperand(format!("no claim `{id}` in the registry")))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimResult {
    /// Catalogue id, plus a suffix naming the instance (algebra, convention,
    /// λ stratum) where one catalogue entry is run several times.
    pub id: String,
    pub paper_location: String,
    pub provenance: Provenance,
    pub status: ClaimStatus,
    pub expected: Value,
    pub computed: Value,
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub snapshot: Option<Pin>,
}

impl ClaimResult {
    /// Builds a result for catalogue entry `base`, instance `suffix`.
    pub fn from_catalog(base: &str, suffix: &str, expected: Value, computed: Value, status: ClaimStatus) -> Self {
        let c = claim(base).expect("claim ids used in code are in the catalogue");
        let id = if suffix.is_empty() {
            base.to_string()
        } else {
            format!("{base}-{suffix}")
        };
        ClaimResult {
            id,
            paper_location: c.paper_location.clone(),
            provenance: c.provenance,
            status,
            expected,
            computed,
            witness: None,
            oracle: c.oracle.clone(),
            snapshot: None,
        }
    }

    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    /// Attaches a reason when none is present; refuted and indeterminate
    /// results always carry one.
    pub(crate) fn ensure_witness(&mut self, fallback: impl FnOnce() -> Value) {
        if matches!(self.status, ClaimStatus::Refuted | ClaimStatus::Indeterminate) && self.witness.is_none() {
            self.witness = Some(fallback());
        }
    }

    pub fn catalog_id(&self) -> &str {
        catalog()
            .iter()
            .map(|c| c.id.as_str())
            .filter(|base| self.id == *base || self.id.starts_with(&format!("{base}-")))
            .max_by_key(|base| base.len())
            .unwrap_or(&self.id)
    }
}

/// Claim suites selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Sl2,
    Su2,
    Cartan,
    Formcomplex,
    Mirror,
    Nilpotency,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::All,
        Suite::Sl2,
        Suite::Su2,
        Suite::Cartan,
        Suite::Formcomplex,
        Suite::Mirror,
        Suite::Nilpotency,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Sl2 => "sl2",
            Suite::Su2 => "su2",
            Suite::Cartan => "cartan",
            Suite::Formcomplex => "formcomplex",
            Suite::Mirror => "mirror",
            Suite::Nilpotency => "nilpotency",
        }
    }

    pub fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = WorkbenchError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| WorkbenchError::spec("suite", format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub confirmed: usize,
    pub refuted: usize,
    pub indeterminate: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(results: &[ClaimResult]) -> Self {
        let mut s = Summary::default();
        for r in results {
            match r.status {
                ClaimStatus::Confirmed => s.confirmed += 1,
                ClaimStatus::Refuted => s.refuted += 1,
                ClaimStatus::Indeterminate => s.indeterminate += 1,
                ClaimStatus::Skipped => s.skipped += 1,
            }
        }
        s
    }
}
