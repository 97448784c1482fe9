//! Stored expected values for pinned claims.
//!
//! The file maps claim ids to the `computed` value of the claim with the
//! `sample_stats` key removed; that key holds counts over seeded samples and
//! is not pinned. Pinned values must not depend on the seed.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::error::WorkbenchError;

const EMBEDDED: &str = include_str!("../../snapshots/claims.json");

/// Key excluded from pinned values.
pub const SAMPLE_STATS: &str = "sample_stats";

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Snapshots {
    values: BTreeMap<String, Value>,
}

impl Snapshots {
    /// Snapshots compiled into the binary.
    pub fn embedded() -> Self {
        Self::parse(EMBEDDED).expect("embedded snapshot file is valid")
    }

    pub fn parse(text: &str) -> Result<Self, WorkbenchError> {
        Ok(Self {
            values: serde_json::from_str(text)?,
        })
    }

    pub fn load(path: &Path) -> Result<Self, WorkbenchError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), WorkbenchError> {
        let mut text = serde_json::to_string_pretty(&self.values)?;
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }

    /// Source location of the embedded file.
    pub fn source_path() -> PathBuf {
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("snapshots")
            .join("claims.json")
    }

    pub fn get(&self, id: &str) -> Option<&Value> {
        self.values.get(id)
    }

    pub fn set(&mut self, id: &str, value: Value) {
        self.values.insert(id.to_string(), value);
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `computed` without the sample statistics.
pub fn pinned_part(computed: &Value) -> Value {
    match computed {
        Value::Object(map) => {
            let mut m = map.clone();
            m.remove(SAMPLE_STATS);
            Value::Object(m)
        }
        other => other.clone(),
    }
}
