//! JSON run reports and error payloads.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct RunStats {
    pub oracle_queries: u64,
    pub dijkstra_runs: u64,
    pub iterations: u64,
    pub wall_time_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 of each input, keyed by role (`graph`, `walk_p`, ...).
    pub inputs: BTreeMap<String, String>,
    pub result: serde_json::Value,
    pub stats: RunStats,
    pub version: &'static str,
}

impl RunReport {
    pub fn new(command: impl Into<String>, inputs: BTreeMap<String, String>, result: impl Serialize, stats: RunStats) -> Self {
        RunReport {
            command: command.into(),
            inputs,
            result: serde_json::to_value(result).expect("results serialize to JSON"),
            stats,
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn to_json<T: Serialize>(value: &T, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(value).expect("reports serialize to JSON")
    } else {
        serde_json::to_string(value).expect("reports serialize to JSON")
    }
}
