//! Run manifests: what produced a report and how to reproduce it.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sparsity_gap::dictionary::io::sha256_hex;
use sparsity_gap::Provenance;

pub const TOOL_VERSION: &str = concat!("sgap ", env!("CARGO_PKG_VERSION"));

/// Embedded in every JSON report. Everything except `timestamp_unix` is a
/// function of the configuration, so re-running `config` reproduces the
/// payload digests.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    /// The fully resolved configuration (file merged with flag overrides).
    pub config: serde_json::Value,
    /// SHA-256 of the compact serialization of `config`.
    pub config_digest: String,
    pub dictionary: Option<Provenance>,
    pub master_seed: Option<u64>,
    pub tool_version: String,
    pub timestamp_unix: u64,
    /// SHA-256 of the payload serialized on its own with [`payload_bytes`].
    pub payload_sha256: String,
    /// SHA-256 of the CSV dump, when one is produced.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv_sha256: Option<String>,
}

impl RunManifest {
    pub fn new(
        command_line: Vec<String>,
        config: serde_json::Value,
        dictionary: Option<Provenance>,
        master_seed: Option<u64>,
        payload: &[u8],
        csv: Option<&[u8]>,
    ) -> Self {
        let config_digest = sha256_hex(&serde_json::to_vec(&config).expect("JSON values serialize"));
        Self {
            command_line,
            config,
            config_digest,
            dictionary,
            master_seed,
            tool_version: TOOL_VERSION.to_string(),
            timestamp_unix: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
            payload_sha256: sha256_hex(payload),
            csv_sha256: csv.map(sha256_hex),
        }
    }
}

/// A report file: manifest plus payload.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportFile<T> {
    pub manifest: RunManifest,
    pub report: T,
}

/// Canonical payload serialization, the input of `payload_sha256`.
pub fn payload_bytes<T: Serialize>(report: &T) -> serde_json::Result<Vec<u8>> {
    serde_json::to_vec_pretty(report)
}

/// The report file as written to disk.
pub fn render<T: Serialize>(manifest: &RunManifest, report: &T) -> serde_json::Result<String> {
    let file = ReportFile { manifest: manifest.clone(), report };
    Ok(serde_json::to_string_pretty(&file)? + "\n")
}
