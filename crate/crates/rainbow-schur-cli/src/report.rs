//! Self-describing run reports and shared output formatting.
//!
//! Every command produces one [`RunReport`]: the argv echo, a digest of the
//! semantic inputs, wall time, and a module-specific payload.  `--json`
//! prints the report; the default mode prints a human table rendered from
//! the same computed values.  Human tables never include timing, so any two
//! runs with identical inputs produce byte-identical default output.

use num_rational::Ratio;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// One executed command, ready for serialization.
#[derive(Serialize)]
pub struct RunReport {
    /// Argv echo; the run is reproducible from this plus the input files.
    pub command: Vec<String>,
    /// SHA-256 over the canonical input description (file inputs contribute
    /// their content hash, execution details like thread counts do not).
    pub input_digest: String,
    pub timing_ms: u64,
    pub payload: Value,
    pub version: &'static str,
}

/// What a command hands back to `main` for printing.
pub struct CmdOutput {
    pub payload: Value,
    pub human: String,
    /// Canonical input description; see [`RunReport::input_digest`].
    pub input_desc: String,
    /// An exact identity failed (exit code 1).
    pub identity_failure: bool,
}

impl CmdOutput {
    pub fn new(payload: Value, human: String, input_desc: String) -> Self {
        Self { payload, human, input_desc, identity_failure: false }
    }
}

pub fn sha256_hex(data: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(data);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Reduced exact fraction and its decimal value; "0/1" for an empty universe.
pub fn fraction_parts(num: u64, den: u64) -> (String, f64) {
    if den == 0 {
        return ("0/1".to_string(), 0.0);
    }
    let reduced = Ratio::new(num, den);
    (
        format!("{}/{}", reduced.numer(), reduced.denom()),
        num as f64 / den as f64,
    )
}

/// "22/45 = 0.488889" — the exact form first, decimals only as a gloss.
pub fn fraction_display(num: u64, den: u64) -> String {
    let (exact, decimal) = fraction_parts(num, den);
    format!("{exact} = {decimal:.6}")
}

/// Aligned `key  value` line for the human tables.
pub fn push_kv(out: &mut String, key: &str, value: impl std::fmt::Display) {
    out.push_str(&format!("  {key:<24}{value}\n"));
}
