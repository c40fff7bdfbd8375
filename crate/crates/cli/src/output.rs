use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::CliError;

/// Compact JSON with object keys sorted.
pub fn canonical(value: &Value) -> String {
    // serde_json's default map is ordered by key
    serde_json::to_string(value).expect("JSON values serialize")
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("result types serialize")
}

pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n"))
            .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
pub struct RunRecord {
    pub subcommand: String,
    pub parameters: Vec<String>,
    pub seed: u64,
    pub versions: Value,
    pub wall_time_ms: u128,
    pub digest: String,
}
