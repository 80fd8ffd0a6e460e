//! Report envelope shared by every subcommand. The deterministic part of a
//! run lives in `body`: identical configuration and seed must reproduce it
//! byte for byte, whatever the worker count. Wall-clock and worker metadata
//! stay outside the body for that reason.

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "alternant-lab/1";

#[derive(Serialize)]
struct Envelope<'a> {
    schema: &'static str,
    tool_version: &'static str,
    command_line: String,
    workers: usize,
    wall_ms: u128,
    #[serde(serialize_with = "raw_json")]
    body: &'a str,
    body_sha256: String,
}

fn raw_json<S: serde::Serializer>(body: &str, s: S) -> Result<S::Ok, S::Error> {
    let raw = serde_json::value::RawValue::from_string(body.to_string())
        .map_err(serde::ser::Error::custom)?;
    raw.serialize(s)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    hex::encode(h.finalize())
}

/// Serializes the body, wraps it, and prints the envelope to stdout.
pub fn emit<B: Serialize>(body: &B, workers: usize, wall_ms: u128) {
    let body_str = serde_json::to_string(body).expect("report bodies serialize");
    let env = Envelope {
        schema: SCHEMA,
        tool_version: env!("CARGO_PKG_VERSION"),
        command_line: std::env::args().collect::<Vec<_>>().join(" "),
        workers,
        wall_ms,
        body: &body_str,
        body_sha256: sha256_hex(body_str.as_bytes()),
    };
    println!("{}", serde_json::to_string(&env).expect("envelope serializes"));
}
