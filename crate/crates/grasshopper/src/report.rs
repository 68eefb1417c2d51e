//! Machine-readable run reports: one JSON document to stdout, a short human
//! summary to stderr. Big values are serialized as decimal strings since
//! several of them exceed 64 bits.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub artifact_version: &'static str,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub timing_ms: u128,
}

impl Report {
    pub fn new(command: &str, inputs: Value, results: Value, seed: Option<u64>, timing_ms: u128) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            artifact_version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            inputs,
            results,
            seed,
            timing_ms,
        }
    }

    pub fn emit(&self, summary: &str) {
        println!("{}", serde_json::to_string_pretty(self).expect("report serializes"));
        eprintln!("{summary}");
    }
}

/// Rounds a big integer to `sig` significant decimal digits in scientific
/// notation, e.g. 8.587e34.
pub fn scientific(value: &BigInt, sig: usize) -> String {
    assert!(sig >= 1);
    if value.is_zero() {
        return "0".to_string();
    }
    let sign = if value.is_negative() { "-" } else { "" };
    let digits = value.abs().to_string();
    let mut exponent = digits.len() as i64 - 1;

    let mut rounded: Vec<u8> = digits
        .bytes()
        .take(sig)
        .map(|b| b - b'0')
        .collect();
    while rounded.len() < sig {
        rounded.push(0);
    }
    let round_up = digits.as_bytes().get(sig).map_or(false, |&b| b >= b'5');
    if round_up {
        let mut i = sig;
        loop {
            if i == 0 {
                rounded.insert(0, 1);
                rounded.pop();
                exponent += 1;
                break;
            }
            i -= 1;
            if rounded[i] == 9 {
                rounded[i] = 0;
            } else {
                rounded[i] += 1;
                break;
            }
        }
    }

    let mut out = String::new();
    out.push_str(sign);
    out.push((rounded[0] + b'0') as char);
    if sig > 1 {
        out.push('.');
        for &d in &rounded[1..] {
            out.push((d + b'0') as char);
        }
    }
    out.push('e');
    out.push_str(&exponent.to_string());
    out
}
