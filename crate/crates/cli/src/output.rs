//! Artifact assembly: CSV with pinned float formatting and the JSON
//! envelope shared by every subcommand.

use serde::Serialize;

/// Floats in CSV carry 17 significant digits so they round-trip exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Optional floats render as empty CSV cells.
pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

/// Every JSON artifact is one object with config, rows and summary.
#[derive(Serialize)]
pub struct Envelope<C: Serialize, R: Serialize, S: Serialize> {
    pub config: C,
    pub rows: Vec<R>,
    pub summary: S,
}

pub fn json_bytes(value: &impl Serialize) -> Vec<u8> {
    let mut v = serde_json::to_vec_pretty(value).expect("report types serialize");
    v.push(b'\n');
    v
}
