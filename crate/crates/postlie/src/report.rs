//! JSON form of check reports. Contains no timings, so equal seeds give
//! byte-identical output.

use serde::Serialize;

use postlie_core::report::{CheckRecord, CheckReport, Witness};

#[derive(Serialize)]
pub struct WitnessJson<'a> {
    pub inputs: &'a [String],
    pub lhs: &'a str,
    pub rhs: &'a str,
}

#[derive(Serialize)]
pub struct RecordJson<'a> {
    pub axiom: &'a str,
    pub status: &'static str,
    pub instances: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson<'a>>,
}

fn witness(w: &Witness) -> WitnessJson<'_> {
    WitnessJson { inputs: &w.inputs, lhs: &w.lhs, rhs: &w.rhs }
}

pub fn record(r: &CheckRecord) -> RecordJson<'_> {
    RecordJson {
        axiom: &r.axiom,
        status: r.status.as_str(),
        instances: r.instances,
        seed: r.seed,
        witness: r.witness.as_ref().map(witness),
    }
}

pub fn records(r: &CheckReport) -> Vec<RecordJson<'_>> {
    r.records.iter().map(record).collect()
}

pub fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("plain data"));
}
