//! Run reports: a JSON record of what a command read, how it was configured
//! and what it produced.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn file_digest(path: &Path) -> io::Result<String> {
    Ok(sha256_hex(&fs::read(path)?))
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub id: String,
    pub error: String,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: String,
    inputs: BTreeMap<String, String>,
    parameters: BTreeMap<String, Value>,
    outputs: BTreeMap<String, Value>,
    failures: Vec<Failure>,
    pub wall_time_seconds: f64,
}

/// Rebuilds every object with its keys in sorted order.
fn sort_keys(value: Value) -> Value {
    match value {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            let mut out = Map::new();
            for (k, v) in entries {
                out.insert(k, sort_keys(v));
            }
            Value::Object(out)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sort_keys).collect()),
        other => other,
    }
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            parameters: BTreeMap::new(),
            outputs: BTreeMap::new(),
            failures: Vec::new(),
            wall_time_seconds: 0.0,
        }
    }

    /// Records the SHA-256 of an input file under `name`.
    pub fn input(&mut self, name: &str, path: &Path) -> io::Result<()> {
        self.inputs.insert(name.to_string(), file_digest(path)?);
        Ok(())
    }

    pub fn param(&mut self, name: &str, value: impl Serialize) {
        self.parameters.insert(
            name.to_string(),
            serde_json::to_value(value).expect("parameter serializes"),
        );
    }

    pub fn output(&mut self, name: &str, value: impl Serialize) {
        self.outputs.insert(
            name.to_string(),
            serde_json::to_value(value).expect("output serializes"),
        );
    }

    pub fn fail(&mut self, id: &str, error: impl ToString) {
        self.failures.push(Failure {
            id: id.to_string(),
            error: error.to_string(),
        });
    }

    pub fn failures(&self) -> &[Failure] {
        &self.failures
    }

    pub fn outputs(&self) -> &BTreeMap<String, Value> {
        &self.outputs
    }

    pub fn inputs(&self) -> &BTreeMap<String, String> {
        &self.inputs
    }

    /// Everything except the wall time; identical runs give identical values.
    pub fn deterministic_json(&self) -> Value {
        let mut failures = self.failures.clone();
        failures.sort_by(|a, b| a.id.cmp(&b.id).then_with(|| a.error.cmp(&b.error)));
        sort_keys(serde_json::json!({
            "command": self.command,
            "inputs": self.inputs,
            "parameters": self.parameters,
            "outputs": self.outputs,
            "failures": failures,
        }))
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.deterministic_json();
        v.as_object_mut()
            .expect("report is an object")
            .insert("wall_time_seconds".into(), self.wall_time_seconds.into());
        sort_keys(v)
    }

    pub fn to_pretty_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted_and_wall_time_excluded() {
        let mut r = RunReport::new("embed");
        r.param("z", 1);
        r.param("a", serde_json::json!({"y": 1, "b": 2}));
        r.output("count", 3);
        r.fail("s2", "boom");
        r.fail("s1", "bang");
        r.wall_time_seconds = 1.5;
        let text = r.to_pretty_string();
        let pos = |k: &str| text.find(k).unwrap();
        assert!(pos("\"command\"") < pos("\"failures\""));
        assert!(pos("\"failures\"") < pos("\"inputs\""));
        assert!(pos("\"outputs\"") < pos("\"parameters\""));
        assert!(pos("\"parameters\"") < pos("\"wall_time_seconds\""));
        assert!(pos("\"b\"") < pos("\"y\""));
        assert!(pos("s1") < pos("s2"));

        let mut again = r.clone();
        again.wall_time_seconds = 99.0;
        assert_eq!(again.deterministic_json(), r.deterministic_json());
        assert!(r.deterministic_json().get("wall_time_seconds").is_none());
    }

    #[test]
    fn digest_of_known_bytes() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
