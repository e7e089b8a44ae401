//! Report bundles and their JSON / TSV renderings.
//!
//! Every number is written as a decimal string so exact integers survive any
//! JSON reader. Object keys come out sorted, which keeps bundles byte-stable.

use serde_json::{json, Map, Value};

/// One command's outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultEntry {
    pub kind: String,
    pub inputs: Map<String, Value>,
    pub values: Map<String, Value>,
    /// `computed` for engine output; `published` or `oracle` for expected values.
    pub provenance: String,
    pub verdict: Option<String>,
}

impl ResultEntry {
    pub fn new(kind: &str) -> Self {
        ResultEntry {
            kind: kind.into(),
            inputs: Map::new(),
            values: Map::new(),
            provenance: "computed".into(),
            verdict: None,
        }
    }

    pub fn input(mut self, key: &str, v: impl ToString) -> Self {
        self.inputs.insert(key.into(), Value::String(v.to_string()));
        self
    }

    pub fn value(mut self, key: &str, v: impl ToString) -> Self {
        self.values.insert(key.into(), Value::String(v.to_string()));
        self
    }

    pub fn list<T: ToString>(mut self, key: &str, items: impl IntoIterator<Item = T>) -> Self {
        self.values.insert(key.into(), Value::Array(items.into_iter().map(|x| Value::String(x.to_string())).collect()));
        self
    }

    pub fn provenance(mut self, p: &str) -> Self {
        self.provenance = p.into();
        self
    }

    pub fn verdict(mut self, v: &str) -> Self {
        self.verdict = Some(v.into());
        self
    }

    /// A string value, if present.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).and_then(Value::as_str)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind,
            "inputs": self.inputs,
            "values": self.values,
            "provenance": self.provenance,
            "verdict": self.verdict,
        })
    }
}

/// Results grouped under one declared ring.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceReport {
    pub name: String,
    pub ring: String,
    pub results: Vec<ResultEntry>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportBundle {
    pub version: String,
    pub seed: u64,
    pub field: String,
    pub instances: Vec<InstanceReport>,
}

impl ReportBundle {
    pub fn new(seed: u64, field: &str) -> Self {
        ReportBundle { version: env!("CARGO_PKG_VERSION").into(), seed, field: field.into(), instances: Vec::new() }
    }

    pub fn instance(&self, name: &str) -> Option<&InstanceReport> {
        self.instances.iter().find(|i| i.name == name)
    }

    /// Every entry in the bundle.
    pub fn entries(&self) -> impl Iterator<Item = &ResultEntry> {
        self.instances.iter().flat_map(|i| i.results.iter())
    }

    pub fn to_json(&self) -> Value {
        let instances: Vec<Value> = self
            .instances
            .iter()
            .map(|i| {
                json!({
                    "name": i.name,
                    "ring": i.ring,
                    "results": i.results.iter().map(ResultEntry::to_json).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "version": self.version,
            "seed": self.seed.to_string(),
            "field": self.field,
            "instances": instances,
        })
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("values are plain strings");
        s.push('\n');
        s
    }
}

/// A named tab-separated table destined for `--tsv`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub file_name: String,
    pub contents: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_are_strings() {
        let mut b = ReportBundle::new(7, "Fp 32003");
        b.instances.push(InstanceReport {
            name: "R".into(),
            ring: "k[x]".into(),
            results: vec![ResultEntry::new("coeffs").value("e0", -3).list("e", [1, 2])],
        });
        let v = b.to_json();
        assert_eq!(v["seed"], "7");
        assert_eq!(v["instances"][0]["results"][0]["values"]["e0"], "-3");
        assert_eq!(v["instances"][0]["results"][0]["values"]["e"][1], "2");
        assert_eq!(v["instances"][0]["results"][0]["verdict"], Value::Null);
    }
}
