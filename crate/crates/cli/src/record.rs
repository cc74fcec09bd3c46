use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// One self-describing JSON record per invocation. Exact integers are
/// decimal strings; rationals are `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub result: Map<String, Value>,
    pub metadata: Metadata,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub method: Option<String>,
    pub seed: Option<u64>,
    /// Only filled with `--timing`, so default output is reproducible.
    pub runtime_ms: Option<u64>,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        OutputRecord {
            command: command.to_string(),
            inputs: Map::new(),
            result: Map::new(),
            metadata: Metadata {
                method: None,
                seed: None,
                runtime_ms: None,
            },
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.result.insert(key.to_string(), value.into());
    }

    pub fn method(mut self, method: &str) -> Self {
        self.metadata.method = Some(method.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records serialize")
    }
}
