//! Persistent count cache: a JSON object mapping sequence id ("p1d" or
//! "p2d") and n to the count as a decimal string, so arbitrary-precision
//! values survive the round trip exactly.

use std::fs;
use std::path::Path;

use num_bigint::BigUint;
use serde_json::{Map, Value};

pub struct Cache {
    root: Map<String, Value>,
    dirty: bool,
}

impl Cache {
    /// Loads the cache, starting fresh (with a warning) if the file exists
    /// but cannot be parsed. A missing file is not an error.
    pub fn load(path: &Path) -> Self {
        let root = match fs::read_to_string(path) {
            Ok(text) => match serde_json::from_str::<Value>(&text) {
                Ok(Value::Object(map)) => map,
                _ => {
                    eprintln!(
                        "warning: cache file {} is not a JSON object; ignoring it",
                        path.display()
                    );
                    Map::new()
                }
            },
            Err(err) if err.kind() == std::io::ErrorKind::NotFound => Map::new(),
            Err(err) => {
                eprintln!("warning: cannot read cache {}: {err}", path.display());
                Map::new()
            }
        };
        Self { root, dirty: false }
    }

    pub fn get(&self, kind: &str, n: u64) -> Option<BigUint> {
        self.root
            .get(kind)?
            .as_object()?
            .get(&n.to_string())?
            .as_str()?
            .parse()
            .ok()
    }

    pub fn insert(&mut self, kind: &str, n: u64, count: &BigUint) {
        let entry = self
            .root
            .entry(kind.to_string())
            .or_insert_with(|| Value::Object(Map::new()));
        if let Value::Object(map) = entry {
            map.insert(n.to_string(), Value::String(count.to_string()));
            self.dirty = true;
        }
    }

    /// Writes the cache back if anything changed; failures are warnings,
    /// never fatal.
    pub fn save(&self, path: &Path) {
        if !self.dirty {
            return;
        }
        let mut text = serde_json::to_string_pretty(&Value::Object(self.root.clone()))
            .expect("cache serializes");
        text.push('\n');
        if let Err(err) = fs::write(path, text) {
            eprintln!("warning: cannot write cache {}: {err}", path.display());
        }
    }
}
