//! JSON reports written to standard output.

use std::time::Instant;

use matroid_approx::rational::{self, Rational};
use matroid_approx::Mask;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::io::{hex, hexes};

/// Result fields in insertion order, followed by the command echo, the
/// input digest and the elapsed time when finished.
pub struct Report {
    fields: Map<String, Value>,
    float: bool,
}

impl Report {
    pub fn new(float: bool) -> Report {
        Report {
            fields: Map::new(),
            float,
        }
    }

    pub fn put(&mut self, key: &str, v: impl Serialize) -> &mut Report {
        self.fields
            .insert(key.to_string(), serde_json::to_value(v).expect("serializable"));
        self
    }

    pub fn rat(&mut self, key: &str, r: &Rational) -> &mut Report {
        self.put(key, rational::format(r));
        if self.float {
            self.put(&format!("{key}_float"), rational::to_f64(r));
        }
        self
    }

    pub fn opt_rat(&mut self, key: &str, r: Option<&Rational>) -> &mut Report {
        match r {
            Some(r) => self.rat(key, r),
            None => self.put(key, Value::Null),
        }
    }

    pub fn mask(&mut self, key: &str, m: Mask) -> &mut Report {
        self.put(key, hex(m))
    }

    pub fn masks(&mut self, key: &str, ms: &[Mask]) -> &mut Report {
        self.put(key, hexes(ms))
    }

    /// A nested report sharing the float setting.
    pub fn child(&self) -> Report {
        Report::new(self.float)
    }

    pub fn into_value(self) -> Value {
        Value::Object(self.fields)
    }

    pub fn finish(mut self, argv: &[String], digest: String, started: Instant) -> String {
        self.put("command", argv);
        self.put("inputs_sha256", digest);
        self.put("timing_ms", started.elapsed().as_millis() as u64);
        serde_json::to_string(&Value::Object(self.fields)).expect("serializable") + "\n"
    }
}
