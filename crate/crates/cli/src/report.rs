//! The JSON envelope shared by every verb, and exit-code mapping.

use lambda_adic::arith::EmbeddingRecord;
use lambda_adic::Error;
use serde::Serialize;
use serde_json::Value;

/// Bumped whenever a field changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::PrecisionExhausted(_) | Error::Indeterminate(_) => 3,
            Error::Inconsistency(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

pub fn invalid(msg: impl Into<String>) -> Failure {
    Failure { code: 2, message: msg.into() }
}

#[derive(Serialize)]
pub struct Certificate {
    /// Requested `(M, D)`, when the verb takes a precision.
    pub requested: Option<(u32, usize)>,
    /// Smallest absolute precision among the p-adic numbers reported.
    pub attained_p_adic: Option<i32>,
    pub exact: bool,
}

#[derive(Serialize)]
pub struct Report {
    pub toolkit: &'static str,
    pub version: &'static str,
    pub schema: u32,
    pub verb: String,
    pub formula: &'static str,
    pub embedding: Option<EmbeddingRecord>,
    pub precision: Certificate,
    pub job: Value,
    pub result: Value,
    pub verified: bool,
}

impl Report {
    pub fn new(verb: &str, formula: &'static str, job: Value) -> Self {
        Report {
            toolkit: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            schema: SCHEMA_VERSION,
            verb: verb.into(),
            formula,
            embedding: None,
            precision: Certificate { requested: None, attained_p_adic: None, exact: true },
            job,
            result: Value::Null,
            verified: true,
        }
    }

    /// Attach the result and derive the attained precision from every scalar record in it.
    pub fn finish(mut self, result: impl Serialize, requested: Option<(u32, usize)>) -> Result<Self, Failure> {
        self.result = serde_json::to_value(result).map_err(|e| Failure { code: 1, message: e.to_string() })?;
        let mut min = None;
        min_prec(&self.result, &mut min);
        self.precision = Certificate { requested, attained_p_adic: min, exact: min.is_none() && requested.is_none() };
        Ok(self)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("{} {} ({})\n", self.verb, self.formula, self.version);
        if let Some((m, d)) = self.precision.requested {
            out.push_str(&format!("requested precision: p^{}, X^{}\n", m, d));
        }
        if let Some(a) = self.precision.attained_p_adic {
            out.push_str(&format!("attained precision: p^{}\n", a));
        }
        flatten("", &self.result, &mut out);
        out.push_str(&format!("verified: {}\n", self.verified));
        out
    }
}

fn min_prec(v: &Value, acc: &mut Option<i32>) {
    match v {
        Value::Object(map) => {
            if let (Some(Value::Number(n)), true) = (map.get("prec"), map.contains_key("digits")) {
                if let Some(k) = n.as_i64() {
                    let k = k as i32;
                    *acc = Some(acc.map_or(k, |a| a.min(k)));
                }
            }
            map.values().for_each(|x| min_prec(x, acc));
        }
        Value::Array(xs) => xs.iter().for_each(|x| min_prec(x, acc)),
        Value::String(s) => {
            if let Some(k) = big_o(s) {
                *acc = Some(acc.map_or(k, |a| a.min(k)));
            }
        }
        _ => {}
    }
}

/// The exponent in a trailing `O(p^k)` of a displayed p-adic number.
fn big_o(s: &str) -> Option<i32> {
    let tail = &s[s.rfind("O(")? + 2..];
    let (_, k) = tail.strip_suffix(')')?.split_once('^')?;
    k.parse().ok()
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            // scalar records print as their display string
            if let Some(Value::String(s)) = map.get("display") {
                out.push_str(&format!("{:<40} {}\n", prefix, s));
                return;
            }
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{}.{}", prefix, k) };
                flatten(&key, x, out);
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&format!("{}[{}]", prefix, i), x, out);
            }
        }
        Value::String(s) => out.push_str(&format!("{:<40} {}\n", prefix, s)),
        other => out.push_str(&format!("{:<40} {}\n", prefix, other)),
    }
}
