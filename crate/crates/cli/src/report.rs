use std::io::{self, Write};

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use strassen_core::algorithm::{strassen_algorithm, to_json_string};
use strassen_core::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug)]
pub enum Failure {
    /// Malformed input or arguments (exit 2).
    Usage(String),
    /// A verification or property check failed (exit 1).
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Unverified(_)
            | Error::ClosureCap { .. }
            | Error::NotInvariant { .. }
            | Error::Overflow(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// SHA-256 of the built-in Strassen algorithm in file form.
pub fn builtin_checksum() -> String {
    hex::encode(Sha256::digest(to_json_string(&strassen_algorithm()).as_bytes()))
}

pub struct Outcome {
    pub code: u8,
    pub text: String,
    pub json: Map<String, Value>,
    /// Print `text` verbatim (CSV) with the provenance line on stderr.
    pub raw: bool,
}

impl Outcome {
    pub fn new(code: u8, text: String, json: Value) -> Self {
        let json = match json {
            Value::Object(m) => m,
            other => Map::from_iter([("result".to_string(), other)]),
        };
        Self {
            code,
            text,
            json,
            raw: false,
        }
    }

    pub fn from_failure(f: Failure) -> Self {
        let (code, msg) = match f {
            Failure::Usage(m) => (EXIT_USAGE, m),
            Failure::Check(m) => (EXIT_CHECK, m),
        };
        Self::new(code, format!("error: {msg}\n"), json!({ "error": msg }))
    }

    pub fn print(&self, as_json: bool, seed: u64) {
        let version = env!("CARGO_PKG_VERSION");
        let checksum = builtin_checksum();
        if as_json {
            let mut obj = self.json.clone();
            obj.insert("ok".into(), json!(self.code == EXIT_OK));
            obj.insert("exit_code".into(), json!(self.code));
            obj.insert("seed".into(), json!(seed));
            obj.insert("version".into(), json!(version));
            obj.insert("builtin_sha256".into(), json!(checksum));
            let body = serde_json::to_string_pretty(&Value::Object(obj)).expect("plain data");
            emit(&format!("{body}\n"));
            return;
        }
        let footer = format!("# strassen {version}, seed {seed}, builtin sha256 {checksum}");
        if self.code != EXIT_OK && self.text.starts_with("error:") {
            eprint!("{}", self.text);
            eprintln!("{footer}");
        } else if self.raw {
            emit(&self.text);
            eprintln!("{footer}");
        } else {
            emit(&format!("{}{footer}\n", self.text));
        }
    }
}

/// Writes to stdout, ignoring a closed pipe (e.g. output piped into `head`).
fn emit(text: &str) {
    let mut out = io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failure_kinds_map_to_exit_codes() {
        let check = Failure::from(Error::ClosureCap { cap: 3 });
        assert!(matches!(check, Failure::Check(_)));
        let usage = Failure::from(Error::InvalidInput("x".into()));
        assert!(matches!(usage, Failure::Usage(_)));
        assert_eq!(Outcome::from_failure(usage).code, EXIT_USAGE);
        assert_eq!(Outcome::from_failure(check).code, EXIT_CHECK);
    }

    #[test]
    fn non_object_json_is_wrapped() {
        let o = Outcome::new(EXIT_OK, String::new(), json!([1, 2]));
        assert_eq!(o.json["result"], json!([1, 2]));
    }

    #[test]
    fn checksum_is_stable_hex() {
        let c = builtin_checksum();
        assert_eq!(c.len(), 64);
        assert_eq!(c, builtin_checksum());
    }
}
