//! JSON algorithm files:
//!
//! ```text
//! { "m": 2, "n": 2, "p": 2, "space": "smnp",
//!   "terms": [ { "u": [["1","0"],["0","0"]], "v": ..., "w": ... }, ... ] }
//! ```
//!
//! `u` is `m×n`, `v` is `n×p`, `w` is `p×m`; entries are rational strings.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::BilinearAlgorithm;
use crate::error::{Error, Result};
use crate::exact::{rational, Rational};
use crate::tensor::Rank1Tensor;

pub const SPACE_SMNP: &str = "smnp";

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgorithmFile {
    m: usize,
    n: usize,
    p: usize,
    space: String,
    terms: Vec<TermFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermFile {
    u: Vec<Vec<String>>,
    v: Vec<Vec<String>>,
    w: Vec<Vec<String>>,
}

fn matrix_strings(entries: &[Rational], cols: usize) -> Vec<Vec<String>> {
    entries
        .chunks(cols)
        .map(|row| row.iter().map(rational::format).collect())
        .collect()
}

fn parse_factor(rows: &[Vec<String>], shape: (usize, usize), location: &str) -> Result<Vec<Rational>> {
    let (r, c) = shape;
    if rows.len() != r {
        return Err(Error::Validation(format!(
            "{location}: expected {r} rows, found {}",
            rows.len()
        )));
    }
    let mut out = Vec::with_capacity(r * c);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != c {
            return Err(Error::Validation(format!(
                "{location}[{i}]: expected {c} entries, found {}",
                row.len()
            )));
        }
        for (j, s) in row.iter().enumerate() {
            let value = rational::parse(s).map_err(|e| {
                Error::parse(format!("{location}[{i}][{j}]"), e.to_string())
            })?;
            out.push(value);
        }
    }
    Ok(out)
}

pub fn from_json_str(text: &str) -> Result<BilinearAlgorithm> {
    let file: AlgorithmFile = serde_json::from_str(text).map_err(|e| {
        // serde_json appends the location to its message; keep it only once.
        let location = format!("line {} column {}", e.line(), e.column());
        let message = e.to_string();
        let message = message.strip_suffix(&format!(" at {location}")).unwrap_or(&message).to_string();
        Error::parse(location, message)
    })?;
    if file.space != SPACE_SMNP {
        return Err(Error::Validation(format!(
            "space: unsupported form {:?} (only \"{SPACE_SMNP}\")",
            file.space
        )));
    }
    let (m, n, p) = (file.m, file.n, file.p);
    if m == 0 || n == 0 || p == 0 {
        return Err(Error::Validation(format!("format ({m},{n},{p}) has a zero side")));
    }
    let mut terms = Vec::with_capacity(file.terms.len());
    for (t, term) in file.terms.iter().enumerate() {
        let factors = vec![
            parse_factor(&term.u, (m, n), &format!("terms[{t}].u"))?,
            parse_factor(&term.v, (n, p), &format!("terms[{t}].v"))?,
            parse_factor(&term.w, (p, m), &format!("terms[{t}].w"))?,
        ];
        for (name, f) in ["u", "v", "w"].iter().zip(&factors) {
            if f.iter().all(|x| *x == rational::zero()) {
                return Err(Error::Validation(format!("terms[{t}].{name} is the zero matrix")));
            }
        }
        terms.push(Rank1Tensor::new(factors)?);
    }
    BilinearAlgorithm::new((m, n, p), terms)
}

pub fn to_json_string(alg: &BilinearAlgorithm) -> String {
    let (m, n, p) = alg.mnp();
    let file = AlgorithmFile {
        m,
        n,
        p,
        space: SPACE_SMNP.to_string(),
        terms: alg
            .terms()
            .iter()
            .map(|t| TermFile {
                u: matrix_strings(t.factor(0), n),
                v: matrix_strings(t.factor(1), p),
                w: matrix_strings(t.factor(2), m),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn load(path: impl AsRef<Path>) -> Result<BilinearAlgorithm> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    from_json_str(&text)
}

pub fn save(alg: &BilinearAlgorithm, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, to_json_string(alg)).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}
