//! State and channel file formats.
//!
//! A state file is a JSON 4×4 array whose entries are either a real number or
//! a `[re, im]` pair:
//!
//! ```json
//! [[0.5, 0, 0, [0, -0.5]],
//!  [0, 0, 0, 0],
//!  [0, 0, 0, 0],
//!  [[0, 0.5], 0, 0, 0.5]]
//! ```
//!
//! A channel file is either a JSON list of 2×2 Kraus matrices in the same
//! entry syntax, `{"kraus": [...]}`, or `{"builtin": "depolarizing",
//! "param": 0.3}`. On the command line a channel may also be given inline as
//! `name` or `name:param`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::channels::{builtin, Builtin, KrausChannel};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

impl From<Entry> for C64 {
    fn from(e: Entry) -> C64 {
        match e {
            Entry::Real(re) => C64::new(re, 0.0),
            Entry::Complex([re, im]) => C64::new(re, im),
        }
    }
}

impl From<C64> for Entry {
    fn from(z: C64) -> Entry {
        if z.im == 0.0 {
            Entry::Real(z.re)
        } else {
            Entry::Complex([z.re, z.im])
        }
    }
}

type Rows = Vec<Vec<Entry>>;

fn matrix_from_rows(rows: Rows, n: usize) -> Result<ComplexMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        let shape: Vec<usize> = rows.iter().map(Vec::len).collect();
        return Err(Error::Parse(format!(
            "expected a {n}x{n} array, got rows of lengths {shape:?}"
        )));
    }
    let rows: Vec<Vec<C64>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(C64::from).collect())
        .collect();
    ComplexMatrix::from_rows(&rows).map_err(|e| Error::Parse(e.to_string()))
}

fn rows_from_matrix(m: &ComplexMatrix) -> Rows {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|&z| Entry::from(z)).collect())
        .collect()
}

/// Parses the text of a state file into an (unvalidated) 4×4 matrix.
pub fn parse_state(text: &str) -> Result<ComplexMatrix> {
    let rows: Rows = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    matrix_from_rows(rows, 4)
}

pub fn read_state_file(path: &Path) -> Result<ComplexMatrix> {
    parse_state(&std::fs::read_to_string(path)?)
}

/// One row per line, real entries written as plain numbers.
pub fn format_state(m: &ComplexMatrix) -> String {
    let rows = rows_from_matrix(m);
    let lines: Vec<String> = rows
        .iter()
        .map(|r| serde_json::to_string(r).expect("finite entries serialize"))
        .collect();
    format!("[{}]\n", lines.join(",\n "))
}

pub fn write_state_file(path: &Path, m: &ComplexMatrix) -> Result<()> {
    std::fs::write(path, format_state(m))?;
    Ok(())
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ChannelDoc {
    List(Vec<Rows>),
    Kraus { kraus: Vec<Rows> },
    Builtin { builtin: String, param: Option<f64> },
}

/// Parses the text of a channel file.
pub fn parse_channel(text: &str) -> Result<KrausChannel> {
    let doc: ChannelDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    match doc {
        ChannelDoc::List(ops) | ChannelDoc::Kraus { kraus: ops } => {
            let ops = ops
                .into_iter()
                .map(|r| matrix_from_rows(r, 2))
                .collect::<Result<Vec<_>>>()?;
            KrausChannel::new(ops)
        }
        ChannelDoc::Builtin { builtin: name, param } => {
            let spec = match param {
                Some(p) => format!("{name}:{p}"),
                None => name,
            };
            builtin(spec.parse::<Builtin>()?)
        }
    }
}

/// A channel argument: path to a channel file if one exists, otherwise an
/// inline builtin spec such as `phi` or `dephasing:0.2`.
pub fn resolve_channel(arg: &str) -> Result<KrausChannel> {
    let path = Path::new(arg);
    if path.is_file() {
        return parse_channel(&std::fs::read_to_string(path)?);
    }
    builtin(arg.parse::<Builtin>()?)
}

pub fn format_channel(c: &KrausChannel) -> String {
    let ops: Vec<Rows> = c.ops().iter().map(rows_from_matrix).collect();
    serde_json::to_string(&ops).expect("finite entries serialize") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_real_and_complex_entries() {
        let text = "[[0.5, 0, 0, [0, -0.5]], [0,0,0,0], [0,0,0,0], [[0, 0.5], 0, 0, 0.5]]";
        let m = parse_state(text).unwrap();
        assert_eq!(m[(0, 3)], C64::new(0.0, -0.5));
        assert_eq!(m[(3, 3)], C64::new(0.5, 0.0));
    }

    #[test]
    fn rejects_wrong_shapes_and_garbage() {
        assert!(matches!(parse_state("[[1, 0], [0, 0]]"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_state("[[1,0,0,0],[0,0,0],[0,0,0,0],[0,0,0,0]]"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(parse_state("not json"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_state("[[1,0,0,[1,2,3]],[0,0,0,0],[0,0,0,0],[0,0,0,0]]"),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn state_text_round_trips() {
        let m = ComplexMatrix::from_fn(4, 4, |i, j| {
            C64::new(0.1 * i as f64, if i == j { 0.0 } else { 0.01 * j as f64 })
        });
        assert_eq!(parse_state(&format_state(&m)).unwrap(), m);
    }

    #[test]
    fn channel_documents() {
        let c = parse_channel("[[[1,0],[0,0]], [[0,0.7071067811865476],[0,0.7071067811865476]]]").unwrap();
        assert_eq!(c.ops().len(), 2);
        assert!(c.validate_cptp().cptp);
        let c = parse_channel(r#"{"builtin": "depolarizing", "param": 0.3}"#).unwrap();
        assert_eq!(c.ops().len(), 4);
        let c = parse_channel(r#"{"kraus": [[[1,0],[0,1]]]}"#).unwrap();
        assert_eq!(c, KrausChannel::identity());
        assert!(parse_channel("[]").is_err());
        assert!(parse_channel(r#"{"builtin": "nope"}"#).is_err());
    }

    #[test]
    fn inline_channel_specs() {
        assert_eq!(resolve_channel("phi").unwrap().ops().len(), 2);
        assert!(resolve_channel("dephasing:2").is_err());
        let again = parse_channel(&format_channel(&resolve_channel("amplitude_damping:0.25").unwrap())).unwrap();
        assert_eq!(again, resolve_channel("amplitude_damping:0.25").unwrap());
    }
}
