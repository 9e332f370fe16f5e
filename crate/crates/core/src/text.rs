//! The line-oriented signotope file format.
//!
//! ```text
//! signotope r=3 n=4
//! +---
//! ```
//!
//! Lines starting with `#` before a header are kept as comments. A file may
//! hold several records back to back.

use std::io::Write;
use std::path::Path;

use crate::error::{input, Error, Result};
use crate::signotope::{SignMap, Signotope};

/// One parsed record with the comment lines that preceded it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub comments: Vec<String>,
    pub map: SignMap,
}

fn parse_header(line: &str) -> Result<(usize, usize)> {
    let mut parts = line.split(' ');
    let tag = parts.next();
    let r = parts.next().and_then(|p| p.strip_prefix("r=")).and_then(|v| v.parse().ok());
    let n = parts.next().and_then(|p| p.strip_prefix("n=")).and_then(|v| v.parse().ok());
    match (tag, r, n, parts.next()) {
        (Some("signotope"), Some(r), Some(n), None) => Ok((r, n)),
        _ => input(format!("bad header line {line:?}, expected `signotope r=<r> n=<n>`")),
    }
}

/// Parses every record in `text`.
pub fn parse_records(text: &str) -> Result<Vec<Record>> {
    if !text.is_ascii() {
        return input("signotope file must be ASCII");
    }
    let mut records = Vec::new();
    let mut comments = Vec::new();
    let mut lines = text.lines();
    while let Some(line) = lines.next() {
        if line.starts_with('#') {
            comments.push(line.to_string());
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let (r, n) = parse_header(line)?;
        let signs = lines.next().ok_or_else(|| Error::Input("missing sign line".into()))?;
        let map = SignMap::parse_signs(r, n, signs)?;
        records.push(Record { comments: std::mem::take(&mut comments), map });
    }
    Ok(records)
}

/// Parses exactly one sign map.
pub fn parse_sign_map(text: &str) -> Result<SignMap> {
    let mut records = parse_records(text)?;
    match records.len() {
        1 => Ok(records.pop().unwrap().map),
        0 => input("no signotope record found"),
        k => input(format!("expected one signotope record, found {k}")),
    }
}

pub fn read_sign_map(path: impl AsRef<Path>) -> Result<SignMap> {
    parse_sign_map(&std::fs::read_to_string(path)?)
}

/// Reads one record and validates it.
pub fn read_signotope(path: impl AsRef<Path>) -> Result<Signotope> {
    Signotope::new(read_sign_map(path)?)
}

pub fn write_signotope(mut w: impl Write, s: &SignMap) -> Result<()> {
    w.write_all(s.to_text().as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let m = SignMap::parse_signs(3, 5, "+-+-+--+++").unwrap();
        let text = m.to_text();
        assert_eq!(text, "signotope r=3 n=5\n+-+-+--+++\n");
        assert_eq!(parse_sign_map(&text).unwrap(), m);
    }

    #[test]
    fn keeps_comments() {
        let recs = parse_records("# k=5\nsignotope r=3 n=3\n+\nsignotope r=1 n=2\n-+\n").unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].comments, vec!["# k=5".to_string()]);
        assert!(recs[1].comments.is_empty());
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_sign_map("signotope r=3 n=4\n+--\n").is_err());
        assert!(parse_sign_map("signotope r=3 n=4\n+-x-\n").is_err());
        assert!(parse_sign_map("signotope r=3\n+\n").is_err());
        assert!(parse_sign_map("signotope r=3 n=3\n").is_err());
        assert!(parse_sign_map("signotope r=3 n=3\n\u{2212}\n").is_err());
        assert!(parse_sign_map("").is_err());
    }
}
