//! DIMACS CNF text and the `.vars` sidecar.

use std::io::Write;

use crate::error::{input, Result};

use super::cnf::CnfModel;

pub fn write_dimacs(mut w: impl Write, num_vars: usize, clauses: &[Vec<i32>]) -> Result<()> {
    writeln!(w, "p cnf {num_vars} {}", clauses.len())?;
    for c in clauses {
        for l in c {
            write!(w, "{l} ")?;
        }
        writeln!(w, "0")?;
    }
    Ok(())
}

pub fn write_model(w: impl Write, m: &CnfModel) -> Result<()> {
    write_dimacs(w, m.num_vars(), m.clauses())
}

/// One line per named variable: the name fields, then the CNF index.
pub fn write_vars(mut w: impl Write, m: &CnfModel) -> Result<()> {
    for (i, v) in m.directory() {
        writeln!(w, "{v} {i}")?;
    }
    Ok(())
}

/// Parses DIMACS CNF. Clauses may span lines; `c` lines are comments.
pub fn parse_dimacs(text: &str) -> Result<(usize, Vec<Vec<i32>>)> {
    let mut header = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let f: Vec<&str> = rest.split_whitespace().collect();
            match f.as_slice() {
                ["cnf", v, c] if header.is_none() => {
                    let v: usize = v.parse().map_err(|_| crate::Error::Input(format!("bad variable count {v:?}")))?;
                    let c: usize = c.parse().map_err(|_| crate::Error::Input(format!("bad clause count {c:?}")))?;
                    header = Some((v, c));
                }
                _ => return input(format!("bad problem line {line:?}")),
            }
            continue;
        }
        let Some((num_vars, _)) = header else {
            return input("clause before the `p cnf` line");
        };
        for tok in line.split_whitespace() {
            let l: i32 = tok.parse().map_err(|_| crate::Error::Input(format!("bad literal {tok:?}")))?;
            if l == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if l.unsigned_abs() as usize > num_vars {
                return input(format!("literal {l} beyond {num_vars} variables"));
            } else {
                current.push(l);
            }
        }
    }
    let Some((num_vars, num_clauses)) = header else {
        return input("missing `p cnf` line");
    };
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != num_clauses {
        return input(format!("header announces {num_clauses} clauses, found {}", clauses.len()));
    }
    Ok((num_vars, clauses))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_header() {
        let mut out = Vec::new();
        write_dimacs(&mut out, 0, &[]).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "p cnf 0 0\n");
    }

    #[test]
    fn round_trip() {
        let clauses = vec![vec![1, -2], vec![3], vec![-1, 2, -3]];
        let mut out = Vec::new();
        write_dimacs(&mut out, 3, &clauses).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text, "p cnf 3 3\n1 -2 0\n3 0\n-1 2 -3 0\n");
        assert_eq!(parse_dimacs(&text).unwrap(), (3, clauses));
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_dimacs("1 2 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 3 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 2\n1 0\n").is_err());
        assert!(parse_dimacs("p cnf x 1\n").is_err());
    }
}
