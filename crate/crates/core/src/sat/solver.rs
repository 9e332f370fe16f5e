//! Running CNF models: the embedded solver or an external binary speaking
//! DIMACS, with every satisfying assignment re-checked.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::Command;

use crate::error::{Error, Result};

use super::cdcl::Cdcl;
use super::cnf::CnfModel;
use super::dimacs;

/// Environment variable naming an external solver executable.
pub const SOLVER_ENV: &str = "SOLVER";

/// Default clause limit for the embedded solver.
pub const DEFAULT_CLAUSE_LIMIT: usize = 2_000_000;

/// A solver answer. The assignment is indexed by variable; slot 0 is unused.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Sat(Vec<bool>),
    Unsat,
}

impl Verdict {
    pub fn is_sat(&self) -> bool {
        matches!(self, Verdict::Sat(_))
    }

    pub fn assignment(&self) -> Option<&[bool]> {
        match self {
            Verdict::Sat(a) => Some(a),
            Verdict::Unsat => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Backend {
    Embedded { clause_limit: usize, conflict_budget: Option<u64> },
    External(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatSolver {
    backend: Backend,
}

impl Default for SatSolver {
    fn default() -> Self {
        SatSolver::embedded()
    }
}

impl SatSolver {
    pub fn embedded() -> Self {
        SatSolver { backend: Backend::Embedded { clause_limit: DEFAULT_CLAUSE_LIMIT, conflict_budget: None } }
    }

    pub fn with_limits(clause_limit: usize, conflict_budget: Option<u64>) -> Self {
        SatSolver { backend: Backend::Embedded { clause_limit, conflict_budget } }
    }

    pub fn external(path: impl Into<PathBuf>) -> Self {
        SatSolver { backend: Backend::External(path.into()) }
    }

    /// An explicit path wins over `$SOLVER`; neither means embedded.
    pub fn from_config(flag: Option<&Path>) -> Self {
        match flag {
            Some(p) => SatSolver::external(p),
            None => match std::env::var_os(SOLVER_ENV) {
                Some(p) if !p.is_empty() => SatSolver::external(PathBuf::from(p)),
                _ => SatSolver::embedded(),
            },
        }
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn solve(&self, model: &CnfModel) -> Result<Verdict> {
        self.solve_clauses(model.num_vars(), model.clauses())
    }

    pub fn solve_clauses(&self, num_vars: usize, clauses: &[Vec<i32>]) -> Result<Verdict> {
        let verdict = match &self.backend {
            Backend::Embedded { clause_limit, conflict_budget } => {
                let mut s = self.embedded_instance(num_vars, clauses, *clause_limit)?;
                s.set_conflict_budget(*conflict_budget);
                run_embedded(&mut s)?
            }
            Backend::External(path) => run_external(path, num_vars, clauses)?,
        };
        recheck(num_vars, clauses, verdict)
    }

    fn embedded_instance(&self, num_vars: usize, clauses: &[Vec<i32>], limit: usize) -> Result<Cdcl> {
        if clauses.len() > limit {
            return Err(Error::Resource(format!(
                "{} clauses exceed the embedded solver limit of {limit}; set {SOLVER_ENV} or pass --solver",
                clauses.len()
            )));
        }
        let mut s = Cdcl::new(num_vars);
        for c in clauses {
            s.add_clause(c);
        }
        Ok(s)
    }

    /// Calls `visit` on every model, projected to `project`, that differs from
    /// all earlier ones on `project`. Stops early when `visit` returns false.
    /// Returns the number of models visited.
    pub fn enumerate(
        &self,
        model: &CnfModel,
        project: &[i32],
        mut visit: impl FnMut(&[bool]) -> bool,
    ) -> Result<usize> {
        let num_vars = model.num_vars();
        let block = |a: &[bool]| -> Vec<i32> { project.iter().map(|&v| if a[v as usize] { -v } else { v }).collect() };
        let mut count = 0;
        match &self.backend {
            Backend::Embedded { clause_limit, conflict_budget } => {
                let mut s = self.embedded_instance(num_vars, model.clauses(), *clause_limit)?;
                s.set_conflict_budget(*conflict_budget);
                while let Verdict::Sat(a) = recheck(num_vars, model.clauses(), run_embedded(&mut s)?)? {
                    count += 1;
                    if !visit(&a) || project.is_empty() {
                        break;
                    }
                    s.add_clause(&block(&a));
                }
            }
            Backend::External(_) => {
                let mut clauses = model.clauses().to_vec();
                while let Verdict::Sat(a) = self.solve_clauses(num_vars, &clauses)? {
                    if let Err(i) = check(model.clauses(), &a) {
                        return Err(Error::Protocol(format!("model violates clause {i}")));
                    }
                    count += 1;
                    if !visit(&a) || project.is_empty() {
                        break;
                    }
                    clauses.push(block(&a));
                }
            }
        }
        Ok(count)
    }
}

fn run_embedded(s: &mut Cdcl) -> Result<Verdict> {
    match s.solve() {
        Some(true) => {
            let mut a = vec![false];
            a.extend_from_slice(s.model());
            Ok(Verdict::Sat(a))
        }
        Some(false) => Ok(Verdict::Unsat),
        None => Err(Error::Resource(format!("conflict budget exhausted after {} conflicts", s.conflicts()))),
    }
}

fn check(clauses: &[Vec<i32>], a: &[bool]) -> std::result::Result<(), usize> {
    for (i, c) in clauses.iter().enumerate() {
        if !c.iter().any(|&l| a.get(l.unsigned_abs() as usize).copied().unwrap_or(false) == (l > 0)) {
            return Err(i);
        }
    }
    Ok(())
}

fn recheck(num_vars: usize, clauses: &[Vec<i32>], verdict: Verdict) -> Result<Verdict> {
    if let Verdict::Sat(a) = &verdict {
        if a.len() != num_vars + 1 {
            return Err(Error::Protocol(format!("assignment covers {} of {num_vars} variables", a.len() - 1)));
        }
        if let Err(i) = check(clauses, a) {
            return Err(Error::Protocol(format!("assignment falsifies clause {i}: {:?}", clauses[i])));
        }
    }
    Ok(verdict)
}

fn run_external(path: &Path, num_vars: usize, clauses: &[Vec<i32>]) -> Result<Verdict> {
    let mut file = tempfile::Builder::new().suffix(".cnf").tempfile()?;
    dimacs::write_dimacs(&mut file, num_vars, clauses)?;
    file.flush()?;
    let out = Command::new(path)
        .arg(file.path())
        .output()
        .map_err(|e| Error::Protocol(format!("cannot run solver {}: {e}", path.display())))?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    log::debug!("solver {} exited with {:?}", path.display(), out.status.code());
    parse_solver_output(&stdout, out.status.code(), num_vars)
}

/// Interprets solver output: an `s` line and/or exit code 10/20, `v` lines
/// with the model. Variables missing from the `v` lines are false.
pub fn parse_solver_output(stdout: &str, exit: Option<i32>, num_vars: usize) -> Result<Verdict> {
    let mut status = None;
    let mut values = vec![false; num_vars + 1];
    let mut terminated = false;
    for line in stdout.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            let s = match rest.trim() {
                "SATISFIABLE" => true,
                "UNSATISFIABLE" => false,
                other => return Err(Error::Protocol(format!("unknown status line {other:?}"))),
            };
            if status.is_some_and(|old| old != s) {
                return Err(Error::Protocol("contradictory status lines".into()));
            }
            status = Some(s);
        } else if let Some(rest) = line.strip_prefix('v') {
            for tok in rest.split_whitespace() {
                let l: i64 = tok.parse().map_err(|_| Error::Protocol(format!("bad literal {tok:?} in v-line")))?;
                if l == 0 {
                    terminated = true;
                    continue;
                }
                let v = l.unsigned_abs() as usize;
                if v > num_vars {
                    return Err(Error::Protocol(format!("literal {l} beyond {num_vars} variables")));
                }
                values[v] = l > 0;
            }
        }
    }
    let by_exit = match exit {
        Some(10) => Some(true),
        Some(20) => Some(false),
        _ => None,
    };
    let sat = match (status, by_exit) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::Protocol(format!("status line disagrees with exit code {exit:?}")))
        }
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => return Err(Error::Protocol(format!("no verdict (exit code {exit:?}, no status line)"))),
    };
    if !sat {
        return Ok(Verdict::Unsat);
    }
    if !terminated && num_vars > 0 {
        return Err(Error::Protocol("satisfiable answer without a terminated v-line model".into()));
    }
    Ok(Verdict::Sat(values))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_standard_output() {
        let v = parse_solver_output("c hi\ns SATISFIABLE\nv 1 -2\nv 3 0\n", Some(10), 3).unwrap();
        assert_eq!(v, Verdict::Sat(vec![false, true, false, true]));
        assert_eq!(parse_solver_output("s UNSATISFIABLE\n", Some(20), 3).unwrap(), Verdict::Unsat);
        assert_eq!(parse_solver_output("", Some(20), 3).unwrap(), Verdict::Unsat);
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(parse_solver_output("s SATISFIABLE\n", Some(20), 1), Err(Error::Protocol(_))));
        assert!(matches!(parse_solver_output("hello\n", Some(0), 1), Err(Error::Protocol(_))));
        assert!(matches!(parse_solver_output("s SATISFIABLE\nv 1 x 0\n", Some(10), 1), Err(Error::Protocol(_))));
        assert!(matches!(parse_solver_output("s SATISFIABLE\nv 5 0\n", Some(10), 1), Err(Error::Protocol(_))));
        assert!(matches!(parse_solver_output("s SATISFIABLE\nv 1\n", Some(10), 1), Err(Error::Protocol(_))));
    }

    #[test]
    fn recheck_catches_wrong_models() {
        let clauses = vec![vec![1]];
        assert!(matches!(recheck(1, &clauses, Verdict::Sat(vec![false, false])), Err(Error::Protocol(_))));
        assert!(recheck(1, &clauses, Verdict::Sat(vec![false, true])).is_ok());
    }

    #[test]
    fn empty_model_is_sat() {
        let m = CnfModel::new(1, 0);
        assert_eq!(SatSolver::embedded().solve(&m).unwrap(), Verdict::Sat(vec![false]));
    }

    #[test]
    fn clause_limit_is_enforced() {
        let s = SatSolver::with_limits(1, None);
        assert!(matches!(s.solve_clauses(2, &[vec![1], vec![2]]), Err(Error::Resource(_))));
    }
}
