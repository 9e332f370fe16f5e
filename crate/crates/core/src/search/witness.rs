//! Even-rank witnesses on `[2r]`: reconstruction and verification.

use crate::error::{input, Error, Result};
use crate::sat::encode::decode_map;
use crate::sat::{
    add_structural, canonical_pair, encode_enumeration, f4, prescribed_sign, witness_fliple_count, EnumOptions,
    Property, SatSolver,
};
use crate::signotope::{Sign, Signotope};
use crate::subset::Subset;

use super::scan::{check_pair, PairOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PropertyStatus {
    Pass,
    /// The lexicographically first subset breaking the property.
    Fail(Subset),
    /// (f) without a lower witness.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub properties: Vec<(Property, PropertyStatus)>,
    pub fliple_count: usize,
    pub expected_fliple_count: usize,
    pub pair: (Subset, Subset),
    pub rotations_checked: usize,
    pub unsat_rotations: usize,
    pub pass: bool,
}

impl WitnessReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (p, status) in &self.properties {
            let v = match status {
                PropertyStatus::Pass => "pass".to_string(),
                PropertyStatus::Fail(x) => format!("fail at ({x})"),
                PropertyStatus::Skipped => "skipped".to_string(),
            };
            out += &format!("property_{}={v}\n", p.label());
        }
        out += &format!("fliple_count={}\n", self.fliple_count);
        out += &format!("expected_fliple_count={}\n", self.expected_fliple_count);
        out += &format!("pair={}:{}\n", self.pair.0, self.pair.1);
        out += &format!("rotations_checked={}\n", self.rotations_checked);
        out += &format!("unsat_rotations={}\n", self.unsat_rotations);
        out += &format!("verdict={}\n", if self.pass { "pass" } else { "fail" });
        out
    }
}

fn check_shape(s: &Signotope) -> Result<()> {
    let r = s.rank();
    if s.n() != 2 * r {
        return input(format!("witnesses live on [2r]; got r={r} n={}", s.n()));
    }
    if r % 2 == 1 || r < 4 {
        return input(format!("witnesses need an even rank of at least 4, got {r}"));
    }
    Ok(())
}

/// First violation of each property, in property order.
fn property_results(s: &Signotope, lower: Option<&Signotope>) -> Vec<(Property, PropertyStatus)> {
    let r = s.rank();
    let rotated = s.rotate_k(4);
    let mut first: [Option<Subset>; 6] = [None; 6];
    first[0] = s.subsets().find(|&x| rotated.sign(x) != s.sign(x));
    for x in s.subsets() {
        for (p, sign) in prescribed_sign(r, x, lower) {
            let slot = &mut first[p as usize];
            if slot.is_none() && s.sign(x) != sign {
                *slot = Some(x);
            }
        }
    }
    Property::ALL
        .iter()
        .map(|&p| {
            let status = match first[p as usize] {
                Some(x) => PropertyStatus::Fail(x),
                None if p == Property::F && lower.is_none() => PropertyStatus::Skipped,
                None => PropertyStatus::Pass,
            };
            (p, status)
        })
        .collect()
}

/// Checks (a)–(f), the fliple count, and that the canonical pair has no
/// extension under any of the `2n` rotations. Each property reports its
/// first violating subset; the rotation scan only runs if everything else
/// passed.
pub fn verify_witness(s: &Signotope, lower: Option<&Signotope>, solver: &SatSolver) -> Result<WitnessReport> {
    check_shape(s)?;
    let r = s.rank();
    if let Some(l) = lower {
        if l.rank() + 2 != r || l.n() + 4 != s.n() {
            return input(format!("lower witness must have r={} n={}", r - 2, s.n() - 4));
        }
    }
    let properties = property_results(s, lower);
    let failed = properties.iter().any(|(_, st)| matches!(st, PropertyStatus::Fail(_)));
    let fliple_count = s.fliples().len();
    let expected_fliple_count = witness_fliple_count(r);
    let pair = canonical_pair(r);
    let mut report = WitnessReport {
        properties,
        fliple_count,
        expected_fliple_count,
        pair,
        rotations_checked: 0,
        unsat_rotations: 0,
        pass: false,
    };
    if failed || fliple_count != expected_fliple_count {
        return Ok(report);
    }
    match check_pair(s, pair.0, pair.1, solver)? {
        PairOutcome::NotExtendable { rotations_checked } => {
            report.rotations_checked = rotations_checked;
            report.unsat_rotations = rotations_checked;
            report.pass = true;
        }
        PairOutcome::Extendable(cert) => {
            report.rotations_checked = cert.rotations + 1;
            report.unsat_rotations = cert.rotations;
        }
    }
    Ok(report)
}

/// All signotopes on `[2r]` satisfying (a)–(f) with the given fliple
/// constraints, at most `limit` of them.
pub fn witness_models(
    rank: usize,
    lower: Option<&Signotope>,
    required_fliples: &[Subset],
    fliple_count: Option<usize>,
    solver: &SatSolver,
    limit: usize,
) -> Result<Vec<Signotope>> {
    let opts = EnumOptions { fliple_count, required_fliples: required_fliples.to_vec(), ..Default::default() };
    let mut model = encode_enumeration(rank, 2 * rank, &opts)?;
    add_structural(&mut model, lower)?;
    let project: Vec<i32> = (1..=model.num_s_vars() as i32).collect();
    let mut out = Vec::new();
    solver.enumerate(&model, &project, |a| {
        out.push(decode_map(&model, a));
        out.len() < limit
    })?;
    out.into_iter()
        .map(|m| Signotope::new(m).map_err(|e| Error::Internal(format!("witness model is not a signotope: {e}"))))
        .collect()
}

/// The rank-4 signotopes satisfying (a)–(e) with every member of `F₄` a
/// fliple.
pub fn reconstruct_rank4(solver: &SatSolver) -> Result<Vec<Signotope>> {
    witness_models(4, None, &f4(), None, solver, usize::MAX)
}

/// Signs on the four subsets (a)–(e) leave open, for the rank-4 model from
/// which the rank-6 witness is built.
pub const CANONICAL_RANK4_SIGNS: [([usize; 4], Sign); 4] =
    [([1, 3, 4, 8], Sign::Minus), ([4, 5, 7, 8], Sign::Plus), ([2, 3, 7, 8], Sign::Minus), ([3, 4, 6, 7], Sign::Minus)];

pub fn canonical_rank4(solver: &SatSolver) -> Result<Signotope> {
    reconstruct_rank4(solver)?
        .into_iter()
        .find(|s| CANONICAL_RANK4_SIGNS.iter().all(|(x, sign)| s.sign(Subset::new(x).unwrap()) == *sign))
        .ok_or_else(|| Error::Internal("canonical rank-4 witness not among the reconstructed models".into()))
}

/// A rank-`r` witness from (a)–(f) over `lower` with the prescribed fliple count.
pub fn reconstruct_witness(rank: usize, lower: &Signotope, solver: &SatSolver) -> Result<Option<Signotope>> {
    Ok(witness_models(rank, Some(lower), &[], Some(witness_fliple_count(rank)), solver, 1)?.pop())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_plus_fails_b() {
        let s = Signotope::constant(4, 8, Sign::Plus).unwrap();
        let rep = verify_witness(&s, None, &SatSolver::embedded()).unwrap();
        assert!(!rep.pass);
        assert_eq!(rep.properties[1], (Property::B, PropertyStatus::Fail(Subset::new(&[2, 4, 6, 8]).unwrap())));
        assert_eq!(rep.rotations_checked, 0);
    }

    #[test]
    fn rejects_wrong_shapes() {
        let solver = SatSolver::embedded();
        assert!(verify_witness(&Signotope::constant(4, 9, Sign::Plus).unwrap(), None, &solver).is_err());
        assert!(verify_witness(&Signotope::constant(3, 6, Sign::Plus).unwrap(), None, &solver).is_err());
    }

    #[test]
    fn rank4_reconstruction() {
        let solver = SatSolver::embedded();
        let models = reconstruct_rank4(&solver).unwrap();
        assert_eq!(models.len(), 4);
        let canon = canonical_rank4(&solver).unwrap();
        let rep = verify_witness(&canon, None, &solver).unwrap();
        assert!(rep.pass, "{}", rep.to_text());
        assert_eq!(rep.fliple_count, 8);
        assert_eq!(rep.unsat_rotations, 16);
    }
}
