//! Extensions by one element with prescribed fliples.

use std::collections::BTreeSet;

use crate::error::{input, Error, Result};
use crate::order::{Comparison, PartialOrder};
use crate::signotope::{Sign, SignMap, Signotope};
use crate::subset::Subset;

/// A signotope on `[n+1]` that deletes back to the input at position `k`,
/// together with the prescribed fliples through `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionCertificate {
    pub extended: Signotope,
    pub k: usize,
    pub fliples: Vec<Subset>,
    pub rotations: usize,
}

/// Outcome of [`verify_extension`]: empty `reasons` means every check passed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verification {
    pub reasons: Vec<String>,
}

impl Verification {
    pub fn ok(&self) -> bool {
        self.reasons.is_empty()
    }
}

/// `σ*` on `[n+1]` with `σ*(X ∪ {n+1}) = +` exactly for `X ∈ D`.
pub fn extend_with_downset(s: &Signotope, down: &BTreeSet<Subset>) -> Result<Signotope> {
    let order = PartialOrder::new(s)?;
    if !order.is_down_set(down)? {
        return input("prescribed set is not downward closed");
    }
    Ok(extend_unchecked(s, down))
}

fn extend_unchecked(s: &Signotope, down: &BTreeSet<Subset>) -> Signotope {
    let n = s.n();
    let map = SignMap::from_fn(s.rank(), n + 1, |x| {
        if x.contains(n + 1) {
            Sign::from_bool(down.contains(&x.without(n + 1)))
        } else {
            s.sign(x)
        }
    })
    .expect("shape of s is valid");
    Signotope::new_unchecked(map)
}

fn check_tuple(s: &Signotope, i: Subset) -> Result<()> {
    if i.len() + 1 != s.rank() || !i.within(s.n()) {
        return input(format!("{i:?} is not an {}-subset of [{}]", s.rank() - 1, s.n()));
    }
    Ok(())
}

/// Extends at the last position with `I ∪ {n+1}` a fliple.
pub fn one_extend(s: &Signotope, i: Subset) -> Result<ExtensionCertificate> {
    check_tuple(s, i)?;
    let order = PartialOrder::new(s)?;
    let down = order.downset_of(&[i])?;
    let n = s.n();
    Ok(ExtensionCertificate {
        extended: extend_unchecked(s, &down),
        k: n + 1,
        fliples: vec![i.with(n + 1)],
        rotations: 0,
    })
}

/// Extends so that `I*` and `J*` through the new element are fliples.
///
/// Rotates until the rotated `I` and `J` are incomparable, extends with
/// their down-set at the last position and rotates back. Requires
/// `|I ∩ J| + r` odd.
pub fn two_extend(s: &Signotope, i: Subset, j: Subset) -> Result<ExtensionCertificate> {
    check_tuple(s, i)?;
    check_tuple(s, j)?;
    if i == j {
        return input("the two prescribed subsets must differ");
    }
    let parity = i.intersection(j).len() + s.rank();
    if parity.is_multiple_of(2) {
        return Err(Error::UnsupportedParity(parity));
    }
    let n = s.n();
    let mut rotated = s.clone();
    for rho in 0..2 * n {
        let (ir, jr) = (i.rotate_by(n, rho as i64), j.rotate_by(n, rho as i64));
        let order = PartialOrder::new(&rotated)?;
        if order.compare(ir, jr)? == Comparison::Incomparable {
            let down = order.downset_of(&[ir, jr])?;
            let star = extend_unchecked(&rotated, &down);
            let cert = rotate_back(&star, rho, &[ir.with(n + 1), jr.with(n + 1)]);
            let k = cert.k;
            let check = verify_extension(s, &[i, j], &cert);
            if !check.ok() {
                return Err(Error::Internal(format!("rotated-back extension failed: {}", check.reasons.join("; "))));
            }
            log::debug!("two_extend: rho={rho} k={k}");
            return Ok(cert);
        }
        rotated = rotated.rotate();
    }
    Err(Error::Internal(format!("{i:?} and {j:?} comparable under all {} rotations", 2 * n)))
}

/// Turns an extension at the last position of the `rho`-fold rotated base
/// into an extension of the base itself.
pub fn rotate_back(star: &Signotope, rho: usize, fliples: &[Subset]) -> ExtensionCertificate {
    let n = star.n() - 1;
    let rho = rho % (2 * n);
    let (back, k) = match rho {
        0 => (0, n + 1),
        r if r <= n => (2 * n + 1 - r, r + 1),
        r => (2 * n - r, r + 1 - n),
    };
    ExtensionCertificate {
        extended: star.rotate_k(back as i64),
        k,
        fliples: fliples.iter().map(|x| x.rotate_by(n + 1, back as i64)).collect(),
        rotations: rho,
    }
}

/// Re-checks a certificate from scratch against the prescribed subsets.
pub fn verify_extension(s: &Signotope, prescribed: &[Subset], cert: &ExtensionCertificate) -> Verification {
    let mut reasons = Vec::new();
    let ext = cert.extended.as_map();
    let (r, n, k) = (s.rank(), s.n(), cert.k);
    if ext.rank() != r || ext.n() != n + 1 {
        reasons.push(format!("extended has shape r={} n={}, expected r={r} n={}", ext.rank(), ext.n(), n + 1));
        return Verification { reasons };
    }
    let violations = ext.validate();
    if !violations.is_empty() {
        reasons.push(format!("extended is not a signotope: packet {} has two sign changes", violations[0]));
    }
    if !(1..=n + 1).contains(&k) {
        reasons.push(format!("k={k} outside [{}]", n + 1));
        return Verification { reasons };
    }
    if let Some(x) = s.subsets().find(|&x| ext.sign(x.lift(k)) != s.sign(x)) {
        reasons.push(format!("deleting {k} does not recover the input (differs at {x})"));
    }
    if cert.fliples.len() != prescribed.len() {
        reasons.push(format!("{} fliples for {} prescribed subsets", cert.fliples.len(), prescribed.len()));
    }
    for (&f, &p) in cert.fliples.iter().zip(prescribed) {
        if f.len() != r || !f.within(n + 1) || !f.contains(k) {
            reasons.push(format!("{f:?} is not an {r}-subset through {k}"));
            continue;
        }
        if f.delete(k) != p {
            reasons.push(format!("{f:?} deletes to {:?}, expected {p:?}", f.delete(k)));
        }
        let mut flipped = ext.clone();
        flipped.flip(f);
        if !flipped.is_signotope() {
            reasons.push(format!("{f:?} is not a fliple"));
        }
    }
    Verification { reasons }
}
