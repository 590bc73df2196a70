//! Semistable classes, class-level filtrations and the support constant.

use num_rational::Ratio;

use crate::charge::{CentralCharge, PhaseKey};
use crate::homext::HomExtTable;
use crate::lattice::LatticeVector;
use crate::quiver::Quiver;
use crate::roots::{imaginary_roots_up_to, real_roots_up_to, RootOptions};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// A class is semistable when no generic proper subvector has a larger
/// phase; by openness of the semistable locus this decides whether the
/// class carries a semistable representation.
pub fn is_semistable_class<I: Scalar>(
    z: &CentralCharge<I>,
    table: &HomExtTable<I>,
    alpha: &LatticeVector<I>,
) -> Result<bool> {
    let phase_a = z.phase(alpha)?;
    let subs = table.subs_of(alpha)?;
    for beta in &subs.all {
        if beta.is_zero() || beta == alpha {
            continue;
        }
        if z.phase(beta)? > phase_a {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Greedy class-level filtration: repeatedly split off the subvector of
/// maximal phase, breaking ties by maximal height and then by
/// lexicographically largest coordinates.
pub fn hn_classes<I: Scalar>(
    z: &CentralCharge<I>,
    table: &HomExtTable<I>,
    alpha: &LatticeVector<I>,
) -> Result<Vec<(LatticeVector<I>, PhaseKey<I>)>> {
    let mut rest = alpha.clone();
    let mut parts: Vec<(LatticeVector<I>, PhaseKey<I>)> = Vec::new();
    while !rest.is_zero() {
        let subs = table.subs_of(&rest)?;
        let mut best: Option<(PhaseKey<I>, I, LatticeVector<I>)> = None;
        for beta in &subs.all {
            if beta.is_zero() {
                continue;
            }
            let p = z.phase(beta)?;
            let h = beta.height();
            let better = match &best {
                None => true,
                Some((bp, bh, bv)) => {
                    (p.cmp(bp))
                        .then_with(|| h.cmp(bh))
                        .then_with(|| beta.cmp(bv))
                        .is_gt()
                }
            };
            if better {
                best = Some((p, h, beta.clone()));
            }
        }
        let (phase, _, part) = best.expect("nonzero vector has nonzero subvectors");
        if let Some((_, last_phase)) = parts.last() {
            debug_assert!(
                phase < *last_phase,
                "filtration phases must strictly decrease"
            );
        }
        rest = &rest - &part;
        parts.push((part, phase));
    }
    Ok(parts)
}

/// Sorted positive roots (real and imaginary) of height ≤ `h`.
pub fn positive_roots_up_to<I: Scalar>(
    f: &crate::quiver::FormPair<I>,
    q: &Quiver,
    h: usize,
    opts: &RootOptions,
) -> Result<Vec<LatticeVector<I>>> {
    let mut roots: Vec<LatticeVector<I>> = real_roots_up_to(f, h, opts)?
        .into_iter()
        .chain(imaginary_roots_up_to(f, q, h, opts)?)
        .filter(|v| v.is_nonneg() && !v.is_zero())
        .collect();
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Semistable classes among a precomputed root list, with phases. Root
/// enumeration does not depend on the charge, so callers sweeping many
/// charges share the list.
pub fn semistable_among<I: Scalar>(
    z: &CentralCharge<I>,
    table: &HomExtTable<I>,
    roots: &[LatticeVector<I>],
) -> Result<Vec<(LatticeVector<I>, PhaseKey<I>)>> {
    let mut out = Vec::new();
    for r in roots {
        if is_semistable_class(z, table, r)? {
            let p = z.phase(r)?;
            out.push((r.clone(), p));
        }
    }
    Ok(out)
}

/// All positive roots of height ≤ `h` that are semistable, with phases.
pub fn semistable_classes_up_to<I: Scalar>(
    z: &CentralCharge<I>,
    table: &HomExtTable<I>,
    q: &Quiver,
    h: usize,
    opts: &RootOptions,
) -> Result<Vec<(LatticeVector<I>, PhaseKey<I>)>> {
    let roots = positive_roots_up_to(table.form(), q, h, opts)?;
    semistable_among(z, table, &roots)
}

/// Support data at a bound: the minimum of `f²` over semistable classes
/// (any `ε` strictly below its square root witnesses the support property
/// within the bound) and the exact `‖Z‖²`.
#[derive(Debug, Clone)]
pub struct SupportConstants<I: Scalar> {
    pub min_f_sq: Ratio<I>,
    pub z_norm_sq: Ratio<I>,
    pub argmin: LatticeVector<I>,
}

pub fn support_constant<I: Scalar>(
    z: &CentralCharge<I>,
    semistable: &[(LatticeVector<I>, PhaseKey<I>)],
) -> Result<SupportConstants<I>> {
    let mut best: Option<(Ratio<I>, LatticeVector<I>)> = None;
    for (v, _) in semistable {
        let f = z.f_sq(v)?;
        let better = match &best {
            None => true,
            Some((b, _)) => f < *b,
        };
        if better {
            best = Some((f, v.clone()));
        }
    }
    let (min_f_sq, argmin) = best.ok_or(Error::EmptySet)?;
    Ok(SupportConstants {
        min_f_sq,
        z_norm_sq: z.z_norm_sq(),
        argmin,
    })
}
