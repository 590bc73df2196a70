//! Exceptional collections extracted from heart certificates.

use std::collections::BTreeSet;

use crate::charge::PhaseKey;
use crate::cone::HeartCertificate;
use crate::homext::HomExtTable;
use crate::lattice::LatticeVector;
use crate::linalg;
use crate::scalar::Scalar;
use crate::{Error, Result};

/// One entry: semistable object `root[shift]` with its phase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcEntry<I: Scalar> {
    pub root: LatticeVector<I>,
    pub shift: i64,
    pub phase: PhaseKey<I>,
}

/// Ordered collection with phases inside the unit window `(θ−1, θ]`.
#[derive(Debug, Clone)]
pub struct ExceptionalCollection<I: Scalar> {
    pub theta: PhaseKey<I>,
    pub entries: Vec<ExcEntry<I>>,
}

/// Orders the heart's simple classes so that every nonzero graded hom
/// points forward: edge `a → b` when `hom` or `ext` from `a` to `b` is
/// nonzero, then a topological sort (ties broken by lexicographically
/// smallest class). The window anchor moves up by one so that all phases
/// lie in `(θ−1, θ]`.
pub fn extract_sigma_exceptional<I: Scalar>(
    heart: &HeartCertificate<I>,
    table: &HomExtTable<I>,
) -> Result<ExceptionalCollection<I>> {
    let n = heart.simples.len();
    let mut edges = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let ga = &heart.simples[a].root;
            let gb = &heart.simples[b].root;
            if table.generic_hom(ga, gb)? > 0 || table.generic_ext(ga, gb)? > 0 {
                edges[a][b] = true;
            }
        }
    }
    let mut indeg = vec![0usize; n];
    for a in 0..n {
        for b in 0..n {
            if edges[a][b] {
                indeg[b] += 1;
            }
        }
    }
    let mut ready: BTreeSet<(LatticeVector<I>, i64, usize)> = (0..n)
        .filter(|&v| indeg[v] == 0)
        .map(|v| (heart.simples[v].root.clone(), heart.simples[v].shift, v))
        .collect();
    let mut order = Vec::new();
    while let Some(head) = ready.iter().next().cloned() {
        ready.remove(&head);
        let v = head.2;
        order.push(v);
        for b in 0..n {
            if edges[v][b] {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    ready.insert((heart.simples[b].root.clone(), heart.simples[b].shift, b));
                }
            }
        }
    }
    if order.len() != n {
        return Err(Error::NoAdmissibleOrder);
    }
    let entries = order
        .into_iter()
        .map(|v| {
            let s = &heart.simples[v];
            ExcEntry {
                root: s.root.clone(),
                shift: s.shift,
                phase: s.phase.clone(),
            }
        })
        .collect();
    Ok(ExceptionalCollection {
        theta: heart.theta.shifted(1),
        entries,
    })
}

/// Verification report: empty `violations` means every check passed.
#[derive(Debug, Clone, Default)]
pub struct ExceptionalReport {
    pub violations: Vec<String>,
}

impl ExceptionalReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Class-level verification:
/// (a) entries are exceptional (generic end 1, self-ext 0, norm 2);
/// (b) full vanishing backwards (`i > j`);
/// (c) no graded hom in degrees `≤ 0` between distinct entries;
/// (d) monochromatic pairs (never both hom and ext);
/// (e) phases inside `(θ−1, θ]`;
/// (f) classes span the lattice unimodularly.
pub fn verify_exceptional<I: Scalar>(
    c: &ExceptionalCollection<I>,
    table: &HomExtTable<I>,
) -> Result<ExceptionalReport> {
    let mut report = ExceptionalReport::default();
    let n = c.entries.len();
    let form = table.form();
    for (i, e) in c.entries.iter().enumerate() {
        let end = table.generic_hom(&e.root, &e.root)?;
        let selfext = table.generic_ext(&e.root, &e.root)?;
        let norm = form.sym(&e.root, &e.root);
        if end != 1 || selfext != 0 || norm != I::from_int(2) {
            report.violations.push(format!(
                "entry {} ({}) is not exceptional: end {end}, self-ext {selfext}, norm {norm}",
                i + 1,
                e.root
            ));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let gi = &c.entries[i].root;
            let gj = &c.entries[j].root;
            let hom = table.generic_hom(gi, gj)?;
            let ext = table.generic_ext(gi, gj)?;
            if i > j && (hom > 0 || ext > 0) {
                report.violations.push(format!(
                    "ordered vanishing fails from entry {} back to {}",
                    i + 1,
                    j + 1
                ));
            }
            let ki = c.entries[i].shift;
            let kj = c.entries[j].shift;
            // hom lives in degree k_i − k_j, ext one higher.
            if hom > 0 && ki - kj <= 0 {
                report.violations.push(format!(
                    "degree-{} hom from entry {} to {}",
                    ki - kj,
                    i + 1,
                    j + 1
                ));
            }
            if ext > 0 && ki - kj + 1 <= 0 {
                report.violations.push(format!(
                    "degree-{} ext from entry {} to {}",
                    ki - kj + 1,
                    i + 1,
                    j + 1
                ));
            }
            if hom > 0 && ext > 0 {
                report.violations.push(format!(
                    "graded hom from entry {} to {} spreads over two degrees",
                    i + 1,
                    j + 1
                ));
            }
        }
    }
    let lower = c.theta.shifted(-1);
    for (i, e) in c.entries.iter().enumerate() {
        if !(e.phase > lower && e.phase <= c.theta) {
            report.violations.push(format!(
                "phase of entry {} lies outside the unit window",
                i + 1
            ));
        }
    }
    if n > 0 {
        let dim = c.entries[0].root.n();
        if n != dim {
            report
                .violations
                .push(format!("{n} entries cannot span a rank-{dim} lattice"));
        } else {
            let m: Vec<Vec<I>> = (0..dim)
                .map(|r| {
                    (0..n)
                        .map(|j| {
                            let e = &c.entries[j];
                            let sign = if e.shift.rem_euclid(2) == 0 { 1 } else { -1 };
                            e.root.coord(r).clone() * I::from_int(sign)
                        })
                        .collect()
                })
                .collect();
            let det = linalg::det_int(&m);
            if !det.abs().is_one() {
                report
                    .violations
                    .push(format!("classes span with determinant {det}"));
            }
        }
    }
    Ok(report)
}
