//! End-to-end pipeline with automatic bound doubling.

use std::collections::BTreeSet;

use crate::charge::{CentralCharge, PhaseKey};
use crate::cone::{
    build_a_sigma, heart_simples, imaginary_cone, phase_gap, ConeComponent, GapCertificate,
    HeartCertificate, ImaginaryCone,
};
use crate::exceptional::{extract_sigma_exceptional, verify_exceptional, ExceptionalCollection,
    ExceptionalReport};
use crate::homext::HomExtTable;
use crate::lattice::LatticeVector;
use crate::quiver::{classify_type, forms, FormPair, Quiver, QuiverType};
use crate::roots::{imaginary_roots_up_to, real_roots_up_to, RootOptions};
use crate::scalar::Scalar;
use crate::stability::{semistable_classes_up_to, support_constant, SupportConstants};
use crate::tilt::{gldim_estimate, is_totally_semistable, GldimEstimate, TotallyReport};
use crate::{Error, Result};

/// Shared run controls; `height` doubles on window failures up to
/// `retries` times.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub height: usize,
    pub budget: usize,
    pub retries: u32,
    pub slack: u32,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            height: 8,
            budget: 1_000_000,
            retries: 3,
            slack: 3,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn root_options(&self) -> RootOptions {
        RootOptions {
            slack: self.slack,
            budget: self.budget,
        }
    }
}

/// Every stage's output for one quiver and charge.
#[derive(Debug, Clone)]
pub struct AnalyzeBundle<I: Scalar> {
    pub config: RunConfig,
    pub height_used: usize,
    pub quiver: Quiver,
    pub forms: FormPair<I>,
    pub qtype: QuiverType<I>,
    pub charge: CentralCharge<I>,
    pub real_roots: BTreeSet<LatticeVector<I>>,
    pub imaginary_roots: BTreeSet<LatticeVector<I>>,
    pub semistable: Vec<(LatticeVector<I>, PhaseKey<I>)>,
    pub support: SupportConstants<I>,
    pub cone: ImaginaryCone<I>,
    pub components: Vec<ConeComponent<I>>,
    pub gap: GapCertificate<I>,
    pub heart: HeartCertificate<I>,
    pub collection: ExceptionalCollection<I>,
    pub report: ExceptionalReport,
    pub gldim: GldimEstimate<I>,
    pub totally: TotallyReport<I>,
}

fn attempt<I: Scalar>(
    q: &Quiver,
    z: &CentralCharge<I>,
    cfg: &RunConfig,
    h: usize,
) -> Result<AnalyzeBundle<I>> {
    let f = forms::<I>(q);
    let qtype = classify_type(&f)?;
    let opts = cfg.root_options();
    let table = HomExtTable::new(f.clone(), h.max(12));
    let real_roots = real_roots_up_to(&f, h, &opts)?;
    let imaginary_roots = imaginary_roots_up_to(&f, q, h, &opts)?;
    let semistable = semistable_classes_up_to(z, &table, q, h, &opts)?;
    let support = support_constant(z, &semistable)?;
    let cone = imaginary_cone(&qtype, &imaginary_roots, h)?;
    let components = build_a_sigma(&cone, z, &support.min_f_sq, &support.z_norm_sq);
    let gap = phase_gap(&components, &semistable)?;
    let heart = heart_simples(&gap, &semistable, &f)?;
    let collection = extract_sigma_exceptional(&heart, &table)?;
    let report = verify_exceptional(&collection, &table)?;
    let gldim = gldim_estimate(z, &table, q, h, &opts)?;
    let totally = is_totally_semistable(z, &table, q, h, &opts)?;
    Ok(AnalyzeBundle {
        config: cfg.clone(),
        height_used: h,
        quiver: q.clone(),
        forms: f,
        qtype,
        charge: z.clone(),
        real_roots,
        imaginary_roots,
        semistable,
        support,
        cone,
        components,
        gap,
        heart,
        collection,
        report,
        gldim,
        totally,
    })
}

/// Runs the full chain; a window that fails to close (`NotABasis` or
/// `WindowOverflow`) doubles the height bound and retries.
pub fn analyze<I: Scalar>(
    q: &Quiver,
    z: &CentralCharge<I>,
    cfg: &RunConfig,
) -> Result<AnalyzeBundle<I>> {
    if z.n() != q.n() {
        return Err(Error::Validation(format!(
            "charge has {} values for {} vertices",
            z.n(),
            q.n()
        )));
    }
    let mut h = cfg.height.max(1);
    let mut last = None;
    for _ in 0..=cfg.retries {
        match attempt(q, z, cfg, h) {
            Err(e @ (Error::NotABasis(_) | Error::WindowOverflow { .. })) => {
                last = Some(e);
                h *= 2;
            }
            other => return other,
        }
    }
    Err(last.expect("at least one attempt"))
}
