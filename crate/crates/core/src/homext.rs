//! Generic hom/ext dimensions between dimension vectors.
//!
//! For a hereditary path algebra the generic values are computed by the
//! sub/quotient recursion
//!
//! * `β ↪ α` (the general representation of `α` has a `β`-dimensional
//!   subrepresentation) iff `ext(β, α − β) = 0`, and
//! * `ext(α, β) = max { −χ(α', β'') : α' ↪ α, β ↠ β'' }`,
//!
//! which terminates by induction on total dimension. `hom − ext = χ`
//! recovers the hom value. The table memoizes, is shared behind locks
//! (duplicate computation is allowed and idempotent), and for two-vertex
//! quivers evaluates the bilinear maximum on convex hulls of the sub and
//! quotient sets.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};


use crate::lattice::{boxed_vectors, LatticeVector};
use crate::quiver::FormPair;
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Generic subrepresentation vectors of a fixed dimension vector.
#[derive(Debug, Clone)]
pub struct SubSet<I: Scalar> {
    /// Every `β ≤ α` with `β ↪ α`, in lexicographic order.
    pub all: Vec<LatticeVector<I>>,
    /// Convex hull vertices (two-vertex quivers only).
    hull: Option<Vec<(I, I)>>,
}

/// Memoized generic hom/ext table for one quiver.
#[derive(Debug)]
pub struct HomExtTable<I: Scalar> {
    form: FormPair<I>,
    cap: usize,
    max_entries: usize,
    subs: RwLock<HashMap<LatticeVector<I>, Arc<SubSet<I>>>>,
    ext: RwLock<HashMap<(LatticeVector<I>, LatticeVector<I>), usize>>,
}

/// Andrew's monotone chain on integer points; returns hull vertices.
fn convex_hull<I: Scalar>(mut pts: Vec<(I, I)>) -> Vec<(I, I)> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: &(I, I), a: &(I, I), b: &(I, I)| -> I {
        (a.0.clone() - o.0.clone()) * (b.1.clone() - o.1.clone())
            - (a.1.clone() - o.1.clone()) * (b.0.clone() - o.0.clone())
    };
    let mut lower: Vec<(I, I)> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && !turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<(I, I)> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && !turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

impl<I: Scalar> HomExtTable<I> {
    /// `cap` bounds every coordinate of queried vectors.
    pub fn new(form: FormPair<I>, cap: usize) -> Self {
        HomExtTable {
            form,
            cap,
            max_entries: 8_000_000,
            subs: RwLock::new(HashMap::new()),
            ext: RwLock::new(HashMap::new()),
        }
    }

    pub fn form(&self) -> &FormPair<I> {
        &self.form
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check_bounds(&self, v: &LatticeVector<I>) -> Result<()> {
        let cap = I::from_int(self.cap as i64);
        if v.coords().iter().any(|c| c.is_negative() || *c > cap) {
            return Err(Error::BoundExceeded { cap: self.cap });
        }
        Ok(())
    }

    /// Generic subrepresentation vectors of `alpha`.
    pub fn subs_of(&self, alpha: &LatticeVector<I>) -> Result<Arc<SubSet<I>>> {
        self.check_bounds(alpha)?;
        if let Some(hit) = self.subs.read().unwrap().get(alpha) {
            return Ok(hit.clone());
        }
        let mut all = Vec::new();
        for beta in boxed_vectors(alpha) {
            if beta == *alpha || beta.is_zero() {
                all.push(beta);
                continue;
            }
            let rest = alpha - &beta;
            if self.ext_dim(&beta, &rest)? == 0 {
                all.push(beta);
            }
        }
        all.sort();
        let hull = if self.form.n() == 2 {
            let pts = all
                .iter()
                .map(|v| (v.coord(0).clone(), v.coord(1).clone()))
                .collect();
            Some(convex_hull(pts))
        } else {
            None
        };
        let entry = Arc::new(SubSet { all, hull });
        let mut table = self.subs.write().unwrap();
        if table.len() >= self.max_entries {
            return Err(Error::BoundExceeded { cap: self.cap });
        }
        table.insert(alpha.clone(), entry.clone());
        Ok(entry)
    }

    /// Whether a general representation of `alpha` has a subrepresentation
    /// of dimension vector `beta`.
    pub fn generic_sub(&self, beta: &LatticeVector<I>, alpha: &LatticeVector<I>) -> Result<bool> {
        if !beta.is_nonneg() || !beta.leq(alpha) {
            return Err(Error::NotBelow);
        }
        if beta.is_zero() || beta == alpha {
            return Ok(true);
        }
        Ok(self.ext_dim(beta, &(alpha - beta))? == 0)
    }

    /// Generic `dim Ext¹` between general representations.
    pub fn generic_ext(&self, beta: &LatticeVector<I>, gamma: &LatticeVector<I>) -> Result<usize> {
        self.ext_dim(beta, gamma)
    }

    /// Generic `dim Hom`; always `χ + ext ≥ 0`.
    pub fn generic_hom(&self, beta: &LatticeVector<I>, gamma: &LatticeVector<I>) -> Result<usize> {
        let ext = self.ext_dim(beta, gamma)? as i64;
        let chi = self
            .form
            .chi(beta, gamma)
            .to_i64()
            .ok_or(Error::BoundExceeded { cap: self.cap })?;
        let hom = chi + ext;
        debug_assert!(hom >= 0, "hom({beta},{gamma}) = {hom} < 0");
        Ok(hom.max(0) as usize)
    }

    fn ext_dim(&self, beta: &LatticeVector<I>, gamma: &LatticeVector<I>) -> Result<usize> {
        self.check_bounds(beta)?;
        self.check_bounds(gamma)?;
        if beta.is_zero() || gamma.is_zero() {
            return Ok(0);
        }
        let key = (beta.clone(), gamma.clone());
        if let Some(&hit) = self.ext.read().unwrap().get(&key) {
            return Ok(hit);
        }
        let subs_b = self.subs_of(beta)?;
        let subs_g = self.subs_of(gamma)?;
        let value = self.max_minus_chi(beta, gamma, &subs_b, &subs_g)?;
        let mut table = self.ext.write().unwrap();
        if table.len() >= self.max_entries {
            return Err(Error::BoundExceeded { cap: self.cap });
        }
        table.insert(key, value);
        Ok(value)
    }

    /// `max { −χ(β', γ'') }` over subs `β'` of `beta` and quotients `γ''`
    /// of `gamma`; the bilinear form attains its maximum on hull vertices.
    fn max_minus_chi(
        &self,
        _beta: &LatticeVector<I>,
        gamma: &LatticeVector<I>,
        subs_b: &SubSet<I>,
        subs_g: &SubSet<I>,
    ) -> Result<usize> {
        let mut best = I::zero();
        match (&subs_b.hull, &subs_g.hull) {
            (Some(hb), Some(hg)) => {
                let e = self.form.euler();
                for q in hg {
                    // quotient point: γ − sub
                    let g0 = gamma.coord(0).clone() - q.0.clone();
                    let g1 = gamma.coord(1).clone() - q.1.clone();
                    // w = −E·γ'' ; value at β' is β'·w
                    let w0 = -(e[0][0].clone() * g0.clone() + e[0][1].clone() * g1.clone());
                    let w1 = -(e[1][0].clone() * g0 + e[1][1].clone() * g1);
                    for b in hb {
                        let v = b.0.clone() * w0.clone() + b.1.clone() * w1.clone();
                        if v > best {
                            best = v;
                        }
                    }
                }
            }
            _ => {
                for s in &subs_g.all {
                    let quot = gamma - s;
                    for b in &subs_b.all {
                        let v = -self.form.chi(b, &quot);
                        if v > best {
                            best = v;
                        }
                    }
                }
            }
        }
        best.to_usize().ok_or(Error::BoundExceeded { cap: self.cap })
    }
}
