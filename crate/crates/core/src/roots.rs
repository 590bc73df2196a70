//! Real and imaginary root enumeration up to a height bound.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::lattice::{boxed_vectors, LatticeVector};
use crate::quiver::{FormPair, Quiver};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Classification of a lattice vector against the height-bounded root sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootKind {
    RealPositive,
    RealNegative,
    ImaginaryPositive,
    ImaginaryNegative,
    NotARoot,
    Zero,
}

/// Enumeration controls: reflections may transiently overshoot the report
/// bound, so the closure runs to `slack * h` and reports elements `≤ h`.
#[derive(Debug, Clone)]
pub struct RootOptions {
    pub slack: u32,
    pub budget: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            slack: 3,
            budget: 1_000_000,
        }
    }
}

/// Simple reflection `r_i(λ) = λ − I(λ, α_i) α_i` (0-based `i`).
pub fn reflect<I: Scalar>(
    f: &FormPair<I>,
    i: usize,
    lambda: &LatticeVector<I>,
) -> Result<LatticeVector<I>> {
    if i >= f.n() {
        return Err(Error::Index(i + 1, f.n()));
    }
    let c = f.sym_simple(lambda, i);
    let mut coords = lambda.coords().to_vec();
    coords[i] = coords[i].clone() - c;
    Ok(LatticeVector::new(coords))
}

fn closure<I: Scalar>(
    f: &FormPair<I>,
    seeds: Vec<LatticeVector<I>>,
    h: usize,
    opts: &RootOptions,
) -> Result<BTreeSet<LatticeVector<I>>> {
    let n = f.n();
    let expand_bound = I::from_int(h as i64 * opts.slack.max(1) as i64);
    let report_bound = I::from_int(h as i64);
    let mut visited: HashSet<LatticeVector<I>> = HashSet::new();
    let mut queue: VecDeque<LatticeVector<I>> = VecDeque::new();
    for s in seeds {
        if s.height() <= expand_bound && visited.insert(s.clone()) {
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        if visited.len() > opts.budget {
            return Err(Error::BudgetExceeded {
                budget: opts.budget,
            });
        }
        for i in 0..n {
            let w = reflect(f, i, &v)?;
            if w.height() <= expand_bound && !visited.contains(&w) {
                visited.insert(w.clone());
                queue.push_back(w);
            }
        }
    }
    Ok(visited
        .into_iter()
        .filter(|v| v.height() <= report_bound)
        .collect())
}

/// All real roots of height `≤ h`: reflection closure of `±α_i`.
pub fn real_roots_up_to<I: Scalar>(
    f: &FormPair<I>,
    h: usize,
    opts: &RootOptions,
) -> Result<BTreeSet<LatticeVector<I>>> {
    let n = f.n();
    let mut seeds = Vec::new();
    for i in 0..n {
        let u = LatticeVector::unit(i, n);
        seeds.push((-&u).clone());
        seeds.push(u);
    }
    closure(f, seeds, h, opts)
}

/// Fundamental region for imaginary roots: positive vectors of height `≤ h`
/// with connected support and `I(λ, α_i) ≤ 0` for all `i`.
pub fn fundamental_set_k<I: Scalar>(
    f: &FormPair<I>,
    q: &Quiver,
    h: usize,
) -> BTreeSet<LatticeVector<I>> {
    let n = f.n();
    let cap = LatticeVector::<I>::from_ints(&vec![h as i64; n]);
    let bound = I::from_int(h as i64);
    let mut out = BTreeSet::new();
    for v in boxed_vectors(&cap) {
        if v.is_zero() || v.height() > bound {
            continue;
        }
        if !(0..n).all(|i| !f.sym_simple(&v, i).is_positive()) {
            continue;
        }
        if !q.support_connected(&v.support()) {
            continue;
        }
        out.insert(v);
    }
    out
}

/// All imaginary roots of height `≤ h`: `±` the reflection closure of the
/// fundamental region.
pub fn imaginary_roots_up_to<I: Scalar>(
    f: &FormPair<I>,
    q: &Quiver,
    h: usize,
    opts: &RootOptions,
) -> Result<BTreeSet<LatticeVector<I>>> {
    let k = fundamental_set_k(f, q, h * opts.slack.max(1) as usize);
    let positive = closure(f, k.into_iter().collect(), h, opts)?;
    let mut out = BTreeSet::new();
    for v in positive {
        debug_assert!(v.is_nonneg(), "reflection left the positive cone");
        out.insert((-&v).clone());
        out.insert(v);
    }
    Ok(out)
}

/// Membership classification against the height-`h` enumerations.
pub fn root_kind<I: Scalar>(
    f: &FormPair<I>,
    q: &Quiver,
    lambda: &LatticeVector<I>,
    h: usize,
    opts: &RootOptions,
) -> Result<RootKind> {
    if lambda.is_zero() {
        return Ok(RootKind::Zero);
    }
    if lambda.height() > I::from_int(h as i64) {
        return Err(Error::BoundExceeded { cap: h });
    }
    if lambda.is_mixed() {
        return Ok(RootKind::NotARoot);
    }
    let positive = lambda.is_nonneg();
    let abs = lambda.abs();
    let real = real_roots_up_to(f, h, opts)?;
    if real.contains(&abs) {
        return Ok(if positive {
            RootKind::RealPositive
        } else {
            RootKind::RealNegative
        });
    }
    let im = imaginary_roots_up_to(f, q, h, opts)?;
    if im.contains(&abs) {
        return Ok(if positive {
            RootKind::ImaginaryPositive
        } else {
            RootKind::ImaginaryNegative
        });
    }
    Ok(RootKind::NotARoot)
}

/// Exact real-root membership by monotone height descent, independent of any
/// enumeration bound. A positive non-simple real root always admits a simple
/// reflection strictly decreasing height.
pub fn is_real_root<I: Scalar>(f: &FormPair<I>, lambda: &LatticeVector<I>) -> bool {
    if lambda.is_zero() || lambda.is_mixed() {
        return false;
    }
    let mut v = lambda.abs();
    loop {
        if v.coords().iter().filter(|c| !c.is_zero()).count() == 1 {
            return v.height().is_one();
        }
        let Some(i) = (0..f.n()).find(|&i| f.sym_simple(&v, i).is_positive()) else {
            return false;
        };
        let w = reflect(f, i, &v).expect("index in range");
        if w.is_mixed() || w.height() >= v.height() {
            return false;
        }
        v = w;
    }
}
