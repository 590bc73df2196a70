//! Quivers, the Euler/Cartan form pair, and type classification.

use std::collections::BTreeMap;


use crate::lattice::LatticeVector;
use crate::linalg::{self, Definiteness, IMat};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Finite connected acyclic quiver without loops.
///
/// Vertices are `0..n` internally; the text and JSON formats are 1-based.
/// Arrow multiplicities are stored as counts per ordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    n: usize,
    counts: BTreeMap<(usize, usize), usize>,
    labels: Option<Vec<String>>,
}

impl Quiver {
    pub fn new(n: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for &(s, t) in arrows {
            *counts.entry((s, t)).or_insert(0) += 1;
        }
        let q = Quiver {
            n,
            counts,
            labels: None,
        };
        q.validate()?;
        Ok(q)
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Validation("quiver has no vertices".into()));
        }
        for (&(s, t), _) in &self.counts {
            if s >= self.n || t >= self.n {
                return Err(Error::Validation(format!(
                    "arrow endpoint out of range: {} -> {}",
                    s + 1,
                    t + 1
                )));
            }
            if s == t {
                return Err(Error::Validation(format!("loop at vertex {}", s + 1)));
            }
        }
        // Acyclicity by Kahn's toposort on the arrow relation.
        let mut indeg = vec![0usize; self.n];
        for (&(_, t), &c) in &self.counts {
            indeg[t] += c;
        }
        let mut queue: Vec<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for (&(s, t), &c) in &self.counts {
                if s == v {
                    indeg[t] -= c;
                    if indeg[t] == 0 {
                        queue.push(t);
                    }
                }
            }
        }
        if seen != self.n {
            return Err(Error::Validation("directed cycle".into()));
        }
        // Connectivity of the underlying graph.
        let mut vis = vec![false; self.n];
        let mut stack = vec![0usize];
        vis[0] = true;
        while let Some(v) = stack.pop() {
            for &(s, t) in self.counts.keys() {
                let w = if s == v {
                    t
                } else if t == v {
                    s
                } else {
                    continue;
                };
                if !vis[w] {
                    vis[w] = true;
                    stack.push(w);
                }
            }
        }
        if vis.iter().any(|&v| !v) {
            return Err(Error::Validation("underlying graph is disconnected".into()));
        }
        Ok(())
    }

    /// Line-oriented text format: `vertices <n>` then `arrow <i> <j>` lines,
    /// `#` comments; a leading `{` switches to the JSON mirror.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            return Self::parse_json(text);
        }
        let mut n: Option<usize> = None;
        let mut arrows: Vec<(usize, usize)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tok = line.split_whitespace();
            match tok.next() {
                Some("vertices") => {
                    let v: usize = tok
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| Error::Parse(format!("line {}: bad vertex count", lineno + 1)))?;
                    if n.replace(v).is_some() {
                        return Err(Error::Parse(format!(
                            "line {}: duplicate `vertices` line",
                            lineno + 1
                        )));
                    }
                }
                Some("arrow") => {
                    let i: usize = tok
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| Error::Parse(format!("line {}: bad arrow", lineno + 1)))?;
                    let j: usize = tok
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| Error::Parse(format!("line {}: bad arrow", lineno + 1)))?;
                    if i == 0 || j == 0 {
                        return Err(Error::Parse(format!(
                            "line {}: vertices are 1-based",
                            lineno + 1
                        )));
                    }
                    arrows.push((i - 1, j - 1));
                }
                Some(other) => {
                    return Err(Error::Parse(format!(
                        "line {}: unknown directive `{other}`",
                        lineno + 1
                    )))
                }
                None => {}
            }
            if tok.next().is_some() {
                return Err(Error::Parse(format!("line {}: trailing tokens", lineno + 1)));
            }
        }
        let n = n.ok_or_else(|| Error::Parse("missing `vertices` line".into()))?;
        Self::new(n, &arrows)
    }

    /// JSON mirror: `{"n": int, "arrows": [[i, j], ...], "labels": [...]?}`.
    pub fn parse_json(text: &str) -> Result<Self> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad JSON: {e}")))?;
        let n = v["n"]
            .as_u64()
            .ok_or_else(|| Error::Parse("missing integer field `n`".into()))? as usize;
        let mut arrows = Vec::new();
        let list = v["arrows"]
            .as_array()
            .ok_or_else(|| Error::Parse("missing array field `arrows`".into()))?;
        for e in list {
            let pair = e
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::Parse("arrow entries must be [i, j]".into()))?;
            let i = pair[0]
                .as_u64()
                .filter(|&x| x >= 1)
                .ok_or_else(|| Error::Parse("arrow endpoints are 1-based integers".into()))?;
            let j = pair[1]
                .as_u64()
                .filter(|&x| x >= 1)
                .ok_or_else(|| Error::Parse("arrow endpoints are 1-based integers".into()))?;
            arrows.push((i as usize - 1, j as usize - 1));
        }
        let mut q = Self::new(n, &arrows)?;
        if let Some(ls) = v["labels"].as_array() {
            let labels: Option<Vec<String>> =
                ls.iter().map(|l| l.as_str().map(String::from)).collect();
            q.labels = labels;
        }
        Ok(q)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Number of arrows `i -> j`.
    pub fn count(&self, i: usize, j: usize) -> usize {
        self.counts.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Arrows in canonical order: sorted pairs, each repeated by multiplicity.
    pub fn arrows(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (&(s, t), &c) in &self.counts {
            for _ in 0..c {
                out.push((s, t));
            }
        }
        out
    }

    pub fn arrow_pairs(&self) -> impl Iterator<Item = (&(usize, usize), &usize)> {
        self.counts.iter()
    }

    pub fn is_sink(&self, i: usize) -> bool {
        self.counts.keys().all(|&(s, _)| s != i)
    }

    pub fn is_source(&self, i: usize) -> bool {
        self.counts.keys().all(|&(_, t)| t != i)
    }

    /// Reverses every arrow incident to `i`.
    pub fn reversed_at(&self, i: usize) -> Quiver {
        let mut counts = BTreeMap::new();
        for (&(s, t), &c) in &self.counts {
            let key = if s == i || t == i { (t, s) } else { (s, t) };
            *counts.entry(key).or_insert(0) += c;
        }
        Quiver {
            n: self.n,
            counts,
            labels: self.labels.clone(),
        }
    }

    /// Neighbours in the underlying graph restricted to `support`.
    pub fn support_connected(&self, support: &[usize]) -> bool {
        if support.is_empty() {
            return false;
        }
        let inside = |v: usize| support.contains(&v);
        let mut vis = vec![support[0]];
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(support[0]);
        while let Some(v) = vis.pop() {
            for &(s, t) in self.counts.keys() {
                let w = if s == v && inside(t) {
                    t
                } else if t == v && inside(s) {
                    s
                } else {
                    continue;
                };
                if seen.insert(w) {
                    vis.push(w);
                }
            }
        }
        seen.len() == support.len()
    }
}

/// Euler matrix `E` and symmetrized Cartan matrix `A = E + Eᵀ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormPair<I: Scalar> {
    euler: IMat<I>,
    cartan: IMat<I>,
}

/// `E_ij = δ_ij − #arrows(i→j)`, `A = E + Eᵀ`.
pub fn forms<I: Scalar>(q: &Quiver) -> FormPair<I> {
    let n = q.n();
    let mut euler = vec![vec![I::zero(); n]; n];
    for (i, row) in euler.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let delta = if i == j { 1 } else { 0 };
            *entry = I::from_int(delta - q.count(i, j) as i64);
        }
    }
    let mut cartan = vec![vec![I::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            cartan[i][j] = euler[i][j].clone() + euler[j][i].clone();
        }
    }
    FormPair { euler, cartan }
}

impl<I: Scalar> FormPair<I> {
    pub fn n(&self) -> usize {
        self.euler.len()
    }

    pub fn euler(&self) -> &IMat<I> {
        &self.euler
    }

    pub fn cartan(&self) -> &IMat<I> {
        &self.cartan
    }

    /// Euler form `χ(β, γ) = βᵀ E γ`.
    pub fn chi(&self, beta: &LatticeVector<I>, gamma: &LatticeVector<I>) -> I {
        let mut s = I::zero();
        for i in 0..self.n() {
            if beta.coord(i).is_zero() {
                continue;
            }
            let mut row = I::zero();
            for j in 0..self.n() {
                row = row + self.euler[i][j].clone() * gamma.coord(j).clone();
            }
            s = s + beta.coord(i).clone() * row;
        }
        s
    }

    /// Symmetric form `I(λ, ν) = λᵀ A ν`.
    pub fn sym(&self, a: &LatticeVector<I>, b: &LatticeVector<I>) -> I {
        let mut s = I::zero();
        for i in 0..self.n() {
            if a.coord(i).is_zero() {
                continue;
            }
            let mut row = I::zero();
            for j in 0..self.n() {
                row = row + self.cartan[i][j].clone() * b.coord(j).clone();
            }
            s = s + a.coord(i).clone() * row;
        }
        s
    }

    /// `I(λ, α_i) = (Aλ)_i`.
    pub fn sym_simple(&self, lambda: &LatticeVector<I>, i: usize) -> I {
        let mut s = I::zero();
        for j in 0..self.n() {
            s = s + self.cartan[i][j].clone() * lambda.coord(j).clone();
        }
        s
    }
}

/// Finite / affine / indefinite trichotomy; affine carries the primitive
/// positive kernel generator of the Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuiverType<I: Scalar> {
    Finite,
    Affine { delta: LatticeVector<I> },
    Indefinite,
}

/// Exact classification of the symmetrized form.
pub fn classify_type<I: Scalar>(f: &FormPair<I>) -> Result<QuiverType<I>> {
    match linalg::definiteness(f.cartan()) {
        Definiteness::PositiveDefinite => Ok(QuiverType::Finite),
        Definiteness::Indefinite => Ok(QuiverType::Indefinite),
        Definiteness::PositiveSemidefinite { corank } => {
            if corank != 1 {
                return Err(Error::Internal(format!(
                    "connected quiver with semidefinite form of corank {corank}"
                )));
            }
            let ker = linalg::kernel_basis(f.cartan(), f.n());
            let v = &ker[0];
            // Scale to a primitive integer vector.
            let mut lcm = I::one();
            for x in v {
                lcm = num_integer::lcm(lcm, x.denom().clone());
            }
            let mut ints: Vec<I> = v
                .iter()
                .map(|x| x.numer().clone() * (lcm.clone() / x.denom().clone()))
                .collect();
            let mut g = I::zero();
            for x in &ints {
                g = g.gcd(x);
            }
            for x in ints.iter_mut() {
                *x = x.clone() / g.clone();
            }
            if ints.iter().all(|x| x.is_negative()) {
                for x in ints.iter_mut() {
                    *x = -x.clone();
                }
            }
            if !ints.iter().all(|x| x.is_positive()) {
                return Err(Error::Internal(
                    "affine kernel generator is not strictly positive".into(),
                ));
            }
            Ok(QuiverType::Affine {
                delta: LatticeVector::new(ints),
            })
        }
    }
}
