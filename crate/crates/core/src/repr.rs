//! Exact-rational quiver representations and reflection functors.

use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::Zero;

use crate::lattice::LatticeVector;
use crate::linalg::{self, RMat};
use crate::quiver::Quiver;
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Representation: one matrix per arrow, shaped `dim(target) × dim(source)`.
/// Matrices are keyed by the ordered vertex pair and listed in the quiver's
/// canonical arrow order for that pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation<I: Scalar> {
    pub dims: Vec<usize>,
    pub maps: BTreeMap<(usize, usize), Vec<RMat<I>>>,
}

impl<I: Scalar> Representation<I> {
    /// Zero maps everywhere.
    pub fn zero_maps(q: &Quiver, dims: Vec<usize>) -> Self {
        let mut maps = BTreeMap::new();
        for (&(s, t), &c) in q.arrow_pairs() {
            let mat = vec![vec![Ratio::zero(); dims[s]]; dims[t]];
            maps.insert((s, t), vec![mat; c]);
        }
        Representation { dims, maps }
    }

    pub fn validate(&self, q: &Quiver) -> Result<()> {
        if self.dims.len() != q.n() {
            return Err(Error::Validation(
                "dimension vector length differs from the vertex count".into(),
            ));
        }
        for (&(s, t), &c) in q.arrow_pairs() {
            let mats = self
                .maps
                .get(&(s, t))
                .ok_or_else(|| Error::Validation(format!("missing maps for arrow {}->{}", s + 1, t + 1)))?;
            if mats.len() != c {
                return Err(Error::Validation(format!(
                    "arrow {}->{} has {} matrices, expected {}",
                    s + 1,
                    t + 1,
                    mats.len(),
                    c
                )));
            }
            for m in mats {
                if m.len() != self.dims[t] || m.iter().any(|row| row.len() != self.dims[s]) {
                    return Err(Error::Validation(format!(
                        "matrix for arrow {}->{} is not {}×{}",
                        s + 1,
                        t + 1,
                        self.dims[t],
                        self.dims[s]
                    )));
                }
            }
        }
        for key in self.maps.keys() {
            if q.count(key.0, key.1) == 0 {
                return Err(Error::Validation(format!(
                    "maps given for a nonexistent arrow {}->{}",
                    key.0 + 1,
                    key.1 + 1
                )));
            }
        }
        Ok(())
    }

    pub fn dim_vector(&self) -> LatticeVector<I> {
        LatticeVector::from_ints(&self.dims.iter().map(|&d| d as i64).collect::<Vec<_>>())
    }

    pub fn is_zero_object(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// The simple at vertex `i`.
    pub fn simple(q: &Quiver, i: usize) -> Self {
        let mut dims = vec![0usize; q.n()];
        dims[i] = 1;
        Self::zero_maps(q, dims)
    }

    /// Isomorphism-invariant fingerprint at desk scale: dimension vector
    /// plus ranks of all arrow-path compositions of length ≤ n.
    pub fn iso_invariants(&self, q: &Quiver) -> (Vec<usize>, Vec<usize>) {
        let n = q.n();
        let mut ranks = Vec::new();
        // paths as (current target vertex, composite matrix)
        let mut frontier: Vec<(usize, RMat<I>)> = Vec::new();
        for (&(s, t), mats) in &self.maps {
            for m in mats {
                ranks.push(linalg::rank(m));
                frontier.push((t, m.clone()));
                let _ = s;
            }
        }
        for _ in 1..n {
            let mut next = Vec::new();
            for (v, comp) in &frontier {
                for (&(s, t), mats) in &self.maps {
                    if s != *v {
                        continue;
                    }
                    for m in mats {
                        let c = linalg::mat_mul(m, comp);
                        ranks.push(linalg::rank(&c));
                        next.push((t, c));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        ranks.sort_unstable();
        (self.dims.clone(), ranks)
    }
}

/// Reflection functor at a sink (kernel construction) or source (cokernel
/// construction); arrows at `i` reverse. The zero representation is a legal
/// output (the functor kills the simple at the reflected vertex).
pub fn bgp_reflect<I: Scalar>(
    q: &Quiver,
    i: usize,
    m: &Representation<I>,
) -> Result<(Quiver, Representation<I>)> {
    if i >= q.n() {
        return Err(Error::Index(i + 1, q.n()));
    }
    m.validate(q)?;
    let reflected = q.reversed_at(i);
    if q.is_sink(i) {
        // Stack all incoming maps into ⊕_{a: j→i} M_j → M_i.
        let mut blocks: Vec<(usize, usize)> = Vec::new(); // (source vertex, arrow copy)
        for (&(s, t), &c) in q.arrow_pairs() {
            if t == i {
                for k in 0..c {
                    blocks.push((s, k));
                }
            }
        }
        let total: usize = blocks.iter().map(|&(s, _)| m.dims[s]).sum();
        let mut stacked = vec![vec![Ratio::zero(); total]; m.dims[i]];
        let mut off = 0;
        for &(s, k) in &blocks {
            let mat = &m.maps[&(s, i)][k];
            for r in 0..m.dims[i] {
                for c in 0..m.dims[s] {
                    stacked[r][off + c] = mat[r][c].clone();
                }
            }
            off += m.dims[s];
        }
        let kernel = linalg::null_space(&stacked, total); // columns spanning the kernel
        let new_dim = kernel.len();
        let mut dims = m.dims.clone();
        dims[i] = new_dim;
        let mut out = Representation::zero_maps(&reflected, dims);
        // New arrow i→j (one per old arrow j→i): restrict the kernel
        // inclusion to the j-block.
        let mut off = 0;
        for &(s, k) in &blocks {
            let rows = m.dims[s];
            let mut mat = vec![vec![Ratio::zero(); new_dim]; rows];
            for (col, kv) in kernel.iter().enumerate() {
                for r in 0..rows {
                    mat[r][col] = kv[off + r].clone();
                }
            }
            out.maps.get_mut(&(i, s)).expect("reversed arrow")[k] = mat;
            off += rows;
        }
        // Arrows away from i are untouched.
        for (&(s, t), mats) in &m.maps {
            if t != i {
                out.maps.insert((s, t), mats.clone());
            }
        }
        Ok((reflected, out))
    } else if q.is_source(i) {
        // Stack all outgoing maps into M_i → ⊕_{a: i→j} M_j.
        let mut blocks: Vec<(usize, usize)> = Vec::new();
        for (&(s, t), &c) in q.arrow_pairs() {
            if s == i {
                for k in 0..c {
                    blocks.push((t, k));
                }
            }
        }
        let total: usize = blocks.iter().map(|&(t, _)| m.dims[t]).sum();
        let mut stacked = vec![vec![Ratio::zero(); m.dims[i]]; total];
        let mut off = 0;
        for &(t, k) in &blocks {
            let mat = &m.maps[&(i, t)][k];
            for r in 0..m.dims[t] {
                for c in 0..m.dims[i] {
                    stacked[off + r][c] = mat[r][c].clone();
                }
            }
            off += m.dims[t];
        }
        let (proj, new_dim) = linalg::cokernel_projection(&stacked);
        let mut dims = m.dims.clone();
        dims[i] = new_dim;
        let mut out = Representation::zero_maps(&reflected, dims);
        // New arrow j→i (one per old arrow i→j): include the j-block into
        // the sum and project onto the cokernel.
        let mut off = 0;
        for &(t, k) in &blocks {
            let rows = m.dims[t];
            let mut mat = vec![vec![Ratio::zero(); rows]; new_dim];
            for qr in 0..new_dim {
                for c in 0..rows {
                    mat[qr][c] = proj[qr][off + c].clone();
                }
            }
            out.maps.get_mut(&(t, i)).expect("reversed arrow")[k] = mat;
            off += rows;
        }
        for (&(s, t), mats) in &m.maps {
            if s != i {
                out.maps.insert((s, t), mats.clone());
            }
        }
        Ok((reflected, out))
    } else {
        Err(Error::NotSinkOrSource(i + 1))
    }
}

/// Orientation-exchange graph: orientations reachable from `q` by
/// reflecting at sinks or sources, to a reflection-depth bound.
#[derive(Debug, Clone)]
pub struct OrientationGraph {
    pub nodes: Vec<Quiver>,
    /// `(from node, to node, reflected vertex)`.
    pub edges: Vec<(usize, usize, usize)>,
}

pub fn orientation_graph(q: &Quiver, depth: usize) -> OrientationGraph {
    let key = |quiv: &Quiver| quiv.arrows();
    let mut nodes = vec![q.clone()];
    let mut keys = vec![key(q)];
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];
    for _ in 0..depth {
        let mut next = Vec::new();
        for &idx in &frontier {
            let cur = nodes[idx].clone();
            for v in 0..cur.n() {
                if !(cur.is_sink(v) || cur.is_source(v)) {
                    continue;
                }
                let refl = cur.reversed_at(v);
                let rk = key(&refl);
                let to = match keys.iter().position(|k| *k == rk) {
                    Some(p) => p,
                    None => {
                        nodes.push(refl);
                        keys.push(rk);
                        next.push(nodes.len() - 1);
                        nodes.len() - 1
                    }
                };
                if !edges.contains(&(idx, to, v)) {
                    edges.push((idx, to, v));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    OrientationGraph { nodes, edges }
}
