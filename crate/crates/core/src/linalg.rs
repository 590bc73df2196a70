//! Dense exact linear algebra at desk scale.
//!
//! Definiteness of a symmetric integer matrix is decided by rational
//! LDLᵀ elimination with symmetric pivoting; determinants use the
//! fraction-free Bareiss scheme. Matrices are row-major `Vec<Vec<_>>`.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

pub type IMat<I> = Vec<Vec<I>>;
pub type RMat<I> = Vec<Vec<Ratio<I>>>;

/// Outcome of the symmetric-pivoting LDLᵀ pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Definiteness {
    PositiveDefinite,
    PositiveSemidefinite { corank: usize },
    Indefinite,
}

/// Decides definiteness of a symmetric integer matrix exactly.
///
/// Pivots on positive diagonal entries; a positive semidefinite Schur
/// complement with a zero diagonal entry must have the whole row zero,
/// so once no positive diagonal remains the classification is immediate.
pub fn definiteness<I: Scalar>(a: &IMat<I>) -> Definiteness {
    let n = a.len();
    let mut m: RMat<I> = a
        .iter()
        .map(|row| row.iter().map(|v| Ratio::from_integer(v.clone())).collect())
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let pivot = active
            .iter()
            .position(|&k| m[k][k].is_positive())
            .map(|p| active[p]);
        match pivot {
            Some(k) => {
                let d = m[k][k].clone();
                active.retain(|&j| j != k);
                for &r in &active {
                    let f = m[r][k].clone() / d.clone();
                    for &c in &active {
                        let sub = f.clone() * m[k][c].clone();
                        m[r][c] = m[r][c].clone() - sub;
                    }
                }
            }
            None => {
                let all_zero = active
                    .iter()
                    .all(|&r| active.iter().all(|&c| m[r][c].is_zero()));
                if all_zero {
                    return Definiteness::PositiveSemidefinite {
                        corank: active.len(),
                    };
                }
                return Definiteness::Indefinite;
            }
        }
    }
    Definiteness::PositiveDefinite
}

/// Basis of the rational kernel of an integer matrix with `cols` columns
/// (column vectors). The column count is explicit so the zero-row case is
/// well defined: the kernel is then all of `k^cols`.
pub fn kernel_basis<I: Scalar>(a: &IMat<I>, cols: usize) -> Vec<Vec<Ratio<I>>> {
    let rows = a.len();
    if rows == 0 {
        return (0..cols)
            .map(|i| {
                let mut v = vec![Ratio::zero(); cols];
                v[i] = Ratio::one();
                v
            })
            .collect();
    }
    let mut m: RMat<I> = a
        .iter()
        .map(|row| row.iter().map(|v| Ratio::from_integer(v.clone())).collect())
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let d = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() / d.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let sub = f.clone() * m[r][j].clone();
                    m[i][j] = m[i][j].clone() - sub;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![Ratio::zero(); cols];
        v[free] = Ratio::one();
        for (pi, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[pi][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Determinant of a square integer matrix (fraction-free Bareiss).
pub fn det_int<I: Scalar>(a: &IMat<I>) -> I {
    let n = a.len();
    if n == 0 {
        return I::one();
    }
    let mut m: IMat<I> = a.to_vec();
    let mut sign = I::one();
    let mut prev = I::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    sign = -sign;
                }
                None => return I::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = num / prev.clone();
            }
        }
        for i in k + 1..n {
            m[i][k] = I::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Inverse of a square rational matrix, if nonsingular.
pub fn inverse<I: Scalar>(a: &RMat<I>) -> Option<RMat<I>> {
    let n = a.len();
    let mut m = a.to_vec();
    let mut inv: RMat<I> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Ratio::one()
                    } else {
                        Ratio::zero()
                    }
                })
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        inv.swap(c, p);
        let d = m[c][c].clone();
        for j in 0..n {
            m[c][j] = m[c][j].clone() / d.clone();
            inv[c][j] = inv[c][j].clone() / d.clone();
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..n {
                    let s = f.clone() * m[c][j].clone();
                    m[i][j] = m[i][j].clone() - s;
                    let s = f.clone() * inv[c][j].clone();
                    inv[i][j] = inv[i][j].clone() - s;
                }
            }
        }
    }
    Some(inv)
}

/// `a · b` for rational matrices.
pub fn mat_mul<I: Scalar>(a: &RMat<I>, b: &RMat<I>) -> RMat<I> {
    let rows = a.len();
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![Ratio::zero(); cols]; rows];
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cols {
                let add = a[i][k].clone() * b[k][j].clone();
                out[i][j] = out[i][j].clone() + add;
            }
        }
    }
    out
}

/// Matrix–vector product.
pub fn mat_vec<I: Scalar>(a: &RMat<I>, v: &[Ratio<I>]) -> Vec<Ratio<I>> {
    a.iter()
        .map(|row| {
            let mut s = Ratio::zero();
            for (x, y) in row.iter().zip(v) {
                s = s + x.clone() * y.clone();
            }
            s
        })
        .collect()
}

/// Rank of a rational matrix.
pub fn rank<I: Scalar>(a: &RMat<I>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut m = a.to_vec();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let d = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() / d.clone();
        }
        for i in r + 1..rows {
            if !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let s = f.clone() * m[r][j].clone();
                    m[i][j] = m[i][j].clone() - s;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Column-span kernel: basis of `{x ∈ k^cols : a·x = 0}` as column vectors.
pub fn null_space<I: Scalar>(a: &RMat<I>, cols: usize) -> Vec<Vec<Ratio<I>>> {
    let int_like: IMat<I> = a
        .iter()
        .map(|row| {
            // Clear denominators row by row; kernel is unchanged.
            let mut lcm = I::one();
            for x in row {
                lcm = num_integer::lcm(lcm, x.denom().clone());
            }
            row.iter()
                .map(|x| x.numer().clone() * (lcm.clone() / x.denom().clone()))
                .collect()
        })
        .collect();
    kernel_basis(&int_like, cols)
}

/// Projection onto a basis of `k^m / colspan(a)`; returns (rows of the
/// quotient map, quotient dimension).
pub fn cokernel_projection<I: Scalar>(a: &RMat<I>) -> (RMat<I>, usize) {
    let m = a.len();
    let cols = if m == 0 { 0 } else { a[0].len() };
    // Column echelon of the image: row-reduce transpose.
    let mut t: RMat<I> = (0..cols).map(|c| (0..m).map(|r| a[r][c].clone()).collect()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..m {
        let Some(p) = (r..t.len()).find(|&i| !t[i][c].is_zero()) else {
            continue;
        };
        t.swap(r, p);
        let d = t[r][c].clone();
        for x in t[r].iter_mut() {
            *x = x.clone() / d.clone();
        }
        for i in 0..t.len() {
            if i != r && !t[i][c].is_zero() {
                let f = t[i][c].clone();
                for j in 0..m {
                    let s = f.clone() * t[r][j].clone();
                    t[i][j] = t[i][j].clone() - s;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == t.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..m).filter(|i| !pivots.contains(i)).collect();
    // Quotient coordinates of e_k: reduce e_k by the echelon rows of the
    // image, then read off the free coordinates.
    let mut proj = vec![vec![Ratio::zero(); m]; free.len()];
    for k in 0..m {
        let mut v = vec![Ratio::zero(); m];
        v[k] = Ratio::one();
        for (ri, &pc) in pivots.iter().enumerate() {
            if !v[pc].is_zero() {
                let f = v[pc].clone();
                for j in 0..m {
                    let s = f.clone() * t[ri][j].clone();
                    v[j] = v[j].clone() - s;
                }
            }
        }
        for (qi, &fc) in free.iter().enumerate() {
            proj[qi][k] = v[fc].clone();
        }
    }
    let dim = free.len();
    (proj, dim)
}
