//! Integer lattice vectors in the simple-root basis.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::scalar::Scalar;

/// Vector of coordinates over the simple roots; index `i` matches vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector<I: Scalar> {
    coords: Vec<I>,
}

impl<I: Scalar> LatticeVector<I> {
    pub fn new(coords: Vec<I>) -> Self {
        LatticeVector { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        LatticeVector {
            coords: coords.iter().map(|&c| I::from_int(c)).collect(),
        }
    }

    pub fn zeros(n: usize) -> Self {
        LatticeVector {
            coords: vec![I::zero(); n],
        }
    }

    /// Standard basis vector for vertex `i` (0-based).
    pub fn unit(i: usize, n: usize) -> Self {
        let mut v = Self::zeros(n);
        v.coords[i] = I::one();
        v
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[I] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &I {
        &self.coords[i]
    }

    /// `Σ |coords_i|`.
    pub fn height(&self) -> I {
        let mut h = I::zero();
        for c in &self.coords {
            h = h + c.abs();
        }
        h
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_nonneg(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    pub fn is_nonpos(&self) -> bool {
        self.coords.iter().all(|c| !c.is_positive())
    }

    /// Neither in `L⁺` nor in `L⁻`.
    pub fn is_mixed(&self) -> bool {
        !self.is_nonneg() && !self.is_nonpos()
    }

    /// Componentwise `self ≤ other`.
    pub fn leq(&self, other: &Self) -> bool {
        self.coords
            .iter()
            .zip(&other.coords)
            .all(|(a, b)| a <= b)
    }

    /// Vertices with nonzero coordinate (0-based).
    pub fn support(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| !self.coords[i].is_zero()).collect()
    }

    pub fn scaled(&self, c: i64) -> Self {
        let f = I::from_int(c);
        LatticeVector {
            coords: self.coords.iter().map(|x| x.clone() * f.clone()).collect(),
        }
    }

    /// Absolute value componentwise (sign-coherent vectors only, in practice).
    pub fn abs(&self) -> Self {
        LatticeVector {
            coords: self.coords.iter().map(|x| x.abs()).collect(),
        }
    }

    /// Coordinates as `usize`, if all fit and are nonnegative.
    pub fn to_usize_vec(&self) -> Option<Vec<usize>> {
        self.coords.iter().map(|c| c.to_usize()).collect()
    }

    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(|c| c.to_i64()).collect()
    }

    /// Maps coefficients into another scalar type through `i64`.
    pub fn convert<J: Scalar>(&self) -> Option<LatticeVector<J>> {
        let v = self.to_i64_vec()?;
        Some(LatticeVector::from_ints(&v))
    }
}

impl<I: Scalar> Add for &LatticeVector<I> {
    type Output = LatticeVector<I>;
    fn add(self, rhs: Self) -> LatticeVector<I> {
        LatticeVector {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<I: Scalar> Sub for &LatticeVector<I> {
    type Output = LatticeVector<I>;
    fn sub(self, rhs: Self) -> LatticeVector<I> {
        LatticeVector {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<I: Scalar> Neg for &LatticeVector<I> {
    type Output = LatticeVector<I>;
    fn neg(self) -> LatticeVector<I> {
        LatticeVector {
            coords: self.coords.iter().map(|a| -a.clone()).collect(),
        }
    }
}

impl<I: Scalar> fmt::Display for LatticeVector<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Iterates over all vectors `0 ≤ β ≤ cap` componentwise (including both ends).
pub fn boxed_vectors<I: Scalar>(cap: &LatticeVector<I>) -> Vec<LatticeVector<I>> {
    let caps = cap
        .to_usize_vec()
        .expect("box iteration requires small nonnegative caps");
    let mut out = Vec::new();
    let mut cur = vec![0usize; caps.len()];
    loop {
        out.push(LatticeVector::from_ints(
            &cur.iter().map(|&c| c as i64).collect::<Vec<_>>(),
        ));
        let mut k = 0;
        loop {
            if k == caps.len() {
                return out;
            }
            if cur[k] < caps[k] {
                cur[k] += 1;
                for c in cur.iter_mut().take(k) {
                    *c = 0;
                }
                break;
            }
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type V = LatticeVector<i64>;

    #[test]
    fn basics() {
        let v = V::from_ints(&[1, -2, 0]);
        assert_eq!(v.height(), 3);
        assert!(v.is_mixed());
        assert_eq!(v.support(), vec![0, 1]);
        assert_eq!((-&v).coords(), &[-1, 2, 0]);
        assert_eq!(V::unit(1, 3).coords(), &[0, 1, 0]);
    }

    #[test]
    fn box_enumeration() {
        let all = boxed_vectors(&V::from_ints(&[2, 1]));
        assert_eq!(all.len(), 6);
        assert!(all.contains(&V::from_ints(&[2, 1])));
        assert!(all.contains(&V::from_ints(&[0, 0])));
    }
}
