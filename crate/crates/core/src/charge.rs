//! Central charges and exact phase arithmetic.
//!
//! A phase is `arg(z)/π + turns` on the universal cover of the circle.
//! Points are normalized to a primitive integer direction in the semiclosed
//! upper half plane, so every comparison reduces to integer sign tests;
//! numeric values exist only for display.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::gauss::Gaussian;
use crate::lattice::LatticeVector;
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Exact point on the universal cover of the phase circle.
#[derive(Debug, Clone)]
pub struct PhaseKey<I: Scalar> {
    /// Primitive integer direction with `im > 0`, or `im = 0` and `re < 0`.
    dir: (I, I),
    /// Integer part: the phase value is `arg(dir)/π + turns`, `arg/π ∈ (0,1]`.
    turns: i64,
    /// `|z|²` of the originating charge point (display and mass bookkeeping).
    mass_sq: Ratio<I>,
    /// Half-plane representative of the originating ray, so that the value
    /// is always `arg(point)/π + turns`.
    point: Gaussian<I>,
}

fn primitive_dir<I: Scalar>(z: &Gaussian<I>) -> (I, I) {
    let l = num_integer::lcm(z.re.denom().clone(), z.im.denom().clone());
    let p = z.re.numer().clone() * (l.clone() / z.re.denom().clone());
    let q = z.im.numer().clone() * (l.clone() / z.im.denom().clone());
    let g = p.gcd(&q);
    (p / g.clone(), q / g)
}

fn in_upper<I: Scalar>(p: &I, q: &I) -> bool {
    q.is_positive() || (q.is_zero() && p.is_negative())
}

/// Angular region within `(0, 1]`: `(0,½) → 0`, `½ → 1`, `(½,1) → 2`, `1 → 3`.
fn region<I: Scalar>(p: &I, q: &I) -> u8 {
    if q.is_positive() {
        if p.is_positive() {
            0
        } else if p.is_zero() {
            1
        } else {
            2
        }
    } else {
        3
    }
}

fn cross<I: Scalar>(a: &(I, I), b: &(I, I)) -> I {
    a.0.clone() * b.1.clone() - a.1.clone() * b.0.clone()
}

impl<I: Scalar> PhaseKey<I> {
    /// Phase of a nonzero point, plus `turns` whole turns of π.
    pub fn from_point(z: &Gaussian<I>, turns: i64) -> Result<Self> {
        if z.is_zero() {
            return Err(Error::ZeroCharge);
        }
        let (p, q) = primitive_dir(z);
        let (dir, turns, point) = if in_upper(&p, &q) {
            ((p, q), turns, z.clone())
        } else {
            ((-p, -q), turns - 1, -z.clone())
        };
        Ok(PhaseKey {
            dir,
            turns,
            mass_sq: z.norm_sq(),
            point,
        })
    }

    pub fn shifted(&self, k: i64) -> Self {
        let mut out = self.clone();
        out.turns += k;
        out
    }

    pub fn turns(&self) -> i64 {
        self.turns
    }

    pub fn dir(&self) -> &(I, I) {
        &self.dir
    }

    pub fn mass_sq(&self) -> &Ratio<I> {
        &self.mass_sq
    }

    pub fn point(&self) -> &Gaussian<I> {
        &self.point
    }

    /// Display value `arg/π + turns` (not used in any decision).
    pub fn approx(&self) -> f64 {
        let p = self.dir.0.to_f64().unwrap_or(0.0);
        let q = self.dir.1.to_f64().unwrap_or(0.0);
        let mut a = q.atan2(p) / std::f64::consts::PI;
        if a <= 0.0 {
            // canonical directions sit in (0, 1]; arg(-1, 0) folds to 1
            a += 2.0;
        }
        a + self.turns as f64
    }

    /// Exact value as a rational when the angle is a multiple of ¼.
    pub fn exact_quarter(&self) -> Option<Ratio<i64>> {
        let (p, q) = (&self.dir.0, &self.dir.1);
        let frac = if q.is_zero() {
            4 // arg = 1
        } else if p.is_zero() {
            2
        } else if *p == *q {
            1
        } else if *p == -q.clone() {
            3
        } else {
            return None;
        };
        Some(Ratio::new(self.turns * 4 + frac, 4))
    }

    /// Forgets whole turns and antipodes: position on the circle mod 1.
    pub fn fold(&self) -> FoldedPhase<I> {
        FoldedPhase {
            dir: self.dir.clone(),
        }
    }

    fn angle_cmp(&self, other: &Self) -> Ordering {
        let ra = region(&self.dir.0, &self.dir.1);
        let rb = region(&other.dir.0, &other.dir.1);
        ra.cmp(&rb).then_with(|| {
            if ra == 0 || ra == 2 {
                let c = cross(&self.dir, &other.dir);
                if c.is_positive() {
                    Ordering::Less
                } else if c.is_zero() {
                    Ordering::Equal
                } else {
                    Ordering::Greater
                }
            } else {
                Ordering::Equal
            }
        })
    }

    /// Phase of the pointwise product: angles add, and a turn is added when
    /// the sum wraps past 1. Both canonical angles lie in `(0, 1]`, so the
    /// sum is in `(0, 2]` and wraps exactly when the product point leaves
    /// the semiclosed upper half plane.
    pub fn angle_add(&self, other: &Self) -> Self {
        let prod = self.point.clone() * other.point.clone();
        let t = self.turns + other.turns;
        let mut k = PhaseKey::from_point(&prod, 0).expect("nonzero product of nonzero points");
        k.turns = if prod.in_upper_half() { t } else { t + 1 };
        k
    }
}

impl<I: Scalar> PartialEq for PhaseKey<I> {
    fn eq(&self, other: &Self) -> bool {
        self.turns == other.turns && self.dir == other.dir
    }
}
impl<I: Scalar> Eq for PhaseKey<I> {}

impl<I: Scalar> Hash for PhaseKey<I> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.turns.hash(state);
        self.dir.hash(state);
    }
}

impl<I: Scalar> PartialOrd for PhaseKey<I> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<I: Scalar> Ord for PhaseKey<I> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.turns
            .cmp(&other.turns)
            .then_with(|| self.angle_cmp(other))
    }
}

/// Position on the phase circle mod 1 (antipodes identified), in `(0, 1]`.
#[derive(Debug, Clone)]
pub struct FoldedPhase<I: Scalar> {
    dir: (I, I),
}

impl<I: Scalar> FoldedPhase<I> {
    pub fn dir(&self) -> &(I, I) {
        &self.dir
    }

    pub fn approx(&self) -> f64 {
        let p = self.dir.0.to_f64().unwrap_or(0.0);
        let q = self.dir.1.to_f64().unwrap_or(0.0);
        let mut a = q.atan2(p) / std::f64::consts::PI;
        if a <= 0.0 {
            a += 2.0;
        }
        a
    }

    /// Arc length from `self` counterclockwise to `to`, in `[0, 1)`.
    pub fn arc_to(&self, to: &FoldedPhase<I>) -> ArcLen<I> {
        // to · conj(self): argument is the angle difference.
        let p = to.dir.0.clone() * self.dir.0.clone() + to.dir.1.clone() * self.dir.1.clone();
        let q = to.dir.1.clone() * self.dir.0.clone() - to.dir.0.clone() * self.dir.1.clone();
        let g = p.gcd(&q);
        let (p, q) = if g.is_zero() {
            (I::one(), I::zero())
        } else {
            (p / g.clone(), q / g)
        };
        // Normalize the representative into [0, 1): open upper half plane
        // or the positive real axis.
        if q.is_positive() || (q.is_zero() && p.is_positive()) {
            ArcLen { dir: (p, q) }
        } else {
            ArcLen { dir: (-p, -q) }
        }
    }
}

impl<I: Scalar> PartialEq for FoldedPhase<I> {
    fn eq(&self, other: &Self) -> bool {
        self.dir == other.dir
    }
}
impl<I: Scalar> Eq for FoldedPhase<I> {}

impl<I: Scalar> PartialOrd for FoldedPhase<I> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<I: Scalar> Ord for FoldedPhase<I> {
    fn cmp(&self, other: &Self) -> Ordering {
        let ra = region(&self.dir.0, &self.dir.1);
        let rb = region(&other.dir.0, &other.dir.1);
        ra.cmp(&rb).then_with(|| {
            if ra == 0 || ra == 2 {
                let c = cross(&self.dir, &other.dir);
                if c.is_positive() {
                    Ordering::Less
                } else if c.is_zero() {
                    Ordering::Equal
                } else {
                    Ordering::Greater
                }
            } else {
                Ordering::Equal
            }
        })
    }
}

impl<I: Scalar> Hash for FoldedPhase<I> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.dir.hash(state);
    }
}

/// Arc length in `[0, 1)` represented by an exact direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcLen<I: Scalar> {
    dir: (I, I),
}

impl<I: Scalar> ArcLen<I> {
    pub fn is_zero(&self) -> bool {
        self.dir.1.is_zero() && self.dir.0.is_positive()
    }

    pub fn approx(&self) -> f64 {
        let p = self.dir.0.to_f64().unwrap_or(0.0);
        let q = self.dir.1.to_f64().unwrap_or(0.0);
        let a = q.atan2(p) / std::f64::consts::PI;
        if a < 0.0 {
            a + 2.0
        } else {
            a
        }
    }

    /// Region within `[0, 1)`: `0 → 0`, `(0,½) → 1`, `½ → 2`, `(½,1) → 3`.
    fn region(&self) -> u8 {
        let (p, q) = (&self.dir.0, &self.dir.1);
        if q.is_zero() {
            0
        } else if p.is_positive() {
            1
        } else if p.is_zero() {
            2
        } else {
            3
        }
    }
}

impl<I: Scalar> PartialOrd for ArcLen<I> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<I: Scalar> Ord for ArcLen<I> {
    fn cmp(&self, other: &Self) -> Ordering {
        let ra = self.region();
        let rb = other.region();
        ra.cmp(&rb).then_with(|| {
            if ra == 1 || ra == 3 {
                let c = cross(&self.dir, &other.dir);
                if c.is_positive() {
                    Ordering::Less
                } else if c.is_zero() {
                    Ordering::Equal
                } else {
                    Ordering::Greater
                }
            } else {
                Ordering::Equal
            }
        })
    }
}

/// Exact central charge on the standard heart: one value per vertex, each
/// in the semiclosed upper half plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralCharge<I: Scalar> {
    values: Vec<Gaussian<I>>,
}

/// Rotation input for the circle action on charges.
#[derive(Debug, Clone)]
pub enum Rotation<I: Scalar> {
    /// Unit Gaussian rational, e.g. `(3+4i)/5`.
    Unit(Gaussian<I>),
    /// `i^k`.
    QuarterTurns(i64),
}

impl<I: Scalar> CentralCharge<I> {
    /// Accepts the value list iff every entry defines a stability function
    /// on the standard heart.
    pub fn validate(values: Vec<Gaussian<I>>) -> Result<Self> {
        for (i, z) in values.iter().enumerate() {
            if !z.in_upper_half() {
                return Err(Error::NotAStabilityFunction(i + 1));
            }
        }
        Ok(CentralCharge { values })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Gaussian<I>] {
        &self.values
    }

    /// `Z(λ) = Σ λ_i Z(α_i)`.
    pub fn value_of(&self, lambda: &LatticeVector<I>) -> Gaussian<I> {
        let mut re = Ratio::zero();
        let mut im = Ratio::zero();
        for (c, z) in lambda.coords().iter().zip(&self.values) {
            if c.is_zero() {
                continue;
            }
            let f = Ratio::from_integer(c.clone());
            re = re + z.re.clone() * f.clone();
            im = im + z.im.clone() * f;
        }
        Gaussian::new(re, im)
    }

    /// Phase of a positive nonzero class, on the base sheet.
    pub fn phase(&self, lambda: &LatticeVector<I>) -> Result<PhaseKey<I>> {
        let z = self.value_of(lambda);
        PhaseKey::from_point(&z, 0)
    }

    /// Phase of a shifted class `λ[k]`.
    pub fn phase_shifted(&self, lambda: &LatticeVector<I>, k: i64) -> Result<PhaseKey<I>> {
        Ok(self.phase(lambda)?.shifted(k))
    }

    /// `f(λ)² = |Z(λ)|² / ‖λ‖²_∞`, exact.
    pub fn f_sq(&self, lambda: &LatticeVector<I>) -> Result<Ratio<I>> {
        if lambda.is_zero() {
            return Err(Error::ZeroVector);
        }
        let mut norm = I::zero();
        for c in lambda.coords() {
            let a = c.abs();
            if a > norm {
                norm = a;
            }
        }
        let n2 = Ratio::from_integer(norm.clone() * norm);
        Ok(self.value_of(lambda).norm_sq() / n2)
    }

    /// `‖Z‖² = max f²` over the unit sphere of the sup norm: exact maximum
    /// over the 2ⁿ sign patterns for n ≤ 20, and the Cauchy–Schwarz
    /// over-approximation `n · Σ|Z_i|²` beyond that.
    pub fn z_norm_sq(&self) -> Ratio<I> {
        let n = self.values.len();
        if n <= 20 {
            let mut best = Ratio::zero();
            for mask in 0u32..(1 << n) {
                let mut z = Gaussian::zero();
                for (i, v) in self.values.iter().enumerate() {
                    let signed = if mask & (1 << i) != 0 {
                        -v.clone()
                    } else {
                        v.clone()
                    };
                    z = z + signed;
                }
                let m = z.norm_sq();
                if m > best {
                    best = m;
                }
            }
            best
        } else {
            let mut s = Ratio::zero();
            for v in &self.values {
                s = s + v.norm_sq();
            }
            s * Ratio::from_integer(I::from_int(n as i64))
        }
    }

    /// Circle action: multiplies every value by a unit. The result need not
    /// lie in the half plane; the returned key is the phase translation the
    /// rotation applies to every class.
    pub fn rotate(&self, by: &Rotation<I>) -> Result<(Vec<Gaussian<I>>, PhaseKey<I>)> {
        let u = match by {
            Rotation::Unit(u) => u.clone(),
            Rotation::QuarterTurns(k) => {
                let mut u = Gaussian::from_ints(1, 0);
                let i = Gaussian::from_ints(0, 1);
                let m = k.rem_euclid(4);
                for _ in 0..m {
                    u = u * i.clone();
                }
                u
            }
        };
        if !u.norm_sq().is_one() {
            return Err(Error::NotUnit);
        }
        let values = self.values.iter().map(|z| z.clone() * u.clone()).collect();
        let shift = PhaseKey::from_point(&u, 0)?;
        Ok((values, shift))
    }

    /// Parses `-1+1i,1+1i` (comma or whitespace separated; an optional
    /// leading `charge` keyword), or a JSON array `[[xn,xd,yn,yd],...]`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.starts_with('[') {
            let v: serde_json::Value =
                serde_json::from_str(t).map_err(|e| Error::Parse(format!("bad charge JSON: {e}")))?;
            let arr = v
                .as_array()
                .ok_or_else(|| Error::Parse("charge JSON must be an array".into()))?;
            let mut values = Vec::new();
            for e in arr {
                let quad = e
                    .as_array()
                    .filter(|a| a.len() == 4)
                    .ok_or_else(|| Error::Parse("each charge entry is [xn,xd,yn,yd]".into()))?;
                let num = |k: usize| -> Result<I> {
                    quad[k]
                        .as_i64()
                        .map(I::from_int)
                        .ok_or_else(|| Error::Parse("charge entries must be integers".into()))
                };
                let (xn, xd, yn, yd) = (num(0)?, num(1)?, num(2)?, num(3)?);
                if xd.is_zero() || yd.is_zero() {
                    return Err(Error::Parse("zero denominator in charge".into()));
                }
                values.push(Gaussian::new(Ratio::new(xn, xd), Ratio::new(yn, yd)));
            }
            return Self::validate(values);
        }
        let body = t.strip_prefix("charge").unwrap_or(t).trim();
        let parts: Vec<&str> = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        if parts.is_empty() {
            return Err(Error::Parse("empty charge".into()));
        }
        let mut values = Vec::new();
        for p in parts {
            values.push(Gaussian::parse(p)?);
        }
        Self::validate(values)
    }
}
