//! Imaginary cone, its charge image, phase gaps and heart certificates.

use std::collections::BTreeSet;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::charge::{ArcLen, CentralCharge, FoldedPhase, PhaseKey};
use crate::lattice::LatticeVector;
use crate::linalg;
use crate::quiver::{FormPair, QuiverType};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Exact shape of the positive imaginary cone at a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ImaginaryCone<I: Scalar> {
    Empty,
    Ray { delta: LatticeVector<I> },
    Sampled {
        generators: Vec<LatticeVector<I>>,
        bound: usize,
    },
}

/// Builds the cone from the classified type and the enumerated roots.
pub fn imaginary_cone<I: Scalar>(
    ty: &QuiverType<I>,
    roots: &BTreeSet<LatticeVector<I>>,
    bound: usize,
) -> Result<ImaginaryCone<I>> {
    let positive: Vec<LatticeVector<I>> = roots
        .iter()
        .filter(|v| v.is_nonneg() && !v.is_zero())
        .cloned()
        .collect();
    match ty {
        QuiverType::Finite => {
            if !positive.is_empty() {
                return Err(Error::InconsistentType(
                    "imaginary roots found for a finite-type form".into(),
                ));
            }
            Ok(ImaginaryCone::Empty)
        }
        QuiverType::Affine { delta } => Ok(ImaginaryCone::Ray {
            delta: delta.clone(),
        }),
        QuiverType::Indefinite => Ok(ImaginaryCone::Sampled {
            generators: positive,
            bound,
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// One connected piece of the charge image of the thickened semistable
/// imaginary cone, reported as a phase interval with witness classes.
#[derive(Debug, Clone)]
pub struct ConeComponent<I: Scalar> {
    pub sign: Sign,
    pub interval: (PhaseKey<I>, PhaseKey<I>),
    pub witnesses: (LatticeVector<I>, LatticeVector<I>),
    pub members: Vec<LatticeVector<I>>,
}

/// Whether `f² ≥ ε²` holds along the whole segment from `g` to `g2`.
/// On each linearity piece of the sup norm the condition is a quadratic
/// sign condition, checked exactly.
fn segment_inside<I: Scalar>(
    z: &CentralCharge<I>,
    eps_sq: &Ratio<I>,
    g: &LatticeVector<I>,
    g2: &LatticeVector<I>,
) -> bool {
    let n = g.n();
    let z0 = z.value_of(g);
    let z1 = z.value_of(g2);
    let dre = z1.re.clone() - z0.re.clone();
    let dim_ = z1.im.clone() - z0.im.clone();
    // |Z(λ(t))|² = A t² + B t + C
    let qa = dre.clone() * dre.clone() + dim_.clone() * dim_.clone();
    let qb = (z0.re.clone() * dre + z0.im.clone() * dim_) * Ratio::from_integer(I::from_int(2));
    let qc = z0.norm_sq();
    // Breakpoints of max_i λ_i(t) on [0,1].
    let gi: Vec<Ratio<I>> = g
        .coords()
        .iter()
        .map(|c| Ratio::from_integer(c.clone()))
        .collect();
    let di: Vec<Ratio<I>> = g2
        .coords()
        .iter()
        .zip(g.coords())
        .map(|(b, a)| Ratio::from_integer(b.clone() - a.clone()))
        .collect();
    let mut cuts: Vec<Ratio<I>> = vec![Ratio::zero(), Ratio::one()];
    for i in 0..n {
        for j in i + 1..n {
            let dd = di[i].clone() - di[j].clone();
            if dd.is_zero() {
                continue;
            }
            let t = (gi[j].clone() - gi[i].clone()) / dd;
            if t.is_positive() && t < Ratio::one() {
                cuts.push(t);
            }
        }
    }
    cuts.sort();
    cuts.dedup();
    let two = Ratio::from_integer(I::from_int(2));
    let four = Ratio::from_integer(I::from_int(4));
    for w in cuts.windows(2) {
        let (ta, tb) = (&w[0], &w[1]);
        let tm = (ta.clone() + tb.clone()) / two.clone();
        // Active coordinate of the sup norm on this piece.
        let mut imax = 0;
        let mut vmax = gi[0].clone() + di[0].clone() * tm.clone();
        for i in 1..n {
            let v = gi[i].clone() + di[i].clone() * tm.clone();
            if v > vmax {
                vmax = v;
                imax = i;
            }
        }
        let (gm, dm) = (gi[imax].clone(), di[imax].clone());
        // q(t) = |Z|² − ε² λ_imax(t)²  ≥ 0 on [ta, tb]?
        let a2 = qa.clone() - eps_sq.clone() * dm.clone() * dm.clone();
        let a1 = qb.clone() - eps_sq.clone() * two.clone() * gm.clone() * dm.clone();
        let a0 = qc.clone() - eps_sq.clone() * gm.clone() * gm.clone();
        let eval = |t: &Ratio<I>| a2.clone() * t.clone() * t.clone() + a1.clone() * t.clone() + a0.clone();
        if eval(ta).is_negative() || eval(tb).is_negative() {
            return false;
        }
        if a2.is_positive() {
            let tv = -a1.clone() / (two.clone() * a2.clone());
            if tv > *ta && tv < *tb {
                let disc = four.clone() * a2.clone() * a0.clone() - a1.clone() * a1.clone();
                if disc.is_negative() {
                    return false;
                }
            }
        }
    }
    true
}

struct UnionFind(Vec<usize>);
impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Components of `{λ in the cone : f²(λ) ≥ ε²}`, reported as phase
/// intervals. Generators are adjacent when the straight segment between
/// them stays inside; interval hulls of member phases cover the phases of
/// every enumerated imaginary root above the threshold.
pub fn build_a_sigma<I: Scalar>(
    cone: &ImaginaryCone<I>,
    z: &CentralCharge<I>,
    eps_sq: &Ratio<I>,
    _z_norm_sq: &Ratio<I>,
) -> Vec<ConeComponent<I>> {
    let mut plus: Vec<ConeComponent<I>> = Vec::new();
    match cone {
        ImaginaryCone::Empty => {}
        ImaginaryCone::Ray { delta } => {
            let f = z.f_sq(delta).expect("delta is nonzero");
            if f >= *eps_sq {
                let p = z.phase(delta).expect("positive class");
                plus.push(ConeComponent {
                    sign: Sign::Plus,
                    interval: (p.clone(), p),
                    witnesses: (delta.clone(), delta.clone()),
                    members: vec![delta.clone()],
                });
            }
        }
        ImaginaryCone::Sampled { generators, .. } => {
            let inside: Vec<LatticeVector<I>> = generators
                .iter()
                .filter(|g| z.f_sq(g).expect("nonzero generator") >= *eps_sq)
                .cloned()
                .collect();
            let m = inside.len();
            let mut uf = UnionFind::new(m);
            for i in 0..m {
                for j in i + 1..m {
                    if segment_inside(z, eps_sq, &inside[i], &inside[j]) {
                        uf.union(i, j);
                    }
                }
            }
            let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
            for i in 0..m {
                let r = uf.find(i);
                groups.entry(r).or_default().push(i);
            }
            for (_, idxs) in groups {
                let mut lo: Option<(PhaseKey<I>, LatticeVector<I>)> = None;
                let mut hi: Option<(PhaseKey<I>, LatticeVector<I>)> = None;
                let mut members = Vec::new();
                for &i in &idxs {
                    let g = &inside[i];
                    let p = z.phase(g).expect("positive class");
                    if lo.as_ref().is_none_or(|(bp, _)| p < *bp) {
                        lo = Some((p.clone(), g.clone()));
                    }
                    if hi.as_ref().is_none_or(|(bp, _)| p > *bp) {
                        hi = Some((p.clone(), g.clone()));
                    }
                    members.push(g.clone());
                }
                let (plo, wlo) = lo.expect("nonempty component");
                let (phi, whi) = hi.expect("nonempty component");
                debug_assert!(phi < plo.shifted(1), "component interval spans ≥ 1");
                plus.push(ConeComponent {
                    sign: Sign::Plus,
                    interval: (plo, phi),
                    witnesses: (wlo, whi),
                    members,
                });
            }
        }
    }
    let mut out = Vec::new();
    for c in plus {
        let minus = ConeComponent {
            sign: Sign::Minus,
            interval: (c.interval.0.shifted(1), c.interval.1.shifted(1)),
            witnesses: ((-&c.witnesses.0).clone(), (-&c.witnesses.1).clone()),
            members: c.members.iter().map(|v| (-v).clone()).collect(),
        };
        out.push(c);
        out.push(minus);
    }
    out
}

/// Phase mark on the folded circle with the class that produced it.
#[derive(Debug, Clone)]
pub struct OccupiedMark<I: Scalar> {
    pub phase: PhaseKey<I>,
    pub class: LatticeVector<I>,
}

/// Certified free arc `(θ, θ′)`: no semistable-root phase and no component
/// interval meets its interior, and it is the longest such arc.
#[derive(Debug, Clone)]
pub struct GapCertificate<I: Scalar> {
    pub theta: PhaseKey<I>,
    pub theta_prime: PhaseKey<I>,
    /// Primitive integer direction strictly inside the arc; all window
    /// tests downstream are sign tests against phase keys, this is the
    /// materialized separating ray.
    pub direction: (I, I),
    pub occupied: Vec<OccupiedMark<I>>,
    pub component_intervals: Vec<(PhaseKey<I>, PhaseKey<I>)>,
}

fn arc_is_blocked<I: Scalar>(
    intervals: &[(FoldedPhase<I>, FoldedPhase<I>)],
    from: &FoldedPhase<I>,
    to: &FoldedPhase<I>,
) -> bool {
    intervals.iter().any(|(a, b)| {
        let len = a.arc_to(b);
        let u = a.arc_to(from);
        let v = a.arc_to(to);
        u < v && v <= len
    })
}

/// Every free arc between consecutive occupied marks, in circle order.
/// Marks and intervals fold antipodes together, so the result is the
/// negation-symmetric picture on the circle of period 1.
pub fn free_arcs<I: Scalar>(
    components: &[ConeComponent<I>],
    ss: &[(LatticeVector<I>, PhaseKey<I>)],
) -> Result<Vec<(PhaseKey<I>, PhaseKey<I>)>> {
    let mut marks: Vec<OccupiedMark<I>> = Vec::new();
    for (v, p) in ss {
        marks.push(OccupiedMark {
            phase: p.clone(),
            class: v.clone(),
        });
    }
    let mut intervals: Vec<(FoldedPhase<I>, FoldedPhase<I>)> = Vec::new();
    for c in components {
        if c.sign == Sign::Minus {
            continue; // folds onto the plus twin
        }
        marks.push(OccupiedMark {
            phase: c.interval.0.clone(),
            class: c.witnesses.0.clone(),
        });
        marks.push(OccupiedMark {
            phase: c.interval.1.clone(),
            class: c.witnesses.1.clone(),
        });
        intervals.push((c.interval.0.fold(), c.interval.1.fold()));
    }
    if marks.is_empty() {
        return Err(Error::EmptySet);
    }
    marks.sort_by(|a, b| a.phase.fold().cmp(&b.phase.fold()).then(a.class.cmp(&b.class)));
    marks.dedup_by(|a, b| a.phase.fold() == b.phase.fold());
    let m = marks.len();
    let mut arcs = Vec::new();
    if m == 1 {
        let theta = normalized(&marks[0].phase);
        let theta_prime = theta.shifted(1);
        return Ok(vec![(theta, theta_prime)]);
    }
    for i in 0..m {
        let left = &marks[i];
        let right = &marks[(i + 1) % m];
        let lf = left.phase.fold();
        let rf = right.phase.fold();
        if arc_is_blocked(&intervals, &lf, &rf) {
            continue;
        }
        let theta = normalized(&left.phase);
        let wrapped = rf <= lf;
        let mut theta_prime = normalized(&right.phase);
        if wrapped {
            theta_prime = theta_prime.shifted(1);
        }
        arcs.push((theta, theta_prime));
    }
    Ok(arcs)
}

/// Representative with value in `(0, 1]`.
fn normalized<I: Scalar>(p: &PhaseKey<I>) -> PhaseKey<I> {
    p.shifted(-p.turns())
}

/// The widest free arc; ties break toward the smallest left endpoint.
pub fn phase_gap<I: Scalar>(
    components: &[ConeComponent<I>],
    ss: &[(LatticeVector<I>, PhaseKey<I>)],
) -> Result<GapCertificate<I>> {
    let arcs = free_arcs(components, ss)?;
    let mut best: Option<(ArcLen<I>, PhaseKey<I>, PhaseKey<I>)> = None;
    for (theta, theta_prime) in &arcs {
        let full = theta_prime == &theta.shifted(1);
        let len = theta.fold().arc_to(&theta_prime.fold());
        // A full-circle arc folds to length 0; order it above everything.
        let better = match &best {
            None => true,
            Some((blen, btheta, btp)) => {
                let bfull = btp == &btheta.shifted(1);
                match (full, bfull) {
                    (true, false) => true,
                    (false, true) => false,
                    _ => match len.cmp(blen) {
                        std::cmp::Ordering::Greater => true,
                        std::cmp::Ordering::Equal => theta.fold() < btheta.fold(),
                        std::cmp::Ordering::Less => false,
                    },
                }
            }
        };
        if better {
            best = Some((len, theta.clone(), theta_prime.clone()));
        }
    }
    let Some((_, theta, theta_prime)) = best else {
        return Err(Error::NoGap(format!(
            "{} occupied marks leave no free arc",
            arcs.len()
        )));
    };
    // Interior separating direction: positive combination of the two
    // bounding rays (quarter turn for a full-circle gap).
    let dt = theta.dir().clone();
    let direction = if theta_prime == theta.shifted(1) {
        (-dt.1.clone(), dt.0.clone())
    } else {
        let sign = if theta_prime.turns() % 2 == 0 {
            I::one()
        } else {
            -I::one()
        };
        let dp = theta_prime.dir().clone();
        let mut w = (
            dt.0.clone() + sign.clone() * dp.0.clone(),
            dt.1.clone() + sign * dp.1.clone(),
        );
        let g = num_integer::Integer::gcd(&w.0, &w.1);
        if !g.is_zero() {
            w = (w.0 / g.clone(), w.1 / g);
        }
        w
    };
    // Re-collect the evidence in sorted order.
    let mut occupied: Vec<OccupiedMark<I>> = ss
        .iter()
        .map(|(v, p)| OccupiedMark {
            phase: p.clone(),
            class: v.clone(),
        })
        .collect();
    for c in components {
        if c.sign == Sign::Plus {
            occupied.push(OccupiedMark {
                phase: c.interval.0.clone(),
                class: c.witnesses.0.clone(),
            });
            occupied.push(OccupiedMark {
                phase: c.interval.1.clone(),
                class: c.witnesses.1.clone(),
            });
        }
    }
    occupied.sort_by(|a, b| a.phase.fold().cmp(&b.phase.fold()).then(a.class.cmp(&b.class)));
    occupied.dedup_by(|a, b| a.phase.fold() == b.phase.fold() && a.class == b.class);
    let component_intervals = components
        .iter()
        .map(|c| c.interval.clone())
        .collect();
    Ok(GapCertificate {
        theta,
        theta_prime,
        direction,
        occupied,
        component_intervals,
    })
}

/// One simple of a certified heart: a signed root class in the window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeartSimple<I: Scalar> {
    pub root: LatticeVector<I>,
    pub shift: i64,
    pub class: LatticeVector<I>,
    pub phase: PhaseKey<I>,
}

/// Certificate that `(θ, θ+1]` cuts out a finite-length heart: the minimal
/// window classes form a unimodular basis generating every windowed
/// semistable class nonnegatively.
#[derive(Debug, Clone)]
pub struct HeartCertificate<I: Scalar> {
    pub theta: PhaseKey<I>,
    pub simples: Vec<HeartSimple<I>>,
    pub basis: Vec<Vec<I>>,
    pub det: I,
    pub windowed: Vec<(LatticeVector<I>, PhaseKey<I>)>,
}

/// Shifts every semistable root class into the window `(θ, θ+1]`, extracts
/// the minimal generators (classes that are not sums of two window
/// classes), and certifies them as a basis.
pub fn heart_simples<I: Scalar>(
    gap: &GapCertificate<I>,
    ss: &[(LatticeVector<I>, PhaseKey<I>)],
    _f: &FormPair<I>,
) -> Result<HeartCertificate<I>> {
    let theta = &gap.theta;
    let mut windowed: Vec<HeartSimple<I>> = Vec::new();
    for (root, phi) in ss {
        let phi = normalized(phi);
        // φ, θ ∈ (0,1]: the unique shift landing in (θ, θ+1] is 0 or 1.
        let k = if phi > *theta { 0 } else { 1 };
        let class = if k % 2 == 0 {
            root.clone()
        } else {
            (-root).clone()
        };
        windowed.push(HeartSimple {
            root: root.clone(),
            shift: k,
            class,
            phase: phi.shifted(k),
        });
    }
    let class_set: BTreeSet<LatticeVector<I>> =
        windowed.iter().map(|w| w.class.clone()).collect();
    let mut simples: Vec<HeartSimple<I>> = windowed
        .iter()
        .filter(|w| {
            !class_set.iter().any(|a| {
                let b = &w.class - a;
                !b.is_zero() && *a != w.class && class_set.contains(&b)
            })
        })
        .cloned()
        .collect();
    simples.sort_by(|a, b| a.phase.cmp(&b.phase).then(a.class.cmp(&b.class)));
    simples.dedup_by(|a, b| a.class == b.class);
    let n = ss
        .first()
        .map(|(v, _)| v.n())
        .ok_or(Error::EmptySet)?;
    if simples.len() > n {
        return Err(Error::WindowOverflow {
            got: simples.len(),
            rank: n,
        });
    }
    if simples.len() < n {
        return Err(Error::NotABasis(format!(
            "{} minimal window generators for rank {}",
            simples.len(),
            n
        )));
    }
    // Column matrix of the simple classes.
    let basis: Vec<Vec<I>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| simples[j].class.coord(i).clone())
                .collect()
        })
        .collect();
    let det = linalg::det_int(&basis);
    if !det.abs().is_one() {
        return Err(Error::NotABasis(format!("window basis has det {det}")));
    }
    let rbasis: linalg::RMat<I> = basis
        .iter()
        .map(|row| row.iter().map(|v| Ratio::from_integer(v.clone())).collect())
        .collect();
    let inv = linalg::inverse(&rbasis).expect("unimodular basis");
    for w in &windowed {
        let target: Vec<Ratio<I>> = w
            .class
            .coords()
            .iter()
            .map(|c| Ratio::from_integer(c.clone()))
            .collect();
        let coeffs = linalg::mat_vec(&inv, &target);
        for c in &coeffs {
            debug_assert!(c.denom().is_one(), "unimodular basis gives integer coords");
            if c.is_negative() {
                return Err(Error::NotABasis(format!(
                    "window class {} is not a nonnegative combination of the simples",
                    w.class
                )));
            }
        }
    }
    Ok(HeartCertificate {
        theta: theta.clone(),
        simples,
        basis,
        det,
        windowed: windowed.into_iter().map(|w| (w.class, w.phase)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::Gaussian;
    use crate::homext::HomExtTable;
    use crate::quiver::{classify_type, forms, Quiver};
    use crate::roots::{imaginary_roots_up_to, RootOptions};
    use crate::stability::{semistable_classes_up_to, support_constant};

    type V = LatticeVector<i64>;

    fn pipeline(
        arrows: &[(usize, usize)],
        n: usize,
        vals: &[(i64, i64)],
        h: usize,
    ) -> (
        Quiver,
        FormPair<i64>,
        CentralCharge<i64>,
        Vec<(V, PhaseKey<i64>)>,
        Vec<ConeComponent<i64>>,
    ) {
        let q = Quiver::new(n, arrows).unwrap();
        let f = forms(&q);
        let table = HomExtTable::new(f.clone(), h.max(12));
        let z = CentralCharge::validate(
            vals.iter().map(|&(x, y)| Gaussian::from_ints(x, y)).collect(),
        )
        .unwrap();
        let opts = RootOptions::default();
        let ss = semistable_classes_up_to(&z, &table, &q, h, &opts).unwrap();
        let sc = support_constant(&z, &ss).unwrap();
        let ty = classify_type(&f).unwrap();
        let im = imaginary_roots_up_to(&f, &q, h, &opts).unwrap();
        let cone = imaginary_cone(&ty, &im, h).unwrap();
        let comps = build_a_sigma(&cone, &z, &sc.min_f_sq, &sc.z_norm_sq);
        (q, f, z, ss, comps)
    }

    #[test]
    fn finite_cone_is_empty() {
        let (_, _, _, _, comps) = pipeline(&[(0, 1)], 2, &[(0, 1), (0, 1)], 5);
        assert!(comps.is_empty());
    }

    #[test]
    fn affine_ray_component() {
        let (_, _, _, _, comps) = pipeline(&[(0, 1), (0, 1)], 2, &[(-1, 1), (1, 1)], 4);
        assert_eq!(comps.len(), 2);
        let plus = comps.iter().find(|c| c.sign == Sign::Plus).unwrap();
        assert_eq!(plus.interval.0, plus.interval.1);
        assert_eq!(
            plus.interval.0.exact_quarter(),
            Some(num_rational::Ratio::new(1, 2))
        );
        let minus = comps.iter().find(|c| c.sign == Sign::Minus).unwrap();
        assert_eq!(minus.interval.0, plus.interval.0.shifted(1));
    }

    #[test]
    fn oversized_threshold_empties_the_preimage() {
        let q = Quiver::new(2, &[(0, 1), (0, 1)]).unwrap();
        let _f: FormPair<i64> = forms(&q);
        let z = CentralCharge::validate(vec![
            Gaussian::from_ints(-1, 1),
            Gaussian::from_ints(1, 1),
        ])
        .unwrap();
        let cone = ImaginaryCone::Ray {
            delta: V::from_ints(&[1, 1]),
        };
        let comps = build_a_sigma(
            &cone,
            &z,
            &num_rational::Ratio::from_integer(100),
            &z.z_norm_sq(),
        );
        assert!(comps.is_empty());
    }

    #[test]
    fn gap_a2_two_phases() {
        let (_, _, _, ss, comps) = pipeline(&[(0, 1)], 2, &[(0, 1), (-1, 0)], 5);
        let gap = phase_gap(&comps, &ss).unwrap();
        assert_eq!(gap.theta.exact_quarter(), Some(num_rational::Ratio::new(1, 2)));
        assert_eq!(
            gap.theta_prime.exact_quarter(),
            Some(num_rational::Ratio::new(1, 1))
        );
    }

    #[test]
    fn gap_a2_single_phase_is_full_circle() {
        let (_, _, _, ss, comps) = pipeline(&[(0, 1)], 2, &[(0, 1), (0, 1)], 5);
        let gap = phase_gap(&comps, &ss).unwrap();
        assert_eq!(gap.theta.exact_quarter(), Some(num_rational::Ratio::new(1, 2)));
        assert_eq!(
            gap.theta_prime.exact_quarter(),
            Some(num_rational::Ratio::new(3, 2))
        );
        // Quarter-turn separating direction.
        assert_eq!(gap.direction, (-1, 0));
    }

    #[test]
    fn heart_a2_generic_charge() {
        let (_, f, _, ss, comps) = pipeline(&[(0, 1)], 2, &[(0, 1), (-1, 0)], 5);
        let gap = phase_gap(&comps, &ss).unwrap();
        let heart = heart_simples(&gap, &ss, &f).unwrap();
        assert_eq!(heart.det.abs(), 1);
        let classes: BTreeSet<V> = heart.simples.iter().map(|s| s.class.clone()).collect();
        let expect: BTreeSet<V> = [V::from_ints(&[0, 1]), V::from_ints(&[-1, 0])]
            .into_iter()
            .collect();
        assert_eq!(classes, expect);
    }

    #[test]
    fn heart_a2_degenerate_charge() {
        let (_, f, _, ss, comps) = pipeline(&[(0, 1)], 2, &[(0, 1), (0, 1)], 5);
        let gap = phase_gap(&comps, &ss).unwrap();
        let heart = heart_simples(&gap, &ss, &f).unwrap();
        // Window (1/2, 3/2]: all three roots shift by one; the sum class
        // is not minimal.
        let classes: BTreeSet<V> = heart.simples.iter().map(|s| s.class.clone()).collect();
        let expect: BTreeSet<V> = [V::from_ints(&[-1, 0]), V::from_ints(&[0, -1])]
            .into_iter()
            .collect();
        assert_eq!(classes, expect);
        assert_eq!(heart.det.abs(), 1);
    }

    #[test]
    fn heart_kronecker_sample_charge() {
        let (_, f, _, ss, comps) = pipeline(&[(0, 1), (0, 1)], 2, &[(-1, 1), (1, 1)], 6);
        let gap = phase_gap(&comps, &ss).unwrap();
        let heart = heart_simples(&gap, &ss, &f).unwrap();
        assert_eq!(heart.det.abs(), 1);
        assert_eq!(heart.simples.len(), 2);
        // Roots accumulate toward 1/2 from both sides; the widest free arc
        // is bounded by the extreme simple phases 1/4 and 3/4.
        assert_eq!(gap.theta.exact_quarter(), Some(num_rational::Ratio::new(3, 4)));
        assert_eq!(
            gap.theta_prime.exact_quarter(),
            Some(num_rational::Ratio::new(5, 4))
        );
    }
}
