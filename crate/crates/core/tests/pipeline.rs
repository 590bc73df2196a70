//! Cross-stage invariants: bound stability, component symmetry, the
//! desk-scale exchange check, and the window-heart dimension estimate.

mod common;

use std::collections::BTreeSet;

use common::*;
use kacstab::charge::CentralCharge;
use kacstab::cone::{
    build_a_sigma, free_arcs, heart_simples, imaginary_cone, phase_gap, Sign,
};
use kacstab::gauss::Gaussian;
use kacstab::homext::HomExtTable;
use kacstab::lattice::LatticeVector;
use kacstab::linalg;
use kacstab::quiver::{classify_type, forms, FormPair, Quiver};
use kacstab::roots::{imaginary_roots_up_to, RootOptions};
use kacstab::stability::{semistable_classes_up_to, support_constant};
use kacstab::tilt::{gldim_estimate, tilt_heart, HeartSMC, TiltDirection};
use num_traits::{One, Signed};

type V = LatticeVector<I>;

fn sample_charges(n: usize) -> Vec<CentralCharge<I>> {
    charge_grid(n, 40, 0xBEEF)
}

fn stage(
    q: &Quiver,
    z: &CentralCharge<I>,
    h: usize,
) -> (
    FormPair<I>,
    HomExtTable<I>,
    Vec<(V, kacstab::charge::PhaseKey<I>)>,
    Vec<kacstab::cone::ConeComponent<I>>,
) {
    let f = forms::<I>(q);
    let table = HomExtTable::new(f.clone(), h.max(12));
    let opts = RootOptions::default();
    let ss = semistable_classes_up_to(z, &table, q, h, &opts).unwrap();
    let sc = support_constant(z, &ss).unwrap();
    let ty = classify_type(&f).unwrap();
    let im = imaginary_roots_up_to(&f, q, h, &opts).unwrap();
    let cone = imaginary_cone(&ty, &im, h).unwrap();
    let comps = build_a_sigma(&cone, z, &sc.min_f_sq, &sc.z_norm_sq);
    (f, table, ss, comps)
}

/// Free arcs at a doubled bound refine the arcs at the base bound.
#[test]
fn bound_stability_of_arcs() {
    for q in [a2(), a3(), k2(), k3()] {
        for z in sample_charges(q.n()).iter().take(12) {
            let (_, _, ss8, comps8) = stage(&q, z, 8);
            let (_, _, ss16, comps16) = stage(&q, z, 16);
            let coarse = free_arcs(&comps8, &ss8).unwrap();
            let fine = free_arcs(&comps16, &ss16).unwrap();
            for (t, tp) in &fine {
                let contained = coarse.iter().any(|(ct, ctp)| {
                    let len = ct.fold().arc_to(&ctp.fold());
                    let u = ct.fold().arc_to(&t.fold());
                    let v = ct.fold().arc_to(&tp.fold());
                    let full = *ctp == ct.shifted(1);
                    full || (u <= v && v <= len)
                });
                assert!(
                    contained,
                    "fine arc ({:.4}, {:.4}) escapes every coarse arc",
                    t.approx(),
                    tp.approx()
                );
            }
        }
    }
}

/// Certificates stabilize once the bound is large enough.
#[test]
fn heart_simples_stabilize() {
    let fixtures: Vec<(Quiver, Vec<(i64, i64)>)> = vec![
        (a2(), vec![(0, 1), (-1, 0)]),
        (a2(), vec![(0, 1), (0, 1)]),
        (a3(), vec![(-1, 2), (0, 1), (1, 3)]),
        (k2(), vec![(-1, 1), (1, 1)]),
    ];
    for (q, vals) in fixtures {
        let z = CentralCharge::validate(
            vals.iter().map(|&(x, y)| Gaussian::from_ints(x, y)).collect(),
        )
        .unwrap();
        let mut keys = Vec::new();
        for h in [8usize, 16] {
            let (f, _, ss, comps) = stage(&q, &z, h);
            let gap = phase_gap(&comps, &ss).unwrap();
            let heart = heart_simples(&gap, &ss, &f).unwrap();
            let mut key: Vec<(V, i64)> =
                heart.simples.iter().map(|s| (s.root.clone(), s.shift)).collect();
            key.sort();
            keys.push(key);
        }
        assert_eq!(keys[0], keys[1], "heart certificate changed from h=8 to h=16");
    }
}

/// Components come in ± pairs with intervals offset by one, and the
/// images of distinct components never overlap.
#[test]
fn component_symmetry_and_disjointness() {
    for q in [k2(), k3(), affine_a2_a()] {
        for z in sample_charges(q.n()).iter().take(15) {
            let (_, _, _, comps) = stage(&q, z, 8);
            let plus: Vec<_> = comps.iter().filter(|c| c.sign == Sign::Plus).collect();
            let minus: Vec<_> = comps.iter().filter(|c| c.sign == Sign::Minus).collect();
            assert_eq!(plus.len(), minus.len());
            for p in &plus {
                assert!(
                    minus.iter().any(|m| {
                        m.interval.0 == p.interval.0.shifted(1)
                            && m.interval.1 == p.interval.1.shifted(1)
                    }),
                    "missing antipodal twin"
                );
                let w = p.interval.1.clone();
                assert!(w < p.interval.0.shifted(1), "interval spans ≥ 1");
            }
            // Distinct plus components have disjoint closed intervals.
            for (i, a) in plus.iter().enumerate() {
                for b in plus.iter().skip(i + 1) {
                    let disjoint = a.interval.1 < b.interval.0 || b.interval.1 < a.interval.0;
                    assert!(
                        disjoint,
                        "component intervals [{:.4},{:.4}] and [{:.4},{:.4}] overlap",
                        a.interval.0.approx(),
                        a.interval.1.approx(),
                        b.interval.0.approx(),
                        b.interval.1.approx()
                    );
                }
            }
        }
    }
}

/// Finite type: no components, and the gap depends only on root phases.
#[test]
fn finite_type_has_no_components() {
    for q in [a2(), a3(), a4(), d4()] {
        for z in sample_charges(q.n()).iter().take(10) {
            let (_, _, ss, comps) = stage(&q, z, 8);
            assert!(comps.is_empty());
            assert!(!ss.is_empty());
        }
    }
}

/// Exchange check at desk scale: tilt closure between the standard heart
/// and its shift matches an independent enumeration of two-term
/// simple-minded collections.
#[test]
fn a2_exchange_between_standard_and_shift() {
    let q = a2();
    let f = forms::<I>(&q);
    let table = HomExtTable::new(f.clone(), 12);

    // Closure under tilts, restricted to shifts in {0, 1}.
    let in_window = |h: &HeartSMC<I>| h.simples.iter().all(|(_, k)| *k == 0 || *k == 1);
    let mut seen: BTreeSet<Vec<(V, i64)>> = BTreeSet::new();
    let std_heart = HeartSMC::<I>::standard(2);
    seen.insert(std_heart.key());
    let mut frontier = vec![std_heart];
    while let Some(h) = frontier.pop() {
        for idx in 0..2 {
            for dir in [TiltDirection::Left, TiltDirection::Right] {
                let t = tilt_heart(&h, idx, dir, &table).unwrap();
                if in_window(&t) && seen.insert(t.key()) {
                    frontier.push(t);
                }
            }
        }
    }

    // Independent enumeration: pairs of shifted positive roots forming a
    // unimodular collection with no graded hom in degrees ≤ 0.
    let roots = [
        V::from_ints(&[1, 0]),
        V::from_ints(&[0, 1]),
        V::from_ints(&[1, 1]),
    ];
    let mut brute: BTreeSet<Vec<(V, i64)>> = BTreeSet::new();
    let entries: Vec<(V, i64)> = roots
        .iter()
        .flat_map(|r| [(r.clone(), 0i64), (r.clone(), 1i64)])
        .collect();
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            let pair = [entries[i].clone(), entries[j].clone()];
            let m: Vec<Vec<I>> = (0..2)
                .map(|r| {
                    pair.iter()
                        .map(|(root, k)| {
                            let sign = if k % 2 == 0 { 1 } else { -1 };
                            root.coord(r) * sign as I
                        })
                        .collect()
                })
                .collect();
            if !linalg::det_int(&m).abs().is_one() {
                continue;
            }
            let ok = |a: &(V, i64), b: &(V, i64)| -> bool {
                let hom = table.generic_hom(&a.0, &b.0).unwrap();
                let ext = table.generic_ext(&a.0, &b.0).unwrap();
                (hom == 0 || a.1 > b.1) && (ext == 0 || a.1 >= b.1)
            };
            if ok(&pair[0], &pair[1]) && ok(&pair[1], &pair[0]) {
                let mut key = pair.to_vec();
                key.sort();
                brute.insert(key);
            }
        }
    }
    assert_eq!(seen, brute, "tilt closure differs from the enumeration");
    assert_eq!(seen.len(), 5);
}

/// The window heart's internal dimension estimate sits strictly below the
/// ambient estimate plus one.
#[test]
fn window_heart_dimension_consistency() {
    for q in [a2(), a3(), k2()] {
        for z in sample_charges(q.n()).iter().take(12) {
            let (f, table, ss, comps) = stage(&q, z, 8);
            let gap = phase_gap(&comps, &ss).unwrap();
            let Ok(heart) = heart_simples(&gap, &ss, &f) else {
                continue;
            };
            // Integer estimate for the heart: largest degree carrying a
            // nonzero graded hom between its simples.
            let mut heart_gldim: i64 = 0;
            for a in &heart.simples {
                for b in &heart.simples {
                    let hom = table.generic_hom(&a.root, &b.root).unwrap();
                    let ext = table.generic_ext(&a.root, &b.root).unwrap();
                    if hom > 0 {
                        heart_gldim = heart_gldim.max(b.shift - a.shift);
                    }
                    if ext > 0 {
                        heart_gldim = heart_gldim.max(b.shift - a.shift + 1);
                    }
                }
            }
            let est = gldim_estimate(z, &table, &q, 8, &RootOptions::default()).unwrap();
            // heart_gldim − 1 < estimate, exactly.
            let strict = match &est.witness {
                None => heart_gldim - 1 < 0,
                Some(w) => {
                    let lhs = w.to_phase.shifted(w.degree as i64);
                    let rhs = w.from_phase.shifted(heart_gldim - 1);
                    lhs > rhs
                }
            };
            assert!(
                strict,
                "window heart estimate {heart_gldim} is not below the ambient estimate + 1"
            );
        }
    }
}
