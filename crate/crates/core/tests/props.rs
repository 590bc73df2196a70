//! Property tests for the exact kernels.

mod common;

use common::*;
use kacstab::charge::CentralCharge;
use kacstab::gauss::Gaussian;
use kacstab::homext::HomExtTable;
use kacstab::lattice::{boxed_vectors, LatticeVector};
use kacstab::quiver::{classify_type, forms, FormPair, Quiver};
use kacstab::roots::{real_roots_up_to, reflect, RootOptions};
use kacstab::stability::{hn_classes, is_semistable_class};
use num_rational::Ratio;
use proptest::prelude::*;

type V = LatticeVector<I>;

/// Small pool of connected acyclic quivers for property sampling.
fn quiver_pool() -> Vec<Quiver> {
    vec![a2(), a3(), a4(), d4(), k2(), k3(), affine_a2_a(), affine_a2_b()]
}

fn arb_quiver() -> impl Strategy<Value = Quiver> {
    (0..quiver_pool().len()).prop_map(|i| quiver_pool()[i].clone())
}

fn arb_vector(n: usize) -> impl Strategy<Value = V> {
    proptest::collection::vec(-6i64..=6, n).prop_map(|c| V::from_ints(&c))
}

fn arb_charge(n: usize) -> impl Strategy<Value = CentralCharge<I>> {
    proptest::collection::vec(((-5i64..=5), (0i64..=5), (1i64..=4)), n).prop_map(|parts| {
        let vals = parts
            .into_iter()
            .map(|(x, y, d)| {
                let x = if y == 0 { -(x.abs().max(1)) } else { x };
                Gaussian::new(Ratio::new(x as I, d as I), Ratio::new(y as I, d as I))
            })
            .collect();
        CentralCharge::validate(vals).unwrap()
    })
}

proptest! {
    #[test]
    fn cartan_is_symmetrized_euler(q in arb_quiver()) {
        let f: FormPair<I> = forms(&q);
        let n = f.n();
        for i in 0..n {
            prop_assert_eq!(f.cartan()[i][i], 2);
            for j in 0..n {
                prop_assert_eq!(
                    f.cartan()[i][j],
                    f.euler()[i][j] + f.euler()[j][i]
                );
            }
        }
    }

    #[test]
    fn classification_invariance(q in arb_quiver(), seed in any::<u64>()) {
        let f: FormPair<I> = forms(&q);
        let base = classify_type(&f).unwrap();
        // Relabeling by a random permutation.
        let n = q.n();
        let mut rng = SplitMix(seed);
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.below((i + 1) as u64) as usize);
        }
        let relabeled: Vec<(usize, usize)> = q
            .arrows()
            .iter()
            .map(|&(s, t)| (perm[s], perm[t]))
            .collect();
        let qp = Quiver::new(n, &relabeled).unwrap();
        let tp = classify_type(&forms::<I>(&qp)).unwrap();
        // Reversal of all arrows.
        let reversed: Vec<(usize, usize)> = q.arrows().iter().map(|&(s, t)| (t, s)).collect();
        let qr = Quiver::new(n, &reversed).unwrap();
        let tr = classify_type(&forms::<I>(&qr)).unwrap();
        let kind = |t: &kacstab::quiver::QuiverType<I>| match t {
            kacstab::quiver::QuiverType::Finite => 0,
            kacstab::quiver::QuiverType::Affine { .. } => 1,
            kacstab::quiver::QuiverType::Indefinite => 2,
        };
        prop_assert_eq!(kind(&base), kind(&tp));
        prop_assert_eq!(kind(&base), kind(&tr));
    }

    #[test]
    fn reflections_are_involutive_isometries(
        q in arb_quiver(),
        seed in any::<u64>(),
    ) {
        let f: FormPair<I> = forms(&q);
        let n = f.n();
        let mut rng = SplitMix(seed);
        let v = V::from_ints(&(0..n).map(|_| rng.range_i64(-6, 6)).collect::<Vec<_>>());
        let w = V::from_ints(&(0..n).map(|_| rng.range_i64(-6, 6)).collect::<Vec<_>>());
        for i in 0..n {
            let rv = reflect(&f, i, &v).unwrap();
            prop_assert_eq!(reflect(&f, i, &rv).unwrap(), v.clone());
            let rw = reflect(&f, i, &w).unwrap();
            prop_assert_eq!(f.sym(&rv, &rw), f.sym(&v, &w));
        }
    }

    #[test]
    fn hom_minus_ext_is_chi(q in arb_quiver(), seed in any::<u64>()) {
        let f: FormPair<I> = forms(&q);
        let table = HomExtTable::new(f.clone(), 6);
        let n = f.n();
        let mut rng = SplitMix(seed);
        let b = V::from_ints(&(0..n).map(|_| rng.range_i64(0, 3)).collect::<Vec<_>>());
        let g = V::from_ints(&(0..n).map(|_| rng.range_i64(0, 3)).collect::<Vec<_>>());
        let hom = table.generic_hom(&b, &g).unwrap() as i128;
        let ext = table.generic_ext(&b, &g).unwrap() as i128;
        prop_assert!(hom >= 0 && ext >= 0);
        prop_assert_eq!(hom - ext, f.chi(&b, &g));
    }

    #[test]
    fn generic_sub_is_transitive(q in arb_quiver(), seed in any::<u64>()) {
        let f: FormPair<I> = forms(&q);
        let table = HomExtTable::new(f, 4);
        let n = q.n();
        let mut rng = SplitMix(seed);
        let alpha = V::from_ints(&(0..n).map(|_| rng.range_i64(0, 3)).collect::<Vec<_>>());
        let subs = table.subs_of(&alpha).unwrap();
        for beta in &subs.all {
            let inner = table.subs_of(beta).unwrap();
            for gamma in &inner.all {
                prop_assert!(
                    table.generic_sub(gamma, &alpha).unwrap(),
                    "{gamma} ⊆ {beta} ⊆ {alpha} but not {gamma} ⊆ {alpha}"
                );
            }
        }
    }

    #[test]
    fn phase_order_is_invariant_under_rotation(
        v1 in arb_vector(2), v2 in arb_vector(2),
        z in arb_charge(2),
        quarter in 0i64..4,
    ) {
        use kacstab::charge::{PhaseKey, Rotation};
        let pos = |v: &V| V::from_ints(&v.coords().iter().map(|c| c.abs().max(1) as i64).collect::<Vec<_>>());
        let (a, b) = (pos(&v1), pos(&v2));
        let pa = z.phase(&a).unwrap();
        let pb = z.phase(&b).unwrap();
        let (vals, shift) = z.rotate(&Rotation::QuarterTurns(quarter)).unwrap();
        // Rotated phase on the cover: original plus the uniform shift. The
        // translation must preserve the order exactly.
        let sa = pa.angle_add(&shift);
        let sb = pb.angle_add(&shift);
        prop_assert_eq!(pa.cmp(&pb), sa.cmp(&sb));
        // And it must agree with a direct evaluation of the rotated values,
        // up to sheet normalization (same ray on the circle).
        let eval = |v: &V| {
            let mut acc = Gaussian::zero();
            for (c, zv) in v.coords().iter().zip(&vals) {
                let f = Ratio::new(*c, 1);
                acc = acc + zv.scale(&f);
            }
            acc
        };
        let qa = PhaseKey::from_point(&eval(&a), 0).unwrap();
        let qb = PhaseKey::from_point(&eval(&b), 0).unwrap();
        prop_assert_eq!(sa.fold(), qa.fold());
        prop_assert_eq!(sb.fold(), qb.fold());
    }

    #[test]
    fn hn_parts_sum_and_decrease(q in arb_quiver(), seed in any::<u64>()) {
        let f: FormPair<I> = forms(&q);
        let table = HomExtTable::new(f, 6);
        let n = q.n();
        let mut rng = SplitMix(seed);
        let alpha = V::from_ints(
            &(0..n).map(|_| rng.range_i64(0, 2)).collect::<Vec<_>>(),
        );
        if alpha.is_zero() {
            return Ok(());
        }
        let charges = charge_grid(n, 1, seed);
        let z = &charges[0];
        let parts = hn_classes(z, &table, &alpha).unwrap();
        let mut sum = V::zeros(n);
        for (v, _) in &parts {
            sum = &sum + v;
            prop_assert!(is_semistable_class(z, &table, v).unwrap());
        }
        prop_assert_eq!(sum, alpha.clone());
        for w in parts.windows(2) {
            prop_assert!(w[0].1 > w[1].1, "phases must strictly decrease");
        }
        if is_semistable_class(z, &table, &alpha).unwrap() {
            prop_assert_eq!(parts.len(), 1);
        }
    }

    #[test]
    fn root_sets_negation_symmetric_and_monotone(
        q in arb_quiver(),
        h in 1usize..6,
    ) {
        let f: FormPair<I> = forms(&q);
        let opts = RootOptions::default();
        let small = real_roots_up_to(&f, h, &opts).unwrap();
        let large = real_roots_up_to(&f, 2 * h, &opts).unwrap();
        prop_assert!(small.is_subset(&large));
        for r in &small {
            prop_assert!(small.contains(&-r));
        }
    }

    #[test]
    fn f_sq_is_scale_invariant(z in arb_charge(2), v in arb_vector(2), k in 1i64..5) {
        let pos = V::from_ints(&v.coords().iter().map(|c| c.abs().max(1) as i64).collect::<Vec<_>>());
        let scaled = pos.scaled(k);
        prop_assert_eq!(z.f_sq(&pos).unwrap(), z.f_sq(&scaled).unwrap());
    }

    #[test]
    fn quiver_parse_round_trip(q in arb_quiver()) {
        let json = kacstab::json::to_compact(&kacstab::json::quiver_value(&q));
        let back = Quiver::parse(&json).unwrap();
        prop_assert_eq!(q.arrows(), back.arrows());
        prop_assert_eq!(q.n(), back.n());
    }
}

/// Enumerated sets of a bigger slack run agree with the default slack.
#[test]
fn slack_completeness() {
    for q in quiver_pool() {
        let f: FormPair<I> = forms(&q);
        for h in [4usize, 8] {
            let a = real_roots_up_to(&f, h, &RootOptions { slack: 3, budget: 1_000_000 }).unwrap();
            let b = real_roots_up_to(&f, h, &RootOptions { slack: 6, budget: 1_000_000 }).unwrap();
            assert_eq!(a, b, "slack 3 vs 6 disagree on {q:?} at h={h}");
        }
    }
}

/// Boxed iteration respects the cap (helper sanity).
#[test]
fn boxed_vectors_cover_the_box() {
    let cap = V::from_ints(&[1, 2, 1]);
    let all = boxed_vectors(&cap);
    assert_eq!(all.len(), 2 * 3 * 2);
}
