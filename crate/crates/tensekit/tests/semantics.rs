mod common;

use common::{arb_formula, arb_frame, holds, matrix, valuation_of};
use proptest::prelude::*;
use std::ops::ControlFlow;
use tensekit::formula::parse;
use tensekit::semantics::eval::for_each_batch;
use tensekit::semantics::{
    frame_class_check, sampled_valid, truth_set, truth_set_general, valid, valid_at, valid_worlds, FrameClass, Valuation, Verdict,
};
use tensekit::{Error, Frame, GeneralFrame, WorldSet};

fn to_valuation(f: &Frame, val: &[Vec<bool>]) -> Valuation {
    val.iter()
        .enumerate()
        .map(|(p, row)| (p as u32, WorldSet::from_iter(f.len(), (0..f.len()).filter(|&y| row[y]))))
        .collect()
}

/// Worlds true under every valuation, by brute force.
fn brute_valid_worlds(f: &Frame, phi: &tensekit::Formula, nv: usize) -> Vec<bool> {
    let r = matrix(f);
    let n = f.len();
    (0..n).map(|x| (0..1u64 << (nv * n)).all(|c| holds(&r, &valuation_of(c, nv, n), phi, x))).collect()
}

#[test]
fn reflexivity_axiom_on_a_chain() {
    let f = Frame::new(&["bot", "top"], &[("bot", "bot"), ("bot", "top"), ("top", "top")]).unwrap();
    let g = GeneralFrame::kripke(f.clone());
    assert!(valid(&g, &parse("[]p0 -> p0").unwrap(), 1 << 20).is_valid());
    let v: Valuation = [(0, f.set_of(&["top"]).unwrap())].into();
    assert!(truth_set(&f, &v, &parse("[]p0 -> p0").unwrap()).unwrap().contains(1));
    match valid(&g, &parse("p0 -> []p0").unwrap(), 1 << 20) {
        Verdict::Counter { valuation, world } => {
            let t = truth_set(&f, &valuation, &parse("p0 -> []p0").unwrap()).unwrap();
            assert!(!t.contains(world));
        }
        other => panic!("expected a counter-model, got {other:?}"),
    }
}

#[test]
fn missing_and_external_valuations_are_rejected() {
    let f = Frame::reflexive_chain(2);
    assert_eq!(truth_set(&f, &Valuation::new(), &parse("p3").unwrap()).unwrap_err(), Error::UnassignedVariable(3));
    let g = GeneralFrame::close_internal(&f, &[]);
    let v: Valuation = [(0, WorldSet::singleton(2, 0))].into();
    assert!(matches!(truth_set_general(&g, &v, &parse("p0").unwrap()), Err(Error::NotInternal(0))));
}

#[test]
fn budget_is_reported() {
    let f = Frame::cluster(4);
    let g = GeneralFrame::kripke(f);
    let phi = parse("p0 & p1 & p2 -> []p3").unwrap();
    assert!(matches!(valid(&g, &phi, 10), Verdict::BudgetExceeded { .. }));
}

#[test]
fn frame_classes() {
    let ch = Frame::reflexive_chain(3);
    assert!(frame_class_check(&ch, FrameClass::K4t));
    assert!(frame_class_check(&ch, FrameClass::S4t));
    assert!(!frame_class_check(&ch, FrameClass::S5t));
    assert!(frame_class_check(&Frame::cluster(3), FrameClass::S5t));
    let line = Frame::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
    assert!(!frame_class_check(&line, FrameClass::K4t));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn truth_sets_match_the_clauses(f in arb_frame(4), phi in arb_formula(2), code in any::<u64>()) {
        let n = f.len();
        let val = valuation_of(code & ((1 << (2 * n)) - 1), 2, n);
        let t = truth_set(&f, &to_valuation(&f, &val), &phi).unwrap();
        let r = matrix(&f);
        for x in 0..n {
            prop_assert_eq!(t.contains(x), holds(&r, &val, &phi, x));
        }
    }

    #[test]
    fn validity_matches_brute_force(f in arb_frame(3), phi in arb_formula(2)) {
        let want = brute_valid_worlds(&f, &phi, 2);
        let g = GeneralFrame::kripke(f.clone());
        prop_assert_eq!(valid(&g, &phi, 1 << 20).is_valid(), want.iter().all(|&b| b));
        for (x, &w) in want.iter().enumerate() {
            prop_assert_eq!(valid_at(&g, &phi, x, 1 << 20).is_valid(), w);
        }
        let ws = valid_worlds(&g, std::slice::from_ref(&phi), 1 << 20).unwrap();
        prop_assert_eq!(ws[0].to_vec(), (0..f.len()).filter(|&x| want[x]).collect::<Vec<_>>());
    }

    #[test]
    fn bitsliced_batches_match_the_clauses(f in arb_frame(3), phi in arb_formula(2)) {
        let n = f.len();
        let r = matrix(&f);
        let g = GeneralFrame::kripke(f.clone());
        let mut seen = 0u64;
        for_each_batch(&g, std::slice::from_ref(&phi), &[0, 1], |b| {
            for x in 0..n {
                let words = b.machine.root(0, x);
                for (t, &live) in b.live.iter().enumerate() {
                    for bit in 0..64 {
                        if live >> bit & 1 == 0 { continue; }
                        let v = b.base + 64 * t as u64 + bit;
                        // First variable most significant; world x is bit x within each block.
                        let val = vec![
                            (0..n).map(|y| v >> (n + y) & 1 == 1).collect::<Vec<_>>(),
                            (0..n).map(|y| v >> y & 1 == 1).collect(),
                        ];
                        assert_eq!(words[t] >> bit & 1 == 1, holds(&r, &val, &phi, x));
                        seen += (x == 0) as u64;
                    }
                }
            }
            ControlFlow::Continue(())
        });
        prop_assert_eq!(seen, 1u64 << (2 * n));
    }

    #[test]
    fn general_validity_ranges_over_internal_sets(f in arb_frame(3), gen in any::<u8>(), phi in arb_formula(1)) {
        let n = f.len();
        let g = GeneralFrame::close_internal(&f, &[WorldSet::from_mask(n, gen as u64 & ((1 << n) - 1))]);
        let r = matrix(&f);
        let want = g.members().iter().all(|m| {
            let val = vec![(0..n).map(|y| m.contains(y)).collect::<Vec<_>>()];
            (0..n).all(|x| holds(&r, &val, &phi, x))
        });
        prop_assert_eq!(valid(&g, &phi, 1 << 20).is_valid(), want);
    }

    #[test]
    fn sampled_counters_are_real(f in arb_frame(4), phi in arb_formula(2), seed in any::<u64>()) {
        let g = GeneralFrame::kripke(f.clone());
        match sampled_valid(&g, &phi, 50, seed) {
            Verdict::Counter { valuation, world } => {
                prop_assert!(!truth_set(&f, &valuation, &phi).unwrap().contains(world));
            }
            // No counter found in the sample: nothing is claimed.
            other => prop_assert!(!other.is_valid()),
        }
    }
}
