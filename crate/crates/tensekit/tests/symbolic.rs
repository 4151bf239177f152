use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use tensekit::families::{gamma, gamma_star};
use tensekit::frame::{Closure, Dir};
use tensekit::semantics::{truth_set, Valuation};
use tensekit::symbolic::*;
use tensekit::WorldSet;

fn kt(i: &[u64]) -> SymbolicFrame {
    SymbolicFrame::with_default_local(Family::Kt, i).unwrap()
}

fn s4(i: &[u64]) -> SymbolicFrame {
    SymbolicFrame::with_default_local(Family::S4t, i).unwrap()
}

fn omega(fin: bool, e: &BTreeSet<u64>) -> OmegaSet {
    if fin {
        OmegaSet::Fin(e.clone())
    } else {
        OmegaSet::Cofin(e.clone())
    }
}

proptest! {
    #[test]
    fn omega_algebra_matches_pointwise(fa: bool, ea in prop::collection::btree_set(0u64..30, 0..10),
                                        fb: bool, eb in prop::collection::btree_set(0u64..30, 0..10)) {
        let a = omega(fa, &ea);
        let b = omega(fb, &eb);
        let (u, n, c) = (a.union(&b), a.intersection(&b), a.complement());
        for i in 0..40 {
            prop_assert_eq!(u.contains(i), a.contains(i) || b.contains(i));
            prop_assert_eq!(n.contains(i), a.contains(i) && b.contains(i));
            prop_assert_eq!(c.contains(i), !a.contains(i));
        }
        prop_assert_eq!(c.complement(), a.clone());
        prop_assert_eq!(a.least(), (0..40).find(|&i| a.contains(i)));
    }
}

#[test]
fn kt_image_examples() {
    let sf = kt(&[2, 3]);
    let ul = sf.point("uL").unwrap();
    let r = sf.image(&sf.singleton(SymWorld::Pt(ul)));
    assert!(r.reg[0].is_all());
    let pre = sf.preimage(&sf.singleton(SymWorld::Idx(0, 4)));
    let mut expect = sf.empty();
    expect.reg[0] = OmegaSet::Fin((0..4).collect());
    for id in ["2*", "3*", "uL"] {
        expect.pts.insert(sf.point(id).unwrap());
    }
    assert_eq!(pre, expect);
    assert!(sf.image(&sf.empty()).is_empty());
    assert!(sf.preimage(&sf.empty()).is_empty());
}

fn random_window_set(sf: &SymbolicFrame, t: &Truncation, rng: &mut ChaCha8Rng) -> RegionSet {
    let mut u = WorldSet::empty(t.positions.len());
    for x in 0..t.positions.len() {
        if rng.gen_ratio(1, 4) {
            u.insert(x);
        }
    }
    t.lift(sf, &u)
}

#[test]
fn images_agree_with_explicit_truncation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for sf in [kt(&[2, 3]), kt(&[1]), s4(&[2, 3]), s4(&[1, 4])] {
        let t = sf.truncate(9).unwrap();
        let base = t.frame.base();
        for _ in 0..200 {
            let u = random_window_set(&sf, &t, &mut rng);
            let w = t.restrict(&u);
            assert_eq!(t.restrict(&sf.image(&u)), base.image(Dir::Fwd, &w));
            assert_eq!(t.restrict(&sf.preimage(&u)), base.image(Dir::Bwd, &w));
        }
    }
}

#[test]
fn s4_closed_form_matches_generator_closure() {
    for i in [vec![], vec![1], vec![2, 3], vec![1, 3, 4]] {
        let sf = s4(&i);
        for n in sf.max_i() + 2..=12 {
            let closed = sf.s4t_generator_frame(n).unwrap().closure(Closure::ReflexiveTransitive);
            let t = sf.truncate(n).unwrap();
            let got: Vec<_> = t.frame.base().edges().collect();
            let want: Vec<_> = closed.edges().collect();
            assert_eq!(got, want, "I = {i:?}, N = {n}");
        }
    }
}

#[test]
fn s4_closed_form_table() {
    let sf = s4(&[2, 3]);
    let w = |id: &str| sf.world(id).unwrap();
    for i in 0..8u64 {
        for j in 0..8u64 {
            assert_eq!(sf.has_edge(w(&format!("a{i}")), w(&format!("a{j}"))), i >= j);
            assert_eq!(sf.has_edge(w(&format!("a{i}")), w(&format!("b{j}"))), i > j);
            assert_eq!(sf.has_edge(w(&format!("b{i}")), w(&format!("b{j}"))), i >= j);
            assert_eq!(sf.has_edge(w(&format!("b{i}")), w(&format!("a{j}"))), i >= j + 2);
        }
    }
    for c in [0u64, 2, 3] {
        for j in 0..8u64 {
            let inside = c != 0;
            assert_eq!(sf.has_edge(w(&format!("c{c}")), w(&format!("a{j}"))), inside && c >= j);
            assert_eq!(sf.has_edge(w(&format!("c{c}")), w(&format!("b{j}"))), inside && c > j);
        }
    }
    let succ_names = |id: &str| -> BTreeSet<String> {
        let s = sf.image(&sf.singleton(w(id)));
        let t = sf.truncate(6).unwrap();
        t.frame.base().names(&t.restrict(&s)).into_iter().collect()
    };
    let set = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
    assert_eq!(succ_names("x2"), set(&["x2", "x1", "a0"]));
    assert_eq!(succ_names("y1"), set(&["y1", "y0", "b0"]));
    assert_eq!(succ_names("x0"), set(&["x0", "x1"]));
    assert_eq!(succ_names("uL"), set(&["uL", "r1"]));
    let r0 = sf.image(&sf.singleton(w("r0")));
    assert!(r0.reg.iter().all(OmegaSet::is_all));
}

#[test]
fn kt_truncation_worlds() {
    let sf = kt(&[2]);
    let t = sf.truncate(5).unwrap();
    let ids: BTreeSet<&str> = t.frame.base().ids().iter().map(String::as_str).collect();
    let want: BTreeSet<&str> = ["wL", "m", "uL", "0", "1", "2", "3", "4", "5", "2*"].into_iter().collect();
    assert_eq!(ids, want);
    assert!(sf.truncate(3).is_err());
}

#[test]
fn s4_truncation_shows_the_ladder_picture() {
    let sf = s4(&[2, 3, 5]);
    let t = sf.truncate(8).unwrap();
    let b = t.frame.base();
    let e = |x: &str, y: &str| b.has_edge(b.index_of(x).unwrap(), b.index_of(y).unwrap());
    let drawn = [
        ("a1", "a0"), ("a4", "a3"), ("b1", "b0"), ("b4", "b3"), ("a1", "b0"), ("a4", "b3"), ("b2", "a0"),
        ("b4", "a2"), ("x0", "x1"), ("x2", "x1"), ("x2", "a0"), ("y1", "y0"), ("y1", "b0"), ("c2", "c0"),
        ("c2", "a2"), ("c3", "c2"), ("c3", "a3"), ("c5", "a5"), ("r0", "r1"), ("r0", "r'"), ("uL", "r1"),
        ("r0", "a8"), ("r0", "b8"), ("r0", "c5"),
    ];
    for (x, y) in drawn {
        assert!(e(x, y), "{x} -> {y}");
    }
    let absent = [
        ("a0", "a1"), ("b1", "a0"), ("a1", "b1"), ("x0", "x2"), ("c0", "a0"), ("c2", "c3"), ("r1", "r0"),
        ("uL", "r0"), ("a3", "c3"), ("y0", "y1"), ("b0", "a0"),
    ];
    for (x, y) in absent {
        assert!(!e(x, y), "{x} -/-> {y}");
    }
    assert!(b.is_reflexive() && b.is_transitive());
}

#[test]
fn sampled_sets_have_finite_or_cofinite_shape_and_complement_is_involutive() {
    for sf in [kt(&[2, 3]), s4(&[2, 3])] {
        let mut s = AdmissibleSampler::new(&sf, 3);
        for _ in 0..200 {
            let u = s.sample(6);
            assert_eq!(u.reg.len(), sf.regions().len());
            assert_eq!(u.complement().complement(), u);
        }
        let g = sample_admissible(&sf, 11, 0);
        assert!(g.is_subset(&sf.local_set()));
    }
}

/// Variable-free formulas: symbolic truth restricted to a window agrees with the explicit
/// evaluator on worlds whose md-ball stays inside the window.
#[test]
fn variable_free_truth_is_coherent_with_truncations() {
    for sf in [kt(&[2, 3]), s4(&[2, 3])] {
        let k = sf.k();
        let formulas = [gamma(0, k), gamma(2, k), gamma_star(3, k)];
        for n in [8, 12] {
            let t = sf.truncate(n).unwrap();
            for f in &formulas {
                let sym = t.restrict(&sf.truth_set(&Default::default(), f).unwrap());
                let exp = truth_set(t.frame.base(), &Valuation::new(), f).unwrap();
                let inner = t.interior(&sf, f.modal_degree() as usize);
                assert_eq!(sym.intersection(&inner), exp.intersection(&inner));
            }
        }
    }
}

#[test]
fn json_round_trip() {
    let sf = s4(&[2, 3]);
    let j = serde_json::to_string(&sf.to_json()).unwrap();
    let back = SymbolicFrame::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
    assert_eq!(back.points(), sf.points());
    assert_eq!(back.k(), sf.k());
}

#[test]
fn default_local_parts_meet_their_requirements() {
    for fam in [Family::Kt, Family::S4t] {
        LocalPart::default_for(fam).verify(fam).unwrap();
    }
}
