mod common;

use std::collections::BTreeSet;
use tensekit::constructions::{bilayer, boost_rdg, combine, projection, satisfying_valuation, unfold, BoostMode};
use tensekit::enumerate::frames_up_to;
use tensekit::formula::parse;
use tensekit::frame::{Closure, FrameJson};
use tensekit::morphism::{check, check_frames};
use tensekit::semantics::truth_set;
use tensekit::constructions::pull_back;
use tensekit::Frame;

fn sample() -> Frame {
    Frame::new(&["w", "v", "u"], &[("w", "v"), ("w", "u")]).unwrap()
}

fn shape(f: &Frame) -> (BTreeSet<String>, BTreeSet<(String, String)>) {
    let j = FrameJson::from_frame(f);
    (j.worlds.into_iter().collect(), j.edges.into_iter().collect())
}

fn expect(worlds: &[&str], edges: &[(&str, &str)]) -> (BTreeSet<String>, BTreeSet<(String, String)>) {
    (worlds.iter().map(|s| s.to_string()).collect(), edges.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect())
}

#[test]
fn pinned_unfoldings() {
    let f = sample();
    assert_eq!(shape(&unfold(&f, 0, 2, 1, false).unwrap().frame), expect(&["w@0", "v@0", "u@0"], &[("w@0", "v@0"), ("w@0", "u@0")]));
    assert_eq!(
        shape(&unfold(&f, 0, 2, 2, false).unwrap().frame),
        expect(&["w@0", "v@0", "u@0", "w@1", "v@1"], &[("w@0", "v@0"), ("w@0", "u@0"), ("w@1", "u@0"), ("w@1", "v@1")])
    );
    assert_eq!(
        shape(&unfold(&f, 0, 2, 4, false).unwrap().frame),
        expect(
            &["w@0", "v@0", "u@0", "w@1", "v@1", "v@2", "u@2", "w@3", "v@3"],
            &[
                ("w@0", "v@0"), ("w@0", "u@0"), ("w@1", "u@0"), ("w@1", "v@1"),
                ("w@1", "v@2"), ("w@1", "u@2"), ("w@3", "u@2"), ("w@3", "v@3"),
            ]
        )
    );
}

#[test]
fn combine_reroutes_through_the_glue_point() {
    let f = Frame::new(&["a", "b"], &[("a", "b")]).unwrap();
    let g = Frame::new(&["b", "c"], &[("b", "c"), ("b", "b")]).unwrap();
    let h = combine(&f, 1, &g, 0, false).unwrap();
    // `b` of G merges into `b` of F; its loop is not transferred; `c` keeps its id.
    assert_eq!(shape(&h), expect(&["a", "b", "c"], &[("a", "b"), ("b", "c")]));
    let ht = combine(&f, 1, &g, 0, true).unwrap();
    assert!(ht.has_edge(0, 2) && ht.is_transitive());
    // Clashing ids are primed.
    let k = combine(&f, 0, &f, 0, false).unwrap();
    assert!(k.ids().contains(&"b'".to_string()));
    assert!(combine(&f, 5, &g, 0, false).is_err());
}

#[test]
fn unfolding_keeps_rootedness_reflexivity_and_projects() {
    for f in frames_up_to(3).filter(|f| f.is_rooted() && f.len() >= 2) {
        for (w, u) in [(0, 1), (1, 0)] {
            for n in 1..=5 {
                let un = unfold(&f, w, u, n, false).unwrap();
                assert!(un.frame.is_rooted());
                assert_eq!(un.frame.is_reflexive(), f.is_reflexive());
                assert_eq!(check_frames(&un.frame, &f, &un.projection).unwrap(), None);
                for (k, row) in un.position.iter().enumerate() {
                    for (x, &pos) in row.iter().enumerate() {
                        assert_eq!(un.projection[pos], x);
                        assert!(un.copies[pos].contains(&k));
                    }
                }
                let p = projection(&f, w, u, n, false).unwrap();
                assert_eq!(check(&p.source, &p.target, &p.map).unwrap(), None);
            }
        }
    }
}

#[test]
fn bilayer_is_a_non_symmetric_cover() {
    for n in 1..=3 {
        let (g, m) = bilayer(&Frame::cluster(n)).unwrap();
        assert_eq!(g.len(), 2 * n);
        assert!(!g.is_symmetric() && g.is_transitive());
        assert_eq!(check(&m.source, &m.target, &m.map).unwrap(), None);
    }
    assert!(bilayer(&sample()).is_err());
}

#[test]
fn boosting_examples() {
    let f = sample();
    let phi = parse("<>#t").unwrap();
    let b = boost_rdg(&f, 0, &phi, 1, BoostMode::Plain).unwrap();
    assert_eq!(b.frame.id(b.world), "w@0");
    assert!(b.frame.rdg() >= 1);
    let v = satisfying_valuation(&f, &phi, 0).unwrap();
    assert!(truth_set(&b.frame, &pull_back(&v, &b.projection), &phi).unwrap().contains(b.world));
    assert_eq!(check_frames(&b.frame, &f, &b.projection).unwrap(), None);

    let b0 = boost_rdg(&f, 0, &phi, 0, BoostMode::Plain).unwrap();
    assert!(truth_set(&b0.frame, &pull_back(&v, &b0.projection), &phi).unwrap().contains(b0.world));

    let ch2 = Frame::reflexive_chain(2);
    let top = parse("#t").unwrap();
    let r1 = boost_rdg(&ch2, 0, &top, 1, BoostMode::Transitive).unwrap();
    let r2 = boost_rdg(&ch2, 0, &top, 2, BoostMode::Transitive).unwrap();
    assert!(r1.frame.is_transitive() && r2.frame.is_transitive());
    assert!(r1.frame.rdg() >= 1 && r2.frame.rdg() > r1.frame.rdg());

    // A single reflexive point goes through the two-layer cover.
    let dot = Frame::reflexive_chain(1);
    let c = boost_rdg(&dot, 0, &top, 2, BoostMode::Transitive).unwrap();
    assert!(c.via_bilayer && c.frame.rdg() >= 2);

    assert!(boost_rdg(&f, 1, &phi, 1, BoostMode::Plain).is_err());
    assert!(boost_rdg(&f.closure(Closure::Symmetric), 0, &top, 1, BoostMode::Transitive).is_err());
}
