mod common;

use tensekit::enumerate::{frames, frames_up_to, isomorphic};
use tensekit::frame::GeneralFrame;
use tensekit::morphism::{check, check_frames, find_surjections, images_up_to, is_image, is_sufficient, TMorphism, Violation};
use tensekit::{Error, Frame, WorldSet};

/// Forth and back by the definition, on explicit sets.
fn naive_t_morphism(s: &Frame, t: &Frame, m: &[usize]) -> bool {
    (0..s.len()).all(|x| {
        let fwd: Vec<usize> = (0..t.len()).filter(|&b| (0..s.len()).any(|y| s.has_edge(x, y) && m[y] == b)).collect();
        let bwd: Vec<usize> = (0..t.len()).filter(|&b| (0..s.len()).any(|y| s.has_edge(y, x) && m[y] == b)).collect();
        fwd == t.succ(m[x]).to_vec() && bwd == t.pred(m[x]).to_vec()
    })
}

fn all_maps(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..k.pow(n as u32)).map(|mut c| (0..n).map(|_| { let d = c % k; c /= k; d }).collect()).collect()
}

#[test]
fn surjection_search_matches_brute_force() {
    let sources: Vec<Frame> = frames_up_to(3).collect();
    let targets: Vec<Frame> = frames_up_to(3).collect();
    for s in &sources {
        for t in &targets {
            let mut want: Vec<Vec<usize>> = all_maps(s.len(), t.len())
                .into_iter()
                .filter(|m| (0..t.len()).all(|b| m.contains(&b)) && naive_t_morphism(s, t, m))
                .collect();
            let mut got = find_surjections(s, t, usize::MAX);
            want.sort();
            got.sort();
            assert_eq!(got, want, "{s:?} -> {t:?}");
            for m in &got {
                assert_eq!(check_frames(s, t, m).unwrap(), None);
            }
        }
    }
}

#[test]
fn limits_and_degenerate_targets() {
    let c3 = Frame::cluster(3);
    let dot = Frame::reflexive_chain(1);
    assert_eq!(find_surjections(&c3, &dot, 5).len(), 1);
    assert!(find_surjections(&dot, &c3, 5).is_empty());
    assert!(find_surjections(&c3, &Frame::cluster(2), 0).is_empty());
    assert_eq!(find_surjections(&c3, &Frame::cluster(2), 2).len(), 2);
}

#[test]
fn violations_name_the_failing_condition() {
    let line = Frame::new(&["a", "b"], &[("a", "b")]).unwrap();
    let dot = Frame::reflexive_chain(1);
    assert!(matches!(check_frames(&line, &dot, &[0, 0]).unwrap(), Some(Violation::Back { world: 0 })));
    assert!(matches!(check_frames(&line.transpose(), &dot, &[0, 0]).unwrap(), Some(Violation::Forth { world: 0 })));
    assert!(matches!(check_frames(&line, &dot, &[0]), Err(Error::MapNotTotal(_))));
    assert!(matches!(check_frames(&line, &dot, &[0, 3]), Err(Error::MapNotTotal(_))));

    // The cluster collapse is relationally fine but the target atom's preimage is not internal.
    let c2 = Frame::cluster(2);
    let coarse = GeneralFrame::close_internal(&c2, &[]);
    let two = GeneralFrame::kripke(c2.clone());
    assert_eq!(check(&two, &GeneralFrame::kripke(dot.clone()), &[0, 0]).unwrap(), None);
    assert!(matches!(check(&coarse, &two, &[0, 1]).unwrap(), Some(Violation::Admissibility { .. })));
}

#[test]
fn images_of_a_chain() {
    let ch3 = Frame::reflexive_chain(3);
    let imgs = images_up_to(&ch3, 3);
    assert_eq!(imgs.len(), 3);
    for (i, g) in imgs.iter().enumerate() {
        assert!(isomorphic(g, &Frame::reflexive_chain(i + 1)));
    }
    for g in frames(2) {
        assert_eq!(is_image(&ch3, &g), imgs.iter().any(|h| isomorphic(h, &g)));
    }
}

#[test]
fn sufficiency() {
    let zig = Frame::new(&["a", "b", "c"], &[("a", "b"), ("c", "b")]).unwrap();
    let edge = Frame::new(&["x", "y"], &[("x", "y")]).unwrap();
    let m = TMorphism { source: GeneralFrame::kripke(zig.clone()), target: GeneralFrame::kripke(edge.clone()), map: vec![0, 1, 0] };
    assert!(is_sufficient(&m, &zig.all()).unwrap());
    // b needs its predecessors a and c.
    assert!(!is_sufficient(&m, &zig.set_of(&["a", "b"]).unwrap()).unwrap());
    assert!(!is_sufficient(&m, &zig.set_of(&["b"]).unwrap()).unwrap());
    let bad = TMorphism { map: vec![0, 0, 0], ..m.clone() };
    assert!(matches!(is_sufficient(&bad, &WorldSet::full(3)), Err(Error::NotMorphism(_))));
}
