#![allow(clippy::needless_range_loop)]

mod common;

use common::{arb_frame, matrix};
use proptest::prelude::*;
use tensekit::frame::general::verify_closure;
use tensekit::frame::{Closure, Dir, FrameJson};
use tensekit::{Error, Frame, GeneralFrame, WorldSet};

/// Warshall on the adjacency matrix.
fn warshall(mut r: Vec<Vec<bool>>, reflexive: bool) -> Vec<Vec<bool>> {
    let n = r.len();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                r[i][j] |= r[i][k] && r[k][j];
            }
        }
    }
    if reflexive {
        for (i, row) in r.iter_mut().enumerate() {
            row[i] = true;
        }
    }
    r
}

/// Symmetric-step distances from `x` by breadth-first search.
fn distances(r: &[Vec<bool>], x: usize) -> Vec<Option<usize>> {
    let n = r.len();
    let mut d = vec![None; n];
    d[x] = Some(0);
    let mut frontier = vec![x];
    let mut k = 0;
    while !frontier.is_empty() {
        k += 1;
        let mut next = Vec::new();
        for &a in &frontier {
            for b in 0..n {
                if (r[a][b] || r[b][a]) && d[b].is_none() {
                    d[b] = Some(k);
                    next.push(b);
                }
            }
        }
        frontier = next;
    }
    d
}

#[test]
fn construction_errors() {
    assert_eq!(Frame::new(&["a", "a"], &[]).unwrap_err(), Error::DuplicateWorld("a".into()));
    assert_eq!(Frame::new(&["a"], &[("a", "b")]).unwrap_err(), Error::UnknownWorld("b".into()));
    let f = Frame::new(&["a", "b"], &[("a", "b")]).unwrap();
    assert!(f.subframe(&WorldSet::empty(2)).is_err());
}

#[test]
fn json_round_trip_and_closures_field() {
    let j = FrameJson::parse(r#"{"worlds":["x","y"],"edges":[["x","y"]],"closures":["reflexive"]}"#).unwrap();
    let f = j.frame().unwrap();
    assert!(f.is_reflexive() && f.has_edge(0, 1) && !f.has_edge(1, 0));
    let back = FrameJson::from_frame(&f);
    assert_eq!(back.frame().unwrap(), f);
    assert!(FrameJson::parse("{").is_err());
    assert!("bogus".parse::<Closure>().is_err());
}

#[test]
fn rdg_examples() {
    let chain = Frame::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
    assert_eq!(chain.metrics().rdg, vec![2, 1, 2]);
    assert!(chain.is_rooted());
    let two = Frame::new(&["a", "b"], &[]).unwrap();
    assert!(!two.is_rooted());
}

#[test]
fn transitive_metrics_on_a_chain() {
    let ch = Frame::reflexive_chain(3);
    let m = ch.metrics();
    assert_eq!(m.dep.unwrap().iter().max(), Some(&3));
    assert!(m.wid_plus.unwrap().iter().all(|&w| w == 1));
    assert!(Frame::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap().metrics().dep.is_none());
}

#[test]
fn internal_family_is_closed() {
    let f = Frame::new(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
    let g = GeneralFrame::close_internal(&f, &[f.set_of(&["a"]).unwrap()]);
    let members = g.members();
    assert!(verify_closure(&f, &members).is_ok());
    assert!(g.contains(&f.set_of(&["a"]).unwrap()));
    assert!(GeneralFrame::from_family(f.clone(), &[f.set_of(&["a"]).unwrap()]).is_err());
    let sub = g.subframe(&f.set_of(&["b", "c"]).unwrap()).unwrap();
    assert_eq!(sub.len(), 2);
}

proptest! {
    #[test]
    fn closures_match_warshall(f in arb_frame(5)) {
        let r = matrix(&f);
        prop_assert_eq!(matrix(&f.closure(Closure::Transitive)), warshall(r.clone(), false));
        prop_assert_eq!(matrix(&f.closure(Closure::ReflexiveTransitive)), warshall(r.clone(), true));
        let sym = f.closure(Closure::Symmetric);
        for a in 0..f.len() {
            for b in 0..f.len() {
                prop_assert_eq!(sym.has_edge(a, b), r[a][b] || r[b][a]);
            }
        }
        prop_assert!(f.closure(Closure::Reflexive).is_reflexive());
    }

    #[test]
    fn images_and_reach_match_definitions(f in arb_frame(5), mask in any::<u64>()) {
        let n = f.len();
        let r = matrix(&f);
        let u = WorldSet::from_mask(n, mask & ((1 << n) - 1));
        let fwd = f.image(Dir::Fwd, &u);
        let bwd = f.image(Dir::Bwd, &u);
        for y in 0..n {
            prop_assert_eq!(fwd.contains(y), u.iter().any(|x| r[x][y]));
            prop_assert_eq!(bwd.contains(y), u.iter().any(|x| r[y][x]));
        }
        for x in 0..n {
            let d = distances(&r, x);
            for k in 0..=n {
                let ball = f.reach_sharp(x, Some(k));
                for y in 0..n {
                    prop_assert_eq!(ball.contains(y), d[y].is_some_and(|dy| dy <= k));
                }
            }
            let far = d.iter().flatten().max().copied().unwrap_or(0);
            prop_assert_eq!(f.rdg_at(x), far);
        }
    }

    #[test]
    fn generated_subframe_is_the_component(f in arb_frame(5)) {
        let r = matrix(&f);
        for x in 0..f.len() {
            let g = f.generated(x);
            prop_assert!(g.is_rooted());
            prop_assert_eq!(g.len(), distances(&r, x).iter().flatten().count());
        }
    }
}
