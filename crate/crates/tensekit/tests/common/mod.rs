//! Test-side oracles: a naive recursive evaluator, random frames and formulas.

#![allow(dead_code)]

use proptest::prelude::*;
use tensekit::formula::{Formula, Node};
use tensekit::Frame;

/// Adjacency matrix of `f`.
pub fn matrix(f: &Frame) -> Vec<Vec<bool>> {
    (0..f.len()).map(|a| (0..f.len()).map(|b| f.has_edge(a, b)).collect()).collect()
}

/// Truth of `phi` at `x`, straight from the clauses; `val[p][y]` is the value of `p` at `y`.
pub fn holds(r: &[Vec<bool>], val: &[Vec<bool>], phi: &Formula, x: usize) -> bool {
    match phi.node() {
        Node::Var(i) => val[*i as usize][x],
        Node::Bottom => false,
        Node::Implies(a, b) => !holds(r, val, a, x) || holds(r, val, b, x),
        Node::Box(a) => (0..r.len()).all(|y| !r[x][y] || holds(r, val, a, y)),
        Node::PastDia(a) => (0..r.len()).any(|y| r[y][x] && holds(r, val, a, y)),
    }
}

/// Valuation number `code` over `nv` variables on `n` worlds, bit `p * n + y`.
pub fn valuation_of(code: u64, nv: usize, n: usize) -> Vec<Vec<bool>> {
    (0..nv).map(|p| (0..n).map(|y| code >> (p * n + y) & 1 == 1).collect()).collect()
}

pub fn random_frame(n: usize, edges: u64) -> Frame {
    let e: Vec<(usize, usize)> = (0..n * n).filter(|i| edges >> i & 1 == 1).map(|i| (i / n, i % n)).collect();
    Frame::numbered(n, &e)
}

pub fn arb_frame(max: usize) -> impl Strategy<Value = Frame> {
    (1..=max).prop_flat_map(|n| (Just(n), 0..(1u64 << (n * n)))).prop_map(|(n, e)| random_frame(n, e))
}

/// Formulas over `p0..p{nv-1}` with sugar, up to a small depth.
pub fn arb_formula(nv: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![(0..nv).prop_map(Formula::var), Just(Formula::bottom()), Just(Formula::top())];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Formula::not(&a)),
            inner.clone().prop_map(|a| Formula::boxed(&a)),
            inner.clone().prop_map(|a| Formula::dia(&a)),
            inner.clone().prop_map(|a| Formula::past_dia(&a)),
            inner.clone().prop_map(|a| Formula::past_box(&a)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(&a, &b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(&a, &b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::or(&a, &b)),
        ]
    })
}
