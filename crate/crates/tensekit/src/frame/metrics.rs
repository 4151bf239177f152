//! Reachability degree, depth, widths and clusters.

use super::Frame;
use crate::bits::WorldSet;
use crate::error::{Error, Result};
use serde::Serialize;

/// Structural metrics. The order-theoretic fields are present only for transitive frames.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrameMetrics {
    pub rdg: Vec<usize>,
    pub rdg_max: usize,
    pub rooted: bool,
    pub dep: Option<Vec<usize>>,
    pub wid_plus: Option<Vec<usize>>,
    pub wid_minus: Option<Vec<usize>>,
    /// Distinct clusters as sorted world-position lists.
    pub clusters: Option<Vec<Vec<usize>>>,
}

pub(super) fn compute(f: &Frame) -> FrameMetrics {
    let rdg: Vec<usize> = (0..f.len()).map(|x| f.rdg_at(x)).collect();
    let t = f.is_transitive();
    FrameMetrics {
        rdg_max: rdg.iter().copied().max().unwrap_or(0),
        rdg,
        rooted: f.is_rooted(),
        dep: t.then(|| depth(f).unwrap()),
        wid_plus: t.then(|| width(f).unwrap()),
        wid_minus: t.then(|| width(&f.transpose()).unwrap()),
        clusters: t.then(|| clusters(f).unwrap().iter().map(WorldSet::to_vec).collect()),
    }
}

fn require_transitive(f: &Frame) -> Result<()> {
    if f.is_transitive() {
        Ok(())
    } else {
        Err(Error::NotTransitive)
    }
}

/// Distinct clusters ordered by least element.
pub fn clusters(f: &Frame) -> Result<Vec<WorldSet>> {
    require_transitive(f)?;
    let mut seen = f.empty_set();
    let mut out = Vec::new();
    for x in 0..f.len() {
        if !seen.contains(x) {
            let c = f.cluster_of(x);
            seen.union_with(&c);
            out.push(c);
        }
    }
    Ok(out)
}

fn strictly_above(f: &Frame, y: usize) -> WorldSet {
    f.succ(y).difference(f.pred(y))
}

/// `dep(x)`: longest strict chain inside `R[x]`; 0 when `R[x]` is empty.
pub fn depth(f: &Frame) -> Result<Vec<usize>> {
    require_transitive(f)?;
    let n = f.len();
    let mut height = vec![0usize; n];
    // Strictly-above counts decrease along strict steps, so sort by them.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&y| strictly_above(f, y).len());
    for &y in &order {
        height[y] = 1 + strictly_above(f, y).iter().map(|z| height[z]).max().unwrap_or(0);
    }
    Ok((0..n).map(|x| f.succ(x).iter().map(|y| height[y]).max().unwrap_or(0)).collect())
}

/// `wid⁺(x)`: largest antichain inside `R[x]`, via Dilworth on the cluster order.
pub fn width(f: &Frame) -> Result<Vec<usize>> {
    let cl = clusters(f)?;
    let reps: Vec<usize> = cl.iter().map(|c| c.first().unwrap()).collect();
    let mut out = Vec::with_capacity(f.len());
    for x in 0..f.len() {
        let inside: Vec<usize> = reps.iter().copied().filter(|&r| f.succ(x).contains(r)).collect();
        out.push(inside.len() - max_matching(f, &inside));
    }
    Ok(out)
}

/// Maximum bipartite matching on `a → b` when `b` is strictly above `a`.
fn max_matching(f: &Frame, elems: &[usize]) -> usize {
    let m = elems.len();
    let adj: Vec<Vec<usize>> = (0..m)
        .map(|i| (0..m).filter(|&j| i != j && f.has_edge(elems[i], elems[j]) && !f.has_edge(elems[j], elems[i])).collect())
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; m];
    fn augment(i: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &j in &adj[i] {
            if !seen[j] {
                seen[j] = true;
                if owner[j].is_none_or(|k| augment(k, adj, seen, owner)) {
                    owner[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    let mut count = 0;
    for i in 0..m {
        let mut seen = vec![false; m];
        if augment(i, &adj, &mut seen, &mut owner) {
            count += 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_metrics() {
        let ch2 = Frame::reflexive_chain(2);
        assert_eq!(depth(&ch2).unwrap(), vec![2, 1]);
        assert_eq!(width(&ch2).unwrap(), vec![1, 1]);
        assert_eq!(clusters(&ch2).unwrap().len(), 2);
    }

    #[test]
    fn fork_width() {
        let f = Frame::numbered(3, &[(0, 1), (0, 2)]);
        assert_eq!(width(&f).unwrap(), vec![2, 0, 0]);
        assert_eq!(width(&f.transpose()).unwrap(), vec![0, 1, 1]);
    }
}
