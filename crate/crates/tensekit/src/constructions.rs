//! Point-glue combination, reflective unfolding, the two-layer cover of a cluster,
//! and r-degree boosting.

use crate::bits::WorldSet;
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::frame::{Closure, Frame, GeneralFrame};
use crate::morphism::TMorphism;
use crate::semantics::{self, Valuation, Verdict};
use std::collections::HashSet;

/// `⟨F w+u G⟩` on `(X ∪ Y) ∖ {u}` with `u`'s edges rerouted through `w`.
/// Ids of `G` that clash with ids of `F` get `'` appended until unique.
/// Returns the frame and, for each world of `G`, its position in the result.
pub fn combine_with_map(f: &Frame, w: usize, g: &Frame, u: usize, transitive: bool) -> Result<(Frame, Vec<usize>)> {
    if w >= f.len() {
        return Err(Error::WorldOutOfRange(w));
    }
    if u >= g.len() {
        return Err(Error::WorldOutOfRange(u));
    }
    let mut ids: Vec<String> = f.ids().to_vec();
    let mut taken: HashSet<String> = ids.iter().cloned().collect();
    let mut gpos = vec![0; g.len()];
    for y in 0..g.len() {
        if y == u {
            gpos[y] = w;
            continue;
        }
        let mut id = g.id(y).to_string();
        while taken.contains(&id) {
            id.push('\'');
        }
        taken.insert(id.clone());
        gpos[y] = ids.len();
        ids.push(id);
    }
    let mut edges: Vec<(usize, usize)> = f.edges().collect();
    for (a, b) in g.edges() {
        // (S ∪ {w}×S[u] ∪ S̆[u]×{w}) ∩ Z×Z: an edge touching u survives only as an edge at w,
        // and a loop at u is not transferred.
        match (a == u, b == u) {
            (false, false) => edges.push((gpos[a], gpos[b])),
            (true, false) => edges.push((w, gpos[b])),
            (false, true) => edges.push((gpos[a], w)),
            (true, true) => {}
        }
    }
    let mut out = Frame::from_indices(ids, &edges);
    if transitive {
        out = out.closure(Closure::Transitive);
    }
    Ok((out, gpos))
}

pub fn combine(f: &Frame, w: usize, g: &Frame, u: usize, transitive: bool) -> Result<Frame> {
    combine_with_map(f, w, g, u, transitive).map(|p| p.0)
}

/// `F[k]`: ids suffixed with `@k`.
pub fn copy(f: &Frame, k: usize) -> Frame {
    f.rename(f.ids().iter().map(|s| format!("{s}@{k}")).collect())
}

/// The `n`-fold reflective unfolding with its projection and copy membership.
#[derive(Debug, Clone)]
pub struct Unfolding {
    pub frame: Frame,
    /// World of the unfolding to world of the original frame.
    pub projection: Vec<usize>,
    /// Copies each world belongs to; glued worlds belong to two.
    pub copies: Vec<Vec<usize>>,
    /// Position of `x_k` for each copy `k` and original world `x`.
    pub position: Vec<Vec<usize>>,
}

/// `F^n_{w,u}`: copy `j` is glued at `u` onto copy `j-1` when `j` is odd and at `w` when `j` is even.
pub fn unfold(f: &Frame, w: usize, u: usize, n: usize, transitive: bool) -> Result<Unfolding> {
    if w == u {
        return Err(Error::Invalid("unfolding needs w ≠ u".into()));
    }
    if n == 0 {
        return Err(Error::Invalid("unfolding needs n ≥ 1".into()));
    }
    if w >= f.len() || u >= f.len() {
        return Err(Error::WorldOutOfRange(w.max(u)));
    }
    if transitive && !f.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let mut cur = copy(f, 0);
    let mut projection: Vec<usize> = (0..f.len()).collect();
    let mut copies: Vec<Vec<usize>> = (0..f.len()).map(|_| vec![0]).collect();
    let mut position = vec![(0..f.len()).collect::<Vec<_>>()];
    for j in 1..n {
        let glue = if j % 2 == 1 { u } else { w };
        let left = position[j - 1][glue];
        let (next, gpos) = combine_with_map(&cur, left, &copy(f, j), glue, false)?;
        for x in 0..f.len() {
            if x == glue {
                copies[left].push(j);
            } else {
                projection.push(x);
                copies.push(vec![j]);
            }
        }
        position.push(gpos);
        cur = next;
    }
    if transitive {
        cur = cur.closure(Closure::Transitive);
    }
    Ok(Unfolding { frame: cur, projection, copies, position })
}

/// The projection `x_k ↦ x` as a t-morphism between Kripke frames.
pub fn projection(f: &Frame, w: usize, u: usize, n: usize, transitive: bool) -> Result<TMorphism> {
    let un = unfold(f, w, u, n, transitive)?;
    Ok(TMorphism { source: GeneralFrame::kripke(un.frame), target: GeneralFrame::kripke(f.clone()), map: un.projection })
}

/// `X × {0,1}` with `⟨x,a⟩ → ⟨y,b⟩` iff `a ≤ b`, and the first-coordinate projection.
pub fn bilayer(f: &Frame) -> Result<(Frame, TMorphism)> {
    let n = f.len();
    if n == 0 || f.edge_count() != n * n {
        return Err(Error::Invalid("bilayer needs a full cluster".into()));
    }
    let ids: Vec<String> = (0..2).flat_map(|a| f.ids().iter().map(move |s| format!("{s}^{a}"))).collect();
    let mut edges = Vec::new();
    for a in 0..2 {
        for b in a..2 {
            for x in 0..n {
                for y in 0..n {
                    edges.push((a * n + x, b * n + y));
                }
            }
        }
    }
    let g = Frame::from_indices(ids, &edges);
    let map = (0..2 * n).map(|i| i % n).collect();
    let m = TMorphism { source: GeneralFrame::kripke(g.clone()), target: GeneralFrame::kripke(f.clone()), map };
    Ok((g, m))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoostMode {
    Plain,
    Transitive,
}

/// Result of [`boost_rdg`].
#[derive(Debug, Clone)]
pub struct Boosted {
    pub frame: Frame,
    /// Copy 0 of the refuting world.
    pub world: usize,
    /// Onto the input frame.
    pub projection: Vec<usize>,
    /// Glue pair used, as positions in the frame that was unfolded.
    pub glue: (usize, usize),
    pub via_bilayer: bool,
}

/// Unfolds `F` into `F^{4n+2}_{w,u}` (closed transitively in transitive mode) so that copy 0 of `y`
/// still satisfies `φ` and the r-degree is at least `n`.
pub fn boost_rdg(f: &Frame, y: usize, phi: &Formula, n: usize, mode: BoostMode) -> Result<Boosted> {
    if y >= f.len() {
        return Err(Error::WorldOutOfRange(y));
    }
    let sat = semantics::valid_at(&GeneralFrame::kripke(f.clone()), &Formula::not(phi), y, u64::MAX);
    if !sat.is_counter() {
        return Err(Error::Invalid(format!("φ is not satisfiable at world {y}")));
    }
    let copies = 4 * n + 2;
    let full_cluster = f.edge_count() == f.len() * f.len();
    if full_cluster && (mode == BoostMode::Transitive || f.len() == 1) {
        // No pair outside the relation: unfold the two-layer cover instead.
        let (g, cover) = bilayer(f)?;
        let inner = boost_rdg(&g, y, phi, n, BoostMode::Transitive)?;
        let projection = inner.projection.iter().map(|&x| cover.map[x]).collect();
        return Ok(Boosted { projection, via_bilayer: true, ..inner });
    }
    let (w, u) = match mode {
        BoostMode::Plain => {
            if f.len() < 2 {
                return Err(Error::Invalid("no admissible glue pair".into()));
            }
            (0, 1)
        }
        BoostMode::Transitive => {
            if !f.is_transitive() {
                return Err(Error::NotTransitive);
            }
            let mut pair = None;
            'outer: for a in 0..f.len() {
                for b in 0..f.len() {
                    if a != b && !f.has_edge(a, b) {
                        pair = Some((a, b));
                        break 'outer;
                    }
                }
            }
            pair.ok_or_else(|| Error::Invalid("no admissible glue pair".into()))?
        }
    };
    let un = unfold(f, w, u, copies, mode == BoostMode::Transitive)?;
    Ok(Boosted { world: un.position[0][y], frame: un.frame, projection: un.projection, glue: (w, u), via_bilayer: false })
}

/// `V ∘ f⁻¹`: pulls a valuation on the target back along a map.
pub fn pull_back(v: &Valuation, map: &[usize]) -> Valuation {
    v.iter()
        .map(|(&p, s)| (p, WorldSet::from_iter(map.len(), (0..map.len()).filter(|&x| s.contains(map[x])))))
        .collect()
}

/// A valuation witnessing `φ` at `y`, if any (exhaustive over the powerset).
pub fn satisfying_valuation(f: &Frame, phi: &Formula, y: usize) -> Option<Valuation> {
    match semantics::valid_at(&GeneralFrame::kripke(f.clone()), &Formula::not(phi), y, u64::MAX) {
        Verdict::Counter { valuation, .. } => Some(valuation),
        _ => None,
    }
}
