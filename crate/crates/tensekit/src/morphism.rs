//! t-morphisms: verification, backtracking search for surjections, image enumeration
//! and sufficient sets.

use crate::bits::WorldSet;
use crate::enumerate;
use crate::error::{Error, Result};
use crate::frame::{Dir, Frame, GeneralFrame};
use std::collections::VecDeque;

/// Total map from source positions to target positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TMorphism {
    pub source: GeneralFrame,
    pub target: GeneralFrame,
    pub map: Vec<usize>,
}

/// First violated condition found by [`check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `f[R[x]] ≠ R′[f(x)]`
    Forth { world: usize },
    /// `f[R̆[x]] ≠ R̆′[f(x)]`
    Back { world: usize },
    /// The preimage of this target atom is not internal in the source.
    Admissibility { atom: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Forth { world } => write!(f, "forth condition fails at world {world}"),
            Violation::Back { world } => write!(f, "back condition fails at world {world}"),
            Violation::Admissibility { atom } => write!(f, "preimage of target atom {atom} is not internal"),
        }
    }
}

/// `f[U]`
pub fn image_of(map: &[usize], tgt_len: usize, u: &WorldSet) -> WorldSet {
    WorldSet::from_iter(tgt_len, u.iter().map(|x| map[x]))
}

fn check_total(src_len: usize, tgt_len: usize, map: &[usize]) -> Result<()> {
    if map.len() != src_len {
        return Err(Error::MapNotTotal(format!("map has {} entries for {} worlds", map.len(), src_len)));
    }
    if let Some(&c) = map.iter().find(|&&c| c >= tgt_len) {
        return Err(Error::MapNotTotal(format!("image {c} outside target")));
    }
    Ok(())
}

/// Relational conditions only.
pub fn check_frames(src: &Frame, tgt: &Frame, map: &[usize]) -> Result<Option<Violation>> {
    check_total(src.len(), tgt.len(), map)?;
    for x in 0..src.len() {
        if image_of(map, tgt.len(), src.succ(x)) != *tgt.succ(map[x]) {
            return Ok(Some(Violation::Forth { world: x }));
        }
        if image_of(map, tgt.len(), src.pred(x)) != *tgt.pred(map[x]) {
            return Ok(Some(Violation::Back { world: x }));
        }
    }
    Ok(None)
}

/// All three t-morphism conditions; `Ok(None)` means the map is a t-morphism.
pub fn check(src: &GeneralFrame, tgt: &GeneralFrame, map: &[usize]) -> Result<Option<Violation>> {
    if let Some(v) = check_frames(src.base(), tgt.base(), map)? {
        return Ok(Some(v));
    }
    for (i, a) in tgt.atoms().iter().enumerate() {
        let pre = WorldSet::from_iter(src.len(), (0..src.len()).filter(|&x| a.contains(map[x])));
        if !src.contains(&pre) {
            return Ok(Some(Violation::Admissibility { atom: i }));
        }
    }
    Ok(None)
}

/// BFS order over `R♯`, component by component.
fn bfs_order(f: &Frame) -> Vec<usize> {
    let n = f.len();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            order.push(x);
            for y in f.succ(x).union(f.pred(x)).iter() {
                if !seen[y] {
                    seen[y] = true;
                    q.push_back(y);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    src: &'a Frame,
    tgt: &'a Frame,
    order: Vec<usize>,
    map: Vec<Option<usize>>,
    limit: usize,
    found: Vec<Vec<usize>>,
    nodes: u64,
}

impl Search<'_> {
    /// Images of assigned neighbours plus what unassigned neighbours could still reach must
    /// be able to equal the target row exactly.
    fn completable(&self, doms: &[WorldSet], x: usize) -> bool {
        let c = self.map[x].unwrap();
        for (row, want) in [(self.src.succ(x), self.tgt.succ(c)), (self.src.pred(x), self.tgt.pred(c))] {
            let mut covered = self.tgt.empty_set();
            let mut possible = self.tgt.empty_set();
            let mut free = 0;
            for y in row.iter() {
                match self.map[y] {
                    Some(d) => covered.insert(d),
                    None => {
                        free += 1;
                        possible.union_with(&doms[y]);
                    }
                }
            }
            if !covered.is_subset(want) {
                return false;
            }
            let missing = want.difference(&covered);
            if !missing.is_subset(&possible) || missing.len() > free {
                return false;
            }
        }
        true
    }

    fn surjection_possible(&self, doms: &[WorldSet]) -> bool {
        let mut hit = self.tgt.empty_set();
        let mut possible = self.tgt.empty_set();
        let mut free = 0;
        for x in 0..self.src.len() {
            match self.map[x] {
                Some(c) => hit.insert(c),
                None => {
                    free += 1;
                    possible.union_with(&doms[x]);
                }
            }
        }
        let missing = hit.complement();
        missing.len() <= free && missing.is_subset(&possible)
    }

    fn go(&mut self, depth: usize, doms: Vec<WorldSet>) {
        if self.found.len() >= self.limit {
            return;
        }
        self.nodes += 1;
        if depth == self.order.len() {
            let m: Vec<usize> = self.map.iter().map(|c| c.unwrap()).collect();
            debug_assert!(check_frames(self.src, self.tgt, &m).unwrap().is_none());
            if m.iter().collect::<std::collections::BTreeSet<_>>().len() == self.tgt.len() {
                self.found.push(m);
            }
            return;
        }
        let x = self.order[depth];
        for c in doms[x].iter() {
            let mut nd = doms.clone();
            nd[x] = WorldSet::singleton(self.tgt.len(), c);
            let mut ok = true;
            for y in self.src.succ(x).iter() {
                nd[y].intersect_with(self.tgt.succ(c));
                ok &= !nd[y].is_empty();
            }
            for y in self.src.pred(x).iter() {
                nd[y].intersect_with(self.tgt.pred(c));
                ok &= !nd[y].is_empty();
            }
            if !ok {
                continue;
            }
            self.map[x] = Some(c);
            let neigh = self.src.succ(x).union(self.src.pred(x));
            let mut touched = neigh.clone();
            touched.insert(x);
            for y in neigh.iter() {
                touched.union_with(self.src.succ(y));
                touched.union_with(self.src.pred(y));
            }
            let fine = touched.iter().filter(|&y| self.map[y].is_some()).all(|y| self.completable(&nd, y))
                && self.surjection_possible(&nd);
            if fine {
                self.go(depth + 1, nd);
            }
            self.map[x] = None;
            if self.found.len() >= self.limit {
                return;
            }
        }
    }
}

fn initial_domains(src: &Frame, tgt: &Frame) -> Vec<WorldSet> {
    (0..src.len())
        .map(|x| {
            WorldSet::from_iter(
                tgt.len(),
                (0..tgt.len()).filter(|&c| {
                    (!src.has_edge(x, x) || tgt.has_edge(c, c))
                        && src.succ(x).is_empty() == tgt.succ(c).is_empty()
                        && src.pred(x).is_empty() == tgt.pred(c).is_empty()
                        && src.succ(x).len() >= tgt.succ(c).len()
                        && src.pred(x).len() >= tgt.pred(c).len()
                }),
            )
        })
        .collect()
}

/// Up to `limit` surjective t-morphisms between Kripke frames, in deterministic order.
pub fn find_surjections(src: &Frame, tgt: &Frame, limit: usize) -> Vec<Vec<usize>> {
    if tgt.len() > src.len() || tgt.is_empty() || limit == 0 {
        return Vec::new();
    }
    let doms = initial_domains(src, tgt);
    if doms.iter().any(WorldSet::is_empty) {
        return Vec::new();
    }
    let mut s = Search { src, tgt, order: bfs_order(src), map: vec![None; src.len()], limit, found: Vec::new(), nodes: 0 };
    s.go(0, doms);
    s.found
}

/// Surjections that also satisfy admissibility.
pub fn find_surjections_general(src: &GeneralFrame, tgt: &GeneralFrame, limit: usize) -> Vec<TMorphism> {
    if src.is_kripke() {
        return find_surjections(src.base(), tgt.base(), limit)
            .into_iter()
            .map(|map| TMorphism { source: src.clone(), target: tgt.clone(), map })
            .collect();
    }
    find_surjections(src.base(), tgt.base(), usize::MAX)
        .into_iter()
        .filter(|m| check(src, tgt, m).unwrap().is_none())
        .take(limit)
        .map(|map| TMorphism { source: src.clone(), target: tgt.clone(), map })
        .collect()
}

pub fn is_image(src: &Frame, tgt: &Frame) -> bool {
    !find_surjections(src, tgt, 1).is_empty()
}

/// t-morphic images with at most `max_size` worlds, one per isomorphism class.
pub fn images_up_to(src: &Frame, max_size: usize) -> Vec<Frame> {
    let mut out = Vec::new();
    for n in 1..=max_size.min(src.len()) {
        for f in enumerate::frames(n) {
            if is_image(src, &f) {
                out.push(f);
            }
        }
    }
    out
}

/// `Z` is sufficient for `f` when every `z ∈ Z` has `u, v ∈ Z` in its fibre with
/// `R[u] ∪ R̆[v] ⊆ Z`. The morphism must verify as a surjective t-morphism.
pub fn is_sufficient(f: &TMorphism, z: &WorldSet) -> Result<bool> {
    if let Some(v) = check(&f.source, &f.target, &f.map)? {
        return Err(Error::NotMorphism(v.to_string()));
    }
    if !image_of(&f.map, f.target.len(), &f.source.base().all()).is_full() {
        return Err(Error::NotMorphism("not surjective".into()));
    }
    let src = f.source.base();
    Ok(z.iter().all(|x| {
        let fib = |y: usize| z.contains(y) && f.map[y] == f.map[x];
        let u_ok = (0..src.len()).any(|u| fib(u) && src.succ(u).is_subset(z));
        let v_ok = (0..src.len()).any(|v| fib(v) && src.pred(v).is_subset(z));
        u_ok && v_ok
    }))
}

/// `g ∘ f` as a position map.
pub fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    f.iter().map(|&x| g[x]).collect()
}

/// Convenience: `f[R[x]]` and `f[R̆[x]]`.
pub fn local_images(src: &Frame, tgt_len: usize, map: &[usize], x: usize) -> (WorldSet, WorldSet) {
    (image_of(map, tgt_len, &src.image(Dir::Fwd, &WorldSet::singleton(src.len(), x))), image_of(map, tgt_len, src.pred(x)))
}
