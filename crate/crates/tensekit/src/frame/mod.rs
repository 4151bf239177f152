//! Finite frames: world ids plus successor/predecessor bit rows.

pub mod general;
mod json;
pub mod metrics;

pub use general::GeneralFrame;
pub use json::{FrameJson, SymbolicJson};
pub use metrics::FrameMetrics;

use crate::bits::WorldSet;
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt;

/// Relation closure kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Closure {
    Reflexive,
    Transitive,
    ReflexiveTransitive,
    Symmetric,
}

impl std::str::FromStr for Closure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reflexive" => Ok(Closure::Reflexive),
            "transitive" => Ok(Closure::Transitive),
            "reflexive_transitive" => Ok(Closure::ReflexiveTransitive),
            "symmetric" => Ok(Closure::Symmetric),
            _ => Err(Error::UnknownClosure(s.to_string())),
        }
    }
}

/// Image direction: `Fwd` is `R[U]`, `Bwd` is `R̆[U]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    Fwd,
    Bwd,
}

/// Frame `(X, R)`. `succ[x] = R[x]`, `pred[x] = R̆[x]`.
#[derive(Clone, PartialEq, Eq)]
pub struct Frame {
    ids: Vec<String>,
    succ: Vec<WorldSet>,
    pred: Vec<WorldSet>,
}

impl Frame {
    /// Builds a frame from ids and id-pairs; duplicate edges collapse.
    pub fn new<S: AsRef<str>>(worlds: &[S], edges: &[(S, S)]) -> Result<Frame> {
        let mut pos = HashMap::new();
        for (i, w) in worlds.iter().enumerate() {
            if pos.insert(w.as_ref().to_string(), i).is_some() {
                return Err(Error::DuplicateWorld(w.as_ref().to_string()));
            }
        }
        let look = |s: &S| pos.get(s.as_ref()).copied().ok_or_else(|| Error::UnknownWorld(s.as_ref().to_string()));
        let mut idx = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            idx.push((look(a)?, look(b)?));
        }
        Ok(Self::from_indices(worlds.iter().map(|s| s.as_ref().to_string()).collect(), &idx))
    }

    /// Builds a frame from positional edges. Panics on out-of-range indices.
    pub fn from_indices(ids: Vec<String>, edges: &[(usize, usize)]) -> Frame {
        let n = ids.len();
        let mut succ = vec![WorldSet::empty(n); n];
        let mut pred = vec![WorldSet::empty(n); n];
        for &(a, b) in edges {
            succ[a].insert(b);
            pred[b].insert(a);
        }
        Frame { ids, succ, pred }
    }

    /// Frame on worlds named `0..n` from positional edges.
    pub fn numbered(n: usize, edges: &[(usize, usize)]) -> Frame {
        Self::from_indices((0..n).map(|i| i.to_string()).collect(), edges)
    }

    /// Frame on `0..n` whose edge `i→j` is bit `i*n+j` of `code`.
    pub fn from_code(n: usize, code: u64) -> Frame {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if code >> (i * n + j) & 1 == 1 {
                    edges.push((i, j));
                }
            }
        }
        Self::numbered(n, &edges)
    }

    /// Inverse of [`Frame::from_code`] (requires `n*n <= 64`).
    pub fn code(&self) -> u64 {
        let n = self.len();
        assert!(n * n <= 64);
        let mut c = 0u64;
        for (i, j) in self.edges() {
            c |= 1 << (i * n + j);
        }
        c
    }

    /// The single irreflexive point `•`.
    pub fn dot() -> Frame {
        Self::numbered(1, &[])
    }

    /// Reflexive chain of `n` points `0→1→…`, transitively closed.
    pub fn reflexive_chain(n: usize) -> Frame {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i..n {
                e.push((i, j));
            }
        }
        Self::numbered(n, &e)
    }

    /// Full cluster on `n` points.
    pub fn cluster(n: usize) -> Frame {
        let e: Vec<_> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        Self::numbered(n, &e)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.ids.iter().position(|s| s == id).ok_or_else(|| Error::UnknownWorld(id.to_string()))
    }

    pub fn set_of(&self, ids: &[&str]) -> Result<WorldSet> {
        let mut s = self.empty_set();
        for id in ids {
            s.insert(self.index_of(id)?);
        }
        Ok(s)
    }

    pub fn names(&self, s: &WorldSet) -> Vec<String> {
        s.iter().map(|i| self.ids[i].clone()).collect()
    }

    pub fn empty_set(&self) -> WorldSet {
        WorldSet::empty(self.len())
    }

    pub fn all(&self) -> WorldSet {
        WorldSet::full(self.len())
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.succ[a].contains(b)
    }

    /// `R[x]`
    pub fn succ(&self, x: usize) -> &WorldSet {
        &self.succ[x]
    }

    /// `R̆[x]`
    pub fn pred(&self, x: usize) -> &WorldSet {
        &self.pred[x]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |i| self.succ[i].iter().map(move |j| (i, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(WorldSet::len).sum()
    }

    pub fn rename(&self, ids: Vec<String>) -> Frame {
        assert_eq!(ids.len(), self.len());
        Frame { ids, succ: self.succ.clone(), pred: self.pred.clone() }
    }

    /// `R[U]` or `R̆[U]`.
    pub fn image(&self, dir: Dir, u: &WorldSet) -> WorldSet {
        let rows = match dir {
            Dir::Fwd => &self.succ,
            Dir::Bwd => &self.pred,
        };
        let mut out = self.empty_set();
        for x in u.iter() {
            out.union_with(&rows[x]);
        }
        out
    }

    /// One `R♯` step: `U ∪ R[U] ∪ R̆[U]`.
    pub fn sharp_step(&self, u: &WorldSet) -> WorldSet {
        let mut out = u.clone();
        for x in u.iter() {
            out.union_with(&self.succ[x]);
            out.union_with(&self.pred[x]);
        }
        out
    }

    /// `R♯^k[x]`; `None` stands for `ω`.
    pub fn reach_sharp(&self, x: usize, k: Option<usize>) -> WorldSet {
        let mut cur = WorldSet::singleton(self.len(), x);
        let mut i = 0;
        loop {
            if k == Some(i) {
                return cur;
            }
            let next = self.sharp_step(&cur);
            if next == cur {
                return cur;
            }
            cur = next;
            i += 1;
        }
    }

    /// Least `k` with `R♯^k[x] = R♯^ω[x]`.
    pub fn rdg_at(&self, x: usize) -> usize {
        let mut cur = WorldSet::singleton(self.len(), x);
        let mut k = 0;
        loop {
            let next = self.sharp_step(&cur);
            if next == cur {
                return k;
            }
            cur = next;
            k += 1;
        }
    }

    pub fn rdg(&self) -> usize {
        (0..self.len()).map(|x| self.rdg_at(x)).max().unwrap_or(0)
    }

    pub fn is_rooted(&self) -> bool {
        self.is_empty() || self.reach_sharp(0, None).is_full()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.len()).all(|x| self.has_edge(x, x))
    }

    pub fn is_symmetric(&self) -> bool {
        self.succ == self.pred
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.len()).all(|x| self.image(Dir::Fwd, &self.succ[x]).is_subset(&self.succ[x]))
    }

    /// Converse frame `(X, R̆)`.
    pub fn transpose(&self) -> Frame {
        Frame { ids: self.ids.clone(), succ: self.pred.clone(), pred: self.succ.clone() }
    }

    /// Least superset relation with the requested property.
    pub fn closure(&self, kind: Closure) -> Frame {
        let n = self.len();
        let mut succ = self.succ.clone();
        if matches!(kind, Closure::Reflexive | Closure::ReflexiveTransitive) {
            for (x, row) in succ.iter_mut().enumerate() {
                row.insert(x);
            }
        }
        if matches!(kind, Closure::Symmetric) {
            for (x, row) in succ.iter_mut().enumerate() {
                row.union_with(&self.pred[x]);
            }
        }
        if matches!(kind, Closure::Transitive | Closure::ReflexiveTransitive) {
            // Warshall over rows.
            for k in 0..n {
                let rk = succ[k].clone();
                for row in succ.iter_mut() {
                    if row.contains(k) {
                        row.union_with(&rk);
                    }
                }
            }
        }
        let mut pred = vec![WorldSet::empty(n); n];
        for (x, row) in succ.iter().enumerate() {
            for y in row.iter() {
                pred[y].insert(x);
            }
        }
        Frame { ids: self.ids.clone(), succ, pred }
    }

    /// Induced subframe on `y`, worlds kept in their original order.
    pub fn subframe(&self, y: &WorldSet) -> Result<Frame> {
        if y.is_empty() {
            return Err(Error::EmptySubset);
        }
        let keep = y.to_vec();
        let mut newpos = vec![usize::MAX; self.len()];
        for (i, &x) in keep.iter().enumerate() {
            newpos[x] = i;
        }
        let mut e = Vec::new();
        for &x in &keep {
            for z in self.succ[x].iter() {
                if newpos[z] != usize::MAX {
                    e.push((newpos[x], newpos[z]));
                }
            }
        }
        Ok(Self::from_indices(keep.iter().map(|&x| self.ids[x].clone()).collect(), &e))
    }

    /// `F_x`: the subframe on `R♯^ω[x]`.
    pub fn generated(&self, x: usize) -> Frame {
        self.subframe(&self.reach_sharp(x, None)).expect("nonempty")
    }

    /// Clusters `C(x) = (R[x] ∩ R̆[x]) ∪ {x}`, one per world.
    pub fn cluster_of(&self, x: usize) -> WorldSet {
        let mut c = self.succ[x].intersection(&self.pred[x]);
        c.insert(x);
        c
    }

    pub fn metrics(&self) -> FrameMetrics {
        metrics::compute(self)
    }
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().map(|(a, b)| format!("{}→{}", self.ids[a], self.ids[b])).collect();
        write!(f, "Frame{{{:?}; {}}}", self.ids, edges.join(", "))
    }
}
