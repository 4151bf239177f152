//! Finite/cofinite subsets of `ω` and region sets built from them.

use crate::bits::WorldSet;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

/// `Fin(E)` denotes `E`; `Cofin(E)` denotes `ω ∖ E`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum OmegaSet {
    Fin(BTreeSet<u64>),
    Cofin(BTreeSet<u64>),
}

impl OmegaSet {
    pub fn empty() -> Self {
        OmegaSet::Fin(BTreeSet::new())
    }

    pub fn all() -> Self {
        OmegaSet::Cofin(BTreeSet::new())
    }

    pub fn single(i: u64) -> Self {
        OmegaSet::Fin(BTreeSet::from([i]))
    }

    /// `{j : j ≥ t}`; everything when `t ≤ 0`.
    pub fn from_index(t: i64) -> Self {
        OmegaSet::Cofin((0..t.max(0) as u64).collect())
    }

    /// `{j : j ≤ t}`; empty when `t < 0`.
    pub fn up_to(t: i64) -> Self {
        if t < 0 {
            Self::empty()
        } else {
            OmegaSet::Fin((0..=t as u64).collect())
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, OmegaSet::Fin(e) if e.is_empty())
    }

    pub fn is_all(&self) -> bool {
        matches!(self, OmegaSet::Cofin(e) if e.is_empty())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, OmegaSet::Fin(_))
    }

    pub fn contains(&self, i: u64) -> bool {
        match self {
            OmegaSet::Fin(e) => e.contains(&i),
            OmegaSet::Cofin(e) => !e.contains(&i),
        }
    }

    pub fn least(&self) -> Option<u64> {
        match self {
            OmegaSet::Fin(e) => e.first().copied(),
            OmegaSet::Cofin(e) => (0..).find(|i| !e.contains(i)),
        }
    }

    /// `None` for empty or infinite sets.
    pub fn greatest(&self) -> Option<u64> {
        match self {
            OmegaSet::Fin(e) => e.last().copied(),
            OmegaSet::Cofin(_) => None,
        }
    }

    pub fn complement(&self) -> Self {
        match self {
            OmegaSet::Fin(e) => OmegaSet::Cofin(e.clone()),
            OmegaSet::Cofin(e) => OmegaSet::Fin(e.clone()),
        }
    }

    pub fn union(&self, o: &Self) -> Self {
        use OmegaSet::*;
        match (self, o) {
            (Fin(a), Fin(b)) => Fin(a | b),
            (Fin(a), Cofin(e)) | (Cofin(e), Fin(a)) => Cofin(e - a),
            (Cofin(a), Cofin(b)) => Cofin(a & b),
        }
    }

    pub fn intersection(&self, o: &Self) -> Self {
        use OmegaSet::*;
        match (self, o) {
            (Fin(a), Fin(b)) => Fin(a & b),
            (Fin(a), Cofin(e)) | (Cofin(e), Fin(a)) => Fin(a - e),
            (Cofin(a), Cofin(b)) => Cofin(a | b),
        }
    }

    pub fn intersects(&self, o: &Self) -> bool {
        !self.intersection(o).is_empty()
    }

    pub fn is_subset(&self, o: &Self) -> bool {
        self.intersection(&o.complement()).is_empty()
    }

    /// Members `≤ n`.
    pub fn window(&self, n: u64) -> Vec<u64> {
        (0..=n).filter(|&i| self.contains(i)).collect()
    }
}

impl fmt::Debug for OmegaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaSet::Fin(e) => write!(f, "FIN{e:?}"),
            OmegaSet::Cofin(e) => write!(f, "COFIN{e:?}"),
        }
    }
}

/// A subset of a symbolic frame: explicit points plus one [`OmegaSet`] per ω-region.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RegionSet {
    pub pts: WorldSet,
    pub reg: Vec<OmegaSet>,
}

impl RegionSet {
    pub fn empty(points: usize, regions: usize) -> Self {
        RegionSet { pts: WorldSet::empty(points), reg: vec![OmegaSet::empty(); regions] }
    }

    pub fn full(points: usize, regions: usize) -> Self {
        RegionSet { pts: WorldSet::full(points), reg: vec![OmegaSet::all(); regions] }
    }

    pub fn is_empty(&self) -> bool {
        self.pts.is_empty() && self.reg.iter().all(OmegaSet::is_empty)
    }

    pub fn is_full(&self) -> bool {
        self.pts.is_full() && self.reg.iter().all(OmegaSet::is_all)
    }

    pub fn complement(&self) -> Self {
        RegionSet { pts: self.pts.complement(), reg: self.reg.iter().map(OmegaSet::complement).collect() }
    }

    pub fn union(&self, o: &Self) -> Self {
        RegionSet { pts: self.pts.union(&o.pts), reg: self.reg.iter().zip(&o.reg).map(|(a, b)| a.union(b)).collect() }
    }

    pub fn intersection(&self, o: &Self) -> Self {
        RegionSet {
            pts: self.pts.intersection(&o.pts),
            reg: self.reg.iter().zip(&o.reg).map(|(a, b)| a.intersection(b)).collect(),
        }
    }

    pub fn is_subset(&self, o: &Self) -> bool {
        self.intersection(&o.complement()).is_empty()
    }
}
