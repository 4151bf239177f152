//! General frames. A finite internal family is a Boolean algebra of sets, so it is
//! stored by its atoms; members are unions of atoms.

use super::{Dir, Frame};
use crate::bits::WorldSet;
use crate::error::{Error, Result};

/// `(X, R, A)` with `A` given by the atom partition of `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralFrame {
    base: Frame,
    atoms: Vec<WorldSet>,
    atom_of: Vec<usize>,
}

impl GeneralFrame {
    /// Full powerset family.
    pub fn kripke(base: Frame) -> GeneralFrame {
        let n = base.len();
        let atoms = (0..n).map(|i| WorldSet::singleton(n, i)).collect();
        Self::from_atoms(base, atoms)
    }

    fn from_atoms(base: Frame, mut atoms: Vec<WorldSet>) -> GeneralFrame {
        atoms.sort_by_key(|a| a.first());
        let mut atom_of = vec![0; base.len()];
        for (i, a) in atoms.iter().enumerate() {
            for x in a.iter() {
                atom_of[x] = i;
            }
        }
        GeneralFrame { base, atoms, atom_of }
    }

    /// Least family containing `generators` and `∅`, closed under `∩`, complement,
    /// `R[·]` and `R̆[·]`. Computed by partition refinement to a fixpoint.
    pub fn close_internal(base: &Frame, generators: &[WorldSet]) -> GeneralFrame {
        let n = base.len();
        let mut parts: Vec<WorldSet> = if n == 0 { vec![] } else { vec![WorldSet::full(n)] };
        for g in generators {
            parts = refine(&parts, g);
        }
        loop {
            let before = parts.len();
            let mut splitters = Vec::new();
            for a in &parts {
                splitters.push(base.image(Dir::Fwd, a));
                splitters.push(base.image(Dir::Bwd, a));
            }
            for s in &splitters {
                parts = refine(&parts, s);
            }
            if parts.len() == before {
                break;
            }
        }
        Self::from_atoms(base.clone(), parts)
    }

    /// Wraps an explicit family after checking it is closed and contains `∅`.
    pub fn from_family(base: Frame, family: &[WorldSet]) -> Result<GeneralFrame> {
        verify_closure(&base, family).map_err(Error::Invalid)?;
        let g = Self::close_internal(&base, family);
        if g.member_count() != Some(family.iter().collect::<std::collections::BTreeSet<_>>().len() as u64) {
            return Err(Error::Invalid("family size disagrees with its closure".into()));
        }
        Ok(g)
    }

    pub fn base(&self) -> &Frame {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn atoms(&self) -> &[WorldSet] {
        &self.atoms
    }

    pub fn atom_of(&self, x: usize) -> usize {
        self.atom_of[x]
    }

    pub fn is_kripke(&self) -> bool {
        self.atoms.len() == self.len()
    }

    /// `2^atoms`, or `None` past 63 atoms.
    pub fn member_count(&self) -> Option<u64> {
        (self.atoms.len() < 64).then(|| 1u64 << self.atoms.len())
    }

    /// Member with canonical index `m`: bit `i` of `m` selects atom `i`.
    pub fn member(&self, m: u64) -> WorldSet {
        let mut s = self.base.empty_set();
        for (i, a) in self.atoms.iter().enumerate() {
            if i < 64 && m >> i & 1 == 1 {
                s.union_with(a);
            }
        }
        s
    }

    /// All members in canonical order (small families only).
    pub fn members(&self) -> Vec<WorldSet> {
        let c = self.member_count().expect("family too large to list");
        (0..c).map(|m| self.member(m)).collect()
    }

    pub fn contains(&self, u: &WorldSet) -> bool {
        self.atoms.iter().all(|a| a.is_subset(u) || !a.intersects(u))
    }

    /// `A↾Y = {U ∩ Y}`; atoms of the restriction are the nonempty `atom ∩ Y`.
    pub fn subframe(&self, y: &WorldSet) -> Result<GeneralFrame> {
        let sub = self.base.subframe(y)?;
        let keep = y.to_vec();
        let m = keep.len();
        let atoms = self
            .atoms
            .iter()
            .map(|a| WorldSet::from_iter(m, keep.iter().enumerate().filter(|(_, &x)| a.contains(x)).map(|(i, _)| i)))
            .filter(|s| !s.is_empty())
            .collect();
        Ok(Self::from_atoms(sub, atoms))
    }
}

fn refine(parts: &[WorldSet], s: &WorldSet) -> Vec<WorldSet> {
    let mut out = Vec::with_capacity(parts.len() + 1);
    for p in parts {
        let inside = p.intersection(s);
        let outside = p.difference(s);
        if !inside.is_empty() {
            out.push(inside);
        }
        if !outside.is_empty() {
            out.push(outside);
        }
    }
    out
}

/// Re-checks the closure conditions pointwise on an explicit family.
pub fn verify_closure(base: &Frame, family: &[WorldSet]) -> std::result::Result<(), String> {
    let set: std::collections::BTreeSet<&WorldSet> = family.iter().collect();
    let has = |u: &WorldSet| set.contains(u);
    if !has(&base.empty_set()) {
        return Err("∅ missing".into());
    }
    for a in family {
        if !has(&a.complement()) {
            return Err(format!("complement of {a:?} missing"));
        }
        if !has(&base.image(Dir::Fwd, a)) {
            return Err(format!("R[{a:?}] missing"));
        }
        if !has(&base.image(Dir::Bwd, a)) {
            return Err(format!("R̆[{a:?}] missing"));
        }
        for b in family {
            if !has(&a.intersection(b)) {
                return Err(format!("{a:?} ∩ {b:?} missing"));
            }
        }
    }
    Ok(())
}
