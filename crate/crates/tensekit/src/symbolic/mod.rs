//! Exact models of the two infinite ladder families: the K_t ω-ladder and the S4 ladder.
//!
//! A symbolic frame has finitely many explicit points and one or two ω-indexed regions.
//! Region-to-region edges are threshold rules on `j − i`; explicit points reach regions
//! through finite/cofinite index sets; regions never reach explicit points.

mod region;

pub use region::{OmegaSet, RegionSet};

use crate::bits::WorldSet;
use crate::error::{Error, Result};
use crate::formula::{Formula, Node};
use crate::frame::{Closure, Frame, FrameJson, GeneralFrame, SymbolicJson};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// ω-chain with star points over K_t, glued at `0*`.
    Kt,
    /// Reflexive-transitive A/B/C ladder, glued at `r₂`.
    S4t,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s {
            "kt" => Ok(Family::Kt),
            "s4t" => Ok(Family::S4t),
            _ => Err(Error::Invalid(format!("unknown family `{s}` (expected kt or s4t)"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Kt => "kt",
            Family::S4t => "s4t",
        })
    }
}

/// `(ρ, i) → (σ, j)` iff `j − i ≥ lo` (`Up`) or `j − i ≤ hi` (`Down`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    Up(i64),
    Down(i64),
}

impl Rule {
    pub fn holds(self, i: u64, j: u64) -> bool {
        let d = j as i64 - i as i64;
        match self {
            Rule::Up(lo) => d >= lo,
            Rule::Down(hi) => d <= hi,
        }
    }

    fn forward(self, s: &OmegaSet) -> OmegaSet {
        let Some(min) = s.least() else { return OmegaSet::empty() };
        match self {
            Rule::Up(lo) => OmegaSet::from_index(min as i64 + lo),
            Rule::Down(hi) => match s.greatest() {
                Some(max) => OmegaSet::up_to(max as i64 + hi),
                None => OmegaSet::all(),
            },
        }
    }

    fn backward(self, s: &OmegaSet) -> OmegaSet {
        let Some(min) = s.least() else { return OmegaSet::empty() };
        match self {
            Rule::Up(lo) => match s.greatest() {
                Some(max) => OmegaSet::up_to(max as i64 - lo),
                None => OmegaSet::all(),
            },
            Rule::Down(hi) => OmegaSet::from_index(min as i64 - hi),
        }
    }
}

/// A world of a symbolic frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymWorld {
    Pt(usize),
    Idx(usize, u64),
}

/// The glued finite part `F_L` with its two designated points and the formula it refutes.
#[derive(Clone, Debug)]
pub struct LocalPart {
    pub frame: Frame,
    pub u: usize,
    pub w: usize,
    pub phi: Formula,
}

impl LocalPart {
    /// Kt: `wL → m → uL`, `φ_L = □⊥`. S4t: reflexive zigzag `wL → l1 ← l2 → uL`, `φ_L = bd₁`.
    pub fn default_for(family: Family) -> LocalPart {
        let (frame, phi) = match family {
            Family::Kt => (
                Frame::new(&["wL", "m", "uL"], &[("wL", "m"), ("m", "uL")]).expect("static frame"),
                Formula::boxed(&Formula::bottom()),
            ),
            Family::S4t => (
                Frame::new(&["wL", "l1", "l2", "uL"], &[("wL", "l1"), ("l2", "l1"), ("l2", "uL")])
                    .expect("static frame")
                    .closure(Closure::Reflexive),
                crate::families::bd(1),
            ),
        };
        let u = frame.index_of("uL").expect("static frame");
        LocalPart { frame, u, w: 0, phi }
    }

    /// `F_L, w ⊭ φ_L`, `u ∉ R♯^{md(φ_L)}[w]`, and reflexive-transitive for S4t.
    pub fn verify(&self, family: Family) -> Result<()> {
        if family == Family::S4t && !(self.frame.is_reflexive() && self.frame.is_transitive()) {
            return Err(Error::Invalid("F_L must be reflexive and transitive".into()));
        }
        let ball = self.frame.reach_sharp(self.w, Some(self.phi.modal_degree() as usize));
        if ball.contains(self.u) {
            return Err(Error::Invalid("u_L lies inside the md(φ_L)-ball around w_L".into()));
        }
        let g = GeneralFrame::kripke(self.frame.clone());
        if crate::semantics::valid_at(&g, &self.phi, self.w, u64::MAX).is_valid() {
            return Err(Error::Invalid("F_L validates φ_L at w_L".into()));
        }
        Ok(())
    }

    /// A valuation on `F_L` refuting `φ_L` at `w`.
    pub fn refuting_valuation(&self) -> Option<crate::semantics::Valuation> {
        let g = GeneralFrame::kripke(self.frame.clone());
        match crate::semantics::valid_at(&g, &self.phi, self.w, u64::MAX) {
            crate::semantics::Verdict::Counter { valuation, .. } => Some(valuation),
            _ => None,
        }
    }
}

/// Symbolic valuation.
pub type SymValuation = BTreeMap<u32, RegionSet>;

#[derive(Clone, Debug)]
pub struct SymbolicFrame {
    family: Family,
    i_set: BTreeSet<u64>,
    local: Frame,
    u_l: usize,
    w_l: usize,
    k: usize,
    points: Vec<String>,
    succ: Vec<WorldSet>,
    pred: Vec<WorldSet>,
    regions: Vec<&'static str>,
    to_region: Vec<Vec<OmegaSet>>,
    rules: Vec<Vec<Option<Rule>>>,
}

impl SymbolicFrame {
    /// Builds the family over `F_L` and sets `k = |X_L| + 6`, verifying `X_I = R♯^k[v]`.
    pub fn new(family: Family, i_set: &[u64], local: &Frame, u_l: usize, w_l: usize) -> Result<SymbolicFrame> {
        let i_set: BTreeSet<u64> = i_set.iter().copied().collect();
        if i_set.contains(&0) {
            return Err(Error::Invalid("I must contain positive integers only".into()));
        }
        if u_l >= local.len() || w_l >= local.len() {
            return Err(Error::WorldOutOfRange(u_l.max(w_l)));
        }
        let mut sf = match family {
            Family::Kt => Self::build_kt(i_set, local, u_l, w_l),
            Family::S4t => Self::build_s4t(i_set, local, u_l, w_l),
        };
        for id in local.ids() {
            if sf.points.iter().filter(|p| *p == id).count() > 1 || sf.parse_index(id).is_some() {
                return Err(Error::Invalid(format!("F_L world id `{id}` collides with a ladder world")));
            }
        }
        sf.set_k(local.len() + 6)?;
        Ok(sf)
    }

    /// The family over its default `F_L`.
    pub fn with_default_local(family: Family, i_set: &[u64]) -> Result<SymbolicFrame> {
        let l = LocalPart::default_for(family);
        Self::new(family, i_set, &l.frame, l.u, l.w)
    }

    fn build_kt(i_set: BTreeSet<u64>, local: &Frame, u_l: usize, w_l: usize) -> SymbolicFrame {
        let nl = local.len();
        let mut points: Vec<String> = local.ids().to_vec();
        points.extend(i_set.iter().map(|i| format!("{i}*")));
        let n = points.len();
        let mut succ = vec![WorldSet::empty(n); n];
        for (a, b) in local.edges() {
            succ[a].insert(b);
        }
        let mut to_region = vec![vec![OmegaSet::empty()]; n];
        to_region[u_l][0] = OmegaSet::all();
        for (s, &i) in i_set.iter().enumerate() {
            to_region[nl + s][0] = OmegaSet::from_index(i as i64);
        }
        Self::assemble(Family::Kt, i_set, local, u_l, w_l, points, succ, vec![""], to_region, vec![vec![
            Some(Rule::Up(1)),
        ]])
    }

    fn build_s4t(i_set: BTreeSet<u64>, local: &Frame, u_l: usize, w_l: usize) -> SymbolicFrame {
        let nl = local.len();
        let mut points: Vec<String> = local.ids().to_vec();
        let top = ["x0", "x1", "x2", "y0", "y1", "r0", "r1", "r'"];
        points.extend(top.iter().map(|s| s.to_string()));
        let cs: Vec<u64> = std::iter::once(0).chain(i_set.iter().copied()).collect();
        points.extend(cs.iter().map(|i| format!("c{i}")));
        let n = points.len();
        let at = |s: &str| nl + top.iter().position(|t| *t == s).expect("top-block name");
        let c = |k: usize| nl + top.len() + k;
        let mut edges: Vec<(usize, usize)> = local.edges().collect();
        for (a, b) in [("x0", "x1"), ("x2", "x1"), ("y1", "y0"), ("r0", "r'"), ("r0", "r1")] {
            edges.push((at(a), at(b)));
        }
        edges.push((u_l, at("r1")));
        for a in 0..cs.len() {
            edges.push((at("r0"), c(a)));
            for b in 0..a {
                edges.push((c(a), c(b)));
            }
        }
        let closed = Frame::from_indices(points.clone(), &edges).closure(Closure::ReflexiveTransitive);
        let rules = vec![vec![Some(Rule::Down(0)), Some(Rule::Down(-1))], vec![Some(Rule::Down(-2)), Some(Rule::Down(0))]];
        let mut direct = vec![vec![OmegaSet::empty(); 2]; n];
        direct[at("x2")][0] = OmegaSet::single(0);
        direct[at("y1")][1] = OmegaSet::single(0);
        direct[at("r0")] = vec![OmegaSet::all(), OmegaSet::all()];
        for (k, &i) in cs.iter().enumerate().skip(1) {
            direct[c(k)][0] = OmegaSet::single(i);
        }
        let mut to_region = vec![vec![OmegaSet::empty(); 2]; n];
        for e in 0..n {
            let mut acc = vec![OmegaSet::empty(); 2];
            for f in closed.succ(e).iter() {
                for r in 0..2 {
                    acc[r] = acc[r].union(&direct[f][r]);
                }
            }
            loop {
                let mut next = acc.clone();
                for r in 0..2 {
                    for s in 0..2 {
                        if let Some(rule) = rules[r][s] {
                            next[s] = next[s].union(&rule.forward(&acc[r]));
                        }
                    }
                }
                if next == acc {
                    break;
                }
                acc = next;
            }
            to_region[e] = acc;
        }
        let succ = (0..n).map(|e| closed.succ(e).clone()).collect();
        Self::assemble(Family::S4t, i_set, local, u_l, w_l, points, succ, vec!["a", "b"], to_region, rules)
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        family: Family,
        i_set: BTreeSet<u64>,
        local: &Frame,
        u_l: usize,
        w_l: usize,
        points: Vec<String>,
        succ: Vec<WorldSet>,
        regions: Vec<&'static str>,
        to_region: Vec<Vec<OmegaSet>>,
        rules: Vec<Vec<Option<Rule>>>,
    ) -> SymbolicFrame {
        let n = points.len();
        let mut pred = vec![WorldSet::empty(n); n];
        for (a, s) in succ.iter().enumerate() {
            for b in s.iter() {
                pred[b].insert(a);
            }
        }
        SymbolicFrame {
            family,
            i_set,
            local: local.clone(),
            u_l,
            w_l,
            k: 0,
            points,
            succ,
            pred,
            regions,
            to_region,
            rules,
        }
    }

    /// Sets `k` after checking `X_I = R♯^k[v]` on every explicit point and on region
    /// indices up to `max(I) + k + 2`; larger indices have the same neighbourhood shape.
    pub fn set_k(&mut self, k: usize) -> Result<()> {
        let bound = self.max_i() + k as u64 + 2;
        let mut starts: Vec<SymWorld> = (0..self.points.len()).map(SymWorld::Pt).collect();
        for r in 0..self.regions.len() {
            starts.extend((0..=bound).map(|i| SymWorld::Idx(r, i)));
        }
        for v in starts {
            if !self.reach_sharp(&self.singleton(v), k).is_full() {
                return Err(Error::Invalid(format!("R♯^{k}[{}] is not the whole frame", self.world_id(v))));
            }
        }
        self.k = k;
        Ok(())
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn i_set(&self) -> &BTreeSet<u64> {
        &self.i_set
    }

    pub fn max_i(&self) -> u64 {
        self.i_set.last().copied().unwrap_or(0)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn local(&self) -> &Frame {
        &self.local
    }

    /// Explicit index of `u_L` (and of every `F_L` world: they come first).
    pub fn u_l(&self) -> usize {
        self.u_l
    }

    pub fn w_l(&self) -> usize {
        self.w_l
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn regions(&self) -> &[&'static str] {
        &self.regions
    }

    pub fn point(&self, id: &str) -> Result<usize> {
        self.points.iter().position(|p| p == id).ok_or_else(|| Error::UnknownWorld(id.to_string()))
    }

    fn parse_index(&self, id: &str) -> Option<SymWorld> {
        self.regions.iter().enumerate().find_map(|(r, pre)| {
            let rest = id.strip_prefix(pre)?;
            if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            rest.parse().ok().map(|i| SymWorld::Idx(r, i))
        })
    }

    /// Point name, or region prefix plus index (`7`, `a3`, `b0`).
    pub fn world(&self, id: &str) -> Result<SymWorld> {
        match self.point(id) {
            Ok(p) => Ok(SymWorld::Pt(p)),
            Err(e) => self.parse_index(id).ok_or(e),
        }
    }

    pub fn world_id(&self, w: SymWorld) -> String {
        match w {
            SymWorld::Pt(p) => self.points[p].clone(),
            SymWorld::Idx(r, i) => format!("{}{i}", self.regions[r]),
        }
    }

    pub fn has_edge(&self, a: SymWorld, b: SymWorld) -> bool {
        match (a, b) {
            (SymWorld::Pt(e), SymWorld::Pt(f)) => self.succ[e].contains(f),
            (SymWorld::Pt(e), SymWorld::Idx(s, j)) => self.to_region[e][s].contains(j),
            (SymWorld::Idx(..), SymWorld::Pt(_)) => false,
            (SymWorld::Idx(r, i), SymWorld::Idx(s, j)) => self.rules[r][s].is_some_and(|rule| rule.holds(i, j)),
        }
    }

    pub fn empty(&self) -> RegionSet {
        RegionSet::empty(self.points.len(), self.regions.len())
    }

    pub fn full(&self) -> RegionSet {
        RegionSet::full(self.points.len(), self.regions.len())
    }

    pub fn singleton(&self, w: SymWorld) -> RegionSet {
        let mut s = self.empty();
        match w {
            SymWorld::Pt(p) => s.pts.insert(p),
            SymWorld::Idx(r, i) => s.reg[r] = OmegaSet::single(i),
        }
        s
    }

    pub fn contains(&self, s: &RegionSet, w: SymWorld) -> bool {
        match w {
            SymWorld::Pt(p) => s.pts.contains(p),
            SymWorld::Idx(r, i) => s.reg[r].contains(i),
        }
    }

    /// Embeds a subset of `F_L`.
    pub fn from_local(&self, u: &WorldSet) -> RegionSet {
        let mut s = self.empty();
        for x in u.iter() {
            s.pts.insert(x);
        }
        s
    }

    /// The explicit points `X_L`.
    pub fn local_set(&self) -> RegionSet {
        self.from_local(&WorldSet::full(self.local.len()))
    }

    /// `R[U]`.
    pub fn image(&self, u: &RegionSet) -> RegionSet {
        let mut out = self.empty();
        for e in u.pts.iter() {
            out.pts.union_with(&self.succ[e]);
            for s in 0..self.regions.len() {
                out.reg[s] = out.reg[s].union(&self.to_region[e][s]);
            }
        }
        for (r, row) in self.rules.iter().enumerate() {
            for (s, rule) in row.iter().enumerate() {
                if let Some(rule) = rule {
                    out.reg[s] = out.reg[s].union(&rule.forward(&u.reg[r]));
                }
            }
        }
        out
    }

    /// `R̆[U]`.
    pub fn preimage(&self, u: &RegionSet) -> RegionSet {
        let mut out = self.empty();
        for e in u.pts.iter() {
            out.pts.union_with(&self.pred[e]);
        }
        for (e, row) in self.to_region.iter().enumerate() {
            if row.iter().zip(&u.reg).any(|(a, b)| a.intersects(b)) {
                out.pts.insert(e);
            }
        }
        for (r, row) in self.rules.iter().enumerate() {
            for (s, rule) in row.iter().enumerate() {
                if let Some(rule) = rule {
                    out.reg[r] = out.reg[r].union(&rule.backward(&u.reg[s]));
                }
            }
        }
        out
    }

    pub fn sharp_step(&self, u: &RegionSet) -> RegionSet {
        u.union(&self.image(u)).union(&self.preimage(u))
    }

    pub fn reach_sharp(&self, u: &RegionSet, k: usize) -> RegionSet {
        let mut cur = u.clone();
        for _ in 0..k {
            let next = self.sharp_step(&cur);
            if next == cur {
                break;
            }
            cur = next;
        }
        cur
    }

    /// Exact truth set. Variable-free formulas need an empty valuation.
    pub fn truth_set(&self, v: &SymValuation, f: &Formula) -> Result<RegionSet> {
        let mut memo = HashMap::new();
        self.truth_rec(v, f, &mut memo)
    }

    /// Truth sets of several formulas under one valuation, sharing subformula work.
    pub fn truth_sets(&self, v: &SymValuation, fs: &[Formula]) -> Result<Vec<RegionSet>> {
        let mut memo = HashMap::new();
        fs.iter().map(|f| self.truth_rec(v, f, &mut memo)).collect()
    }

    fn truth_rec(&self, v: &SymValuation, f: &Formula, memo: &mut HashMap<usize, RegionSet>) -> Result<RegionSet> {
        if let Some(s) = memo.get(&f.id()) {
            return Ok(s.clone());
        }
        let s = match f.node() {
            Node::Var(p) => v.get(p).cloned().ok_or(Error::UnassignedVariable(*p))?,
            Node::Bottom => self.empty(),
            Node::Implies(a, b) => {
                let a = self.truth_rec(v, a, memo)?;
                let b = self.truth_rec(v, b, memo)?;
                a.complement().union(&b)
            }
            Node::Box(a) => self.preimage(&self.truth_rec(v, a, memo)?.complement()).complement(),
            Node::PastDia(a) => self.image(&self.truth_rec(v, a, memo)?),
        };
        memo.insert(f.id(), s.clone());
        Ok(s)
    }

    /// Exact validity of a variable-free formula.
    pub fn valid_closed(&self, f: &Formula) -> Result<bool> {
        Ok(self.truth_set(&SymValuation::new(), f)?.is_full())
    }

    /// Finite window `0..=n` of every region plus all explicit points.
    pub fn truncate(&self, n: u64) -> Result<Truncation> {
        if n < self.max_i() + 2 {
            return Err(Error::Invalid(format!("truncation bound {n} is below max(I) + 2 = {}", self.max_i() + 2)));
        }
        let mut positions: Vec<SymWorld> = (0..self.points.len()).map(SymWorld::Pt).collect();
        for r in 0..self.regions.len() {
            positions.extend((0..=n).map(|i| SymWorld::Idx(r, i)));
        }
        let ids: Vec<String> = positions.iter().map(|&w| self.world_id(w)).collect();
        let mut edges = Vec::new();
        for (a, &x) in positions.iter().enumerate() {
            for (b, &y) in positions.iter().enumerate() {
                if self.has_edge(x, y) {
                    edges.push((a, b));
                }
            }
        }
        let base = Frame::from_indices(ids, &edges);
        let gens: Vec<WorldSet> = (0..self.local.len()).map(|x| WorldSet::singleton(base.len(), x)).collect();
        let frame = GeneralFrame::close_internal(&base, &gens);
        Ok(Truncation { n, positions, frame })
    }

    /// Generator edges of the S4 ladder before closure, on the window `0..=n`.
    /// Used as an independent oracle for the closed-form rules.
    pub fn s4t_generator_frame(&self, n: u64) -> Result<Frame> {
        if self.family != Family::S4t {
            return Err(Error::Invalid("generator frame exists only for the S4 ladder".into()));
        }
        let t = self.truncate(n)?;
        let ids = t.frame.base().ids().to_vec();
        let ix = |id: String| ids.iter().position(|x| *x == id).expect("window world");
        let mut edges: Vec<(usize, usize)> = self.local.edges().collect();
        for (a, b) in [("x0", "x1"), ("x2", "x1"), ("x2", "a0"), ("y1", "y0"), ("y1", "b0"), ("r0", "r'"), ("r0", "r1")] {
            edges.push((ix(a.into()), ix(b.into())));
        }
        edges.push((self.u_l, ix("r1".into())));
        let cs: Vec<u64> = std::iter::once(0).chain(self.i_set.iter().copied()).collect();
        for (a, &i) in cs.iter().enumerate() {
            for &j in &cs[..a] {
                edges.push((ix(format!("c{i}")), ix(format!("c{j}"))));
            }
            if i > 0 {
                edges.push((ix(format!("c{i}")), ix(format!("a{i}"))));
            }
        }
        for z in ids.iter().filter(|z| z.starts_with(['a', 'b', 'c']) && z[1..].bytes().all(|b| b.is_ascii_digit())) {
            edges.push((ix("r0".into()), ix(z.clone())));
        }
        for i in 0..=n {
            for j in 0..i {
                edges.push((ix(format!("a{i}")), ix(format!("a{j}"))));
                edges.push((ix(format!("a{i}")), ix(format!("b{j}"))));
                edges.push((ix(format!("b{i}")), ix(format!("b{j}"))));
                if i > j + 1 {
                    edges.push((ix(format!("b{i}")), ix(format!("a{j}"))));
                }
            }
        }
        Ok(Frame::from_indices(ids.clone(), &edges))
    }

    /// JSON view of a region set: explicit point names and per-region descriptors.
    pub fn describe(&self, s: &RegionSet) -> Value {
        let mut regions = serde_json::Map::new();
        for (r, name) in self.regions.iter().enumerate() {
            let (mode, ex) = match &s.reg[r] {
                OmegaSet::Fin(e) => ("FIN", e),
                OmegaSet::Cofin(e) => ("COFIN", e),
            };
            let key = if name.is_empty() { "omega".to_string() } else { name.to_string() };
            regions.insert(key, json!({"mode": mode, "exceptions": ex}));
        }
        let pts: Vec<&str> = s.pts.iter().map(|p| self.points[p].as_str()).collect();
        json!({"points": pts, "regions": regions})
    }

    pub fn from_json(j: &SymbolicJson) -> Result<SymbolicFrame> {
        let family: Family = j.family.parse()?;
        let local = j.fl.frame()?;
        let u = local.index_of(&j.u_l)?;
        let w = local.index_of(&j.w_l)?;
        Self::new(family, &j.i, &local, u, w)
    }

    pub fn to_json(&self) -> SymbolicJson {
        SymbolicJson {
            family: self.family.to_string(),
            i: self.i_set.iter().copied().collect(),
            fl: FrameJson::from_frame(&self.local),
            u_l: self.local.id(self.u_l).to_string(),
            w_l: self.local.id(self.w_l).to_string(),
        }
    }
}

/// A finite window of a symbolic frame.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub n: u64,
    /// Symbolic world of each truncated world.
    pub positions: Vec<SymWorld>,
    pub frame: GeneralFrame,
}

impl Truncation {
    pub fn restrict(&self, s: &RegionSet) -> WorldSet {
        let mut out = WorldSet::empty(self.positions.len());
        for (x, &w) in self.positions.iter().enumerate() {
            let inside = match w {
                SymWorld::Pt(p) => s.pts.contains(p),
                SymWorld::Idx(r, i) => s.reg[r].contains(i),
            };
            if inside {
                out.insert(x);
            }
        }
        out
    }

    pub fn lift(&self, sf: &SymbolicFrame, u: &WorldSet) -> RegionSet {
        let mut out = sf.empty();
        for x in u.iter() {
            out = out.union(&sf.singleton(self.positions[x]));
        }
        out
    }

    /// Worlds whose `R♯^md`-ball in the full symbolic frame stays inside the window.
    pub fn interior(&self, sf: &SymbolicFrame, md: usize) -> WorldSet {
        let mut out = WorldSet::empty(self.positions.len());
        for (x, &w) in self.positions.iter().enumerate() {
            let ball = sf.reach_sharp(&sf.singleton(w), md);
            if ball.reg.iter().all(|r| r.greatest().is_some_and(|m| m <= self.n) || r.is_empty()) {
                out.insert(x);
            }
        }
        out
    }
}

/// Seeded generator of members of the internal family: random subsets of `X_L` (or `∅`)
/// pushed through `∩`, complement and both images.
pub struct AdmissibleSampler<'a> {
    sf: &'a SymbolicFrame,
    rng: ChaCha8Rng,
}

impl<'a> AdmissibleSampler<'a> {
    pub fn new(sf: &'a SymbolicFrame, seed: u64) -> Self {
        AdmissibleSampler { sf, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn generator(&mut self) -> RegionSet {
        let mut s = self.sf.empty();
        if self.rng.gen_ratio(1, 8) {
            return s;
        }
        for x in 0..self.sf.local.len() {
            if self.rng.gen_bool(0.5) {
                s.pts.insert(x);
            }
        }
        s
    }

    /// At most `depth` operations on top of a generator.
    pub fn sample(&mut self, depth: usize) -> RegionSet {
        let mut cur = self.generator();
        let steps = self.rng.gen_range(0..=depth);
        for _ in 0..steps {
            cur = match self.rng.gen_range(0..4) {
                0 => cur.complement(),
                1 => {
                    let other = self.sample(depth / 2);
                    cur.intersection(&other)
                }
                2 => self.sf.image(&cur),
                _ => self.sf.preimage(&cur),
            };
        }
        cur
    }

    pub fn valuation(&mut self, vars: &BTreeSet<u32>, depth: usize) -> SymValuation {
        vars.iter().map(|&p| (p, self.sample(depth))).collect()
    }
}

pub fn sample_admissible(sf: &SymbolicFrame, seed: u64, depth: usize) -> RegionSet {
    AdmissibleSampler::new(sf, seed).sample(depth)
}
