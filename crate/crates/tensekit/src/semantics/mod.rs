//! Truth sets and validity on finite general frames.

pub mod eval;

use crate::bits::WorldSet;
use crate::error::{Error, Result};
use crate::formula::{Formula, Node};
use crate::frame::{Dir, Frame, GeneralFrame};
use eval::{Machine, Program};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::ops::ControlFlow;

/// Variable index to world set.
pub type Valuation = BTreeMap<u32, WorldSet>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Counter { valuation: Valuation, world: usize },
    BudgetExceeded { tried: u64 },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn is_counter(&self) -> bool {
        matches!(self, Verdict::Counter { .. })
    }
}

/// JSON-friendly view of a verdict.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport {
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub world: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub valuation: Option<BTreeMap<String, Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tried: Option<u64>,
}

impl VerdictReport {
    pub fn new(f: &Frame, v: &Verdict) -> Self {
        match v {
            Verdict::Valid => VerdictReport { verdict: "valid", world: None, valuation: None, tried: None },
            Verdict::Counter { valuation, world } => VerdictReport {
                verdict: "counter",
                world: Some(f.id(*world).to_string()),
                valuation: Some(valuation.iter().map(|(p, s)| (format!("p{p}"), f.names(s))).collect()),
                tried: None,
            },
            Verdict::BudgetExceeded { tried } => {
                VerdictReport { verdict: "budget_exceeded", world: None, valuation: None, tried: Some(*tried) }
            }
        }
    }
}

/// `V(φ)` on a Kripke frame, memoized over shared nodes.
pub fn truth_set(f: &Frame, v: &Valuation, phi: &Formula) -> Result<WorldSet> {
    let mut memo = HashMap::new();
    truth_rec(f, v, phi, &mut memo)
}

/// `V(φ)` on a general frame; every assigned set must be internal.
pub fn truth_set_general(g: &GeneralFrame, v: &Valuation, phi: &Formula) -> Result<WorldSet> {
    for (p, s) in v {
        if !g.contains(s) {
            return Err(Error::NotInternal(*p));
        }
    }
    truth_set(g.base(), v, phi)
}

fn truth_rec(f: &Frame, v: &Valuation, phi: &Formula, memo: &mut HashMap<usize, WorldSet>) -> Result<WorldSet> {
    if let Some(s) = memo.get(&phi.id()) {
        return Ok(s.clone());
    }
    let s = match phi.node() {
        Node::Var(i) => v.get(i).cloned().ok_or(Error::UnassignedVariable(*i))?,
        Node::Bottom => f.empty_set(),
        Node::Implies(a, b) => truth_rec(f, v, a, memo)?.complement().union(&truth_rec(f, v, b, memo)?),
        Node::Box(a) => f.image(Dir::Bwd, &truth_rec(f, v, a, memo)?.complement()).complement(),
        Node::PastDia(a) => f.image(Dir::Fwd, &truth_rec(f, v, a, memo)?),
    };
    memo.insert(phi.id(), s.clone());
    Ok(s)
}

fn vars_of(phi: &Formula) -> Vec<u32> {
    phi.vars().into_iter().collect()
}

/// Lowest set bit across `worlds`: the earliest failing valuation, then the lowest world.
fn first_failure(m: &Machine<'_>, live: &[u64], worlds: &[usize]) -> Option<(usize, usize)> {
    for (t, &lv) in live.iter().enumerate() {
        let any = worlds.iter().fold(0u64, |acc, &x| acc | (!m.root(0, x)[t] & lv));
        if any != 0 {
            let b = any.trailing_zeros() as usize;
            let x = worlds.iter().copied().find(|&x| !m.root(0, x)[t] >> b & 1 == 1).unwrap();
            return Some((t * 64 + b, x));
        }
    }
    None
}

fn check(g: &GeneralFrame, phi: &Formula, at: Option<usize>, budget: u64) -> Verdict {
    let vars = vars_of(phi);
    let en = eval::Enumeration::new(g, vars.clone());
    match en.total {
        Some(t) if t <= budget => {}
        _ => return Verdict::BudgetExceeded { tried: 0 },
    }
    let worlds: Vec<usize> = match at {
        Some(x) => vec![x],
        None => (0..g.len()).collect(),
    };
    let mut found = None;
    eval::for_each_batch(g, std::slice::from_ref(phi), &vars, |b| match first_failure(b.machine, &b.live, &worlds) {
        Some((bit, x)) => {
            found = Some((b.base + bit as u64, x));
            ControlFlow::Break(())
        }
        None => ControlFlow::Continue(()),
    });
    match found {
        None => Verdict::Valid,
        Some((v, world)) => Verdict::Counter { valuation: en.valuation(v), world },
    }
}

/// `F ⊨ φ` by exhaustive enumeration when the valuation count fits in `budget`.
pub fn valid(g: &GeneralFrame, phi: &Formula, budget: u64) -> Verdict {
    check(g, phi, None, budget)
}

/// `F, x ⊨ φ`.
pub fn valid_at(g: &GeneralFrame, phi: &Formula, x: usize, budget: u64) -> Verdict {
    check(g, phi, Some(x), budget)
}

/// For each formula, the worlds at which it holds under every valuation.
/// All formulas share one enumeration over the union of their variables.
/// `None` when the valuation count exceeds `budget`.
pub fn valid_worlds(g: &GeneralFrame, formulas: &[Formula], budget: u64) -> Option<Vec<WorldSet>> {
    let vars: Vec<u32> = formulas.iter().flat_map(|f| f.vars()).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    match eval::Enumeration::new(g, vars.clone()).total {
        Some(t) if t <= budget => {}
        _ => return None,
    }
    let n = g.len();
    let mut fails = vec![WorldSet::empty(n); formulas.len()];
    eval::for_each_batch(g, formulas, &vars, |b| {
        for (r, bad) in fails.iter_mut().enumerate() {
            for x in 0..n {
                if !bad.contains(x) && b.machine.root(r, x).iter().zip(&b.live).any(|(v, l)| !v & l != 0) {
                    bad.insert(x);
                }
            }
        }
        ControlFlow::Continue(())
    });
    Some(fails.iter().map(WorldSet::complement).collect())
}

/// Random falsification search; never answers `Valid`.
pub fn sampled_valid(g: &GeneralFrame, phi: &Formula, trials: u64, seed: u64) -> Verdict {
    sampled(g, phi, None, trials, seed)
}

pub fn sampled_valid_at(g: &GeneralFrame, phi: &Formula, x: usize, trials: u64, seed: u64) -> Verdict {
    sampled(g, phi, Some(x), trials, seed)
}

fn random_member(g: &GeneralFrame, rng: &mut ChaCha8Rng) -> WorldSet {
    let mut s = g.base().empty_set();
    for a in g.atoms() {
        if rng.gen::<bool>() {
            s.union_with(a);
        }
    }
    s
}

fn sampled(g: &GeneralFrame, phi: &Formula, at: Option<usize>, trials: u64, seed: u64) -> Verdict {
    let vars = vars_of(phi);
    let prog = Program::compile(std::slice::from_ref(phi), &vars);
    let n = g.len();
    let w = eval::batch_words(trials, &prog, n);
    let mut m = Machine::new(&prog, g.base(), w);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let worlds: Vec<usize> = match at {
        Some(x) => vec![x],
        None => (0..n).collect(),
    };
    let mut done = 0u64;
    while done < trials {
        let here = (trials - done).min(64 * w as u64) as usize;
        let mut drawn: Vec<Valuation> = Vec::with_capacity(here);
        m.inputs.fill(0);
        for j in 0..here {
            let val: Valuation = vars.iter().map(|&p| (p, random_member(g, &mut rng))).collect();
            for (k, s) in val.values().enumerate() {
                for x in s.iter() {
                    m.inputs[(k * n + x) * w + j / 64] |= 1 << (j % 64);
                }
            }
            drawn.push(val);
        }
        m.run();
        let live: Vec<u64> = (0..w)
            .map(|t| {
                let lo = t * 64;
                if lo >= here {
                    0
                } else if here - lo >= 64 {
                    !0
                } else {
                    (1u64 << (here - lo)) - 1
                }
            })
            .collect();
        if let Some((bit, world)) = first_failure(&m, &live, &worlds) {
            return Verdict::Counter { valuation: drawn.swap_remove(bit), world };
        }
        done += here as u64;
    }
    Verdict::BudgetExceeded { tried: trials }
}

/// Frame classes checked structurally.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameClass {
    K4t,
    S4t,
    S5t,
}

pub fn frame_class_check(f: &Frame, cls: FrameClass) -> bool {
    match cls {
        FrameClass::K4t => f.is_transitive(),
        FrameClass::S4t => f.is_transitive() && f.is_reflexive(),
        FrameClass::S5t => {
            f.is_transitive() && !f.is_empty() && f.cluster_of(0).is_full() && f.edge_count() > 0
        }
    }
}
