//! Bitsliced evaluation: bit `j` of word `w` at world `x` holds the truth value of a
//! node at `x` under valuation `64*w + j` of the current batch.

use crate::bits::WorldSet;
use crate::formula::{Formula, Node};
use crate::frame::{Frame, GeneralFrame};
use std::collections::HashMap;
use std::ops::ControlFlow;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    /// Position in [`Program::vars`].
    Var(usize),
    Bot,
    Imp(usize, usize),
    Box(usize),
    PDia(usize),
}

/// A set of formulas flattened to a topologically ordered, hash-consed op list.
#[derive(Debug, Clone)]
pub struct Program {
    pub ops: Vec<Op>,
    pub roots: Vec<usize>,
    pub vars: Vec<u32>,
}

impl Program {
    /// Compiles `formulas`; `vars` fixes the variable order and must cover every free variable.
    pub fn compile(formulas: &[Formula], vars: &[u32]) -> Program {
        let var_pos: HashMap<u32, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut by_ptr: HashMap<usize, usize> = HashMap::new();
        let mut by_op: HashMap<Op, usize> = HashMap::new();
        let mut ops = Vec::new();
        let mut roots = Vec::new();
        // Keep every visited node alive so pointer keys stay unique.
        let mut alive: Vec<Formula> = Vec::new();
        for f in formulas {
            let mut stack: Vec<(Formula, bool)> = vec![(f.clone(), false)];
            while let Some((g, expanded)) = stack.pop() {
                if by_ptr.contains_key(&g.id()) {
                    continue;
                }
                let kids: Vec<Formula> = match g.node() {
                    Node::Implies(a, b) => vec![a.clone(), b.clone()],
                    Node::Box(a) | Node::PastDia(a) => vec![a.clone()],
                    _ => vec![],
                };
                if !expanded && kids.iter().any(|k| !by_ptr.contains_key(&k.id())) {
                    stack.push((g.clone(), true));
                    for k in kids {
                        stack.push((k, false));
                    }
                    continue;
                }
                let op = match g.node() {
                    Node::Var(i) => Op::Var(*var_pos.get(i).unwrap_or_else(|| panic!("variable p{i} missing from order"))),
                    Node::Bottom => Op::Bot,
                    Node::Implies(a, b) => Op::Imp(by_ptr[&a.id()], by_ptr[&b.id()]),
                    Node::Box(a) => Op::Box(by_ptr[&a.id()]),
                    Node::PastDia(a) => Op::PDia(by_ptr[&a.id()]),
                };
                let idx = *by_op.entry(op).or_insert_with(|| {
                    ops.push(op);
                    ops.len() - 1
                });
                by_ptr.insert(g.id(), idx);
                alive.push(g);
            }
            roots.push(by_ptr[&f.id()]);
        }
        Program { ops, roots, vars: vars.to_vec() }
    }
}

/// Evaluator state for one frame and one batch width.
pub struct Machine<'a> {
    prog: &'a Program,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    n: usize,
    w: usize,
    buf: Vec<u64>,
    /// Variable input masks laid out `[var][world][word]`.
    pub inputs: Vec<u64>,
}

impl<'a> Machine<'a> {
    pub fn new(prog: &'a Program, frame: &Frame, w: usize) -> Machine<'a> {
        let n = frame.len();
        Machine {
            prog,
            succ: (0..n).map(|x| frame.succ(x).to_vec()).collect(),
            pred: (0..n).map(|x| frame.pred(x).to_vec()).collect(),
            n,
            w,
            buf: vec![0; prog.ops.len() * n * w],
            inputs: vec![0; prog.vars.len() * n * w],
        }
    }

    pub fn words(&self) -> usize {
        self.w
    }

    pub fn run(&mut self) {
        let stride = self.n * self.w;
        let w = self.w;
        for (i, op) in self.prog.ops.iter().enumerate() {
            let (prev, rest) = self.buf.split_at_mut(i * stride);
            let cur = &mut rest[..stride];
            let node = |j: usize| &prev[j * stride..(j + 1) * stride];
            match *op {
                Op::Var(k) => cur.copy_from_slice(&self.inputs[k * stride..(k + 1) * stride]),
                Op::Bot => cur.fill(0),
                Op::Imp(a, b) => {
                    let (a, b) = (node(a), node(b));
                    for t in 0..stride {
                        cur[t] = !a[t] | b[t];
                    }
                }
                Op::Box(a) => {
                    let a = node(a);
                    for x in 0..self.n {
                        let out = &mut cur[x * w..(x + 1) * w];
                        out.fill(!0);
                        for &y in &self.succ[x] {
                            for t in 0..w {
                                out[t] &= a[y * w + t];
                            }
                        }
                    }
                }
                Op::PDia(a) => {
                    let a = node(a);
                    for x in 0..self.n {
                        let out = &mut cur[x * w..(x + 1) * w];
                        out.fill(0);
                        for &y in &self.pred[x] {
                            for t in 0..w {
                                out[t] |= a[y * w + t];
                            }
                        }
                    }
                }
            }
        }
    }

    /// Words of root `r` at world `x`.
    pub fn root(&self, r: usize, x: usize) -> &[u64] {
        let i = self.prog.roots[r];
        let off = (i * self.n + x) * self.w;
        &self.buf[off..off + self.w]
    }

    /// Truth set of root `r` under the valuation at bit `bit` of the batch.
    pub fn root_set(&self, r: usize, bit: usize) -> WorldSet {
        WorldSet::from_iter(self.n, (0..self.n).filter(|&x| self.root(r, x)[bit / 64] >> (bit % 64) & 1 == 1))
    }
}

const PATTERN: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Canonical enumeration of all valuations of `vars` over the internal family of `g`.
///
/// Valuation index `v` is read in binary with the first variable most significant;
/// each variable takes `atoms` bits and selects the member whose atoms are its set bits.
pub struct Enumeration<'g> {
    pub g: &'g GeneralFrame,
    pub vars: Vec<u32>,
    atoms: usize,
    /// `None` when the count does not fit in 64 bits.
    pub total: Option<u64>,
}

impl<'g> Enumeration<'g> {
    pub fn new(g: &'g GeneralFrame, vars: Vec<u32>) -> Self {
        let atoms = g.atoms().len();
        let bits = atoms * vars.len();
        let total = (bits < 64).then(|| 1u64 << bits);
        Enumeration { g, vars, atoms, total }
    }

    /// Valuation number `v`.
    pub fn valuation(&self, v: u64) -> super::Valuation {
        let nv = self.vars.len();
        let mask = if self.atoms >= 64 { !0 } else { (1u64 << self.atoms) - 1 };
        self.vars
            .iter()
            .enumerate()
            .map(|(k, &p)| (p, self.g.member((v >> ((nv - 1 - k) * self.atoms)) & mask)))
            .collect()
    }

    /// Fills variable masks for the batch starting at `base` (a multiple of `64*w`).
    pub fn fill(&self, m: &mut Machine<'_>, base: u64) {
        let n = self.g.len();
        let w = m.words();
        let nv = self.vars.len();
        for k in 0..nv {
            for x in 0..n {
                let s = (nv - 1 - k) * self.atoms + self.g.atom_of(x);
                let off = (k * n + x) * w;
                for t in 0..w {
                    m.inputs[off + t] = if s < 6 {
                        PATTERN[s]
                    } else if s < 64 && ((base + 64 * t as u64) >> s) & 1 == 1 {
                        !0
                    } else {
                        0
                    };
                }
            }
        }
    }
}

/// Batch width in words for `total` valuations, capped by a memory budget.
pub fn batch_words(total: u64, prog: &Program, n: usize) -> usize {
    let want = total.div_ceil(64).clamp(1, 64) as usize;
    let cells = (prog.ops.len() + prog.vars.len()).max(1) * n.max(1);
    let cap = ((1usize << 22) / cells).max(1);
    want.min(cap)
}

/// One evaluated batch handed to a visitor.
pub struct Batch<'m, 'a> {
    pub machine: &'m Machine<'a>,
    /// Index of the valuation at bit 0.
    pub base: u64,
    /// Per-word mask of bits that are real valuations.
    pub live: Vec<u64>,
}

/// Evaluates `formulas` under every valuation of `vars` on `g`, batch by batch, in canonical order.
/// Returns `None` if the visitor stopped early, else the number of valuations visited.
pub fn for_each_batch(
    g: &GeneralFrame,
    formulas: &[Formula],
    vars: &[u32],
    mut visit: impl FnMut(&Batch<'_, '_>) -> ControlFlow<()>,
) -> Option<u64> {
    let en = Enumeration::new(g, vars.to_vec());
    let total = en.total.expect("valuation space too large for exhaustive enumeration");
    let prog = Program::compile(formulas, vars);
    let w = batch_words(total, &prog, g.len());
    let mut m = Machine::new(&prog, g.base(), w);
    let step = 64 * w as u64;
    let mut base = 0u64;
    while base < total {
        en.fill(&mut m, base);
        m.run();
        let live = (0..w)
            .map(|t| {
                let start = base + 64 * t as u64;
                if start >= total {
                    0
                } else if total - start >= 64 {
                    !0
                } else {
                    (1u64 << (total - start)) - 1
                }
            })
            .collect();
        let b = Batch { machine: &m, base, live };
        if visit(&b).is_break() {
            return None;
        }
        base = base.saturating_add(step);
    }
    Some(total)
}
