//! Tense formulas over the primitives `⊥`, `→`, `□` (future box) and `◆` (past diamond).
//!
//! Every other connective is sugar that expands into these five node kinds.
//! Nodes are reference counted and shared, so builders that reuse a subformula
//! produce a DAG rather than a tree.

mod parse;
mod print;

pub use parse::{parse, ParseError};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// The five primitive node kinds.
#[derive(Clone, PartialEq, Eq)]
pub enum Node {
    Var(u32),
    Bottom,
    Implies(Formula, Formula),
    Box(Formula),
    PastDia(Formula),
}

struct Inner {
    node: Node,
    hash: u64,
    degree: u32,
}

/// A shared, immutable formula.
#[derive(Clone)]
pub struct Formula(Arc<Inner>);

fn mix(a: u64, b: u64) -> u64 {
    let x = (a ^ b.rotate_left(29)).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    x ^ (x >> 31)
}

impl Formula {
    fn make(node: Node) -> Formula {
        let (hash, degree) = match &node {
            Node::Var(i) => (mix(1, *i as u64), 0),
            Node::Bottom => (mix(2, 0), 0),
            Node::Implies(a, b) => (mix(mix(3, a.0.hash), b.0.hash), a.0.degree.max(b.0.degree)),
            Node::Box(a) => (mix(4, a.0.hash), a.0.degree + 1),
            Node::PastDia(a) => (mix(5, a.0.hash), a.0.degree + 1),
        };
        Formula(Arc::new(Inner { node, hash, degree }))
    }

    pub fn var(i: u32) -> Formula {
        Self::make(Node::Var(i))
    }

    pub fn bottom() -> Formula {
        Self::make(Node::Bottom)
    }

    pub fn implies(a: &Formula, b: &Formula) -> Formula {
        Self::make(Node::Implies(a.clone(), b.clone()))
    }

    /// `□φ`
    pub fn boxed(a: &Formula) -> Formula {
        Self::make(Node::Box(a.clone()))
    }

    /// `◆φ`
    pub fn past_dia(a: &Formula) -> Formula {
        Self::make(Node::PastDia(a.clone()))
    }

    /// `¬φ ≡ φ→⊥`
    pub fn not(a: &Formula) -> Formula {
        Self::implies(a, &Self::bottom())
    }

    /// `⊤ ≡ ¬⊥`
    pub fn top() -> Formula {
        Self::not(&Self::bottom())
    }

    /// `φ∧ψ ≡ ¬(φ→¬ψ)`
    pub fn and(a: &Formula, b: &Formula) -> Formula {
        Self::not(&Self::implies(a, &Self::not(b)))
    }

    /// `φ∨ψ ≡ ¬φ→ψ`
    pub fn or(a: &Formula, b: &Formula) -> Formula {
        Self::implies(&Self::not(a), b)
    }

    /// `◇φ ≡ ¬□¬φ`
    pub fn dia(a: &Formula) -> Formula {
        Self::not(&Self::boxed(&Self::not(a)))
    }

    /// `■φ ≡ ¬◆¬φ`
    pub fn past_box(a: &Formula) -> Formula {
        Self::not(&Self::past_dia(&Self::not(a)))
    }

    /// Left-nested conjunction; `⊤` for an empty list.
    pub fn conj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items.into_iter().reduce(|a, b| Self::and(&a, &b)).unwrap_or_else(Self::top)
    }

    /// Left-nested disjunction; `⊥` for an empty list.
    pub fn disj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items.into_iter().reduce(|a, b| Self::or(&a, &b)).unwrap_or_else(Self::bottom)
    }

    /// Applies `op` `n` times.
    pub fn iterate(n: usize, a: &Formula, op: fn(&Formula) -> Formula) -> Formula {
        (0..n).fold(a.clone(), |acc, _| op(&acc))
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    /// Modal degree, cached at construction.
    pub fn modal_degree(&self) -> u32 {
        self.0.degree
    }

    /// Identity of the shared node, usable as a memo key while `self` is alive.
    pub fn id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn ptr_eq(&self, o: &Formula) -> bool {
        Arc::ptr_eq(&self.0, &o.0)
    }

    /// Free variables in increasing order.
    pub fn vars(&self) -> BTreeSet<u32> {
        let mut seen = BTreeSet::new();
        let mut out = BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(f) = stack.pop() {
            if !seen.insert(f.id()) {
                continue;
            }
            match f.node() {
                Node::Var(i) => {
                    out.insert(*i);
                }
                Node::Bottom => {}
                Node::Implies(a, b) => {
                    stack.push(a.clone());
                    stack.push(b.clone());
                }
                Node::Box(a) | Node::PastDia(a) => stack.push(a.clone()),
            }
        }
        out
    }

    /// Number of distinct shared nodes.
    pub fn dag_size(&self) -> usize {
        let mut seen = BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(f) = stack.pop() {
            if !seen.insert(f.id()) {
                continue;
            }
            match f.node() {
                Node::Implies(a, b) => {
                    stack.push(a.clone());
                    stack.push(b.clone());
                }
                Node::Box(a) | Node::PastDia(a) => stack.push(a.clone()),
                _ => {}
            }
        }
        seen.len()
    }

    /// Replaces variables homomorphically; variables missing from `s` stay.
    pub fn substitute(&self, s: &BTreeMap<u32, Formula>) -> Formula {
        let mut memo: HashMap<usize, Formula> = HashMap::new();
        subst_rec(self, s, &mut memo)
    }

    /// Rewrites every `⊤∧φ` to `φ`, bottom-up. Literal builders never call this.
    pub fn simplify_top(&self) -> Formula {
        let mut memo: HashMap<usize, Formula> = HashMap::new();
        simp_rec(self, &mut memo)
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self.node(), Node::Bottom)
    }

    pub fn is_top(&self) -> bool {
        matches!(self.node(), Node::Implies(a, b) if a.is_bottom() && b.is_bottom())
    }

    /// Matches `¬φ` and returns `φ`.
    pub fn as_not(&self) -> Option<&Formula> {
        match self.node() {
            Node::Implies(a, b) if b.is_bottom() => Some(a),
            _ => None,
        }
    }

    /// Matches `φ∧ψ` in its expanded shape `¬(φ→¬ψ)`.
    pub fn as_and(&self) -> Option<(&Formula, &Formula)> {
        let inner = self.as_not()?;
        match inner.node() {
            Node::Implies(a, nb) => nb.as_not().map(|b| (a, b)),
            _ => None,
        }
    }
}

fn subst_rec(f: &Formula, s: &BTreeMap<u32, Formula>, memo: &mut HashMap<usize, Formula>) -> Formula {
    if let Some(r) = memo.get(&f.id()) {
        return r.clone();
    }
    let r = match f.node() {
        Node::Var(i) => s.get(i).cloned().unwrap_or_else(|| f.clone()),
        Node::Bottom => f.clone(),
        Node::Implies(a, b) => Formula::implies(&subst_rec(a, s, memo), &subst_rec(b, s, memo)),
        Node::Box(a) => Formula::boxed(&subst_rec(a, s, memo)),
        Node::PastDia(a) => Formula::past_dia(&subst_rec(a, s, memo)),
    };
    memo.insert(f.id(), r.clone());
    r
}

fn simp_rec(f: &Formula, memo: &mut HashMap<usize, Formula>) -> Formula {
    if let Some(r) = memo.get(&f.id()) {
        return r.clone();
    }
    let r = if let Some((a, b)) = f.as_and().filter(|(a, _)| a.is_top()) {
        let _ = a;
        simp_rec(b, memo)
    } else {
        match f.node() {
            Node::Var(_) | Node::Bottom => f.clone(),
            Node::Implies(a, b) => Formula::implies(&simp_rec(a, memo), &simp_rec(b, memo)),
            Node::Box(a) => Formula::boxed(&simp_rec(a, memo)),
            Node::PastDia(a) => Formula::past_dia(&simp_rec(a, memo)),
        }
    };
    memo.insert(f.id(), r.clone());
    r
}

impl PartialEq for Formula {
    fn eq(&self, o: &Formula) -> bool {
        self.ptr_eq(o) || (self.0.hash == o.0.hash && self.0.degree == o.0.degree && self.0.node == o.0.node)
    }
}

impl Eq for Formula {}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Formula({self})")
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: u32) -> Formula {
        Formula::var(i)
    }

    #[test]
    fn degree_examples() {
        assert_eq!(p(0).modal_degree(), 0);
        let f = Formula::implies(&Formula::boxed(&p(0)), &Formula::past_dia(&p(1)));
        assert_eq!(f.modal_degree(), 1);
        let g = Formula::boxed(&Formula::boxed(&Formula::past_dia(&p(0))));
        assert_eq!(g.modal_degree(), 3);
    }

    #[test]
    fn substitution_examples() {
        let f = Formula::implies(&p(0), &p(1));
        let s = BTreeMap::from([(0, Formula::bottom())]);
        assert_eq!(f.substitute(&s), Formula::implies(&Formula::bottom(), &p(1)));
        let g = Formula::boxed(&p(0));
        let s = BTreeMap::from([(0, Formula::past_dia(&p(0)))]);
        assert_eq!(g.substitute(&s), Formula::boxed(&Formula::past_dia(&p(0))));
    }

    #[test]
    fn sharing_keeps_dag_small() {
        let mut f = p(0);
        for _ in 0..200 {
            f = Formula::and(&f, &f);
        }
        assert!(f.dag_size() <= 7 * 200 + 1);
        assert_eq!(f.vars(), BTreeSet::from([0]));
    }

    #[test]
    fn top_simplifier() {
        let t = Formula::top();
        let f = Formula::and(&t, &Formula::and(&t, &p(2)));
        assert_eq!(f.simplify_top(), p(2));
    }
}
