//! Printer over primitives only.

use super::{Formula, Node};
use std::fmt;

fn write_f(f: &Formula, paren_implies: bool, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    match f.node() {
        Node::Var(i) => write!(out, "p{i}"),
        Node::Bottom => out.write_str("#f"),
        Node::Implies(a, b) => {
            if paren_implies {
                out.write_str("(")?;
            }
            write_f(a, true, out)?;
            out.write_str(" -> ")?;
            write_f(b, false, out)?;
            if paren_implies {
                out.write_str(")")?;
            }
            Ok(())
        }
        Node::Box(a) => {
            out.write_str("[]")?;
            write_f(a, true, out)
        }
        Node::PastDia(a) => {
            out.write_str("<P>")?;
            write_f(a, true, out)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_f(self, false, f)
    }
}

/// How a node reads back in surface syntax, with its binding level
/// (0 `->`, 1 `|`, 2 `&`, 3 unary and atoms).
enum Shape<'a> {
    Atom(&'static str),
    Var(u32),
    Unary(&'static str, &'a Formula),
    Binary(u8, &'static str, &'a Formula, &'a Formula),
}

fn negated(f: &Formula) -> Option<&Formula> {
    match f.node() {
        Node::Implies(a, b) if b.is_bottom() => Some(a),
        _ => None,
    }
}

fn shape(f: &Formula) -> Shape<'_> {
    match f.node() {
        Node::Var(i) => return Shape::Var(*i),
        Node::Bottom => return Shape::Atom("#f"),
        Node::Box(a) => return Shape::Unary("[]", a),
        Node::PastDia(a) => return Shape::Unary("<P>", a),
        Node::Implies(..) => {}
    }
    if f.is_top() {
        return Shape::Atom("#t");
    }
    if let Some(inner) = negated(f) {
        match inner.node() {
            Node::Implies(a, b) if negated(b).is_some() => return Shape::Binary(2, " & ", a, negated(b).unwrap()),
            Node::Box(a) if negated(a).is_some() => return Shape::Unary("<>", negated(a).unwrap()),
            Node::PastDia(a) if negated(a).is_some() => return Shape::Unary("[P]", negated(a).unwrap()),
            _ => return Shape::Unary("~", inner),
        }
    }
    let Node::Implies(a, b) = f.node() else { unreachable!() };
    match negated(a) {
        Some(na) => Shape::Binary(1, " | ", na, b),
        None => Shape::Binary(0, " -> ", a, b),
    }
}

fn write_pretty(f: &Formula, min: u8, out: &mut String) {
    match shape(f) {
        Shape::Atom(s) => out.push_str(s),
        Shape::Var(i) => out.push_str(&format!("p{i}")),
        Shape::Unary(op, a) => {
            out.push_str(op);
            write_pretty(a, 3, out);
        }
        Shape::Binary(level, op, a, b) => {
            if level < min {
                out.push('(');
            }
            // `->` is right-associative; `|` and `&` are left-associative.
            let (l, r) = if level == 0 { (1, 0) } else { (level, level + 1) };
            write_pretty(a, l, out);
            out.push_str(op);
            write_pretty(b, r, out);
            if level < min {
                out.push(')');
            }
        }
    }
}

impl Formula {
    /// Surface syntax with `~ & | <> [P] #t` recovered; reparses to the same tree.
    /// Size is that of the unshared tree; see [`Formula::tree_size`].
    pub fn pretty(&self) -> String {
        let mut s = String::new();
        write_pretty(self, 0, &mut s);
        s
    }

    /// Node count of the unshared tree, saturating.
    pub fn tree_size(&self) -> u64 {
        fn rec(f: &Formula, memo: &mut std::collections::HashMap<usize, u64>) -> u64 {
            if let Some(&n) = memo.get(&f.id()) {
                return n;
            }
            let n = match f.node() {
                Node::Var(_) | Node::Bottom => 1,
                Node::Box(a) | Node::PastDia(a) => rec(a, memo).saturating_add(1),
                Node::Implies(a, b) => rec(a, memo).saturating_add(rec(b, memo)).saturating_add(1),
            };
            memo.insert(f.id(), n);
            n
        }
        rec(self, &mut std::collections::HashMap::new())
    }
}
