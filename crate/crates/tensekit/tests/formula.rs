mod common;

use common::arb_formula;
use proptest::prelude::*;
use std::collections::BTreeMap;
use tensekit::formula::{parse, Formula, Node};

fn p(i: u32) -> Formula {
    Formula::var(i)
}

#[test]
fn atoms_and_sugar_desugar_exactly() {
    assert_eq!(parse("p0").unwrap(), p(0));
    let f = parse("[]p0 -> <>p0").unwrap();
    let dia = Formula::implies(&Formula::boxed(&Formula::implies(&p(0), &Formula::bottom())), &Formula::bottom());
    assert_eq!(f, Formula::implies(&Formula::boxed(&p(0)), &dia));
    match parse("<P>#t").unwrap().node() {
        Node::PastDia(a) => assert!(a.is_top()),
        _ => panic!("expected a past diamond"),
    }
    assert_eq!(parse("p0 & p1").unwrap(), Formula::not(&Formula::implies(&p(0), &Formula::not(&p(1)))));
    assert_eq!(parse("p0 | p1").unwrap(), Formula::implies(&Formula::not(&p(0)), &p(1)));
    assert_eq!(parse("[P]p0").unwrap(), Formula::not(&Formula::past_dia(&Formula::not(&p(0)))));
}

#[test]
fn primitive_printing() {
    assert_eq!(p(0).to_string(), "p0");
    assert_eq!(Formula::boxed(&p(1)).to_string(), "[]p1");
    assert_eq!(Formula::implies(&Formula::bottom(), &Formula::bottom()).to_string(), "#f -> #f");
}

#[test]
fn precedence_and_associativity() {
    assert_eq!(parse("p0 -> p1 -> p2").unwrap(), parse("p0 -> (p1 -> p2)").unwrap());
    assert_eq!(parse("p0 & p1 | p2").unwrap(), parse("(p0 & p1) | p2").unwrap());
    assert_eq!(parse("p0 | p1 | p2").unwrap(), parse("(p0 | p1) | p2").unwrap());
    assert_eq!(parse("~p0 & p1").unwrap(), parse("(~p0) & p1").unwrap());
}

#[test]
fn modal_degree_examples() {
    assert_eq!(parse("p0").unwrap().modal_degree(), 0);
    assert_eq!(parse("[]p0 -> <P>p1").unwrap().modal_degree(), 1);
    assert_eq!(parse("[][]<P>p0").unwrap().modal_degree(), 3);
}

#[test]
fn parse_errors_carry_offset_and_expectations() {
    let e = parse("p0 & ").unwrap_err();
    assert_eq!(e.offset, 5);
    assert!(e.expected.contains(&"p<digits>"));
    let e = parse("(p0").unwrap_err();
    assert!(e.expected.contains(&")"));
    assert!(parse("p0 p1").is_err());
    assert!(parse("q0").is_err());
}

#[test]
fn substitution_is_homomorphic() {
    let f = parse("[]p0 -> <P>(p1 & p0)").unwrap();
    let s: BTreeMap<u32, Formula> = [(0, parse("<>p2").unwrap())].into();
    assert_eq!(f.substitute(&s), parse("[]<>p2 -> <P>(p1 & <>p2)").unwrap());
    assert_eq!(f.substitute(&BTreeMap::new()), f);
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(f in arb_formula(3)) {
        prop_assert_eq!(parse(&f.to_string()).unwrap(), f.clone());
        prop_assert_eq!(parse(&f.pretty()).unwrap(), f);
    }

    #[test]
    fn degree_and_vars_follow_the_tree(f in arb_formula(3)) {
        fn walk(f: &Formula, vars: &mut std::collections::BTreeSet<u32>) -> u32 {
            match f.node() {
                Node::Var(i) => { vars.insert(*i); 0 }
                Node::Bottom => 0,
                Node::Implies(a, b) => walk(a, vars).max(walk(b, vars)),
                Node::Box(a) | Node::PastDia(a) => walk(a, vars) + 1,
            }
        }
        let mut vars = Default::default();
        prop_assert_eq!(walk(&f, &mut vars), f.modal_degree());
        prop_assert_eq!(vars, f.vars());
        prop_assert!(f.dag_size() as u64 <= f.tree_size());
    }
}
