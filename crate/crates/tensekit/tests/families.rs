mod common;

use common::{holds, matrix, valuation_of};
use tensekit::enumerate::frames_up_to;
use tensekit::families::{axiom, delta, delta_open, gamma, gamma_star, jankov, nabla, phi_family, Axiom, PhiFamily, PhiMember};
use tensekit::formula::{parse, Formula};
use tensekit::Frame;

/// Some `R♯`-walk `x = x_0, …, x_m` with `m ≤ n` ends at a `φ`-point; `ψ` is required at
/// `x_1..x_m` (and at `x_0` when `m = 0`), or with `open` only at `x_1..x_{m-1}`.
fn walk(r: &[Vec<bool>], psi: &[bool], phi: &[bool], x: usize, n: usize, open: bool) -> bool {
    fn go(r: &[Vec<bool>], psi: &[bool], phi: &[bool], y: usize, left: usize, open: bool) -> bool {
        // `y` has been entered by a step.
        let here = phi[y] && (open || psi[y]);
        here || (left > 0 && psi[y] && (0..r.len()).any(|z| (r[y][z] || r[z][y]) && go(r, psi, phi, z, left - 1, open)))
    }
    let start = if open { phi[x] } else { phi[x] && psi[x] };
    start || (n > 0 && (0..r.len()).any(|z| (r[x][z] || r[z][x]) && go(r, psi, phi, z, n - 1, open)))
}

#[test]
fn delta_is_walk_reachability() {
    let (psi, phi) = (Formula::var(1), Formula::var(0));
    for f in frames_up_to(3) {
        let r = matrix(&f);
        let n = f.len();
        for k in 0..=3 {
            let (d, o, nb) = (delta(k, &psi, &phi), delta_open(k, &psi, &phi), nabla(k, &psi, &phi));
            for code in 0..1u64 << (2 * n) {
                let val = valuation_of(code, 2, n);
                for x in 0..n {
                    assert_eq!(holds(&r, &val, &d, x), walk(&r, &val[1], &val[0], x, k, false), "delta {k} at {x} on {f:?}");
                    assert_eq!(holds(&r, &val, &o, x), walk(&r, &val[1], &val[0], x, k, true), "open delta {k} at {x} on {f:?}");
                    let neg: Vec<bool> = val[0].iter().map(|b| !b).collect();
                    assert_eq!(holds(&r, &val, &nb, x), !walk(&r, &val[1], &neg, x, k, false));
                }
            }
        }
    }
}

fn valid_on(f: &Frame, phi: &Formula, nv: usize) -> bool {
    let r = matrix(f);
    let n = f.len();
    (0..1u64 << (nv * n)).all(|c| (0..n).all(|x| holds(&r, &valuation_of(c, nv, n), phi, x)))
}

#[test]
fn classical_axioms_define_their_classes() {
    let (t, four, five, ser) =
        (axiom(Axiom::T).unwrap(), axiom(Axiom::Four).unwrap(), axiom(Axiom::Five).unwrap(), axiom(Axiom::Seriality).unwrap());
    for f in frames_up_to(3) {
        let n = f.len();
        let r = matrix(&f);
        let euclid = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(r[a][b] && r[a][c]) || r[b][c])));
        assert_eq!(valid_on(&f, &t, 1), f.is_reflexive());
        assert_eq!(valid_on(&f, &four, 1), f.is_transitive());
        assert_eq!(valid_on(&f, &five, 1), euclid);
        assert_eq!(valid_on(&f, &ser, 0), (0..n).all(|x| !f.succ(x).is_empty() || !f.pred(x).is_empty()));
    }
}

#[test]
fn axiom_names_parse() {
    for (s, a) in [("T", Axiom::T), ("4", Axiom::Four), ("bd2", Axiom::Bd(2)), ("altPlus1", Axiom::AltPlus(1)), ("grzMinus", Axiom::GrzMinus)] {
        assert_eq!(s.parse::<Axiom>().unwrap(), a);
    }
    assert!("alt".parse::<Axiom>().is_err());
    assert!(axiom(Axiom::Bd(0)).is_err());
}

#[test]
fn gamma_formulas_are_closed() {
    for n in 0..4 {
        assert!(gamma(n, 3).vars().is_empty());
        assert!(gamma_star(n + 1, 3).vars().is_empty());
    }
    assert!(gamma(1, 2).modal_degree() > gamma(0, 2).modal_degree());
}

#[test]
fn jankov_formula_holds_at_the_root_of_its_frame() {
    for g in frames_up_to(3).filter(Frame::is_rooted) {
        let j = jankov(&g, g.rdg().max(1)).unwrap();
        let n = g.len();
        let r = matrix(&g);
        let val: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|y| y == i).collect()).collect();
        assert!((0..n).any(|x| holds(&r, &val, &j, x)), "{g:?}");
    }
    assert!(jankov(&Frame::new(&["a", "b"], &[]).unwrap(), 1).is_err());
    assert!(jankov(&Frame::dot(), 0).is_err());
}

#[test]
fn phi_family_uses_fresh_variables() {
    let phi_l = parse("p0 & []p1").unwrap();
    let fam = PhiFamily::new(3, &phi_l);
    assert!(fam.p > 1 && fam.q.iter().all(|&q| q > 1 && q != fam.p));
    assert_eq!(fam.q.len(), 4);
    let x0 = phi_family(3, &phi_l, PhiMember::X0);
    assert!(x0.vars().contains(&fam.p));
    assert!(phi_family(3, &phi_l, PhiMember::C(2)).modal_degree() > 0);
}
