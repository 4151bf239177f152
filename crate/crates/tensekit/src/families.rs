//! Builders for the parameterized formula schemes.

use crate::error::{Error, Result};
use crate::formula::Formula as F;
use crate::frame::Frame;
use std::collections::BTreeMap;

fn p(i: u32) -> F {
    F::var(i)
}

/// `Δ^n_ψ φ`: `Δ^0 = ψ∧φ`, `Δ^{k+1} = Δ^k ∨ ◇(ψ∧Δ^k) ∨ ◆(ψ∧Δ^k)`.
pub fn delta(n: usize, psi: &F, phi: &F) -> F {
    let mut d = F::and(psi, phi);
    for _ in 0..n {
        let g = F::and(psi, &d);
        d = F::or(&F::or(&d, &F::dia(&g)), &F::past_dia(&g));
    }
    d
}

/// `∇^n_ψ φ = ¬Δ^n_ψ ¬φ`.
pub fn nabla(n: usize, psi: &F, phi: &F) -> F {
    F::not(&delta(n, psi, &F::not(phi)))
}

/// Some point within `n` steps satisfies `φ`, with `ψ` at every point strictly between.
/// `E_0 = φ`, `H_0 = φ`, `H_{j+1} = φ ∨ (ψ ∧ (◇H_j ∨ ◆H_j))`, `E_n = φ ∨ ◇H_{n−1} ∨ ◆H_{n−1}`.
pub fn delta_open(n: usize, psi: &F, phi: &F) -> F {
    if n == 0 {
        return phi.clone();
    }
    let mut h = phi.clone();
    for _ in 1..n {
        h = F::or(phi, &F::and(psi, &F::or(&F::dia(&h), &F::past_dia(&h))));
    }
    F::disj([phi.clone(), F::dia(&h), F::past_dia(&h)])
}

/// `Δ^n φ` with `ψ = ⊤`, unsimplified.
pub fn delta_top(n: usize, phi: &F) -> F {
    delta(n, &F::top(), phi)
}

pub fn nabla_top(n: usize, phi: &F) -> F {
    nabla(n, &F::top(), phi)
}

/// Axiom names.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    T,
    Four,
    Five,
    AltPlus(usize),
    AltMinus(usize),
    Bz(usize),
    BwPlus(usize),
    BwMinus(usize),
    Bd(usize),
    GrzPlus,
    GrzMinus,
    Seriality,
}

impl std::str::FromStr for Axiom {
    type Err = Error;
    fn from_str(s: &str) -> Result<Axiom> {
        let bad = || Error::Invalid(format!("unknown axiom `{s}`"));
        let (name, arg) = match s.find(|c: char| c.is_ascii_digit()) {
            Some(i) => (&s[..i], Some(s[i..].parse::<usize>().map_err(|_| bad())?)),
            None => (s, None),
        };
        Ok(match (name, arg) {
            ("T", None) => Axiom::T,
            ("4", None) | ("", Some(4)) => Axiom::Four,
            ("5", None) | ("", Some(5)) => Axiom::Five,
            ("altPlus", Some(n)) => Axiom::AltPlus(n),
            ("altMinus", Some(n)) => Axiom::AltMinus(n),
            ("bz", Some(n)) => Axiom::Bz(n),
            ("bwPlus", Some(n)) => Axiom::BwPlus(n),
            ("bwMinus", Some(n)) => Axiom::BwMinus(n),
            ("bd", Some(n)) => Axiom::Bd(n),
            ("grzPlus", None) => Axiom::GrzPlus,
            ("grzMinus", None) => Axiom::GrzMinus,
            ("seriality", None) => Axiom::Seriality,
            _ => return Err(bad()),
        })
    }
}

fn alt(n: usize, bx: fn(&F) -> F) -> F {
    F::disj((0..=n).map(|i| {
        let body = if i == 0 { p(0) } else { F::implies(&F::conj((0..i as u32).map(p)), &p(i as u32)) };
        bx(&body)
    }))
}

fn bw(n: usize, di: fn(&F) -> F) -> F {
    let ante = F::conj((0..=n as u32).map(|i| di(&p(i))));
    let mut ds = Vec::new();
    for i in 0..=n as u32 {
        for j in 0..=n as u32 {
            if i != j {
                ds.push(di(&F::and(&p(i), &F::or(&p(j), &di(&p(j))))));
            }
        }
    }
    F::implies(&ante, &F::disj(ds))
}

/// `bd_1 = ◇□p0→p0`, `bd_{k+1} = ◇(□p_k ∧ ¬bd_k) → p_k`.
pub fn bd(n: usize) -> F {
    let mut f = F::implies(&F::dia(&F::boxed(&p(0))), &p(0));
    for k in 1..n as u32 {
        f = F::implies(&F::dia(&F::and(&F::boxed(&p(k)), &F::not(&f))), &p(k));
    }
    f
}

fn grz(bx: fn(&F) -> F) -> F {
    let q = p(0);
    F::implies(&bx(&F::implies(&bx(&F::implies(&q, &bx(&q))), &q)), &q)
}

/// The literal scheme for `a`.
pub fn axiom(a: Axiom) -> Result<F> {
    let need = |n: usize| if n == 0 { Err(Error::Invalid("indexed axiom needs n ≥ 1".into())) } else { Ok(n) };
    let q = p(0);
    Ok(match a {
        Axiom::T => F::implies(&F::boxed(&q), &q),
        Axiom::Four => F::implies(&F::boxed(&q), &F::boxed(&F::boxed(&q))),
        Axiom::Five => F::implies(&F::dia(&q), &F::boxed(&F::dia(&q))),
        Axiom::AltPlus(n) => alt(need(n)?, F::boxed),
        Axiom::AltMinus(n) => alt(need(n)?, F::past_box),
        Axiom::Bz(n) => {
            let n = need(n)?;
            F::implies(&delta_top(n + 1, &q), &delta_top(n, &q))
        }
        Axiom::BwPlus(n) => bw(need(n)?, F::dia),
        Axiom::BwMinus(n) => bw(need(n)?, F::past_dia),
        Axiom::Bd(n) => bd(need(n)?),
        Axiom::GrzPlus => grz(F::boxed),
        Axiom::GrzMinus => grz(F::past_box),
        Axiom::Seriality => F::or(&F::dia(&F::top()), &F::past_dia(&F::top())),
    })
}

/// `γ_0 = ■⊥ ∧ ◇■²⊥ ∧ ◇^k■^{k+1}⊥`, `γ_{l+1} = ◆γ_l ∧ ■²¬γ_l`.
pub fn gamma(n: usize, k: usize) -> F {
    let bot = F::bottom();
    let pb = |m: usize| F::iterate(m, &bot, F::past_box);
    let mut g = F::and(&F::and(&pb(1), &F::dia(&pb(2))), &F::iterate(k, &pb(k + 1), F::dia));
    for _ in 0..n {
        g = F::and(&F::past_dia(&g), &F::past_box(&F::past_box(&F::not(&g))));
    }
    g
}

/// `γ*_m = ◇γ_m ∧ □¬γ_{m-1} ∧ ■⊥ ∧ □◇^k⊤`, `m ≥ 1`.
pub fn gamma_star(m: usize, k: usize) -> F {
    assert!(m >= 1, "gamma_star needs m ≥ 1");
    F::conj([
        F::dia(&gamma(m, k)),
        F::boxed(&F::not(&gamma(m - 1, k))),
        F::past_box(&F::bottom()),
        F::boxed(&F::iterate(k, &F::top(), F::dia)),
    ])
}

/// `J^k(G)` with variable `p_i` for the `i`-th world of `g`.
pub fn jankov(g: &Frame, k: usize) -> Result<F> {
    if !g.is_rooted() || g.is_empty() {
        return Err(Error::NotRooted);
    }
    if k == 0 {
        return Err(Error::Invalid("Jankov degree must be ≥ 1".into()));
    }
    let n = g.len() as u32;
    let top = F::top();
    let mut cl = vec![nabla(k, &top, &F::disj((0..n).map(p)))];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                cl.push(nabla(k, &top, &F::implies(&p(i), &F::not(&p(j)))));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let body = if g.has_edge(i as usize, j as usize) {
                F::and(&F::implies(&p(i), &F::dia(&p(j))), &F::implies(&p(j), &F::past_dia(&p(i))))
            } else {
                F::and(
                    &F::implies(&p(i), &F::not(&F::dia(&p(j)))),
                    &F::implies(&p(j), &F::not(&F::past_dia(&p(i)))),
                )
            };
            cl.push(nabla(k - 1, &top, &body));
        }
    }
    Ok(F::conj(cl))
}

/// Members of the separating family built over a refuted formula `φ_L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiMember {
    Phi0,
    X0,
    X1,
    X2,
    Y0,
    Y1,
    A(usize),
    B(usize),
    AB,
    C(usize),
}

/// How the `p`-path conjunct `Δ^4_p φ_0` of `φ_{x0}` is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PathReading {
    /// [`delta`] as defined: `p` must also hold where `φ_0` does.
    #[default]
    Literal,
    /// [`delta_open`]: `p` only at the points strictly between.
    Open,
}

/// Lazily built family; `p` and `q_0..q_k` are the smallest indices free of `φ_L`.
pub struct PhiFamily {
    pub k: usize,
    pub phi_l: F,
    pub p: u32,
    pub q: Vec<u32>,
    pub phi0: F,
    pub x0: F,
    pub x1: F,
    pub x2: F,
    pub y0: F,
    pub y1: F,
    pub ab: F,
    a: Vec<F>,
    b: Vec<F>,
}

impl PhiFamily {
    pub fn new(k: usize, phi_l: &F) -> PhiFamily {
        Self::with_reading(k, phi_l, PathReading::Literal)
    }

    pub fn with_reading(k: usize, phi_l: &F, reading: PathReading) -> PhiFamily {
        assert!(k >= 1);
        let used = phi_l.vars();
        let fresh: Vec<u32> = (0..).filter(|i| !used.contains(i)).take(k + 2).collect();
        let (pv, q) = (fresh[0], fresh[1..].to_vec());
        let top = F::top();
        let subst: BTreeMap<u32, F> = (0..=k as u32).map(|i| (i, p(q[i as usize]))).collect();
        let pp = p(pv);
        let phi0 = F::and(&F::not(&bd(k).substitute(&subst)), &F::past_box(&F::not(&pp)));
        let x0 = F::conj([
            delta(k, &top, &F::not(phi_l)),
            match reading {
                PathReading::Literal => delta(4, &pp, &phi0),
                PathReading::Open => delta_open(4, &pp, &phi0),
            },
            nabla(3, &top, &F::not(&phi0)),
        ]);
        let x1 = F::and(&F::past_dia(&x0), &F::not(&x0));
        let x2 = F::and(&F::dia(&x1), &F::not(&x1));
        let y0 = F::and(&delta(7, &pp, &x0), &delta(6, &top, &F::not(&x0)));
        let y1 = F::and(&F::dia(&y0), &F::not(&y0));
        let a0 = F::and(&F::past_dia(&x2), &F::not(&x2));
        let b0 = F::and(&F::past_dia(&y1), &F::not(&y1));
        let b1 = F::conj([F::dia(&b0), F::boxed(&F::not(&a0)), F::not(&b0)]);
        let ab = F::boxed(&F::disj([b0.clone(), b1.clone(), F::dia(&F::past_dia(&F::dia(&F::past_dia(&x0))))]));
        PhiFamily { k, phi_l: phi_l.clone(), p: pv, q, phi0, x0, x1, x2, y0, y1, ab, a: vec![a0], b: vec![b0, b1] }
    }

    fn grow(&mut self, l: usize) {
        // a_l needs b_l; b_{l+1} needs a_l.
        while self.a.len() <= l || self.b.len() <= l {
            let m = self.a.len();
            let a_m = F::conj([
                self.ab.clone(),
                F::dia(&self.a[m - 1]),
                F::dia(&self.b[m - 1]),
                F::boxed(&F::not(&self.b[m])),
            ]);
            self.a.push(a_m);
            let b_next = F::conj([
                self.ab.clone(),
                F::dia(&self.a[m - 1]),
                F::dia(&self.b[m]),
                F::boxed(&F::not(&self.a[m])),
            ]);
            self.b.push(b_next);
        }
    }

    pub fn a(&mut self, l: usize) -> F {
        self.grow(l);
        self.a[l].clone()
    }

    pub fn b(&mut self, l: usize) -> F {
        self.grow(l);
        self.b[l].clone()
    }

    /// `φ_{c_n} = ¬φ_AB ∧ ◇φ_{a_n} ∧ □¬φ_{a_{n+1}}`.
    pub fn c(&mut self, n: usize) -> F {
        let an = self.a(n);
        let an1 = self.a(n + 1);
        F::conj([F::not(&self.ab), F::dia(&an), F::boxed(&F::not(&an1))])
    }

    pub fn member(&mut self, m: PhiMember) -> F {
        match m {
            PhiMember::Phi0 => self.phi0.clone(),
            PhiMember::X0 => self.x0.clone(),
            PhiMember::X1 => self.x1.clone(),
            PhiMember::X2 => self.x2.clone(),
            PhiMember::Y0 => self.y0.clone(),
            PhiMember::Y1 => self.y1.clone(),
            PhiMember::A(l) => self.a(l),
            PhiMember::B(l) => self.b(l),
            PhiMember::AB => self.ab.clone(),
            PhiMember::C(n) => self.c(n),
        }
    }
}

/// `φ_L`-independent convenience: the single member `m`.
pub fn phi_family(k: usize, phi_l: &F, m: PhiMember) -> F {
    PhiFamily::new(k, phi_l).member(m)
}
