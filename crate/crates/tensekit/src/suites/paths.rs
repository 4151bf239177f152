//! `Δ`/`∇` against explicit path enumeration, and md-locality against ball subframes.
//!
//! Two variables: `p0 = ψ` (high bits of the valuation index) and `p1 = φ` (low bits).
//! On an `n`-world Kripke frame valuation `v = Q·2^n + P` puts world `x` in `p0` iff bit `x`
//! of `Q` is set, and in `p1` iff bit `x` of `P` is set.

use super::{Check, Options};
use crate::enumerate;
use crate::error::{Error, Result};
use crate::families::{delta, delta_top, nabla, nabla_top};
use crate::formula::{parse, Formula};
use crate::frame::{Frame, FrameJson};
use super::evaluate;
use crate::semantics::eval::Program;
use serde_json::{json, Value};

const MAX_K: usize = 3;

/// md ≤ 2 formulas in `p0` used for the locality check.
const LOCAL: [&str; 10] = [
    "<>p0",
    "<P>~p0",
    "[]<P>p0",
    "<><P>p0 -> <P><>p0",
    "<>(p0 & <P>~p0)",
    "[][]p0 -> []p0",
    "<P><P>p0 & ~<>p0",
    "[](<>p0 -> <P>p0)",
    "[P](p0 | []~p0)",
    "<>[P]p0 -> p0",
];

#[derive(Default)]
struct Tally {
    cases: u64,
    mismatches: u64,
    first: Option<Value>,
}

impl Tally {
    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.cases += 1;
        if !ok {
            self.mismatches += 1;
            if self.first.is_none() {
                self.first = Some(witness());
            }
        }
    }

    fn check(self, id: &str, scope: Value) -> Check {
        Check::new(
            id,
            self.mismatches == 0,
            json!({"scope": scope, "cases": self.cases, "mismatches": self.mismatches, "first_mismatch": self.first}),
        )
    }
}

fn mask(s: &crate::WorldSet) -> u64 {
    s.iter().fold(0, |m, x| m | 1 << x)
}

fn bit(words: &[u64], i: u64) -> bool {
    words[(i / 64) as usize] >> (i % 64) & 1 == 1
}

/// Per world, per `k ≤ MAX_K`, per endpoint: the set of `Q` (as a `2^n`-bit mask) under which some
/// path of at most `k` steps reaches the endpoint with `ψ` true on every point after the start,
/// and on the start itself for the empty path.
fn relativized_reach(f: &Frame, up: &[u64]) -> Vec<[[u64; 5]; MAX_K + 1]> {
    let n = f.len();
    let nb: Vec<u64> = (0..n).map(|x| mask(f.succ(x)) | mask(f.pred(x))).collect();
    let mut out = vec![[[0u64; 5]; MAX_K + 1]; n];
    for x in 0..n {
        let good = &mut out[x];
        // (current point, points that must satisfy ψ)
        let mut layer = vec![(x, 1u64 << x)];
        for k in 0..=MAX_K {
            if k > 0 {
                let mut next = Vec::new();
                for &(c, m) in &layer {
                    for y in 0..n {
                        if nb[c] >> y & 1 == 1 {
                            next.push((y, if k == 1 { 1 << y } else { m | 1 << y }));
                        }
                    }
                }
                next.sort_unstable();
                next.dedup();
                layer = next;
                good[k] = good[k - 1];
            }
            for &(e, m) in &layer {
                good[k][e] |= up[m as usize];
            }
        }
    }
    out
}

fn frame_witness(f: &Frame, x: usize, formula: &str, v: u64) -> Value {
    json!({"frame": FrameJson::from_frame(f), "world": f.id(x), "formula": formula, "valuation_index": v})
}

pub(super) fn run(_opts: &Options) -> Result<Vec<Check>> {
    let (p0, p1) = (Formula::var(0), Formula::var(1));
    let mut named: Vec<(String, Formula)> = Vec::new();
    for k in 1..=MAX_K {
        named.push((format!("D^{k} p1"), delta_top(k, &p1)));
        named.push((format!("N^{k} p1"), nabla_top(k, &p1)));
        named.push((format!("D^{k}_p0 p1"), delta(k, &p0, &p1)));
        named.push((format!("N^{k}_p0 p1"), nabla(k, &p0, &p1)));
    }
    let formulas: Vec<Formula> = named.iter().map(|(_, f)| f.clone()).collect();
    let prog = Program::compile(&formulas, &[0, 1]);

    let local: Vec<Formula> = LOCAL
        .iter()
        .map(|s| parse(s).map_err(|e| Error::Invalid(e.to_string())))
        .collect::<Result<_>>()?;
    let local_prog = Program::compile(&local, &[0]);

    let mut plain = Tally::default();
    let mut relative = Tally::default();
    let mut locality = Tally::default();
    let mut balls_compared = 0u64;

    for n in 1..=5usize {
        let pn = 1u64 << n;
        // Patterns over P: "P meets E" and "E ⊆ P", and over Q: "M ⊆ Q".
        let meets: Vec<u64> = (0..pn).map(|e| (0..pn).filter(|p| p & e != 0).fold(0, |a, p| a | 1 << p)).collect();
        let within: Vec<u64> = (0..pn).map(|e| (0..pn).filter(|p| p & e == e).fold(0, |a, p| a | 1 << p)).collect();
        let up = &within;
        let words = (pn * pn).div_ceil(64) as usize;
        let live: Vec<u64> =
            (0..words).map(|t| if pn * pn >= 64 * (t as u64 + 1) { !0 } else { (1u64 << (pn * pn - 64 * t as u64)) - 1 }).collect();

        for f in enumerate::frames(n) {
            let m = evaluate(&prog, &f);
            let reach = relativized_reach(&f, up);
            let mut expected = vec![0u64; words];
            for x in 0..n {
                for k in 1..=MAX_K {
                    let sharp = mask(&f.reach_sharp(x, Some(k)));
                    for (slot, relativized, dual) in [(0, false, false), (1, false, true), (2, true, false), (3, true, true)] {
                        expected.fill(0);
                        for q in 0..pn {
                            let e = if relativized {
                                (0..n).filter(|&y| reach[x][k][y] >> q & 1 == 1).fold(0u64, |a, y| a | 1 << y)
                            } else {
                                sharp
                            };
                            // ∇ is true iff ¬φ is unreachable, i.e. every reachable endpoint is in P.
                            let pat = if dual { within[e as usize] } else { meets[e as usize] };
                            let off = q * pn;
                            expected[(off / 64) as usize] |= pat << (off % 64);
                        }
                        let r = (k - 1) * 4 + slot;
                        let got = m.root(r, x);
                        let diff = got.iter().zip(&expected).zip(&live).position(|((g, e), l)| (g ^ e) & l != 0);
                        let tally = if relativized { &mut relative } else { &mut plain };
                        tally.record(diff.is_none(), || {
                            let t = diff.unwrap();
                            let b = ((got[t] ^ expected[t]) & live[t]).trailing_zeros() as u64;
                            let mut w = frame_witness(&f, x, &named[r].0, 64 * t as u64 + b);
                            w["formula_true"] = json!(bit(got, 64 * t as u64 + b));
                            w
                        });
                    }
                }
            }

            let lm = evaluate(&local_prog, &f);
            for x in 0..n {
                for md in 1..=2usize {
                    let ball = f.reach_sharp(x, Some(md));
                    if ball.is_full() {
                        // The ball is the whole frame: the two sides coincide by construction.
                        continue;
                    }
                    balls_compared += 1;
                    let sub = f.subframe(&ball)?;
                    let keep = ball.to_vec();
                    let sx = keep.iter().position(|&y| y == x).expect("x in its ball");
                    let sm = evaluate(&local_prog, &sub);
                    for (r, phi) in local.iter().enumerate() {
                        if phi.modal_degree() as usize > md {
                            continue;
                        }
                        let full = lm.root(r, x);
                        let part = sm.root(r, sx);
                        let bad = (0..pn).find(|&p| {
                            let q = keep.iter().enumerate().fold(0u64, |a, (j, &y)| a | (p >> y & 1) << j);
                            bit(full, p) != bit(part, q)
                        });
                        locality.record(bad.is_none(), || {
                            let mut w = frame_witness(&f, x, LOCAL[r], bad.unwrap());
                            w["md"] = json!(md);
                            w
                        });
                    }
                }
            }
        }
    }

    let scope = json!({"frames": "all frames with 1..=5 worlds up to isomorphism", "k": "1..=3", "valuations": "exhaustive"});
    let mut out = vec![
        plain.check("delta/path-semantics", scope.clone()),
        relative.check("delta/relativized-path-semantics", scope),
    ];
    out.push(locality.check(
        "locality/md<=2",
        json!({"frames": "all frames with 1..=5 worlds", "formulas": LOCAL, "proper_balls_compared": balls_compared}),
    ));
    Ok(out)
}
