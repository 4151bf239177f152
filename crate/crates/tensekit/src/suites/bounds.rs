//! Pointwise validity of the bound formulas against their structural predicates.

use super::{Check, Options};
use crate::enumerate;
use crate::error::Result;
use crate::families::{axiom, Axiom};
use crate::frame::metrics::{depth, width};
use crate::frame::{Frame, FrameJson, GeneralFrame};
use crate::semantics::valid_worlds;
use serde_json::{json, Value};
use std::collections::BTreeMap;

#[derive(Default)]
struct Tally {
    frames: u64,
    points: u64,
    mismatches: u64,
    first: Option<Value>,
}

fn witness(f: &Frame, x: usize, valid: bool, metric: usize) -> Value {
    json!({"frame": FrameJson::from_frame(f), "world": f.id(x), "formula_valid_at_world": valid, "metric": metric})
}

pub(super) fn run(opts: &Options) -> Result<Vec<Check>> {
    let mut tallies: BTreeMap<String, Tally> = BTreeMap::new();
    let mut over_budget = 0u64;
    for n in 1..=2usize {
        let plain = [
            (format!("alt+/n={n}"), axiom(Axiom::AltPlus(n))?),
            (format!("alt-/n={n}"), axiom(Axiom::AltMinus(n))?),
            (format!("bz/n={n}"), axiom(Axiom::Bz(n))?),
        ];
        let trans = [
            (format!("bw+/n={n}"), axiom(Axiom::BwPlus(n))?),
            (format!("bw-/n={n}"), axiom(Axiom::BwMinus(n))?),
            (format!("bd/n={n}"), axiom(Axiom::Bd(n))?),
        ];
        for f in enumerate::frames_up_to(4) {
            let t = f.is_transitive();
            let mut names: Vec<&String> = plain.iter().map(|(s, _)| s).collect();
            let mut formulas: Vec<_> = plain.iter().map(|(_, p)| p.clone()).collect();
            if t {
                names.extend(trans.iter().map(|(s, _)| s));
                formulas.extend(trans.iter().map(|(_, p)| p.clone()));
            }
            let g = GeneralFrame::kripke(f.clone());
            let Some(vw) = valid_worlds(&g, &formulas, opts.budget) else {
                over_budget += 1;
                continue;
            };
            let rdg: Vec<usize> = (0..f.len()).map(|x| f.rdg_at(x)).collect();
            let (dep, wp, wm) = if t {
                (depth(&f)?, width(&f)?, width(&f.transpose())?)
            } else {
                (vec![], vec![], vec![])
            };
            let reflexive = f.is_reflexive();
            for (k, name) in names.iter().enumerate() {
                let mut keys = vec![(*name).clone()];
                if k == 5 && reflexive {
                    keys.push(format!("{name} reflexive"));
                }
                for key in keys {
                    let tally = tallies.entry(key).or_default();
                    tally.frames += 1;
                    for x in 0..f.len() {
                        let metric = match k {
                            0 => f.succ(x).len(),
                            1 => f.pred(x).len(),
                            2 => rdg[x],
                            3 => wp[x],
                            4 => wm[x],
                            _ => dep[x],
                        };
                        let valid = vw[k].contains(x);
                        tally.points += 1;
                        if valid != (metric <= n) {
                            tally.mismatches += 1;
                            tally.first.get_or_insert_with(|| witness(&f, x, valid, metric));
                        }
                    }
                }
            }
        }
    }
    let mut out: Vec<Check> = tallies
        .into_iter()
        .map(|(id, t)| {
            let scope = if id.starts_with("bw") || id.starts_with("bd") { "transitive frames" } else { "all frames" };
            let scope = if id.ends_with("reflexive") { "reflexive transitive frames" } else { scope };
            Check::new(
                id,
                t.mismatches == 0,
                json!({"scope": scope, "frames": t.frames, "points": t.points, "mismatches": t.mismatches,
                       "first_mismatch": t.first}),
            )
        })
        .collect();
    out.push(Check::new("budget", over_budget == 0, json!({"frames_over_budget": over_budget})));
    Ok(out)
}
