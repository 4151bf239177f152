//! Jankov duality on small rooted frames: refutability of `¬J^k(G)` on `F` against
//! exhaustive t-morphism search.

use super::{evaluate, Check, Options};
use crate::enumerate;
use crate::error::Result;
use crate::families::jankov;
use crate::frame::{Frame, FrameJson};
use crate::morphism::find_surjections;
use crate::semantics::eval::Program;
use serde_json::{json, Value};
use std::collections::HashMap;

/// Some `(world, valuation index)` where `J` holds, if any.
fn satisfiable(prog: &Program, f: &Frame) -> Option<(usize, u64)> {
    let m = evaluate(prog, f);
    let total = 1u64 << (f.len() * prog.vars.len());
    for x in 0..f.len() {
        for (t, &w) in m.root(0, x).iter().enumerate() {
            let lo = 64 * t as u64;
            let live = if total - lo >= 64 { !0 } else { (1u64 << (total - lo)) - 1 };
            if w & live != 0 {
                return Some((x, lo + (w & live).trailing_zeros() as u64));
            }
        }
    }
    None
}

/// Decodes valuation `v` into world lists per variable (first variable most significant).
fn decode(f: &Frame, nv: usize, v: u64) -> Value {
    let n = f.len();
    let mut out = serde_json::Map::new();
    for k in 0..nv {
        let bits = v >> ((nv - 1 - k) * n);
        let ws: Vec<&str> = (0..n).filter(|&x| bits >> x & 1 == 1).map(|x| f.id(x)).collect();
        out.insert(format!("p{k}"), json!(ws));
    }
    Value::Object(out)
}

#[derive(Default)]
struct Tally {
    pairs: u64,
    images: u64,
    mismatches: u64,
    first: Option<Value>,
}

pub(super) fn rooted(max: usize) -> Vec<Frame> {
    enumerate::frames_up_to(max).filter(Frame::is_rooted).collect()
}

pub(super) fn run(_opts: &Options) -> Result<Vec<Check>> {
    let sources = rooted(4);
    let targets = rooted(3);
    let mut programs: HashMap<(usize, usize), Program> = HashMap::new();
    let mut at_rdg = Tally::default();
    let mut above = Tally::default();
    for f in &sources {
        let r = f.rdg();
        let image_maps: Vec<Option<Vec<usize>>> =
            targets.iter().map(|g| find_surjections(f, g, 1).into_iter().next()).collect();
        for (gi, g) in targets.iter().enumerate() {
            let map = &image_maps[gi];
            for (k, tally) in [(r.max(1), &mut at_rdg), (r + 1, &mut above)] {
                let prog = programs.entry((gi, k)).or_insert_with(|| {
                    let j = jankov(g, k).expect("rooted target");
                    Program::compile(&[j], &(0..g.len() as u32).collect::<Vec<_>>())
                });
                let sat = satisfiable(prog, f);
                tally.pairs += 1;
                tally.images += map.is_some() as u64;
                if sat.is_some() != map.is_some() {
                    tally.mismatches += 1;
                    tally.first.get_or_insert_with(|| {
                        json!({
                            "F": FrameJson::from_frame(f),
                            "G": FrameJson::from_frame(g),
                            "k": k,
                            "F_refutes_not_J": sat.is_some(),
                            "G_is_image_of_F": map.is_some(),
                            "satisfying": sat.map(|(x, v)| json!({"world": f.id(x), "valuation": decode(f, g.len(), v)})),
                            "morphism": map.as_ref().map(|m| m.iter().map(|&y| g.id(y)).collect::<Vec<_>>()),
                        })
                    });
                }
            }
        }
    }
    let detail = |t: &Tally, k: &str| {
        json!({"k": k, "sources": sources.len(), "targets": targets.len(), "pairs": t.pairs,
               "pairs_with_image": t.images, "mismatches": t.mismatches, "first_mismatch": t.first})
    };
    Ok(vec![
        Check::new("jankov/k=max(1,rdg F)", at_rdg.mismatches == 0, detail(&at_rdg, "max(1, rdg(F))")),
        Check::new("jankov/k=rdg F+1", above.mismatches == 0, detail(&above, "rdg(F) + 1")),
    ])
}
