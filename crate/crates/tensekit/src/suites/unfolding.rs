//! Reflective unfolding: pinned small cases, projections, copy-distance bounds and r-degree boosting.

use super::jankov::rooted;
use super::{Check, Options};
use crate::constructions::{boost_rdg, pull_back, satisfying_valuation, unfold, BoostMode};
use crate::error::{Error, Result};
use crate::formula::parse;
use crate::frame::{Closure, Frame, FrameJson};
use crate::morphism::check_frames;
use crate::semantics::truth_set;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::BTreeSet;

type Edges = BTreeSet<(String, String)>;

fn shape(f: &Frame) -> (BTreeSet<String>, Edges) {
    let j = FrameJson::from_frame(f);
    (j.worlds.into_iter().collect(), j.edges.into_iter().collect())
}

fn pinned(worlds: &[&str], edges: &[(&str, &str)]) -> (BTreeSet<String>, Edges) {
    (
        worlds.iter().map(|s| s.to_string()).collect(),
        edges.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
    )
}

fn pins() -> Result<Vec<Check>> {
    let f = Frame::new(&["w", "v", "u"], &[("w", "v"), ("w", "u")])?;
    let (w, u) = (0, 2);
    let want = [
        (1, pinned(&["w@0", "v@0", "u@0"], &[("w@0", "v@0"), ("w@0", "u@0")])),
        (
            2,
            pinned(
                &["w@0", "v@0", "u@0", "w@1", "v@1"],
                &[("w@0", "v@0"), ("w@0", "u@0"), ("w@1", "u@0"), ("w@1", "v@1")],
            ),
        ),
        (
            4,
            pinned(
                &["w@0", "v@0", "u@0", "w@1", "v@1", "v@2", "u@2", "w@3", "v@3"],
                &[
                    ("w@0", "v@0"),
                    ("w@0", "u@0"),
                    ("w@1", "u@0"),
                    ("w@1", "v@1"),
                    ("w@1", "v@2"),
                    ("w@1", "u@2"),
                    ("w@3", "u@2"),
                    ("w@3", "v@3"),
                ],
            ),
        ),
    ];
    let mut out = Vec::new();
    for (n, expect) in want {
        let got = unfold(&f, w, u, n, false)?.frame;
        let ok = shape(&got) == expect;
        out.push(Check::new(
            format!("pin/F^{n}"),
            ok,
            json!({"got": FrameJson::from_frame(&got), "expected_worlds": expect.0, "expected_edges": expect.1}),
        ));
    }
    Ok(out)
}

fn random_frame(rng: &mut ChaCha8Rng) -> Frame {
    let n = rng.gen_range(2..=4);
    let mut e = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if rng.gen_ratio(2, 5) {
                e.push((a, b));
            }
        }
    }
    Frame::numbered(n, &e)
}

fn projections(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut transitive_runs = 0;
    for i in 0..50 {
        let mut f = random_frame(&mut rng);
        let transitive = rng.gen_bool(0.5);
        if transitive {
            f = f.closure(Closure::Transitive);
            transitive_runs += 1;
        }
        let w = rng.gen_range(0..f.len());
        let u = (w + rng.gen_range(1..f.len())) % f.len();
        let n = rng.gen_range(1..=9);
        let un = unfold(&f, w, u, n, transitive)?;
        if let Some(v) = check_frames(&un.frame, &f, &un.projection)? {
            failures.push(json!({"instance": i, "frame": FrameJson::from_frame(&f), "w": f.id(w), "u": f.id(u),
                                 "n": n, "transitive": transitive, "violation": v.to_string()}));
        }
    }
    Ok(Check::new(
        "projection/t-morphism",
        failures.is_empty(),
        json!({"instances": 50, "transitive_instances": transitive_runs, "failures": failures}),
    ))
}

#[derive(Default)]
struct Tally {
    instances: u64,
    mismatches: u64,
    first: Option<Value>,
}

impl Tally {
    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.instances += 1;
        if !ok {
            self.mismatches += 1;
            self.first.get_or_insert_with(witness);
        }
    }

    fn check(self, id: &str, scope: &str) -> Check {
        Check::new(
            id,
            self.mismatches == 0,
            json!({"scope": scope, "instances": self.instances, "mismatches": self.mismatches, "first_mismatch": self.first}),
        )
    }
}

/// Every world of `y_frame` reachable in one `♯`-step from copy `k` lies in some copy within `d` of `k`,
/// and `n` steps never cover the whole frame.
fn copy_bounds(g: &Frame, copies: &[Vec<usize>], position: &[Vec<usize>], n: usize, d: usize) -> (Option<Value>, Option<Value>) {
    let mut near = None;
    let mut cover = None;
    for (k, row) in position.iter().enumerate() {
        for &x in row {
            let step = g.reach_sharp(x, Some(1));
            if near.is_none() {
                if let Some(z) = step.iter().find(|&z| !copies[z].iter().any(|&i| i.abs_diff(k) <= d)) {
                    near = Some(json!({"from": g.id(x), "copy": k, "reached": g.id(z), "reached_copies": copies[z]}));
                }
            }
            if cover.is_none() && g.reach_sharp(x, Some(n)).is_full() {
                cover = Some(json!({"from": g.id(x), "copy": k, "steps": n}));
            }
        }
    }
    (near, cover)
}

fn book_degree() -> Result<Vec<Check>> {
    let mut plain_near = Tally::default();
    let mut plain_cover = Tally::default();
    let mut trans_near = Tally::default();
    let mut trans_cover = Tally::default();
    let mut trans_mode_agrees = Tally::default();
    for f in rooted(4) {
        if f.len() < 2 {
            continue;
        }
        let rt = f.closure(Closure::Transitive);
        for w in 0..f.len() {
            for u in 0..f.len() {
                if w == u {
                    continue;
                }
                for n in 1..=2usize {
                    let un = unfold(&f, w, u, 4 * n + 2, false)?;
                    let wit = |extra: Value| {
                        json!({"frame": FrameJson::from_frame(&f), "w": f.id(w), "u": f.id(u), "n": n, "witness": extra})
                    };
                    let (near, cover) = copy_bounds(&un.frame, &un.copies, &un.position, n, 1);
                    plain_near.record(near.is_none(), || wit(near.clone().unwrap()));
                    plain_cover.record(cover.is_none(), || wit(cover.clone().unwrap()));
                    if rt.has_edge(w, u) {
                        continue;
                    }
                    let st = un.frame.closure(Closure::Transitive);
                    let (near, cover) = copy_bounds(&st, &un.copies, &un.position, n, 2);
                    trans_near.record(near.is_none(), || wit(near.clone().unwrap()));
                    trans_cover.record(cover.is_none(), || wit(cover.clone().unwrap()));
                    if f.is_transitive() {
                        let tm = unfold(&f, w, u, 4 * n + 2, true)?.frame;
                        trans_mode_agrees.record(shape(&tm) == shape(&st), || wit(json!("transitive mode differs from closing the plain unfolding")));
                    }
                }
            }
        }
    }
    let scope = "rooted frames with 2..=4 worlds, all w ≠ u, n in {1, 2}, 4n+2 copies";
    let tscope = "as plain, restricted to <w,u> outside the transitive closure";
    Ok(vec![
        plain_near.check("book-degree/plain/copy-distance<=1", scope),
        plain_cover.check("book-degree/plain/n-ball-not-full", scope),
        trans_near.check("book-degree/transitive/copy-distance<=2", tscope),
        trans_cover.check("book-degree/transitive/n-ball-not-full", tscope),
        trans_mode_agrees.check("book-degree/transitive/mode-equals-closure", "transitive F, same instances"),
    ])
}

const BOOST_FORMULAS: [&str; 4] = ["p0 & <>~p0", "<>#t", "<P>p0 & []p0", "~<>#t & <P>#t"];

fn boost() -> Result<Check> {
    let formulas: Vec<_> =
        BOOST_FORMULAS.iter().map(|s| parse(s).map_err(|e| Error::Invalid(e.to_string()))).collect::<Result<_>>()?;
    let mut t = Tally::default();
    let mut skipped_dot = 0;
    for f in rooted(3) {
        if f.len() == 1 && f.edge_count() == 0 {
            skipped_dot += 1;
            continue;
        }
        for (fi, phi) in formulas.iter().enumerate() {
            for y in 0..f.len() {
                let Some(v) = satisfying_valuation(&f, phi, y) else { continue };
                for mode in [BoostMode::Plain, BoostMode::Transitive] {
                    if mode == BoostMode::Transitive && !f.is_transitive() {
                        continue;
                    }
                    for n in 1..=2usize {
                        let b = boost_rdg(&f, y, phi, n, mode)?;
                        let rdg = b.frame.rdg();
                        let morph = check_frames(&b.frame, &f, &b.projection)?;
                        let kept = truth_set(&b.frame, &pull_back(&v, &b.projection), phi)?.contains(b.world);
                        let trans_ok = mode == BoostMode::Plain || b.frame.is_transitive();
                        let ok = rdg >= n && morph.is_none() && kept && trans_ok;
                        t.record(ok, || {
                            json!({"frame": FrameJson::from_frame(&f), "world": f.id(y), "formula": BOOST_FORMULAS[fi],
                                   "mode": format!("{mode:?}"), "n": n, "rdg": rdg, "morphism_violation": morph.map(|v| v.to_string()),
                                   "formula_kept": kept, "transitive": b.frame.is_transitive(), "via_bilayer": b.via_bilayer})
                        });
                    }
                }
            }
        }
    }
    let mut c = t.check("boost-rdg", "rooted frames with 1..=3 worlds except the irreflexive point, every world satisfying the formula");
    c.detail["skipped_irreflexive_point"] = json!(skipped_dot);
    c.detail["formulas"] = json!(BOOST_FORMULAS);
    Ok(c)
}

pub(super) fn run(opts: &Options) -> Result<Vec<Check>> {
    let mut out = pins()?;
    out.push(projections(opts.seed)?);
    out.extend(book_degree()?);
    out.push(boost()?);
    Ok(out)
}
