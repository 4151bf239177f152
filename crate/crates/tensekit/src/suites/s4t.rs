//! The S4 ladder: drawn adjacencies, bound validities, the separating formulas and rigidity.

use super::{Check, Options};
use crate::enumerate::canonical_code;
use crate::error::Result;
use crate::families::{axiom, delta_top, Axiom, PathReading, PhiFamily};
use crate::formula::Formula;
use crate::frame::metrics::width;
use crate::frame::{Frame, FrameJson};
use crate::morphism::images_up_to;
use crate::symbolic::{AdmissibleSampler, Family, LocalPart, OmegaSet, RegionSet, SymValuation, SymWorld, SymbolicFrame};
use serde_json::{json, Value};
use std::collections::BTreeSet;

pub(super) const DEFAULT_I: [u64; 2] = [2, 3];
/// The index set drawn in the ladder picture.
const DRAWN_I: [u64; 3] = [2, 3, 5];
const DEFAULT_N: u64 = 8;
const RIGIDITY_N: u64 = 6;

/// Edges drawn in the ladder picture for `I = {2, 3, 5}`, window 8, after closure.
const DRAWN: [(&str, &str); 24] = [
    ("a1", "a0"), ("a4", "a3"), ("b1", "b0"), ("b4", "b3"), ("a1", "b0"), ("a4", "b3"), ("b2", "a0"),
    ("b4", "a2"), ("x0", "x1"), ("x2", "x1"), ("x2", "a0"), ("y1", "y0"), ("y1", "b0"), ("c2", "c0"),
    ("c2", "a2"), ("c3", "c2"), ("c3", "a3"), ("c5", "a5"), ("r0", "r1"), ("r0", "r'"), ("uL", "r1"),
    ("r0", "a8"), ("r0", "b8"), ("r0", "c5"),
];
const ABSENT: [(&str, &str); 11] = [
    ("a0", "a1"), ("b1", "a0"), ("a1", "b1"), ("x0", "x2"), ("c0", "a0"), ("c2", "c3"), ("r1", "r0"),
    ("uL", "r0"), ("a3", "c3"), ("y0", "y1"), ("b0", "a0"),
];
/// Worlds whose formulas claim (1) is checked at.
const DESIGNATED: [&str; 8] = ["x0", "x1", "x2", "y0", "y1", "a0", "b0", "b1"];

pub(super) fn ladder(opts: &Options) -> Result<SymbolicFrame> {
    let i: Vec<u64> = opts.pair.as_ref().map(|(i, _)| i.clone()).unwrap_or_else(|| DEFAULT_I.to_vec());
    let mut sf = SymbolicFrame::with_default_local(Family::S4t, &i)?;
    if let Some(k) = opts.k {
        sf.set_k(k)?;
    }
    Ok(sf)
}

fn pins() -> Result<Check> {
    let sf = SymbolicFrame::with_default_local(Family::S4t, &DRAWN_I)?;
    let t = sf.truncate(DEFAULT_N)?;
    let b = t.frame.base();
    let mut wrong = Vec::new();
    for (list, want) in [(&DRAWN[..], true), (&ABSENT[..], false)] {
        for &(x, y) in list {
            if b.has_edge(b.index_of(x)?, b.index_of(y)?) != want {
                wrong.push(json!({"from": x, "to": y, "expected_edge": want}));
            }
        }
    }
    let closed = b.is_reflexive() && b.is_transitive();
    Ok(Check::new(
        "drawn/adjacency",
        wrong.is_empty() && closed,
        json!({"I": DRAWN_I, "N": DEFAULT_N, "drawn": DRAWN.len(), "absent": ABSENT.len(), "wrong": wrong,
               "reflexive_transitive": closed}),
    ))
}

/// Number of worlds, `None` if infinite.
fn size(s: &RegionSet) -> Option<usize> {
    s.reg.iter().try_fold(s.pts.len(), |acc, r| match r {
        OmegaSet::Fin(e) => Some(acc + e.len()),
        OmegaSet::Cofin(_) => None,
    })
}

fn bounds(sf: &SymbolicFrame, n: u64, opts: &Options) -> Result<Vec<Check>> {
    let k = sf.k();
    let t = sf.truncate(n)?;
    let b = t.frame.base();
    let wp = width(b)?;
    let wm = width(&b.transpose())?;
    let rdg: Vec<usize> = (0..b.len()).map(|x| b.rdg_at(x)).collect();
    let mut out = Vec::new();
    for (id, metric) in [("gfi/bw+", &wp), ("gfi/bw-", &wm), ("gfi/bz", &rdg)] {
        let bad: Vec<&str> = (0..b.len()).filter(|&x| metric[x] > k).map(|x| b.id(x)).collect();
        out.push(Check::new(
            id,
            bad.is_empty(),
            json!({"k": k, "N": n, "max_metric": metric.iter().max(), "worlds_over_k": bad,
                   "symbolic_rdg_bound_verified": true}),
        ));
    }

    // alt⁺_k ∧ alt⁻_k on X_L ∪ {r1}: exact successor and predecessor counts.
    let nl = sf.local().len();
    let mut alt_bad = Vec::new();
    let mut alt_rows = Vec::new();
    for p in (0..nl).chain([sf.point("r1")?]) {
        let one = sf.singleton(SymWorld::Pt(p));
        let (up, down) = (size(&sf.image(&one)), size(&sf.preimage(&one)));
        let ok = up.is_some_and(|s| s <= k) && down.is_some_and(|s| s <= k);
        let row = json!({"world": sf.points()[p], "successors": up, "predecessors": down});
        if !ok {
            alt_bad.push(row.clone());
        }
        alt_rows.push(row);
    }
    out.push(Check::new("gfi/alt-on-local-part", alt_bad.is_empty(), json!({"k": k, "worlds": alt_rows, "failing": alt_bad})));

    // grz⁺ elsewhere: every cluster above the world is trivial and region worlds see finitely many worlds.
    let in_alt: BTreeSet<usize> = (0..nl).chain([b.index_of("r1")?]).collect();
    let mut grz_bad = Vec::new();
    for x in (0..b.len()).filter(|x| !in_alt.contains(x)) {
        if let Some(y) = b.succ(x).iter().find(|&y| b.cluster_of(y).len() > 1) {
            grz_bad.push(json!({"world": b.id(x), "proper_cluster_at": b.id(y)}));
        }
    }
    let mut infinite = Vec::new();
    for (r, name) in sf.regions().iter().enumerate() {
        for i in 0..=n {
            if size(&sf.image(&sf.singleton(SymWorld::Idx(r, i)))).is_none() {
                infinite.push(format!("{name}{i}"));
            }
        }
    }
    out.push(Check::new(
        "gfi/grz+-structure",
        grz_bad.is_empty() && infinite.is_empty(),
        json!({"N": n, "proper_clusters": grz_bad, "region_worlds_with_infinite_successors": infinite}),
    ));

    // The full disjunction, sampled on the symbolic frame.
    let grz = Formula::and(&axiom(Axiom::GrzPlus)?, &axiom(Axiom::GrzMinus)?);
    let alt = Formula::and(&axiom(Axiom::AltPlus(k))?, &axiom(Axiom::AltMinus(k))?);
    let disj = Formula::or(&grz, &alt);
    let vars = disj.vars();
    let mut s = AdmissibleSampler::new(sf, opts.seed);
    let mut counter = None;
    for trial in 0..opts.samples {
        let v = s.valuation(&vars, 6);
        let tv = sf.truth_set(&v, &disj)?;
        if !tv.is_full() {
            counter = Some(json!({"trial": trial, "false_at": sf.describe(&tv.complement())}));
            break;
        }
    }
    out.push(Check::info(
        "gfi/grz-or-alt-sampled",
        json!({"samples": opts.samples, "seed": opts.seed, "counterexample": counter}),
    ));
    Ok(out)
}

pub(super) struct Phi {
    fam: PhiFamily,
    pub(super) named: Vec<(String, Formula)>,
    ab: Formula,
    x0: Formula,
    cs: Vec<(u64, Formula)>,
}

pub(super) fn phi_family(sf: &SymbolicFrame, local: &LocalPart, reading: PathReading) -> Phi {
    let mut fam = PhiFamily::with_reading(sf.k(), &local.phi, reading);
    let l_max = sf.max_i() as usize + 3;
    let mut named = vec![
        ("x0".to_string(), fam.x0.clone()),
        ("x1".to_string(), fam.x1.clone()),
        ("x2".to_string(), fam.x2.clone()),
        ("y0".to_string(), fam.y0.clone()),
        ("y1".to_string(), fam.y1.clone()),
    ];
    for l in 0..=l_max {
        named.push((format!("a{l}"), fam.a(l)));
        named.push((format!("b{l}"), fam.b(l)));
    }
    let cs = (1..=l_max as u64).filter(|j| !sf.i_set().contains(j)).map(|j| (j, fam.c(j as usize))).collect();
    Phi { ab: fam.ab.clone(), x0: fam.x0.clone(), fam, named, cs }
}

/// Claim (1) under the proof's valuation.
fn claim_one(sf: &SymbolicFrame, local: &LocalPart, phi: &Phi) -> Result<(bool, Value)> {
    let k = sf.k();
    let mut v: SymValuation = local.refuting_valuation().unwrap_or_default().iter().map(|(&p, s)| (p, sf.from_local(s))).collect();
    let up = |id: &str| -> Result<RegionSet> { Ok(sf.image(&sf.singleton(sf.world(id)?))) };
    let mut vp = up(&format!("b{k}"))?;
    for id in ["x0", "x1", "x2", "y0", "y1"] {
        vp = vp.union(&sf.singleton(sf.world(id)?));
    }
    v.insert(phi.fam.p, vp);
    for (i, &q) in phi.fam.q.iter().enumerate() {
        v.insert(q, up(&format!("b{i}"))?);
    }
    let reach_l = delta_top(k, &Formula::not(&local.phi));
    let mut fs: Vec<Formula> = DESIGNATED.iter().map(|u| phi.named.iter().find(|(n, _)| n == u).expect("designated").1.clone()).collect();
    fs.push(reach_l);
    fs.push(phi.fam.phi0.clone());
    let ts = sf.truth_sets(&v, &fs)?;
    let reach = &ts[DESIGNATED.len()];
    let mut ok = true;
    let mut rows = Vec::new();
    for (u, t) in DESIGNATED.iter().zip(&ts) {
        let w = sf.world(u)?;
        let holds = sf.contains(t, w) && sf.contains(reach, w);
        ok &= holds;
        rows.push(json!({"world": u, "phi_u_true": sf.contains(t, w), "delta_k_not_phi_L_true": sf.contains(reach, w),
                         "truth_phi_u": sf.describe(t)}));
    }
    Ok((ok, json!({"k": k, "worlds": rows, "truth_phi0": sf.describe(&ts[DESIGNATED.len() + 1])})))
}

#[derive(Default)]
struct Claims {
    nonvacuous: u64,
    two: Vec<Value>,
    three: Vec<Value>,
    four: Vec<Value>,
}

/// Claims (2)–(4) over sampled admissible valuations.
fn claims_sampled(sf: &SymbolicFrame, phi: &Phi, opts: &Options) -> Result<Claims> {
    let mut fs = vec![phi.x0.clone(), phi.ab.clone()];
    fs.extend(phi.named.iter().map(|(_, f)| f.clone()));
    fs.extend(phi.cs.iter().map(|(_, f)| f.clone()));
    let mut vars: BTreeSet<u32> = fs.iter().flat_map(|f| f.vars()).collect();
    vars.extend(phi.fam.q.iter().copied());
    vars.insert(phi.fam.p);
    let singles: Vec<RegionSet> =
        phi.named.iter().map(|(n, _)| Ok(sf.singleton(sf.world(n)?))).collect::<Result<_>>()?;
    let mut ab_set = sf.empty();
    for r in &mut ab_set.reg {
        *r = OmegaSet::all();
    }
    let mut s = AdmissibleSampler::new(sf, opts.seed);
    let mut c = Claims::default();
    let keep = 5;
    for trial in 0..opts.samples {
        let v = s.valuation(&vars, 6);
        let ts = sf.truth_sets(&v, &fs)?;
        let (tx0, tab) = (&ts[0], &ts[1]);
        let units = &ts[2..2 + singles.len()];
        let cs = &ts[2 + singles.len()..];
        if !tx0.is_empty() {
            c.nonvacuous += 1;
            let bad_u: Vec<&str> =
                units.iter().zip(&singles).zip(&phi.named).filter(|((t, s), _)| t != s).map(|(_, (n, _))| n.as_str()).collect();
            if (*tab != ab_set || !bad_u.is_empty()) && c.two.len() < keep {
                c.two.push(json!({"trial": trial, "truth_phi_x0": sf.describe(tx0), "truth_phi_AB": sf.describe(tab), "wrong_units": bad_u}));
            }
        }
        for ((t, s), (n, _)) in units.iter().zip(&singles).zip(&phi.named) {
            if !t.is_subset(s) && c.three.len() < keep {
                c.three.push(json!({"trial": trial, "formula_of": n, "truth": sf.describe(t)}));
            }
        }
        for (t, (j, _)) in cs.iter().zip(&phi.cs) {
            if !t.is_empty() && c.four.len() < keep {
                c.four.push(json!({"trial": trial, "j": j, "truth": sf.describe(t)}));
            }
        }
    }
    Ok(c)
}

fn separating(sf: &SymbolicFrame, opts: &Options) -> Result<Vec<Check>> {
    let local = LocalPart::default_for(Family::S4t);
    let mut out = Vec::new();
    let literal = phi_family(sf, &local, PathReading::Literal);
    let (ok, detail) = claim_one(sf, &local, &literal)?;
    out.push(Check::new("sep/claim-1", ok, detail));
    let c = claims_sampled(sf, &literal, opts)?;
    let base = json!({"samples": opts.samples, "seed": opts.seed, "nonvacuous_samples": c.nonvacuous,
                      "units_checked": literal.named.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>(),
                      "c_indices_checked": literal.cs.iter().map(|(j, _)| *j).collect::<Vec<_>>()});
    for (id, list) in [("sep/claim-2", &c.two), ("sep/claim-3", &c.three), ("sep/claim-4", &c.four)] {
        let mut d = base.clone();
        d["counterexamples"] = json!(list);
        out.push(Check::new(id, list.is_empty(), d));
    }

    // The same claims with p required only strictly inside the path to φ_0.
    let open = phi_family(sf, &local, PathReading::Open);
    let (ok1, d1) = claim_one(sf, &local, &open)?;
    let c = claims_sampled(sf, &open, opts)?;
    out.push(Check::info(
        "sep/open-path-reading",
        json!({"claim_1_holds": ok1, "claim_1": d1, "nonvacuous_samples": c.nonvacuous,
               "claim_2_counterexamples": c.two, "claim_3_counterexamples": c.three, "claim_4_counterexamples": c.four}),
    ));
    Ok(out)
}

fn rigidity(sf: &SymbolicFrame) -> Result<Check> {
    let t = sf.truncate(RIGIDITY_N.max(sf.max_i() + 2))?;
    let images = images_up_to(t.frame.base(), 3);
    let allowed = [canonical_code(&Frame::reflexive_chain(1)), canonical_code(&Frame::reflexive_chain(2))];
    let extra: Vec<FrameJson> =
        images.iter().filter(|g| !allowed.contains(&canonical_code(g))).map(FrameJson::from_frame).collect();
    Ok(Check::new(
        "rigidity/images-up-to-3",
        extra.is_empty(),
        json!({"N": t.n, "source_worlds": t.frame.len(), "images": images.iter().map(FrameJson::from_frame).collect::<Vec<_>>(),
               "outside_ch1_ch2": extra}),
    ))
}

pub(super) fn run(opts: &Options) -> Result<Vec<Check>> {
    let sf = ladder(opts)?;
    let n = opts.truncate.unwrap_or(DEFAULT_N).max(sf.max_i() + 2);
    let mut out = vec![pins()?];
    out.extend(bounds(&sf, n, opts)?);
    out.extend(separating(&sf, opts)?);
    out.push(rigidity(&sf)?);
    Ok(out)
}
