//! Symbolic truth against explicit truth on finite windows of both ladders.

use super::s4t::phi_family;
use super::{Check, Options};
use crate::bits::WorldSet;
use crate::error::Result;
use crate::families::{axiom, bd, delta_top, gamma, gamma_star, Axiom, PathReading};
use crate::formula::Formula;
use crate::frame::Dir;
use crate::semantics::{truth_set, Valuation};
use crate::symbolic::{AdmissibleSampler, Family, LocalPart, SymValuation, SymWorld, SymbolicFrame};
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};

const WINDOWS: [u64; 3] = [8, 10, 12];
const MAX_VALUATIONS: u64 = 40;

fn bounded_axioms() -> Result<Vec<(String, Formula)>> {
    let mut out: Vec<(String, Formula)> = (1..=3).map(|n| (format!("bd{n}"), bd(n))).collect();
    let mut axs = vec![Axiom::T, Axiom::Four, Axiom::GrzPlus, Axiom::GrzMinus];
    for n in 1..=2 {
        axs.extend([Axiom::AltPlus(n), Axiom::AltMinus(n), Axiom::BwPlus(n), Axiom::BwMinus(n), Axiom::Bz(n)]);
    }
    for a in axs {
        out.push((format!("{a:?}"), axiom(a)?));
    }
    Ok(out)
}

fn formulas(sf: &SymbolicFrame, local: &LocalPart) -> Result<Vec<(String, Formula)>> {
    let k = sf.k();
    let mut out = vec![("phi_L".to_string(), local.phi.clone())];
    out.extend(bounded_axioms()?);
    match sf.family() {
        Family::Kt => {
            for n in 0..=12 {
                out.push((format!("gamma_{n}"), gamma(n, k)));
            }
            for m in 1..=sf.max_i() as usize + 3 {
                let g = gamma_star(m, k);
                out.push((format!("Delta gamma*_{m}"), delta_top(k, &g)));
                out.push((format!("separator_{m}"), Formula::implies(&Formula::not(&local.phi), &delta_top(k, &g))));
                out.push((format!("gamma*_{m}"), g));
            }
        }
        Family::S4t => {
            let phi = phi_family(sf, local, PathReading::Literal);
            out.extend(phi.named.iter().map(|(n, f)| (format!("phi_{n}"), f.clone())));
        }
    }
    Ok(out)
}

#[derive(Default)]
struct Tally {
    compared: u64,
    mismatches: u64,
    window_compared: u64,
    window_disagree: u64,
    empty_interior: BTreeSet<String>,
    first: Option<Value>,
}

fn sweep(family: Family, opts: &Options, truth: &mut Tally, margin: &mut Tally, images: &mut Tally, rows: &mut Vec<Value>) -> Result<()> {
    let i = match family {
        Family::Kt => vec![2, 3],
        Family::S4t => vec![2, 3],
    };
    let mut sf = SymbolicFrame::with_default_local(family, &i)?;
    if let Some(k) = opts.k {
        sf.set_k(k)?;
    }
    let local = LocalPart::default_for(family);
    let fs = formulas(&sf, &local)?;
    let only: Vec<Formula> = fs.iter().map(|(_, f)| f.clone()).collect();
    let vars: BTreeSet<u32> = only.iter().flat_map(|f| f.vars()).collect();
    let nval = if vars.is_empty() { 1 } else { opts.samples.clamp(1, MAX_VALUATIONS) };
    for n in WINDOWS {
        let t = sf.truncate(n)?;
        let mut margin_here = 0;
        let base = t.frame.base();
        let mut interiors: BTreeMap<usize, WorldSet> = BTreeMap::new();
        let mut compared_here = 0;
        let mut sampler = AdmissibleSampler::new(&sf, opts.seed ^ n);
        for vi in 0..nval {
            let sv: SymValuation = sampler.valuation(&vars, 6);
            let ev: Valuation = sv.iter().map(|(&p, s)| (p, t.restrict(s))).collect();
            let sym = sf.truth_sets(&sv, &only)?;
            for ((name, f), s) in fs.iter().zip(&sym) {
                let md = f.modal_degree() as usize;
                let inner = interiors.entry(md).or_insert_with(|| t.interior(&sf, md));
                let want = t.restrict(s);
                let got = truth_set(base, &ev, f)?;
                if inner.is_empty() {
                    truth.empty_interior.insert(format!("{family:?}/{name}"));
                }
                let (a, b) = (got.intersection(inner), want.intersection(inner));
                truth.compared += inner.len() as u64;
                compared_here += inner.len() as u64;
                if a != b {
                    truth.mismatches += 1;
                    truth.first.get_or_insert_with(|| {
                        json!({"family": format!("{family:?}"), "N": n, "formula": name, "valuation": vi,
                               "explicit": base.names(&a), "symbolic": base.names(&b)})
                    });
                }
                truth.window_compared += 1;
                truth.window_disagree += (got != want) as u64;
            }
            // Worlds at least md below the window edge, whether or not their ball fits.
            for (ix, (name, f)) in fs.iter().enumerate() {
                let md = f.modal_degree() as u64;
                let deep = WorldSet::from_iter(base.len(), t.positions.iter().enumerate().filter_map(|(x, w)| match w {
                    SymWorld::Idx(_, i) if i + md > n => None,
                    _ => Some(x),
                }));
                let got = truth_set(base, &ev, f)?.intersection(&deep);
                let want = t.restrict(&sym[ix]).intersection(&deep);
                margin.compared += deep.len() as u64;
                margin_here += deep.len() as u64;
                if got != want {
                    margin.mismatches += 1;
                    margin.first.get_or_insert_with(|| {
                        json!({"family": format!("{family:?}"), "N": n, "formula": name, "valuation": vi,
                               "explicit": base.names(&got), "symbolic": base.names(&want)})
                    });
                }
            }
            // R and R̆ of window sets agree with the symbolic images cut to the window.
            for s in sv.values() {
                let u = t.restrict(s);
                let lifted = t.lift(&sf, &u);
                for (dir, sym) in [(Dir::Fwd, sf.image(&lifted)), (Dir::Bwd, sf.preimage(&lifted))] {
                    images.compared += 1;
                    let a = base.image(dir, &u);
                    let b = t.restrict(&sym);
                    if a != b {
                        images.mismatches += 1;
                        images.first.get_or_insert_with(|| {
                            json!({"family": format!("{family:?}"), "N": n, "direction": format!("{dir:?}"),
                                   "set": base.names(&u), "explicit": base.names(&a), "symbolic": base.names(&b)})
                        });
                    }
                }
            }
        }
        rows.push(json!({"family": format!("{family:?}"), "N": n, "worlds": base.len(), "formulas": fs.len(),
                         "valuations": nval, "world_formula_pairs_compared": compared_here, "margin_pairs_compared": margin_here,
                         "interior_sizes": interiors.iter().map(|(md, w)| (md.to_string(), w.len())).collect::<BTreeMap<_, _>>()}));
    }
    Ok(())
}

pub(super) fn run(opts: &Options) -> Result<Vec<Check>> {
    let mut truth = Tally::default();
    let mut margin = Tally::default();
    let mut images = Tally::default();
    let mut rows = Vec::new();
    for family in [Family::Kt, Family::S4t] {
        sweep(family, opts, &mut truth, &mut margin, &mut images, &mut rows)?;
    }
    Ok(vec![
        Check::new(
            "truth-on-interior",
            truth.mismatches == 0 && truth.compared > 0,
            json!({"windows": WINDOWS, "world_formula_pairs_compared": truth.compared, "mismatches": truth.mismatches,
                   "first_mismatch": truth.first, "formulas_with_empty_interior": truth.empty_interior, "runs": rows}),
        ),
        Check::new(
            "image-on-window",
            images.mismatches == 0 && images.compared > 0,
            json!({"comparisons": images.compared, "mismatches": images.mismatches, "first_mismatch": images.first}),
        ),
        Check::info(
            "truth-below-index-margin",
            json!({"note": "worlds with index <= N - md and all explicit points; ladder balls are infinite, so this is not a locality bound",
                   "world_formula_pairs_compared": margin.compared, "runs_with_disagreement": margin.mismatches, "first_disagreement": margin.first}),
        ),
        Check::info(
            "truth-on-whole-window",
            json!({"note": "symbolic and explicit truth compared on every window world, interior or not",
                   "formula_valuation_runs": truth.window_compared, "runs_with_some_disagreement": truth.window_disagree}),
        ),
    ])
}
