//! The K_t ladder: truth sets of the variable-free `γ` formulas and pairwise separation.

use super::{Check, Options};
use crate::error::Result;
use crate::families::{delta_top, gamma, gamma_star};
use crate::formula::Formula;
use crate::symbolic::{AdmissibleSampler, Family, LocalPart, RegionSet, SymValuation, SymWorld, SymbolicFrame};
use serde_json::{json, Value};

const PAIRS: [(&[u64], &[u64]); 3] = [(&[2, 3], &[3, 5]), (&[1], &[]), (&[2, 4, 6], &[3, 5, 7])];
const MAX_N: usize = 20;

fn label(i: &[u64]) -> String {
    format!("{{{}}}", i.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
}

fn build(i: &[u64], k: Option<usize>) -> Result<SymbolicFrame> {
    let mut sf = SymbolicFrame::with_default_local(Family::Kt, i)?;
    if let Some(k) = k {
        sf.set_k(k)?;
    }
    Ok(sf)
}

fn omega(n: u64) -> SymWorld {
    SymWorld::Idx(0, n)
}

fn star(sf: &SymbolicFrame, m: u64) -> Option<RegionSet> {
    sf.i_set().contains(&m).then(|| sf.singleton(sf.world(&format!("{m}*")).expect("star point of I")))
}

/// Lifts a valuation on `F_L` to the symbolic frame.
fn lift(sf: &SymbolicFrame, local: &LocalPart) -> SymValuation {
    local.refuting_valuation().unwrap_or_default().iter().map(|(&p, s)| (p, sf.from_local(s))).collect()
}

struct Separation {
    valid_on_i: bool,
    refuted_on_j: bool,
    detail: Value,
}

/// `¬φ_L → Δ^k γ*_i`: validity on `F_I`, refutation at `w_L` on `F_J` under the lifted refuting valuation.
fn separation(fi: &SymbolicFrame, fj: &SymbolicFrame, local: &LocalPart, i: u64, opts: &Options) -> Result<Separation> {
    let k = fi.k();
    let consequent = delta_top(k, &gamma_star(i as usize, k));
    let sep = Formula::implies(&Formula::not(&local.phi), &consequent);
    let cons_i = fi.truth_set(&SymValuation::new(), &consequent)?;
    let (valid_on_i, method) = if local.phi.vars().is_empty() {
        (fi.valid_closed(&sep)?, "exact")
    } else if cons_i.is_full() {
        (true, "exact (consequent valid)")
    } else {
        let mut s = AdmissibleSampler::new(fi, opts.seed);
        let vars = local.phi.vars();
        let counter = (0..opts.samples).any(|_| {
            let v = s.valuation(&vars, 6);
            fi.truth_set(&v, &sep).map(|t| !t.is_full()).unwrap_or(true)
        });
        (!counter, "sampled")
    };
    let v = lift(fj, local);
    let wl = SymWorld::Pt(fj.w_l());
    let at_wl = fj.contains(&fj.truth_set(&v, &sep)?, wl);
    let cons_j = fj.truth_set(&SymValuation::new(), &consequent)?;
    let star_i = fi.truth_set(&SymValuation::new(), &gamma_star(i as usize, k))?;
    let star_j = fj.truth_set(&SymValuation::new(), &gamma_star(i as usize, k))?;
    let val: Value = v.iter().map(|(p, s)| (format!("p{p}"), fj.describe(s))).collect::<serde_json::Map<_, _>>().into();
    Ok(Separation {
        valid_on_i,
        refuted_on_j: !at_wl,
        detail: json!({
            "i": i, "k": k,
            "truth_gamma_star_on_F_I": fi.describe(&star_i),
            "truth_gamma_star_on_F_J": fj.describe(&star_j),
            "consequent_on_F_I": fi.describe(&cons_i),
            "consequent_on_F_J": fj.describe(&cons_j),
            "valid_on_F_I": valid_on_i, "method": method,
            "refuting_valuation_on_F_J": val, "separator_true_at_wL_on_F_J": at_wl,
        }),
    })
}

fn run_pair(i: &[u64], j: &[u64], opts: &Options, out: &mut Vec<Check>) -> Result<()> {
    let tag = format!("I={}/J={}", label(i), label(j));
    let fi = build(i, opts.k)?;
    let fj = build(j, opts.k)?;
    let local = LocalPart::default_for(Family::Kt);
    let k = fi.k();
    let none = SymValuation::new();

    // γ_n = {n}.
    let mut truths = Vec::new();
    let mut bad = Vec::new();
    for n in 0..=MAX_N {
        let t = fi.truth_set(&none, &gamma(n, k))?;
        if t != fi.singleton(omega(n as u64)) {
            bad.push(json!({"n": n, "truth": fi.describe(&t)}));
        }
        truths.push(t);
    }
    out.push(Check::new(
        format!("{tag}/gamma_n-truth"),
        bad.is_empty(),
        json!({"claim": "truth(gamma_n) = {n}", "n_max": MAX_N, "k": k, "mismatches": bad.len(), "first_mismatches": &bad[..bad.len().min(4)]}),
    ));

    // γ*_m = {m*} if m ∈ I, else ∅.
    let m_max = fi.max_i() + 3;
    let mut stars = Vec::new();
    let mut bad = Vec::new();
    for m in 1..=m_max {
        let t = fi.truth_set(&none, &gamma_star(m as usize, k))?;
        let want = star(&fi, m).unwrap_or_else(|| fi.empty());
        stars.push(json!({"m": m, "truth": fi.describe(&t)}));
        if t != want {
            bad.push(json!({"m": m, "truth": fi.describe(&t), "claimed": fi.describe(&want)}));
        }
    }
    out.push(Check::new(
        format!("{tag}/gamma_star-truth"),
        bad.is_empty(),
        json!({"claim": "truth(gamma*_m) = {m*} if m in I, else empty", "m_max": m_max, "mismatches": bad, "truths": stars}),
    ));

    // Index shift actually observed on γ_n.
    let shift = (0..=6usize).find(|&s| (s..=MAX_N).all(|n| truths[n] == fi.singleton(omega((n - s) as u64))));
    out.push(Check::info(
        format!("{tag}/gamma_n-observed-shift"),
        json!({"shift": shift, "note": "least s with truth(gamma_n) = {n - s} for s <= n <= 20",
               "leading_truths": truths.iter().take(shift.unwrap_or(0)).map(|t| fi.describe(t)).collect::<Vec<_>>()}),
    ));

    // F_I ⊨ Δ^k γ*_i for i ∈ I.
    let mut bad = Vec::new();
    for &ii in fi.i_set() {
        if !fi.valid_closed(&delta_top(k, &gamma_star(ii as usize, k)))? {
            bad.push(ii);
        }
    }
    out.push(Check::new(format!("{tag}/F_I-validates-Delta-gamma_star"), bad.is_empty(), json!({"k": k, "failing_i": bad})));

    // Separation for i ∈ I ∖ J.
    let js = fj.i_set().clone();
    for &ii in fi.i_set().iter().filter(|x| !js.contains(x)) {
        let s = separation(&fi, &fj, &local, ii, opts)?;
        out.push(Check::new(format!("{tag}/separator-i={ii}/valid-on-F_I"), s.valid_on_i, s.detail.clone()));
        out.push(Check::new(format!("{tag}/separator-i={ii}/refuted-on-F_J"), s.refuted_on_j, s.detail));
    }

    // γ_i → ◇γ_{i+1}.
    let mut bad = Vec::new();
    for n in 0..=MAX_N {
        if !fi.valid_closed(&Formula::implies(&gamma(n, k), &Formula::dia(&gamma(n + 1, k))))? {
            bad.push(n);
        }
    }
    out.push(Check::new(format!("{tag}/gamma-successor"), bad.is_empty(), json!({"i_max": MAX_N, "failing_i": bad})));

    // The same claims with the observed shift applied, for context.
    if let Some(s) = shift.filter(|&s| s > 0) {
        let s = s as u64;
        let mut star_bad = Vec::new();
        for m in s + 1..=m_max + s {
            let t = fi.truth_set(&none, &gamma_star(m as usize, k))?;
            let want = star(&fi, m - s).unwrap_or_else(|| fi.empty());
            if t != want {
                star_bad.push(m);
            }
        }
        let mut seps = Vec::new();
        for &ii in fi.i_set().iter().filter(|x| !js.contains(x)) {
            let r = separation(&fi, &fj, &local, ii + s, opts)?;
            seps.push(json!({"i": ii, "index_used": ii + s, "valid_on_F_I": r.valid_on_i, "refuted_on_F_J": r.refuted_on_j}));
        }
        let delta_ok = fi
            .i_set()
            .iter()
            .map(|&ii| fi.valid_closed(&delta_top(k, &gamma_star((ii + s) as usize, k))))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|b| b);
        out.push(Check::info(
            format!("{tag}/shifted-claims"),
            json!({"shift": s, "gamma_star_claim_mismatches": star_bad, "F_I_validates_Delta_gamma_star_i_plus_shift": delta_ok,
                   "separators": seps}),
        ));
    }
    Ok(())
}

pub(super) fn run(opts: &Options) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    match &opts.pair {
        Some((i, j)) => run_pair(i, j, opts, &mut out)?,
        None => {
            for (i, j) in PAIRS {
                run_pair(i, j, opts, &mut out)?;
            }
        }
    }
    Ok(out)
}
