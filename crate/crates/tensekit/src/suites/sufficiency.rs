//! Fibre equalities and sufficient sets on the surjections met by the Jankov and ladder suites.

use super::jankov::rooted;
use super::s4t::ladder;
use super::{Check, Options};
use crate::bits::WorldSet;
use crate::error::Result;
use crate::frame::{Dir, Frame, FrameJson, GeneralFrame};
use crate::morphism::{find_surjections, image_of, is_sufficient, TMorphism};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

const LADDER_N: u64 = 6;
const LADDER_LIMIT: usize = 2000;

#[derive(Default)]
struct Tally {
    morphisms: u64,
    fibre_pairs: u64,
    fibre_failures: u64,
    sufficient_sets: u64,
    sets_tested: u64,
    full_failures: u64,
    first: Option<Value>,
}

fn witness(f: &Frame, g: &Frame, map: &[usize], what: Value) -> Value {
    json!({"source": FrameJson::from_frame(f), "target": FrameJson::from_frame(g),
           "map": map.iter().map(|&y| g.id(y)).collect::<Vec<_>>(), "failure": what})
}

/// `f(x) = f(y)` implies equal images of successors and of predecessors.
fn fibres(t: &mut Tally, f: &Frame, g: &Frame, map: &[usize]) {
    for x in 0..f.len() {
        for y in x + 1..f.len() {
            if map[x] != map[y] {
                continue;
            }
            t.fibre_pairs += 1;
            for dir in [Dir::Fwd, Dir::Bwd] {
                let ix = image_of(map, g.len(), &f.image(dir, &WorldSet::singleton(f.len(), x)));
                let iy = image_of(map, g.len(), &f.image(dir, &WorldSet::singleton(f.len(), y)));
                if ix != iy {
                    t.fibre_failures += 1;
                    t.first.get_or_insert_with(|| {
                        witness(f, g, map, json!({"fibre": [f.id(x), f.id(y)], "direction": format!("{dir:?}")}))
                    });
                }
            }
        }
    }
}

fn test_set(t: &mut Tally, m: &TMorphism, z: &WorldSet) -> Result<()> {
    t.sets_tested += 1;
    if is_sufficient(m, z)? {
        t.sufficient_sets += 1;
        let (f, g) = (m.source.base(), m.target.base());
        if !image_of(&m.map, g.len(), z).is_full() {
            t.full_failures += 1;
            t.first.get_or_insert_with(|| witness(f, g, &m.map, json!({"sufficient_set": f.names(z)})));
        }
    }
    Ok(())
}

/// Grows `{seed}` into a sufficient set, choosing fibre mates that add the fewest new worlds.
fn grow(f: &Frame, map: &[usize], seed: usize) -> WorldSet {
    let mut z = WorldSet::singleton(f.len(), seed);
    loop {
        let mut changed = false;
        for x in z.to_vec() {
            for dir in [Dir::Fwd, Dir::Bwd] {
                let row = |u: usize| match dir {
                    Dir::Fwd => f.succ(u),
                    Dir::Bwd => f.pred(u),
                };
                let fibre = (0..f.len()).filter(|&u| map[u] == map[x]);
                if fibre.clone().any(|u| z.contains(u) && row(u).is_subset(&z)) {
                    continue;
                }
                let best = fibre.min_by_key(|&u| (row(u).difference(&z).len() + !z.contains(u) as usize, u)).expect("x in its fibre");
                z.insert(best);
                z.union_with(row(best));
                changed = true;
            }
        }
        if !changed {
            return z;
        }
    }
}

pub(super) fn run(opts: &Options) -> Result<Vec<Check>> {
    // Small rooted sources: every surjection, every nonempty subset.
    let mut small = Tally::default();
    let targets = rooted(3);
    for f in rooted(4) {
        for g in &targets {
            for map in find_surjections(&f, g, usize::MAX) {
                small.morphisms += 1;
                fibres(&mut small, &f, g, &map);
                let m = TMorphism { source: GeneralFrame::kripke(f.clone()), target: GeneralFrame::kripke(g.clone()), map };
                for mask in 1..(1u64 << f.len()) {
                    test_set(&mut small, &m, &WorldSet::from_mask(f.len(), mask))?;
                }
            }
        }
    }

    // Ladder truncation onto its small images: grown sets, the proof's sets, random subsets.
    let sf = ladder(opts)?;
    let t = sf.truncate(LADDER_N.max(sf.max_i() + 2))?;
    let base = t.frame.base();
    let mut big = Tally::default();
    let mut capped = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let named = [vec!["x0", "x1", "x2"], vec!["x0", "x1", "y0", "y1"], vec!["x0", "x1", "r0", "r'"]];
    for g in [Frame::reflexive_chain(1), Frame::reflexive_chain(2)] {
        let maps = find_surjections(base, &g, LADDER_LIMIT);
        if maps.len() == LADDER_LIMIT {
            capped.push(g.len());
        }
        for map in maps {
            big.morphisms += 1;
            fibres(&mut big, base, &g, &map);
            let m = TMorphism { source: GeneralFrame::kripke(base.clone()), target: GeneralFrame::kripke(g.clone()), map };
            for seed in 0..base.len() {
                let z = grow(base, &m.map, seed);
                test_set(&mut big, &m, &z)?;
            }
            for ids in &named {
                test_set(&mut big, &m, &base.set_of(ids)?)?;
            }
            for _ in 0..16 {
                let mut z = base.empty_set();
                for x in 0..base.len() {
                    if rng.gen_ratio(1, 3) {
                        z.insert(x);
                    }
                }
                if !z.is_empty() {
                    test_set(&mut big, &m, &z)?;
                }
            }
        }
    }

    let out = |id: &str, ok: bool, t: &Tally, scope: Value| {
        Check::new(
            id,
            ok,
            json!({"scope": scope, "morphisms": t.morphisms, "fibre_pairs": t.fibre_pairs, "fibre_failures": t.fibre_failures,
                   "sets_tested": t.sets_tested, "sufficient_sets": t.sufficient_sets, "image_not_full": t.full_failures,
                   "first_failure": t.first}),
        )
    };
    let small_scope = json!("every surjection from rooted frames with <= 4 worlds onto rooted frames with <= 3 worlds; all nonempty subsets");
    let big_scope = json!({"source": format!("S4 ladder truncated at {}", t.n), "targets": ["Ch1", "Ch2"],
                           "per_target_limit": LADDER_LIMIT, "limit_reached_for_target_sizes": capped,
                           "sets": "grown from each singleton, three fixed sets, 16 random subsets"});
    let empty_note = json!({"note": "the empty set is vacuously sufficient and has empty image; only nonempty sets are tested"});
    Ok(vec![
        out("source-fibres/small", small.fibre_failures == 0, &small, small_scope.clone()),
        out("sufficient-full/small", small.full_failures == 0, &small, small_scope),
        out("source-fibres/ladder", big.fibre_failures == 0, &big, big_scope.clone()),
        out("sufficient-full/ladder", big.full_failures == 0, &big, big_scope),
        Check::info("sufficient-full/empty-set", empty_note),
    ])
}
