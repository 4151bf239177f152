//! Truth sets, exhaustive validity with counter-models, and validity on a general frame.

use tensekit::formula::parse;
use tensekit::frame::FrameJson;
use tensekit::semantics::{truth_set, valid, Valuation, VerdictReport};
use tensekit::{Frame, GeneralFrame, WorldSet};

fn main() -> tensekit::Result<()> {
    let f = FrameJson::parse(r#"{"worlds":["0","1","2"],"edges":[["0","1"],["1","2"]]}"#)?.frame()?;
    let phi = parse("<>p0 -> <><>p0").expect("well-formed");

    let v: Valuation = [(0, f.set_of(&["1"])?)].into();
    println!("V(phi) = {:?}", f.names(&truth_set(&f, &v, &phi)?));

    let g = GeneralFrame::kripke(f.clone());
    let report = VerdictReport::new(&f, &valid(&g, &phi, 1_000_000));
    println!("Kripke frame: {}", serde_json::to_string(&report).expect("serializable"));

    // On a two-world cluster `p0 -> []p0` fails, unless only ∅ and everything are internal.
    let c2 = Frame::cluster(2);
    let psi = parse("p0 -> []p0").expect("well-formed");
    let coarse = GeneralFrame::close_internal(&c2, &[WorldSet::empty(2)]);
    println!("cluster, Kripke: {}", valid(&GeneralFrame::kripke(c2.clone()), &psi, 1 << 20).is_valid());
    println!("cluster, {:?} internal sets: {}", coarse.member_count(), valid(&coarse, &psi, 1 << 20).is_valid());
    Ok(())
}
