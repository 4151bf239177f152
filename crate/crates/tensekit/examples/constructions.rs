//! Combination, reflective unfolding and raising the r-degree while keeping a satisfied formula.

use tensekit::constructions::{boost_rdg, combine, satisfying_valuation, unfold, BoostMode};
use tensekit::formula::parse;
use tensekit::frame::FrameJson;
use tensekit::morphism::check_frames;
use tensekit::Frame;

fn main() -> tensekit::Result<()> {
    let f = Frame::new(&["w", "v", "u"], &[("w", "v"), ("w", "u")])?;

    let g = Frame::reflexive_chain(2);
    let h = combine(&f, 2, &g, 0, false)?;
    println!("combined: {} worlds, {} edges", h.len(), h.edge_count());

    let un = unfold(&f, 0, 2, 4, false)?;
    println!("F^4: {}", serde_json::to_string(&FrameJson::from_frame(&un.frame)).expect("serializable"));
    println!("projection is a t-morphism: {}", check_frames(&un.frame, &f, &un.projection)?.is_none());

    let phi = parse("<>#t").expect("well-formed");
    assert!(satisfying_valuation(&f, &phi, 0).is_some());
    let b = boost_rdg(&f, 0, &phi, 2, BoostMode::Plain)?;
    println!("boosted: {} worlds, rdg {} (was {}), satisfied at {}", b.frame.len(), b.frame.rdg(), f.rdg(), b.frame.id(b.world));
    Ok(())
}
