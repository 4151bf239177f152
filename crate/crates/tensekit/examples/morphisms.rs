//! t-morphism checking, surjection search and small images.

use tensekit::morphism::{check_frames, find_surjections, images_up_to, is_image};
use tensekit::Frame;

fn main() -> tensekit::Result<()> {
    // A reflexive two-world cluster collapses onto one reflexive point.
    let c2 = Frame::cluster(2);
    let dot = Frame::reflexive_chain(1);
    println!("cluster -> point: {:?}", check_frames(&c2, &dot, &[0, 0])?);

    let zig = Frame::new(&["a", "b", "c"], &[("a", "b"), ("c", "b")])?;
    let v = Frame::new(&["x", "y"], &[("x", "y")])?;
    println!("zigzag onto edge: {}", is_image(&zig, &v));
    for m in find_surjections(&zig, &v, 10) {
        println!("  {:?}", m.iter().enumerate().map(|(s, &t)| (zig.id(s), v.id(t))).collect::<Vec<_>>());
    }

    let chain = Frame::reflexive_chain(3);
    println!("images of Ch3 with <= 3 worlds: {}", images_up_to(&chain, 3).len());
    Ok(())
}
