//! Frames from JSON, closures, r-degree and the transitive metrics.

use tensekit::frame::{Closure, Dir, FrameJson};
use tensekit::Frame;

fn main() -> tensekit::Result<()> {
    let j = FrameJson::parse(r#"{"worlds":["r","a","b"],"edges":[["r","a"],["a","b"]]}"#)?;
    let f = j.frame()?;
    println!("rooted: {}, rdg per world: {:?}", f.is_rooted(), f.metrics().rdg);

    let t = f.closure(Closure::ReflexiveTransitive);
    let m = t.metrics();
    println!("after closure: transitive {}, dep {:?}, wid+ {:?}", t.is_transitive(), m.dep, m.wid_plus);

    let up = t.image(Dir::Fwd, &t.set_of(&["a"])?);
    println!("R[a] = {:?}, reach of b in 1 step: {:?}", t.names(&up), t.names(&t.reach_sharp(2, Some(1))));

    let ch = Frame::reflexive_chain(3);
    println!("{}", serde_json::to_string(&FrameJson::from_frame(&ch)).expect("serializable"));
    Ok(())
}
