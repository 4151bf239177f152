//! Jankov formulas: `¬J^k(G)` is refutable on `F` exactly when `G` is a t-morphic image of `F`
//! (here with `k` one above the r-degree of `F`).

use tensekit::families::jankov;
use tensekit::formula::Formula;
use tensekit::frame::GeneralFrame;
use tensekit::morphism::is_image;
use tensekit::semantics::{valid, Verdict};
use tensekit::Frame;

fn main() -> tensekit::Result<()> {
    let g = Frame::reflexive_chain(2);
    let sources = [Frame::reflexive_chain(3), Frame::cluster(2), Frame::new(&["a", "b"], &[("a", "b"), ("b", "b"), ("a", "a")])?];
    for f in sources {
        let k = f.rdg() + 1;
        let not_j = Formula::not(&jankov(&g, k)?);
        let refuted = matches!(valid(&GeneralFrame::kripke(f.clone()), &not_j, 1 << 20), Verdict::Counter { .. });
        println!("|F| = {}, k = {k}: refutes not-J {refuted}, Ch2 is an image {}", f.len(), is_image(&f, &g));
    }
    Ok(())
}
