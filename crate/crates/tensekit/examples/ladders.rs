//! Symbolic ladder frames: exact truth sets over infinite regions and finite windows.

use tensekit::families::{gamma, gamma_star};
use tensekit::symbolic::{Family, SymValuation, SymbolicFrame};

fn main() -> tensekit::Result<()> {
    let kt = SymbolicFrame::with_default_local(Family::Kt, &[2, 3])?;
    let k = kt.k();
    println!("Kt ladder, k = {k}");
    for n in 0..5 {
        let t = kt.truth_set(&SymValuation::new(), &gamma(n, k))?;
        println!("  truth(gamma_{n}) = {}", kt.describe(&t));
    }
    let t = kt.truth_set(&SymValuation::new(), &gamma_star(5, k))?;
    println!("  truth(gamma*_5) = {}", kt.describe(&t));

    let s4 = SymbolicFrame::with_default_local(Family::S4t, &[2, 3])?;
    let w = s4.truncate(6)?;
    println!("S4 ladder window N = 6: {} worlds, {} internal atoms", w.frame.len(), w.frame.atoms().len());
    let a0 = s4.world("a0")?;
    println!("  R[a0] = {}", s4.describe(&s4.image(&s4.singleton(a0))));
    Ok(())
}
