//! Parsing, printing, modal degree and substitution.

use std::collections::BTreeMap;
use tensekit::formula::{parse, Formula};

fn main() {
    let f = parse("[]p0 -> <>p0 & <P>p1").expect("well-formed");
    println!("primitive: {f}");
    println!("sugared:   {}", f.pretty());
    println!("md = {}, vars = {:?}, dag = {}", f.modal_degree(), f.vars(), f.dag_size());

    // Reparsing either form gives the same tree.
    assert_eq!(parse(&f.to_string()).unwrap(), f);
    assert_eq!(parse(&f.pretty()).unwrap(), f);

    let s: BTreeMap<u32, Formula> = [(0, parse("<P>#t").unwrap())].into();
    println!("p0 := <P>#t gives {}", f.substitute(&s).pretty());

    match parse("[]p0 -> ") {
        Err(e) => println!("{e}"),
        Ok(_) => unreachable!(),
    }
}
