//! Builds small members of each family; pass a family spec to pick one.

use dwm::construct::{family, Family};

fn main() -> dwm::Result<()> {
    let specs: Vec<String> = match std::env::args().nth(1) {
        Some(s) => vec![s],
        None => ["powers2:n=2,m=3", "powers2:n=3,m=2", "f7:m=1", "f13:m=1"].map(String::from).to_vec(),
    };
    for spec in specs {
        let which: Family = spec.parse()?;
        let (order, weight, k) = which.parameters();
        let dw = family(which, None)?;
        let ok = dw.is_fully_certified();
        println!("{spec}: {} expected DW({order};[{weight}]^{k}) certified={ok}", dw.notation());
    }
    Ok(())
}
