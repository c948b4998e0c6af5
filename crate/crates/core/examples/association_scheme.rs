//! Builds the 3-class scheme on 112 vertices from the order-28 triple.

use dwm::construct::{embedded_dw, Embedded};
use dwm::scheme::{
    build_relations, certify_scheme, coclique_bound_check, intersection_matrix_l1, sylvester_hadamard, SchemeParams,
};

fn main() -> dwm::Result<()> {
    let params = SchemeParams::new(3, 9, 1, embedded_dw(Embedded::Dw28), sylvester_hadamard(4)?)?;
    let rel = build_relations(&params)?;
    println!("{} classes on {} vertices, valencies {:?}", rel.d(), rel.vertices(), rel.valencies());
    print!("{}", certify_scheme(&rel).report());
    let l1 = intersection_matrix_l1(&rel)?;
    for r in 0..l1.order() {
        let row: Vec<String> = (0..l1.order()).map(|c| l1.get(r, c).to_string()).collect();
        println!("L1 | {}", row.join(" "));
    }
    print!("{}", coclique_bound_check(&rel)?.report());
    Ok(())
}
