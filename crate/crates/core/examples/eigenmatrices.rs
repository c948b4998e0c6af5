//! Exact P and Q for the 4-class scheme on 24 vertices.

use dwm::construct::{base_pair, DwCollection};
use dwm::scheme::{build_relations, intersection_matrix_l1, sylvester_hadamard, SchemeParams};
use dwm::spectra::{certify_eigenmatrices, closed_form_p, compare, eigenmatrices_from_l1};

fn main() -> dwm::Result<()> {
    let dw = DwCollection::certify(vec![base_pair().1], vec![1])?;
    let rel = build_relations(&SchemeParams::new(1, 1, 3, dw, sylvester_hadamard(4)?)?)?;
    let e = eigenmatrices_from_l1(&intersection_matrix_l1(&rel)?, &rel)?;
    print!("{}", e.to_text());
    print!("{}", certify_eigenmatrices(&e, &rel)?.report());
    print!("{}", compare(&e, &closed_form_p(1, 1, 3))?.report());
    Ok(())
}
