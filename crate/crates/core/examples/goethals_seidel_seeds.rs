//! Assembles the embedded order-28 and order-52 triples and certifies them.

use dwm::construct::{gs_assemble, embedded_seeds, DwCollection, Embedded};

fn main() -> dwm::Result<()> {
    for which in [Embedded::Dw28, Embedded::Dw52] {
        let seeds = embedded_seeds(which);
        let matrices = seeds.iter().map(gs_assemble).collect::<dwm::Result<Vec<_>>>()?;
        let dw = DwCollection::certify(matrices, vec![seeds[0].weight(); 3])?;
        println!("{} from circulants of order {}", dw.notation(), seeds[0].n());
        print!("{}", dw.certificate().report());
    }
    Ok(())
}
