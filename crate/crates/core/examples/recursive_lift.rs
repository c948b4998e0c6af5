//! Lifts the order-28 triple with the order-4 HK family.

use dwm::construct::{lift, pair_family, embedded_dw, Embedded};

fn main() -> dwm::Result<()> {
    let base = embedded_dw(Embedded::Dw28);
    let (hk, _) = pair_family(2);
    let lifted = lift(&base, &hk)?;
    println!("{} -> {}", base.notation(), lifted.notation());
    print!("{}", lifted.certificate().report());
    Ok(())
}
