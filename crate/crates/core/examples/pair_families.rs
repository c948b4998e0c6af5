//! Grows the HK and LM pair families up to order 32 and checks every pair.

use dwm::construct::pair_family;
use dwm::verify::check_pair_conditions;

fn main() {
    for m in 1..=5 {
        let (hk, lm) = pair_family(m);
        for fam in [&hk, &lm] {
            let cert = check_pair_conditions(fam);
            let verdict = if cert.passed() { "PASS" } else { "FAIL" };
            println!("{verdict} {:?} order {} with {} pairs", fam.kind(), fam.order(), fam.len());
        }
    }
}
