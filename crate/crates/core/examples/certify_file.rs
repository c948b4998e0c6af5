//! Certifies a sign-grid file as a skew complete-cover DW collection.

use dwm::cli::SignGridFile;
use dwm::verify::certify_dw;

fn main() -> dwm::Result<()> {
    let path = std::env::args().nth(1).expect("usage: certify_file <file.grid>");
    let file = SignGridFile::read(path.as_ref())?;
    let weights = match file.weights()? {
        Some(w) => w,
        None => file.matrices.iter().map(|m| m.row(0).iter().filter(|&&v| v != 0).count()).collect(),
    };
    let cert = certify_dw(&file.matrices, &weights)?;
    print!("{}", cert.report());
    std::process::exit(if cert.passed() { 0 } else { 1 });
}
