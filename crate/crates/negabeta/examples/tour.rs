//! Quick tour of the library surface.

use negabeta::field::FieldElement;
use negabeta::finiteness::decide_minus_f;
use negabeta::negabase::{expansion, fr_length};
use negabeta::negarith;
use negabeta::{isolate_pisot_base, IntPolynomial};

fn main() -> negabeta::Result<()> {
    let poly = IntPolynomial::parse("1,-1,-1,-1")?;
    let base = isolate_pisot_base(&poly, true)?;
    println!("base: {} (pisot: {})", base, base.pisot_certified());

    let x = FieldElement::parse(&base, "1 - b")?;
    println!("<1 - b> = {}", expansion(&x, 10_000)?.text());
    println!("fr(1 - b) = {:?}", fr_length(&x, 10_000)?);

    let verdict = decide_minus_f(&base, 1_000_000, 10_000);
    println!(
        "finiteness: {} via {}",
        verdict.verdict.as_str(),
        verdict.certificate.describe()
    );

    for m in 1..=3 {
        println!(
            "m = {m}: max fr(x - y) = {}, max fr(x + y) = {}",
            negarith::frmax_sub(m)?,
            negarith::frmax_add(m)?
        );
    }
    Ok(())
}
