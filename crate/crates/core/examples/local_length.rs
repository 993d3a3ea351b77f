//! Lengths, socles and Gorenstein tests at the origin.

use socle_lab::local::{gorenstein_check, local_length, socle, LocalQuotient};
use socle_lab::{FieldSpec, Ideal, PolyRing, TermOrder};

fn main() -> socle_lab::Result<()> {
    let r = PolyRing::new(FieldSpec::Rationals, &["x", "y"], TermOrder::DegRevLex)?;

    // (x^2 - x) has two points; only the one at the origin counts
    let i = Ideal::parse(&r, &["x^2 - x", "y^2"])?;
    let l = local_length(&i, 64)?;
    println!("ℓ(k[x,y]/(x^2 - x, y^2)) at 0 = {} (stable from m^{})", l.value, l.stabilized_at);

    for gens in [&["x^2", "y^2"][..], &["x^2", "x*y", "y^2"], &["x*y", "x^3 - y^3"]] {
        let i = Ideal::parse(&r, gens)?;
        let s = socle(&i, 64)?;
        let basis: Vec<String> = s.basis.iter().map(|b| b.to_string()).collect();
        let g = gorenstein_check(&i, 64)?;
        println!("({}): socle <{}> gorenstein={}", gens.join(", "), basis.join(", "), g.gorenstein);
    }

    // positive dimension is reported, not looped on
    match local_length(&Ideal::parse(&r, &["x*y"])?, 16) {
        Ok(l) => println!("unexpected length {}", l.value),
        Err(e) => println!("(x*y): {e}"),
    }

    let lq = LocalQuotient::new(&Ideal::parse(&r, &["x^3", "y^2"])?, 64)?;
    let mons: Vec<String> = lq.standard_monomials().into_iter().map(|m| r.monomial(m).to_string()).collect();
    println!("standard monomials of (x^3, y^2): {}", mons.join(" "));
    Ok(())
}
