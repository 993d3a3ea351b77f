//! Gröbner bases and ideal operations.

use socle_lab::groebner::{eliminate, is_groebner_basis};
use socle_lab::{FieldSpec, Ideal, PolyRing, TermOrder};

fn main() -> socle_lab::Result<()> {
    let r = PolyRing::new(FieldSpec::Rationals, &["x", "y", "z"], TermOrder::Lex)?;
    let i = Ideal::parse(&r, &["x^2 + y^2 + z^2 - 1", "x - y", "y - z^2"])?;
    let gb = i.groebner_basis();
    println!("lex basis ({} elements):", gb.len());
    for g in gb.iter() {
        println!("  {g}");
    }
    assert!(is_groebner_basis(&gb));

    let a = Ideal::parse(&r, &["x*y"])?;
    let b = Ideal::parse(&r, &["x^2", "y"])?;
    println!("a + b   = {}", a.sum(&b)?);
    println!("a * b   = {}", a.product(&b)?);
    println!("a ∩ b   = {}", a.intersect(&b)?);
    println!("a : x   = {}", a.colon(&r.parse("x")?)?);

    // twisted cubic: eliminate t from (x - t, y - t^2, z - t^3)
    let e = PolyRing::new(FieldSpec::Rationals, &["t", "x", "y", "z"], TermOrder::Elimination(1))?;
    let param = Ideal::parse(&e, &["x - t", "y - t^2", "z - t^3"])?;
    println!("implicit equations: {}", eliminate(&param, 3)?);
    Ok(())
}
