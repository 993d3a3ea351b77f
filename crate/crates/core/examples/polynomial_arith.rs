//! Exact polynomial arithmetic over Q and F_p.

use socle_lab::polynomial::{poly_arith, ArithOp};
use socle_lab::{FieldSpec, PolyRing, TermOrder};

fn main() -> socle_lab::Result<()> {
    let q = PolyRing::new(FieldSpec::Rationals, &["x", "y"], TermOrder::DegRevLex)?;
    let f = q.parse("(x + y/2)^3")?;
    let g = q.parse("x - y")?;
    println!("f       = {f}");
    println!("f * g   = {}", poly_arith(&f, &g, ArithOp::Mul)?);
    println!("f - f   = {}", f.sub(&f));

    let (quots, rem) = f.div_rem(&[g.clone()])?;
    println!("f = ({}) * g + {rem}", quots[0]);

    // the same expression in characteristic 3 collapses by Frobenius
    let f3 = PolyRing::new(FieldSpec::prime(3)?, &["x", "y"], TermOrder::Lex)?;
    println!("over F3: (x + y)^3 = {}", f3.parse("(x + y)^3")?);
    println!("over F3: 1/2 = {}", f3.parse("1/2")?);
    Ok(())
}
