//! δ(Q^[q]) for q = 1, p, p^2 over F_2 and F_3.

use socle_lab::spc::frobenius_growth;
use socle_lab::{FieldSpec, Ideal, PolyRing, QuotientRing, TermOrder};

fn main() -> socle_lab::Result<()> {
    for p in [2u32, 3] {
        let r = PolyRing::new(FieldSpec::prime(p)?, &["x", "y"], TermOrder::DegRevLex)?;
        let t = QuotientRing::new(Ideal::parse(&r, &["x*y"])?);
        let q = Ideal::parse(&r, &["x + y"])?;
        let p = p as u64;
        let table = frobenius_growth(&t, &q, &r.parse("x")?, &[1, p, p * p], 64)?;
        println!("F{p}: d = {}", table.d);
        for row in &table.rows {
            println!("  q = {:<2} H0 = {:<2} H1 = {:<2} δ = {}", row.q, row.h0, row.h1, row.delta);
        }
        println!(
            "  δ(q) = q^d δ(1): {}, empirical c = {}, bound holds: {}",
            table.scaling_holds, table.empirical_c, table.bound_holds
        );
    }
    Ok(())
}
