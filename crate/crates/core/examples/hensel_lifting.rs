//! Hensel lifting of a factorization and of an idempotent.

use socle_lab::local::{hensel_lift_factors, lift_idempotent};
use socle_lab::{FieldSpec, Ideal, PolyRing, QuotientRing, TermOrder};

fn main() -> socle_lab::Result<()> {
    let r = PolyRing::new(FieldSpec::prime(7)?, &["x", "y"], TermOrder::DegRevLex)?;
    let f = r.parse("y^2 - (1 + x)")?;
    let residue = [r.parse("y - 1")?, r.parse("y + 1")?];
    for n in [1, 2, 4, 8] {
        let lifted = hensel_lift_factors(&f, 1, &residue, n)?;
        println!("mod x^{n}: {} = ({}) * ({})", f, lifted[0], lifted[1]);
    }

    // y^2 - (1 + x) splits into two branches; e ≡ (1 + y)/2 picks one of them
    let t = QuotientRing::new(Ideal::new(&r, vec![f])?).with_base(&["x"])?;
    let e = lift_idempotent(&t, &r.parse("(1 + y)/2")?, 8)?;
    println!("idempotent mod x^8: e = {e}");
    let defect = t.normal_form(&e.mul(&e).sub(&e)).truncate_degree(8);
    println!("e^2 - e mod (f, x^8) = {defect}");
    Ok(())
}
