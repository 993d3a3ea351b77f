//! Splitting of R -> T/J via Ann_T J, and an explicit retraction.

use socle_lab::spc::{build_retraction, splitting_check};
use socle_lab::{FieldSpec, Ideal, PolyRing, QuotientRing, TermOrder};

fn main() -> socle_lab::Result<()> {
    let r = PolyRing::new(FieldSpec::Rationals, &["x", "y"], TermOrder::DegRevLex)?;
    // T = k[x][y]/(y^2 - x^2), free over R = k[x] with basis 1, y
    let t = QuotientRing::new(Ideal::parse(&r, &["y^2 - x^2"])?).as_tower(&["x"])?;

    for j in [&["y - x"][..], &["y"], &["y - x", "y + x"]] {
        let gens = j.iter().map(|g| r.parse(g)).collect::<socle_lab::Result<Vec<_>>>()?;
        let s = splitting_check(&t, &gens, 64)?;
        let witness = s.witness.as_ref().map(|w| w.to_string()).unwrap_or_else(|| "-".into());
        println!("J = ({}): splits={} Ann = {} witness {}", j.join(", "), s.splits, s.annihilator, witness);
    }

    let j = [r.parse("y - x")?];
    let rho = build_retraction(&t, &j, &r.parse("y + x")?, 64)?;
    println!("retraction with u = {}, multiplier {}", rho.socle_lift, rho.multiplier);
    for (b, img) in rho.basis.iter().zip(&rho.images) {
        println!("  ρ({b}) = {img}");
    }
    println!("ρ(1) = 1: {}   ρ(J) = 0: {}", rho.preserves_one(), rho.kills(&j));
    Ok(())
}
