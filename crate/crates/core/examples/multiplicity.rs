//! Hilbert-Samuel multiplicities, compared with the Euler characteristic
//! of the Koszul complex when Q is a parameter ideal.

use socle_lab::spc::{multiplicity, DEFAULT_NMAX};
use socle_lab::{FieldSpec, Ideal, PolyRing, QuotientRing, TermOrder};

fn main() -> socle_lab::Result<()> {
    let r = PolyRing::new(FieldSpec::Rationals, &["x", "y"], TermOrder::DegRevLex)?;
    let cases = [
        (&["x*y"][..], &["x", "y"][..], None),
        (&["x*y"], &["x + y"], Some("x")),
        (&["y^2 - x^3"], &["x"], Some("y")),
        (&["y^2 - x^3"], &["y"], None),
        (&["x^2", "y^2"], &["x", "y"], None),
    ];
    for (rels, q, z) in cases {
        let t = QuotientRing::new(Ideal::parse(&r, rels)?);
        let q = Ideal::parse(&r, q)?;
        let z = z.map(|s| r.parse(s)).transpose()?;
        let m = multiplicity(&t, &q, z.as_ref(), DEFAULT_NMAX, 64)?;
        println!(
            "T = {t}, Q = {q}: ℓ(T/Q^n) = {:?}, d = {}, e = {}, χ = {:?}, serre agrees: {:?}",
            m.hilbert_samuel_lengths, m.dimension, m.e, m.chi, m.serre_agrees
        );
    }
    Ok(())
}
