//! The three socle/parameter conditions and the Koszul lengths on
//! T = k[x,y]/(xy), Q = (x + y), z = x.

use socle_lab::spc::{annihilator, spc_verdict};
use socle_lab::{FieldSpec, Ideal, PolyRing, QuotientRing, TermOrder};

fn main() -> socle_lab::Result<()> {
    let r = PolyRing::new(FieldSpec::Rationals, &["x", "y"], TermOrder::DegRevLex)?;
    let t = QuotientRing::new(Ideal::parse(&r, &["x*y"])?);
    let q = Ideal::parse(&r, &["x + y"])?;

    for z in ["x", "y", "x + y", "x^2"] {
        let z = r.parse(z)?;
        let v = spc_verdict(&t, &q, &z, None, 64)?;
        let k = &v.lengths;
        println!(
            "z = {z:<6} socle={} ann={} delta={}  H0={} H1={} δ={}  agree={} Ann={}",
            v.cond_socle_membership,
            v.cond_annihilator,
            v.cond_delta,
            k.h0,
            k.h1,
            k.delta,
            v.agreement,
            annihilator(&t, &z)?.ideal,
        );
        assert!(v.length_identity_holds());
    }

    // a non-zerodivisor: all three conditions fail together
    let domain = QuotientRing::new(Ideal::parse(&r, &["y^2 - x^3"])?);
    let v = spc_verdict(&domain, &Ideal::parse(&r, &["x"])?, &r.parse("y")?, None, 64)?;
    println!("cusp, z = y: zero divisor={} δ={} agree={}", v.zero_divisor, v.lengths.delta, v.agreement);
    Ok(())
}
