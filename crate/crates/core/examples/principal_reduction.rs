//! Replacing J = (g_1, g_2) by (w_1 g_1 + w_2 g_2) over R[w_1, w_2]
//! preserves whether R -> T/J splits.

use socle_lab::spc::{reduce_to_principal, splitting_check};
use socle_lab::{FieldSpec, Ideal, PolyRing, QuotientRing, TermOrder};

fn main() -> socle_lab::Result<()> {
    let r = PolyRing::new(FieldSpec::Rationals, &["x", "y"], TermOrder::DegRevLex)?;
    let t = QuotientRing::new(Ideal::parse(&r, &["y^2 - x^2"])?).as_tower(&["x"])?;

    for j in [["y - x", "y + x"], ["y - x", "x^2"]] {
        let gens = vec![r.parse(j[0])?, r.parse(j[1])?];
        let before = splitting_check(&t, &gens, 64)?.splits;
        let (t2, g) = reduce_to_principal(&t, &gens, Some(&["a", "b"]))?;
        let after = splitting_check(&t2, &[g.clone()], 64)?.splits;
        println!("J = ({}, {}): splits {before}; in {t2}, ({g}) splits {after}", j[0], j[1]);
        assert_eq!(before, after);
    }
    Ok(())
}
