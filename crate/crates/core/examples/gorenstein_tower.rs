//! Tower rings k[x][y_1..y_s]/(monic relations) and their coordinates.

use socle_lab::local::{build_tower, gorenstein_check, TowerSpec};
use socle_lab::{FieldSpec, PolyRing, TermOrder};

fn main() -> socle_lab::Result<()> {
    let base = PolyRing::new(FieldSpec::Rationals, &["x"], TermOrder::DegRevLex)?;

    // y1^2 = x, y2^3 = x^2
    let spec = TowerSpec::new(
        &base,
        &["y1", "y2"],
        vec![
            vec![base.zero(), base.parse("-x")?],
            vec![base.zero(), base.zero(), base.parse("-x^2")?],
        ],
    );
    let t = build_tower(&spec)?;
    println!("T = {t}");
    let tower = t.require_tower()?;
    println!("degrees {:?}, free basis exponents {:?}", tower.degrees(), tower.basis_exponents());

    let closed = t.extend(&[t.ring().parse("x")?]);
    let g = gorenstein_check(&closed, 64)?;
    println!("closed fibre socle generator: {}", g.generator.expect("towers are Gorenstein"));

    let f = t.ring().parse("(y1 + x)^3")?;
    println!("coordinates of (y1 + x)^3 over k[x]:");
    let mut coords: Vec<_> = tower.coordinates(&f).into_iter().collect();
    coords.sort_by(|a, b| a.0.cmp(&b.0));
    for (alpha, c) in coords {
        println!("  {alpha:?}: {c}");
    }
    Ok(())
}
