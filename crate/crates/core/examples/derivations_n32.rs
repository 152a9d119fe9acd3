//! Derivations of n_{3,2}, and the sl(3) action on the skew part.

use liefree::derivs::{derivation_space, named_family, skew_derivation_space, verify_structure, AlgebraTag};

fn main() -> liefree::Result<()> {
    let tag = AlgebraTag::N32;
    let g = tag.algebra();
    let der = derivation_space(&g);
    let skew = skew_derivation_space(&g, &tag.metric())?;
    println!("Der {}  Der_a {}", der.dim(), skew.dim());
    for name in tag.family_names() {
        let t = named_family(tag, &name)?;
        println!("{name}: derivation {}, skew {}", der.contains(&t)?, skew.contains(&t)?);
    }
    let report = verify_structure(tag);
    println!("{} relations, all hold: {}", report.relations.len(), report.all_passed());
    Ok(())
}
