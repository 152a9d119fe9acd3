//! Derivations of n_{2,3}: dimensions, named families and bracket relations.

use liefree::derivs::{verify_structure, AlgebraTag};

fn main() {
    let report = verify_structure(AlgebraTag::N23);
    println!("Der {}  Der_a {}  inner {}", report.der_dim, report.skew_dim, report.inner_dim);
    for rel in &report.relations {
        println!("[{}] {}", if rel.passed { "PASS" } else { "FAIL" }, rel.name);
    }
    for note in &report.notes {
        println!("note: {note}");
    }
}
