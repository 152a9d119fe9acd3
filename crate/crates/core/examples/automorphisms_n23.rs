//! Random automorphisms of n_{2,3} and their factorization through G, R and H.

use liefree::autgrp::{aut23_factor, group_structure_checks, random_product, AutMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> liefree::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..3 {
        let t = random_product(&mut rng);
        let f = aut23_factor(&AutMatrix::n23(t.clone())?)?;
        println!("{t}");
        println!("  {}\n", serde_json::to_string(&f.to_json()).expect("serializable"));
    }
    let report = group_structure_checks(&mut rng);
    for c in &report.checks {
        println!("[{}] {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
    }
    Ok(())
}
