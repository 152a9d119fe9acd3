//! Hall basis, graded dimensions and brackets of n_{2,4}.

use liefree::hall::{hall_basis, structure_constants_for, witt_dim};

fn main() -> liefree::Result<()> {
    let (m, k) = (2, 4);
    let basis = hall_basis(m, k)?;
    for s in 1..=k {
        println!("degree {s}: d_{m}({s}) = {}", witt_dim(m, s));
    }
    for (i, name) in basis.names().iter().enumerate() {
        println!("{:>3}  {name}", i + 1);
    }
    let g = structure_constants_for(&basis)?;
    let names = g.names();
    for (i, j) in g.nonzero_pairs() {
        let rhs: Vec<String> = g.terms(i, j).iter().map(|(k, c)| format!("{c} {}", names[*k])).collect();
        println!("[{}, {}] = {}", names[i], names[j], rhs.join(" + "));
    }
    Ok(())
}
