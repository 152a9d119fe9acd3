//! The space of ad-invariant symmetric forms on n_{3,2} and n_{2,3}.

use liefree::liealg::{n23, n32};
use liefree::metric::{adinv_basis, b23, b32, is_adinvariant};

fn main() -> liefree::Result<()> {
    for (name, g, b) in [("n32", n32(), b32()), ("n23", n23(), b23())] {
        let forms = adinv_basis(&g);
        println!("{name}: {} invariant symmetric forms", forms.len());
        for f in &forms {
            println!("{f}\n");
        }
        println!("normalized metric (det {}), invariant: {}", b.det(), is_adinvariant(&g, &b)?);
        println!("{}\n", b.gram());
    }
    Ok(())
}
