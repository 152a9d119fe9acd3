//! Cotangent doubles carry a neutral invariant metric; metabelian ones stop at C^4.

use liefree::liealg::{cotangent_double, heisenberg, n23};
use liefree::metric::{admits_adinvariant, is_adinvariant};

fn main() -> liefree::Result<()> {
    for (name, h) in [("h1", heisenberg(1)?), ("h2", heisenberg(2)?), ("n23", n23())] {
        let (g, b) = cotangent_double(&h);
        let metabelian = g.derived(2)?.is_zero();
        let series: Vec<usize> = (0..=4).map(|r| g.series().lower_at(r).dim()).collect();
        println!(
            "T*{name}: dim {}, canonical form invariant {}, search admits {}, metabelian {metabelian}, dim C^r {series:?}",
            g.dim(),
            is_adinvariant(&g, &b)?,
            admits_adinvariant(&g)?.admits,
        );
    }
    Ok(())
}
