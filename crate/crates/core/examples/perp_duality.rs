//! With an invariant metric the lower and upper central series are orthogonal duals.

use liefree::liealg::{n23, n32};
use liefree::metric::{b23, b32};

fn main() -> liefree::Result<()> {
    for (name, g, b) in [("n32", n32(), b32()), ("n23", n23(), b23())] {
        let s = g.series();
        for r in 0..=s.stable_length() {
            let lower = s.lower_at(r);
            let perp = b.perp(lower)?;
            println!(
                "{name} r={r}: dim C^r = {}, dim (C^r)^perp = {}, dim C_r = {}, equal: {}",
                lower.dim(),
                perp.dim(),
                s.upper_at(r).dim(),
                &perp == s.upper_at(r)
            );
        }
    }
    Ok(())
}
