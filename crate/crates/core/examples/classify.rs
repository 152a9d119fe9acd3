//! Which free nilpotent and free metabelian algebras admit an ad-invariant metric.

use liefree::metric::{classify_free, grid_budget_from_env};
use liefree::report::instances_up_to;

fn main() {
    let instances: Vec<_> = instances_up_to(20).into_iter().filter(|(_, k)| *k >= 2).collect();
    for row in classify_free(&instances, grid_budget_from_env()) {
        let show = |v: &liefree::Result<liefree::MetricVerdict>| match v {
            Ok(v) => format!("{} ({})", if v.admits { "yes" } else { "no" }, v.reason_label()),
            Err(e) => format!("error: {e}"),
        };
        println!("n_{{{},{}}}: free {}, metabelian {}", row.m, row.k, show(&row.free), show(&row.metabelian));
    }
}
