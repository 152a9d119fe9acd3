//! Size of the tail set U in n_{m,k}, by enumeration and by closed form.

use liefree::hall::{hall_basis, tail_set, tail_set_count};

fn main() -> liefree::Result<()> {
    for m in 2..=4usize {
        let k = 5;
        let t = tail_set(m, k)?;
        let basis = hall_basis(m, k)?;
        let in_basis = t.u_tilde.iter().filter(|x| basis.rank_of(x).is_some()).count();
        let mu = m as u64;
        println!(
            "m={m}: |U| = {}, count formula {}, m(m^2-1)/3 = {}, m^3/3 + m^2 + 2m/3 = {}, Hall elements among the tails: {in_basis}",
            t.u.len(),
            tail_set_count(m),
            mu * (mu * mu - 1) / 3,
            (mu.pow(3) + 3 * mu * mu + 2 * mu) / 3,
        );
    }
    Ok(())
}
