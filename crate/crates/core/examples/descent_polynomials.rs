//! Closed-form descent polynomials next to enumerated rows.

use permsort::enumerate::descent_table;
use permsort::polyalg::{
    count_revstack_nm2, count_revstack_nm3, eulerian_poly, narayana_poly, w_revstack_1, w_revstack_nm2,
    w_revstack_nm3,
};
use permsort::Sorter;

fn main() -> permsort::Result<()> {
    let n = 7;
    let table = descent_table(n, Sorter::Revstack, 4)?;
    println!("A_{n}(x)       = {}", eulerian_poly(n));
    println!("Narayana     = {}", narayana_poly(n));

    let rows = [
        (1, w_revstack_1(n)),
        (n - 3, w_revstack_nm3(n)?),
        (n - 2, w_revstack_nm2(n)?),
        (n - 1, eulerian_poly(n)),
    ];
    for (t, closed) in rows {
        let counted = table.row(t);
        println!("t = {t}: {counted}  [{}]", if counted == closed { "matches" } else { "DIFFERS" });
    }
    println!(
        "|T^(n-2)| = {}, |T^(n-3)| = {}",
        count_revstack_nm2(n)?,
        count_revstack_nm3(n)?
    );
    Ok(())
}
