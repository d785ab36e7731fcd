//! Zigzag witnesses and the bounds they give on revstack degree.

use permsort::enumerate::zigzag_profile;
use permsort::zigzag::{find_uninterrupted_zigzag, find_zigzag, max_uninterrupted_degree, max_zigzag_degree};
use permsort::{Permutation, Sorter};

fn main() -> permsort::Result<()> {
    let pi: Permutation = "1 5 3 2 7 8 4 6".parse()?;
    for k in 1..=4 {
        match find_zigzag(&pi, k) {
            Some(z) => println!("{k}-zigzag {:?} interrupted={}", z.values, z.interrupted),
            None => println!("no {k}-zigzag"),
        }
    }
    if let Some(z) = find_uninterrupted_zigzag(&pi, 2) {
        println!("uninterrupted 2-zigzag {:?}", z.values);
    }
    println!(
        "max zigzag {:?}, max uninterrupted {:?}, deg {}",
        max_zigzag_degree(&pi),
        max_uninterrupted_degree(&pi),
        pi.deg(Sorter::Revstack).value()
    );

    let profile = zigzag_profile(7, 4)?;
    println!("k  no-zigzag  sortable  no-uninterrupted");
    for k in 0..=profile.n {
        println!(
            "{k}  {:9}  {:8}  {:16}",
            profile.without_zigzag[k], profile.revstack_sortable[k], profile.without_uninterrupted[k]
        );
    }
    assert!(profile.brackets());
    Ok(())
}
