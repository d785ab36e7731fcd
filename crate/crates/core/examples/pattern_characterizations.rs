//! Low-degree revstack sortability read off from pattern avoidance.

use permsort::enumerate::all_permutations;
use permsort::patterns::{contains_barred, is_member_t2};
use permsort::{PatternSpec, Sorter};

fn main() -> permsort::Result<()> {
    let p132: PatternSpec = "1 3 2".parse()?;
    let barred: PatternSpec = "2 4 1 5! 3".parse()?;

    let pi = "3 5 2 4 1 6".parse()?;
    match contains_barred(&pi, &barred) {
        Some(occ) => println!("{pi} contains {barred} at positions {:?}", occ.positions),
        None => println!("{pi} avoids {barred}"),
    }

    let n = 7;
    let (mut one, mut two) = (0, 0);
    for pi in all_permutations(n) {
        let d = pi.deg(Sorter::Revstack).value();
        assert_eq!(d <= 1, contains_barred(&pi, &p132).is_none());
        assert_eq!(d <= 2, is_member_t2(&pi));
        one += usize::from(d <= 1);
        two += usize::from(d <= 2);
    }
    println!("n = {n}: {one} permutations avoid 132, {two} are 2-revstack-sortable");
    Ok(())
}
