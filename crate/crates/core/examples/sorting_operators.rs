//! One pass of each sorter, repeated passes, and sorting degrees.

use permsort::{Permutation, Sorter};

fn main() -> permsort::Result<()> {
    let pi: Permutation = "4 2 5 1 3".parse()?;
    println!("pi          = {pi}");
    println!("stack       = {}", pi.stack_sort());
    println!("revstack    = {}", pi.revstack_sort());
    println!("reverse     = {}", pi.reverse());

    let mut cur = pi.clone();
    for pass in 1..=pi.deg(Sorter::Revstack).value() {
        cur = cur.revstack_sort();
        println!("revstack^{pass}  = {cur}");
    }
    for sorter in [Sorter::Stack, Sorter::Revstack] {
        println!("deg_{} = {}", sorter.name(), pi.deg(sorter).value());
    }
    Ok(())
}
