//! Decreasing binary trees, their traversals, and the descent maps.

use permsort::trees::{duality_f, g_map, injection_h, tree_of};
use permsort::Permutation;

fn main() -> permsort::Result<()> {
    let pi: Permutation = "8 7 9 4 6 1 10 2 3 5 11".parse()?;
    let tree = tree_of(&pi)?;
    print!("{}", tree.render());
    println!("in-order          {}", tree.in_order());
    println!("post-order        {}  (stack sort)", tree.post_order());
    println!("right-left-root   {}  (revstack sort)", tree.rpostorder());

    let indexing = tree.vertex_indexing();
    let labels: Vec<u32> = (1..=pi.len()).map(|i| indexing.label(i)).collect();
    println!("vertex order      {labels:?}");

    let f = duality_f(&pi);
    println!("f(pi) = {f}, des {} -> {}", pi.descents()?, f.descents()?);
    println!("g(pi) = {}", g_map(&pi));

    let h = injection_h(&pi)?;
    println!("h(pi) = {} (prefix {}, flipped {:?})", h.image, h.index, h.flipped);
    assert_eq!(h.image.stack_sort(), pi.stack_sort());
    assert_eq!(h.image.revstack_sort(), pi.revstack_sort());
    Ok(())
}
