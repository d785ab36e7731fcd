//! Full descent table, cached on disk, with jobs-independent output.

use permsort::enumerate::{descent_table, TableCache};
use permsort::Sorter;

fn main() -> permsort::Result<()> {
    let n = 7;
    let dir = std::env::temp_dir().join("permsort-example-cache");
    let cache = TableCache::new(&dir);
    let table = cache.get_or_compute(n, Sorter::Revstack, 4)?;
    print!("{}", table.to_plain());
    println!("cached at {}", cache.path_for(n, Sorter::Revstack).display());

    let serial = descent_table(n, Sorter::Revstack, 1)?;
    assert_eq!(serial, table);
    print!("{}", table.to_csv());
    Ok(())
}
