//! Splits the revstack degree n-2 permutations into their shape classes.

use permsort::enumerate::classify_degree_nm2;

fn main() -> permsort::Result<()> {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let report = classify_degree_nm2(n, 4)?;
    for class in &report.classes {
        println!("{:24} {:6} {}", class.name, class.size, class.polynomial);
    }
    println!(
        "{} permutations of degree {}; overlaps {}, missed {}, strays {}",
        report.degree_nm2,
        n - 2,
        report.overlaps,
        report.missed,
        report.strays
    );
    Ok(())
}
