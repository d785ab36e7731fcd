//! Recomputes the bundled table of descent polynomials and roots.

use permsort::enumerate::{golden_appendix, reproduce_appendix};

fn main() -> permsort::Result<()> {
    let max_n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let golden = golden_appendix();
    let report = reproduce_appendix(&golden, max_n, 4, None)?;
    println!("{} entries checked, {} mismatches", report.entries_checked, report.mismatches.len());
    for m in &report.mismatches {
        println!("  n={} t={} {}: expected {} got {}", m.n, m.t, m.kind, m.expected, m.got);
    }
    Ok(())
}
