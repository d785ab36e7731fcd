//! Compares stack- and revstack-sortable counts degree by degree.

use permsort::enumerate::verify_steingrimsson;

fn main() -> permsort::Result<()> {
    for n in 4..=8 {
        let report = verify_steingrimsson(n, 4)?;
        let cells: Vec<String> = report.rows.iter().map(|r| format!("{}/{}", r.stack, r.revstack)).collect();
        println!("n = {n} {}: {}", if report.holds { "ok" } else { "FAILED" }, cells.join(" "));
    }
    Ok(())
}
