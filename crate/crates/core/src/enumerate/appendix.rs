use serde::{Deserialize, Serialize};

use super::cache::TableCache;
use super::table::descent_table;
use super::{check_size, MAX_N};
use crate::error::Result;
use crate::perm::Sorter;
use crate::polyalg::{default_width, real_roots};

/// Published revstack descent polynomials and their roots for `n ≤ 10`.
pub const EMBEDDED_APPENDIX: &str = include_str!("../../data/appendix.json");

/// Largest absolute deviation tolerated between a computed root and a
/// published one.
pub const ROOT_TOLERANCE: f64 = 1e-4;

/// `coeffs[k]` is the coefficient of `x^k`; `roots` ascending.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AppendixEntry {
    pub n: usize,
    pub t: usize,
    pub coeffs: Vec<u64>,
    pub roots: Vec<f64>,
}

pub fn parse_golden(text: &str) -> Result<Vec<AppendixEntry>> {
    Ok(serde_json::from_str(text)?)
}

pub fn golden_appendix() -> Vec<AppendixEntry> {
    parse_golden(EMBEDDED_APPENDIX).expect("embedded appendix is valid JSON")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AppendixMismatch {
    pub n: usize,
    pub t: usize,
    /// `coeff`, `root`, `root_count`, `not_real_rooted` or `missing`.
    pub kind: &'static str,
    pub index: Option<usize>,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AppendixReport {
    pub max_n: usize,
    pub entries_checked: usize,
    pub mismatches: Vec<AppendixMismatch>,
    pub holds: bool,
}

/// Recomputes every `(n, t)` with `n ≤ max_n` by enumeration and compares
/// coefficients exactly and roots to within [`ROOT_TOLERANCE`].
pub fn reproduce_appendix(
    golden: &[AppendixEntry],
    max_n: usize,
    jobs: usize,
    cache: Option<&TableCache>,
) -> Result<AppendixReport> {
    check_size(max_n, 1, MAX_N)?;
    let width = default_width();
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for n in 1..=max_n {
        let table = match cache {
            Some(c) => c.get_or_compute(n, Sorter::Revstack, jobs)?,
            None => descent_table(n, Sorter::Revstack, jobs)?,
        };
        for t in 0..n {
            let mismatch = |kind, index, expected: String, got: String| AppendixMismatch {
                n,
                t,
                kind,
                index,
                expected,
                got,
            };
            let Some(entry) = golden.iter().find(|e| e.n == n && e.t == t) else {
                mismatches.push(mismatch("missing", None, "entry".into(), "none".into()));
                continue;
            };
            checked += 1;
            let computed = table.coeffs(t);
            let len = computed.len().max(entry.coeffs.len());
            for k in 0..len {
                let want = entry.coeffs.get(k).copied().unwrap_or(0);
                let got = computed.get(k).copied().unwrap_or(0);
                if want != got {
                    mismatches.push(mismatch("coeff", Some(k), want.to_string(), got.to_string()));
                }
            }
            let report = real_roots(&table.row(t), &width);
            if !report.all_real || !report.nonpositive {
                mismatches.push(mismatch(
                    "not_real_rooted",
                    None,
                    "real nonpositive roots".into(),
                    format!("all_real={} nonpositive={}", report.all_real, report.nonpositive),
                ));
            }
            let roots: Vec<f64> = report
                .roots
                .iter()
                .flat_map(|r| std::iter::repeat_n(r.approx(), r.multiplicity))
                .collect();
            if roots.len() != entry.roots.len() {
                mismatches.push(mismatch(
                    "root_count",
                    None,
                    entry.roots.len().to_string(),
                    roots.len().to_string(),
                ));
                continue;
            }
            for (k, (&want, &got)) in entry.roots.iter().zip(&roots).enumerate() {
                if (want - got).abs() > ROOT_TOLERANCE {
                    mismatches.push(mismatch("root", Some(k), want.to_string(), format!("{got:.5}")));
                }
            }
        }
    }
    Ok(AppendixReport {
        max_n,
        entries_checked: checked,
        holds: mismatches.is_empty(),
        mismatches,
    })
}
