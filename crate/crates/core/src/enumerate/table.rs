use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{check_size, fold_shards, for_each_in_shard, MAX_N};
use crate::error::Result;
use crate::perm::{degree, descents, Scratch, Sorter};
use crate::polyalg::IntPolynomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Row {
    t: usize,
    coeffs: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct TableView {
    n: usize,
    sorter: Sorter,
    rows: Vec<Row>,
    counts: Vec<u64>,
}

/// Descent polynomials of the `t`-sortable permutations for `t = 0..n`.
///
/// Row `t` holds the coefficients of `x^0..=x^n` in `Σ x^(1+des π)` over
/// all `π ∈ S_n` with sorting degree at most `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "TableView", try_from = "TableView")]
pub struct DescentTable {
    n: usize,
    sorter: Sorter,
    rows: Vec<Vec<u64>>,
}

impl From<DescentTable> for TableView {
    fn from(t: DescentTable) -> Self {
        let counts = (0..t.rows.len()).map(|i| t.count(i)).collect();
        TableView {
            n: t.n,
            sorter: t.sorter,
            rows: t
                .rows
                .into_iter()
                .enumerate()
                .map(|(t, coeffs)| Row { t, coeffs })
                .collect(),
            counts,
        }
    }
}

impl TryFrom<TableView> for DescentTable {
    type Error = String;

    fn try_from(v: TableView) -> std::result::Result<Self, String> {
        if v.rows.len() != v.n {
            return Err(format!("expected {} rows, found {}", v.n, v.rows.len()));
        }
        let mut rows = Vec::with_capacity(v.n);
        for (i, row) in v.rows.into_iter().enumerate() {
            if row.t != i || row.coeffs.len() != v.n + 1 {
                return Err(format!("malformed row {i}"));
            }
            if v.counts.get(i) != Some(&row.coeffs.iter().sum()) {
                return Err(format!("count mismatch in row {i}"));
            }
            rows.push(row.coeffs);
        }
        Ok(DescentTable {
            n: v.n,
            sorter: v.sorter,
            rows,
        })
    }
}

impl DescentTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sorter(&self) -> Sorter {
        self.sorter
    }

    /// Number of rows, `n`.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Coefficients of `x^0..=x^n` at sorting bound `t`; rows past `n-1`
    /// repeat the last one.
    pub fn coeffs(&self, t: usize) -> &[u64] {
        &self.rows[t.min(self.n - 1)]
    }

    /// Number of permutations of degree at most `t` with `des` descents.
    pub fn entry(&self, t: usize, des: usize) -> u64 {
        self.coeffs(t)[des + 1]
    }

    pub fn row(&self, t: usize) -> IntPolynomial {
        IntPolynomial::new(self.coeffs(t).iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Size of the `t`-sortable set.
    pub fn count(&self, t: usize) -> u64 {
        self.coeffs(t).iter().sum()
    }

    /// Descent polynomial of the permutations of degree exactly `t`.
    pub fn exact_row(&self, t: usize) -> IntPolynomial {
        if t == 0 {
            self.row(0)
        } else {
            self.row(t) - self.row(t - 1)
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table serializes")
    }

    /// `t,c0,c1,...,cn,count` with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t");
        for k in 0..=self.n {
            let _ = write!(out, ",x^{k}");
        }
        out.push_str(",count\n");
        for t in 0..self.n {
            let _ = write!(out, "{t}");
            for c in self.coeffs(t) {
                let _ = write!(out, ",{c}");
            }
            let _ = writeln!(out, ",{}", self.count(t));
        }
        out
    }

    pub fn to_plain(&self) -> String {
        let mut out = String::new();
        for t in 0..self.n {
            let _ = writeln!(out, "t={t} count={} W={}", self.count(t), self.row(t));
        }
        out
    }
}

/// Tabulates sorting degree against descents over all of `S_n`.
pub fn descent_table(n: usize, sorter: Sorter, jobs: usize) -> Result<DescentTable> {
    check_size(n, 1, MAX_N)?;
    // hist[deg * n + des]
    let hist = fold_shards(
        n,
        jobs,
        |first| {
            let mut hist = vec![0u64; n * n];
            let mut scratch = Scratch::new(n);
            for_each_in_shard(n, first, |w| {
                let d = degree(w, sorter, &mut scratch);
                hist[d * n + descents(w)] += 1;
            });
            hist
        },
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    );
    let mut rows = Vec::with_capacity(n);
    let mut acc = vec![0u64; n + 1];
    for deg in 0..n {
        for des in 0..n {
            acc[des + 1] += hist[deg * n + des];
        }
        rows.push(acc.clone());
    }
    Ok(DescentTable { n, sorter, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::eulerian_poly;

    #[test]
    fn known_rows() {
        let t = descent_table(5, Sorter::Revstack, 2).unwrap();
        assert_eq!(t.coeffs(2), [0, 1, 20, 49, 20, 1]);
        assert_eq!(t.count(0), 1);
        assert_eq!(t.coeffs(0), [0, 1, 0, 0, 0, 0]);
        assert_eq!(t.row(4), eulerian_poly(5));
        let t8 = descent_table(8, Sorter::Revstack, 4).unwrap();
        assert_eq!(t8.coeffs(3), [0, 1, 154, 2587, 9490, 9490, 2587, 154, 1]);
    }

    #[test]
    fn serial_and_parallel_agree() {
        let a = descent_table(7, Sorter::Stack, 1).unwrap();
        let b = descent_table(7, Sorter::Stack, 5).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn formats() {
        let t = descent_table(3, Sorter::Revstack, 1).unwrap();
        let json: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(json["sorter"], "revstack");
        assert_eq!(json["rows"][1]["coeffs"], serde_json::json!([0, 1, 3, 1]));
        assert_eq!(json["counts"], serde_json::json!([1, 5, 6]));
        let back: DescentTable = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(back, t);
        assert!(t.to_csv().starts_with("t,x^0,x^1,x^2,x^3,count\n0,0,1,0,0,1\n"));
        assert!(serde_json::from_str::<DescentTable>(r#"{"n":2,"sorter":"stack","rows":[],"counts":[]}"#).is_err());
    }

    #[test]
    fn size_bounds() {
        assert!(descent_table(0, Sorter::Stack, 1).is_err());
        assert!(descent_table(13, Sorter::Stack, 1).is_err());
    }
}
