use serde::Serialize;

use super::{check_size, fold_shards, for_each_in_shard};
use crate::error::Result;
use crate::perm::{degree, Permutation, Scratch, Sorter};
use crate::zigzag::{max_uninterrupted_degree, max_zigzag_degree};

/// Largest `n` for zigzag counting.
const MAX_ZIGZAG_N: usize = 10;

/// Counts over `S_n`, each indexed by `k = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZigzagProfile {
    pub n: usize,
    /// Permutations with no k-zigzag.
    pub without_zigzag: Vec<u64>,
    /// Permutations with no uninterrupted k-zigzag.
    pub without_uninterrupted: Vec<u64>,
    /// Permutations with `T^k(π) = id`.
    pub revstack_sortable: Vec<u64>,
}

impl ZigzagProfile {
    /// `without_zigzag[k] ≤ revstack_sortable[k] ≤ without_uninterrupted[k]`
    /// for every `k`.
    pub fn brackets(&self) -> bool {
        (0..=self.n).all(|k| {
            self.without_zigzag[k] <= self.revstack_sortable[k]
                && self.revstack_sortable[k] <= self.without_uninterrupted[k]
        })
    }

    /// First `k` where the bracketing fails.
    pub fn first_unbracketed(&self) -> Option<usize> {
        (0..=self.n).find(|&k| {
            self.without_zigzag[k] > self.revstack_sortable[k]
                || self.revstack_sortable[k] > self.without_uninterrupted[k]
        })
    }
}

/// A histogram of maxima `m` (`None` mapped to bucket 0, `Some(m)` to `m+1`)
/// turned into "no k-structure" counts: free of k-structures iff max < k.
fn cumulative_below(hist: &[u64], n: usize) -> Vec<u64> {
    (0..=n).map(|k| hist[..=k].iter().sum()).collect()
}

pub fn zigzag_profile(n: usize, jobs: usize) -> Result<ZigzagProfile> {
    check_size(n, 1, MAX_ZIGZAG_N)?;
    let width = n + 2;
    // [plain maxima | uninterrupted maxima | degrees], each `width` long.
    let hist = fold_shards(
        n,
        jobs,
        |first| {
            let mut hist = vec![0u64; 3 * width];
            let mut scratch = Scratch::new(n);
            for_each_in_shard(n, first, |w| {
                let pi = Permutation::from_word_unchecked(w.to_vec());
                hist[max_zigzag_degree(&pi).map_or(0, |m| m + 1)] += 1;
                hist[width + max_uninterrupted_degree(&pi).map_or(0, |m| m + 1)] += 1;
                hist[2 * width + degree(w, Sorter::Revstack, &mut scratch)] += 1;
            });
            hist
        },
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    );
    let degrees = &hist[2 * width..];
    Ok(ZigzagProfile {
        n,
        without_zigzag: cumulative_below(&hist[..width], n),
        without_uninterrupted: cumulative_below(&hist[width..2 * width], n),
        revstack_sortable: (0..=n).map(|k| degrees[..=k].iter().sum()).collect(),
    })
}

/// Number of `π ∈ S_n` with no k-zigzag, or with no uninterrupted one.
pub fn count_zigzag_free(n: usize, k: usize, uninterrupted_only: bool, jobs: usize) -> Result<u64> {
    let profile = zigzag_profile(n, jobs)?;
    let counts = if uninterrupted_only {
        &profile.without_uninterrupted
    } else {
        &profile.without_zigzag
    };
    Ok(counts[k.min(n)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        for n in 1..=7 {
            let p = zigzag_profile(n, 2).unwrap();
            assert_eq!(p.without_zigzag[0], 1);
            assert_eq!(p.without_uninterrupted[0], 1);
            let catalan = [1, 1, 2, 5, 14, 42, 132, 429][n];
            assert_eq!(p.without_zigzag[1], catalan, "n={n}");
            assert!(p.brackets(), "{p:?}");
        }
        let p6 = zigzag_profile(6, 1).unwrap();
        assert!(p6.without_uninterrupted[2] >= p6.revstack_sortable[2]);
        assert!(p6.revstack_sortable[2] >= p6.without_zigzag[2]);
        assert_eq!(count_zigzag_free(5, 0, false, 1).unwrap(), 1);
        assert_eq!(count_zigzag_free(5, 9, true, 1).unwrap(), 120);
        assert!(count_zigzag_free(11, 1, false, 1).is_err());
    }
}
