//! Exhaustive walks over `S_n`.
//!
//! `S_n` is split into `n` shards by first letter. Each shard is walked in
//! lexicographic order without materialising it, the shards run on a rayon
//! pool and their partial results are merged in shard order, so the output
//! never depends on the thread count.

mod appendix;
mod cache;
pub mod classify;
mod table;
mod verify;
mod zigzags;

pub use appendix::{
    golden_appendix, parse_golden, reproduce_appendix, AppendixEntry, AppendixMismatch, AppendixReport,
    EMBEDDED_APPENDIX, ROOT_TOLERANCE,
};
pub use cache::{default_cache_dir, resolve_cache_dir, TableCache, CACHE_ENV, CACHE_FORMAT_VERSION};
pub use classify::{class_specs, classify_degree_nm2, ClassKind, ClassResult, ClassSpec, ClassificationReport};
pub use table::{descent_table, DescentTable};
pub use verify::{
    verify_conjectures, verify_conjectures_on, verify_inequalities, verify_steingrimsson, verify_theorems, CheckResult,
    SteingrimssonReport, SteingrimssonRow, SuiteReport,
};
pub use zigzags::{count_zigzag_free, zigzag_profile, ZigzagProfile};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest `n` accepted by the exhaustive routines.
pub const MAX_N: usize = 12;

pub(crate) fn check_size(n: usize, min: usize, max: usize) -> Result<()> {
    if n < min || n > max {
        return Err(Error::SizeOutOfRange { n, min, max });
    }
    Ok(())
}

/// Rearranges `word` into its lexicographic successor; false at the last one.
pub fn next_permutation(word: &mut [u32]) -> bool {
    let n = word.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && word[i - 1] >= word[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while word[j] <= word[i - 1] {
        j -= 1;
    }
    word.swap(i - 1, j);
    word[i..].reverse();
    true
}

/// Lexicographic iterator over `S_n`; `S_0` has the single empty word.
pub struct Permutations {
    word: Vec<u32>,
    done: bool,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let out = Permutation::from_word_unchecked(self.word.clone());
        self.done = !next_permutation(&mut self.word);
        Some(out)
    }
}

pub fn all_permutations(n: usize) -> Permutations {
    Permutations {
        word: (1..=n as u32).collect(),
        done: false,
    }
}

/// Calls `visit` on every word of `S_n` starting with `first`, in
/// lexicographic order.
pub(crate) fn for_each_in_shard(n: usize, first: u32, mut visit: impl FnMut(&[u32])) {
    let mut word: Vec<u32> = std::iter::once(first)
        .chain((1..=n as u32).filter(|&v| v != first))
        .collect();
    loop {
        visit(&word);
        if !next_permutation(&mut word[1..]) {
            break;
        }
    }
}

/// Number of worker threads to use when the caller does not say.
pub fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |p| p.get())
}

/// Sharded fold over `S_n`: `shard` builds one partial result per first
/// letter, `merge` folds them left to right in first-letter order.
pub(crate) fn fold_shards<A, S, M>(n: usize, jobs: usize, shard: S, merge: M) -> A
where
    A: Send,
    S: Fn(u32) -> A + Sync,
    M: Fn(A, A) -> A,
{
    assert!(n >= 1);
    let run = || (1..=n as u32).into_par_iter().map(&shard).collect::<Vec<A>>();
    let parts = if jobs == 1 {
        (1..=n as u32).map(&shard).collect()
    } else {
        match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        }
    };
    parts.into_iter().reduce(merge).expect("n ≥ 1 shards")
}

/// Keeps the earlier of two first-failure records.
pub(crate) fn first_of<T>(a: Option<T>, b: Option<T>) -> Option<T> {
    a.or(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_walk() {
        let words: Vec<String> = all_permutations(3).map(|p| p.to_spaced()).collect();
        assert_eq!(words, ["1 2 3", "1 3 2", "2 1 3", "2 3 1", "3 1 2", "3 2 1"]);
        assert_eq!(all_permutations(0).count(), 1);
        assert_eq!(all_permutations(1).count(), 1);
        assert_eq!(all_permutations(6).count(), 720);
    }

    #[test]
    fn shards_partition_in_order() {
        let mut seen = Vec::new();
        for first in 1..=4 {
            for_each_in_shard(4, first, |w| seen.push(w.to_vec()));
        }
        let all: Vec<Vec<u32>> = all_permutations(4).map(|p| p.into_word()).collect();
        assert_eq!(seen, all);
    }

    #[test]
    fn fold_is_thread_independent() {
        let count = |jobs| {
            fold_shards(
                6,
                jobs,
                |first| {
                    let mut v = Vec::new();
                    for_each_in_shard(6, first, |w| v.push(w[5]));
                    v
                },
                |mut a, b| {
                    a.extend(b);
                    a
                },
            )
        };
        assert_eq!(count(1), count(3));
    }
}
