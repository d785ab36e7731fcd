//! k-zigzags: decreasing value sequences `z_0 > z_1 > … > z_{k+1}` whose
//! odd-indexed entries sit right of `z_0` and even-indexed entries (from
//! `z_2` on) sit left of it.
//!
//! A zigzag is interrupted when some value above `z_0` lies strictly between
//! two of its odd entries, or strictly between two of its even entries.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Zigzag {
    pub k: usize,
    pub values: Vec<u32>,
    pub interrupted: bool,
}

impl Zigzag {
    /// Validates `values` as a zigzag of `pi` and records its interruption status.
    pub fn new(pi: &Permutation, values: Vec<u32>) -> Result<Self> {
        let pos = pi.positions();
        check_zigzag(&pos, &values)?;
        let interrupted = interrupted(pi.as_slice(), &pos, &values);
        Ok(Self {
            k: values.len() - 2,
            values,
            interrupted,
        })
    }
}

fn check_zigzag(pos: &[usize], values: &[u32]) -> Result<()> {
    let n = pos.len() - 1;
    if values.len() < 2 {
        return Err(Error::InvalidZigzag("needs at least two values".into()));
    }
    if let Some(&v) = values.iter().find(|&&v| v == 0 || v as usize > n) {
        return Err(Error::InvalidZigzag(format!("value {v} outside 1..={n}")));
    }
    if !values.windows(2).all(|w| w[0] > w[1]) {
        return Err(Error::InvalidZigzag(format!(
            "values {values:?} are not strictly decreasing"
        )));
    }
    let p0 = pos[values[0] as usize];
    for (i, &v) in values.iter().enumerate().skip(1) {
        let right_of_head = pos[v as usize] > p0;
        if right_of_head != (i % 2 == 1) {
            return Err(Error::InvalidZigzag(format!(
                "z_{i} = {v} is on the wrong side of z_0 = {}",
                values[0]
            )));
        }
    }
    Ok(())
}

/// Some value above `z_0` sits strictly between two same-parity entries
/// (indices ≥ 1). Equivalent to the existence of such a value strictly inside
/// the positional span of the odd entries or of the even entries.
fn interrupted(pi: &[u32], pos: &[usize], values: &[u32]) -> bool {
    let head = values[0];
    let span_blocked = |parity: usize| {
        let ps: Vec<usize> = values
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(i, _)| i % 2 == parity)
            .map(|(_, &v)| pos[v as usize])
            .collect();
        match (ps.iter().min(), ps.iter().max()) {
            (Some(&lo), Some(&hi)) if hi > lo + 1 => pi[lo..hi - 1].iter().any(|&c| c > head),
            _ => false,
        }
    };
    span_blocked(0) || span_blocked(1)
}

/// Whether a zigzag of `pi` is interrupted; rejects values that are not a zigzag.
pub fn is_interrupted(pi: &Permutation, values: &[u32]) -> Result<bool> {
    let pos = pi.positions();
    check_zigzag(&pos, values)?;
    Ok(interrupted(pi.as_slice(), &pos, values))
}

/// Longest zigzag headed by `head`, built greedily: each next entry is the
/// largest smaller value on the required side. Any zigzag headed by `head` is
/// dominated entrywise by this chain, so truncations of it are the
/// lexicographically largest zigzags with that head.
fn greedy_chain(pi: &[u32], pos: &[usize], head: u32) -> Vec<u32> {
    let p0 = pos[head as usize];
    let mut chain = vec![head];
    let mut last = head;
    loop {
        let want_right = chain.len() % 2 == 1;
        let next = (1..last)
            .rev()
            .find(|&v| (pos[v as usize] > p0) == want_right);
        match next {
            Some(v) => {
                chain.push(v);
                last = v;
            }
            None => break,
        }
    }
    debug_assert!(chain.iter().all(|&v| pi[pos[v as usize] - 1] == v));
    chain
}

/// The lexicographically largest k-zigzag, if any.
pub fn find_zigzag(pi: &Permutation, k: usize) -> Option<Zigzag> {
    let pos = pi.positions();
    let s = pi.as_slice();
    for head in (1..=pi.len() as u32).rev() {
        let chain = greedy_chain(s, &pos, head);
        if chain.len() >= k + 2 {
            let values = chain[..k + 2].to_vec();
            let interrupted = interrupted(s, &pos, &values);
            return Some(Zigzag { k, values, interrupted });
        }
    }
    None
}

/// Largest `k` for which `pi` has a k-zigzag; `None` for the identity.
pub fn max_zigzag_degree(pi: &Permutation) -> Option<usize> {
    let pos = pi.positions();
    (1..=pi.len() as u32)
        .map(|h| greedy_chain(pi.as_slice(), &pos, h).len())
        .max()
        .filter(|&len| len >= 2)
        .map(|len| len - 2)
}

struct UninterruptedSearch<'a> {
    pos: &'a [usize],
    /// `above[i]` counts entries larger than the head among positions `1..=i`.
    above: Vec<u32>,
    p0: usize,
}

impl UninterruptedSearch<'_> {
    fn blocked(&self, lo: usize, hi: usize) -> bool {
        hi > lo + 1 && self.above[hi - 1] > self.above[lo]
    }

    /// Depth-first, larger values first. `target` is the wanted chain length
    /// including the head (`None` = maximise). Longest chain seen goes to `best`.
    fn extend(
        &self,
        chain: &mut Vec<u32>,
        spans: [Option<(usize, usize)>; 2],
        target: Option<usize>,
        best: &mut Vec<u32>,
    ) -> bool {
        if chain.len() > best.len() {
            best.clone_from(chain);
        }
        if let Some(t) = target {
            if chain.len() == t {
                return true;
            }
        }
        let idx = chain.len();
        let parity = idx % 2;
        let want_right = parity == 1;
        let last = *chain.last().expect("head present");
        for v in (1..last).rev() {
            let p = self.pos[v as usize];
            if (p > self.p0) != want_right {
                continue;
            }
            let span = match spans[parity] {
                None => (p, p),
                Some((lo, hi)) => (lo.min(p), hi.max(p)),
            };
            if self.blocked(span.0, span.1) {
                continue;
            }
            let mut next = spans;
            next[parity] = Some(span);
            chain.push(v);
            let done = self.extend(chain, next, target, best);
            chain.pop();
            if done {
                return true;
            }
        }
        false
    }
}

fn uninterrupted_from(pi: &[u32], pos: &[usize], head: u32, target: Option<usize>) -> Vec<u32> {
    let mut above = vec![0u32; pi.len() + 1];
    for (i, &v) in pi.iter().enumerate() {
        above[i + 1] = above[i] + u32::from(v > head);
    }
    let search = UninterruptedSearch {
        pos,
        above,
        p0: pos[head as usize],
    };
    let mut chain = vec![head];
    let mut best = Vec::new();
    search.extend(&mut chain, [None, None], target, &mut best);
    best
}

/// The lexicographically largest uninterrupted k-zigzag, if any.
pub fn find_uninterrupted_zigzag(pi: &Permutation, k: usize) -> Option<Zigzag> {
    let pos = pi.positions();
    let s = pi.as_slice();
    for head in (1..=pi.len() as u32).rev() {
        if greedy_chain(s, &pos, head).len() < k + 2 {
            continue;
        }
        let best = uninterrupted_from(s, &pos, head, Some(k + 2));
        if best.len() == k + 2 {
            return Some(Zigzag {
                k,
                values: best,
                interrupted: false,
            });
        }
    }
    None
}

/// Largest `k` for which `pi` has an uninterrupted k-zigzag; `None` for the identity.
pub fn max_uninterrupted_degree(pi: &Permutation) -> Option<usize> {
    let pos = pi.positions();
    let s = pi.as_slice();
    let mut best = 0usize;
    for head in (1..=pi.len() as u32).rev() {
        let bound = greedy_chain(s, &pos, head).len();
        if bound <= best {
            continue;
        }
        best = best.max(uninterrupted_from(s, &pos, head, None).len());
    }
    (best >= 2).then(|| best - 2)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::all_permutations;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn figure_example() {
        let pi = p("15327846");
        let drawn = Zigzag::new(&pi, vec![7, 6, 5, 4, 2]).unwrap();
        assert_eq!(drawn.k, 3);
        assert!(!drawn.interrupted);
        // The search returns the lexicographically largest one, which beats the drawn one.
        let z = find_zigzag(&pi, 3).unwrap();
        assert_eq!(z.values, vec![8, 6, 5, 4, 3]);
        assert!(!z.interrupted);
        let u = find_uninterrupted_zigzag(&pi, 3).unwrap();
        assert_eq!(u.values, vec![8, 6, 5, 4, 3]);
        assert_eq!(oracle::all_zigzags(&pi, 3).iter().max(), Some(&z.values));
    }

    #[test]
    fn interruption_examples() {
        assert!(!is_interrupted(&p("15327846"), &[7, 6, 5, 4, 2]).unwrap());
        assert!(is_interrupted(&p("15327486"), &[7, 6, 5, 4, 2]).unwrap());
        let pi: Permutation = "4 6 11 8 3 2 10 12 7 1 9 5".parse().unwrap();
        assert!(is_interrupted(&pi, &[10, 9, 8, 7, 6, 5]).unwrap());
        let z = Zigzag::new(&pi, vec![10, 9, 8, 7, 6, 5]).unwrap();
        assert_eq!(z.k, 4);
        assert!(z.interrupted);
    }

    #[test]
    fn invalid_zigzags_rejected() {
        let pi = p("15327846");
        assert!(is_interrupted(&pi, &[7, 6, 5, 2, 4]).is_err());
        assert!(is_interrupted(&pi, &[7, 5]).is_err());
        assert!(is_interrupted(&pi, &[7]).is_err());
        assert!(is_interrupted(&pi, &[9, 1]).is_err());
    }

    #[test]
    fn small_cases() {
        assert!(find_zigzag(&p("12345"), 0).is_none());
        // 5 3 2 1 alternates right, left, right of 5.
        assert_eq!(find_zigzag(&p("42513"), 2).unwrap().values, vec![5, 3, 2, 1]);
        assert!(find_zigzag(&p("42513"), 3).is_none());
        for k in 0..5 {
            assert!(find_uninterrupted_zigzag(&p("12345"), k).is_none());
        }
        assert_eq!(find_uninterrupted_zigzag(&p("132"), 1).unwrap().values, vec![3, 2, 1]);
        assert_eq!(max_zigzag_degree(&p("12345")), None);
        assert_eq!(max_uninterrupted_degree(&p("21")), Some(0));
    }

    #[test]
    fn searches_match_subset_oracle_on_s6() {
        for n in 1..=6 {
            for pi in all_permutations(n) {
                for k in 0..n {
                    let all = oracle::all_zigzags(&pi, k);
                    let got = find_zigzag(&pi, k).map(|z| z.values);
                    assert_eq!(got.as_ref(), all.first(), "{pi} k={k}");
                    let unint: Vec<&Vec<u32>> =
                        all.iter().filter(|z| !oracle::is_interrupted(&pi, z)).collect();
                    let got = find_uninterrupted_zigzag(&pi, k).map(|z| z.values);
                    assert_eq!(got.as_ref(), unint.first().copied(), "{pi} k={k}");
                    for z in &all {
                        assert_eq!(
                            is_interrupted(&pi, z).unwrap(),
                            oracle::is_interrupted(&pi, z),
                            "{pi} {z:?}"
                        );
                    }
                }
                let max = (0..n).rev().find(|&k| !oracle::all_zigzags(&pi, k).is_empty());
                assert_eq!(max_zigzag_degree(&pi), max, "{pi}");
                let max_u = (0..n).rev().find(|&k| {
                    oracle::all_zigzags(&pi, k)
                        .iter()
                        .any(|z| !oracle::is_interrupted(&pi, z))
                });
                assert_eq!(max_uninterrupted_degree(&pi), max_u, "{pi}");
            }
        }
    }

    #[test]
    fn low_degree_groundings() {
        use crate::patterns::find_classical;
        for pi in all_permutations(7) {
            let s = pi.as_slice();
            assert_eq!(find_zigzag(&pi, 0).is_none(), pi.is_identity());
            assert_eq!(find_zigzag(&pi, 1).is_some(), find_classical(s, &[1, 3, 2]).is_some());
            let two = find_classical(s, &[2, 4, 1, 3]).is_some()
                || find_classical(s, &[2, 4, 3, 1]).is_some();
            assert_eq!(find_zigzag(&pi, 2).is_some(), two, "{pi}");
            for k in 1..7 {
                if find_zigzag(&pi, k).is_some() {
                    assert!(find_zigzag(&pi, k - 1).is_some());
                }
            }
        }
    }
}
