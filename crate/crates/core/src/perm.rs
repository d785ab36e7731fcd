//! Permutations in one-line notation and the two sorting operators.
//!
//! `S` is classical stack sort, `S(LnR) = S(L) S(R) n`. `T` is revstack sort,
//! `T(LnR) = T(R) T(L) n`, which is the same as pushing the reversed word
//! through the stack once (`T = S ∘ rev`).
//!
//! Values are `1..=n` and positions are 1-based whenever they are exposed.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{1, …, n}` written as a word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    word: Vec<u32>,
}

impl Permutation {
    /// Validates that `word` is a rearrangement of `1..=word.len()`.
    pub fn new(word: Vec<u32>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            let idx = v as usize;
            if idx == 0 || idx > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} is outside 1..={n}"
                )));
            }
            if seen[idx] {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
            seen[idx] = true;
        }
        Ok(Self { word })
    }

    /// Caller guarantees the bijection invariant.
    pub(crate) fn from_word_unchecked(word: Vec<u32>) -> Self {
        debug_assert!(Self::new(word.clone()).is_ok());
        Self { word }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            word: (1..=n as u32).collect(),
        }
    }

    pub fn empty() -> Self {
        Self { word: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.word
    }

    pub fn into_word(self) -> Vec<u32> {
        self.word
    }

    pub fn is_identity(&self) -> bool {
        is_identity(&self.word)
    }

    /// Value at 1-based position `pos`.
    pub fn value_at(&self, pos: usize) -> u32 {
        self.word[pos - 1]
    }

    /// 1-based position of value `v` (the inverse permutation).
    pub fn position(&self, v: u32) -> usize {
        self.word
            .iter()
            .position(|&x| x == v)
            .map(|p| p + 1)
            .unwrap_or_else(|| panic!("value {v} not in permutation of length {}", self.len()))
    }

    /// All positions at once, indexed by value (`index 0` unused).
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.len() + 1];
        for (i, &v) in self.word.iter().enumerate() {
            pos[v as usize] = i + 1;
        }
        pos
    }

    pub fn reverse(&self) -> Self {
        let mut word = self.word.clone();
        word.reverse();
        Self { word }
    }

    /// Number of positions `i` with `π_i > π_{i+1}`.
    ///
    /// The empty word is rejected: descent polynomials weight by `x^(1+des)`
    /// and never evaluate the statistic on it.
    pub fn descents(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::EmptyPermutation("descents"));
        }
        Ok(descents(&self.word))
    }

    /// Inversions as value pairs `(b, a)` with `b > a` and `b` left of `a`,
    /// in reading order of `b` then `a`.
    pub fn inversions(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (i, &b) in self.word.iter().enumerate() {
            for &a in &self.word[i + 1..] {
                if b > a {
                    out.push((b, a));
                }
            }
        }
        out
    }

    pub fn stack_sort(&self) -> Self {
        let mut out = Vec::with_capacity(self.len());
        stack_sort_recursive(&self.word, &mut out);
        Self { word: out }
    }

    /// Stack sort by driving the physical stack.
    pub fn stack_sort_sim(&self) -> Self {
        let mut out = vec![0; self.len()];
        let mut stack = vec![0; self.len()];
        stack_pass(self.word.iter().copied(), &mut stack, &mut out);
        Self { word: out }
    }

    pub fn revstack_sort(&self) -> Self {
        let mut out = Vec::with_capacity(self.len());
        revstack_sort_recursive(&self.word, &mut out);
        Self { word: out }
    }

    /// `T` applied `t` times.
    pub fn iterate_revstack(&self, t: usize) -> Self {
        let mut word = self.word.clone();
        let mut scratch = Scratch::new(self.len());
        for _ in 0..t {
            if is_identity(&word) {
                break;
            }
            scratch.revstack_in_place(&mut word);
        }
        Self { word }
    }

    /// `S` applied `t` times.
    pub fn iterate_stack(&self, t: usize) -> Self {
        let mut word = self.word.clone();
        let mut scratch = Scratch::new(self.len());
        for _ in 0..t {
            if is_identity(&word) {
                break;
            }
            scratch.stack_in_place(&mut word);
        }
        Self { word }
    }

    /// Fewest applications of `T` that reach the identity.
    pub fn deg_revstack(&self) -> SortDegree {
        SortDegree(degree(&self.word, Sorter::Revstack, &mut Scratch::new(self.len())))
    }

    /// Fewest applications of `S` that reach the identity.
    pub fn deg_stack(&self) -> SortDegree {
        SortDegree(degree(&self.word, Sorter::Stack, &mut Scratch::new(self.len())))
    }

    pub fn deg(&self, sorter: Sorter) -> SortDegree {
        SortDegree(degree(&self.word, sorter, &mut Scratch::new(self.len())))
    }

    /// Space-separated form, the canonical output format.
    pub fn to_spaced(&self) -> String {
        let parts: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
        parts.join(" ")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_spaced())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]", self.to_spaced())
    }
}

/// Accepts `"4 2 5 1 3"` (also comma separated) or, for `n ≤ 9`, the compact
/// digit string `"42513"`.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let tokens: Vec<&str> = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        let word: Vec<u32> = if tokens.len() == 1 && tokens[0].len() > 1 {
            let digits = tokens[0];
            if digits.len() > 9 {
                return Err(Error::Parse(format!(
                    "compact form only allowed for n <= 9: {digits:?}"
                )));
            }
            digits
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::Parse(format!("bad digit {c:?} in {digits:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            tokens
                .iter()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad entry {t:?}")))
                })
                .collect::<Result<_>>()?
        };
        Self::new(word)
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(word: Vec<u32>) -> Result<Self> {
        Self::new(word)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.word
    }
}

/// Number of sorting passes needed; zero exactly for the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SortDegree(pub usize);

impl SortDegree {
    pub fn value(self) -> usize {
        self.0
    }
}

impl fmt::Display for SortDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Which operator is iterated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sorter {
    Stack,
    Revstack,
}

impl Sorter {
    pub fn name(self) -> &'static str {
        match self {
            Sorter::Stack => "stack",
            Sorter::Revstack => "revstack",
        }
    }
}

impl fmt::Display for Sorter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Sorter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stack" | "S" => Ok(Sorter::Stack),
            "revstack" | "T" => Ok(Sorter::Revstack),
            other => Err(Error::Parse(format!("unknown sorter {other:?}"))),
        }
    }
}

// Slice kernels. The enumeration code calls these directly to avoid
// allocating a `Permutation` per visited word.

pub(crate) fn is_identity(word: &[u32]) -> bool {
    word.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
}

pub(crate) fn descents(word: &[u32]) -> usize {
    word.windows(2).filter(|w| w[0] > w[1]).count()
}

fn split_at_max(word: &[u32]) -> Option<(&[u32], u32, &[u32])> {
    let (idx, &max) = word.iter().enumerate().max_by_key(|&(_, v)| *v)?;
    Some((&word[..idx], max, &word[idx + 1..]))
}

fn stack_sort_recursive(word: &[u32], out: &mut Vec<u32>) {
    if let Some((left, max, right)) = split_at_max(word) {
        stack_sort_recursive(left, out);
        stack_sort_recursive(right, out);
        out.push(max);
    }
}

fn revstack_sort_recursive(word: &[u32], out: &mut Vec<u32>) {
    if let Some((left, max, right)) = split_at_max(word) {
        revstack_sort_recursive(right, out);
        revstack_sort_recursive(left, out);
        out.push(max);
    }
}

/// One pass through a stack that only holds decreasing runs (top smallest).
/// `stack` and `out` must have room for every input element.
fn stack_pass(input: impl Iterator<Item = u32>, stack: &mut [u32], out: &mut [u32]) {
    let mut top = 0;
    let mut written = 0;
    for v in input {
        while top > 0 && stack[top - 1] < v {
            top -= 1;
            out[written] = stack[top];
            written += 1;
        }
        stack[top] = v;
        top += 1;
    }
    while top > 0 {
        top -= 1;
        out[written] = stack[top];
        written += 1;
    }
}

/// Reusable buffers for repeated in-place sorting passes.
pub(crate) struct Scratch {
    stack: Vec<u32>,
    out: Vec<u32>,
}

impl Scratch {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            stack: vec![0; n],
            out: vec![0; n],
        }
    }

    fn ensure(&mut self, n: usize) {
        if self.stack.len() < n {
            self.stack.resize(n, 0);
            self.out.resize(n, 0);
        }
    }

    pub(crate) fn stack_in_place(&mut self, word: &mut [u32]) {
        let n = word.len();
        self.ensure(n);
        stack_pass(word.iter().copied(), &mut self.stack, &mut self.out);
        word.copy_from_slice(&self.out[..n]);
    }

    pub(crate) fn revstack_in_place(&mut self, word: &mut [u32]) {
        let n = word.len();
        self.ensure(n);
        stack_pass(word.iter().rev().copied(), &mut self.stack, &mut self.out);
        word.copy_from_slice(&self.out[..n]);
    }

    pub(crate) fn apply(&mut self, sorter: Sorter, word: &mut [u32]) {
        match sorter {
            Sorter::Stack => self.stack_in_place(word),
            Sorter::Revstack => self.revstack_in_place(word),
        }
    }
}

/// Iterates the sorter on a copy of `word` until it is the identity.
pub(crate) fn degree(word: &[u32], sorter: Sorter, scratch: &mut Scratch) -> usize {
    let mut buf = [0u32; 32];
    let mut heap;
    let work: &mut [u32] = if word.len() <= buf.len() {
        let w = &mut buf[..word.len()];
        w.copy_from_slice(word);
        w
    } else {
        heap = word.to_vec();
        &mut heap
    };
    let mut t = 0;
    while !is_identity(work) {
        scratch.apply(sorter, work);
        t += 1;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn stack_sort_worked_example() {
        assert_eq!(p("42513").stack_sort(), p("24135"));
        assert_eq!(p("42513").stack_sort_sim(), p("24135"));
        assert_eq!(p("12345").stack_sort(), p("12345"));
        assert_eq!(p("231").stack_sort(), p("213"));
        assert_eq!(p("231").stack_sort_sim(), p("213"));
        assert_eq!(p("321").stack_sort_sim(), p("123"));
        assert_eq!(Permutation::empty().stack_sort_sim(), Permutation::empty());
    }

    #[test]
    fn revstack_worked_example() {
        assert_eq!(p("42513").revstack_sort(), p("13245"));
        assert_eq!(p("12345").revstack_sort(), p("12345"));
        assert_eq!(p("24153").revstack_sort(), p("31245"));
        assert_eq!(p("24153").reverse().stack_sort_sim(), p("31245"));
    }

    #[test]
    fn reverse_and_descents() {
        assert_eq!(p("42513").reverse(), p("31524"));
        assert_eq!(p("1").reverse(), p("1"));
        assert_eq!(p("285491376").reverse(), p("673194582"));
        assert_eq!(p("12345").descents().unwrap(), 0);
        assert_eq!(p("54321").descents().unwrap(), 4);
        assert_eq!(p("42513").descents().unwrap(), 2);
        assert!(matches!(
            Permutation::empty().descents(),
            Err(Error::EmptyPermutation(_))
        ));
    }

    #[test]
    fn inversion_sets() {
        assert!(p("12345").inversions().is_empty());
        assert_eq!(p("21").inversions(), vec![(2, 1)]);
        let mut got = p("42513").inversions();
        got.sort();
        let mut want = vec![(4, 2), (4, 1), (4, 3), (2, 1), (5, 1), (5, 3)];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn degrees() {
        assert_eq!(p("12345").deg_revstack(), SortDegree(0));
        assert_eq!(p("132").deg_revstack(), SortDegree(2));
        assert_eq!(p("24135").deg_revstack(), SortDegree(3));
        // 42513 -> 13245 -> 21345 -> 12345
        assert_eq!(p("42513").deg_revstack(), SortDegree(3));
        assert_eq!(Permutation::empty().deg_revstack(), SortDegree(0));
    }

    #[test]
    fn iteration() {
        assert_eq!(p("42513").iterate_revstack(1), p("13245"));
        assert_eq!(p("42513").iterate_revstack(0), p("42513"));
        assert_eq!(p("24135").iterate_revstack(2), p("21345"));
        assert_eq!(p("24135").iterate_revstack(4), Permutation::identity(5));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(p("4 2 5 1 3"), p("42513"));
        assert_eq!(p("4,2,5,1,3"), p("42513"));
        assert_eq!(p("10 9 8 7 6 5 4 3 2 1").len(), 10);
        assert!("1234567891".parse::<Permutation>().is_err());
        assert!("1 1 2".parse::<Permutation>().is_err());
        assert!("0 1".parse::<Permutation>().is_err());
        assert!("1 x".parse::<Permutation>().is_err());
        assert_eq!(p("1").to_spaced(), "1");
        assert_eq!(p("42513").to_string(), "4 2 5 1 3");
    }

    #[test]
    fn serde_round_trip_rejects_non_bijections() {
        let json = serde_json::to_string(&p("312")).unwrap();
        assert_eq!(json, "[3,1,2]");
        assert_eq!(serde_json::from_str::<Permutation>(&json).unwrap(), p("312"));
        assert!(serde_json::from_str::<Permutation>("[1,3]").is_err());
    }
}
