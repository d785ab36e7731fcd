//! Classical and barred pattern containment, with witnesses.
//!
//! A barred pattern such as `241 5̄ 3` is contained in `π` when some
//! occurrence of the bar-deleted pattern (here `2413`) cannot be extended to
//! an occurrence of the full pattern (`24153`) by one extra element placed in
//! the barred slot. Avoidance means every such occurrence extends.
//!
//! Searches are plain depth-first over increasing position vectors, so the
//! first witness found is the one with the lexicographically least positions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A classical pattern, optionally with one barred letter.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PatternSpec {
    letters: Vec<u32>,
    /// 1-based position of the barred letter.
    barred: Option<usize>,
}

impl PatternSpec {
    pub fn classical(letters: Vec<u32>) -> Result<Self> {
        Self::new(letters, None)
    }

    pub fn barred(letters: Vec<u32>, barred_index: usize) -> Result<Self> {
        Self::new(letters, Some(barred_index))
    }

    pub fn new(letters: Vec<u32>, barred: Option<usize>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidPattern("pattern has no letters".into()));
        }
        Permutation::new(letters.clone())
            .map_err(|e| Error::InvalidPattern(format!("{e}")))?;
        if let Some(b) = barred {
            if b == 0 || b > letters.len() {
                return Err(Error::InvalidPattern(format!(
                    "barred index {b} outside 1..={}",
                    letters.len()
                )));
            }
            if letters.len() == 1 {
                return Err(Error::InvalidPattern(
                    "a barred pattern needs at least one unbarred letter".into(),
                ));
            }
        }
        Ok(Self { letters, barred })
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn barred_index(&self) -> Option<usize> {
        self.barred
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The pattern with its barred letter deleted and values renormalized.
    pub fn reduction(&self) -> Vec<u32> {
        match self.barred {
            None => self.letters.clone(),
            Some(b) => {
                let removed = self.letters[b - 1];
                self.letters
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != b - 1)
                    .map(|(_, &v)| if v > removed { v - 1 } else { v })
                    .collect()
            }
        }
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if self.barred == Some(i + 1) {
                    format!("{v}!")
                } else {
                    v.to_string()
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PatternSpec[{self}]")
    }
}

/// `"2 4 1 5! 3"`, or compact `"2415!3"` when every letter is a single digit.
impl FromStr for PatternSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let tokens: Vec<String> = if s.contains(char::is_whitespace) || s.contains(',') {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(str::to_owned)
                .collect()
        } else {
            let mut tokens: Vec<String> = Vec::new();
            for c in s.chars() {
                if c == '!' {
                    match tokens.last_mut() {
                        Some(t) => t.push('!'),
                        None => {
                            return Err(Error::Parse(format!("bar with no letter in {s:?}")))
                        }
                    }
                } else {
                    tokens.push(c.to_string());
                }
            }
            tokens
        };
        let mut letters = Vec::with_capacity(tokens.len());
        let mut barred = None;
        for (i, tok) in tokens.iter().enumerate() {
            let (digits, bar) = match tok.strip_suffix('!') {
                Some(d) => (d, true),
                None => (tok.as_str(), false),
            };
            let v: u32 = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad pattern letter {tok:?}")))?;
            if bar {
                if barred.is_some() {
                    return Err(Error::InvalidPattern("at most one barred letter".into()));
                }
                barred = Some(i + 1);
            }
            letters.push(v);
        }
        Self::new(letters, barred)
    }
}

/// One occurrence of a pattern: 1-based positions and the values there.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Occurrence {
    pub positions: Vec<usize>,
    pub values: Vec<u32>,
}

impl Occurrence {
    fn from_positions(pi: &[u32], idx: &[usize]) -> Self {
        Self {
            positions: idx.iter().map(|&i| i + 1).collect(),
            values: idx.iter().map(|&i| pi[i]).collect(),
        }
    }

    /// Positions strictly increase and values are order-isomorphic to `letters`.
    pub fn matches(&self, letters: &[u32]) -> bool {
        self.positions.len() == letters.len()
            && self.values.len() == letters.len()
            && self.positions.windows(2).all(|w| w[0] < w[1])
            && order_isomorphic(&self.values, letters)
    }
}

pub fn order_isomorphic(a: &[u32], b: &[u32]) -> bool {
    a.len() == b.len()
        && (0..a.len()).all(|i| (0..a.len()).all(|j| (a[i] < a[j]) == (b[i] < b[j])))
}

/// Depth-first search over occurrences of `letters` in `pi`, in
/// lexicographic order of positions. `visit` returns `true` to stop.
fn for_each_occurrence(pi: &[u32], letters: &[u32], visit: &mut dyn FnMut(&[usize]) -> bool) {
    fn go(
        pi: &[u32],
        letters: &[u32],
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let j = chosen.len();
        if j == letters.len() {
            return visit(chosen);
        }
        let start = chosen.last().map_or(0, |&p| p + 1);
        let remaining = letters.len() - j;
        if pi.len() < remaining {
            return false;
        }
        for pos in start..=pi.len() - remaining {
            let v = pi[pos];
            let consistent = chosen
                .iter()
                .zip(letters)
                .all(|(&q, &l)| (pi[q] < v) == (l < letters[j]));
            if !consistent {
                continue;
            }
            chosen.push(pos);
            let stop = go(pi, letters, chosen, visit);
            chosen.pop();
            if stop {
                return true;
            }
        }
        false
    }
    let mut chosen = Vec::with_capacity(letters.len());
    go(pi, letters, &mut chosen, visit);
}

/// First occurrence (least positions) of an unbarred pattern.
pub fn contains_classical(pi: &Permutation, pattern: &PatternSpec) -> Result<Option<Occurrence>> {
    if pattern.barred_index().is_some() {
        return Err(Error::InvalidPattern(format!(
            "{pattern} has a barred letter; use contains_barred"
        )));
    }
    Ok(find_classical(pi.as_slice(), pattern.letters()))
}

pub(crate) fn find_classical(pi: &[u32], letters: &[u32]) -> Option<Occurrence> {
    let mut found = None;
    for_each_occurrence(pi, letters, &mut |idx| {
        found = Some(Occurrence::from_positions(pi, idx));
        true
    });
    found
}

pub(crate) fn avoids(pi: &[u32], letters: &[u32]) -> bool {
    find_classical(pi, letters).is_none()
}

/// First occurrence of the bar-deleted pattern that does not extend to the
/// full pattern. A pattern without a bar degenerates to classical search.
pub fn contains_barred(pi: &Permutation, pattern: &PatternSpec) -> Option<Occurrence> {
    find_barred(pi.as_slice(), pattern)
}

pub(crate) fn find_barred(pi: &[u32], pattern: &PatternSpec) -> Option<Occurrence> {
    let Some(bar) = pattern.barred_index() else {
        return find_classical(pi, pattern.letters());
    };
    let full = pattern.letters();
    let reduced = pattern.reduction();
    // Slot for the barred letter lies between reduced entries bar-2 and bar-1 (0-based).
    let slot = bar - 1;
    let mut found = None;
    let mut candidate = Vec::with_capacity(full.len());
    for_each_occurrence(pi, &reduced, &mut |idx| {
        let lo = if slot == 0 { 0 } else { idx[slot - 1] + 1 };
        let hi = if slot == idx.len() { pi.len() } else { idx[slot] };
        let extends = (lo..hi).any(|e| {
            candidate.clear();
            candidate.extend(idx[..slot].iter().map(|&i| pi[i]));
            candidate.push(pi[e]);
            candidate.extend(idx[slot..].iter().map(|&i| pi[i]));
            order_isomorphic(&candidate, full)
        });
        if extends {
            false
        } else {
            found = Some(Occurrence::from_positions(pi, idx));
            true
        }
    });
    found
}

fn pattern(s: &str) -> PatternSpec {
    s.parse().expect("built-in pattern literal")
}

/// `T(π)` needs at most two passes exactly when `π` avoids `2431` and the
/// barred pattern `241 5̄ 3`.
pub fn is_member_t2(pi: &Permutation) -> bool {
    avoids(pi.as_slice(), &[2, 4, 3, 1]) && find_barred(pi.as_slice(), &pattern("2415!3")).is_none()
}

/// Two-pass stack sortability: avoids `2341` and the barred `3 5̄ 241`.
pub fn is_member_s2(pi: &Permutation) -> bool {
    avoids(pi.as_slice(), &[2, 3, 4, 1]) && find_barred(pi.as_slice(), &pattern("35!241")).is_none()
}

fn check_value_set(pi: &Permutation, set: &[u32]) -> Result<()> {
    if set.is_empty() {
        return Err(Error::EmptyValueSet);
    }
    for &v in set {
        if v == 0 || v as usize > pi.len() {
            return Err(Error::ValueOutOfRange { value: v, n: pi.len() });
        }
    }
    Ok(())
}

/// Element of `set` that appears leftmost in `pi`.
pub fn aleft(pi: &Permutation, set: &[u32]) -> Result<u32> {
    check_value_set(pi, set)?;
    let pos = pi.positions();
    Ok(*set.iter().min_by_key(|&&v| pos[v as usize]).expect("non-empty"))
}

/// Element of `set` that appears rightmost in `pi`.
pub fn aright(pi: &Permutation, set: &[u32]) -> Result<u32> {
    check_value_set(pi, set)?;
    let pos = pi.positions();
    Ok(*set.iter().max_by_key(|&&v| pos[v as usize]).expect("non-empty"))
}

/// `x` lies (weakly) between the leftmost and rightmost elements of `set`.
pub fn is_among(pi: &Permutation, x: u32, set: &[u32]) -> Result<bool> {
    check_value_set(pi, set)?;
    check_value_set(pi, &[x])?;
    let pos = pi.positions();
    let left = pos[aleft(pi, set)? as usize];
    let right = pos[aright(pi, set)? as usize];
    let px = pos[x as usize];
    Ok(left <= px && px <= right)
}

/// Evidence in `σ` for one `132` occurrence `(a, c, b)` of `T(σ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PrecursorWitness {
    /// `(b, d, c, a)` forms `2431` in `σ`.
    Pattern2431 { occurrence: Occurrence },
    /// `(b, d, a, c)` forms `2413` in `σ` with no `e > c` strictly between `a` and `c`.
    Barred2413 { occurrence: Occurrence },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecursorCase {
    /// The `132` occurrence `(a, c, b)` in `T(σ)`.
    pub image_occurrence: Occurrence,
    pub witness: Option<PrecursorWitness>,
}

/// Result of checking that every `132` in `T(σ)` is explained by a `2431` or
/// an unextendable `2413` in `σ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecursorReport {
    pub holds: bool,
    pub cases: Vec<PrecursorCase>,
}

pub fn check_132_precursors(sigma: &Permutation) -> PrecursorReport {
    let s = sigma.as_slice();
    let image = sigma.revstack_sort();
    let t = image.as_slice();
    let pos = sigma.positions();
    let mut cases = Vec::new();
    for_each_occurrence(t, &[1, 3, 2], &mut |idx| {
        let occ = Occurrence::from_positions(t, idx);
        let (a, c, b) = (occ.values[0], occ.values[1], occ.values[2]);
        let witness = precursor_witness(s, &pos, a, b, c);
        cases.push(PrecursorCase {
            image_occurrence: occ,
            witness,
        });
        false
    });
    PrecursorReport {
        holds: cases.iter().all(|c| c.witness.is_some()),
        cases,
    }
}

fn precursor_witness(s: &[u32], pos: &[usize], a: u32, b: u32, c: u32) -> Option<PrecursorWitness> {
    let (pa, pb, pc) = (pos[a as usize], pos[b as usize], pos[c as usize]);
    let occurrence = |vals: [u32; 4]| Occurrence {
        positions: vals.iter().map(|&v| pos[v as usize]).collect(),
        values: vals.to_vec(),
    };
    // 2431: b, d, c, a in that order with d > c.
    if pb < pc && pc < pa {
        if let Some(d) = ((pb + 1)..pc).map(|p| s[p - 1]).find(|&d| d > c) {
            return Some(PrecursorWitness::Pattern2431 {
                occurrence: occurrence([b, d, c, a]),
            });
        }
    }
    // 2413: b, d, a, c with d > c and nothing above c strictly between a and c.
    if pb < pa && pa < pc {
        let blocked = ((pa + 1)..pc).any(|p| s[p - 1] > c);
        if !blocked {
            if let Some(d) = ((pb + 1)..pa).map(|p| s[p - 1]).find(|&d| d > c) {
                return Some(PrecursorWitness::Barred2413 {
                    occurrence: occurrence([b, d, a, c]),
                });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// Every subsequence of length m, checked directly.
    fn brute_force_classical(pi: &[u32], letters: &[u32]) -> Option<Vec<usize>> {
        let n = pi.len();
        let m = letters.len();
        let mut best: Option<Vec<usize>> = None;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != m {
                continue;
            }
            let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let vals: Vec<u32> = idx.iter().map(|&i| pi[i]).collect();
            if order_isomorphic(&vals, letters) {
                let positions: Vec<usize> = idx.iter().map(|i| i + 1).collect();
                if best.as_ref().is_none_or(|b| positions < *b) {
                    best = Some(positions);
                }
            }
        }
        best
    }

    #[test]
    fn classical_examples() {
        let occ = contains_classical(&p("42513"), &pattern("132")).unwrap().unwrap();
        assert_eq!(occ.values, vec![2, 5, 3]);
        assert_eq!(occ.positions, vec![2, 3, 5]);
        assert_eq!(contains_classical(&p("12345"), &pattern("21")).unwrap(), None);
        assert_eq!(contains_classical(&p("24153"), &pattern("2431")).unwrap(), None);
        assert!(contains_classical(&p("123"), &pattern("1!2")).is_err());
    }

    #[test]
    fn classical_matches_brute_force_on_s6() {
        let pats: [&[u32]; 4] = [&[1, 3, 2], &[2, 4, 3, 1], &[2, 4, 1, 3], &[2, 1]];
        for pi in crate::enumerate::all_permutations(6) {
            for letters in pats {
                let got = find_classical(pi.as_slice(), letters).map(|o| o.positions);
                assert_eq!(got, brute_force_classical(pi.as_slice(), letters), "{pi} {letters:?}");
            }
        }
    }

    #[test]
    fn barred_examples() {
        let pat = pattern("2 4 1 5! 3");
        let occ = contains_barred(&p("24135"), &pat).unwrap();
        assert_eq!(occ.values, vec![2, 4, 1, 3]);
        assert_eq!(occ.positions, vec![1, 2, 3, 4]);
        assert_eq!(contains_barred(&p("24153"), &pat), None);
        assert_eq!(contains_barred(&p("12345"), &pat), None);
    }

    #[test]
    fn barred_without_bar_is_classical() {
        let pat = pattern("2431");
        for pi in crate::enumerate::all_permutations(6) {
            assert_eq!(
                contains_barred(&pi, &pat),
                contains_classical(&pi, &pat).unwrap()
            );
        }
    }

    #[test]
    fn pattern_syntax() {
        let a = pattern("2415!3");
        let b = pattern("2 4 1 5! 3");
        assert_eq!(a, b);
        assert_eq!(a.barred_index(), Some(4));
        assert_eq!(a.reduction(), vec![2, 4, 1, 3]);
        assert_eq!(pattern("35!241").reduction(), vec![3, 2, 4, 1]);
        assert_eq!(a.to_string(), "2 4 1 5! 3");
        assert!("2!4!1".parse::<PatternSpec>().is_err());
        assert!("225".parse::<PatternSpec>().is_err());
        assert!("!12".parse::<PatternSpec>().is_err());
        assert!(PatternSpec::barred(vec![1, 2], 3).is_err());
    }

    #[test]
    fn membership_examples() {
        assert!(is_member_t2(&p("24153")));
        assert!(!is_member_t2(&p("24135")));
        assert!(is_member_t2(&p("12345")));
    }

    #[test]
    fn among_examples() {
        let pi = p("285491376");
        let set = [1, 3, 5, 9];
        assert_eq!(aleft(&pi, &set).unwrap(), 5);
        assert_eq!(aright(&pi, &set).unwrap(), 3);
        assert!(is_among(&pi, 4, &set).unwrap());
        assert!(is_among(&pi, 5, &set).unwrap());
        assert!(!is_among(&pi, 2, &set).unwrap());
        assert!(!is_among(&pi, 7, &set).unwrap());
        assert!(is_among(&pi, 5, &set).unwrap());
        assert_eq!(aleft(&pi, &[6]).unwrap(), 6);
        assert_eq!(aright(&pi, &[6]).unwrap(), 6);
        let id = p("12345");
        assert_eq!(aleft(&id, &[2, 4]).unwrap(), 2);
        assert_eq!(aright(&id, &[2, 4]).unwrap(), 4);
        assert!(matches!(aleft(&id, &[]), Err(Error::EmptyValueSet)));
        assert!(is_among(&id, 3, &[]).is_err());
        assert!(aleft(&id, &[6]).is_err());
    }

    #[test]
    fn precursor_examples() {
        let report = check_132_precursors(&p("24135"));
        assert!(report.holds);
        assert!(!report.cases.is_empty());
        assert!(report
            .cases
            .iter()
            .any(|c| matches!(c.witness, Some(PrecursorWitness::Barred2413 { .. }))));
        let report = check_132_precursors(&p("12345"));
        assert!(report.holds);
        assert!(report.cases.is_empty());
    }

    #[test]
    fn precursor_holds_on_s6() {
        for sigma in crate::enumerate::all_permutations(6) {
            let report = check_132_precursors(&sigma);
            assert!(report.holds, "{sigma}");
            for case in &report.cases {
                match case.witness.as_ref().unwrap() {
                    PrecursorWitness::Pattern2431 { occurrence } => {
                        assert!(occurrence.matches(&[2, 4, 3, 1]))
                    }
                    PrecursorWitness::Barred2413 { occurrence } => {
                        assert!(occurrence.matches(&[2, 4, 1, 3]))
                    }
                }
            }
        }
    }
}
