//! The permutations of revstack degree exactly `n - 2`, split into six
//! shape classes, each of the form `L p R` with `p ∈ {n-1, n}` and the
//! value sets of `L` and `R` fixed.
//!
//! Writing `↓m` for `{m, m-2, m-4, …} ∩ [1, n]`:
//!
//! | kind | pivot | left | right | order |
//! |---|---|---|---|---|
//! | `SecondPivotMaxLeft` | `n-1` | `{n} ∪ ↓(n-3)` | `↓(n-2)` | `n` before `n-3` |
//! | `SecondPivotMaxRight` | `n-1` | `↓(n-3)` | `{n} ∪ ↓(n-2)` | `n-2` before `n` |
//! | `MaxPivotSecondLeft` | `n` | `↓(n-1)` | `↓(n-2)` | |
//! | `MaxPivotSecondRight` | `n` | `↓(n-3)` | `{n-1} ∪ ↓(n-2)` | |
//! | `PairLeft(i)` | `n` | see below | | |
//! | `PairRight(i)` | `n` | | | |
//!
//! For the pair classes, `1 ≤ i ≤ n-3` and the units
//! `n-1, n-2, …, i+2, {i+1, i}, i-1, …, 1` are dealt alternately to the
//! right and left of `n`, starting on the right. The pair lands on the left
//! when `n - i` is odd (`PairLeft`) and on the right otherwise.

use serde::Serialize;

use super::{check_size, fold_shards, for_each_in_shard};
use crate::error::Result;
use crate::perm::{degree, descents, Scratch, Sorter};
use crate::polyalg::{degree_nm2_contributions, IntPolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "i", rename_all = "snake_case")]
pub enum ClassKind {
    SecondPivotMaxLeft,
    SecondPivotMaxRight,
    MaxPivotSecondLeft,
    MaxPivotSecondRight,
    PairLeft(u32),
    PairRight(u32),
}

impl ClassKind {
    /// Position of the class in the contribution table.
    pub fn group(self) -> usize {
        match self {
            ClassKind::SecondPivotMaxLeft => 0,
            ClassKind::SecondPivotMaxRight => 1,
            ClassKind::MaxPivotSecondLeft => 2,
            ClassKind::MaxPivotSecondRight => 3,
            ClassKind::PairLeft(_) => 4,
            ClassKind::PairRight(_) => 5,
        }
    }
}

pub const GROUP_NAMES: [&str; 6] = [
    "second_pivot_max_left",
    "second_pivot_max_right",
    "max_pivot_second_left",
    "max_pivot_second_right",
    "pair_left",
    "pair_right",
];

/// `π = L pivot R` with `L` a permutation of `left`, `R` of `right`, and
/// optionally `before.0` preceding `before.1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassSpec {
    pub kind: ClassKind,
    pub pivot: u32,
    pub left: Vec<u32>,
    pub right: Vec<u32>,
    pub before: Option<(u32, u32)>,
}

impl ClassSpec {
    /// Whether `word` belongs to the class.
    pub fn contains(&self, word: &[u32]) -> bool {
        let Some(p) = word.iter().position(|&v| v == self.pivot) else {
            return false;
        };
        if p != self.left.len() || word[..p].iter().any(|v| !self.left.contains(v)) {
            return false;
        }
        match self.before {
            Some((a, b)) => {
                let pa = word.iter().position(|&v| v == a);
                let pb = word.iter().position(|&v| v == b);
                matches!((pa, pb), (Some(x), Some(y)) if x < y)
            }
            None => true,
        }
    }

    /// Number of members, counting arrangements directly.
    pub fn size(&self) -> u64 {
        let fact = |k: usize| (1..=k as u64).product::<u64>();
        let total = fact(self.left.len()) * fact(self.right.len());
        match self.before {
            Some((a, b)) => {
                let same_side = |s: &[u32]| s.contains(&a) && s.contains(&b);
                if same_side(&self.left) || same_side(&self.right) {
                    total / 2
                } else {
                    0
                }
            }
            None => total,
        }
    }
}

/// `{m, m-2, …} ∩ [1, ∞)`, descending.
fn step_two_from(m: i64) -> Vec<u32> {
    if m < 1 {
        Vec::new()
    } else {
        let mut v: Vec<u32> = (1..=m as u32).filter(|v| (m as u32 - v).is_multiple_of(2)).collect();
        v.reverse();
        v
    }
}

fn with(first: u32, rest: Vec<u32>) -> Vec<u32> {
    std::iter::once(first).chain(rest).collect()
}

/// All class specs for `n ≥ 4`, in table order.
pub fn class_specs(n: usize) -> Vec<ClassSpec> {
    let m = n as i64;
    let nn = n as u32;
    let mut specs = vec![
        ClassSpec {
            kind: ClassKind::SecondPivotMaxLeft,
            pivot: nn - 1,
            left: with(nn, step_two_from(m - 3)),
            right: step_two_from(m - 2),
            before: Some((nn, nn - 3)),
        },
        ClassSpec {
            kind: ClassKind::SecondPivotMaxRight,
            pivot: nn - 1,
            left: step_two_from(m - 3),
            right: with(nn, step_two_from(m - 2)),
            before: Some((nn - 2, nn)),
        },
        ClassSpec {
            kind: ClassKind::MaxPivotSecondLeft,
            pivot: nn,
            left: step_two_from(m - 1),
            right: step_two_from(m - 2),
            before: None,
        },
        ClassSpec {
            kind: ClassKind::MaxPivotSecondRight,
            pivot: nn,
            left: step_two_from(m - 3),
            right: with(nn - 1, step_two_from(m - 2)),
            before: None,
        },
    ];
    let mut left_pairs = Vec::new();
    let mut right_pairs = Vec::new();
    for i in 1..=nn - 3 {
        let mut units: Vec<Vec<u32>> = ((i + 2)..nn).rev().map(|v| vec![v]).collect();
        units.push(vec![i + 1, i]);
        units.extend((1..i).rev().map(|v| vec![v]));
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for (j, unit) in units.into_iter().enumerate() {
            if j % 2 == 0 {
                right.extend(unit);
            } else {
                left.extend(unit);
            }
        }
        let pair_left = (nn - i) % 2 == 1;
        let spec = ClassSpec {
            kind: if pair_left {
                ClassKind::PairLeft(i)
            } else {
                ClassKind::PairRight(i)
            },
            pivot: nn,
            left,
            right,
            before: None,
        };
        if pair_left {
            left_pairs.push(spec);
        } else {
            right_pairs.push(spec);
        }
    }
    specs.extend(left_pairs);
    specs.extend(right_pairs);
    specs
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassResult {
    pub name: &'static str,
    pub specs: Vec<ClassSpec>,
    pub size: u64,
    /// Descent polynomial summed over the class members.
    pub polynomial: IntPolynomial,
    /// The closed-form contribution for this class.
    pub expected: IntPolynomial,
    pub matches: bool,
    pub empty: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub classes: Vec<ClassResult>,
    /// Permutations lying in two or more class specs.
    pub overlaps: u64,
    /// Degree `n-2` permutations outside every class.
    pub missed: u64,
    /// Class members whose degree is not `n-2`.
    pub strays: u64,
    /// Number of degree `n-2` permutations.
    pub degree_nm2: u64,
    pub holds: bool,
}

/// Checks that the six classes partition the degree `n-2` permutations and
/// that each matches its closed-form descent polynomial. `4 ≤ n ≤ 10`.
pub fn classify_degree_nm2(n: usize, jobs: usize) -> Result<ClassificationReport> {
    check_size(n, 4, 10)?;
    let specs = class_specs(n);
    let expected = degree_nm2_contributions(n)?;
    // Per group: descent histogram (n+1 slots); then overlaps, missed, strays, degree count.
    let slots = 6 * (n + 1);
    let tally = fold_shards(
        n,
        jobs,
        |first| {
            let mut t = vec![0u64; slots + 4];
            let mut scratch = Scratch::new(n);
            for_each_in_shard(n, first, |w| {
                let on_target = degree(w, Sorter::Revstack, &mut scratch) == n - 2;
                let mut hits = 0;
                let des = descents(w);
                for spec in &specs {
                    if spec.contains(w) {
                        hits += 1;
                        t[spec.kind.group() * (n + 1) + 1 + des] += 1;
                    }
                }
                if hits > 1 {
                    t[slots] += 1;
                }
                if on_target && hits == 0 {
                    t[slots + 1] += 1;
                }
                if !on_target && hits > 0 {
                    t[slots + 2] += 1;
                }
                if on_target {
                    t[slots + 3] += 1;
                }
            });
            t
        },
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    );
    let classes: Vec<ClassResult> = (0..6)
        .map(|g| {
            let counts = &tally[g * (n + 1)..(g + 1) * (n + 1)];
            let polynomial = IntPolynomial::new(counts.iter().map(|&c| c.into()).collect());
            let group_specs: Vec<ClassSpec> = specs.iter().filter(|s| s.kind.group() == g).cloned().collect();
            let size: u64 = counts.iter().sum();
            ClassResult {
                name: GROUP_NAMES[g],
                size,
                matches: polynomial == expected[g],
                expected: expected[g].clone(),
                polynomial,
                empty: size == 0,
                specs: group_specs,
            }
        })
        .collect();
    let (overlaps, missed, strays, degree_nm2) = (tally[slots], tally[slots + 1], tally[slots + 2], tally[slots + 3]);
    let holds = overlaps == 0 && missed == 0 && strays == 0 && classes.iter().all(|c| c.matches);
    Ok(ClassificationReport {
        n,
        classes,
        overlaps,
        missed,
        strays,
        degree_nm2,
        holds,
    })
}
