use serde::Serialize;

use super::table::{descent_table, DescentTable};
use super::{check_size, first_of, fold_shards, for_each_in_shard, MAX_N};
use crate::error::Result;
use crate::patterns::{avoids, check_132_precursors, is_member_s2, is_member_t2};
use crate::perm::{Permutation, Sorter};
use crate::polyalg::{self, IntPolynomial};
use crate::trees::{duality_f, g_map, h_max_descents, injection_h, tree_of};
use crate::zigzag::{max_uninterrupted_degree, max_zigzag_degree};

/// One named property checked over a finite range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// Number of instances examined.
    pub cases: u64,
    /// First failing instance, in lexicographic order where that applies.
    pub counterexample: Option<String>,
}

impl CheckResult {
    fn new(name: &'static str, cases: u64, counterexample: Option<String>) -> Self {
        Self {
            name,
            passed: counterexample.is_none(),
            cases,
            counterexample,
        }
    }

    fn single(name: &'static str, ok: bool, detail: impl FnOnce() -> String) -> Self {
        Self::new(name, 1, (!ok).then(detail))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub n: usize,
    pub checks: Vec<CheckResult>,
    pub holds: bool,
}

impl SuiteReport {
    fn new(suite: &'static str, n: usize, checks: Vec<CheckResult>) -> Self {
        let holds = checks.iter().all(|c| c.passed);
        Self { suite, n, checks, holds }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SteingrimssonRow {
    pub t: usize,
    pub stack: u64,
    pub revstack: u64,
    pub strict: bool,
    /// Strictness is expected exactly for `2 < t < n-1`.
    pub expected_strict: bool,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SteingrimssonReport {
    pub n: usize,
    pub rows: Vec<SteingrimssonRow>,
    pub holds: bool,
}

impl SteingrimssonReport {
    /// Compares `|S_n^t|` with `|T_n^t|` for every `t`.
    pub fn from_tables(stack: &DescentTable, revstack: &DescentTable) -> Self {
        let n = stack.n();
        assert_eq!(n, revstack.n());
        let rows: Vec<SteingrimssonRow> = (0..n)
            .map(|t| {
                let (s, r) = (stack.count(t), revstack.count(t));
                let strict = s < r;
                let expected_strict = 2 < t && t + 1 < n;
                SteingrimssonRow {
                    t,
                    stack: s,
                    revstack: r,
                    strict,
                    expected_strict,
                    ok: s <= r && strict == expected_strict,
                }
            })
            .collect();
        let holds = rows.iter().all(|r| r.ok);
        Self { n, rows, holds }
    }
}

/// `|S_n^t| ≤ |T_n^t|` for all `t`, strictly exactly when `2 < t < n-1`.
pub fn verify_steingrimsson(n: usize, jobs: usize) -> Result<SteingrimssonReport> {
    check_size(n, 1, MAX_N)?;
    let s = descent_table(n, Sorter::Stack, jobs)?;
    let t = descent_table(n, Sorter::Revstack, jobs)?;
    Ok(SteingrimssonReport::from_tables(&s, &t))
}

const PER_PERM: [&str; 12] = [
    "one_pass_iff_avoids_132",
    "two_pass_revstack_iff_patterns",
    "two_pass_stack_iff_patterns",
    "image_inversions_from_132",
    "image_132_has_precursor",
    "image_132_needs_forbidden_pattern",
    "no_zigzag_means_sorted",
    "uninterrupted_zigzag_means_unsorted",
    "tree_traversals",
    "duality_map",
    "g_equals_f_after_reverse",
    "injection_raises_descents",
];

#[derive(Default)]
struct Tally {
    cases: [u64; PER_PERM.len()],
    fails: [Option<String>; PER_PERM.len()],
    /// Encoded injection images, grouped by source descent count.
    images: Vec<Vec<u64>>,
}

impl Tally {
    fn record(&mut self, check: usize, ok: bool, word: &[u32], detail: impl FnOnce() -> String) {
        self.cases[check] += 1;
        if !ok && self.fails[check].is_none() {
            let pi = Permutation::from_word_unchecked(word.to_vec());
            self.fails[check] = Some(format!("{pi}: {}", detail()));
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for i in 0..PER_PERM.len() {
            self.cases[i] += other.cases[i];
            self.fails[i] = first_of(self.fails[i].take(), other.fails[i].clone());
        }
        for (mine, theirs) in self.images.iter_mut().zip(other.images) {
            mine.extend(theirs);
        }
        self
    }
}

fn encode(word: &[u32]) -> u64 {
    word.iter().fold(0u64, |acc, &v| (acc << 4) | v as u64)
}

/// `(b, a)` pairs with `a < b`, `a` left of `b` and something above `b`
/// between them: the inversions the revstack pass is expected to create.
fn predicted_inversions(word: &[u32]) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for i in 0..word.len() {
        let mut peak = 0;
        for j in i + 1..word.len() {
            let (a, b) = (word[i], word[j]);
            if a < b && peak > b {
                out.push((b, a));
            }
            peak = peak.max(b);
        }
    }
    out.sort_unstable();
    out
}

fn check_word(n: usize, word: &[u32], tally: &mut Tally) {
    let pi = Permutation::from_word_unchecked(word.to_vec());
    let deg_t = pi.deg_revstack().value();
    let deg_s = pi.deg_stack().value();
    let image = pi.revstack_sort();
    let stack_image = pi.stack_sort();

    let avoids_132 = avoids(word, &[1, 3, 2]);
    tally.record(0, (deg_t <= 1) == avoids_132, word, || format!("deg {deg_t}, avoids 132: {avoids_132}"));
    let t2 = is_member_t2(&pi);
    tally.record(1, (deg_t <= 2) == t2, word, || format!("deg {deg_t}, pattern test {t2}"));
    let s2 = is_member_s2(&pi);
    tally.record(2, (deg_s <= 2) == s2, word, || format!("stack deg {deg_s}, pattern test {s2}"));

    let mut actual = image.inversions();
    actual.sort_unstable();
    let predicted = predicted_inversions(word);
    tally.record(3, actual == predicted, word, || format!("image inversions {actual:?}, predicted {predicted:?}"));

    let precursors = check_132_precursors(&pi);
    tally.record(4, precursors.holds, word, || "a 132 of the image has no precursor".into());
    let image_has_132 = !avoids(image.as_slice(), &[1, 3, 2]);
    tally.record(5, !image_has_132 || !t2, word, || "image contains 132 but no forbidden pattern".into());

    let zig = max_zigzag_degree(&pi);
    let no_zig_ok = match zig {
        None => deg_t == 0,
        Some(m) => deg_t <= m + 1,
    };
    tally.record(6, no_zig_ok, word, || format!("deg {deg_t}, largest zigzag {zig:?}"));
    let unint = max_uninterrupted_degree(&pi);
    let unint_ok = unint.is_none_or(|u| deg_t > u);
    tally.record(7, unint_ok, word, || format!("deg {deg_t}, largest uninterrupted zigzag {unint:?}"));

    if n == 0 {
        return;
    }
    let des = crate::perm::descents(word);
    let tree = tree_of(&pi).expect("non-empty");
    let tree_ok = tree.in_order() == pi
        && tree.post_order() == stack_image
        && tree.rpostorder() == image
        && tree.right_edges() == des;
    tally.record(8, tree_ok, word, || "traversal or edge count mismatch".into());

    let f = duality_f(&pi);
    let f_ok = duality_f(&f) == pi
        && des + crate::perm::descents(f.as_slice()) == n - 1
        && f.stack_sort() == stack_image
        && f.revstack_sort() == image;
    tally.record(9, f_ok, word, || format!("f gives {f}"));
    let g = g_map(&pi);
    tally.record(10, g == duality_f(&pi.reverse()) && g == f.reverse(), word, || format!("g gives {g}"));

    if let Some(max) = h_max_descents(n) {
        if des <= max {
            let outcome = injection_h(&pi);
            let ok = match &outcome {
                Ok(h) => {
                    tally.images[des].push(encode(h.image.as_slice()));
                    crate::perm::descents(h.image.as_slice()) == des + 1
                        && h.image.stack_sort() == stack_image
                        && h.image.revstack_sort() == image
                }
                Err(_) => false,
            };
            tally.record(11, ok, word, || format!("{outcome:?}"));
        }
    }
}

fn table_checks(n: usize, s: &DescentTable, t: &DescentTable) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let rows = n as u64;
    let row_fail = |pred: &dyn Fn(usize) -> bool| (0..n).find(|&k| !pred(k)).map(|k| format!("t = {k}"));

    out.push(CheckResult::single("one_pass_rows_agree", n < 2 || t.row(1) == s.row(1), || {
        format!("revstack {} vs stack {}", t.row(1), s.row(1))
    }));
    out.push(CheckResult::single("two_pass_rows_agree", n < 3 || t.row(2) == s.row(2), || {
        format!("revstack {} vs stack {}", t.row(2), s.row(2))
    }));
    out.push(CheckResult::single("one_pass_row_is_narayana", n < 2 || t.row(1) == polyalg::narayana_poly(n), || {
        format!("row {} vs {}", t.row(1), polyalg::narayana_poly(n))
    }));
    let eul = polyalg::eulerian_poly(n);
    out.push(CheckResult::single("last_row_is_eulerian", t.row(n - 1) == eul && s.row(n - 1) == eul, || {
        format!("expected {eul}")
    }));
    out.push(CheckResult::new(
        "rows_nested",
        2 * rows,
        row_fail(&|k| {
            k == 0
                || (0..=n).all(|i| t.coeffs(k - 1)[i] <= t.coeffs(k)[i] && s.coeffs(k - 1)[i] <= s.coeffs(k)[i])
        }),
    ));
    // Row 0 is just `x`; the duality map only preserves degrees from 1 up.
    out.push(CheckResult::new(
        "revstack_rows_symmetric",
        rows.saturating_sub(1),
        row_fail(&|k| k == 0 || t.row(k).is_symmetric(n)),
    ));
    out.push(CheckResult::new("revstack_rows_unimodal", rows, row_fail(&|k| t.row(k).is_unimodal())));
    out.push(CheckResult::new(
        "single_descent_counts_agree",
        rows,
        row_fail(&|k| n < 2 || (t.entry(k, 1) == s.entry(k, 1) && t.entry(k, n - 2) == s.entry(k, n - 2))),
    ));
    out.push(CheckResult::single("two_pass_stack_row_symmetric", n < 3 || s.row(2).is_symmetric(n), || {
        format!("row {}", s.row(2))
    }));
    if n >= 4 {
        let nm2 = polyalg::w_revstack_nm2(n).expect("n ≥ 4");
        let nm3 = polyalg::w_revstack_nm3(n).expect("n ≥ 4");
        out.push(CheckResult::single("closed_form_degree_n_minus_2", t.row(n - 2) == nm2, || {
            format!("row {} vs {nm2}", t.row(n - 2))
        }));
        out.push(CheckResult::single("closed_form_degree_n_minus_3", t.row(n - 3) == nm3, || {
            format!("row {} vs {nm3}", t.row(n - 3))
        }));
        let counts_ok = [
            (t.count(n - 2), polyalg::count_revstack_nm2(n)),
            (t.count(n - 3), polyalg::count_revstack_nm3(n)),
            (s.count(n - 2), polyalg::count_stack_nm2(n)),
            (s.count(n - 3), polyalg::count_stack_nm3(n)),
        ];
        let bad = counts_ok
            .iter()
            .position(|(got, want)| want.as_ref().ok() != Some(&(*got).into()));
        out.push(CheckResult::new("closed_form_counts", 4, bad.map(|i| format!("formula {i} disagrees"))));
    }
    out
}

/// Runs every exhaustive property over `S_n`, `1 ≤ n ≤ 10`.
pub fn verify_theorems(n: usize, jobs: usize) -> Result<SuiteReport> {
    check_size(n, 1, 10)?;
    let tally = fold_shards(
        n,
        jobs,
        |first| {
            let mut tally = Tally {
                images: vec![Vec::new(); n],
                ..Tally::default()
            };
            for_each_in_shard(n, first, |w| check_word(n, w, &mut tally));
            tally
        },
        Tally::merge,
    );
    let mut checks: Vec<CheckResult> = PER_PERM
        .iter()
        .enumerate()
        .map(|(i, &name)| CheckResult::new(name, tally.cases[i], tally.fails[i].clone()))
        .collect();
    let mut collision = None;
    let mut images = 0;
    for (des, mut imgs) in tally.images.into_iter().enumerate() {
        images += imgs.len() as u64;
        imgs.sort_unstable();
        if imgs.windows(2).any(|w| w[0] == w[1]) && collision.is_none() {
            collision = Some(format!("two sources with {des} descents share an image"));
        }
    }
    checks.push(CheckResult::new("injection_is_injective", images, collision));
    let s = descent_table(n, Sorter::Stack, jobs)?;
    let t = descent_table(n, Sorter::Revstack, jobs)?;
    checks.extend(table_checks(n, &s, &t));
    Ok(SuiteReport::new("theorems", n, checks))
}

/// Finite checks of the open shape questions: real roots, log-concavity
/// and interlacing for every row of the revstack table.
pub fn verify_conjectures(n: usize, jobs: usize) -> Result<SuiteReport> {
    check_size(n, 1, MAX_N)?;
    verify_conjectures_on(&descent_table(n, Sorter::Revstack, jobs)?)
}

/// As [`verify_conjectures`], on an already computed revstack table.
pub fn verify_conjectures_on(t: &DescentTable) -> Result<SuiteReport> {
    Ok(SuiteReport::new("conjectures", t.n(), conjecture_checks(t)?))
}

fn conjecture_checks(t: &DescentTable) -> Result<Vec<CheckResult>> {
    let n = t.n();
    let width = polyalg::default_width();
    let rows: Vec<IntPolynomial> = (0..n).map(|k| t.row(k)).collect();
    let first = |pred: &dyn Fn(&IntPolynomial) -> bool| rows.iter().position(|p| !pred(p)).map(|k| format!("t = {k}"));
    let reports: Vec<_> = rows.iter().map(|p| polyalg::real_roots(p, &width)).collect();
    let mut out = vec![
        CheckResult::new(
            "rows_real_rooted",
            n as u64,
            reports.iter().position(|r| !r.all_real).map(|k| format!("t = {k}")),
        ),
        CheckResult::new(
            "rows_nonpositive_roots",
            n as u64,
            reports.iter().position(|r| !r.nonpositive).map(|k| format!("t = {k}")),
        ),
        CheckResult::new("rows_log_concave", n as u64, first(&|p| p.is_log_concave())),
    ];
    if n >= 3 {
        let rep = polyalg::check_interlacing(n)?;
        out.push(CheckResult::new("interlacing_with_next_size", 1, rep.violation));
    }
    Ok(out)
}

/// The arithmetic facts behind the count comparisons, for sizes up to `n`.
pub fn verify_inequalities(n: usize) -> Result<SuiteReport> {
    check_size(n, 4, 200)?;
    let sizes = || 4..=n;
    let fail = |bad: Option<usize>, what: &str| bad.map(|k| format!("{what} = {k}"));
    let mut checks = vec![CheckResult::new(
        "factorial_bound",
        (n - 3) as u64,
        fail(sizes().find(|&k| !polyalg::nm2_factorial_inequality(k)), "n"),
    )];
    let odd: Vec<usize> = (1..).take_while(|m| 2 * m < n).collect();
    checks.push(CheckResult::new(
        "odd_size_bound",
        odd.len() as u64,
        fail(odd.iter().copied().find(|&m| !polyalg::odd_nm3_inequality(m)), "m"),
    ));
    let even: Vec<usize> = (1..).take_while(|m| 2 * m + 2 <= n).collect();
    checks.push(CheckResult::new(
        "even_size_bound",
        even.len() as u64,
        fail(even.iter().copied().find(|&m| !polyalg::even_nm3_inequality(m)), "m"),
    ));
    let forms_agree = |k: usize| -> Result<bool> {
        let nm3 = polyalg::count_revstack_nm3(k)?;
        let (t_par, s_par) = polyalg::nm3_counts_by_parity(k)?;
        Ok(nm3 == polyalg::count_revstack_nm3_expanded(k)?
            && nm3 == polyalg::w_revstack_nm3(k)?.coefficient_sum()
            && polyalg::count_revstack_nm2(k)? == polyalg::w_revstack_nm2(k)?.coefficient_sum()
            && t_par == nm3
            && s_par == polyalg::count_stack_nm3(k)?)
    };
    let mut bad = None;
    for k in sizes() {
        if !forms_agree(k)? {
            bad = Some(k);
            break;
        }
    }
    checks.push(CheckResult::new("count_forms_agree", (n - 3) as u64, fail(bad, "n")));
    let mut bad = None;
    for k in sizes() {
        let ok = polyalg::count_stack_nm2(k)? <= polyalg::count_revstack_nm2(k)?
            && polyalg::count_stack_nm3(k)? <= polyalg::count_revstack_nm3(k)?;
        if !ok {
            bad = Some(k);
            break;
        }
    }
    checks.push(CheckResult::new("stack_counts_below_revstack", (n - 3) as u64, fail(bad, "n")));
    Ok(SuiteReport::new("inequalities", n, checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steingrimsson_small() {
        for n in 1..=7 {
            let rep = verify_steingrimsson(n, 2).unwrap();
            assert!(rep.holds, "{rep:?}");
        }
        let rep = verify_steingrimsson(5, 1).unwrap();
        assert_eq!((rep.rows[3].stack, rep.rows[3].revstack), (114, 116));
        assert!(rep.rows[3].strict);
        assert_eq!((rep.rows[4].stack, rep.rows[4].revstack), (120, 120));
    }

    #[test]
    fn theorems_small() {
        for n in 1..=6 {
            let rep = verify_theorems(n, 2).unwrap();
            assert!(rep.holds, "{:?}", rep.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn conjectures_and_inequalities() {
        for n in 1..=7 {
            let rep = verify_conjectures(n, 2).unwrap();
            assert!(rep.holds, "{rep:?}");
        }
        let rep = verify_inequalities(30).unwrap();
        assert!(rep.holds, "{rep:?}");
    }

    #[test]
    fn predicted_inversions_example() {
        // 42513: T = 13245, single inversion (3, 2).
        assert_eq!(predicted_inversions(&[4, 2, 5, 1, 3]), vec![(3, 2)]);
    }
}
