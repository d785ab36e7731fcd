//! Exact real-root counting and isolation with Sturm sequences.
//!
//! All arithmetic is over `BigRational`. Multiplicities come from a Yun
//! square-free decomposition; each square-free factor gets its own Sturm
//! chain and its roots are bisected on dyadic endpoints to the requested
//! width.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::poly::IntPolynomial;

/// Polynomial over the rationals, ascending powers, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
struct QPoly(Vec<BigRational>);

impl QPoly {
    fn from_int(p: &IntPolynomial) -> Self {
        Self(
            p.coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
        .trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("non-zero polynomial")
    }

    fn monic(self) -> Self {
        if self.is_zero() {
            return self;
        }
        let lc = self.lead().clone();
        Self(self.0.into_iter().map(|c| c / &lc).collect())
    }

    fn derivative(&self) -> Self {
        Self(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
        .trimmed()
    }

    fn sub(&self, other: &Self) -> Self {
        let len = self.0.len().max(other.0.len());
        let get = |p: &Self, k: usize| p.0.get(k).cloned().unwrap_or_else(BigRational::zero);
        Self((0..len).map(|k| get(self, k) - get(other, k)).collect()).trimmed()
    }

    fn neg(&self) -> Self {
        Self(self.0.iter().map(|c| -c).collect())
    }

    /// Quotient and remainder.
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.0.clone();
        if rem.len() < d.0.len() {
            return (Self(Vec::new()), self.clone());
        }
        let dd = d.degree();
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / d.lead();
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self(quot).trimmed(), Self(rem).trimmed())
    }

    fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    fn sign_at(&self, x: &BigRational) -> Ordering {
        self.eval(x).cmp(&BigRational::zero())
    }
}

/// Yun's algorithm: `p = c · Π f_i^i` with each `f_i` square-free and monic.
fn square_free_factors(p: &QPoly) -> Vec<(QPoly, usize)> {
    let mut out = Vec::new();
    if p.degree() == 0 {
        return out;
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_rem(&a0).0;
    let c = dp.div_rem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree() > 0 {
        let a = b.gcd(&d);
        let b_next = b.div_rem(&a).0;
        let c_next = d.div_rem(&a).0;
        d = c_next.sub(&b_next.derivative());
        if a.degree() > 0 {
            out.push((a, i));
        }
        b = b_next;
        i += 1;
    }
    out
}

struct SturmChain(Vec<QPoly>);

impl SturmChain {
    fn new(p: &QPoly) -> Self {
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].div_rem(&chain[n - 1]).1;
            if r.is_zero() {
                break;
            }
            chain.push(r.neg());
        }
        Self(chain)
    }

    fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = Ordering::Equal;
        for p in &self.0 {
            let s = p.sign_at(x);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct roots in `(a, b]`.
    fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a) - self.variations(b)
    }
}

/// Every real root has absolute value below this bound.
fn cauchy_bound(p: &QPoly) -> BigRational {
    let lc = p.lead().abs();
    let max = p.0[..p.degree()]
        .iter()
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(BigRational::zero);
    // Round up to a power of two so bisection stays on dyadic rationals.
    let bound = max + BigRational::one();
    let mut pow = BigRational::one();
    while pow < bound {
        pow *= BigRational::from_integer(BigInt::from(2));
    }
    pow
}

/// One real root: the interval `(lo, hi]` holds exactly one root, or
/// `lo == hi` is the root itself.
#[derive(Clone, Debug, PartialEq)]
pub struct RealRoot {
    pub lo: BigRational,
    pub hi: BigRational,
    pub multiplicity: usize,
}

impl RealRoot {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn approx(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    /// Midpoint rounded half-to-even at five decimals.
    pub fn approx_5(&self) -> String {
        format_decimal(&self.midpoint(), 5)
    }
}

/// Exact rounding of a rational to `places` decimals, ties to even.
pub fn format_decimal(x: &BigRational, places: u32) -> String {
    let scale = BigInt::from(10).pow(places);
    let scaled = x * BigRational::from_integer(scale.clone());
    let floor = scaled.floor();
    let frac = &scaled - &floor;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut int = floor.to_integer();
    match frac.cmp(&half) {
        Ordering::Greater => int += 1,
        Ordering::Equal if (&int % BigInt::from(2)) != BigInt::zero() => int += 1,
        _ => {}
    }
    let neg = int.is_negative();
    let digits = int.abs().to_string();
    let places = places as usize;
    let padded = format!("{digits:0>width$}", width = places + 1);
    let (whole, fract) = padded.split_at(padded.len() - places);
    let body = if places == 0 {
        whole.to_string()
    } else {
        format!("{whole}.{fract}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Everything known about the real roots of a polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct RootReport {
    pub degree: usize,
    /// Sorted ascending.
    pub roots: Vec<RealRoot>,
    /// Real roots with multiplicity equal the degree.
    pub all_real: bool,
    /// No root is positive.
    pub nonpositive: bool,
}

impl RootReport {
    pub fn real_root_count(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    pub fn is_simple(&self) -> bool {
        self.roots.iter().all(|r| r.multiplicity == 1)
    }

    pub fn approximations(&self) -> Vec<f64> {
        self.roots.iter().map(RealRoot::approx).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct RootView {
    lo: f64,
    hi: f64,
    approx: f64,
    mult: usize,
}

#[derive(Serialize, Deserialize)]
struct ReportView {
    all_real: bool,
    nonpositive: bool,
    roots: Vec<RootView>,
}

/// JSON `{all_real, nonpositive, roots:[{lo, hi, approx, mult}]}`; `approx`
/// carries five decimals.
impl Serialize for RootReport {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ReportView {
            all_real: self.all_real,
            nonpositive: self.nonpositive,
            roots: self
                .roots
                .iter()
                .map(|r| RootView {
                    lo: r.lo.to_f64().unwrap_or(f64::NAN),
                    hi: r.hi.to_f64().unwrap_or(f64::NAN),
                    approx: r.approx_5().parse().unwrap_or(f64::NAN),
                    mult: r.multiplicity,
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

fn isolate(chain: &SturmChain, p: &QPoly, width: &BigRational, mult: usize, out: &mut Vec<RealRoot>) {
    let bound = cauchy_bound(p);
    let two = BigRational::from_integer(BigInt::from(2));
    let mut pending = vec![(-bound.clone(), bound)];
    let mut isolated = Vec::new();
    while let Some((a, b)) = pending.pop() {
        let c = chain.count(&a, &b);
        match c {
            0 => {}
            1 => isolated.push((a, b)),
            _ => {
                let mid = (&a + &b) / &two;
                pending.push((mid.clone(), b));
                pending.push((a, mid));
            }
        }
    }
    for (mut a, mut b) in isolated {
        loop {
            if p.eval(&b).is_zero() {
                a = b.clone();
                break;
            }
            if &b - &a <= *width {
                break;
            }
            let mid = (&a + &b) / &two;
            if chain.count(&a, &mid) == 1 {
                b = mid;
            } else {
                a = mid;
            }
        }
        out.push(RealRoot {
            lo: a,
            hi: b,
            multiplicity: mult,
        });
    }
}

/// Counts, isolates and refines every real root of a non-zero `p` to an
/// interval of width at most `width`.
pub fn real_roots(p: &IntPolynomial, width: &BigRational) -> RootReport {
    assert!(!p.is_zero(), "real_roots of the zero polynomial");
    assert!(width.is_positive(), "width must be positive");
    let q = QPoly::from_int(p);
    let degree = q.degree();
    let mut roots = Vec::new();
    let mut positive = 0;
    for (factor, mult) in square_free_factors(&q) {
        let chain = SturmChain::new(&factor);
        positive += chain.count(&BigRational::zero(), &cauchy_bound(&factor));
        isolate(&chain, &factor, width, mult, &mut roots);
    }
    roots.sort_by(|x, y| x.lo.cmp(&y.lo).then(x.hi.cmp(&y.hi)));
    let total: usize = roots.iter().map(|r| r.multiplicity).sum();
    RootReport {
        degree,
        all_real: total == degree,
        nonpositive: positive == 0,
        roots,
    }
}

/// Default refinement width, `10^-9`.
pub fn default_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(9))
}

/// Outcome of comparing the root sequences of two consecutive polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterlacingReport {
    pub n: usize,
    pub holds: bool,
    /// Human-readable reason when `holds` is false.
    pub violation: Option<String>,
    /// Merged ascending order of the roots, tagged `n` or `n+1`, as 5-decimal strings.
    pub merged: Vec<(usize, String)>,
}

/// Checks that `small` (degree `n`) and `big` (degree `n+1`) both have only
/// simple real roots, share the root 0 and no other, and that their nonzero
/// roots strictly alternate starting and ending with a root of `big`.
pub fn interlaces(n: usize, small: &IntPolynomial, big: &IntPolynomial) -> InterlacingReport {
    let fail = |reason: String, merged: Vec<(usize, String)>| InterlacingReport {
        n,
        holds: false,
        violation: Some(reason),
        merged,
    };
    let width = default_width();
    let rs = real_roots(small, &width);
    let rb = real_roots(big, &width);
    for (label, deg, rep) in [(n, n, &rs), (n + 1, n + 1, &rb)] {
        if rep.degree != deg {
            return fail(format!("polynomial for {label} has degree {}, expected {deg}", rep.degree), vec![]);
        }
        if !rep.all_real || !rep.is_simple() {
            return fail(format!("roots for {label} are not {deg} distinct reals"), vec![]);
        }
    }
    let g = QPoly::from_int(small).gcd(&QPoly::from_int(big));
    let x = QPoly(vec![BigRational::zero(), BigRational::one()]);
    if g != x {
        return fail(format!("common factor {:?} beyond x", g.0), vec![]);
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let zero = BigRational::zero();
    let nonzero = |rep: &RootReport, label: usize| -> Vec<(usize, BigRational, BigRational)> {
        rep.roots
            .iter()
            .filter(|r| !(r.is_exact() && r.lo.is_zero()))
            .map(|r| (label, r.lo.clone(), r.hi.clone()))
            .collect()
    };
    let mut items = nonzero(&rs, n);
    items.extend(nonzero(&rb, n + 1));
    if items.len() != 2 * n - 1 {
        return fail("0 is not a root of both polynomials".into(), vec![]);
    }
    // Refine until intervals are pairwise disjoint; no nonzero root is shared.
    let polys = [(n, QPoly::from_int(small)), (n + 1, QPoly::from_int(big))];
    loop {
        items.sort_by(|a, b| a.1.cmp(&b.1));
        let overlap = items.windows(2).position(|w| w[1].1 < w[0].2);
        let Some(i) = overlap else { break };
        for j in [i, i + 1] {
            let (label, lo, hi) = items[j].clone();
            let poly = &polys.iter().find(|(l, _)| *l == label).expect("label").1;
            let chain = SturmChain::new(poly);
            let mid = (&lo + &hi) / &two;
            if poly.eval(&mid).is_zero() {
                items[j] = (label, mid.clone(), mid);
            } else if chain.count(&lo, &mid) == 1 {
                items[j] = (label, lo, mid);
            } else {
                items[j] = (label, mid, hi);
            }
        }
    }
    let mut merged: Vec<(usize, String)> = items
        .iter()
        .map(|(l, lo, hi)| (*l, format_decimal(&((lo + hi) / &two), 5)))
        .collect();
    merged.push((n, format_decimal(&zero, 5)));
    merged.push((n + 1, format_decimal(&zero, 5)));
    for (i, item) in items.iter().enumerate() {
        let expected = if i % 2 == 0 { n + 1 } else { n };
        if item.0 != expected {
            return fail(
                format!("position {i} holds a root of {} where {expected} was expected", item.0),
                merged,
            );
        }
    }
    InterlacingReport {
        n,
        holds: true,
        violation: None,
        merged,
    }
}
