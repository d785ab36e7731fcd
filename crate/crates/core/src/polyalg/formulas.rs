//! Closed forms for descent polynomials `W(A;x) = Σ_{π∈A} x^(1+des π)` and
//! the cardinalities that follow from them.
//!
//! Conventions: `A_n(x)` is the Eulerian polynomial in the shifted form
//! `Σ_{π∈S_n} x^(1+des π)`, with `A_0 = 1`. `D_n` sums over permutations with
//! `n` right of `n-1`, `L_n` over those with `n` left of `n-1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::IntPolynomial;
use crate::error::{Error, Result};

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Eulerian numbers by `E(n,k) = (k+1)E(n-1,k) + (n-k)E(n-1,k-1)`.
pub fn eulerian_numbers(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for m in 2..=n {
        let mut next = vec![BigInt::zero(); m];
        for k in 0..m {
            let keep = row.get(k).map_or(BigInt::zero(), |e| e * BigInt::from(k + 1));
            let grow = if k > 0 {
                &row[k - 1] * BigInt::from(m - k)
            } else {
                BigInt::zero()
            };
            next[k] = keep + grow;
        }
        row = next;
    }
    row
}

/// `A_n(x)`; `A_0 = 1`.
pub fn eulerian_poly(n: usize) -> IntPolynomial {
    if n == 0 {
        return IntPolynomial::one();
    }
    let mut coeffs = vec![BigInt::zero()];
    coeffs.extend(eulerian_numbers(n));
    IntPolynomial::new(coeffs)
}

pub fn narayana_number(n: usize, k: usize) -> BigInt {
    if n == 0 || k >= n {
        return BigInt::zero();
    }
    binomial(n, k) * binomial(n, k + 1) / BigInt::from(n)
}

/// `Σ_{0≤k<n} N(n,k) x^(n-k)`: the descent polynomial of 132-avoiders, which
/// are exactly the permutations sorted by one pass of `T`.
pub fn narayana_poly(n: usize) -> IntPolynomial {
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for k in 0..n {
        coeffs[n - k] = narayana_number(n, k);
    }
    IntPolynomial::new(coeffs)
}

/// `W(T_n^1; x)`.
pub fn w_revstack_1(n: usize) -> IntPolynomial {
    narayana_poly(n)
}

/// `D_n(x) = ½ Σ_i C(n-1,i) A_i(x) A_{n-1-i}(x)`. The halving must be exact;
/// an odd coefficient is reported as an error (it happens at `n = 1`, where
/// `n - 1` is not a value and `D_1` is undefined).
pub fn d_poly(n: usize) -> Result<IntPolynomial> {
    if n == 0 {
        return Err(Error::Precondition("D_n needs n >= 1".into()));
    }
    let m = n - 1;
    let sum: IntPolynomial = (0..=m)
        .map(|i| (&eulerian_poly(i) * &eulerian_poly(m - i)).scale(&binomial(m, i)))
        .sum();
    sum.div_exact(&BigInt::from(2)).ok_or_else(|| {
        Error::Arithmetic(format!("convolution for D_{n} has an odd coefficient: {sum}"))
    })
}

/// `L_n = A_n - D_n`.
pub fn l_poly(n: usize) -> Result<IntPolynomial> {
    Ok(&eulerian_poly(n) - &d_poly(n)?)
}

fn half_floor(a: usize) -> usize {
    a / 2
}

fn require_at_least(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        return Err(Error::Precondition(format!("{what} needs n >= {min}, got {n}")));
    }
    Ok(())
}

/// `A_n - A_⌈(n-1)/2⌉ A_⌊(n-1)/2⌋` with no range check. Equals
/// `W(T_n^{n-2})` for `n ≥ 3`.
pub(crate) fn nm2_formula(n: usize) -> IntPolynomial {
    let lo = (n - 1) / 2;
    let hi = n / 2; // ⌈(n-1)/2⌉
    &eulerian_poly(n) - &(&eulerian_poly(hi) * &eulerian_poly(lo))
}

/// `W(T_n^{n-2}; x)` for `n ≥ 4`.
pub fn w_revstack_nm2(n: usize) -> Result<IntPolynomial> {
    require_at_least(n, 4, "W(T_n^{n-2})")?;
    Ok(nm2_formula(n))
}

/// `W(T_n^{n-3}; x)` in its six-term closed form, for `n ≥ 4`.
pub fn w_revstack_nm3(n: usize) -> Result<IntPolynomial> {
    require_at_least(n, 4, "W(T_n^{n-3})")?;
    let a = eulerian_poly;
    let f = half_floor;
    let k1 = BigInt::from(f(n + 2));
    let k2 = BigInt::from(f(n - 1));
    let base = nm2_formula(n);
    let t1 = (&a(f(n - 1)) * &a(f(n))).scale(&k1);
    let t2 = (&a(f(n - 2)) * &a(f(n + 1))).scale(&k2);
    let t3 = &a(f(n - 1)) * &d_poly(f(n))?;
    let t4 = &a(f(n - 2)) * &d_poly(f(n + 1))?;
    Ok(base - t1 - t2 + t3 - t4)
}

/// Descent polynomial of each degree-`(n-2)` case class, in table order
/// (the classes are described in [`crate::enumerate::classify`]).
pub fn degree_nm2_contributions(n: usize) -> Result<[IntPolynomial; 6]> {
    require_at_least(n, 4, "degree n-2 classes")?;
    let a = eulerian_poly;
    let f = half_floor;
    Ok([
        &l_poly(f(n))? * &a(f(n - 1)),
        &a(f(n - 2)) * &d_poly(f(n + 1))?,
        &a(f(n)) * &a(f(n - 1)),
        &a(f(n - 2)) * &a(f(n + 1)),
        (&a(f(n)) * &a(f(n - 1))).scale(&BigInt::from(f(n - 2))),
        (&a(f(n - 2)) * &a(f(n + 1))).scale(&BigInt::from(f(n - 3))),
    ])
}

/// The summed contribution table, written in its collected four-term form.
pub fn degree_nm2_total(n: usize) -> Result<IntPolynomial> {
    require_at_least(n, 4, "degree n-2 classes")?;
    let a = eulerian_poly;
    let f = half_floor;
    Ok((&a(f(n)) * &a(f(n - 1))).scale(&BigInt::from(f(n)))
        + (&a(f(n - 2)) * &a(f(n + 1))).scale(&BigInt::from(f(n - 1)))
        + &l_poly(f(n))? * &a(f(n - 1))
        + &a(f(n - 2)) * &d_poly(f(n + 1))?)
}

/// `W(T_n^{n-3})` obtained as `W(T_n^{n-2})` minus the contribution total.
pub fn w_revstack_nm3_via_classes(n: usize) -> Result<IntPolynomial> {
    Ok(w_revstack_nm2(n)? - degree_nm2_total(n)?)
}

fn rational_to_integer(r: BigRational, what: &str) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::Arithmetic(format!("{what} evaluated to non-integer {r}")))
    }
}

fn fact_q(n: usize) -> BigRational {
    BigRational::from_integer(factorial(n))
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `|T_n^{n-2}| = n! - ⌊(n-1)/2⌋! ⌈(n-1)/2⌉!`, `n ≥ 4`.
pub fn count_revstack_nm2(n: usize) -> Result<BigInt> {
    require_at_least(n, 4, "|T_n^{n-2}|")?;
    Ok(factorial(n) - factorial((n - 1) / 2) * factorial(n / 2))
}

/// Compact form `n! - ⌊(n-1)/2⌋!⌈(n-1)/2⌉! - (n²/2) ⌊(n-1)/2⌋! ⌊(n-2)/2⌋!`,
/// evaluated over the rationals.
pub fn count_revstack_nm3(n: usize) -> Result<BigInt> {
    require_at_least(n, 4, "|T_n^{n-3}|")?;
    let nn = q(n as i64);
    let value = fact_q(n)
        - fact_q((n - 1) / 2) * fact_q(n / 2)
        - nn.clone() * nn / q(2) * fact_q((n - 1) / 2) * fact_q((n - 2) / 2);
    rational_to_integer(value, "compact |T_n^{n-3}|")
}

/// The six-term form obtained by evaluating the closed-form polynomial at 1.
pub fn count_revstack_nm3_expanded(n: usize) -> Result<BigInt> {
    require_at_least(n, 4, "|T_n^{n-3}|")?;
    let f = half_floor;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let value = fact_q(n)
        - fact_q((n - 1) / 2) * fact_q(n / 2)
        - q(f(n + 2) as i64) * fact_q(f(n - 1)) * fact_q(f(n))
        - q(f(n - 1) as i64) * fact_q(f(n - 2)) * fact_q(f(n + 1))
        + half.clone() * fact_q(f(n - 1)) * fact_q(f(n))
        - half * fact_q(f(n - 2)) * fact_q(f(n + 1));
    rational_to_integer(value, "six-term |T_n^{n-3}|")
}

/// `|S_n^{n-2}| = n! - (n-2)!`.
pub fn count_stack_nm2(n: usize) -> Result<BigInt> {
    require_at_least(n, 4, "|S_n^{n-2}|")?;
    Ok(factorial(n) - factorial(n - 2))
}

/// `|S_n^{n-3}| = (n-3)!/2 · (2n³ - 6n² - 5n + 16)`.
pub fn count_stack_nm3(n: usize) -> Result<BigInt> {
    require_at_least(n, 4, "|S_n^{n-3}|")?;
    let m = n as i64;
    let cubic = q(2 * m * m * m - 6 * m * m - 5 * m + 16);
    rational_to_integer(fact_q(n - 3) / q(2) * cubic, "|S_n^{n-3}|")
}

/// `⌊(n-1)/2⌋! ⌈(n-1)/2⌉! ≤ (n-2)!`, equivalent to `|S_n^{n-2}| ≤ |T_n^{n-2}|`.
pub fn nm2_factorial_inequality(n: usize) -> bool {
    n >= 2 && factorial((n - 1) / 2) * factorial(n / 2) <= factorial(n - 2)
}

/// `C(2m-2, m-1) ≥ (4m³ + 6m² + m) / (18m - 7)` for `m ≥ 1` (odd `n = 2m+1`).
pub fn odd_nm3_inequality(m: usize) -> bool {
    assert!(m >= 1);
    let mm = m as i64;
    let lhs = BigRational::from_integer(binomial(2 * m - 2, m - 1));
    lhs >= q(4 * mm * mm * mm + 6 * mm * mm + mm) / q(18 * mm - 7)
}

/// `(2m-1)! / (m!(m+1)!) ≥ (2m+3)/(9m+1)` for `m ≥ 1` (even `n = 2m+2`).
pub fn even_nm3_inequality(m: usize) -> bool {
    assert!(m >= 1);
    let mm = m as i64;
    let lhs = fact_q(2 * m - 1) / (fact_q(m) * fact_q(m + 1));
    lhs >= q(2 * mm + 3) / q(9 * mm + 1)
}

/// Parity-specialised closed forms for `|T_n^{n-3}|` and `|S_n^{n-3}|`,
/// which the two inequalities above compare.
pub fn nm3_counts_by_parity(n: usize) -> Result<(BigInt, BigInt)> {
    require_at_least(n, 4, "parity forms")?;
    let (t, s) = if n.is_odd() {
        let m = (n - 1) / 2;
        let mm = m as i64;
        let t = fact_q(n) - q(4 * mm * mm + 6 * mm + 1) / q(2) * fact_q(m - 1) * fact_q(m);
        let s = fact_q(2 * m - 2) / q(2) * q(16 * mm * mm * mm - 22 * mm + 7);
        (t, s)
    } else {
        let m = (n - 2) / 2;
        let mm = m as i64;
        let t = fact_q(n) - q(2 * mm + 3) * fact_q(m) * fact_q(m + 1);
        let s = fact_q(2 * m - 1) / q(2) * q(16 * mm * mm * mm + 24 * mm * mm - 10 * mm - 2);
        (t, s)
    };
    Ok((
        rational_to_integer(t, "parity |T_n^{n-3}|")?,
        rational_to_integer(s, "parity |S_n^{n-3}|")?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::all_permutations;
    use crate::perm::{descents, Sorter};

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    /// Brute-force `Σ x^(1+des)` over the permutations accepted by `keep`.
    fn brute(n: usize, keep: impl Fn(&[u32]) -> bool) -> IntPolynomial {
        let mut counts = vec![0i64; n + 1];
        for pi in all_permutations(n) {
            if keep(pi.as_slice()) {
                counts[1 + descents(pi.as_slice())] += 1;
            }
        }
        poly(&counts)
    }

    #[test]
    fn eulerian_examples() {
        assert_eq!(eulerian_poly(3), poly(&[0, 1, 4, 1]));
        assert_eq!(eulerian_poly(0), IntPolynomial::one());
        assert_eq!(eulerian_poly(5), poly(&[0, 1, 26, 66, 26, 1]));
        for n in 1..=8 {
            assert_eq!(eulerian_poly(n), brute(n, |_| true), "n={n}");
        }
    }

    #[test]
    fn eulerian_leaves_i64_by_n_21() {
        use num_traits::ToPrimitive;
        assert!(eulerian_poly(21).to_i64s().is_none());
        assert!(eulerian_poly(21).coefficient_sum() == factorial(21));
        assert!(eulerian_poly(19).coeffs().iter().all(|c| c.to_i64().is_some()));
    }

    #[test]
    fn narayana_examples() {
        assert_eq!(narayana_poly(4), poly(&[0, 1, 6, 6, 1]));
        assert_eq!(narayana_poly(1), poly(&[0, 1]));
        assert_eq!(narayana_poly(6), poly(&[0, 1, 15, 50, 50, 15, 1]));
        for n in 1..=9 {
            for k in 0..n {
                assert_eq!(narayana_number(n, k), narayana_number(n, n - 1 - k));
            }
        }
    }

    #[test]
    fn d_and_l() {
        assert_eq!(d_poly(2).unwrap(), poly(&[0, 1]));
        assert_eq!(d_poly(3).unwrap(), poly(&[0, 1, 2]));
        assert!(matches!(d_poly(1), Err(Error::Arithmetic(_))));
        for n in 2..=8 {
            let right_of = |w: &[u32]| {
                let p = |v: u32| w.iter().position(|&x| x == v).unwrap();
                p(n as u32) > p(n as u32 - 1)
            };
            assert_eq!(d_poly(n).unwrap(), brute(n, right_of), "D_{n}");
            assert_eq!(l_poly(n).unwrap(), brute(n, |w| !right_of(w)), "L_{n}");
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(w_revstack_nm2(5).unwrap(), poly(&[0, 1, 25, 64, 25, 1]));
        assert_eq!(w_revstack_nm3(5).unwrap(), poly(&[0, 1, 20, 49, 20, 1]));
        assert_eq!(w_revstack_nm3(6).unwrap(), poly(&[0, 1, 50, 267, 267, 50, 1]));
        assert!(w_revstack_nm2(3).is_err());
        assert!(w_revstack_nm3(3).is_err());
        // The unguarded formula is already right at n = 3.
        assert_eq!(nm2_formula(3), poly(&[0, 1, 3, 1]));
    }

    #[test]
    fn displayed_and_collected_forms_agree() {
        for n in 4..=14 {
            assert_eq!(w_revstack_nm3(n).unwrap(), w_revstack_nm3_via_classes(n).unwrap());
            let parts: IntPolynomial = degree_nm2_contributions(n).unwrap().into_iter().sum();
            assert_eq!(parts, degree_nm2_total(n).unwrap());
        }
    }

    #[test]
    fn closed_forms_match_enumeration() {
        for n in 4..=8 {
            let deg = |w: &[u32], s: Sorter| crate::perm::degree(w, s, &mut crate::perm::Scratch::new(n));
            assert_eq!(
                w_revstack_nm2(n).unwrap(),
                brute(n, |w| deg(w, Sorter::Revstack) <= n - 2)
            );
            assert_eq!(
                w_revstack_nm3(n).unwrap(),
                brute(n, |w| deg(w, Sorter::Revstack) <= n - 3)
            );
            assert_eq!(w_revstack_1(n), brute(n, |w| deg(w, Sorter::Revstack) <= 1));
        }
    }

    #[test]
    fn counts() {
        assert_eq!(count_revstack_nm2(5).unwrap(), BigInt::from(116));
        assert_eq!(count_revstack_nm3(5).unwrap(), BigInt::from(91));
        assert_eq!(count_stack_nm2(5).unwrap(), BigInt::from(114));
        for n in 4..=30 {
            let nm3 = count_revstack_nm3(n).unwrap();
            assert_eq!(nm3, count_revstack_nm3_expanded(n).unwrap(), "n={n}");
            assert_eq!(nm3, w_revstack_nm3(n).unwrap().coefficient_sum(), "n={n}");
            assert_eq!(
                count_revstack_nm2(n).unwrap(),
                w_revstack_nm2(n).unwrap().coefficient_sum()
            );
            let (t, s) = nm3_counts_by_parity(n).unwrap();
            assert_eq!(t, nm3);
            assert_eq!(s, count_stack_nm3(n).unwrap());
        }
        assert!(count_stack_nm3(3).is_err());
    }

    #[test]
    fn inequalities_hold_to_n_30() {
        for n in 2..=30 {
            assert!(nm2_factorial_inequality(n), "n={n}");
        }
        for m in 1..=15 {
            assert!(odd_nm3_inequality(m), "m={m}");
            assert!(even_nm3_inequality(m), "m={m}");
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(3, 4), BigInt::zero());
    }
}
