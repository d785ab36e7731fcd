//! Exact polynomial algebra over the integers: descent polynomials, their
//! closed forms, shape predicates and real-root isolation.

pub mod formulas;
pub mod poly;
pub mod roots;

pub use formulas::*;
pub use poly::IntPolynomial;
pub use roots::{default_width, format_decimal, real_roots, InterlacingReport, RealRoot, RootReport};

/// Compares the roots of `W(T_n^{n-2})` and `W(T_{n+1}^{n-1})`: both must
/// be simple and real, share only the root 0, and strictly alternate with
/// the larger-degree polynomial supplying the outermost root.
///
/// For `n = 2` the smaller polynomial is `x`, which has too few roots, so
/// the report comes back negative with that reason.
pub fn check_interlacing(n: usize) -> crate::Result<InterlacingReport> {
    if n < 2 {
        return Err(crate::Error::Precondition(format!("interlacing needs n >= 2, got {n}")));
    }
    let small = formulas::nm2_formula(n);
    let big = formulas::nm2_formula(n + 1);
    Ok(roots::interlaces(n, &small, &big))
}
