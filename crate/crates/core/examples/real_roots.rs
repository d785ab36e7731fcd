//! Exact real-root isolation and the interlacing check.

use num_bigint::BigInt;
use num_rational::BigRational;
use permsort::polyalg::{check_interlacing, default_width, real_roots, w_revstack_nm2};
use permsort::IntPolynomial;

fn main() -> permsort::Result<()> {
    // (x + 1)^2 (x^2 - 2)
    let p = IntPolynomial::from_i64s(&[-2, -4, -1, 2, 1]);
    let report = real_roots(&p, &BigRational::new(BigInt::from(1), BigInt::from(1_000_000)));
    for r in &report.roots {
        println!("root in [{}, {}] ~ {} (multiplicity {})", r.lo, r.hi, r.approx_5(), r.multiplicity);
    }

    let w = w_revstack_nm2(8)?;
    let report = real_roots(&w, &default_width());
    println!("W(T_8^6) = {w}");
    println!("roots: {:?}", report.approximations());
    println!("all real: {}, nonpositive: {}", report.all_real, report.nonpositive);

    for n in 3..=8 {
        let il = check_interlacing(n)?;
        println!("n = {n}: interlaces = {}", il.holds);
    }
    Ok(())
}
