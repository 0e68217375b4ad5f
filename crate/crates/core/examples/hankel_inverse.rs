// Exact Hankel inverse of a Bezout matrix against the root-sum formula.

use bezkit::arith::{Polynomial, Rational};
use bezkit::structured::{bezout_inverse, hankel_from_roots};

pub fn run_example() -> bezkit::Result<()> {
    let p = Polynomial::<Rational>::from_i64(&[-6, 11, -6, 1]);
    let q = Polynomial::<Rational>::from_i64(&[5, 0, 2, 1]);
    let exact = bezout_inverse(&p, &q)?;
    let approx = hankel_from_roots(&p, &q, 1e-12)?;
    println!("n = {}", exact.size());
    for (h, z) in exact.generator().iter().zip(approx.generator()) {
        println!("{h:>12}  {:+.15e}{:+.3e}i", z.re, z.im);
    }
    Ok(())
}

fn main() -> bezkit::Result<()> {
    run_example()
}
