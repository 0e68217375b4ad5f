// Implicit equations of rational plane curves.

use bezkit::arith::{Polynomial, Rational};
use bezkit::implicit::{implicitize, RationalTriple};

fn show(name: &str, p0: &[i64], p1: &[i64], p2: &[i64]) -> bezkit::Result<()> {
    let t = RationalTriple::new(
        Polynomial::from_i64(p0),
        Polynomial::from_i64(p1),
        Polynomial::<Rational>::from_i64(p2),
    )?;
    let delta = implicitize(&t)?;
    let terms: Vec<String> = delta
        .terms()
        .map(|(i, j, c)| format!("({c}) x1^{i} x2^{j}"))
        .collect();
    println!("{name:<8} {}", terms.join(" + "));
    Ok(())
}

pub fn run_example() -> bezkit::Result<()> {
    show("parabola", &[1], &[0, 1], &[0, 0, 1])?;
    show("circle", &[1, 0, 1], &[1, 0, -1], &[0, 2])?;
    show("cusp", &[1], &[0, 0, 1], &[0, 0, 0, 1])?;
    Ok(())
}

fn main() -> bezkit::Result<()> {
    run_example()
}
