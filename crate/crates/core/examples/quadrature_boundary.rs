// Algebraic boundary of the image of the unit disk under a polynomial map.

use bezkit::arith::{gauss, int, rat, GaussianRational, Polynomial};
use bezkit::implicit::{boundary_samples, quadrature_boundary};

pub fn run_example() -> bezkit::Result<()> {
    // q(z) = z + z^2 / 3
    let q = Polynomial::<GaussianRational>::new(vec![
        gauss(int(0), int(0)),
        gauss(int(1), int(0)),
        gauss(rat(1, 3), int(0)),
    ]);
    let b = quadrature_boundary(&q)?;
    println!(
        "removed z^{} zbar^{}",
        b.removed_monomial.0, b.removed_monomial.1
    );
    for (i, j, c) in b.delta.terms() {
        println!("  ({c}) z^{i} zbar^{j}");
    }
    for (theta, x, y) in boundary_samples(&q, 5, (0.0, std::f64::consts::PI)) {
        println!("{theta:.4} {x:+.6} {y:+.6}");
    }
    Ok(())
}

fn main() -> bezkit::Result<()> {
    run_example()
}
