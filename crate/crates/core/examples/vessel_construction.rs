// A vessel built from a one-dimensional node and the parabola (1, t, t^2).

use bezkit::arith::{Polynomial, Rational};
use bezkit::vessel::{
    kronecker_phi_prime, node_residual, vessel_discriminant, vessel_from_node, vessel_residuals,
    CMatrix, OperatorNode,
};
use num_complex::Complex64;

pub fn run_example() -> bezkit::Result<()> {
    let one = |z: Complex64| CMatrix::from_rows(vec![vec![z]]).expect("1x1");
    let node = OperatorNode::new(
        one(Complex64::new(0.0, 0.5)),
        one(1.0.into()),
        one(1.0.into()),
    )?;
    println!("node residual {:e}", node_residual(&node)?);

    let (p0, p1, p2) = (
        Polynomial::<Rational>::one(),
        Polynomial::x(),
        Polynomial::from_i64(&[0, 0, 1]),
    );
    let phi_prime = kronecker_phi_prime(&node, &p0, 2)?;
    let v = vessel_from_node(&node, &p0, &p1, &p2, 2, &phi_prime)?;
    println!("A1 = {}, A2 = {}", v.a1[(0, 0)], v.a2[(0, 0)]);
    let r = vessel_residuals(&v)?;
    println!("residuals {:?}", r.as_array());
    let delta = vessel_discriminant(&p0, &p1, &p2, 2)?;
    println!(
        "discriminant terms {:?}",
        delta
            .terms()
            .map(|(i, j, c)| (i, j, c.to_string()))
            .collect::<Vec<_>>()
    );
    Ok(())
}

fn main() -> bezkit::Result<()> {
    run_example()
}
