// Intersection indices of the images of two lines under degree-2 maps.

use bezkit::arith::{BivariatePolynomial, Rational};
use bezkit::braid::{monodromy_descriptor, MinIndex, PlaneRationalMap, DEFAULT_DEPTH};

pub fn run_example() -> bezkit::Result<()> {
    let b = |g: &[&[i64]]| BivariatePolynomial::<Rational>::from_i64(g);
    let one = b(&[&[1]]);
    let x_plus_y = b(&[&[0, 1], &[1]]);
    let maps = [
        (
            "(1, x + y, x^2 + y)",
            one.clone(),
            x_plus_y.clone(),
            b(&[&[0, 1], &[0], &[1]]),
        ),
        (
            "(1, x + y, x^2 + 2y^2)",
            one.clone(),
            x_plus_y,
            b(&[&[0, 0, 2], &[0], &[1]]),
        ),
        // parabola and circle, tangent at the origin and meeting again off the reals
        (
            "(1 + y^2, x + 2y, x^2 - 2y^2)",
            b(&[&[1, 0, 1]]),
            b(&[&[0, 2], &[1]]),
            b(&[&[0, 0, -2], &[0], &[1]]),
        ),
    ];
    for (name, p0, p1, p2) in maps {
        let m = PlaneRationalMap::new(p0, p1, p2)?;
        let d = monodromy_descriptor(&m, DEFAULT_DEPTH)?;
        println!("{name}");
        for p in &d.points {
            let index = match p.min_index {
                MinIndex::Finite(i) => i.to_string(),
                MinIndex::Diverges => "diverges".into(),
            };
            println!(
                "  ({:+.4}{:+.4}i, {:+.4}{:+.4}i) real={} i={index} twists={:?}",
                p.point.0.re, p.point.0.im, p.point.1.re, p.point.1.im, p.is_real, p.twist_count
            );
        }
    }
    Ok(())
}

fn main() -> bezkit::Result<()> {
    run_example()
}
