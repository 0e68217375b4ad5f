// Bezout matrices, common zeros and the Cayley identities.

use bezkit::arith::{int, rat, Polynomial, Rational};
use bezkit::bezout::{bezout_matrix, common_zero_count, identity_suite, Identity, IdentitySample};

pub fn run_example() -> bezkit::Result<()> {
    let p = Polynomial::<Rational>::from_i64(&[-1, 0, 1]);
    let q = Polynomial::<Rational>::from_i64(&[-4, 0, 1]);
    let b = bezout_matrix(&p, &q, None)?;
    for row in b.matrix().to_rows() {
        let row: Vec<String> = row.iter().map(ToString::to_string).collect();
        println!("[{}]", row.join(", "));
    }

    // (x - 1)^2 (x + 2) and (x - 1)^2 (x - 3) share a double zero
    let g = Polynomial::<Rational>::from_i64(&[1, -2, 1]);
    let a = &g * &Polynomial::from_i64(&[2, 1]);
    let c = &g * &Polynomial::from_i64(&[-3, 1]);
    println!("common zeros: {}", common_zero_count(&a, &c)?);

    let samples: Vec<_> = (1..=4)
        .map(|k| IdentitySample {
            x: rat(k, 3),
            y: int(-k),
            w: vec![int(k), int(1)],
        })
        .collect();
    let report = identity_suite(&p, &q, &samples)?;
    for id in Identity::ALL {
        let (ok, total) = report.tally(id);
        println!("{:<14} {ok}/{total}", id.label());
    }
    Ok(())
}

fn main() -> bezkit::Result<()> {
    run_example()
}
