// One PASS/FAIL line per acceptance criterion. Exits nonzero on any FAIL.

use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use bezkit::arith::{gauss, int, rat, GaussianRational, Polynomial, Rational, Scalar};
use bezkit::arith::{BivariatePolynomial, Matrix};
use bezkit::bezout::{bezout_matrix, common_zero_count, identity_suite, IdentitySample};
use bezkit::braid::{
    branch_contact_order, monodromy_descriptor, multiplicity_index, MinIndex, PlaneRationalMap,
    DEFAULT_DEPTH,
};
use bezkit::implicit::{implicitize, quadrature_boundary, RationalTriple};
use bezkit::structured::{
    bezout_inverse, hankel_from_roots, hermite_upper_halfplane, HankelMatrix, HermiteVerdict,
};
use bezkit::vessel::{
    kronecker_phi_prime, node_residual, vessel_from_node, vessel_residuals, CMatrix, OperatorNode,
};
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type P = Polynomial<Rational>;
type G = Polynomial<GaussianRational>;
type Outcome = Result<String, String>;
type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_rat(r: &mut ChaCha8Rng) -> Rational {
    rat(r.gen_range(-9..=9), r.gen_range(1..=6))
}

fn nonzero_rat(r: &mut ChaCha8Rng) -> Rational {
    loop {
        let v = small_rat(r);
        if !v.is_zero() {
            return v;
        }
    }
}

fn random_poly(r: &mut ChaCha8Rng, deg: usize) -> P {
    let mut c: Vec<Rational> = (0..deg).map(|_| small_rat(r)).collect();
    c.push(nonzero_rat(r));
    P::new(c)
}

fn random_poly_in(r: &mut ChaCha8Rng, degs: std::ops::RangeInclusive<usize>) -> P {
    let deg = r.gen_range(degs);
    random_poly(r, deg)
}

fn random_gauss(r: &mut ChaCha8Rng) -> GaussianRational {
    gauss(small_rat(r), small_rat(r))
}

fn random_gpoly(r: &mut ChaCha8Rng, deg: usize) -> G {
    let mut c: Vec<GaussianRational> = (0..deg).map(|_| random_gauss(r)).collect();
    c.push(gauss(nonzero_rat(r), small_rat(r)));
    G::new(c)
}

fn timed(limit: Option<Duration>, body: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = body()?;
    let elapsed = start.elapsed();
    match limit {
        Some(l) if elapsed > l => Err(format!("{detail}; took {elapsed:.2?}, limit {l:?}")),
        _ => Ok(format!("{detail}; {elapsed:.2?}")),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn identity_samples<F: Scalar>(
    r: &mut ChaCha8Rng,
    n: usize,
    pick: impl Fn(&mut ChaCha8Rng) -> F,
) -> Vec<IdentitySample<F>> {
    (0..3)
        .map(|_| loop {
            let (x, y) = (pick(r), pick(r));
            if x != y {
                let w = (0..n).map(|_| pick(r)).collect();
                break IdentitySample { x, y, w };
            }
        })
        .collect()
}

fn cayley_identities() -> Outcome {
    let mut r = rng(1);
    let mut checks = 0;
    for case in 0..200 {
        let (dp, dq) = (r.gen_range(1..=8), r.gen_range(0..=8));
        let passed = if case % 4 == 3 {
            let (p, q) = (random_gpoly(&mut r, dp), random_gpoly(&mut r, dq));
            let s = identity_samples(&mut r, dp.max(dq), random_gauss);
            let rep = identity_suite(&p, &q, &s).map_err(|e| format!("case {case}: {e}"))?;
            checks += rep.checks.len();
            rep.all_passed()
        } else {
            let (p, q) = (random_poly(&mut r, dp), random_poly(&mut r, dq));
            let s = identity_samples(&mut r, dp.max(dq), small_rat);
            let rep = identity_suite(&p, &q, &s).map_err(|e| format!("case {case}: {e}"))?;
            checks += rep.checks.len();
            rep.all_passed()
        };
        ensure(passed, || format!("identity failed in case {case}"))?;
    }
    Ok(format!("200 pairs, {checks} exact checks"))
}

fn jacobi_darboux() -> Outcome {
    let mut r = rng(2);
    let mut nontrivial = 0;
    for case in 0..200 {
        let g = random_poly_in(&mut r, 0..=4);
        let a = random_poly_in(&mut r, 1..=5);
        let b = random_poly_in(&mut r, 0..=5);
        let (p, q) = (&g * &a, &g * &b);
        let kernel = common_zero_count(&p, &q).map_err(|e| format!("case {case}: {e}"))?;
        let oracle = p.gcd(&q).map_err(|e| e.to_string())?.degree().unwrap_or(0);
        let gdeg = g.degree().unwrap_or(0);
        ensure(kernel == oracle && kernel >= gdeg, || {
            format!("case {case}: dim ker {kernel}, deg gcd {oracle}, deg g {gdeg}")
        })?;
        if oracle > 0 {
            nontrivial += 1;
        }
    }
    Ok(format!("200 pairs, {nontrivial} with a common factor"))
}

fn hankel_inverse() -> Outcome {
    let mut r = rng(3);
    let mut exact = 0;
    while exact < 100 {
        let n = r.gen_range(1..=6);
        let p = random_poly(&mut r, n);
        let q = random_poly_in(&mut r, 0..=n);
        if p.gcd(&q).map_err(|e| e.to_string())?.degree() != Some(0) {
            continue;
        }
        let b = bezout_matrix(&p, &q, None).map_err(|e| e.to_string())?;
        let h = bezout_inverse(&p, &q).map_err(|e| format!("{p:?}, {q:?}: {e}"))?;
        let inv = h.to_matrix();
        ensure(
            b.matrix().try_mul(&inv).unwrap() == Matrix::identity(b.size()),
            || format!("B·B⁻¹ ≠ I for {p:?}, {q:?}"),
        )?;
        ensure(HankelMatrix::from_matrix(&inv).is_some(), || {
            "inverse not Hankel".into()
        })?;
        exact += 1;
    }

    let mut worst: f64 = 0.0;
    let mut formula = 0;
    while formula < 50 {
        let n = r.gen_range(2..=5);
        let mut roots: Vec<i64> = Vec::new();
        while roots.len() < n {
            let x = r.gen_range(-6..=6);
            if !roots.contains(&x) {
                roots.push(x);
            }
        }
        let roots: Vec<Rational> = roots.into_iter().map(|x| rat(x, 2)).collect();
        let p = P::from_roots(&roots);
        let q = random_poly(&mut r, n);
        if p.gcd(&q).map_err(|e| e.to_string())?.degree() != Some(0) {
            continue;
        }
        let exact = bezout_inverse(&p, &q).map_err(|e| e.to_string())?;
        let approx = hankel_from_roots(&p, &q, 1e-14).map_err(|e| e.to_string())?;
        for (e, a) in exact.generator().iter().zip(approx.generator()) {
            worst = worst.max((e.to_complex() - a).norm());
        }
        formula += 1;
    }
    ensure(worst <= 1e-8, || format!("root formula off by {worst:e}"))?;

    let h = bezout_inverse(&P::from_i64(&[-1, 0, 1]), &P::from_i64(&[-4, 0, 1]))
        .map_err(|e| e.to_string())?;
    let third = -rat(1, 3);
    let expected =
        Matrix::from_rows(vec![vec![int(0), third.clone()], vec![third, int(0)]]).unwrap();
    ensure(h.to_matrix() == expected, || {
        format!("worked instance gave {:?}", h.to_matrix())
    })?;
    Ok(format!(
        "100 exact inverses, 50 root-formula cases (max error {worst:.1e}), worked instance exact"
    ))
}

fn hermite() -> Outcome {
    let mut r = rng(4);
    for case in 0..100 {
        let deg = r.gen_range(1..=5);
        let mut roots: Vec<GaussianRational> = Vec::new();
        while roots.len() < deg {
            let z = gauss(
                small_rat(&mut r),
                rat(r.gen_range(1..=9), r.gen_range(1..=4)),
            );
            if !roots.contains(&z) {
                roots.push(z);
            }
        }
        let p = G::from_roots(&roots);
        let v = hermite_upper_halfplane(&p)
            .map_err(|e| e.to_string())?
            .verdict;
        ensure(v == HermiteVerdict::AllUpper, || {
            format!("case {case}: {v:?}")
        })?;
        for k in 0..deg {
            let mut flipped = roots.clone();
            flipped[k] = flipped[k].conj();
            let v = hermite_upper_halfplane(&G::from_roots(&flipped))
                .map_err(|e| e.to_string())?
                .verdict;
            ensure(v == HermiteVerdict::NotAllUpper, || {
                format!("case {case} flip {k}: {v:?}")
            })?;
        }
    }
    let unit = G::new(vec![-gauss(int(0), int(1)), GaussianRational::one()]);
    let rep = hermite_upper_halfplane(&unit).map_err(|e| e.to_string())?;
    ensure(
        rep.minors == vec![int(1)] && rep.verdict == HermiteVerdict::AllUpper,
        || format!("x - i gave {:?} with minors {:?}", rep.verdict, rep.minors),
    )?;
    Ok("100 upper-half-plane cases with every single flip, x - i minor 1".into())
}

fn implicitization() -> Outcome {
    let parabola = RationalTriple::new(P::one(), P::x(), P::from_i64(&[0, 0, 1]))
        .map_err(|e| e.to_string())?;
    let delta = implicitize(&parabola).map_err(|e| e.to_string())?;
    let expected = BivariatePolynomial::<Rational>::from_i64(&[&[0, 1], &[0], &[-1]]);
    ensure(delta == expected, || format!("parabola gave {delta:?}"))?;

    let mut r = rng(5);
    let mut done = 0;
    while done < 50 {
        let t = RationalTriple::new(
            random_poly_in(&mut r, 0..=4),
            random_poly_in(&mut r, 0..=4),
            random_poly_in(&mut r, 1..=4),
        );
        let Ok(t) = t else { continue };
        let delta = match implicitize(&t) {
            Ok(d) => d,
            Err(bezkit::Error::DegenerateTriple) => continue,
            Err(e) => return Err(e.to_string()),
        };
        let n = t.size();
        ensure(delta.total_degree().unwrap_or(0) <= n, || {
            format!("deg Δ = {:?} exceeds n = {n}", delta.total_degree())
        })?;
        let mut tested = 0;
        let mut k = 0i64;
        while tested < 2 * n + 3 {
            k += 1;
            let param = rat(if k % 2 == 0 { k } else { -k }, 3);
            let Some((x1, x2)) = t.point(&param) else {
                continue;
            };
            ensure(delta.eval(&x1, &x2).is_zero(), || {
                format!("Δ ≠ 0 at t = {param}")
            })?;
            tested += 1;
        }
        done += 1;
    }
    Ok("parabola gives x2 - x1², 50 random triples vanish on their images".into())
}

fn quadrature() -> Outcome {
    let g = |re: Rational, im: Rational| gauss(re, im);
    let disk = quadrature_boundary(&G::x()).map_err(|e| e.to_string())?;
    let expected = BivariatePolynomial::new(vec![
        vec![GaussianRational::one()],
        vec![GaussianRational::zero(), -GaussianRational::one()],
    ]);
    ensure(disk.delta == expected, || {
        format!("q = z gave {:?}", disk.delta)
    })?;

    let mut r = rng(6);
    let mut cs = Vec::new();
    for _ in 0..4 {
        let c = loop {
            let c = g(rat(r.gen_range(-5..=5), 12), rat(r.gen_range(-5..=5), 12));
            let norm = c.re.clone() * c.re.clone() + c.im.clone() * c.im.clone();
            if !norm.is_zero() && norm < rat(1, 4) {
                break c;
            }
        };
        cs.push(c);
    }
    for c in &cs {
        let q = G::new(vec![
            GaussianRational::zero(),
            GaussianRational::one(),
            c.clone(),
        ]);
        let b = quadrature_boundary(&q).map_err(|e| e.to_string())?;
        for s in 1..=10 {
            // rational point on the unit circle from the tangent half-angle s/7
            let s = rat(s, 7);
            let d = int(1) + s.clone() * s.clone();
            let z = g((int(1) - s.clone() * s.clone()) / d.clone(), int(2) * s / d);
            let w = q.eval(&z);
            ensure(b.delta.eval(&w, &w.conj()).is_zero(), || {
                format!("Δ ≠ 0 at q({z}) for c = {c}")
            })?;
        }
    }
    Ok("q = z gives 1 - z z̄, four values of c vanish on 10 circle images each".into())
}

fn vessel() -> Outcome {
    let one = |z: Complex64| CMatrix::from_rows(vec![vec![z]]).unwrap();
    let node = OperatorNode::new(
        one(Complex64::new(0.0, 0.5)),
        one(Complex64::new(1.0, 0.0)),
        one(Complex64::new(1.0, 0.0)),
    )
    .map_err(|e| e.to_string())?;
    let nr = node_residual(&node).map_err(|e| e.to_string())?;
    ensure(nr == 0.0, || format!("node residual {nr:e}"))?;
    let (p0, p1, p2) = (P::one(), P::x(), P::from_i64(&[0, 0, 1]));
    let phi = kronecker_phi_prime(&node, &p0, 2).map_err(|e| e.to_string())?;
    let v = vessel_from_node(&node, &p0, &p1, &p2, 2, &phi).map_err(|e| e.to_string())?;
    let res = vessel_residuals(&v).map_err(|e| e.to_string())?;
    ensure(res.within(1e-10), || format!("residuals {res:?}"))?;
    Ok(format!(
        "node residual 0, max vessel residual {:.1e}, commutator {:.1e}",
        res.max(),
        res.commutativity
    ))
}

fn braid() -> Outcome {
    let biv = BivariatePolynomial::<Rational>::from_i64;
    let map = |p1: &[&[i64]], p2: &[&[i64]]| {
        PlaneRationalMap::new(biv(&[&[1]]), biv(p1), biv(p2)).unwrap()
    };
    let worked = [
        (
            map(&[&[0, 1], &[1]], &[&[0, 1], &[0], &[1]]),
            MinIndex::Finite(1),
        ),
        (
            map(&[&[0, 1], &[1]], &[&[0, 0, 2], &[0], &[1]]),
            MinIndex::Finite(2),
        ),
        (
            map(&[&[0, 1], &[1]], &[&[0, 0, 1], &[0], &[1]]),
            MinIndex::Diverges,
        ),
    ];
    let (o, z) = (Rational::zero(), Rational::zero());
    for (k, (m, want)) in worked.iter().enumerate() {
        let got = multiplicity_index(m, (&o, &z), DEFAULT_DEPTH)
            .map_err(|e| e.to_string())?
            .min_index;
        ensure(got == *want, || {
            format!("worked map {k}: {got:?}, expected {want:?}")
        })?;
        let oracle = branch_contact_order(m, (&o, &z), DEFAULT_DEPTH).map_err(|e| e.to_string())?;
        ensure(oracle == got.finite(), || {
            format!("worked map {k}: oracle {oracle:?} vs {got:?}")
        })?;
    }

    // random maps through a common image point at the origin
    let mut r = rng(8);
    let mut agreed = 0;
    for _ in 0..30 {
        let mut c = || r.gen_range(-3i64..=3);
        let (a, b) = (c(), c());
        let p1 = [vec![0, a], vec![1 + c().abs()], vec![c()]];
        let p2 = [vec![0, b, c()], vec![c(), c()], vec![c()]];
        let rows1: Vec<&[i64]> = p1.iter().map(Vec::as_slice).collect();
        let rows2: Vec<&[i64]> = p2.iter().map(Vec::as_slice).collect();
        let Ok(m) = PlaneRationalMap::new(biv(&[&[1]]), biv(&rows1), biv(&rows2)) else {
            continue;
        };
        let oracle = branch_contact_order(&m, (&o, &z), DEFAULT_DEPTH);
        let index = multiplicity_index(&m, (&o, &z), DEFAULT_DEPTH);
        match (oracle, index) {
            (Ok(c), Ok(rep)) => {
                ensure(c == rep.min_index.finite(), || {
                    format!("oracle {c:?} vs {:?}", rep.min_index)
                })?;
                agreed += 1;
            }
            (Err(bezkit::Error::OracleInapplicable(_)), _)
            | (_, Err(bezkit::Error::DegenerateProjection { .. })) => {}
            (a, b) => return Err(format!("oracle {a:?} vs index {b:?}")),
        }
    }

    let m = map(&[&[0, 1], &[1]], &[&[0, 1], &[0], &[1]]);
    let d = monodromy_descriptor(&m, DEFAULT_DEPTH).map_err(|e| e.to_string())?;
    let real: Vec<_> = d.real_points().collect();
    ensure(
        real.len() == 2 && real.iter().all(|p| p.min_index == MinIndex::Finite(1)),
        || format!("descriptor {:?}", d.multiset()),
    )?;
    Ok(format!("worked maps (1, 2, diverges), oracle agreed on {agreed} random maps, 2 real points with i = 1"))
}

fn cli_golden() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut names: Vec<String> = fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .filter_map(|e| {
            let p = e.ok()?.path();
            (p.extension()? == "args")
                .then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    ensure(names.len() == 11, || {
        format!("expected 11 golden cases, found {}", names.len())
    })?;
    for name in &names {
        let args =
            fs::read_to_string(dir.join(format!("{name}.args"))).map_err(|e| e.to_string())?;
        let expected = fs::read(dir.join(format!("{name}.expected"))).map_err(|e| e.to_string())?;
        let input = dir.join(format!("{name}.json"));
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_bezkit"))
                .args(args.lines())
                .arg("--in")
                .arg(&input)
                .env_remove("BEZKIT_TOL")
                .output()
                .map_err(|e| e.to_string())
        };
        let (first, second) = (run()?, run()?);
        ensure(first.status.success(), || {
            format!("{name}: exit {:?}", first.status.code())
        })?;
        ensure(first.stdout == expected, || {
            format!("{name}: output differs from golden file")
        })?;
        ensure(first.stdout == second.stdout, || {
            format!("{name}: rerun differs")
        })?;
    }
    Ok(format!(
        "{} subcommands match golden files, reruns identical",
        names.len()
    ))
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: [Criterion; 9] = [
        ("cayley identities", Some(secs(10)), cayley_identities),
        ("jacobi-darboux kernel", Some(secs(20)), jacobi_darboux),
        ("hankel inverse", None, hankel_inverse),
        ("hermite half-plane test", None, hermite),
        ("implicitization", Some(secs(60)), implicitization),
        ("quadrature boundary", None, quadrature),
        ("vessel residuals", None, vessel),
        ("braid multiplicity", Some(secs(10)), braid),
        ("cli golden files", None, cli_golden),
    ];
    let mut failed = 0;
    for (k, (name, limit, body)) in criteria.iter().enumerate() {
        match timed(*limit, body) {
            Ok(detail) => println!("PASS {} {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
