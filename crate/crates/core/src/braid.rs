//! Degree-2 rational maps of the plane applied to a pair of intersecting
//! lines: image conics, branch derivative sequences, intersection indices and
//! the twist-count descriptor.
//!
//! The two lines are always the coordinate axes internally; use
//! [`PlaneRationalMap::on_lines`] to move arbitrary lines there first.

use num_complex::Complex64;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::scalar::{rational_approximation, rational_to_f64};
use crate::arith::{
    poly_roots, BivariatePolynomial, Polynomial, Rational, RationalFunction, Scalar,
};
use crate::error::{Error, Result};
use crate::implicit::{implicitize, RationalTriple};

pub const DEFAULT_DEPTH: usize = 8;

/// Tolerance for comparing branch data at floating-point points.
pub const APPROX_TOL: f64 = 1e-9;

type Biv = BivariatePolynomial<Rational>;
type RatFn = RationalFunction<Rational>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    /// The line `y = 0`, parametrized by `x`.
    X,
    /// The line `x = 0`, parametrized by `y`.
    Y,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
        }
    }
}

/// `(x, y) ↦ (p0 : p1 : p2)`, affine image `(p1/p0, p2/p0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneRationalMap {
    pub p0: Biv,
    pub p1: Biv,
    pub p2: Biv,
}

/// `{point + s · direction}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Line {
    pub point: (Rational, Rational),
    pub direction: (Rational, Rational),
}

impl PlaneRationalMap {
    pub fn new(p0: Biv, p1: Biv, p2: Biv) -> Result<Self> {
        for p in [&p0, &p1, &p2] {
            if p.total_degree().is_some_and(|d| d > 2) {
                return Err(Error::Degree(
                    "plane maps must have total degree <= 2".into(),
                ));
            }
        }
        if p0.is_zero() {
            return Err(Error::Degenerate("p0 is identically zero".into()));
        }
        Ok(PlaneRationalMap { p0, p1, p2 })
    }

    /// The same map with `x` and `y` exchanged.
    pub fn swap_axes(&self) -> Self {
        PlaneRationalMap {
            p0: self.p0.swap_variables(),
            p1: self.p1.swap_variables(),
            p2: self.p2.swap_variables(),
        }
    }

    /// Precomposes with the affine map sending the axes to `l1` (as `y = 0`)
    /// and `l2` (as `x = 0`), with the origin at their intersection.
    pub fn on_lines(&self, l1: &Line, l2: &Line) -> Result<Self> {
        let (u, v) = (&l1.direction, &l2.direction);
        let det = &v.0 * &u.1 - &u.0 * &v.1;
        if det.is_zero() {
            return Err(Error::Degenerate(
                "lines are parallel or a direction vanishes".into(),
            ));
        }
        let d = (&l2.point.0 - &l1.point.0, &l2.point.1 - &l1.point.1);
        let s = (&v.0 * &d.1 - &d.0 * &v.1) / &det;
        let c = (&l1.point.0 + &s * &u.0, &l1.point.1 + &s * &u.1);
        let affine = |c: &Rational, a: &Rational, b: &Rational| {
            Biv::new(vec![vec![c.clone(), b.clone()], vec![a.clone()]])
        };
        let x = affine(&c.0, &u.0, &v.0);
        let y = affine(&c.1, &u.1, &v.1);
        Self::new(
            self.p0.substitute(&x, &y),
            self.p1.substitute(&x, &y),
            self.p2.substitute(&x, &y),
        )
    }

    /// The restriction to an axis as a univariate triple `(p0, p1, p2)`.
    pub fn branch(&self, axis: Axis) -> [Polynomial<Rational>; 3] {
        let r = |p: &Biv| match axis {
            Axis::X => p.restrict_y_zero(),
            Axis::Y => p.restrict_x_zero(),
        };
        [r(&self.p0), r(&self.p1), r(&self.p2)]
    }

    /// Exact image of a point; `None` where `p0` vanishes.
    pub fn image(&self, x: &Rational, y: &Rational) -> Option<(Rational, Rational)> {
        let w = self.p0.eval(x, y);
        if w.is_zero() {
            return None;
        }
        Some((self.p1.eval(x, y) / &w, self.p2.eval(x, y) / &w))
    }
}

fn branch_image_complex(
    branch: &[Polynomial<Rational>; 3],
    t: Complex64,
) -> Option<(Complex64, Complex64)> {
    let e = |p: &Polynomial<Rational>| p.map(Scalar::to_complex).eval(&t);
    let w = e(&branch[0]);
    if w.norm() <= 1e-12 {
        return None;
    }
    Some((e(&branch[1]) / w, e(&branch[2]) / w))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BranchSequence {
    pub axis: Axis,
    /// `D_1, D_2, …` on the x axis or `E_1, E_2, …` on the y axis.
    pub functions: Vec<RatFn>,
}

/// `D_1 = r2'/r1'` and `D_n = D_{n-1}'/r1'`, primes along the axis.
pub fn de_sequence(m: &PlaneRationalMap, axis: Axis, depth: usize) -> Result<BranchSequence> {
    let [q0, q1, q2] = m.branch(axis);
    if q0.is_zero() {
        return Err(Error::Degenerate(format!(
            "p0 vanishes on the {} axis",
            axis.name()
        )));
    }
    let r1 = RatFn::new(q1, q0.clone())?;
    let r2 = RatFn::new(q2, q0)?;
    let dr1 = r1.derivative();
    if dr1.is_zero() {
        return Err(Error::DegenerateProjection { axis: axis.name() });
    }
    let mut functions = Vec::with_capacity(depth);
    let mut current = r2;
    for _ in 0..depth {
        current = current.derivative().div(&dr1)?;
        functions.push(current.clone());
    }
    Ok(BranchSequence { axis, functions })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MinIndex {
    Finite(usize),
    /// No index up to the depth cap separates the branches.
    Diverges,
}

impl MinIndex {
    pub fn finite(self) -> Option<usize> {
        match self {
            MinIndex::Finite(i) => Some(i),
            MinIndex::Diverges => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionReport {
    /// Image-plane coordinates `(x1, x2)`.
    pub point: (Complex64, Complex64),
    /// Parameters `(x0, y0)` on the two axes.
    pub preimage: (Complex64, Complex64),
    pub is_real: bool,
    pub min_index: MinIndex,
    /// `i + 1`, the multiplicity attached to the point.
    pub multiplicity: Option<usize>,
    /// `i + 1` full twists of two strings.
    pub twist_count: Option<usize>,
}

impl IntersectionReport {
    fn new(
        point: (Complex64, Complex64),
        preimage: (Complex64, Complex64),
        min_index: MinIndex,
    ) -> Self {
        let is_real = [point.0, point.1]
            .iter()
            .all(|z| z.im.abs() <= APPROX_TOL * (1.0 + z.re.abs()));
        let next = min_index.finite().map(|i| i + 1);
        IntersectionReport {
            point,
            preimage,
            is_real,
            min_index,
            multiplicity: next,
            twist_count: next,
        }
    }
}

fn complex_pair(a: &Rational, b: &Rational) -> (Complex64, Complex64) {
    (a.to_complex(), b.to_complex())
}

/// Minimal `i` with `D_i(x0) ≠ E_i(y0)`, compared exactly.
pub fn multiplicity_index(
    m: &PlaneRationalMap,
    preimage: (&Rational, &Rational),
    depth: usize,
) -> Result<IntersectionReport> {
    let (x0, y0) = preimage;
    let zero = Rational::zero();
    let (Some(px), Some(py)) = (m.image(x0, &zero), m.image(&zero, y0)) else {
        return Err(Error::Domain("p0 vanishes at a preimage".into()));
    };
    if px != py {
        return Err(Error::NotAnIntersection);
    }
    let d = de_sequence(m, Axis::X, depth)?;
    let e = de_sequence(m, Axis::Y, depth)?;
    let mut min_index = MinIndex::Diverges;
    for (i, (di, ei)) in d.functions.iter().zip(&e.functions).enumerate() {
        if di.eval(x0)? != ei.eval(y0)? {
            min_index = MinIndex::Finite(i + 1);
            break;
        }
    }
    Ok(IntersectionReport::new(
        complex_pair(&px.0, &px.1),
        complex_pair(x0, y0),
        min_index,
    ))
}

/// The same index at floating-point preimages, comparing within `tol`
/// relative to the magnitude of the compared values.
pub fn multiplicity_index_approx(
    m: &PlaneRationalMap,
    preimage: (Complex64, Complex64),
    depth: usize,
    tol: f64,
) -> Result<IntersectionReport> {
    let (x0, y0) = preimage;
    let px = branch_image_complex(&m.branch(Axis::X), x0).ok_or(Error::Pole)?;
    let py = branch_image_complex(&m.branch(Axis::Y), y0).ok_or(Error::Pole)?;
    let close = |a: Complex64, b: Complex64| (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()));
    if !close(px.0, py.0) || !close(px.1, py.1) {
        return Err(Error::NotAnIntersection);
    }
    let d = de_sequence(m, Axis::X, depth)?;
    let e = de_sequence(m, Axis::Y, depth)?;
    let mut min_index = MinIndex::Diverges;
    for (i, (di, ei)) in d.functions.iter().zip(&e.functions).enumerate() {
        let a = di.eval_complex(x0).ok_or(Error::Pole)?;
        let b = ei.eval_complex(y0).ok_or(Error::Pole)?;
        if !close(a, b) {
            min_index = MinIndex::Finite(i + 1);
            break;
        }
    }
    Ok(IntersectionReport::new(px, preimage, min_index))
}

fn series_mul(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Taylor coefficients of `num/den` at `a` up to order `len - 1`.
fn taylor(f: &RatFn, a: &Rational, len: usize) -> Result<Vec<Rational>> {
    let num = f.numerator().shift(a).padded(len);
    let den = f.denominator().shift(a).padded(len);
    if den[0].is_zero() {
        return Err(Error::Pole);
    }
    let mut c: Vec<Rational> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = num[k].clone();
        for j in 1..=k {
            acc -= &den[j] * &c[k - j];
        }
        c.push(acc / &den[0]);
    }
    Ok(c)
}

/// The branch through parameter `a` as a series `x2 - x2(a)` in `w = x1 - x1(a)`.
fn branch_graph(
    branch: &[Polynomial<Rational>; 3],
    a: &Rational,
    len: usize,
) -> Result<Vec<Rational>> {
    let r1 = RatFn::new(branch[1].clone(), branch[0].clone())?;
    let r2 = RatFn::new(branch[2].clone(), branch[0].clone())?;
    let u = taylor(&r1, a, len)?;
    let v = taylor(&r2, a, len)?;
    if u[1].is_zero() {
        return Err(Error::OracleInapplicable(
            "series reversion needs a nonzero linear term".into(),
        ));
    }
    // s(w) solves u(s) - u0 = w by fixed-point iteration, one order per pass
    let mut w = vec![Rational::zero(); len];
    w[1] = Rational::one();
    let mut s = w.clone();
    for _ in 0..len {
        let mut rhs = w.clone();
        let mut power = series_mul(&s, &s, len);
        for uk in &u[2..] {
            for (r, p) in rhs.iter_mut().zip(&power) {
                *r -= uk * p;
            }
            power = series_mul(&power, &s, len);
        }
        s = rhs.into_iter().map(|r| r / &u[1]).collect();
    }
    let mut graph = vec![Rational::zero(); len];
    let mut power = s.clone();
    for vk in &v[1..] {
        for (g, p) in graph.iter_mut().zip(&power) {
            *g += vk * p;
        }
        power = series_mul(&power, &s, len);
    }
    Ok(graph)
}

/// Order of vanishing of the difference of the two branches as graphs over
/// `x1`, by series reversion; `None` if they agree through order `depth`.
pub fn branch_contact_order(
    m: &PlaneRationalMap,
    preimage: (&Rational, &Rational),
    depth: usize,
) -> Result<Option<usize>> {
    let (x0, y0) = preimage;
    let zero = Rational::zero();
    let (Some(px), Some(py)) = (m.image(x0, &zero), m.image(&zero, y0)) else {
        return Err(Error::Domain("p0 vanishes at a preimage".into()));
    };
    if px != py {
        return Err(Error::NotAnIntersection);
    }
    let len = depth + 1;
    let f = branch_graph(&m.branch(Axis::X), x0, len)?;
    let g = branch_graph(&m.branch(Axis::Y), y0, len)?;
    Ok((1..len).find(|&k| f[k] != g[k]))
}

/// Implicit equations of the images of the x and y axes.
pub fn image_conics(m: &PlaneRationalMap) -> Result<(Biv, Biv)> {
    let conic = |axis: Axis| -> Result<Biv> {
        let [q0, q1, q2] = m.branch(axis);
        let t = RationalTriple::new(q0, q1, q2).map_err(|_| degenerate_image(axis))?;
        implicitize(&t).map_err(|e| match e {
            Error::DegenerateTriple => degenerate_image(axis),
            e => e,
        })
    };
    Ok((conic(Axis::X)?, conic(Axis::Y)?))
}

fn degenerate_image(axis: Axis) -> Error {
    Error::Degenerate(format!("the {} axis maps to a point", axis.name()))
}

/// `C(p1/p0, p2/p0) · p0^d`, `d = deg C`, as a polynomial in the branch parameter.
fn pullback(conic: &Biv, branch: &[Polynomial<Rational>; 3]) -> Polynomial<Rational> {
    let d = conic.total_degree().unwrap_or(0);
    conic.terms().fold(Polynomial::zero(), |acc, (i, j, c)| {
        let term = &(&branch[1].pow(i) * &branch[2].pow(j)) * &branch[0].pow(d - i - j);
        &acc + &term.scale(c)
    })
}

#[derive(Debug, Clone)]
struct BranchRoot {
    approx: Complex64,
    exact: Option<Rational>,
    image: (Complex64, Complex64),
}

fn branch_roots(conic: &Biv, branch: &[Polynomial<Rational>; 3]) -> Result<Vec<BranchRoot>> {
    let g = pullback(conic, branch);
    if g.is_zero() {
        return Err(Error::Degenerate(
            "an axis image lies on the other image conic".into(),
        ));
    }
    if g.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let g = g.squarefree_part()?;
    let roots = poly_roots(&g, 1e-12)?;
    Ok(roots
        .into_iter()
        .filter_map(|z| {
            let exact = (z.im.abs() <= APPROX_TOL)
                .then(|| rational_approximation(z.re, 1_000_000))
                .flatten()
                .filter(|r| g.eval(r).is_zero());
            let approx = exact.as_ref().map_or(z, Scalar::to_complex);
            branch_image_complex(branch, approx).map(|image| BranchRoot {
                approx,
                exact,
                image,
            })
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonodromyDescriptor {
    /// One report per pair of axis points with a common image, ordered by
    /// image coordinates.
    pub points: Vec<IntersectionReport>,
}

impl MonodromyDescriptor {
    /// The multiset `{(is_real, twist_count)}`, sorted.
    pub fn multiset(&self) -> Vec<(bool, Option<usize>)> {
        let mut v: Vec<_> = self
            .points
            .iter()
            .map(|p| (p.is_real, p.twist_count))
            .collect();
        v.sort();
        v
    }

    pub fn real_points(&self) -> impl Iterator<Item = &IntersectionReport> {
        self.points.iter().filter(|p| p.is_real)
    }
}

/// Intersects the two image conics, and runs [`multiplicity_index`] (exactly
/// at rational preimages, approximately elsewhere) on every matched pair.
pub fn monodromy_descriptor(m: &PlaneRationalMap, depth: usize) -> Result<MonodromyDescriptor> {
    let (cx, cy) = image_conics(m)?;
    if cx == cy {
        return Err(Error::Degenerate("the two image conics coincide".into()));
    }
    let xs = branch_roots(&cy, &m.branch(Axis::X))?;
    let ys = branch_roots(&cx, &m.branch(Axis::Y))?;
    let close = |a: Complex64, b: Complex64| (a - b).norm() <= 1e-7 * (1.0 + a.norm());
    let pairs: Vec<(&BranchRoot, &BranchRoot)> = xs
        .iter()
        .flat_map(|x| {
            ys.iter()
                .filter(move |y| close(x.image.0, y.image.0) && close(x.image.1, y.image.1))
                .map(move |y| (x, y))
        })
        .collect();
    let mut points = pairs
        .par_iter()
        .map(|(x, y)| match (&x.exact, &y.exact) {
            (Some(a), Some(b)) => multiplicity_index(m, (a, b), depth),
            _ => multiplicity_index_approx(m, (x.approx, y.approx), depth, APPROX_TOL),
        })
        .collect::<Result<Vec<_>>>()?;
    points.sort_by(|a, b| {
        let key = |r: &IntersectionReport| [r.point.0.re, r.point.0.im, r.point.1.re, r.point.1.im];
        key(a)
            .iter()
            .zip(key(b).iter())
            .map(|(p, q)| p.total_cmp(q))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(MonodromyDescriptor { points })
}

/// Slope `dx2/dx1` of an implicit curve at a point, `-C_x1 / C_x2`.
pub fn implicit_slope(conic: &Biv, point: (&Rational, &Rational)) -> Result<Rational> {
    let gx = conic.derivative_x().eval(point.0, point.1);
    let gy = conic.derivative_y().eval(point.0, point.1);
    if gy.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(-gx / gy)
}

/// Floating-point view of an exact rational pair.
pub fn to_f64_pair(p: &(Rational, Rational)) -> (f64, f64) {
    (rational_to_f64(&p.0), rational_to_f64(&p.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use proptest::prelude::*;

    fn map(p1: &[&[i64]], p2: &[&[i64]]) -> PlaneRationalMap {
        PlaneRationalMap::new(Biv::from_i64(&[&[1]]), Biv::from_i64(p1), Biv::from_i64(p2)).unwrap()
    }

    /// (1, x + y, x² + c y²) style maps; grids index x^i y^j.
    fn tangent() -> PlaneRationalMap {
        map(&[&[0, 1], &[1]], &[&[0, 0, 2], &[0], &[1]])
    }
    fn transverse() -> PlaneRationalMap {
        map(&[&[0, 1], &[1]], &[&[0, 1], &[0], &[1]])
    }
    fn symmetric() -> PlaneRationalMap {
        map(&[&[0, 1], &[1]], &[&[0, 0, 1], &[0], &[1]])
    }

    fn poly(c: &[i64]) -> RatFn {
        RatFn::from_polynomial(Polynomial::from_i64(c))
    }

    #[test]
    fn de_sequence_examples() {
        let d = de_sequence(&transverse(), Axis::X, 2).unwrap();
        assert_eq!(d.functions[0], poly(&[0, 2]));
        let e = de_sequence(&transverse(), Axis::Y, 2).unwrap();
        assert_eq!(e.functions[0], poly(&[1]));

        let d = de_sequence(&tangent(), Axis::X, 2).unwrap();
        assert_eq!(d.functions, vec![poly(&[0, 2]), poly(&[2])]);
        let e = de_sequence(&tangent(), Axis::Y, 2).unwrap();
        assert_eq!(e.functions, vec![poly(&[0, 4]), poly(&[4])]);

        let m = symmetric();
        assert_eq!(
            de_sequence(&m, Axis::X, 8).unwrap().functions,
            de_sequence(&m, Axis::Y, 8).unwrap().functions
        );
    }

    #[test]
    fn degenerate_projection() {
        let m = map(&[&[0, 1]], &[&[0], &[1]]);
        assert_eq!(
            de_sequence(&m, Axis::X, 3),
            Err(Error::DegenerateProjection { axis: "x" })
        );
    }

    #[test]
    fn multiplicity_examples() {
        let (o, z) = (int(0), int(0));
        let r = multiplicity_index(&transverse(), (&o, &z), DEFAULT_DEPTH).unwrap();
        assert_eq!(
            (r.min_index, r.multiplicity, r.twist_count),
            (MinIndex::Finite(1), Some(2), Some(2))
        );
        assert!(r.is_real);
        let r = multiplicity_index(&tangent(), (&o, &z), DEFAULT_DEPTH).unwrap();
        assert_eq!(
            (r.min_index, r.multiplicity),
            (MinIndex::Finite(2), Some(3))
        );
        let r = multiplicity_index(&symmetric(), (&o, &z), DEFAULT_DEPTH).unwrap();
        assert_eq!((r.min_index, r.multiplicity), (MinIndex::Diverges, None));

        let err = multiplicity_index(&transverse(), (&int(2), &int(0)), DEFAULT_DEPTH);
        assert_eq!(err.unwrap_err(), Error::NotAnIntersection);
    }

    #[test]
    fn contact_order_examples() {
        let (o, z) = (int(0), int(0));
        assert_eq!(
            branch_contact_order(&transverse(), (&o, &z), 8).unwrap(),
            Some(1)
        );
        assert_eq!(
            branch_contact_order(&tangent(), (&o, &z), 8).unwrap(),
            Some(2)
        );
        assert_eq!(
            branch_contact_order(&symmetric(), (&o, &z), 8).unwrap(),
            None
        );
        // x1 = x² has no linear term at the origin
        let m = map(&[&[0, 1], &[0], &[1]], &[&[0, 0, 1], &[1]]);
        assert!(matches!(
            branch_contact_order(&m, (&o, &z), 8),
            Err(Error::OracleInapplicable(_))
        ));
    }

    #[test]
    fn image_conic_examples() {
        let (cx, cy) = image_conics(&tangent()).unwrap();
        assert_eq!(cx, Biv::from_i64(&[&[0, 1], &[0], &[-1]]));
        assert_eq!(cy, Biv::from_i64(&[&[0, 1], &[0], &[-2]]));
        let (cx, cy) = image_conics(&symmetric()).unwrap();
        assert_eq!(cx, cy);
        // (1, x, y) sends y = 0 to the line x2 = 0
        let (cx, _) = image_conics(&map(&[&[0], &[1]], &[&[0, 1]])).unwrap();
        assert_eq!(cx, Biv::from_i64(&[&[0, 1]]));
        let point = map(&[&[0, 1]], &[&[0, 1]]);
        assert!(matches!(image_conics(&point), Err(Error::Degenerate(_))));
    }

    #[test]
    fn descriptor_examples() {
        let d = monodromy_descriptor(&transverse(), DEFAULT_DEPTH).unwrap();
        assert_eq!(d.points.len(), 2);
        assert!(d
            .points
            .iter()
            .all(|p| p.is_real && p.min_index == MinIndex::Finite(1)));
        assert!((d.points[1].point.0 - Complex64::new(1.0, 0.0)).norm() < 1e-12);

        let d = monodromy_descriptor(&tangent(), DEFAULT_DEPTH).unwrap();
        assert_eq!(d.multiset(), vec![(true, Some(3))]);

        assert!(matches!(
            monodromy_descriptor(&symmetric(), DEFAULT_DEPTH),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn descriptor_finds_complex_points() {
        // x axis ↦ parabola x2 = x1², y axis ↦ circle x1² + (x2 + 1)² = 1;
        // tangent at the origin, and meeting where x1² = -3
        let m = PlaneRationalMap::new(
            Biv::from_i64(&[&[1, 0, 1]]),
            Biv::from_i64(&[&[0, 2], &[1]]),
            Biv::from_i64(&[&[0, 0, -2], &[0], &[1]]),
        )
        .unwrap();
        let d = monodromy_descriptor(&m, DEFAULT_DEPTH).unwrap();
        assert_eq!(d.points.len(), 3);
        let real: Vec<_> = d.real_points().collect();
        assert_eq!(real.len(), 1);
        assert_eq!(real[0].min_index, MinIndex::Finite(2));
        for p in d.points.iter().filter(|p| !p.is_real) {
            assert!((p.point.0 * p.point.0 + 3.0).norm() < 1e-9);
            assert_eq!(p.min_index, MinIndex::Finite(1));
        }
    }

    #[test]
    fn lines_move_to_axes() {
        let l1 = Line {
            point: (int(1), int(1)),
            direction: (int(1), int(0)),
        };
        let l2 = Line {
            point: (int(1), int(5)),
            direction: (int(0), int(1)),
        };
        let base = PlaneRationalMap::new(
            Biv::from_i64(&[&[1]]),
            Biv::from_i64(&[&[-2, 1], &[1]]),
            Biv::from_i64(&[&[0, -4, 2], &[-2], &[1]]),
        )
        .unwrap();
        // on the shifted axes this is (1, x+y, x² + 2y²) up to constants
        let moved = base.on_lines(&l1, &l2).unwrap();
        let r = multiplicity_index(&moved, (&int(0), &int(0)), DEFAULT_DEPTH).unwrap();
        assert_eq!(r.min_index, MinIndex::Finite(2));

        let parallel = Line {
            point: (int(0), int(0)),
            direction: (int(2), int(0)),
        };
        assert!(matches!(
            base.on_lines(&l1, &parallel),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn chain_rule_slope() {
        let m = tangent();
        let (cx, _) = image_conics(&m).unwrap();
        let d1 = &de_sequence(&m, Axis::X, 1).unwrap().functions[0];
        for t in [rat(1, 3), int(2), rat(-5, 7), int(-1), rat(9, 4)] {
            let img = m.image(&t, &int(0)).unwrap();
            assert_eq!(
                implicit_slope(&cx, (&img.0, &img.1)).unwrap(),
                d1.eval(&t).unwrap()
            );
        }
    }

    fn arb_map() -> impl Strategy<Value = PlaneRationalMap> {
        // p1 = x + a y + (quadratic), p2 = quadratic; p0 = 1 + small terms
        let coeff = -3i64..=3;
        (
            prop::collection::vec(coeff.clone(), 3),
            prop::collection::vec(coeff.clone(), 5),
            prop::collection::vec(coeff, 5),
            1i64..=3,
        )
            .prop_map(|(a, b, c, lead)| {
                let p0 = Biv::new(vec![vec![int(lead), int(a[0])], vec![int(a[1]), int(a[2])]]);
                let p1 = Biv::new(vec![
                    vec![int(0), int(b[0]), int(b[1])],
                    vec![int(1) + int(b[2].abs()), int(b[3])],
                    vec![int(b[4])],
                ]);
                let p2 = Biv::new(vec![
                    vec![int(0), int(c[0]), int(c[1])],
                    vec![int(c[2]), int(c[3])],
                    vec![int(c[4])],
                ]);
                PlaneRationalMap::new(p0, p1, p2).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn index_matches_series_oracle(m in arb_map()) {
            let (o, z) = (int(0), int(0));
            let oracle = branch_contact_order(&m, (&o, &z), DEFAULT_DEPTH);
            let report = multiplicity_index(&m, (&o, &z), DEFAULT_DEPTH);
            match (oracle, report) {
                (Ok(c), Ok(r)) => prop_assert_eq!(c, r.min_index.finite()),
                (Err(Error::OracleInapplicable(_)), _) | (_, Err(Error::DegenerateProjection { .. })) => {}
                (a, b) => prop_assert!(false, "oracle {:?} vs index {:?}", a, b),
            }
        }

        #[test]
        fn swapping_axes_swaps_sequences(m in arb_map()) {
            let s = m.swap_axes();
            let d = de_sequence(&m, Axis::X, 3);
            let e = de_sequence(&s, Axis::Y, 3);
            match (d, e) {
                (Ok(d), Ok(e)) => prop_assert_eq!(d.functions, e.functions),
                (Err(a), Err(b)) => prop_assert_eq!(a.name(), b.name()),
                (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
            }
        }

        #[test]
        fn scaling_an_axis_keeps_the_index(m in arb_map(), a in 1i64..=4, neg in any::<bool>()) {
            let a = if neg { -a } else { a };
            let l1 = Line { point: (int(0), int(0)), direction: (int(a), int(0)) };
            let l2 = Line { point: (int(0), int(0)), direction: (int(0), int(1)) };
            let scaled = m.on_lines(&l1, &l2).unwrap();
            let (o, z) = (int(0), int(0));
            let before = multiplicity_index(&m, (&o, &z), DEFAULT_DEPTH).map(|r| r.min_index);
            let after = multiplicity_index(&scaled, (&o, &z), DEFAULT_DEPTH).map(|r| r.min_index);
            match (before, after) {
                (Ok(b), Ok(c)) => prop_assert_eq!(b, c),
                (Err(x), Err(y)) => prop_assert_eq!(x.name(), y.name()),
                (x, y) => prop_assert!(false, "{:?} vs {:?}", x, y),
            }
        }
    }
}
