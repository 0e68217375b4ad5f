//! JSON wire formats.
//!
//! Exact scalars are arrays of decimal strings: `["num","den"]` over Q and
//! `["re_num","re_den","im_num","im_den"]` over Q[i]. Polynomials are
//! `{"field": "Q"|"Q[i]", "coeffs": [scalar, ...]}` in ascending degree;
//! bivariate polynomials use the same object with a grid of rows indexed by
//! the power of the first variable. Exact matrices are bare arrays of scalar
//! rows. Complex float matrices are `{"re": [[..]], "im": [[..]]}`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::arith::{
    BivariatePolynomial, ExactField, FieldKind, GaussianRational, Matrix, Polynomial, Rational,
};
use crate::braid::{IntersectionReport, MinIndex, MonodromyDescriptor, PlaneRationalMap};
use crate::error::{Error, Result};
use crate::structured::HankelMatrix;
use crate::vessel::{CMatrix, CommutativeVessel, OperatorNode, VesselResiduals};

// ---------- output ----------

pub fn rational_value(r: &Rational) -> Value {
    json!([r.numer().to_string(), r.denom().to_string()])
}

pub fn scalar_value<F: ExactField>(c: &F) -> Value {
    Value::Array(
        c.rational_parts()
            .into_iter()
            .flat_map(|r| [r.numer().to_string(), r.denom().to_string()])
            .map(Value::String)
            .collect(),
    )
}

pub fn polynomial_value<F: ExactField>(p: &Polynomial<F>) -> Value {
    json!({
        "field": F::FIELD.tag(),
        "coeffs": p.coeffs().iter().map(scalar_value).collect::<Vec<_>>(),
    })
}

pub fn matrix_value<F: ExactField>(m: &Matrix<F>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(scalar_value).collect()))
            .collect(),
    )
}

pub fn bivariate_value<F: ExactField>(p: &BivariatePolynomial<F>) -> Value {
    let grid: Vec<Value> = p
        .grid()
        .iter()
        .map(|row| Value::Array(row.iter().map(scalar_value).collect()))
        .collect();
    json!({ "field": F::FIELD.tag(), "coeffs": grid })
}

pub fn hankel_value<F: ExactField>(h: &HankelMatrix<F>) -> Value {
    json!({
        "n": h.size(),
        "generator": h.generator().iter().map(scalar_value).collect::<Vec<_>>(),
    })
}

pub fn cmatrix_value(m: &CMatrix) -> Value {
    let part = |f: fn(&Complex64) -> f64| -> Vec<Vec<f64>> {
        (0..m.rows())
            .map(|i| m.row(i).iter().map(f).collect())
            .collect()
    };
    json!({ "re": part(|z| z.re), "im": part(|z| z.im) })
}

pub fn vessel_value(v: &CommutativeVessel) -> Value {
    json!({
        "a1": cmatrix_value(&v.a1),
        "a2": cmatrix_value(&v.a2),
        "phi": cmatrix_value(&v.phi),
        "sigma1": cmatrix_value(&v.sigma1),
        "sigma2": cmatrix_value(&v.sigma2),
        "gamma_in": cmatrix_value(&v.gamma_in),
        "gamma_out": cmatrix_value(&v.gamma_out),
    })
}

pub fn residuals_value(r: &VesselResiduals, tol: f64) -> Value {
    json!({
        "colligation1": r.colligation1,
        "colligation2": r.colligation2,
        "gamma_in": r.gamma_in,
        "gamma_out": r.gamma_out,
        "linkage": r.linkage,
        "commutativity": r.commutativity,
        "max": r.max(),
        "tol": tol,
        "pass": r.within(tol),
    })
}

pub fn intersection_value(p: &IntersectionReport) -> Value {
    let min_index = match p.min_index {
        MinIndex::Finite(i) => json!(i),
        MinIndex::Diverges => json!("diverges"),
    };
    json!({
        "image": [p.point.0.re, p.point.0.im, p.point.1.re, p.point.1.im],
        "real": p.is_real,
        "min_index": min_index,
        "multiplicity": p.multiplicity,
        "full_twists": p.twist_count,
    })
}

pub fn descriptor_value(d: &MonodromyDescriptor) -> Value {
    json!({ "points": d.points.iter().map(intersection_value).collect::<Vec<_>>() })
}

// ---------- input ----------

/// An exact scalar read from either wire form, widened to Q[i].
#[derive(Debug, Clone, PartialEq)]
pub struct WireScalar {
    pub field: FieldKind,
    pub value: GaussianRational,
}

fn parse_int<E: de::Error>(s: &str) -> std::result::Result<BigInt, E> {
    BigInt::from_str(s).map_err(|_| E::custom(format!("invalid integer string {s:?}")))
}

fn parse_ratio<E: de::Error>(num: &str, den: &str) -> std::result::Result<Rational, E> {
    let den = parse_int::<E>(den)?;
    if den.is_zero() {
        return Err(E::custom("zero denominator"));
    }
    Ok(Rational::new(parse_int::<E>(num)?, den))
}

impl<'de> Deserialize<'de> for WireScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = WireScalar;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of 2 or 4 decimal strings")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<WireScalar, A::Error> {
                let mut parts: Vec<String> = Vec::with_capacity(4);
                while let Some(s) = seq.next_element::<String>()? {
                    parts.push(s);
                }
                match parts.as_slice() {
                    [n, d] => Ok(WireScalar {
                        field: FieldKind::Rational,
                        value: GaussianRational::new(parse_ratio(n, d)?, Rational::zero()),
                    }),
                    [rn, rd, in_, id] => Ok(WireScalar {
                        field: FieldKind::Gaussian,
                        value: GaussianRational::new(parse_ratio(rn, rd)?, parse_ratio(in_, id)?),
                    }),
                    _ => Err(de::Error::invalid_length(parts.len(), &self)),
                }
            }
        }
        d.deserialize_seq(V)
    }
}

fn parse_field<E: de::Error>(s: &str) -> std::result::Result<FieldKind, E> {
    match s {
        "Q" => Ok(FieldKind::Rational),
        "Q[i]" => Ok(FieldKind::Gaussian),
        other => Err(E::custom(format!(
            "unknown field {other:?}, expected \"Q\" or \"Q[i]\""
        ))),
    }
}

fn check_entries<E: de::Error>(
    field: FieldKind,
    entries: &[&WireScalar],
) -> std::result::Result<(), E> {
    match entries.iter().find(|c| c.field != field) {
        Some(c) => Err(E::custom(format!(
            "{} scalar inside a {} object",
            c.field.tag(),
            field.tag()
        ))),
        None => Ok(()),
    }
}

/// Polynomial as read from JSON, with its declared field.
#[derive(Debug, Clone, PartialEq)]
pub struct WirePolynomial {
    pub field: FieldKind,
    pub coeffs: Vec<GaussianRational>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolynomial {
    field: String,
    coeffs: Vec<WireScalar>,
}

impl<'de> Deserialize<'de> for WirePolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawPolynomial::deserialize(d)?;
        let field = parse_field(&raw.field)?;
        check_entries(field, &raw.coeffs.iter().collect::<Vec<_>>())?;
        Ok(WirePolynomial {
            field,
            coeffs: raw.coeffs.into_iter().map(|c| c.value).collect(),
        })
    }
}

/// Scalars that can be read out of the widened wire form.
pub trait FromWire: ExactField {
    fn from_wire(field: FieldKind, v: &GaussianRational) -> Result<Self>;
}

impl FromWire for Rational {
    fn from_wire(field: FieldKind, v: &GaussianRational) -> Result<Self> {
        if field != FieldKind::Rational {
            return Err(Error::FieldMismatch {
                left: (field.tag()).into(),
                right: (FieldKind::Rational.tag()).into(),
            });
        }
        Ok(v.re.clone())
    }
}

impl FromWire for GaussianRational {
    fn from_wire(_: FieldKind, v: &GaussianRational) -> Result<Self> {
        Ok(v.clone())
    }
}

impl WirePolynomial {
    pub fn to_poly<F: FromWire>(&self) -> Result<Polynomial<F>> {
        Ok(Polynomial::new(
            self.coeffs
                .iter()
                .map(|c| F::from_wire(self.field, c))
                .collect::<Result<_>>()?,
        ))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WireBivariate {
    pub field: Option<FieldKind>,
    pub coeffs: Vec<Vec<WireScalar>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBivariate {
    #[serde(default)]
    field: Option<String>,
    coeffs: Vec<Vec<WireScalar>>,
}

impl<'de> Deserialize<'de> for WireBivariate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawBivariate::deserialize(d)?;
        let field = raw.field.as_deref().map(parse_field).transpose()?;
        if let Some(f) = field {
            check_entries(f, &raw.coeffs.iter().flatten().collect::<Vec<_>>())?;
        }
        Ok(WireBivariate {
            field,
            coeffs: raw.coeffs,
        })
    }
}

impl WireBivariate {
    pub fn to_bivariate<F: FromWire>(&self) -> Result<BivariatePolynomial<F>> {
        let grid = self
            .coeffs
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| F::from_wire(self.field.unwrap_or(c.field), &c.value))
                    .collect::<Result<Vec<F>>>()
            })
            .collect::<Result<_>>()?;
        Ok(BivariatePolynomial::new(grid))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WireCMatrix {
    pub re: Vec<Vec<f64>>,
    #[serde(default)]
    pub im: Option<Vec<Vec<f64>>>,
}

impl WireCMatrix {
    pub fn to_cmatrix(&self) -> Result<CMatrix> {
        let rows = self.re.len();
        let cols = self.re.first().map_or(0, Vec::len);
        let shape_ok = |g: &Vec<Vec<f64>>| g.len() == rows && g.iter().all(|r| r.len() == cols);
        if !shape_ok(&self.re) || self.im.as_ref().is_some_and(|im| !shape_ok(im)) {
            return Err(Error::Shape(
                "complex matrix rows have unequal lengths".into(),
            ));
        }
        Ok(CMatrix::from_fn(rows, cols, |i, j| {
            Complex64::new(self.re[i][j], self.im.as_ref().map_or(0.0, |im| im[i][j]))
        }))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairInput {
    pub p: WirePolynomial,
    pub q: WirePolynomial,
    #[serde(default)]
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentitiesInput {
    pub p: WirePolynomial,
    pub q: WirePolynomial,
    /// Sample points `[x, y]`; generated deterministically when absent.
    #[serde(default)]
    pub points: Option<Vec<[WireScalar; 2]>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleInput {
    pub p0: WirePolynomial,
    pub p1: WirePolynomial,
    pub p2: WirePolynomial,
    #[serde(default)]
    pub n: Option<usize>,
}

impl TripleInput {
    pub fn fields(&self) -> [FieldKind; 3] {
        [self.p0.field, self.p1.field, self.p2.field]
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapInput {
    pub p0: WireBivariate,
    pub p1: WireBivariate,
    pub p2: WireBivariate,
}

impl MapInput {
    pub fn to_map(&self) -> Result<PlaneRationalMap> {
        PlaneRationalMap::new(
            self.p0.to_bivariate()?,
            self.p1.to_bivariate()?,
            self.p2.to_bivariate()?,
        )
    }
}

pub fn map_value(m: &PlaneRationalMap) -> Value {
    json!({
        "p0": bivariate_value(&m.p0),
        "p1": bivariate_value(&m.p1),
        "p2": bivariate_value(&m.p2),
    })
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeInput {
    pub a: WireCMatrix,
    pub phi: WireCMatrix,
    pub sigma: WireCMatrix,
}

impl NodeInput {
    pub fn to_node(&self) -> Result<OperatorNode> {
        OperatorNode::new(
            self.a.to_cmatrix()?,
            self.phi.to_cmatrix()?,
            self.sigma.to_cmatrix()?,
        )
    }
}

pub fn node_value(c: &OperatorNode) -> Value {
    json!({
        "a": cmatrix_value(&c.a),
        "phi": cmatrix_value(&c.phi),
        "sigma": cmatrix_value(&c.sigma),
    })
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VesselInput {
    pub a1: WireCMatrix,
    pub a2: WireCMatrix,
    pub phi: WireCMatrix,
    pub sigma1: WireCMatrix,
    pub sigma2: WireCMatrix,
    pub gamma_in: WireCMatrix,
    pub gamma_out: WireCMatrix,
}

impl VesselInput {
    pub fn to_vessel(&self) -> Result<CommutativeVessel> {
        Ok(CommutativeVessel {
            a1: self.a1.to_cmatrix()?,
            a2: self.a2.to_cmatrix()?,
            phi: self.phi.to_cmatrix()?,
            sigma1: self.sigma1.to_cmatrix()?,
            sigma2: self.sigma2.to_cmatrix()?,
            gamma_in: self.gamma_in.to_cmatrix()?,
            gamma_out: self.gamma_out.to_cmatrix()?,
        })
    }
}

/// `vessel-check` accepts either a node or a full vessel bundle.
#[derive(Debug, Clone)]
pub enum CheckInput {
    Node(NodeInput),
    Vessel(Box<VesselInput>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCheck {
    a: Option<WireCMatrix>,
    sigma: Option<WireCMatrix>,
    phi: WireCMatrix,
    a1: Option<WireCMatrix>,
    a2: Option<WireCMatrix>,
    sigma1: Option<WireCMatrix>,
    sigma2: Option<WireCMatrix>,
    gamma_in: Option<WireCMatrix>,
    gamma_out: Option<WireCMatrix>,
}

impl<'de> Deserialize<'de> for CheckInput {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RawCheck::deserialize(d)?;
        match r {
            RawCheck { a: Some(a), sigma: Some(sigma), phi, a1: None, a2: None, sigma1: None, sigma2: None, gamma_in: None, gamma_out: None } => {
                Ok(CheckInput::Node(NodeInput { a, phi, sigma }))
            }
            RawCheck {
                a: None,
                sigma: None,
                phi,
                a1: Some(a1),
                a2: Some(a2),
                sigma1: Some(sigma1),
                sigma2: Some(sigma2),
                gamma_in: Some(gamma_in),
                gamma_out: Some(gamma_out),
            } => Ok(CheckInput::Vessel(Box::new(VesselInput { a1, a2, phi, sigma1, sigma2, gamma_in, gamma_out }))),
            _ => Err(de::Error::custom(
                "expected a node {a, phi, sigma} or a vessel {a1, a2, phi, sigma1, sigma2, gamma_in, gamma_out}",
            )),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuildInput {
    pub node: NodeInput,
    pub triple: TripleInput,
    #[serde(default)]
    pub phi_prime: Option<WireCMatrix>,
}

/// Parses JSON text; syntax and schema errors keep serde's line/column.
pub fn parse<T: for<'de> Deserialize<'de>>(
    text: &str,
) -> std::result::Result<T, serde_json::Error> {
    serde_json::from_str(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{gauss, int, rat};

    #[test]
    fn scalar_round_trip() {
        let v = scalar_value(&rat(-3, 4));
        assert_eq!(v, json!(["-3", "4"]));
        let s: WireScalar = serde_json::from_value(v).unwrap();
        assert_eq!(s.value.re, rat(-3, 4));
        let g = gauss(int(1), rat(1, 2));
        let back: WireScalar = serde_json::from_value(scalar_value(&g)).unwrap();
        assert_eq!((back.field, back.value), (FieldKind::Gaussian, g));
    }

    #[test]
    fn polynomial_round_trip_and_field_checks() {
        let p = Polynomial::<Rational>::from_i64(&[-1, 0, 1]);
        let text = polynomial_value(&p).to_string();
        assert_eq!(
            text,
            r#"{"coeffs":[["-1","1"],["0","1"],["1","1"]],"field":"Q"}"#
        );
        let w: WirePolynomial = parse(&text).unwrap();
        assert_eq!(w.to_poly::<Rational>().unwrap(), p);
        assert_eq!(
            w.to_poly::<GaussianRational>().unwrap(),
            p.map(|c| gauss(c.clone(), int(0)))
        );

        let g: WirePolynomial =
            parse(r#"{"field":"Q[i]","coeffs":[["0","1","-1","1"],["1","1","0","1"]]}"#).unwrap();
        assert!(matches!(
            g.to_poly::<Rational>(),
            Err(Error::FieldMismatch { .. })
        ));
        assert!(parse::<WirePolynomial>(r#"{"field":"Q","coeffs":[["0","1","-1","1"]]}"#).is_err());
    }

    #[test]
    fn errors_carry_location() {
        let e =
            parse::<WirePolynomial>("{\n  \"field\": \"Q\",\n  \"coeffs\": [[\"1\", \"0\"]]\n}")
                .unwrap_err();
        assert_eq!(e.line(), 3);
        assert!(e.to_string().contains("zero denominator"));
        let e = parse::<WirePolynomial>("{\"field\": \"Q\", \"coeffs\": [[\"1\"").unwrap_err();
        assert!(e.is_eof());
        let e = parse::<PairInput>(
            r#"{"p":{"field":"Q","coeffs":[]},"q":{"field":"Q","coeffs":[]},"r":1}"#,
        )
        .unwrap_err();
        assert!(e.to_string().contains("unknown field"));
    }

    #[test]
    fn bivariate_and_matrix_round_trip() {
        let b = BivariatePolynomial::<Rational>::from_i64(&[&[0, 1], &[0], &[-1]]);
        let w: WireBivariate = serde_json::from_value(bivariate_value(&b)).unwrap();
        assert_eq!(w.to_bivariate::<Rational>().unwrap(), b);
        let m = CMatrix::from_fn(2, 3, |i, j| Complex64::new(i as f64, j as f64 * 0.5));
        let w: WireCMatrix = serde_json::from_value(cmatrix_value(&m)).unwrap();
        assert_eq!(w.to_cmatrix().unwrap(), m);
        let ragged = WireCMatrix {
            re: vec![vec![1.0], vec![1.0, 2.0]],
            im: None,
        };
        assert!(matches!(ragged.to_cmatrix(), Err(Error::Shape(_))));
    }

    #[test]
    fn check_input_variants() {
        let one = json!({"re": [[1.0]]});
        let node = json!({"a": one, "phi": one, "sigma": one});
        assert!(matches!(
            serde_json::from_value::<CheckInput>(node).unwrap(),
            CheckInput::Node(_)
        ));
        let partial = json!({"a1": one, "phi": one});
        assert!(serde_json::from_value::<CheckInput>(partial).is_err());
    }
}
