//! Wire formats for the values that appear inside payloads.

use graded_cotangent::algebroid::{LieAlgebroidData, Pairing};
use graded_cotangent::catalog;
use graded_cotangent::exterior::Wedge;
use graded_cotangent::kernel::{parse_rational, BasePoly, GradedPoly, Rational};
use graded_cotangent::ruth_lk::{ConnectionData, RepUTHData};
use graded_cotangent::symplectic::CotangentChart;
use serde::Deserialize;

use crate::error::{schema, CliError, Result};

/// An integer, or a string holding a rational (`"3/4"`) or a polynomial in
/// the base coordinates (`"x1^2 - 1/2*x2"`).
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    pub fn rational(&self) -> Result<Rational> {
        match self {
            Scalar::Int(i) => Ok(Rational::from_integer((*i).into())),
            Scalar::Text(s) => Ok(parse_rational(s.trim())?),
        }
    }

    pub fn poly(&self) -> Result<BasePoly> {
        match self {
            Scalar::Int(i) => Ok(BasePoly::int(*i)),
            Scalar::Text(s) => Ok(BasePoly::parse(s)?),
        }
    }
}

pub fn rationals(v: &[Scalar]) -> Result<Vec<Rational>> {
    v.iter().map(Scalar::rational).collect()
}

pub fn rational_rows(rows: &[Vec<Scalar>]) -> Result<Vec<Vec<Rational>>> {
    rows.iter().map(|r| rationals(r)).collect()
}

pub fn polys(v: &[Scalar]) -> Result<Vec<BasePoly>> {
    v.iter().map(Scalar::poly).collect()
}

pub fn poly_rows(rows: &[Vec<Scalar>]) -> Result<Vec<Vec<BasePoly>>> {
    rows.iter().map(|r| polys(r)).collect()
}

pub fn poly_table3(t: &[Vec<Vec<Scalar>>]) -> Result<Vec<Vec<Vec<BasePoly>>>> {
    t.iter().map(|r| poly_rows(r)).collect()
}

/// A form on a frame of rank `n`, written in `alpha1..alphan`.
pub fn form(expr: Option<&str>, n: usize) -> Result<Wedge> {
    match expr {
        Some(s) => Ok(Wedge::parse(s, n, "alpha")?),
        None => Ok(Wedge::zero(n)),
    }
}

/// A multivector written in the frame `e1..en`.
pub fn multivector(expr: &str, n: usize) -> Result<Wedge> {
    Ok(Wedge::parse(expr, n, "e")?)
}

/// A function on the chart, in its generator names.
pub fn chart_poly(expr: &str, chart: &CotangentChart) -> Result<GradedPoly> {
    Ok(chart.parse(expr)?)
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketDto {
    /// 1-based frame indices `[a, b]`.
    pub pair: [usize; 2],
    /// Components of `[e_a, e_b]`.
    pub value: Vec<Scalar>,
}

/// Either a catalog name or explicit anchor and brackets; brackets not
/// listed vanish.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebroidDto {
    pub catalog: Option<String>,
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub anchor: Option<Vec<Vec<Scalar>>>,
    #[serde(default)]
    pub brackets: Vec<BracketDto>,
}

impl AlgebroidDto {
    pub fn build(&self) -> Result<LieAlgebroidData> {
        if let Some(name) = &self.catalog {
            if self.m.is_some()
                || self.n.is_some()
                || self.anchor.is_some()
                || !self.brackets.is_empty()
            {
                return Err(schema("algebroid: `catalog` excludes explicit data"));
            }
            return catalog::by_name(name)
                .ok_or_else(|| schema(format!("algebroid: unknown catalog entry `{name}`")));
        }
        let n = self
            .n
            .ok_or_else(|| schema("algebroid: needs `catalog` or `n`"))?;
        let m = self.m.unwrap_or(0);
        let anchor = match &self.anchor {
            Some(rows) => poly_rows(rows)?,
            None => vec![vec![BasePoly::zero(); m]; n],
        };
        let mut brackets = Vec::new();
        for b in &self.brackets {
            let [a, c] = b.pair;
            if a == 0 || c == 0 {
                return Err(schema("algebroid: bracket indices are 1-based"));
            }
            brackets.push(((a - 1, c - 1), polys(&b.value)?));
        }
        Ok(LieAlgebroidData::from_brackets(m, n, anchor, &brackets)?)
    }
}

pub fn connection(
    gamma: Option<&Vec<Vec<Vec<Scalar>>>>,
    alg: &LieAlgebroidData,
) -> Result<ConnectionData> {
    match gamma {
        Some(g) => Ok(ConnectionData::new(alg.m(), alg.n(), poly_table3(g)?)?),
        None => Ok(ConnectionData::trivial(alg.m(), alg.n())),
    }
}

pub fn pairing(rows: &[Vec<Scalar>]) -> Result<Pairing> {
    Ok(Pairing::new(poly_rows(rows)?)?)
}

/// A representation up to homotopy: a construction name or explicit tables.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RepDto {
    Named(String),
    Explicit(ExplicitRep),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitRep {
    #[serde(default)]
    pub del: Vec<Vec<Scalar>>,
    pub nabla0: Vec<Vec<Vec<Scalar>>>,
    pub nabla1: Vec<Vec<Vec<Scalar>>>,
    pub k: Vec<Vec<Vec<Vec<Scalar>>>>,
}

impl RepDto {
    pub fn build(&self, alg: &LieAlgebroidData, nabla: &ConnectionData) -> Result<RepUTHData> {
        use graded_cotangent::ruth_lk::{adjoint_rep, coadjoint_rep};
        match self {
            RepDto::Named(s) if s == "adjoint" => Ok(adjoint_rep(alg, nabla)?),
            RepDto::Named(s) if s == "coadjoint" => Ok(coadjoint_rep(alg, nabla)?),
            RepDto::Named(s) => Err(schema(format!(
                "rep: expected `adjoint`, `coadjoint` or tables, got `{s}`"
            ))),
            RepDto::Explicit(e) => {
                let k = e.k.iter().map(|r| poly_table3(r)).collect::<Result<_>>()?;
                Ok(RepUTHData::new(
                    alg.m(),
                    alg.n(),
                    poly_rows(&e.del)?,
                    poly_table3(&e.nabla0)?,
                    poly_table3(&e.nabla1)?,
                    k,
                )?)
            }
        }
    }
}

/// Deserializes a payload fragment, reporting violations as schema errors.
pub fn decode<T: serde::de::DeserializeOwned>(value: serde_json::Value, what: &str) -> Result<T> {
    serde_json::from_value(value).map_err(|e| CliError::Schema(format!("{what}: {e}")))
}
