//! Linear constraints on the Chern ratios `c_a / c_1^n` and exact LP bounds
//! on each ratio.

pub mod simplex;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chern::{render_coeff, ChernPoly, MPoly};
use crate::error::{Error, Result};
use crate::inequality::{generate_with, specialize_raw, GenerateOptions, Inequality, MParam};
use crate::partitions::{enumerate_partitions, Partition};
use crate::todd::chi_structure_sheaf_functional;

pub use simplex::SimplexOutcome;

type Q = BigRational;

/// Sign convention for `c_1`: general type has `K_X` ample, Fano has `-K_X`
/// ample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    GeneralType,
    Fano,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::GeneralType => "general-type",
            Mode::Fano => "fano",
        }
    }

    /// General type needs `m >= 1`, Fano needs `m <= -1`.
    pub fn check(self, m: i64) -> Result<()> {
        if m == 0 {
            return Err(Error::ZeroM);
        }
        let ok = match self {
            Mode::GeneralType => m >= 1,
            Mode::Fano => m <= -1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ModeMismatch {
                mode: self.name(),
                m,
            })
        }
    }

    /// Sign of `c_1^n` on an `n`-fold.
    pub fn c1_top_sign(self, n: u32) -> i64 {
        match self {
            Mode::GeneralType if n % 2 == 1 => -1,
            _ => 1,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "general-type" => Ok(Mode::GeneralType),
            "fano" => Ok(Mode::Fano),
            other => Err(Error::Domain(format!("unknown mode {other:?}"))),
        }
    }
}

/// Ratio coordinates for dimension `n`: partitions of `n` other than `(1^n)`,
/// ascending in alphabet order.
pub fn coordinates(n: u32) -> Vec<Partition> {
    let top = Partition::column(n);
    let mut parts: Vec<Partition> = enumerate_partitions(n)
        .into_iter()
        .filter(|p| *p != top)
        .collect();
    parts.sort();
    parts
}

/// A point in ratio space, aligned with [`coordinates`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioVector {
    n: u32,
    values: Vec<Q>,
}

impl RatioVector {
    pub fn new(n: u32, values: Vec<Q>) -> Result<Self> {
        let want = coordinates(n).len();
        if values.len() != want {
            return Err(Error::Domain(format!(
                "ratio vector for n = {n} needs {want} coordinates, got {}",
                values.len()
            )));
        }
        Ok(RatioVector { n, values })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn get(&self, p: &Partition) -> Option<&Q> {
        coordinates(self.n)
            .iter()
            .position(|c| c == p)
            .map(|i| &self.values[i])
    }
}

/// `sum_a coeff_a r_a + constant >= 0`, where `r_a = c_a / c_1^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioInequality {
    n: u32,
    coeffs: Vec<Q>,
    constant: Q,
}

impl RatioInequality {
    pub fn new(n: u32, coeffs: Vec<Q>, constant: Q) -> Result<Self> {
        if coeffs.len() != coordinates(n).len() {
            return Err(Error::Domain(
                "coefficient count does not match coordinates".into(),
            ));
        }
        if coeffs.iter().all(Zero::is_zero) && constant.is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(RatioInequality {
            n,
            coeffs,
            constant,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn constant(&self) -> &Q {
        &self.constant
    }

    /// Only a constant, with no coordinate dependence.
    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn evaluate(&self, point: &RatioVector) -> Q {
        self.coeffs
            .iter()
            .zip(point.values())
            .fold(self.constant.clone(), |acc, (a, t)| acc + a * t)
    }

    pub fn holds_at(&self, point: &RatioVector) -> bool {
        !self.evaluate(point).is_negative()
    }

    /// Positive rescaling making the first nonzero entry `±1`.
    fn canonical(&self) -> Vec<Q> {
        let mut all = self.coeffs.clone();
        all.push(self.constant.clone());
        let pivot = all
            .iter()
            .find(|v| !v.is_zero())
            .map(|v| v.abs())
            .unwrap_or_else(Q::one);
        all.iter().map(|v| v / &pivot).collect()
    }

    pub fn to_text(&self) -> String {
        let coords = coordinates(self.n);
        let mut out = String::new();
        for (p, a) in coords.iter().zip(&self.coeffs) {
            if a.is_zero() {
                continue;
            }
            push_term(&mut out, a, &format!("r{p}"));
        }
        if !self.constant.is_zero() || out.is_empty() {
            push_term(&mut out, &self.constant, "");
        }
        format!("{out} >= 0")
    }
}

fn push_term(out: &mut String, a: &Q, symbol: &str) {
    let (neg, body) = render_coeff(&MPoly::constant(a.clone()), symbol.is_empty());
    if neg {
        out.push_str(if out.is_empty() { "-" } else { " - " });
    } else if !out.is_empty() {
        out.push_str(" + ");
    }
    out.push_str(&body);
    out.push_str(symbol);
}

impl fmt::Display for RatioInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Serialize, Deserialize)]
struct RatioTermJson {
    partition: Partition,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct RatioInequalityJson {
    n: u32,
    coeffs: Vec<RatioTermJson>,
    constant: String,
}

impl Serialize for RatioInequality {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RatioInequalityJson {
            n: self.n,
            coeffs: coordinates(self.n)
                .into_iter()
                .zip(&self.coeffs)
                .filter(|(_, a)| !a.is_zero())
                .map(|(partition, a)| RatioTermJson {
                    partition,
                    coeff: a.to_string(),
                })
                .collect(),
            constant: self.constant.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatioInequality {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RatioInequalityJson::deserialize(d)?;
        let coords = coordinates(raw.n);
        let mut coeffs = vec![Q::zero(); coords.len()];
        for term in raw.coeffs {
            let i = coords
                .iter()
                .position(|c| *c == term.partition)
                .ok_or_else(|| {
                    D::Error::custom(format!("{} is not a coordinate", term.partition))
                })?;
            coeffs[i] = term.coeff.parse().map_err(D::Error::custom)?;
        }
        let constant = raw.constant.parse().map_err(D::Error::custom)?;
        RatioInequality::new(raw.n, coeffs, constant).map_err(D::Error::custom)
    }
}

fn sign_q(s: i64) -> Q {
    Q::from_integer(BigInt::from(s))
}

/// Reads a degree-`n` polynomial with constant coefficients as a linear
/// functional `sum_a coeff_a r_a + constant` after division by `c_1^n`.
fn linear_parts(n: u32, poly: &ChernPoly) -> Result<(Vec<Q>, Q)> {
    let coords = coordinates(n);
    let top = Partition::column(n);
    let mut coeffs = vec![Q::zero(); coords.len()];
    let mut constant = Q::zero();
    for (idx, c) in poly.terms() {
        if !c.is_constant() {
            return Err(Error::Domain("coefficients still depend on m".into()));
        }
        let v = c.constant_term();
        if *idx == top {
            constant = v;
        } else {
            let i = coords
                .iter()
                .position(|p| p == idx)
                .ok_or_else(|| Error::Domain(format!("{idx} is not a partition of {n}")))?;
            coeffs[i] = v;
        }
    }
    Ok((coeffs, constant))
}

/// Divides `lhs >= 0` by `c_1^n`, whose sign is fixed by the mode, and flips
/// the relation when that sign is negative.
pub fn normalize_to_ratio(ineq: &Inequality, m: i64, mode: Mode) -> Result<RatioInequality> {
    mode.check(m)?;
    let fixed = match ineq.m() {
        MParam::Symbolic => specialize_raw(ineq, m)?,
        MParam::Value(v) if v == m => ineq.clone(),
        MParam::Value(v) => {
            return Err(Error::Domain(format!(
                "inequality was specialized at m = {v}, not {m}"
            )))
        }
    };
    if fixed.is_trivial() {
        return Err(Error::Degenerate);
    }
    let n = fixed.n();
    let (coeffs, constant) = linear_parts(n, fixed.lhs())?;
    let s = sign_q(mode.c1_top_sign(n));
    RatioInequality::new(
        n,
        coeffs.into_iter().map(|a| a * &s).collect(),
        constant * &s,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct PolytopeOptions {
    pub generate: GenerateOptions,
}

/// H-representation for `(n, m, mode)` with every family included.
pub fn build_polytope(n: u32, m: i64, mode: Mode) -> Result<Vec<RatioInequality>> {
    build_polytope_with(n, m, mode, PolytopeOptions::default())
}

/// Normalizes every generated inequality, drops degenerate and tautological
/// rows, and keeps the first of any rows equal up to positive scaling.
pub fn build_polytope_with(
    n: u32,
    m: i64,
    mode: Mode,
    opts: PolytopeOptions,
) -> Result<Vec<RatioInequality>> {
    mode.check(m)?;
    let mut seen: HashSet<Vec<Q>> = HashSet::new();
    let mut out = Vec::new();
    for ineq in generate_with(n, opts.generate)? {
        let row = match normalize_to_ratio(&ineq, m, mode) {
            Ok(row) => row,
            Err(Error::Degenerate) => continue,
            Err(e) => return Err(e),
        };
        if row.is_constant() && !row.constant().is_negative() {
            continue;
        }
        if seen.insert(row.canonical()) {
            out.push(row);
        }
    }
    Ok(out)
}

/// A linear functional `sum_a coeff_a r_a + constant` on ratio space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional {
    n: u32,
    coeffs: Vec<Q>,
    constant: Q,
}

impl Functional {
    pub fn new(n: u32, coeffs: Vec<Q>, constant: Q) -> Result<Self> {
        if coeffs.len() != coordinates(n).len() {
            return Err(Error::Domain(
                "coefficient count does not match coordinates".into(),
            ));
        }
        Ok(Functional {
            n,
            coeffs,
            constant,
        })
    }

    /// The ratio coordinate `r_p`.
    pub fn coordinate(n: u32, p: &Partition) -> Result<Self> {
        let coords = coordinates(n);
        let i = coords
            .iter()
            .position(|c| c == p)
            .ok_or_else(|| Error::Domain(format!("{p} is not a ratio coordinate for n = {n}")))?;
        let mut coeffs = vec![Q::zero(); coords.len()];
        coeffs[i] = Q::one();
        Ok(Functional {
            n,
            coeffs,
            constant: Q::zero(),
        })
    }

    /// `poly / c_1^n` for an m-free degree-`n` polynomial.
    pub fn from_poly(n: u32, poly: &ChernPoly) -> Result<Self> {
        let (coeffs, constant) = linear_parts(n, poly)?;
        Ok(Functional {
            n,
            coeffs,
            constant,
        })
    }

    pub fn scale(&self, k: &Q) -> Self {
        Functional {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
            constant: &self.constant * k,
        }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn constant(&self) -> &Q {
        &self.constant
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Min,
    Max,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Optimum of a functional over the polytope, with the certificate from the
/// underlying maximization of `±objective`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpResult {
    pub direction: Direction,
    pub value: Option<Q>,
    pub outcome: SimplexOutcome,
}

impl LpResult {
    pub fn status(&self) -> LpStatus {
        match self.outcome {
            SimplexOutcome::Optimal { .. } => LpStatus::Optimal,
            SimplexOutcome::Infeasible { .. } => LpStatus::Infeasible,
            SimplexOutcome::Unbounded { .. } => LpStatus::Unbounded,
        }
    }

    /// Direction along which the objective improves without bound, in the
    /// objective's own sense.
    pub fn ray(&self) -> Option<&[Q]> {
        match &self.outcome {
            SimplexOutcome::Unbounded { ray, .. } => Some(ray),
            _ => None,
        }
    }
}

fn system(constraints: &[RatioInequality]) -> (Vec<Vec<Q>>, Vec<Q>) {
    let a = constraints.iter().map(|r| r.coeffs.clone()).collect();
    let b = constraints.iter().map(|r| r.constant.clone()).collect();
    (a, b)
}

/// Exact LP over the constraint system. Every certificate is re-checked
/// before it is returned.
pub fn lp_optimize(
    constraints: &[RatioInequality],
    objective: &Functional,
    direction: Direction,
) -> Result<LpResult> {
    let Some(first) = constraints.first() else {
        return Err(Error::EmptySystem);
    };
    let n = first.n;
    if constraints.iter().any(|r| r.n != n) || objective.n != n {
        return Err(Error::Domain(
            "constraints and objective mix dimensions".into(),
        ));
    }
    let (a, b) = system(constraints);
    let sign = match direction {
        Direction::Max => Q::one(),
        Direction::Min => -Q::one(),
    };
    let c: Vec<Q> = objective.coeffs.iter().map(|v| v * &sign).collect();
    let outcome = simplex::maximize(&a, &b, &c);
    if !simplex::verify(&a, &b, &c, &outcome) {
        return Err(Error::Consistency(
            "simplex certificate failed to verify".into(),
        ));
    }
    let value = match &outcome {
        SimplexOutcome::Optimal { value, .. } => Some(value * &sign + &objective.constant),
        _ => None,
    };
    Ok(LpResult {
        direction,
        value,
        outcome,
    })
}

/// LP interval of one ratio coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordBounds {
    pub partition: Partition,
    pub min: LpResult,
    pub max: LpResult,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsCertificate {
    pub n: u32,
    pub m: i64,
    pub mode: Mode,
    pub coords: Vec<CoordBounds>,
}

impl BoundsCertificate {
    pub fn bounded(&self) -> bool {
        self.coords
            .iter()
            .all(|c| c.min.status() == LpStatus::Optimal && c.max.status() == LpStatus::Optimal)
    }

    pub fn interval(&self, p: &Partition) -> Option<(Option<&Q>, Option<&Q>)> {
        self.coords
            .iter()
            .find(|c| c.partition == *p)
            .map(|c| (c.min.value.as_ref(), c.max.value.as_ref()))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("n = {}, m = {}, mode = {}\n", self.n, self.m, self.mode);
        let show = |r: &LpResult| match (&r.value, r.status()) {
            (Some(v), _) => v.to_string(),
            (None, LpStatus::Unbounded) => match r.direction {
                Direction::Min => "-inf".into(),
                Direction::Max => "+inf".into(),
            },
            (None, _) => "infeasible".into(),
        };
        for c in &self.coords {
            out.push_str(&format!(
                "r{:<12} [{}, {}]\n",
                c.partition.to_string(),
                show(&c.min),
                show(&c.max)
            ));
        }
        out.push_str(if self.bounded() {
            "bounded\n"
        } else {
            "unbounded\n"
        });
        out
    }
}

#[derive(Serialize, Deserialize)]
struct CoordJson {
    partition: Partition,
    min: Option<String>,
    max: Option<String>,
    min_status: LpStatus,
    max_status: LpStatus,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    min_ray: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    max_ray: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    n: u32,
    m: i64,
    mode: Mode,
    coords: Vec<CoordJson>,
    bounded: bool,
}

fn strings(v: &[Q]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

impl Serialize for BoundsCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CertificateJson {
            n: self.n,
            m: self.m,
            mode: self.mode,
            coords: self
                .coords
                .iter()
                .map(|c| CoordJson {
                    partition: c.partition.clone(),
                    min: c.min.value.as_ref().map(ToString::to_string),
                    max: c.max.value.as_ref().map(ToString::to_string),
                    min_status: c.min.status(),
                    max_status: c.max.status(),
                    min_ray: c.min.ray().map(strings),
                    max_ray: c.max.ray().map(strings),
                })
                .collect(),
            bounded: self.bounded(),
        }
        .serialize(s)
    }
}

/// Minimizes and maximizes every ratio coordinate.
pub fn boundedness_certificate(n: u32, m: i64, mode: Mode) -> Result<BoundsCertificate> {
    let constraints = build_polytope(n, m, mode)?;
    certificate_for(n, m, mode, &constraints)
}

pub fn certificate_for(
    n: u32,
    m: i64,
    mode: Mode,
    constraints: &[RatioInequality],
) -> Result<BoundsCertificate> {
    let coords = coordinates(n)
        .par_iter()
        .map(|p| {
            let f = Functional::coordinate(n, p)?;
            Ok(CoordBounds {
                partition: p.clone(),
                min: lp_optimize(constraints, &f, Direction::Min)?,
                max: lp_optimize(constraints, &f, Direction::Max)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundsCertificate { n, m, mode, coords })
}

/// An LP endpoint: a finite value or the reason there is none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extent {
    Finite(Q),
    Unbounded,
    Infeasible,
}

impl Extent {
    fn from_result(r: &LpResult) -> Self {
        match (&r.value, r.status()) {
            (Some(v), _) => Extent::Finite(v.clone()),
            (None, LpStatus::Unbounded) => Extent::Unbounded,
            (None, _) => Extent::Infeasible,
        }
    }

    pub fn value(&self) -> Option<&Q> {
        match self {
            Extent::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Extent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extent::Finite(v) => write!(f, "{v}"),
            Extent::Unbounded => f.write_str("unbounded"),
            Extent::Infeasible => f.write_str("infeasible"),
        }
    }
}

/// `d_1 K^n <= χ_top <= d_2 K^n` and `d_3 K^n <= χ(O_X) <= d_4 K^n`, with
/// `K^n = (-1)^n c_1^n` in both modes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiBounds {
    pub d1: Extent,
    pub d2: Extent,
    pub d3: Extent,
    pub d4: Extent,
}

pub fn chi_bounds(n: u32, m: i64, mode: Mode) -> Result<ChiBounds> {
    let constraints = build_polytope(n, m, mode)?;
    chi_bounds_for(n, &constraints)
}

pub fn chi_bounds_for(n: u32, constraints: &[RatioInequality]) -> Result<ChiBounds> {
    let to_k = sign_q(if n % 2 == 1 { -1 } else { 1 });
    let top = Functional::coordinate(n, &Partition::row(n))?.scale(&to_k);
    let todd = Functional::from_poly(n, &chi_structure_sheaf_functional(n)?)?.scale(&to_k);
    let ext = |f: &Functional, d| lp_optimize(constraints, f, d).map(|r| Extent::from_result(&r));
    Ok(ChiBounds {
        d1: ext(&top, Direction::Min)?,
        d2: ext(&top, Direction::Max)?,
        d3: ext(&todd, Direction::Min)?,
        d4: ext(&todd, Direction::Max)?,
    })
}
