//! Chern-number inequalities obtained by pulling effective Schubert classes
//! back along the Gauss map `γ: X -> G(N+1, n+1)`.
//!
//! Four families are produced for partitions `a`, `b` of `n`:
//!
//! * effective: `0 <= (-1)^n c_a(γ^*S)`;
//! * upper: `(-1)^n c_a(γ^*S) <= (-1)^n c_1(γ^*S)^n`;
//! * schubert: `γ^* σ_a >= 0`, with `σ_a` expanded through Giambelli's
//!   determinant and the `σ_k -> c_•S` conversion;
//! * comparison: `(-1)^n (c_a - c_b)(γ^*S) >= 0` whenever the Schubert
//!   expansion of `(-1)^n (c_a S - c_b S)` is nonnegative.
//!
//! Every left-hand side is a degree-`n` polynomial in `c_1, ..., c_n` of `X`
//! with coefficients in `Z[m]`, asserted `>= 0`.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::chern::{
    chern_gauss, chern_s_to_sigma, giambelli_chern_s, render_coeff, schubert_to_chern_s, ChernPoly,
    ChernVars, MPoly,
};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition};
use crate::schubert::{is_effective, SchubertExpr};

/// Which effective class certified an inequality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Provenance {
    #[serde(rename = "effective")]
    EffectiveClass { a: Partition },
    #[serde(rename = "upper")]
    UpperBound { a: Partition },
    #[serde(rename = "schubert")]
    SchubertClass { a: Partition },
    #[serde(rename = "comparison")]
    MonomialComparison { a: Partition, b: Partition },
}

/// The very-ample multiple: kept symbolic or fixed to an integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MParam {
    #[default]
    Symbolic,
    Value(i64),
}

impl fmt::Display for MParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MParam::Symbolic => f.write_str("symbolic"),
            MParam::Value(v) => write!(f, "{v}"),
        }
    }
}

impl std::str::FromStr for MParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "symbolic" {
            return Ok(MParam::Symbolic);
        }
        s.parse::<i64>()
            .map(MParam::Value)
            .map_err(|_| Error::Domain(format!("m must be an integer or \"symbolic\", got {s:?}")))
    }
}

impl Serialize for MParam {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MParam::Symbolic => serializer.serialize_str("symbolic"),
            MParam::Value(v) => serializer.serialize_i64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for MParam {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(v) => Ok(MParam::Value(v)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// `lhs >= 0`, where the global sign `(-1)^n` has already been folded into
/// `lhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    n: u32,
    m: MParam,
    lhs: ChernPoly,
    provenance: Provenance,
}

impl Inequality {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> MParam {
        self.m
    }

    pub fn lhs(&self) -> &ChernPoly {
        &self.lhs
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs.is_zero()
    }

    /// Human-readable statement, solved for the alphabet-largest monomial,
    /// e.g. `c_2 \le (6m^2+4m+1)c_1^2`.
    pub fn to_latex(&self) -> String {
        self.render("\\ge", "\\le")
    }

    pub fn to_text(&self) -> String {
        self.render(">=", "<=")
    }

    fn render(&self, ge: &str, le: &str) -> String {
        let Some((pivot, k)) = self.lhs.terms().next_back() else {
            return format!("0 {ge} 0");
        };
        let mut rest = self.lhs.clone();
        rest = &rest - &ChernPoly::monomial(ChernVars::Tangent, pivot.clone(), k.clone());
        let (neg, body) = render_coeff(k, pivot.is_empty());
        let head = format!("{body}{}", self.lhs.render_monomial(pivot));
        if neg {
            // -|k| pivot + rest >= 0  <=>  |k| pivot <= rest
            format!("{head} {le} {}", rest.render())
        } else {
            format!("{head} {ge} {}", (-&rest).render())
        }
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Serialize, Deserialize)]
struct InequalityJson {
    n: u32,
    m: MParam,
    relation: String,
    provenance: Provenance,
    terms: serde_json::Value,
}

impl Serialize for Inequality {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::Error as _;
        let poly = serde_json::to_value(&self.lhs).map_err(S::Error::custom)?;
        InequalityJson {
            n: self.n,
            m: self.m,
            relation: ">=0".into(),
            provenance: self.provenance.clone(),
            terms: poly["terms"].clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Inequality {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = InequalityJson::deserialize(deserializer)?;
        if raw.relation != ">=0" {
            return Err(D::Error::custom(format!(
                "unsupported relation {:?}",
                raw.relation
            )));
        }
        let poly = serde_json::json!({ "degree": raw.n, "terms": raw.terms });
        let lhs: ChernPoly = serde_json::from_value(poly).map_err(D::Error::custom)?;
        Ok(Inequality {
            n: raw.n,
            m: raw.m,
            lhs,
            provenance: raw.provenance,
        })
    }
}

/// `c_0(γ^*S), ..., c_n(γ^*S)` for one dimension.
#[derive(Clone, Debug)]
pub struct GaussClasses {
    n: u32,
    classes: Vec<ChernPoly>,
}

impl GaussClasses {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("dimension must be positive".into()));
        }
        let classes = (0..=n).map(|p| chern_gauss(n, p)).collect::<Result<_>>()?;
        Ok(GaussClasses { n, classes })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `c_p(γ^*S)`; zero above the rank `n + 1` is never requested.
    pub fn class(&self, p: u32) -> ChernPoly {
        self.classes[p as usize].clone()
    }

    /// `c_a(γ^*S) = prod_i c_{a_i}(γ^*S)`.
    pub fn monomial(&self, a: &Partition) -> ChernPoly {
        a.parts()
            .iter()
            .fold(ChernPoly::one(ChernVars::Tangent), |acc, &p| {
                &acc * &self.classes[p as usize]
            })
    }

    /// Pulls back a polynomial in the `c_i S` via `c_i S -> c_i(γ^*S)`.
    pub fn pull_back(&self, expr: &ChernPoly) -> ChernPoly {
        assert_eq!(expr.vars(), ChernVars::Subbundle);
        expr.substitute(ChernVars::Tangent, |i| self.classes[i as usize].clone())
    }
}

fn sign_n(n: u32, p: ChernPoly) -> ChernPoly {
    if n % 2 == 1 {
        -&p
    } else {
        p
    }
}

fn check_weight(a: &Partition, n: u32) -> Result<()> {
    if a.weight() != n {
        return Err(Error::WeightMismatch {
            expected: n,
            actual: a.weight(),
        });
    }
    Ok(())
}

/// Left-hand side of the effective bound through Giambelli: each
/// `σ_{1^k} = (-1)^k c_k S` is expanded as a determinant in special classes,
/// converted to `c_•S`, multiplied out and pulled back.
pub fn effective_lhs_giambelli(a: &Partition, gauss: &GaussClasses) -> ChernPoly {
    let in_s = a
        .parts()
        .iter()
        .fold(ChernPoly::one(ChernVars::Subbundle), |acc, &k| {
            &acc * &giambelli_chern_s(&Partition::column(k))
        });
    gauss.pull_back(&in_s)
}

fn effective_with(a: &Partition, gauss: &GaussClasses) -> Result<Inequality> {
    let n = gauss.n();
    check_weight(a, n)?;
    let direct = sign_n(n, gauss.monomial(a));
    let routed = effective_lhs_giambelli(a, gauss);
    if direct != routed {
        return Err(Error::Consistency(format!(
            "effective bound for {a}: product route {direct} != Giambelli route {routed}"
        )));
    }
    Ok(Inequality {
        n,
        m: MParam::Symbolic,
        lhs: direct,
        provenance: Provenance::EffectiveClass { a: a.clone() },
    })
}

/// `(-1)^n c_a(γ^*S) >= 0`.
pub fn effective_inequality(a: &Partition, n: u32) -> Result<Inequality> {
    effective_with(a, &GaussClasses::new(n)?)
}

fn upper_with(a: &Partition, gauss: &GaussClasses) -> Result<Inequality> {
    let n = gauss.n();
    check_weight(a, n)?;
    let top = ChernPoly::monomial(
        ChernVars::Tangent,
        Partition::column(n),
        MPoly::from_ints(&[1, n as i64 + 1]).pow(n),
    );
    let lhs = sign_n(n, &top - &gauss.monomial(a));
    Ok(Inequality {
        n,
        m: MParam::Symbolic,
        lhs,
        provenance: Provenance::UpperBound { a: a.clone() },
    })
}

/// `(-1)^n [((n+1)m+1)^n c_1^n - c_a(γ^*S)] >= 0`.
pub fn upper_inequality(a: &Partition, n: u32) -> Result<Inequality> {
    upper_with(a, &GaussClasses::new(n)?)
}

fn schubert_with(a: &Partition, gauss: &GaussClasses) -> Result<Inequality> {
    let n = gauss.n();
    check_weight(a, n)?;
    let det = giambelli_chern_s(a);
    let peeled = schubert_to_chern_s(&SchubertExpr::basis(a.clone()))?;
    if det != peeled {
        return Err(Error::Consistency(format!(
            "σ_{a}: determinant route {det} != elimination route {peeled}"
        )));
    }
    Ok(Inequality {
        n,
        m: MParam::Symbolic,
        lhs: gauss.pull_back(&det),
        provenance: Provenance::SchubertClass { a: a.clone() },
    })
}

/// `γ^* σ_a >= 0`: Giambelli, then `σ_k -> c_•S`, then pull back. The
/// `c_•S` form is cross-checked against triangular elimination.
pub fn schubert_class_inequality(a: &Partition, n: u32) -> Result<Inequality> {
    schubert_with(a, &GaussClasses::new(n)?)
}

fn comparisons_with(gauss: &GaussClasses) -> Vec<Inequality> {
    let n = gauss.n();
    let mut parts = enumerate_partitions(n);
    parts.sort();
    let expansions: Vec<_> = parts.par_iter().map(chern_s_to_sigma).collect();
    let monomials: Vec<_> = parts.par_iter().map(|a| gauss.monomial(a)).collect();
    let pairs: Vec<(usize, usize)> = (0..parts.len())
        .flat_map(|i| {
            (0..parts.len())
                .filter(move |&j| j != i)
                .map(move |j| (i, j))
        })
        .collect();
    let found: Vec<Inequality> = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let diff = &expansions[i] - &expansions[j];
            is_effective(&diff).then(|| Inequality {
                n,
                m: MParam::Symbolic,
                lhs: sign_n(n, &monomials[i] - &monomials[j]),
                provenance: Provenance::MonomialComparison {
                    a: parts[i].clone(),
                    b: parts[j].clone(),
                },
            })
        })
        .collect();
    dedup_by_lhs(found)
}

/// Pairs `(a, b)` of partitions of `n` whose difference
/// `(-1)^n (c_a S - c_b S)` is Schubert-effective, in alphabet order of
/// `(a, b)`.
pub fn comparison_inequalities(n: u32) -> Result<Vec<Inequality>> {
    if n < 2 {
        return Err(Error::Domain("comparisons need n >= 2".into()));
    }
    Ok(comparisons_with(&GaussClasses::new(n)?))
}

fn dedup_by_lhs(items: Vec<Inequality>) -> Vec<Inequality> {
    let mut seen: HashSet<String> = HashSet::new();
    items
        .into_iter()
        .filter(|q| !q.is_trivial())
        .filter(|q| seen.insert(serde_json::to_string(&q.lhs).expect("serializable")))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenerateOptions {
    pub include_comparisons: bool,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        GenerateOptions {
            include_comparisons: true,
        }
    }
}

/// Every inequality for dimension `n`, with all families included.
pub fn generate_all(n: u32) -> Result<Vec<Inequality>> {
    generate_with(n, GenerateOptions::default())
}

/// Families in the order effective, upper, schubert, comparison; partitions
/// within a family in descending alphabet order. Zero left-hand sides are
/// dropped and a repeated left-hand side keeps its first provenance.
pub fn generate_with(n: u32, opts: GenerateOptions) -> Result<Vec<Inequality>> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "dimension must be at least 2, got {n}"
        )));
    }
    let gauss = GaussClasses::new(n)?;
    let parts = enumerate_partitions(n);
    let per_partition: Vec<[Inequality; 3]> = parts
        .par_iter()
        .map(|a| {
            Ok([
                effective_with(a, &gauss)?,
                upper_with(a, &gauss)?,
                schubert_with(a, &gauss)?,
            ])
        })
        .collect::<Result<_>>()?;
    let mut all = Vec::new();
    for family in 0..3 {
        all.extend(per_partition.iter().map(|row| row[family].clone()));
    }
    if opts.include_comparisons {
        all.extend(comparisons_with(&gauss));
    }
    Ok(dedup_by_lhs(all))
}

/// Substitutes a numeric `m` and divides by the positive rational content.
pub fn specialize(ineq: &Inequality, m: i64) -> Result<Inequality> {
    if m == 0 {
        return Err(Error::ZeroM);
    }
    let mut lhs = ineq.lhs.specialize(m);
    if let Some(content) = lhs.content() {
        if content.is_positive() {
            lhs = lhs.scale_rational(&(BigRational::from_integer(BigInt::from(1)) / content));
        }
    }
    let m_param = match ineq.m {
        MParam::Symbolic => MParam::Value(m),
        fixed => fixed,
    };
    Ok(Inequality {
        n: ineq.n,
        m: m_param,
        lhs,
        provenance: ineq.provenance.clone(),
    })
}

/// The same inequality without content reduction, as used for coefficient
/// comparisons against printed formulas.
pub fn specialize_raw(ineq: &Inequality, m: i64) -> Result<Inequality> {
    if m == 0 {
        return Err(Error::ZeroM);
    }
    Ok(Inequality {
        n: ineq.n,
        m: MParam::Value(m),
        lhs: ineq.lhs.specialize(m),
        provenance: ineq.provenance.clone(),
    })
}

impl Inequality {
    /// Assembles an inequality from parts; used when reading stored data.
    pub fn from_parts(n: u32, m: MParam, lhs: ChernPoly, provenance: Provenance) -> Result<Self> {
        if !lhs.is_zero() && lhs.degree() != n {
            return Err(Error::WeightMismatch {
                expected: n,
                actual: lhs.degree(),
            });
        }
        Ok(Inequality {
            n,
            m,
            lhs,
            provenance,
        })
    }

    /// Whether the lhs has only the `c_1^n` monomial.
    pub fn is_sign_only(&self) -> bool {
        self.lhs
            .terms()
            .all(|(idx, _)| *idx == Partition::column(self.n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn poly(degree: u32, terms: &[(&[u32], &[i64])]) -> ChernPoly {
        ChernPoly::from_terms(
            ChernVars::Tangent,
            degree,
            terms.iter().map(|(idx, c)| (p(idx), MPoly::from_ints(c))),
        )
    }

    #[test]
    fn effective_examples() {
        let q = effective_inequality(&p(&[2]), 2).unwrap();
        assert_eq!(*q.lhs(), poly(2, &[(&[1, 1], &[0, 2, 3]), (&[2], &[1])]));
        // (5m+1)^2 c_1^2 ((10m^2+4m)c_1^2 + c_2)
        let q = effective_inequality(&p(&[2, 1, 1]), 4).unwrap();
        let sq = MPoly::from_ints(&[1, 5]).pow(2);
        let inner = poly(2, &[(&[1, 1], &[0, 4, 10]), (&[2], &[1])]);
        let want = (&poly(2, &[(&[1, 1], &[1])]) * &inner).scale(&sq);
        assert_eq!(*q.lhs(), want);
        let q = effective_inequality(&p(&[1, 1, 1]), 3).unwrap();
        let want = poly(3, &[(&[1, 1, 1], &[1])]).scale(&(-&MPoly::from_ints(&[1, 4]).pow(3)));
        assert_eq!(*q.lhs(), want);
        assert!(effective_inequality(&p(&[2]), 3).is_err());
    }

    #[test]
    fn upper_examples() {
        let q = upper_inequality(&p(&[2]), 2).unwrap();
        assert_eq!(*q.lhs(), poly(2, &[(&[1, 1], &[1, 4, 6]), (&[2], &[-1])]));
        assert!(upper_inequality(&p(&[1, 1, 1]), 3).unwrap().is_trivial());
        // divided by (5m+1)^2: (15m^2+6m+1)c_1^4 - c_1^2c_2
        let q = upper_inequality(&p(&[2, 1, 1]), 4).unwrap();
        let want = poly(4, &[(&[1, 1, 1, 1], &[1, 6, 15]), (&[2, 1, 1], &[-1])])
            .scale(&MPoly::from_ints(&[1, 5]).pow(2));
        assert_eq!(*q.lhs(), want);
        assert!(upper_inequality(&p(&[3]), 2).is_err());
    }

    #[test]
    fn comparison_examples() {
        let all = comparison_inequalities(4).unwrap();
        let find = |a: &[u32], b: &[u32]| {
            all.iter()
                .find(|q| q.provenance() == &Provenance::MonomialComparison { a: p(a), b: p(b) })
                .cloned()
        };
        // c_2(γ)^2 - c_1(γ)c_3(γ) >= 0 from σ_{2,2}
        let q = find(&[2, 2], &[3, 1]).expect("σ_{2,2} comparison");
        let want = poly(
            4,
            &[
                (&[1, 1, 1, 1], &[0, 0, 10, 40, 50]),
                (&[2, 1, 1], &[0, 5, 5]),
                (&[2, 2], &[1]),
                (&[3, 1], &[-1, -5]),
            ],
        );
        assert_eq!(*q.lhs(), want);
        // c_1(γ)c_3(γ) - c_4(γ) >= 0 from σ_{2,1,1}
        let q = find(&[3, 1], &[4]).expect("σ_{2,1,1} comparison");
        let want = poly(
            4,
            &[
                (&[1, 1, 1, 1], &[0, 0, 6, 36, 45]),
                (&[2, 1, 1], &[0, 3, 12]),
                (&[3, 1], &[1, 3]),
                (&[4], &[-1]),
            ],
        );
        assert_eq!(*q.lhs(), want);
        assert!(find(&[4], &[3, 1]).is_none());
        let two = comparison_inequalities(2).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(
            two[0].provenance(),
            &Provenance::MonomialComparison {
                a: p(&[1, 1]),
                b: p(&[2])
            }
        );
    }

    #[test]
    fn generate_two() {
        let all = generate_all(2).unwrap();
        let with_c2: Vec<_> = all
            .iter()
            .filter(|q| !q.lhs().coeff(&p(&[2])).is_zero())
            .map(|q| q.lhs().clone())
            .collect();
        assert_eq!(
            with_c2,
            vec![
                poly(2, &[(&[1, 1], &[0, 2, 3]), (&[2], &[1])]),
                poly(2, &[(&[1, 1], &[1, 4, 6]), (&[2], &[-1])]),
            ]
        );
        assert!(all.iter().all(|q| !q.is_trivial()));
    }

    #[test]
    fn specialize_two() {
        let all = generate_all(2).unwrap();
        let text: Vec<_> = all
            .iter()
            .map(|q| specialize(q, 1).unwrap().to_text())
            .collect();
        assert!(text.contains(&"c_2 >= -5c_1^2".to_string()), "{text:?}");
        assert!(text.contains(&"c_2 <= 11c_1^2".to_string()), "{text:?}");
        let once = specialize(&all[0], 1).unwrap();
        assert_eq!(specialize(&once, 1).unwrap(), once);
        assert!(matches!(specialize(&all[0], 0), Err(Error::ZeroM)));
    }

    #[test]
    fn latex_form() {
        let q = upper_inequality(&p(&[2]), 2).unwrap();
        assert_eq!(q.to_latex(), "c_2 \\le (6m^2+4m+1)c_1^2");
        let q = effective_inequality(&p(&[2]), 2).unwrap();
        assert_eq!(q.to_latex(), "c_2 \\ge -(3m^2+2m)c_1^2");
    }

    #[test]
    fn json_round_trip() {
        let q = comparison_inequalities(4).unwrap().remove(0);
        let text = serde_json::to_string(&q).unwrap();
        assert!(text.starts_with(
            r#"{"n":4,"m":"symbolic","relation":">=0","provenance":{"kind":"comparison","#
        ));
        let back: Inequality = serde_json::from_str(&text).unwrap();
        assert_eq!(back, q);
        let s = specialize(&q, 3).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.contains(r#""m":3"#));
        assert_eq!(serde_json::from_str::<Inequality>(&text).unwrap(), s);
    }
}
