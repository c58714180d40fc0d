//! Graded polynomials in Chern classes with coefficients in `Q[m]`.
//!
//! A monomial `c_{a_1} c_{a_2} ... c_{a_r}` is indexed by the partition
//! `(a_1, ..., a_r)`, so `c_1^2` and `c_{1,1}` are the same key. Every
//! polynomial is homogeneous. The same ring is used for Chern classes of
//! the variety, of the universal subbundle `S`, and for formal symbols; a
//! [`ChernVars`] tag records which, and arithmetic refuses to mix them.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition};
use crate::schubert::{multiply, BoxSpec, SchubertExpr};

// ---------------------------------------------------------------------------
// Q[m]

/// Polynomial in the very-ample multiple `m`, coefficient `i` multiplying
/// `m^i`. Trailing zeros are trimmed; zero is the empty vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MPoly(Vec<BigRational>);

impl MPoly {
    pub fn zero() -> Self {
        MPoly(Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    /// The variable `m`.
    pub fn m() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    /// `c * m^power`.
    pub fn term(c: BigRational, power: usize) -> Self {
        let mut v = vec![BigRational::zero(); power];
        v.push(c);
        Self::from_coeffs(v)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        MPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn constant_term(&self) -> BigRational {
        self.0.first().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.0.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, m: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * m + c)
    }

    pub fn specialize(&self, m: i64) -> MPoly {
        MPoly::constant(self.eval(&BigRational::from_integer(m.into())))
    }

    pub fn scale(&self, k: &BigRational) -> MPoly {
        MPoly::from_coeffs(self.0.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, e: u32) -> MPoly {
        (0..e).fold(MPoly::one(), |acc, _| &acc * self)
    }

    /// `self / d` when `d` divides `self` exactly in `Q[m]`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let dd = d.degree()?;
        let lead = d.leading_coeff();
        let mut rem = self.0.clone();
        let Some(top) = self.degree() else {
            return Some(MPoly::zero());
        };
        if top < dd {
            return None;
        }
        let mut quot = vec![BigRational::zero(); top - dd + 1];
        for k in (0..=top - dd).rev() {
            let q = &rem[k + dd] / &lead;
            if q.is_zero() {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                rem[k + j] -= &q * dc;
            }
            quot[k] = q;
        }
        rem.iter()
            .all(Zero::is_zero)
            .then(|| MPoly::from_coeffs(quot))
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(BigRational::is_integer)
    }

    /// Conventional rendering such as `3m^2+2m` (descending powers).
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (power, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let mag = c.abs();
            if power == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            match power {
                0 => {}
                1 => out.push('m'),
                p => out.push_str(&format!("m^{}", exponent(p as u32))),
            }
        }
        out
    }
}

fn exponent(e: u32) -> String {
    if e < 10 {
        e.to_string()
    } else {
        format!("{{{e}}}")
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let len = self.0.len().max(rhs.0.len());
        let zero = BigRational::zero();
        MPoly::from_coeffs(
            (0..len)
                .map(|i| self.0.get(i).unwrap_or(&zero) + rhs.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        MPoly::from_coeffs(out)
    }
}

// ---------------------------------------------------------------------------
// Chern polynomials

/// Which Chern classes the variables `c_i` denote.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChernVars {
    /// `c_i = c_i(T_X)` of the variety.
    #[default]
    Tangent,
    /// `c_i S` of the universal subbundle on the Grassmannian.
    Subbundle,
    /// Formal graded symbols `a_i` of weight `i`.
    Formal,
}

impl ChernVars {
    fn is_tangent(&self) -> bool {
        *self == ChernVars::Tangent
    }

    fn symbol(&self, index: u32, power: u32) -> String {
        let pow = if power == 1 {
            String::new()
        } else {
            format!("^{}", exponent(power))
        };
        match self {
            ChernVars::Tangent => format!("c_{}{pow}", exponent(index)),
            ChernVars::Subbundle => format!("c_{}{pow}S", exponent(index)),
            ChernVars::Formal => format!("a_{}{pow}", exponent(index)),
        }
    }
}

/// Homogeneous polynomial in Chern classes with `Q[m]` coefficients.
#[derive(Clone, Debug)]
pub struct ChernPoly {
    vars: ChernVars,
    degree: u32,
    terms: BTreeMap<Partition, MPoly>,
}

// The degree of a zero polynomial is nominal, so it does not take part.
impl PartialEq for ChernPoly {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl Eq for ChernPoly {}

impl ChernPoly {
    pub fn zero(vars: ChernVars, degree: u32) -> Self {
        ChernPoly {
            vars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: ChernVars) -> Self {
        Self::monomial(vars, Partition::empty(), MPoly::one())
    }

    pub fn monomial(vars: ChernVars, index: Partition, coeff: MPoly) -> Self {
        let mut p = Self::zero(vars, index.weight());
        p.add_term(index, coeff);
        p
    }

    /// The single class `c_i` (or `1` for `i == 0`).
    pub fn var(vars: ChernVars, i: u32) -> Self {
        Self::monomial(vars, Partition::row(i), MPoly::one())
    }

    pub fn from_terms<I>(vars: ChernVars, degree: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Partition, MPoly)>,
    {
        let mut p = Self::zero(vars, degree);
        for (idx, c) in terms {
            p.add_term(idx, c);
        }
        p
    }

    fn add_term(&mut self, index: Partition, coeff: MPoly) {
        if coeff.is_zero() {
            return;
        }
        if self.terms.is_empty() {
            self.degree = index.weight();
        } else {
            assert_eq!(
                index.weight(),
                self.degree,
                "inhomogeneous term {index} in degree-{} polynomial",
                self.degree
            );
        }
        match self.terms.entry(index) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn vars(&self) -> ChernVars {
        self.vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending alphabet order of their monomials.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Partition, &MPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, index: &Partition) -> MPoly {
        self.terms.get(index).cloned().unwrap_or_default()
    }

    /// Same coefficients, reinterpreted in another variable family.
    pub fn retag(mut self, vars: ChernVars) -> Self {
        self.vars = vars;
        self
    }

    pub fn scale(&self, k: &MPoly) -> Self {
        Self::from_terms(
            self.vars,
            self.degree,
            self.terms.iter().map(|(p, c)| (p.clone(), c * k)),
        )
    }

    pub fn scale_rational(&self, k: &BigRational) -> Self {
        self.scale(&MPoly::constant(k.clone()))
    }

    /// Divides every coefficient by `d`, if each quotient is exact.
    pub fn div_exact(&self, d: &MPoly) -> Option<Self> {
        let terms = self
            .terms
            .iter()
            .map(|(p, c)| c.div_exact(d).map(|q| (p.clone(), q)))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::from_terms(self.vars, self.degree, terms))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.vars), |acc, _| &acc * self)
    }

    /// Substitutes each `c_i` by `image(i)`; the images determine the
    /// variable family of the result.
    pub fn substitute(&self, vars: ChernVars, image: impl Fn(u32) -> ChernPoly) -> ChernPoly {
        let mut cache: HashMap<u32, ChernPoly> = HashMap::new();
        let mut out = ChernPoly::zero(vars, self.degree);
        for (idx, c) in &self.terms {
            let mut prod = ChernPoly::one(vars).scale(c);
            for &part in idx.parts() {
                let img = cache.entry(part).or_insert_with(|| image(part));
                prod = &prod * img;
            }
            out = &out + &prod;
        }
        out
    }

    /// Evaluates the coefficients at a numeric `m`.
    pub fn specialize(&self, m: i64) -> ChernPoly {
        Self::from_terms(
            self.vars,
            self.degree,
            self.terms.iter().map(|(p, c)| (p.clone(), c.specialize(m))),
        )
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(MPoly::is_integral)
    }

    /// Whether every coefficient is free of `m`.
    pub fn is_m_free(&self) -> bool {
        self.terms.values().all(MPoly::is_constant)
    }

    /// Positive rational gcd of the coefficients of an `m`-free polynomial.
    pub fn content(&self) -> Option<BigRational> {
        if !self.is_m_free() || self.is_zero() {
            return None;
        }
        let (mut num, mut den) = (BigInt::zero(), BigInt::one());
        for c in self.terms.values() {
            let q = c.constant_term();
            num = num.gcd(q.numer());
            den = den.lcm(q.denom());
        }
        Some(BigRational::new(num, den))
    }

    pub fn to_latex(&self) -> String {
        self.render()
    }

    /// Conventional rendering: terms in ascending alphabet order, e.g.
    /// `(3m^2+2m)c_1^2+c_2`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, c) in &self.terms {
            let (neg, body) = render_coeff(c, idx.is_empty());
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            out.push_str(&body);
            out.push_str(&self.render_monomial(idx));
        }
        out
    }

    pub(crate) fn render_monomial(&self, idx: &Partition) -> String {
        let mut out = String::new();
        let mult = idx.multiplicities();
        for (i, &k) in mult.iter().enumerate() {
            if k > 0 {
                out.push_str(&self.vars.symbol(i as u32 + 1, k));
            }
        }
        out
    }
}

/// Splits a coefficient into a sign and a body suitable for prefixing a
/// monomial. Multi-term coefficients are parenthesized, with the sign
/// pulled out when the leading coefficient is negative.
pub(crate) fn render_coeff(c: &MPoly, bare: bool) -> (bool, String) {
    let neg = c.leading_coeff().is_negative();
    let mag = if neg { -c } else { c.clone() };
    let nonzero = mag.coeffs().iter().filter(|x| !x.is_zero()).count();
    let body = if mag == MPoly::one() && !bare {
        String::new()
    } else if nonzero > 1 && !bare {
        format!("({})", mag.render())
    } else {
        mag.render()
    };
    (neg, body)
}

impl fmt::Display for ChernPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn check_vars(a: &ChernPoly, b: &ChernPoly) {
    assert_eq!(
        a.vars, b.vars,
        "cannot combine polynomials in different Chern variables"
    );
}

impl Add for &ChernPoly {
    type Output = ChernPoly;
    fn add(self, rhs: &ChernPoly) -> ChernPoly {
        check_vars(self, rhs);
        let mut out = self.clone();
        if out.is_zero() {
            out.degree = rhs.degree;
        }
        for (p, c) in &rhs.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ChernPoly {
    type Output = ChernPoly;
    fn sub(self, rhs: &ChernPoly) -> ChernPoly {
        self + &(-rhs)
    }
}

impl Neg for &ChernPoly {
    type Output = ChernPoly;
    fn neg(self) -> ChernPoly {
        ChernPoly {
            vars: self.vars,
            degree: self.degree,
            terms: self.terms.iter().map(|(p, c)| (p.clone(), -c)).collect(),
        }
    }
}

/// Graded product; monomial indices merge as multisets.
impl Mul for &ChernPoly {
    type Output = ChernPoly;
    fn mul(self, rhs: &ChernPoly) -> ChernPoly {
        check_vars(self, rhs);
        let mut out = ChernPoly::zero(self.vars, self.degree + rhs.degree);
        for (p, a) in &self.terms {
            for (q, b) in &rhs.terms {
                out.add_term(p.merge(q), a * b);
            }
        }
        out
    }
}

/// `p * q`, named for symmetry with the other ring operations.
pub fn cpoly_mul(p: &ChernPoly, q: &ChernPoly) -> ChernPoly {
    p * q
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    monomial: Partition,
    coeff_m: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    degree: u32,
    #[serde(default, skip_serializing_if = "ChernVars::is_tangent")]
    vars: ChernVars,
    terms: Vec<TermJson>,
}

impl Serialize for ChernPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            degree: self.degree,
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(p, c)| TermJson {
                    monomial: p.clone(),
                    coeff_m: c.coeffs().iter().map(BigRational::to_string).collect(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ChernPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolyJson::deserialize(deserializer)?;
        let mut p = ChernPoly::zero(raw.vars, raw.degree);
        for t in raw.terms {
            if t.monomial.weight() != raw.degree {
                return Err(D::Error::custom(format!(
                    "monomial {} does not have degree {}",
                    t.monomial, raw.degree
                )));
            }
            let coeffs = t
                .coeff_m
                .iter()
                .map(|s| s.parse::<BigRational>().map_err(D::Error::custom))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            p.add_term(t.monomial, MPoly::from_coeffs(coeffs));
        }
        p.degree = raw.degree;
        Ok(p)
    }
}

/// Determinant of a square matrix of Chern polynomials by Laplace expansion
/// along the first remaining row, memoizing minors on the set of used
/// columns. The empty matrix has determinant `1`.
pub fn determinant(vars: ChernVars, matrix: &[Vec<ChernPoly>]) -> ChernPoly {
    let q = matrix.len();
    assert!(q < 64, "determinant supports fewer than 64 rows");
    assert!(matrix.iter().all(|r| r.len() == q), "matrix must be square");
    let mut memo = HashMap::new();
    det_minor(vars, matrix, 0, &mut memo)
}

fn det_minor(
    vars: ChernVars,
    matrix: &[Vec<ChernPoly>],
    used: u64,
    memo: &mut HashMap<u64, ChernPoly>,
) -> ChernPoly {
    let q = matrix.len();
    let row = used.count_ones() as usize;
    if row == q {
        return ChernPoly::one(vars);
    }
    if let Some(hit) = memo.get(&used) {
        return hit.clone();
    }
    let mut acc = ChernPoly::zero(vars, 0);
    let mut position = 0;
    for col in 0..q {
        if used & (1 << col) != 0 {
            continue;
        }
        let entry = &matrix[row][col];
        let sign_neg = position % 2 == 1;
        position += 1;
        if entry.is_zero() {
            continue;
        }
        let term = entry * &det_minor(vars, matrix, used | (1 << col), memo);
        acc = if sign_neg { &acc - &term } else { &acc + &term };
    }
    memo.insert(used, acc.clone());
    acc
}

// ---------------------------------------------------------------------------
// Chern classes of twists and of the pulled-back universal subbundle

/// One summand `coeff * c_i(E) * c_1(L)^{line_power}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistTerm {
    pub bundle_index: u32,
    pub line_power: u32,
    pub coeff: BigInt,
}

/// `c_p(E ⊗ L) = sum_{i=0}^p C(r-i, p-i) c_i(E) c_1(L)^{p-i}` for a rank-`r`
/// bundle `E` and a line bundle `L`, kept symbolic in `c_i(E)` and `c_1(L)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistFormula {
    pub rank: u32,
    pub degree: u32,
    pub terms: Vec<TwistTerm>,
}

impl TwistFormula {
    /// Substitutes `c_i(E) = bundle(i)` (with `c_0(E) = 1`) and
    /// `c_1(L) = line`.
    pub fn evaluate(&self, bundle: impl Fn(u32) -> ChernPoly, line: &ChernPoly) -> ChernPoly {
        let vars = line.vars();
        let mut out = ChernPoly::zero(vars, self.degree);
        for t in &self.terms {
            let base = if t.bundle_index == 0 {
                ChernPoly::one(vars)
            } else {
                bundle(t.bundle_index)
            };
            let coeff = MPoly::constant(BigRational::from_integer(t.coeff.clone()));
            let term = (&base * &line.pow(t.line_power)).scale(&coeff);
            out = &out + &term;
        }
        out
    }
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn twist_chern(rank: u32, degree: u32) -> Result<TwistFormula> {
    if rank == 0 || degree > rank {
        return Err(Error::Domain(format!(
            "twist formula needs 0 <= p <= r with r >= 1, got r = {rank}, p = {degree}"
        )));
    }
    let terms = (0..=degree)
        .map(|i| TwistTerm {
            bundle_index: i,
            line_power: degree - i,
            coeff: binomial(rank - i, degree - i),
        })
        .collect();
    Ok(TwistFormula {
        rank,
        degree,
        terms,
    })
}

/// `m c_1` in the variety's Chern classes: `c_1(O(-mK_X))`.
fn m_c1() -> ChernPoly {
    ChernPoly::monomial(ChernVars::Tangent, Partition::row(1), MPoly::m())
}

/// `c_p(T_X(-m K_X)) = sum_i C(n-i, p-i) m^{p-i} c_i c_1^{p-i}`.
pub fn chern_tangent_twisted(n: u32, p: u32) -> Result<ChernPoly> {
    let formula = twist_chern(n, p)?;
    Ok(formula.evaluate(|i| ChernPoly::var(ChernVars::Tangent, i), &m_c1()))
}

/// `c_p(γ^*S) = c_p(T_X(-mK_X)) + m c_1 c_{p-1}(T_X(-mK_X))`, from the exact
/// sequence `0 -> O_X(-mK_X) -> γ^*S -> T_X(-mK_X) -> 0`.
pub fn chern_gauss(n: u32, p: u32) -> Result<ChernPoly> {
    let head = chern_tangent_twisted(n, p)?;
    if p == 0 {
        return Ok(head);
    }
    let tail = &m_c1() * &chern_tangent_twisted(n, p - 1)?;
    Ok(&head + &tail)
}

/// `σ_w` written in the Chern classes of `S`:
/// `sum_{j_1 + 2 j_2 + ... = w} (-1)^{Σj} (Σj)! / (j_1! ... j_w!) c_1^{j_1}S ... c_w^{j_w}S`.
/// `w = 0` gives `1`.
pub fn sigma_to_chern_s(w: u32) -> ChernPoly {
    let vars = ChernVars::Subbundle;
    if w == 0 {
        return ChernPoly::one(vars);
    }
    let terms = enumerate_partitions(w).into_iter().map(|lambda| {
        let k = lambda.len() as u32;
        let denom = lambda
            .multiplicities()
            .iter()
            .fold(BigInt::one(), |acc, &j| acc * factorial(j));
        let mut c = factorial(k) / denom;
        if k % 2 == 1 {
            c = -c;
        }
        (lambda, MPoly::constant(BigRational::from_integer(c)))
    });
    ChernPoly::from_terms(vars, w, terms)
}

/// Schubert expansion of `(-1)^{|a|} c_a S = σ_{1^{a_1}} ··· σ_{1^{a_r}}`.
pub fn chern_s_to_sigma(a: &Partition) -> SchubertExpr {
    a.parts().iter().fold(SchubertExpr::one(), |acc, &p| {
        multiply(
            &SchubertExpr::basis(Partition::column(p)),
            &acc,
            BoxSpec::STABLE,
        )
    })
}

/// Rewrites a homogeneous Schubert expression in the Chern classes of `S` by
/// peeling off leading terms: `(-1)^w c_{λ'}S` has leading Schubert term
/// `σ_λ` in alphabet order.
pub fn schubert_to_chern_s(e: &SchubertExpr) -> Result<ChernPoly> {
    let vars = ChernVars::Subbundle;
    let Some(w) = e.homogeneous_weight() else {
        return if e.is_zero() {
            Ok(ChernPoly::zero(vars, 0))
        } else {
            Err(Error::Domain(
                "Schubert expression is not homogeneous".into(),
            ))
        };
    };
    let sign = if w % 2 == 1 {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let mut rest = e.clone();
    let mut out = ChernPoly::zero(vars, w);
    while let Some((lead, c)) = rest.terms().max_by(|x, y| x.0.cmp(y.0)) {
        let (lead, c) = (lead.clone(), c.clone());
        let column = lead.conjugate();
        rest = &rest - &chern_s_to_sigma(&column).scale(&c);
        let k = BigRational::from_integer(&c * &sign);
        out = &out + &ChernPoly::monomial(vars, column, MPoly::constant(k));
    }
    Ok(out)
}

/// `σ_a` written in the Chern classes of `S`: Giambelli's determinant with
/// each special class replaced by [`sigma_to_chern_s`].
pub fn giambelli_chern_s(a: &Partition) -> ChernPoly {
    let vars = ChernVars::Subbundle;
    let q = a.len();
    let matrix: Vec<Vec<ChernPoly>> = (0..q)
        .map(|i| {
            (0..q)
                .map(|j| {
                    let k = a.part(i) as i64 + j as i64 - i as i64;
                    if k < 0 {
                        ChernPoly::zero(vars, 0)
                    } else {
                        sigma_to_chern_s(k as u32)
                    }
                })
                .collect()
        })
        .collect();
    let mut det = determinant(vars, &matrix);
    if det.is_zero() {
        det.degree = a.weight();
    }
    det
}

/// The banded determinant `D_k` with first row `a_1 ... a_k`, ones on the
/// subdiagonal and `a_{j-i+1}` above it, in formal symbols.
pub fn dn_determinant(k: u32) -> ChernPoly {
    let vars = ChernVars::Formal;
    let k = k as usize;
    let matrix: Vec<Vec<ChernPoly>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i > 0 && j + 1 == i {
                        ChernPoly::one(vars)
                    } else if j >= i {
                        ChernPoly::var(vars, (j - i + 1) as u32)
                    } else {
                        ChernPoly::zero(vars, 0)
                    }
                })
                .collect()
        })
        .collect();
    determinant(vars, &matrix)
}

/// Checks `sum_{i=0}^n (-1)^i D_i a_{n-i} = 0` (with `a_0 = 1`) as an
/// identity of polynomials in the formal symbols.
pub fn dn_recursion_check(n: u32) -> bool {
    if n == 0 {
        return false;
    }
    let vars = ChernVars::Formal;
    let mut total = ChernPoly::zero(vars, n);
    for i in 0..=n {
        let term = &dn_determinant(i) * &ChernPoly::var(vars, n - i);
        total = if i % 2 == 0 {
            &total + &term
        } else {
            &total - &term
        };
    }
    total.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn tangent(terms: &[(&[u32], &[i64])]) -> ChernPoly {
        let degree = terms.first().map(|(idx, _)| idx.iter().sum()).unwrap_or(0);
        ChernPoly::from_terms(
            ChernVars::Tangent,
            degree,
            terms.iter().map(|(idx, c)| (p(idx), MPoly::from_ints(c))),
        )
    }

    fn subbundle(terms: &[(&[u32], i64)]) -> ChernPoly {
        let degree = terms.first().map(|(idx, _)| idx.iter().sum()).unwrap_or(0);
        ChernPoly::from_terms(
            ChernVars::Subbundle,
            degree,
            terms.iter().map(|(idx, c)| (p(idx), MPoly::from_int(*c))),
        )
    }

    #[test]
    fn exact_division() {
        let f = MPoly::from_ints(&[1, 5]);
        let g = MPoly::from_ints(&[0, 4, 10]);
        assert_eq!((&f * &g).div_exact(&f), Some(g.clone()));
        assert_eq!(g.div_exact(&f), None);
        assert_eq!(MPoly::zero().div_exact(&f), Some(MPoly::zero()));
        assert_eq!(g.div_exact(&MPoly::zero()), None);
    }

    #[test]
    fn mpoly_arithmetic() {
        let a = MPoly::from_ints(&[0, 4, 10]); // 10m^2 + 4m
        assert_eq!(a.render(), "10m^2+4m");
        assert_eq!((&a * &a).render(), "100m^4+80m^3+16m^2");
        assert_eq!((&a - &a), MPoly::zero());
        assert_eq!(a.specialize(1), MPoly::from_int(14));
        assert_eq!(MPoly::from_ints(&[1, -2]).render(), "-2m+1");
    }

    #[test]
    fn products() {
        let c2 = ChernPoly::var(ChernVars::Tangent, 2);
        let c1 = ChernPoly::var(ChernVars::Tangent, 1);
        assert_eq!(cpoly_mul(&c2, &c1), tangent(&[(&[2, 1], &[1])]));
        let mc1 = m_c1();
        assert_eq!(cpoly_mul(&mc1, &mc1), tangent(&[(&[1, 1], &[0, 0, 1])]));
        let g = tangent(&[(&[1, 1], &[0, 4, 10]), (&[2], &[1])]);
        let want = tangent(&[
            (&[1, 1, 1, 1], &[0, 0, 16, 80, 100]),
            (&[2, 1, 1], &[0, 8, 20]),
            (&[2, 2], &[1]),
        ]);
        assert_eq!(cpoly_mul(&g, &g), want);
    }

    #[test]
    #[should_panic(expected = "different Chern variables")]
    fn refuses_mixed_variables() {
        let _ = &ChernPoly::var(ChernVars::Tangent, 1) * &ChernPoly::var(ChernVars::Subbundle, 1);
    }

    #[test]
    fn twist_examples() {
        let zero = twist_chern(5, 0).unwrap();
        assert_eq!(
            zero.evaluate(|i| ChernPoly::var(ChernVars::Tangent, i), &m_c1()),
            ChernPoly::one(ChernVars::Tangent)
        );
        for n in 2..6 {
            let got = twist_chern(n, 1)
                .unwrap()
                .evaluate(|i| ChernPoly::var(ChernVars::Tangent, i), &m_c1());
            assert_eq!(got, tangent(&[(&[1], &[1, n as i64])]));
        }
        let got = twist_chern(3, 2)
            .unwrap()
            .evaluate(|i| ChernPoly::var(ChernVars::Tangent, i), &m_c1());
        assert_eq!(got, tangent(&[(&[1, 1], &[0, 2, 3]), (&[2], &[1])]));
        assert!(twist_chern(3, 4).is_err());
    }

    #[test]
    fn tangent_twisted_examples() {
        assert_eq!(
            chern_tangent_twisted(4, 4).unwrap(),
            tangent(&[
                (&[1, 1, 1, 1], &[0, 0, 0, 1, 1]),
                (&[2, 1, 1], &[0, 0, 1]),
                (&[3, 1], &[0, 1]),
                (&[4], &[1]),
            ])
        );
        // (4m^3+3m^2)c_1^3 + 2m c_1c_2 + c_3 is c_3 of the twist on a 4-fold,
        // and also c_3(γ^*S) on a 3-fold.
        let cubic = tangent(&[
            (&[1, 1, 1], &[0, 0, 3, 4]),
            (&[2, 1], &[0, 2]),
            (&[3], &[1]),
        ]);
        assert_eq!(chern_tangent_twisted(4, 3).unwrap(), cubic);
        assert_eq!(chern_gauss(3, 3).unwrap(), cubic);
        assert_eq!(
            chern_tangent_twisted(3, 3).unwrap(),
            tangent(&[
                (&[1, 1, 1], &[0, 0, 1, 1]),
                (&[2, 1], &[0, 1]),
                (&[3], &[1])
            ])
        );
        assert_eq!(
            chern_tangent_twisted(7, 0).unwrap(),
            ChernPoly::one(ChernVars::Tangent)
        );
    }

    #[test]
    fn gauss_examples() {
        for n in 2..8i64 {
            assert_eq!(
                chern_gauss(n as u32, 1).unwrap(),
                tangent(&[(&[1], &[1, n + 1])])
            );
        }
        assert_eq!(
            chern_gauss(5, 2).unwrap(),
            tangent(&[(&[1, 1], &[0, 5, 15]), (&[2], &[1])])
        );
        assert_eq!(
            chern_gauss(4, 4).unwrap(),
            tangent(&[
                (&[1, 1, 1, 1], &[0, 0, 0, 4, 5]),
                (&[2, 1, 1], &[0, 0, 3]),
                (&[3, 1], &[0, 2]),
                (&[4], &[1]),
            ])
        );
        assert!(chern_gauss(3, 4).is_err());
    }

    #[test]
    fn sigma_expansions() {
        assert_eq!(sigma_to_chern_s(1), subbundle(&[(&[1], -1)]));
        assert_eq!(sigma_to_chern_s(2), subbundle(&[(&[1, 1], 1), (&[2], -1)]));
        assert_eq!(
            sigma_to_chern_s(3),
            subbundle(&[(&[1, 1, 1], -1), (&[2, 1], 2), (&[3], -1)])
        );
        assert_eq!(
            sigma_to_chern_s(4),
            subbundle(&[
                (&[1, 1, 1, 1], 1),
                (&[2, 1, 1], -3),
                (&[2, 2], 1),
                (&[3, 1], 2),
                (&[4], -1)
            ])
        );
    }

    #[test]
    fn chern_s_to_sigma_examples() {
        let s = |q: &[u32]| SchubertExpr::basis(p(q));
        assert_eq!(chern_s_to_sigma(&p(&[3])), s(&[1, 1, 1]));
        assert_eq!(chern_s_to_sigma(&p(&[1, 1])), &s(&[2]) + &s(&[1, 1]));
        assert_eq!(chern_s_to_sigma(&p(&[2, 1])), &s(&[2, 1]) + &s(&[1, 1, 1]));
    }

    #[test]
    fn giambelli_in_chern_s() {
        // σ_{3,2} = c_1^2S c_3S - c_1S c_2^2S + c_3S c_2S - c_1S c_4S
        assert_eq!(
            giambelli_chern_s(&p(&[3, 2])),
            subbundle(&[
                (&[3, 1, 1], 1),
                (&[2, 2, 1], -1),
                (&[3, 2], 1),
                (&[4, 1], -1)
            ])
        );
        // c_2S = σ_{1,1}
        assert_eq!(giambelli_chern_s(&p(&[1, 1])), subbundle(&[(&[2], 1)]));
    }

    #[test]
    fn dn_examples() {
        assert!(dn_recursion_check(1));
        let d3 = dn_determinant(3);
        let want = ChernPoly::from_terms(
            ChernVars::Formal,
            3,
            [
                (p(&[1, 1, 1]), MPoly::from_int(1)),
                (p(&[2, 1]), MPoly::from_int(-2)),
                (p(&[3]), MPoly::from_int(1)),
            ],
        );
        assert_eq!(d3, want);
        assert!(dn_recursion_check(3));
        assert!(dn_recursion_check(8));
    }

    #[test]
    fn rendering() {
        let g = chern_gauss(2, 2).unwrap();
        assert_eq!(g.render(), "(3m^2+2m)c_1^2+c_2");
        assert_eq!(sigma_to_chern_s(3).render(), "-c_1^3S+2c_1Sc_2S-c_3S");
        let n = tangent(&[(&[1, 1], &[-5]), (&[2], &[1])]);
        assert_eq!(n.render(), "-5c_1^2+c_2");
    }

    #[test]
    fn json_round_trip() {
        let g = &chern_gauss(4, 2).unwrap()
            * &ChernPoly::var(ChernVars::Tangent, 1)
                .scale(&MPoly::constant(BigRational::new(1.into(), 2.into())));
        let text = serde_json::to_string(&g).unwrap();
        assert!(
            text.starts_with(
                r#"{"degree":3,"terms":[{"monomial":[1,1,1],"coeff_m":["0","2","5"]}"#
            ),
            "{text}"
        );
        let back: ChernPoly = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
        let s = sigma_to_chern_s(2);
        let back: ChernPoly = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
    }
}
