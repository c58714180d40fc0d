//! Schubert calculus on Grassmannians in the Schubert basis.
//!
//! Products are computed the classical way: Giambelli's determinant writes
//! one factor as a signed sum of products of special classes `σ_k`, and
//! each special class is applied to the other factor with Pieri's rule.
//! In stable mode this is the ring of symmetric functions in the Schur
//! basis; in box mode every partition outside `rows x cols` is zero.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Ambient Grassmannian box. `BoxSpec::STABLE` imposes no truncation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct BoxSpec(Option<(u32, u32)>);

impl BoxSpec {
    pub const STABLE: BoxSpec = BoxSpec(None);

    /// Box for `G(rows + cols, rows)`: partitions with at most `rows` parts,
    /// each at most `cols`.
    pub fn new(rows: u32, cols: u32) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidBox(format!(
                "{rows}x{cols} needs positive sides"
            )));
        }
        Ok(BoxSpec(Some((rows, cols))))
    }

    pub fn dims(&self) -> Option<(u32, u32)> {
        self.0
    }

    pub fn is_stable(&self) -> bool {
        self.0.is_none()
    }

    pub fn admits(&self, p: &Partition) -> bool {
        match self.0 {
            None => true,
            Some((rows, cols)) => p.fits(rows, cols),
        }
    }

    /// The partition filling the whole box.
    pub fn full(&self) -> Option<Partition> {
        self.0
            .map(|(rows, cols)| Partition::new(vec![cols; rows as usize]).expect("constant parts"))
    }

    /// Complement of `p` inside the box, rotated into partition form.
    pub fn complement(&self, p: &Partition) -> Result<Partition> {
        let (rows, cols) = self
            .0
            .ok_or_else(|| Error::InvalidBox("complement needs a finite box".into()))?;
        if !p.fits(rows, cols) {
            return Err(Error::InvalidBox(format!("{p} does not fit {rows}x{cols}")));
        }
        let parts = (0..rows as usize)
            .map(|i| cols - p.part(rows as usize - 1 - i))
            .collect();
        Partition::new(parts)
    }
}

/// Integer combination of Schubert classes. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SchubertExpr {
    terms: BTreeMap<Partition, BigInt>,
}

impl SchubertExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::basis(Partition::empty())
    }

    /// The single class `σ_a`.
    pub fn basis(a: Partition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(a, BigInt::one());
        SchubertExpr { terms }
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Partition, BigInt)>,
    {
        let mut e = Self::zero();
        for (p, c) in terms {
            e.add_term(p, c);
        }
        e
    }

    pub fn add_term(&mut self, p: Partition, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, p: &Partition) -> BigInt {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    /// Terms in ascending alphabet order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_terms(self.terms.iter().map(|(p, c)| (p.clone(), c * k)))
    }

    /// Drops every class that does not fit the box.
    pub fn truncate(&self, bx: BoxSpec) -> Self {
        SchubertExpr {
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| bx.admits(p))
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    /// Common weight of all terms, `None` for zero or mixed expressions.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let mut weights = self.terms.keys().map(Partition::weight);
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    pub fn to_latex(&self) -> String {
        self.render(|p| format!("\\sigma_{{{}}}", join_parts(p)))
    }

    fn render(&self, class: impl Fn(&Partition) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (p, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let mag = c.abs();
            if !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            if p.is_empty() {
                if mag.is_one() {
                    out.push('1');
                }
            } else {
                out.push_str(&class(p));
            }
        }
        out
    }
}

fn join_parts(p: &Partition) -> String {
    p.parts()
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for SchubertExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|p| format!("σ_{{{}}}", join_parts(p))))
    }
}

impl Add for &SchubertExpr {
    type Output = SchubertExpr;
    fn add(self, rhs: &SchubertExpr) -> SchubertExpr {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SchubertExpr {
    type Output = SchubertExpr;
    fn sub(self, rhs: &SchubertExpr) -> SchubertExpr {
        self + &(-rhs)
    }
}

impl Neg for &SchubertExpr {
    type Output = SchubertExpr;
    fn neg(self) -> SchubertExpr {
        SchubertExpr {
            terms: self.terms.iter().map(|(p, c)| (p.clone(), -c)).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    partition: Partition,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct ExprJson {
    terms: Vec<TermJson>,
}

impl Serialize for SchubertExpr {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ExprJson {
            terms: self
                .terms
                .iter()
                .map(|(p, c)| TermJson {
                    partition: p.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SchubertExpr {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = ExprJson::deserialize(deserializer)?;
        let mut e = SchubertExpr::zero();
        for t in raw.terms {
            let c: BigInt = t.coeff.parse().map_err(serde::de::Error::custom)?;
            e.add_term(t.partition, c);
        }
        Ok(e)
    }
}

/// Partitions `c` with `|c| = |a| + b` obtained by adding a horizontal strip
/// of length `b` to `a`, i.e. `a_i <= c_i <= a_{i-1}` with `a_0` the box
/// width (unbounded in stable mode).
fn pieri_shapes(a: &Partition, b: u32, bx: BoxSpec) -> Vec<Partition> {
    let (max_rows, a0) = match bx.dims() {
        Some((rows, cols)) => (rows as usize, cols),
        None => (usize::MAX, u32::MAX),
    };
    let slots = (a.len() + 1).min(max_rows);
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(slots);
    fn walk(
        i: usize,
        remaining: u32,
        a: &Partition,
        a0: u32,
        slots: usize,
        current: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if i == slots {
            if remaining == 0 {
                out.push(Partition::from_multiset(current.clone()));
            }
            return;
        }
        let low = a.part(i);
        let high = if i == 0 { a0 } else { a.part(i - 1) };
        if high < low {
            return;
        }
        let room = (high - low).min(remaining);
        for extra in 0..=room {
            current.push(low + extra);
            walk(i + 1, remaining - extra, a, a0, slots, current, out);
            current.pop();
        }
    }
    if a.len() > max_rows || a.part(0) > a0 {
        return out;
    }
    walk(0, b, a, a0, slots, &mut current, &mut out);
    out
}

/// Multiplies by the special class `σ_k`, with `σ_0 = 1` and `σ_k = 0` for
/// negative `k`.
pub(crate) fn special_times(e: &SchubertExpr, k: i64, bx: BoxSpec) -> SchubertExpr {
    match k {
        k if k < 0 => SchubertExpr::zero(),
        0 => e.truncate(bx),
        k => {
            let mut out = SchubertExpr::zero();
            for (a, c) in e.terms() {
                for shape in pieri_shapes(a, k as u32, bx) {
                    out.add_term(shape, c.clone());
                }
            }
            out
        }
    }
}

/// Pieri's rule `σ_b · e`.
pub fn pieri_multiply(e: &SchubertExpr, b: i64, bx: BoxSpec) -> Result<SchubertExpr> {
    if b < 0 {
        return Err(Error::Domain(format!(
            "Pieri degree must be nonnegative, got {b}"
        )));
    }
    Ok(special_times(e, b, bx))
}

/// Index matrix of Giambelli's determinant: entry `(i, j)` is
/// `a_i + j - i`, standing for `σ_{a_i + j - i}`.
pub fn giambelli_matrix(a: &Partition) -> Vec<Vec<i64>> {
    let q = a.len();
    (0..q)
        .map(|i| {
            (0..q)
                .map(|j| a.part(i) as i64 + j as i64 - i as i64)
                .collect()
        })
        .collect()
}

/// Products of special classes, keyed by the descending multiset of their
/// (positive) indices; `σ_0` factors are dropped.
pub type SpecialPoly = BTreeMap<Vec<u32>, BigInt>;

/// Expands the Giambelli determinant of `a` into a signed sum of products of
/// special classes, by Laplace expansion along the first remaining row with
/// minors memoized on the set of used columns.
pub fn giambelli_specials(a: &Partition) -> SpecialPoly {
    let matrix = giambelli_matrix(a);
    let q = matrix.len();
    assert!(q < 64, "Giambelli expansion supports fewer than 64 rows");
    let mut memo: HashMap<u64, SpecialPoly> = HashMap::new();
    minor(&matrix, 0, &mut memo)
}

fn minor(matrix: &[Vec<i64>], used: u64, memo: &mut HashMap<u64, SpecialPoly>) -> SpecialPoly {
    let q = matrix.len();
    let row = used.count_ones() as usize;
    if row == q {
        let mut unit = SpecialPoly::new();
        unit.insert(Vec::new(), BigInt::one());
        return unit;
    }
    if let Some(hit) = memo.get(&used) {
        return hit.clone();
    }
    let mut acc = SpecialPoly::new();
    let mut position = 0usize;
    for col in 0..q {
        if used & (1 << col) != 0 {
            continue;
        }
        let sign = if position.is_multiple_of(2) { 1 } else { -1 };
        position += 1;
        let k = matrix[row][col];
        if k < 0 {
            continue;
        }
        let sub = minor(matrix, used | (1 << col), memo);
        for (mono, c) in sub {
            let mut key = mono;
            if k > 0 {
                key.push(k as u32);
                key.sort_unstable_by(|x, y| y.cmp(x));
            }
            let slot = acc.entry(key).or_insert_with(BigInt::zero);
            *slot += c * sign;
        }
    }
    acc.retain(|_, c| !c.is_zero());
    memo.insert(used, acc.clone());
    acc
}

/// Applies a polynomial in special classes to `e` by successive Pieri steps.
pub fn apply_specials(poly: &SpecialPoly, e: &SchubertExpr, bx: BoxSpec) -> SchubertExpr {
    let mut out = SchubertExpr::zero();
    for (mono, c) in poly {
        let mut acc = e.truncate(bx);
        for &k in mono {
            acc = special_times(&acc, k as i64, bx);
            if acc.is_zero() {
                break;
            }
        }
        out = &out + &acc.scale(c);
    }
    out
}

/// Product in the Schubert basis.
pub fn multiply(e1: &SchubertExpr, e2: &SchubertExpr, bx: BoxSpec) -> SchubertExpr {
    let mut out = SchubertExpr::zero();
    for (a, ca) in e1.terms() {
        if !bx.admits(a) {
            continue;
        }
        let specials = giambelli_specials(a);
        let prod = apply_specials(&specials, &e2.truncate(bx), bx);
        out = &out + &prod.scale(ca);
    }
    out
}

/// `σ_1^t` by repeated Pieri.
pub fn sigma1_power(t: u32, bx: BoxSpec) -> SchubertExpr {
    (0..t).fold(SchubertExpr::one().truncate(bx), |acc, _| {
        special_times(&acc, 1, bx)
    })
}

/// Sufficient effectivity certificate: every Schubert coefficient is
/// nonnegative.
pub fn is_effective(e: &SchubertExpr) -> bool {
    e.terms().all(|(_, c)| !c.is_negative())
}

/// Coefficient of the full-box class in `σ_a σ_b`. Zero whenever the
/// degrees do not add up to the dimension of the Grassmannian.
pub fn intersection_number(a: &Partition, b: &Partition, bx: BoxSpec) -> Result<BigInt> {
    let full = bx
        .full()
        .ok_or_else(|| Error::InvalidBox("intersection needs a finite box".into()))?;
    for p in [a, b] {
        if !bx.admits(p) {
            return Err(Error::InvalidBox(format!("{p} does not fit the box")));
        }
    }
    let prod = multiply(
        &SchubertExpr::basis(a.clone()),
        &SchubertExpr::basis(b.clone()),
        bx,
    );
    Ok(prod.coeff(&full))
}

/// Duality pairing between complementary degrees: `1` iff `b` is the box
/// complement of `a`. Rejects pairs whose weights do not sum to the box area.
pub fn dual_pairing(a: &Partition, b: &Partition, bx: BoxSpec) -> Result<BigInt> {
    let full = bx
        .full()
        .ok_or_else(|| Error::InvalidBox("dual pairing needs a finite box".into()))?;
    let total = full.weight();
    if a.weight() + b.weight() != total {
        return Err(Error::WeightMismatch {
            expected: total,
            actual: a.weight() + b.weight(),
        });
    }
    intersection_number(a, b, bx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn s(parts: &[u32]) -> SchubertExpr {
        SchubertExpr::basis(p(parts))
    }

    fn sum(items: &[&[u32]]) -> SchubertExpr {
        items
            .iter()
            .fold(SchubertExpr::zero(), |acc, q| &acc + &s(q))
    }

    #[test]
    fn pieri_examples() {
        let st = BoxSpec::STABLE;
        assert_eq!(
            pieri_multiply(&s(&[1, 1]), 1, st).unwrap(),
            sum(&[&[2, 1], &[1, 1, 1]])
        );
        assert_eq!(
            pieri_multiply(&s(&[2]), 2, st).unwrap(),
            sum(&[&[4], &[3, 1], &[2, 2]])
        );
        let e = sum(&[&[2, 1], &[3]]);
        assert_eq!(pieri_multiply(&e, 0, st).unwrap(), e);
        assert!(pieri_multiply(&e, -1, st).is_err());
    }

    #[test]
    fn pieri_respects_box() {
        let bx = BoxSpec::new(2, 2).unwrap();
        // σ_1 · σ_{2,1} in G(4,2) leaves only σ_{2,2}.
        assert_eq!(pieri_multiply(&s(&[2, 1]), 1, bx).unwrap(), s(&[2, 2]));
        assert!(pieri_multiply(&s(&[1]), 3, bx).unwrap().is_zero());
    }

    #[test]
    fn giambelli_examples() {
        assert_eq!(giambelli_matrix(&p(&[1, 1])), vec![vec![1, 2], vec![0, 1]]);
        assert_eq!(giambelli_matrix(&p(&[3, 2])), vec![vec![3, 4], vec![1, 2]]);
        assert_eq!(giambelli_matrix(&p(&[5])), vec![vec![5]]);
        // σ_{1,1} = σ_1^2 - σ_2
        let specials = giambelli_specials(&p(&[1, 1]));
        assert_eq!(specials.get(&vec![1, 1]), Some(&BigInt::from(1)));
        assert_eq!(specials.get(&vec![2]), Some(&BigInt::from(-1)));
        // σ_{3,2} = σ_3σ_2 - σ_4σ_1
        let specials = giambelli_specials(&p(&[3, 2]));
        assert_eq!(specials.len(), 2);
        assert_eq!(specials.get(&vec![3, 2]), Some(&BigInt::from(1)));
        assert_eq!(specials.get(&vec![4, 1]), Some(&BigInt::from(-1)));
    }

    #[test]
    fn multiply_examples() {
        let st = BoxSpec::STABLE;
        assert_eq!(
            multiply(&s(&[2]), &s(&[1, 1]), st),
            sum(&[&[3, 1], &[2, 1, 1]])
        );
        let e = sum(&[&[2, 1], &[1, 1, 1]]);
        assert_eq!(multiply(&SchubertExpr::one(), &e, st), e);
        let stepwise = multiply(&s(&[1]), &multiply(&s(&[1]), &s(&[1, 1]), st), st);
        assert_eq!(stepwise, multiply(&s(&[1]), &e, st));
    }

    #[test]
    fn effectivity_examples() {
        let st = BoxSpec::STABLE;
        let sq = sigma1_power(2, st);
        assert!(is_effective(&(&sq - &s(&[1, 1]))));
        assert!(!is_effective(&(&s(&[2]) - &sq)));
        let s2s2 = multiply(&s(&[2]), &s(&[2]), st);
        let s1s3 = multiply(&s(&[1]), &s(&[3]), st);
        let diff = &s2s2 - &s1s3;
        assert_eq!(diff, s(&[2, 2]));
        assert!(is_effective(&diff));
    }

    #[test]
    fn duality_examples() {
        let bx = BoxSpec::new(2, 2).unwrap();
        assert_eq!(
            dual_pairing(&p(&[2, 1]), &p(&[1]), bx).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            dual_pairing(&p(&[2, 2]), &Partition::empty(), bx).unwrap(),
            BigInt::from(1)
        );
        assert!(dual_pairing(&p(&[2, 1]), &p(&[2]), bx).is_err());
        assert_eq!(
            intersection_number(&p(&[2, 1]), &p(&[2]), bx).unwrap(),
            BigInt::zero()
        );
        assert!(dual_pairing(&p(&[3]), &p(&[1]), bx).is_err());
        assert!(dual_pairing(&p(&[1]), &p(&[1]), BoxSpec::STABLE).is_err());
        assert_eq!(bx.complement(&p(&[2, 1])).unwrap(), p(&[1]));
    }

    #[test]
    fn json_shape() {
        let e = &s(&[2, 1]) - &s(&[3]);
        let text = serde_json::to_string(&e).unwrap();
        assert_eq!(
            text,
            r#"{"terms":[{"partition":[2,1],"coeff":"1"},{"partition":[3],"coeff":"-1"}]}"#
        );
        let back: SchubertExpr = serde_json::from_str(&text).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn display() {
        let e = sum(&[&[4], &[3, 1], &[2, 2]]);
        assert_eq!(e.to_string(), "σ_{4} + σ_{3,1} + σ_{2,2}");
        assert_eq!((-&s(&[1, 1])).to_latex(), "-\\sigma_{1,1}");
    }
}
