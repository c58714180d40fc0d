//! Todd polynomials `td_d(c_1, ..., c_d)` from the generating series
//! `x / (1 - e^{-x})` over formal Chern roots.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::chern::{ChernPoly, ChernVars};
use crate::error::{Error, Result};

/// Degree-`d` Todd polynomial with constant rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToddPolynomial {
    degree: u32,
    body: ChernPoly,
}

impl ToddPolynomial {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn body(&self) -> &ChernPoly {
        &self.body
    }

    pub fn into_body(self) -> ChernPoly {
        self.body
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator(&self) -> BigInt {
        use num_integer::Integer;
        self.body
            .terms()
            .map(|(_, c)| c.constant_term().denom().clone())
            .fold(BigInt::one(), |acc, d| acc.lcm(&d))
    }
}

impl fmt::Display for ToddPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.body, f)
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Coefficients `b_0..=b_d` of `x / (1 - e^{-x})`.
pub fn todd_series(d: u32) -> Vec<BigRational> {
    let d = d as usize;
    // (1 - e^{-x}) / x = sum_k (-1)^k x^k / (k+1)!
    let mut fact = BigInt::one();
    let mut inner = Vec::with_capacity(d + 1);
    for k in 0..=d {
        fact *= BigInt::from(k as u64 + 1);
        let sign = if k % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        inner.push(BigRational::new(sign, fact.clone()));
    }
    let mut out: Vec<BigRational> = Vec::with_capacity(d + 1);
    out.push(BigRational::one());
    for k in 1..=d {
        let mut acc = BigRational::zero();
        for j in 1..=k {
            acc -= &inner[j] * &out[k - j];
        }
        out.push(acc);
    }
    out
}

/// Coefficients `l_1..=l_d` (index 0 unused) of `log(x / (1 - e^{-x}))`,
/// from `k b_k = sum_{j=1}^k j l_j b_{k-j}`.
fn log_series(b: &[BigRational]) -> Vec<BigRational> {
    let mut l = vec![BigRational::zero(); b.len()];
    for k in 1..b.len() {
        let mut acc = &b[k] * BigRational::from_integer(BigInt::from(k));
        for j in 1..k {
            acc -= &l[j] * BigRational::from_integer(BigInt::from(j)) * &b[k - j];
        }
        l[k] = acc / BigRational::from_integer(BigInt::from(k));
    }
    l
}

/// Power sums `p_1..=p_d` of the Chern roots (index 0 unused) via Newton's
/// identities `p_k = sum_{i=1}^{k-1} (-1)^{i-1} c_i p_{k-i} + (-1)^{k-1} k c_k`.
pub fn power_sums(d: u32) -> Vec<ChernPoly> {
    let vars = ChernVars::Tangent;
    let mut p = vec![ChernPoly::zero(vars, 0)];
    for k in 1..=d {
        let mut acc = ChernPoly::var(vars, k).scale_rational(&rat(k as i64, 1));
        if k % 2 == 0 {
            acc = -&acc;
        }
        for i in 1..k {
            let term = &ChernPoly::var(vars, i) * &p[(k - i) as usize];
            acc = if i % 2 == 1 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        p.push(acc);
    }
    p
}

/// `td_0, ..., td_d`.
pub fn todd_polynomials(d: u32) -> Vec<ToddPolynomial> {
    let vars = ChernVars::Tangent;
    let b = todd_series(d);
    let l = log_series(&b);
    let p = power_sums(d);
    // degree-j part of log td is l_j p_j; exponentiate with
    // k T_k = sum_{j=1}^k j L_j T_{k-j}
    let logs: Vec<ChernPoly> = (0..=d as usize)
        .map(|j| {
            if j == 0 {
                ChernPoly::zero(vars, 0)
            } else {
                p[j].scale_rational(&l[j])
            }
        })
        .collect();
    let mut td: Vec<ChernPoly> = vec![ChernPoly::one(vars)];
    for k in 1..=d as usize {
        let mut acc = ChernPoly::zero(vars, k as u32);
        for j in 1..=k {
            let term = (&logs[j] * &td[k - j]).scale_rational(&rat(j as i64, 1));
            acc = &acc + &term;
        }
        td.push(acc.scale_rational(&rat(1, k as i64)));
    }
    td.into_iter()
        .enumerate()
        .map(|(k, body)| ToddPolynomial {
            degree: k as u32,
            body,
        })
        .collect()
}

pub fn todd_polynomial(d: u32) -> ToddPolynomial {
    todd_polynomials(d)
        .pop()
        .expect("degree 0 is always present")
}

/// `td_n`, whose value on the Chern numbers of an `n`-fold is `χ(X, O_X)`.
pub fn chi_structure_sheaf_functional(n: u32) -> Result<ChernPoly> {
    if n == 0 {
        return Err(Error::Domain("dimension must be positive".into()));
    }
    Ok(todd_polynomial(n).into_body())
}
