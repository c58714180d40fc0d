//! Independent oracles shared by the integration tests. Nothing here calls
//! into the algorithms it is used to check.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use chern_core::chern::ChernPoly;
use chern_core::Partition;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

/// All partitions of `n`, largest first in lexicographic order.
pub fn partitions_lex_desc(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rest.min(cap)).rev() {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub const VARS: usize = 6;
type Exp = [u8; VARS];

/// Schur polynomial in six variables as a map from exponent vectors to
/// coefficients, by enumerating semistandard tableaux.
pub fn schur_poly(shape: &[u32]) -> HashMap<Exp, i64> {
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
        .collect();
    let mut grid = vec![vec![0u8; shape.first().copied().unwrap_or(0) as usize]; shape.len()];
    let mut out = HashMap::new();
    fn fill(
        i: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<u8>>,
        out: &mut HashMap<Exp, i64>,
    ) {
        if i == cells.len() {
            let mut e = [0u8; VARS];
            for row in grid.iter() {
                for &v in row {
                    if v > 0 {
                        e[v as usize - 1] += 1;
                    }
                }
            }
            *out.entry(e).or_insert(0) += 1;
            return;
        }
        let (r, c) = cells[i];
        let lo_row = if c > 0 { grid[r][c - 1] } else { 1 };
        let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
        for v in lo_row.max(lo_col)..=VARS as u8 {
            grid[r][c] = v;
            fill(i + 1, cells, grid, out);
        }
        grid[r][c] = 0;
    }
    fill(0, &cells, &mut grid, &mut out);
    out
}

fn exp_of(parts: &[u32]) -> Exp {
    let mut e = [0u8; VARS];
    for (i, &v) in parts.iter().enumerate() {
        e[i] = v as u8;
    }
    e
}

/// `s_a s_b` in the Schur basis via monomial expansion in six variables.
/// Valid while `|a| + |b| <= 6`.
pub fn schur_product(a: &[u32], b: &[u32]) -> BTreeMap<Vec<u32>, i64> {
    let w: u32 = a.iter().sum::<u32>() + b.iter().sum::<u32>();
    assert!(
        w as usize <= VARS,
        "six variables only separate weight <= 6"
    );
    let sa = schur_poly(a);
    let sb = schur_poly(b);
    let shapes = partitions_lex_desc(w);
    let coeff = |mu: &Exp| -> i64 {
        sa.iter()
            .filter_map(|(ea, ca)| {
                let mut eb = [0u8; VARS];
                for i in 0..VARS {
                    eb[i] = mu[i].checked_sub(ea[i])?;
                }
                sb.get(&eb).map(|cb| ca * cb)
            })
            .sum()
    };
    let mut found: Vec<(Vec<u32>, i64, HashMap<Exp, i64>)> = Vec::new();
    for mu in &shapes {
        let e = exp_of(mu);
        let mut c = coeff(&e);
        for (_, cl, sl) in &found {
            c -= cl * sl.get(&e).copied().unwrap_or(0);
        }
        if c != 0 {
            found.push((mu.clone(), c, schur_poly(mu)));
        }
    }
    found.into_iter().map(|(k, c, _)| (k, c)).collect()
}

/// Bernoulli numbers with `B_1 = +1/2`, from `sum_{j<=k} C(k+1, j) B_j = k + 1`.
pub fn bernoulli_plus(n: usize) -> Vec<Q> {
    let mut b: Vec<Q> = Vec::with_capacity(n + 1);
    let mut binom = vec![vec![BigInt::one()]];
    for k in 1..=n + 1 {
        let prev = &binom[k - 1];
        let mut row = vec![BigInt::one(); k + 1];
        for j in 1..k {
            row[j] = &prev[j - 1] + &prev[j];
        }
        binom.push(row);
    }
    for k in 0..=n {
        let mut acc = q(k as i64 + 1);
        for (j, bj) in b.iter().enumerate() {
            acc -= Q::from_integer(binom[k + 1][j].clone()) * bj;
        }
        b.push(acc / Q::from_integer(binom[k + 1][k].clone()));
    }
    b
}

/// Coefficients of `x / (1 - e^{-x})`: `B_k^+ / k!`.
pub fn todd_series_oracle(n: usize) -> Vec<Q> {
    let b = bernoulli_plus(n);
    let mut fact = BigInt::one();
    (0..=n)
        .map(|k| {
            if k > 0 {
                fact *= BigInt::from(k);
            }
            &b[k] / Q::from_integer(fact.clone())
        })
        .collect()
}

/// Degree-`d` part of `prod_i x_i / (1 - e^{-x_i})` at the given roots.
pub fn todd_at_roots(d: usize, roots: &[Q]) -> Q {
    let series = todd_series_oracle(d);
    let mut acc = vec![Q::zero(); d + 1];
    acc[0] = Q::one();
    for x in roots {
        let mut next = vec![Q::zero(); d + 1];
        let mut xp = vec![Q::one(); d + 1];
        for k in 1..=d {
            xp[k] = &xp[k - 1] * x;
        }
        for i in 0..=d {
            if acc[i].is_zero() {
                continue;
            }
            for k in 0..=d - i {
                next[i + k] += &acc[i] * &series[k] * &xp[k];
            }
        }
        acc = next;
    }
    acc[d].clone()
}

/// Elementary symmetric values `e_0..=e_len`.
pub fn elementary(roots: &[Q]) -> Vec<Q> {
    let mut e = vec![Q::one()];
    for x in roots {
        let mut next = e.clone();
        next.push(Q::zero());
        for i in 1..next.len() {
            next[i] = &e.get(i).cloned().unwrap_or_else(Q::zero) + x * &e[i - 1];
        }
        e = next;
    }
    e
}

/// Evaluates a Chern polynomial at `c_i = c[i]` (`c[0]` unused) and a value
/// of the parameter `m`.
pub fn eval_chern(poly: &ChernPoly, c: &[Q], m: &Q) -> Q {
    poly.terms().fold(Q::zero(), |acc, (idx, coeff)| {
        let mono = idx.parts().iter().fold(Q::one(), |x, &i| {
            x * c.get(i as usize).cloned().unwrap_or_else(Q::zero)
        });
        acc + coeff.eval(m) * mono
    })
}

/// Chern numbers of a smooth degree-`d` hypersurface in `P^{n+1}`:
/// `c(T) = (1+h)^{n+2} / (1+dh)`, `h^n = d`. Returns `c_1..=c_n` as
/// multiples of `h^i` together with the degree.
pub fn hypersurface_classes(n: u32, d: i64) -> (Vec<Q>, Q) {
    let n = n as usize;
    let mut binom = vec![BigInt::one()];
    for k in 1..=n + 2 {
        let prev = binom.clone();
        binom = vec![BigInt::one(); k + 1];
        for j in 1..k {
            binom[j] = &prev[j - 1] + &prev[j];
        }
    }
    // (1+dh)^{-1} = sum (-d)^k h^k
    let c = (0..=n)
        .map(|i| {
            binom[..=i]
                .iter()
                .enumerate()
                .map(|(j, b)| Q::from_integer(b.clone()) * q((-d).pow((i - j) as u32)))
                .sum()
        })
        .collect();
    (c, q(d))
}

/// Value of the Chern monomial `c_a` on a hypersurface.
pub fn hypersurface_number(n: u32, d: i64, a: &Partition) -> Q {
    let (c, deg) = hypersurface_classes(n, d);
    a.parts().iter().fold(deg, |x, &i| x * &c[i as usize])
}

/// Value of `c_a` on projective space `P^n`.
pub fn projective_number(a: &Partition) -> Q {
    let n = a.weight() as i64;
    a.parts()
        .iter()
        .fold(Q::one(), |x, &i| x * binom(n + 1, i as i64))
}

pub fn binom(n: i64, k: i64) -> Q {
    (0..k).fold(Q::one(), |acc, j| acc * qr(n - j, j + 1))
}
