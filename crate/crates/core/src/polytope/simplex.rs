//! Dense exact-rational two-phase simplex with Bland's rule.
//!
//! Solves `max c·t` subject to `A t + b >= 0` over free variables `t`,
//! returning a checkable certificate in every case.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplexOutcome {
    /// `dual >= 0`, `A^T dual = -c` and `b·dual = value`.
    Optimal {
        value: Q,
        point: Vec<Q>,
        dual: Vec<Q>,
    },
    /// `farkas >= 0`, `A^T farkas = 0` and `b·farkas < 0`.
    Infeasible { farkas: Vec<Q> },
    /// `point` is feasible, `A ray >= 0` and `c·ray > 0`.
    Unbounded { point: Vec<Q>, ray: Vec<Q> },
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    basis: Vec<usize>,
    // reduced costs z_j = c_B B^{-1} col_j - c_j, and the objective value
    z: Vec<Q>,
    value: Q,
}

impl Tableau {
    fn price(&mut self, costs: &[Q]) {
        let width = costs.len();
        let mut z: Vec<Q> = costs.iter().map(|c| -c).collect();
        let mut value = Q::zero();
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &costs[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for j in 0..width {
                if !row[j].is_zero() {
                    z[j] += cb * &row[j];
                }
            }
            value += cb * &self.rhs[i];
        }
        self.z = z;
        self.value = value;
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            *v = &*v / &p;
        }
        self.rhs[r] = &self.rhs[r] / &p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][col].is_zero() {
                continue;
            }
            let f = self.rows[i][col].clone();
            for (v, pv) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        if !self.z[col].is_zero() {
            let f = self.z[col].clone();
            for (v, pv) in self.z.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.value -= &f * &pivot_rhs;
        }
        self.basis[r] = col;
    }

    /// Runs Bland's rule over columns `< allowed`. `Err(col)` names an
    /// entering column with no blocking row.
    fn optimize(&mut self, allowed: usize) -> Result<(), usize> {
        loop {
            let Some(col) = (0..allowed).find(|&j| self.z[j].is_negative()) else {
                return Ok(());
            };
            let mut best: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, col),
                None => return Err(col),
            }
        }
    }
}

/// Maximizes `c·t` subject to `a[i]·t + b[i] >= 0`.
pub fn maximize(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> SimplexOutcome {
    let m = a.len();
    let k = c.len();
    // x = (u, v) with t = u - v, then slacks, then artificials:
    // -A u + A v + s = b, rows with b < 0 negated and given an artificial.
    let negated: Vec<bool> = b.iter().map(|v| v.is_negative()).collect();
    let n_art = negated.iter().filter(|&&f| f).count();
    let slack0 = 2 * k;
    let art0 = slack0 + m;
    let width = art0 + n_art;

    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut next_art = art0;
    for i in 0..m {
        let sign = if negated[i] { -Q::one() } else { Q::one() };
        let mut row = vec![Q::zero(); width];
        for j in 0..k {
            row[j] = -&a[i][j] * &sign;
            row[k + j] = &a[i][j] * &sign;
        }
        row[slack0 + i] = sign.clone();
        if negated[i] {
            row[next_art] = Q::one();
            basis.push(next_art);
            next_art += 1;
        } else {
            basis.push(slack0 + i);
        }
        rows.push(row);
        rhs.push(&b[i] * &sign);
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis,
        z: Vec::new(),
        value: Q::zero(),
    };

    if n_art > 0 {
        let mut phase1 = vec![Q::zero(); width];
        for cost in phase1.iter_mut().skip(art0) {
            *cost = -Q::one();
        }
        t.price(&phase1);
        t.optimize(width).expect("phase one is bounded by zero");
        if t.value.is_negative() {
            let farkas = (0..m).map(|i| t.z[slack0 + i].clone()).collect();
            return SimplexOutcome::Infeasible { farkas };
        }
        drive_out_artificials(&mut t, art0);
    }

    let mut costs = vec![Q::zero(); width];
    for j in 0..k {
        costs[j] = c[j].clone();
        costs[k + j] = -&c[j];
    }
    t.price(&costs);
    let outcome = t.optimize(art0);
    let point = primal_point(&t, k);
    match outcome {
        Ok(()) => {
            let dual = (0..m).map(|i| t.z[slack0 + i].clone()).collect();
            SimplexOutcome::Optimal {
                value: t.value.clone(),
                point,
                dual,
            }
        }
        Err(col) => {
            let mut dx = vec![Q::zero(); width];
            dx[col] = Q::one();
            for (i, &bv) in t.basis.iter().enumerate() {
                dx[bv] = -&t.rows[i][col];
            }
            let ray = (0..k).map(|j| &dx[j] - &dx[k + j]).collect();
            SimplexOutcome::Unbounded { point, ray }
        }
    }
}

fn drive_out_artificials(t: &mut Tableau, art0: usize) {
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] < art0 {
            i += 1;
            continue;
        }
        match (0..art0).find(|&j| !t.rows[i][j].is_zero()) {
            Some(col) => {
                t.pivot(i, col);
                i += 1;
            }
            None => {
                // redundant row
                t.rows.remove(i);
                t.rhs.remove(i);
                t.basis.remove(i);
            }
        }
    }
}

fn primal_point(t: &Tableau, k: usize) -> Vec<Q> {
    let mut x = vec![Q::zero(); 2 * k];
    for (i, &bv) in t.basis.iter().enumerate() {
        if bv < 2 * k {
            x[bv] = t.rhs[i].clone();
        }
    }
    (0..k).map(|j| &x[j] - &x[k + j]).collect()
}

fn dot(x: &[Q], y: &[Q]) -> Q {
    x.iter().zip(y).fold(Q::zero(), |acc, (p, q)| acc + p * q)
}

fn transpose_times(a: &[Vec<Q>], y: &[Q], k: usize) -> Vec<Q> {
    (0..k)
        .map(|j| {
            a.iter()
                .zip(y)
                .fold(Q::zero(), |acc, (row, yi)| acc + &row[j] * yi)
        })
        .collect()
}

/// Checks the certificate carried by an outcome against the problem data.
pub fn verify(a: &[Vec<Q>], b: &[Q], c: &[Q], outcome: &SimplexOutcome) -> bool {
    let k = c.len();
    let feasible = |t: &[Q]| {
        a.iter()
            .zip(b)
            .all(|(row, bi)| !(dot(row, t) + bi).is_negative())
    };
    match outcome {
        SimplexOutcome::Optimal { value, point, dual } => {
            let neg_c: Vec<Q> = c.iter().map(|v| -v).collect();
            feasible(point)
                && dot(c, point) == *value
                && dual.iter().all(|y| !y.is_negative())
                && transpose_times(a, dual, k) == neg_c
                && dot(b, dual) == *value
        }
        SimplexOutcome::Infeasible { farkas } => {
            farkas.iter().all(|y| !y.is_negative())
                && transpose_times(a, farkas, k).iter().all(Zero::is_zero)
                && dot(b, farkas).is_negative()
        }
        SimplexOutcome::Unbounded { point, ray } => {
            feasible(point)
                && a.iter().all(|row| !dot(row, ray).is_negative())
                && dot(c, ray).is_positive()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> Q {
        Q::from_integer(BigInt::from(n))
    }

    fn rows(data: &[&[i64]]) -> Vec<Vec<Q>> {
        data.iter()
            .map(|r| r.iter().map(|&v| q(v)).collect())
            .collect()
    }

    fn vec_q(data: &[i64]) -> Vec<Q> {
        data.iter().map(|&v| q(v)).collect()
    }

    #[test]
    fn interval() {
        // t + 5 >= 0, 11 - t >= 0
        let a = rows(&[&[1], &[-1]]);
        let b = vec_q(&[5, 11]);
        let up = maximize(&a, &b, &vec_q(&[1]));
        assert!(verify(&a, &b, &vec_q(&[1]), &up));
        assert!(matches!(&up, SimplexOutcome::Optimal { value, .. } if *value == q(11)));
        let down = maximize(&a, &b, &vec_q(&[-1]));
        assert!(verify(&a, &b, &vec_q(&[-1]), &down));
        assert!(matches!(&down, SimplexOutcome::Optimal { value, .. } if *value == q(5)));
    }

    #[test]
    fn half_line_is_unbounded() {
        let a = rows(&[&[1]]);
        let b = vec_q(&[0]);
        let out = maximize(&a, &b, &vec_q(&[1]));
        assert!(verify(&a, &b, &vec_q(&[1]), &out));
        match out {
            SimplexOutcome::Unbounded { ray, .. } => assert!(ray[0].is_positive()),
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn contradiction_is_infeasible() {
        // t - 1 >= 0, -t >= 0
        let a = rows(&[&[1], &[-1]]);
        let b = vec_q(&[-1, 0]);
        let out = maximize(&a, &b, &vec_q(&[1]));
        assert!(verify(&a, &b, &vec_q(&[1]), &out));
        assert!(matches!(out, SimplexOutcome::Infeasible { .. }));
    }

    #[test]
    fn two_dimensional_with_redundancy() {
        // x >= 1, y >= 2, x + y <= 10, 2x + 2y <= 20
        let a = rows(&[&[1, 0], &[0, 1], &[-1, -1], &[-2, -2]]);
        let b = vec_q(&[-1, -2, 10, 20]);
        let c = vec_q(&[3, 1]);
        let out = maximize(&a, &b, &c);
        assert!(verify(&a, &b, &c, &out));
        assert!(matches!(&out, SimplexOutcome::Optimal { value, .. } if *value == q(26)));
    }
}
