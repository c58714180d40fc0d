mod support;

use chern_core::inequality::GenerateOptions;
use chern_core::polytope::simplex::{maximize, verify, SimplexOutcome};
use chern_core::polytope::{
    boundedness_certificate, build_polytope, build_polytope_with, certificate_for, chi_bounds,
    coordinates, lp_optimize, Direction, Extent, Functional, LpStatus, Mode, PolytopeOptions,
    RatioInequality, RatioVector,
};
use chern_core::{Error, Partition};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use support::{hypersurface_number, p, projective_number, q, qr, Q};

fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let k = b.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, v)| row.iter().cloned().chain([v.clone()]).collect())
        .collect();
    for col in 0..k {
        let piv = (col..k).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let lead = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v = &*v / &lead;
        }
        for r in 0..k {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (v, pv) in m[r].iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[k].clone()).collect())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Best vertex of a bounded system `a t + b >= 0`, or `None` if empty.
fn vertex_oracle(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> Option<Q> {
    let k = c.len();
    let mut best: Option<Q> = None;
    for rows in subsets(a.len(), k) {
        let sub_a: Vec<Vec<Q>> = rows.iter().map(|&i| a[i].clone()).collect();
        let sub_b: Vec<Q> = rows.iter().map(|&i| -&b[i]).collect();
        let Some(t) = solve(&sub_a, &sub_b) else {
            continue;
        };
        let feasible = a.iter().zip(b).all(|(row, bi)| {
            let v: Q = row.iter().zip(&t).map(|(x, y)| x * y).sum::<Q>() + bi;
            !v.is_negative()
        });
        if feasible {
            let val: Q = c.iter().zip(&t).map(|(x, y)| x * y).sum();
            if best.as_ref().is_none_or(|b| val > *b) {
                best = Some(val);
            }
        }
    }
    best
}

fn system(k: usize, rows: &[(Vec<i64>, i64)], with_box: bool) -> (Vec<Vec<Q>>, Vec<Q>) {
    let mut a: Vec<Vec<Q>> = rows
        .iter()
        .map(|(r, _)| r[..k].iter().map(|&v| q(v)).collect())
        .collect();
    let mut b: Vec<Q> = rows.iter().map(|(_, v)| q(*v)).collect();
    if with_box {
        for j in 0..k {
            for s in [1, -1] {
                let mut row = vec![q(0); k];
                row[j] = q(s);
                a.push(row);
                b.push(q(20));
            }
        }
    }
    (a, b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn optimum_matches_best_vertex(
        k in 1usize..=3,
        rows in prop::collection::vec((prop::collection::vec(-4i64..=4, 3), -10i64..=10), 1..6),
        obj in prop::collection::vec(-4i64..=4, 3),
    ) {
        let (a, b) = system(k, &rows, true);
        let c: Vec<Q> = obj[..k].iter().map(|&v| q(v)).collect();
        let out = maximize(&a, &b, &c);
        prop_assert!(verify(&a, &b, &c, &out));
        match (&out, vertex_oracle(&a, &b, &c)) {
            (SimplexOutcome::Optimal { value, .. }, Some(best)) => prop_assert_eq!(value, &best),
            (SimplexOutcome::Infeasible { .. }, None) => {}
            (got, want) => prop_assert!(false, "simplex {got:?} but vertex oracle {want:?}"),
        }
    }

    #[test]
    fn certificates_verify_without_a_box(
        k in 1usize..=3,
        rows in prop::collection::vec((prop::collection::vec(-3i64..=3, 3), -6i64..=6), 0..7),
        obj in prop::collection::vec(-3i64..=3, 3),
    ) {
        let (a, b) = system(k, &rows, false);
        let c: Vec<Q> = obj[..k].iter().map(|&v| q(v)).collect();
        let out = maximize(&a, &b, &c);
        prop_assert!(verify(&a, &b, &c, &out));
    }
}

fn ratio_point(n: u32, number: impl Fn(&Partition) -> Q) -> RatioVector {
    let top = number(&Partition::column(n));
    let values = coordinates(n).iter().map(|a| number(a) / &top).collect();
    RatioVector::new(n, values).unwrap()
}

fn interval(n: u32, m: i64, mode: Mode) -> Vec<(Q, Q)> {
    let cert = boundedness_certificate(n, m, mode).unwrap();
    assert!(cert.bounded());
    cert.coords
        .iter()
        .map(|c| (c.min.value.clone().unwrap(), c.max.value.clone().unwrap()))
        .collect()
}

#[test]
fn surface_intervals() {
    assert_eq!(interval(2, 1, Mode::GeneralType), vec![(q(-5), q(11))]);
    assert_eq!(interval(2, 5, Mode::GeneralType), vec![(q(-85), q(171))]);
    assert_eq!(interval(2, -1, Mode::Fano), vec![(q(-1), q(3))]);
}

#[test]
fn higher_dimensional_boxes() {
    assert_eq!(
        interval(3, 1, Mode::GeneralType),
        vec![(q(-9), q(16)), (q(-14), q(86))]
    );
    assert_eq!(
        interval(4, 1, Mode::GeneralType),
        vec![
            (q(-14), q(22)),
            (q(-140), q(484)),
            (q(-28), q(134)),
            (q(-91), q(953)),
        ]
    );
    let fano = interval(4, -1, Mode::Fano);
    assert_eq!(fano[3], (qr(-65, 3), q(165)));
}

#[test]
fn real_varieties_lie_inside() {
    for n in 2..=4u32 {
        for d in [n as i64 + 3, n as i64 + 4] {
            let pt = ratio_point(n, |a| hypersurface_number(n, d, a));
            for c in build_polytope(n, 1, Mode::GeneralType).unwrap() {
                assert!(c.holds_at(&pt), "n={n} d={d}: {c}");
            }
        }
        let pt = ratio_point(n, projective_number);
        for c in build_polytope(n, -1, Mode::Fano).unwrap() {
            assert!(c.holds_at(&pt), "P^{n}: {c}");
        }
    }
    // c_2 = 3 c_1^2 at m = 5
    let pt = RatioVector::new(2, vec![q(3)]).unwrap();
    assert!(build_polytope(2, 5, Mode::GeneralType)
        .unwrap()
        .iter()
        .all(|c| c.holds_at(&pt)));
}

#[test]
fn comparisons_only_tighten() {
    for n in [3, 4] {
        let opts = PolytopeOptions {
            generate: GenerateOptions {
                include_comparisons: false,
            },
        };
        let loose = build_polytope_with(n, 1, Mode::GeneralType, opts).unwrap();
        let tight = build_polytope(n, 1, Mode::GeneralType).unwrap();
        assert!(tight.len() >= loose.len());
        let a = certificate_for(n, 1, Mode::GeneralType, &loose).unwrap();
        let b = certificate_for(n, 1, Mode::GeneralType, &tight).unwrap();
        for (x, y) in a.coords.iter().zip(&b.coords) {
            assert!(y.min.value >= x.min.value);
            assert!(y.max.value <= x.max.value);
        }
    }
}

#[test]
fn duals_reconstruct_the_bound() {
    let constraints = build_polytope(3, 1, Mode::GeneralType).unwrap();
    for a in coordinates(3) {
        let f = Functional::coordinate(3, &a).unwrap();
        let r = lp_optimize(&constraints, &f, Direction::Max).unwrap();
        let SimplexOutcome::Optimal { dual, .. } = &r.outcome else {
            panic!("{a} unbounded");
        };
        // max r_a = sum_i y_i b_i with sum_i y_i A_i = -e_a
        let k = coordinates(3).len();
        let mut combo = vec![q(0); k];
        let mut value = q(0);
        for (y, c) in dual.iter().zip(&constraints) {
            for (acc, a) in combo.iter_mut().zip(c.coeffs()) {
                *acc += y * a;
            }
            value += y * c.constant();
        }
        let neg: Vec<Q> = f.coeffs().iter().map(|v| -v).collect();
        assert_eq!(combo, neg);
        assert_eq!(Some(value), r.value);
    }
}

#[test]
fn surface_chi_bounds() {
    let chi = chi_bounds(2, 1, Mode::GeneralType).unwrap();
    assert_eq!(chi.d1, Extent::Finite(q(-5)));
    assert_eq!(chi.d2, Extent::Finite(q(11)));
    assert_eq!(chi.d3, Extent::Finite(qr(-1, 3)));
    assert_eq!(chi.d4, Extent::Finite(q(1)));
}

#[test]
fn unbounded_and_infeasible_systems() {
    // only a lower bound on r(2)
    let half = vec![RatioInequality::new(2, vec![q(1)], q(5)).unwrap()];
    let cert = certificate_for(2, 1, Mode::GeneralType, &half).unwrap();
    assert!(!cert.bounded());
    assert_eq!(cert.coords[0].max.status(), LpStatus::Unbounded);
    assert!(cert.coords[0].max.ray().unwrap()[0].is_positive());
    let empty = vec![
        RatioInequality::new(2, vec![q(1)], q(-5)).unwrap(),
        RatioInequality::new(2, vec![q(-1)], q(1)).unwrap(),
    ];
    let f = Functional::coordinate(2, &p(&[2])).unwrap();
    let r = lp_optimize(&empty, &f, Direction::Max).unwrap();
    assert_eq!(r.status(), LpStatus::Infeasible);
    assert!(matches!(
        lp_optimize(&[], &f, Direction::Max),
        Err(Error::EmptySystem)
    ));
}

#[test]
fn mode_and_parameter_are_checked() {
    assert!(matches!(
        build_polytope(2, 0, Mode::GeneralType),
        Err(Error::ZeroM)
    ));
    assert!(build_polytope(2, -1, Mode::GeneralType).is_err());
    assert!(build_polytope(2, 1, Mode::Fano).is_err());
    assert!(matches!(
        RatioInequality::new(2, vec![q(0)], q(0)),
        Err(Error::Degenerate)
    ));
    assert!(RatioInequality::new(2, vec![q(0), q(1)], q(0)).is_err());
}

#[test]
fn certificate_json_shape() {
    let cert = boundedness_certificate(3, 1, Mode::GeneralType).unwrap();
    let v = serde_json::to_value(&cert).unwrap();
    assert_eq!(v["n"], 3);
    assert_eq!(v["mode"], "general-type");
    assert_eq!(v["bounded"], true);
    assert_eq!(v["coords"][0]["partition"], serde_json::json!([2, 1]));
    assert_eq!(v["coords"][0]["max"], "16");
    let text = serde_json::to_string(&v).unwrap();
    let again: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(again, v);
}

#[test]
fn constraint_json_round_trip() {
    for c in build_polytope(4, 1, Mode::GeneralType).unwrap() {
        let text = serde_json::to_string(&c).unwrap();
        let back: RatioInequality = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
    }
}
