mod support;

use chern_core::chern::ChernVars;
use chern_core::notation::parse_chern;
use chern_core::todd::{todd_polynomial, todd_polynomials, todd_series};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;
use support::{elementary, eval_chern, q, todd_at_roots, todd_series_oracle, Q};

#[test]
fn series_matches_bernoulli_numbers() {
    assert_eq!(todd_series(14), todd_series_oracle(14));
}

#[test]
fn low_degree_closed_forms() {
    let forms = [
        "c_1/2",
        "(c_1^2+c_2)/12",
        "c_1c_2/24",
        "(-c_1^4+4c_1^2c_2+3c_2^2+c_1c_3-c_4)/720",
    ];
    for (i, text) in forms.iter().enumerate() {
        let want = parse_chern(ChernVars::Tangent, text).unwrap();
        assert_eq!(*todd_polynomial(i as u32 + 1).body(), want, "td_{}", i + 1);
    }
}

#[test]
fn denominators_divide_known_values() {
    let known = [1, 2, 12, 24, 720, 1440, 60480];
    for (d, td) in todd_polynomials(6).iter().enumerate() {
        let den = td.denominator();
        assert!(BigInt::from(known[d]).is_multiple_of(&den), "td_{d}: {den}");
    }
    assert_eq!(todd_polynomial(4).denominator(), BigInt::from(720));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn matches_root_expansion(d in 1usize..=7, seed in prop::collection::vec(-5i64..=5, 7)) {
        let roots: Vec<Q> = seed[..d].iter().map(|&v| q(v)).collect();
        let c = elementary(&roots);
        let td = todd_polynomial(d as u32);
        prop_assert_eq!(eval_chern(td.body(), &c, &q(0)), todd_at_roots(d, &roots));
    }

    // td(E + F) = td(E) td(F), checked on a rank-2 plus rank-(d-2) split.
    #[test]
    fn multiplicative_on_sums(d in 2usize..=6, seed in prop::collection::vec(-4i64..=4, 6)) {
        let roots: Vec<Q> = seed[..d].iter().map(|&v| q(v)).collect();
        let (first, rest) = roots.split_at(2);
        let (ce, cf, call) = (elementary(first), elementary(rest), elementary(&roots));
        let tds = todd_polynomials(d as u32);
        let mut split = Q::from_integer(BigInt::from(0));
        for k in 0..=d {
            split += eval_chern(tds[k].body(), &ce, &q(0)) * eval_chern(tds[d - k].body(), &cf, &q(0));
        }
        prop_assert_eq!(split, eval_chern(tds[d].body(), &call, &q(0)));
    }
}

#[test]
fn surfaces_and_threefolds_have_integral_chi() {
    // degree-d hypersurfaces are honest manifolds: χ(O) must be an integer
    for (n, d) in [(2u32, 4i64), (2, 5), (2, 7), (3, 5), (3, 6), (4, 7)] {
        let (cls, deg) = support::hypersurface_classes(n, d);
        let td = todd_polynomial(n);
        let chi = eval_chern(td.body(), &cls, &q(0)) * deg;
        assert!(chi.is_integer(), "n = {n}, d = {d}: {chi}");
    }
    // a quintic surface has χ(O) = 5
    let (cls, deg) = support::hypersurface_classes(2, 5);
    assert_eq!(
        eval_chern(todd_polynomial(2).body(), &cls, &q(0)) * deg,
        q(5)
    );
}
