use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use algen::config::Limits;
use algen::density::{den_matrix, zeta_value};
use algen::ffalg::{make_field, FqMat, GlGroup};
use algen::genff::{count_gen_power_formula, g_closed_form, gen_count, generates, AlgebraShape, Block, GenTuple};
use algen::genz::{
    conj_invariant, decode_zero_one_pair, det_commutator_test, generates_z, generates_zn_module, hnf, zero_one_census,
    ZMat,
};
use algen::json;
use algen::polys::{f_poly, h_poly, min_generators};
use algen::sampler::{exhaustive_poly_density, local_zero_count, MultiPoly};

fn m2z() -> AlgebraShape {
    AlgebraShape::over_z(vec![Block::matrices(2, 1)]).unwrap()
}

fn zmat(n: usize) -> impl Strategy<Value = ZMat> {
    prop::collection::vec(-5i64..=5, n * n).prop_map(move |e| ZMat::from_ints(n, &e).unwrap())
}

fn reduces_to_generator(a: &ZMat, b: &ZMat, p: u64) -> bool {
    let f = make_field(p, 1).unwrap();
    let shape = AlgebraShape::matrix_algebra(&f, a.n()).unwrap();
    generates(&shape, &GenTuple::of_matrices(vec![a.reduce(&f), b.reduce(&f)])).unwrap()
}

fn small_primes(bound: u64) -> Vec<u64> {
    algen::arith::primes_up_to(bound)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn field_axioms((p, s) in prop::sample::select(vec![(2u64, 1u32), (2, 3), (3, 2), (5, 1), (7, 2), (2, 4)]),
                    codes in prop::array::uniform3(any::<u64>())) {
        let f = make_field(p, s).unwrap();
        let [a, b, c] = codes.map(|x| f.from_code(x % f.q()).unwrap());
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
    }

    #[test]
    fn hnf_is_idempotent_and_spans(rows in prop::collection::vec(prop::collection::vec(-20i64..=20, 3), 0..5)) {
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let l = hnf(&big, 3).unwrap();
        prop_assert_eq!(&hnf(l.basis(), 3).unwrap(), &l);
        for r in &big {
            prop_assert!(l.contains(r));
        }
        for (row, &c) in l.basis().iter().zip(l.pivot_columns()) {
            prop_assert!(row[c] > BigInt::zero());
        }
    }

    #[test]
    fn smith_and_hermite_agree(n in 1usize..=3, rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 0..5)) {
        let vs: Vec<Vec<BigInt>> = rows.iter().map(|r| r[..n].iter().map(|&x| BigInt::from(x)).collect()).collect();
        let l = hnf(&vs, n).unwrap();
        prop_assert_eq!(generates_zn_module(n, &vs).unwrap(), l.rank() == n && l.index().is_one());
    }

    #[test]
    fn commutator_determinant_decides_generation(a in zmat(2), b in zmat(2)) {
        let z = generates_z(&m2z(), &GenTuple::of_matrices(vec![a.clone(), b.clone()])).unwrap();
        prop_assert_eq!(det_commutator_test(&a, &b).unwrap(), z.generates);
    }

    #[test]
    fn bad_primes_are_exactly_the_failing_primes(n in 2usize..=3, a in prop::collection::vec(-3i64..=3, 9),
                                                 b in prop::collection::vec(-3i64..=3, 9)) {
        let a = ZMat::from_ints(n, &a[..n * n]).unwrap();
        let b = ZMat::from_ints(n, &b[..n * n]).unwrap();
        let shape = AlgebraShape::over_z(vec![Block::matrices(n, 1)]).unwrap();
        let r = generates_z(&shape, &GenTuple::of_matrices(vec![a.clone(), b.clone()])).unwrap();
        prop_assert_eq!(r.generates, r.index.is_one());
        if r.index.is_zero() {
            prop_assert!(r.bad_primes.is_empty());
            for p in [2u64, 3, 5] {
                prop_assert!(!reduces_to_generator(&a, &b, p));
            }
        } else {
            for p in small_primes(50) {
                let bad = r.bad_primes.iter().any(|q| *q == p.into());
                prop_assert_eq!(reduces_to_generator(&a, &b, p), !bad, "p = {}", p);
            }
        }
    }

    #[test]
    fn zeta_error_is_certified(j in 1u32..=10, exp in 3i32..=15) {
        // zeta(2j) = |B_2j| (2 pi)^(2j) / (2 (2j)!)
        const B: [f64; 10] = [1.0 / 6.0, 1.0 / 30.0, 1.0 / 42.0, 1.0 / 30.0, 5.0 / 66.0, 691.0 / 2730.0,
                              7.0 / 6.0, 3617.0 / 510.0, 43867.0 / 798.0, 174611.0 / 330.0];
        let s = 2 * j;
        let fact: f64 = (1..=s).map(|i| i as f64).product();
        let exact = B[j as usize - 1] * (2.0 * std::f64::consts::PI).powi(s as i32) / (2.0 * fact);
        let eps = 10f64.powi(-exp);
        let z = zeta_value(s, eps).unwrap();
        prop_assert!(z.error_bound <= eps);
        prop_assert!((z.value - exact).abs() <= eps + 4.0 * f64::EPSILON * exact);
    }

    #[test]
    fn truncation_stays_inside_previous_interval(k in 3u32..=6, p1 in 2u64..2000, extra in 1u64..20_000) {
        let a = den_matrix(3, k, p1).unwrap();
        let b = den_matrix(3, k, p1 + extra).unwrap();
        prop_assert!(a.contains(b.value));
        prop_assert!(b.error_bound <= a.error_bound);
    }

    #[test]
    fn min_generators_steps_by_one(n in 2u32..=3, m in 1u64..5000) {
        let a = min_generators(n, m).unwrap();
        let b = min_generators(n, m + 1).unwrap();
        prop_assert!(b.r == a.r || (b.r == a.r + 1 && BigInt::from(m) == a.upper));
        prop_assert!(a.lower < BigInt::from(m) && BigInt::from(m) <= a.upper);
    }

    #[test]
    fn zmat_json_round_trip(n in 1usize..=3, e in prop::collection::vec(any::<i64>(), 9), shift in 0u32..80) {
        let entries: Vec<BigInt> = e[..n * n].iter().map(|&x| BigInt::from(x) << shift).collect();
        let m = ZMat::new(n, entries).unwrap();
        let text = json::zmat_to_json(&m).to_string();
        prop_assert_eq!(json::zmat_from_json(&json::parse(&text).unwrap()).unwrap(), m);
    }

    #[test]
    fn box_density_denominator(n in 1usize..=2, half in 0u64..25) {
        let coords: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(n, i)).collect();
        let d = exhaustive_poly_density(&coords, half, &Limits::default()).unwrap();
        prop_assert_eq!(d.total, (2 * half + 1).pow(n as u32));
    }
}

#[test]
fn coordinate_systems_have_one_local_zero() {
    let lim = Limits::default();
    for n in 1..=3 {
        let coords: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(n, i)).collect();
        for p in small_primes(30) {
            assert_eq!(local_zero_count(&coords, p, &lim).unwrap(), 1);
        }
    }
}

#[test]
fn integral_generators_reduce_to_generators() {
    let c = zero_one_census(3, &Limits::default()).unwrap();
    let failing: std::collections::HashSet<u64> = c.failures.iter().map(|(code, _)| *code).collect();
    // an odd stride samples all bit patterns keeps this quick; each pair is checked at five primes
    let shape = AlgebraShape::over_z(vec![Block::matrices(3, 1)]).unwrap();
    let mut checked = 0;
    for code in (0..1u64 << 18).step_by(37) {
        let (a, b) = decode_zero_one_pair(3, code);
        if !reduces_to_generator(&a, &b, 2) || failing.contains(&code) {
            continue;
        }
        assert!(generates_z(&shape, &GenTuple::of_matrices(vec![a.clone(), b.clone()])).unwrap().generates);
        for p in [2, 3, 5, 7, 11] {
            assert!(reduces_to_generator(&a, &b, p), "code {code}, p = {p}");
        }
        checked += 1;
    }
    assert!(checked > 500, "only {checked} pairs checked");
}

#[test]
fn invariants_classify_conjugacy_mod_odd_primes() {
    let shape = m2z();
    let pairs: Vec<(ZMat, ZMat)> = (0..1u64 << 8)
        .map(|c| decode_zero_one_pair(2, c))
        .filter(|(a, b)| generates_z(&shape, &GenTuple::of_matrices(vec![a.clone(), b.clone()])).unwrap().generates)
        .collect();
    assert_eq!(pairs.len(), 96);
    let inv: Vec<[BigInt; 5]> = pairs.iter().map(|(a, b)| conj_invariant(a, b).unwrap()).collect();
    let primes = [3u64, 5, 7, 11, 13];
    let fields: Vec<_> = primes.iter().map(|&p| make_field(p, 1).unwrap()).collect();
    let groups: Vec<GlGroup> = fields.iter().map(|f| GlGroup::enumerate(f, 2, 30_000).unwrap()).collect();
    let reduced: Vec<Vec<[FqMat; 2]>> =
        fields.iter().map(|f| pairs.iter().map(|(a, b)| [a.reduce(f), b.reduce(f)]).collect()).collect();
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let conj_everywhere = (0..primes.len()).all(|k| {
                let pb = BigInt::from(primes[k]);
                // the invariants are conjugation invariants, so differing residues settle it
                let same_mod_p = inv[i].iter().zip(&inv[j]).all(|(x, y)| ((x - y) % &pb).is_zero());
                same_mod_p && groups[k].conjugate(&reduced[k][i], &reduced[k][j], None).unwrap()
            });
            assert_eq!(conj_everywhere, inv[i] == inv[j], "pairs {i} and {j}");
        }
    }
}

#[test]
fn generator_counts_grow_with_tuple_length() {
    for n in [2u32, 3] {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            for m in 1..8 {
                assert!(gen_count(m + 1, n, q).unwrap() > gen_count(m, n, q).unwrap(), "n={n} q={q} m={m}");
            }
        }
    }
}

#[test]
fn one_more_copy_needs_one_more_generator() {
    let lim = Limits::default();
    for (m, n, q) in [(2u32, 2u32, 2u64), (2, 2, 3), (2, 3, 2)] {
        let copies: u32 = gen_count(m, n, q).unwrap().try_into().unwrap();
        assert!(count_gen_power_formula(m, n, q, 1, copies, &lim).unwrap() > BigInt::zero());
        assert!(count_gen_power_formula(m, n, q, 1, copies + 1, &lim).unwrap().is_zero());
        assert!(count_gen_power_formula(m + 1, n, q, 1, copies + 1, &lim).unwrap() > BigInt::zero());
    }
}

#[test]
fn generating_ratio_increases_towards_one() {
    for n in [2u32, 3] {
        let d = n * n;
        for q in [2u64, 3, 4, 5] {
            let qb = BigInt::from(q);
            for m in 2..=8u32 {
                let g = g_closed_form(m, n, q).unwrap();
                let next = g_closed_form(m + 1, n, q).unwrap();
                // g_m / q^(m d) <= g_(m+1) / q^((m+1) d)
                assert!(&g * qb.pow(d) <= next, "n={n} q={q} m={m}");
                // 1 - g / Q < c q^-e with c^2 = 2^(n+6), compared squared
                let full = qb.pow(m * d);
                let e = (m - 1) * (n - 1);
                let gap = &full - &g;
                let lhs = BigInt::from(2).pow(n + 6) * (&full / qb.pow(e)).pow(2);
                assert!(&gap * &gap < lhs, "n={n} q={q} m={m}");
            }
        }
    }
}

#[test]
fn threshold_polynomials_increase() {
    for k in 2..=10 {
        for (name, f) in [("f", f_poly(k).unwrap()), ("h", h_poly(k).unwrap())] {
            let mut prev = f.eval_i64(2);
            assert!(prev >= BigInt::zero());
            for x in 3..=50 {
                let v = f.eval_i64(x);
                assert!(v > prev, "{name}_{k} at {x}");
                prev = v;
            }
        }
    }
}
