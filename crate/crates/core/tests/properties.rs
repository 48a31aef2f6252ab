//! Property tests over the public API.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;

use edslab::eds::{generate_geometric, residues_mod_p};
use edslab::elliptic::{count_points, point_order_fp, CurveQ, PointQ};
use edslab::galois_density::{count_gl2, empirical_density, gl2_order};
use edslab::lrs::{decimate, is_degenerate, LrsSpec};
use edslab::ntkernel::arith::is_prime_u64;
use edslab::ntkernel::{crt_combine, hensel_lift_sqrt, legendre_symbol, sqrt_mod_prime};
use edslab::prooflab::construct_ell;
use edslab::refuter::{find_witness, verify_certificate, FinderConfig, WitnessOutcome};

const SMALL_PRIMES: [u64; 12] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn odd_prime() -> impl Strategy<Value = u64> {
    (3u64..2000).prop_filter("prime", |&p| is_prime_u64(p))
}

/// Integral non-torsion points on small curves.
fn fixture() -> impl Strategy<Value = (CurveQ, PointQ)> {
    (-4i64..=4, 1i64..=6, -3i64..=6).prop_filter_map("no integral non-torsion point", |(a, b, x)| {
        let curve = CurveQ::from_i64(a, b).ok()?;
        let rhs = x * x * x + a * x + b;
        if rhs <= 0 {
            return None;
        }
        let y = (rhs as f64).sqrt().round() as i64;
        if y * y != rhs {
            return None;
        }
        let point = curve.point_i64(x, y, 1).ok()?;
        (!curve.is_torsion(&point)).then_some((curve, point))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sqrt_squares_back(a in -100_000i64..100_000, r in odd_prime()) {
        let a = BigInt::from(a);
        if legendre_symbol(&a, r).unwrap() == 1 {
            let s = sqrt_mod_prime(&a, r).unwrap();
            prop_assert!(s <= r / 2);
            prop_assert_eq!(BigInt::from(s * s % r), a.mod_floor(&BigInt::from(r)));
        }
    }

    #[test]
    fn hensel_tower_is_consistent(a in 1i64..10_000, ri in 0usize..12, e in 2u32..6) {
        let r = SMALL_PRIMES[ri];
        let a = BigInt::from(a);
        prop_assume!(legendre_symbol(&a, r).unwrap() == 1);
        let hi = hensel_lift_sqrt(&a, r, e).unwrap();
        let lo = hensel_lift_sqrt(&a, r, e - 1).unwrap();
        let m = BigUint::from(r).pow(e);
        let m_lo = BigUint::from(r).pow(e - 1);
        prop_assert_eq!(BigInt::from(&hi * &hi % &m), a.mod_floor(&BigInt::from(m.clone())));
        let reduced = &hi % &m_lo;
        prop_assert!(reduced == lo || (&m_lo - &reduced) % &m_lo == lo);
    }

    #[test]
    fn crt_reproduces_inputs(vals in prop::collection::vec(-1000i64..1000, 1..5), start in 0usize..8) {
        let moduli: Vec<u64> = SMALL_PRIMES.iter().cycle().skip(start).take(vals.len()).copied().collect();
        let input: Vec<(BigInt, BigUint)> = vals.iter().zip(&moduli).map(|(&v, &m)| (BigInt::from(v), BigUint::from(m))).collect();
        let (x, big_m) = crt_combine(&input).unwrap();
        prop_assert_eq!(big_m, moduli.iter().map(|&m| BigUint::from(m)).product::<BigUint>());
        for (v, m) in &input {
            prop_assert_eq!(BigInt::from(&x % m), v.mod_floor(&BigInt::from(m.clone())));
        }
    }

    #[test]
    fn construct_ell_satisfies_congruence(ri in 1usize..12, e in 1u32..4, n0 in -50i64..50, j in 1i64..4, c in 1i64..200) {
        let r = SMALL_PRIMES[ri];
        let (n0, j, c) = (BigInt::from(n0), BigInt::from(j), BigInt::from(c));
        prop_assume!(!(&c % r).is_zero());
        prop_assume!(legendre_symbol(&(&n0 * &n0 + &j * &c), r).unwrap() == 1);
        let ell = BigInt::from(construct_ell(r, e, &n0, &j, &c).unwrap());
        let m = BigInt::from(r).pow(e);
        prop_assert!((BigInt::from(2) * &ell * &n0 + &c * &ell * &ell - &j).mod_floor(&m).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normalization_is_idempotent((curve, point) in fixture(), n in 1u64..12) {
        let q = curve.scalar_mul(n, &point);
        let once = q.renormalize();
        prop_assert!(once.is_normalized());
        prop_assert_eq!(once.renormalize(), once);
    }

    #[test]
    fn hasse_bound((curve, _point) in fixture(), pi in 0usize..12) {
        let p = SMALL_PRIMES[pi];
        prop_assume!(curve.has_good_reduction(p));
        let c = count_points(&curve, p).unwrap();
        prop_assert!(((c.trace * c.trace) as u64) < 4 * p);
        prop_assert_eq!(c.group_order as i64, p as i64 + 1 - c.trace);
    }

    #[test]
    fn divisibility_sequence((curve, point) in fixture()) {
        let seq = generate_geometric(&curve, &point, 14).unwrap();
        for m in 1..=14usize {
            for n in (2 * m..=14).step_by(m) {
                prop_assert!((seq.term(n) % seq.term(m)).is_zero(), "z_{} does not divide z_{}", m, n);
            }
        }
    }

    #[test]
    fn zeros_at_multiples_of_order((curve, point) in fixture(), pi in 0usize..12) {
        let p = SMALL_PRIMES[pi];
        let (_, y, z) = point.coords().unwrap();
        prop_assume!(curve.has_good_reduction(p) && !(z % p).is_zero() && !(y % p).is_zero());
        let seq = generate_geometric(&curve, &point, 64).unwrap();
        let ord = point_order_fp(&curve, &point, p).unwrap() as usize;
        for n in 1..=64usize {
            prop_assert_eq!((seq.term(n) % p).is_zero(), n % ord == 0, "exact z_{}", n);
        }
        // The recurrence stream exists only when |psi_n| reproduces z_n.
        if let Ok(res) = residues_mod_p(&seq, p, 4 * ord + 8) {
            for (i, &v) in res.iter().enumerate() {
                prop_assert_eq!(v == 0, (i + 1) % ord == 0, "stream index {}", i + 1);
            }
        }
    }

    #[test]
    fn decimation_commutes_with_eval(c in prop::collection::vec(-5i64..=5, 1..=3), u in prop::collection::vec(-5i64..=5, 3), m in 1u64..5) {
        let k = c.len();
        prop_assume!(c[k - 1] != 0 && u[..k].iter().any(|&v| v != 0));
        let spec = LrsSpec::from_i64(&c, &u[..k]).unwrap();
        let d = decimate(&spec, m).unwrap();
        for n in 1..=12u64 {
            prop_assert_eq!(d.eval_matrix(n).unwrap(), spec.eval_matrix(m * n).unwrap());
        }
    }
}

#[test]
fn gl2_counts_partition_the_group() {
    for q in [3u64, 5, 7, 11, 13] {
        let total: u64 = (0..q)
            .flat_map(|a| (1..q).map(move |b| (a, b)))
            .map(|(a, b)| count_gl2(q, a, b).unwrap().numerator)
            .sum();
        assert_eq!(total, gl2_order(q));
    }
}

#[test]
fn empirical_scan_is_deterministic() {
    let curve = CurveQ::from_i64(-1, 3).unwrap();
    let point = curve.point_i64(2, 3, 1).unwrap();
    let a = empirical_density(&curve, &point, 3, 3, 5_000, &[]).unwrap();
    let b = empirical_density(&curve, &point, 3, 3, 5_000, &[]).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.empirical.as_ref().unwrap().matching_primes, b.empirical.as_ref().unwrap().matching_primes);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    /// Every certificate the finder emits verifies.
    #[test]
    fn finder_output_verifies((curve, point) in fixture(), c1 in 1i64..=3, c2 in 1i64..=2) {
        let spec = LrsSpec::from_i64(&[c1, c2], &[1, 1]).unwrap();
        prop_assume!(!is_degenerate(&spec).degenerate);
        let config = FinderConfig { p_max: 3_000, ..FinderConfig::default() };
        if let Ok(WitnessOutcome::Found { certificate, .. }) = find_witness(&curve, &point, &spec, None, &config) {
            let v = verify_certificate(&certificate);
            prop_assert!(v.passed(), "{:?}", v.failures);
            prop_assert!(certificate.t_z % certificate.q == 0 && certificate.t_u % certificate.q != 0);
        }
    }
}

#[test]
fn several_specs_find_and_verify() {
    let curve = CurveQ::from_i64(-1, 3).unwrap();
    let point = curve.point_i64(2, 3, 1).unwrap();
    let config = FinderConfig { p_max: 20_000, ..FinderConfig::default() };
    for (c, u) in [(vec![1, 2], vec![1, 1]), (vec![2, 1], vec![1, 1]), (vec![3, 2], vec![1, 1]), (vec![1, 1, 1], vec![1, 1, 1])] {
        let spec = LrsSpec::from_i64(&c, &u).unwrap();
        let WitnessOutcome::Found { certificate, .. } = find_witness(&curve, &point, &spec, None, &config).unwrap() else {
            panic!("no witness for {spec}");
        };
        assert_eq!((certificate.p, certificate.q), (17, 5), "{spec}");
        assert!(verify_certificate(&certificate).passed(), "{spec}");
    }
}
