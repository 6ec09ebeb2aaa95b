//! Property-based checks for the algebraic kernels: field arithmetic,
//! cyclotomic numbers, truncated series, rational reconstruction, and
//! quaternions. Each property is a law the exact types must satisfy for
//! every input, so proptest shrinks any counterexample it finds.

use std::sync::Arc;

use hyperzeta::classical::Quaternion;
use hyperzeta::ffield::{extend, make_field, FieldCtx};
use hyperzeta::zeta::{pade, PowerSeries};
use hyperzeta::CycloNumber;
use num::complex::Complex64;
use proptest::prelude::*;

fn small_quaternion() -> impl Strategy<Value = Quaternion> {
    (-20i64..=20, -20i64..=20, -20i64..=20, -20i64..=20)
        .prop_map(|(a, b, c, d)| Quaternion::from_integers(a, b, c, d))
}

/// A handful of concrete fields spanning characteristics and degrees.
fn field_pool() -> Vec<Arc<FieldCtx>> {
    [(2u64, 1u32), (3, 1), (2, 2), (5, 1), (3, 2), (2, 4), (7, 1), (13, 1)]
        .iter()
        .map(|&(p, k)| make_field(p, k).unwrap())
        .collect()
}

fn small_cyclo() -> impl Strategy<Value = CycloNumber> {
    // Integer combinations of a few fixed roots of unity keep coefficient
    // growth in check while exercising cross-order arithmetic.
    (
        -5i64..=5,
        -5i64..=5,
        0u64..12,
        -5i64..=5,
        0u64..8,
    )
        .prop_map(|(c0, c1, e1, c2, e2)| {
            CycloNumber::from_integer(c0)
                .add(&CycloNumber::root_power(12, e1).unwrap().scale(
                    &num::BigRational::from_integer(c1.into()),
                ))
                .add(&CycloNumber::root_power(8, e2).unwrap().scale(
                    &num::BigRational::from_integer(c2.into()),
                ))
        })
}

fn integer_series(d: usize, lo: i64, hi: i64) -> impl Strategy<Value = PowerSeries> {
    proptest::collection::vec(lo..=hi, d + 1)
        .prop_map(|v| PowerSeries::from_coeffs(v.into_iter().map(CycloNumber::from_integer).collect()))
}

proptest! {
    #[test]
    fn field_ring_laws(seed in 0u64..u64::MAX, which in 0usize..8) {
        let field = &field_pool()[which];
        let q = field.order();
        let a = field.decode(seed % q);
        let b = field.decode(seed / q % q);
        let c = field.decode(seed / q / q % q);
        prop_assert_eq!(field.add(&a, &b), field.add(&b, &a));
        prop_assert_eq!(field.mul(&a, &b), field.mul(&b, &a));
        prop_assert_eq!(
            field.mul(&a, &field.add(&b, &c)),
            field.add(&field.mul(&a, &b), &field.mul(&a, &c))
        );
        prop_assert_eq!(field.sub(&field.add(&a, &b), &b), a.clone());
        if !a.is_zero() {
            let inv = field.inv(&a).unwrap();
            prop_assert_eq!(field.mul(&a, &inv), field.one());
        }
    }

    #[test]
    fn frobenius_is_a_field_homomorphism(seed in 0u64..u64::MAX, d in 2u32..4) {
        let base = make_field(3, 1).unwrap();
        let emb = extend(&base, d).unwrap();
        let ext = emb.ext();
        let q = ext.order();
        let x = ext.decode(seed % q);
        let y = ext.decode(seed / q % q);
        prop_assert_eq!(
            emb.frobenius(&ext.add(&x, &y)),
            ext.add(&emb.frobenius(&x), &emb.frobenius(&y))
        );
        prop_assert_eq!(
            emb.frobenius(&ext.mul(&x, &y)),
            ext.mul(&emb.frobenius(&x), &emb.frobenius(&y))
        );
        // Iterating the relative Frobenius d times is the identity.
        let mut z = x.clone();
        for _ in 0..d {
            z = emb.frobenius(&z);
        }
        prop_assert_eq!(z, x);
    }

    #[test]
    fn cyclo_ring_laws(x in small_cyclo(), y in small_cyclo(), z in small_cyclo()) {
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y.mul(&z)), x.mul(&y).mul(&z));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.sub(&x), CycloNumber::zero());
    }

    #[test]
    fn cyclo_inverse_and_embedding(x in small_cyclo(), y in small_cyclo()) {
        if !x.is_zero() {
            prop_assert_eq!(x.mul(&x.inv().unwrap()), CycloNumber::one());
        }
        // The complex embedding is a ring homomorphism up to rounding.
        let lhs = x.mul(&y).embed_complex();
        let rhs = x.embed_complex() * y.embed_complex();
        let scale = 1.0 + lhs.norm().max(rhs.norm());
        prop_assert!((lhs - rhs).norm() / scale < 1e-9);
    }

    #[test]
    fn series_exp_log_round_trip(s in integer_series(6, -6, 6)) {
        // exp is defined for zero constant term, log for constant term one.
        let mut coeffs = s.coeffs().to_vec();
        coeffs[0] = CycloNumber::zero();
        let s = PowerSeries::from_coeffs(coeffs);
        let e = s.exp().unwrap();
        prop_assert_eq!(e.log().unwrap(), s);
    }

    #[test]
    fn series_exp_turns_sums_into_products(
        a in integer_series(5, -4, 4),
        b in integer_series(5, -4, 4),
    ) {
        let zero_const = |s: &PowerSeries| {
            let mut c = s.coeffs().to_vec();
            c[0] = CycloNumber::zero();
            PowerSeries::from_coeffs(c)
        };
        let a = zero_const(&a);
        let b = zero_const(&b);
        let lhs = a.add(&b).unwrap().exp().unwrap();
        let rhs = a.exp().unwrap().mul(&b.exp().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn series_inverse_multiplies_to_one(s in integer_series(6, -6, 6)) {
        let mut coeffs = s.coeffs().to_vec();
        coeffs[0] = CycloNumber::from_integer(1);
        let s = PowerSeries::from_coeffs(coeffs);
        let inv = s.inverse().unwrap();
        prop_assert_eq!(s.mul(&inv).unwrap(), PowerSeries::one(6));
        prop_assert_eq!(s.pow(-1).unwrap(), inv);
    }

    #[test]
    fn series_pow_matches_repeated_multiplication(s in integer_series(5, -3, 3)) {
        let mut coeffs = s.coeffs().to_vec();
        coeffs[0] = CycloNumber::from_integer(1);
        let s = PowerSeries::from_coeffs(coeffs);
        let cubed = s.mul(&s).unwrap().mul(&s).unwrap();
        prop_assert_eq!(s.pow(3).unwrap(), cubed);
    }

    #[test]
    fn pade_recovers_rational_series(
        a in -4i64..=4,
        b in -4i64..=4,
        c in -4i64..=4,
    ) {
        // Series of (1 - aT) / ((1 - bT)(1 - cT)) with no common factor.
        prop_assume!(a != b && a != c && b != 0 && c != 0);
        let num = [1.0, -(a as f64)];
        let den = [1.0, -((b + c) as f64), (b * c) as f64];
        let d = 8;
        let mut series = vec![Complex64::new(0.0, 0.0); d + 1];
        for j in 0..=d {
            let mut v = if j < num.len() {
                Complex64::new(num[j], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            for i in 1..den.len().min(j + 1) {
                v -= Complex64::new(den[i], 0.0) * series[j - i];
            }
            series[j] = v;
        }
        let fitted = pade(&series, 1, 2).unwrap();
        prop_assert!(fitted.residual <= 1e-9);
        for t in [0.011, -0.017, 0.023] {
            let t = Complex64::new(t, 0.0);
            let truth = (Complex64::new(1.0, 0.0) - Complex64::new(a as f64, 0.0) * t)
                / ((Complex64::new(1.0, 0.0) - Complex64::new(b as f64, 0.0) * t)
                    * (Complex64::new(1.0, 0.0) - Complex64::new(c as f64, 0.0) * t));
            prop_assert!((fitted.eval(t) - truth).norm() < 1e-8);
        }
    }

    #[test]
    fn quaternion_ring_laws(
        x in small_quaternion(),
        y in small_quaternion(),
        z in small_quaternion(),
    ) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(
            x.mul(&y.add(&z)),
            x.mul(&y).add(&x.mul(&z))
        );
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.sub(&x), Quaternion::zero());
    }

    #[test]
    fn quaternion_conjugation_and_norm(x in small_quaternion(), y in small_quaternion()) {
        // Conjugation reverses products; the norm is multiplicative.
        prop_assert_eq!(x.mul(&y).conj(), y.conj().mul(&x.conj()));
        prop_assert_eq!(x.mul(&y).norm(), x.norm() * y.norm());
        if !x.is_zero() {
            let inv = x.inv().unwrap();
            prop_assert_eq!(x.mul(&inv), Quaternion::one());
            prop_assert_eq!(inv.mul(&x), Quaternion::one());
        }
    }
}
