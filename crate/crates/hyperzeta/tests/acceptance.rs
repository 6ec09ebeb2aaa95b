//! Acceptance gate: one test per shipping criterion, each ending in a single
//! PASS or FAIL line. Run `cargo test --test acceptance -- --nocapture` to
//! see the lines; any FAIL also fails the test with the collected detail.

use std::collections::{HashMap, HashSet};
use std::process::Command;
use std::sync::Arc;

use hyperzeta::classical::{
    nc_identity_check, nc_inverse_2x2, root_contour, ClassicalError, ComplexPoly,
    NcMatrix2, Quaternion,
};
use hyperzeta::cyclochar::{CharSpec, FieldChar, RootAccum};
use hyperzeta::ffield::{extend, make_field, FieldCtx};
use hyperzeta::hsums::{phi, verify_cayley};
use hyperzeta::laurent::LaurentPoly;
use hyperzeta::zeta::{
    cayley_factorize, pade_scan, verify_product, weil_probe, zeta_variety,
    PowerSeries,
};
use hyperzeta::{CycloNumber, DEFAULT_BUDGET};
use num::complex::Complex64;
use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Print the gate line for one criterion and fail the test on any violation.
fn settle(name: &str, violations: Vec<String>) {
    if violations.is_empty() {
        println!("PASS  {name}");
    } else {
        println!("FAIL  {name} ({} violation(s))", violations.len());
        panic!("{name}:\n  {}", violations.join("\n  "));
    }
}

/// Laurent polynomial from `(exponent vector, small nonneg coefficient)`
/// pairs.
fn lp(field: &Arc<FieldCtx>, n: usize, terms: &[(&[i64], u64)]) -> LaurentPoly {
    let terms = terms
        .iter()
        .map(|(e, c)| (e.to_vec(), field.from_int(*c)))
        .collect();
    LaurentPoly::new(field, n, terms).expect("term lists in this file are well formed")
}

fn random_system(
    rng: &mut ChaCha8Rng,
    field: &Arc<FieldCtx>,
    n: usize,
    k: usize,
) -> Vec<LaurentPoly> {
    (0..k)
        .map(|_| {
            let terms = (0..rng.gen_range(1..=4))
                .map(|_| {
                    let exp: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
                    (exp, field.from_int(rng.gen_range(1..field.order())))
                })
                .collect();
            LaurentPoly::new(field, n, terms).unwrap()
        })
        .collect()
}

#[test]
fn criterion_1_cayley_three_way_agreement() {
    let mut violations = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for trial in 0..100 {
        let q = [2u64, 3, 5][rng.gen_range(0..3)];
        let field = make_field(q, 1).unwrap();
        let n = rng.gen_range(1..=2);
        let k = rng.gen_range(1..=2);
        let polys = random_system(&mut rng, &field, n, k);
        let chi: FieldChar = CharSpec::additive(&field).into();
        let report = verify_cayley(&chi, n, &polys, DEFAULT_BUDGET).unwrap();
        if !report.all_equal {
            violations.push(format!(
                "trial {trial} (q={q}, n={n}, k={k}): lhs={}, middle={}, rhs={}",
                report.lhs, report.middle, report.rhs
            ));
        }
    }
    settle("three-way Cayley-sum agreement on 100 random systems", violations);
}

#[test]
fn criterion_2_direct_vs_euler_product() {
    let mut violations = Vec::new();
    let mut instances = 0;
    for q in [2u64, 3] {
        let field = make_field(q, 1).unwrap();
        let c = q - 1;
        let systems: Vec<(usize, LaurentPoly)> = vec![
            (1, lp(&field, 1, &[(&[1], 1), (&[-1], 1)])),
            (1, lp(&field, 1, &[(&[2], 1), (&[1], 1), (&[0], 1)])),
            (1, lp(&field, 1, &[(&[1], 1), (&[0], c)])),
            (2, lp(&field, 2, &[(&[1, 1], 1), (&[0, 0], 1)])),
            (2, lp(&field, 2, &[(&[1, 0], 1), (&[0, -1], 1)])),
            (2, lp(&field, 2, &[(&[2, 1], 1), (&[0, 1], 1), (&[0, 0], 1)])),
        ];
        for (n, poly) in systems {
            let index_tuples: Vec<Vec<u64>> = (0..c.pow(n as u32))
                .map(|code| (0..n).map(|v| code / c.pow(v as u32) % c).collect())
                .collect();
            for indices in index_tuples {
                let chi = CharSpec::additive(&field);
                let pis: Vec<CharSpec> = indices
                    .iter()
                    .map(|&i| CharSpec::multiplicative(&field, i).unwrap())
                    .collect();
                let report = verify_product(&chi, &poly, &pis, 4, DEFAULT_BUDGET).unwrap();
                instances += 1;
                if !report.equal {
                    violations.push(format!(
                        "q={q}, n={n}, indices={indices:?}: direct {} vs product {}",
                        report.direct, report.product
                    ));
                }
            }
        }
    }
    assert!(instances >= 20, "only {instances} instances were exercised");
    settle(
        "direct zeta series equals the closed-point Euler product",
        violations,
    );
}

#[test]
fn criterion_3_shifted_argument_factorization() {
    let mut violations = Vec::new();

    // Worked single-polynomial case over F_2: both sides equal 1/(1-T).
    let f2 = make_field(2, 1).unwrap();
    let worked = cayley_factorize(
        &CharSpec::additive(&f2),
        1,
        &[lp(&f2, 1, &[(&[1], 1), (&[0], 1)])],
        3,
        DEFAULT_BUDGET,
    )
    .unwrap();
    let geometric = PowerSeries::from_coeffs(vec![CycloNumber::from_integer(1); 4]);
    if worked.lhs != geometric || worked.rhs != geometric || !worked.equal {
        violations.push(format!(
            "worked case: lhs {} rhs {} (expected 1 + T + T^2 + T^3)",
            worked.lhs, worked.rhs
        ));
    }

    let f3 = make_field(3, 1).unwrap();
    let f5 = make_field(5, 1).unwrap();
    let others: Vec<(&Arc<FieldCtx>, usize, Vec<LaurentPoly>)> = vec![
        (&f2, 1, vec![lp(&f2, 1, &[(&[1], 1), (&[-1], 1)])]),
        (&f2, 2, vec![lp(&f2, 2, &[(&[1, 1], 1), (&[0, 0], 1)])]),
        (
            &f2,
            2,
            vec![
                lp(&f2, 2, &[(&[1, 0], 1), (&[0, 0], 1)]),
                lp(&f2, 2, &[(&[0, 1], 1), (&[0, 0], 1)]),
            ],
        ),
        (&f3, 1, vec![lp(&f3, 1, &[(&[1], 1), (&[0], 2)])]),
        (
            &f3,
            1,
            vec![
                lp(&f3, 1, &[(&[1], 1), (&[0], 1)]),
                lp(&f3, 1, &[(&[1], 1), (&[0], 2)]),
            ],
        ),
        (
            &f3,
            2,
            vec![lp(&f3, 2, &[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], 1)])],
        ),
        (
            &f3,
            2,
            vec![
                lp(&f3, 2, &[(&[1, 1], 1), (&[0, 0], 2)]),
                lp(&f3, 2, &[(&[1, 0], 1), (&[0, 0], 2)]),
            ],
        ),
        (&f5, 1, vec![lp(&f5, 1, &[(&[1], 1), (&[-1], 1)])]),
        (
            &f5,
            1,
            vec![
                lp(&f5, 1, &[(&[1], 1), (&[0], 4)]),
                lp(&f5, 1, &[(&[1], 1), (&[0], 3)]),
            ],
        ),
        (&f5, 2, vec![lp(&f5, 2, &[(&[1, 0], 1), (&[0, 1], 1)])]),
    ];
    for (field, n, polys) in others {
        let report =
            cayley_factorize(&CharSpec::additive(field), n, &polys, 3, DEFAULT_BUDGET)
                .unwrap();
        if !report.equal {
            violations.push(format!(
                "q={}, n={n}, k={}: lhs {} vs rhs {}",
                field.order(),
                polys.len(),
                report.lhs,
                report.rhs
            ));
        }
    }
    settle(
        "auxiliary-variable zeta factors into shifted subvariety zetas (11 systems)",
        violations,
    );
}

#[test]
fn criterion_4_closed_form_zetas_and_weights() {
    let mut violations = Vec::new();

    let f2 = make_field(2, 1).unwrap();
    let torus = zeta_variety(&f2, 1, &[], 6, DEFAULT_BUDGET).unwrap();
    for (i, want) in [1i64, 1, 2, 4, 8, 16, 32].into_iter().enumerate() {
        if torus.coeff(i).as_integer() != Some(BigInt::from(want)) {
            violations.push(format!(
                "1-torus over F_2, coefficient {i}: {} (expected {want})",
                torus.coeff(i)
            ));
        }
    }

    let f3 = make_field(3, 1).unwrap();
    let line = lp(&f3, 2, &[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], 1)]);
    let series = zeta_variety(&f3, 2, &[line], 6, DEFAULT_BUDGET).unwrap();
    for (i, want) in [1i64, 1, 4, 12, 36, 108, 324].into_iter().enumerate() {
        if series.coeff(i).as_integer() != Some(BigInt::from(want)) {
            violations.push(format!(
                "line over F_3, coefficient {i}: {} (expected {want})",
                series.coeff(i)
            ));
        }
    }

    // The fit must recover (1-T)^2/(1-3T): inverse roots 1, 1 of weight 0
    // and 3 of weight 2.
    let (fitted, _, _) = pade_scan(&series.complex_coeffs()).unwrap();
    let report = weil_probe(&fitted, 3).unwrap();
    let ok = report.numerator.len() == 2
        && report.denominator.len() == 1
        && report.numerator.iter().all(|e| {
            (e.alpha - Complex64::new(1.0, 0.0)).norm() <= 1e-4
                && e.weight == Some((0, 1))
        })
        && (report.denominator[0].alpha - Complex64::new(3.0, 0.0)).norm() <= 1e-4
        && report.denominator[0].weight == Some((2, 1));
    if !ok {
        violations.push(format!(
            "weight probe: numerator {:?}, denominator {:?}",
            report.numerator, report.denominator
        ));
    }
    settle("closed-form zetas match and yield inverse roots 3,1,1 of weights 2,0,0", violations);
}

#[test]
fn criterion_5_gauss_magnitude_and_kloosterman() {
    let mut violations = Vec::new();
    for q in [3u64, 5, 7] {
        let field = make_field(q, 1).unwrap();
        let t = lp(&field, 1, &[(&[1], 1)]);
        let chi: FieldChar = CharSpec::additive(&field).into();
        for index in 1..q - 1 {
            let pi: FieldChar = CharSpec::multiplicative(&field, index).unwrap().into();
            let value = phi(&chi, &t, &[pi], DEFAULT_BUDGET).unwrap();
            let gap = (value.embed_complex().norm() - (q as f64).sqrt()).abs();
            if gap > 1e-9 {
                violations.push(format!(
                    "Gauss sum for q={q}, index {index}: |value| off by {gap:.2e}"
                ));
            }
        }
    }

    let f5 = make_field(5, 1).unwrap();
    let kloosterman = lp(&f5, 1, &[(&[1], 1), (&[-1], 1)]);
    let chi: FieldChar = CharSpec::additive(&f5).into();
    let pi: FieldChar = CharSpec::trivial(&f5).into();
    let value = phi(&chi, &kloosterman, &[pi], DEFAULT_BUDGET).unwrap();
    let want = CycloNumber::from_integer(2)
        .add(&CycloNumber::root_power(5, 2).unwrap())
        .add(&CycloNumber::root_power(5, 3).unwrap());
    if value != want {
        violations.push(format!("Kloosterman sum over F_5: {value} (expected {want})"));
    }
    settle(
        "Gauss magnitudes are sqrt(q) for q in {3,5,7}; Kloosterman over F_5 exact",
        violations,
    );
}

/// Primes up to `bound` by trial division (the bound is tiny).
fn primes_to(bound: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for c in 2..=bound {
        if (2..c).take_while(|d| d * d <= c).all(|d| c % d != 0) {
            out.push(c);
        }
    }
    out
}

#[test]
fn criterion_6_towers_and_orthogonality() {
    const FIELD_BOUND: u64 = 1 << 12;
    const CHAR_BOUND: u64 = 1 << 8;
    let mut violations = Vec::new();
    let mut towers = 0;
    let mut fields = 0;

    for p in primes_to(FIELD_BOUND) {
        let e_max = (1..).take_while(|&e| p.pow(e) <= FIELD_BOUND).last().unwrap();
        // Every tower F_{p^k} within F_{p^{k d}} under the size bound.
        for k in 1..=e_max {
            for d in 1..=e_max / k {
                towers += 1;
                let base = make_field(p, k).unwrap();
                let emb = extend(&base, d).unwrap();
                let ext = emb.ext().clone();
                let mut frobenius_fixed = 0u64;
                let mut norm_image = HashSet::new();
                for x in ext.elements() {
                    let fx = emb.frobenius(&x);
                    if fx == x {
                        frobenius_fixed += 1;
                    }
                    // rel_trace and rel_norm return base coordinates and fail
                    // internally if the value falls outside the base copy.
                    let tr = emb.rel_trace(&x).unwrap();
                    let nm = emb.rel_norm(&x).unwrap();
                    if emb.rel_trace(&fx).unwrap() != tr || emb.rel_norm(&fx).unwrap() != nm
                    {
                        violations.push(format!(
                            "p={p}, k={k}, d={d}: trace or norm not Frobenius-invariant"
                        ));
                    }
                    if !x.is_zero() {
                        norm_image.insert(base.encode(&nm));
                    }
                }
                if frobenius_fixed != base.order() {
                    violations.push(format!(
                        "p={p}, k={k}, d={d}: Frobenius fixes {frobenius_fixed} points, \
                         expected {}",
                        base.order()
                    ));
                }
                if norm_image.len() as u64 != base.order() - 1 {
                    violations.push(format!(
                        "p={p}, k={k}, d={d}: norm image has {} values, expected {}",
                        norm_image.len(),
                        base.order() - 1
                    ));
                }
                // Additivity and multiplicativity on a deterministic sample.
                let mut rng = ChaCha8Rng::seed_from_u64(p * 1_000_000 + (k * 100 + d) as u64);
                for _ in 0..20 {
                    let x = ext.decode(rng.gen_range(0..ext.order()));
                    let y = ext.decode(rng.gen_range(0..ext.order()));
                    let sum_ok = emb.rel_trace(&ext.add(&x, &y)).unwrap()
                        == base.add(&emb.rel_trace(&x).unwrap(), &emb.rel_trace(&y).unwrap());
                    let prod_ok = emb.rel_norm(&ext.mul(&x, &y)).unwrap()
                        == base.mul(&emb.rel_norm(&x).unwrap(), &emb.rel_norm(&y).unwrap());
                    if !sum_ok || !prod_ok {
                        violations.push(format!(
                            "p={p}, k={k}, d={d}: trace additivity or norm \
                             multiplicativity fails"
                        ));
                    }
                }
            }
        }

        // Character orthogonality per extension field.
        for e in 1..=e_max {
            let q = p.pow(e);
            fields += 1;
            let field = make_field(p, e).unwrap();
            let chi = CharSpec::additive(&field);
            let mut acc = RootAccum::new(chi.value_order()).unwrap();
            for x in field.elements() {
                acc.add_root(&chi.eval_root(&x).unwrap());
            }
            if !acc.finish().is_zero() {
                violations.push(format!("additive character sum over F_{q} is nonzero"));
            }
            if q <= CHAR_BOUND {
                let m = q - 1;
                let mut memo: HashMap<Vec<u64>, bool> = HashMap::new();
                for index in 1..m {
                    let pi = CharSpec::multiplicative(&field, index).unwrap();
                    let mut counts = vec![0u64; m as usize];
                    for j in 0..m {
                        let r = pi.eval_root(&field.gen_pow(j)).unwrap();
                        counts[r.exponent_in(m) as usize] += 1;
                    }
                    let zero = *memo.entry(counts.clone()).or_insert_with(|| {
                        let mut acc = RootAccum::new(m).unwrap();
                        for (exp, &c) in counts.iter().enumerate() {
                            for _ in 0..c {
                                acc.add_exponent(exp as u64);
                            }
                        }
                        acc.finish().is_zero()
                    });
                    if !zero {
                        violations.push(format!(
                            "multiplicative character {index} over F_{q} does not sum \
                             to zero"
                        ));
                    }
                }
            }
        }
    }
    assert!(towers > 600, "only {towers} towers enumerated");
    assert!(fields > 600, "only {fields} fields enumerated");
    settle(
        "tower invariants to 2^12 and character orthogonality (multiplicative to 2^8)",
        violations,
    );
}

#[test]
fn criterion_7_contour_root_recovery() {
    let mut violations = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    for trial in 0..20 {
        let roots: Vec<Complex64> = loop {
            let cand: Vec<Complex64> = (0..3)
                .map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
                .collect();
            let mut sep = f64::INFINITY;
            for a in 0..3 {
                for b in a + 1..3 {
                    sep = sep.min((cand[a] - cand[b]).norm());
                }
            }
            if sep >= 0.8 {
                break cand;
            }
        };
        let poly = ComplexPoly::from_roots(&roots).unwrap();

        let isolation = (roots[0] - roots[1])
            .norm()
            .min((roots[0] - roots[2]).norm());
        let single = root_contour(&poly, roots[0], isolation / 3.0, 256).unwrap();
        if (single - roots[0]).norm() > 1e-8 {
            violations.push(format!(
                "trial {trial}: isolated root off by {:.2e}",
                (single - roots[0]).norm()
            ));
        }

        let radius = roots.iter().map(|r| r.norm()).fold(0.0, f64::max) + 2.0;
        let all = root_contour(&poly, Complex64::new(0.0, 0.0), radius, 256).unwrap();
        // Vieta: the full root sum is -c_2/c_3 of the monic cubic.
        let vieta = -poly.coeffs()[2] / poly.coeffs()[3];
        if (all - vieta).norm() > 1e-8 {
            violations.push(format!(
                "trial {trial}: full-contour sum off Vieta by {:.2e}",
                (all - vieta).norm()
            ));
        }
    }
    settle(
        "contour integrals recover isolated roots and Vieta sums for 20 cubics",
        violations,
    );
}

fn random_quaternion(rng: &mut ChaCha8Rng) -> Quaternion {
    Quaternion::from_integers(
        rng.gen_range(-5..=5),
        rng.gen_range(-5..=5),
        rng.gen_range(-5..=5),
        rng.gen_range(-5..=5),
    )
}

#[test]
fn criterion_8_quaternion_inverse_and_charts() {
    let mut violations = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let mut done = 0;
    let mut attempts = 0;
    while done < 500 {
        attempts += 1;
        assert!(attempts < 5_000, "generic instances should dominate");
        let m = NcMatrix2::new(
            random_quaternion(&mut rng),
            random_quaternion(&mut rng),
            random_quaternion(&mut rng),
            random_quaternion(&mut rng),
        );
        let inv = match nc_inverse_2x2(&m) {
            Ok(inv) => inv,
            Err(_) => continue,
        };
        done += 1;
        if m.mul(&inv) != NcMatrix2::identity() || inv.mul(&m) != NcMatrix2::identity() {
            violations.push(format!("instance {done}: X * X^-1 is not the identity"));
        }
        let chart = nc_identity_check(&m.a1, &m.b1, &m.a2, &m.b2);
        if chart.equal != Some(true) {
            violations.push(format!(
                "instance {done}: chart comparison returned {:?}",
                chart.equal
            ));
        }
    }

    // Off-chart inputs are rejected by name rather than computed.
    match nc_inverse_2x2(&NcMatrix2::identity()) {
        Err(ClassicalError::ZeroEntry { entry: "b1" }) => {}
        other => violations.push(format!("identity inverse returned {other:?}")),
    }
    let covanishing = NcMatrix2::new(
        Quaternion::i(),
        Quaternion::j(),
        Quaternion::k(),
        Quaternion::one(),
    );
    match nc_inverse_2x2(&covanishing) {
        Err(ClassicalError::ZeroQuasideterminant { which: "a1 - b1*b2^-1*a2" }) => {}
        other => violations.push(format!("co-vanishing inverse returned {other:?}")),
    }
    let no_lhs = nc_identity_check(
        &Quaternion::i(),
        &Quaternion::j(),
        &Quaternion::k(),
        &Quaternion::zero(),
    );
    if no_lhs.lhs_obstruction != Some("b2 = 0") || no_lhs.equal.is_some() {
        violations.push(format!(
            "b2 = 0 chart check reported {:?} / {:?}",
            no_lhs.lhs_obstruction, no_lhs.equal
        ));
    }
    let no_rhs = nc_identity_check(
        &Quaternion::i(),
        &Quaternion::j(),
        &Quaternion::zero(),
        &Quaternion::one(),
    );
    if no_rhs.rhs_obstruction != Some("a2 = 0") {
        violations.push(format!(
            "a2 = 0 chart check reported {:?}",
            no_rhs.rhs_obstruction
        ));
    }
    settle(
        "500 generic quaternion inverses and chart identities, plus named rejections",
        violations,
    );
}

#[test]
fn criterion_9_selftest_determinism() {
    let mut violations = Vec::new();
    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for run in 0..2 {
        let path = dir.path().join(format!("selftest-{run}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_hyperzeta"))
            .args(["selftest", "--no-timestamp", "--output"])
            .arg(&path)
            .status()
            .unwrap();
        if !status.success() {
            violations.push(format!("run {run} exited with {status}"));
        }
        reports.push(std::fs::read(&path).unwrap());
    }
    if reports[0] != reports[1] {
        violations.push("the two reports differ byte for byte".into());
    }
    let parsed: serde_json::Value = serde_json::from_slice(&reports[0]).unwrap();
    if parsed["result"]["all_pass"] != serde_json::Value::Bool(true) {
        violations.push(format!("selftest result was {}", parsed["result"]));
    }
    if parsed.get("timestamp").is_some() {
        violations.push("timestamp present despite --no-timestamp".into());
    }
    settle("selftest reports are byte-identical with timestamps suppressed", violations);
}
