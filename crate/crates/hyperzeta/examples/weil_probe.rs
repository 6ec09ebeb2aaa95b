//! Probe a truncated zeta series for rationality and Weil-style weights:
//! fit a rational function to the complex shadow of the coefficients, then
//! test every inverse root α for |α| = q^(w/2).
//!
//! Run with: cargo run --example weil_probe

use hyperzeta::cyclochar::CharSpec;
use hyperzeta::ffield::make_field;
use hyperzeta::laurent::LaurentPoly;
use hyperzeta::zeta::{pade_scan, weil_probe, zeta_hyper_direct, zeta_variety};
use hyperzeta::DEFAULT_BUDGET;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // A variety case with known answer: the line t1 + t2 + 1 in the
    // 2-torus over F_3 has zeta (1-T)^2/(1-3T).
    let f3 = make_field(3, 1)?;
    let line = LaurentPoly::new(
        &f3,
        2,
        vec![
            (vec![1, 0], f3.from_int(1)),
            (vec![0, 1], f3.from_int(1)),
            (vec![0, 0], f3.from_int(1)),
        ],
    )?;
    let series = zeta_variety(&f3, 2, &[line], 6, DEFAULT_BUDGET)?;
    let (fitted, deg_num, deg_den) = pade_scan(&series.complex_coeffs())?;
    println!(
        "variety series fits a ({deg_num}, {deg_den}) rational function, residual {:.1e}",
        fitted.residual
    );
    let report = weil_probe(&fitted, 3)?;
    for entry in report.numerator.iter().chain(&report.denominator) {
        println!(
            "  inverse root {:.6}{:+.6}i  |α| = {:.6}  weight {:?}",
            entry.alpha.re, entry.alpha.im, entry.magnitude, entry.weight
        );
    }

    // A hypergeometric case: the Kloosterman sums over F_5 assemble into
    // the polynomial (1-αT)(1-βT) with |α| = |β| = √5, weight 1.
    let f5 = make_field(5, 1)?;
    let kloosterman = LaurentPoly::new(
        &f5,
        1,
        vec![(vec![1], f5.from_int(1)), (vec![-1], f5.from_int(1))],
    )?;
    let chi = CharSpec::additive(&f5);
    let pis = [CharSpec::trivial(&f5)];
    let series = zeta_hyper_direct(&chi, &kloosterman, &pis, 6, DEFAULT_BUDGET)?;
    println!("\nkloosterman zeta series over F_5: {series}");
    let (fitted, _, _) = pade_scan(&series.complex_coeffs())?;
    let report = weil_probe(&fitted, 5)?;
    for entry in &report.numerator {
        println!(
            "  inverse root {:.6}{:+.6}i  |α| = {:.6}  weight {:?}",
            entry.alpha.re, entry.alpha.im, entry.magnitude, entry.weight
        );
        assert_eq!(entry.weight, Some((1, 1)));
    }
    println!("\nboth spectra land on the predicted weights");
    Ok(())
}
