//! Recover sums of polynomial roots by numerically integrating
//! P'(t)/P(t) * t around a circle, with an automatic node-doubling
//! convergence check.
//!
//! Run with: cargo run --example contour_roots

use hyperzeta::classical::{root_contour, ComplexPoly};
use num::complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // One enclosed root: x - 3 inside |t| = 5.
    let linear = ComplexPoly::new(vec![
        Complex64::new(-3.0, 0.0),
        Complex64::new(1.0, 0.0),
    ])?;
    let sum = root_contour(&linear, Complex64::new(0.0, 0.0), 5.0, 64)?;
    println!("x - 3 inside |t| = 5:        integral = {:.9}{:+.9}i", sum.re, sum.im);
    assert!((sum - Complex64::new(3.0, 0.0)).norm() < 1e-8);

    // Isolate a single root of x^2 - 1 with a small circle around t = 1.
    let quadratic = ComplexPoly::new(vec![
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
    ])?;
    let sum = root_contour(&quadratic, Complex64::new(1.0, 0.0), 0.5, 64)?;
    println!("x^2 - 1 inside |t - 1| = 1/2: integral = {:.9}{:+.9}i", sum.re, sum.im);
    assert!((sum - Complex64::new(1.0, 0.0)).norm() < 1e-8);

    // A circle containing every root returns the root sum, which by Vieta
    // is -c_{d-1}/c_d. For x^3 - 2x^2 + x - 7 that is 2.
    let cubic = ComplexPoly::new(vec![
        Complex64::new(-7.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(-2.0, 0.0),
        Complex64::new(1.0, 0.0),
    ])?;
    let sum = root_contour(&cubic, Complex64::new(0.0, 0.0), 10.0, 128)?;
    println!("cubic inside |t| = 10:       integral = {:.9}{:+.9}i", sum.re, sum.im);
    assert!((sum - Complex64::new(2.0, 0.0)).norm() < 1e-8);

    // A root within 1e-7 of the contour defeats the quadrature, and the
    // doubling check reports it instead of returning garbage.
    match root_contour(&quadratic, Complex64::new(0.0, 0.0), 1.000_000_1, 64) {
        Err(err) => println!("near-contour root flagged:   {err}"),
        Ok(sum) => panic!("expected a convergence failure, got {sum}"),
    }
    Ok(())
}
