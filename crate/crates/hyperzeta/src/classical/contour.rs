//! Root recovery from the argument principle: the contour integral of
//! `P'(t)/P(t)·t` around a circle returns the sum of the enclosed roots,
//! counted with multiplicity. Trapezoidal quadrature on a circle converges
//! geometrically in the node count as long as no root sits near the
//! contour, so agreement between one node count and its double certifies
//! the digits.

use num::complex::Complex64;

use super::ClassicalError;

/// A complex polynomial `c_0 + c_1 x + ... + c_m x^m` with `m ≥ 1` and a
/// nonzero leading coefficient.
#[derive(Debug, Clone)]
pub struct ComplexPoly {
    coeffs: Vec<Complex64>,
}

impl ComplexPoly {
    pub fn new(coeffs: Vec<Complex64>) -> Result<ComplexPoly, ClassicalError> {
        if coeffs.len() < 2 || coeffs.last().unwrap().norm() == 0.0 {
            return Err(ClassicalError::BadPolynomial);
        }
        Ok(ComplexPoly { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * t + c)
    }

    pub fn eval_derivative(&self, t: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (i, c)| {
                acc * t + *c * i as f64
            })
    }

    /// From roots, expanded with leading coefficient 1. The inverse oracle
    /// for contour tests.
    pub fn from_roots(roots: &[Complex64]) -> Result<ComplexPoly, ClassicalError> {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i] -= c * r;
                next[i + 1] += c;
            }
            coeffs = next;
        }
        ComplexPoly::new(coeffs)
    }
}

fn quadrature(p: &ComplexPoly, center: Complex64, radius: f64, nodes: u32) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for idx in 0..nodes {
        let theta = std::f64::consts::TAU * idx as f64 / nodes as f64;
        let offset = Complex64::from_polar(radius, theta);
        let t = center + offset;
        acc += p.eval_derivative(t) / p.eval(t) * t * offset;
    }
    acc / nodes as f64
}

/// Sum of the roots of `p` inside the circle, counted with multiplicity,
/// via trapezoidal quadrature of `(1/2πi) ∮ P'(t)/P(t)·t dt`.
///
/// The quadrature runs at `nodes` and at `2·nodes`; a disagreement beyond
/// `1e-6` means a root sits close to the contour (or on a node) and is
/// reported instead of a wrong value. `nodes` must be a power of two, at
/// least 16.
pub fn root_contour(
    p: &ComplexPoly,
    center: Complex64,
    radius: f64,
    nodes: u32,
) -> Result<Complex64, ClassicalError> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(ClassicalError::BadRadius);
    }
    if nodes < 16 || !nodes.is_power_of_two() {
        return Err(ClassicalError::BadNodes);
    }
    let coarse = quadrature(p, center, radius, nodes);
    let fine = quadrature(p, center, radius, 2 * nodes);
    let delta = (coarse - fine).norm();
    if delta.is_nan() || delta > 1e-6 {
        return Err(ClassicalError::NoConvergence { delta });
    }
    Ok(fine)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn reals(values: &[f64]) -> Vec<Complex64> {
        values.iter().map(|&v| c(v, 0.0)).collect()
    }

    #[test]
    fn constructor_preconditions() {
        assert!(matches!(
            ComplexPoly::new(reals(&[1.0])),
            Err(ClassicalError::BadPolynomial)
        ));
        assert!(matches!(
            ComplexPoly::new(reals(&[1.0, 0.0])),
            Err(ClassicalError::BadPolynomial)
        ));
        assert!(ComplexPoly::new(reals(&[1.0, 2.0])).is_ok());
    }

    #[test]
    fn evaluation_and_derivative() {
        // 1 + 2x + 3x^2 at x = 2 is 17, derivative 2 + 6x is 14.
        let p = ComplexPoly::new(reals(&[1.0, 2.0, 3.0])).unwrap();
        assert_eq!(p.eval(c(2.0, 0.0)), c(17.0, 0.0));
        assert_eq!(p.eval_derivative(c(2.0, 0.0)), c(14.0, 0.0));
    }

    #[test]
    fn single_root_in_a_wide_circle() {
        let p = ComplexPoly::new(reals(&[-3.0, 1.0])).unwrap();
        let x = root_contour(&p, c(0.0, 0.0), 5.0, 64).unwrap();
        assert!((x - c(3.0, 0.0)).norm() <= 1e-8);
    }

    #[test]
    fn tight_circle_isolates_one_of_two_roots() {
        let p = ComplexPoly::new(reals(&[-1.0, 0.0, 1.0])).unwrap();
        let x = root_contour(&p, c(1.0, 0.0), 0.5, 64).unwrap();
        assert!((x - c(1.0, 0.0)).norm() <= 1e-8);
    }

    #[test]
    fn wide_circle_sums_both_roots() {
        let p = ComplexPoly::new(reals(&[-1.0, 0.0, 1.0])).unwrap();
        let x = root_contour(&p, c(0.0, 0.0), 2.0, 64).unwrap();
        assert!(x.norm() <= 1e-8);
    }

    #[test]
    fn multiplicity_is_counted() {
        // (x - 1)^2: the enclosed sum is 2.
        let p = ComplexPoly::from_roots(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let x = root_contour(&p, c(1.0, 0.0), 1.0, 64).unwrap();
        assert!((x - c(2.0, 0.0)).norm() <= 1e-8);
    }

    #[test]
    fn full_contour_matches_the_coefficient_ratio() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let degree = rng.gen_range(2usize..=6);
            let roots: Vec<Complex64> = (0..degree)
                .map(|_| c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)))
                .collect();
            let p = ComplexPoly::from_roots(&roots).unwrap();
            let sum = root_contour(&p, c(0.0, 0.0), 3.0, 128).unwrap();
            let m = p.degree();
            let vieta = -p.coeffs()[m - 1] / p.coeffs()[m];
            assert!((sum - vieta).norm() <= 1e-8, "degree {degree}");
        }
    }

    #[test]
    fn doubling_nodes_gains_a_decade_until_the_floor() {
        let p = ComplexPoly::from_roots(&[c(0.5, 0.0), c(0.0, -0.7), c(-0.3, 0.4)]).unwrap();
        let exact = c(0.2, -0.3);
        let mut nodes = 16u32;
        let mut err = (quadrature(&p, c(0.0, 0.0), 1.0, nodes) - exact).norm();
        while err > 1e-12 {
            nodes *= 2;
            let next = (quadrature(&p, c(0.0, 0.0), 1.0, nodes) - exact).norm();
            assert!(
                next <= err / 10.0 || next <= 1e-12,
                "error {err:e} -> {next:e} at {nodes} nodes"
            );
            err = next;
        }
    }

    #[test]
    fn root_near_the_contour_is_detected() {
        let p = ComplexPoly::new(reals(&[-1.0, 1.0])).unwrap();
        assert!(matches!(
            root_contour(&p, c(0.0, 0.0), 1.0000001, 64),
            Err(ClassicalError::NoConvergence { .. })
        ));
    }

    #[test]
    fn argument_preconditions() {
        let p = ComplexPoly::new(reals(&[-3.0, 1.0])).unwrap();
        assert!(matches!(
            root_contour(&p, c(0.0, 0.0), -1.0, 64),
            Err(ClassicalError::BadRadius)
        ));
        assert!(matches!(
            root_contour(&p, c(0.0, 0.0), 1.0, 8),
            Err(ClassicalError::BadNodes)
        ));
        assert!(matches!(
            root_contour(&p, c(0.0, 0.0), 1.0, 48),
            Err(ClassicalError::BadNodes)
        ));
    }
}
