//! Numeric rationality and weight probes for truncated zeta series.
//!
//! The exact coefficients are shadowed into complex floats, a rational
//! function is fitted by solving the linear Hankel-type system for the
//! denominator, and the reciprocal roots of both polynomials are examined
//! for Weil-style absolute values `q^{w/2}`.

use num::complex::Complex64;

use super::ZetaError;

/// Relative pivot threshold below which the linear system counts as singular.
const PIVOT_EPS: f64 = 1e-12;
/// Numerator and denominator roots closer than this are a common factor.
const COMMON_ROOT_TOL: f64 = 1e-6;
/// Acceptance bound on the relative residual during the degree scan.
const SCAN_RESIDUAL_BOUND: f64 = 1e-9;
/// Polished roots must push the polynomial value below this bound.
const ROOT_RESIDUAL_BOUND: f64 = 1e-8;
/// Tolerance on `||α| - q^{w/2}|` when declaring a weight.
const WEIGHT_TOL: f64 = 1e-4;
/// Largest denominator tried for a fractional weight.
const MAX_WEIGHT_DENOMINATOR: u32 = 12;

/// A fitted rational function `A(T)/B(T)` with `B(0) = 1`. Coefficients are
/// in ascending order; `residual` is the largest mismatch between `B·C` and
/// `A` over all available series coefficients, relative to the series scale.
#[derive(Debug, Clone)]
pub struct RationalFn {
    pub numerator: Vec<Complex64>,
    pub denominator: Vec<Complex64>,
    pub residual: f64,
}

impl RationalFn {
    pub fn eval(&self, t: Complex64) -> Complex64 {
        horner(&self.numerator, t) / horner(&self.denominator, t)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let pack = |cs: &[Complex64]| -> Vec<serde_json::Value> {
            cs.iter().map(|z| serde_json::json!([z.re, z.im])).collect()
        };
        serde_json::json!({
            "numerator": pack(&self.numerator),
            "denominator": pack(&self.denominator),
            "residual": self.residual,
        })
    }
}

fn horner(coeffs: &[Complex64], t: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * t + c)
}

/// Gaussian elimination with partial pivoting on the largest modulus.
/// Returns `None` when a pivot falls below `PIVOT_EPS` relative to the
/// largest initial entry.
fn solve_dense(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let m = b.len();
    let scale = a
        .iter()
        .flatten()
        .map(|z| z.norm())
        .fold(0.0f64, f64::max)
        .max(1.0);
    for col in 0..m {
        let pivot_row = (col..m)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .unwrap();
        if a[pivot_row][col].norm() < PIVOT_EPS * scale {
            return None;
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        let (upper, lower) = a.split_at_mut(col + 1);
        let pivot = &upper[col];
        let (b_upper, b_lower) = b.split_at_mut(col + 1);
        let b_pivot = b_upper[col];
        for (row, rhs) in lower.iter_mut().zip(b_lower.iter_mut()) {
            let factor = row[col] / pivot[col];
            for (entry, &u) in row[col..].iter_mut().zip(&pivot[col..]) {
                *entry -= factor * u;
            }
            *rhs -= factor * b_pivot;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); m];
    for col in (0..m).rev() {
        let mut acc = b[col];
        for k in col + 1..m {
            acc -= a[col][k] * x[k];
        }
        x[col] = acc / a[col][col];
    }
    Some(x)
}

/// Fit `A/B` of the requested degrees to the series coefficients `c`.
///
/// The denominator solves the linear system that kills the coefficients of
/// `B·C` in degrees `deg_num+1 ..= deg_num+deg_den`, and the numerator is
/// read off as the low-order part of `B·C`. Any series coefficients beyond
/// `deg_num + deg_den` act as validation rows and feed the reported
/// residual. A shared numerator/denominator root within `1e-6` is an error.
pub fn pade(
    c: &[Complex64],
    deg_num: usize,
    deg_den: usize,
) -> Result<RationalFn, ZetaError> {
    let d = c.len() - 1;
    if deg_num + deg_den > d {
        return Err(ZetaError::PadeDegrees {
            num: deg_num,
            den: deg_den,
            d,
        });
    }
    let series_scale = c.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    if c[0].norm() <= PIVOT_EPS * series_scale.max(1.0) {
        return Err(ZetaError::PadeConstantTerm);
    }

    let at = |i: isize| -> Complex64 {
        if i < 0 {
            Complex64::new(0.0, 0.0)
        } else {
            c[i as usize]
        }
    };

    let mut denominator = vec![Complex64::new(1.0, 0.0)];
    if deg_den > 0 {
        let rows: Vec<Vec<Complex64>> = (deg_num + 1..=deg_num + deg_den)
            .map(|r| {
                (1..=deg_den)
                    .map(|j| at(r as isize - j as isize))
                    .collect()
            })
            .collect();
        let rhs: Vec<Complex64> = (deg_num + 1..=deg_num + deg_den).map(|r| -c[r]).collect();
        let b = solve_dense(rows, rhs).ok_or(ZetaError::SingularSystem {
            num: deg_num,
            den: deg_den,
        })?;
        denominator.extend(b);
    }

    let convolve = |r: usize| -> Complex64 {
        (0..=r.min(deg_den))
            .map(|j| denominator[j] * at(r as isize - j as isize))
            .sum()
    };
    let numerator: Vec<Complex64> = (0..=deg_num).map(convolve).collect();

    let worst = (deg_num + 1..=d)
        .map(|r| convolve(r).norm())
        .fold(0.0f64, f64::max);
    let residual = worst / series_scale.max(1.0);

    let fitted = RationalFn {
        numerator,
        denominator,
        residual,
    };
    let num_roots = poly_roots(&fitted.numerator)?;
    let den_roots = poly_roots(&fitted.denominator)?;
    for rn in &num_roots {
        for rd in &den_roots {
            if (rn - rd).norm() < COMMON_ROOT_TOL {
                return Err(ZetaError::CommonRoot { re: rn.re, im: rn.im });
            }
        }
    }
    Ok(fitted)
}

/// Scan denominator degrees `0, 1, ...` and return the first fit whose
/// relative residual over every series coefficient is at most `1e-9`,
/// together with the degrees used. The numerator degree is chosen as
/// `D - 1 - deg_den` so the top series coefficient always acts as a
/// validation row; singular systems and common-root fits are skipped.
pub fn pade_scan(c: &[Complex64]) -> Result<(RationalFn, usize, usize), ZetaError> {
    let d = c.len() - 1;
    if d == 0 {
        return Err(ZetaError::NoReconstruction { d });
    }
    for deg_den in 0..=d / 2 {
        let deg_num = d - 1 - deg_den;
        match pade(c, deg_num, deg_den) {
            Ok(fitted) if fitted.residual <= SCAN_RESIDUAL_BOUND => {
                return Ok((fitted, deg_num, deg_den));
            }
            Ok(_) => {}
            Err(ZetaError::SingularSystem { .. }) | Err(ZetaError::CommonRoot { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Err(ZetaError::NoReconstruction { d })
}

fn poly_eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    horner(coeffs, z)
}

fn poly_derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| *c * i as f64)
        .collect()
}

/// All complex roots of a polynomial with ascending coefficients, by
/// simultaneous (Durand-Kerner) iteration followed by a Newton polish.
/// Every returned root satisfies `|p(root)| ≤ 1e-8` on the monic
/// normalization; a root that cannot be pushed below that bound is an
/// error. Roots are sorted by real then imaginary part.
pub fn poly_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>, ZetaError> {
    let scale = coeffs.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    if scale == 0.0 {
        return Ok(Vec::new());
    }
    let mut work: Vec<Complex64> = coeffs.to_vec();
    while work.len() > 1 && work.last().unwrap().norm() <= 1e-12 * scale {
        work.pop();
    }
    let mut roots = Vec::new();
    while work.len() > 1 && work[0].norm() <= 1e-12 * scale {
        roots.push(Complex64::new(0.0, 0.0));
        work.remove(0);
    }
    let n = work.len() - 1;
    if n == 0 {
        sort_roots(&mut roots);
        return Ok(roots);
    }

    let leading = *work.last().unwrap();
    let monic: Vec<Complex64> = work.iter().map(|c| c / leading).collect();
    if n == 1 {
        roots.push(-monic[0]);
        sort_roots(&mut roots);
        return Ok(roots);
    }

    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n)
        .scan(Complex64::new(1.0, 0.0), |acc, _| {
            *acc *= seed;
            Some(*acc)
        })
        .collect();
    for _ in 0..500 {
        let mut worst = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() < 1e-300 {
                z[i] += Complex64::new(1e-6, 1e-6);
                worst = f64::MAX;
                continue;
            }
            let step = poly_eval(&monic, z[i]) / denom;
            z[i] -= step;
            worst = worst.max(step.norm());
        }
        if worst < 1e-14 {
            break;
        }
    }

    let deriv = poly_derivative(&monic);
    for zi in &mut z {
        for _ in 0..60 {
            let f = poly_eval(&monic, *zi);
            let df = poly_eval(&deriv, *zi);
            if df.norm() < 1e-300 {
                break;
            }
            let step = f / df;
            *zi -= step;
            if step.norm() <= 1e-16 * (1.0 + zi.norm()) {
                break;
            }
        }
        let residual = poly_eval(&monic, *zi).norm();
        if residual > ROOT_RESIDUAL_BOUND {
            return Err(ZetaError::RootResidual { residual });
        }
    }
    roots.extend(z);
    sort_roots(&mut roots);
    Ok(roots)
}

fn sort_roots(roots: &mut [Complex64]) {
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// One reciprocal root `α = 1/t` of a fitted polynomial, with the rational
/// weight `w` solving `|α| = q^{w/2}` if one exists with denominator at
/// most 12.
#[derive(Debug, Clone)]
pub struct WeightEntry {
    pub alpha: Complex64,
    pub magnitude: f64,
    /// `(numerator, denominator)` of the weight, in lowest found form.
    pub weight: Option<(i64, u32)>,
}

/// Reciprocal roots of the numerator and denominator of a fitted rational
/// function, each tagged with its magnitude and declared weight.
#[derive(Debug, Clone)]
pub struct WeightReport {
    pub q: u64,
    pub numerator: Vec<WeightEntry>,
    pub denominator: Vec<WeightEntry>,
}

impl WeightReport {
    pub fn to_json(&self) -> serde_json::Value {
        let pack = |entries: &[WeightEntry]| -> Vec<serde_json::Value> {
            entries
                .iter()
                .map(|e| {
                    let weight = match e.weight {
                        Some((num, den)) => serde_json::json!({"num": num, "den": den}),
                        None => serde_json::Value::Null,
                    };
                    serde_json::json!({
                        "alpha": [e.alpha.re, e.alpha.im],
                        "magnitude": e.magnitude,
                        "weight": weight,
                    })
                })
                .collect()
        };
        serde_json::json!({
            "q": self.q,
            "numerator": pack(&self.numerator),
            "denominator": pack(&self.denominator),
        })
    }
}

fn weight_of(magnitude: f64, q: u64) -> Option<(i64, u32)> {
    let w_real = 2.0 * magnitude.ln() / (q as f64).ln();
    for den in 1..=MAX_WEIGHT_DENOMINATOR {
        let num = (w_real * den as f64).round() as i64;
        let predicted = (q as f64).powf(num as f64 / den as f64 / 2.0);
        if (predicted - magnitude).abs() <= WEIGHT_TOL {
            return Some((num, den));
        }
    }
    None
}

fn weigh_poly(coeffs: &[Complex64], q: u64) -> Result<Vec<WeightEntry>, ZetaError> {
    let mut entries = Vec::new();
    for t in poly_roots(coeffs)? {
        if t.norm() < 1e-300 {
            return Err(ZetaError::Internal(
                "rational function has a root at the origin",
            ));
        }
        let alpha = Complex64::new(1.0, 0.0) / t;
        let magnitude = alpha.norm();
        entries.push(WeightEntry {
            alpha,
            magnitude,
            weight: weight_of(magnitude, q),
        });
    }
    entries.sort_by(|a, b| {
        a.magnitude
            .total_cmp(&b.magnitude)
            .then(a.alpha.re.total_cmp(&b.alpha.re))
            .then(a.alpha.im.total_cmp(&b.alpha.im))
    });
    Ok(entries)
}

/// Invert every root of a fitted rational function and look for weights:
/// rationals `w` with `|α| = q^{w/2}` within `1e-4`, trying denominators
/// in increasing order up to 12. Roots with no such `w` carry `None`.
pub fn weil_probe(fitted: &RationalFn, q: u64) -> Result<WeightReport, ZetaError> {
    if q < 2 {
        return Err(ZetaError::Internal("weil probe needs a field order q ≥ 2"));
    }
    Ok(WeightReport {
        q,
        numerator: weigh_poly(&fitted.numerator, q)?,
        denominator: weigh_poly(&fitted.denominator, q)?,
    })
}
