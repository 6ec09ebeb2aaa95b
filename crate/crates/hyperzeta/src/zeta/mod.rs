//! Truncated zeta series in the formal variable `T = q^{-s}`: the classical
//! series built from point counts, the hypergeometric series built from
//! character sums over extension towers, their Euler-type product over torus
//! closed points, the shifted-argument factorization connecting the two
//! worlds, and numeric rationality/weight probes.

mod closed_points;
mod factorize;
mod rational;

pub use closed_points::{
    rho, torus_closed_points, verify_product, zeta_hyper_product, ClosedPoint,
    ProductReport,
};
pub use factorize::{cayley_factorize, FactorTerm, FactorizeReport};
pub use rational::{
    pade, pade_scan, poly_roots, weil_probe, RationalFn, WeightEntry, WeightReport,
};

use std::sync::Arc;

use num::{BigInt, BigRational, Signed, Zero};
use thiserror::Error;

use crate::cyclochar::{char_lift, CharSpec, CycloError, CycloNumber};
use crate::ffield::{extend, FieldCtx, FieldError};
use crate::hsums::{count_points, phi, HsumError};
use crate::laurent::{LaurentError, LaurentPoly};

#[derive(Debug, Error)]
pub enum ZetaError {
    #[error("exp needs a series with zero constant term")]
    ExpConstantTerm,
    #[error("log needs a series with constant term 1")]
    LogConstantTerm,
    #[error("cannot invert a series with zero constant term")]
    InverseConstantTerm,
    #[error("series truncation degrees differ ({a} vs {b})")]
    DegreeMismatch { a: usize, b: usize },
    #[error("a variety zeta series produced a non-integer or negative coefficient")]
    BadVarietyCoefficient,
    #[error("pade needs deg_num + deg_den ≤ {d}, got {num} + {den}")]
    PadeDegrees { num: usize, den: usize, d: usize },
    #[error("pade needs a series with nonzero constant term")]
    PadeConstantTerm,
    #[error("pade linear system is singular at degrees ({num}, {den})")]
    SingularSystem { num: usize, den: usize },
    #[error("no rational reconstruction met the residual bound up to degree {d}")]
    NoReconstruction { d: usize },
    #[error("numerator and denominator share a root near {re}+{im}i")]
    CommonRoot { re: f64, im: f64 },
    #[error("root refinement stalled with residual {residual:e} (bound 1e-8)")]
    RootResidual { residual: f64 },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Hsum(#[from] HsumError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}

/// A truncated formal power series in `T = q^{-s}` with exact cyclotomic
/// coefficients, indices `0..=D`.
#[derive(Debug, Clone)]
pub struct PowerSeries {
    coeffs: Vec<CycloNumber>,
}

impl PowerSeries {
    pub fn from_coeffs(coeffs: Vec<CycloNumber>) -> PowerSeries {
        assert!(!coeffs.is_empty(), "a series carries at least its constant term");
        PowerSeries { coeffs }
    }

    pub fn zero(d: usize) -> PowerSeries {
        PowerSeries {
            coeffs: vec![CycloNumber::zero(); d + 1],
        }
    }

    pub fn one(d: usize) -> PowerSeries {
        let mut s = Self::zero(d);
        s.coeffs[0] = CycloNumber::one();
        s
    }

    /// Truncation degree D.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[CycloNumber] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &CycloNumber {
        &self.coeffs[i]
    }

    fn require_same_degree(&self, other: &PowerSeries) -> Result<(), ZetaError> {
        if self.degree() != other.degree() {
            return Err(ZetaError::DegreeMismatch {
                a: self.degree(),
                b: other.degree(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &PowerSeries) -> Result<PowerSeries, ZetaError> {
        self.require_same_degree(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(PowerSeries { coeffs })
    }

    pub fn mul(&self, other: &PowerSeries) -> Result<PowerSeries, ZetaError> {
        self.require_same_degree(other)?;
        let d = self.degree();
        let mut coeffs = vec![CycloNumber::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(d + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        Ok(PowerSeries { coeffs })
    }

    /// Truncated exponential of a series with zero constant term, by the
    /// recurrence `n·b_n = Σ_{j=1..n} j·a_j·b_{n-j}` (from `b' = a'·b`).
    pub fn exp(&self) -> Result<PowerSeries, ZetaError> {
        if !self.coeffs[0].is_zero() {
            return Err(ZetaError::ExpConstantTerm);
        }
        let d = self.degree();
        let mut b = vec![CycloNumber::one()];
        for n in 1..=d {
            let mut acc = CycloNumber::zero();
            for j in 1..=n {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                let term = self.coeffs[j]
                    .scale(&BigRational::from_integer(BigInt::from(j)))
                    .mul(&b[n - j]);
                acc = acc.add(&term);
            }
            b.push(acc.scale(&BigRational::new(BigInt::from(1), BigInt::from(n))));
        }
        Ok(PowerSeries { coeffs: b })
    }

    /// Truncated logarithm of a series with constant term 1; exact inverse
    /// of [`PowerSeries::exp`] up to the truncation degree.
    pub fn log(&self) -> Result<PowerSeries, ZetaError> {
        if self.coeffs[0] != CycloNumber::one() {
            return Err(ZetaError::LogConstantTerm);
        }
        let d = self.degree();
        let mut a = vec![CycloNumber::zero()];
        for n in 1..=d {
            let mut acc = self.coeffs[n].clone();
            for (j, aj) in a.iter().enumerate().skip(1) {
                if aj.is_zero() || self.coeffs[n - j].is_zero() {
                    continue;
                }
                let term = aj
                    .scale(&BigRational::new(BigInt::from(j), BigInt::from(n)))
                    .mul(&self.coeffs[n - j]);
                acc = acc.sub(&term);
            }
            a.push(acc);
        }
        Ok(PowerSeries { coeffs: a })
    }

    /// Multiplicative inverse of a series with invertible constant term.
    pub fn inverse(&self) -> Result<PowerSeries, ZetaError> {
        if self.coeffs[0].is_zero() {
            return Err(ZetaError::InverseConstantTerm);
        }
        let d = self.degree();
        let c0_inv = self.coeffs[0].inv()?;
        let mut inv = vec![c0_inv.clone()];
        for n in 1..=d {
            let mut acc = CycloNumber::zero();
            for j in 1..=n {
                if !self.coeffs[j].is_zero() {
                    acc = acc.add(&self.coeffs[j].mul(&inv[n - j]));
                }
            }
            inv.push(acc.mul(&c0_inv).neg());
        }
        Ok(PowerSeries { coeffs: inv })
    }

    /// Substitute `T ↦ c·T`: the i-th coefficient picks up a factor `c^i`.
    pub fn scale_var(&self, c: &BigRational) -> PowerSeries {
        let mut power = BigRational::from_integer(BigInt::from(1));
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let scaled = a.scale(&power);
                power *= c;
                scaled
            })
            .collect();
        PowerSeries { coeffs }
    }

    /// Integer power, negative exponents via [`PowerSeries::inverse`].
    pub fn pow(&self, e: i64) -> Result<PowerSeries, ZetaError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut out = PowerSeries::one(self.degree());
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base)?;
        }
        Ok(out)
    }

    /// Wire format: exact coefficients plus their complex shadows.
    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> =
            self.coeffs.iter().map(|c| c.to_json()).collect();
        let complex: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|c| {
                let z = c.embed_complex();
                serde_json::json!([z.re, z.im])
            })
            .collect();
        serde_json::json!({
            "variable": "T=q^-s",
            "D": self.degree(),
            "coeffs": coeffs,
            "complex": complex,
        })
    }

    /// Complex shadow of the coefficient list, the input to the rational
    /// reconstruction layer.
    pub fn complex_coeffs(&self) -> Vec<num::complex::Complex64> {
        self.coeffs.iter().map(|c| c.embed_complex()).collect()
    }
}

impl PartialEq for PowerSeries {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs.len() == other.coeffs.len()
            && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a == b)
    }
}

impl Eq for PowerSeries {}

impl std::fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let needs_parens = c.coeffs().iter().filter(|x| !x.is_zero()).count() > 1;
            if needs_parens && i > 0 {
                write!(f, "({c})")?;
            } else {
                write!(f, "{c}")?;
            }
            if i == 1 {
                write!(f, "*T")?;
            } else if i > 1 {
                write!(f, "*T^{i}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(T^{})", self.coeffs.len())
    }
}

/// The zeta series of the subvariety of the torus cut out by the given
/// Laurent polynomials: `exp Σ_{d≤D} #X(F_{q^d})·T^d/d`, exact to degree D.
/// Coefficients are checked to be nonnegative integers, as the Euler
/// product guarantees.
pub fn zeta_variety(
    field: &Arc<FieldCtx>,
    n: usize,
    polys: &[LaurentPoly],
    d_max: u32,
    budget: u64,
) -> Result<PowerSeries, ZetaError> {
    let mut log_series = vec![CycloNumber::zero()];
    for d in 1..=d_max {
        let emb = extend(field, d)?;
        let moved: Vec<LaurentPoly> = polys
            .iter()
            .map(|p| p.base_change(&emb))
            .collect::<Result<_, _>>()?;
        let count = count_points(emb.ext(), n, &moved, budget)?;
        log_series.push(CycloNumber::from_rational(BigRational::new(
            BigInt::from(count),
            BigInt::from(d),
        )));
    }
    let series = PowerSeries::from_coeffs(log_series).exp()?;
    for c in series.coeffs() {
        match c.as_integer() {
            Some(v) if !v.is_negative() => {}
            _ => return Err(ZetaError::BadVarietyCoefficient),
        }
    }
    Ok(series)
}

/// The hypergeometric zeta series `exp Σ_{d≤D} Φ_{q^d}·T^d/d`, where the
/// degree-d sum evaluates the base-changed polynomial against the characters
/// lifted along trace and norm.
pub fn zeta_hyper_direct(
    chi: &CharSpec,
    poly: &LaurentPoly,
    pis: &[CharSpec],
    d_max: u32,
    budget: u64,
) -> Result<PowerSeries, ZetaError> {
    let field = chi.field();
    let mut log_series = vec![CycloNumber::zero()];
    for d in 1..=d_max {
        let emb = extend(field, d)?;
        let chi_d = char_lift(chi, &emb)?.into();
        let pis_d: Vec<_> = pis
            .iter()
            .map(|pi| char_lift(pi, &emb).map(Into::into))
            .collect::<Result<_, _>>()?;
        let moved = poly.base_change(&emb)?;
        let value = phi(&chi_d, &moved, &pis_d, budget)?;
        log_series.push(value.scale(&BigRational::new(BigInt::from(1), BigInt::from(d))));
    }
    PowerSeries::from_coeffs(log_series).exp()
}
