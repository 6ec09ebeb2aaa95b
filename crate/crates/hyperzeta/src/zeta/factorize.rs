//! Factorization of a hypergeometric zeta series with trivial characters
//! into shifted zeta series of coordinate subvarieties.
//!
//! For a system P_1, ..., P_k on the n-torus and a subset S of {1, ..., k},
//! let X_S be the locus in the torus where every P_i with i in S vanishes.
//! Summing the auxiliary-variable identity for the point count over subsets
//! telescopes into
//!
//! ```text
//! ζ_hyp(T) = Π_S ζ_{X_S}(q^{|S|} T)^{(-1)^{k-|S|}}
//! ```
//!
//! where the left side is the zeta series of the auxiliary-variable sums of
//! the system with all characters trivial. Both sides are computed
//! independently here and compared exactly.

use num::{BigInt, BigRational};
use std::sync::Arc;

use super::{zeta_hyper_direct, zeta_variety, PowerSeries, ZetaError};
use crate::cyclochar::CharSpec;
use crate::ffield::FieldCtx;
use crate::laurent::{cayley_construct, LaurentPoly};

/// One factor of the right-hand side: the zeta series of a coordinate
/// subvariety together with how it enters the product.
#[derive(Debug, Clone)]
pub struct FactorTerm {
    /// Indices (1-based, ascending) of the polynomials forced to vanish.
    pub subset: Vec<usize>,
    /// Exponent sign `(-1)^(k-|S|)` of this factor.
    pub sign: i32,
    /// The factor is evaluated at `q^shift · T`, with `shift = |S|`.
    pub shift: u32,
    /// The unshifted series `ζ_{X_S}(T)`.
    pub series: PowerSeries,
}

/// Both sides of the factorization, with every factor retained.
#[derive(Debug, Clone)]
pub struct FactorizeReport {
    /// Zeta series of the auxiliary-variable sums with trivial characters.
    pub lhs: PowerSeries,
    /// The assembled product of shifted subvariety zeta series.
    pub rhs: PowerSeries,
    pub factors: Vec<FactorTerm>,
    pub equal: bool,
}

impl FactorizeReport {
    pub fn to_json(&self) -> serde_json::Value {
        let factors: Vec<serde_json::Value> = self
            .factors
            .iter()
            .map(|f| {
                serde_json::json!({
                    "subset": f.subset,
                    "sign": f.sign,
                    "shift": f.shift,
                    "series": f.series.to_json(),
                })
            })
            .collect();
        serde_json::json!({
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "factors": factors,
            "equal": self.equal,
        })
    }
}

/// Compute the left side directly from the auxiliary-variable polynomial
/// with all characters trivial, assemble the right side from subvariety
/// zeta series, and compare. Subsets are ordered by bitmask, so the empty
/// set (the bare torus) comes first.
pub fn cayley_factorize(
    chi: &CharSpec,
    n: usize,
    polys: &[LaurentPoly],
    d_max: u32,
    budget: u64,
) -> Result<FactorizeReport, ZetaError> {
    let field: &Arc<FieldCtx> = chi.field();
    let k = polys.len();
    let q = field.order();

    let auxiliary = cayley_construct(field, n, polys)?;
    let trivials: Vec<CharSpec> = (0..k + n).map(|_| CharSpec::trivial(field)).collect();
    let lhs = zeta_hyper_direct(chi, &auxiliary, &trivials, d_max, budget)?;

    let mut factors = Vec::with_capacity(1 << k);
    let mut rhs = PowerSeries::one(d_max as usize);
    for mask in 0u32..(1 << k) {
        let subset: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        let chosen: Vec<LaurentPoly> = subset.iter().map(|&i| polys[i - 1].clone()).collect();
        let size = subset.len();
        let sign: i32 = if (k - size).is_multiple_of(2) { 1 } else { -1 };
        let series = zeta_variety(field, n, &chosen, d_max, budget)?;

        let scale = BigRational::from_integer(BigInt::from(q).pow(size as u32));
        let shifted = series.scale_var(&scale);
        rhs = rhs.mul(&shifted.pow(sign as i64)?)?;

        factors.push(FactorTerm {
            subset,
            sign,
            shift: size as u32,
            series,
        });
    }

    let equal = lhs == rhs;
    Ok(FactorizeReport {
        lhs,
        rhs,
        factors,
        equal,
    })
}
