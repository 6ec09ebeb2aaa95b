//! Hypergeometric character sums over finite-field tori, exact torus point
//! counting for systems of Laurent equations, and the three-way identity
//! tying them together: the direct double sum over scaling variables, its
//! decomposition into per-subset sums, and `q^k` times the point count.

use num::integer::lcm;
use num::{BigInt, BigRational};
use thiserror::Error;

use crate::cyclochar::{CharSpec, CycloError, CycloNumber, FieldChar, RootAccum};
use crate::laurent::{cayley_construct, LaurentError, LaurentPoly};

#[derive(Debug, Error)]
pub enum HsumError {
    #[error("enumeration needs {required} tuples, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("the first character must be additive")]
    AdditiveCharRequired,
    #[error("per-variable characters must be multiplicative")]
    MultiplicativeCharRequired,
    #[error("{chars} characters supplied for {vars} torus variables")]
    CharCountMismatch { chars: usize, vars: usize },
    #[error("characters and polynomial must live on the same field")]
    FieldMismatch,
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

/// Visit every dlog vector in `{0, .., q-2}^n`, leftmost coordinate slowest
/// (the fixed enumeration order of every sum in this module). `n = 0`
/// visits the single empty tuple.
fn for_each_torus_point(q: u64, n: usize, mut f: impl FnMut(&[u64])) {
    let mut a = vec![0u64; n];
    loop {
        f(&a);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            a[i] += 1;
            if a[i] < q - 1 {
                break;
            }
            a[i] = 0;
        }
    }
}

fn check_budget(required: u128, budget: u64) -> Result<(), HsumError> {
    if required > budget as u128 {
        return Err(HsumError::BudgetExceeded { required, budget });
    }
    Ok(())
}

/// Σ over the torus `(F_q^×)^n` of `χ(P(t)) · π_1(t_1) ⋯ π_n(t_n)`,
/// computed exactly. All character values are powers of a single `ζ_m`
/// with m the least common multiple of the character orders.
pub fn phi(
    chi: &FieldChar,
    poly: &LaurentPoly,
    pis: &[FieldChar],
    budget: u64,
) -> Result<CycloNumber, HsumError> {
    if chi.is_multiplicative() {
        return Err(HsumError::AdditiveCharRequired);
    }
    let n = poly.n_vars();
    if pis.len() != n {
        return Err(HsumError::CharCountMismatch { chars: pis.len(), vars: n });
    }
    let field = chi.field();
    if !field.same_field(poly.field()) {
        return Err(HsumError::FieldMismatch);
    }
    for pi in pis {
        if !pi.is_multiplicative() {
            return Err(HsumError::MultiplicativeCharRequired);
        }
        if !pi.field().same_field(field) {
            return Err(HsumError::FieldMismatch);
        }
    }
    let q = field.order();
    check_budget((q as u128 - 1).pow(n as u32), budget)?;

    let m = pis
        .iter()
        .fold(chi.value_order(), |acc, pi| lcm(acc, pi.value_order()));
    let mut accum = RootAccum::new(m)?;

    // Character values as ζ_m exponents, tabulated once: the additive
    // character by element encoding, each multiplicative character by dlog.
    let mut chi_exp = vec![0u64; q as usize];
    for x in field.elements() {
        chi_exp[field.encode(&x) as usize] = chi.eval_root(&x)?.exponent_in(m);
    }
    let mut pi_exp: Vec<Vec<u64>> = Vec::with_capacity(n);
    for pi in pis {
        let mut table = vec![0u64; (q - 1) as usize];
        for (a, entry) in table.iter_mut().enumerate() {
            let r = pi.eval_root(&field.gen_pow(a as u64))?;
            *entry = r.exponent_in(m);
        }
        pi_exp.push(table);
    }

    for_each_torus_point(q, n, |a| {
        let value = poly.eval_dlogs(a);
        let mut e = chi_exp[field.encode(&value) as usize];
        for (table, &ai) in pi_exp.iter().zip(a) {
            e += table[ai as usize];
        }
        accum.add_exponent(e);
    });
    Ok(accum.finish())
}

/// The sum attached to a system `P_1, .., P_k`: the value of [`phi`] on the
/// combined polynomial `λ_1 P_1 + .. + λ_k P_k` with all `k + n` torus
/// characters trivial. Defined and computed through that single code path.
pub fn psi(
    chi: &FieldChar,
    n: usize,
    polys: &[LaurentPoly],
    budget: u64,
) -> Result<CycloNumber, HsumError> {
    let field = chi.field();
    let combined = cayley_construct(field, n, polys)?;
    let trivial: Vec<FieldChar> = (0..combined.n_vars())
        .map(|_| CharSpec::trivial(field).into())
        .collect();
    phi(chi, &combined, &trivial, budget)
}

/// Number of torus points of `(F_q^×)^n` where all the given polynomials
/// vanish; with no polynomials this is the full torus count `(q-1)^n`.
pub fn count_points(
    field: &std::sync::Arc<crate::ffield::FieldCtx>,
    n: usize,
    polys: &[LaurentPoly],
    budget: u64,
) -> Result<u64, HsumError> {
    for p in polys {
        if !p.field().same_field(field) {
            return Err(HsumError::FieldMismatch);
        }
        if p.n_vars() != n {
            return Err(LaurentError::VariableMismatch { a: n, b: p.n_vars() }.into());
        }
    }
    let q = field.order();
    check_budget((q as u128 - 1).pow(n as u32), budget)?;
    let mut count = 0u64;
    for_each_torus_point(q, n, |a| {
        if polys.iter().all(|p| p.eval_dlogs(a).is_zero()) {
            count += 1;
        }
    });
    Ok(count)
}

/// The direct double sum `Σ_{λ ∈ F_q^k} Σ_{t ∈ torus} χ(λ_1 P_1(t) + ..)`,
/// with the scaling variables λ ranging over the FULL field (zero included)
/// while t stays on the torus.
pub fn cayley_lhs(
    chi: &FieldChar,
    n: usize,
    polys: &[LaurentPoly],
    budget: u64,
) -> Result<CycloNumber, HsumError> {
    if chi.is_multiplicative() {
        return Err(HsumError::AdditiveCharRequired);
    }
    let field = chi.field();
    for p in polys {
        if !p.field().same_field(field) {
            return Err(HsumError::FieldMismatch);
        }
        if p.n_vars() != n {
            return Err(LaurentError::VariableMismatch { a: n, b: p.n_vars() }.into());
        }
    }
    let q = field.order();
    let k = polys.len();
    let required = (q as u128).pow(k as u32) * (q as u128 - 1).pow(n as u32);
    check_budget(required, budget)?;

    let m = chi.value_order();
    let mut accum = RootAccum::new(m)?;
    let mut chi_exp = vec![0u64; q as usize];
    for x in field.elements() {
        chi_exp[field.encode(&x) as usize] = chi.eval_root(&x)?.exponent_in(m);
    }

    let mut values = vec![field.zero(); k];
    for_each_torus_point(q, n, |a| {
        for (v, p) in values.iter_mut().zip(polys) {
            *v = p.eval_dlogs(a);
        }
        // λ runs over all of F_q^k, leftmost coordinate slowest.
        let mut lam = vec![0u64; k];
        loop {
            let mut s = field.zero();
            for (&li, v) in lam.iter().zip(&values) {
                s = field.add(&s, &field.mul(&field.from_int(li), v));
            }
            accum.add_exponent(chi_exp[field.encode(&s) as usize]);
            let mut i = k;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                lam[i] += 1;
                if lam[i] < q {
                    break;
                }
                lam[i] = 0;
            }
        }
    });
    Ok(accum.finish())
}

/// The three routes to the same number, computed independently.
#[derive(Debug, Clone)]
pub struct CayleyReport {
    /// Direct double sum over `(λ, t)`.
    pub lhs: CycloNumber,
    /// `(q-1)^n` plus the per-subset sums.
    pub middle: CycloNumber,
    /// Torus solution count of the system.
    pub point_count: u64,
    /// `q^k · point_count` as a cyclotomic number.
    pub rhs: CycloNumber,
    /// The subset sums entering `middle`, keyed by ascending 1-based index
    /// sets in bitmask order.
    pub subset_values: Vec<(Vec<usize>, CycloNumber)>,
    pub all_equal: bool,
}

impl CayleyReport {
    pub fn to_json(&self) -> serde_json::Value {
        let subsets: Vec<serde_json::Value> = self
            .subset_values
            .iter()
            .map(|(s, v)| serde_json::json!({ "subset": s, "value": v.to_json() }))
            .collect();
        serde_json::json!({
            "lhs": self.lhs.to_json(),
            "middle": self.middle.to_json(),
            "point_count": self.point_count,
            "rhs": self.rhs.to_json(),
            "subset_values": subsets,
            "all_equal": self.all_equal,
        })
    }
}

fn integer_cyclo(v: u128) -> CycloNumber {
    CycloNumber::from_rational(BigRational::from_integer(BigInt::from(v)))
}

/// Compute the direct sum, the subset decomposition, and `q^k` times the
/// point count, and check that the three agree. They always do: this is an
/// exact identity, so `all_equal: false` signals an implementation bug, not
/// an interesting input.
pub fn verify_cayley(
    chi: &FieldChar,
    n: usize,
    polys: &[LaurentPoly],
    budget: u64,
) -> Result<CayleyReport, HsumError> {
    let field = chi.field();
    let q = field.order();
    let k = polys.len();

    let lhs = cayley_lhs(chi, n, polys, budget)?;

    let mut middle = integer_cyclo((q as u128 - 1).pow(n as u32));
    let mut subset_values = Vec::new();
    for mask in 1u32..(1 << k) {
        let subset: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
        let chosen: Vec<LaurentPoly> =
            subset.iter().map(|&i| polys[i].clone()).collect();
        let value = psi(chi, n, &chosen, budget)?;
        middle = middle.add(&value);
        subset_values.push((subset.iter().map(|i| i + 1).collect(), value));
    }

    let point_count = count_points(field, n, polys, budget)?;
    let rhs = integer_cyclo((q as u128).pow(k as u32) * point_count as u128);

    let all_equal = lhs == middle && middle == rhs;
    Ok(CayleyReport {
        lhs,
        middle,
        point_count,
        rhs,
        subset_values,
        all_equal,
    })
}
