//! Exact arithmetic in cyclotomic fields `Q(ζ_m)` and the additive and
//! multiplicative characters of finite fields with values there.
//!
//! A [`CycloNumber`] is stored on the power basis `1, ζ_m, .., ζ_m^{φ(m)-1}`
//! after reduction modulo the m-th cyclotomic polynomial, so equality is
//! coefficient-wise (numbers of different order are compared after lifting
//! both into `Q(ζ_lcm)`). Character values are tracked as explicit roots of
//! unity for as long as possible; sums accumulate on a length-m exponent
//! vector ([`RootAccum`]) and are reduced to canonical form once at the end.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num::complex::Complex64;
use num::integer::{gcd, lcm};
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::ffield::{Embedding, FieldCtx, FieldElement, FieldError};

/// Largest root-of-unity order for which Φ_m is computed.
pub const CYCLOTOMIC_ORDER_BOUND: u64 = 10_000;

#[derive(Debug, Error)]
pub enum CycloError {
    #[error("division by zero in a cyclotomic field")]
    DivisionByZero,
    #[error("root-of-unity order {0} exceeds the bound {CYCLOTOMIC_ORDER_BOUND}")]
    OrderTooLarge(u64),
    #[error("multiplicative character evaluated at 0")]
    MultCharAtZero,
    #[error("character index {index} out of range [0, {max}] for field of order {q}")]
    IndexOutOfRange { index: u64, max: u64, q: u64 },
    #[error("character lift requires the embedding base to match the character's field")]
    LiftFieldMismatch,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}

// ---- cyclotomic polynomials ----

fn divisors(m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            if d != m / d {
                out.push(m / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Exact quotient of `num` by monic `den` over Z, constant term first.
/// Panics if the division is not exact; callers only divide x^m - 1 by
/// known cyclotomic factors.
fn poly_exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut rem: Vec<BigInt> = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if !c.is_zero() {
            for (j, dc) in den.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
        }
        quot[i] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quot
}

/// The m-th cyclotomic polynomial Φ_m with integer coefficients, constant
/// term first, computed as (x^m - 1) / Π_{d|m, d<m} Φ_d and cached.
pub fn cyclotomic_polynomial(m: u64) -> Result<Arc<Vec<BigInt>>, CycloError> {
    if m == 0 || m > CYCLOTOMIC_ORDER_BOUND {
        return Err(CycloError::OrderTooLarge(m));
    }
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&m) {
        return Ok(Arc::clone(hit));
    }
    let mut f = vec![BigInt::zero(); m as usize + 1];
    f[0] = -BigInt::one();
    f[m as usize] = BigInt::one();
    for d in divisors(m) {
        if d < m {
            let phi_d = cyclotomic_polynomial(d)?;
            f = poly_exact_div(&f, &phi_d);
        }
    }
    let result = Arc::new(f);
    cache
        .lock()
        .unwrap()
        .insert(m, Arc::clone(&result));
    Ok(result)
}

/// deg Φ_m, i.e. Euler's totient of m.
pub fn cyclotomic_degree(m: u64) -> Result<usize, CycloError> {
    Ok(cyclotomic_polynomial(m)?.len() - 1)
}

// ---- canonical cyclotomic numbers ----

/// An exact element of `Q(ζ_m)` in canonical reduced form.
#[derive(Debug, Clone)]
pub struct CycloNumber {
    m: u64,
    /// Length deg Φ_m, coefficients on `1, ζ_m, .., ζ_m^{deg-1}`.
    coeffs: Vec<BigRational>,
}

/// Remainder of `poly` modulo Φ_m; exponents at or above m wrap first
/// (ζ_m^m = 1), then ordinary long division brings the degree below φ(m).
fn reduce_mod_cyclo(m: u64, poly: Vec<BigRational>) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(m).expect("order validated at construction");
    let deg = phi.len() - 1;
    let mut folded = vec![BigRational::zero(); (m as usize).max(deg)];
    for (i, c) in poly.into_iter().enumerate() {
        folded[i % m as usize] += c;
    }
    let phi_rat: Vec<BigRational> =
        phi.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    while folded.len() > deg {
        let lead = folded.pop().unwrap();
        if !lead.is_zero() {
            let shift = folded.len() - deg;
            for (j, pc) in phi_rat.iter().take(deg).enumerate() {
                let t = &lead * pc;
                folded[shift + j] -= t;
            }
        }
    }
    folded.resize(deg, BigRational::zero());
    folded
}

impl CycloNumber {
    pub fn zero() -> CycloNumber {
        CycloNumber {
            m: 1,
            coeffs: vec![BigRational::zero()],
        }
    }

    pub fn one() -> CycloNumber {
        CycloNumber {
            m: 1,
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn from_integer(n: i64) -> CycloNumber {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: BigRational) -> CycloNumber {
        CycloNumber { m: 1, coeffs: vec![r] }
    }

    /// `ζ_m^e`, reduced to canonical form.
    pub fn root_power(m: u64, e: u64) -> Result<CycloNumber, CycloError> {
        if m == 0 || m > CYCLOTOMIC_ORDER_BOUND {
            return Err(CycloError::OrderTooLarge(m));
        }
        let e = (e % m) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Ok(CycloNumber {
            m,
            coeffs: reduce_mod_cyclo(m, poly),
        })
    }

    pub fn order(&self) -> u64 {
        self.m
    }

    /// Canonical coefficients on `1, ζ_m, .., ζ_m^{φ(m)-1}`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Rewrite in `Q(ζ_m2)` for a multiple m2 of the current order.
    fn lift_to(&self, m2: u64) -> CycloNumber {
        if m2 == self.m {
            return self.clone();
        }
        assert!(
            m2.is_multiple_of(self.m) && m2 <= CYCLOTOMIC_ORDER_BOUND,
            "lift target {m2} must be a bounded multiple of {}",
            self.m
        );
        let stride = (m2 / self.m) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len() - 1) * stride + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * stride] = c.clone();
        }
        CycloNumber {
            m: m2,
            coeffs: reduce_mod_cyclo(m2, poly),
        }
    }

    /// Common order for a binary operation. Exceeding the global bound is a
    /// usage error (orders are validated when roots are created, so this
    /// only fires when wildly unrelated orders are mixed).
    fn common_order(&self, other: &CycloNumber) -> u64 {
        let m = lcm(self.m, other.m);
        assert!(
            m <= CYCLOTOMIC_ORDER_BOUND,
            "mixing roots of unity of orders {} and {} exceeds the order bound",
            self.m,
            other.m
        );
        m
    }

    pub fn add(&self, other: &CycloNumber) -> CycloNumber {
        let m = self.common_order(other);
        let a = self.lift_to(m);
        let b = other.lift_to(m);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x + y)
            .collect();
        CycloNumber { m, coeffs }
    }

    pub fn sub(&self, other: &CycloNumber) -> CycloNumber {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycloNumber {
        CycloNumber {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &CycloNumber) -> CycloNumber {
        let m = self.common_order(other);
        let a = self.lift_to(m);
        let b = other.lift_to(m);
        let mut prod = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        CycloNumber {
            m,
            coeffs: reduce_mod_cyclo(m, prod),
        }
    }

    pub fn scale(&self, r: &BigRational) -> CycloNumber {
        CycloNumber {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Exact division, via a linear solve for the quotient on the power
    /// basis (multiplication by a nonzero element is an invertible linear
    /// map on `Q(ζ_m)`).
    pub fn div(&self, other: &CycloNumber) -> Result<CycloNumber, CycloError> {
        if other.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        let m = self.common_order(other);
        let a = self.lift_to(m);
        let b = other.lift_to(m);
        let deg = a.coeffs.len();

        // Columns of the multiplication-by-b matrix: b·ζ^j for j < deg,
        // produced by successive shift-and-reduce.
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(deg);
        let mut cur = b.coeffs.clone();
        for _ in 0..deg {
            cols.push(cur.clone());
            let mut shifted = vec![BigRational::zero(); deg + 1];
            shifted[1..=deg].clone_from_slice(&cur);
            cur = reduce_mod_cyclo(m, shifted);
        }

        // Solve M x = a by Gaussian elimination, exact pivoting.
        let mut mat: Vec<Vec<BigRational>> = (0..deg)
            .map(|row| {
                let mut r: Vec<BigRational> =
                    cols.iter().map(|c| c[row].clone()).collect();
                r.push(a.coeffs[row].clone());
                r
            })
            .collect();
        for col in 0..deg {
            let pivot = (col..deg)
                .find(|&r| !mat[r][col].is_zero())
                .ok_or(CycloError::Internal(
                    "singular multiplication matrix for a nonzero divisor",
                ))?;
            mat.swap(col, pivot);
            let inv = mat[col][col].recip();
            for entry in mat[col][col..].iter_mut() {
                *entry *= &inv;
            }
            let (above, rest) = mat.split_at_mut(col);
            let (pivot_row, below) = rest.split_first_mut().unwrap();
            for row in above.iter_mut().chain(below.iter_mut()) {
                if !row[col].is_zero() {
                    let factor = row[col].clone();
                    for (entry, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                        let t = &factor * p;
                        *entry -= t;
                    }
                }
            }
        }
        let coeffs = mat.into_iter().map(|mut row| row.pop().unwrap()).collect();
        Ok(CycloNumber { m, coeffs })
    }

    pub fn inv(&self) -> Result<CycloNumber, CycloError> {
        CycloNumber::one().div(self)
    }

    /// The rational value, when the number lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// The integer value, when the number lies in Z.
    pub fn as_integer(&self) -> Option<BigInt> {
        let r = self.as_rational()?;
        if r.is_integer() {
            Some(r.to_integer())
        } else {
            None
        }
    }

    /// Numerical value under `ζ_m ↦ e^{2πi/m}`.
    pub fn embed_complex(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = 2.0 * std::f64::consts::PI * i as f64 / self.m as f64;
            acc += Complex64::from_polar(1.0, angle)
                * c.to_f64().expect("desk-scale rationals fit in f64");
        }
        acc
    }

    /// Wire format: `{"m": m, "coeffs": [["num","den"], ..]}` with decimal
    /// strings for the big integers.
    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|c| {
                serde_json::json!([c.numer().to_string(), c.denom().to_string()])
            })
            .collect();
        serde_json::json!({ "m": self.m, "coeffs": coeffs })
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        let m = self.common_order(other);
        self.lift_to(m).coeffs == other.lift_to(m).coeffs
    }
}

impl Eq for CycloNumber {}

impl std::fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let unit = mag.is_one();
            if !unit || i == 0 {
                write!(f, "{mag}")?;
            }
            if i > 0 {
                if !unit {
                    write!(f, "*")?;
                }
                write!(f, "z{}", self.m)?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// ---- roots of unity and exact accumulation ----

/// `ζ_order^exp` with `exp` reduced modulo `order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootOfUnity {
    pub order: u64,
    pub exp: u64,
}

impl RootOfUnity {
    pub fn one() -> RootOfUnity {
        RootOfUnity { order: 1, exp: 0 }
    }

    /// Exponent of this root as a power of `ζ_m`; `order` must divide m.
    pub fn exponent_in(&self, m: u64) -> u64 {
        debug_assert!(m.is_multiple_of(self.order));
        self.exp * (m / self.order) % m
    }

    pub fn to_cyclo(&self) -> Result<CycloNumber, CycloError> {
        CycloNumber::root_power(self.order, self.exp)
    }
}

/// Exact accumulator for sums of roots of unity of order dividing m: counts
/// per exponent, reduced to a canonical [`CycloNumber`] once at the end.
#[derive(Debug, Clone)]
pub struct RootAccum {
    m: u64,
    counts: Vec<u64>,
}

impl RootAccum {
    pub fn new(m: u64) -> Result<RootAccum, CycloError> {
        if m == 0 || m > CYCLOTOMIC_ORDER_BOUND {
            return Err(CycloError::OrderTooLarge(m));
        }
        cyclotomic_polynomial(m)?;
        Ok(RootAccum {
            m,
            counts: vec![0; m as usize],
        })
    }

    pub fn order(&self) -> u64 {
        self.m
    }

    /// Add `ζ_m^e` to the running sum.
    pub fn add_exponent(&mut self, e: u64) {
        self.counts[(e % self.m) as usize] += 1;
    }

    pub fn add_root(&mut self, r: &RootOfUnity) {
        self.add_exponent(r.exponent_in(self.m));
    }

    /// Merge another accumulator of the same order (partial sums combine in
    /// any order without changing the result).
    pub fn merge(&mut self, other: &RootAccum) {
        assert_eq!(self.m, other.m, "accumulator orders must match");
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    pub fn finish(&self) -> CycloNumber {
        let poly: Vec<BigRational> = self
            .counts
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        CycloNumber {
            m: self.m,
            coeffs: reduce_mod_cyclo(self.m, poly),
        }
    }
}

// ---- finite-field characters ----

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CharKind {
    /// The standard additive character `t ↦ ζ_p^{tr(t)}` (absolute trace to
    /// the prime field); always nontrivial.
    Additive,
    /// `g^a ↦ ζ_{q-1}^{index·a}` on the fixed generator g; index 0 is the
    /// trivial character.
    Multiplicative { index: u64 },
}

/// A character of a specific finite field.
#[derive(Debug, Clone)]
pub struct CharSpec {
    field: Arc<FieldCtx>,
    kind: CharKind,
}

impl CharSpec {
    pub fn additive(field: &Arc<FieldCtx>) -> CharSpec {
        CharSpec {
            field: Arc::clone(field),
            kind: CharKind::Additive,
        }
    }

    pub fn multiplicative(field: &Arc<FieldCtx>, index: u64) -> Result<CharSpec, CycloError> {
        let q = field.order();
        if q >= 3 && index > q - 2 {
            return Err(CycloError::IndexOutOfRange { index, max: q - 2, q });
        }
        if q == 2 && index > 0 {
            return Err(CycloError::IndexOutOfRange { index, max: 0, q });
        }
        Ok(CharSpec {
            field: Arc::clone(field),
            kind: CharKind::Multiplicative { index },
        })
    }

    /// The trivial multiplicative character.
    pub fn trivial(field: &Arc<FieldCtx>) -> CharSpec {
        CharSpec {
            field: Arc::clone(field),
            kind: CharKind::Multiplicative { index: 0 },
        }
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn kind(&self) -> &CharKind {
        &self.kind
    }

    pub fn is_multiplicative(&self) -> bool {
        matches!(self.kind, CharKind::Multiplicative { .. })
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self.kind, CharKind::Multiplicative { index: 0 })
    }

    /// Order of the character as a group homomorphism (the order of its
    /// value group).
    pub fn value_order(&self) -> u64 {
        match self.kind {
            CharKind::Additive => self.field.p(),
            CharKind::Multiplicative { index } => {
                let n = self.field.order() - 1;
                if n == 0 {
                    1
                } else {
                    n / gcd(index, n)
                }
            }
        }
    }

    pub fn eval_root(&self, x: &FieldElement) -> Result<RootOfUnity, CycloError> {
        match self.kind {
            CharKind::Additive => Ok(RootOfUnity {
                order: self.field.p(),
                exp: self.field.abs_trace(x),
            }),
            CharKind::Multiplicative { index } => {
                if x.is_zero() {
                    return Err(CycloError::MultCharAtZero);
                }
                let n = self.field.order() - 1;
                if n == 0 || index == 0 {
                    return Ok(RootOfUnity::one());
                }
                let g = gcd(index, n);
                let ord = n / g;
                let a = self.field.dlog(x)?;
                Ok(RootOfUnity {
                    order: ord,
                    exp: (index / g) * a % ord,
                })
            }
        }
    }

    pub fn eval(&self, x: &FieldElement) -> Result<CycloNumber, CycloError> {
        self.eval_root(x)?.to_cyclo()
    }
}

/// A base-field character composed with the relative trace (additive) or
/// norm (multiplicative), i.e. the character of the extension induced along
/// an [`Embedding`]. Evaluation takes extension elements.
#[derive(Debug, Clone)]
pub struct LiftedChar {
    base: CharSpec,
    emb: Arc<Embedding>,
}

/// Lift a character along a field extension.
pub fn char_lift(c: &CharSpec, emb: &Arc<Embedding>) -> Result<LiftedChar, CycloError> {
    if !c.field().same_field(emb.base()) {
        return Err(CycloError::LiftFieldMismatch);
    }
    Ok(LiftedChar {
        base: c.clone(),
        emb: Arc::clone(emb),
    })
}

impl LiftedChar {
    pub fn base(&self) -> &CharSpec {
        &self.base
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        self.emb.ext()
    }

    pub fn value_order(&self) -> u64 {
        // Trace and norm are surjective, so lifting preserves the order.
        self.base.value_order()
    }

    pub fn eval_root(&self, x: &FieldElement) -> Result<RootOfUnity, CycloError> {
        match self.base.kind {
            CharKind::Additive => {
                let t = self.emb.rel_trace(x)?;
                self.base.eval_root(&t)
            }
            CharKind::Multiplicative { .. } => {
                if x.is_zero() {
                    return Err(CycloError::MultCharAtZero);
                }
                let n = self.emb.rel_norm(x)?;
                self.base.eval_root(&n)
            }
        }
    }

    pub fn eval(&self, x: &FieldElement) -> Result<CycloNumber, CycloError> {
        self.eval_root(x)?.to_cyclo()
    }
}

/// A character together with the field it is evaluated on: either a
/// character of that field directly, or a base-field character lifted along
/// an extension.
#[derive(Debug, Clone)]
pub enum FieldChar {
    Base(CharSpec),
    Lifted(LiftedChar),
}

impl FieldChar {
    /// The field whose elements this character accepts.
    pub fn field(&self) -> &Arc<FieldCtx> {
        match self {
            FieldChar::Base(c) => c.field(),
            FieldChar::Lifted(l) => l.field(),
        }
    }

    pub fn value_order(&self) -> u64 {
        match self {
            FieldChar::Base(c) => c.value_order(),
            FieldChar::Lifted(l) => l.value_order(),
        }
    }

    pub fn is_multiplicative(&self) -> bool {
        match self {
            FieldChar::Base(c) => c.is_multiplicative(),
            FieldChar::Lifted(l) => l.base.is_multiplicative(),
        }
    }

    pub fn eval_root(&self, x: &FieldElement) -> Result<RootOfUnity, CycloError> {
        match self {
            FieldChar::Base(c) => c.eval_root(x),
            FieldChar::Lifted(l) => l.eval_root(x),
        }
    }

    pub fn eval(&self, x: &FieldElement) -> Result<CycloNumber, CycloError> {
        self.eval_root(x)?.to_cyclo()
    }
}

impl From<CharSpec> for FieldChar {
    fn from(c: CharSpec) -> Self {
        FieldChar::Base(c)
    }
}

impl From<LiftedChar> for FieldChar {
    fn from(l: LiftedChar) -> Self {
        FieldChar::Lifted(l)
    }
}
