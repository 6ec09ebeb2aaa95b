//! Rational quaternions as an exact division ring, the quasideterminant
//! inverse of a 2×2 matrix over them, and the identity glueing two chart
//! representations of the same inverse entry.

use std::fmt;
use std::str::FromStr;

use num::{BigRational, One, Signed, Zero};

use super::ClassicalError;

/// A quaternion with exact rational components over the basis `1, i, j, k`,
/// multiplied by `ij = k`, `jk = i`, `ki = j`. Nonzero elements are
/// invertible, so the type models a division ring with noncommutative
/// multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quaternion {
    re: BigRational,
    i: BigRational,
    j: BigRational,
    k: BigRational,
}

impl Quaternion {
    pub fn new(re: BigRational, i: BigRational, j: BigRational, k: BigRational) -> Quaternion {
        Quaternion { re, i, j, k }
    }

    pub fn from_integers(re: i64, i: i64, j: i64, k: i64) -> Quaternion {
        let r = |v: i64| BigRational::from_integer(v.into());
        Quaternion::new(r(re), r(i), r(j), r(k))
    }

    pub fn zero() -> Quaternion {
        Quaternion::from_integers(0, 0, 0, 0)
    }

    pub fn one() -> Quaternion {
        Quaternion::from_integers(1, 0, 0, 0)
    }

    pub fn i() -> Quaternion {
        Quaternion::from_integers(0, 1, 0, 0)
    }

    pub fn j() -> Quaternion {
        Quaternion::from_integers(0, 0, 1, 0)
    }

    pub fn k() -> Quaternion {
        Quaternion::from_integers(0, 0, 0, 1)
    }

    /// Components in basis order `1, i, j, k`.
    pub fn components(&self) -> [&BigRational; 4] {
        [&self.re, &self.i, &self.j, &self.k]
    }

    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Quaternion) -> Quaternion {
        Quaternion::new(
            &self.re + &other.re,
            &self.i + &other.i,
            &self.j + &other.j,
            &self.k + &other.k,
        )
    }

    pub fn sub(&self, other: &Quaternion) -> Quaternion {
        Quaternion::new(
            &self.re - &other.re,
            &self.i - &other.i,
            &self.j - &other.j,
            &self.k - &other.k,
        )
    }

    pub fn neg(&self) -> Quaternion {
        Quaternion::new(-&self.re, -&self.i, -&self.j, -&self.k)
    }

    pub fn mul(&self, other: &Quaternion) -> Quaternion {
        let (r1, i1, j1, k1) = (&self.re, &self.i, &self.j, &self.k);
        let (r2, i2, j2, k2) = (&other.re, &other.i, &other.j, &other.k);
        Quaternion::new(
            r1 * r2 - i1 * i2 - j1 * j2 - k1 * k2,
            r1 * i2 + i1 * r2 + j1 * k2 - k1 * j2,
            r1 * j2 - i1 * k2 + j1 * r2 + k1 * i2,
            r1 * k2 + i1 * j2 - j1 * i2 + k1 * r2,
        )
    }

    pub fn scale(&self, c: &BigRational) -> Quaternion {
        Quaternion::new(&self.re * c, &self.i * c, &self.j * c, &self.k * c)
    }

    pub fn conj(&self) -> Quaternion {
        Quaternion::new(self.re.clone(), -&self.i, -&self.j, -&self.k)
    }

    /// The reduced norm `re² + i² + j² + k²`, a nonnegative rational that
    /// vanishes only at zero.
    pub fn norm(&self) -> BigRational {
        self.components()
            .iter()
            .map(|c| *c * *c)
            .fold(BigRational::zero(), |acc, v| acc + v)
    }

    /// Two-sided inverse `conj / norm` of a nonzero quaternion.
    pub fn inv(&self) -> Result<Quaternion, ClassicalError> {
        if self.is_zero() {
            return Err(ClassicalError::ZeroInverse);
        }
        let norm = self.norm();
        Ok(self.conj().scale(&norm.recip()))
    }

    /// Wire format: four rational strings in basis order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.components()
                .iter()
                .map(|c| serde_json::Value::String(c.to_string()))
                .collect(),
        )
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Quaternion, ClassicalError> {
        let parts = value
            .as_array()
            .filter(|a| a.len() == 4)
            .ok_or(ClassicalError::BadQuaternionJson)?;
        let mut parsed = Vec::with_capacity(4);
        for part in parts {
            let text = part.as_str().ok_or(ClassicalError::BadQuaternionJson)?;
            let rational = BigRational::from_str(text.trim())
                .map_err(|_| ClassicalError::BadRational(text.to_string()))?;
            parsed.push(rational);
        }
        let mut it = parsed.into_iter();
        Ok(Quaternion::new(
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
        ))
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, label) in self.components().into_iter().zip(["", "i", "j", "k"]) {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let magnitude = c.abs();
            if label.is_empty() || !magnitude.is_one() {
                write!(f, "{magnitude}")?;
            }
            write!(f, "{label}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A 2×2 matrix over the quaternions, rows `(a1, b1)` and `(a2, b2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcMatrix2 {
    pub a1: Quaternion,
    pub b1: Quaternion,
    pub a2: Quaternion,
    pub b2: Quaternion,
}

impl NcMatrix2 {
    pub fn new(a1: Quaternion, b1: Quaternion, a2: Quaternion, b2: Quaternion) -> NcMatrix2 {
        NcMatrix2 { a1, b1, a2, b2 }
    }

    pub fn identity() -> NcMatrix2 {
        NcMatrix2::new(
            Quaternion::one(),
            Quaternion::zero(),
            Quaternion::zero(),
            Quaternion::one(),
        )
    }

    /// Matrix product; entry order matters because the entries do not
    /// commute.
    pub fn mul(&self, other: &NcMatrix2) -> NcMatrix2 {
        NcMatrix2::new(
            self.a1.mul(&other.a1).add(&self.b1.mul(&other.a2)),
            self.a1.mul(&other.b1).add(&self.b1.mul(&other.b2)),
            self.a2.mul(&other.a1).add(&self.b2.mul(&other.a2)),
            self.a2.mul(&other.b1).add(&self.b2.mul(&other.b2)),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "a1": self.a1.to_json(),
            "b1": self.b1.to_json(),
            "a2": self.a2.to_json(),
            "b2": self.b2.to_json(),
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<NcMatrix2, ClassicalError> {
        Ok(NcMatrix2::new(
            Quaternion::from_json(&value["a1"])?,
            Quaternion::from_json(&value["b1"])?,
            Quaternion::from_json(&value["a2"])?,
            Quaternion::from_json(&value["b2"])?,
        ))
    }
}

/// The quasideterminant inverse of a 2×2 quaternion matrix in the generic
/// chart:
///
/// ```text
/// X^-1 = [ (a1 - b1 b2^-1 a2)^-1   (a2 - b2 b1^-1 a1)^-1 ]
///        [ (b1 - a1 a2^-1 b2)^-1   (b2 - a2 a1^-1 b1)^-1 ]
/// ```
///
/// All four entries of `X` must be nonzero for the chart to apply, and over
/// a division ring the four quasideterminants vanish simultaneously, in
/// which case the matrix is not invertible there. Errors name the first
/// failing condition.
pub fn nc_inverse_2x2(x: &NcMatrix2) -> Result<NcMatrix2, ClassicalError> {
    let entries = [
        (&x.a1, "a1"),
        (&x.b1, "b1"),
        (&x.a2, "a2"),
        (&x.b2, "b2"),
    ];
    for (value, entry) in entries {
        if value.is_zero() {
            return Err(ClassicalError::ZeroEntry { entry });
        }
    }
    let quasidet = |top: &Quaternion,
                    left: &Quaternion,
                    opposite: &Quaternion,
                    bottom: &Quaternion,
                    which: &'static str|
     -> Result<Quaternion, ClassicalError> {
        let value = top.sub(&left.mul(&opposite.inv()?).mul(bottom));
        if value.is_zero() {
            return Err(ClassicalError::ZeroQuasideterminant { which });
        }
        Ok(value)
    };
    let q11 = quasidet(&x.a1, &x.b1, &x.b2, &x.a2, "a1 - b1*b2^-1*a2")?;
    let q21 = quasidet(&x.a2, &x.b2, &x.b1, &x.a1, "a2 - b2*b1^-1*a1")?;
    let q12 = quasidet(&x.b1, &x.a1, &x.a2, &x.b2, "b1 - a1*a2^-1*b2")?;
    let q22 = quasidet(&x.b2, &x.a2, &x.a1, &x.b1, "b2 - a2*a1^-1*b1")?;
    Ok(NcMatrix2::new(q11.inv()?, q21.inv()?, q12.inv()?, q22.inv()?))
}

/// Outcome of evaluating both chart representations of the same inverse
/// entry: `(a1 - b1 b2^-1 a2)^-1` on the chart needing `b2` invertible, and
/// `-a2^-1 b2 (b1 - a1 a2^-1 b2)^-1` on the chart needing `a2` invertible.
/// A side that is undefined carries the condition that blocked it; `equal`
/// is present only when both sides exist, and the identity makes it true.
#[derive(Debug, Clone)]
pub struct ChartReport {
    pub lhs: Option<Quaternion>,
    pub lhs_obstruction: Option<&'static str>,
    pub rhs: Option<Quaternion>,
    pub rhs_obstruction: Option<&'static str>,
    pub equal: Option<bool>,
}

impl ChartReport {
    pub fn to_json(&self) -> serde_json::Value {
        let side = |v: &Option<Quaternion>| match v {
            Some(q) => q.to_json(),
            None => serde_json::Value::Null,
        };
        serde_json::json!({
            "lhs": side(&self.lhs),
            "lhs_obstruction": self.lhs_obstruction,
            "rhs": side(&self.rhs),
            "rhs_obstruction": self.rhs_obstruction,
            "equal": self.equal,
        })
    }
}

/// Evaluate both sides of the chart identity on one quadruple. Each side is
/// computed exactly where its own domain conditions hold; where the domains
/// overlap, the sides agree as a theorem, so `equal: Some(false)` would
/// expose an arithmetic bug rather than an interesting input.
pub fn nc_identity_check(
    a1: &Quaternion,
    b1: &Quaternion,
    a2: &Quaternion,
    b2: &Quaternion,
) -> ChartReport {
    let (lhs, lhs_obstruction) = if b2.is_zero() {
        (None, Some("b2 = 0"))
    } else {
        let denom = a1.sub(&b1.mul(&b2.inv().unwrap()).mul(a2));
        if denom.is_zero() {
            (None, Some("a1 - b1*b2^-1*a2 = 0"))
        } else {
            (Some(denom.inv().unwrap()), None)
        }
    };
    let (rhs, rhs_obstruction) = if a2.is_zero() {
        (None, Some("a2 = 0"))
    } else {
        let a2_inv = a2.inv().unwrap();
        let denom = b1.sub(&a1.mul(&a2_inv).mul(b2));
        if denom.is_zero() {
            (None, Some("b1 - a1*a2^-1*b2 = 0"))
        } else {
            let value = a2_inv.neg().mul(b2).mul(&denom.inv().unwrap());
            (Some(value), None)
        }
    };
    let equal = match (&lhs, &rhs) {
        (Some(l), Some(r)) => Some(l == r),
        _ => None,
    };
    ChartReport {
        lhs,
        lhs_obstruction,
        rhs,
        rhs_obstruction,
        equal,
    }
}
