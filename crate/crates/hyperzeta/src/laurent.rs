//! Sparse Laurent polynomials over finite fields: evaluation on torus
//! points via discrete logs, base change along field embeddings, and the
//! construction that turns a system `P_1 = .. = P_k = 0` into the single
//! polynomial `λ_1 P_1 + .. + λ_k P_k` in `k` extra variables.

use std::sync::Arc;

use thiserror::Error;

use crate::ffield::{Embedding, FieldCtx, FieldElement, FieldError};

#[derive(Debug, Error)]
pub enum LaurentError {
    #[error("term has {got} exponents, polynomial has {want} variables")]
    ExponentLength { got: usize, want: usize },
    #[error("polynomials must share the variable count (found {a} and {b})")]
    VariableMismatch { a: usize, b: usize },
    #[error("polynomial belongs to a different field than expected")]
    FieldMismatch,
    #[error("coordinate {index} is zero but appears with a negative exponent")]
    ZeroCoordinate { index: usize },
    #[error("cannot parse coefficient {0:?} (expected a decimal integer or \"g^j\")")]
    BadCoefficient(String),
    #[error("malformed term object: {0}")]
    BadTerm(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A sparse Laurent polynomial `Σ c_ω t_1^{ω_1} .. t_n^{ω_n}` with nonzero
/// field coefficients and pairwise-distinct integer exponent vectors, kept
/// sorted lexicographically.
#[derive(Debug, Clone)]
pub struct LaurentPoly {
    field: Arc<FieldCtx>,
    n: usize,
    terms: Vec<(Vec<i64>, FieldElement)>,
}

impl LaurentPoly {
    /// Canonicalize a term list: validate exponent lengths, merge duplicate
    /// exponent vectors by adding coefficients, drop zeros, sort.
    pub fn new(
        field: &Arc<FieldCtx>,
        n: usize,
        terms: Vec<(Vec<i64>, FieldElement)>,
    ) -> Result<LaurentPoly, LaurentError> {
        let mut merged: Vec<(Vec<i64>, FieldElement)> = Vec::with_capacity(terms.len());
        for (exp, coeff) in terms {
            if exp.len() != n {
                return Err(LaurentError::ExponentLength { got: exp.len(), want: n });
            }
            match merged.iter_mut().find(|(e, _)| *e == exp) {
                Some((_, c)) => *c = field.add(c, &coeff),
                None => merged.push((exp, coeff)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        merged.sort_by(|(a, _), (b, _)| a.cmp(b));
        Ok(LaurentPoly {
            field: Arc::clone(field),
            n,
            terms: merged,
        })
    }

    pub fn zero(field: &Arc<FieldCtx>, n: usize) -> LaurentPoly {
        LaurentPoly {
            field: Arc::clone(field),
            n,
            terms: Vec::new(),
        }
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn n_vars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(Vec<i64>, FieldElement)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact evaluation. Monomials are computed through the dlog table:
    /// `c·Πt_i^{ω_i} = g^{dlog(c) + Σ ω_i·dlog(t_i)}`. A zero coordinate is
    /// fine where its exponent is nonnegative (the factor is 0 or 1); it is
    /// an error where a negative exponent would require its inverse.
    pub fn eval(&self, point: &[FieldElement]) -> Result<FieldElement, LaurentError> {
        if point.len() != self.n {
            return Err(LaurentError::ExponentLength { got: point.len(), want: self.n });
        }
        let dlogs: Vec<Option<u64>> = point
            .iter()
            .map(|t| if t.is_zero() { None } else { Some(self.field.dlog(t).unwrap()) })
            .collect();
        let modulus = (self.field.order() - 1) as i128;
        let mut acc = self.field.zero();
        'term: for (exp, coeff) in &self.terms {
            let mut e = self.field.dlog(coeff).expect("stored coefficients are nonzero")
                as i128;
            for (i, (&w, d)) in exp.iter().zip(&dlogs).enumerate() {
                match d {
                    Some(d) => e += w as i128 * *d as i128,
                    None if w > 0 => continue 'term,
                    None if w == 0 => {}
                    None => return Err(LaurentError::ZeroCoordinate { index: i }),
                }
            }
            let value = self.field.gen_pow(e.rem_euclid(modulus) as u64);
            acc = self.field.add(&acc, &value);
        }
        Ok(acc)
    }

    /// Evaluation at the torus point `(g^{a_1}, .., g^{a_n})` given directly
    /// by its dlog vector; the hot path of the character-sum loops.
    pub fn eval_dlogs(&self, a: &[u64]) -> FieldElement {
        debug_assert_eq!(a.len(), self.n);
        let modulus = (self.field.order() - 1) as i128;
        let mut acc = self.field.zero();
        for (exp, coeff) in &self.terms {
            let mut e = self.field.dlog(coeff).expect("stored coefficients are nonzero")
                as i128;
            for (&w, &ai) in exp.iter().zip(a) {
                e += w as i128 * ai as i128;
            }
            let value = self.field.gen_pow(e.rem_euclid(modulus) as u64);
            acc = self.field.add(&acc, &value);
        }
        acc
    }

    /// Move the polynomial to the extension field of an embedding:
    /// coefficients are mapped through, exponents are untouched.
    pub fn base_change(&self, emb: &Arc<Embedding>) -> Result<LaurentPoly, LaurentError> {
        if !self.field.same_field(emb.base()) {
            return Err(LaurentError::FieldMismatch);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), emb.apply(c)))
            .collect();
        Ok(LaurentPoly {
            field: Arc::clone(emb.ext()),
            n: self.n,
            terms,
        })
    }

    /// Parse a JSON term array `[{"coef": "1" | "g^3", "exp": [1, -2]}, ..]`.
    /// Plain decimal coefficients are integer lifts into the prime field;
    /// `g^j` is the j-th power of the field generator.
    pub fn from_json(
        field: &Arc<FieldCtx>,
        n: usize,
        terms: &serde_json::Value,
    ) -> Result<LaurentPoly, LaurentError> {
        let arr = terms
            .as_array()
            .ok_or_else(|| LaurentError::BadTerm("expected an array of terms".into()))?;
        let mut parsed = Vec::with_capacity(arr.len());
        for t in arr {
            let obj = t
                .as_object()
                .ok_or_else(|| LaurentError::BadTerm(format!("not an object: {t}")))?;
            let coef_str = obj
                .get("coef")
                .and_then(|v| v.as_str())
                .ok_or_else(|| LaurentError::BadTerm(format!("missing \"coef\": {t}")))?;
            let exp_val = obj
                .get("exp")
                .and_then(|v| v.as_array())
                .ok_or_else(|| LaurentError::BadTerm(format!("missing \"exp\": {t}")))?;
            let exp: Vec<i64> = exp_val
                .iter()
                .map(|v| {
                    v.as_i64()
                        .ok_or_else(|| LaurentError::BadTerm(format!("non-integer exponent: {v}")))
                })
                .collect::<Result<_, _>>()?;
            parsed.push((exp, parse_coefficient(field, coef_str)?));
        }
        LaurentPoly::new(field, n, parsed)
    }

    /// Serialize the term list in the job-file syntax.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(exp, coeff)| {
                serde_json::json!({ "coef": self.coefficient_string(coeff), "exp": exp })
            })
            .collect();
        serde_json::Value::Array(terms)
    }

    fn coefficient_string(&self, c: &FieldElement) -> String {
        let enc = self.field.encode(c);
        if enc < self.field.p() {
            enc.to_string()
        } else {
            format!("g^{}", self.field.dlog(c).unwrap())
        }
    }
}

fn parse_coefficient(
    field: &Arc<FieldCtx>,
    s: &str,
) -> Result<FieldElement, LaurentError> {
    if let Some(j) = s.strip_prefix("g^") {
        let j: u64 = j
            .parse()
            .map_err(|_| LaurentError::BadCoefficient(s.to_string()))?;
        return Ok(field.gen_pow(j));
    }
    let v: i64 = s
        .parse()
        .map_err(|_| LaurentError::BadCoefficient(s.to_string()))?;
    Ok(field.from_int(v.rem_euclid(field.p() as i64) as u64))
}

impl std::fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (exp, coeff)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let cs = self.coefficient_string(coeff);
            let constant = exp.iter().all(|&w| w == 0);
            if constant {
                write!(f, "{cs}")?;
                continue;
            }
            let mut lead = true;
            if cs != "1" {
                write!(f, "{cs}")?;
                lead = false;
            }
            for (j, &w) in exp.iter().enumerate() {
                if w == 0 {
                    continue;
                }
                if !lead {
                    write!(f, "*")?;
                }
                lead = false;
                write!(f, "t{}", j + 1)?;
                if w != 1 {
                    write!(f, "^{w}")?;
                }
            }
        }
        Ok(())
    }
}

/// `λ_1 P_1 + .. + λ_k P_k` as a single Laurent polynomial in `k + n`
/// variables, the λ's occupying positions `1..k` with exponent 1. With
/// `k = 0` the result is the zero polynomial in `n` variables.
pub fn cayley_construct(
    field: &Arc<FieldCtx>,
    n: usize,
    polys: &[LaurentPoly],
) -> Result<LaurentPoly, LaurentError> {
    let k = polys.len();
    let mut terms = Vec::with_capacity(polys.iter().map(|p| p.terms.len()).sum());
    for (i, p) in polys.iter().enumerate() {
        if !p.field.same_field(field) {
            return Err(LaurentError::FieldMismatch);
        }
        if p.n != n {
            return Err(LaurentError::VariableMismatch { a: n, b: p.n });
        }
        for (exp, coeff) in &p.terms {
            let mut e = vec![0i64; k + n];
            e[i] = 1;
            e[k..].copy_from_slice(exp);
            terms.push((e, coeff.clone()));
        }
    }
    LaurentPoly::new(field, k + n, terms)
}
