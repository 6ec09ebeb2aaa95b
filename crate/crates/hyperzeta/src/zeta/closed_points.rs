//! Frobenius orbits on torus points (closed points), the root-of-unity
//! weight attached to each orbit, and the Euler-type product representation
//! of the hypergeometric zeta series.

use std::collections::HashSet;
use std::sync::Arc;

use super::{PowerSeries, ZetaError};
use crate::cyclochar::{char_lift, CharSpec, CycloNumber};
use crate::ffield::{extend, FieldCtx, FieldElement};
use crate::hsums::HsumError;
use crate::laurent::LaurentPoly;

/// A Frobenius orbit on `(F_{q^d}^×)^n`, carried by the extension embedding
/// it lives in and its canonical representative: the orbit element whose
/// coordinate-encoding tuple is lexicographically smallest.
#[derive(Debug, Clone)]
pub struct ClosedPoint {
    emb: Arc<crate::ffield::Embedding>,
    rep: Vec<FieldElement>,
}

impl ClosedPoint {
    /// Orbit size, equal to the degree of the residue field over the base.
    pub fn degree(&self) -> u32 {
        self.emb.rel_degree()
    }

    pub fn rep(&self) -> &[FieldElement] {
        &self.rep
    }

    /// The embedding `F_q ⊂ F_{q^{d(x)}}` the representative lives in.
    pub fn emb(&self) -> &Arc<crate::ffield::Embedding> {
        &self.emb
    }

    /// All orbit elements, starting from the representative, each obtained
    /// from the previous by coordinate-wise Frobenius.
    pub fn orbit(&self) -> Vec<Vec<FieldElement>> {
        let mut out = Vec::with_capacity(self.degree() as usize);
        let mut cur = self.rep.clone();
        for _ in 0..self.degree() {
            out.push(cur.clone());
            cur = cur.iter().map(|x| self.emb.frobenius(x)).collect();
        }
        out
    }
}

/// All closed points of the n-torus over `F_q` of degree at most `d_max`,
/// ordered by degree and then by representative. For each degree d, tuples
/// of `(F_{q^d}^×)^n` are scanned in lexicographic encoding order; a tuple
/// whose Frobenius orbit has size exactly d opens a new closed point.
pub fn torus_closed_points(
    field: &Arc<FieldCtx>,
    n: usize,
    d_max: u32,
    budget: u64,
) -> Result<Vec<ClosedPoint>, ZetaError> {
    let mut out = Vec::new();
    for d in 1..=d_max {
        let emb = extend(field, d)?;
        let ext = emb.ext();
        let big_q = ext.order();
        let required = (big_q as u128 - 1).pow(n as u32);
        if required > budget as u128 {
            return Err(HsumError::BudgetExceeded { required, budget }.into());
        }

        let mut visited: HashSet<Vec<u64>> = HashSet::new();
        let mut encodings = vec![1u64; n];
        loop {
            if !visited.contains(&encodings) {
                // Walk the orbit; ascending enumeration makes the first
                // element seen the lexicographically smallest of its orbit.
                let start = encodings.clone();
                let rep: Vec<FieldElement> =
                    start.iter().map(|&e| ext.decode(e)).collect();
                let mut orbit_encodings = Vec::new();
                let mut cur = rep.clone();
                loop {
                    let enc: Vec<u64> = cur.iter().map(|x| ext.encode(x)).collect();
                    if !orbit_encodings.is_empty() && enc == start {
                        break;
                    }
                    orbit_encodings.push(enc);
                    cur = cur.iter().map(|x| emb.frobenius(x)).collect();
                }
                let size = orbit_encodings.len() as u32;
                if d % size != 0 {
                    return Err(ZetaError::Internal(
                        "frobenius orbit size does not divide the field degree",
                    ));
                }
                for enc in orbit_encodings {
                    visited.insert(enc);
                }
                if size == d {
                    out.push(ClosedPoint {
                        emb: Arc::clone(&emb),
                        rep,
                    });
                }
            }
            // Odometer over nonzero encodings, leftmost coordinate slowest.
            let mut i = n;
            let mut rolled_over = true;
            while i > 0 {
                i -= 1;
                encodings[i] += 1;
                if encodings[i] < big_q {
                    rolled_over = false;
                    break;
                }
                encodings[i] = 1;
            }
            if rolled_over {
                break;
            }
        }
    }
    Ok(out)
}

/// The weight of a closed point: the base additive character of the traced
/// polynomial value times the base multiplicative characters of the normed
/// coordinates, all evaluated at the canonical representative. The value is
/// recomputed at the Frobenius image of the representative and must agree,
/// as the weight is a function of the orbit.
pub fn rho(
    x: &ClosedPoint,
    chi: &CharSpec,
    poly: &LaurentPoly,
    pis: &[CharSpec],
) -> Result<CycloNumber, ZetaError> {
    if chi.is_multiplicative() {
        return Err(HsumError::AdditiveCharRequired.into());
    }
    if pis.len() != poly.n_vars() || poly.n_vars() != x.rep.len() {
        return Err(HsumError::CharCountMismatch {
            chars: pis.len(),
            vars: poly.n_vars(),
        }
        .into());
    }
    for pi in pis {
        if !pi.is_multiplicative() {
            return Err(HsumError::MultiplicativeCharRequired.into());
        }
    }
    let moved = poly.base_change(&x.emb)?;
    let chi_l = char_lift(chi, &x.emb)?;
    let pis_l: Vec<_> = pis
        .iter()
        .map(|pi| char_lift(pi, &x.emb))
        .collect::<Result<_, _>>()?;

    let eval_at = |point: &[FieldElement]| -> Result<CycloNumber, ZetaError> {
        let mut value = chi_l.eval(&moved.eval(point)?)?;
        for (pi, t) in pis_l.iter().zip(point) {
            value = value.mul(&pi.eval(t)?);
        }
        Ok(value)
    };

    let at_rep = eval_at(&x.rep)?;
    let shifted: Vec<FieldElement> = x.rep.iter().map(|t| x.emb.frobenius(t)).collect();
    if at_rep != eval_at(&shifted)? {
        return Err(ZetaError::Internal(
            "closed-point weight changed under a Frobenius shift",
        ));
    }
    Ok(at_rep)
}

/// The product representation of the hypergeometric zeta series: over every
/// closed point x of degree ≤ D, multiply the truncated expansion of
/// `(1 - ρ(x)·T^{d(x)})^{-1}`.
pub fn zeta_hyper_product(
    chi: &CharSpec,
    poly: &LaurentPoly,
    pis: &[CharSpec],
    d_max: u32,
    budget: u64,
) -> Result<PowerSeries, ZetaError> {
    let field = chi.field();
    let d = d_max as usize;
    let points = torus_closed_points(field, poly.n_vars(), d_max, budget)?;
    let mut acc = PowerSeries::one(d);
    for x in &points {
        let weight = rho(x, chi, poly, pis)?;
        let step = x.degree() as usize;
        let mut coeffs = vec![CycloNumber::zero(); d + 1];
        let mut power = CycloNumber::one();
        let mut idx = 0;
        while idx <= d {
            coeffs[idx] = power.clone();
            power = power.mul(&weight);
            idx += step;
        }
        acc = acc.mul(&PowerSeries::from_coeffs(coeffs))?;
    }
    Ok(acc)
}

/// Both routes to the hypergeometric zeta series, compared coefficient by
/// coefficient.
#[derive(Debug, Clone)]
pub struct ProductReport {
    /// `exp Σ Φ_{q^d} T^d/d`.
    pub direct: PowerSeries,
    /// Product over closed points.
    pub product: PowerSeries,
    pub equal: bool,
}

impl ProductReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "direct": self.direct.to_json(),
            "product": self.product.to_json(),
            "equal": self.equal,
        })
    }
}

/// Compute the exponential-sum series and the closed-point product
/// independently and check exact equality. The two are the same series
/// mathematically, so `equal: false` signals an implementation bug.
pub fn verify_product(
    chi: &CharSpec,
    poly: &LaurentPoly,
    pis: &[CharSpec],
    d_max: u32,
    budget: u64,
) -> Result<ProductReport, ZetaError> {
    let direct = super::zeta_hyper_direct(chi, poly, pis, d_max, budget)?;
    let product = zeta_hyper_product(chi, poly, pis, d_max, budget)?;
    let equal = direct == product;
    Ok(ProductReport {
        direct,
        product,
        equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::make_field;
    use crate::hsums::phi;

    const BUDGET: u64 = 1 << 24;

    fn poly(
        field: &Arc<FieldCtx>,
        n: usize,
        terms: &[(&[i64], u64)],
    ) -> LaurentPoly {
        let terms = terms
            .iter()
            .map(|(e, c)| (e.to_vec(), field.from_int(*c)))
            .collect();
        LaurentPoly::new(field, n, terms).unwrap()
    }

    fn degree_counts(points: &[ClosedPoint], d_max: u32) -> Vec<usize> {
        (1..=d_max)
            .map(|d| points.iter().filter(|x| x.degree() == d).count())
            .collect()
    }

    #[test]
    fn line_closed_points_over_f2() {
        let f2 = make_field(2, 1).unwrap();
        let points = torus_closed_points(&f2, 1, 3, BUDGET).unwrap();
        assert_eq!(degree_counts(&points, 3), vec![1, 1, 2]);
    }

    #[test]
    fn line_closed_points_over_f3() {
        let f3 = make_field(3, 1).unwrap();
        let points = torus_closed_points(&f3, 1, 1, BUDGET).unwrap();
        assert_eq!(degree_counts(&points, 1), vec![2]);
    }

    #[test]
    fn orbit_sizes_sum_to_torus_counts() {
        for (q, n, d_max) in [(2u64, 1usize, 4u32), (2, 2, 3), (3, 1, 3), (3, 2, 2), (5, 1, 2)] {
            let f = make_field(q, 1).unwrap();
            let points = torus_closed_points(&f, n, d_max, BUDGET).unwrap();
            for d in 1..=d_max {
                let total: u64 = points
                    .iter()
                    .filter(|x| d % x.degree() == 0)
                    .map(|x| x.degree() as u64)
                    .sum();
                let expected = (q.pow(d) - 1).pow(n as u32);
                assert_eq!(total, expected, "q={q} n={n} d={d}");
            }
        }
    }

    #[test]
    fn representatives_are_canonical() {
        let f2 = make_field(2, 1).unwrap();
        let points = torus_closed_points(&f2, 2, 3, BUDGET).unwrap();
        let mut seen = HashSet::new();
        for x in &points {
            let orbit = x.orbit();
            assert_eq!(orbit.len(), x.degree() as usize);
            let ext = x.emb().ext();
            let encoded: Vec<Vec<u64>> = orbit
                .iter()
                .map(|tuple| tuple.iter().map(|t| ext.encode(t)).collect())
                .collect();
            assert_eq!(
                encoded.iter().min().unwrap(),
                &encoded[0],
                "representative must be the smallest orbit element"
            );
            for enc in encoded {
                assert!(seen.insert((x.degree(), enc)), "orbits must not overlap");
            }
        }
    }

    #[test]
    fn weight_at_a_rational_point() {
        let f2 = make_field(2, 1).unwrap();
        let chi = CharSpec::additive(&f2);
        let t = poly(&f2, 1, &[(&[1], 1)]);
        let pis = [CharSpec::trivial(&f2)];
        let points = torus_closed_points(&f2, 1, 1, BUDGET).unwrap();
        assert_eq!(points.len(), 1);
        let w = rho(&points[0], &chi, &t, &pis).unwrap();
        assert_eq!(w, CycloNumber::from_integer(-1));
    }

    #[test]
    fn weight_of_trivial_data_is_one() {
        let f3 = make_field(3, 1).unwrap();
        let chi = CharSpec::additive(&f3);
        let zero = LaurentPoly::zero(&f3, 2);
        let pis = [CharSpec::trivial(&f3), CharSpec::trivial(&f3)];
        for x in torus_closed_points(&f3, 2, 2, BUDGET).unwrap() {
            assert_eq!(rho(&x, &chi, &zero, &pis).unwrap(), CycloNumber::one());
        }
    }

    #[test]
    fn weight_at_a_quadratic_orbit() {
        // The orbit of ω in F_4 has trace 1, so the weight of P = t there
        // is χ(1) = -1.
        let f2 = make_field(2, 1).unwrap();
        let chi = CharSpec::additive(&f2);
        let t = poly(&f2, 1, &[(&[1], 1)]);
        let pis = [CharSpec::trivial(&f2)];
        let points = torus_closed_points(&f2, 1, 2, BUDGET).unwrap();
        let quadratic: Vec<_> = points.iter().filter(|x| x.degree() == 2).collect();
        assert_eq!(quadratic.len(), 1);
        let w = rho(quadratic[0], &chi, &t, &pis).unwrap();
        assert_eq!(w, CycloNumber::from_integer(-1));
    }

    #[test]
    fn weight_is_orbit_invariant() {
        let f3 = make_field(3, 1).unwrap();
        let chi = CharSpec::additive(&f3);
        let p = poly(&f3, 1, &[(&[1], 1), (&[-1], 2)]);
        let pis = [CharSpec::multiplicative(&f3, 1).unwrap()];
        for x in torus_closed_points(&f3, 1, 3, BUDGET).unwrap() {
            let expected = rho(&x, &chi, &p, &pis).unwrap();
            let moved = p.base_change(x.emb()).unwrap();
            let chi_l = char_lift(&chi, x.emb()).unwrap();
            let pi_l = char_lift(&pis[0], x.emb()).unwrap();
            for element in x.orbit() {
                let mut v = chi_l.eval(&moved.eval(&element).unwrap()).unwrap();
                v = v.mul(&pi_l.eval(&element[0]).unwrap());
                assert_eq!(v, expected);
            }
        }
    }

    #[test]
    fn product_of_t_over_f2_telescopes() {
        let f2 = make_field(2, 1).unwrap();
        let chi = CharSpec::additive(&f2);
        let t = poly(&f2, 1, &[(&[1], 1)]);
        let pis = [CharSpec::trivial(&f2)];
        let z = zeta_hyper_product(&chi, &t, &pis, 4, BUDGET).unwrap();
        let expected = PowerSeries::from_coeffs(
            [1i64, -1, 0, 0, 0]
                .iter()
                .map(|&v| CycloNumber::from_integer(v))
                .collect(),
        );
        assert_eq!(z, expected);
    }

    #[test]
    fn product_with_trivial_data_is_torus_zeta() {
        let f2 = make_field(2, 1).unwrap();
        let chi = CharSpec::additive(&f2);
        let zero = LaurentPoly::zero(&f2, 1);
        let pis = [CharSpec::trivial(&f2)];
        let z = zeta_hyper_product(&chi, &zero, &pis, 4, BUDGET).unwrap();
        let torus = super::super::zeta_variety(&f2, 1, &[], 4, BUDGET).unwrap();
        assert_eq!(z, torus);
    }

    #[test]
    fn truncation_at_degree_one_sees_the_base_sum() {
        let f5 = make_field(5, 1).unwrap();
        let chi = CharSpec::additive(&f5);
        let kloosterman = poly(&f5, 1, &[(&[1], 1), (&[-1], 1)]);
        let pis = [CharSpec::trivial(&f5)];
        let z = zeta_hyper_product(&chi, &kloosterman, &pis, 1, BUDGET).unwrap();
        let chi_f: crate::cyclochar::FieldChar = chi.clone().into();
        let pis_f: Vec<crate::cyclochar::FieldChar> =
            pis.iter().map(|p| p.clone().into()).collect();
        let base_sum = phi(&chi_f, &kloosterman, &pis_f, BUDGET).unwrap();
        assert_eq!(*z.coeff(0), CycloNumber::one());
        assert_eq!(*z.coeff(1), base_sum);
    }

    #[test]
    fn product_matches_direct_series() {
        let f2 = make_field(2, 1).unwrap();
        let chi2 = CharSpec::additive(&f2);
        let t = poly(&f2, 1, &[(&[1], 1)]);
        let r = verify_product(&chi2, &t, &[CharSpec::trivial(&f2)], 4, BUDGET).unwrap();
        assert!(r.equal);

        let f3 = make_field(3, 1).unwrap();
        let chi3 = CharSpec::additive(&f3);
        let t3 = poly(&f3, 1, &[(&[1], 1)]);
        let quad = [CharSpec::multiplicative(&f3, 1).unwrap()];
        let r = verify_product(&chi3, &t3, &quad, 3, BUDGET).unwrap();
        assert!(r.equal);

        let two_var = poly(&f2, 2, &[(&[1, 1], 1), (&[0, -1], 1)]);
        let pis2 = [CharSpec::trivial(&f2), CharSpec::trivial(&f2)];
        let r = verify_product(&chi2, &two_var, &pis2, 3, BUDGET).unwrap();
        assert!(r.equal);
        assert_eq!(r.to_json()["equal"], serde_json::json!(true));
    }
}
