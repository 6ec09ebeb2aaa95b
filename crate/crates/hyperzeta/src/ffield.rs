//! Finite fields `F_{p^k}` at desk scale, with dense discrete-log tables.
//!
//! A field is always realized over its prime field: `F_{p^k}` is
//! `F_p[x] / (f)` for a deterministically chosen monic irreducible `f` of
//! degree `k`, and an extension `F_{q^d}` of `F_q` (q = p^k) is realized as
//! `F_{p^{kd}}` together with an explicit [`Embedding`] of the base field.
//! All choices (defining polynomial, generator, embedding image) take the
//! candidate with the smallest integer encoding, so two constructions of the
//! same field are identical element for element.
//!
//! The encoding of an element with coordinates `c_0..c_{k-1}` is the integer
//! `sum c_i p^i`; it is the total order used for every tie-break in the
//! crate.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

/// Largest field order `p^k` for which tables are built.
pub const ENUMERATION_BOUND: u64 = 1 << 20;

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of order {q} exceeds the enumeration bound {bound}")]
    TooLarge { q: u128, bound: u64 },
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("element has {got} coordinates, field has degree {want}")]
    WrongDegree { got: usize, want: usize },
    #[error("coordinate {value} is not reduced modulo p = {p}")]
    CoordinateOutOfRange { value: u64, p: u64 },
    #[error("element does not lie in the embedded base field")]
    NotInBaseField,
    #[error("negative power of zero")]
    NegativePowerOfZero,
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}

/// An element of a finite field, as coordinates over the prime field.
///
/// The coordinate vector has length `k` and each entry is fully reduced
/// modulo `p`; elements only make sense relative to the [`FieldCtx`] that
/// produced them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    /// Coordinates `c_0..c_{k-1}` over the prime field, constant term first.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// A finite field `F_{p^k}` with its defining polynomial, a fixed generator
/// of the multiplicative group, and dense discrete-log / power tables.
///
/// Construction enumerates all `p^k` elements, so the order must stay below
/// [`ENUMERATION_BOUND`]. The context is immutable after construction and
/// safe to share across threads.
pub struct FieldCtx {
    p: u64,
    k: u32,
    q: u64,
    /// Monic irreducible of degree `k` over `F_p`, constant term first
    /// (length `k + 1`, last entry 1).
    defining_poly: Vec<u64>,
    generator: FieldElement,
    /// `dlog_table[enc]` is the discrete log of the element with encoding
    /// `enc` base `generator`; the entry for 0 is a sentinel.
    dlog_table: Vec<u32>,
    /// `pow_table[j]` is the encoding of `generator^j`, `j` in `0..q-1`.
    pow_table: Vec<u64>,
}

const DLOG_NONE: u32 = u32::MAX;

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("defining_poly", &self.defining_poly)
            .field("generator", &self.generator)
            .finish()
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

// ---- polynomial arithmetic over F_p (construction-time only) ----

/// Remainder of `a` modulo monic `m`, both constant-first, coefficients in F_p.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (rj, &mj) in r[shift..].iter_mut().zip(m) {
                *rj = (*rj + p - lead * mj % p) % p;
            }
        }
        r.pop();
    }
    r.resize(dm, 0);
    r
}

fn poly_mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    poly_rem(&prod, m, p)
}

/// Does `div` divide `f` exactly over F_p? Both constant-first, `div` monic.
fn poly_divides(div: &[u64], f: &[u64], p: u64) -> bool {
    let mut r: Vec<u64> = f.to_vec();
    let dd = div.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (rj, &dj) in r[shift..].iter_mut().zip(div) {
                *rj = (*rj + p - lead * dj % p) % p;
            }
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}

/// Exhaustive irreducibility test: no monic divisor of degree 1..=k/2.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    if f[0] == 0 {
        return false; // divisible by x
    }
    for d in 1..=(k / 2) {
        // all monic polynomials of degree d, lex order on (c_0..c_{d-1})
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut v = idx;
            for _ in 0..d {
                div.push(v % p);
                v /= p;
            }
            div.push(1);
            if poly_divides(&div, f, p) {
                return false;
            }
        }
    }
    true
}

/// Construct `F_{p^k}`.
///
/// The defining polynomial is the lexicographically smallest monic
/// irreducible of degree `k` (comparing coefficient tuples constant term
/// first), and the generator is the nonzero element of smallest encoding
/// whose multiplicative order is `p^k - 1`.
pub fn make_field(p: u64, k: u32) -> Result<Arc<FieldCtx>, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if k == 0 {
        return Err(FieldError::Internal("extension degree must be positive"));
    }
    let q128 = (p as u128).pow(k);
    if q128 > ENUMERATION_BOUND as u128 {
        return Err(FieldError::TooLarge {
            q: q128,
            bound: ENUMERATION_BOUND,
        });
    }
    let q = q128 as u64;

    // Smallest monic irreducible: iterate (c_0, .., c_{k-1}) in lex order
    // with c_0 most significant.
    let mut defining_poly = None;
    'search: for idx in 0..q {
        let mut coeffs = vec![0u64; k as usize + 1];
        let mut v = idx;
        for pos in (0..k as usize).rev() {
            coeffs[pos] = v % p;
            v /= p;
        }
        coeffs[k as usize] = 1;
        if is_irreducible(&coeffs, p) {
            defining_poly = Some(coeffs);
            break 'search;
        }
    }
    let defining_poly =
        defining_poly.ok_or(FieldError::Internal("no irreducible polynomial found"))?;

    let mut ctx = FieldCtx {
        p,
        k,
        q,
        defining_poly,
        generator: FieldElement {
            coeffs: vec![0; k as usize],
        },
        dlog_table: Vec::new(),
        pow_table: Vec::new(),
    };

    // Generator: smallest encoding with multiplicative order exactly q - 1,
    // found by checking x^{(q-1)/r} != 1 for the prime factors r of q - 1.
    let factors = prime_factors(q - 1);
    let one = ctx.one_raw();
    let mut generator = None;
    'gen: for enc in 1..q {
        let x = ctx.decode_raw(enc);
        for &r in &factors {
            if ctx.pow_raw(&x, (q - 1) / r) == one {
                continue 'gen;
            }
        }
        generator = Some(x);
        break;
    }
    ctx.generator = generator.ok_or(FieldError::Internal("no generator found"))?;

    // Dense tables: pow_table[j] = enc(g^j), dlog_table inverse.
    let mut pow_table = Vec::with_capacity((q - 1) as usize);
    let mut dlog_table = vec![DLOG_NONE; q as usize];
    let mut cur = one.clone();
    for j in 0..(q - 1) {
        let enc = ctx.encode(&cur);
        if dlog_table[enc as usize] != DLOG_NONE {
            return Err(FieldError::Internal("generator order below q - 1"));
        }
        dlog_table[enc as usize] = j as u32;
        pow_table.push(enc);
        cur = ctx.mul_raw(&cur, &ctx.generator);
    }
    if cur != one {
        return Err(FieldError::Internal("generator order exceeds q - 1"));
    }
    ctx.pow_table = pow_table;
    ctx.dlog_table = dlog_table;
    Ok(Arc::new(ctx))
}

impl FieldCtx {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Extension degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Field order `q = p^k`.
    pub fn order(&self) -> u64 {
        self.q
    }

    /// Defining polynomial, constant term first, length `k + 1`.
    pub fn defining_poly(&self) -> &[u64] {
        &self.defining_poly
    }

    pub fn generator(&self) -> FieldElement {
        self.generator.clone()
    }

    /// Same mathematical field? Deterministic construction makes `(p, k)`
    /// a complete identity.
    pub fn same_field(&self, other: &FieldCtx) -> bool {
        self.p == other.p && self.k == other.k
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.k as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.one_raw()
    }

    fn one_raw(&self) -> FieldElement {
        let mut coeffs = vec![0; self.k as usize];
        coeffs[0] = 1;
        FieldElement { coeffs }
    }

    /// The constant element `n mod p`.
    pub fn from_int(&self, n: u64) -> FieldElement {
        let mut coeffs = vec![0; self.k as usize];
        coeffs[0] = n % self.p;
        FieldElement { coeffs }
    }

    /// Build an element from explicit coordinates (length `k`, each `< p`).
    pub fn element(&self, coeffs: Vec<u64>) -> Result<FieldElement, FieldError> {
        if coeffs.len() != self.k as usize {
            return Err(FieldError::WrongDegree {
                got: coeffs.len(),
                want: self.k as usize,
            });
        }
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(FieldError::CoordinateOutOfRange { value: bad, p: self.p });
        }
        Ok(FieldElement { coeffs })
    }

    /// Integer encoding `sum c_i p^i`.
    pub fn encode(&self, x: &FieldElement) -> u64 {
        let mut acc = 0u64;
        for &c in x.coeffs.iter().rev() {
            acc = acc * self.p + c;
        }
        acc
    }

    pub fn decode(&self, enc: u64) -> FieldElement {
        debug_assert!(enc < self.q);
        self.decode_raw(enc)
    }

    fn decode_raw(&self, mut enc: u64) -> FieldElement {
        let mut coeffs = vec![0; self.k as usize];
        for c in coeffs.iter_mut() {
            *c = enc % self.p;
            enc /= self.p;
        }
        FieldElement { coeffs }
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |e| self.decode_raw(e))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FieldElement { coeffs }
    }

    /// Multiplication straight from the polynomial representation; used
    /// during construction before the tables exist.
    fn mul_raw(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: poly_mul_mod(&a.coeffs, &b.coeffs, &self.defining_poly, self.p),
        }
    }

    fn pow_raw(&self, x: &FieldElement, mut e: u64) -> FieldElement {
        let mut result = self.one_raw();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_raw(&result, &base);
            }
            base = self.mul_raw(&base, &base);
            e >>= 1;
        }
        result
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        if self.pow_table.is_empty() {
            return self.mul_raw(a, b);
        }
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let da = self.dlog_table[self.encode(a) as usize] as u64;
        let db = self.dlog_table[self.encode(b) as usize] as u64;
        self.decode_raw(self.pow_table[((da + db) % (self.q - 1)) as usize])
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        let d = self.dlog_table[self.encode(a) as usize] as u64;
        let e = (self.q - 1 - d) % (self.q - 1);
        Ok(self.decode_raw(self.pow_table[e as usize]))
    }

    /// `x^e` for a signed exponent; negative exponents require `x != 0`.
    pub fn pow(&self, x: &FieldElement, e: i64) -> Result<FieldElement, FieldError> {
        if x.is_zero() {
            return match e.cmp(&0) {
                std::cmp::Ordering::Greater => Ok(self.zero()),
                std::cmp::Ordering::Equal => Ok(self.one_raw()),
                std::cmp::Ordering::Less => Err(FieldError::NegativePowerOfZero),
            };
        }
        let d = self.dlog_table[self.encode(x) as usize] as i128;
        let m = (self.q - 1) as i128;
        let e = (d * e as i128).rem_euclid(m) as u64;
        Ok(self.decode_raw(self.pow_table[e as usize]))
    }

    /// Discrete log base the field generator.
    pub fn dlog(&self, x: &FieldElement) -> Result<u64, FieldError> {
        if x.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.dlog_table[self.encode(x) as usize] as u64)
    }

    /// Encoding of `generator^j` (`j` reduced modulo `q - 1`).
    pub fn gen_pow_enc(&self, j: u64) -> u64 {
        self.pow_table[(j % (self.q - 1)) as usize]
    }

    /// `generator^j` as an element.
    pub fn gen_pow(&self, j: u64) -> FieldElement {
        self.decode_raw(self.gen_pow_enc(j))
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, x: &FieldElement) -> Result<u64, FieldError> {
        let d = self.dlog(x)?;
        Ok((self.q - 1) / gcd(d, self.q - 1))
    }

    /// Absolute trace down to the prime field, returned as an integer in
    /// `[0, p)`: `tr(x) = x + x^p + ... + x^{p^{k-1}}`.
    pub fn abs_trace(&self, x: &FieldElement) -> u64 {
        let mut acc = self.zero();
        let mut y = x.clone();
        for _ in 0..self.k {
            acc = self.add(&acc, &y);
            y = self.pow(&y, self.p as i64).expect("positive power");
        }
        debug_assert!(
            acc.coeffs[1..].iter().all(|&c| c == 0),
            "absolute trace must land in the prime field"
        );
        acc.coeffs[0]
    }
}

/// The realization of `F_q` inside `F_{q^d}`, both fields being represented
/// over the common prime field.
///
/// The map is determined by where the base generator goes; the image is the
/// smallest-encoding element of the extension with multiplicative order
/// `q - 1` that satisfies the base generator's minimal polynomial over `F_p`.
#[derive(Debug)]
pub struct Embedding {
    base: Arc<FieldCtx>,
    ext: Arc<FieldCtx>,
    rel_degree: u32,
    image_of_base_generator: FieldElement,
    /// Forward map, indexed by base encoding.
    fwd: Vec<u64>,
    /// Inverse of `fwd`, keyed by extension encoding.
    rev: HashMap<u64, u64>,
}

/// Build `F_{q^d}` over `base` together with the canonical embedding.
pub fn extend(base: &Arc<FieldCtx>, d: u32) -> Result<Arc<Embedding>, FieldError> {
    if d == 0 {
        return Err(FieldError::Internal("relative degree must be positive"));
    }
    let ext = make_field(base.p, base.k * d)?;
    let q = base.q;
    let big_q = ext.q;

    // Minimal polynomial of the base generator over F_p: product of
    // (x - g^{p^i}) for i < k, computed in the base field. Its coefficients
    // are Frobenius-fixed, hence constants.
    let k = base.k as usize;
    let mut minpoly: Vec<FieldElement> = vec![base.one()];
    let mut conj = base.generator.clone();
    for _ in 0..k {
        let mut next = vec![base.zero(); minpoly.len() + 1];
        for (i, c) in minpoly.iter().enumerate() {
            next[i + 1] = base.add(&next[i + 1], c);
            let t = base.mul(c, &conj);
            next[i] = base.sub(&next[i], &t);
        }
        minpoly = next;
        conj = base.pow(&conj, base.p as i64)?;
    }
    let minpoly: Vec<u64> = minpoly
        .iter()
        .map(|c| {
            if c.coeffs[1..].iter().any(|&x| x != 0) {
                Err(FieldError::Internal("minimal polynomial not over F_p"))
            } else {
                Ok(c.coeffs[0])
            }
        })
        .collect::<Result<_, _>>()?;

    // Candidate images: elements of multiplicative order exactly q - 1,
    // i.e. G^{j (Q-1)/(q-1)} with gcd(j, q-1) = 1; keep the roots of the
    // minimal polynomial and take the smallest encoding.
    let stride = (big_q - 1) / (q - 1);
    let mut image: Option<FieldElement> = None;
    let mut image_enc = u64::MAX;
    for j in 1..=(q - 1) {
        if gcd(j, q - 1) != 1 {
            continue;
        }
        let enc = ext.gen_pow_enc(j * stride % (big_q - 1));
        if enc >= image_enc {
            continue;
        }
        let h = ext.decode(enc);
        // Evaluate the minimal polynomial at h in the extension.
        let mut val = ext.zero();
        for &c in minpoly.iter().rev() {
            val = ext.mul(&val, &h);
            val = ext.add(&val, &ext.from_int(c));
        }
        if val.is_zero() {
            image_enc = enc;
            image = Some(h);
        }
    }
    let image = image.ok_or(FieldError::Internal(
        "no embedding image found for the base generator",
    ))?;

    // g^a -> image^a; zero maps to zero.
    let mut fwd = vec![0u64; q as usize];
    let mut rev = HashMap::with_capacity(q as usize);
    rev.insert(0u64, 0u64);
    let mut cur = ext.one();
    for a in 0..(q - 1) {
        let benc = base.gen_pow_enc(a);
        let eenc = ext.encode(&cur);
        fwd[benc as usize] = eenc;
        rev.insert(eenc, benc);
        cur = ext.mul(&cur, &image);
    }

    Ok(Arc::new(Embedding {
        base: Arc::clone(base),
        ext,
        rel_degree: d,
        image_of_base_generator: image,
        fwd,
        rev,
    }))
}

impl Embedding {
    pub fn base(&self) -> &Arc<FieldCtx> {
        &self.base
    }

    pub fn ext(&self) -> &Arc<FieldCtx> {
        &self.ext
    }

    /// Degree `d` of the extension over the base field.
    pub fn rel_degree(&self) -> u32 {
        self.rel_degree
    }

    pub fn image_of_base_generator(&self) -> FieldElement {
        self.image_of_base_generator.clone()
    }

    /// Image of a base-field element in the extension.
    pub fn apply(&self, x: &FieldElement) -> FieldElement {
        self.ext.decode(self.fwd[self.base.encode(x) as usize])
    }

    /// Express an extension element in base coordinates, if it lies in the
    /// embedded base field.
    pub fn pull_back(&self, x: &FieldElement) -> Result<FieldElement, FieldError> {
        let enc = self.ext.encode(x);
        match self.rev.get(&enc) {
            Some(&benc) => Ok(self.base.decode(benc)),
            None => Err(FieldError::NotInBaseField),
        }
    }

    /// The relative Frobenius `x -> x^q` of the extension, `q` the base order.
    pub fn frobenius(&self, x: &FieldElement) -> FieldElement {
        // q < 2^20 so the exponent fits comfortably in i64.
        self.ext.pow(x, self.base.q as i64).expect("positive power")
    }

    /// Relative trace `x + x^q + ... + x^{q^{d-1}}`, in base coordinates.
    pub fn rel_trace(&self, x: &FieldElement) -> Result<FieldElement, FieldError> {
        let mut acc = self.ext.zero();
        let mut y = x.clone();
        for _ in 0..self.rel_degree {
            acc = self.ext.add(&acc, &y);
            y = self.frobenius(&y);
        }
        self.pull_back(&acc)
    }

    /// Relative norm `x * x^q * ... * x^{q^{d-1}}`, in base coordinates.
    ///
    /// For nonzero `x` the power-product is cross-checked against the closed
    /// form `x^{(q^d-1)/(q-1)}`.
    pub fn rel_norm(&self, x: &FieldElement) -> Result<FieldElement, FieldError> {
        let mut acc = self.ext.one();
        let mut y = x.clone();
        for _ in 0..self.rel_degree {
            acc = self.ext.mul(&acc, &y);
            y = self.frobenius(&y);
        }
        if !x.is_zero() {
            let e = (self.ext.q - 1) / (self.base.q - 1);
            let closed = self.ext.pow(x, e as i64)?;
            if closed != acc {
                return Err(FieldError::Internal(
                    "norm power-product disagrees with the exponent formula",
                ));
            }
        }
        self.pull_back(&acc)
    }
}
