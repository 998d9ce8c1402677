//! Exact arithmetic in cyclotomic fields Q(ζ_M).
//!
//! Elements are polynomials in ζ_M reduced modulo the M-th cyclotomic
//! polynomial Φ_M, so the coefficient vector is a unique normal form and
//! equality is coefficient-wise. Mixed-order arithmetic promotes both
//! operands to the lcm of their orders. No floating point is involved
//! anywhere except [`CycloElem::approx_complex`], which exists for display.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero in Q(ζ_{order})")]
    DivisionByZero { order: u64 },
}

/// Cached data for one cyclotomic field Q(ζ_M): the order, deg Φ_M, and the
/// coefficients of Φ_M (monic, ascending degree).
pub struct FieldContext {
    order: u64,
    degree: usize,
    modulus: Vec<Rational>,
}

impl FieldContext {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients of Φ_M, ascending, length `degree + 1`, leading 1.
    pub fn modulus(&self) -> &[Rational] {
        &self.modulus
    }
}

static REGISTRY: OnceLock<RwLock<HashMap<u64, Arc<FieldContext>>>> = OnceLock::new();

/// The shared context for Q(ζ_M). Contexts are immutable once built and
/// cached per order.
pub fn context(order: u64) -> Arc<FieldContext> {
    assert!(order >= 1, "cyclotomic order must be positive");
    let registry = REGISTRY.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(ctx) = registry.read().unwrap().get(&order) {
        return ctx.clone();
    }
    let poly = cyclotomic_polynomial(order);
    let degree = poly.len() - 1;
    let modulus = poly
        .into_iter()
        .map(|c| Rational::new(c, BigInt::one()).unwrap())
        .collect();
    let ctx = Arc::new(FieldContext {
        order,
        degree,
        modulus,
    });
    registry
        .write()
        .unwrap()
        .entry(order)
        .or_insert(ctx)
        .clone()
}

fn divisors(m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m % d == 0 {
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

/// Φ_M over the integers by the standard divide-out: Φ_M = (x^M − 1) / ∏_{d|M, d<M} Φ_d.
fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    let mut cache: HashMap<u64, Vec<BigInt>> = HashMap::new();
    for d in divisors(m) {
        let mut num = vec![BigInt::zero(); d as usize + 1];
        num[0] = -BigInt::one();
        num[d as usize] = BigInt::one();
        for e in divisors(d) {
            if e == d {
                continue;
            }
            num = int_poly_exact_div(&num, &cache[&e]);
        }
        cache.insert(d, num);
    }
    cache.remove(&m).unwrap()
}

/// Exact division of integer polynomials with monic divisor.
fn int_poly_exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one());
    let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(dd)];
    for i in (dd..rem.len()).rev() {
        let coef = rem[i].clone();
        if coef.is_zero() {
            continue;
        }
        quot[i - dd] = coef.clone();
        for (k, dc) in den.iter().enumerate() {
            let idx = i - dd + k;
            rem[idx] = &rem[idx] - &coef * dc;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact poly division");
    while quot.len() > 1 && quot.last().unwrap().is_zero() {
        quot.pop();
    }
    quot
}

fn euler_phi(m: u64) -> usize {
    context(m).degree().max(1)
}

// ---- dense polynomial helpers over Rational ----

fn poly_trim(v: &mut Vec<Rational>) {
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
    if v.is_empty() {
        v.push(Rational::zero());
    }
}

fn poly_is_zero(v: &[Rational]) -> bool {
    v.iter().all(|c| c.is_zero())
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if poly_is_zero(a) || poly_is_zero(b) {
        return vec![Rational::zero()];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            out[i + j] = &out[i + j] + &(ca * cb);
        }
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(a: &[Rational], m: &[Rational]) -> Vec<Rational> {
    let deg_m = m.len() - 1;
    let mut rem: Vec<Rational> = a.to_vec();
    poly_trim(&mut rem);
    while rem.len() > deg_m {
        let top = rem.len() - 1;
        let coef = rem[top].clone();
        if !coef.is_zero() {
            let shift = top - deg_m;
            for (k, mc) in m.iter().enumerate() {
                if mc.is_zero() {
                    continue;
                }
                rem[shift + k] = &rem[shift + k] - &(&coef * mc);
            }
        }
        rem.pop();
        poly_trim(&mut rem);
    }
    rem
}

/// Extended Euclid in Q[x]: returns (g, s) with s·a ≡ g (mod m) and g the gcd.
fn poly_half_egcd(a: &[Rational], m: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r0: Vec<Rational> = m.to_vec();
    let mut r1: Vec<Rational> = a.to_vec();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let mut s0 = vec![Rational::zero()];
    let mut s1 = vec![Rational::one()];
    while !poly_is_zero(&r1) {
        let (q, r) = poly_div_rem(&r0, &r1);
        let s_next = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s_next;
    }
    (r0, s0)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, slot) in out.iter_mut().enumerate() {
        let ca = a.get(i).cloned().unwrap_or_else(Rational::zero);
        let cb = b.get(i).cloned().unwrap_or_else(Rational::zero);
        *slot = &ca - &cb;
    }
    poly_trim(&mut out);
    out
}

fn poly_div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem: Vec<Rational> = a.to_vec();
    poly_trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    assert!(!lead.is_zero());
    if rem.len() <= db && !(db == 0) {
        return (vec![Rational::zero()], rem);
    }
    if db == 0 {
        let quot: Vec<Rational> = rem.iter().map(|c| c / &lead).collect();
        return (quot, vec![Rational::zero()]);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while rem.len() > db {
        let top = rem.len() - 1;
        let coef = &rem[top] / &lead;
        if !coef.is_zero() {
            quot[top - db] = coef.clone();
            for (k, bc) in b.iter().enumerate() {
                if bc.is_zero() {
                    continue;
                }
                rem[top - db + k] = &rem[top - db + k] - &(&coef * bc);
            }
        }
        rem.pop();
        poly_trim(&mut rem);
        if poly_is_zero(&rem) {
            break;
        }
    }
    poly_trim(&mut quot);
    (quot, rem)
}

/// An element of Q(ζ_M) in canonical form: a coefficient vector of length
/// deg Φ_M representing a polynomial in ζ_M reduced modulo Φ_M.
#[derive(Clone)]
pub struct CycloElem {
    order: u64,
    coeffs: Vec<Rational>,
}

impl CycloElem {
    /// Canonicalize a raw coefficient vector (any length, interpreted as a
    /// polynomial in ζ_M) by reducing modulo Φ_M.
    pub fn new(order: u64, raw: Vec<Rational>) -> CycloElem {
        let ctx = context(order);
        let raw = if raw.is_empty() {
            vec![Rational::zero()]
        } else {
            raw
        };
        let mut rem = poly_rem(&raw, ctx.modulus());
        rem.resize(ctx.degree().max(1), Rational::zero());
        CycloElem { order, coeffs: rem }
    }

    pub fn zero() -> CycloElem {
        CycloElem::from_rational(Rational::zero())
    }

    pub fn one() -> CycloElem {
        CycloElem::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> CycloElem {
        CycloElem {
            order: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_int(v: i64) -> CycloElem {
        CycloElem::from_rational(Rational::from_int(v))
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().map(|q| q.is_one()).unwrap_or(false)
    }

    /// The rational value, when the element lies in Q.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-express in Q(ζ_M) for `self.order | new_order` via ζ_m ↦ ζ_M^{M/m}.
    pub fn promote(&self, new_order: u64) -> CycloElem {
        if new_order == self.order {
            return self.clone();
        }
        assert!(
            new_order % self.order == 0,
            "promotion target {new_order} is not a multiple of {}",
            self.order
        );
        let step = (new_order / self.order) as usize;
        let mut raw = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        CycloElem::new(new_order, raw)
    }

    fn unify(&self, other: &CycloElem) -> (CycloElem, CycloElem) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        let target = self.order.lcm(&other.order);
        (self.promote(target), other.promote(target))
    }

    pub fn add(&self, other: &CycloElem) -> CycloElem {
        let (a, b) = self.unify(other);
        let coeffs = a
            .coeffs
            .iter()
            .zip(b.coeffs.iter())
            .map(|(x, y)| x + y)
            .collect();
        CycloElem {
            order: a.order,
            coeffs,
        }
    }

    pub fn sub(&self, other: &CycloElem) -> CycloElem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycloElem {
        CycloElem {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &CycloElem) -> CycloElem {
        let (a, b) = self.unify(other);
        let prod = poly_mul(&a.coeffs, &b.coeffs);
        CycloElem::new(a.order, prod)
    }

    pub fn scale(&self, q: &Rational) -> CycloElem {
        CycloElem {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<CycloElem> {
        if self.is_zero() {
            return None;
        }
        let ctx = context(self.order);
        let (g, s) = poly_half_egcd(&self.coeffs, ctx.modulus());
        // Φ_M is irreducible over Q, so the gcd of a nonzero element with it
        // is a nonzero constant.
        debug_assert!(g.len() == 1 && !g[0].is_zero());
        let ginv = g[0].recip()?;
        let inv: Vec<Rational> = s.iter().map(|c| c * &ginv).collect();
        Some(CycloElem::new(self.order, inv))
    }

    pub fn checked_div(&self, other: &CycloElem) -> Result<CycloElem, FieldError> {
        let inv = other
            .inverse()
            .ok_or(FieldError::DivisionByZero { order: other.order })?;
        Ok(self.mul(&inv))
    }

    pub fn pow(&self, exp: i64) -> CycloElem {
        if exp == 0 {
            return CycloElem::one();
        }
        let base = if exp < 0 {
            self.inverse().expect("zero to a negative power")
        } else {
            self.clone()
        };
        let mut acc = CycloElem::one();
        let mut cur = base;
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&cur);
            }
            e >>= 1;
            if e > 0 {
                cur = cur.mul(&cur);
            }
        }
        acc
    }

    /// Complex conjugation, i.e. the field automorphism ζ_M ↦ ζ_M^{−1},
    /// computed by exponent substitution i ↦ M−i followed by one reduction.
    pub fn conj(&self) -> CycloElem {
        let m = self.order as usize;
        let mut raw = vec![Rational::zero(); m.max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (m - i) % m.max(1);
            raw[e] = &raw[e] + c;
        }
        CycloElem::new(self.order, raw)
    }

    /// Detect whether `self` equals ζ_{order}^j for some j, returning j.
    /// Backed by the per-order power ladder, so repeated queries are cheap.
    pub fn as_root_of_unity(&self) -> Option<u64> {
        let ladder = root_ladder(self.order);
        ladder.index.get(&self.key_at(self.order)).copied()
    }

    /// Multiplicative order, if `self` is a root of unity in Q(ζ_{order}).
    pub fn mult_order(&self) -> Option<u64> {
        let (m, j) = self.normalized_root_pair()?;
        if j == 0 {
            return Some(1);
        }
        Some(m / m.gcd(&j))
    }

    /// Writes a root of unity as (order M', exponent j) with self = ζ_{M'}^j,
    /// where M' is `order` for even orders and `2·order` otherwise (so that −1
    /// is always expressible).
    fn normalized_root_pair(&self) -> Option<(u64, u64)> {
        if let Some(j) = self.as_root_of_unity() {
            return Some((self.order, j));
        }
        if self.order % 2 == 1 {
            let doubled = self.promote(2 * self.order);
            if let Some(j) = doubled.as_root_of_unity() {
                return Some((2 * self.order, j));
            }
        }
        None
    }

    /// A square root in a cyclotomic field, supporting the shapes
    /// q·ζ_M^j with q a square of a rational, and pure roots of unity
    /// (extending the order when the exponent is odd). Absence is a value:
    /// shapes outside this family return `None`.
    pub fn try_sqrt(&self) -> Option<CycloElem> {
        if self.is_zero() {
            return Some(CycloElem::zero());
        }
        let m = self.order;
        // Scan for a decomposition self = r · ζ_m^j with r rational.
        let mut rot = CycloElem::one().promote(m);
        let z = root_of_unity(m, 1);
        let mut found: Option<(Rational, u64)> = None;
        for j in 0..m {
            if let Some(r) = self.checked_div(&rot).ok().and_then(|t| t.to_rational()) {
                if !r.is_zero() {
                    found = Some((r, j));
                    break;
                }
            }
            rot = rot.mul(&z);
        }
        let (r, j) = found?;
        // Fold a negative sign into the root-of-unity part.
        let (big_m, jj) = if r.is_negative() {
            if m % 2 == 0 {
                (m, (j + m / 2) % m)
            } else {
                (2 * m, (2 * j + m) % (2 * m))
            }
        } else {
            (m, j)
        };
        let root_sqrt = if jj % 2 == 0 {
            root_of_unity(big_m, (jj / 2) as i64)
        } else {
            root_of_unity(2 * big_m, jj as i64)
        };
        let q_sqrt = r.abs().sqrt_exact()?;
        let s = root_sqrt.scale(&q_sqrt);
        debug_assert!(s.mul(&s) == *self);
        Some(s)
    }

    /// Numerical value under ζ_M ↦ e^{2πi/M}, rounded to `digits` decimal
    /// places (capped by f64 precision). Display and diagnostics only.
    pub fn approx_complex(&self, digits: u32) -> (f64, f64) {
        let m = self.order as f64;
        let (mut re, mut im) = (0.0_f64, 0.0_f64);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let theta = 2.0 * std::f64::consts::PI * (i as f64) / m;
            let v = c.to_f64();
            re += v * theta.cos();
            im += v * theta.sin();
        }
        let scale = 10f64.powi(digits.min(15) as i32);
        ((re * scale).round() / scale, (im * scale).round() / scale)
    }

    /// Stable text key for use in hash maps, after promotion to `order`.
    pub fn key_at(&self, order: u64) -> String {
        let p = self.promote(order);
        let parts: Vec<String> = p.coeffs.iter().map(|c| c.to_string()).collect();
        parts.join(",")
    }
}

/// ζ_M^j in canonical form (j may be negative; it is reduced mod M).
pub fn root_of_unity(order: u64, j: i64) -> CycloElem {
    assert!(order >= 1);
    let jj = j.rem_euclid(order as i64) as usize;
    let mut raw = vec![Rational::zero(); jj + 1];
    raw[jj] = Rational::one();
    CycloElem::new(order, raw)
}

/// All powers ζ_M^0..ζ_M^{M−1} in canonical form, plus a reverse index from
/// canonical keys to exponents.
pub struct RootLadder {
    pub powers: Vec<CycloElem>,
    pub index: HashMap<String, u64>,
}

static LADDERS: OnceLock<RwLock<HashMap<u64, Arc<RootLadder>>>> = OnceLock::new();

/// The cached power ladder for Q(ζ_M).
pub fn root_ladder(order: u64) -> Arc<RootLadder> {
    let cache = LADDERS.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(l) = cache.read().unwrap().get(&order) {
        return l.clone();
    }
    let mut powers = Vec::with_capacity(order as usize);
    let mut index = HashMap::new();
    let z = root_of_unity(order, 1);
    let mut cur = CycloElem::one().promote(order);
    for j in 0..order {
        index.entry(cur.key_at(order)).or_insert(j);
        powers.push(cur.clone());
        cur = cur.mul(&z);
    }
    let ladder = Arc::new(RootLadder { powers, index });
    cache
        .write()
        .unwrap()
        .entry(order)
        .or_insert(ladder)
        .clone()
}

/// The imaginary unit i = ζ_4.
pub fn imaginary_unit() -> CycloElem {
    root_of_unity(4, 1)
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &CycloElem) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.unify(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloElem {}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if i == 1 {
                    write!(f, "z{}", self.order)?;
                } else {
                    write!(f, "z{}^{}", self.order, i)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for CycloElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("CycloElem", 2)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("coeffs", &self.coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for CycloElem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<CycloElem, D::Error> {
        struct ElemVisitor;

        impl<'de> Visitor<'de> for ElemVisitor {
            type Value = CycloElem;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a {\"order\", \"coeffs\"} object or a rational")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<CycloElem, A::Error> {
                let mut order: Option<u64> = None;
                let mut coeffs: Option<Vec<Rational>> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "order" => order = Some(map.next_value()?),
                        "coeffs" => coeffs = Some(map.next_value()?),
                        other => return Err(de::Error::unknown_field(other, &["order", "coeffs"])),
                    }
                }
                let order = order.ok_or_else(|| de::Error::missing_field("order"))?;
                if order == 0 {
                    return Err(de::Error::custom("order must be positive"));
                }
                let coeffs = coeffs.ok_or_else(|| de::Error::missing_field("coeffs"))?;
                Ok(CycloElem::new(order, coeffs))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<CycloElem, E> {
                let q: Rational = v.parse().map_err(de::Error::custom)?;
                Ok(CycloElem::from_rational(q))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<CycloElem, E> {
                Ok(CycloElem::from_int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<CycloElem, E> {
                self.visit_i64(v as i64)
            }
        }

        deserializer.deserialize_any(ElemVisitor)
    }
}

/// Euler's totient, used for sizing coefficient vectors.
pub fn phi(m: u64) -> usize {
    euler_phi(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        crate::rational::Rational::new(BigInt::from(n), BigInt::from(d)).unwrap()
    }

    #[test]
    fn cyclotomic_polynomials_match_known_values() {
        // Φ_1 = x − 1, Φ_4 = x² + 1, Φ_6 = x² − x + 1, Φ_12 = x⁴ − x² + 1
        let as_i64 = |m: u64| -> Vec<i64> {
            cyclotomic_polynomial(m)
                .iter()
                .map(|c| c.to_string().parse().unwrap())
                .collect()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(3), vec![1, 1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn canonicalization_examples() {
        // ζ₄² = −1
        let e = CycloElem::new(4, vec![q(0, 1), q(0, 1), q(1, 1)]);
        assert_eq!(e, CycloElem::from_int(-1));
        // ζ₃² = −1 − ζ₃ under Φ₃ = x² + x + 1
        let e = CycloElem::new(3, vec![q(0, 1), q(0, 1), q(1, 1)]);
        assert_eq!(e.coeffs(), &[q(-1, 1), q(-1, 1)]);
        // order 1 identity case
        let e = CycloElem::new(1, vec![q(5, 1)]);
        assert_eq!(e, CycloElem::from_int(5));
    }

    #[test]
    fn root_of_unity_examples() {
        assert_eq!(root_of_unity(2, 1), CycloElem::from_int(-1));
        assert_eq!(root_of_unity(4, 2), CycloElem::from_int(-1));
        // ζ₁₂⁴ = ζ₃ under order promotion
        assert_eq!(root_of_unity(12, 4), root_of_unity(3, 1));
        let numeric = root_of_unity(12, 4).approx_complex(9);
        let expected = root_of_unity(3, 1).approx_complex(9);
        assert_eq!(numeric, expected);
    }

    #[test]
    fn arithmetic_examples() {
        // (1 + ζ₅) / (1 + ζ₅) = 1
        let a = CycloElem::one().add(&root_of_unity(5, 1));
        assert!(a.checked_div(&a).unwrap().is_one());
        // ζ₈ · ζ₈ = ζ₄ after promotion
        let z8 = root_of_unity(8, 1);
        assert_eq!(z8.mul(&z8), root_of_unity(4, 1));
        // ζ₆ + ζ₆⁵ = 1: conjugate pair summing to 2cos(π/3)
        let s = root_of_unity(6, 1).add(&root_of_unity(6, 5));
        assert!(s.is_one());
        let (re, im) = root_of_unity(6, 1).approx_complex(12);
        let (re5, im5) = root_of_unity(6, 5).approx_complex(12);
        assert!((re + re5 - 1.0).abs() < 1e-9 && (im + im5).abs() < 1e-9);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let a = root_of_unity(5, 2);
        assert_eq!(
            a.checked_div(&CycloElem::zero()),
            Err(FieldError::DivisionByZero { order: 1 })
        );
    }

    #[test]
    fn inverse_of_nonzero_elements() {
        let a = CycloElem::new(12, vec![q(1, 2), q(0, 1), q(-3, 1), q(1, 1)]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_one());
        assert!(CycloElem::zero().inverse().is_none());
    }

    #[test]
    fn try_sqrt_examples() {
        assert_eq!(
            CycloElem::from_int(4).try_sqrt(),
            Some(CycloElem::from_int(2))
        );
        // ζ₃ → ζ₆ in the doubled field
        let s = root_of_unity(3, 1).try_sqrt().unwrap();
        assert_eq!(s, root_of_unity(6, 1));
        assert_eq!(s.mul(&s), root_of_unity(3, 1));
        // 1 + ζ₅ is outside the supported shapes
        assert!(CycloElem::one()
            .add(&root_of_unity(5, 1))
            .try_sqrt()
            .is_none());
        // −4 → 2i
        let s = CycloElem::from_int(-4).try_sqrt().unwrap();
        assert_eq!(s.mul(&s), CycloElem::from_int(-4));
        // −ζ₃ has a square root of order 12
        let a = root_of_unity(3, 1).neg();
        let s = a.try_sqrt().unwrap();
        assert_eq!(s.mul(&s), a);
    }

    #[test]
    fn conjugation_and_mult_order() {
        let z = root_of_unity(12, 5);
        assert!(z.mul(&z.conj()).is_one());
        assert_eq!(root_of_unity(12, 4).mult_order(), Some(3));
        assert_eq!(root_of_unity(12, 1).mult_order(), Some(12));
        assert_eq!(CycloElem::from_int(-1).mult_order(), Some(2));
        assert_eq!(CycloElem::from_int(7).mult_order(), None);
    }

    #[test]
    fn approx_complex_examples() {
        let (re, im) = root_of_unity(4, 1).approx_complex(9);
        assert_eq!((re, im), (0.0, 1.0));
        // −1 − ζ₃ = ζ₃² = e^{4πi/3}
        let e = CycloElem::new(3, vec![q(-1, 1), q(-1, 1)]);
        let (re, im) = e.approx_complex(6);
        assert!((re + 0.5).abs() < 1e-6);
        assert!((im + 0.866025).abs() < 1e-6);
        assert_eq!(CycloElem::zero().approx_complex(9), (0.0, 0.0));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_elem() -> impl Strategy<Value = CycloElem> {
            let orders = prop_oneof![
                Just(1u64),
                Just(2),
                Just(3),
                Just(4),
                Just(6),
                Just(8),
                Just(12)
            ];
            (
                orders,
                proptest::collection::vec((-6i64..=6, 1i64..=4), 1..6),
            )
                .prop_map(|(order, raw)| {
                    let coeffs = raw
                        .into_iter()
                        .map(|(n, d)| Rational::new(n.into(), d.into()).unwrap())
                        .collect();
                    CycloElem::new(order, coeffs)
                })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn field_axioms(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
                prop_assert_eq!(a.mul(&b), b.mul(&a));
                prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
                prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            }

            #[test]
            fn inverses_are_exact(a in arb_elem()) {
                if let Some(inv) = a.inverse() {
                    prop_assert!(a.mul(&inv).is_one());
                } else {
                    prop_assert!(a.is_zero());
                }
            }

            #[test]
            fn approx_agrees_with_symbolic_equality(a in arb_elem(), b in arb_elem()) {
                // a·b and b·a are symbolically equal, so their numeric
                // images must coincide to working precision.
                let (re1, im1) = a.mul(&b).approx_complex(9);
                let (re2, im2) = b.mul(&a).approx_complex(9);
                prop_assert!((re1 - re2).abs() < 1e-9 && (im1 - im2).abs() < 1e-9);
                // And the embedding is additive.
                let (ra, ia) = a.approx_complex(12);
                let (rb, ib) = b.approx_complex(12);
                let (rs, is) = a.add(&b).approx_complex(12);
                prop_assert!((ra + rb - rs).abs() < 1e-8 && (ia + ib - is).abs() < 1e-8);
            }

            #[test]
            fn sqrt_squares_back(a in arb_elem()) {
                if let Some(s) = a.try_sqrt() {
                    prop_assert_eq!(s.mul(&s), a);
                }
            }
        }
    }

    #[test]
    fn serde_round_trip() {
        let a = CycloElem::new(8, vec![q(1, 2), q(0, 1), q(-2, 3)]);
        let js = serde_json::to_string(&a).unwrap();
        let back: CycloElem = serde_json::from_str(&js).unwrap();
        assert_eq!(a, back);
        // rational shorthand
        let b: CycloElem = serde_json::from_str("\"(-7)/(3)\"".replace(['(', ')'], "").as_str())
            .unwrap_or_else(|_| serde_json::from_str("\"-7/3\"").unwrap());
        assert_eq!(b, CycloElem::from_rational(q(-7, 3)));
    }
}
