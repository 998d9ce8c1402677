//! The hyperelliptic curve datum p(t) = t(t−α₁)⋯(t−α_{2n}).
//!
//! A curve owns its roots and the expanded coefficients a₁..a_{2n+1}; it is
//! the single source of truth for everything downstream. Construction is
//! either from raw roots or from the symmetric normal form
//! p(t) = t·∏_i (t^k − c_i^k).

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclo::{root_of_unity, CycloElem};
use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("odd number of roots ({0}); a curve needs 2n of them")]
    OddRootCount(usize),
    #[error("duplicate root at positions {0} and {1}")]
    DuplicateRoot(usize, usize),
    #[error("zero root at position {0}")]
    ZeroRoot(usize),
    #[error("normal-form parameters generate colliding roots")]
    RootCollision,
    #[error("normal-form k must be positive")]
    InvalidNormalForm,
}

/// The symmetric normal form: l = 2n/k parameters c_i and the divisor k,
/// generating roots α_{(i−1)k+j} = c_i ξ^{2j} for ξ a primitive 2k-th root
/// of unity.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct NormalFormSpec {
    pub k: u64,
    pub params: Vec<CycloElem>,
}

/// p(t) = t(t−α₁)⋯(t−α_{2n}) = Σ_{k=1}^{2n+1} a_k t^k, monic, with pairwise
/// distinct nonzero roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperellipticCurve {
    n: usize,
    field_order: u64,
    roots: Vec<CycloElem>,
    /// a₁..a_{2n+1}, stored ascending; index 0 holds a₁.
    coeffs: Vec<CycloElem>,
}

impl HyperellipticCurve {
    /// Build from raw roots over Q(ζ_M). The working order is enlarged to
    /// lcm(M, 4n) so that automorphism detection never fails for field-size
    /// reasons.
    pub fn from_roots(field_order: u64, roots: Vec<CycloElem>) -> Result<Self, CurveError> {
        if roots.len() % 2 != 0 || roots.is_empty() {
            return Err(CurveError::OddRootCount(roots.len()));
        }
        let n = roots.len() / 2;
        let working = field_order.lcm(&(4 * n as u64));
        let roots: Vec<CycloElem> = roots.into_iter().map(|r| r.promote(working)).collect();
        for (i, r) in roots.iter().enumerate() {
            if r.is_zero() {
                return Err(CurveError::ZeroRoot(i));
            }
            for (j, s) in roots.iter().enumerate().skip(i + 1) {
                if r == s {
                    return Err(CurveError::DuplicateRoot(i, j));
                }
            }
        }
        let coeffs = expand_from_roots(&roots);
        let curve = HyperellipticCurve {
            n,
            field_order: working,
            roots,
            coeffs,
        };
        debug_assert!(curve.check_invariants());
        Ok(curve)
    }

    /// Build from a normal-form spec and verify the expansion against the
    /// elementary-symmetric closed form p(t) = t·∏_i (t^k − c_i^k).
    pub fn from_normal_form(spec: &NormalFormSpec) -> Result<Self, CurveError> {
        if spec.k == 0 || spec.params.is_empty() {
            return Err(CurveError::InvalidNormalForm);
        }
        let k = spec.k;
        let l = spec.params.len() as u64;
        let two_n = k * l;
        if two_n % 2 != 0 {
            return Err(CurveError::OddRootCount(two_n as usize));
        }
        let mut order = 4 * (two_n / 2).max(1);
        for c in &spec.params {
            order = order.lcm(&c.order());
        }
        order = order.lcm(&(2 * k));
        let mut roots = Vec::with_capacity(two_n as usize);
        for c in &spec.params {
            let c = c.promote(order);
            for j in 1..=k {
                // ξ^{2j} = ζ_k^j for ξ a primitive 2k-th root.
                roots.push(c.mul(&root_of_unity(k, j as i64).promote(order)));
            }
        }
        let curve = Self::from_roots(order, roots).map_err(|e| match e {
            CurveError::DuplicateRoot(_, _) => CurveError::RootCollision,
            other => other,
        })?;

        // Cross-check against t·∏_i (t^k − c_i^k): coefficient of t^{q·k+1}
        // is (−1)^{l−q} e_{l−q}(c₁^k, …, c_l^k), others vanish.
        let powers: Vec<CycloElem> = spec
            .params
            .iter()
            .map(|c| c.promote(order).pow(k as i64))
            .collect();
        let sym = elementary_symmetric(&powers);
        for idx in 1..=(2 * curve.n + 1) {
            let expect = if (idx - 1) % k as usize == 0 {
                let q = (idx - 1) / k as usize;
                let e = &sym[l as usize - q];
                if (l as usize - q) % 2 == 0 {
                    e.clone()
                } else {
                    e.neg()
                }
            } else {
                CycloElem::zero()
            };
            assert_eq!(
                curve.coeff(idx),
                &expect,
                "normal-form expansion disagrees with elementary-symmetric closed form at a_{idx}"
            );
        }
        Ok(curve)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        2 * self.n + 1
    }

    pub fn field_order(&self) -> u64 {
        self.field_order
    }

    pub fn roots(&self) -> &[CycloElem] {
        &self.roots
    }

    /// a_k for 1 ≤ k ≤ 2n+1. There is no a₀; p(0) = 0 structurally.
    pub fn coeff(&self, k: usize) -> &CycloElem {
        assert!(
            (1..=self.degree()).contains(&k),
            "coefficient index {k} outside 1..={}",
            self.degree()
        );
        &self.coeffs[k - 1]
    }

    pub fn coeffs(&self) -> &[CycloElem] {
        &self.coeffs
    }

    /// ∏ α_i, which equals a₁.
    pub fn root_product(&self) -> CycloElem {
        self.coeffs[0].clone()
    }

    pub fn eval_p(&self, x: &CycloElem) -> CycloElem {
        // Horner on a₁..a_{2n+1}, then one extra factor of x for the t·(…) shape.
        let mut acc = CycloElem::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc.mul(x)
    }

    fn check_invariants(&self) -> bool {
        let prod = self
            .roots
            .iter()
            .fold(CycloElem::one(), |acc, r| acc.mul(r));
        self.coeffs.len() == self.degree()
            && self.coeffs.last().unwrap().is_one()
            && self.coeffs[0] == prod
            && self.roots.iter().all(|r| self.eval_p(r).is_zero())
    }

    /// Stable FNV-1a hash of the canonical serialization, for report
    /// provenance.
    pub fn content_hash(&self) -> String {
        let payload = serde_json::to_string(&CurveSummary::of(self)).expect("curve serializes");
        let mut h: u64 = 0xcbf29ce484222325;
        for b in payload.as_bytes() {
            h ^= u64::from(*b);
            h = h.wrapping_mul(0x100000001b3);
        }
        format!("{h:016x}")
    }
}

fn expand_from_roots(roots: &[CycloElem]) -> Vec<CycloElem> {
    // ∏ (t − α_i), ascending coefficients, then shift by one for the factor t.
    let mut poly = vec![CycloElem::one()];
    for r in roots {
        let mut next = vec![CycloElem::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&c.mul(r));
        }
        poly = next;
    }
    poly
}

/// e_0..e_m of the given values.
fn elementary_symmetric(values: &[CycloElem]) -> Vec<CycloElem> {
    let mut e = vec![CycloElem::zero(); values.len() + 1];
    e[0] = CycloElem::one();
    for (count, v) in values.iter().enumerate() {
        for q in (1..=count + 1).rev() {
            e[q] = e[q].add(&e[q - 1].mul(v));
        }
    }
    e
}

/// Serializable summary used in reports and hashing.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CurveSummary {
    pub n: usize,
    pub field_order: u64,
    pub roots: Vec<CycloElem>,
    pub coeffs: Vec<CycloElem>,
}

impl CurveSummary {
    pub fn of(curve: &HyperellipticCurve) -> CurveSummary {
        CurveSummary {
            n: curve.n(),
            field_order: curve.field_order(),
            roots: curve.roots().to_vec(),
            coeffs: curve.coeffs().to_vec(),
        }
    }
}

/// On-disk curve spec: exactly one of `roots` / `normal_form`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CurveSpecFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field_order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<CycloElem>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal_form: Option<NormalFormSpec>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveSpecError {
    #[error("curve spec must contain exactly one of `roots` / `normal_form`")]
    AmbiguousOrMissing,
    #[error("`roots` requires `field_order`")]
    MissingFieldOrder,
    #[error(transparent)]
    Curve(#[from] CurveError),
}

impl CurveSpecFile {
    pub fn build(&self) -> Result<HyperellipticCurve, CurveSpecError> {
        match (&self.roots, &self.normal_form) {
            (Some(roots), None) => {
                let order = self.field_order.ok_or(CurveSpecError::MissingFieldOrder)?;
                Ok(HyperellipticCurve::from_roots(order, roots.clone())?)
            }
            (None, Some(nf)) => Ok(HyperellipticCurve::from_normal_form(nf)?),
            _ => Err(CurveSpecError::AmbiguousOrMissing),
        }
    }
}

#[allow(dead_code)]
fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycloElem;

    fn c(v: i64) -> CycloElem {
        CycloElem::from_int(v)
    }

    fn cq(n: i64, d: i64) -> CycloElem {
        CycloElem::from_rational(rational(n, d))
    }

    #[test]
    fn cubic_from_roots() {
        // t(t−1)(t+1) = t³ − t
        let curve = HyperellipticCurve::from_roots(1, vec![c(1), c(-1)]).unwrap();
        assert_eq!(curve.n(), 1);
        assert_eq!(curve.coeff(1), &c(-1));
        assert_eq!(curve.coeff(2), &c(0));
        assert_eq!(curve.coeff(3), &c(1));
    }

    #[test]
    fn quintic_from_roots() {
        // t(t²−4)(t²−9) = t⁵ − 13t³ + 36t
        let curve = HyperellipticCurve::from_roots(1, vec![c(2), c(-2), c(3), c(-3)]).unwrap();
        assert_eq!(curve.n(), 2);
        let expect = [36, 0, -13, 0, 1];
        for (k, e) in expect.iter().enumerate() {
            assert_eq!(curve.coeff(k + 1), &c(*e));
        }
    }

    #[test]
    fn constructor_rejects_bad_roots() {
        assert_eq!(
            HyperellipticCurve::from_roots(1, vec![c(1), c(1)]),
            Err(CurveError::DuplicateRoot(0, 1))
        );
        assert_eq!(
            HyperellipticCurve::from_roots(1, vec![c(1), c(0)]),
            Err(CurveError::ZeroRoot(1))
        );
        assert_eq!(
            HyperellipticCurve::from_roots(1, vec![c(1), c(2), c(3)]),
            Err(CurveError::OddRootCount(3))
        );
    }

    #[test]
    fn eval_p_examples() {
        let curve = HyperellipticCurve::from_roots(1, vec![c(1), c(-1)]).unwrap();
        assert_eq!(curve.eval_p(&c(2)), c(6));
        assert!(curve.eval_p(&c(0)).is_zero());
        for r in curve.roots() {
            assert!(curve.eval_p(r).is_zero());
        }
    }

    #[test]
    fn normal_form_matches_closed_form() {
        // k=3, params {2, 1/2}: p = t(t³−8)(t³−1/8)
        let spec = NormalFormSpec {
            k: 3,
            params: vec![cq(2, 1), cq(1, 2)],
        };
        let curve = HyperellipticCurve::from_normal_form(&spec).unwrap();
        assert_eq!(curve.n(), 3);
        assert!(curve.coeff(1).is_one()); // 8 · 1/8
        assert_eq!(curve.coeff(7), &CycloElem::one());
        assert_eq!(
            curve.coeff(4),
            &cq(-65, 8) // −(8 + 1/8)
        );
        for k in [2usize, 3, 5, 6] {
            assert!(curve.coeff(k).is_zero());
        }
    }

    #[test]
    fn normal_form_k1_reduces_to_raw_roots() {
        let spec = NormalFormSpec {
            k: 1,
            params: vec![c(1), c(-1)],
        };
        let via_nf = HyperellipticCurve::from_normal_form(&spec).unwrap();
        let via_roots = HyperellipticCurve::from_roots(4, vec![c(1), c(-1)]).unwrap();
        assert_eq!(via_nf.coeffs(), via_roots.coeffs());
    }

    #[test]
    fn normal_form_collision_detected() {
        let spec = NormalFormSpec {
            k: 2,
            params: vec![c(1), c(1)],
        };
        assert_eq!(
            HyperellipticCurve::from_normal_form(&spec),
            Err(CurveError::RootCollision)
        );
    }

    #[test]
    fn root_product_is_a1() {
        let curve = HyperellipticCurve::from_roots(1, vec![c(2), c(-2), c(3), c(-3)]).unwrap();
        assert_eq!(curve.root_product(), c(36));
    }

    #[test]
    fn spec_file_validation() {
        let bad = CurveSpecFile {
            field_order: None,
            roots: None,
            normal_form: None,
        };
        assert!(matches!(
            bad.build(),
            Err(CurveSpecError::AmbiguousOrMissing)
        ));
        let ok: CurveSpecFile =
            serde_json::from_str(r#"{"field_order": 4, "roots": ["1", "-1"]}"#).unwrap();
        assert_eq!(ok.build().unwrap().n(), 1);
        let nf: CurveSpecFile =
            serde_json::from_str(r#"{"normal_form": {"k": 3, "params": ["2", "1/2"]}}"#).unwrap();
        assert_eq!(nf.build().unwrap().n(), 3);
    }
}
