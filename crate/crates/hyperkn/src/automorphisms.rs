//! Detection, verification, composition and classification of the
//! automorphisms of R = C[t^{±1}, u : u² = p(t)].
//!
//! Every automorphism is one of two shapes:
//!
//! - a twist φ_ξ: t ↦ ξ²t, u ↦ ξu, for ξ a 4n-th root of unity whose square
//!   permutes the roots;
//! - a flip ψ_c: t ↦ c²t⁻¹, u ↦ εc^{n+1}t^{−n−1}u, for c with a perfect
//!   matching α_i·α_{γ(i)} = c², where ε ∈ {±1} when ∏α_i = c^{2n} and
//!   ε ∈ {±i} when ∏α_i = −c^{2n}.
//!
//! The twist subgroup is cyclic of order 2k with k | 2n; when a flip exists
//! the full group has order 4k and is dihedral, dicyclic, or U(k) depending
//! on the parity of l = 2n/k and the sign of ∏α_i / c^{2n}.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

use crate::curve::HyperellipticCurve;
use crate::cyclo::{imaginary_unit, root_of_unity, CycloElem};
use crate::groups::{FiniteGroup, GroupElement, GroupFamily};
use crate::reduction::LaurentPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutError {
    #[error("automorphism group undetermined: flip matchings exist but no square root of any candidate c² is expressible in the working field")]
    Undetermined { candidates: Vec<CycloElem> },
    #[error("internal composition defect: {0}")]
    CompositionDefect(String),
    #[error(transparent)]
    Group(#[from] crate::groups::GroupError),
}

/// A ring automorphism in one of the two canonical shapes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum AlgebraMap {
    Twist { xi: CycloElem },
    Flip { c: CycloElem, epsilon: CycloElem },
}

impl AlgebraMap {
    pub fn identity() -> AlgebraMap {
        AlgebraMap::Twist {
            xi: CycloElem::one(),
        }
    }

    /// The image of t as (scalar, exponent): t ↦ A·t^δ.
    pub fn t_image(&self) -> (CycloElem, i64) {
        match self {
            AlgebraMap::Twist { xi } => (xi.mul(xi), 1),
            AlgebraMap::Flip { c, .. } => (c.mul(c), -1),
        }
    }

    /// The image of u as (scalar, exponent of t): u ↦ B·t^e·u.
    pub fn u_image(&self, n: usize) -> (CycloElem, i64) {
        match self {
            AlgebraMap::Twist { xi } => (xi.clone(), 0),
            AlgebraMap::Flip { c, epsilon } => {
                let e = -(n as i64 + 1);
                (epsilon.mul(&c.pow(n as i64 + 1)), e)
            }
        }
    }

    pub fn is_twist(&self) -> bool {
        matches!(self, AlgebraMap::Twist { .. })
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, AlgebraMap::Twist { xi } if xi.is_one())
    }

    /// Maps act identically iff the t- and u-images agree; twists compare by
    /// ξ and flips by (c², εc^{n+1}).
    pub fn same_action(&self, other: &AlgebraMap, n: usize) -> bool {
        self.t_image() == other.t_image() && self.u_image(n) == other.u_image(n)
    }
}

/// γ with α_{γ(i)} = ξ²α_i (twist) or α_i·α_{γ(i)} = c² (flip).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RootPermutation(pub Vec<usize>);

/// The defining check: φ(u)² = p(φ(t)) as Laurent polynomials, exactly.
pub fn verify_automorphism(curve: &HyperellipticCurve, map: &AlgebraMap) -> bool {
    let n = curve.n();
    let (a, delta) = map.t_image();
    let (b, e) = map.u_image(n);
    // φ(u)² = B²·t^{2e}·p(t)
    let lhs = LaurentPoly::compose_monomial(curve, &CycloElem::one(), 1)
        .scale(&b.mul(&b))
        .shift(2 * e);
    let rhs = LaurentPoly::compose_monomial(curve, &a, delta);
    lhs == rhs
}

fn root_index_map(curve: &HyperellipticCurve) -> HashMap<String, usize> {
    let order = curve.field_order();
    curve
        .roots()
        .iter()
        .enumerate()
        .map(|(i, r)| (r.key_at(order), i))
        .collect()
}

/// All twists: ξ ranges over the 4n-th roots of unity whose square scales the
/// root multiset onto itself. The returned list is ordered with a maximal
/// multiplicative-order generator first and is closed under inversion.
pub fn twist_candidates(curve: &HyperellipticCurve) -> Vec<(CycloElem, RootPermutation)> {
    let n = curve.n() as u64;
    let order = curve.field_order();
    let index = root_index_map(curve);
    let mut found = Vec::new();
    for j in 0..(4 * n) {
        let xi = root_of_unity(4 * n, j as i64).promote(order);
        let xi2 = xi.mul(&xi);
        let mut gamma = Vec::with_capacity(curve.roots().len());
        let mut ok = true;
        for root in curve.roots() {
            let scaled = xi2.mul(root);
            match index.get(&scaled.key_at(order)) {
                Some(&target) => gamma.push(target),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            found.push((xi, RootPermutation(gamma)));
        }
    }
    found.sort_by_key(|(xi, _)| {
        let ord = xi.mult_order().unwrap_or(1);
        std::cmp::Reverse(ord)
    });
    found
}

/// Result of the flip scan: verified flip maps plus any candidate c² whose
/// square root the field cannot express (reported, never dropped).
#[derive(Clone, Debug)]
pub struct FlipScan {
    pub flips: Vec<(AlgebraMap, RootPermutation)>,
    pub unrepresentable_c2: Vec<CycloElem>,
}

/// All flips, up to action equality. Candidate c² values are the products
/// α₁·α_j; each is kept only if α ↦ c²/α permutes the root multiset.
pub fn flip_candidates(curve: &HyperellipticCurve) -> FlipScan {
    let n = curve.n();
    let order = curve.field_order();
    let index = root_index_map(curve);
    let alpha1 = &curve.roots()[0];
    let mut c2_seen: Vec<CycloElem> = Vec::new();
    let mut flips: Vec<(AlgebraMap, RootPermutation)> = Vec::new();
    let mut unrepresentable = Vec::new();

    for other in curve.roots() {
        let c2 = alpha1.mul(other);
        if c2_seen.contains(&c2) {
            continue;
        }
        c2_seen.push(c2.clone());
        let mut gamma = Vec::with_capacity(curve.roots().len());
        let mut ok = true;
        for root in curve.roots() {
            let partner = c2.checked_div(root).expect("roots are nonzero");
            match index.get(&partner.key_at(order)) {
                Some(&target) => gamma.push(target),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let Some(c) = c2.try_sqrt() else {
            unrepresentable.push(c2);
            continue;
        };
        // ∏α_i = ±c^{2n} decides whether ε is real or imaginary.
        let prod = curve.root_product();
        let c_2n = c.pow(2 * n as i64);
        let eps_pair: [CycloElem; 2] = if prod == c_2n {
            [CycloElem::one(), CycloElem::from_int(-1)]
        } else {
            debug_assert!(
                prod == c_2n.neg(),
                "∏α must be ±c^{{2n}} for a valid matching"
            );
            let i = imaginary_unit();
            [i.clone(), i.neg()]
        };
        for eps in eps_pair {
            let map = AlgebraMap::Flip {
                c: c.clone(),
                epsilon: eps,
            };
            assert!(
                verify_automorphism(curve, &map),
                "matched flip fails the automorphism identity"
            );
            if !flips.iter().any(|(m, _)| m.same_action(&map, n)) {
                flips.push((map, RootPermutation(gamma.clone())));
            }
        }
    }
    FlipScan {
        flips,
        unrepresentable_c2: unrepresentable,
    }
}

/// Composition a∘b (apply b first). Closed on the two canonical shapes:
/// Twist∘Twist = Twist, mixed = Flip, Flip∘Flip = Twist.
pub fn compose(n: usize, a: &AlgebraMap, b: &AlgebraMap) -> Result<AlgebraMap, AutError> {
    let n_i = n as i64;
    let out = match (a, b) {
        (AlgebraMap::Twist { xi: x1 }, AlgebraMap::Twist { xi: x2 }) => {
            AlgebraMap::Twist { xi: x1.mul(x2) }
        }
        (AlgebraMap::Flip { c, epsilon }, AlgebraMap::Twist { xi }) => AlgebraMap::Flip {
            c: xi.mul(c),
            epsilon: epsilon.mul(&xi.pow(-n_i)),
        },
        (AlgebraMap::Twist { xi }, AlgebraMap::Flip { c, epsilon }) => AlgebraMap::Flip {
            c: c.checked_div(xi)
                .map_err(|e| AutError::CompositionDefect(e.to_string()))?,
            epsilon: epsilon.mul(&xi.pow(-n_i)),
        },
        (AlgebraMap::Flip { c: c1, epsilon: e1 }, AlgebraMap::Flip { c: c2, epsilon: e2 }) => {
            let ratio = c2
                .checked_div(c1)
                .map_err(|e| AutError::CompositionDefect(e.to_string()))?;
            let xi = e1.mul(e2).mul(&ratio.pow(n_i + 1));
            // Consistency: ξ² must equal (c₂/c₁)², the t-scaling.
            if xi.mul(&xi) != ratio.mul(&ratio) {
                return Err(AutError::CompositionDefect(
                    "flip∘flip scalar mismatch".to_string(),
                ));
            }
            AlgebraMap::Twist { xi }
        }
    };
    Ok(out)
}

/// ε-type of a flip: true when ε ∈ {±1} (so ψ² = id), false when ε ∈ {±i}
/// (so ψ² = φ_{−1}).
pub fn flip_is_involution(map: &AlgebraMap) -> Option<bool> {
    match map {
        AlgebraMap::Flip { epsilon, .. } => Some(epsilon.to_rational().is_some()),
        AlgebraMap::Twist { .. } => None,
    }
}

/// The classification outcome: the twist half-order k, l = 2n/k, the chosen
/// flip data, the abstract group, and the explicit element ↔ map table under
/// the assignment y ↦ φ_ξ, x ↦ ψ_c.
#[derive(Clone, Debug)]
pub struct AutProfile {
    pub k: u64,
    pub l: u64,
    pub flip_exists: bool,
    pub c: Option<CycloElem>,
    pub c_squared: Option<CycloElem>,
    pub epsilon: Option<CycloElem>,
    pub group_id: GroupFamily,
    pub group: FiniteGroup,
    pub twist_gen: AlgebraMap,
    pub flip_gen: Option<AlgebraMap>,
    pub element_maps: Vec<(GroupElement, AlgebraMap)>,
    pub unrepresentable_c2: Vec<CycloElem>,
}

impl AutProfile {
    pub fn map_of(&self, g: &GroupElement) -> &AlgebraMap {
        &self
            .element_maps
            .iter()
            .find(|(h, _)| h == g)
            .expect("every group element carries a map")
            .1
    }
}

/// Classify Aut(R) for a curve: find the twist subgroup ℤ_{2k}, scan for
/// flips, and identify the abstract group. The generator assignment is
/// verified concretely: the element↔map table is a group isomorphism.
pub fn classify_group(curve: &HyperellipticCurve) -> Result<AutProfile, AutError> {
    let n = curve.n();
    let twists = twist_candidates(curve);
    let two_k = twists.len() as u64;
    debug_assert!(two_k >= 2 && two_k % 2 == 0, "±1 always scale the roots");
    let k = two_k / 2;
    let l = 2 * n as u64 / k;
    // All primitive 2k-th roots are valid twists; choose ζ_{2k} itself.
    let xi_gen = root_of_unity(2 * k, 1).promote(curve.field_order());
    assert!(
        verify_automorphism(curve, &AlgebraMap::Twist { xi: xi_gen.clone() }),
        "the canonical primitive 2k-th root must generate a twist"
    );

    let scan = flip_candidates(curve);
    if scan.flips.is_empty() && !scan.unrepresentable_c2.is_empty() {
        return Err(AutError::Undetermined {
            candidates: scan.unrepresentable_c2,
        });
    }

    if scan.flips.is_empty() {
        let group = FiniteGroup::new(GroupFamily::Cyclic(2 * k))?;
        let mut element_maps = Vec::new();
        let mut cur = AlgebraMap::identity();
        for g in group.elements() {
            element_maps.push((*g, cur.clone()));
            cur = compose(n, &cur, &AlgebraMap::Twist { xi: xi_gen.clone() })?;
        }
        return Ok(AutProfile {
            k,
            l,
            flip_exists: false,
            c: None,
            c_squared: None,
            epsilon: None,
            group_id: GroupFamily::Cyclic(2 * k),
            group,
            twist_gen: AlgebraMap::Twist { xi: xi_gen },
            flip_gen: None,
            element_maps,
            unrepresentable_c2: scan.unrepresentable_c2,
        });
    }

    // Canonical x: prefer an involutive flip (ε real) over the dicyclic
    // imaginary-ε kind, within that the positive branch (ε = 1 or ε = i),
    // then rational c², then serialized value for determinism.
    let mut flips: Vec<&AlgebraMap> = scan.flips.iter().map(|(m, _)| m).collect();
    flips.sort_by_key(|m| {
        let real = flip_is_involution(m) == Some(true);
        let (c, eps) = match m {
            AlgebraMap::Flip { c, epsilon } => (c, epsilon),
            AlgebraMap::Twist { .. } => unreachable!(),
        };
        let positive_branch = *eps == CycloElem::one() || *eps == imaginary_unit();
        let c2 = c.mul(c);
        (
            !real,
            !positive_branch,
            c2.to_rational().is_none(),
            format!("{c2}|{c}|{eps}"),
        )
    });
    let psi = flips[0].clone();
    let (c, epsilon) = match &psi {
        AlgebraMap::Flip { c, epsilon } => (c.clone(), epsilon.clone()),
        AlgebraMap::Twist { .. } => unreachable!(),
    };
    let c2 = c.mul(&c);
    let prod = curve.root_product();
    let plus_sign = prod == c.pow(2 * n as i64);

    let group_id = if l % 2 == 0 {
        if plus_sign {
            GroupFamily::Dihedral(2 * k)
        } else {
            GroupFamily::Dicyclic(k)
        }
    } else {
        debug_assert!(k % 2 == 0, "odd l forces even k since 2n = kl");
        GroupFamily::U(k)
    };
    let group = FiniteGroup::new(group_id)?;

    // Element ↔ map table under x^s y^j ↦ ψ^s ∘ φ^j.
    let twist = AlgebraMap::Twist { xi: xi_gen.clone() };
    let mut element_maps = Vec::new();
    for g in group.elements() {
        let mut map = AlgebraMap::identity();
        for _ in 0..g.power {
            map = compose(n, &map, &twist)?;
        }
        if g.flip {
            map = compose(n, &psi, &map)?;
        }
        element_maps.push((*g, map));
    }

    // The table must be an isomorphism onto the map set: multiplication
    // matches composition, all maps verify, and maps are pairwise distinct.
    let profile = AutProfile {
        k,
        l,
        flip_exists: true,
        c: Some(c),
        c_squared: Some(c2),
        epsilon: Some(epsilon),
        group_id,
        group,
        twist_gen: twist,
        flip_gen: Some(psi),
        element_maps,
        unrepresentable_c2: scan.unrepresentable_c2,
    };
    verify_profile(curve, &profile)?;
    Ok(profile)
}

/// Full multiplication-table check of the generator assignment, plus
/// verification and pairwise distinctness of all maps.
pub fn verify_profile(curve: &HyperellipticCurve, profile: &AutProfile) -> Result<(), AutError> {
    let n = curve.n();
    for (g, map) in &profile.element_maps {
        if !verify_automorphism(curve, map) {
            return Err(AutError::CompositionDefect(format!(
                "map of {} fails the automorphism identity",
                g.display()
            )));
        }
    }
    for (i, (g1, m1)) in profile.element_maps.iter().enumerate() {
        for (g2, m2) in profile.element_maps.iter().skip(i + 1) {
            if m1.same_action(m2, n) {
                return Err(AutError::CompositionDefect(format!(
                    "maps of {} and {} coincide",
                    g1.display(),
                    g2.display()
                )));
            }
            let _ = g2;
        }
    }
    for (g1, m1) in &profile.element_maps {
        for (g2, m2) in &profile.element_maps {
            let product = profile.group.mul(g1, g2);
            let expected = profile.map_of(&product);
            let composed = compose(n, m1, m2)?;
            if !composed.same_action(expected, n) {
                return Err(AutError::CompositionDefect(format!(
                    "composition mismatch at {} · {}",
                    g1.display(),
                    g2.display()
                )));
            }
        }
    }
    Ok(())
}
