//! The action of Aut(R) on Ω_R/dR: φ(r̄ds) = φ(r)dφ(s), computed per basis
//! class and reduced to coordinates.
//!
//! Matrix convention: column j holds the coordinates of the image of the
//! j-th basis vector, so composition a∘b (apply b first) corresponds to the
//! product M_a·M_b. Twists act diagonally with eigenvalue ξ^{3−2i} on ω_i;
//! flips act anti-diagonally on 1 ≤ i ≤ n+2 and through P-rows above that.
//! None of that structure is assumed here: every column is computed
//! symbolically and reduced, and the structure is verified by tests.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automorphisms::AlgebraMap;
use crate::automorphisms::{compose, AutProfile};
use crate::cyclo::CycloElem;
use crate::groups::{verify_presentation_on_matrices, ConjClass, GroupElement};
use crate::linalg::Matrix;
use crate::rational::Rational;
use crate::reduction::{DifferentialForm, LaurentPoly, Reducer};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("generator matrices violate the group presentation: {0}")]
    RelationFailure(String),
}

/// The (2n+1)×(2n+1) matrix of an automorphism over (ω₀, ω₁, …, ω_{2n}).
pub fn action_matrix(reducer: &Reducer, map: &AlgebraMap) -> Matrix {
    let n = reducer.curve().n();
    let dim = 2 * n + 1;
    let (a, delta) = map.t_image();
    let (b, e) = map.u_image(n);
    let mut m = Matrix::zeros(dim, dim);

    // ω₀ = t^{−1}dt ↦ φ(t^{−1})·dφ(t) = A^{−1}t^{−δ}·A·δ·t^{δ−1}dt = δ·t^{−1}dt.
    let omega0_image = reducer.reduce_form(&DifferentialForm::from_dt(LaurentPoly::monomial(
        -1,
        CycloElem::from_int(delta),
    )));
    for (row, v) in omega0_image.coords.iter().enumerate() {
        m.set(row, 0, v.clone());
    }

    // ω_j = t^{−j}u dt ↦ A^{−j}Bt^{−jδ+e}u · A·δ·t^{δ−1} dt.
    for j in 1..=(2 * n) {
        let scalar = a
            .pow(1 - j as i64)
            .mul(&b)
            .scale(&Rational::from_int(delta));
        let exponent = -(j as i64) * delta + e + delta - 1;
        let image = DifferentialForm::from_u_dt(LaurentPoly::monomial(exponent, scalar));
        let reduced = reducer.reduce_form(&image);
        for (row, v) in reduced.coords.iter().enumerate() {
            m.set(row, j, v.clone());
        }
    }
    m
}

/// The representation of the automorphism group on Ω_R/dR: generator
/// matrices, the exact character, and the character of the ω₀-line and of
/// the complementary block spanned by ω₁..ω_{2n}.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CentralRep {
    pub x_matrix: Matrix,
    pub y_matrix: Matrix,
    pub classes: Vec<ConjClass>,
    /// χ on the full (2n+1)-dimensional space, one value per class.
    pub character: Vec<CycloElem>,
    /// χ restricted to the ω₀-line.
    pub omega0_character: Vec<CycloElem>,
    /// χ on the span of ω₁..ω_{2n}.
    pub block_character: Vec<CycloElem>,
}

impl CentralRep {
    pub fn matrix_of(&self, g: &GroupElement) -> Matrix {
        let base = if g.flip {
            self.x_matrix.clone()
        } else {
            Matrix::identity(self.y_matrix.n_rows())
        };
        base.mul(&self.y_matrix.pow(g.power))
    }
}

/// Build the representation from a classified profile, verifying the group
/// presentation on the actual matrices. A failure here means an
/// action-matrix bug, never bad input, so it is surfaced loudly.
pub fn rep_from_profile(
    reducer: &Reducer,
    profile: &AutProfile,
) -> Result<CentralRep, ActionError> {
    let y = action_matrix(reducer, &profile.twist_gen);
    let x = match &profile.flip_gen {
        Some(f) => action_matrix(reducer, f),
        None => Matrix::identity(y.n_rows()),
    };
    verify_presentation_on_matrices(&profile.group, &x, &y)
        .map_err(ActionError::RelationFailure)?;

    let classes = profile.group.conjugacy_classes();
    let mut character = Vec::with_capacity(classes.len());
    let mut omega0_character = Vec::with_capacity(classes.len());
    let mut block_character = Vec::with_capacity(classes.len());
    for cls in &classes {
        let g = &cls.representative;
        let base = if g.flip {
            x.clone()
        } else {
            Matrix::identity(y.n_rows())
        };
        let mat = base.mul(&y.pow(g.power));
        let full = mat.trace();
        let line = mat.get(0, 0).clone();
        character.push(full.clone());
        omega0_character.push(line.clone());
        block_character.push(full.sub(&line));
    }
    Ok(CentralRep {
        x_matrix: x,
        y_matrix: y,
        classes,
        character,
        omega0_character,
        block_character,
    })
}

/// Closed-form traces for the flip generator and the twist powers.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TraceReport {
    /// −1 − Σ_{i=n+3}^{2n} c^{n+3−2i} P_{i−n−3,−i}, the printed formula for
    /// the flip trace over the basis (ω₁..ω_{2n}).
    pub flip_formula: Option<CycloElem>,
    /// The structural trace over (ω₁..ω_{2n}):
    /// −ε([n odd] + Σ_P c-terms + Σ_Q wraparound terms); the wraparound sum
    /// is nonempty only for n = 1.
    pub flip_block_trace_general: Option<CycloElem>,
    /// Trace of the flip action matrix restricted to (ω₁..ω_{2n}).
    pub flip_block_trace_actual: Option<CycloElem>,
    /// Trace of the full (2n+1) flip action matrix.
    pub flip_full_trace_actual: Option<CycloElem>,
    /// For each twist power 1 ≤ j < 2k with k ∤ j, the u-block trace of
    /// φ_ξ^j and whether it vanishes (the telescoping claim, checked).
    pub twist_block_traces: Vec<(u64, CycloElem, bool)>,
}

/// Evaluate the closed-form trace expressions against the action matrices.
pub fn trace_closed_form(reducer: &Reducer, profile: &AutProfile) -> TraceReport {
    let n = reducer.curve().n();
    let two_n = 2 * n as i64;

    let mut flip_formula = None;
    let mut flip_block_trace_general = None;
    let mut flip_block_trace_actual = None;
    let mut flip_full_trace_actual = None;
    if let Some(flip) = &profile.flip_gen {
        let (c, eps) = match flip {
            AlgebraMap::Flip { c, epsilon } => (c.clone(), epsilon.clone()),
            AlgebraMap::Twist { .. } => unreachable!(),
        };
        // Σ_{i=n+3}^{2n} c^{n+3−2i} P_{i−n−3,−i}
        let mut p_sum = CycloElem::zero();
        for i in (n as i64 + 3)..=two_n {
            let row = reducer.p_row(i - n as i64 - 3);
            let diag = row[(i - 1) as usize].clone();
            p_sum = p_sum.add(&c.pow(n as i64 + 3 - 2 * i).mul(&diag));
        }
        flip_formula = Some(CycloElem::from_int(-1).sub(&p_sum));

        // General block trace: −ε(δ_{n odd} + Σ_P + Σ_Q), where the Q part
        // collects columns whose anti-diagonal partner falls outside the
        // basis (i < 3 − n, i.e. only i = 1 when n = 1).
        let mut total = p_sum.clone();
        if n % 2 == 1 {
            total = total.add(&CycloElem::one());
        }
        for i in 1..two_n {
            if i < 3 - n as i64 {
                let m = n as i64 + 3 - i;
                let row = reducer.q_row(m);
                let diag = row[(i - 1) as usize].clone();
                total = total.add(&c.pow(n as i64 + 3 - 2 * i).mul(&diag));
            }
        }
        flip_block_trace_general = Some(total.mul(&eps).neg());

        let mat = action_matrix(reducer, flip);
        let mut block = CycloElem::zero();
        for i in 1..=2 * n {
            block = block.add(mat.get(i, i));
        }
        flip_block_trace_actual = Some(block);
        flip_full_trace_actual = Some(mat.trace());
    }

    // Twist powers: u-block trace Σ_i ξ^{(3−2i)j} vanishes whenever k ∤ j.
    let mut twist_block_traces = Vec::new();
    let k = profile.k;
    let xi = match &profile.twist_gen {
        AlgebraMap::Twist { xi } => xi.clone(),
        AlgebraMap::Flip { .. } => unreachable!(),
    };
    for j in 1..(2 * k) {
        if j % k == 0 {
            continue;
        }
        let mut sum = CycloElem::zero();
        for i in 1..=two_n {
            sum = sum.add(&xi.pow((3 - 2 * i) * j as i64));
        }
        let vanishes = sum.is_zero();
        twist_block_traces.push((j, sum, vanishes));
    }

    TraceReport {
        flip_formula,
        flip_block_trace_general,
        flip_block_trace_actual,
        flip_full_trace_actual,
        twist_block_traces,
    }
}

/// Check action_matrix(a∘b) = action_matrix(a)·action_matrix(b) over the
/// whole group, each side computed independently.
pub fn verify_homomorphism(reducer: &Reducer, profile: &AutProfile) -> Result<(), ActionError> {
    let n = reducer.curve().n();
    let matrices: Vec<(GroupElement, Matrix)> = profile
        .element_maps
        .iter()
        .map(|(g, m)| (*g, action_matrix(reducer, m)))
        .collect();
    let lookup =
        |g: &GroupElement| -> &Matrix { &matrices.iter().find(|(h, _)| h == g).unwrap().1 };
    for (g1, m1) in &matrices {
        for (g2, m2) in &matrices {
            let composed_map = compose(n, profile.map_of(g1), profile.map_of(g2))
                .map_err(|e| ActionError::RelationFailure(e.to_string()))?;
            let direct = action_matrix(reducer, &composed_map);
            let product = m1.mul(m2);
            if direct != product {
                return Err(ActionError::RelationFailure(format!(
                    "action matrix of {}·{} is not the product of the factors",
                    g1.display(),
                    g2.display()
                )));
            }
            let expected = lookup(&profile.group.mul(g1, g2));
            if &product != expected {
                return Err(ActionError::RelationFailure(format!(
                    "group product table mismatch at {}·{}",
                    g1.display(),
                    g2.display()
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphisms::classify_group;
    use crate::curve::{HyperellipticCurve, NormalFormSpec};
    use crate::cyclo::root_of_unity;
    use crate::linalg::invert;

    fn c(v: i64) -> CycloElem {
        CycloElem::from_int(v)
    }

    fn cq(a: i64, b: i64) -> CycloElem {
        CycloElem::from_rational(Rational::new(a.into(), b.into()).unwrap())
    }

    fn golden_n3() -> (Reducer, AutProfile) {
        // k = 3, params {2, 1/2}: c = 1, dihedral of order 12.
        let spec = NormalFormSpec {
            k: 3,
            params: vec![c(2), cq(1, 2)],
        };
        let curve = HyperellipticCurve::from_normal_form(&spec).unwrap();
        let profile = classify_group(&curve).unwrap();
        (Reducer::new(curve), profile)
    }

    #[test]
    fn twist_fixes_omega0_and_acts_diagonally() {
        let (red, profile) = golden_n3();
        let m = action_matrix(&red, &profile.twist_gen);
        assert!(m.get(0, 0).is_one());
        let xi = match &profile.twist_gen {
            AlgebraMap::Twist { xi } => xi.clone(),
            _ => unreachable!(),
        };
        for i in 1..=6usize {
            for j in 0..=6usize {
                if i == j {
                    // eigenvalue ξ^{3−2i}
                    assert_eq!(m.get(i, i), &xi.pow(3 - 2 * i as i64));
                } else {
                    assert!(m.get(i, j).is_zero(), "({i},{j})");
                }
            }
        }
    }

    #[test]
    fn flip_negates_omega0() {
        let (red, profile) = golden_n3();
        let m = action_matrix(&red, profile.flip_gen.as_ref().unwrap());
        assert_eq!(m.get(0, 0), &c(-1));
        for i in 1..=6usize {
            assert!(m.get(i, 0).is_zero());
            assert!(m.get(0, i).is_zero());
        }
    }

    #[test]
    fn golden_flip_matrix_n3() {
        // With c = 1 the flip matrix on (ω₁..ω₆) is the anti-diagonal of −1
        // on columns 1..5 plus the (6,6) entry −a₁/c⁶ = −1; trace −2.
        let (red, profile) = golden_n3();
        let m = action_matrix(&red, profile.flip_gen.as_ref().unwrap());
        let mut expected = Matrix::zeros(7, 7);
        expected.set(0, 0, c(-1));
        for i in 1..=5usize {
            expected.set(6 - i, i, c(-1));
        }
        expected.set(6, 6, c(-1));
        assert_eq!(m, expected);
        let block_trace: CycloElem = (1..=6).fold(CycloElem::zero(), |acc, i| acc.add(m.get(i, i)));
        assert_eq!(block_trace, c(-2));
    }

    #[test]
    fn flip_antidiagonal_scalars_match_direct_formula() {
        // Generic c: ψ(ω_i) = −εc^{n+3−2i}ω_{n+3−i} for 1 ≤ i ≤ n+2.
        let spec = NormalFormSpec {
            k: 2,
            params: vec![c(1), c(4)],
        };
        let curve = HyperellipticCurve::from_normal_form(&spec).unwrap();
        let profile = classify_group(&curve).unwrap();
        let n = curve.n(); // 2
        let red = Reducer::new(curve);
        let flip = profile.flip_gen.as_ref().unwrap();
        let (cc, eps) = match flip {
            AlgebraMap::Flip { c, epsilon } => (c.clone(), epsilon.clone()),
            _ => unreachable!(),
        };
        let m = action_matrix(&red, flip);
        for i in 1..=(n + 2).min(2 * n) {
            let target = n + 3 - i;
            if target > 2 * n {
                continue;
            }
            let expect = eps.mul(&cc.pow(n as i64 + 3 - 2 * i as i64)).neg();
            assert_eq!(m.get(target, i), &expect, "column {i}");
        }
    }

    #[test]
    fn rep_satisfies_presentation_and_inverts() {
        let (red, profile) = golden_n3();
        let rep = rep_from_profile(&red, &profile).unwrap();
        // Invertibility and exact inverse of the generator matrices.
        for mat in [&rep.x_matrix, &rep.y_matrix] {
            let inv = invert(mat).expect("action matrices are invertible");
            assert!(mat.mul(&inv).is_identity());
        }
        // ω₀ line character is ±1.
        for v in &rep.omega0_character {
            assert!(v == &c(1) || v == &c(-1));
        }
    }

    #[test]
    fn homomorphism_over_full_group_small_curve() {
        // n = 1 curve {1, 4}: Klein four-group of order 4.
        let curve = HyperellipticCurve::from_roots(1, vec![c(1), c(4)]).unwrap();
        let profile = classify_group(&curve).unwrap();
        assert_eq!(profile.group.order(), 4);
        let red = Reducer::new(curve);
        verify_homomorphism(&red, &profile).unwrap();
    }

    #[test]
    fn trace_closed_form_golden_n3() {
        let (red, profile) = golden_n3();
        let report = trace_closed_form(&red, &profile);
        assert_eq!(report.flip_formula, Some(c(-2)));
        assert_eq!(report.flip_block_trace_actual, Some(c(-2)));
        assert_eq!(report.flip_block_trace_general, Some(c(-2)));
        // Odd n: the block trace matches the printed formula.
        assert_eq!(report.flip_formula, report.flip_block_trace_actual);
        for (j, sum, vanishes) in &report.twist_block_traces {
            assert!(*vanishes, "u-block trace of φ^{j} = {sum} ≠ 0");
        }
    }

    #[test]
    fn trace_general_formula_covers_n1_wraparound() {
        // n = 1, flip curve {2, 1/2}: the basis has no anti-diagonal middle
        // inside 1..n+2 range alone; column 1 wraps through the Q family.
        let curve = HyperellipticCurve::from_roots(1, vec![c(2), cq(1, 2)]).unwrap();
        let profile = classify_group(&curve).unwrap();
        let red = Reducer::new(curve);
        let report = trace_closed_form(&red, &profile);
        // Printed formula value: empty sum → −1. Actual block trace: −2ε.
        assert_eq!(report.flip_formula, Some(c(-1)));
        assert_eq!(
            report.flip_block_trace_general,
            report.flip_block_trace_actual
        );
        assert_eq!(report.flip_block_trace_actual, Some(c(-2)));
    }

    #[test]
    fn trace_parity_conventions() {
        // n even: the full-matrix trace equals the printed formula.
        let spec = NormalFormSpec {
            k: 2,
            params: vec![c(1), c(4)],
        };
        let curve = HyperellipticCurve::from_normal_form(&spec).unwrap();
        let profile = classify_group(&curve).unwrap();
        let red = Reducer::new(curve);
        let report = trace_closed_form(&red, &profile);
        assert_eq!(report.flip_formula, report.flip_full_trace_actual);
        // And the general block formula always matches the actual block.
        assert_eq!(
            report.flip_block_trace_general,
            report.flip_block_trace_actual
        );
    }

    #[test]
    fn twist_u_block_trace_at_central_power_is_minus_2n() {
        let (red, profile) = golden_n3();
        // φ^k = φ_{−1} acts as −1 on every ω_i, i ≥ 1.
        let xi = root_of_unity(2 * profile.k, profile.k as i64);
        let m = action_matrix(
            &red,
            &AlgebraMap::Twist {
                xi: xi.promote(red.curve().field_order()),
            },
        );
        let mut block = CycloElem::zero();
        for i in 1..=6usize {
            block = block.add(m.get(i, i));
        }
        assert_eq!(block, c(-6));
    }
}
