//! The full pipeline: classify Aut(R), build its character table, compute
//! the representation on Ω_R/dR, decompose it by character orthogonality,
//! and compare against the printed closed-form multiplicities.
//!
//! Run with: cargo run --example decompose_center

use hyperkn::curve::{HyperellipticCurve, NormalFormSpec};
use hyperkn::cyclo::CycloElem;
use hyperkn::decomposition::decompose;
use hyperkn::rational::Rational;

fn cq(a: i64, b: i64) -> CycloElem {
    CycloElem::from_rational(Rational::new(a.into(), b.into()).unwrap())
}

fn main() {
    for (label, params) in [
        ("n = 3, k = 3", vec![cq(2, 1), cq(1, 2)]),
        (
            "n = 9, k = 3",
            vec![cq(2, 1), cq(1, 2), cq(3, 1), cq(1, 3), cq(5, 1), cq(1, 5)],
        ),
    ] {
        let spec = NormalFormSpec { k: 3, params };
        let curve = HyperellipticCurve::from_normal_form(&spec).unwrap();
        let report = decompose(&curve).unwrap();
        println!("═══ {label}: Aut ≅ {}", report.group);
        println!(
            "  ω₀-line affords {} ({})",
            report.omega0_irrep, report.omega0_note
        );
        println!("  block multiplicities over ω₁..ω_2n:");
        for entry in &report.block_multiplicities {
            if entry.multiplicity > 0 {
                println!(
                    "    {}  (dim {}) × {}",
                    entry.label, entry.dim, entry.multiplicity
                );
            }
        }
        println!(
            "  dimension check: Σ mult·dim = {} = 2n+1 ✓   linear-system path agrees: {}",
            report.dimension, report.proof_system_agrees
        );
        println!("  closed-form comparisons:");
        for e in &report.closed_forms {
            println!(
                "    {:<38} formula = {:<6} computed = {:<4} {:?}",
                e.name,
                e.formula_value
                    .as_ref()
                    .map(|v| v.to_string())
                    .unwrap_or_else(|| "n/a".into()),
                e.computed
                    .map(|v| v.to_string())
                    .unwrap_or_else(|| "-".into()),
                e.status
            );
        }
        println!("  invariant 2-dimensional pairs:");
        for w in &report.witnesses {
            println!(
                "    {{ω{}, ω{}}} affords {} (classical shape: {:?})",
                w.indices.0, w.indices.1, w.irrep, w.classical_shape
            );
        }
        if let Some(s) = &report.singlet {
            println!(
                "    singlet ω{} affords {} (ψ ↦ {}, φ ↦ {})",
                s.index, s.irrep, s.flip_eigenvalue, s.twist_eigenvalue
            );
        }
        println!();
    }
}
