//! Detecting and classifying Aut(R) for R = C[t^±1, u : u² = p(t)]: twists
//! t ↦ ξ²t, u ↦ ξu and flips t ↦ c²t⁻¹, u ↦ εc^{n+1}t^{−n−1}u.
//!
//! Run with: cargo run --example automorphism_group

use hyperkn::automorphisms::{classify_group, flip_candidates, twist_candidates};
use hyperkn::curve::{HyperellipticCurve, NormalFormSpec};
use hyperkn::cyclo::CycloElem;

fn c(v: i64) -> CycloElem {
    CycloElem::from_int(v)
}

fn report(label: &str, curve: &HyperellipticCurve) {
    println!("— {label}");
    let twists = twist_candidates(curve);
    println!("  twist subgroup order: {}", twists.len());
    let scan = flip_candidates(curve);
    println!("  flips found: {}", scan.flips.len());
    if !scan.unrepresentable_c2.is_empty() {
        let cs: Vec<String> = scan
            .unrepresentable_c2
            .iter()
            .map(|v| v.to_string())
            .collect();
        println!(
            "  valid c² without expressible square root: {}",
            cs.join(", ")
        );
    }
    match classify_group(curve) {
        Ok(profile) => {
            println!(
                "  Aut ≅ {}   (k = {}, l = {}, |Aut| = {})",
                profile.group_id.label(),
                profile.k,
                profile.l,
                profile.group.order()
            );
            if let (Some(c), Some(eps)) = (&profile.c, &profile.epsilon) {
                println!("  canonical flip: c = {c}, ε = {eps}");
            }
        }
        Err(e) => println!("  classification: {e}"),
    }
    println!();
}

fn main() {
    // l = 3 with pairwise distinct magnitudes: cyclic only.
    let spec = NormalFormSpec {
        k: 2,
        params: vec![c(1), c(2), c(3)],
    };
    report(
        "normal form k=2, l=3",
        &HyperellipticCurve::from_normal_form(&spec).unwrap(),
    );

    // l = 2: dihedral of order 4n.
    let spec = NormalFormSpec {
        k: 2,
        params: vec![c(1), c(4)],
    };
    report(
        "normal form k=2, l=2",
        &HyperellipticCurve::from_normal_form(&spec).unwrap(),
    );

    // l = 1: the U family.
    let spec = NormalFormSpec {
        k: 4,
        params: vec![c(2)],
    };
    report(
        "normal form k=4, l=1",
        &HyperellipticCurve::from_normal_form(&spec).unwrap(),
    );

    // A dicyclic curve: both ±c are roots, so ∏α = −c^{2n}.
    let roots = vec![
        c(1),
        c(-1),
        c(2),
        c(-2),
        CycloElem::from_rational(hyperkn::rational::Rational::new(1.into(), 2.into()).unwrap()),
        CycloElem::from_rational(hyperkn::rational::Rational::new((-1).into(), 2.into()).unwrap()),
        hyperkn::cyclo::root_of_unity(4, 1),
        hyperkn::cyclo::root_of_unity(4, 3),
    ];
    report(
        "dicyclic curve",
        &HyperellipticCurve::from_roots(4, roots).unwrap(),
    );

    // A curve whose flip exists mathematically but whose c is outside the
    // supported square-root shapes: reported as undetermined, never dropped.
    report(
        "roots {1, 2}",
        &HyperellipticCurve::from_roots(1, vec![c(1), c(2)]).unwrap(),
    );
}
