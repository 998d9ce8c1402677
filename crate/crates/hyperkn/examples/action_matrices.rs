//! The action of automorphisms on Ω_R/dR: exact matrices over the basis
//! (ω₀, ω₁, …, ω_{2n}), their traces, and the closed-form trace identity.
//!
//! Run with: cargo run --example action_matrices

use hyperkn::action::{action_matrix, trace_closed_form};
use hyperkn::automorphisms::classify_group;
use hyperkn::curve::{HyperellipticCurve, NormalFormSpec};
use hyperkn::cyclo::CycloElem;
use hyperkn::rational::Rational;
use hyperkn::reduction::Reducer;

fn main() {
    // The n = 3, k = 3 curve with c = 1: p = t(t³−8)(t³−1/8).
    let spec = NormalFormSpec {
        k: 3,
        params: vec![
            CycloElem::from_int(2),
            CycloElem::from_rational(Rational::new(1.into(), 2.into()).unwrap()),
        ],
    };
    let curve = HyperellipticCurve::from_normal_form(&spec).unwrap();
    let profile = classify_group(&curve).unwrap();
    println!("Aut ≅ {}", profile.group_id.label());
    let red = Reducer::new(curve.clone());

    let y = action_matrix(&red, &profile.twist_gen);
    println!("\ntwist action (diagonal, eigenvalue ξ^(3−2i) on ωᵢ):");
    for i in 0..y.n_rows() {
        println!("  ω{i} ↦ ({})·ω{i}", y.get(i, i));
    }

    let flip = profile.flip_gen.clone().unwrap();
    let x = action_matrix(&red, &flip);
    println!("\nflip action matrix (rows/cols ω₀..ω₆):");
    for r in 0..x.n_rows() {
        let cells: Vec<String> = (0..x.n_cols()).map(|c| x.get(r, c).to_string()).collect();
        println!("  [{}]", cells.join(", "));
    }
    println!("flip trace over ω₁..ω₆: {}", {
        let mut t = CycloElem::zero();
        for i in 1..=6 {
            t = t.add(x.get(i, i));
        }
        t
    });

    let traces = trace_closed_form(&red, &profile);
    println!(
        "closed form −1 − Σ c^(n+3−2i)·P_(i−n−3,−i) = {}",
        traces.flip_formula.unwrap()
    );
    println!(
        "twist powers with vanishing u-block trace: {:?}",
        traces
            .twist_block_traces
            .iter()
            .map(|(j, _, v)| (*j, *v))
            .collect::<Vec<_>>()
    );
}
