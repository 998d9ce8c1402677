//! Reducing differentials f(t)dt + g(t)u dt to the basis ω₀, ω₁, …, ω_{2n}
//! of Ω_R/dR — through the recursion tables and through the independent
//! Gaussian-elimination oracle.
//!
//! Run with: cargo run --example reduce_differentials

use hyperkn::curve::HyperellipticCurve;
use hyperkn::cyclo::CycloElem;
use hyperkn::reduction::{DifferentialForm, LaurentPoly, Reducer};

fn c(v: i64) -> CycloElem {
    CycloElem::from_int(v)
}

fn show(class: &hyperkn::reduction::DifferentialClass) -> String {
    let names: Vec<String> = class
        .coords
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| format!("({v})·ω{i}"))
        .collect();
    if names.is_empty() {
        "0".to_string()
    } else {
        names.join(" + ")
    }
}

fn main() {
    // p = t³ − t.
    let curve = HyperellipticCurve::from_roots(1, vec![c(1), c(-1)]).unwrap();
    let red = Reducer::new(curve);

    // Exact dt-parts die; the residue survives.
    let exact = DifferentialForm::from_dt(LaurentPoly::monomial(5, c(1)));
    println!("[t⁵ dt]      = {}", show(&red.reduce_form(&exact)));
    println!(
        "[t⁻¹ dt]     = {}",
        show(&red.reduce_form(&DifferentialForm::omega0()))
    );

    // u dt needs the P recursion: t⁰u dt ≡ −(1/5)ω₂ for this curve.
    let udt = DifferentialForm::from_u_dt(LaurentPoly::monomial(0, c(1)));
    println!("[u dt]       = {}", show(&red.reduce_form(&udt)));

    // Deep negative exponents go through the Q recursion.
    let deep = DifferentialForm::from_u_dt(LaurentPoly::monomial(-5, c(1)));
    println!("[t⁻⁵ u dt]   = {}", show(&red.reduce_form(&deep)));

    // The oracle solves the full relation lattice instead and must agree.
    for e in -6..=6i64 {
        let form = DifferentialForm::from_u_dt(LaurentPoly::monomial(e, c(1)));
        assert_eq!(red.reduce_form(&form), red.reduce_oracle(&form).unwrap());
    }
    println!("recursions and oracle agree on every monomial in the window −6..6");

    // The P and Q tables themselves.
    let p = red.p_table(2);
    println!("\nP rows (class of tᵐ u dt over ω₁, ω₂):");
    for (m, row) in &p.rows {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        println!("  m = {m:>2}: [{}]", cells.join(", "));
    }
    let q = red.q_table(4);
    println!("Q rows (class of t^[−m] u dt):");
    for (m, row) in &q.rows {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        println!("  m = {m:>2}: [{}]", cells.join(", "));
    }
}
