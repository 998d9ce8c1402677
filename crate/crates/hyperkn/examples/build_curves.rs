//! Constructing curve data p(t) = t(t−α₁)⋯(t−α_{2n}) from raw roots or from
//! the symmetric normal form p(t) = t·∏ᵢ(t^k − cᵢ^k).
//!
//! Run with: cargo run --example build_curves

use hyperkn::curve::{HyperellipticCurve, NormalFormSpec};
use hyperkn::cyclo::CycloElem;
use hyperkn::rational::Rational;

fn c(v: i64) -> CycloElem {
    CycloElem::from_int(v)
}

fn main() {
    // Raw roots: t(t²−4)(t²−9) = t⁵ − 13t³ + 36t.
    let curve = HyperellipticCurve::from_roots(1, vec![c(2), c(-2), c(3), c(-3)]).unwrap();
    println!("n = {}, deg p = {}", curve.n(), curve.degree());
    print!("coefficients a₁..a₅:");
    for k in 1..=curve.degree() {
        print!(" {}", curve.coeff(k));
    }
    println!();
    println!("p(2) = {}", curve.eval_p(&c(2)));
    println!(
        "every root vanishes: {}",
        curve.roots().iter().all(|r| curve.eval_p(r).is_zero())
    );

    // Normal form k = 3 with parameters {2, 1/2}: p = t(t³−8)(t³−1/8).
    // The constructor cross-checks the expansion against the
    // elementary-symmetric closed form.
    let spec = NormalFormSpec {
        k: 3,
        params: vec![
            c(2),
            CycloElem::from_rational(Rational::new(1.into(), 2.into()).unwrap()),
        ],
    };
    let curve = HyperellipticCurve::from_normal_form(&spec).unwrap();
    println!("\nnormal form k=3, params {{2, 1/2}}: n = {}", curve.n());
    println!("a₁ = {} (the product of all roots)", curve.coeff(1));
    println!("a₄ = {}", curve.coeff(4));
    println!("field order M = {}", curve.field_order());

    // Bad inputs are rejected with specific errors.
    println!(
        "\nduplicate roots: {:?}",
        HyperellipticCurve::from_roots(1, vec![c(1), c(1)]).err()
    );
    println!(
        "zero root:       {:?}",
        HyperellipticCurve::from_roots(1, vec![c(1), c(0)]).err()
    );
}
