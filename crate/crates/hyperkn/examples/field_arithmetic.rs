//! Exact arithmetic in cyclotomic fields Q(ζ_M).
//!
//! Run with: cargo run --example field_arithmetic

use hyperkn::cyclo::{root_of_unity, CycloElem};
use hyperkn::rational::Rational;

fn main() {
    // ζ₄² = −1: canonical forms reduce modulo the cyclotomic polynomial.
    let i = root_of_unity(4, 1);
    println!("ζ₄        = {i}");
    println!("ζ₄²       = {}", i.mul(&i));

    // Mixed orders promote to the lcm: ζ₈·ζ₈ = ζ₄ exactly.
    let z8 = root_of_unity(8, 1);
    println!("ζ₈·ζ₈ = ζ₄? {}", z8.mul(&z8) == root_of_unity(4, 1));

    // A conjugate pair summing to a rational: ζ₆ + ζ₆⁵ = 1.
    let s = root_of_unity(6, 1).add(&root_of_unity(6, 5));
    println!("ζ₆ + ζ₆⁵  = {s}");

    // Exact division.
    let a = CycloElem::one().add(&root_of_unity(5, 1)); // 1 + ζ₅
    println!("(1+ζ₅)/(1+ζ₅) = {}", a.checked_div(&a).unwrap());

    // Square roots of supported shapes: rational squares times roots of
    // unity. ζ₃ has the square root ζ₆ in the doubled field.
    let s = root_of_unity(3, 1).try_sqrt().unwrap();
    println!(
        "√ζ₃ = {s},  (√ζ₃)² = ζ₃? {}",
        s.mul(&s) == root_of_unity(3, 1)
    );
    println!(
        "√(4/9) = {:?}",
        CycloElem::from_rational(Rational::new(4.into(), 9.into()).unwrap())
            .try_sqrt()
            .map(|v| v.to_string())
    );
    println!(
        "√(1+ζ₅) = {:?} (outside the supported shapes)",
        a.try_sqrt().map(|v| v.to_string())
    );

    // Numerical display under ζ_M ↦ e^{2πi/M}; exact paths never use this.
    let w = CycloElem::new(3, vec![Rational::from_int(-1), Rational::from_int(-1)]);
    let (re, im) = w.approx_complex(6);
    println!("−1−ζ₃ = ζ₃² ≈ ({re}, {im})");
}
