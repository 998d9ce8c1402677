//! Shared helpers for the integration suites: a deterministic PRNG and the
//! standard battery of test curves.

use hyperkn::curve::{HyperellipticCurve, NormalFormSpec};
use hyperkn::cyclo::{root_of_unity, CycloElem};
use hyperkn::rational::Rational;

/// xorshift64*, deterministic across runs.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.below((hi - lo + 1) as u64) as i64)
    }
}

pub fn c(v: i64) -> CycloElem {
    CycloElem::from_int(v)
}

pub fn cq(a: i64, b: i64) -> CycloElem {
    CycloElem::from_rational(Rational::new(a.into(), b.into()).unwrap())
}

/// The golden n = 3, k = 3 curve with c = 1: p = t(t³−8)(t³−1/8).
pub fn golden_n3() -> HyperellipticCurve {
    HyperellipticCurve::from_normal_form(&NormalFormSpec {
        k: 3,
        params: vec![c(2), cq(1, 2)],
    })
    .unwrap()
}

/// The golden n = 9, k = 3 curve with c = 1.
pub fn golden_n9() -> HyperellipticCurve {
    HyperellipticCurve::from_normal_form(&NormalFormSpec {
        k: 3,
        params: vec![c(2), cq(1, 2), c(3), cq(1, 3), c(5), cq(1, 5)],
    })
    .unwrap()
}

/// Every named curve exercised by the acceptance criteria, with a label.
pub fn standard_curves() -> Vec<(&'static str, HyperellipticCurve)> {
    let nf = |k: u64, params: Vec<CycloElem>| {
        HyperellipticCurve::from_normal_form(&NormalFormSpec { k, params }).unwrap()
    };
    vec![
        ("n3k3 golden (c=1)", golden_n3()),
        ("n9k3 golden (c=1)", golden_n9()),
        ("n3k3 generic c=2", nf(3, vec![c(1), c(4)])),
        ("n2k2 dihedral", nf(2, vec![c(1), c(4)])),
        ("n4k2 dihedral", nf(2, vec![c(2), cq(1, 2), c(3), cq(1, 3)])),
        ("n5k5 dihedral", nf(5, vec![c(1), c(4)])),
        ("n6k6 dihedral", nf(6, vec![c(2), cq(1, 2)])),
        (
            "n1 klein {1,4}",
            HyperellipticCurve::from_roots(1, vec![c(1), c(4)]).unwrap(),
        ),
        ("n2 U(4) l=1", nf(4, vec![c(2)])),
        (
            "n4 dicyclic",
            HyperellipticCurve::from_roots(
                4,
                vec![
                    c(1),
                    c(-1),
                    c(2),
                    c(-2),
                    cq(1, 2),
                    cq(-1, 2),
                    root_of_unity(4, 1),
                    root_of_unity(4, 3),
                ],
            )
            .unwrap(),
        ),
        ("n3 cyclic", nf(2, vec![c(1), c(2), c(3)])),
        (
            "n1 U(2) t^3-t",
            HyperellipticCurve::from_roots(4, vec![c(1), c(-1)]).unwrap(),
        ),
    ]
}

/// Deterministic random curves with n ≤ 4 over small cyclotomic fields.
pub fn random_curves(rng: &mut Rng, count: usize) -> Vec<HyperellipticCurve> {
    let mut out = Vec::new();
    let orders = [1u64, 2, 3, 4, 6];
    while out.len() < count {
        let n = 1 + rng.below(4) as usize;
        let m = orders[rng.below(orders.len() as u64) as usize];
        let mut roots: Vec<CycloElem> = Vec::new();
        let mut guard = 0;
        while roots.len() < 2 * n && guard < 200 {
            guard += 1;
            let num = rng.range_i64(-5, 5);
            let den = rng.range_i64(1, 4);
            if num == 0 {
                continue;
            }
            let scalar = cq(num, den);
            let candidate = if m == 1 {
                scalar
            } else {
                scalar.mul(&root_of_unity(m, rng.range_i64(0, m as i64 - 1)))
            };
            if candidate.is_zero() || roots.contains(&candidate) {
                continue;
            }
            roots.push(candidate);
        }
        if roots.len() < 2 * n {
            continue;
        }
        if let Ok(curve) = HyperellipticCurve::from_roots(m, roots) {
            out.push(curve);
        }
    }
    out
}
