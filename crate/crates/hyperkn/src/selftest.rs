//! Small fixed-parameter invariant suites over every module, aggregated for
//! the `selftest` subcommand.

use serde::{Deserialize, Serialize};

use crate::action::{rep_from_profile, trace_closed_form, verify_homomorphism};
use crate::automorphisms::{classify_group, verify_profile};
use crate::curve::{HyperellipticCurve, NormalFormSpec};
use crate::cyclo::{root_of_unity, CycloElem};
use crate::decomposition::decompose_with;
use crate::groups::{character_table, FiniteGroup, GroupFamily};
use crate::rational::Rational;
use crate::reduction::{DifferentialForm, LaurentPoly, Reducer};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SelftestReport {
    pub suites: Vec<SuiteResult>,
    pub passed: usize,
    pub failed: usize,
}

struct Suite {
    result: SuiteResult,
}

impl Suite {
    fn new(name: &str) -> Suite {
        Suite {
            result: SuiteResult {
                name: name.to_string(),
                passed: 0,
                failed: 0,
                failures: Vec::new(),
            },
        }
    }

    fn check(&mut self, label: &str, ok: bool) {
        if ok {
            self.result.passed += 1;
        } else {
            self.result.failed += 1;
            self.result.failures.push(label.to_string());
        }
    }
}

fn field_suite() -> SuiteResult {
    let mut s = Suite::new("exact-field");
    let a = root_of_unity(12, 5).add(&CycloElem::from_int(2));
    let b = root_of_unity(12, 7).scale(&Rational::new(3.into(), 2.into()).unwrap());
    let c = root_of_unity(4, 1).sub(&CycloElem::from_int(1));
    s.check("associativity", a.mul(&b).mul(&c) == a.mul(&b.mul(&c)));
    s.check(
        "distributivity",
        a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c)),
    );
    s.check("commutativity", a.mul(&b) == b.mul(&a));
    s.check(
        "inverse",
        a.inverse().map(|inv| a.mul(&inv).is_one()).unwrap_or(false),
    );
    s.check(
        "sqrt contract",
        root_of_unity(3, 1)
            .try_sqrt()
            .map(|r| r.mul(&r) == root_of_unity(3, 1))
            .unwrap_or(false),
    );
    s.check(
        "promotion equality",
        root_of_unity(12, 4) == root_of_unity(3, 1),
    );
    s.result
}

fn curve_suite() -> SuiteResult {
    let mut s = Suite::new("curve");
    let c = |v: i64| CycloElem::from_int(v);
    let curve = HyperellipticCurve::from_roots(1, vec![c(2), c(-2), c(3), c(-3)]);
    s.check("construction", curve.is_ok());
    if let Ok(curve) = curve {
        s.check(
            "roots vanish",
            curve.roots().iter().all(|r| curve.eval_p(r).is_zero()),
        );
        s.check("p(0) = 0", curve.eval_p(&CycloElem::zero()).is_zero());
        s.check(
            "a1 is the root product",
            curve.coeff(1) == &curve.root_product(),
        );
    }
    let nf = NormalFormSpec {
        k: 3,
        params: vec![
            c(2),
            CycloElem::from_rational(Rational::new(1.into(), 2.into()).unwrap()),
        ],
    };
    s.check(
        "normal form expands",
        HyperellipticCurve::from_normal_form(&nf).is_ok(),
    );
    s.result
}

fn reduction_suite() -> SuiteResult {
    let mut s = Suite::new("reduction");
    let c = |v: i64| CycloElem::from_int(v);
    let curve = HyperellipticCurve::from_roots(1, vec![c(2), c(-2), c(3), c(-3)]).unwrap();
    let red = Reducer::new(curve);
    let mut ok = true;
    for e in -7..=7i64 {
        let form = DifferentialForm::from_u_dt(LaurentPoly::monomial(e, c(1)));
        match red.reduce_oracle(&form) {
            Ok(cls) => ok &= cls == red.reduce_form(&form),
            Err(_) => ok = false,
        }
    }
    s.check("oracle equivalence window", ok);
    let mut kernel_ok = true;
    for a in -4..=4i64 {
        let d = DifferentialForm::exact_differential(
            &LaurentPoly::monomial(a, c(1)),
            &LaurentPoly::monomial(a, c(1)),
        );
        kernel_ok &= red.reduce_form(&d).is_zero();
    }
    s.check("exact kernel", kernel_ok);
    for i in 0..=4usize {
        let form = if i == 0 {
            DifferentialForm::omega0()
        } else {
            DifferentialForm::omega(i)
        };
        s.check(
            &format!("basis stability omega_{i}"),
            red.reduce_form(&form).coords[i].is_one(),
        );
    }
    s.result
}

fn groups_suite() -> SuiteResult {
    let mut s = Suite::new("groups");
    for family in [
        GroupFamily::Cyclic(6),
        GroupFamily::Dihedral(6),
        GroupFamily::Dicyclic(3),
        GroupFamily::U(4),
        GroupFamily::U(6),
    ] {
        match FiniteGroup::new(family).and_then(|g| character_table(&g)) {
            Ok(t) => s.check(
                &format!("orthogonality {family:?}"),
                t.verify_orthogonality().is_ok(),
            ),
            Err(_) => s.check(&format!("table {family:?}"), false),
        }
    }
    s.result
}

fn automorphism_suite() -> SuiteResult {
    let mut s = Suite::new("automorphisms");
    let c = |v: i64| CycloElem::from_int(v);
    let q = |a: i64, b: i64| CycloElem::from_rational(Rational::new(a.into(), b.into()).unwrap());
    let specs = [
        (
            NormalFormSpec {
                k: 3,
                params: vec![c(2), q(1, 2)],
            },
            GroupFamily::Dihedral(6),
        ),
        (
            NormalFormSpec {
                k: 2,
                params: vec![c(1), c(2), c(3)],
            },
            GroupFamily::Cyclic(4),
        ),
        (
            NormalFormSpec {
                k: 4,
                params: vec![c(2)],
            },
            GroupFamily::U(4),
        ),
    ];
    for (spec, expect) in specs {
        match HyperellipticCurve::from_normal_form(&spec).map_err(|e| e.to_string()) {
            Ok(curve) => match classify_group(&curve) {
                Ok(profile) => {
                    s.check(&format!("classify {expect:?}"), profile.group_id == expect);
                    s.check(
                        &format!("profile table {expect:?}"),
                        verify_profile(&curve, &profile).is_ok(),
                    );
                }
                Err(_) => s.check(&format!("classify {expect:?}"), false),
            },
            Err(_) => s.check("normal form build", false),
        }
    }
    s.result
}

fn action_suite() -> SuiteResult {
    let mut s = Suite::new("action");
    let c = |v: i64| CycloElem::from_int(v);
    let curve = HyperellipticCurve::from_roots(1, vec![c(1), c(4)]).unwrap();
    let profile = classify_group(&curve).unwrap();
    let red = Reducer::new(curve);
    s.check("homomorphism", verify_homomorphism(&red, &profile).is_ok());
    let report = trace_closed_form(&red, &profile);
    s.check(
        "block trace general formula",
        report.flip_block_trace_general == report.flip_block_trace_actual,
    );
    s.check(
        "twist u-block traces vanish",
        report.twist_block_traces.iter().all(|(_, _, v)| *v),
    );
    s.result
}

fn decomposition_suite() -> SuiteResult {
    let mut s = Suite::new("decomposition");
    let c = |v: i64| CycloElem::from_int(v);
    let q = |a: i64, b: i64| CycloElem::from_rational(Rational::new(a.into(), b.into()).unwrap());
    let spec = NormalFormSpec {
        k: 3,
        params: vec![c(2), q(1, 2)],
    };
    let curve = HyperellipticCurve::from_normal_form(&spec).unwrap();
    let profile = classify_group(&curve).unwrap();
    let red = Reducer::new(curve);
    match decompose_with(&red, &profile) {
        Ok(report) => {
            s.check("dimension accounting", report.dimension == 7);
            s.check("proof-system path agrees", report.proof_system_agrees);
            let m = |label: &str| {
                report
                    .block_multiplicities
                    .iter()
                    .find(|e| e.label == label)
                    .map(|e| e.multiplicity)
            };
            s.check(
                "golden multiplicities",
                m("rho_4") == Some(2) && m("chi_1") == Some(2) && m("rho_1") == Some(0),
            );
            s.check(
                "rep from profile rebuilds",
                rep_from_profile(&red, &profile).is_ok(),
            );
        }
        Err(_) => s.check("decompose", false),
    }
    s.result
}

/// Run every suite and aggregate pass/fail counts.
pub fn run_selftests() -> SelftestReport {
    let suites = vec![
        field_suite(),
        curve_suite(),
        reduction_suite(),
        groups_suite(),
        automorphism_suite(),
        action_suite(),
        decomposition_suite(),
    ];
    let passed = suites.iter().map(|s| s.passed).sum();
    let failed = suites.iter().map(|s| s.failed).sum();
    SelftestReport {
        suites,
        passed,
        failed,
    }
}
