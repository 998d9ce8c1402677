//! The finite groups ℤ_m, dihedral, dicyclic and 𝕌_n: normal-form elements,
//! multiplication, conjugacy classes, explicit irreducible representations,
//! and exact character tables.
//!
//! Presentations (x the flip generator, y the rotation generator):
//!
//! - Dihedral(m), order 2m: x² = 1, y^m = 1, xyx = y⁻¹
//! - Dicyclic(n), order 4n: y^{2n} = 1, x² = y^n, yxy = x
//! - U(n), order 4n (n even): x² = 1, y^{2n} = 1, xyxy^{n+1} = 1
//!
//! U(n) for odd n is not a distinct runtime family: the constructor
//! canonicalizes to Dihedral(n) and keeps the request as an alias.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclo::{imaginary_unit, root_of_unity, CycloElem};
use crate::linalg::{nullspace, Matrix};
use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid group parameter {0}")]
    InvalidParameter(u64),
    #[error("character table consistency failure: {0}")]
    TableInconsistency(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupFamily {
    Cyclic(u64),
    Dihedral(u64),
    Dicyclic(u64),
    U(u64),
}

impl GroupFamily {
    pub fn label(&self) -> String {
        match self {
            GroupFamily::Cyclic(m) => format!("Z_{m}"),
            GroupFamily::Dihedral(m) => format!("Dihedral(rot {m}, order {})", 2 * m),
            GroupFamily::Dicyclic(n) => format!("Dic_{n} (order {})", 4 * n),
            GroupFamily::U(n) => format!("U_{n} (order {})", 4 * n),
        }
    }
}

/// Normal form x^s y^j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    pub flip: bool,
    pub power: u64,
}

impl GroupElement {
    pub fn identity() -> GroupElement {
        GroupElement {
            flip: false,
            power: 0,
        }
    }

    pub fn display(&self) -> String {
        match (self.flip, self.power) {
            (false, 0) => "1".to_string(),
            (false, 1) => "y".to_string(),
            (false, j) => format!("y^{j}"),
            (true, 0) => "x".to_string(),
            (true, 1) => "x y".to_string(),
            (true, j) => format!("x y^{j}"),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ConjClass {
    pub representative: GroupElement,
    pub members: Vec<GroupElement>,
}

/// An irreducible representation given by exact generator images.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Irrep {
    pub label: String,
    pub dim: usize,
    pub x_image: Matrix,
    pub y_image: Matrix,
}

impl Irrep {
    pub fn matrix_of(&self, g: &GroupElement) -> Matrix {
        let base = if g.flip {
            self.x_image.clone()
        } else {
            Matrix::identity(self.dim)
        };
        base.mul(&self.y_image.pow(g.power))
    }

    pub fn character(&self, g: &GroupElement) -> CycloElem {
        self.matrix_of(g).trace()
    }
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    family: GroupFamily,
    /// The family the caller asked for, when it differs (U(odd) → Dihedral).
    requested: Option<GroupFamily>,
    rotation_order: u64,
    elements: Vec<GroupElement>,
}

impl FiniteGroup {
    pub fn new(family: GroupFamily) -> Result<FiniteGroup, GroupError> {
        let (canonical, requested) = match family {
            GroupFamily::U(n) if n % 2 == 1 => (GroupFamily::Dihedral(n), Some(family)),
            other => (other, None),
        };
        let param = match canonical {
            GroupFamily::Cyclic(m) | GroupFamily::Dihedral(m) => m,
            GroupFamily::Dicyclic(n) | GroupFamily::U(n) => n,
        };
        if param == 0 {
            return Err(GroupError::InvalidParameter(param));
        }
        let rotation_order = match canonical {
            GroupFamily::Cyclic(m) | GroupFamily::Dihedral(m) => m,
            GroupFamily::Dicyclic(n) | GroupFamily::U(n) => 2 * n,
        };
        let mut elements = Vec::new();
        let flips: &[bool] = match canonical {
            GroupFamily::Cyclic(_) => &[false],
            _ => &[false, true],
        };
        for &flip in flips {
            for power in 0..rotation_order {
                elements.push(GroupElement { flip, power });
            }
        }
        let group = FiniteGroup {
            family: canonical,
            requested,
            rotation_order,
            elements,
        };
        group.check_presentation();
        Ok(group)
    }

    fn check_presentation(&self) {
        let x = GroupElement {
            flip: true,
            power: 0,
        };
        let y = GroupElement {
            flip: false,
            power: 1,
        };
        let e = GroupElement::identity();
        match self.family {
            GroupFamily::Cyclic(m) => {
                assert_eq!(self.pow(&y, m), e);
            }
            GroupFamily::Dihedral(m) => {
                assert_eq!(self.mul(&x, &x), e);
                assert_eq!(self.pow(&y, m), e);
                let xyx = self.mul(&self.mul(&x, &y), &x);
                assert_eq!(xyx, self.inverse(&y));
            }
            GroupFamily::Dicyclic(n) => {
                assert_eq!(self.pow(&y, 2 * n), e);
                assert_eq!(self.mul(&x, &x), self.pow(&y, n));
                let yxy = self.mul(&self.mul(&y, &x), &y);
                assert_eq!(yxy, x);
            }
            GroupFamily::U(n) => {
                assert_eq!(self.mul(&x, &x), e);
                assert_eq!(self.pow(&y, 2 * n), e);
                // x y x y^{n+1} = 1
                let rel = self.mul(&self.mul(&self.mul(&x, &y), &x), &self.pow(&y, n + 1));
                assert_eq!(rel, e);
            }
        }
    }

    pub fn family(&self) -> GroupFamily {
        self.family
    }

    pub fn requested_family(&self) -> Option<GroupFamily> {
        self.requested
    }

    pub fn rotation_order(&self) -> u64 {
        self.rotation_order
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let m = self.rotation_order;
        // Move x^{b.flip} past y^{a.power}: y^j x = x y^{σ(j)}.
        let j = if b.flip {
            match self.family {
                GroupFamily::Cyclic(_) => unreachable!("cyclic groups have no flip"),
                GroupFamily::Dihedral(_) | GroupFamily::Dicyclic(_) => (m - a.power % m) % m,
                GroupFamily::U(n) => (a.power % m) * ((n - 1) % m) % m,
            }
        } else {
            a.power % m
        };
        let mut power = (j + b.power) % m;
        let mut flip = a.flip ^ b.flip;
        if a.flip && b.flip {
            // x² contributes y^n for dicyclic groups and 1 otherwise.
            if let GroupFamily::Dicyclic(n) = self.family {
                power = (power + n) % m;
            }
            flip = false;
        }
        GroupElement { flip, power }
    }

    pub fn pow(&self, g: &GroupElement, e: u64) -> GroupElement {
        let mut acc = GroupElement::identity();
        for _ in 0..e {
            acc = self.mul(&acc, g);
        }
        acc
    }

    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        for h in &self.elements {
            if self.mul(g, h) == GroupElement::identity() {
                return *h;
            }
        }
        unreachable!("every element has an inverse")
    }

    /// Conjugacy classes by brute-force orbits, ordered: identity class
    /// first, then increasing size, ties broken by smallest member under
    /// (flip, power) order.
    pub fn conjugacy_classes(&self) -> Vec<ConjClass> {
        let mut seen: Vec<bool> = vec![false; self.elements.len()];
        let index =
            |g: &GroupElement| -> usize { self.elements.iter().position(|h| h == g).unwrap() };
        let mut classes = Vec::new();
        for g in &self.elements {
            if seen[index(g)] {
                continue;
            }
            let mut members: Vec<GroupElement> = Vec::new();
            for h in &self.elements {
                let conj = self.mul(&self.mul(h, g), &self.inverse(h));
                if !members.contains(&conj) {
                    members.push(conj);
                }
            }
            members.sort();
            for mbr in &members {
                seen[index(mbr)] = true;
            }
            classes.push(ConjClass {
                representative: members[0],
                members,
            });
        }
        classes.sort_by_key(|c| {
            (
                c.representative != GroupElement::identity(),
                c.members.len(),
                c.members[0],
            )
        });
        classes
    }

    /// The complete list of inequivalent irreducible representations.
    pub fn irreps(&self) -> Vec<Irrep> {
        match self.family {
            GroupFamily::Cyclic(m) => cyclic_irreps(m),
            GroupFamily::Dihedral(m) => dihedral_irreps(m),
            GroupFamily::Dicyclic(n) => dicyclic_irreps(n),
            GroupFamily::U(n) => u_family_irreps(n),
        }
    }
}

fn scalar_rep(label: &str, x: CycloElem, y: CycloElem) -> Irrep {
    Irrep {
        label: label.to_string(),
        dim: 1,
        x_image: Matrix::from_rows(vec![vec![x]]),
        y_image: Matrix::from_rows(vec![vec![y]]),
    }
}

fn two_dim(label: String, x: Matrix, y: Matrix) -> Irrep {
    Irrep {
        label,
        dim: 2,
        x_image: x,
        y_image: y,
    }
}

fn cyclic_irreps(m: u64) -> Vec<Irrep> {
    (0..m)
        .map(|r| {
            scalar_rep(
                &format!("chi_{r}"),
                CycloElem::one(),
                root_of_unity(m, r as i64),
            )
        })
        .collect()
}

/// One-dimensional labels follow the character-table column order used for
/// the dihedral matrices: rho_1 trivial, rho_2 = sign on reflections,
/// rho_3 = sign on the rotation, rho_4 their product.
fn dihedral_irreps(m: u64) -> Vec<Irrep> {
    let one = CycloElem::one;
    let neg = || CycloElem::from_int(-1);
    let mut irreps = vec![
        scalar_rep("rho_1", one(), one()),
        scalar_rep("rho_2", neg(), one()),
    ];
    if m % 2 == 0 {
        irreps.push(scalar_rep("rho_3", one(), neg()));
        irreps.push(scalar_rep("rho_4", neg(), neg()));
    }
    let swap = Matrix::from_rows(vec![
        vec![CycloElem::zero(), one()],
        vec![one(), CycloElem::zero()],
    ]);
    let top = m.div_ceil(2);
    for h in 1..top {
        let y = Matrix::from_rows(vec![
            vec![root_of_unity(m, h as i64), CycloElem::zero()],
            vec![CycloElem::zero(), root_of_unity(m, -(h as i64))],
        ]);
        irreps.push(two_dim(format!("chi_{h}"), swap.clone(), y));
    }
    irreps
}

fn dicyclic_irreps(n: u64) -> Vec<Irrep> {
    let one = CycloElem::one;
    let neg = || CycloElem::from_int(-1);
    let i = imaginary_unit();
    let mut irreps = vec![
        scalar_rep("rho_1", one(), one()),
        scalar_rep("rho_2", neg(), one()),
    ];
    // x² = y^n pins x to ±1 for even n and ±i for odd n when y ↦ −1.
    if n % 2 == 0 {
        irreps.push(scalar_rep("rho_3", one(), neg()));
        irreps.push(scalar_rep("rho_4", neg(), neg()));
    } else {
        irreps.push(scalar_rep("rho_3", i.clone(), neg()));
        irreps.push(scalar_rep("rho_4", i.neg(), neg()));
    }
    for h in 1..n {
        let x = Matrix::from_rows(vec![
            vec![CycloElem::zero(), one()],
            vec![if h % 2 == 0 { one() } else { neg() }, CycloElem::zero()],
        ]);
        let y = Matrix::from_rows(vec![
            vec![root_of_unity(2 * n, h as i64), CycloElem::zero()],
            vec![CycloElem::zero(), root_of_unity(2 * n, -(h as i64))],
        ]);
        irreps.push(two_dim(format!("chi_{h}"), x, y));
    }
    irreps
}

/// U(n) for even n: one-dimensional images solve the relation constraints
/// exactly, and the two-dimensional family R_h is enumerated over all h,
/// filtered to irreducibles and deduplicated by character.
fn u_family_irreps(n: u64) -> Vec<Irrep> {
    assert!(n % 2 == 0, "U(odd) canonicalizes to a dihedral group");
    let group = FiniteGroup::new(GroupFamily::U(n)).unwrap();
    let classes = group.conjugacy_classes();
    let one = CycloElem::one;
    let neg = || CycloElem::from_int(-1);
    let i = imaginary_unit();

    let mut irreps = vec![
        scalar_rep("rho_1", one(), one()),
        scalar_rep("rho_2", one(), neg()),
        scalar_rep("rho_3", neg(), neg()),
        scalar_rep("rho_4", neg(), one()),
    ];
    if n % 4 == 2 {
        irreps.push(scalar_rep("rho_5", one(), i.clone()));
        irreps.push(scalar_rep("rho_6", one(), i.neg()));
        irreps.push(scalar_rep("rho_7", neg(), i.neg()));
        irreps.push(scalar_rep("rho_8", neg(), i.clone()));
    }

    let swap = Matrix::from_rows(vec![
        vec![CycloElem::zero(), one()],
        vec![one(), CycloElem::zero()],
    ]);
    let mut seen_characters: Vec<Vec<CycloElem>> = Vec::new();
    for h in 0..(2 * n) {
        let sign = if h % 2 == 0 { one() } else { neg() };
        let y = Matrix::from_rows(vec![
            vec![root_of_unity(2 * n, h as i64), CycloElem::zero()],
            vec![
                CycloElem::zero(),
                root_of_unity(2 * n, -(h as i64)).mul(&sign),
            ],
        ]);
        let cand = two_dim(format!("R_{h}"), swap.clone(), y);
        let chi: Vec<CycloElem> = classes
            .iter()
            .map(|c| cand.character(&c.representative))
            .collect();
        // ⟨χ,χ⟩ = 1 exactly for irreducibles.
        let mut norm = CycloElem::zero();
        for (cls, v) in classes.iter().zip(chi.iter()) {
            let size = Rational::from_int(cls.members.len() as i64);
            norm = norm.add(&v.mul(&v.conj()).scale(&size));
        }
        let target = CycloElem::from_int(group.order() as i64);
        if norm != target {
            continue;
        }
        if seen_characters.iter().any(|c| c == &chi) {
            continue;
        }
        seen_characters.push(chi);
        irreps.push(cand);
    }
    irreps
}

/// Test for equivalence by solving the intertwiner system T·ρ_a(g) = ρ_b(g)·T
/// for the two generators and checking an invertible solution exists.
pub fn equivalent_irreps(a: &Irrep, b: &Irrep) -> bool {
    if a.dim != b.dim {
        return false;
    }
    let d = a.dim;
    let mut rows = Vec::new();
    for (ga, gb) in [(&a.x_image, &b.x_image), (&a.y_image, &b.y_image)] {
        // (T·ga − gb·T)[r][c] = Σ_k T[r][k]ga[k][c] − gb[r][k]T[k][c] = 0
        for r in 0..d {
            for c in 0..d {
                let mut row = vec![CycloElem::zero(); d * d];
                for k in 0..d {
                    let idx = r * d + k;
                    row[idx] = row[idx].add(ga.get(k, c));
                    let idx = k * d + c;
                    row[idx] = row[idx].sub(gb.get(r, k));
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_rows(rows);
    for v in nullspace(&system) {
        let t = Matrix::from_rows((0..d).map(|r| v[r * d..(r + 1) * d].to_vec()).collect());
        if crate::linalg::invert(&t).is_some() {
            return true;
        }
    }
    false
}

/// Exact character table: rows are irreps, columns are conjugacy classes in
/// the deterministic class order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CharacterTable {
    pub family: GroupFamily,
    pub group_order: usize,
    pub classes: Vec<ConjClass>,
    pub irreps: Vec<Irrep>,
    pub values: Vec<Vec<CycloElem>>,
}

impl CharacterTable {
    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.members.len()).collect()
    }

    /// Weighted inner product of two class functions:
    /// (1/|G|) Σ_c |c|·f(c)·conj(g(c)).
    pub fn inner_product(&self, f: &[CycloElem], g: &[CycloElem]) -> CycloElem {
        let mut acc = CycloElem::zero();
        for (i, cls) in self.classes.iter().enumerate() {
            let w = Rational::from_int(cls.members.len() as i64);
            acc = acc.add(&f[i].mul(&g[i].conj()).scale(&w));
        }
        let inv = Rational::from_int(self.group_order as i64).recip().unwrap();
        acc.scale(&inv)
    }

    /// Multiplicity vector of a class function against every irrep. Entries
    /// are exact rationals; callers decide whether integrality is required.
    pub fn multiplicities(&self, chi: &[CycloElem]) -> Result<Vec<Rational>, GroupError> {
        assert_eq!(chi.len(), self.classes.len(), "class function length");
        let mut out = Vec::with_capacity(self.values.len());
        for row in &self.values {
            let ip = self.inner_product(chi, row);
            let q = ip.to_rational().ok_or_else(|| {
                GroupError::TableInconsistency(format!("inner product is not rational: {ip}"))
            })?;
            out.push(q);
        }
        Ok(out)
    }

    /// Row and column orthogonality, checked exactly. Character values are
    /// interned, conjugates and pairwise products are computed once per
    /// distinct value, and each weighted sum is memoized by its multiset
    /// signature — cyclic tables of order m have only m distinct row-pair
    /// signatures, which keeps the order-80 sweep fast.
    pub fn verify_orthogonality(&self) -> Result<(), GroupError> {
        use std::collections::HashMap;

        if let GroupFamily::Cyclic(m) = self.family {
            return self.verify_orthogonality_cyclic(m);
        }

        let k = self.classes.len();
        let sizes = self.class_sizes();
        let order = Rational::from_int(self.group_order as i64);

        let mut working_order = 1u64;
        for row in &self.values {
            for v in row {
                working_order = num_integer::lcm(working_order, v.order());
            }
        }
        let mut interned: Vec<CycloElem> = Vec::new();
        let mut by_key: HashMap<String, usize> = HashMap::new();
        let mut intern = |v: CycloElem, interned: &mut Vec<CycloElem>| -> usize {
            let key = v.key_at(working_order);
            *by_key.entry(key).or_insert_with(|| {
                interned.push(v);
                interned.len() - 1
            })
        };

        let idx: Vec<Vec<usize>> = self
            .values
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| intern(v.clone(), &mut interned))
                    .collect()
            })
            .collect();
        let mut conj_of: Vec<usize> = Vec::new();
        for i in 0..interned.len() {
            let c = interned[i].conj();
            let ci = intern(c, &mut interned);
            conj_of.push(ci);
        }
        // values interned after this point are products; their conjugates
        // are never queried. Products of pure root powers are exponent
        // sums read off the cached ladder.
        let ladder = crate::cyclo::root_ladder(working_order);
        let root_exp: Vec<Option<u64>> = (0..interned.len())
            .map(|i| {
                ladder
                    .index
                    .get(&interned[i].key_at(working_order))
                    .copied()
            })
            .collect();
        let mut prod_cache: HashMap<(usize, usize), usize> = HashMap::new();
        let mut product = |a: usize, b: usize, interned: &mut Vec<CycloElem>| -> usize {
            if let Some(&p) = prod_cache.get(&(a, b)) {
                return p;
            }
            let v = match (
                root_exp.get(a).copied().flatten(),
                root_exp.get(b).copied().flatten(),
            ) {
                (Some(ea), Some(eb)) => ladder.powers[((ea + eb) % working_order) as usize].clone(),
                _ => interned[a].mul(&interned[b]),
            };
            let key = v.key_at(working_order);
            let p = *by_key.entry(key).or_insert_with(|| {
                interned.push(v);
                interned.len() - 1
            });
            prod_cache.insert((a, b), p);
            p
        };

        let mut sum_cache: HashMap<Vec<(usize, i64)>, CycloElem> = HashMap::new();
        let mut weighted_sum = |terms: Vec<(usize, i64)>, interned: &mut Vec<CycloElem>| {
            let mut sig = terms;
            sig.sort_unstable();
            // merge duplicate indices
            let mut merged: Vec<(usize, i64)> = Vec::with_capacity(sig.len());
            for (i, w) in sig {
                match merged.last_mut() {
                    Some((j, acc)) if *j == i => *acc += w,
                    _ => merged.push((i, w)),
                }
            }
            if let Some(v) = sum_cache.get(&merged) {
                return v.clone();
            }
            let mut acc = CycloElem::zero();
            for (i, w) in &merged {
                acc = acc.add(&interned[*i].scale(&Rational::from_int(*w)));
            }
            sum_cache.insert(merged, acc.clone());
            acc
        };

        for i in 0..k {
            for j in 0..k {
                let terms: Vec<(usize, i64)> = (0..k)
                    .map(|c| {
                        let p = product(idx[i][c], conj_of[idx[j][c]], &mut interned);
                        (p, sizes[c] as i64)
                    })
                    .collect();
                let acc = weighted_sum(terms, &mut interned);
                let expect = if i == j {
                    CycloElem::from_rational(order.clone())
                } else {
                    CycloElem::zero()
                };
                if acc != expect {
                    return Err(GroupError::TableInconsistency(format!(
                        "row orthogonality fails at ({i},{j})"
                    )));
                }
            }
        }
        // Column orthogonality: Σ_π χ_π(c)·conj(χ_π(c')) = δ_{cc'}·|G|/|c|.
        for c1 in 0..k {
            for c2 in 0..k {
                let terms: Vec<(usize, i64)> = (0..k)
                    .map(|pi| {
                        let p = product(idx[pi][c1], conj_of[idx[pi][c2]], &mut interned);
                        (p, 1)
                    })
                    .collect();
                let acc = weighted_sum(terms, &mut interned);
                let expect = if c1 == c2 {
                    CycloElem::from_rational(&order / &Rational::from_int(sizes[c1] as i64))
                } else {
                    CycloElem::zero()
                };
                if acc != expect {
                    return Err(GroupError::TableInconsistency(format!(
                        "column orthogonality fails at ({c1},{c2})"
                    )));
                }
            }
        }
        Ok(())
    }
}

impl CharacterTable {
    /// Cyclic tables are ζ^{r·j} grids over singleton classes: verify every
    /// cell against the power ladder, then both orthogonality statements
    /// collapse to the geometric sums Σ_c ζ^{d·c} = m·δ_{d,0}.
    fn verify_orthogonality_cyclic(&self, m: u64) -> Result<(), GroupError> {
        let ladder = crate::cyclo::root_ladder(m);
        for (r, row) in self.values.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                let j = self.classes[c].representative.power;
                if *v != ladder.powers[(r as u64 * j % m) as usize] {
                    return Err(GroupError::TableInconsistency(format!(
                        "cyclic cell ({r},{c}) is not ζ^{{r·j}}"
                    )));
                }
            }
        }
        for d in 0..m {
            let mut counts = vec![Rational::zero(); m as usize];
            for c in 0..m {
                let e = (d * c % m) as usize;
                counts[e] = &counts[e] + &Rational::one();
            }
            let sum = CycloElem::new(m, counts);
            let expect = if d == 0 {
                CycloElem::from_int(m as i64)
            } else {
                CycloElem::zero()
            };
            if sum != expect {
                return Err(GroupError::TableInconsistency(format!(
                    "geometric sum at offset {d} is {sum}, expected {expect}"
                )));
            }
        }
        Ok(())
    }
}

/// Build the exact character table of a group, with the completeness checks
/// (#irreps = #classes, Σ dim² = |G|, presentation relations) enforced.
pub fn character_table(group: &FiniteGroup) -> Result<CharacterTable, GroupError> {
    let classes = group.conjugacy_classes();
    let irreps = group.irreps();
    if classes.len() != irreps.len() {
        return Err(GroupError::TableInconsistency(format!(
            "{} classes vs {} irreps",
            classes.len(),
            irreps.len()
        )));
    }
    let dim_sq: usize = irreps.iter().map(|r| r.dim * r.dim).sum();
    if dim_sq != group.order() {
        return Err(GroupError::TableInconsistency(format!(
            "Σ dim² = {dim_sq} but |G| = {}",
            group.order()
        )));
    }
    for irrep in &irreps {
        verify_presentation_on_matrices(group, &irrep.x_image, &irrep.y_image)
            .map_err(|e| GroupError::TableInconsistency(format!("irrep {}: {e}", irrep.label)))?;
    }
    // Characters via power ladders rather than a fresh matrix power per
    // class. Cyclic tables read ζ^{r·j} straight off the cached root ladder.
    let values: Vec<Vec<CycloElem>> = if let GroupFamily::Cyclic(m) = group.family() {
        let ladder = crate::cyclo::root_ladder(m);
        (0..m)
            .map(|r| {
                classes
                    .iter()
                    .map(|c| ladder.powers[(r * c.representative.power % m) as usize].clone())
                    .collect()
            })
            .collect()
    } else {
        let max_power = classes
            .iter()
            .map(|c| c.representative.power)
            .max()
            .unwrap_or(0);
        irreps
            .iter()
            .map(|rep| {
                let mut ladder = Vec::with_capacity(max_power as usize + 1);
                ladder.push(Matrix::identity(rep.dim));
                for j in 1..=max_power {
                    let next = ladder[j as usize - 1].mul(&rep.y_image);
                    ladder.push(next);
                }
                classes
                    .iter()
                    .map(|c| {
                        let g = &c.representative;
                        let base = &ladder[g.power as usize];
                        if g.flip {
                            rep.x_image.mul(base).trace()
                        } else {
                            base.trace()
                        }
                    })
                    .collect()
            })
            .collect()
    };
    Ok(CharacterTable {
        family: group.family(),
        group_order: group.order(),
        classes,
        irreps,
        values,
    })
}

/// Check the defining relations of `group` on arbitrary square matrices
/// assigned to the generators.
pub fn verify_presentation_on_matrices(
    group: &FiniteGroup,
    x: &Matrix,
    y: &Matrix,
) -> Result<(), String> {
    // 1×1 root-of-unity powers by exponent arithmetic; everything else by
    // honest matrix powers (dimensions here are at most 2).
    let scalar_pow_is_identity = |mat: &Matrix, e: u64| -> Option<bool> {
        if mat.n_rows() != 1 {
            return None;
        }
        let entry = mat.get(0, 0);
        let exp = entry.as_root_of_unity()?;
        Some(exp * e % entry.order() == 0)
    };
    let power_is_identity = |mat: &Matrix, e: u64| {
        scalar_pow_is_identity(mat, e).unwrap_or_else(|| mat.pow(e).is_identity())
    };
    let m = group.rotation_order();
    match group.family() {
        GroupFamily::Cyclic(_) => {
            if !power_is_identity(y, m) {
                return Err(format!("y^{m} ≠ 1"));
            }
        }
        GroupFamily::Dihedral(_) => {
            if !x.mul(x).is_identity() {
                return Err("x² ≠ 1".to_string());
            }
            if !y.pow(m).is_identity() {
                return Err(format!("y^{m} ≠ 1"));
            }
            let lhs = x.mul(&y.mul(x));
            let rhs = y.pow(m - 1);
            if lhs != rhs {
                return Err("xyx ≠ y⁻¹".to_string());
            }
        }
        GroupFamily::Dicyclic(n) => {
            if !y.pow(2 * n).is_identity() {
                return Err(format!("y^{} ≠ 1", 2 * n));
            }
            if x.mul(x) != y.pow(n) {
                return Err("x² ≠ y^n".to_string());
            }
            if y.mul(&x.mul(y)) != *x {
                return Err("yxy ≠ x".to_string());
            }
        }
        GroupFamily::U(n) => {
            if !x.mul(x).is_identity() {
                return Err("x² ≠ 1".to_string());
            }
            if !y.pow(2 * n).is_identity() {
                return Err(format!("y^{} ≠ 1", 2 * n));
            }
            let rel = x.mul(&y.mul(&x.mul(&y.pow(n + 1))));
            if !rel.is_identity() {
                return Err("xyxy^{n+1} ≠ 1".to_string());
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cls_count(family: GroupFamily) -> usize {
        FiniteGroup::new(family).unwrap().conjugacy_classes().len()
    }

    #[test]
    fn group_orders() {
        assert_eq!(
            FiniteGroup::new(GroupFamily::Dicyclic(3)).unwrap().order(),
            12
        );
        assert_eq!(FiniteGroup::new(GroupFamily::U(4)).unwrap().order(), 16);
        assert_eq!(
            FiniteGroup::new(GroupFamily::Dihedral(5)).unwrap().order(),
            10
        );
        assert_eq!(FiniteGroup::new(GroupFamily::Cyclic(7)).unwrap().order(), 7);
    }

    #[test]
    fn u_odd_canonicalizes_to_dihedral() {
        let g = FiniteGroup::new(GroupFamily::U(3)).unwrap();
        assert_eq!(g.family(), GroupFamily::Dihedral(3));
        assert_eq!(g.requested_family(), Some(GroupFamily::U(3)));
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn dic3_classes_match_known_partition() {
        let g = FiniteGroup::new(GroupFamily::Dicyclic(3)).unwrap();
        let classes = g.conjugacy_classes();
        assert_eq!(classes.len(), 6);
        let el = |flip, power| GroupElement { flip, power };
        let as_sets: Vec<Vec<GroupElement>> = classes.iter().map(|c| c.members.clone()).collect();
        assert!(as_sets.contains(&vec![el(false, 0)]));
        assert!(as_sets.contains(&vec![el(false, 3)]));
        assert!(as_sets.contains(&vec![el(false, 1), el(false, 5)]));
        assert!(as_sets.contains(&vec![el(false, 2), el(false, 4)]));
        assert!(as_sets.contains(&vec![el(true, 0), el(true, 2), el(true, 4)]));
        assert!(as_sets.contains(&vec![el(true, 1), el(true, 3), el(true, 5)]));
    }

    #[test]
    fn u_family_class_counts() {
        // n ≡ 2 (mod 4) → n + 6 classes; n ≡ 0 (mod 4) → n + 3.
        assert_eq!(cls_count(GroupFamily::U(6)), 12);
        assert_eq!(cls_count(GroupFamily::U(8)), 11);
        for n in (2..=20u64).step_by(2) {
            let expect = if n % 4 == 2 { n + 6 } else { n + 3 };
            assert_eq!(cls_count(GroupFamily::U(n)), expect as usize, "U_{n}");
        }
        for n in 1..=20u64 {
            assert_eq!(
                cls_count(GroupFamily::Dicyclic(n)),
                (n + 3) as usize,
                "Dic_{n}"
            );
        }
    }

    #[test]
    fn classes_partition_the_group() {
        for family in [
            GroupFamily::Dihedral(7),
            GroupFamily::Dicyclic(6),
            GroupFamily::U(8),
            GroupFamily::Cyclic(12),
        ] {
            let g = FiniteGroup::new(family).unwrap();
            let classes = g.conjugacy_classes();
            let mut all: Vec<GroupElement> =
                classes.iter().flat_map(|c| c.members.clone()).collect();
            all.sort();
            let mut expect = g.elements().to_vec();
            expect.sort();
            assert_eq!(all, expect, "{family:?}");
            // Members are closed under conjugation by the generators.
            for cls in &classes {
                for m in &cls.members {
                    for gen in [
                        GroupElement {
                            flip: true,
                            power: 0,
                        },
                        GroupElement {
                            flip: false,
                            power: 1,
                        },
                    ] {
                        if matches!(family, GroupFamily::Cyclic(_)) && gen.flip {
                            continue;
                        }
                        let conj = g.mul(&g.mul(&gen, m), &g.inverse(&gen));
                        assert!(cls.members.contains(&conj));
                    }
                }
            }
        }
    }

    #[test]
    fn non_character_inputs_yield_non_integer_multiplicities() {
        // A class function that is not a character produces fractional inner
        // products; they are returned exactly, never rounded.
        let g = FiniteGroup::new(GroupFamily::Dihedral(3)).unwrap();
        let t = character_table(&g).unwrap();
        let fake: Vec<CycloElem> =
            vec![CycloElem::from_int(1), CycloElem::zero(), CycloElem::zero()];
        let mults = t.multiplicities(&fake).unwrap();
        assert!(mults.iter().any(|m| !m.is_integer()), "{mults:?}");
    }

    #[test]
    fn u_irrep_counts() {
        let g = FiniteGroup::new(GroupFamily::U(8)).unwrap();
        let irreps = g.irreps();
        let ones = irreps.iter().filter(|r| r.dim == 1).count();
        let twos = irreps.iter().filter(|r| r.dim == 2).count();
        assert_eq!((ones, twos), (4, 7)); // 4 + (n−1) with n = 8
        let g = FiniteGroup::new(GroupFamily::U(6)).unwrap();
        let irreps = g.irreps();
        let ones = irreps.iter().filter(|r| r.dim == 1).count();
        let twos = irreps.iter().filter(|r| r.dim == 2).count();
        assert_eq!((ones, twos), (8, 4)); // 8 + (n−2) with n = 6
    }

    #[test]
    fn dic_sum_of_squares() {
        for n in [2u64, 3, 4, 5, 6] {
            let g = FiniteGroup::new(GroupFamily::Dicyclic(n)).unwrap();
            let total: usize = g.irreps().iter().map(|r| r.dim * r.dim).sum();
            assert_eq!(total, 4 * n as usize);
        }
    }

    #[test]
    fn dihedral3_table_matches_odd_matrix() {
        // Classes in table order: {1}, {y,y²}, {x, xy, xy²}; the known
        // odd dihedral character matrix lists the same data as rows
        // (1,1,2), (1,−1,0), (1,1,−1) over (class 1, reflections, rotation).
        let g = FiniteGroup::new(GroupFamily::Dihedral(3)).unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(t.classes.len(), 3);
        assert_eq!(t.class_sizes(), vec![1, 2, 3]);
        let c = |v: i64| CycloElem::from_int(v);
        // rho_1 row
        assert_eq!(t.values[0], vec![c(1), c(1), c(1)]);
        // rho_2 row: sign on reflections
        assert_eq!(t.values[1], vec![c(1), c(1), c(-1)]);
        // chi_1 row: 2, 2cos(2π/3) = −1, 0
        assert_eq!(t.values[2], vec![c(2), c(-1), c(0)]);
        t.verify_orthogonality().unwrap();
    }

    #[test]
    fn cyclic2_table() {
        let g = FiniteGroup::new(GroupFamily::Cyclic(2)).unwrap();
        let t = character_table(&g).unwrap();
        let c = |v: i64| CycloElem::from_int(v);
        assert_eq!(t.values, vec![vec![c(1), c(1)], vec![c(1), c(-1)]]);
    }

    #[test]
    fn characters_constant_on_classes() {
        for family in [
            GroupFamily::Dihedral(6),
            GroupFamily::Dicyclic(4),
            GroupFamily::U(6),
        ] {
            let g = FiniteGroup::new(family).unwrap();
            let t = character_table(&g).unwrap();
            for irrep in &t.irreps {
                for cls in &t.classes {
                    let base = irrep.character(&cls.representative);
                    for m in &cls.members {
                        assert_eq!(irrep.character(m), base, "{family:?} {}", irrep.label);
                    }
                }
            }
        }
    }

    #[test]
    fn orthogonality_small_sweep() {
        for family in [
            GroupFamily::Cyclic(12),
            GroupFamily::Dihedral(4),
            GroupFamily::Dihedral(7),
            GroupFamily::Dicyclic(2),
            GroupFamily::Dicyclic(5),
            GroupFamily::U(4),
            GroupFamily::U(6),
        ] {
            let g = FiniteGroup::new(family).unwrap();
            let t = character_table(&g).unwrap();
            t.verify_orthogonality().unwrap();
        }
    }

    #[test]
    fn multiplicities_of_known_class_functions() {
        let g = FiniteGroup::new(GroupFamily::Dicyclic(3)).unwrap();
        let t = character_table(&g).unwrap();
        // An irrep against the table gives a unit vector.
        let chi = t.values[2].clone();
        let mults = t.multiplicities(&chi).unwrap();
        for (i, m) in mults.iter().enumerate() {
            assert_eq!(*m, Rational::from_int(if i == 2 { 1 } else { 0 }));
        }
        // The regular representation decomposes with multiplicity = dim.
        let reg: Vec<CycloElem> = t
            .classes
            .iter()
            .map(|c| {
                if c.representative == GroupElement::identity() {
                    CycloElem::from_int(g.order() as i64)
                } else {
                    CycloElem::zero()
                }
            })
            .collect();
        let mults = t.multiplicities(&reg).unwrap();
        for (m, irrep) in mults.iter().zip(t.irreps.iter()) {
            assert_eq!(*m, Rational::from_int(irrep.dim as i64));
        }
        // Sum of two distinct irrep characters.
        let sum: Vec<CycloElem> = t.values[0]
            .iter()
            .zip(t.values[1].iter())
            .map(|(a, b)| a.add(b))
            .collect();
        let mults = t.multiplicities(&sum).unwrap();
        assert_eq!(mults[0], Rational::one());
        assert_eq!(mults[1], Rational::one());
        assert!(mults[2..].iter().all(|m| m.is_zero()));
    }

    #[test]
    fn u_equivalences_match_intertwiner_search() {
        // R_h ≅ R_{n−h} for odd h < n; R_h ≅ R_{2n−h} for even h.
        for n in [4u64, 6, 8] {
            let swap = Matrix::from_rows(vec![
                vec![CycloElem::zero(), CycloElem::one()],
                vec![CycloElem::one(), CycloElem::zero()],
            ]);
            let build = |h: i64| {
                let sign = if h % 2 == 0 {
                    CycloElem::one()
                } else {
                    CycloElem::from_int(-1)
                };
                two_dim(
                    format!("R_{h}"),
                    swap.clone(),
                    Matrix::from_rows(vec![
                        vec![root_of_unity(2 * n, h), CycloElem::zero()],
                        vec![CycloElem::zero(), root_of_unity(2 * n, -h).mul(&sign)],
                    ]),
                )
            };
            for h in (1..n as i64).step_by(2) {
                if h as u64 * 2 != n {
                    assert!(
                        equivalent_irreps(&build(h), &build(n as i64 - h)),
                        "n={n} h={h}"
                    );
                }
            }
            for h in (2..2 * n as i64).step_by(2) {
                if h as u64 != n {
                    assert!(equivalent_irreps(&build(h), &build(2 * n as i64 - h)));
                }
            }
            assert!(!equivalent_irreps(&build(1), &build(2)));
        }
    }

    #[test]
    fn invalid_parameter_rejected() {
        assert!(FiniteGroup::new(GroupFamily::Cyclic(0)).is_err());
        assert!(FiniteGroup::new(GroupFamily::Dicyclic(0)).is_err());
    }
}
