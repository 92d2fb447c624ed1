//! The generalized Pauli group `Π_d = {w_abc = q^a x^b z^c}` of order `d³`.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, PhaseMatrix};
use crate::phase::Phase;
use crate::weyl::{pauli_u, PauliIndex};

/// Default largest `d` for which [`class_table`] enumerates the group.
pub const CLASS_TABLE_BOUND: u64 = 8;

/// `w_abc = q^a x^b z^c`, components reduced mod `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl GroupElement {
    pub fn new(d: u64, a: i64, b: i64, c: i64) -> Self {
        let d = d as i64;
        Self {
            a: a.rem_euclid(d) as u64,
            b: b.rem_euclid(d) as u64,
            c: c.rem_euclid(d) as u64,
        }
    }

    pub const IDENTITY: GroupElement = GroupElement { a: 0, b: 0, c: 0 };

    pub fn triple(&self) -> [u64; 3] {
        [self.a, self.b, self.c]
    }
}

/// `w_abc w_a'b'c' = w_{a⊕a'⊖cb', b⊕b', c⊕c'}`.
pub fn group_mul(d: u64, g: GroupElement, h: GroupElement) -> GroupElement {
    let a = (g.a + h.a + d * d - (g.c * h.b) % d) % d;
    GroupElement {
        a,
        b: (g.b + h.b) % d,
        c: (g.c + h.c) % d,
    }
}

/// `w_abc⁻¹ = w_{−a−cb, −b, −c}`.
pub fn group_inv(d: u64, g: GroupElement) -> GroupElement {
    GroupElement::new(d, -(g.a as i64) - (g.c * g.b) as i64, -(g.b as i64), -(g.c as i64))
}

/// `g h g⁻¹`.
pub fn conjugate(d: u64, g: GroupElement, h: GroupElement) -> GroupElement {
    group_mul(d, group_mul(d, g, h), group_inv(d, g))
}

/// Group commutator `g h g⁻¹ h⁻¹`.
pub fn group_commutator(d: u64, g: GroupElement, h: GroupElement) -> GroupElement {
    group_mul(d, group_mul(d, g, h), group_mul(d, group_inv(d, g), group_inv(d, h)))
}

/// All `d³` elements in lexicographic `(a, b, c)` order.
pub fn elements(d: u64) -> Vec<GroupElement> {
    let mut out = Vec::with_capacity((d * d * d) as usize);
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                out.push(GroupElement { a, b, c });
            }
        }
    }
    out
}

/// Smallest `n ≥ 1` with `gⁿ = 1`.
pub fn element_order(d: u64, g: GroupElement) -> u64 {
    let mut x = g;
    let mut n = 1;
    while x != GroupElement::IDENTITY {
        x = group_mul(d, x, g);
        n += 1;
    }
    n
}

/// The `d×d` matrix `q^a X^b Z^c`.
pub fn realize(d: u64, g: GroupElement) -> Result<PhaseMatrix> {
    let u = pauli_u(d as usize, PauliIndex { a: g.b, b: g.c })?;
    Ok(u.times_phase(Phase::of(d, g.a as i64)))
}

/// Faithful representation `[[1,0,0],[b,1,0],[a,−c,1]]` over `Z_d`.
pub fn rep3(d: u64, g: GroupElement) -> [[u64; 3]; 3] {
    [[1, 0, 0], [g.b % d, 1, 0], [g.a % d, (d - g.c % d) % d, 1]]
}

/// Product of two 3×3 matrices over `Z_d`.
pub fn mat3_mul(d: u64, x: &[[u64; 3]; 3], y: &[[u64; 3]; 3]) -> [[u64; 3]; 3] {
    let mut out = [[0u64; 3]; 3];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            *cell = (0..3).map(|k| x[r][k] * y[k][c]).sum::<u64>() % d;
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rep3Report {
    pub homomorphism: bool,
    pub injective: bool,
}

/// Exhaustive homomorphism and injectivity check of [`rep3`].
pub fn verify_rep3(d: u64) -> Rep3Report {
    let els = elements(d);
    let homomorphism = els.par_iter().all(|&g| {
        els.iter()
            .all(|&h| mat3_mul(d, &rep3(d, g), &rep3(d, h)) == rep3(d, group_mul(d, g, h)))
    });
    let images: HashSet<[[u64; 3]; 3]> = els.iter().map(|&g| rep3(d, g)).collect();
    Rep3Report {
        homomorphism,
        injective: images.len() == els.len(),
    }
}

/// Conjugacy classes, their sizes, and irreducible representation dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassTable {
    pub d: u64,
    /// Classes ordered by their smallest element; members sorted.
    pub classes: Vec<Vec<GroupElement>>,
    pub sizes: Vec<usize>,
    /// Sorted ascending; empty if the counting argument does not pin them.
    pub irrep_dims: Vec<u64>,
}

impl ClassTable {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// `size → number of classes of that size`.
    pub fn size_profile(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &s in &self.sizes {
            *m.entry(s).or_insert(0) += 1;
        }
        m
    }
}

pub fn class_table(d: u64) -> Result<ClassTable> {
    class_table_bounded(d, CLASS_TABLE_BOUND)
}

/// Conjugacy classes by symbolic conjugation, for `2 ≤ d ≤ bound`.
pub fn class_table_bounded(d: u64, bound: u64) -> Result<ClassTable> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("dimension {d} must be at least 2")));
    }
    if d > bound {
        return Err(Error::ResourceBound { d, bound });
    }
    let els = elements(d);
    let mut seen: HashSet<GroupElement> = HashSet::new();
    let mut classes = Vec::new();
    for &g in &els {
        if seen.contains(&g) {
            continue;
        }
        let mut class: Vec<GroupElement> = els
            .par_iter()
            .map(|&h| conjugate(d, h, g))
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        class.sort();
        seen.extend(class.iter().copied());
        classes.push(class);
    }
    let sizes = classes.iter().map(Vec::len).collect();
    let irrep_dims = irrep_dimensions(d, classes.len()).unwrap_or_default();
    Ok(ClassTable {
        d,
        classes,
        sizes,
        irrep_dims,
    })
}

/// Subgroup generated by the given elements.
pub fn generated_subgroup(d: u64, gens: &[GroupElement]) -> HashSet<GroupElement> {
    let mut set: HashSet<GroupElement> = HashSet::from([GroupElement::IDENTITY]);
    let mut frontier = vec![GroupElement::IDENTITY];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = group_mul(d, x, g);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

/// The derived subgroup `[Π_d, Π_d]`.
pub fn derived_subgroup(d: u64) -> HashSet<GroupElement> {
    let els = elements(d);
    let comms: HashSet<GroupElement> = els
        .par_iter()
        .flat_map_iter(|&g| els.iter().map(move |&h| group_commutator(d, g, h)))
        .collect();
    let gens: Vec<GroupElement> = comms.into_iter().collect();
    generated_subgroup(d, &gens)
}

pub fn center(d: u64) -> Vec<GroupElement> {
    let els = elements(d);
    els.iter()
        .copied()
        .filter(|&z| els.iter().all(|&g| group_mul(d, z, g) == group_mul(d, g, z)))
        .collect()
}

/// Irreducible representation dimensions by central character: the irreps
/// on which `w_a00 ↦ ω^{ta}` acts through a character of order `m` have
/// dimension `m`, and there are `(d/m)²·φ(m)` of them. Returned only when
/// that count equals `class_count` and the squared dimensions sum to `d³`.
pub fn irrep_dimensions(d: u64, class_count: usize) -> Option<Vec<u64>> {
    let mut dims = Vec::new();
    for m in (1..=d).filter(|m| d % m == 0) {
        let n = (d / m) * (d / m) * totient(m);
        dims.extend(std::iter::repeat(m).take(n as usize));
    }
    let square_sum: u64 = dims.iter().map(|x| x * x).sum();
    (dims.len() == class_count && square_sum == d * d * d).then_some(dims)
}

fn totient(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// Every element is conjugate to its inverse.
pub fn is_ambivalent(d: u64) -> bool {
    let els = elements(d);
    els.par_iter().all(|&g| {
        let inv = group_inv(d, g);
        els.iter().any(|&h| conjugate(d, h, g) == inv)
    })
}

/// `[w_g, w_h] = w_{α b'' c''} − w_{α' b'' c''}` with `α = a⊕a'⊖cb'`,
/// `α' = α ⊕ cb' ⊖ bc'`, `b'' = b⊕b'`, `c'' = c⊕c'`.
pub fn pi_bracket(d: u64, g: GroupElement, h: GroupElement) -> (GroupElement, GroupElement) {
    let first = group_mul(d, g, h);
    let alpha2 = (first.a + (g.c * h.b) % d + d - (g.b * h.c) % d) % d;
    (first, GroupElement { a: alpha2, ..first })
}

/// Largest deviation of [`pi_bracket`] from the matrix commutator of the
/// realized operators, over all pairs.
pub fn pi_bracket_residual(d: u64) -> Result<f64> {
    let els = elements(d);
    let mats: HashMap<GroupElement, CMatrix> = els
        .iter()
        .map(|&g| realize(d, g).map(|m| (g, m.to_cmatrix())))
        .collect::<Result<_>>()?;
    Ok(els
        .par_iter()
        .map(|&g| {
            els.iter()
                .map(|&h| {
                    let (p, m) = pi_bracket(d, g, h);
                    let lhs = mats[&g].commutator(&mats[&h]).expect("dim");
                    let rhs = mats[&p].sub(&mats[&m]).expect("dim");
                    lhs.max_abs_diff(&rhs)
                })
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max))
}

/// `d²·1² + (d−1)·d² = d³`, the dimension count of the decomposition of the
/// group algebra.
pub fn decomposition_dimension_identity(d: u64, irrep_dims: &[u64]) -> bool {
    let sum: u64 = irrep_dims.iter().map(|x| x * x).sum();
    let ones = irrep_dims.iter().filter(|&&x| x == 1).count() as u64;
    let big = irrep_dims.iter().filter(|&&x| x == d).count() as u64;
    sum == d * d * d && ones == d * d && big == d - 1 && ones + big == irrep_dims.len() as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupAxioms {
    pub identity: bool,
    pub inverses: bool,
    pub associativity: bool,
}

impl GroupAxioms {
    pub fn all(&self) -> bool {
        self.identity && self.inverses && self.associativity
    }
}

/// Exhaustive axiom check (`d³` triples for associativity).
pub fn group_axioms(d: u64) -> GroupAxioms {
    let els = elements(d);
    let e = GroupElement::IDENTITY;
    let identity = els.iter().all(|&g| group_mul(d, e, g) == g && group_mul(d, g, e) == g);
    let inverses = els
        .iter()
        .all(|&g| group_mul(d, g, group_inv(d, g)) == e && group_mul(d, group_inv(d, g), g) == e);
    let associativity = els.par_iter().all(|&x| {
        els.iter().all(|&y| {
            let xy = group_mul(d, x, y);
            els.iter()
                .all(|&z| group_mul(d, xy, z) == group_mul(d, x, group_mul(d, y, z)))
        })
    });
    GroupAxioms {
        identity,
        inverses,
        associativity,
    }
}

/// Commutators are central and not all trivial.
pub fn nilpotent_class_two(d: u64) -> bool {
    let z: HashSet<GroupElement> = center(d).into_iter().collect();
    let derived = derived_subgroup(d);
    derived.len() > 1 && derived.iter().all(|g| z.contains(g))
}

/// `g ↦ q^a X^b Z^c` respects the product law, exactly.
pub fn realization_is_homomorphism(d: u64) -> Result<bool> {
    let els = elements(d);
    let mats: HashMap<GroupElement, PhaseMatrix> = els
        .iter()
        .map(|&g| realize(d, g).map(|m| (g, m)))
        .collect::<Result<_>>()?;
    Ok(els.par_iter().all(|&g| {
        els.iter().all(|&h| {
            mats[&g].mul_exact(&mats[&h]).expect("monomial") == mats[&group_mul(d, g, h)]
        })
    }))
}

/// Exact determinants of all realized elements.
pub fn realization_determinants(d: u64) -> Result<Vec<(GroupElement, Phase)>> {
    elements(d)
        .into_iter()
        .map(|g| Ok((g, realize(d, g)?.det_monomial().expect("monomial"))))
        .collect()
}

/// Finite group of unscaled monomial matrices closed under multiplication,
/// keyed by exponents over a fixed order.
fn matrix_closure(gens: &[PhaseMatrix], order: u64) -> Vec<PhaseMatrix> {
    let dim = gens[0].dim();
    let id = PhaseMatrix::identity(dim);
    let key = |m: &PhaseMatrix| m.exponents_over(order).expect("order holds entries");
    let mut seen = HashSet::from([key(&id)]);
    let mut out = vec![id.clone()];
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.mul_exact(g).expect("monomial");
            if seen.insert(key(&y)) {
                out.push(y.clone());
                frontier.push(y);
            }
        }
    }
    out
}

fn matrix_order(m: &PhaseMatrix) -> u64 {
    let id = PhaseMatrix::identity(m.dim());
    let mut x = m.clone();
    let mut n = 1;
    while x != id {
        x = x.mul_exact(m).expect("monomial");
        n += 1;
    }
    n
}

/// Invariants of a finite matrix group: its order, center size and the
/// multiset of element orders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupInvariants {
    pub order: usize,
    pub center_size: usize,
    pub element_orders: BTreeMap<u64, usize>,
}

fn matrix_group_invariants(group: &[PhaseMatrix]) -> GroupInvariants {
    let center_size = group
        .par_iter()
        .filter(|z| {
            group
                .iter()
                .all(|g| z.mul_exact(g).expect("monomial") == g.mul_exact(z).expect("monomial"))
        })
        .count();
    let mut element_orders = BTreeMap::new();
    for g in group {
        *element_orders.entry(matrix_order(g)).or_insert(0) += 1;
    }
    GroupInvariants {
        order: group.len(),
        center_size,
        element_orders,
    }
}

/// `Π_d` realized as `d×d` matrices.
pub fn pi_d_matrices(d: u64) -> Result<Vec<PhaseMatrix>> {
    elements(d).into_iter().map(|g| realize(d, g)).collect()
}

/// The two-qubit Pauli group generated by `iI`, `σx⊗I`, `I⊗σx`, `σz⊗I`,
/// `I⊗σz`.
pub fn two_qubit_pauli_group() -> Vec<PhaseMatrix> {
    let (x, z) = crate::weyl::weyl_pair(2).expect("d=2");
    let i2 = PhaseMatrix::identity(2);
    let gens = vec![
        PhaseMatrix::identity(4).times_phase(Phase::of(4, 1)),
        x.tensor(&i2),
        i2.tensor(&x),
        z.tensor(&i2),
        i2.tensor(&z),
    ];
    matrix_closure(&gens, 4)
}

/// Invariants separating `Π_4` from the two-qubit Pauli group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi4VersusP2 {
    pub pi4: GroupInvariants,
    pub p2: GroupInvariants,
}

impl Pi4VersusP2 {
    pub fn distinguished(&self) -> bool {
        self.pi4 != self.p2
    }
}

pub fn pi4_versus_p2() -> Result<Pi4VersusP2> {
    let pi4 = matrix_group_invariants(&pi_d_matrices(4)?);
    let p2 = matrix_group_invariants(&two_qubit_pauli_group());
    Ok(Pi4VersusP2 { pi4, p2 })
}

/// Diagnostics for `Π_2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi2Diagnostics {
    pub order: usize,
    pub class_sizes: Vec<usize>,
    pub irrep_dims: Vec<u64>,
    /// Class sizes and element orders coincide with those of the symmetry
    /// group of the square.
    pub matches_dihedral: bool,
    pub ambivalent: bool,
    /// `x² = I`, `y² = −I`, `z² = I` for `y = xz`.
    pub sign_pattern: bool,
    /// Size of `Π_2 ∪ iΠ_2` as a matrix set.
    pub doubled_size: usize,
    pub doubled_closed: bool,
    /// `[Π_2 ∪ iΠ_2 : Π_2]`.
    pub doubled_index: usize,
}

impl Pi2Diagnostics {
    pub fn all_hold(&self) -> bool {
        self.order == 8
            && self.class_sizes.len() == 5
            && self.irrep_dims == vec![1, 1, 1, 1, 2]
            && self.matches_dihedral
            && self.ambivalent
            && self.sign_pattern
            && self.doubled_size == 16
            && self.doubled_closed
            && self.doubled_index == 2
    }
}

/// Symmetries of a square as vertex permutations.
fn dihedral_square() -> Vec<[usize; 4]> {
    let r = [1, 2, 3, 0];
    let s = [0, 3, 2, 1];
    let compose = |p: &[usize; 4], q: &[usize; 4]| -> [usize; 4] { [p[q[0]], p[q[1]], p[q[2]], p[q[3]]] };
    let mut group = vec![[0, 1, 2, 3]];
    let mut frontier = group.clone();
    while let Some(x) = frontier.pop() {
        for g in [&r, &s] {
            let y = compose(&x, g);
            if !group.contains(&y) {
                group.push(y);
                frontier.push(y);
            }
        }
    }
    group
}

fn dihedral_profile() -> (Vec<usize>, BTreeMap<u64, usize>) {
    let g = dihedral_square();
    let compose = |p: &[usize; 4], q: &[usize; 4]| -> [usize; 4] { [p[q[0]], p[q[1]], p[q[2]], p[q[3]]] };
    let inv = |p: &[usize; 4]| -> [usize; 4] {
        let mut out = [0; 4];
        for (i, &v) in p.iter().enumerate() {
            out[v] = i;
        }
        out
    };
    let mut seen: HashSet<[usize; 4]> = HashSet::new();
    let mut sizes = Vec::new();
    for x in &g {
        if seen.contains(x) {
            continue;
        }
        let class: HashSet<[usize; 4]> = g.iter().map(|h| compose(&compose(h, x), &inv(h))).collect();
        sizes.push(class.len());
        seen.extend(class);
    }
    sizes.sort();
    let mut orders = BTreeMap::new();
    for x in &g {
        let mut y = *x;
        let mut n = 1;
        while y != [0, 1, 2, 3] {
            y = compose(&y, x);
            n += 1;
        }
        *orders.entry(n).or_insert(0) += 1;
    }
    (sizes, orders)
}

pub fn pi2_diagnostics() -> Result<Pi2Diagnostics> {
    let d = 2;
    let table = class_table(d)?;
    let mut class_sizes = table.sizes.clone();
    class_sizes.sort();
    let mut orders = BTreeMap::new();
    for g in elements(d) {
        *orders.entry(element_order(d, g)).or_insert(0) += 1;
    }
    let matches_dihedral = dihedral_profile() == (class_sizes.clone(), orders);

    let x = realize(d, GroupElement { a: 0, b: 1, c: 0 })?;
    let y = realize(d, GroupElement { a: 0, b: 1, c: 1 })?;
    let z = realize(d, GroupElement { a: 0, b: 0, c: 1 })?;
    let id = PhaseMatrix::identity(2);
    let sign_pattern = x.mul_exact(&x)? == id
        && y.mul_exact(&y)? == id.times_phase(Phase::minus_one())
        && z.mul_exact(&z)? == id;

    let base = pi_d_matrices(d)?;
    let mut doubled = base.clone();
    doubled.extend(base.iter().map(|m| m.times_phase(Phase::of(4, 1))));
    let key = |m: &PhaseMatrix| m.exponents_over(4).expect("fourth roots");
    let keys: HashSet<_> = doubled.iter().map(key).collect();
    let doubled_closed = doubled
        .iter()
        .all(|p| doubled.iter().all(|q| keys.contains(&key(&p.mul_exact(q).expect("monomial")))));

    Ok(Pi2Diagnostics {
        order: elements(d).len(),
        class_sizes,
        irrep_dims: table.irrep_dims.clone(),
        matches_dihedral,
        ambivalent: is_ambivalent(d),
        sign_pattern,
        doubled_size: keys.len(),
        doubled_closed,
        doubled_index: keys.len() / base.len(),
    })
}

/// Jacobi identity residual for the commutator of realized elements.
pub fn jacobi_residual(d: u64, g: GroupElement, h: GroupElement, k: GroupElement) -> Result<f64> {
    let (x, y, z) = (
        realize(d, g)?.to_cmatrix(),
        realize(d, h)?.to_cmatrix(),
        realize(d, k)?.to_cmatrix(),
    );
    let t1 = x.commutator(&y.commutator(&z)?)?;
    let t2 = y.commutator(&z.commutator(&x)?)?;
    let t3 = z.commutator(&x.commutator(&y)?)?;
    Ok(t1.add(&t2)?.add(&t3)?.max_abs())
}

/// Largest entrywise gap between the exact realization and `q^a·u_bc`
/// evaluated in floating point.
pub fn realization_float_residual(d: u64) -> Result<f64> {
    let q = Phase::of(d, 1).eval();
    let mut worst: f64 = 0.0;
    for g in elements(d) {
        let exact = realize(d, g)?.to_cmatrix();
        let float = pauli_u(d as usize, PauliIndex { a: g.b, b: g.c })?
            .to_cmatrix()
            .scale(q.powu(g.a as u32));
        worst = worst.max(exact.max_abs_diff(&float));
    }
    Ok(worst)
}
