//! Weyl pairs, generalized Pauli operators `u_ab = X^a Z^b`, their
//! commutation algebra, Cartan decompositions for prime dimension, tensor
//! Pauli operators, and the two-qubit spread.

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{hs_trace_inner, CMatrix, Matrix, PhaseMatrix};
use crate::mub::{basis, computational_basis, is_prime, Basis};
use crate::phase::Phase;

/// Index `(a, b)` of `u_ab = X^a Z^b`, reduced mod `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PauliIndex {
    pub a: u64,
    pub b: u64,
}

impl PauliIndex {
    pub fn new(d: usize, a: i64, b: i64) -> Self {
        let d = d as i64;
        Self {
            a: a.rem_euclid(d) as u64,
            b: b.rem_euclid(d) as u64,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// `ab' − ba'`, the symplectic form deciding commutation.
    pub fn symplectic(&self, other: &PauliIndex, d: usize) -> u64 {
        let d = d as u64;
        (self.a * other.b % d + d - self.b * other.a % d) % d
    }
}

impl fmt::Display for PauliIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}{})", self.a, self.b)
    }
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("dimension {d} must be at least 2")));
    }
    Ok(())
}

/// `X = Σ E_{k⊖1,k}` and `Z = diag(q^k)`.
pub fn weyl_pair(d: usize) -> Result<(PhaseMatrix, PhaseMatrix)> {
    check_dim(d)?;
    let x = PhaseMatrix::from_fn(d, 1, 1, |r, c| (c == (r + 1) % d).then_some(0))?;
    let z = PhaseMatrix::from_fn(d, d as u64, 1, |r, c| (r == c).then_some(r as i64))?;
    Ok((x, z))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeylRelations {
    pub x_cyclic: bool,
    pub z_cyclic: bool,
    pub q_commute: bool,
}

impl WeylRelations {
    pub fn all(&self) -> bool {
        self.x_cyclic && self.z_cyclic && self.q_commute
    }
}

/// Exact check of `X^d = Z^d = I` and `XZ = qZX`.
pub fn weyl_relations(d: usize) -> Result<WeylRelations> {
    let (x, z) = weyl_pair(d)?;
    let id = PhaseMatrix::identity(d);
    let xz = x.mul_exact(&z)?;
    let qzx = z.mul_exact(&x)?.times_phase(Phase::of(d as u64, 1));
    Ok(WeylRelations {
        x_cyclic: x.pow_exact(d as u32)? == id,
        z_cyclic: z.pow_exact(d as u32)? == id,
        q_commute: xz == qzx,
    })
}

/// Exact check of `e^{−iπ(d−1)a}(v_0a)^d = I` and `v_0a Z = q Z v_0a`.
pub fn pseudo_weyl_relation(d: usize, a: i64) -> Result<bool> {
    let (_, z) = weyl_pair(d)?;
    let v = crate::su2::v_ra_matrix(&crate::su2::AngularParams::with_int_r(d, 0, a)?);
    let a = a.rem_euclid(d as i64);
    let pref = Phase::of(2, -((d as i64 - 1) * a));
    let cyclic = v.pow_exact(d as u32)?.times_phase(pref) == PhaseMatrix::identity(d);
    let q_commute = v.mul_exact(&z)? == z.mul_exact(&v)?.times_phase(Phase::of(d as u64, 1));
    Ok(cyclic && q_commute)
}

/// `u_ab = X^a Z^b`.
pub fn pauli_u(d: usize, idx: PauliIndex) -> Result<PhaseMatrix> {
    let (x, z) = weyl_pair(d)?;
    x.pow_exact(idx.a as u32)?.mul_exact(&z.pow_exact(idx.b as u32)?)
}

/// `u_ab|k⟩ = q^{kb}|k ⊖ a⟩`, returned as `(phase, target index)`.
pub fn pauli_action(d: usize, idx: PauliIndex, k: usize) -> (Phase, usize) {
    let phase = Phase::of(d as u64, (k as u64 * idx.b) as i64);
    let target = (k + d - idx.a as usize % d) % d;
    (phase, target)
}

/// Exact agreement between [`pauli_u`] and the ladder-phase action.
pub fn ladder_action_holds(d: usize, idx: PauliIndex) -> Result<bool> {
    let u = pauli_u(d, idx)?;
    Ok((0..d).all(|k| {
        let (ph, t) = pauli_action(d, idx, k);
        (0..d).all(|r| {
            let got = u.get(r, k);
            if r == t {
                got == Some(ph)
            } else {
                got.is_none()
            }
        })
    }))
}

/// `u_ab u_a'b' = q^{−ba'} u_{a⊕a', b⊕b'}`; returns the exponent of `q`
/// (mod `d`) and the product index.
pub fn pauli_product(d: usize, i1: PauliIndex, i2: PauliIndex) -> (u64, PauliIndex) {
    let du = d as u64;
    let e = (du - (i1.b * i2.a) % du) % du;
    (e, PauliIndex::new(d, (i1.a + i2.a) as i64, (i1.b + i2.b) as i64))
}

/// Coefficient `q^{−ba'} − q^{−ab'}` of `[u_ab, u_a'b']` and the result index.
pub fn commutator(d: usize, i1: PauliIndex, i2: PauliIndex) -> (Complex64, PauliIndex) {
    let (p, m, idx) = bracket_phases(d, i1, i2);
    (p.eval() - m.eval(), idx)
}

/// Coefficient `q^{−ba'} + q^{−ab'}` of `{u_ab, u_a'b'}` and the result index.
pub fn anticommutator(d: usize, i1: PauliIndex, i2: PauliIndex) -> (Complex64, PauliIndex) {
    let (p, m, idx) = bracket_phases(d, i1, i2);
    (p.eval() + m.eval(), idx)
}

fn bracket_phases(d: usize, i1: PauliIndex, i2: PauliIndex) -> (Phase, Phase, PauliIndex) {
    let (e, idx) = pauli_product(d, i1, i2);
    let (f, _) = pauli_product(d, i2, i1);
    (Phase::of(d as u64, e as i64), Phase::of(d as u64, f as i64), idx)
}

/// `[u_ab, u_a'b'] = 0` iff `ab' ⊖ ba' = 0`.
pub fn commutes(d: usize, i1: PauliIndex, i2: PauliIndex) -> bool {
    i1.symplectic(&i2, d) == 0
}

/// `{u_ab, u_a'b'} = 0` iff `ab' ⊖ ba' = d/2`; never for odd `d`.
pub fn anticommutes(d: usize, i1: PauliIndex, i2: PauliIndex) -> bool {
    d % 2 == 0 && 2 * i1.symplectic(&i2, d) == d as u64
}

/// All `d²` indices in row-major order `(a, b)`.
pub fn all_indices(d: usize) -> Vec<PauliIndex> {
    (0..d as u64)
        .flat_map(|a| (0..d as u64).map(move |b| PauliIndex { a, b }))
        .collect()
}

/// `(ab, ef; ij)`: `[u_ab, u_ef] = (q^{−be} − q^{−af}) u_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructureConstant {
    pub left: PauliIndex,
    pub right: PauliIndex,
    pub result: PauliIndex,
    pub plus: Phase,
    pub minus: Phase,
}

impl StructureConstant {
    /// Exactly zero when the two phases coincide.
    pub fn vanishes(&self) -> bool {
        self.plus == self.minus
    }

    pub fn value(&self) -> Complex64 {
        if self.vanishes() {
            Complex64::new(0.0, 0.0)
        } else {
            self.plus.eval() - self.minus.eval()
        }
    }
}

/// The full table over ordered pairs, in row-major index order.
pub fn structure_constants(d: usize) -> Vec<StructureConstant> {
    let idx = all_indices(d);
    let pairs: Vec<(PauliIndex, PauliIndex)> = idx
        .iter()
        .flat_map(|&l| idx.iter().map(move |&r| (l, r)))
        .collect();
    pairs
        .par_iter()
        .map(|&(left, right)| {
            let (plus, minus, result) = bracket_phases(d, left, right);
            StructureConstant {
                left,
                right,
                result,
                plus,
                minus,
            }
        })
        .collect()
}

/// Largest deviation between `[u_ab, u_ef]` computed from matrices and
/// `(ab, ef; ij) u_ij`, and whether the vanishing pattern is exactly
/// `af ⊖ be = 0`.
pub fn verify_structure_constants(d: usize) -> Result<(f64, bool)> {
    let mats: Vec<CMatrix> = all_indices(d)
        .iter()
        .map(|&i| pauli_u(d, i).map(|m| m.to_cmatrix()))
        .collect::<Result<_>>()?;
    let at = |i: PauliIndex| &mats[(i.a * d as u64 + i.b) as usize];
    let table = structure_constants(d);
    let results: Vec<(f64, bool)> = table
        .par_iter()
        .map(|sc| {
            let lhs = at(sc.left).commutator(at(sc.right)).expect("same dim");
            let rhs = at(sc.result).scale(sc.value());
            let pattern = sc.vanishes() == (sc.left.symplectic(&sc.right, d) == 0);
            (lhs.max_abs_diff(&rhs), pattern)
        })
        .collect();
    Ok(results
        .into_iter()
        .fold((0.0, true), |(e, p), (e2, p2)| (f64::max(e, e2), p && p2)))
}

/// Largest `|Tr(u_ab† u_a'b') − d·δδ|` over all index pairs.
pub fn hs_orthogonality_residual(d: usize) -> Result<f64> {
    let mats: Vec<Matrix> = all_indices(d)
        .iter()
        .map(|&i| pauli_u(d, i).map(Matrix::Exact))
        .collect::<Result<_>>()?;
    let n = mats.len();
    let worst = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    let t = hs_trace_inner(&mats[i], &mats[j]).expect("same dim");
                    let want = if i == j { d as f64 } else { 0.0 };
                    (t - Complex64::new(want, 0.0)).norm()
                })
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    Ok(worst)
}

/// One abelian family `𝒱_i` of a Cartan decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanSet {
    pub label: usize,
    pub members: Vec<PauliIndex>,
}

/// `𝒱_0 = {Z^a}`, `𝒱_1 = {X^a}`, `𝒱_{c+1} = {X^a Z^{ca}}` for `c = 1..p−1`,
/// each over `a = 1..p−1`.
pub fn cartan_decomposition(p: u64) -> Result<Vec<CartanSet>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let d = p as usize;
    let mut sets = vec![
        CartanSet {
            label: 0,
            members: (1..p).map(|a| PauliIndex { a: 0, b: a }).collect(),
        },
        CartanSet {
            label: 1,
            members: (1..p).map(|a| PauliIndex { a, b: 0 }).collect(),
        },
    ];
    for c in 1..p {
        sets.push(CartanSet {
            label: c as usize + 1,
            members: (1..p).map(|a| PauliIndex::new(d, a as i64, (c * a) as i64)).collect(),
        });
    }
    Ok(sets)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CartanReport {
    pub disjoint: bool,
    pub covers: bool,
    pub commuting: bool,
    pub independent: bool,
}

impl CartanReport {
    pub fn all(&self) -> bool {
        self.disjoint && self.covers && self.commuting && self.independent
    }
}

/// Hilbert–Schmidt Gram matrix of the given operators equals `d·I`.
fn gram_is_scaled_identity(mats: &[CMatrix], d: usize, tol: f64) -> bool {
    let n = mats.len();
    (0..n).into_par_iter().all(|i| {
        (0..n).all(|j| {
            let g = hs_trace_inner(&Matrix::Float(mats[i].clone()), &Matrix::Float(mats[j].clone())).expect("dim");
            let want = if i == j { d as f64 } else { 0.0 };
            (g - Complex64::new(want, 0.0)).norm() <= tol
        })
    })
}

/// Disjointness, coverage of all `p² − 1` non-identity indices, internal
/// commutation (symbolic and by matrix commutators), and linear
/// independence through the Hilbert–Schmidt Gram matrix.
pub fn verify_cartan(p: u64, sets: &[CartanSet], tol: f64) -> Result<CartanReport> {
    let d = p as usize;
    let all: Vec<PauliIndex> = sets.iter().flat_map(|s| s.members.iter().copied()).collect();
    let distinct: BTreeSet<PauliIndex> = all.iter().copied().collect();
    let disjoint = distinct.len() == all.len() && !distinct.iter().any(|i| i.is_identity());
    let covers = distinct.len() == d * d - 1 && sets.len() == d + 1;
    let mut commuting = true;
    for s in sets {
        let mats: Vec<CMatrix> = s
            .members
            .iter()
            .map(|&i| pauli_u(d, i).map(|m| m.to_cmatrix()))
            .collect::<Result<_>>()?;
        for i in 0..s.members.len() {
            for j in i + 1..s.members.len() {
                commuting &= commutes(d, s.members[i], s.members[j]);
                commuting &= mats[i].commutator(&mats[j])?.max_abs() <= tol;
            }
        }
    }
    let mats: Vec<CMatrix> = all
        .iter()
        .map(|&i| pauli_u(d, i).map(|m| m.to_cmatrix()))
        .collect::<Result<_>>()?;
    let independent = gram_is_scaled_identity(&mats, d, tol);
    Ok(CartanReport {
        disjoint,
        covers,
        commuting,
        independent,
    })
}

/// `u_AB = u_{a1 b1} ⊗ … ⊗ u_{ae be}` over the given factor dimensions.
pub fn pauli_tensor(dims: &[usize], a: &[i64], b: &[i64]) -> Result<PhaseMatrix> {
    if dims.is_empty() || a.len() != dims.len() || b.len() != dims.len() {
        return Err(Error::InvalidArgument(format!(
            "need one (a, b) pair per factor: {} dims, {} a's, {} b's",
            dims.len(),
            a.len(),
            b.len()
        )));
    }
    let mut acc: Option<PhaseMatrix> = None;
    for ((&d, &ai), &bi) in dims.iter().zip(a).zip(b) {
        let u = pauli_u(d, PauliIndex::new(d, ai, bi))?;
        acc = Some(match acc {
            None => u,
            Some(m) => m.tensor(&u),
        });
    }
    Ok(acc.expect("non-empty"))
}

/// Coefficient phases `(Π q_j^{−b_j a'_j}, Π q_j^{−a_j b'_j})` of the
/// tensor commutator.
pub fn tensor_bracket_phases(dims: &[usize], a: &[i64], b: &[i64], a2: &[i64], b2: &[i64]) -> (Phase, Phase) {
    let mut plus = Phase::ONE;
    let mut minus = Phase::ONE;
    for (j, &d) in dims.iter().enumerate() {
        plus *= Phase::of(d as u64, -(b[j] * a2[j]));
        minus *= Phase::of(d as u64, -(a[j] * b2[j]));
    }
    (plus, minus)
}

/// `[u_AB, u_A'B'] = 0` decided from the coefficient phases.
pub fn tensor_commutes(dims: &[usize], a: &[i64], b: &[i64], a2: &[i64], b2: &[i64]) -> bool {
    let (p, m) = tensor_bracket_phases(dims, a, b, a2, b2);
    p == m
}

/// Two-qubit index `(a1 b1 a2 b2)` for `X^{a1}Z^{b1} ⊗ X^{a2}Z^{b2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QubitPairIndex(pub [u8; 4]);

impl QubitPairIndex {
    pub fn matrix(&self) -> PhaseMatrix {
        let [a1, b1, a2, b2] = self.0.map(i64::from);
        pauli_tensor(&[2, 2], &[a1, a2], &[b1, b2]).expect("two factors")
    }

    fn ab(&self) -> ([i64; 2], [i64; 2]) {
        let [a1, b1, a2, b2] = self.0.map(i64::from);
        ([a1, a2], [b1, b2])
    }

    pub fn commutes_with(&self, other: &QubitPairIndex) -> bool {
        let (a, b) = self.ab();
        let (a2, b2) = other.ab();
        tensor_commutes(&[2, 2], &a, &b, &a2, &b2)
    }
}

impl fmt::Display for QubitPairIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a}{b}{c}{d})")
    }
}

/// The five pairwise disjoint commuting triples covering the fifteen
/// non-identity two-qubit Pauli operators.
pub fn spread_d4() -> Vec<[QubitPairIndex; 3]> {
    let t = |s: [[u8; 4]; 3]| s.map(QubitPairIndex);
    vec![
        t([[1, 0, 1, 1], [1, 1, 0, 1], [0, 1, 1, 0]]),
        t([[1, 1, 1, 0], [1, 0, 0, 1], [0, 1, 1, 1]]),
        t([[1, 0, 1, 0], [1, 0, 0, 0], [0, 0, 1, 0]]),
        t([[1, 1, 1, 1], [1, 1, 0, 0], [0, 0, 1, 1]]),
        t([[0, 1, 0, 1], [0, 1, 0, 0], [0, 0, 0, 1]]),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpreadReport {
    pub commuting: bool,
    pub disjoint_cover: bool,
    pub traceless: bool,
    pub independent: bool,
}

impl SpreadReport {
    pub fn all(&self) -> bool {
        self.commuting && self.disjoint_cover && self.traceless && self.independent
    }
}

pub fn verify_spread(sets: &[[QubitPairIndex; 3]], tol: f64) -> Result<SpreadReport> {
    let mut commuting = true;
    for s in sets {
        for i in 0..3 {
            for j in i + 1..3 {
                commuting &= s[i].commutes_with(&s[j]);
                let c = s[i].matrix().to_cmatrix().commutator(&s[j].matrix().to_cmatrix())?;
                commuting &= c.max_abs() <= tol;
            }
        }
    }
    let all: Vec<QubitPairIndex> = sets.iter().flatten().copied().collect();
    let distinct: BTreeSet<QubitPairIndex> = all.iter().copied().collect();
    let disjoint_cover = all.len() == 15 && distinct.len() == 15 && !distinct.contains(&QubitPairIndex([0; 4]));
    let mats: Vec<CMatrix> = all.iter().map(|i| i.matrix().to_cmatrix()).collect();
    let traceless = mats.iter().all(|m| m.trace().norm() <= tol);
    let independent = gram_is_scaled_identity(&mats, 4, tol);
    Ok(SpreadReport {
        commuting,
        disjoint_cover,
        traceless,
        independent,
    })
}

/// Every 3-element set of mutually commuting non-identity `u_ab` for `d = 4`,
/// and the largest number of pairwise disjoint such sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D4PartitionReport {
    pub commuting_triples: Vec<[PauliIndex; 3]>,
    pub max_disjoint: usize,
}

/// Exhaustive search showing the fifteen non-identity `u_ab` of a single
/// four-level system cannot be split into five commuting triples.
pub fn d4_partition_search() -> D4PartitionReport {
    let d = 4;
    let idx: Vec<PauliIndex> = all_indices(d).into_iter().filter(|i| !i.is_identity()).collect();
    let mut triples = Vec::new();
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            for k in j + 1..idx.len() {
                let (x, y, z) = (idx[i], idx[j], idx[k]);
                if commutes(d, x, y) && commutes(d, x, z) && commutes(d, y, z) {
                    triples.push([x, y, z]);
                }
            }
        }
    }
    fn best(triples: &[[PauliIndex; 3]], start: usize, used: &mut BTreeSet<PauliIndex>) -> usize {
        let mut top = 0;
        for t in start..triples.len() {
            if triples[t].iter().all(|i| !used.contains(i)) {
                used.extend(triples[t]);
                top = top.max(1 + best(triples, t + 1, used));
                for i in &triples[t] {
                    used.remove(i);
                }
            }
        }
        top
    }
    let max_disjoint = best(&triples, 0, &mut BTreeSet::new());
    D4PartitionReport {
        commuting_triples: triples,
        max_disjoint,
    }
}

/// `e_{0•} = {z^a}`, `e_{••} = {x^a z^a}`, `e_{•0} = {x^a}` for `a = 1..d−1`.
#[derive(Clone, Debug)]
pub struct CommutingFamily {
    pub name: &'static str,
    pub members: Vec<PauliIndex>,
    /// The basis diagonalizing every member.
    pub basis: Basis,
}

pub fn three_commuting_families(d: usize) -> Result<[CommutingFamily; 3]> {
    check_dim(d)?;
    let du = d as u64;
    Ok([
        CommutingFamily {
            name: "e0*",
            members: (1..du).map(|a| PauliIndex { a: 0, b: a }).collect(),
            basis: computational_basis(d),
        },
        CommutingFamily {
            name: "e**",
            members: (1..du).map(|a| PauliIndex { a, b: a }).collect(),
            basis: basis(d, 1)?,
        },
        CommutingFamily {
            name: "e*0",
            members: (1..du).map(|a| PauliIndex { a, b: 0 }).collect(),
            basis: basis(d, 0)?,
        },
    ])
}

/// Members commute pairwise and are all diagonal in the family's basis.
pub fn verify_family(d: usize, fam: &CommutingFamily, tol: f64) -> Result<bool> {
    let mats: Vec<CMatrix> = fam
        .members
        .iter()
        .map(|&i| pauli_u(d, i).map(|m| m.to_cmatrix()))
        .collect::<Result<_>>()?;
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            if mats[i].commutator(&mats[j])?.max_abs() > tol {
                return Ok(false);
            }
        }
    }
    let b = fam.basis.as_columns();
    for m in &mats {
        let t = b.dagger().mul(m)?.mul(&b)?;
        for r in 0..d {
            for c in 0..d {
                if r != c && t[(r, c)].norm() > tol {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi(d: usize, a: i64, b: i64) -> PauliIndex {
        PauliIndex::new(d, a, b)
    }

    #[test]
    fn qubit_pair() {
        let (x, z) = weyl_pair(2).unwrap();
        let sx = PhaseMatrix::from_fn(2, 2, 1, |r, c| (r != c).then_some(0)).unwrap();
        let sz = PhaseMatrix::from_fn(2, 2, 1, |r, c| (r == c).then_some(r as i64)).unwrap();
        assert_eq!(x, sx);
        assert_eq!(z, sz);
        let d4z = weyl_pair(4).unwrap().1;
        assert_eq!(d4z.get(1, 1), Some(Phase::of(4, 1)));
        assert_eq!(d4z.get(3, 3), Some(Phase::of(4, 3)));
    }

    #[test]
    fn weyl_and_pseudo_weyl() {
        for d in 2..=16 {
            assert!(weyl_relations(d).unwrap().all(), "d={d}");
        }
        for d in 2..=12 {
            for a in 0..d as i64 {
                assert!(pseudo_weyl_relation(d, a).unwrap(), "d={d} a={a}");
            }
        }
    }

    #[test]
    fn y_and_v0a() {
        let y = pauli_u(2, pi(2, 1, 1)).unwrap();
        assert_eq!(y.get(0, 1), Some(Phase::minus_one()));
        assert_eq!(y.get(1, 0), Some(Phase::ONE));
        for d in 2..=8 {
            for a in 0..d as i64 {
                let v = crate::su2::v_ra_matrix(&crate::su2::AngularParams::with_int_r(d, 0, a).unwrap());
                assert_eq!(pauli_u(d, pi(d, 1, a)).unwrap(), v);
            }
        }
    }

    #[test]
    fn ladder_actions() {
        for d in 2..=7 {
            for i in all_indices(d) {
                assert!(ladder_action_holds(d, i).unwrap());
            }
        }
    }

    #[test]
    fn products_match_matrices() {
        assert_eq!(pauli_product(2, pi(2, 0, 1), pi(2, 1, 0)), (1, pi(2, 1, 1)));
        assert_eq!(pauli_product(3, pi(3, 1, 1), pi(3, 1, 1)), (2, pi(3, 2, 2)));
        assert_eq!(pauli_product(5, pi(5, 3, 2), pi(5, 0, 0)), (0, pi(5, 3, 2)));
        for d in 2..=7 {
            for i in all_indices(d) {
                for j in all_indices(d) {
                    let (e, k) = pauli_product(d, i, j);
                    let lhs = pauli_u(d, i).unwrap().mul_exact(&pauli_u(d, j).unwrap()).unwrap();
                    let rhs = pauli_u(d, k).unwrap().times_phase(Phase::of(d as u64, e as i64));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn brackets() {
        let (c, idx) = commutator(2, pi(2, 1, 0), pi(2, 0, 1));
        assert!((c - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        assert_eq!(idx, pi(2, 1, 1));
        for d in 2..=9 {
            for a in 0..d as i64 {
                for b in 0..d as i64 {
                    assert!(commutator(d, pi(d, 0, a), pi(d, 0, b)).0.norm() < 1e-12);
                }
            }
        }
        assert!(anticommutator(3, pi(3, 1, 0), pi(3, 0, 1)).0.norm() > 0.5);
        for d in [3usize, 5, 7] {
            for i in all_indices(d) {
                for j in all_indices(d) {
                    assert!(!anticommutes(d, i, j));
                }
            }
        }
        assert!(anticommutes(2, pi(2, 1, 0), pi(2, 0, 1)));
        for d in [2usize, 4, 6] {
            for i in all_indices(d) {
                for j in all_indices(d) {
                    let zero = anticommutator(d, i, j).0.norm() < 1e-12;
                    assert_eq!(zero, anticommutes(d, i, j));
                }
            }
        }
    }

    #[test]
    fn structure_constants_small() {
        let t = structure_constants(2);
        assert_eq!(t.len(), 16);
        let (err, pattern) = verify_structure_constants(2).unwrap();
        assert!(err < 1e-12 && pattern);
        // antisymmetry
        for d in 2..=5 {
            let t = structure_constants(d);
            let n = d * d;
            for i in 0..n {
                for j in 0..n {
                    let (x, y) = (t[i * n + j], t[j * n + i]);
                    assert_eq!(x.result, y.result);
                    assert!((x.value() + y.value()).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn cartan_example_row() {
        let sets = cartan_decomposition(7).unwrap();
        let v3: Vec<(u64, u64)> = sets[3].members.iter().map(|i| (i.a, i.b)).collect();
        assert_eq!(v3, vec![(1, 2), (2, 4), (3, 6), (4, 1), (5, 3), (6, 5)]);
        let two = cartan_decomposition(2).unwrap();
        assert_eq!(two[0].members, vec![pi(2, 0, 1)]);
        assert_eq!(two[1].members, vec![pi(2, 1, 0)]);
        assert_eq!(two[2].members, vec![pi(2, 1, 1)]);
        assert_eq!(cartan_decomposition(4).unwrap_err(), Error::NotPrime(4));
        for p in [2u64, 3, 5] {
            assert!(verify_cartan(p, &cartan_decomposition(p).unwrap(), 1e-10).unwrap().all());
        }
    }

    #[test]
    fn tensor_operators() {
        let u = pauli_tensor(&[2, 2], &[1, 1], &[0, 1]).unwrap();
        assert_eq!(u, QubitPairIndex([1, 0, 1, 1]).matrix());
        let t = hs_trace_inner(&Matrix::Exact(u.clone()), &Matrix::Exact(u)).unwrap();
        assert!((t - Complex64::new(4.0, 0.0)).norm() < 1e-12);
        assert!(pauli_tensor(&[2, 2], &[1], &[0, 1]).is_err());
        let all: Vec<QubitPairIndex> = (0..16u8)
            .map(|n| QubitPairIndex([n >> 3 & 1, n >> 2 & 1, n >> 1 & 1, n & 1]))
            .collect();
        for x in &all {
            for y in &all {
                let c = x.matrix().to_cmatrix().commutator(&y.matrix().to_cmatrix()).unwrap();
                assert_eq!(c.max_abs() < 1e-12, x.commutes_with(y));
            }
        }
    }

    #[test]
    fn spread() {
        assert!(verify_spread(&spread_d4(), 1e-10).unwrap().all());
    }

    #[test]
    fn single_qudit_four_has_no_partition() {
        let r = d4_partition_search();
        assert_eq!(r.max_disjoint, 3);
        assert!(r.commuting_triples.contains(&[pi(4, 0, 1), pi(4, 0, 2), pi(4, 0, 3)]));
    }

    #[test]
    fn families() {
        for d in 2..=8 {
            for fam in three_commuting_families(d).unwrap() {
                assert_eq!(fam.members.len(), d - 1);
                assert!(verify_family(d, &fam, 1e-10).unwrap(), "d={d} {}", fam.name);
            }
        }
    }
}
