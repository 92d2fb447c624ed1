//! Matrices over roots of unity, plus the complex floating fallback.
//!
//! [`PhaseMatrix`] stores every nonzero entry as an exponent over one common
//! order `N` and carries an optional global factor `1/√norm`. Monomial
//! products (Pauli operators, `V_0a`, diagonal phases) stay exact; anything
//! that produces genuine sums of roots drops to [`CMatrix`].

use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase::Phase;

/// Square matrix whose entries are exact roots of unity or exact zeros,
/// times a global factor `1/√norm`.
#[derive(Clone, Debug)]
pub struct PhaseMatrix {
    dim: usize,
    order: u64,
    norm: u64,
    entries: Vec<Option<u64>>,
}

impl PhaseMatrix {
    /// Builds a matrix from exponents over `order`; `None` is an exact zero.
    pub fn from_fn<F>(dim: usize, order: u64, norm: u64, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Option<i64>,
    {
        if order == 0 {
            return Err(Error::InvalidOrder(0));
        }
        if norm == 0 {
            return Err(Error::UnsupportedScale { dim, norm });
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c).map(|e| e.rem_euclid(order as i64) as u64));
            }
        }
        Ok(Self { dim, order, norm, entries })
    }

    /// Builds a matrix from arbitrary phases, bringing them to their lcm order.
    pub fn from_phases(dim: usize, norm: u64, phases: &[Option<Phase>]) -> Result<Self> {
        if phases.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: phases.len(),
            });
        }
        let order = phases
            .iter()
            .flatten()
            .fold(1u64, |acc, p| acc.lcm(&p.reduced().order()));
        let entries = phases
            .iter()
            .map(|p| p.map(|p| p.exponent_over(order).expect("lcm order")))
            .collect();
        Ok(Self { dim, order, norm: norm.max(1), entries })
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, 1, 1, |r, c| (r == c).then_some(0)).expect("valid identity")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// The global factor is `1/√norm`.
    pub fn norm(&self) -> u64 {
        self.norm
    }

    pub fn get(&self, r: usize, c: usize) -> Option<Phase> {
        self.entries[r * self.dim + c].map(|e| Phase::of(self.order, e as i64))
    }

    pub fn exponent(&self, r: usize, c: usize) -> Option<u64> {
        self.entries[r * self.dim + c]
    }

    /// Column `c` as exact phases.
    pub fn column(&self, c: usize) -> Vec<Option<Phase>> {
        (0..self.dim).map(|r| self.get(r, c)).collect()
    }

    /// Numerical value of one entry including the global scale.
    pub fn eval_entry(&self, r: usize, c: usize) -> Complex64 {
        match self.get(r, c) {
            Some(p) => p.eval() * self.scale_factor(),
            None => Complex64::new(0.0, 0.0),
        }
    }

    pub fn scale_factor(&self) -> f64 {
        1.0 / (self.norm as f64).sqrt()
    }

    /// Re-expresses all exponents over `order`, which must be a multiple of
    /// the current reduced common order.
    pub fn with_order(&self, order: u64) -> Option<Self> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            match e {
                None => entries.push(None),
                Some(e) => entries.push(Some(Phase::of(self.order, *e as i64).exponent_over(order)?)),
            }
        }
        Some(Self {
            dim: self.dim,
            order,
            norm: self.norm,
            entries,
        })
    }

    /// Smallest common order able to hold every entry.
    pub fn reduced(&self) -> Self {
        let order = self
            .entries
            .iter()
            .flatten()
            .fold(1u64, |acc, &e| acc.lcm(&Phase::of(self.order, e as i64).reduced().order()));
        self.with_order(order).expect("reduced order divides")
    }

    pub fn to_cmatrix(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                m[(r, c)] = self.eval_entry(r, c);
            }
        }
        m
    }

    pub fn is_monomial(&self) -> bool {
        let d = self.dim;
        (0..d).all(|r| (0..d).filter(|&c| self.entries[r * d + c].is_some()).count() == 1)
            && (0..d).all(|c| (0..d).filter(|&r| self.entries[r * d + c].is_some()).count() == 1)
    }

    pub fn is_diagonal(&self) -> bool {
        let d = self.dim;
        (0..d).all(|r| (0..d).all(|c| r == c || self.entries[r * d + c].is_none()))
    }

    /// Conjugate transpose; exponents negate mod the order.
    pub fn dagger(&self) -> Self {
        let d = self.dim;
        let n = self.order;
        let mut entries = vec![None; d * d];
        for r in 0..d {
            for c in 0..d {
                entries[c * d + r] = self.entries[r * d + c].map(|e| (n - e) % n);
            }
        }
        Self { entries, ..self.clone() }
    }

    /// Multiplies every entry by a phase.
    pub fn times_phase(&self, p: Phase) -> Self {
        let order = self.order.lcm(&p.reduced().order());
        let base = self.with_order(order).expect("lcm order");
        let pe = p.exponent_over(order).expect("lcm order");
        let entries = base.entries.iter().map(|e| e.map(|e| (e + pe) % order)).collect();
        Self { entries, ..base }
    }

    /// Exact product. Fails with [`Error::NotMonomial`] when some product entry
    /// would be a sum of two or more roots of unity.
    pub fn mul_exact(&self, rhs: &PhaseMatrix) -> Result<PhaseMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rhs.dim,
            });
        }
        let d = self.dim;
        let order = self.order.lcm(&rhs.order);
        let (ls, rs) = (order / self.order, order / rhs.order);
        let mut entries = vec![None; d * d];
        for r in 0..d {
            for c in 0..d {
                let mut acc = None;
                for k in 0..d {
                    if let (Some(a), Some(b)) = (self.entries[r * d + k], rhs.entries[k * d + c]) {
                        if acc.is_some() {
                            return Err(Error::NotMonomial);
                        }
                        acc = Some((a * ls + b * rs) % order);
                    }
                }
                entries[r * d + c] = acc;
            }
        }
        Ok(Self {
            dim: d,
            order,
            norm: self.norm * rhs.norm,
            entries,
        })
    }

    /// `self^n` by repeated exact multiplication.
    pub fn pow_exact(&self, n: u32) -> Result<PhaseMatrix> {
        let mut acc = PhaseMatrix::identity(self.dim);
        for _ in 0..n {
            acc = acc.mul_exact(self)?;
        }
        Ok(acc)
    }

    /// Kronecker product with row-major block convention:
    /// entry `(i1·d2 + i2, j1·d2 + j2) = A[i1, j1]·B[i2, j2]`.
    pub fn tensor(&self, rhs: &PhaseMatrix) -> PhaseMatrix {
        let (d1, d2) = (self.dim, rhs.dim);
        let d = d1 * d2;
        let order = self.order.lcm(&rhs.order);
        let (ls, rs) = (order / self.order, order / rhs.order);
        let mut entries = vec![None; d * d];
        for i1 in 0..d1 {
            for j1 in 0..d1 {
                for i2 in 0..d2 {
                    for j2 in 0..d2 {
                        if let (Some(a), Some(b)) = (self.entries[i1 * d1 + j1], rhs.entries[i2 * d2 + j2]) {
                            entries[(i1 * d2 + i2) * d + (j1 * d2 + j2)] = Some((a * ls + b * rs) % order);
                        }
                    }
                }
            }
        }
        PhaseMatrix {
            dim: d,
            order,
            norm: self.norm * rhs.norm,
            entries,
        }
    }

    /// All entries as exponents over `order` (`None` for exact zeros), if
    /// `order` can hold them. Useful as a hash key for matrix groups.
    pub fn exponents_over(&self, order: u64) -> Option<Vec<Option<u64>>> {
        self.with_order(order).map(|m| m.entries)
    }

    /// Exact determinant of an unscaled monomial matrix.
    pub fn det_monomial(&self) -> Option<Phase> {
        if !self.is_monomial() || self.norm != 1 {
            return None;
        }
        let d = self.dim;
        let perm: Vec<usize> = (0..d)
            .map(|r| (0..d).find(|&c| self.entries[r * d + c].is_some()).expect("monomial"))
            .collect();
        let mut det = Phase::ONE;
        for (r, &c) in perm.iter().enumerate() {
            det *= Phase::of(self.order, self.entries[r * d + c].expect("nonzero") as i64);
        }
        let mut seen = vec![false; d];
        let mut transpositions = 0;
        for start in 0..d {
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
                len += 1;
            }
            if len > 0 {
                transpositions += len - 1;
            }
        }
        if transpositions % 2 == 1 {
            det *= Phase::minus_one();
        }
        Some(det)
    }

    /// Exact unitarity test for monomial matrices without a global scale.
    /// Returns `None` when the decision needs sums of roots.
    pub fn is_unitary_exact(&self) -> Option<bool> {
        if self.is_monomial() {
            Some(self.norm == 1)
        } else {
            None
        }
    }
}

impl PartialEq for PhaseMatrix {
    fn eq(&self, other: &Self) -> bool {
        if self.dim != other.dim || self.norm != other.norm {
            return false;
        }
        let order = self.order.lcm(&other.order);
        let (ls, rs) = (order / self.order, order / other.order);
        self.entries
            .iter()
            .zip(&other.entries)
            .all(|(a, b)| match (a, b) {
                (None, None) => true,
                (Some(a), Some(b)) => a * ls == b * rs,
                _ => false,
            })
    }
}

impl Eq for PhaseMatrix {}

impl fmt::Display for PhaseMatrix {
    /// Renders entries as `q^e` over the matrix order; `0` is an exact zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.dim;
        let cells: Vec<String> = self
            .entries
            .iter()
            .map(|e| match e {
                None => "0".to_string(),
                Some(0) => "1".to_string(),
                Some(e) => format!("q^{e}"),
            })
            .collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
        for r in 0..d {
            let row: Vec<String> = (0..d).map(|c| format!("{:>width$}", cells[r * d + c])).collect();
            writeln!(f, "[ {} ]", row.join("  "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PhaseMatrixJson {
    dim: usize,
    order: u64,
    scale_inv_sqrt_d: bool,
    entries: Vec<Vec<Option<u64>>>,
}

impl Serialize for PhaseMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::Error as _;
        let scale = match self.norm {
            1 => false,
            n if n == self.dim as u64 => true,
            n => {
                return Err(S::Error::custom(format!(
                    "global scale 1/sqrt({n}) is not representable for dimension {}",
                    self.dim
                )))
            }
        };
        PhaseMatrixJson {
            dim: self.dim,
            order: self.order,
            scale_inv_sqrt_d: scale,
            entries: self.entries.chunks(self.dim.max(1)).map(|r| r.to_vec()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PhaseMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PhaseMatrixJson::deserialize(deserializer)?;
        if raw.order == 0 {
            return Err(D::Error::custom("order must be positive"));
        }
        if raw.entries.len() != raw.dim || raw.entries.iter().any(|r| r.len() != raw.dim) {
            return Err(D::Error::custom("entries must be a dim x dim array"));
        }
        let entries: Vec<Option<u64>> = raw.entries.into_iter().flatten().collect();
        if entries.iter().flatten().any(|&e| e >= raw.order) {
            return Err(D::Error::custom("exponent out of range for the stated order"));
        }
        Ok(PhaseMatrix {
            dim: raw.dim,
            order: raw.order,
            norm: if raw.scale_inv_sqrt_d { raw.dim as u64 } else { 1 },
            entries,
        })
    }
}

/// Dense complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Complex64>(dim: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Ok(Self {
            dim,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    /// Diagonal matrix from its entries.
    pub fn diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, v) in diag.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.dim).map(|r| self[(r, c)]).collect()
    }

    fn check_dim(&self, other: &CMatrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn mul(&self, rhs: &CMatrix) -> Result<CMatrix> {
        self.check_dim(rhs)?;
        let d = self.dim;
        let mut out = CMatrix::zeros(d);
        for r in 0..d {
            for k in 0..d {
                let a = self.data[r * d + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..d {
                    out.data[r * d + c] += a * rhs.data[k * d + c];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &CMatrix) -> Result<CMatrix> {
        self.check_dim(rhs)?;
        Ok(Self {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, rhs: &CMatrix) -> Result<CMatrix> {
        self.check_dim(rhs)?;
        Ok(Self {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, s: Complex64) -> CMatrix {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> CMatrix {
        let mut acc = CMatrix::identity(self.dim);
        for _ in 0..n {
            acc = acc.mul(self).expect("same dimension");
        }
        acc
    }

    /// `AB - BA`.
    pub fn commutator(&self, rhs: &CMatrix) -> Result<CMatrix> {
        self.mul(rhs)?.sub(&rhs.mul(self)?)
    }

    /// `AB + BA`.
    pub fn anticommutator(&self, rhs: &CMatrix) -> Result<CMatrix> {
        self.mul(rhs)?.add(&rhs.mul(self)?)
    }

    pub fn dagger(&self) -> CMatrix {
        let d = self.dim;
        let mut out = CMatrix::zeros(d);
        for r in 0..d {
            for c in 0..d {
                out.data[c * d + r] = self.data[r * d + c].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    pub fn tensor(&self, rhs: &CMatrix) -> CMatrix {
        let (d1, d2) = (self.dim, rhs.dim);
        CMatrix::from_fn(d1 * d2, |r, c| self[(r / d2, c / d2)] * rhs[(r % d2, c % d2)])
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        let d = self.dim;
        Ok((0..d)
            .map(|r| (0..d).map(|c| self.data[r * d + c] * v[c]).sum())
            .collect())
    }

    /// Largest entrywise modulus of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &CMatrix) -> f64 {
        if self.dim != rhs.dim {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, rhs: &CMatrix, tol: f64) -> bool {
        self.max_abs_diff(rhs) <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.dagger()
            .mul(self)
            .map(|p| p.approx_eq(&CMatrix::identity(self.dim), tol))
            .unwrap_or(false)
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> Complex64 {
        let d = self.dim;
        let mut a = self.data.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for col in 0..d {
            let pivot = (col..d)
                .max_by(|&i, &j| a[i * d + col].norm().total_cmp(&a[j * d + col].norm()))
                .expect("non-empty range");
            if a[pivot * d + col].norm() == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if pivot != col {
                for k in 0..d {
                    a.swap(pivot * d + k, col * d + k);
                }
                det = -det;
            }
            let p = a[col * d + col];
            det *= p;
            for r in col + 1..d {
                let factor = a[r * d + col] / p;
                if factor == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for k in col..d {
                    let v = a[col * d + k];
                    a[r * d + k] -= factor * v;
                }
            }
        }
        det
    }

    /// Recovers an exact [`PhaseMatrix`] whose entries are `N`-th roots of
    /// unity (or zero) times `1/√norm`, if every entry is within `tol` of one.
    pub fn snap(&self, order: u64, norm: u64, tol: f64) -> Option<PhaseMatrix> {
        let s = (norm as f64).sqrt();
        let mut entries = Vec::with_capacity(self.data.len());
        for z in &self.data {
            let z = z * s;
            if z.norm() <= tol {
                entries.push(None);
                continue;
            }
            let e = (z.arg() / std::f64::consts::TAU * order as f64).round() as i64;
            let p = Phase::of(order, e);
            if (p.eval() - z).norm() > tol {
                return None;
            }
            entries.push(Some(p.exponent()));
        }
        Some(PhaseMatrix {
            dim: self.dim,
            order,
            norm,
            entries,
        })
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

#[derive(Serialize, Deserialize)]
struct CMatrixJson {
    dim: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

impl Serialize for CMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CMatrixJson {
            dim: self.dim,
            entries: self
                .data
                .chunks(self.dim.max(1))
                .map(|r| r.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CMatrixJson::deserialize(deserializer)?;
        if raw.entries.len() != raw.dim || raw.entries.iter().any(|r| r.len() != raw.dim) {
            return Err(D::Error::custom("entries must be a dim x dim array"));
        }
        let data: Vec<Complex64> = raw
            .entries
            .into_iter()
            .flatten()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(D::Error::custom("entries must be finite"));
        }
        Ok(CMatrix { dim: raw.dim, data })
    }
}

/// Either an exact phase matrix or a floating one.
#[derive(Clone, Debug, PartialEq)]
pub enum Matrix {
    Exact(PhaseMatrix),
    Float(CMatrix),
}

impl From<PhaseMatrix> for Matrix {
    fn from(m: PhaseMatrix) -> Self {
        Matrix::Exact(m)
    }
}

impl From<CMatrix> for Matrix {
    fn from(m: CMatrix) -> Self {
        Matrix::Float(m)
    }
}

impl Matrix {
    pub fn dim(&self) -> usize {
        match self {
            Matrix::Exact(m) => m.dim(),
            Matrix::Float(m) => m.dim(),
        }
    }

    pub fn to_cmatrix(&self) -> CMatrix {
        match self {
            Matrix::Exact(m) => m.to_cmatrix(),
            Matrix::Float(m) => m.clone(),
        }
    }

    pub fn as_exact(&self) -> Option<&PhaseMatrix> {
        match self {
            Matrix::Exact(m) => Some(m),
            Matrix::Float(_) => None,
        }
    }
}

/// Matrix product. Stays exact when both factors are exact and every product
/// entry has at most one nonzero term; otherwise returns a [`CMatrix`].
pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    if let (Matrix::Exact(x), Matrix::Exact(y)) = (a, b) {
        match x.mul_exact(y) {
            Ok(m) => return Ok(Matrix::Exact(m)),
            Err(Error::NotMonomial) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(Matrix::Float(a.to_cmatrix().mul(&b.to_cmatrix())?))
}

pub fn dagger(a: &Matrix) -> Matrix {
    match a {
        Matrix::Exact(m) => Matrix::Exact(m.dagger()),
        Matrix::Float(m) => Matrix::Float(m.dagger()),
    }
}

pub fn tensor(a: &Matrix, b: &Matrix) -> Matrix {
    match (a, b) {
        (Matrix::Exact(x), Matrix::Exact(y)) => Matrix::Exact(x.tensor(y)),
        _ => Matrix::Float(a.to_cmatrix().tensor(&b.to_cmatrix())),
    }
}

/// `‖A†A − I‖_max ≤ tol`, decided exactly for monomial phase matrices.
pub fn is_unitary(a: &Matrix, tol: f64) -> bool {
    if let Matrix::Exact(m) = a {
        if let Some(exact) = m.is_unitary_exact() {
            return exact;
        }
    }
    a.to_cmatrix().is_unitary(tol)
}

/// Unitary with every entry of modulus `1/√d`.
pub fn is_hadamard(a: &Matrix, tol: f64) -> bool {
    let d = a.dim();
    let target = 1.0 / (d as f64).sqrt();
    let moduli_ok = match a {
        Matrix::Exact(m) => m.norm() == d as u64 && (0..d).all(|r| (0..d).all(|c| m.get(r, c).is_some())),
        Matrix::Float(m) => (0..d).all(|r| (0..d).all(|c| (m[(r, c)].norm() - target).abs() <= tol)),
    };
    moduli_ok && is_unitary(a, tol)
}

/// Hilbert–Schmidt inner product `Tr(A†B)`.
pub fn hs_trace_inner(a: &Matrix, b: &Matrix) -> Result<Complex64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let (x, y) = (a.to_cmatrix(), b.to_cmatrix());
    let d = x.dim();
    let mut acc = Complex64::new(0.0, 0.0);
    for r in 0..d {
        for c in 0..d {
            acc += x[(r, c)].conj() * y[(r, c)];
        }
    }
    Ok(acc)
}
