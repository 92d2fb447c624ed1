//! Orthonormal bases, the unbiasedness test, the complete prime-dimension
//! family, the two-qubit family, and the determinant entanglement measure.

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, PhaseMatrix};
use crate::qfourier::{fourier_matrix, QdftSpec};

/// Tolerance used to classify entanglement determinants.
pub const ENTANGLEMENT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(untagged)]
pub enum BasisLabel {
    /// `B_a`, the eigenbasis of `v_0a`.
    Index(u64),
    Computational,
    Named(String),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Index(a) => write!(f, "B{a}"),
            BasisLabel::Computational => f.write_str("computational"),
            BasisLabel::Named(s) => f.write_str(s),
        }
    }
}

/// `d` labelled unit vectors in `C^d`.
#[derive(Clone, Debug)]
pub struct Basis {
    dim: usize,
    label: BasisLabel,
    vectors: Vec<Vec<Complex64>>,
    exact: Option<PhaseMatrix>,
}

impl Basis {
    /// Basis whose vectors are the columns of an exact phase matrix.
    pub fn from_exact(label: BasisLabel, columns: PhaseMatrix) -> Self {
        let c = columns.to_cmatrix();
        let dim = c.dim();
        Self {
            dim,
            label,
            vectors: (0..dim).map(|i| c.column(i)).collect(),
            exact: Some(columns),
        }
    }

    pub fn from_vectors(label: BasisLabel, vectors: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = vectors.len();
        if let Some(bad) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Ok(Self {
            dim,
            label,
            vectors,
            exact: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &BasisLabel {
        &self.label
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &[Complex64] {
        &self.vectors[i]
    }

    /// Exact form (vectors as columns), when available.
    pub fn exact(&self) -> Option<&PhaseMatrix> {
        self.exact.as_ref()
    }

    /// The vectors as the columns of a dense matrix.
    pub fn as_columns(&self) -> CMatrix {
        CMatrix::from_fn(self.dim, |r, c| self.vectors[c][r])
    }

    /// `max |⟨e_i|e_j⟩ − δ_ij|`.
    pub fn gram_residual(&self) -> f64 {
        let m = self.as_columns();
        m.dagger()
            .mul(&m)
            .expect("square")
            .max_abs_diff(&CMatrix::identity(self.dim))
    }
}

/// `⟨x|y⟩`.
pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

pub fn computational_basis(d: usize) -> Basis {
    Basis::from_exact(BasisLabel::Computational, PhaseMatrix::identity(d))
}

/// `B_a = {|aα⟩}`: the columns of `F_a`.
pub fn basis(d: usize, a: i64) -> Result<Basis> {
    let spec = QdftSpec::new(d, a)?;
    Ok(Basis::from_exact(BasisLabel::Index(spec.a()), fourier_matrix(&spec)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Unbiased,
    OrthonormalSame,
    Neither,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Unbiased => "unbiased",
            Verdict::OrthonormalSame => "orthonormal-same",
            Verdict::Neither => "neither",
        })
    }
}

/// Extremes of `|⟨u|v⟩|` over all cross pairs of two bases.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MubReport {
    pub labels: (String, String),
    pub max: f64,
    pub min: f64,
    pub verdict: Verdict,
    pub tol: f64,
}

/// Unbiased iff every cross modulus is `1/√d` within `tol`; orthonormal-same
/// iff every modulus is within `tol` of 0 or 1 with exactly `d` ones.
pub fn unbiased(b1: &Basis, b2: &Basis, tol: f64) -> Result<MubReport> {
    if b1.dim != b2.dim {
        return Err(Error::DimensionMismatch {
            expected: b1.dim,
            found: b2.dim,
        });
    }
    let d = b1.dim;
    let target = 1.0 / (d as f64).sqrt();
    let mut max: f64 = 0.0;
    let mut min = f64::INFINITY;
    let mut all_unbiased = true;
    let mut all_delta = true;
    let mut ones = 0usize;
    for x in &b1.vectors {
        for y in &b2.vectors {
            let m = inner(x, y).norm();
            max = max.max(m);
            min = min.min(m);
            all_unbiased &= (m - target).abs() <= tol;
            if (m - 1.0).abs() <= tol {
                ones += 1;
            } else if m > tol {
                all_delta = false;
            }
        }
    }
    let verdict = if all_unbiased {
        Verdict::Unbiased
    } else if all_delta && ones == d {
        Verdict::OrthonormalSame
    } else {
        Verdict::Neither
    };
    Ok(MubReport {
        labels: (b1.label.to_string(), b2.label.to_string()),
        max,
        min,
        verdict,
        tol,
    })
}

/// Reports for every unordered pair `i < j`, in lexicographic order.
pub fn pairwise_reports(bases: &[Basis], tol: f64) -> Result<Vec<MubReport>> {
    let pairs: Vec<(usize, usize)> = (0..bases.len())
        .flat_map(|i| (i + 1..bases.len()).map(move |j| (i, j)))
        .collect();
    pairs
        .par_iter()
        .map(|&(i, j)| unbiased(&bases[i], &bases[j], tol))
        .collect()
}

/// Trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// `B_0, …, B_{p−1}` and the computational basis. Only prime `p` is
/// accepted; for other dimensions the family is not complete.
pub fn complete_set_prime(p: u64) -> Result<Vec<Basis>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let d = p as usize;
    let mut out: Vec<Basis> = (0..p as i64).map(|a| basis(d, a)).collect::<Result<_>>()?;
    out.push(computational_basis(d));
    Ok(out)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `|aα⟩⊗|bβ⟩` for qubit bases, index `k·2 + l` for `|k⟩⊗|l⟩`.
fn qubit_product(a: u64, alpha: u64, b: u64, beta: u64) -> Vec<Complex64> {
    let fa = fourier_matrix(&QdftSpec::new(2, a as i64).expect("d=2")).to_cmatrix();
    let fb = fourier_matrix(&QdftSpec::new(2, b as i64).expect("d=2")).to_cmatrix();
    (0..4)
        .map(|i| fa[(i / 2, alpha as usize)] * fb[(i % 2, beta as usize)])
        .collect()
}

fn combine(x: Complex64, u: &[Complex64], y: Complex64, v: &[Complex64]) -> Vec<Complex64> {
    u.iter().zip(v).map(|(p, q)| x * p + y * q).collect()
}

/// Rescales by a unit phase so the first coefficient is real and positive.
fn fix_phase(v: Vec<Complex64>) -> Vec<Complex64> {
    let lead = v[0];
    let ph = lead.conj() / lead.norm();
    v.into_iter().map(|z| z * ph).collect()
}

/// Two-qubit basis from vectors whose entries are `±1/2` or `±i/2`.
fn two_qubit_basis(label: &str, vectors: Vec<Vec<Complex64>>) -> Basis {
    let m = CMatrix::from_fn(4, |r, col| vectors[col][r]);
    let exact = m.snap(4, 4, 1e-12).expect("entries are fourth roots over 2");
    Basis::from_exact(BasisLabel::Named(label.to_string()), exact)
}

/// The computational basis and the `w00`, `w11`, `w01`, `w10` bases of
/// `C² ⊗ C²`.
///
/// `w00` and `w11` are the product eigenvectors `|aα⟩⊗|bβ⟩` of
/// `v_0a ⊗ v_0b`. `w01` and `w10` are the recombinations `λ|ab00⟩ + μ|ab11⟩`,
/// `μ|ab00⟩ + λ|ab11⟩`, `λ|ab01⟩ + μ|ab10⟩`, `μ|ab01⟩ + λ|ab10⟩` with
/// `λ = (1−i)/2`, `μ = iλ`. Every vector is phase-normalized so its
/// `|0⟩⊗|0⟩` coefficient is `+1/2`.
pub fn mub_d4() -> Vec<Basis> {
    let lambda = c(0.5, -0.5);
    let mu = c(0.0, 1.0) * lambda;
    let product = |a: u64, b: u64| -> Vec<Vec<Complex64>> {
        [(0, 0), (0, 1), (1, 0), (1, 1)]
            .iter()
            .map(|&(al, be)| fix_phase(qubit_product(a, al, b, be)))
            .collect()
    };
    let recombined = |a: u64, b: u64| -> Vec<Vec<Complex64>> {
        let v = |al, be| qubit_product(a, al, b, be);
        vec![
            combine(lambda, &v(0, 0), mu, &v(1, 1)),
            combine(mu, &v(0, 0), lambda, &v(1, 1)),
            combine(lambda, &v(0, 1), mu, &v(1, 0)),
            combine(mu, &v(0, 1), lambda, &v(1, 0)),
        ]
        .into_iter()
        .map(fix_phase)
        .collect()
    };
    vec![
        Basis::from_exact(BasisLabel::Computational, PhaseMatrix::identity(4)),
        two_qubit_basis("w00", product(0, 0)),
        two_qubit_basis("w11", product(1, 1)),
        two_qubit_basis("w01", recombined(0, 1)),
        two_qubit_basis("w10", recombined(1, 0)),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Entanglement {
    Product,
    Partial,
    Maximal,
}

/// `|det A|` for the coefficient matrix `A[k][l]` of
/// `Σ a_kl |k⟩⊗|l⟩ ∈ C^d ⊗ C^d`, read from index `k·d + l`, and its class:
/// product if `≤ tol`, maximal if `≥ d^{−d/2} − tol`, else partial.
pub fn entanglement_det(v: &[Complex64], d: usize) -> Result<(f64, Entanglement)> {
    if v.len() != d * d {
        return Err(Error::DimensionMismatch {
            expected: d * d,
            found: v.len(),
        });
    }
    let a = CMatrix::from_fn(d, |k, l| v[k * d + l]);
    let det = a.det().norm();
    let bound = (d as f64).powf(-(d as f64) / 2.0);
    let class = if det <= ENTANGLEMENT_TOL {
        Entanglement::Product
    } else if det >= bound - ENTANGLEMENT_TOL {
        Entanglement::Maximal
    } else {
        Entanglement::Partial
    };
    Ok((det, class))
}
