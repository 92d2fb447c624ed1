//! Quadratic Fourier matrices `F_a`, the quadratic discrete Fourier
//! transform, and the ordinary Fourier operator `f`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, PhaseMatrix};
use crate::phase::Phase;
use crate::su2::{v_ra_matrix, AngularParams};

/// Dimension `d ≥ 2` and the quadratic twist `a ∈ Z_d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QdftSpec {
    d: usize,
    a: u64,
}

impl QdftSpec {
    pub fn new(d: usize, a: i64) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidArgument(format!("dimension {d} must be at least 2")));
        }
        Ok(Self {
            d,
            a: a.rem_euclid(d as i64) as u64,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn a(&self) -> u64 {
        self.a
    }
}

/// `(F_a)_{kα} = ζ^{(k+1)(d−k−1)a − 2(k+1)α}/√d` with `ζ = exp(iπ/d)`.
pub fn fourier_matrix(spec: &QdftSpec) -> PhaseMatrix {
    let d = spec.d as i64;
    let a = spec.a as i64;
    PhaseMatrix::from_fn(spec.d, 2 * spec.d as u64, spec.d as u64, |k, alpha| {
        let (k, alpha) = (k as i64, alpha as i64);
        Some((k + 1) * (d - k - 1) * a - 2 * (k + 1) * alpha)
    })
    .expect("positive order")
}

fn check_len(d: usize, len: usize) -> Result<()> {
    if len != d {
        return Err(Error::DimensionMismatch { expected: d, found: len });
    }
    Ok(())
}

/// `y(α) = Σ_k (F_a)_{kα} x(k)`.
pub fn qdft(x: &[Complex64], spec: &QdftSpec) -> Result<Vec<Complex64>> {
    check_len(spec.d, x.len())?;
    let f = fourier_matrix(spec).to_cmatrix();
    Ok((0..spec.d)
        .map(|alpha| (0..spec.d).map(|k| f[(k, alpha)] * x[k]).sum())
        .collect())
}

/// `x(k) = Σ_α conj((F_a)_{kα}) y(α)`.
pub fn iqdft(y: &[Complex64], spec: &QdftSpec) -> Result<Vec<Complex64>> {
    check_len(spec.d, y.len())?;
    let f = fourier_matrix(spec).to_cmatrix();
    Ok((0..spec.d)
        .map(|k| (0..spec.d).map(|alpha| f[(k, alpha)].conj() * y[alpha]).sum())
        .collect())
}

fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

/// Returns `(Σ conj(y)·y', Σ conj(x)·x')` for the transforms of `x`, `x'`.
pub fn parseval_check(x: &[Complex64], x2: &[Complex64], spec: &QdftSpec) -> Result<(Complex64, Complex64)> {
    check_len(x.len(), x2.len())?;
    let y = qdft(x, spec)?;
    let y2 = qdft(x2, spec)?;
    Ok((inner(&y, &y2), inner(x, x2)))
}

/// The ordinary Fourier matrix `f_{kk'} = q^{−kk'}/√d`.
pub fn standard_fourier(d: usize) -> Result<PhaseMatrix> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("dimension {d} must be at least 2")));
    }
    PhaseMatrix::from_fn(d, d as u64, d as u64, |k, kp| Some(-((k * kp) as i64)))
}

/// Pseudopermutation `S = Σ_β q^β E_{β, −β mod d}`.
pub fn pseudo_permutation(d: usize) -> PhaseMatrix {
    PhaseMatrix::from_fn(d, d as u64, 1, |r, c| (c == (d - r) % d).then_some(r as i64))
        .expect("positive order")
}

/// Outcome of the exact relations among `f`, `F_0`, `S`, `X`, `Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FourierRelations {
    /// `f = (F_0 S)†`.
    pub f_from_f0: bool,
    /// `f⁴ = I`.
    pub f_fourth_identity: bool,
    /// `F_0⁴ = qI`.
    pub f0_fourth_q: bool,
    /// `f X f† = Z`.
    pub conjugates_x_to_z: bool,
}

impl FourierRelations {
    pub fn all(&self) -> bool {
        self.f_from_f0 && self.f_fourth_identity && self.f0_fourth_q && self.conjugates_x_to_z
    }
}

/// Checks the Fourier relations. Products of non-monomial matrices are
/// formed in floating point and snapped back to exact phases before the
/// comparison; a failed snap counts as a failed relation.
pub fn fourier_relations(d: usize, tol: f64) -> Result<FourierRelations> {
    let f = standard_fourier(d)?;
    let f0 = fourier_matrix(&QdftSpec::new(d, 0)?);
    let s = pseudo_permutation(d);
    let f_c = f.to_cmatrix();
    let f0_c = f0.to_cmatrix();

    let f_from_f0 = f0
        .mul_exact(&s)
        .map(|m| m.dagger() == f)
        .unwrap_or(false);

    let order = 2 * d as u64;
    let f4 = f_c.pow(4).snap(order, 1, tol);
    let f_fourth_identity = f4.is_some_and(|m| m == PhaseMatrix::identity(d));

    let f04 = f0_c.pow(4).snap(order, 1, tol);
    let qi = PhaseMatrix::identity(d).times_phase(Phase::of(d as u64, 1));
    let f0_fourth_q = f04.is_some_and(|m| m == qi);

    let (x, z) = crate::weyl::weyl_pair(d)?;
    let fxf = f_c.mul(&x.to_cmatrix())?.mul(&f_c.dagger())?.snap(order, 1, tol);
    let conjugates_x_to_z = fxf.is_some_and(|m| m == z);

    Ok(FourierRelations {
        f_from_f0,
        f_fourth_identity,
        f0_fourth_q,
        conjugates_x_to_z,
    })
}

/// `F_a† V_0a F_a`, recovered as an exact diagonal phase matrix over order `2d`.
pub fn reduce_v0a(d: usize, a: i64) -> Result<PhaseMatrix> {
    let spec = QdftSpec::new(d, a)?;
    let f = fourier_matrix(&spec).to_cmatrix();
    let v = v_ra_matrix(&AngularParams::with_int_r(d, 0, a)?).to_cmatrix();
    let prod = f.dagger().mul(&v)?.mul(&f)?;
    prod.snap(2 * d as u64, 1, 1e-9)
        .ok_or_else(|| Error::InvalidArgument(format!("F_a† V_0a F_a did not reduce to phases for d={d}, a={a}")))
}

/// The expected reduction `q^{(d−1)a/2} diag(1, q^{−1}, …, q^{−(d−1)})`.
pub fn expected_v0a_reduction(d: usize, a: i64) -> PhaseMatrix {
    let a = a.rem_euclid(d as i64);
    PhaseMatrix::from_fn(d, 2 * d as u64, 1, |r, c| {
        (r == c).then(|| (d as i64 - 1) * a - 2 * r as i64)
    })
    .expect("positive order")
}

/// Dense `F_a† F_b`.
pub fn fourier_overlap_matrix(d: usize, a: i64, b: i64) -> Result<CMatrix> {
    let fa = fourier_matrix(&QdftSpec::new(d, a)?).to_cmatrix();
    let fb = fourier_matrix(&QdftSpec::new(d, b)?).to_cmatrix();
    fa.dagger().mul(&fb)
}
