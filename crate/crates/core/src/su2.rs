//! The operator `v_ra` of the polar decomposition of su(2), its eigenbasis,
//! rotation pseudoinvariance, the ladder generators built from `h` and
//! `v_ra`, and the two-quon realization.
//!
//! Everything is stored in the k-index convention `k = j − m`, so basis
//! vector `k` is `|j, j−k⟩`.

use num_complex::Complex64;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, PhaseMatrix};
use crate::mub::{Basis, BasisLabel};
use crate::phase::Phase;

/// Dimension `d = 2j + 1`, rational `r`, and `a ∈ Z_d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AngularParams {
    d: usize,
    r: Ratio<i64>,
    a: u64,
}

impl AngularParams {
    pub fn new(d: usize, r: Ratio<i64>, a: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        Ok(Self {
            d,
            r,
            a: a.rem_euclid(d as i64) as u64,
        })
    }

    /// Shorthand for integer `r`.
    pub fn with_int_r(d: usize, r: i64, a: i64) -> Result<Self> {
        Self::new(d, Ratio::from_integer(r), a)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn r(&self) -> Ratio<i64> {
        self.r
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    /// `j = (d − 1)/2`.
    pub fn j(&self) -> Ratio<i64> {
        Ratio::new(self.d as i64 - 1, 2)
    }

    /// `e^{iπ(d−1)r}`, the phase picked up when `v_ra` wraps `|j,j⟩` to `|j,−j⟩`.
    pub fn wrap_phase(&self) -> Phase {
        Phase::from_turns(self.r * Ratio::new(self.d as i64 - 1, 2))
    }
}

/// `q^e` for `q = exp(2πi/d)` and rational `e`.
fn q_pow(d: usize, e: Ratio<i64>) -> Phase {
    Phase::from_turns(e / Ratio::from_integer(d as i64))
}

/// Matrix of `v_ra` in the k-index basis: `v|k⟩ = q^{ka}|k−1⟩` for `k ≥ 1`
/// and `v|0⟩ = e^{iπ(d−1)r}|d−1⟩`.
pub fn v_ra_matrix(p: &AngularParams) -> PhaseMatrix {
    let d = p.d;
    let mut phases = vec![None; d * d];
    for k in 1..d {
        phases[(k - 1) * d + k] = Some(q_pow(d, Ratio::from_integer((k as u64 * p.a) as i64)));
    }
    phases[(d - 1) * d] = Some(p.wrap_phase());
    PhaseMatrix::from_phases(d, 1, &phases).expect("d*d phases")
}

/// Common eigenvectors of `j²` and `v_ra` together with their eigenvalues.
#[derive(Clone, Debug)]
pub struct Eigenbasis {
    pub basis: Basis,
    /// `eigenvalues[α] = q^{j(a+r)−α}`.
    pub eigenvalues: Vec<Phase>,
}

/// Exponent of coefficient `k` of `|jα; ra⟩`, in units of `q`.
fn eigvec_exponent(p: &AngularParams, k: usize, alpha: usize) -> Ratio<i64> {
    let d = p.d as i64;
    let (k, alpha) = (k as i64, alpha as i64);
    let j = p.j();
    let quad = Ratio::new((d - 1 - k) * (k + 1) * p.a as i64, 2);
    quad - j * (j - Ratio::from_integer(k)) * p.r + Ratio::from_integer((d - 1 - k) * alpha)
}

/// The `d` eigenvectors `|jα; ra⟩`, `α = 0..d−1`, as columns of an exact
/// phase matrix with global factor `1/√d`.
///
/// Each coefficient is a single rational power of `q`, so the eigenvalue
/// equation holds exactly for half-integer `j` without any branch choice.
pub fn eigenbasis_vra(p: &AngularParams) -> Eigenbasis {
    let d = p.d;
    let mut phases = vec![None; d * d];
    for k in 0..d {
        for alpha in 0..d {
            phases[k * d + alpha] = Some(q_pow(d, eigvec_exponent(p, k, alpha)));
        }
    }
    let m = PhaseMatrix::from_phases(d, d as u64, &phases).expect("d*d phases");
    let j = p.j();
    let eigenvalues = (0..d)
        .map(|alpha| q_pow(d, j * (Ratio::from_integer(p.a as i64) + p.r) - Ratio::from_integer(alpha as i64)))
        .collect();
    Eigenbasis {
        basis: Basis::from_exact(BasisLabel::Index(p.a), m),
        eigenvalues,
    }
}

/// Checks `v_ra|jα;ra⟩ = λ_α|jα;ra⟩` exactly for every `α`.
pub fn eigen_equation_holds(p: &AngularParams) -> bool {
    let v = v_ra_matrix(p);
    let eb = eigenbasis_vra(p);
    let m = eb.basis.exact().expect("exact eigenbasis");
    let d = p.d;
    (0..d).all(|alpha| {
        let col = m.column(alpha);
        (0..d).all(|row| {
            // v is monomial: one nonzero entry per row
            let (c, vp) = (0..d).find_map(|c| v.get(row, c).map(|ph| (c, ph))).expect("monomial");
            let lhs = vp * col[c].expect("full vector");
            let rhs = eb.eigenvalues[alpha] * col[row].expect("full vector");
            lhs == rhs
        })
    })
}

/// Rotation `P = exp(−iφ j_z)`, `φ = 2πp/d`, as the diagonal
/// `diag_k exp(2πi(k−j)p/d)`.
pub fn rotation_op(d: usize, p: u64) -> Result<PhaseMatrix> {
    if d == 0 || p >= d as u64 {
        return Err(Error::InvalidArgument(format!(
            "rotation index p={p} must lie in 0..{d}"
        )));
    }
    let j = Ratio::new(d as i64 - 1, 2);
    let phases: Vec<Option<Phase>> = (0..d * d)
        .map(|i| {
            let (r, c) = (i / d, i % d);
            (r == c).then(|| q_pow(d, (Ratio::from_integer(r as i64) - j) * p as i64))
        })
        .collect();
    PhaseMatrix::from_phases(d, 1, &phases)
}

/// Exact check of `P v_ra P† = e^{−iφ} v_ra` and of
/// `P|jα;ra⟩ = q^{jp}|j(α⊖p);ra⟩` for every `α`.
pub fn pseudoinvariance_check(d: usize, p: u64, r: Ratio<i64>, a: i64) -> Result<bool> {
    let params = AngularParams::new(d, r, a)?;
    let rot = rotation_op(d, p)?;
    let v = v_ra_matrix(&params);
    let conj = rot.mul_exact(&v)?.mul_exact(&rot.dagger())?;
    let expected = v.times_phase(Phase::of(d as u64, -(p as i64)));
    if conj != expected {
        return Ok(false);
    }
    let eb = eigenbasis_vra(&params);
    let m = eb.basis.exact().expect("exact eigenbasis");
    let shift = q_pow(d, params.j() * p as i64);
    for alpha in 0..d {
        let beta = (alpha + d - p as usize) % d;
        for k in 0..d {
            let lhs = rot.get(k, k).expect("diagonal") * m.get(k, alpha).expect("full");
            let rhs = shift * m.get(k, beta).expect("full");
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `h = diag_k √((d−1−k)(k+1))`, i.e. `√((j+m)(j−m+1))` at `m = j − k`.
pub fn h_matrix(d: usize) -> CMatrix {
    let diag: Vec<Complex64> = (0..d)
        .map(|k| Complex64::new((((d - 1 - k) * (k + 1)) as f64).sqrt(), 0.0))
        .collect();
    CMatrix::diagonal(&diag)
}

/// `(J₊, J₋, J_z) = (h v_ra, v_ra† h, ½(h² − v_ra† h² v_ra))`.
pub fn su2_generators(p: &AngularParams) -> (CMatrix, CMatrix, CMatrix) {
    let h = h_matrix(p.d);
    let v = v_ra_matrix(p).to_cmatrix();
    let vd = v.dagger();
    let jp = h.mul(&v).expect("same dim");
    let jm = vd.mul(&h).expect("same dim");
    let h2 = h.mul(&h).expect("same dim");
    let jz = h2
        .sub(&vd.mul(&h2).and_then(|x| x.mul(&v)).expect("same dim"))
        .expect("same dim")
        .scale(Complex64::new(0.5, 0.0));
    (jp, jm, jz)
}

/// Largest residual among `[J_z, J₊] − J₊`, `[J_z, J₋] + J₋`, `[J₊, J₋] − 2J_z`.
pub fn su2_commutation_residual(p: &AngularParams) -> f64 {
    let (jp, jm, jz) = su2_generators(p);
    let r1 = jz.commutator(&jp).expect("dim").max_abs_diff(&jp);
    let r2 = jz.commutator(&jm).expect("dim").max_abs_diff(&jm.scale(Complex64::new(-1.0, 0.0)));
    let r3 = jp.commutator(&jm).expect("dim").max_abs_diff(&jz.scale(Complex64::new(2.0, 0.0)));
    r1.max(r2).max(r3)
}

/// `[n]_q = (1 − qⁿ)/(1 − q)` for `q = exp(2πi/k)`.
pub fn q_number(k: usize, n: i64) -> Complex64 {
    let q = Phase::of(k as u64, 1).eval();
    let qn = Phase::of(k as u64, n).eval();
    (Complex64::new(1.0, 0.0) - qn) / (Complex64::new(1.0, 0.0) - q)
}

/// `exp(iπx/k)`, i.e. `q^{x/2}`.
fn half_q(k: usize, x: i64) -> Complex64 {
    Phase::of(2 * k as u64, x).eval()
}

/// Two commuting quon algebras `A_q(x)`, `A_q(y)` on `k`-dimensional spaces.
#[derive(Clone, Debug)]
pub struct QuonRep {
    pub k: usize,
    pub x_plus: CMatrix,
    pub x_minus: CMatrix,
    pub n_x: CMatrix,
    pub y_plus: CMatrix,
    pub y_minus: CMatrix,
    pub n_y: CMatrix,
    /// `[0]_q, …, [k]_q`.
    pub q_numbers: Vec<Complex64>,
}

impl QuonRep {
    pub fn new(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidArgument(format!("quon dimension k={k} must be at least 2")));
        }
        let qn: Vec<Complex64> = (0..=k as i64).map(|n| q_number(k, n)).collect();
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let x_plus = CMatrix::from_fn(k, |r, c| if r == c + 1 { one } else { zero });
        let x_minus = CMatrix::from_fn(k, |r, c| if c == r + 1 { qn[c] } else { zero });
        let y_plus = CMatrix::from_fn(k, |r, c| if r == c + 1 { qn[c + 1] } else { zero });
        let y_minus = CMatrix::from_fn(k, |r, c| if c == r + 1 { one } else { zero });
        let n: Vec<Complex64> = (0..k).map(|i| Complex64::new(i as f64, 0.0)).collect();
        Ok(Self {
            k,
            x_plus,
            x_minus,
            n_x: CMatrix::diagonal(&n),
            y_plus,
            y_minus,
            n_y: CMatrix::diagonal(&n),
            q_numbers: qn,
        })
    }

    /// Largest residual of the defining relations of both algebras:
    /// `a₋a₊ − q a₊a₋ = I`, `[N, a±] = ±a±`, `(a±)^k = 0`.
    pub fn relation_residual(&self) -> f64 {
        let k = self.k;
        let q = Phase::of(k as u64, 1).eval();
        let id = CMatrix::identity(k);
        let mut worst: f64 = 0.0;
        for (ap, am, n) in [
            (&self.x_plus, &self.x_minus, &self.n_x),
            (&self.y_plus, &self.y_minus, &self.n_y),
        ] {
            let lhs = am.mul(ap).unwrap().sub(&ap.mul(am).unwrap().scale(q)).unwrap();
            worst = worst.max(lhs.max_abs_diff(&id));
            worst = worst.max(n.commutator(ap).unwrap().max_abs_diff(ap));
            worst = worst.max(n.commutator(am).unwrap().max_abs_diff(&am.scale(Complex64::new(-1.0, 0.0))));
            worst = worst.max(ap.pow(k as u32).max_abs());
            worst = worst.max(am.pow(k as u32).max_abs());
        }
        worst
    }
}

/// Index of `|n1, n2)` in `F_k = F(x) ⊗ F(y)`.
fn fk_index(k: usize, n1: usize, n2: usize) -> usize {
    n1 * k + n2
}

/// Builds `h = √(N_x(N_y+1))` and `v_ra = s_x s_y` on the `k²`-dimensional
/// space `F_k`.
pub fn quon_build(k: usize, r: Ratio<i64>, a: i64) -> Result<(CMatrix, CMatrix)> {
    let rep = QuonRep::new(k)?;
    let ik = CMatrix::identity(k);
    let xp = rep.x_plus.tensor(&ik);
    let xm = rep.x_minus.tensor(&ik);
    let yp = ik.tensor(&rep.y_plus);
    let ym = ik.tensor(&rep.y_minus);
    let kk = k * k;

    let h = CMatrix::diagonal(
        &(0..kk)
            .map(|i| Complex64::new((((i / k) * (i % k + 1)) as f64).sqrt(), 0.0))
            .collect::<Vec<_>>(),
    );
    let sum_diag = CMatrix::diagonal(
        &(0..kk)
            .map(|i| half_q(k, a * (i / k + i % k) as i64))
            .collect::<Vec<_>>(),
    );
    let diff_diag = CMatrix::diagonal(
        &(0..kk)
            .map(|i| half_q(k, -a * ((i / k) as i64 - (i % k) as i64)))
            .collect::<Vec<_>>(),
    );
    let fact: Complex64 = (1..k).map(|n| rep.q_numbers[n]).product();
    let half_phi = Phase::from_turns(r * Ratio::new(k as i64 - 1, 4)).eval();
    let coeff = half_phi / fact;

    let sx = sum_diag.mul(&xp)?.add(&xm.pow(k as u32 - 1).scale(coeff))?;
    let sy = ym.mul(&diff_diag)?.add(&yp.pow(k as u32 - 1).scale(coeff))?;
    Ok((h, sx.mul(&sy)?))
}

/// Largest deviation of the built `h` and `v_ra` from their stated action on
/// the states `|n1, n2)`.
pub fn quon_action_residual(k: usize, r: Ratio<i64>, a: i64) -> Result<f64> {
    let (h, v) = quon_build(k, r, a)?;
    let kk = k * k;
    let half_phi = Phase::from_turns(r * Ratio::new(k as i64 - 1, 4)).eval();
    let phi = half_phi * half_phi;
    let q = |e: i64| Phase::of(k as u64, e).eval();
    let mut expected_v = CMatrix::zeros(kk);
    for n1 in 0..k {
        for n2 in 0..k {
            let col = fk_index(k, n1, n2);
            let (row, val) = match (n1 == k - 1, n2 == 0) {
                (false, false) => (fk_index(k, n1 + 1, n2 - 1), q(a * n2 as i64)),
                (true, false) => (
                    fk_index(k, 0, n2 - 1),
                    half_phi * half_q(k, -a * (k as i64 - 1 - n2 as i64)),
                ),
                (false, true) => (fk_index(k, n1 + 1, k - 1), half_phi * half_q(k, a * (k + n1) as i64)),
                (true, true) => (fk_index(k, 0, k - 1), phi),
            };
            expected_v[(row, col)] = val;
        }
    }
    let expected_h = CMatrix::diagonal(
        &(0..kk)
            .map(|i| Complex64::new((((i / k) * (i % k + 1)) as f64).sqrt(), 0.0))
            .collect::<Vec<_>>(),
    );
    Ok(v.max_abs_diff(&expected_v).max(h.max_abs_diff(&expected_h)))
}

/// Restriction of the quon-built `v_ra` to the subspace `ε(j)`,
/// `j = (k−1)/2`, spanned by `|j, m⟩ = |j+m, j−m)`. Row/column `κ` of the
/// result is `|j, j−κ⟩`.
pub fn quon_restrict(k: usize, r: Ratio<i64>, a: i64) -> Result<CMatrix> {
    let (_, v) = quon_build(k, r, a)?;
    let embed = |kappa: usize| fk_index(k, k - 1 - kappa, kappa);
    Ok(CMatrix::from_fn(k, |row, col| v[(embed(row), embed(col))]))
}

/// Largest deviation of the quon restriction from [`v_ra_matrix`], including
/// any leakage of `ε(j)` into its complement.
pub fn quon_restriction_residual(k: usize, r: Ratio<i64>, a: i64) -> Result<f64> {
    let (_, v) = quon_build(k, r, a)?;
    let direct = v_ra_matrix(&AngularParams::new(k, r, a)?).to_cmatrix();
    let restricted = quon_restrict(k, r, a)?;
    let inside: Vec<usize> = (0..k).map(|kappa| fk_index(k, k - 1 - kappa, kappa)).collect();
    let mut leak: f64 = 0.0;
    for &c in &inside {
        for row in 0..k * k {
            if !inside.contains(&row) {
                leak = leak.max(v[(row, c)].norm());
            }
        }
    }
    Ok(restricted.max_abs_diff(&direct).max(leak))
}
