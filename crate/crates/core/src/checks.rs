//! Batch runner for the library's invariant suite.
//!
//! Every property is an independent job; jobs run in parallel and results
//! come back in registration order so the report is deterministic.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gauss::{
    gauss_sum, overlap, second_neighbour_modulus, GaussMethod, GaussParams,
};
use crate::matrix::{is_hadamard, CMatrix, Matrix, PhaseMatrix};
use crate::mub::{
    basis, complete_set_prime, computational_basis, entanglement_det, is_prime, mub_d4,
    pairwise_reports, unbiased, Entanglement, Verdict,
};
use crate::pauli_group::{
    center, class_table, decomposition_dimension_identity, elements, group_axioms, group_inv,
    group_mul, is_ambivalent, jacobi_residual, nilpotent_class_two, pi2_diagnostics,
    pi4_versus_p2, pi_bracket_residual, realization_determinants, realization_float_residual,
    realization_is_homomorphism, verify_rep3, GroupElement,
};
use crate::phase::Phase;
use crate::qfourier::{
    expected_v0a_reduction, fourier_matrix, fourier_relations, parseval_check, qdft,
    reduce_v0a, QdftSpec,
};
use crate::su2::{
    eigen_equation_holds, eigenbasis_vra, pseudoinvariance_check, quon_restriction_residual,
    su2_commutation_residual, v_ra_matrix, AngularParams, QuonRep,
};
use crate::weyl::{
    all_indices, cartan_decomposition, d4_partition_search, hs_orthogonality_residual,
    ladder_action_holds, pauli_product, pauli_u, pseudo_weyl_relation, spread_d4,
    three_commuting_families, verify_cartan, verify_family, verify_spread,
    verify_structure_constants, weyl_relations, PauliIndex,
};

const SEED: u64 = 0x6d75_6266;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Small,
    Full,
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scale::Small => "small",
            Scale::Full => "full",
        })
    }
}

impl FromStr for Scale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "small" => Ok(Scale::Small),
            "full" => Ok(Scale::Full),
            other => Err(Error::InvalidArgument(format!("unknown scale '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CheckConfig {
    pub scale: Scale,
    pub tol: f64,
    /// Perturb one phase of the Fourier matrices fed to the suite.
    pub inject_fault: bool,
}

impl CheckConfig {
    pub fn new(scale: Scale) -> Self {
        CheckConfig {
            scale,
            tol: 1e-10,
            inject_fault: false,
        }
    }

    /// `small` when running at small scale, otherwise `full`.
    fn bound(&self, small: usize, full: usize) -> usize {
        match self.scale {
            Scale::Small => small,
            Scale::Full => full,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub module: &'static str,
    pub property: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}: {} ({})",
            if self.passed { "PASS" } else { "FAIL" },
            self.module,
            self.property,
            self.detail
        )
    }
}

type Job = fn(&CheckConfig) -> Result<(bool, String)>;

const JOBS: &[(&str, &str, Job)] = &[
    ("phase_core", "evaluation is multiplicative", phase_multiplicative),
    ("phase_core", "exact and float paths agree", exact_float_agreement),
    ("phase_core", "dagger reverses products", dagger_reverses),
    ("su2_polar", "v_ra is unitary", vra_unitary),
    ("su2_polar", "eigenbasis is orthonormal", eigenbasis_orthonormal),
    ("su2_polar", "eigenvalue equation holds exactly", eigen_equation),
    ("su2_polar", "rotations permute the eigenbasis", rotation_stability),
    ("su2_polar", "su(2) commutation relations", su2_commutators),
    ("su2_polar", "quon algebra relations", quon_relations),
    ("su2_polar", "quon restriction equals v_ra", quon_restriction),
    ("qfourier", "F_a is a complex Hadamard matrix", fourier_hadamard),
    ("qfourier", "F_a columns are the v_0a eigenvectors", fourier_columns),
    ("qfourier", "qdft is an isometry", qdft_isometry),
    ("qfourier", "F_a diagonalizes v_0a", v0a_reduction),
    ("qfourier", "Fourier matrix relations", fourier_identities),
    ("gauss", "closed forms, reciprocity and brute force agree", gauss_agreement),
    ("gauss", "overlap routes agree", overlap_routes),
    ("gauss", "first-neighbour overlaps have modulus 1/sqrt(d)", first_neighbour),
    ("gauss", "second-neighbour cosine law at u = 2", second_neighbour),
    ("mub", "complete sets for prime dimensions", prime_sets),
    ("mub", "B_(a-1), B_a and the computational basis are unbiased", three_bases),
    ("mub", "B_a and B_(a-2) unbiased exactly for odd d", second_neighbour_verdicts),
    ("mub", "entanglement determinant bound", entanglement_bound),
    ("mub", "four-level five-basis set", d4_set),
    ("weyl_pauli", "symbolic products match matrices", symbolic_products),
    ("weyl_pauli", "Weyl relations", weyl_pairs),
    ("weyl_pauli", "pseudo-Weyl relation", pseudo_weyl),
    ("weyl_pauli", "ladder action", ladder_actions),
    ("weyl_pauli", "Hilbert-Schmidt orthogonality", hs_orthogonality),
    ("weyl_pauli", "structure constants", structure_constants_check),
    ("weyl_pauli", "Cartan decomposition for primes", cartan),
    ("weyl_pauli", "two-qubit spread", spread),
    ("weyl_pauli", "four-level commuting triples", d4_partition),
    ("weyl_pauli", "three commuting families", families),
    ("pauli_group", "group axioms", axioms),
    ("pauli_group", "center is the phase subgroup", center_check),
    ("pauli_group", "nilpotent of class two", nilpotency),
    ("pauli_group", "matrix realization is a homomorphism", realization),
    ("pauli_group", "odd-d realizations have unit determinant", determinants),
    ("pauli_group", "conjugacy classes and irrep dimensions", classes),
    ("pauli_group", "faithful 3x3 representation", rep3),
    ("pauli_group", "Lie bracket matches matrix commutators", bracket),
    ("pauli_group", "Jacobi identity", jacobi),
    ("pauli_group", "eight-element group diagnostics", pi2),
    ("pauli_group", "not ambivalent for d >= 3", ambivalence),
    ("pauli_group", "Pi_4 differs from the two-qubit Pauli group", pi4_p2),
];

/// Runs every property and returns the outcomes in a fixed order.
pub fn check_all(cfg: &CheckConfig) -> Vec<CheckOutcome> {
    JOBS.par_iter()
        .map(|&(module, property, job)| {
            let start = Instant::now();
            let (passed, detail) = match job(cfg) {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            CheckOutcome {
                module,
                property,
                passed,
                detail,
                millis: start.elapsed().as_millis(),
            }
        })
        .collect()
}

fn verdict(ok: bool, detail: impl Into<String>) -> Result<(bool, String)> {
    Ok((ok, detail.into()))
}

fn cis(turns: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * turns)
}

/// `F_a`, with one exponent shifted when a fault is injected.
fn fourier(cfg: &CheckConfig, d: usize, a: i64) -> Result<PhaseMatrix> {
    let f = fourier_matrix(&QdftSpec::new(d, a)?);
    if !cfg.inject_fault || d != 3 {
        return Ok(f);
    }
    let order = f.order();
    PhaseMatrix::from_fn(d, order, f.norm(), |r, c| {
        let e = f.exponent(r, c).map(|e| e as i64);
        if (r, c) == (1, 1) {
            e.map(|e| e + 1)
        } else {
            e
        }
    })
}

fn fourier_float(d: usize, a: i64, k: usize, alpha: usize) -> Complex64 {
    let (d, k, alpha) = (d as i64, k as i64, alpha as i64);
    let e = (k + 1) * (d - k - 1) * a - 2 * (k + 1) * alpha;
    cis(e as f64 / (2 * d) as f64) / (d as f64).sqrt()
}

fn r_values() -> [Ratio<i64>; 3] {
    [Ratio::from_integer(0), Ratio::new(1, 2), Ratio::from_integer(1)]
}

fn phase_multiplicative(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(6, 12) as u64;
    let mut worst = 0.0f64;
    for n1 in 2..=top {
        for n2 in 2..=top {
            for e1 in 0..n1 {
                for e2 in 0..n2 {
                    let (p1, p2) = (Phase::new(n1, e1 as i64)?, Phase::new(n2, e2 as i64)?);
                    worst = worst.max(((p1 * p2).eval() - p1.eval() * p2.eval()).norm());
                }
            }
        }
    }
    verdict(worst < 1e-12, format!("orders 2..={top}, max error {worst:.2e}"))
}

fn exact_float_agreement(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(6, 12);
    let mut worst = 0.0f64;
    for d in 2..=top {
        let sd = (d as f64).sqrt();
        for a in 0..d as i64 {
            let f = fourier(cfg, d, a)?.to_cmatrix();
            worst = worst.max(f.max_abs_diff(&CMatrix::from_fn(d, |k, al| fourier_float(d, a, k, al))));
            for r in r_values() {
                let p = AngularParams::new(d, r, a)?;
                let rf = *r.numer() as f64 / *r.denom() as f64;
                let v = CMatrix::from_fn(d, |row, col| {
                    if col >= 1 && row == col - 1 {
                        cis((col as i64 * a) as f64 / d as f64)
                    } else if col == 0 && row == d - 1 {
                        cis((d - 1) as f64 * rf / 2.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                });
                worst = worst.max(v_ra_matrix(&p).to_cmatrix().max_abs_diff(&v));
                let j = (d as f64 - 1.0) / 2.0;
                let eb = eigenbasis_vra(&p).basis.as_columns();
                let ev = CMatrix::from_fn(d, |k, al| {
                    let (kf, alf, af) = (k as f64, al as f64, a as f64);
                    let e = (j * 2.0 - kf) * (kf + 1.0) * af / 2.0 - j * (j - kf) * rf
                        + (j * 2.0 - kf) * alf;
                    cis(e / d as f64) / sd
                });
                worst = worst.max(eb.max_abs_diff(&ev));
            }
            for b in 0..d as i64 {
                let u = pauli_u(d, PauliIndex::new(d, a, b))?.to_cmatrix();
                let x = CMatrix::from_fn(d, |r, c| {
                    if c == (r + 1) % d {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                });
                let z = CMatrix::diagonal(&(0..d).map(|k| cis(k as f64 / d as f64)).collect::<Vec<_>>());
                let oracle = x.pow(a as u32).mul(&z.pow(b as u32))?;
                worst = worst.max(u.max_abs_diff(&oracle));
            }
        }
    }
    verdict(worst < cfg.tol, format!("F_a, v_ra, eigenbases, u_ab for d<={top}, max error {worst:.2e}"))
}

fn dagger_reverses(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(5, 8);
    let mut count = 0;
    for d in 2..=top {
        let mut mats: Vec<PhaseMatrix> = all_indices(d)
            .into_iter()
            .map(|i| pauli_u(d, i))
            .collect::<Result<_>>()?;
        for a in 0..d as i64 {
            mats.push(v_ra_matrix(&AngularParams::new(d, Ratio::new(1, 2), a)?));
        }
        for x in &mats {
            for y in &mats {
                if x.mul_exact(y)?.dagger() != y.dagger().mul_exact(&x.dagger())? {
                    return verdict(false, format!("mismatch at d={d}"));
                }
                count += 1;
            }
        }
    }
    verdict(true, format!("{count} monomial pairs, d<={top}"))
}

fn vra_unitary(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(6, 12);
    for d in 2..=top {
        for a in 0..d as i64 {
            for r in r_values() {
                let v = v_ra_matrix(&AngularParams::new(d, r, a)?);
                if v.dim() != d || v.is_unitary_exact() != Some(true) {
                    return verdict(false, format!("d={d} a={a} r={r}"));
                }
            }
        }
    }
    verdict(true, format!("d<={top}, r in {{0,1/2,1}}"))
}

fn eigenbasis_orthonormal(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(6, 12);
    let mut worst = 0.0f64;
    for d in 2..=top {
        for a in 0..d as i64 {
            for r in r_values() {
                worst = worst.max(eigenbasis_vra(&AngularParams::new(d, r, a)?).basis.gram_residual());
            }
        }
    }
    verdict(worst < 1e-12, format!("d<={top}, max Gram residual {worst:.2e}"))
}

fn eigen_equation(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(6, 12);
    for d in 2..=top {
        for a in 0..d as i64 {
            for r in r_values() {
                if !eigen_equation_holds(&AngularParams::new(d, r, a)?) {
                    return verdict(false, format!("d={d} a={a} r={r}"));
                }
            }
        }
    }
    verdict(true, format!("d<={top}"))
}

fn rotation_stability(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(6, 12);
    for d in 2..=top {
        for p in 0..d as u64 {
            for a in 0..d as i64 {
                for r in r_values() {
                    if !pseudoinvariance_check(d, p, r, a)? {
                        return verdict(false, format!("d={d} p={p} a={a} r={r}"));
                    }
                }
            }
        }
    }
    verdict(true, format!("d<={top}, every rotation"))
}

fn su2_commutators(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(6, 10);
    let mut worst = 0.0f64;
    for d in 2..=top {
        for a in 0..d as i64 {
            for r in [Ratio::from_integer(0), Ratio::new(1, 2)] {
                worst = worst.max(su2_commutation_residual(&AngularParams::new(d, r, a)?));
            }
        }
    }
    verdict(worst < cfg.tol, format!("d<={top}, max residual {worst:.2e}"))
}

fn quon_relations(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(4, 6);
    let mut worst = 0.0f64;
    for k in 2..=top {
        worst = worst.max(QuonRep::new(k)?.relation_residual());
    }
    verdict(worst < cfg.tol, format!("k<={top}, max residual {worst:.2e}"))
}

fn quon_restriction(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(4, 6);
    let mut worst = 0.0f64;
    for k in 2..=top {
        for a in 0..k as i64 {
            for r in [Ratio::from_integer(0), Ratio::from_integer(1)] {
                worst = worst.max(quon_restriction_residual(k, r, a)?);
            }
        }
    }
    verdict(worst < cfg.tol, format!("k<={top}, max residual {worst:.2e}"))
}

fn fourier_hadamard(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(6, 16);
    for d in 2..=top {
        for a in 0..d as i64 {
            let f = fourier(cfg, d, a)?;
            let fc = f.to_cmatrix();
            let gram = fc.dagger().mul(&fc)?.snap(1, 1, cfg.tol);
            if gram != Some(PhaseMatrix::identity(d)) || !is_hadamard(&Matrix::Exact(f), cfg.tol) {
                return verdict(false, format!("d={d} a={a}"));
            }
        }
    }
    verdict(true, format!("d<={top}, every a"))
}

fn fourier_columns(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(6, 16);
    for d in 2..=top {
        for a in 0..d as i64 {
            let eb = eigenbasis_vra(&AngularParams::with_int_r(d, 0, a)?);
            if eb.basis.exact() != Some(&fourier(cfg, d, a)?) {
                return verdict(false, format!("d={d} a={a}"));
            }
        }
    }
    verdict(true, format!("d<={top}, exact equality"))
}

fn random_unit_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

fn qdft_isometry(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(6, 16);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for d in 2..=top {
        for a in 0..d as i64 {
            let spec = QdftSpec::new(d, a)?;
            for _ in 0..4 {
                let x = random_unit_vector(&mut rng, d);
                let x2 = random_unit_vector(&mut rng, d);
                let y = qdft(&x, &spec)?;
                let norm = y.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                let (lhs, rhs) = parseval_check(&x, &x2, &spec)?;
                worst = worst.max((norm - 1.0).abs()).max((lhs - rhs).norm());
            }
        }
    }
    verdict(worst < cfg.tol, format!("d<={top}, max error {worst:.2e}"))
}

fn v0a_reduction(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(6, 16);
    for d in 2..=top {
        for a in 0..d as i64 {
            let m = reduce_v0a(d, a)?;
            if !m.is_diagonal() || m != expected_v0a_reduction(d, a) {
                return verdict(false, format!("d={d} a={a}"));
            }
        }
    }
    verdict(true, format!("d<={top}"))
}

fn fourier_identities(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(6, 16);
    for d in 2..=top {
        let rel = fourier_relations(d, 1e-9)?;
        if !rel.all() {
            return verdict(false, format!("d={d}: {rel:?}"));
        }
    }
    verdict(true, format!("d<={top}"))
}

fn gauss_agreement(cfg: &CheckConfig) -> Result<(bool, String)> {
    let (umax, wmax) = (cfg.bound(6, 12) as i64, cfg.bound(8, 25) as i64);
    let params: Vec<GaussParams> = (-umax..=umax)
        .flat_map(|u| (-wmax..=wmax).map(move |w| (u, w)))
        .flat_map(|(u, w)| (-2 * w.abs()..=2 * w.abs()).map(move |v| (u, v, w)))
        .filter_map(|(u, v, w)| GaussParams::new(u, v, w).ok())
        .collect();
    let worst = params
        .par_iter()
        .map(|p| {
            let vals: Vec<Complex64> = GaussMethod::ALL.iter().map(|&m| gauss_sum(p, m)).collect();
            (vals[0] - vals[1]).norm().max((vals[0] - vals[2]).norm()).max((vals[1] - vals[2]).norm())
        })
        .reduce(|| 0.0, f64::max);
    verdict(
        worst < 1e-9,
        format!("{} triples, |u|<={umax}, |w|<={wmax}, max spread {worst:.2e}", params.len()),
    )
}

fn overlap_routes(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(6, 12);
    let mut worst = 0.0f64;
    for d in 2..=top {
        let du = d as u64;
        let w = (0..du * du)
            .into_par_iter()
            .map(|ab| -> Result<f64> {
                let (a, b) = (ab / du, ab % du);
                let mut m = 0.0f64;
                for alpha in 0..du {
                    for beta in 0..du {
                        m = m.max(overlap(d, a, alpha, b, beta)?.spread());
                    }
                }
                Ok(m)
            })
            .collect::<Result<Vec<f64>>>()?;
        worst = w.into_iter().fold(worst, f64::max);
    }
    verdict(worst < cfg.tol, format!("d<={top}, max spread {worst:.2e}"))
}

fn first_neighbour(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(6, 16);
    let mut worst = 0.0f64;
    for d in 2..=top {
        let du = d as u64;
        let target = 1.0 / (d as f64).sqrt();
        for a in 0..du {
            let b = (a + du - 1) % du;
            for alpha in 0..du {
                for beta in 0..du {
                    worst = worst.max((overlap(d, a, alpha, b, beta)?.value().norm() - target).abs());
                }
            }
        }
    }
    verdict(worst < cfg.tol, format!("d<={top}, max deviation {worst:.2e}"))
}

fn second_neighbour(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(6, 12);
    let mut worst = 0.0f64;
    let mut count = 0;
    for d in 3..=top {
        let du = d as u64;
        for a in 2..du {
            let b = a - 2;
            for alpha in 0..du {
                for beta in 0..du {
                    let got = overlap(d, a, alpha, b, beta)?.value().norm();
                    worst = worst.max((got - second_neighbour_modulus(d, alpha, beta)).abs());
                    count += 1;
                }
            }
        }
    }
    verdict(worst < cfg.tol, format!("{count} overlaps, 3<=d<={top}, max deviation {worst:.2e}"))
}

fn prime_sets(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(7, 31) as u64;
    let primes: Vec<u64> = (2..=top).filter(|&p| is_prime(p)).collect();
    for &p in &primes {
        let bases = complete_set_prime(p)?;
        let reports = pairwise_reports(&bases, cfg.tol)?;
        if bases.len() != p as usize + 1 || reports.iter().any(|r| r.verdict != Verdict::Unbiased) {
            return verdict(false, format!("p={p}"));
        }
    }
    verdict(true, format!("primes {primes:?}"))
}

fn three_bases(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(6, 16);
    for d in 2..=top {
        for a in 0..d as i64 {
            let set = [basis(d, (a - 1).rem_euclid(d as i64))?, basis(d, a)?, computational_basis(d)];
            if pairwise_reports(&set, cfg.tol)?.iter().any(|r| r.verdict != Verdict::Unbiased) {
                return verdict(false, format!("d={d} a={a}"));
            }
        }
    }
    verdict(true, format!("d<={top}"))
}

fn second_neighbour_verdicts(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(6, 12);
    for d in 3..=top {
        for a in 0..d as i64 {
            let r = unbiased(&basis(d, a)?, &basis(d, (a - 2).rem_euclid(d as i64))?, cfg.tol)?;
            let expected = if d % 2 == 1 { Verdict::Unbiased } else { Verdict::Neither };
            if r.verdict != expected {
                return verdict(false, format!("d={d} a={a}: {}", r.verdict));
            }
        }
    }
    verdict(true, format!("3<=d<={top}"))
}

fn entanglement_bound(cfg: &CheckConfig) -> Result<(bool, String)> {
    let samples = cfg.bound(200, 2000);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    for d in [2usize, 3] {
        let bound = 1.0 / (d.pow(d as u32) as f64).sqrt() + 1e-9;
        for _ in 0..samples {
            let v = random_unit_vector(&mut rng, d * d);
            let (det, _) = entanglement_det(&v, d)?;
            if det > bound {
                return verdict(false, format!("d={d}: |det| {det} exceeds {bound}"));
            }
        }
    }
    verdict(true, format!("{samples} random vectors each for d=2,3"))
}

fn d4_set(cfg: &CheckConfig) -> Result<(bool, String)> {
    let bases = mub_d4();
    if pairwise_reports(&bases, cfg.tol)?.iter().any(|r| r.verdict != Verdict::Unbiased) {
        return verdict(false, "not pairwise unbiased");
    }
    for b in &bases[1..] {
        let name = b.label().to_string();
        let want = if name == "w00" || name == "w11" {
            Entanglement::Product
        } else {
            Entanglement::Maximal
        };
        for v in b.vectors() {
            if entanglement_det(v, 2)?.1 != want {
                return verdict(false, format!("{name}: expected {want:?}"));
            }
        }
    }
    verdict(true, "five bases, w00/w11 product, w01/w10 maximal")
}

fn symbolic_products(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(6, 12);
    for d in 2..=top {
        let idx = all_indices(d);
        let mats: Vec<PhaseMatrix> = idx.iter().map(|&i| pauli_u(d, i)).collect::<Result<_>>()?;
        let bad = (0..idx.len()).into_par_iter().any(|i| {
            (0..idx.len()).any(|j| {
                let (e, k) = pauli_product(d, idx[i], idx[j]);
                let want = pauli_u(d, k)
                    .expect("valid index")
                    .times_phase(Phase::new(d as u64, e as i64).expect("d >= 2"));
                mats[i].mul_exact(&mats[j]).expect("monomial") != want
            })
        });
        if bad {
            return verdict(false, format!("d={d}"));
        }
    }
    verdict(true, format!("d<={top}, all pairs"))
}

fn weyl_pairs(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(6, 16);
    for d in 2..=top {
        if !weyl_relations(d)?.all() {
            return verdict(false, format!("d={d}"));
        }
    }
    verdict(true, format!("d<={top}"))
}

fn pseudo_weyl(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(6, 12);
    for d in 2..=top {
        for a in 0..d as i64 {
            if !pseudo_weyl_relation(d, a)? {
                return verdict(false, format!("d={d} a={a}"));
            }
        }
    }
    verdict(true, format!("d<={top}, every a"))
}

fn ladder_actions(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(6, 12);
    for d in 2..=top {
        for i in all_indices(d) {
            if !ladder_action_holds(d, i)? {
                return verdict(false, format!("d={d} {i}"));
            }
        }
    }
    verdict(true, format!("d<={top}"))
}

fn hs_orthogonality(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(6, 10);
    let mut worst = 0.0f64;
    for d in 2..=top {
        worst = worst.max(hs_orthogonality_residual(d)?);
    }
    verdict(worst < cfg.tol, format!("d<={top}, max residual {worst:.2e}"))
}

fn structure_constants_check(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(6, 12);
    let mut worst = 0.0f64;
    for d in 2..=top {
        let (err, pattern) = verify_structure_constants(d)?;
        if !pattern {
            return verdict(false, format!("vanishing pattern wrong at d={d}"));
        }
        worst = worst.max(err);
    }
    verdict(worst < cfg.tol, format!("d<={top}, max error {worst:.2e}"))
}

fn cartan(cfg: &CheckConfig) -> Result<(bool, String)> {
    let primes: &[u64] = match cfg.scale {
        Scale::Small => &[2, 3, 5, 7],
        Scale::Full => &[2, 3, 5, 7, 11],
    };
    for &p in primes {
        let sets = cartan_decomposition(p)?;
        let report = verify_cartan(p, &sets, cfg.tol)?;
        if sets.len() != p as usize + 1 || !report.all() {
            return verdict(false, format!("p={p}: {report:?}"));
        }
    }
    let v3: Vec<(u64, u64)> = cartan_decomposition(7)?[3].members.iter().map(|i| (i.a, i.b)).collect();
    let row = [(1, 2), (2, 4), (3, 6), (4, 1), (5, 3), (6, 5)];
    verdict(v3 == row, format!("primes {primes:?}; V_3 at p=7 = {v3:?}"))
}

fn spread(cfg: &CheckConfig) -> Result<(bool, String)> {
    let report = verify_spread(&spread_d4(), cfg.tol)?;
    verdict(report.all(), format!("{report:?}"))
}

fn d4_partition(_: &CheckConfig) -> Result<(bool, String)> {
    let r = d4_partition_search();
    verdict(
        r.max_disjoint == 3,
        format!("{} commuting triples, at most {} disjoint", r.commuting_triples.len(), r.max_disjoint),
    )
}

fn families(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(6, 8);
    for d in 2..=top {
        for fam in three_commuting_families(d)? {
            if !verify_family(d, &fam, 1e-9)? {
                return verdict(false, format!("d={d} {}", fam.name));
            }
        }
    }
    verdict(true, format!("d<={top}"))
}

fn axioms(cfg: &CheckConfig) -> Result<(bool, String)> {
    for d in 2..=4 {
        if !group_axioms(d).all() {
            return verdict(false, format!("d={d}"));
        }
    }
    let top = cfg.bound(6, 8) as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let samples = cfg.bound(2000, 20000);
    for d in 5..=top {
        let mut pick = || {
            let n = d as i64;
            GroupElement::new(d, rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))
        };
        for _ in 0..samples {
            let (x, y, z) = (pick(), pick(), pick());
            let e = GroupElement::IDENTITY;
            let ok = group_mul(d, group_mul(d, x, y), z) == group_mul(d, x, group_mul(d, y, z))
                && group_mul(d, x, group_inv(d, x)) == e
                && group_mul(d, group_inv(d, x), x) == e
                && group_mul(d, e, x) == x
                && group_mul(d, x, e) == x;
            if !ok {
                return verdict(false, format!("d={d} at {x:?} {y:?} {z:?}"));
            }
        }
    }
    verdict(true, format!("exhaustive d<=4, {samples} samples each for 5<=d<={top}"))
}

fn center_check(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(5, 6) as u64;
    for d in 2..=top {
        let mut z: Vec<[u64; 3]> = center(d).iter().map(|g| g.triple()).collect();
        z.sort();
        let want: Vec<[u64; 3]> = (0..d).map(|a| [a, 0, 0]).collect();
        if z != want {
            return verdict(false, format!("d={d}: {z:?}"));
        }
    }
    verdict(true, format!("d<={top}"))
}

fn nilpotency(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(5, 6) as u64;
    for d in 2..=top {
        if !nilpotent_class_two(d) {
            return verdict(false, format!("d={d}"));
        }
    }
    verdict(true, format!("d<={top}"))
}

fn realization(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(5, 8) as u64;
    let mut worst = 0.0f64;
    for d in 2..=top {
        if !realization_is_homomorphism(d)? {
            return verdict(false, format!("d={d}"));
        }
        worst = worst.max(realization_float_residual(d)?);
    }
    verdict(worst < cfg.tol, format!("exact for d<={top}, float residual {worst:.2e}"))
}

fn determinants(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(6, 8) as u64;
    let mut even_nontrivial = Vec::new();
    for d in 2..=top {
        let dets = realization_determinants(d)?;
        let all_one = dets.iter().all(|(_, p)| p.is_one());
        if d % 2 == 1 && !all_one {
            return verdict(false, format!("d={d} has a determinant other than 1"));
        }
        if d % 2 == 0 && !all_one {
            even_nontrivial.push(d);
        }
    }
    verdict(true, format!("det=1 for odd d<={top}; even d with det!=1: {even_nontrivial:?}"))
}

/// Class sizes predicted by the commutator image: `w_abc` is conjugate to
/// `w_{a+t, b, c}` for `t` in the subgroup generated by `gcd(b, c, d)`.
fn predicted_class_profile(d: u64) -> BTreeMap<usize, usize> {
    let mut profile = BTreeMap::new();
    for b in 0..d {
        for c in 0..d {
            let g = b.gcd(&c).gcd(&d);
            *profile.entry((d / g) as usize).or_insert(0) += g as usize;
        }
    }
    profile
}

fn classes(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(5, 6) as u64;
    for d in 2..=top {
        let t = class_table(d)?;
        let predicted = predicted_class_profile(d);
        let count: usize = predicted.values().sum();
        let mut ok = t.size_profile() == predicted
            && t.class_count() == count
            && t.irrep_dims.len() == count
            && t.irrep_dims.iter().map(|x| x * x).sum::<u64>() == d * d * d;
        if is_prime(d) {
            ok &= count == (d * (d + 1) - 1) as usize
                && decomposition_dimension_identity(d, &t.irrep_dims);
        }
        if !ok {
            return verdict(false, format!("d={d}: profile {:?}", t.size_profile()));
        }
    }
    verdict(
        true,
        format!("d<={top}: d(d+1)-1 classes for prime d, gcd-predicted profile for all d"),
    )
}

fn rep3(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(3, 5) as u64;
    for d in 2..=top {
        let r = verify_rep3(d);
        if !(r.homomorphism && r.injective) {
            return verdict(false, format!("d={d}: {r:?}"));
        }
    }
    verdict(true, format!("exhaustive for d<={top}"))
}

fn bracket(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(4, 6) as u64;
    let mut worst = 0.0f64;
    for d in 2..=top {
        worst = worst.max(pi_bracket_residual(d)?);
    }
    verdict(worst < cfg.tol, format!("d<={top}, max residual {worst:.2e}"))
}

fn jacobi(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(4, 6) as u64;
    let samples = cfg.bound(50, 300);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let mut worst = 0.0f64;
    for d in 2..=top {
        let els = elements(d);
        for _ in 0..samples {
            let mut pick = || els[rng.gen_range(0..els.len())];
            let (g, h, k) = (pick(), pick(), pick());
            worst = worst.max(jacobi_residual(d, g, h, k)?);
        }
    }
    verdict(worst < cfg.tol, format!("{samples} triples each for d<={top}, max residual {worst:.2e}"))
}

fn pi2(_: &CheckConfig) -> Result<(bool, String)> {
    let diag = pi2_diagnostics()?;
    verdict(
        diag.all_hold(),
        format!(
            "order {}, class sizes {:?}, irrep dims {:?}, doubled group of order {}",
            diag.order, diag.class_sizes, diag.irrep_dims, diag.doubled_size
        ),
    )
}

fn ambivalence(cfg: &CheckConfig) -> Result<(bool, String)> {
    let top = cfg.bound(4, 5) as u64;
    let bad: Vec<u64> = (3..=top).filter(|&d| is_ambivalent(d)).collect();
    verdict(bad.is_empty() && is_ambivalent(2), format!("3<=d<={top}; ambivalent: {bad:?}"))
}

fn pi4_p2(_: &CheckConfig) -> Result<(bool, String)> {
    let r = pi4_versus_p2()?;
    verdict(
        r.distinguished(),
        format!("element orders {:?} vs {:?}", r.pi4.element_orders, r.p2.element_orders),
    )
}
