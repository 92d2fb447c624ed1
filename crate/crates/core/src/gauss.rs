//! Quadratic residue symbols, modular inverses and generalized quadratic
//! Gauss sums `S(u, v, w) = Σ_{k<|w|} exp(iπ(uk² + vk)/w)`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::phase::Phase;
use crate::qfourier::{fourier_matrix, QdftSpec};

/// Legendre symbol `(a|b)` for odd `b ≥ 3` coprime to `a`, by enumerating
/// the squares mod `b`: `+1` if `a` is a square mod `b`, `−1` otherwise.
///
/// For composite `b` this is the residue indicator, which differs from the
/// Jacobi symbol; see [`jacobi`].
pub fn legendre(a: i64, b: i64) -> Result<i8> {
    if b < 3 || b % 2 == 0 {
        return Err(Error::InvalidArgument(format!("modulus {b} must be odd and at least 3")));
    }
    if a.gcd(&b) != 1 {
        return Err(Error::NotCoprime { a, b });
    }
    let target = a.rem_euclid(b);
    let is_square = (1..b).any(|x| (x * x) % b == target);
    Ok(if is_square { 1 } else { -1 })
}

/// Jacobi symbol `(a|n)` for odd `n ≥ 1`; `(a|1) = 1`, and `0` when
/// `gcd(a, n) > 1`.
pub fn jacobi(a: i64, n: i64) -> Result<i8> {
    if n < 1 || n % 2 == 0 {
        return Err(Error::InvalidArgument(format!("Jacobi modulus {n} must be odd and positive")));
    }
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}

/// Smallest non-negative `x` with `a·x ≡ 1 (mod b)`.
pub fn mod_inverse(a: i64, b: i64) -> Result<i64> {
    if b < 1 {
        return Err(Error::InvalidArgument(format!("modulus {b} must be positive")));
    }
    let e = a.extended_gcd(&b);
    if e.gcd.abs() != 1 {
        return Err(Error::NotCoprime { a, b });
    }
    Ok((e.x * e.gcd).rem_euclid(b))
}

/// Parameters of `S(u, v, w)`: `gcd(u, w) = 1`, `uw ≠ 0`, `uw + v` even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaussParams {
    u: i64,
    v: i64,
    w: i64,
}

impl GaussParams {
    pub fn new(u: i64, v: i64, w: i64) -> Result<Self> {
        let bad = |reason| Err(Error::InvalidGaussParams { u, v, w, reason });
        if u == 0 || w == 0 {
            return bad("u·w must be nonzero");
        }
        if u.gcd(&w) != 1 {
            return bad("u and w must be coprime");
        }
        if (u * w + v).rem_euclid(2) != 0 {
            return bad("u·w + v must be even");
        }
        Ok(Self { u, v, w })
    }

    pub fn u(&self) -> i64 {
        self.u
    }

    pub fn v(&self) -> i64 {
        self.v
    }

    pub fn w(&self) -> i64 {
        self.w
    }
}

/// Parity signature `(u, v, |w|)` selecting a closed form.
///
/// For valid parameters these three are the only possibilities: `w` odd
/// forces `v ≡ u (mod 2)`, and `w` even forces `u` odd (coprimality) and
/// then `v` even. The signatures `(even, odd, ·)`, `(odd, even, odd)`,
/// `(odd, odd, even)` and `(even, ·, even)` are therefore unreachable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityCase {
    EvenEvenOdd,
    OddOddOdd,
    OddEvenEven,
}

pub fn parity_case(p: &GaussParams) -> ParityCase {
    match (p.u.rem_euclid(2), p.w.rem_euclid(2)) {
        (0, 1) => ParityCase::EvenEvenOdd,
        (1, 1) => ParityCase::OddOddOdd,
        (1, 0) => ParityCase::OddEvenEven,
        _ => unreachable!("u and w coprime"),
    }
}

/// Which evaluation path to use for `S(u, v, w)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaussMethod {
    Brute,
    Closed,
    Reciprocity,
}

impl GaussMethod {
    pub const ALL: [GaussMethod; 3] = [GaussMethod::Brute, GaussMethod::Closed, GaussMethod::Reciprocity];
}

impl fmt::Display for GaussMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GaussMethod::Brute => "brute",
            GaussMethod::Closed => "closed",
            GaussMethod::Reciprocity => "reciprocity",
        })
    }
}

impl FromStr for GaussMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(GaussMethod::Brute),
            "closed" => Ok(GaussMethod::Closed),
            "reciprocity" => Ok(GaussMethod::Reciprocity),
            other => Err(Error::InvalidArgument(format!("unknown Gauss sum method '{other}'"))),
        }
    }
}

pub fn gauss_sum(p: &GaussParams, method: GaussMethod) -> Complex64 {
    match method {
        GaussMethod::Brute => gauss_brute(p),
        GaussMethod::Closed => gauss_closed(p),
        GaussMethod::Reciprocity => reciprocity(p),
    }
}

/// Direct summation. Terms are binned by their exact exponent over order
/// `2|w|`, then each distinct root is evaluated once.
pub fn gauss_brute(p: &GaussParams) -> Complex64 {
    direct_sum(p.u, p.v, p.w)
}

/// The defining sum without the coprimality requirement, which only the
/// closed forms need. Requires `w ≠ 0`.
fn direct_sum(u: i64, v: i64, w: i64) -> Complex64 {
    let n = w.unsigned_abs();
    let order = 2 * n;
    let sign = w.signum() as i128;
    let mut counts = vec![0u64; order as usize];
    for k in 0..n as i128 {
        let e = sign * (u as i128 * k * k + v as i128 * k);
        counts[e.rem_euclid(order as i128) as usize] += 1;
    }
    counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(e, &c)| Phase::of(order, e as i64).eval() * c as f64)
        .sum()
}

/// `exp(−iπ·num/(4·den))` as an exact phase.
fn eighth_turn_phase(num: i128, den: i128) -> Phase {
    // −num/(8·den) turns
    let (num, den) = if den < 0 { (-num, -8 * den) } else { (num, 8 * den) };
    let g = num.gcd(&den);
    let (num, den) = (-num / g, den / g);
    Phase::of(den as u64, num.rem_euclid(den) as i64)
}

/// Closed forms by parity signature (`w > 0`; negative `w` by conjugation).
///
/// The quadratic symbol is evaluated as a Jacobi symbol, which is what the
/// evaluation requires when `w` (or `u`) is composite.
pub fn gauss_closed(p: &GaussParams) -> Complex64 {
    if p.w < 0 {
        let pos = GaussParams { w: -p.w, ..*p };
        return gauss_closed(&pos).conj();
    }
    let (u, v, w) = (p.u as i128, p.v as i128, p.w as i128);
    let sqrt_w = (p.w as f64).sqrt();
    let (symbol, phase) = match parity_case(p) {
        ParityCase::EvenEvenOdd => {
            let inv = mod_inverse(p.u, p.w).expect("coprime") as i128;
            // w − 1 + (u/w)·inv²·v²
            let num = (w - 1) * w + u * inv * inv * v * v;
            (jacobi(p.u, p.w).expect("odd w"), eighth_turn_phase(num, w))
        }
        ParityCase::OddOddOdd => {
            let inv = mod_inverse(4 * p.u, p.w).expect("coprime") as i128;
            let num = (w - 1) * w + 16 * u * inv * inv * v * v;
            (jacobi(p.u, p.w).expect("odd w"), eighth_turn_phase(num, w))
        }
        ParityCase::OddEvenEven => {
            let inv = mod_inverse(p.u, p.w).expect("coprime") as i128;
            // u·(−1 + inv²·v²/w)
            let num = u * (-w + inv * inv * v * v);
            (jacobi(p.w, p.u.abs()).expect("odd u"), eighth_turn_phase(num, w))
        }
    };
    phase.eval() * (sqrt_w * symbol as f64)
}

/// `S(u,v,w) = √|w/u|·exp(iπ[sgn(uw) − v²/(uw)]/4)·S(−w, −v, u)`, with the
/// right-hand sum evaluated directly over `|u|` terms.
pub fn reciprocity(p: &GaussParams) -> Complex64 {
    let (u, v, w) = (p.u as i128, p.v as i128, p.w as i128);
    let uw = u * w;
    // [sgn(uw)·uw − v²]/(uw) = (|uw| − v²)/(uw), negated for the helper
    let phase = eighth_turn_phase(-(uw.abs() - v * v), uw);
    let inner = GaussParams {
        u: -p.w,
        v: -p.v,
        w: p.u,
    };
    let scale = (p.w.unsigned_abs() as f64 / p.u.unsigned_abs() as f64).sqrt();
    phase.eval() * scale * gauss_brute(&inner)
}

/// `⟨aα|bβ⟩` by three independent routes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Overlap {
    /// Inner product of column `α` of `F_a` with column `β` of `F_b`.
    pub direct: Complex64,
    /// Entry `(α, β)` of the dense product `F_a† F_b`.
    pub matrix: Complex64,
    /// `S(u, v, d)/d` with `u = a − b`, `v = −(a−b)d + 2(α−β)`, summed
    /// directly; `None` when `a = b`.
    pub gauss: Option<Complex64>,
}

impl Overlap {
    pub fn value(&self) -> Complex64 {
        self.direct
    }

    /// Largest pairwise disagreement among the available routes.
    pub fn spread(&self) -> f64 {
        let mut s = (self.direct - self.matrix).norm();
        if let Some(g) = self.gauss {
            s = s.max((g - self.direct).norm()).max((g - self.matrix).norm());
        }
        s
    }
}

/// Gauss-sum parameters `(u, v, w)` of `⟨aα|bβ⟩`, for `a ≠ b` with
/// `gcd(a − b, d) = 1`.
pub fn overlap_params(d: usize, a: u64, alpha: u64, b: u64, beta: u64) -> Result<GaussParams> {
    let (a, b, alpha, beta, di) = (a as i64, b as i64, alpha as i64, beta as i64, d as i64);
    GaussParams::new(a - b, -(a - b) * di + 2 * (alpha - beta), di)
}

pub fn overlap(d: usize, a: u64, alpha: u64, b: u64, beta: u64) -> Result<Overlap> {
    let dd = d as u64;
    if a >= dd || b >= dd || alpha >= dd || beta >= dd {
        return Err(Error::InvalidArgument(format!(
            "indices must lie in 0..{d}: a={a} alpha={alpha} b={b} beta={beta}"
        )));
    }
    let fa = fourier_matrix(&QdftSpec::new(d, a as i64)?).to_cmatrix();
    let fb = fourier_matrix(&QdftSpec::new(d, b as i64)?).to_cmatrix();
    let direct = (0..d)
        .map(|k| fa[(k, alpha as usize)].conj() * fb[(k, beta as usize)])
        .sum();
    let matrix = fa.dagger().mul(&fb)?[(alpha as usize, beta as usize)];
    let gauss = if a == b {
        None
    } else {
        let (u, v) = (a as i64 - b as i64, -(a as i64 - b as i64) * d as i64 + 2 * (alpha as i64 - beta as i64));
        Some(direct_sum(u, v, d as i64) / d as f64)
    };
    Ok(Overlap { direct, matrix, gauss })
}

/// `√(2/d)·|cos(π(d − 2α + 2β)/4)|`, the predicted modulus of `⟨aα|(a⊖2)β⟩`.
pub fn second_neighbour_modulus(d: usize, alpha: u64, beta: u64) -> f64 {
    let x = std::f64::consts::PI * (d as f64 - 2.0 * alpha as f64 + 2.0 * beta as f64) / 4.0;
    (2.0 / d as f64).sqrt() * x.cos().abs()
}
