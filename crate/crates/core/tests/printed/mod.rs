//! Published matrices and vectors, transcribed entry by entry.
//!
//! Shared by the golden tests and the acceptance run; not every includer
//! uses every table.
#![allow(dead_code)]

use mubforge::{root_of_unity, Phase, PhaseMatrix};
use num_complex::Complex64;

/// `0`, `±1`, `±i`, `w`, `w2` (ω = e^{2πi/3}), `q`, `q2` (same ω at d = 3),
/// `t`, `t2`, `-t`, `-t2` (τ = e^{−iπ/3}).
pub fn token(s: &str) -> Option<Phase> {
    let (n, e) = match s {
        "0" => return None,
        "1" => (1, 0),
        "-1" => (2, 1),
        "i" => (4, 1),
        "-i" => (4, 3),
        "w" | "q" => (3, 1),
        "w2" | "q2" => (3, 2),
        "t" => (6, 5),
        "t2" => (6, 4),
        "-t" => (6, 2),
        "-t2" => (6, 1),
        other => panic!("unknown token {other}"),
    };
    Some(root_of_unity(n, e).unwrap())
}

/// Rows separated by `;`, entries by whitespace; `norm` is the `1/√norm` prefactor.
pub fn table(norm: u64, src: &str) -> PhaseMatrix {
    let rows: Vec<Vec<Option<Phase>>> = src
        .split(';')
        .map(|r| r.split_whitespace().map(token).collect())
        .collect();
    let d = rows.len();
    assert!(rows.iter().all(|r| r.len() == d), "ragged table {src}");
    PhaseMatrix::from_phases(d, norm, &rows.concat()).unwrap()
}

/// `(d, a, F_a)` with the prefactor `1/√d`.
pub const FOURIER: &[(usize, i64, &str)] = &[
    (2, 0, "1 -1; 1 1"),
    (2, 1, "i -i; 1 1"),
    (3, 0, "1 w2 w; 1 w w2; 1 1 1"),
    (3, 1, "w 1 w2; w w2 1; 1 1 1"),
    (3, 2, "w2 w 1; w2 1 w; 1 1 1"),
    (
        6,
        0,
        "1 t t2 -1 -t -t2;
         1 t2 -t 1 t2 -t;
         1 -1 1 -1 1 -1;
         1 -t t2 1 -t t2;
         1 -t2 -t -1 t2 t;
         1 1 1 1 1 1",
    ),
];

/// `((a, b), X^a Z^b)` at d = 2: identity, X, Z and Y = XZ.
pub const PAULI_2: &[((i64, i64), &str)] = &[
    ((0, 0), "1 0; 0 1"),
    ((1, 0), "0 1; 1 0"),
    ((0, 1), "1 0; 0 -1"),
    ((1, 1), "0 -1; 1 0"),
];

pub const PAULI_3: &[((i64, i64), &str)] = &[
    ((0, 0), "1 0 0; 0 1 0; 0 0 1"),
    ((1, 0), "0 1 0; 0 0 1; 1 0 0"),
    ((2, 0), "0 0 1; 1 0 0; 0 1 0"),
    ((0, 1), "1 0 0; 0 q 0; 0 0 q2"),
    ((1, 1), "0 q 0; 0 0 q2; 1 0 0"),
    ((2, 1), "0 0 q2; 1 0 0; 0 q 0"),
    ((0, 2), "1 0 0; 0 q2 0; 0 0 q"),
    ((1, 2), "0 q2 0; 0 0 q; 1 0 0"),
    ((2, 2), "0 0 q; 1 0 0; 0 q2 0"),
];

/// Z and X²Z carry a stray 1 in print; these are the unitary forms, see
/// [`Z4_AS_PRINTED`] and [`X2Z4_AS_PRINTED`].
pub const PAULI_4: &[((i64, i64), &str)] = &[
    ((0, 0), "1 0 0 0; 0 1 0 0; 0 0 1 0; 0 0 0 1"),
    ((1, 0), "0 1 0 0; 0 0 1 0; 0 0 0 1; 1 0 0 0"),
    ((2, 0), "0 0 1 0; 0 0 0 1; 1 0 0 0; 0 1 0 0"),
    ((3, 0), "0 0 0 1; 1 0 0 0; 0 1 0 0; 0 0 1 0"),
    ((0, 1), "1 0 0 0; 0 i 0 0; 0 0 -1 0; 0 0 0 -i"),
    ((1, 1), "0 i 0 0; 0 0 -1 0; 0 0 0 -i; 1 0 0 0"),
    ((2, 1), "0 0 -1 0; 0 0 0 -i; 1 0 0 0; 0 i 0 0"),
    ((3, 1), "0 0 0 -i; 1 0 0 0; 0 i 0 0; 0 0 -1 0"),
    ((0, 2), "1 0 0 0; 0 -1 0 0; 0 0 1 0; 0 0 0 -1"),
    ((1, 2), "0 -1 0 0; 0 0 1 0; 0 0 0 -1; 1 0 0 0"),
    ((2, 2), "0 0 1 0; 0 0 0 -1; 1 0 0 0; 0 -1 0 0"),
    ((3, 2), "0 0 0 -1; 1 0 0 0; 0 -1 0 0; 0 0 1 0"),
    ((0, 3), "1 0 0 0; 0 -i 0 0; 0 0 -1 0; 0 0 0 i"),
    ((1, 3), "0 -i 0 0; 0 0 -1 0; 0 0 0 i; 1 0 0 0"),
    ((2, 3), "0 0 -1 0; 0 0 0 i; 1 0 0 0; 0 -i 0 0"),
    ((3, 3), "0 0 0 i; 1 0 0 0; 0 -i 0 0; 0 0 -1 0"),
];

pub const Z4_AS_PRINTED: &str = "1 0 0 0; 0 i 0 0; 0 0 -1 0; 1 0 0 -i";
pub const X2Z4_AS_PRINTED: &str = "0 0 -1 0; 0 0 0 -i; 1 0 0 0; 0 i 1 0";

/// Members of `V_0 … V_7` at p = 7, written `ab`.
pub const CARTAN_7: [&str; 8] = [
    "01 02 03 04 05 06",
    "10 20 30 40 50 60",
    "11 22 33 44 55 66",
    "12 24 36 41 53 65",
    "13 26 32 45 51 64",
    "14 21 35 42 56 63",
    "15 23 31 46 54 62",
    "16 25 34 43 52 61",
];

pub const SPREAD: [&str; 5] = [
    "(1011) (1101) (0110)",
    "(1110) (1001) (0111)",
    "(1010) (1000) (0010)",
    "(1111) (1100) (0011)",
    "(0101) (0100) (0001)",
];

/// The four-level bases `w00, w11, w01, w10`, each vector `½(c₀, c₁, c₂, c₃)`
/// over `αα, αβ, βα, ββ`.
pub const D4_BASES: [(&str, [[&str; 4]; 4]); 4] = [
    (
        "w00",
        [["1", "1", "1", "1"], ["1", "-1", "1", "-1"], ["1", "1", "-1", "-1"], ["1", "-1", "-1", "1"]],
    ),
    (
        "w11",
        [["1", "i", "i", "-1"], ["1", "-i", "i", "1"], ["1", "i", "-i", "1"], ["1", "-i", "-i", "-1"]],
    ),
    (
        "w01",
        [["1", "1", "-i", "i"], ["1", "-1", "i", "i"], ["1", "-1", "-i", "-i"], ["1", "1", "i", "-i"]],
    ),
    (
        "w10",
        [["1", "-i", "1", "i"], ["1", "i", "-1", "i"], ["1", "i", "1", "-i"], ["1", "-i", "-1", "-i"]],
    ),
];

pub fn half(coeffs: &[&str; 4]) -> Vec<Complex64> {
    coeffs.iter().map(|s| token(s).unwrap().eval() * 0.5).collect()
}

/// Same set of rays: every expected vector equals some computed vector up to
/// a unimodular factor, and the match is one-to-one.
pub fn same_rays(got: &[Vec<Complex64>], want: &[Vec<Complex64>]) -> bool {
    let mut used = vec![false; got.len()];
    want.iter().all(|w| {
        let hit = got.iter().enumerate().position(|(i, g)| {
            let ip: Complex64 = g.iter().zip(w).map(|(x, y)| x.conj() * y).sum();
            !used[i] && (ip.norm() - 1.0).abs() < 1e-12
        });
        match hit {
            Some(i) => {
                used[i] = true;
                true
            }
            None => false,
        }
    })
}
