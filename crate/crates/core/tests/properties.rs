use mubforge::gauss::{gauss_sum, overlap, second_neighbour_modulus, GaussMethod, GaussParams};
use mubforge::mub::{basis, entanglement_det, unbiased, Verdict};
use mubforge::pauli_group::{
    class_table, group_inv, group_mul, mat3_mul, rep3, GroupElement,
};
use mubforge::qfourier::{iqdft, qdft, QdftSpec};
use mubforge::weyl::{pauli_product, pauli_u, PauliIndex};
use mubforge::{root_of_unity, Phase};
use num_complex::Complex64;
use proptest::prelude::*;

fn vector(len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), len)
        .prop_map(|v| v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
}

proptest! {
    #[test]
    fn phase_product_evaluates_as_product(n1 in 1u64..40, e1 in -100i64..100, n2 in 1u64..40, e2 in -100i64..100) {
        let (p, q) = (root_of_unity(n1, e1).unwrap(), root_of_unity(n2, e2).unwrap());
        prop_assert!(((p * q).eval() - p.eval() * q.eval()).norm() < 1e-12);
        prop_assert!((p * p.conj()).is_one());
    }

    #[test]
    fn monomial_dagger_reverses_products(d in 2usize..9, a1 in 0i64..9, b1 in 0i64..9, a2 in 0i64..9, b2 in 0i64..9) {
        let x = pauli_u(d, PauliIndex::new(d, a1, b1)).unwrap();
        let y = pauli_u(d, PauliIndex::new(d, a2, b2)).unwrap();
        prop_assert_eq!(x.mul_exact(&y).unwrap().dagger(), y.dagger().mul_exact(&x.dagger()).unwrap());
    }

    #[test]
    fn pauli_product_law(d in 2usize..13, a1 in 0i64..13, b1 in 0i64..13, a2 in 0i64..13, b2 in 0i64..13) {
        let (i1, i2) = (PauliIndex::new(d, a1, b1), PauliIndex::new(d, a2, b2));
        let (e, k) = pauli_product(d, i1, i2);
        let want = pauli_u(d, k).unwrap().times_phase(Phase::new(d as u64, e as i64).unwrap());
        let got = pauli_u(d, i1).unwrap().mul_exact(&pauli_u(d, i2).unwrap()).unwrap();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn qdft_round_trip(d in 2usize..17, a in 0i64..17, x in vector(16)) {
        let spec = QdftSpec::new(d, a).unwrap();
        let x = &x[..d];
        let y = qdft(x, &spec).unwrap();
        let n = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        prop_assert!((n(&y) - n(x)).abs() < 1e-10);
        let back = iqdft(&y, &spec).unwrap();
        prop_assert!(back.iter().zip(x).all(|(p, q)| (p - q).norm() < 1e-10));
    }

    #[test]
    fn gauss_methods_agree(u in -12i64..=12, v in -60i64..=60, w in -25i64..=25) {
        if let Ok(p) = GaussParams::new(u, v, w) {
            let vals: Vec<Complex64> = GaussMethod::ALL.iter().map(|&m| gauss_sum(&p, m)).collect();
            prop_assert!((vals[0] - vals[1]).norm() < 1e-9, "{:?}", vals);
            prop_assert!((vals[0] - vals[2]).norm() < 1e-9, "{:?}", vals);
        }
    }

    #[test]
    fn overlap_routes_agree(d in 2usize..13, a in 0u64..12, b in 0u64..12, al in 0u64..12, be in 0u64..12) {
        let du = d as u64;
        let o = overlap(d, a % du, al % du, b % du, be % du).unwrap();
        prop_assert!(o.spread() < 1e-10);
    }

    #[test]
    fn group_law_is_associative(d in 2u64..9, t in prop::array::uniform9(0i64..8)) {
        let g = GroupElement::new(d, t[0], t[1], t[2]);
        let h = GroupElement::new(d, t[3], t[4], t[5]);
        let k = GroupElement::new(d, t[6], t[7], t[8]);
        prop_assert_eq!(group_mul(d, group_mul(d, g, h), k), group_mul(d, g, group_mul(d, h, k)));
        prop_assert_eq!(group_mul(d, g, group_inv(d, g)), GroupElement::IDENTITY);
    }

    #[test]
    fn three_by_three_rep_is_multiplicative(d in 2u64..9, t in prop::array::uniform6(0i64..8)) {
        let g = GroupElement::new(d, t[0], t[1], t[2]);
        let h = GroupElement::new(d, t[3], t[4], t[5]);
        prop_assert_eq!(rep3(d, group_mul(d, g, h)), mat3_mul(d, &rep3(d, g), &rep3(d, h)));
    }

    #[test]
    fn entanglement_never_exceeds_bound(v in vector(9)) {
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        prop_assume!(norm > 1e-6);
        let v: Vec<Complex64> = v.iter().map(|z| z / norm).collect();
        let (det, _) = entanglement_det(&v, 3).unwrap();
        prop_assert!(det <= 1.0 / 27f64.sqrt() + 1e-9);
    }
}

#[test]
fn second_neighbour_law_needs_u_two() {
    // b = a ⊖ 2 with a ≥ 2 gives u = 2 and the cosine law holds
    for d in 3..=12usize {
        for a in 2..d as u64 {
            for al in 0..d as u64 {
                for be in 0..d as u64 {
                    let got = overlap(d, a, al, a - 2, be).unwrap().value().norm();
                    assert!((got - second_neighbour_modulus(d, al, be)).abs() < 1e-10);
                }
            }
        }
    }
    // wrapping (u = 2 − d) breaks it when d ≡ 2 mod 4
    for d in [6usize, 10] {
        for a in [0u64, 1] {
            let b = a + d as u64 - 2;
            let worst = (0..d as u64)
                .flat_map(|al| (0..d as u64).map(move |be| (al, be)))
                .map(|(al, be)| {
                    (overlap(d, a, al, b, be).unwrap().value().norm() - second_neighbour_modulus(d, al, be)).abs()
                })
                .fold(0.0, f64::max);
            assert!(worst > 0.1, "d={d} a={a}");
        }
    }
}

#[test]
fn wrapped_second_neighbours_are_still_biased() {
    for d in [6usize, 10] {
        let top = (2.0 / d as f64).sqrt();
        for a in [0u64, 1] {
            let b = a + d as u64 - 2;
            for al in 0..d as u64 {
                for be in 0..d as u64 {
                    let m = overlap(d, a, al, b, be).unwrap().value().norm();
                    assert!(m < 1e-10 || (m - top).abs() < 1e-10, "d={d} a={a}: {m}");
                }
            }
            let r = unbiased(&basis(d, a as i64).unwrap(), &basis(d, b as i64).unwrap(), 1e-10).unwrap();
            assert_eq!(r.verdict, Verdict::Neither);
        }
    }
}

/// `Σ_{b,c} gcd(b, c, d)`: `w_abc` is conjugate exactly to `w_{a+t,b,c}`
/// with `t` a multiple of `gcd(b, c, d)`.
fn class_count_by_gcd(d: u64) -> usize {
    fn gcd(x: u64, y: u64) -> u64 {
        if y == 0 { x } else { gcd(y, x % y) }
    }
    (0..d).flat_map(|b| (0..d).map(move |c| gcd(gcd(b, c), d) as usize)).sum()
}

#[test]
fn class_counts_prime_and_composite() {
    for d in 2..=6u64 {
        let t = class_table(d).unwrap();
        assert_eq!(t.class_count(), class_count_by_gcd(d), "d={d}");
        assert_eq!(t.irrep_dims.len(), t.class_count());
        assert_eq!(t.irrep_dims.iter().map(|x| x * x).sum::<u64>(), d * d * d);
    }
    for p in [2u64, 3, 5] {
        assert_eq!(class_table(p).unwrap().class_count() as u64, p * (p + 1) - 1);
    }
    assert_eq!(class_table(4).unwrap().class_count(), 22);
    assert_eq!(class_table(6).unwrap().class_count(), 55);
}

#[test]
fn composite_irrep_dimensions() {
    let mut want = vec![1u64; 16];
    want.extend([2, 2, 2, 2, 4, 4]);
    assert_eq!(class_table(4).unwrap().irrep_dims, want);
}
