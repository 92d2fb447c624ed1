//! Acceptance run: one line per criterion, then a non-zero exit if any failed.

#[path = "../../core/tests/printed/mod.rs"]
mod printed;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use mubforge::gauss::{gauss_sum, overlap, second_neighbour_modulus, GaussMethod, GaussParams};
use mubforge::mub::{basis, complete_set_prime, entanglement_det, inner, is_prime, mub_d4, pairwise_reports, unbiased, Verdict};
use mubforge::pauli_group::{class_table, pi2_diagnostics, pi4_versus_p2, verify_rep3};
use mubforge::qfourier::{fourier_matrix, QdftSpec};
use mubforge::su2::{quon_restriction_residual, su2_commutation_residual, AngularParams};
use mubforge::weyl::{
    cartan_decomposition, hs_orthogonality_residual, pauli_u, pseudo_weyl_relation, spread_d4,
    verify_cartan, verify_spread, verify_structure_constants, weyl_relations, PauliIndex,
};
use mubforge_cli::{run, EXIT_OK};
use num_rational::Ratio;
use printed::{half, same_rays, table, CARTAN_7, D4_BASES, FOURIER, PAULI_2, PAULI_3, PAULI_4, SPREAD};

type Outcome = Result<String, String>;

fn require(ok: bool, fail: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(fail.into())
    }
}

fn golden_matrices() -> Outcome {
    for &(d, a, src) in FOURIER {
        let got = fourier_matrix(&QdftSpec::new(d, a).map_err(|e| e.to_string())?);
        require(got == table(d as u64, src), format!("F_{a} at d={d}"))?;
    }
    let mut count = FOURIER.len();
    for (d, tables) in [(2usize, PAULI_2), (3, PAULI_3), (4, PAULI_4)] {
        require(tables.len() == d * d, format!("table size at d={d}"))?;
        for &((a, b), src) in tables {
            let got = pauli_u(d, PauliIndex::new(d, a, b)).map_err(|e| e.to_string())?;
            require(got == table(1, src), format!("X^{a} Z^{b} at d={d}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} matrices equal at the phase level"))
}

fn prime_completeness() -> Outcome {
    let mut worst = 0.0f64;
    let mut pairs = 0;
    for p in (2..=31u64).filter(|&p| is_prime(p)) {
        let bases = complete_set_prime(p).map_err(|e| e.to_string())?;
        require(bases.len() == p as usize + 1, format!("p={p}: {} bases", bases.len()))?;
        let target = 1.0 / (p as f64).sqrt();
        for i in 0..bases.len() {
            for j in i + 1..bases.len() {
                for x in bases[i].vectors() {
                    for y in bases[j].vectors() {
                        worst = worst.max((inner(x, y).norm() - target).abs());
                    }
                }
                pairs += 1;
            }
        }
    }
    require(worst <= 1e-10, format!("max deviation {worst:.2e}"))?;
    Ok(format!("{pairs} basis pairs for p<=31, max deviation {worst:.2e}"))
}

fn four_level_set() -> Outcome {
    let bases = mub_d4();
    let reports = pairwise_reports(&bases, 1e-10).map_err(|e| e.to_string())?;
    require(
        reports.len() == 10 && reports.iter().all(|r| r.verdict == Verdict::Unbiased),
        "not pairwise unbiased",
    )?;
    for (b, (name, vectors)) in bases[1..].iter().zip(D4_BASES) {
        let want: Vec<_> = vectors.iter().map(half).collect();
        require(same_rays(b.vectors(), &want), format!("{name} differs from the printed vectors"))?;
        let target = if name == "w00" || name == "w11" { 0.0 } else { 0.5 };
        for v in b.vectors() {
            let (det, _) = entanglement_det(v, 2).map_err(|e| e.to_string())?;
            require((det - target).abs() <= 1e-9, format!("{name}: |det| {det}"))?;
        }
    }
    Ok("five bases pairwise unbiased, |det| 0 on w00/w11 and 1/2 on w01/w10".into())
}

fn gauss_sums() -> Outcome {
    let mut triples = 0;
    let mut spread = 0.0f64;
    for u in -12i64..=12 {
        for w in -25i64..=25 {
            // S depends on v only modulo 2|w|
            for v in -2 * w.abs()..=2 * w.abs() {
                let Ok(p) = GaussParams::new(u, v, w) else { continue };
                let vals: Vec<_> = GaussMethod::ALL.iter().map(|&m| gauss_sum(&p, m)).collect();
                spread = spread
                    .max((vals[0] - vals[1]).norm())
                    .max((vals[0] - vals[2]).norm())
                    .max((vals[1] - vals[2]).norm());
                triples += 1;
            }
        }
    }
    require(spread <= 1e-9, format!("methods disagree by {spread:.2e}"))?;

    let ov = |d: usize, a: u64, al: u64, b: u64, be: u64| overlap(d, a, al, b, be).map(|o| o.value().norm());
    let mut first = 0.0f64;
    for d in 2..=16usize {
        let du = d as u64;
        for a in 0..du {
            for al in 0..du {
                for be in 0..du {
                    let m = ov(d, a, al, (a + du - 1) % du, be).map_err(|e| e.to_string())?;
                    first = first.max((m - 1.0 / (d as f64).sqrt()).abs());
                }
            }
        }
    }
    require(first <= 1e-10, format!("first-neighbour deviation {first:.2e}"))?;

    let mut second = 0.0f64;
    for d in 3..=12usize {
        let du = d as u64;
        let target = 1.0 / (d as f64).sqrt();
        let mut formula_flat = true;
        for al in 0..du {
            for be in 0..du {
                formula_flat &= (second_neighbour_modulus(d, al, be) - target).abs() <= 1e-10;
            }
        }
        for a in 2..du {
            for al in 0..du {
                for be in 0..du {
                    let m = ov(d, a, al, a - 2, be).map_err(|e| e.to_string())?;
                    second = second.max((m - second_neighbour_modulus(d, al, be)).abs());
                }
            }
        }
        // the law flags non-unbiasedness, and only when d is even
        require(formula_flat == (d % 2 == 1), format!("cosine law at d={d} flags wrongly"))?;
        for a in 0..d as i64 {
            let r = unbiased(&basis(d, a).unwrap(), &basis(d, (a - 2).rem_euclid(d as i64)).unwrap(), 1e-10)
                .map_err(|e| e.to_string())?;
            require((r.verdict == Verdict::Unbiased) == (d % 2 == 1), format!("B_a, B_(a-2) at d={d} a={a}"))?;
        }
    }
    require(second <= 1e-10, format!("cosine law deviation {second:.2e}"))?;
    Ok(format!(
        "{triples} triples spread {spread:.1e}; 1/sqrt(d) to {first:.1e} for d<=16; cosine law to {second:.1e}, flags exactly even d"
    ))
}

fn weyl_algebra() -> Outcome {
    let e = |e: mubforge::Error| e.to_string();
    let mut worst = 0.0f64;
    for d in 2..=12usize {
        require(weyl_relations(d).map_err(e)?.all(), format!("Weyl relations at d={d}"))?;
        for a in 0..d as i64 {
            require(pseudo_weyl_relation(d, a).map_err(e)?, format!("pseudo-Weyl at d={d} a={a}"))?;
        }
        worst = worst.max(hs_orthogonality_residual(d).map_err(e)?);
        let (err, pattern) = verify_structure_constants(d).map_err(e)?;
        require(pattern, format!("structure constant pattern at d={d}"))?;
        worst = worst.max(err);
    }
    require(worst <= 1e-10, format!("residual {worst:.2e}"))?;
    for p in [2u64, 3, 5, 7, 11] {
        let sets = cartan_decomposition(p).map_err(e)?;
        let r = verify_cartan(p, &sets, 1e-10).map_err(e)?;
        require(sets.len() == p as usize + 1 && r.all(), format!("Cartan p={p}: {r:?}"))?;
    }
    let rows: Vec<String> = cartan_decomposition(7)
        .map_err(e)?
        .iter()
        .map(|s| s.members.iter().map(|i| format!("{}{}", i.a, i.b)).collect::<Vec<_>>().join(" "))
        .collect();
    require(rows == CARTAN_7, "p=7 rows differ")?;
    require(rows[3] == "12 24 36 41 53 65", format!("V_3 = {}", rows[3]))?;
    let spread = spread_d4();
    let got: Vec<String> = spread
        .iter()
        .map(|s| s.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    require(got == SPREAD, "spread sets differ")?;
    let r = verify_spread(&spread, 1e-10).map_err(e)?;
    require(r.all(), format!("spread checks: {r:?}"))?;
    Ok(format!("d<=12 residual {worst:.1e}; Cartan p in {{2,3,5,7,11}}; V_3 and spread verbatim"))
}

fn pauli_group() -> Outcome {
    let mut failures = Vec::new();
    let mut counts = Vec::new();
    for d in 2..=6u64 {
        let t = class_table(d).map_err(|e| e.to_string())?;
        let want_count = (d * (d + 1) - 1) as usize;
        let want_profile = BTreeMap::from([(1usize, d as usize), (d as usize, (d * d - 1) as usize)]);
        counts.push(format!("d={d}:{}", t.class_count()));
        if t.class_count() != want_count || t.size_profile() != want_profile {
            failures.push(format!(
                "d={d}: {} classes with sizes {:?}, expected {want_count} with {want_profile:?}",
                t.class_count(),
                t.size_profile()
            ));
        }
    }
    let p2 = pi2_diagnostics().map_err(|e| e.to_string())?;
    let mut sizes = p2.class_sizes.clone();
    sizes.sort();
    if !(p2.order == 8
        && sizes == [1, 1, 2, 2, 2]
        && p2.irrep_dims == [1, 1, 1, 1, 2]
        && p2.ambivalent
        && p2.doubled_size == 16
        && p2.doubled_closed)
    {
        failures.push(format!("eight-element group: {p2:?}"));
    }
    for d in 2..=3 {
        let r = verify_rep3(d);
        if !(r.homomorphism && r.injective) {
            failures.push(format!("rep3 at d={d}: {r:?}"));
        }
    }
    let sep = pi4_versus_p2().map_err(|e| e.to_string())?;
    if !sep.distinguished() {
        failures.push("Pi_4 and the two-qubit Pauli group not separated".into());
    }
    if failures.is_empty() {
        Ok(format!("class counts {}; Pi_2 data, rep3, Pi_4 vs P_2 hold", counts.join(" ")))
    } else {
        Err(failures.join("; "))
    }
}

fn appendices() -> Outcome {
    let mut worst = 0.0f64;
    for d in 2..=10usize {
        for a in 0..d as i64 {
            for r in [Ratio::from_integer(0), Ratio::new(1, 2)] {
                let p = AngularParams::new(d, r, a).map_err(|e| e.to_string())?;
                worst = worst.max(su2_commutation_residual(&p));
            }
        }
    }
    let mut quon = 0.0f64;
    for k in 2..=6usize {
        for a in 0..k as i64 {
            for r in [Ratio::from_integer(0), Ratio::new(1, 2), Ratio::from_integer(1)] {
                quon = quon.max(quon_restriction_residual(k, r, a).map_err(|e| e.to_string())?);
            }
        }
    }
    require(worst <= 1e-10, format!("su(2) residual {worst:.2e}"))?;
    require(quon <= 1e-10, format!("quon restriction residual {quon:.2e}"))?;
    Ok(format!("su(2) residual {worst:.1e} for d<=10; quon restriction residual {quon:.1e} for k<=6"))
}

fn full_check() -> Outcome {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(["mubforge", "check-all", "--scale", "full"], &mut out, &mut err);
    let stdout = String::from_utf8_lossy(&out);
    let summary = stdout.lines().last().unwrap_or("").to_string();
    if code == EXIT_OK {
        return Ok(summary);
    }
    let failed: Vec<&str> = stdout.lines().filter(|l| l.starts_with("[FAIL]")).collect();
    Err(format!("exit {code}: {summary}; {}{}", failed.join("; "), String::from_utf8_lossy(&err).trim()))
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 8] = [
        ("golden matrices", Duration::from_secs(1), golden_matrices),
        ("prime-dimension completeness", Duration::from_secs(30), prime_completeness),
        ("four-level construction", Duration::from_secs(1), four_level_set),
        ("Gauss sums and overlaps", Duration::from_secs(60), gauss_sums),
        ("Weyl and Pauli algebra", Duration::from_secs(60), weyl_algebra),
        ("Pauli group", Duration::from_secs(120), pauli_group),
        ("su(2) and quon realizations", Duration::from_secs(10), appendices),
        ("check-all --scale full", Duration::from_secs(300), full_check),
    ];
    let mut failed = 0;
    for (n, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if took <= limit => (true, d),
            Ok(d) => (false, format!("{d}; took longer than {limit:?}")),
            Err(d) => (false, d),
        };
        failed += usize::from(!ok);
        println!(
            "criterion {}: {} {name} [{:.2}s, limit {}s] {detail}",
            n + 1,
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
