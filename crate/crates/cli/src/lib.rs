//! Command-line front end: argument parsing, output formatting and exit codes.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage errors.

use std::fs;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mubforge::checks::{check_all, CheckConfig, Scale};
use mubforge::gauss::{gauss_sum, GaussMethod, GaussParams};
use mubforge::mub::{basis, complete_set_prime, computational_basis, is_prime, mub_d4, unbiased, MubReport, Verdict};
use mubforge::pauli_group::{
    center, class_table, is_ambivalent, nilpotent_class_two, pi2_diagnostics, realization_determinants,
    verify_rep3, CLASS_TABLE_BOUND,
};
use mubforge::qfourier::{fourier_matrix, QdftSpec};
use mubforge::weyl::{cartan_decomposition, pauli_action, pauli_u, PauliIndex};
use mubforge::{Basis, Error, PhaseMatrix};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const TOL_ENV: &str = "MUBFORGE_TOL";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "mubforge", version, about = "Mutually unbiased bases, quadratic Fourier matrices, Gauss sums and Pauli operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Quadratic Fourier matrix F_a
    GenFourier {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        a: i64,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
        #[command(flatten)]
        out: OutPath,
    },
    /// All bases of a complete set (prime d, or d = 4)
    GenMub {
        #[arg(long)]
        d: usize,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
        #[command(flatten)]
        out: OutPath,
    },
    /// Pairwise unbiasedness report
    VerifyMub {
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = Pairs::All)]
        pairs: Pairs,
        #[arg(long)]
        json: bool,
    },
    /// Generalized quadratic Gauss sum S(u, v, w)
    GaussSum {
        #[arg(long, allow_hyphen_values = true)]
        u: i64,
        #[arg(long, allow_hyphen_values = true)]
        v: i64,
        #[arg(long, allow_hyphen_values = true)]
        w: i64,
        #[arg(long, default_value = "brute", conflicts_with = "all_methods")]
        method: GaussMethod,
        #[arg(long)]
        all_methods: bool,
    },
    /// Generalized Pauli operator X^a Z^b
    Pauli {
        #[arg(long)]
        d: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, conflicts_with = "action")]
        matrix: bool,
        #[arg(long)]
        action: bool,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
    },
    /// The p + 1 commuting families of su(p)
    Cartan {
        #[arg(long)]
        p: u64,
    },
    /// Generalized Pauli group of order d^3
    PauliGroup {
        #[arg(long)]
        d: u64,
        #[arg(long, conflicts_with_all = ["rep3", "diagnostics"])]
        classes: bool,
        #[arg(long, conflicts_with = "diagnostics")]
        rep3: bool,
        #[arg(long)]
        diagnostics: bool,
    },
    /// Run the invariant suite
    CheckAll {
        #[arg(long, value_enum, default_value_t = ScaleArg::Small)]
        scale: ScaleArg,
        #[arg(long)]
        inject_fault: bool,
        #[arg(long)]
        json: bool,
        /// Append per-property wall time (output is then not reproducible)
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Args, Debug)]
struct OutPath {
    /// Write to this file instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Pairs {
    All,
    Consecutive,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ScaleArg {
    Small,
    Full,
}

/// Failure of a command, mapped to an exit code by [`run`].
enum Failure {
    Usage(String),
    Verification(String),
    /// The reader went away, as with `| head`.
    Closed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure::Closed;
        }
        Failure::Usage(format!("i/o error: {e}"))
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let tol = match tolerance(std::env::var(TOL_ENV).ok().as_deref()) {
        Ok(t) => t,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    match dispatch(cli.command, tol, out) {
        Ok(()) | Err(Failure::Closed) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Verification(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            EXIT_FAILED
        }
    }
}

/// Tolerance from the environment value, if any.
pub fn tolerance(env: Option<&str>) -> std::result::Result<f64, String> {
    match env {
        None => Ok(DEFAULT_TOL),
        Some(s) => match s.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
            _ => Err(format!("{TOL_ENV} must be a positive number, got '{s}'")),
        },
    }
}

fn dispatch(cmd: Command, tol: f64, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::GenFourier { d, a, format, out: path } => {
            let f = fourier_matrix(&QdftSpec::new(d, a)?);
            emit(out, path.out.as_deref(), &render_matrix(&f, format))
        }
        Command::GenMub { d, json, csv, out: path } => {
            let bases = complete_set(d)?;
            let text = if json {
                bases_json(&bases)
            } else if csv {
                bases_csv(&bases)
            } else {
                bases_pretty(&bases)
            };
            emit(out, path.out.as_deref(), &text)
        }
        Command::VerifyMub { d, pairs, json } => verify_mub(d, pairs, json, tol, out),
        Command::GaussSum { u, v, w, method, all_methods } => {
            let p = GaussParams::new(u, v, w)?;
            if !all_methods {
                let s = gauss_sum(&p, method);
                writeln!(out, "{} {}", sig(s.re), sig(s.im))?;
                return Ok(());
            }
            let vals: Vec<_> = GaussMethod::ALL.iter().map(|&m| (m, gauss_sum(&p, m))).collect();
            for (m, s) in &vals {
                writeln!(out, "{m} {} {}", sig(s.re), sig(s.im))?;
            }
            let spread = vals
                .iter()
                .flat_map(|(_, x)| vals.iter().map(move |(_, y)| (x - y).norm()))
                .fold(0.0, f64::max);
            // sums grow like sqrt(|w|), so compare at 1e-9 rather than the matrix tolerance
            if spread > tol.max(1e-9) {
                return Err(Failure::Verification(format!("methods disagree by {spread:e}")));
            }
            Ok(())
        }
        Command::Pauli { d, a, b, action, format, .. } => {
            let idx = PauliIndex::new(d, a, b);
            if d < 2 {
                return Err(Failure::Usage(format!("dimension {d} must be at least 2")));
            }
            if action {
                for k in 0..d {
                    let (ph, t) = pauli_action(d, idx, k);
                    let e = ph.exponent_over(d as u64).expect("order d");
                    writeln!(out, "u|{k}> = q^{e} |{t}>")?;
                }
                return Ok(());
            }
            let m = pauli_u(d, idx)?;
            write!(out, "{}", render_matrix(&m, format))?;
            Ok(())
        }
        Command::Cartan { p } => {
            let sets = cartan_decomposition(p)?;
            let sets: Vec<Vec<[u64; 2]>> = sets
                .iter()
                .map(|s| s.members.iter().map(|i| [i.a, i.b]).collect())
                .collect();
            writeln!(out, "{}", json!({ "p": p, "sets": sets }))?;
            Ok(())
        }
        Command::PauliGroup { d, rep3, diagnostics, .. } => {
            if !(2..=CLASS_TABLE_BOUND).contains(&d) {
                return Err(Failure::Usage(format!(
                    "d={d} is outside the supported range 2..={CLASS_TABLE_BOUND}"
                )));
            }
            if rep3 {
                let r = verify_rep3(d);
                writeln!(out, "{}", json!({ "d": d, "homomorphism": r.homomorphism, "injective": r.injective }))?;
                if !(r.homomorphism && r.injective) {
                    return Err(Failure::Verification("3x3 representation is not faithful".into()));
                }
                return Ok(());
            }
            if diagnostics {
                return group_diagnostics(d, out);
            }
            let t = class_table(d)?;
            let classes: Vec<Vec<[u64; 3]>> = t
                .classes
                .iter()
                .map(|c| c.iter().map(|g| g.triple()).collect())
                .collect();
            writeln!(out, "{}", json!({ "d": d, "classes": classes, "irrep_dims": t.irrep_dims }))?;
            Ok(())
        }
        Command::CheckAll { scale, inject_fault, json, timings } => {
            let cfg = CheckConfig {
                scale: match scale {
                    ScaleArg::Small => Scale::Small,
                    ScaleArg::Full => Scale::Full,
                },
                tol,
                inject_fault,
            };
            let report = check_all(&cfg);
            let failed = report.iter().filter(|o| !o.passed).count();
            if json {
                let rows: Vec<Value> = report
                    .iter()
                    .map(|o| {
                        let mut v = json!({
                            "module": o.module,
                            "property": o.property,
                            "passed": o.passed,
                            "detail": o.detail,
                        });
                        if timings {
                            v["millis"] = json!(o.millis);
                        }
                        v
                    })
                    .collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("plain values"))?;
            } else {
                for o in &report {
                    if timings {
                        writeln!(out, "{o} [{} ms]", o.millis)?;
                    } else {
                        writeln!(out, "{o}")?;
                    }
                }
                writeln!(out, "{} of {} properties passed", report.len() - failed, report.len())?;
            }
            if failed > 0 {
                return Err(Failure::Verification(format!("{failed} properties failed")));
            }
            Ok(())
        }
    }
}

fn emit(out: &mut dyn Write, path: Option<&str>, text: &str) -> Outcome {
    match path {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Fifteen significant digits.
fn sig(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.14e}")
}

fn render_matrix(m: &PhaseMatrix, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string(m).expect("matrix serializes")),
        Format::Csv => {
            let c = m.to_cmatrix();
            let mut s = String::from("row,col,re,im\n");
            for r in 0..m.dim() {
                for k in 0..m.dim() {
                    let z = c[(r, k)];
                    s.push_str(&format!("{r},{k},{},{}\n", sig(z.re), sig(z.im)));
                }
            }
            s
        }
        Format::Pretty => format!("{}{m}", pretty_header(m)),
    }
}

fn pretty_header(m: &PhaseMatrix) -> String {
    let scale = if m.norm() == 1 {
        String::new()
    } else {
        format!(", scale 1/sqrt({})", m.norm())
    };
    format!("# q = exp(2 pi i / {}){scale}\n", m.order())
}

/// The bases `gen-mub` and `verify-mub` operate on.
fn complete_set(d: usize) -> std::result::Result<Vec<Basis>, Failure> {
    if d == 4 {
        return Ok(mub_d4());
    }
    if !is_prime(d as u64) {
        return Err(Failure::Usage(format!(
            "no complete set for d={d}: only prime d and d=4 are supported"
        )));
    }
    Ok(complete_set_prime(d as u64)?)
}

fn bases_json(bases: &[Basis]) -> String {
    let v: Vec<Value> = bases
        .iter()
        .map(|b| {
            let vectors: Vec<Vec<[f64; 2]>> = b
                .vectors()
                .iter()
                .map(|v| v.iter().map(|z| [z.re, z.im]).collect())
                .collect();
            json!({
                "label": b.label().to_string(),
                "exact": b.exact().map(|m| serde_json::to_value(m).expect("matrix serializes")),
                "vectors": vectors,
            })
        })
        .collect();
    format!("{}\n", serde_json::to_string(&v).expect("plain values"))
}

fn bases_csv(bases: &[Basis]) -> String {
    let mut s = String::from("basis,vector,component,re,im\n");
    for b in bases {
        for (i, v) in b.vectors().iter().enumerate() {
            for (k, z) in v.iter().enumerate() {
                s.push_str(&format!("{},{i},{k},{},{}\n", b.label(), sig(z.re), sig(z.im)));
            }
        }
    }
    s
}

fn bases_pretty(bases: &[Basis]) -> String {
    let mut s = String::new();
    for b in bases {
        s.push_str(&format!("== {} ==\n", b.label()));
        match b.exact() {
            Some(m) => s.push_str(&format!("{}{m}", pretty_header(m))),
            None => {
                for v in b.vectors() {
                    let cells: Vec<String> = v.iter().map(|z| format!("{:+.6}{:+.6}i", z.re, z.im)).collect();
                    s.push_str(&format!("( {} )\n", cells.join("  ")));
                }
            }
        }
    }
    s
}

fn verify_mub(d: usize, pairs: Pairs, json_out: bool, tol: f64, out: &mut dyn Write) -> Outcome {
    let bases = if d == 4 || is_prime(d as u64) {
        complete_set(d)?
    } else {
        // the single-formula family, for study; not expected to be complete
        let mut v = (0..d as i64).map(|a| basis(d, a)).collect::<mubforge::Result<Vec<_>>>()?;
        v.push(computational_basis(d));
        v
    };
    let idx: Vec<(usize, usize)> = match pairs {
        Pairs::All => (0..bases.len())
            .flat_map(|i| (i + 1..bases.len()).map(move |j| (i, j)))
            .collect(),
        Pairs::Consecutive => (0..bases.len() - 1).map(|i| (i, i + 1)).collect(),
    };
    let reports: Vec<MubReport> = idx
        .iter()
        .map(|&(i, j)| unbiased(&bases[i], &bases[j], tol))
        .collect::<mubforge::Result<_>>()?;
    if json_out {
        writeln!(out, "{}", serde_json::to_string_pretty(&reports).expect("plain values"))?;
    } else {
        writeln!(out, "{:<14} {:<14} {:>18} {:>18}  verdict", "basis", "basis", "max", "min")?;
        for r in &reports {
            writeln!(
                out,
                "{:<14} {:<14} {:>18} {:>18}  {}",
                r.labels.0,
                r.labels.1,
                sig(r.max),
                sig(r.min),
                r.verdict
            )?;
        }
    }
    let bad = reports.iter().filter(|r| r.verdict != Verdict::Unbiased).count();
    if bad > 0 {
        return Err(Failure::Verification(format!("{bad} of {} pairs are not unbiased", reports.len())));
    }
    Ok(())
}

fn group_diagnostics(d: u64, out: &mut dyn Write) -> Outcome {
    let t = class_table(d)?;
    let dets = realization_determinants(d)?;
    let mut v = json!({
        "d": d,
        "order": d * d * d,
        "center_size": center(d).len(),
        "class_count": t.class_count(),
        "class_size_profile": t.size_profile(),
        "irrep_dims": t.irrep_dims,
        "nilpotent_class_two": nilpotent_class_two(d),
        "ambivalent": is_ambivalent(d),
        "all_determinants_one": dets.iter().all(|(_, p)| p.is_one()),
    });
    if d == 2 {
        let p = pi2_diagnostics()?;
        v["dihedral"] = json!(p.matches_dihedral);
        v["doubled_order"] = json!(p.doubled_size);
        v["doubled_index"] = json!(p.doubled_index);
    }
    writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("plain values"))?;
    Ok(())
}
