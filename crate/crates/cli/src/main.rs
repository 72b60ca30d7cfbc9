//! Command-line front end: parse arrangements and ideals, run each
//! computation, and emit canonical text or JSON.
//!
//! Exit codes: 0 success, 2 parse error, 3 resource limit (degree guard),
//! 4 failed reconstruction, 5 property failure.

use arrjac_cli::json;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use arrjac::arrangement::{Arrangement, Hyperplane};
use arrjac::polyring::{Poly, TermOrder};
use arrjac::qlinalg::parse_rat;
use arrjac::reconstruct::{self, ReconstructionReport};
use arrjac::suites;
use arrjac::{Error, Result};

#[derive(Parser)]
#[command(
    name = "arrjac",
    version,
    about = "Exact computations with central hyperplane arrangements and their Jacobian ideals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Term order used when printing polynomials
    #[arg(long, global = true, value_enum, default_value_t = OrderArg::Degrevlex)]
    order: OrderArg,

    /// Cap on total degrees inside Groebner runs
    #[arg(long, global = true, default_value_t = arrjac::ideals::DEFAULT_DEGREE_GUARD)]
    degree_guard: u32,

    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for candidate sweeps (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Degrevlex,
    Lex,
}

impl OrderArg {
    fn term_order(self) -> TermOrder {
        match self {
            OrderArg::Degrevlex => TermOrder::DegRevLex,
            OrderArg::Lex => TermOrder::Lex,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the defining polynomial and the Jacobian ideal of an arrangement
    Jacobian { input: PathBuf },
    /// Print the intersection lattice with Moebius values
    Lattice { input: PathBuf },
    /// Compare the combinatorial and scheme-theoretic slice degrees for one hyperplane
    Slice {
        input: PathBuf,
        /// Covector of the slicing hyperplane, e.g. "1 0 -1"
        #[arg(long)]
        hyperplane: String,
    },
    /// Recover the arrangement from a Jacobian ideal presented by generators
    Reconstruct {
        input: PathBuf,
        /// Treat the input as an arrangement file and reconstruct from its Jacobian ideal
        #[arg(long)]
        from_arrangement: bool,
    },
    /// Run the verification suites
    Verify {
        /// One of: lem2dim, degree, mull, radical, roundtrip, all
        #[arg(long, default_value = "all")]
        suite: String,
        /// Seed for the randomized corpora; printed so runs reproduce exactly
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    // die quietly when stdout is a closed pipe (e.g. piping into head)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        arrjac::set_parallelism(jobs);
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::ZeroCovector
        | Error::DuplicateHyperplane(_)
        | Error::NotHomogeneous(_)
        | Error::EmptyIdeal => 2,
        Error::DegreeGuard { .. } | Error::Resource(_) => 3,
        Error::ReconstructionFailed(_) => 4,
        _ => 1,
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("cannot read {}: {e}", path.display()),
    })
}

fn load_arrangement(path: &Path) -> Result<Arrangement> {
    Arrangement::parse(&read_file(path)?)
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let ord = cli.order.term_order();
    match &cli.command {
        Command::Jacobian { input } => {
            let a = load_arrangement(input)?;
            let q = a.defining_polynomial();
            let j = a.jacobian_ideal().with_degree_guard(cli.degree_guard);
            let unit = j.contains(&Poly::one(a.ring()))?;
            if cli.json {
                let out = json::JacobianJson {
                    arrangement: json::ArrangementJson::of(&a),
                    q: q.to_string_ord(ord),
                    generators: j
                        .generators()
                        .iter()
                        .map(|g| g.to_string_ord(ord))
                        .collect(),
                    unit_ideal: unit,
                };
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!(
                    "arrangement: {} hyperplanes in dimension {}",
                    a.len(),
                    a.ring().nvars()
                );
                println!("Q = {}", q.to_string_ord(ord));
                println!("J(Q) generators:");
                for (i, g) in j.generators().iter().enumerate() {
                    println!("  dQ/d{} = {}", a.ring().var_name(i), g.to_string_ord(ord));
                }
                if unit {
                    println!("warning: J(Q) is the unit ideal (the divisor is smooth, no singular scheme)");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Lattice { input } => {
            let a = load_arrangement(input)?;
            let lattice = a.intersection_lattice();
            if cli.json {
                let out = json::LatticeJson::of(&a, &lattice);
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!(
                    "intersection lattice of {} hyperplanes in dimension {}",
                    a.len(),
                    a.ring().nvars()
                );
                for k in 0..=a.ring().nvars() {
                    let flats: Vec<_> = lattice.of_codim(k).collect();
                    if flats.is_empty() {
                        continue;
                    }
                    println!("codim {k}: {} flat(s)", flats.len());
                    for f in flats {
                        let members: Vec<String> =
                            f.members.iter().map(|i| format!("H{}", i + 1)).collect();
                        let normals: Vec<String> = (0..f.flat.codim())
                            .map(|r| {
                                let row: Vec<String> = f
                                    .flat
                                    .normals()
                                    .row(r)
                                    .iter()
                                    .map(|c| c.to_string())
                                    .collect();
                                row.join(" ")
                            })
                            .collect();
                        println!(
                            "  mu = {:3}  members = {{{}}}  normals = [{}]",
                            f.mu,
                            members.join(", "),
                            normals.join("; ")
                        );
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Slice { input, hyperplane } => {
            let a = load_arrangement(input)?;
            let k = parse_covector(hyperplane, a.ring().nvars())?;
            let j = a.jacobian_ideal().with_degree_guard(cli.degree_guard);
            let mu = a.mu_k(&k);
            let slice = reconstruct::degree_slice(&j, &k)?;
            let agree = mu == slice;
            if cli.json {
                let out = json::SliceJson {
                    hyperplane: k.covector().iter().map(|c| c.to_string()).collect(),
                    mu_k: mu,
                    degree_slice: slice,
                    agree,
                };
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!("K = {k}");
                println!("mu_A(K)   = {mu}  (Moebius sum over codim-2 flats inside K)");
                println!("deg-slice = {slice}  (degree of Proj S/(J(Q) + (beta_K)))");
                println!("agree: {}", if agree { "yes" } else { "NO" });
            }
            Ok(if agree {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(5)
            })
        }
        Command::Reconstruct {
            input,
            from_arrangement,
        } => {
            let j = if *from_arrangement {
                load_arrangement(input)?.jacobian_ideal()
            } else {
                reconstruct::parse_ideal_file(&read_file(input)?)?
            }
            .with_degree_guard(cli.degree_guard);
            match reconstruct::reconstruct(&j, None) {
                Ok(report) => {
                    print_reconstruction(cli, &report);
                    Ok(ExitCode::SUCCESS)
                }
                Err(Error::ReconstructionFailed(details)) => {
                    if !cli.json {
                        println!("inferred n = {}", details.inferred_n);
                        print_candidates(&details.candidates, details.inferred_n as i64 - 1);
                        println!("reconstruction failed: {}", details.reason);
                    }
                    Err(Error::ReconstructionFailed(details))
                }
                Err(e) => Err(e),
            }
        }
        Command::Verify { suite, seed } => {
            let Some(reports) = suites::run_named(suite, *seed) else {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!(
                        "unknown suite '{suite}' (expected lem2dim, degree, mull, radical, roundtrip, or all)"
                    ),
                });
            };
            let all_pass = reports.iter().all(|r| r.passed());
            if cli.json {
                let out: Vec<json::SuiteJson> = reports.iter().map(json::SuiteJson::of).collect();
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!("seed: {seed}  (pass --seed {seed} to reproduce)");
                for r in &reports {
                    println!("{}", r.summary());
                    for c in &r.cases {
                        if !c.pass {
                            println!(
                                "  FAIL {} - {}",
                                c.label,
                                c.detail.clone().unwrap_or_default()
                            );
                        }
                    }
                }
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(5)
            })
        }
    }
}

fn parse_covector(text: &str, dim: usize) -> Result<Hyperplane> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.len() != dim {
        return Err(Error::Parse {
            line: 0,
            msg: format!(
                "hyperplane covector needs {dim} entries, found {}",
                tokens.len()
            ),
        });
    }
    let rats = tokens
        .iter()
        .map(|t| {
            parse_rat(t).ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("invalid rational '{t}'"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Hyperplane::new(&rats)
}

fn print_candidates(candidates: &[(Hyperplane, i64)], target: i64) {
    println!("candidates ({}):", candidates.len());
    for (h, s) in candidates {
        let cov = h.to_string();
        println!(
            "  {cov:<12} slice degree {s}{}",
            if *s == target { "   accepted" } else { "" }
        );
    }
}

fn print_reconstruction(cli: &Cli, report: &ReconstructionReport) {
    if cli.json {
        let out = json::ReconstructJson::of(report);
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
        return;
    }
    println!("inferred n = {}", report.inferred_n);
    if !report.singular_points.is_empty() {
        let pts: Vec<String> = report
            .singular_points
            .iter()
            .map(|p| p.to_string())
            .collect();
        println!("singular points: {}", pts.join(" "));
    }
    print_candidates(&report.candidates, report.inferred_n as i64 - 1);
    println!("accepted arrangement:");
    print!("{}", report.accepted.to_file_string());
    println!(
        "certificate: {}",
        if report.certificate {
            "saturated Jacobian ideals agree"
        } else {
            "FAILED"
        }
    );
}
