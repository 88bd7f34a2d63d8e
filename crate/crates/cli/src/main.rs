//! Command-line front end: parse pairs, run classifications, certificates,
//! enumerations and atlas verifications, and emit human or JSON reports.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cubicline::atlas::{self, UTower, VerifyReport};
use cubicline::forms::ProjectivePoint;
use cubicline::hesse::{self, HessePoint, JValue};
use cubicline::parse::{parse_pair, parse_pair_file, parse_scalar};
use cubicline::report::{
    BatchVerifyReport, NormalFormReport, VerdictReport, WCuspReport, WorstOnePsReport,
    SCHEMA_VERSION,
};
use cubicline::scalar::{FieldTower, Scalar};
use cubicline::stability::{
    classify, destabilizing_witness, mu, normal_form, wcusp_coordinate, worst_one_ps,
    CubicLinePair, OnePS,
};
use cubicline::Error;

#[derive(Parser)]
#[command(
    name = "cubicline",
    about = "Exact classification of plane cubic + line pairs under PGL(3)",
    version
)]
struct Cli {
    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized sample generation.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Parallelize independent sample verification.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PairArg {
    /// Cubic form, e.g. "x0*x1*x2".
    cubic: String,
    /// Line form, e.g. "x0+x1+x2".
    line: String,
}

#[derive(Subcommand)]
enum Command {
    /// Stability classification with certificate.
    Classify {
        #[command(flatten)]
        pair: Option<PairArg>,
        /// Read pairs from a file (header may declare a tower).
        #[arg(long)]
        input: Option<String>,
    },
    /// Hilbert–Mumford index against a given 1-PS.
    Mu {
        #[command(flatten)]
        pair: PairArg,
        /// Weights r0,r1,r2 (nonincreasing, sum 0).
        #[arg(long, value_name = "r0,r1,r2")]
        r: String,
    },
    /// Exact-LP minimization over normalized 1-PS rays.
    #[command(name = "worst-1ps")]
    Worst1Ps {
        #[command(flatten)]
        pair: PairArg,
    },
    /// Destabilizing (g, lambda, mu) for an unstable pair.
    Witness {
        #[command(flatten)]
        pair: PairArg,
    },
    /// Normal form for the closed strata (rows 3, 5, 6, 7, 11).
    #[command(name = "normal-form")]
    NormalForm {
        #[command(flatten)]
        pair: PairArg,
    },
    /// Weighted-projective coordinate of a cuspidal pair (rows 10, 11).
    Wcusp {
        #[command(flatten)]
        pair: PairArg,
    },
    /// Pencil-line enumerations.
    Hesse {
        #[command(subcommand)]
        sub: HesseCmd,
    },
    /// Chart-atlas verification.
    Atlas {
        #[command(subcommand)]
        sub: AtlasCmd,
    },
    /// One-parameter family limits.
    Family {
        #[command(subcommand)]
        sub: FamilyCmd,
    },
}

#[derive(Subcommand)]
enum HesseCmd {
    /// Orbit and stabilizer order of a pencil point.
    Orbit {
        /// Pencil point "mu0,mu1".
        #[arg(long, value_name = "mu0,mu1")]
        mu: String,
    },
    /// Fiber of the forgetful map over (member, line).
    Fiber {
        #[arg(long, value_name = "mu0,mu1")]
        mu: String,
        /// Line coefficients "b0,b1,b2".
        #[arg(long, value_name = "b0,b1,b2")]
        b: String,
    },
    /// j-invariant of a pencil member.
    J {
        #[arg(long, value_name = "mu0,mu1")]
        mu: String,
    },
    /// Incidence table of the base-locus lines and vertices.
    Incidence,
    /// The pencil-preserving group.
    Group {
        /// Print only the order.
        #[arg(long)]
        order: bool,
    },
}

#[derive(Subcommand)]
enum AtlasCmd {
    /// Extension identity for the U-charts.
    VerifyPhi {
        /// Chart index 1..7 (all when omitted).
        #[arg(long)]
        chart: Option<u8>,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        /// Tower label "a,i" with a in {0, 1, w, w^2}.
        #[arg(long, default_value = "0,0")]
        tower: String,
    },
    /// Semistability and cuspidal-set checks for the V-charts.
    VerifyPsi {
        /// Chart index 1..4 (all when omitted).
        #[arg(long)]
        chart: Option<u8>,
        #[arg(long, default_value_t = 25)]
        samples: usize,
    },
    /// Exceptional-stratification grids for both atlases.
    Strata,
    /// Chart transition witnesses (including the exceptional (1,2) slice).
    Transitions {
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// Limits of the built-in families.
    Limits {
        /// ga-z5 | ga-inv-z6 | ha-z11 | wt | graph:b1,b2,B1,B2
        #[arg(long, default_value = "ga-z5")]
        family: String,
    },
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::IrrationalSingularity { .. } => 3,
        _ => 4,
    }
}

fn parse_csv_scalars(text: &str, n: usize) -> Result<Vec<Scalar>, Error> {
    let tower = FieldTower::base();
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != n {
        return Err(Error::Parse(format!("expected {n} comma-separated values")));
    }
    parts
        .iter()
        .map(|p| parse_scalar(p.trim(), &tower))
        .collect()
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).unwrap());
}

fn classify_one(z: &CubicLinePair, json: bool) -> Result<(), Error> {
    let v = classify(z)?;
    let report = VerdictReport::new(z, &v);
    if json {
        print_json(&report);
    } else {
        print!("status: {}", report.status);
        if let Some(row) = report.row {
            print!(" (row {row})");
        }
        if let Some(reason) = &report.reason {
            print!(" reason {reason}");
        }
        println!();
        println!("curve class: {}", report.curve_class);
        if let Some(cert) = &report.certificate {
            println!(
                "certificate: lambda = {:?}, mu = {}, g = {:?}",
                cert.lambda, cert.mu, cert.g
            );
        }
        if let Some(ext) = &report.extension_used {
            println!("extension used: {ext}");
        }
    }
    Ok(())
}

fn emit_reports(reports: Vec<VerifyReport>, json: bool) -> Result<(), Error> {
    let mut all_ok = true;
    if json {
        let batch: Vec<BatchVerifyReport> = reports.iter().map(BatchVerifyReport::new).collect();
        print_json(&batch);
        all_ok = reports.iter().all(VerifyReport::passed);
    } else {
        for r in &reports {
            let status = if r.passed() { "pass" } else { "FAIL" };
            println!("{}: {} ({} samples)", r.label, status, r.samples);
            for f in &r.failures {
                println!("  failure: {f}");
            }
            all_ok &= r.passed();
        }
    }
    if all_ok {
        Ok(())
    } else {
        Err(Error::NormalFormFailure("verification failed".into()))
    }
}

/// Run jobs in parallel when requested, preserving input order.
fn run_parallel<T: Send>(jobs: usize, tasks: Vec<Box<dyn FnOnce() -> T + Send>>) -> Vec<T> {
    if jobs <= 1 || tasks.len() <= 1 {
        return tasks.into_iter().map(|t| t()).collect();
    }
    let mut slots: Vec<Option<T>> = Vec::new();
    for _ in 0..tasks.len() {
        slots.push(None);
    }
    let work: Vec<(usize, Box<dyn FnOnce() -> T + Send>)> = tasks.into_iter().enumerate().collect();
    let queue = std::sync::Mutex::new(work);
    let results = std::sync::Mutex::new(&mut slots);
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(8) {
            scope.spawn(|| loop {
                let item = queue.lock().unwrap().pop();
                match item {
                    None => break,
                    Some((idx, task)) => {
                        let value = task();
                        results.lock().unwrap()[idx] = Some(value);
                    }
                }
            });
        }
    });
    slots.into_iter().map(|s| s.unwrap()).collect()
}

fn parse_tower_label(text: &str) -> Result<UTower, Error> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::Parse("tower label is a,i".into()));
    }
    let tower = FieldTower::base();
    let a = parse_scalar(parts[0].trim(), &tower)?;
    let i: u8 = parts[1]
        .trim()
        .parse()
        .map_err(|_| Error::Parse("bad tower index".into()))?;
    if !(a.is_zero() || a.pow(3).is_one()) || i > 2 {
        return Err(Error::Parse("tower needs a in {0,1,w,w^2} and i in 0..3".into()));
    }
    Ok(UTower { a, i })
}

fn run(cli: Cli) -> Result<(), Error> {
    let tower = FieldTower::base();
    match cli.command {
        Command::Classify { pair, input } => match (pair, input) {
            (Some(p), None) => {
                let z = parse_pair(&p.cubic, &p.line, &tower)?;
                classify_one(&z, cli.json)
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
                let (_, pairs) = parse_pair_file(&text)?;
                for z in &pairs {
                    classify_one(z, cli.json)?;
                }
                Ok(())
            }
            _ => Err(Error::Parse(
                "provide either an inline pair or --input FILE".into(),
            )),
        },
        Command::Mu { pair, r } => {
            let z = parse_pair(&pair.cubic, &pair.line, &tower)?;
            let parts: Vec<i64> = r
                .split(',')
                .map(|p| p.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|_| Error::Parse("bad 1-PS weights".into()))?;
            if parts.len() != 3 {
                return Err(Error::Parse("need r0,r1,r2".into()));
            }
            let lam = OnePS::new(parts[0], parts[1], parts[2])?;
            let value = mu(&z, &lam);
            if cli.json {
                print_json(&serde_json::json!({
                    "schema": SCHEMA_VERSION,
                    "lambda": lam.r,
                    "mu": value,
                }));
            } else {
                println!("mu = {value}");
            }
            Ok(())
        }
        Command::Worst1Ps { pair } => {
            let z = parse_pair(&pair.cubic, &pair.line, &tower)?;
            let w = worst_one_ps(&z);
            let report = WorstOnePsReport::new(&w);
            if cli.json {
                print_json(&report);
            } else {
                println!(
                    "lambda* = {:?}, mu = {}, cross-section value = {} (sign {})",
                    report.lambda, report.mu, report.value, report.sign
                );
            }
            Ok(())
        }
        Command::Witness { pair } => {
            let z = parse_pair(&pair.cubic, &pair.line, &tower)?;
            let cert = destabilizing_witness(&z)?;
            let report = cubicline::report::CertificateReport::new(&cert);
            if cli.json {
                print_json(&serde_json::json!({
                    "schema": SCHEMA_VERSION,
                    "certificate": report,
                }));
            } else {
                println!(
                    "lambda = {:?}, mu = {}, g = {:?}",
                    report.lambda, report.mu, report.g
                );
            }
            Ok(())
        }
        Command::NormalForm { pair } => {
            let z = parse_pair(&pair.cubic, &pair.line, &tower)?;
            let (g, target) = normal_form(&z)?;
            let report = NormalFormReport::new(&g, &target);
            if cli.json {
                print_json(&report);
            } else {
                println!("target: {}; {}", report.target.cubic, report.target.line);
                println!("g = {:?}", report.g);
            }
            Ok(())
        }
        Command::Wcusp { pair } => {
            let z = parse_pair(&pair.cubic, &pair.line, &tower)?;
            let w = wcusp_coordinate(&z)?;
            let report = WCuspReport::new(&w);
            if cli.json {
                print_json(&report);
            } else {
                println!(
                    "(b1 : b2) = ({} : {}) [weights (2,3)], D = {}, row {}",
                    report.b1, report.b2, report.discriminant, report.row
                );
                if let Some(b3) = &report.b_cubed {
                    println!("b^3 = {b3}");
                }
                if let Some(c2) = &report.c_squared {
                    println!("c^2 = {c2}");
                }
            }
            Ok(())
        }
        Command::Hesse { sub } => run_hesse(sub, cli.json),
        Command::Atlas { sub } => run_atlas(sub, cli.json, cli.seed, cli.jobs),
        Command::Family { sub } => run_family(sub, cli.json),
    }
}

fn hesse_point(text: &str) -> Result<HessePoint, Error> {
    let v = parse_csv_scalars(text, 2)?;
    if v[0].is_zero() && v[1].is_zero() {
        return Err(Error::Parse("pencil point must be nonzero".into()));
    }
    Ok(HessePoint::new(v[0].clone(), v[1].clone()))
}

fn run_hesse(cmd: HesseCmd, json: bool) -> Result<(), Error> {
    match cmd {
        HesseCmd::Orbit { mu } => {
            let m = hesse_point(&mu)?;
            let (orbit, stab) = hesse::orbit_and_stabilizer(&m);
            if json {
                print_json(&serde_json::json!({
                    "schema": SCHEMA_VERSION,
                    "orbit": orbit.iter().map(|p| format!("{p:?}")).collect::<Vec<_>>(),
                    "orbit_size": orbit.len(),
                    "stabilizer_order": stab,
                }));
            } else {
                println!("orbit size {}, stabilizer order {}", orbit.len(), stab);
                for p in orbit {
                    println!("  {p:?}");
                }
            }
            Ok(())
        }
        HesseCmd::Fiber { mu, b } => {
            let m = hesse_point(&mu)?;
            let bv = parse_csv_scalars(&b, 3)?;
            let point = ProjectivePoint::new([bv[0].clone(), bv[1].clone(), bv[2].clone()]);
            let fib = hesse::fiber(&m, &point)?;
            if json {
                print_json(&serde_json::json!({
                    "schema": SCHEMA_VERSION,
                    "count": fib.len(),
                    "points": fib
                        .iter()
                        .map(|f| format!("{:?} x {:?}", f.mu, f.b))
                        .collect::<Vec<_>>(),
                }));
            } else {
                println!("fiber has {} points", fib.len());
            }
            Ok(())
        }
        HesseCmd::J { mu } => {
            let m = hesse_point(&mu)?;
            let j = hesse::j_invariant(&m);
            let text = match &j {
                JValue::Finite(v) => v.to_string(),
                JValue::Infinity => "infinity".to_string(),
            };
            if json {
                print_json(&serde_json::json!({
                    "schema": SCHEMA_VERSION,
                    "j": text,
                }));
            } else {
                println!("j = {text}");
            }
            Ok(())
        }
        HesseCmd::Incidence => {
            let table = hesse::incidence_table();
            if json {
                let lines: Vec<_> = table
                    .line_to_vertices
                    .iter()
                    .map(|((i, j), vs)| {
                        serde_json::json!({
                            "line": format!("A_{i}^({j})"),
                            "vertices": vs
                                .iter()
                                .map(|(a, k)| format!("O^({a},{k})"))
                                .collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                print_json(&serde_json::json!({
                    "schema": SCHEMA_VERSION,
                    "lines": lines,
                }));
            } else {
                for ((i, j), vs) in &table.line_to_vertices {
                    let labels: Vec<String> =
                        vs.iter().map(|(a, k)| format!("O^({a},{k})")).collect();
                    println!("A_{i}^({j}): {}", labels.join(", "));
                }
            }
            Ok(())
        }
        HesseCmd::Group { order } => {
            let group = hesse::g216();
            if json {
                print_json(&serde_json::json!({
                    "schema": SCHEMA_VERSION,
                    "order": group.len(),
                }));
            } else if order {
                println!("{}", group.len());
            } else {
                println!("pencil-preserving group of order {}", group.len());
            }
            Ok(())
        }
    }
}

fn run_atlas(cmd: AtlasCmd, json: bool, seed: u64, jobs: usize) -> Result<(), Error> {
    match cmd {
        AtlasCmd::VerifyPhi {
            chart,
            samples,
            tower,
        } => {
            let tower = parse_tower_label(&tower)?;
            let charts: Vec<u8> = match chart {
                Some(j) => vec![j],
                None => (1..=7).collect(),
            };
            let tasks: Vec<Box<dyn FnOnce() -> VerifyReport + Send>> = charts
                .into_iter()
                .map(|j| {
                    let tower = tower.clone();
                    Box::new(move || atlas::verify_phi_extension(&tower, j, samples, seed))
                        as Box<dyn FnOnce() -> VerifyReport + Send>
                })
                .collect();
            emit_reports(run_parallel(jobs, tasks), json)
        }
        AtlasCmd::VerifyPsi { chart, samples } => {
            let charts: Vec<u8> = match chart {
                Some(r) => vec![r],
                None => (1..=4).collect(),
            };
            let tasks: Vec<Box<dyn FnOnce() -> VerifyReport + Send>> = charts
                .into_iter()
                .map(|r| {
                    Box::new(move || atlas::verify_psi(r, samples, seed))
                        as Box<dyn FnOnce() -> VerifyReport + Send>
                })
                .collect();
            emit_reports(run_parallel(jobs, tasks), json)
        }
        AtlasCmd::Strata => {
            let mut tasks: Vec<Box<dyn FnOnce() -> VerifyReport + Send>> = Vec::new();
            for j in 1..=7u8 {
                tasks.push(Box::new(move || atlas::verify_phi_strata(j)));
            }
            for r in 1..=4u8 {
                tasks.push(Box::new(move || atlas::verify_psi_strata(r)));
            }
            emit_reports(run_parallel(jobs, tasks), json)
        }
        AtlasCmd::Transitions { samples } => {
            let mut reports = Vec::new();
            for j in 1..=7u8 {
                for jp in (j + 1)..=7u8 {
                    reports.push(atlas::verify_phi_transition(j, jp, samples, seed));
                }
            }
            reports.push(atlas::verify_phi_transition_12_exceptional(samples, seed));
            emit_reports(reports, json)
        }
    }
}

fn run_family(cmd: FamilyCmd, json: bool) -> Result<(), Error> {
    match cmd {
        FamilyCmd::Limits { family } => {
            let print_pair = |label: &str, z: &CubicLinePair| {
                if !json {
                    println!("{label}: {}; {}", z.cubic, z.line);
                }
            };
            if let Some(spec) = family.strip_prefix("graph:") {
                let v = parse_csv_scalars(spec, 4)?;
                let (first, second) = atlas::verify_graph_closure(&v[0], &v[1], &v[2], &v[3])?;
                if json {
                    print_json(&serde_json::json!({
                        "schema": SCHEMA_VERSION,
                        "first_limit": {"cubic": first.cubic.to_string(), "line": first.line.to_string()},
                        "second_limit": {"cubic": second.cubic.to_string(), "line": second.line.to_string()},
                    }));
                } else {
                    print_pair("limit (raw family)", &first);
                    print_pair("limit (transported)", &second);
                }
                return Ok(());
            }
            if family == "wt" {
                let fam = atlas::wt_limit_family();
                let lim = fam.limit_at_zero()?;
                if json {
                    print_json(&serde_json::json!({
                        "schema": SCHEMA_VERSION,
                        "limit": {"cubic": lim.cubic.to_string(), "line": lim.line.to_string()},
                    }));
                } else {
                    print_pair("limit", &lim);
                }
                return Ok(());
            }
            let fams = cubicline::stability::identification_families();
            let f = fams
                .iter()
                .find(|f| f.name == family)
                .ok_or_else(|| Error::Parse(format!("unknown family {family}")))?;
            let lim = f.family.limit_at_zero()?;
            if json {
                print_json(&serde_json::json!({
                    "schema": SCHEMA_VERSION,
                    "family": f.name,
                    "generic_row": f.generic_row,
                    "limit": {"cubic": lim.cubic.to_string(), "line": lim.line.to_string()},
                }));
            } else {
                print_pair(&format!("limit of {}", f.name), &lim);
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
