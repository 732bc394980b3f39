use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use xorcount::synth::{emit_program, Equivalence, DEFAULT_SAMPLES};
use xorcount::verify::{Claim, Options, VerifyReport};
use xorcount::xorform::{min_xor_count_for_poly, scan_min_counts, SearchReport};
use xorcount::{exec, Error, Exec, Gf2Poly, XorProduct};

#[derive(Parser)]
#[command(name = "xorcount", version, about = "XOR-count search and verification over GF(2)")]
struct Cli {
    /// Worker threads for the exhaustive scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exhaustively check a claim.
    Verify {
        /// eq1, eq2, minors, thm1, conjecture, lemma14, prop11, converse or all.
        claim: String,
        #[arg(long)]
        n_max: Option<usize>,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
        /// Stop at the first violation.
        #[arg(long)]
        fail_fast: bool,
    },
    /// Minimum XOR-count of multiplication by an element with the given
    /// minimal polynomial.
    Search {
        #[arg(long)]
        poly: Gf2Poly,
        /// Field dimension (default: degree of the polynomial).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 2)]
        t_max: usize,
    },
    /// Minimum XOR-counts for every irreducible polynomial of one degree.
    Table {
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 2)]
        t_max: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Md)]
        format: TableFormat,
    },
    /// Emit an equivalence-checked XOR program for a minimal product.
    Emit {
        #[arg(long)]
        poly: Gf2Poly,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 2)]
        t_max: usize,
        #[arg(long, value_enum, default_value_t = EmitFormat::Netlist)]
        format: EmitFormat,
        /// Equivalence check against the matrix.
        #[arg(long, value_enum, default_value_t = CheckMode::Exhaustive)]
        check: CheckMode,
        /// Seed for `--check sample`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Md,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitFormat {
    Netlist,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckMode {
    Exhaustive,
    Sample,
}

enum Failure {
    Usage(String),
    Negative,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads;
    if threads == Some(0) {
        eprintln!("error: --threads must be at least 1");
        return ExitCode::from(2);
    }
    let outcome = exec::with_threads(threads, move || run(cli.command)).unwrap_or_else(|e| Err(e.into()));
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Verify { claim, n_max, json, fail_fast } => cmd_verify(&claim, n_max, json, fail_fast),
        Command::Search { poly, n, t_max } => cmd_search(&poly, n, t_max),
        Command::Table { degree, t_max, format } => cmd_table(degree, t_max, format),
        Command::Emit { poly, n, t_max, format, check, seed } => cmd_emit(&poly, n, t_max, format, check, seed),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn cmd_verify(claim: &str, n_max: Option<usize>, json: bool, fail_fast: bool) -> Result<(), Failure> {
    let claims: Vec<Claim> = if claim == "all" {
        Claim::ALL.to_vec()
    } else {
        vec![claim.parse().map_err(Failure::Usage)?]
    };
    let opts = Options { exec: Exec::Parallel, fail_fast };
    let mut reports: Vec<VerifyReport> = Vec::new();
    for c in &claims {
        let n = match n_max {
            Some(n) if claims.len() > 1 => n.min(c.cap()),
            Some(n) => n,
            None => c.default_n_max(),
        };
        reports.push(c.run(n, opts)?);
    }
    if json {
        if reports.len() == 1 {
            println!("{}", to_json(&reports[0]));
        } else {
            println!("{}", to_json(&reports));
        }
    } else {
        for r in &reports {
            print_summary(r);
        }
    }
    if reports.iter().all(|r| r.pass) {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn print_summary(r: &VerifyReport) {
    let range = match (r.n_range.first(), r.n_range.last()) {
        (Some(a), Some(b)) => format!("{a}..={b}"),
        _ => "-".to_string(),
    };
    println!(
        "{}: {} (n {range}, {} cases, {} {}, {} ms)",
        r.claim_id,
        if r.pass { "PASS" } else { "FAIL" },
        r.cases_checked,
        r.violations.len(),
        if r.claim_id == "converse" { "counterexamples" } else { "violations" },
        r.elapsed_ms
    );
    for v in &r.violations {
        println!("  {}", serde_json::to_string(v).expect("serializable"));
    }
}

fn search(poly: &Gf2Poly, n: Option<usize>, t_max: usize) -> Result<SearchReport, Failure> {
    let degree = poly.degree().filter(|&d| d > 0).ok_or(Error::ConstantPolynomial)?;
    Ok(min_xor_count_for_poly(poly, n.unwrap_or(degree), t_max, Exec::Parallel)?)
}

fn cmd_search(poly: &Gf2Poly, n: Option<usize>, t_max: usize) -> Result<(), Failure> {
    let report = search(poly, n, t_max)?;
    println!("{}", to_json(&report));
    if report.t.is_some() {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

#[derive(Serialize)]
struct TableRow {
    poly: Gf2Poly,
    degree: usize,
    weight: usize,
    min_xor_count: Count,
    witness: Option<XorProduct>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum Count {
    Exact(usize),
    Above(String),
}

impl std::fmt::Display for Count {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Count::Exact(t) => write!(f, "{t}"),
            Count::Above(s) => f.write_str(s),
        }
    }
}

fn cmd_table(degree: usize, t_max: usize, format: TableFormat) -> Result<(), Failure> {
    if !(2..=8).contains(&degree) {
        return Err(Failure::Usage(format!("degree = {degree} must lie in 2..=8")));
    }
    let counts = scan_min_counts(degree, t_max, Exec::Parallel)?;
    let mut polys = Gf2Poly::enumerate_irreducibles(degree, None)?;
    polys.sort();
    let rows: Vec<TableRow> = polys
        .into_iter()
        .map(|f| {
            let hit = counts.get(&f);
            TableRow {
                degree,
                weight: f.weight(),
                min_xor_count: hit.map_or_else(|| Count::Above(format!(">{t_max}")), |m| Count::Exact(m.t)),
                witness: hit.map(|m| m.witness.clone()),
                poly: f,
            }
        })
        .collect();
    match format {
        TableFormat::Json => println!("{}", to_json(&rows)),
        TableFormat::Md => {
            println!("| poly | degree | weight | min_xor_count | witness |");
            println!("|---|---|---|---|---|");
            for r in &rows {
                println!("| {} | {} | {} | {} | {} |", r.poly, r.degree, r.weight, r.min_xor_count, witness_text(&r.witness));
            }
        }
        TableFormat::Csv => {
            println!("poly,degree,weight,min_xor_count,witness");
            for r in &rows {
                println!("{},{},{},{},{}", r.poly, r.degree, r.weight, r.min_xor_count, witness_text(&r.witness));
            }
        }
    }
    Ok(())
}

fn witness_text(w: &Option<XorProduct>) -> String {
    match w {
        None => String::new(),
        Some(x) => {
            let parts: Vec<String> = x.cycle_type().parts().iter().map(usize::to_string).collect();
            let factors: String = x.factors().iter().map(|(i, j)| format!("({i} {j})")).collect();
            format!("[{}]{factors}", parts.join(" "))
        }
    }
}

#[derive(Serialize)]
struct EmitReport<'a> {
    poly: &'a Gf2Poly,
    n: usize,
    t: usize,
    witness: &'a XorProduct,
    program: &'a xorcount::synth::XorProgram,
}

fn cmd_emit(
    poly: &Gf2Poly,
    n: Option<usize>,
    t_max: usize,
    format: EmitFormat,
    check: CheckMode,
    seed: u64,
) -> Result<(), Failure> {
    let report = search(poly, n, t_max)?;
    let Some(witness) = report.witness else {
        eprintln!("no product with at most {t_max} factors represents {poly} in dimension {}", report.n);
        return Err(Failure::Negative);
    };
    let program = emit_program(&witness);
    let mode = match check {
        CheckMode::Exhaustive => Equivalence::Exhaustive,
        CheckMode::Sample => Equivalence::Sample { count: DEFAULT_SAMPLES, seed },
    };
    if !program.check_equivalence(&witness.realize(), mode)? {
        eprintln!("emitted program disagrees with its matrix; refusing to print it");
        return Err(Failure::Negative);
    }
    match format {
        EmitFormat::Netlist => print!("{}", program.to_netlist()),
        EmitFormat::Json => {
            let out = EmitReport { poly, n: report.n, t: witness.t(), witness: &witness, program: &program };
            println!("{}", to_json(&out));
        }
    }
    Ok(())
}
