use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use prodbasis::construct::{random_subspace, DEFAULT_ENUMERATION_BUDGET};
use prodbasis::gpt::build_entanglement_certificate;
use prodbasis::linalg::Echelon;
use prodbasis::tensor::{parse_vectors, vectors_to_text};
use prodbasis::verify::{factor_product, has_product_basis_bruteforce, sweep_codim1, SweepOptions};
use prodbasis::{
    product_basis_codim1, product_tuple, verify_product_basis, witness_no_product_basis,
    ConstructOptions, Error, Exec, FieldSpec, Subspace, TensorShape,
};

/// Product bases of subspaces of tensor-product spaces, with exact arithmetic.
///
/// Exit codes: 0 success, 1 verification failed, 2 precondition violated,
/// 3 completion failed, 4 budget exceeded, 5 parse error.
#[derive(Parser)]
#[command(name = "prodbasis", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct product vectors inside a subspace given by covectors.
    Construct(ConstructArgs),
    /// Write a (d̃−2)-dimensional subspace that has no product basis.
    Witness(SpaceArgs),
    /// Check a candidate product basis of a subspace.
    Verify(VerifyArgs),
    /// Enumerate all product vectors of a subspace over GF(p).
    Enumerate(EnumerateArgs),
    /// Construct and brute-force every hyperplane of a space over GF(p).
    Sweep(SweepArgs),
    /// Print the partial-transpose certificate for the projection counterexample.
    GptDemo(GptArgs),
}

#[derive(Args)]
struct SpaceArgs {
    /// Local dimensions, e.g. 2x2x3.
    #[arg(long)]
    shape: String,
    /// Q or GFp, e.g. GF5.
    #[arg(long)]
    field: String,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    space: SpaceArgs,
    /// File with one or more covectors; `-` reads stdin.
    #[arg(long, conflicts_with = "random_codim")]
    covector: Option<PathBuf>,
    /// Use r random independent covectors (default 1).
    #[arg(long)]
    random_codim: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run outside the guaranteed finite-field regime.
    #[arg(long)]
    force: bool,
    /// Cap on the exhaustive fallback of the completion search.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    budget: u128,
}

#[derive(Args)]
struct VerifyArgs {
    /// Subspace file.
    #[arg(long)]
    subspace: PathBuf,
    /// Candidate vectors; `-` or omitted reads stdin.
    #[arg(long)]
    candidates: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Subspace file; `-` or omitted reads stdin.
    #[arg(long)]
    subspace: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    budget: u128,
    /// Run on the calling thread only.
    #[arg(long)]
    sequential: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    space: SpaceArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    budget: u128,
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct GptArgs {
    #[arg(long, default_value = "2x2")]
    shape: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::NotPrime(_) => 5,
            Error::CompletionNotFound { .. } => 3,
            Error::BudgetExceeded { .. } => 4,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn parse_failure(message: String) -> Failure {
    Failure { code: 5, message }
}

fn parse_space(shape: &str, field: &str) -> Result<(TensorShape, FieldSpec), Failure> {
    let s = shape
        .parse::<TensorShape>()
        .map_err(|e| parse_failure(format!("--shape {shape}: {e}")))?;
    let f = field
        .parse::<FieldSpec>()
        .map_err(|e| parse_failure(format!("--field {field}: {e}")))?;
    Ok((s, f))
}

fn read_input(path: Option<&Path>) -> Result<String, Failure> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::read_to_string(p).map_err(|e| parse_failure(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

/// Writes through a temporary file in the target directory, then renames.
fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            let dir = path
                .parent()
                .filter(|d| !d.as_os_str().is_empty())
                .unwrap_or(Path::new("."));
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(text.as_bytes())?;
            tmp.persist(path).map_err(|e| Failure::from(e.error))?;
            Ok(())
        }
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn exec(sequential: bool) -> Exec {
    if sequential {
        Exec::Sequential
    } else {
        Exec::default()
    }
}

fn construct(args: ConstructArgs) -> Result<u8, Failure> {
    let (shape, field) = parse_space(&args.space.shape, &args.space.field)?;
    let l = match &args.covector {
        Some(path) => {
            let covectors = parse_vectors(&read_input(Some(path))?)?;
            if let Some(w) = covectors
                .iter()
                .find(|w| w.shape() != &shape || w.field() != field)
            {
                return Err(parse_failure(format!(
                    "covector of shape {} over {} given for {shape} over {field}",
                    w.shape(),
                    w.field()
                )));
            }
            Subspace::from_cogenerators(&shape, field, covectors)?
        }
        None => random_subspace(&shape, field, args.random_codim.unwrap_or(1), args.seed)?,
    };
    let opts = ConstructOptions {
        seed: args.seed,
        force: args.force,
        max_trials: None,
        enumeration_budget: args.budget,
    };
    let tuple = if l.codim() == 1 {
        product_basis_codim1(&l, &opts)?
    } else {
        product_tuple(&l, &opts)?
    };
    let vectors = tuple.embedded();

    let (ok, summary) = if l.codim() == 1 {
        let report = verify_product_basis(&vectors, &l);
        (
            report.ok,
            format!(
                "verification: ok={} rank={} expected={}",
                report.ok, report.rank_found, report.expected
            ),
        )
    } else {
        let mut ech = Echelon::new(field, shape.total());
        let sound = vectors.iter().all(|v| {
            factor_product(v).is_some() && l.contains(v).unwrap_or(false) && ech.insert(v.coords())
        });
        let expected = shape.total() - l.codim().pow(shape.parties() as u32);
        let ok = sound && ech.rank() == expected;
        (
            ok,
            format!(
                "verification: ok={ok} rank={} expected={expected}",
                ech.rank()
            ),
        )
    };
    let mut text = format!("# codimension {}\n", l.codim());
    for w in l.cogenerators() {
        text.push_str(&format!("# covector {}\n", w.to_text()));
    }
    text.push_str(&vectors_to_text(&shape, field, &vectors));
    write_output(args.space.out.as_deref(), &text)?;
    eprintln!("{summary}");
    Ok(if ok { 0 } else { 1 })
}

fn witness(args: SpaceArgs) -> Result<u8, Failure> {
    let (shape, field) = parse_space(&args.shape, &args.field)?;
    let l = witness_no_product_basis(&shape, field)?;
    write_output(args.out.as_deref(), &l.to_text())?;
    Ok(0)
}

fn verify(args: VerifyArgs) -> Result<u8, Failure> {
    let l = Subspace::parse(&read_input(Some(&args.subspace))?)?;
    let candidates = parse_vectors(&read_input(args.candidates.as_deref())?)?;
    let report = verify_product_basis(&candidates, &l);
    write_output(args.out.as_deref(), &report.to_string())?;
    Ok(if report.ok { 0 } else { 1 })
}

fn enumerate(args: EnumerateArgs) -> Result<u8, Failure> {
    let l = Subspace::parse(&read_input(args.subspace.as_deref())?)?;
    let verdict = has_product_basis_bruteforce(&l, args.budget, exec(args.sequential))?;
    let mut text = format!(
        "verdict {}\nproduct-span rank {}\ndim {}\nproduct vectors {}\n",
        if verdict.has_basis {
            "PRODUCT_BASIS"
        } else {
            "NO_PRODUCT_BASIS"
        },
        verdict.span_rank,
        l.dim(),
        verdict.product_count
    );
    let basis: Vec<_> = verdict.basis.iter().map(|p| p.embedded().clone()).collect();
    text.push_str(&vectors_to_text(l.shape(), l.field(), &basis));
    write_output(args.out.as_deref(), &text)?;
    Ok(0)
}

fn sweep(args: SweepArgs) -> Result<u8, Failure> {
    let (shape, field) = parse_space(&args.space.shape, &args.space.field)?;
    let opts = SweepOptions {
        seed: args.seed,
        budget: args.budget,
        exec: exec(args.sequential),
    };
    let report = sweep_codim1(&shape, field, &opts)?;
    write_output(args.space.out.as_deref(), &report.to_string())?;
    Ok(if report.discrepancies().is_empty() {
        0
    } else {
        1
    })
}

fn gpt_demo(args: GptArgs) -> Result<u8, Failure> {
    let shape = args
        .shape
        .parse::<TensorShape>()
        .map_err(|e| parse_failure(format!("--shape {}: {e}", args.shape)))?;
    let cert = build_entanglement_certificate(&shape)?;
    let mut text = format!("{cert}\n");
    text.push_str(&cert.partial_transpose.to_text());
    write_output(args.out.as_deref(), &text)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct(a) => construct(a),
        Command::Witness(a) => witness(a),
        Command::Verify(a) => verify(a),
        Command::Enumerate(a) => enumerate(a),
        Command::Sweep(a) => sweep(a),
        Command::GptDemo(a) => gpt_demo(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
