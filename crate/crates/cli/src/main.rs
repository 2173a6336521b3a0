mod doc;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use pqrbasis::assemble::{run_pipeline, Pipeline, PipelineOptions};
use pqrbasis::buchberger::bench::bench_spoly_compare;
use pqrbasis::buchberger::eliminant_oracle;
use pqrbasis::mpoly::expand_last_variable;
use pqrbasis::parse::{parse_poly, parse_system, ParseError, SystemFile};
use pqrbasis::proper::DEFAULT_MAX_ITER;
use pqrbasis::{Error, OrderKind};

use doc::{branch_doc, result_document, Poly, Timing};

#[derive(Parser)]
#[command(
    name = "pqrbasis",
    version,
    about = "Eliminants and modular bases of zero-dimensional ideals over Q"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the full pipeline and emit the result document as JSON.
    Eliminate {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Leave timing out of the document so repeated runs are byte-identical.
        #[arg(long)]
        no_timing: bool,
    },
    /// Run the pipeline and print the new basis branch by branch.
    Basis {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Decide membership of a polynomial, with the remainder in each branch.
    Member {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[command(flatten)]
        common: Common,
    },
    /// Reduced lex Groebner basis and eliminant by Buchberger's algorithm.
    Oracle {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Compare the pipeline eliminant with the oracle; exit 1 on mismatch.
    Check {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Compare the single-gcd S-polynomial with a simulated Buchberger chain.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [4usize, 8, 16, 32])]
        m: Vec<usize>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Clone)]
struct Common {
    /// Monomial order on the non-eliminated variables: lex, grlex or grevlex.
    #[arg(long)]
    order: Option<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Cap on reductions in the proper algorithm.
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
    #[arg(long)]
    json: bool,
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
    /// Process composite divisors in parallel.
    #[arg(long)]
    parallel: bool,
}

enum Failure {
    Mismatch(String),
    Input(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::Input(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Mismatch(m) | Failure::Input(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotZeroDimensional
            | Error::EmptyInput
            | Error::Precondition(_)
            | Error::ConstantInput(_)
            | Error::ZeroInput(_) => Failure::Input(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Input(format!("parse error at {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn load(path: &Path, common: &Common) -> Result<SystemFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let sys = parse_system(&text).map_err(|e| Failure::Input(format!("{}:{e}", path.display())))?;
    match &common.order {
        None => Ok(sys),
        Some(name) => {
            let kind = OrderKind::parse(name)
                .ok_or_else(|| Failure::Input(format!("unknown order '{name}'")))?;
            Ok(sys.with_order(kind))
        }
    }
}

fn emit(common: &Common, text: &str) -> Outcome {
    match &common.output {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(common: &Common, value: &T) -> Outcome {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    emit(common, &s)
}

fn pipeline(sys: &SystemFile, common: &Common) -> Result<(Pipeline, f64), Failure> {
    let opts = PipelineOptions {
        max_iter: common.max_iter,
        parallel: common.parallel,
    };
    let t = Instant::now();
    let p = run_pipeline(&sys.generators, opts)?;
    Ok((p, t.elapsed().as_secs_f64() * 1e3))
}

fn eliminate(file: &Path, common: &Common, no_timing: bool) -> Outcome {
    let sys = load(file, common)?;
    let (p, ms) = pipeline(&sys, common)?;
    let timing = (!no_timing).then_some(Timing { pipeline_ms: ms });
    let d = result_document(&sys, &p, timing)?;
    if !d.reconstruction.holds {
        return Err(Failure::Internal("reconstruction identity failed".into()));
    }
    emit_json(common, &d)
}

fn basis(file: &Path, common: &Common) -> Outcome {
    let sys = load(file, common)?;
    let (p, _) = pipeline(&sys, common)?;
    let z = sys.eliminant.as_str();
    let branches: Vec<_> = p
        .new_basis
        .branches()
        .map(|b| branch_doc(b, &p.full_order, &sys.variables, z))
        .collect();
    if common.json {
        #[derive(Serialize)]
        struct Out {
            chi: Poly,
            branches: Vec<doc::BranchDoc>,
        }
        return emit_json(
            common,
            &Out {
                chi: Poly::uni(p.chi(), z),
                branches,
            },
        );
    }
    let mut out = format!("chi = {}\n", p.chi().render(z));
    if p.new_basis.is_trivial() {
        out.push_str("the ideal is the whole ring\n");
    }
    for b in &branches {
        out.push_str(&format!("\n[{}] modulus {}\n", b.kind, b.divisor.text));
        for (k, f) in b.basis.iter().enumerate() {
            out.push_str(&format!("  b{} = {}\n", k + 1, f.text));
        }
    }
    emit(common, &out)
}

fn member(file: &Path, poly: &str, common: &Common) -> Outcome {
    let sys = load(file, common)?;
    let f = parse_poly(poly, &sys.variables, &sys.full_order())?;
    let (p, _) = pipeline(&sys, common)?;
    let g = p.absorb(&f);
    #[derive(Serialize)]
    struct Evidence {
        kind: String,
        divisor: Poly,
        remainder: Poly,
        zero: bool,
    }
    let z = sys.eliminant.as_str();
    let mut evidence = Vec::new();
    for b in p.new_basis.branches() {
        let r = b.remainder(&g)?;
        evidence.push(Evidence {
            kind: b.kind.name().into(),
            divisor: Poly::uni(&b.divisor, z),
            zero: r.is_zero(),
            remainder: Poly::multi(
                &expand_last_variable(&pqrbasis::pqr::lift_poly(&r), &p.full_order),
                &sys.variables,
            ),
        });
    }
    let verdict = p.new_basis.is_trivial() || evidence.iter().all(|e| e.zero);
    if common.json {
        #[derive(Serialize)]
        struct Out {
            poly: Poly,
            member: bool,
            branches: Vec<Evidence>,
        }
        return emit_json(
            common,
            &Out {
                poly: Poly::multi(&f, &sys.variables),
                member: verdict,
                branches: evidence,
            },
        );
    }
    let mut out = format!("member: {verdict}\n");
    for e in &evidence {
        out.push_str(&format!(
            "  [{}] modulus {}: remainder {}\n",
            e.kind, e.divisor.text, e.remainder.text
        ));
    }
    emit(common, &out)
}

fn oracle(file: &Path, common: &Common) -> Outcome {
    let sys = load(file, common)?.with_order(OrderKind::Lex);
    let (gb, chi) = eliminant_oracle(&sys.generators)?;
    let z = sys.eliminant.as_str();
    let gb: Vec<Poly> = gb.iter().map(|g| Poly::multi(g, &sys.variables)).collect();
    if common.json {
        #[derive(Serialize)]
        struct Out {
            basis: Vec<Poly>,
            chi: Poly,
        }
        return emit_json(
            common,
            &Out {
                basis: gb,
                chi: Poly::uni(&chi, z),
            },
        );
    }
    let mut out = String::new();
    for (k, g) in gb.iter().enumerate() {
        out.push_str(&format!("g{} = {}\n", k + 1, g.cleared));
    }
    out.push_str(&format!("chi = {}\n", chi.render(z)));
    emit(common, &out)
}

fn check(file: &Path, common: &Common) -> Outcome {
    let sys = load(file, common)?;
    let (p, _) = pipeline(&sys, common)?;
    let (_, chi) = eliminant_oracle(&sys.with_order(OrderKind::Lex).generators)?;
    let z = sys.eliminant.as_str();
    let agree = &chi == p.chi();
    if common.json {
        #[derive(Serialize)]
        struct Out {
            agree: bool,
            pipeline: Poly,
            oracle: Poly,
        }
        emit_json(
            common,
            &Out {
                agree,
                pipeline: Poly::uni(p.chi(), z),
                oracle: Poly::uni(&chi, z),
            },
        )?;
    } else {
        emit(
            common,
            &format!(
                "pipeline: {}\noracle:   {}\nagree: {agree}\n",
                p.chi().render(z),
                chi.render(z)
            ),
        )?;
    }
    if agree {
        Ok(())
    } else {
        Err(Failure::Mismatch("eliminants differ".into()))
    }
}

fn bench(ms: &[usize], trials: usize, common: &Common) -> Outcome {
    if ms.contains(&0) {
        return Err(Failure::Input("m must be at least 1".into()));
    }
    let report = bench_spoly_compare(ms, trials, common.seed)?;
    if common.json {
        #[derive(Serialize)]
        struct Row {
            m: usize,
            mean_ops_single_gcd: f64,
            mean_ops_euclid_chain: f64,
            ratio: f64,
            mean_bits_single_gcd: f64,
            mean_bits_euclid_chain: f64,
        }
        let rows: Vec<Row> = ms
            .iter()
            .map(|&m| {
                let (new, old) = (
                    report.mean_ops(m, "single_gcd"),
                    report.mean_ops(m, "euclid_chain"),
                );
                Row {
                    m,
                    mean_ops_single_gcd: new,
                    mean_ops_euclid_chain: old,
                    ratio: old / new,
                    mean_bits_single_gcd: report.mean_bits(m, "single_gcd"),
                    mean_bits_euclid_chain: report.mean_bits(m, "euclid_chain"),
                }
            })
            .collect();
        emit_json(common, &rows)?;
    } else {
        emit(common, &report.to_csv())?;
    }
    if report.identity_failures > 0 {
        return Err(Failure::Mismatch(format!(
            "{} chain results failed the cofactor identity",
            report.identity_failures
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Eliminate {
            file,
            common,
            no_timing,
        } => eliminate(file, common, *no_timing),
        Cmd::Basis { file, common } => basis(file, common),
        Cmd::Member { file, poly, common } => member(file, poly, common),
        Cmd::Oracle { file, common } => oracle(file, common),
        Cmd::Check { file, common } => check(file, common),
        Cmd::Bench { m, trials, common } => bench(m, *trials, common),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
