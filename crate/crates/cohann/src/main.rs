//! Command-line front end: every computation in the library behind one
//! binary with reproducible text or JSON output.
//!
//! Exit codes: 0 success, 2 mathematical validation failure, 3 input
//! syntax failure, 4 a result failed to stabilize while `--require-stable`
//! was set.  Identical invocations produce byte-identical output.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cohann::algebra::{default_truncation, TruncatedLocalAlgebra};
use cohann::annihilator::{
    cohomology_annihilator_catalog, ext2_annihilator, stable_annihilator, AnnihilatorOptions,
    IdealReport, TruncatedIdeal,
};
use cohann::catalog::Catalog;
use cohann::invariants::{
    jacobian_ideal, milnor_number, suspension_report, MilnorOutcome, SemigroupCurve,
};
use cohann::linalg::Subspace;
use cohann::mf::{BranchedCoverRing, MatrixFactorization};
use cohann::poly::{Polynomial, VarSet};
use cohann::verify::{all_passed, golden_suite, property_suite, CheckResult};
use cohann::{Error, Result};

#[derive(Parser)]
#[command(
    name = "cohann",
    version,
    about = "Exact annihilator computations for matrix factorizations of hypersurface singularities"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Truncation order N (model everything modulo m^N); overrides the
    /// COHANN_TRUNC environment variable and the built-in heuristic
    #[arg(long, global = true)]
    trunc: Option<u32>,

    /// Exit with code 4 if any reported result is not stabilized
    #[arg(long, global = true)]
    require_stable: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct RingArgs {
    /// Polynomial, written in the variables of --vars
    f: String,

    /// Comma-separated variable names
    #[arg(long, default_value = "x,y")]
    vars: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Stable annihilator of the cokernel of a matrix factorization
    Sann {
        /// Matrix factorization JSON file
        mf: PathBuf,
        /// Skip the stabilization recheck at truncation N+2
        #[arg(long)]
        quick: bool,
    },
    /// Cohomology annihilator ideal: intersection of stable annihilators
    /// over a catalog
    Ca {
        /// Built-in catalog for x^2 + y^(n+1)
        #[arg(long, conflicts_with = "catalog", required_unless_present = "catalog")]
        an: Option<u32>,
        /// Catalog JSON file
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Skip the stabilization recheck at truncation N+2
        #[arg(long)]
        quick: bool,
    },
    /// Stable annihilator computed through the cohomology action
    /// (independent of the homotopy solver; useful for cross-checking)
    Ext2 {
        /// Matrix factorization JSON file
        mf: PathBuf,
        /// Skip the stabilization recheck at truncation N+2
        #[arg(long)]
        quick: bool,
    },
    /// Double branched cover of a matrix factorization: blocks
    /// [[B, -zI], [zI, A]], [[A, zI], [-zI, B]] factoring f + z^2
    Knorrer {
        /// Matrix factorization JSON file
        mf: PathBuf,
        /// Name for the new square-root variable
        #[arg(long, default_value = "z")]
        var: String,
        /// Write the cover as JSON to this file instead of stdout
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Branched cover ring f + z^m of a hypersurface
    Cover {
        #[command(flatten)]
        ring: RingArgs,
        /// Cover exponent m >= 2
        #[arg(short = 'm', long, default_value_t = 2)]
        exponent: u32,
        /// Name for the new variable
        #[arg(long, default_value = "z")]
        var: String,
    },
    /// First partial derivatives of a polynomial, in variable order
    Jacobian {
        #[command(flatten)]
        ring: RingArgs,
    },
    /// Milnor number: dim of the ambient ring modulo f, its partial
    /// derivatives, and m^N, accepted only when stable from N-2 to N
    Milnor {
        #[command(flatten)]
        ring: RingArgs,
    },
    /// Gap data of the numerical semigroup <a, b> for the curve x^a + y^b
    Semigroup {
        a: u64,
        b: u64,
    },
    /// Check mu = 2*delta - r + 1 for x^a + y^b plus l extra squares
    Mj {
        a: u64,
        b: u64,
        /// Number of extra square variables z1^2 + ... + zl^2
        #[arg(long, default_value_t = 0)]
        l: u32,
    },
    /// Parse a matrix factorization file and recheck A*B = B*A = f*I
    ValidateMf {
        /// Matrix factorization JSON file
        mf: PathBuf,
    },
    /// Intersect ideals given by generator lists in a truncated quotient ring
    Intersect {
        /// Comma-separated variable names
        #[arg(long)]
        vars: String,
        /// Comma-separated defining relations of the quotient ring
        #[arg(long, default_value = "")]
        ring: String,
        /// Comma-separated generator list; repeat the flag once per ideal
        #[arg(long = "gens", required = true)]
        gens: Vec<String>,
        /// Skip the stabilization recheck at truncation N+2
        #[arg(long)]
        quick: bool,
    },
    /// Run a built-in check suite and report one verdict per check
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::Golden)]
        suite: Suite,
        /// Seed for the randomized property checks
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Golden,
    Properties,
}

fn main() {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

/// Resolve the truncation order: explicit flag, then COHANN_TRUNC, then
/// the heuristic from the defining relations.
fn resolve_trunc(flag: Option<u32>, relations: &[Polynomial]) -> Result<u32> {
    let supplied = match flag {
        Some(n) => Some(n),
        None => match std::env::var("COHANN_TRUNC") {
            Ok(text) => Some(text.parse::<u32>().map_err(|_| {
                Error::invalid(format!("COHANN_TRUNC must be an integer, got {text:?}"))
            })?),
            Err(_) => None,
        },
    };
    match supplied {
        Some(n) if n < 2 => Err(Error::invalid(format!(
            "truncation must be at least 2, got {n}"
        ))),
        Some(n) => Ok(n),
        None => Ok(default_truncation(relations)),
    }
}

fn hypersurface_algebra(f: &Polynomial, truncation: u32) -> Result<Arc<TruncatedLocalAlgebra>> {
    Ok(Arc::new(TruncatedLocalAlgebra::build(
        f.vars(),
        std::slice::from_ref(f),
        truncation,
    )?))
}

fn load_mf_setup(
    path: &PathBuf,
    trunc: Option<u32>,
    quick: bool,
) -> Result<(MatrixFactorization, Arc<TruncatedLocalAlgebra>, AnnihilatorOptions)> {
    let m = MatrixFactorization::from_json(&std::fs::read_to_string(path)?)?;
    let n = resolve_trunc(trunc, std::slice::from_ref(m.f()))?;
    let alg = hypersurface_algebra(m.f(), n)?;
    let opts = AnnihilatorOptions {
        check_stabilization: !quick,
    };
    Ok((m, alg, opts))
}

fn parse_ring(args: &RingArgs) -> Result<Polynomial> {
    let vars = VarSet::parse_list(&args.vars)?;
    Polynomial::parse(&args.f, &vars)
}

fn parse_poly_list(text: &str, vars: &VarSet) -> Result<Vec<Polynomial>> {
    text.split(',')
        .map(str::trim)
        .filter(|s: &&str| !s.is_empty())
        .map(|s| Polynomial::parse(s, vars))
        .collect()
}

fn print_json<T: Serialize>(doc: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(doc).expect("serializable")
    );
}

/// Print an ideal report and return the exit code demanded by
/// `--require-stable`.
fn emit_ideal(report: &IdealReport, format: Format, require_stable: bool) -> i32 {
    match format {
        Format::Json => print_json(report),
        Format::Text => {
            println!("generators: {}", report.generators.join(", "));
            println!("dim_quotient: {}", report.dim_quotient);
            println!("truncation: {}", report.truncation);
            println!("stabilized: {}", report.stabilized);
        }
    }
    if require_stable && !report.stabilized {
        eprintln!("error: result not stabilized at truncation {}", report.truncation);
        4
    } else {
        0
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    let format = cli.format;
    let require_stable = cli.require_stable;
    match cli.cmd {
        Cmd::Sann { mf, quick } => {
            let (m, alg, opts) = load_mf_setup(&mf, cli.trunc, quick)?;
            let ideal = stable_annihilator(&m, &alg, opts)?;
            Ok(emit_ideal(&ideal.report(), format, require_stable))
        }
        Cmd::Ext2 { mf, quick } => {
            let (m, alg, opts) = load_mf_setup(&mf, cli.trunc, quick)?;
            let ideal = ext2_annihilator(&m, &alg, opts)?;
            Ok(emit_ideal(&ideal.report(), format, require_stable))
        }
        Cmd::Ca { an, catalog, quick } => {
            let cat = match (an, catalog) {
                (Some(n), None) => Catalog::a_n(n)?,
                (None, Some(path)) => Catalog::load(path)?,
                _ => unreachable!("clap enforces exactly one source"),
            };
            let n = resolve_trunc(cli.trunc, std::slice::from_ref(cat.f()))?;
            let alg = hypersurface_algebra(cat.f(), n)?;
            let opts = AnnihilatorOptions {
                check_stabilization: !quick,
            };
            let ideal = cohomology_annihilator_catalog(cat.entries(), &alg, opts)?;
            Ok(emit_ideal(&ideal.report(), format, require_stable))
        }
        Cmd::Knorrer { mf, var, out } => {
            let m = MatrixFactorization::from_json(&std::fs::read_to_string(mf)?)?;
            let cover = m.knorrer_cover(&var)?;
            if let Some(path) = out {
                std::fs::write(&path, cover.to_json())?;
                println!("wrote {} ({}x{}) to {}", cover.label(), cover.size(), cover.size(), path.display());
            } else {
                match format {
                    Format::Json => println!("{}", cover.to_json()),
                    Format::Text => {
                        println!("label: {}", cover.label());
                        println!("f: {}", cover.f());
                        println!("A: {}", cover.a());
                        println!("B: {}", cover.b());
                    }
                }
            }
            Ok(0)
        }
        Cmd::Cover { ring, exponent, var } => {
            let f = parse_ring(&ring)?;
            let cover = BranchedCoverRing::new(&f, exponent, &var)?;
            #[derive(Serialize)]
            struct CoverDoc {
                base: String,
                variable: String,
                exponent: u32,
                cover: String,
            }
            let doc = CoverDoc {
                base: cover.base().to_string(),
                variable: cover.new_var().to_string(),
                exponent: cover.exponent(),
                cover: cover.cover_polynomial().to_string(),
            };
            match format {
                Format::Json => print_json(&doc),
                Format::Text => println!(
                    "{} + {}^{} = {}",
                    doc.base, doc.variable, doc.exponent, doc.cover
                ),
            }
            Ok(0)
        }
        Cmd::Jacobian { ring } => {
            let f = parse_ring(&ring)?;
            let partials: Vec<String> = jacobian_ideal(&f).iter().map(|p| p.to_string()).collect();
            #[derive(Serialize)]
            struct JacobianDoc {
                f: String,
                vars: Vec<String>,
                partials: Vec<String>,
            }
            match format {
                Format::Json => print_json(&JacobianDoc {
                    f: f.to_string(),
                    vars: f.vars().names().to_vec(),
                    partials,
                }),
                Format::Text => println!("({})", partials.join(", ")),
            }
            Ok(0)
        }
        Cmd::Milnor { ring } => {
            let f = parse_ring(&ring)?;
            let mut relations = vec![f.clone()];
            relations.extend(jacobian_ideal(&f));
            relations.retain(|p| !p.is_zero());
            let n = resolve_trunc(cli.trunc, &relations)?;
            let outcome = milnor_number(&f, n)?;
            #[derive(Serialize)]
            struct MilnorDoc {
                f: String,
                truncation: u32,
                finite: bool,
                #[serde(skip_serializing_if = "Option::is_none")]
                mu: Option<u64>,
            }
            let doc = MilnorDoc {
                f: f.to_string(),
                truncation: n,
                finite: outcome.finite().is_some(),
                mu: outcome.finite(),
            };
            match format {
                Format::Json => print_json(&doc),
                Format::Text => match outcome {
                    MilnorOutcome::Finite(mu) => println!("mu = {mu}"),
                    MilnorOutcome::NotFiniteAt { truncation } => println!(
                        "not finite at truncation {truncation} (not isolated, or raise --trunc)"
                    ),
                },
            }
            Ok(if require_stable && doc.mu.is_none() { 4 } else { 0 })
        }
        Cmd::Semigroup { a, b } => {
            let c = SemigroupCurve::new(a, b)?;
            #[derive(Serialize)]
            struct SemigroupDoc {
                a: u64,
                b: u64,
                frobenius: u64,
                delta: u64,
                symmetric: bool,
                gaps: Vec<u64>,
            }
            let doc = SemigroupDoc {
                a,
                b,
                frobenius: c.frobenius_number(),
                delta: c.delta_invariant(),
                symmetric: c.is_symmetric(),
                gaps: c.gaps(),
            };
            match format {
                Format::Json => print_json(&doc),
                Format::Text => println!(
                    "a={} b={} frobenius={} delta={} symmetric={} gaps=[{}]",
                    doc.a,
                    doc.b,
                    doc.frobenius,
                    doc.delta,
                    doc.symmetric,
                    doc.gaps
                        .iter()
                        .map(u64::to_string)
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            }
            Ok(0)
        }
        Cmd::Mj { a, b, l } => {
            let c = SemigroupCurve::new(a, b)?;
            let n = resolve_trunc(cli.trunc, &[c.suspension_polynomial(l)])?;
            let report = suspension_report(&c, l, n)?;
            match format {
                Format::Json => print_json(&report),
                Format::Text => {
                    println!(
                        "mu = {} ({}), delta = {} ({}), branches = {} ({})",
                        report.mu.value,
                        source_word(report.mu.source),
                        report.delta.value,
                        source_word(report.delta.source),
                        report.branches.value,
                        source_word(report.branches.source),
                    );
                    println!(
                        "mu = 2*delta - r + 1: {}",
                        if report.mj_holds { "holds" } else { "FAILS" }
                    );
                }
            }
            Ok(0)
        }
        Cmd::ValidateMf { mf } => {
            let m = MatrixFactorization::from_json(&std::fs::read_to_string(mf)?)?;
            #[derive(Serialize)]
            struct ValidDoc {
                valid: bool,
                size: usize,
                f: String,
                label: String,
            }
            let doc = ValidDoc {
                valid: true,
                size: m.size(),
                f: m.f().to_string(),
                label: m.label().to_string(),
            };
            match format {
                Format::Json => print_json(&doc),
                Format::Text => println!(
                    "ok: {}x{} factorization of {}{}",
                    doc.size,
                    doc.size,
                    doc.f,
                    if doc.label.is_empty() {
                        String::new()
                    } else {
                        format!(" (label {})", doc.label)
                    }
                ),
            }
            Ok(0)
        }
        Cmd::Intersect {
            vars,
            ring,
            gens,
            quick,
        } => {
            let vars = VarSet::parse_list(&vars)?;
            let relations = parse_poly_list(&ring, &vars)?;
            let n = resolve_trunc(cli.trunc, &relations)?;
            let lists = gens
                .iter()
                .map(|g| parse_poly_list(g, &vars))
                .collect::<Result<Vec<_>>>()?;
            let meet_at = |trunc: u32| -> Result<(Arc<TruncatedLocalAlgebra>, Subspace)> {
                let alg = Arc::new(TruncatedLocalAlgebra::build(&vars, &relations, trunc)?);
                let mut meet: Option<Subspace> = None;
                for list in &lists {
                    let space = alg.ideal_span(list)?;
                    meet = Some(match meet {
                        None => space,
                        Some(acc) => acc.intersect(&space),
                    });
                }
                Ok((alg, meet.expect("clap requires at least one --gens")))
            };
            let (alg, meet) = meet_at(n)?;
            let ideal = TruncatedIdeal::from_space(&alg, meet, false)?;
            let stabilized = if quick {
                false
            } else {
                let (bigger, meet_big) = meet_at(n + 2)?;
                let regrown: Vec<Polynomial> = ideal.generators().to_vec();
                bigger.ideal_span(&regrown)? == meet_big
            };
            let ideal = TruncatedIdeal::from_space(&alg, ideal.space().clone(), stabilized)?;
            Ok(emit_ideal(&ideal.report(), format, require_stable))
        }
        Cmd::Verify { suite, seed } => {
            let results: Vec<CheckResult> = match suite {
                Suite::Golden => golden_suite(),
                Suite::Properties => property_suite(seed),
            };
            match format {
                Format::Json => print_json(&results),
                Format::Text => {
                    for r in &results {
                        println!("{r}");
                    }
                }
            }
            if all_passed(&results) {
                Ok(0)
            } else {
                Err(Error::invalid(format!(
                    "{} of {} checks failed",
                    results.iter().filter(|r| !r.passed).count(),
                    results.len()
                )))
            }
        }
    }
}

fn source_word(source: cohann::invariants::ValueSource) -> &'static str {
    match source {
        cohann::invariants::ValueSource::Computed => "computed",
        cohann::invariants::ValueSource::Supplied => "supplied",
    }
}
