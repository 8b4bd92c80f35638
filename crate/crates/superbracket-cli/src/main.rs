//! Command-line verifier for bracket identities in associative
//! (super)algebras and for Poisson superbracket laws.
//!
//! Exit codes: 0 when every selected check holds (or, for `theorem` and
//! `fuzz`, when no implication is violated), 1 when an identity fails
//! with a witness, 2 on input or usage errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use superbracket::catalog::CatalogIdentity;
use superbracket::exec::Strategy;
use superbracket::families;
use superbracket::fuzz;
use superbracket::poisson::{check_pb_properties, monomial_triples, random_triples, PoissonStructure, StructureKind};
use superbracket::reconstruct::theorem2_check;
use superbracket::report::{TupleWitness, Verification};
use superbracket::tensor::{BracketTables, StructureTensor};
use superbracket::Error;

#[derive(Parser)]
#[command(name = "superbracket", version, about = "Exact verification of commutator/anticommutator identities")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for randomized sampling (fuzz trials, random Poisson
    /// triples). Fixed seed, identical report.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Evaluation strategy for the per-tuple loops.
    #[arg(long, global = true, value_enum, default_value_t = StrategyArg::Par)]
    strategy: StrategyArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Seq,
    Par,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Seq => Strategy::Sequential,
            StrategyArg::Par => Strategy::Parallel,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run identity suites against an algebra file (or the property
    /// suite against a Poisson structure file).
    Verify(VerifyArgs),
    /// Check the bracket-to-product reconstruction theorem on a
    /// bracket-table file.
    Theorem {
        /// Bracket-table file (keys "f" and "c").
        file: PathBuf,
    },
    /// Sample random structure tensors and tabulate which identities
    /// imply which.
    Fuzz(FuzzArgs),
    /// Generate an n-ary identity family member and verify it.
    #[command(name = "gen-identity")]
    GenIdentity(GenArgs),
    /// Run the Poisson bracket property suite against a structure file.
    Poisson(PoissonArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Algebra file ({"name","dim","parity","F"}) or Poisson structure
    /// file ({"even","odd","pi_even","pi_odd"}).
    file: PathBuf,
    /// Which suites to run (algebra files only).
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Maximum total degree of the exhaustive Poisson sample triples.
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Associativity,
    Fundamental,
    DoubleBracket,
    StructureConstants,
}

#[derive(Args)]
struct FuzzArgs {
    /// Dimension range, e.g. "2..4" (inclusive).
    #[arg(long, default_value = "2..3", value_parser = parse_dim_range)]
    dim: (usize, usize),
    /// Number of random tensors to sample (at least 1).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Number of elements (meaningful for fundamental/mixed/helper;
    /// capped at 9 to keep reports readable).
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..=9))]
    n: Option<u64>,
    /// Output form for the generated expression; defaults to --format.
    #[arg(long, value_enum)]
    emit: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// Cyclic single-commutator family (n >= 3).
    Fundamental,
    /// Two-anticommutator mixed family (n >= 4).
    Mixed,
    /// Four-term helper family (n >= 2).
    Helper,
    /// Four-element nested-commutator identity and its word form.
    Wever,
    /// Six-term word form of the three-element Jacobi identity.
    Jacobi3,
}

#[derive(Args)]
struct PoissonArgs {
    /// Poisson structure file.
    file: PathBuf,
    /// Maximum total degree of the exhaustive monomial triples.
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    /// Number of additional seeded random triples.
    #[arg(long, default_value_t = 32)]
    random: usize,
}

fn parse_dim_range(src: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = src
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got {src:?}"))?;
    let lo: usize = lo.trim().parse().map_err(|_| format!("bad lower bound {lo:?}"))?;
    let hi: usize = hi.trim().parse().map_err(|_| format!("bad upper bound {hi:?}"))?;
    if lo == 0 || hi < lo {
        return Err(format!("empty or zero dimension range {src:?}"));
    }
    Ok((lo, hi))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let strategy: Strategy = cli.strategy.into();
    let result = match &cli.command {
        Command::Verify(args) => cmd_verify(args, cli.format, cli.seed, strategy),
        Command::Theorem { file } => cmd_theorem(file, cli.format, strategy),
        Command::Fuzz(args) => cmd_fuzz(args, cli.format, cli.seed, strategy),
        Command::GenIdentity(args) => cmd_gen(args, cli.format),
        Command::Poisson(args) => {
            cmd_poisson(&args.file, args.max_degree, args.random, cli.format, cli.seed, strategy)
        }
    };
    match result {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// One rendered check: suite, name, verdict, optional witness.
#[derive(Serialize)]
struct CheckRecord {
    suite: &'static str,
    name: String,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessRecord>,
}

#[derive(Serialize)]
struct WitnessRecord {
    location: String,
    residual: String,
}

impl CheckRecord {
    fn from_tuple(suite: &'static str, name: impl Into<String>, v: &Verification<TupleWitness>) -> Self {
        let witness = v.witness().map(|w| WitnessRecord {
            location: format!(
                "({})",
                w.tuple.iter().map(|i| format!("T{}", i + 1)).collect::<Vec<_>>().join(",")
            ),
            residual: w
                .residual
                .iter()
                .map(|(i, c)| format!("({c})*T{}", i + 1))
                .collect::<Vec<_>>()
                .join(" + "),
        });
        CheckRecord { suite, name: name.into(), passed: v.holds(), witness }
    }
}

fn render_checks(header: String, checks: &[CheckRecord], format: Format, command: &str) -> bool {
    let all_passed = checks.iter().all(|c| c.passed);
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Envelope<'a> {
                schema: u32,
                command: &'a str,
                subject: &'a str,
                checks: &'a [CheckRecord],
                all_passed: bool,
            }
            let out = Envelope { schema: 1, command, subject: &header, checks, all_passed };
            println!("{}", serde_json::to_string_pretty(&out).expect("report serialization"));
        }
        Format::Text => {
            println!("{header}");
            for c in checks {
                let name = format!("{} [{}]", c.name, c.suite);
                match (&c.passed, &c.witness) {
                    (true, _) => println!("  {name:<44} PASS"),
                    (false, Some(w)) => {
                        println!("  {name:<44} FAIL at {}: residual {}", w.location, w.residual)
                    }
                    (false, None) => println!("  {name:<44} FAIL"),
                }
            }
            println!("{}", if all_passed { "all checks passed" } else { "FAILURES detected" });
        }
    }
    all_passed
}

/// Distinguishes the three input file shapes by their keys.
enum InputFile {
    Algebra(StructureTensor),
    Brackets(BracketTables),
    Poisson(PoissonStructure),
}

fn load_input(path: &Path) -> Result<InputFile, Error> {
    let src = std::fs::read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&src)?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("input file must be a JSON object".into()))?;
    if obj.contains_key("F") {
        Ok(InputFile::Algebra(StructureTensor::from_json_str(&src)?))
    } else if obj.contains_key("f") || obj.contains_key("c") {
        Ok(InputFile::Brackets(BracketTables::from_json_str(&src)?))
    } else if obj.contains_key("pi_even") || (obj.contains_key("even") && obj.contains_key("odd")) {
        Ok(InputFile::Poisson(PoissonStructure::from_json_str(&src)?))
    } else {
        Err(Error::Parse(
            "unrecognized input: expected an algebra (\"F\"), bracket tables (\"f\"/\"c\") or a Poisson structure (\"pi_even\")".into(),
        ))
    }
}

fn cmd_verify(args: &VerifyArgs, format: Format, seed: u64, strategy: Strategy) -> Result<bool, Error> {
    match load_input(&args.file)? {
        InputFile::Algebra(algebra) => {
            let mut checks = Vec::new();
            let want = |s: Suite| args.suite == Suite::All || args.suite == s;
            if want(Suite::Associativity) {
                checks.push(CheckRecord::from_tuple(
                    "associativity",
                    "associativity (contracted)",
                    &algebra.check_associativity_with(strategy),
                ));
                checks.push(CheckRecord::from_tuple(
                    "associativity",
                    "associativity (basis elements)",
                    &algebra.check_associativity_elements_with(strategy),
                ));
            }
            if want(Suite::Fundamental) {
                checks.push(CheckRecord::from_tuple(
                    "fundamental",
                    "fundamental",
                    &algebra.check_fundamental_identity_with(strategy),
                ));
            }
            if want(Suite::DoubleBracket) {
                for id in [
                    CatalogIdentity::Jacobi,
                    CatalogIdentity::AntiJacobi,
                    CatalogIdentity::ExchangeI,
                    CatalogIdentity::ExchangeII,
                ] {
                    checks.push(CheckRecord::from_tuple(
                        "double-bracket",
                        id.name(),
                        &algebra.check_catalog_identity_with(id, strategy),
                    ));
                }
            }
            if want(Suite::StructureConstants) {
                let tables = algebra.decompose();
                for (id, verdict) in tables.check_sc_identities_with(strategy) {
                    checks.push(CheckRecord::from_tuple(
                        "structure-constants",
                        format!("{} (contracted tables)", id.name()),
                        &verdict,
                    ));
                }
            }
            let header = format!("algebra {} (dim {})", algebra.name, algebra.dim());
            Ok(render_checks(header, &checks, format, "verify"))
        }
        InputFile::Poisson(structure) => {
            if args.suite != Suite::All {
                return Err(Error::Parse(
                    "suite selection applies to algebra files; Poisson structures run the full property suite".into(),
                ));
            }
            run_poisson_suite(&structure, args.max_degree, 32, format, seed, strategy)
        }
        InputFile::Brackets(_) => Err(Error::Parse(
            "bracket-table files are checked by the `theorem` subcommand".into(),
        )),
    }
}

fn cmd_theorem(file: &Path, format: Format, strategy: Strategy) -> Result<bool, Error> {
    let tables = match load_input(file)? {
        InputFile::Brackets(t) => t,
        _ => {
            return Err(Error::Parse(
                "the `theorem` subcommand expects a bracket-table file with keys \"f\" and \"c\"".into(),
            ))
        }
    };
    let report = theorem2_check(&tables, strategy);
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Envelope<'a> {
                schema: u32,
                command: &'a str,
                subject: String,
                report: &'a superbracket::reconstruct::TheoremReport,
            }
            let out = Envelope {
                schema: 1,
                command: "theorem",
                subject: format!("{} (dim {})", tables.name, tables.dim()),
                report: &report,
            };
            println!("{}", serde_json::to_string_pretty(&out).expect("report serialization"));
        }
        Format::Text => {
            println!("theorem check: {} (dim {})", tables.name, tables.dim());
            for (name, verdict) in &report.hypothesis {
                match verdict.witness() {
                    None => println!("  hypothesis {name:<32} PASS"),
                    Some(w) => println!("  hypothesis {name:<32} FAIL at {w}"),
                }
            }
            println!("  hypothesis holds: {}", if report.hypothesis_holds { "yes" } else { "no" });
            match &report.associativity_witness {
                None => println!("  reconstructed product associative: yes"),
                Some(w) => println!("  reconstructed product associative: no ({w})"),
            }
            println!(
                "  implication (hypothesis => associative) violated: {}",
                if report.implication_violated { "YES - defect" } else { "no" }
            );
        }
    }
    Ok(!report.implication_violated)
}

fn cmd_fuzz(args: &FuzzArgs, format: Format, seed: u64, strategy: Strategy) -> Result<bool, Error> {
    let (lo, hi) = args.dim;
    let report = fuzz::fuzz_implications(lo..=hi, args.trials as usize, seed, strategy)?;
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&report).expect("report serialization"));
        }
        Format::Text => {
            println!(
                "fuzz: dims {}..{}, trials {}, seed {}",
                report.dims.0, report.dims.1, report.trials, report.seed
            );
            println!("satisfaction counts:");
            for (name, count) in report.identities.iter().zip(&report.satisfied) {
                println!("  {name:<16} {count}");
            }
            println!("implication violations (row holds, column fails):");
            let short: Vec<String> =
                (1..=report.identities.len()).map(|i| format!("#{i}")).collect();
            println!("  {:<16} {}", "", short.join(" "));
            for (a, name) in report.identities.iter().enumerate() {
                let row: Vec<String> = report.violations[a]
                    .iter()
                    .map(|v| format!("{v:>3}"))
                    .collect();
                println!("  {name:<16} {}", row.join(" "));
            }
            println!(
                "associativity <-> fundamental equivalence breaks: {}",
                report.equivalence_breaks
            );
        }
    }
    Ok(report.equivalence_breaks == 0)
}

fn cmd_gen(args: &GenArgs, format: Format) -> Result<bool, Error> {
    let emit = args.emit.unwrap_or(format);
    let default_n = match args.family {
        Family::Fundamental => 3,
        Family::Mixed => 4,
        Family::Helper => 2,
        Family::Wever | Family::Jacobi3 => 4,
    };
    let n = args.n.unwrap_or(default_n) as usize;

    // wever and jacobi3 run their dedicated derivation reports
    if matches!(args.family, Family::Wever) {
        let report = families::nested_four_report();
        return render_derivation(&families::nested_four(), Some(&families::nested_four_words()), &report, emit);
    }
    if matches!(args.family, Family::Jacobi3) {
        let id = families::jacobi_words();
        let zero = id
            .body
            .eval_free(&vec![superbracket::Parity::Even; id.arity])
            .map(|v| v.is_zero())
            .unwrap_or(false);
        let mut report = superbracket::DerivationReport::new("three-element Jacobi word form");
        report.push("word-form-zero", zero, "the six single brackets cancel on expansion");
        return render_derivation(&id, Some(&families::jacobi_nested()), &report, emit);
    }

    let identity = match args.family {
        Family::Fundamental => families::fundamental_family(n)?,
        Family::Mixed => families::mixed_family(n)?,
        Family::Helper => families::helper_family(n)?,
        Family::Wever | Family::Jacobi3 => unreachable!(),
    };
    let residual = identity.body.eval_free(&vec![superbracket::Parity::Even; identity.arity])?;
    let holds = residual.is_zero();
    match emit {
        Format::Json => {
            #[derive(Serialize)]
            struct Envelope<'a> {
                schema: u32,
                command: &'a str,
                name: &'a str,
                arity: usize,
                expression: String,
                tree: &'a superbracket::expr::ExprNode,
                expands_to_zero: bool,
            }
            let out = Envelope {
                schema: 1,
                command: "gen-identity",
                name: &identity.name,
                arity: identity.arity,
                expression: identity.body.to_string(),
                tree: &identity.body,
                expands_to_zero: holds,
            };
            println!("{}", serde_json::to_string_pretty(&out).expect("report serialization"));
        }
        Format::Text => {
            println!("identity {} (arity {})", identity.name, identity.arity);
            println!("  {}", identity.body);
            println!("expansion: {}", if holds { "ZERO (identity holds)" } else { "NONZERO" });
            if !holds {
                println!("residual: {residual}");
            }
        }
    }
    Ok(holds)
}

fn render_derivation(
    primary: &superbracket::expr::IdentityExpr,
    secondary: Option<&superbracket::expr::IdentityExpr>,
    report: &superbracket::DerivationReport,
    emit: Format,
) -> Result<bool, Error> {
    match emit {
        Format::Json => {
            #[derive(Serialize)]
            struct Envelope<'a> {
                schema: u32,
                command: &'a str,
                name: &'a str,
                expression: String,
                #[serde(skip_serializing_if = "Option::is_none")]
                companion: Option<String>,
                report: &'a superbracket::DerivationReport,
            }
            let out = Envelope {
                schema: 1,
                command: "gen-identity",
                name: &primary.name,
                expression: primary.body.to_string(),
                companion: secondary.map(|s| s.body.to_string()),
                report,
            };
            println!("{}", serde_json::to_string_pretty(&out).expect("report serialization"));
        }
        Format::Text => {
            println!("identity {} (arity {})", primary.name, primary.arity);
            println!("  {}", primary.body);
            if let Some(s) = secondary {
                println!("companion {}:", s.name);
                println!("  {}", s.body);
            }
            println!("{}:", report.title);
            for step in &report.steps {
                println!(
                    "  {:<28} {}  ({})",
                    step.name,
                    if step.passed { "PASS" } else { "FAIL" },
                    step.detail
                );
            }
        }
    }
    Ok(report.all_passed())
}

fn cmd_poisson(
    file: &Path,
    max_degree: usize,
    random: usize,
    format: Format,
    seed: u64,
    strategy: Strategy,
) -> Result<bool, Error> {
    let structure = match load_input(file)? {
        InputFile::Poisson(s) => s,
        _ => {
            return Err(Error::Parse(
                "the `poisson` subcommand expects a structure file with \"even\"/\"odd\"/\"pi_even\"".into(),
            ))
        }
    };
    run_poisson_suite(&structure, max_degree, random, format, seed, strategy)
}

fn run_poisson_suite(
    structure: &PoissonStructure,
    max_degree: usize,
    random: usize,
    format: Format,
    seed: u64,
    strategy: Strategy,
) -> Result<bool, Error> {
    let coords = structure.coords();
    let mut samples = monomial_triples(coords, max_degree);
    let exhaustive = samples.len();
    samples.extend(random_triples(coords, random, seed));
    let report = check_pb_properties(structure, &samples, strategy)?;
    let kind = match structure.kind() {
        StructureKind::Canonical => "canonical",
        StructureKind::Constant => "constant",
        StructureKind::CoordinateDependent => "coordinate-dependent",
    };
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Envelope<'a> {
                schema: u32,
                command: &'a str,
                even: usize,
                odd: usize,
                kind: &'a str,
                exhaustive_samples: usize,
                random_samples: usize,
                seed: u64,
                report: &'a superbracket::poisson::PoissonReport,
            }
            let out = Envelope {
                schema: 1,
                command: "poisson",
                even: coords.even,
                odd: coords.odd,
                kind,
                exhaustive_samples: exhaustive,
                random_samples: random,
                seed,
                report: &report,
            };
            println!("{}", serde_json::to_string_pretty(&out).expect("report serialization"));
        }
        Format::Text => {
            println!(
                "poisson structure: {} even, {} odd ({kind})",
                coords.even, coords.odd
            );
            println!(
                "samples: {exhaustive} exhaustive (total degree <= {max_degree}) + {random} random (seed {seed})"
            );
            for (name, verdict) in &report.checks {
                match verdict.witness() {
                    None => println!("  {name:<16} PASS"),
                    Some(w) => println!(
                        "  {name:<16} FAIL at sample {} ({}, {}, {}): residual {}",
                        w.sample_index, w.triple.0, w.triple.1, w.triple.2, w.residual
                    ),
                }
            }
            println!(
                "{}",
                if report.all_hold() { "all properties hold" } else { "FAILURES detected" }
            );
        }
    }
    Ok(report.all_hold())
}
