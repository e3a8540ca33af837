//! The `factorlab` command line: instance files, element expressions and the
//! commands that report on them.

pub mod element;
pub mod error;
pub mod instance;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use factorlab_core::factorization::{factorizations_with_budget, DEFAULT_NODE_BUDGET};
use factorlab_core::invariants::{davenport, summarize, InvariantReport, Omega, RefinedCatenary};
use factorlab_core::transfer::classify;
use factorlab_core::verification::{run_theorem_suite_with, SuiteOptions, Verdict};
use factorlab_core::{AbelianGroup, BlockModel, DegreeBound, LengthSet, ModelElement};
use serde::{Deserialize, Serialize};

pub use element::parse_element;
pub use error::CliError;
pub use instance::{parse_instance, InstanceFile};

#[derive(Debug, Parser)]
#[command(
    name = "factorlab",
    version,
    about = "Factorization invariants of T-block monoids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the atoms within the bound.
    Atoms(ModelArgs),
    /// All factorizations of one element.
    Factorize {
        #[command(flatten)]
        model: ModelArgs,
        /// Element expression, e.g. "free: [1, 1, 1, 2, 2, 2]".
        #[arg(long)]
        element: String,
    },
    /// Bounded invariants of the monoid.
    Invariants(ModelArgs),
    /// Structural predictions for the model.
    Classify(ModelArgs),
    /// Run the verification suite against the predictions.
    Verify(ModelArgs),
    /// Davenport constant of a finite abelian group.
    Davenport {
        /// Cyclic factors, e.g. 3,3.
        #[arg(long, value_delimiter = ',', required = true)]
        group: Vec<u32>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Instance file (JSON).
    instance: PathBuf,
    /// `default` or any of free=N,exp=N,atoms=N.
    #[arg(long, default_value = "default", value_parser = parse_bound)]
    bound: DegreeBound,
    /// Search budget in nodes.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    #[arg(long)]
    json: bool,
}

/// Parses `default` or a comma list of `free=N`, `exp=N`, `atoms=N`.
pub fn parse_bound(text: &str) -> Result<DegreeBound, String> {
    let mut bound = DegreeBound::default();
    if text.trim() == "default" {
        return Ok(bound);
    }
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, found '{item}'"))?;
        let n: u32 = value
            .trim()
            .parse()
            .map_err(|_| format!("'{value}' is not a non-negative integer"))?;
        match key.trim() {
            "free" => bound.max_free_length = n,
            "exp" => bound.max_exponent = n,
            "atoms" => bound.max_atom_count = n,
            other => return Err(format!("unknown bound key '{other}'")),
        }
    }
    Ok(bound)
}

/// Output of `factorize`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizeReport {
    pub element: ModelElement,
    pub factorizations: Vec<Vec<ModelElement>>,
    pub lengths: LengthSet,
    pub catenary: u32,
    pub refined: RefinedCatenary,
}

/// Output of `atoms`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomsReport {
    pub bound: DegreeBound,
    pub atoms: Vec<ModelElement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DavenportReport {
    pub group: Vec<u32>,
    pub davenport: usize,
}

/// Runs one command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn load(path: &Path) -> Result<BlockModel, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_instance(&text)
}

fn json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    writeln!(out, "{text}").map_err(io_error)
}

fn io_error(source: std::io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source,
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Davenport {
            group,
            json: as_json,
        } => {
            let g = AbelianGroup::from_invariants(&group)?;
            let report = DavenportReport {
                group: g.invariant_factors().to_vec(),
                davenport: davenport(&g),
            };
            if as_json {
                json(out, &report)?;
            } else {
                writeln!(out, "{}", report.davenport).map_err(io_error)?;
            }
            Ok(0)
        }
        Command::Atoms(args) => {
            let model = load(&args.instance)?;
            let mut atoms = Vec::new();
            for x in model.elements_within(&args.bound) {
                if model.is_atom(&x)? {
                    atoms.push(x);
                }
            }
            let report = AtomsReport {
                bound: args.bound,
                atoms,
            };
            if args.json {
                json(out, &report)?;
            } else {
                writeln!(out, "{} atoms within {}", report.atoms.len(), report.bound)
                    .map_err(io_error)?;
                for a in &report.atoms {
                    writeln!(out, "  {}", model.format_element(a)).map_err(io_error)?;
                }
            }
            Ok(0)
        }
        Command::Factorize {
            model: args,
            element,
        } => {
            let model = load(&args.instance)?;
            let a = parse_element(&element, &model)?;
            let set = factorizations_with_budget(&model, &a, args.budget)?;
            let summary = summarize(&model, &a, args.budget)?;
            let report = FactorizeReport {
                element: a.clone(),
                factorizations: set
                    .to_vec()
                    .into_iter()
                    .map(|z| z.atoms().cloned().collect())
                    .collect(),
                lengths: set.lengths(),
                catenary: summary.catenary,
                refined: summary.refined,
            };
            if args.json {
                json(out, &report)?;
            } else {
                let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(io_error);
                w(out, format!("element: {}", model.format_element(&a)))?;
                w(
                    out,
                    format!("{} factorizations", report.factorizations.len()),
                )?;
                for z in &report.factorizations {
                    let atoms: Vec<String> = z
                        .iter()
                        .map(|u| format!("({})", model.format_element(u)))
                        .collect();
                    w(out, format!("  [{}] {}", z.len(), atoms.join(" * ")))?;
                }
                w(out, format!("L = {}", format_set(report.lengths.values())))?;
                w(
                    out,
                    format!(
                        "c = {}, c_eq = {}, c_adj = {}, c_mon = {}",
                        report.catenary,
                        report.refined.equal,
                        report.refined.adjacent,
                        report.refined.monotone
                    ),
                )?;
            }
            Ok(0)
        }
        Command::Invariants(args) => {
            let model = load(&args.instance)?;
            let report = InvariantReport::compute_with(&model, &args.bound, 2..=5, args.budget)?;
            if args.json {
                json(out, &report)?;
            } else {
                write_invariants(out, &model, &report).map_err(io_error)?;
            }
            Ok(0)
        }
        Command::Classify(args) => {
            let model = load(&args.instance)?;
            let report = classify(&model);
            if args.json {
                json(out, &report)?;
            } else {
                let opt = |b: Option<bool>| b.map_or("undecided".to_string(), |b| b.to_string());
                writeln!(out, "pi bijective: {}", report.pi_bijective).map_err(io_error)?;
                writeln!(out, "vartheta iso: {}", opt(report.vartheta_iso)).map_err(io_error)?;
                writeln!(
                    out,
                    "half-factorial: {}",
                    opt(report.half_factorial_predicted)
                )
                .map_err(io_error)?;
                writeln!(out, "transfer: {:?}", report.applicable_transfer).map_err(io_error)?;
                for p in &report.predictions {
                    let scope = format!("{:?}", p.scope);
                    writeln!(
                        out,
                        "  {:<8} {:<15} {:<28} {}",
                        scope,
                        p.invariant.to_string(),
                        p.predicted.to_string(),
                        p.clause
                    )
                    .map_err(io_error)?;
                }
                for n in &report.notes {
                    writeln!(out, "note: {n}").map_err(io_error)?;
                }
            }
            Ok(0)
        }
        Command::Verify(args) => {
            let model = load(&args.instance)?;
            let opts = SuiteOptions {
                budget: args.budget,
                ..SuiteOptions::default()
            };
            let result = run_theorem_suite_with(&model, &args.bound, &opts);
            if args.json {
                json(out, &result)?;
            } else {
                writeln!(
                    out,
                    "suite within {} ({:.2}s)",
                    result.bound, result.elapsed_seconds
                )
                .map_err(io_error)?;
                for c in &result.checks {
                    writeln!(
                        out,
                        "  {:<34} {:<18} predicted {} | computed {}",
                        c.id,
                        c.verdict.to_string(),
                        c.predicted,
                        c.computed
                    )
                    .map_err(io_error)?;
                    if c.verdict == Verdict::Fail {
                        if let Some(w) = &c.witness {
                            writeln!(out, "    witness: {w}").map_err(io_error)?;
                        }
                    }
                }
            }
            let budget_hit = result
                .checks
                .iter()
                .any(|c| c.verdict == Verdict::InconclusiveBound && c.computed.contains("budget"));
            Ok(if !result.all_passed() {
                1
            } else if budget_hit {
                3
            } else {
                0
            })
        }
    }
}

fn format_set(values: impl Iterator<Item = u32>) -> String {
    let items: Vec<String> = values.map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn write_invariants(
    out: &mut dyn Write,
    model: &BlockModel,
    r: &InvariantReport,
) -> std::io::Result<()> {
    let tag = |key: &str| match r.exactness.get(key) {
        Some(e) if e.is_exact() => "exact",
        _ => "within bound",
    };
    writeln!(out, "{} elements within {}", r.elements_scanned, r.bound)?;
    writeln!(
        out,
        "delta   = {} ({})",
        format_set(r.delta.iter().copied()),
        tag("delta")
    )?;
    writeln!(out, "c       = {} ({})", r.catenary, tag("catenary"))?;
    writeln!(out, "c_eq    = {} ({})", r.catenary_eq, tag("catenary_eq"))?;
    writeln!(
        out,
        "c_adj   = {} ({})",
        r.catenary_adj,
        tag("catenary_adj")
    )?;
    writeln!(
        out,
        "c_mon   = {} ({})",
        r.catenary_mon,
        tag("catenary_mon")
    )?;
    let omega = match r.omega.value {
        Omega::Finite(v) => v.to_string(),
        Omega::Infinite => format!("infinite (observed {})", r.omega.observed),
    };
    writeln!(out, "omega   = {} ({})", omega, tag("omega"))?;
    writeln!(
        out,
        "half-factorial = {} ({})",
        r.half_factorial.value,
        tag("half_factorial")
    )?;
    if let Some((x, l)) = &r.half_factorial.witness {
        writeln!(
            out,
            "  witness {} with L = {}",
            model.format_element(x),
            format_set(l.values())
        )?;
    }
    for (k, u) in &r.unions {
        writeln!(
            out,
            "U_{k} = {}{} ({})",
            format_set(u.set.values()),
            if u.is_interval {
                ""
            } else {
                " not an interval"
            },
            tag(&format!("unions.{k}"))
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        assert_eq!(parse_bound("default").unwrap(), DegreeBound::default());
        assert_eq!(
            parse_bound("free=4,exp=3,atoms=5").unwrap(),
            DegreeBound::new(4, 3, 5)
        );
        assert_eq!(parse_bound("exp=2").unwrap(), DegreeBound::new(8, 2, 8));
        assert!(parse_bound("free").is_err());
        assert!(parse_bound("depth=3").is_err());
        assert!(parse_bound("free=-1").is_err());
    }
}
