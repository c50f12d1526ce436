use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use genus_cli::cache::{Cache, CacheRecord};
use genus_cli::config::{FileConfig, Settings};
use genus_cli::scan::{run_scan, Check, ScanJob, SignFilter};
use genus_cli::{exit, CliError};
use genus_core::bqf::ClassGroup;
use genus_core::genus::{Genus, GenusReport};
use genus_core::keylemma::{
    dataset_campedelli, dataset_werner, kernel_mod_e, lift_element, two_torsion_rank, BranchConfiguration,
    Dataset, LiftDescription,
};
use genus_core::nodesets::{
    decide_code_problem, quintic_certificate, CodeSearchOutcome, QuinticParams, WeightCodeProblem,
    DEFAULT_DISTRIBUTION_BUDGET,
};
use genus_core::quadfield::QuadField;
use serde::Serialize;

/// Genus theory of quadratic fields and 2-torsion of double covers.
#[derive(Parser, Debug)]
#[command(name = "gaussgenus", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// JSONL result cache (created if missing).
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,
    /// Worker threads for scans.
    #[arg(long, global = true, value_name = "N")]
    workers: Option<usize>,
    /// Largest narrow class number to compute.
    #[arg(long, global = true, value_name = "H")]
    bound: Option<usize>,
    /// TOML file with defaults for the global flags.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Genus map, its kernel and Gauss's 2-rank count for Q(sqrt d).
    Genus(FieldArg),
    /// Narrow class group of Q(sqrt d).
    Classgroup(FieldArg),
    /// Verify checks over a range of d.
    Scan(ScanArgs),
    /// Ker phi / <e> for a branch configuration file (JSON).
    Keylemma {
        file: PathBuf,
        /// Name used for the half class in lift descriptions.
        #[arg(long, default_value = "L")]
        half_class: String,
    },
    /// Campedelli double plane: parity check and 2-torsion.
    Campedelli,
    /// Werner's split branch curve: parity checks and 2-torsion.
    Werner,
    /// Decide whether a binary code with restricted weights exists.
    Nodecode {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: usize,
        /// Allowed nonzero weights, comma separated.
        #[arg(short, long = "weights", value_delimiter = ',', required = true)]
        w: Vec<usize>,
        #[arg(long)]
        node_budget: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_DISTRIBUTION_BUDGET)]
        distribution_budget: u128,
    },
    /// Replay the 32-node chain for quintic surfaces.
    Quintic {
        #[arg(long, default_value_t = 53)]
        b2: i64,
        #[arg(long, default_value_t = 32)]
        nodes: i64,
        #[arg(long, default_value_t = 16)]
        min_even: i64,
        #[arg(long, default_value_t = 20)]
        second_even: i64,
        #[arg(long, default_value_t = 5)]
        chi_s: i64,
        #[arg(long)]
        node_budget: Option<u64>,
    },
}

#[derive(Args, Debug)]
struct FieldArg {
    /// Squarefree d != 0, 1.
    #[arg(short, allow_hyphen_values = true)]
    d: i64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SignArg {
    Both,
    Positive,
    Negative,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckArg {
    Gauss,
    Kernel,
    Wide,
    NormMinusOne,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long, allow_hyphen_values = true)]
    min: i64,
    #[arg(long, allow_hyphen_values = true)]
    max: i64,
    #[arg(long, value_enum, default_value = "both")]
    sign: SignArg,
    /// Defaults to every check.
    #[arg(long, value_enum, value_delimiter = ',')]
    checks: Vec<CheckArg>,
}

fn emit<T: Serialize>(settings: &Settings, value: &T, text: impl FnOnce() -> String) -> Result<(), CliError> {
    if settings.json {
        let s = serde_json::to_string_pretty(value).map_err(|e| CliError::usage(e.to_string()))?;
        println!("{s}");
    } else {
        print!("{}", text());
    }
    Ok(())
}

fn open_cache(settings: &Settings) -> Result<Cache, CliError> {
    let cache = match &settings.cache {
        Some(path) => Cache::open(path)?,
        None => Cache::disabled(),
    };
    if cache.rejected > 0 {
        eprintln!("warning: skipped {} unreadable cache lines", cache.rejected);
    }
    Ok(cache)
}

/// Genus data for one field, from the cache when present.
fn field_data(settings: &Settings, d: i64) -> Result<(Genus, GenusReport), CliError> {
    let field = QuadField::from_d(d)?;
    let cache = open_cache(settings)?;
    if let Some(rec) = cache.get(field.disc) {
        let genus = Genus::with_group(field, rec.class_group.clone())?;
        return Ok((genus, rec.genus_report.clone()));
    }
    let genus = Genus::new(field, settings.bound)?;
    let report = genus.verify_gauss()?;
    cache.append(&CacheRecord::new(genus.group.clone(), report.clone()))?;
    Ok((genus, report))
}

fn genus_text(g: &Genus, r: &GenusReport) -> String {
    let primes = g.field.ramified.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
    let kernel: Vec<String> = r
        .kernel_masks
        .iter()
        .map(|&m| {
            let ps: Vec<String> = genus_core::genus::GenusSubset { mask: m }
                .primes(&g.field)
                .iter()
                .map(|p| p.to_string())
                .collect();
            format!("{{{}}}", ps.join(","))
        })
        .collect();
    format!(
        "Q(sqrt {}): D = {}, ramified primes [{}] (r = {})\n\
         narrow class group: h+ = {}, invariant factors {:?}\n\
         rank Cl+[2] = {}, r - 1 = {}: gauss {}\n\
         genus map kernel: {} ({:?})\n\
         image is Cl+[2]: {}\n\
         wide 2-rank: {}\n",
        r.d,
        r.disc,
        primes,
        r.r,
        g.group.order(),
        g.group.invariant_factors,
        r.rank2,
        r.r - 1,
        if r.gauss_holds { "holds" } else { "FAILS" },
        kernel.join(" "),
        r.kernel_generator_kind,
        r.image_is_two_torsion,
        r.wide_rank,
    )
}

fn classgroup_text(g: &ClassGroup) -> String {
    let reps: Vec<String> = g.reps.iter().map(|f| f.to_string()).collect();
    format!(
        "D = {}: h+ = {}, invariant factors {:?}\nreps: {}\n",
        g.disc,
        g.order(),
        g.invariant_factors,
        reps.join(" ")
    )
}

#[derive(Serialize)]
struct KeylemmaOutput {
    n_components: usize,
    ambient_rank: usize,
    phi_rank: usize,
    pic_two_rank: usize,
    kernel_basis: Vec<String>,
    quotient_dim: usize,
    two_torsion_rank: usize,
    lifts: Vec<LiftDescription>,
}

fn keylemma_output(config: &BranchConfiguration, half_class: &str) -> Result<KeylemmaOutput, CliError> {
    let q = kernel_mod_e(config)?;
    let lifts = q
        .representatives
        .iter()
        .map(|v| lift_element(config, &v.ones_indices(), half_class))
        .collect::<Result<_, _>>()?;
    Ok(KeylemmaOutput {
        n_components: config.n_components(),
        ambient_rank: config.ambient_rank(),
        phi_rank: config.phi().rank(),
        pic_two_rank: config.pic_two_rank,
        kernel_basis: q.kernel_basis.iter().map(|v| v.to_string()).collect(),
        quotient_dim: q.dim(),
        two_torsion_rank: two_torsion_rank(config)?,
        lifts,
    })
}

fn keylemma_text(o: &KeylemmaOutput) -> String {
    let mut out = format!(
        "{} components, ambient rank {}, rank phi = {}\nKer phi basis: {}\ndim Ker phi/<e> = {}, rank Pic(X)[2] = {}\n",
        o.n_components,
        o.ambient_rank,
        o.phi_rank,
        o.kernel_basis.join(" "),
        o.quotient_dim,
        o.two_torsion_rank
    );
    for l in &o.lifts {
        out += &format!("  {}  ->  {}\n", l.relation, l.expression);
    }
    out
}

#[derive(Serialize)]
struct ParityOutcome {
    name: String,
    passes: bool,
}

#[derive(Serialize)]
struct DatasetOutput {
    name: String,
    components: Vec<String>,
    parity_checks: Vec<ParityOutcome>,
    all_checks_pass: bool,
    keylemma: KeylemmaOutput,
}

fn run_dataset(settings: &Settings, ds: Dataset) -> Result<u8, CliError> {
    let checks: Vec<ParityOutcome> = ds
        .parity_checks
        .iter()
        .map(|c| ParityOutcome {
            name: c.name.clone(),
            passes: c.passes(),
        })
        .collect();
    let all = checks.iter().all(|c| c.passes);
    let out = DatasetOutput {
        name: ds.name.clone(),
        components: ds.components.iter().map(|(n, _)| n.clone()).collect(),
        parity_checks: checks,
        all_checks_pass: all,
        keylemma: keylemma_output(&ds.config, "L")?,
    };
    emit(settings, &out, || {
        let mut s = format!("{}: components {}\n", out.name, out.components.join(", "));
        for c in &out.parity_checks {
            s += &format!("  {} divisible by 2: {}\n", c.name, if c.passes { "PASS" } else { "FAIL" });
        }
        s + &keylemma_text(&out.keylemma)
    })?;
    Ok(if all { exit::OK } else { exit::ANOMALY })
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let settings = Settings::merge(file, cli.json, cli.cache, cli.workers, cli.bound)?;
    match cli.command {
        Command::Genus(FieldArg { d }) => {
            let (genus, report) = field_data(&settings, d)?;
            emit(&settings, &report, || genus_text(&genus, &report))?;
            Ok(if report.gauss_holds && report.image_is_two_torsion { exit::OK } else { exit::ANOMALY })
        }
        Command::Classgroup(FieldArg { d }) => {
            let (genus, _) = field_data(&settings, d)?;
            emit(&settings, &genus.group, || classgroup_text(&genus.group))?;
            Ok(exit::OK)
        }
        Command::Scan(args) => {
            let checks = if args.checks.is_empty() {
                Check::ALL.to_vec()
            } else {
                args.checks
                    .iter()
                    .map(|c| match c {
                        CheckArg::Gauss => Check::Gauss,
                        CheckArg::Kernel => Check::Kernel,
                        CheckArg::Wide => Check::Wide,
                        CheckArg::NormMinusOne => Check::NormMinusOne,
                    })
                    .collect()
            };
            let job = ScanJob {
                d_min: args.min,
                d_max: args.max,
                sign: match args.sign {
                    SignArg::Both => SignFilter::Both,
                    SignArg::Positive => SignFilter::Positive,
                    SignArg::Negative => SignFilter::Negative,
                },
                checks,
                workers: settings.workers,
                max_class_number: settings.bound,
            };
            let cache = open_cache(&settings)?;
            let outcome = run_scan(&job, &cache)?;
            if let Some(path) = cache.path() {
                eprintln!(
                    "cache {}: {} hits, {} computed",
                    path.display(),
                    outcome.cache_hits,
                    outcome.computed
                );
            }
            emit(&settings, &outcome.summary, || outcome.summary.to_text())?;
            Ok(if outcome.summary.has_anomalies() { exit::ANOMALY } else { exit::OK })
        }
        Command::Keylemma { file, half_class } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| CliError::usage(format!("{}: {e}", file.display())))?;
            let config: BranchConfiguration = serde_json::from_str(&text)
                .map_err(|e| CliError::usage(format!("{}: {e}", file.display())))?;
            let out = keylemma_output(&config, &half_class)?;
            emit(&settings, &out, || keylemma_text(&out))?;
            Ok(exit::OK)
        }
        Command::Campedelli => run_dataset(&settings, dataset_campedelli()),
        Command::Werner => run_dataset(&settings, dataset_werner()),
        Command::Nodecode {
            n,
            k,
            w,
            node_budget,
            distribution_budget,
        } => {
            let problem = WeightCodeProblem::new(n, k, &w)?;
            let report = decide_code_problem(
                &problem,
                distribution_budget,
                node_budget.unwrap_or(settings.node_budget),
            )?;
            emit(&settings, &report, || {
                let mut s = format!(
                    "{}: {} feasible weight distributions\n",
                    report.problem,
                    report.feasible_distributions.len()
                );
                match &report.search.outcome {
                    CodeSearchOutcome::Nonexistent => s += "NONEXISTENT\n",
                    CodeSearchOutcome::Exists { generator } => {
                        s += "EXISTS\n";
                        for row in generator {
                            s += &format!("  {row}\n");
                        }
                    }
                }
                s + &format!("decided by: {:?} ({} search nodes)\n", report.decided_by, report.search.nodes)
            })?;
            Ok(exit::OK)
        }
        Command::Quintic {
            b2,
            nodes,
            min_even,
            second_even,
            chi_s,
            node_budget,
        } => {
            let params = QuinticParams {
                b2,
                nodes,
                min_even,
                second_even,
                chi_s,
            };
            let cert = quintic_certificate(params, node_budget.unwrap_or(settings.node_budget))?;
            emit(&settings, &cert, || {
                let mut s = String::new();
                for (i, step) in cert.steps.iter().enumerate() {
                    s += &format!("{}. {}\n   {}   [{}]\n", i + 1, step.claim, step.arithmetic, step.source);
                }
                s + &format!("verdict: {:?}: {}\n", cert.verdict, cert.conclusion)
            })?;
            Ok(exit::OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
