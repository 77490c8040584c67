//! Command-line front end. Exit status 0 on success, 1 on input errors,
//! 2 when a certificate assertion fails.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::constructions::{eulerian_complete_odd, extremal_family, random_min_semidegree};
use crate::digraph::{parse_digraph, Digraph};
use crate::engine::{optimal_bisect, EngineConfig, RecordKind, RecordStatus, ResultDocument};
use crate::matching::maximum_matching_size;
use crate::oracle::{exact_best_bisection, exact_matching_profile, exact_tight_check, BISECTION_GUARD, MATCHING_GUARD, TIGHT_GUARD};
use crate::tight::is_tight;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_ASSERTION: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "disect", version, about = "Judicious bisections of directed graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a generated digraph in arc-list format.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Bisect a digraph and emit the JSON result document.
    Partition {
        file: PathBuf,
        #[command(flatten)]
        engine: EngineArgs,
        /// Write JSON here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Same as --json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the engine against the exhaustive oracles.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 12)]
        oracle_max_n: usize,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Sweep extremal instances and emit CSV.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2, 3])]
        d: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = [10usize, 30])]
        k: Vec<usize>,
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum Family {
    /// k Eulerian K_{2d+1} copies plus a K_{2d+3} with an apex.
    Extremal {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the layout (copies, apex) as JSON.
        #[arg(long)]
        layout: Option<PathBuf>,
    },
    /// Eulerian orientation of K_t, t odd.
    Eulerian {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random digraph with minimum semidegree at least d.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0.0)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
struct EngineArgs {
    #[arg(long, default_value_t = 0.02)]
    epsilon: f64,
    /// Monte Carlo samples; defaults to max(200, ceil(8 ln(1000) / eps^2)).
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    threads: Option<usize>,
    /// Degree cutoff for the high-degree set; defaults to ceil(n^(3/4)).
    #[arg(long)]
    threshold: Option<usize>,
    #[arg(long, default_value_t = 256)]
    dense_constant: u64,
}

impl EngineArgs {
    fn config(&self) -> EngineConfig {
        EngineConfig {
            epsilon: self.epsilon,
            trials: self.trials,
            seed: self.seed,
            threads: self.threads,
            threshold: self.threshold,
            dense_constant: self.dense_constant,
            ..EngineConfig::default()
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

type CliResult = Result<i32, Failure>;

/// Runs the CLI with `args` (program name first).
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
            } else {
                let _ = write!(stdout, "{text}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Generate { family } => generate(family, stdout),
        Command::Partition {
            file,
            engine,
            json,
            out,
        } => partition(&file, &engine, json.or(out), stdout),
        Command::Verify {
            file,
            oracle_max_n,
            engine,
        } => verify(&file, oracle_max_n, &engine, stdout),
        Command::Bench { d, k, engine, out } => bench(&d, &k, &engine, out, stdout),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(text: &str, path: Option<&Path>, stdout: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| input_error(format!("cannot write {}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| input_error(format!("cannot write to stdout: {e}"))),
    }
}

fn read_digraph(path: &Path) -> Result<Digraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
    parse_digraph(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn generate(family: Family, stdout: &mut dyn Write) -> CliResult {
    let (digraph, out) = match family {
        Family::Extremal { d, k, out, layout } => {
            let family = extremal_family(d, k).map_err(|e| input_error(e.to_string()))?;
            if let Some(path) = layout {
                let json = serde_json::to_string_pretty(&family.layout).expect("layout serializes");
                emit(&(json + "\n"), Some(&path), stdout)?;
            }
            (family.digraph, out)
        }
        Family::Eulerian { t, out } => (eulerian_complete_odd(t).map_err(|e| input_error(e.to_string()))?, out),
        Family::Random { n, d, p, seed, out } => (
            random_min_semidegree(n, d, p, seed).map_err(|e| input_error(e.to_string()))?,
            out,
        ),
    };
    emit(&digraph.to_arc_list(), out.as_deref(), stdout)?;
    Ok(EXIT_OK)
}

fn partition(file: &Path, engine: &EngineArgs, json_path: Option<PathBuf>, stdout: &mut dyn Write) -> CliResult {
    let digraph = read_digraph(file)?;
    let outcome = optimal_bisect(&digraph, &engine.config()).map_err(|e| input_error(e.to_string()))?;
    let doc = ResultDocument::new(&digraph, &outcome);
    emit(&(doc.to_json() + "\n"), json_path.as_deref(), stdout)?;

    let failed = outcome.certificate.failed_assertions();
    if json_path.is_some() {
        let s = &doc.stats;
        let _ = writeln!(
            stdout,
            "n = {}, m = {}, d = {}: e12 = {}, e21 = {}, minDir = {}, ratio = {:.4}",
            doc.input.n, doc.input.m, doc.input.d, s.e12, s.e21, s.min_dir, s.ratio
        );
    }
    if failed.is_empty() {
        Ok(EXIT_OK)
    } else {
        let names: Vec<&str> = failed.iter().map(|r| r.name.as_str()).collect();
        Err(Failure {
            code: EXIT_ASSERTION,
            message: format!("certificate assertions failed: {}", names.join("; ")),
        })
    }
}

fn verify(file: &Path, oracle_max_n: usize, engine: &EngineArgs, stdout: &mut dyn Write) -> CliResult {
    let digraph = read_digraph(file)?;
    let n = digraph.n();
    let guard = oracle_max_n.min(BISECTION_GUARD);
    if n > guard {
        return Err(input_error(format!(
            "n = {n} exceeds the oracle guard {guard}; exhaustive verification is limited to small instances"
        )));
    }
    let mut lines = Vec::new();
    let mut problems = Vec::new();

    let oracle = exact_best_bisection(&digraph).map_err(|e| input_error(e.to_string()))?;
    let outcome = optimal_bisect(&digraph, &engine.config()).map_err(|e| input_error(e.to_string()))?;
    let engine_value = outcome.bisection.stats.min_dir;
    lines.push(format!("best bisection: oracle {}, engine {}", oracle.value, engine_value));
    if engine_value > oracle.value {
        problems.push("engine beats the exhaustive optimum".to_string());
    }
    lines.push(format!(
        "engine reaches optimum: {}",
        if engine_value == oracle.value { "yes" } else { "no" }
    ));
    for record in outcome.certificate.records.iter().filter(|r| r.kind == RecordKind::Assertion) {
        if record.status == RecordStatus::Fail {
            problems.push(format!("certificate record failed: {}", record.name));
        }
    }

    let g = digraph.underlying_graph();
    if n <= MATCHING_GUARD {
        let profile = exact_matching_profile(&g, Some(&digraph)).map_err(|e| input_error(e.to_string()))?;
        let size = maximum_matching_size(&g);
        lines.push(format!("maximum matching: oracle {}, blossom {}", profile.value.size, size));
        if size != profile.value.size {
            problems.push("maximum matching size differs from the oracle".to_string());
        }
    }
    let mut checked = 0;
    for component in g.connected_components() {
        if component.len() > TIGHT_GUARD {
            continue;
        }
        let sub = g.induced(&component);
        let fast = is_tight(&sub).expect("components are connected");
        let slow = exact_tight_check(&sub).expect("components are connected and small");
        checked += 1;
        if fast != slow {
            problems.push(format!("tightness disagrees on component {component:?}"));
        }
    }
    lines.push(format!("tightness checked on {checked} components"));

    for line in &lines {
        let _ = writeln!(stdout, "{line}");
    }
    if problems.is_empty() {
        let _ = writeln!(stdout, "verify: ok");
        Ok(EXIT_OK)
    } else {
        Err(Failure {
            code: EXIT_ASSERTION,
            message: problems.join("; "),
        })
    }
}

fn bench(ds: &[usize], ks: &[usize], engine: &EngineArgs, out: Option<PathBuf>, stdout: &mut dyn Write) -> CliResult {
    let config = engine.config();
    let mut csv = String::from("d,k,n,m,minDir,ratio,bound,margin\n");
    let mut failed = false;
    for &d in ds {
        for &k in ks {
            let family = extremal_family(d, k).map_err(|e| input_error(e.to_string()))?;
            let digraph = family.digraph;
            let outcome = optimal_bisect(&digraph, &config).map_err(|e| input_error(e.to_string()))?;
            failed |= !outcome.certificate.failed_assertions().is_empty();
            let min_dir = outcome.bisection.stats.min_dir;
            let ratio = min_dir as f64 / digraph.m() as f64;
            let bound = d as f64 / (2.0 * (2 * d + 1) as f64);
            csv.push_str(&format!(
                "{d},{k},{},{},{min_dir},{ratio:.6},{bound:.6},{:.6}\n",
                digraph.n(),
                digraph.m(),
                ratio - bound
            ));
        }
    }
    emit(&csv, out.as_deref(), stdout)?;
    if failed {
        Err(Failure {
            code: EXIT_ASSERTION,
            message: "certificate assertions failed on at least one instance".into(),
        })
    } else {
        Ok(EXIT_OK)
    }
}
