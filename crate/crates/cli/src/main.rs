use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use svring_core::analysis::{analyze, brspec, SampleConfig};
use svring_core::boolprod::witness_check;
use svring_core::embed::{case1_extend, case2_extend, coefficient_field_check, monomial_group_check};
use svring_core::realize::{phi_p_check, realize, spec_poset};
use svring_core::rootsys::{parse_poset, poset_iso};
use svring_core::svring::{parse_ring_spec, write_ring_spec, RingSpecFile};
use svring_core::{Error, KTuple, Rational, RootPoset, Scalar};

/// Exact analysis of finite-rank rings glued from valuation rings.
#[derive(Parser)]
#[command(name = "svring", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ring spec files.
    #[command(subcommand)]
    Ring(RingCommand),
    /// Poset spec files.
    #[command(subcommand)]
    Poset(PosetCommand),
    /// Build a ring spec whose prime spectrum is the given root.
    Realize {
        poset: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Audit a transcendental extension step.
    Embed {
        case: Case,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        /// Generators `t_1..t_m` of the coefficient field (case 2).
        #[arg(long, default_value_t = 0)]
        generators: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the witness identity on a product over finitely many points.
    Boolprod {
        #[arg(long)]
        points: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum RingCommand {
    /// Run every structural check.
    Check {
        file: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Write the branching spectrum as DOT.
    Brspec {
        file: PathBuf,
        #[arg(long)]
        dot: PathBuf,
    },
}

#[derive(Subcommand)]
enum PosetCommand {
    /// Validate a poset and describe its branching root.
    Check { file: PathBuf },
}

#[derive(Args)]
struct Sampling {
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl Sampling {
    fn config(&self) -> SampleConfig {
        SampleConfig {
            trials: self.trials,
            seed: self.seed,
            ..SampleConfig::default()
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Case {
    Case1,
    Case2,
}

/// Exit status 1: a check failed. Exit status 2: unusable input.
enum Failure {
    Violation(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_ring(path: &Path) -> Result<RingSpecFile, Failure> {
    parse_ring_spec(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_poset(path: &Path) -> Result<RootPoset, Failure> {
    parse_poset(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn verdict(out: String, ok: bool, what: &str) -> Outcome {
    if ok {
        Ok(out)
    } else {
        Err(Failure::Violation(format!("{out}{what}")))
    }
}

fn ring_check(file: &Path, sampling: &Sampling) -> Outcome {
    let f = load_ring(file)?;
    let elements = f.elements::<Scalar>()?;
    let report = analyze::<Rational>(&f.spec, &sampling.config());
    let mut out = report.render();
    for (name, a) in &elements {
        writeln!(out, "value {name}: {}", describe(&f, a)).unwrap();
    }
    verdict(out, report.all_passed(), "structural check failed")
}

fn describe(f: &RingSpecFile, a: &KTuple) -> String {
    let spec = &f.spec;
    let primes: Vec<&str> = spec
        .all_nodes()
        .into_iter()
        .filter(|&q| spec.in_prime(a, q))
        .map(|q| spec.node_id(q))
        .collect();
    let kind = if a.is_zero() {
        "zero"
    } else if a.is_unit() {
        "unit"
    } else {
        "non-unit"
    };
    let vals: Vec<String> = a.components().iter().map(|c| c.val().to_string()).collect();
    format!(
        "{kind}; v = ({}); in {}",
        vals.join(", "),
        if primes.is_empty() { "no listed prime".to_string() } else { primes.join(" ") }
    )
}

fn ring_brspec(file: &Path, dot: &Path) -> Outcome {
    let f = load_ring(file)?;
    let p = brspec(&f.spec);
    let name = file.file_stem().and_then(|s| s.to_str()).unwrap_or("brspec");
    write(dot, &p.to_dot(name))?;
    Ok(format!(
        "brspec: {} elements, {} covers -> {}\n",
        p.len(),
        p.covers().len(),
        dot.display()
    ))
}

fn poset_check(file: &Path) -> Outcome {
    let p = load_poset(file)?;
    let mut out = String::new();
    let Ok(top) = p.require_root() else {
        let reason = p.require_root().unwrap_err();
        return Err(Failure::Violation(format!("not a root: {reason}")));
    };
    let names = |v: Vec<usize>| v.into_iter().map(|k| p.id(k).to_string()).collect::<Vec<_>>().join(" ");
    writeln!(out, "root: {} elements, top {}", p.len(), p.id(top)).unwrap();
    writeln!(out, "minimal: {}", names(p.minimal())).unwrap();
    writeln!(out, "branching: {}", names(p.branching_points())).unwrap();
    writeln!(out, "reduced: {}", if p.is_reduced() { "yes" } else { "no" }).unwrap();
    Ok(out)
}

fn realize_cmd(poset: &Path, output: &Path, sampling: &Sampling) -> Outcome {
    let p = load_poset(poset)?;
    if let Err(e) = p.require_root() {
        return Err(Failure::Violation(format!("not a root: {e}")));
    }
    let spec = realize(&p).map_err(|e| Failure::Violation(e.to_string()))?;
    write(output, &write_ring_spec(&spec))?;
    // round trip through the written file
    let spec = load_ring(output)?.spec;
    let mut out = format!("wrote {} (rank {})\n", output.display(), spec.n());
    let sp = spec_poset(&spec);
    let iso = poset_iso(&sp.poset, &p).is_some();
    writeln!(out, "round trip: {}", if iso { "pass" } else { "FAIL" }).unwrap();
    let cfg = sampling.config();
    let tags = sp.membership_check::<Rational>(&spec, &cfg);
    writeln!(out, "prime tags: {} ({})", pass(tags.passed), tags.detail).unwrap();
    let mut ok = iso && tags.passed;
    let br = p.branching_root();
    if br.minimal().len() >= 2 {
        let phi = phi_p_check::<Rational>(&spec, &br, &cfg)?;
        writeln!(out, "branching spectrum matches: {}", pass(phi.holds())).unwrap();
        ok &= phi.holds();
    }
    verdict(out, ok, "realization check failed")
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn embed_cmd(case: Case, dim: usize, generators: usize, samples: usize, seed: u64) -> Outcome {
    let cfg = SampleConfig {
        trials: samples,
        seed,
        size: 2,
    };
    let report = match case {
        Case::Case1 => case1_extend::<Rational>(dim, &cfg),
        Case::Case2 => case2_extend(generators, dim, &cfg),
    };
    let mut out = report.render();
    let mono = monomial_group_check(dim, &cfg);
    let coeff = coefficient_field_check(generators, dim, &cfg);
    writeln!(out, "[{}] monomial-group  {}", pass(mono.passed), mono.detail).unwrap();
    writeln!(out, "[{}] coefficients    {}", pass(coeff.passed), coeff.detail).unwrap();
    verdict(out, report.passed() && mono.passed && coeff.passed, "extension audit failed")
}

fn boolprod_cmd(points: usize, samples: usize, seed: u64) -> Outcome {
    if points == 0 {
        return Err(Failure::Input("--points must be positive".into()));
    }
    let cfg = SampleConfig {
        trials: samples,
        seed,
        ..SampleConfig::default()
    };
    let c = witness_check::<Rational>(Some(points), &cfg);
    let out = format!("witness identity (a - cb)(b - ca) = 0: {}\n{}\n", pass(c.passed), c.detail);
    verdict(out, c.passed, "")
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Ring(RingCommand::Check { file, sampling }) => ring_check(&file, &sampling),
        Command::Ring(RingCommand::Brspec { file, dot }) => ring_brspec(&file, &dot),
        Command::Poset(PosetCommand::Check { file }) => poset_check(&file),
        Command::Realize { poset, output, sampling } => realize_cmd(&poset, &output, &sampling),
        Command::Embed {
            case,
            dim,
            generators,
            samples,
            seed,
        } => embed_cmd(case, dim, generators, samples, seed),
        Command::Boolprod { points, samples, seed } => boolprod_cmd(points, samples, seed),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Violation(out)) => {
            println!("{}", out.trim_end());
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
