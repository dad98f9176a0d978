//! `rpsent`: entropies, maximum-entropy distributions, envelope tables,
//! the verification suite, and the complexity bench.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};
use num_rational::BigRational;
use num_traits::One;

use rpsent_core::belief::{
    parse_document, serialize_bpa, serialize_pmf, Bpa, MassAssignment, PermutationEvent, Pmf,
};
use rpsent_core::combinatorics::{factorial, s_envelope, sa};
use rpsent_core::counting::{envelope_limit_direct, s_envelope_direct};
use rpsent_core::entropy::{
    deng_entropy, deng_envelope, max_deng_bpa, max_rps_pmf, rps_entropy, shannon_entropy,
    EntropyKind,
};
use rpsent_core::tables::{default_sweep, render_table, Sweep};
use rpsent_core::validation::run_all;
use rpsent_core::ENUMERATION_CAP;

#[derive(Parser)]
#[command(
    name = "rpsent",
    about = "Exact entropy envelopes for sample spaces, power sets, and permutation event spaces",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the entropy of a mass-assignment document (BPA -> Deng,
    /// PMF -> RPS; singleton-only inputs also report Shannon)
    Entropy {
        /// Path to the JSON document
        input: PathBuf,
        /// Force a functional: shannon requires a singleton-only input,
        /// deng projects a PMF onto its power set first
        #[arg(long = "as", value_name = "KIND")]
        kind_override: Option<String>,
    },
    /// Emit the maximum-entropy distribution for a frame of size N
    Maxent {
        /// Functional: deng or rps
        kind: String,
        /// Frame size; above the enumeration cap the per-length masses
        /// are emitted symbolically
        n: u32,
        /// Write to a file instead of standard output
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print one of the reference comparison tables as CSV
    Tables {
        /// Table number: 1 (envelope vs limit), 2 (factorial vs
        /// Stirling), 3 (maximum entropies)
        which: u8,
        #[arg(long)]
        from: Option<u32>,
        #[arg(long)]
        to: Option<u32>,
        #[arg(long)]
        step: Option<u32>,
    },
    /// Run the verification suite and emit a JSON report
    Validate {
        /// Upper end of the identity and bounds sweeps
        #[arg(long = "n-max", default_value_t = 50)]
        n_max: u32,
        /// Upper frame size for the perturbation and ascent oracles
        #[arg(long = "oracle-cap", default_value_t = 6)]
        oracle_cap: usize,
        /// Seed for the perturbation trials
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Compare big-integer multiplication counts of the exact envelope
    /// against the limit form
    Bench {
        #[arg(long, default_value_t = 10)]
        from: u32,
        #[arg(long, default_value_t = 100)]
        to: u32,
        #[arg(long, default_value_t = 10)]
        step: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Entropy {
            input,
            kind_override,
        } => cmd_entropy(&input, kind_override.as_deref()),
        Command::Maxent { kind, n, output } => cmd_maxent(&kind, n, output.as_deref()),
        Command::Tables {
            which,
            from,
            to,
            step,
        } => cmd_tables(which, from, to, step),
        Command::Validate {
            n_max,
            oracle_cap,
            seed,
        } => cmd_validate(n_max, oracle_cap, seed),
        Command::Bench { from, to, step } => cmd_bench(from, to, step),
    }
}

/// Entropy record printed as the final stdout line.
#[derive(serde::Serialize)]
struct EntropyRecord {
    kind: &'static str,
    n: usize,
    entropy_bits: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    shannon_bits: Option<f64>,
}

fn singleton_pmf_from_bpa(bpa: &Bpa) -> Pmf {
    let masses = bpa
        .masses
        .iter()
        .map(|(event, mass)| {
            (
                PermutationEvent::new(event.indices().to_vec()),
                mass.clone(),
            )
        })
        .collect();
    Pmf::new(bpa.frame.clone(), masses, bpa.sum_policy)
}

fn cmd_entropy(input: &std::path::Path, kind_override: Option<&str>) -> anyhow::Result<ExitCode> {
    let text = fs::read_to_string(input)
        .with_context(|| format!("reading {}", input.display()))?;
    let assignment = parse_document(&text)?;

    let (report, singleton_only, n) = match &assignment {
        MassAssignment::Bpa(bpa) => (bpa.validate(), bpa.is_singleton_only(), bpa.frame.len()),
        MassAssignment::Pmf(pmf) => (pmf.validate(), pmf.is_singleton_only(), pmf.frame.len()),
    };
    if !report.is_valid() {
        eprint!("{report}");
        return Ok(ExitCode::FAILURE);
    }

    let kind = match (kind_override, &assignment) {
        (None, MassAssignment::Bpa(_)) => EntropyKind::Deng,
        (None, MassAssignment::Pmf(_)) => EntropyKind::Rps,
        (Some(k), _) => k.parse::<EntropyKind>()?,
    };

    let bits = match (&assignment, kind) {
        (MassAssignment::Bpa(bpa), EntropyKind::Deng) => deng_entropy(bpa)?,
        (MassAssignment::Pmf(pmf), EntropyKind::Rps) => rps_entropy(pmf)?,
        (MassAssignment::Pmf(pmf), EntropyKind::Deng) => deng_entropy(&pmf.project_to_bpa()?)?,
        (MassAssignment::Bpa(bpa), EntropyKind::Rps) => {
            if !singleton_only {
                bail!("a BPA carries no order information; only singleton-only BPAs embed as PMFs");
            }
            rps_entropy(&singleton_pmf_from_bpa(bpa))?
        }
        (_, EntropyKind::Shannon) => {
            if !singleton_only {
                bail!("shannon entropy needs a singleton-only input");
            }
            let dist = match &assignment {
                MassAssignment::Bpa(bpa) => bpa.singleton_distribution(),
                MassAssignment::Pmf(pmf) => pmf.project_to_bpa()?.singleton_distribution(),
            };
            shannon_entropy(&dist)?
        }
    };

    let shannon_bits = if singleton_only && kind != EntropyKind::Shannon {
        let dist = match &assignment {
            MassAssignment::Bpa(bpa) => bpa.singleton_distribution(),
            MassAssignment::Pmf(pmf) => pmf.project_to_bpa()?.singleton_distribution(),
        };
        Some(shannon_entropy(&dist)?)
    } else {
        None
    };

    println!("H_{} = {:.5} bits (frame size {n})", kind.name(), bits);
    if let Some(s) = shannon_bits {
        println!("H_shannon = {s:.5} bits (singleton cross-check)");
    }
    let record = EntropyRecord {
        kind: kind.name(),
        n,
        entropy_bits: bits,
        shannon_bits,
    };
    println!("{}", serde_json::to_string(&record)?);
    Ok(ExitCode::SUCCESS)
}

/// Symbolic per-length masses for frames beyond the enumeration cap.
const MAXENT_SYMBOLIC_CAP: u32 = 1_000;

fn cmd_maxent(kind: &str, n: u32, output: Option<&std::path::Path>) -> anyhow::Result<ExitCode> {
    let kind: EntropyKind = kind.parse()?;
    if kind == EntropyKind::Shannon {
        bail!("maxent emits deng or rps distributions; the shannon maximizer is uniform");
    }
    if n < 1 {
        bail!("frame size must be at least 1");
    }

    let text = if n as usize <= ENUMERATION_CAP {
        match kind {
            EntropyKind::Deng => serialize_bpa(&max_deng_bpa(n as usize)?),
            EntropyKind::Rps => serialize_pmf(&max_rps_pmf(n as usize)?),
            EntropyKind::Shannon => unreachable!(),
        }
    } else {
        if n > MAXENT_SYMBOLIC_CAP {
            bail!("symbolic emission is capped at N = {MAXENT_SYMBOLIC_CAP}");
        }
        symbolic_maxent(kind, n)?
    };

    match output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            eprintln!("wrote {}", path.display());
        }
        None => println!("{}", text.trim_end()),
    }
    Ok(ExitCode::SUCCESS)
}

/// Per-length mass formula as rational strings: every event of length
/// `i` carries `(S_A(i)-1)/S(N)` (rps) or cardinality-`i` subsets carry
/// `(2^i-1)/(3^N-2^N)` (deng).
fn symbolic_maxent(kind: EntropyKind, n: u32) -> anyhow::Result<String> {
    let denominator: num_bigint::BigInt = match kind {
        EntropyKind::Rps => s_envelope(n).into(),
        EntropyKind::Deng => deng_envelope(n).into(),
        EntropyKind::Shannon => unreachable!(),
    };
    let mut per_length = Vec::new();
    for i in 1..=n {
        let (event_count, numer): (num_bigint::BigInt, num_bigint::BigInt) = match kind {
            EntropyKind::Rps => (
                (factorial(n) / factorial(n - i)).into(),
                (sa(i) - num_bigint::BigUint::one()).into(),
            ),
            EntropyKind::Deng => {
                let choose = factorial(n) / (factorial(i) * factorial(n - i));
                (
                    choose.into(),
                    (num_bigint::BigUint::from(2u32).pow(i) - num_bigint::BigUint::one()).into(),
                )
            }
            EntropyKind::Shannon => unreachable!(),
        };
        let mass = BigRational::new(numer, denominator.clone());
        per_length.push(serde_json::json!({
            "length": i,
            "event_count": event_count.to_string(),
            "mass_per_event": format!("{}/{}", mass.numer(), mass.denom()),
        }));
    }
    let doc = serde_json::json!({
        "kind": format!("{}-maxent-symbolic", kind.name()),
        "n": n,
        "denominator": denominator.to_string(),
        "per_length": per_length,
    });
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

fn cmd_tables(
    which: u8,
    from: Option<u32>,
    to: Option<u32>,
    step: Option<u32>,
) -> anyhow::Result<ExitCode> {
    if !(1..=3).contains(&which) {
        bail!("tables are numbered 1..=3");
    }
    let defaults = default_sweep(which);
    let sweep = Sweep {
        from: from.unwrap_or(defaults.from),
        to: to.unwrap_or(defaults.to),
        step: step.unwrap_or(defaults.step),
    };
    print!("{}", render_table(which, sweep)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_validate(n_max: u32, oracle_cap: usize, seed: u64) -> anyhow::Result<ExitCode> {
    if n_max < 3 {
        bail!("validate needs --n-max >= 3");
    }
    if oracle_cap < 1 || oracle_cap > ENUMERATION_CAP {
        bail!("--oracle-cap must lie in 1..={ENUMERATION_CAP}");
    }
    let report = run_all(n_max, oracle_cap, seed)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    if report.all_passed {
        Ok(ExitCode::SUCCESS)
    } else {
        let failing: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect();
        Err(anyhow!("validation failed: {}", failing.join(", ")))
    }
}

fn cmd_bench(from: u32, to: u32, step: u32) -> anyhow::Result<ExitCode> {
    if from < 1 || from > to || step < 1 {
        bail!("bad range: from={from} to={to} step={step}");
    }
    let mut rows = Vec::new();
    println!("N,envelope_mults,limit_mults,envelope_ns,limit_ns");
    for n in (from..=to).step_by(step as usize) {
        let started = Instant::now();
        let (_, env_count) = s_envelope_direct(n);
        let env_ns = started.elapsed().as_nanos();
        let started = Instant::now();
        let (_, lim_count) = envelope_limit_direct(n);
        let lim_ns = started.elapsed().as_nanos();
        println!(
            "{n},{},{},{env_ns},{lim_ns}",
            env_count.multiplications, lim_count.multiplications
        );
        rows.push((n, env_count.multiplications, lim_count.multiplications));
    }

    // scaling verdict over any doubled pair in the range
    let mut ok = true;
    for &(n, env, lim) in &rows {
        if let Some(&(_, env2, lim2)) = rows.iter().find(|r| r.0 == 2 * n) {
            let env_ratio = env2 as f64 / env as f64;
            let lim_ratio = lim2 as f64 / lim as f64;
            let env_ok = (3.0..=5.0).contains(&env_ratio);
            let lim_ok = (1.5..=2.5).contains(&lim_ratio);
            eprintln!(
                "{n} -> {}: envelope x{env_ratio:.2} ({}), limit x{lim_ratio:.2} ({})",
                2 * n,
                if env_ok { "quadratic" } else { "UNEXPECTED" },
                if lim_ok { "linear" } else { "UNEXPECTED" },
            );
            ok &= env_ok && lim_ok;
        }
    }
    if ok {
        Ok(ExitCode::SUCCESS)
    } else {
        Err(anyhow!("multiplication counts scaled outside the expected bands"))
    }
}
