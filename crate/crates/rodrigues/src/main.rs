use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rodrigues::cache::KernelCache;
use rodrigues::commands::{self, Format, Outcome, Suite, VerifyOptions, EXIT_INPUT};

#[derive(Parser)]
#[command(name = "rodrigues", version)]
#[command(about = "Exact construction and identity checking for Rodrigues-type function families")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    format: Format,

    /// Allow indices above 64
    #[arg(long, global = true)]
    allow_large: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the reduced kernels q_0..q_n, or Theta values with --numeric
    Compute {
        #[arg(long)]
        family: PathBuf,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Evaluate Theta_n numerically (needs decimal alpha and beta)
        #[arg(long)]
        numeric: bool,
        /// Comma-separated evaluation points for --numeric
        #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.5, 1.0])]
        points: Vec<f64>,
    },
    /// Check identities; without --family, on seeded random families
    Verify {
        #[arg(long)]
        family: Option<PathBuf>,
        /// all, genfun, recurrences, ode, bilinear, or one of aa9 aa10 cor21 thm23 aa11 cor22
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value_t = 16)]
        order_t: usize,
        /// ODE order (defaults to deg phi2)
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of random families
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Check this ODE (JSON as printed by `ode --format json`) instead of a suite
        #[arg(long, requires = "family")]
        ode: Option<PathBuf>,
    },
    /// Synthesize the annihilating ODE
    Ode {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Check the bilateral identity (bilinear when --spec is absent)
    Bilateral {
        /// Bilateral spec; random specs are drawn when both this and --family are absent
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long)]
        family: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        order_t: usize,
        #[arg(long, default_value_t = 8)]
        order_eta: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Check the generating-function identity
    Genfun {
        #[arg(long)]
        family: PathBuf,
        #[arg(long, default_value_t = 16)]
        order_t: usize,
    },
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let format = cli.format;
    let guard = |n: usize| commands::check_guard(n, cli.allow_large);
    match cli.command {
        Command::Compute { family, n, numeric, points } => {
            guard(n)?;
            let f = commands::load_family(&family)?;
            if numeric {
                commands::compute_numeric(&f, n, &points, format)
            } else {
                commands::compute_exact(&f, n, format, &KernelCache::new())
            }
        }
        Command::Verify { family, suite, n_max, order_t, m, seed, count, ode } => {
            guard(n_max)?;
            guard(order_t)?;
            if let (Some(path), Some(f)) = (&ode, &family) {
                return commands::verify_ode_file(&commands::load_family(f)?, path, n_max, format);
            }
            let opts = VerifyOptions { suite: Suite::parse(&suite)?, n_max, order_t, m };
            let f = family.as_deref().map(commands::load_family).transpose()?;
            commands::verify(f.as_ref(), &opts, seed, count, format)
        }
        Command::Ode { family, m } => commands::ode_command(&commands::load_family(&family)?, m, format),
        Command::Bilateral { spec, family, order_t, order_eta, seed, count } => {
            guard(order_t)?;
            guard(order_eta)?;
            let s = spec.as_deref().map(commands::load_bilateral).transpose()?;
            let f = family.as_deref().map(commands::load_family).transpose()?;
            commands::bilateral_command(s.as_ref(), f.as_ref(), order_t, order_eta, seed, count, format)
        }
        Command::Genfun { family, order_t } => {
            guard(order_t)?;
            commands::genfun_command(&commands::load_family(&family)?, order_t, format)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            let newline = if outcome.output.ends_with('\n') { "" } else { "\n" };
            // a closed pipe is not an error worth reporting
            let _ = write!(out, "{}{newline}", outcome.output).and_then(|_| out.flush());
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
