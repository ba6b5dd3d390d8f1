use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::report::Format;

/// Experiments on weighted Hilbert spaces of Dirichlet series.
///
/// Weight strings: `log-power:A`, `moment:point=C,alpha=A,scale=S`, `pick`,
/// `flat-sharp(W)`. Series files hold `n re im` lines; node files hold
/// `sigma t` or `sigma t z_re z_im` lines.
#[derive(Debug, Parser)]
#[command(name = "dirspace", version, args_override_self = true)]
pub struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Flat `key=value` file; its entries act as flags placed before the
    /// command-line ones, which therefore win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub sigma: f64,
    pub t: f64,
}

pub fn parse_point(text: &str) -> Result<Point, String> {
    let (a, b) = text.split_once(',').ok_or("expected SIGMA,T")?;
    let sigma = a.trim().parse::<f64>().map_err(|e| e.to_string())?;
    let t = b.trim().parse::<f64>().map_err(|e| e.to_string())?;
    Ok(Point { sigma, t })
}

#[derive(Debug, Clone, Args)]
pub struct SpaceArgs {
    /// Weight string; `pick` for `pick-check` and `gram`, `log-power:0` elsewhere when omitted.
    #[arg(long)]
    pub weights: Option<String>,
    /// First index of the space; defaults to 1 for `pick`, 2 otherwise.
    #[arg(long)]
    pub n0: Option<u64>,
    /// Kernel truncation `N_k`.
    #[arg(long, default_value_t = 10_000)]
    pub truncation: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// ζ(s) by the accelerated alternating series, with the Euler–Maclaurin value alongside.
    Zeta {
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        s: Point,
    },
    /// The root of ζ(2ρ) = 2.
    Rho {
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Tabulate w_n; optionally the slow-decay constant min w_n n^ε.
    Weights {
        #[arg(long)]
        weights: String,
        #[arg(long, default_value_t = 2)]
        from: u64,
        #[arg(long, default_value_t = 20)]
        to: u64,
        #[arg(long)]
        slow_decay_eps: Option<f64>,
        #[arg(long, default_value_t = 100_000)]
        slow_decay_n_max: u64,
    },
    /// ‖f‖ in H_w, and ⟨f, g⟩ when `--other` is given.
    Norm {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        other: Option<PathBuf>,
    },
    /// k(s, u) with its tail bound, or the kernel matrix of a node file.
    Kernel {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true, required_unless_present = "nodes")]
        s: Option<Point>,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true, required_unless_present = "nodes")]
        u: Option<Point>,
        #[arg(long, conflicts_with_all = ["s", "u"])]
        nodes: Option<PathBuf>,
    },
    /// Ordered-factorization counts F(n).
    Factorizations {
        #[arg(long, default_value_t = 1)]
        from: u64,
        #[arg(long, default_value_t = 20)]
        to: u64,
    },
    /// Σ_{n≤N} F(n) n^(−σ) against 1/(2 − ζ(σ)).
    Identity {
        #[arg(long)]
        sigma: f64,
        #[arg(long = "N", default_value_t = 10_000)]
        big_n: u64,
    },
    /// Time-average mean squares against Σ |a_n|² w_n over a (T, c) schedule.
    Plancherel {
        #[arg(long)]
        series: PathBuf,
        /// A `moment:` weight string.
        #[arg(long)]
        measure: String,
        #[arg(long = "T", value_delimiter = ',', default_values_t = [1e2, 1e3, 1e4])]
        t_ladder: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_values_t = [1e-1, 1e-2, 1e-3])]
        c: Vec<f64>,
        /// Use the trapezoid rule in t instead of the exact reduction.
        #[arg(long)]
        trapezoid: bool,
        #[arg(long, default_value_t = 1e-2)]
        t_step: f64,
    },
    /// PSD test of the Pick matrix of a node file with targets.
    PickCheck {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        nodes: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Normalized Gram matrix of a node file and the interpolation-conjecture quantities.
    Gram {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        nodes: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Greedy interpolating sequence for the Pick weights.
    InterpBuild {
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the nodes as a node file.
        #[arg(long)]
        nodes_out: Option<PathBuf>,
    },
    /// Random contractive multiplier from a realization, evaluated at points.
    Realize {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Length N_E of the truncated E_s row.
        #[arg(long = "N-E", default_value_t = 8)]
        n_e: usize,
        /// Auxiliary dimension d.
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true, required_unless_present = "nodes")]
        s: Vec<Point>,
        #[arg(long, conflicts_with = "s")]
        nodes: Option<PathBuf>,
    },
    /// Lower estimate of the multiplier norm of φ by power iteration.
    MultNorm {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        trunc: u64,
    },
    /// Sampled sup of |φ| on the right half-plane.
    SupNorm {
        #[arg(long)]
        series: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = [1e-3, 1e-2, 1e-1, 1.0])]
        sigmas: Vec<f64>,
        #[arg(long, default_value_t = 100.0)]
        t_max: f64,
        #[arg(long, default_value_t = 4096)]
        t_points: usize,
    },
    /// Empirical α-Carleson ratio of |φ′|² dμ_{α−2} dt.
    Carleson {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        alpha: f64,
        /// Series files of test functions.
        #[arg(long, value_delimiter = ',', required = true)]
        tests: Vec<PathBuf>,
        #[arg(long = "T", default_value_t = 1e3)]
        t_horizon: f64,
    },
    /// σ_c, σ_a, σ_b estimates from partial sums.
    Abscissae {
        /// `zeta`, `shifted-zeta` or `table`.
        #[arg(long, default_value = "zeta")]
        family: String,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        /// Coefficient table for `--family table`.
        #[arg(long)]
        series: Option<PathBuf>,
        #[arg(long, default_value_t = 1 << 16)]
        horizon: u64,
    },
    /// Grid search for ε-translation numbers.
    Translations {
        #[arg(long)]
        series: PathBuf,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        sigma0: f64,
        #[arg(long, default_value_t = 1e-2)]
        eps: f64,
        #[arg(long, value_delimiter = ',', default_values_t = [0.0, 100.0], allow_hyphen_values = true)]
        window: Vec<f64>,
        #[arg(long, default_value_t = 1e-2)]
        step: f64,
    },
    /// Projection onto the first N primes, with the Euler-product bound at σ.
    SmoothProject {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        primes: usize,
        #[arg(long)]
        sigma: Option<f64>,
    },
}
