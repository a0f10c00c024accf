//! Command-line front end: capacity regions, feedback metrics, sweeps and
//! simulations as JSON or CSV on stdout.
//!
//! Exit status is 0 on success and 2 on any usage or validation error.

pub mod document;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ldic_core::ldsim::{self, Scheme, SimConfig};
use ldic_core::metrics::{self, RegionPair};
use ldic_core::{capacity_region, evaluate_all, ChannelParams, Rational, User};

use document::{
    exact, MetricsPayload, OutputDocument, Payload, RegionPayload, SessionPayload, SCHEMA_VERSION,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ldic", version, about = "Linear deterministic interference channel with noisy output feedback")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bounds and vertices of the capacity region.
    Region {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Feedback gains, per-link thresholds and the uselessness flag.
    Metrics {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Metrics over every feedback pair up to saturation.
    Sweep {
        #[command(flatten)]
        forward: ForwardArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Bit-level simulation of one block with a reference scheme.
    Simulate {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 1)]
        delay: usize,
        #[arg(long = "block-length", default_value_t = 8)]
        block_length: usize,
        /// `point-to-point` or `echo`.
        #[arg(long, default_value = "point-to-point")]
        scheme: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include per-use signals and message bits (JSON only).
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ForwardArgs {
    #[arg(long)]
    pub n11: u32,
    #[arg(long)]
    pub n22: u32,
    #[arg(long)]
    pub n12: u32,
    #[arg(long)]
    pub n21: u32,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ParamArgs {
    #[command(flatten)]
    pub forward: ForwardArgs,
    #[arg(long, default_value_t = 0)]
    pub fb11: u32,
    #[arg(long, default_value_t = 0)]
    pub fb22: u32,
}

impl ForwardArgs {
    fn params(&self) -> ChannelParams {
        ChannelParams::forward(self.n11, self.n22, self.n12, self.n21)
    }
}

impl ParamArgs {
    fn params(&self) -> ChannelParams {
        self.forward.params().with_feedback(self.fb11, self.fb22)
    }
}

/// A rendered document in the requested format.
pub struct Rendered {
    pub document: OutputDocument,
    pub text: String,
}

fn document(params: &ChannelParams, payload: Payload) -> OutputDocument {
    OutputDocument {
        schema_version: SCHEMA_VERSION.to_string(),
        params: params.into(),
        payload,
    }
}

fn csv_rational(out: &mut String, r: Rational) {
    let _ = write!(out, ",{},{}", exact(r), r.to_decimal_string(6));
}

pub fn cmd_region(params: &ChannelParams, format: Format) -> Result<Rendered, String> {
    let evaluations = evaluate_all(params).map_err(|e| e.to_string())?;
    let region = capacity_region(params).map_err(|e| e.to_string())?;
    let doc = document(params, Payload::Region(RegionPayload::new(&evaluations, &region)));
    let text = match format {
        Format::Json => to_json(&doc),
        Format::Csv => {
            let mut s = String::from("kind,source,coef1,coef2,rhs,r1,r1_decimal,r2,r2_decimal\n");
            for (id, value) in evaluations {
                let (c1, c2) = id.coefficients();
                let _ = writeln!(s, "evaluation,{id},{c1},{c2},{value},,,,");
            }
            for c in region.bounds().iter() {
                let _ = writeln!(s, "bound,{},{},{},{},,,,", c.source, c.coef1, c.coef2, c.rhs);
            }
            for v in region.vertices() {
                s.push_str("vertex,,,,");
                csv_rational(&mut s, v.r1);
                csv_rational(&mut s, v.r2);
                s.push('\n');
            }
            s
        }
    };
    Ok(Rendered { document: doc, text })
}

pub fn cmd_metrics(params: &ChannelParams, format: Format) -> Result<Rendered, String> {
    let err = |e: ldic_core::RegionError| e.to_string();
    let m = RegionPair::new(params).map_err(err)?.metrics();
    let thresholds = User::BOTH
        .iter()
        .map(|&u| metrics::feedback_threshold(params, u))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let useless = metrics::feedback_useless(params).map_err(err)?;
    let payload = MetricsPayload {
        values: (&m).into(),
        thresholds: thresholds.iter().map(Into::into).collect(),
        feedback_useless: useless,
    };
    let doc = document(params, Payload::Metrics(payload));
    let text = match format {
        Format::Json => to_json(&doc),
        Format::Csv => {
            let mut s = String::from(
                "delta1,delta1_decimal,delta2,delta2_decimal,sigma,sigma_decimal,\
                 threshold1,saturation1,threshold2,saturation2,feedback_useless\n",
            );
            let mut row = String::new();
            csv_rational(&mut row, m.delta1);
            csv_rational(&mut row, m.delta2);
            csv_rational(&mut row, m.sigma);
            s.push_str(&row[1..]);
            for t in &thresholds {
                let level = t.threshold.map(|v| v.to_string()).unwrap_or_default();
                let _ = write!(s, ",{level},{}", t.saturation);
            }
            let _ = writeln!(s, ",{useless}");
            s
        }
    };
    Ok(Rendered { document: doc, text })
}

pub fn cmd_sweep(params: &ChannelParams, format: Format) -> Result<Rendered, String> {
    let surface = metrics::sweep(params).map_err(|e| e.to_string())?;
    let doc = document(&surface.base, Payload::Surface((&surface).into()));
    let text = match format {
        Format::Json => to_json(&doc),
        Format::Csv => {
            let mut s = String::from(
                "fb11,fb22,delta1,delta1_decimal,delta2,delta2_decimal,sigma,sigma_decimal\n",
            );
            for (a, b, m) in surface.iter() {
                let _ = write!(s, "{a},{b}");
                csv_rational(&mut s, m.delta1);
                csv_rational(&mut s, m.delta2);
                csv_rational(&mut s, m.sigma);
                s.push('\n');
            }
            s
        }
    };
    Ok(Rendered { document: doc, text })
}

pub fn cmd_simulate(
    params: &ChannelParams,
    delay: usize,
    block_length: usize,
    scheme: &str,
    seed: u64,
    trace: bool,
    format: Format,
) -> Result<Rendered, String> {
    let scheme: Scheme = scheme.parse().map_err(|e: ldsim::SimError| e.to_string())?;
    if trace && format == Format::Csv {
        return Err("--trace is only available with --format json".into());
    }
    let cfg = SimConfig::new(*params, delay, block_length).map_err(|e| e.to_string())?;
    let result = ldsim::simulate(&cfg, scheme, seed).map_err(|e| e.to_string())?;
    let payload = SessionPayload::new(scheme.name(), seed, cfg.q, delay, &result, trace);
    let doc = document(params, Payload::Session(payload));
    let text = match format {
        Format::Json => to_json(&doc),
        Format::Csv => {
            let mut s = String::from("user,message_len,rate,rate_decimal,p,p_decimal\n");
            for u in User::BOTH {
                let _ = write!(s, "{},{}", u.number(), result.message_len(u));
                csv_rational(&mut s, result.rate(u));
                csv_rational(&mut s, result.p(u));
                s.push('\n');
            }
            s
        }
    };
    Ok(Rendered { document: doc, text })
}

fn to_json(doc: &OutputDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn execute(cli: &Cli) -> Result<Rendered, String> {
    let validated = |p: ChannelParams| p.validate().map(|_| p).map_err(|e| e.to_string());
    match &cli.command {
        Command::Region { params, format } => cmd_region(&validated(params.params())?, *format),
        Command::Metrics { params, format } => cmd_metrics(&validated(params.params())?, *format),
        Command::Sweep { forward, format } => cmd_sweep(&validated(forward.params())?, *format),
        Command::Simulate {
            params,
            delay,
            block_length,
            scheme,
            seed,
            trace,
            format,
        } => cmd_simulate(
            &validated(params.params())?,
            *delay,
            *block_length,
            scheme,
            *seed,
            *trace,
            *format,
        ),
    }
}

/// Parses `args` (including the program name), writes the document to `out`
/// and diagnostics to `err`, and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli) {
        Ok(rendered) => {
            if out.write_all(rendered.text.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            EXIT_OK
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}
