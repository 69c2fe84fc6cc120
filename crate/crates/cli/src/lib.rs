//! Command-line front end for the `imac` toolkit.

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use imac::{
    achievable_product_region, bounds, classify, exact_sum_capacity, ivs_region, mses_region, outer_bound,
    ImacChannelF64, OptimizerSettings, Orientation, RatePolytopeF64,
};
use serde_json::{json, Value};

pub mod sweep;
pub mod table;

use sweep::{Axis, GapGrid, PowerSweep, RegimeGrid, Spacing};
use table::{Cell, Table};

/// Bad flags or parameters; reported with exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Debug, Parser)]
#[command(name = "imac", version, about = "Capacity regions and sum-capacity bounds for two interfering Gaussian MACs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct ChannelArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub p1: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub p2: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub h1: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub h2: f64,
}

impl ChannelArgs {
    fn channel(&self) -> Result<ImacChannelF64, UsageError> {
        ImacChannelF64::new(self.p1, self.p2, self.h1, self.h2).map_err(|e| UsageError(e.to_string()))
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct OptimizerArgs {
    /// Points per axis of the coarse genie-parameter grid.
    #[arg(long, default_value_t = 201)]
    pub grid: usize,
    /// Nelder–Mead iterations after the grid search.
    #[arg(long, default_value_t = 200)]
    pub refine: usize,
}

impl OptimizerArgs {
    fn settings(&self) -> OptimizerSettings {
        OptimizerSettings {
            grid: self.grid,
            refine_iterations: self.refine,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Outer,
    Mses12,
    Mses21,
    Ivs,
    Product,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Regime flags, margins and the exact sum capacity when known.
    Classify {
        #[command(flatten)]
        channel: ChannelArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Lower and upper sum-capacity bounds.
    Bounds {
        #[command(flatten)]
        channel: ChannelArgs,
        #[command(flatten)]
        optimizer: OptimizerArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Constraint list of a rate region.
    Region {
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long, value_enum, default_value = "outer")]
        which: Which,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Bounds against P with P1 = P2 = P.
    SweepPower {
        #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
        h1: f64,
        #[arg(long, default_value_t = 0.15, allow_hyphen_values = true)]
        h2: f64,
        #[arg(long, default_value_t = 0.1)]
        start: f64,
        #[arg(long, default_value_t = 50.0)]
        stop: f64,
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long, value_enum, default_value = "log")]
        spacing: Spacing,
        #[command(flatten)]
        optimizer: OptimizerArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Bound gap over a grid of cross gains.
    GapGrid {
        #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
        p1: f64,
        #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
        p2: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        h1_start: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        h1_stop: f64,
        #[arg(long, default_value_t = 21)]
        h1_points: usize,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        h2_start: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        h2_stop: f64,
        #[arg(long, default_value_t = 21)]
        h2_points: usize,
        /// Add a column naming the gap level set (<0.1, <0.2, ... <1.6).
        #[arg(long)]
        bands: bool,
        #[command(flatten)]
        optimizer: OptimizerArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Regime flags over received interference powers h1²P1 and h2²P2.
    RegimeGrid {
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        p1: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        p2: f64,
        /// Upper end of both axes [default: 2(P1+P2)(1+P1+P2)].
        #[arg(long)]
        stop: Option<f64>,
        #[arg(long, default_value_t = 121)]
        points: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Rendered command output and where it goes.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub text: String,
    pub out: Option<PathBuf>,
}

fn render_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

fn render(table: &Table, json: Option<Value>, format: Format) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => render_json(&json.unwrap_or_else(|| table.to_json())),
    }
}

fn channel_json(c: &ImacChannelF64) -> Value {
    use imac::format::json_number;
    json!({
        "p1": json_number(c.p1()),
        "p2": json_number(c.p2()),
        "h1": json_number(c.h1()),
        "h2": json_number(c.h2()),
    })
}

fn region(c: &ImacChannelF64, which: Which) -> Result<RatePolytopeF64, UsageError> {
    let usage = |e: imac::Error| UsageError(e.to_string());
    Ok(match which {
        Which::Outer => outer_bound(c),
        Which::Mses12 => mses_region(c, Orientation::H1Strong).map_err(usage)?,
        Which::Mses21 => mses_region(c, Orientation::H2Strong).map_err(usage)?,
        Which::Ivs => ivs_region(c).map_err(usage)?,
        Which::Product => achievable_product_region(c),
    })
}

/// Executes a parsed command and renders its output.
pub fn run(command: &Command) -> anyhow::Result<Rendered> {
    let (text, out) = match command {
        Command::Classify { channel, output } => {
            let c = channel.channel()?;
            let report = classify(&c);
            let exact = exact_sum_capacity(&c);
            let mut table = Table::new(vec!["mses12", "mses21", "ivs", "vsc", "exact_bits", "exact_regime"]);
            table.rows.push(vec![
                report.mses12.into(),
                report.mses21.into(),
                report.ivs.into(),
                report.vsc.into(),
                exact.map_or(Cell::Empty, |e| Cell::Num(e.bits)),
                exact.map_or(Cell::Empty, |e| Cell::Text(e.regime.as_str().into())),
            ]);
            let mut json = report.to_json();
            json["channel"] = channel_json(&c);
            json["exact_sum_capacity"] = match exact {
                Some(e) => json!({ "bits": imac::format::json_number(e.bits), "regime": e.regime.as_str() }),
                None => Value::Null,
            };
            (render(&table, Some(json), output.format.unwrap_or(Format::Json)), &output.out)
        }
        Command::Bounds { channel, optimizer, output } => {
            let c = channel.channel()?;
            let settings = optimizer.settings();
            settings.validate().map_err(|e| UsageError(e.to_string()))?;
            let b = bounds(&c, &settings)?;
            let mut table = Table::new(vec!["lower_bits", "upper_bits", "gap_bits", "rho", "eta", "exact_regime"]);
            table.rows.push(vec![
                b.lower.into(),
                b.upper.into(),
                b.gap.into(),
                b.argmin.rho().into(),
                b.argmin.eta().into(),
                b.exact.map_or(Cell::Empty, |r| Cell::Text(r.as_str().into())),
            ]);
            let mut json = b.to_json();
            json["channel"] = channel_json(&c);
            (render(&table, Some(json), output.format.unwrap_or(Format::Json)), &output.out)
        }
        Command::Region { channel, which, output } => {
            let poly = region(&channel.channel()?, *which)?;
            let mut table = Table::new(vec!["mask", "rhs_bits"]);
            for c in poly.constraints() {
                let labels: Vec<String> = c.mask.labels().iter().map(|l| l.to_string()).collect();
                table.rows.push(vec![Cell::Text(labels.join(" ")), c.rhs.into()]);
            }
            (render(&table, Some(poly.to_json()), output.format.unwrap_or(Format::Json)), &output.out)
        }
        Command::SweepPower { h1, h2, start, stop, points, spacing, optimizer, output } => {
            let sweep = PowerSweep {
                power: Axis { start: *start, stop: *stop, points: *points, spacing: *spacing },
                h1: *h1,
                h2: *h2,
                optimizer: optimizer.settings(),
            };
            (render(&sweep.run()?, None, output.format.unwrap_or(Format::Csv)), &output.out)
        }
        Command::GapGrid {
            p1,
            p2,
            h1_start,
            h1_stop,
            h1_points,
            h2_start,
            h2_stop,
            h2_points,
            bands,
            optimizer,
            output,
        } => {
            let grid = GapGrid {
                p1: *p1,
                p2: *p2,
                h1: Axis::linear(*h1_start, *h1_stop, *h1_points),
                h2: Axis::linear(*h2_start, *h2_stop, *h2_points),
                bands: *bands,
                optimizer: optimizer.settings(),
            };
            (render(&grid.run()?, None, output.format.unwrap_or(Format::Csv)), &output.out)
        }
        Command::RegimeGrid { p1, p2, stop, points, output } => {
            // Validate powers before deriving the default axis from them.
            ImacChannelF64::new(*p1, *p2, 0.0, 0.0).map_err(|e| UsageError(e.to_string()))?;
            let axis = match stop {
                Some(s) => Axis::linear(0.0, *s, *points),
                None => RegimeGrid::default_axis(*p1, *p2, *points),
            };
            let grid = RegimeGrid { p1: *p1, p2: *p2, x: axis, y: axis };
            (render(&grid.run()?, None, output.format.unwrap_or(Format::Csv)), &output.out)
        }
    };
    Ok(Rendered { text, out: out.clone() })
}

/// Exit status for an error returned by [`run`]: 2 for usage, 1 otherwise.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    if err.downcast_ref::<UsageError>().is_some() {
        2
    } else {
        1
    }
}
