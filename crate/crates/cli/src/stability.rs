use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use eigenmode_transform::cubic_from_table;
use normalform::{
    normal_mode_stability, HopfScanPoint, InvariantFamily, THIRD_INTEGRAL_TOL,
};
use serde_json::Value;

use crate::args::{parse_scan, usage, ScanArg};
use crate::output;

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ModeChoice {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    #[value(name = "edge")]
    Edge,
}

impl ModeChoice {
    fn family(self) -> InvariantFamily {
        match self {
            ModeChoice::One => InvariantFamily::Mode1,
            ModeChoice::Two => InvariantFamily::Mode2,
            ModeChoice::Three => InvariantFamily::Mode3,
            ModeChoice::Edge => InvariantFamily::Edge,
        }
    }
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("input").required(true).multiple(false)))]
pub struct StabilityArgs {
    /// Mass-curve parameter fixing the resonant couplings
    #[arg(long, group = "input")]
    u: Option<f64>,

    /// Explicit resonant couplings d6,d9 instead of --u
    #[arg(long, value_delimiter = ',', num_args = 2, group = "input")]
    couplings: Option<Vec<f64>>,

    /// Scan the second-mode class over u0:u1:steps
    #[arg(long, value_parser = parse_scan, group = "input")]
    scan: Option<ScanArg>,

    /// Family to linearize; all applicable families when omitted
    #[arg(long, value_enum, conflicts_with = "scan")]
    mode: Option<ModeChoice>,

    /// Strength of the cubic terms
    #[arg(long, default_value_t = 0.5)]
    epsilon: f64,

    /// Amplitude pair (a, b) of the carrying mode
    #[arg(long, value_delimiter = ',', num_args = 2, default_value = "1,0")]
    amplitude: Vec<f64>,

    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

fn couplings_of(args: &StabilityArgs, u: f64) -> Result<(f64, f64)> {
    let _ = args;
    let cubic = cubic_from_table(u, 1.0)?;
    Ok((cubic.d6(), cubic.d9()))
}

pub fn run(args: &StabilityArgs) -> Result<()> {
    let amplitude: [f64; 2] = args
        .amplitude
        .as_slice()
        .try_into()
        .expect("clap enforces two values");

    if let Some(scan) = args.scan {
        let config = output::config_object(vec![
            ("command", Value::from("stability")),
            (
                "scan",
                output::config_object(vec![
                    ("u0", Value::from(scan.lo)),
                    ("u1", Value::from(scan.hi)),
                    ("steps", Value::from(scan.steps)),
                ]),
            ),
            ("epsilon", Value::from(args.epsilon)),
        ]);
        let mut points = Vec::with_capacity(scan.steps);
        for k in 0..scan.steps {
            let u = scan.lo + (scan.hi - scan.lo) * k as f64 / (scan.steps - 1) as f64;
            let (d6, d9) = couplings_of(args, u)?;
            let report =
                normal_mode_stability(InvariantFamily::Mode2, d6, d9, [1.0, 0.0], args.epsilon)?;
            points.push(HopfScanPoint {
                u,
                d6,
                d9,
                discriminant: d6 * d6 - 3.0 * d9 * d9,
                class: report.class,
            });
        }
        let report = output::report(config, vec![("points", output::to_value(&points)?)]);
        return output::emit_json(args.out.as_deref(), &report);
    }

    let (d6, d9) = if let Some(u) = args.u {
        couplings_of(args, u)?
    } else {
        let c = args.couplings.as_ref().expect("clap requires one input");
        (c[0], c[1])
    };
    if d6 == 0.0 && d9 == 0.0 {
        return Err(usage("the resonant couplings d6 and d9 cannot both vanish"));
    }

    let families: Vec<InvariantFamily> = match args.mode {
        Some(choice) => vec![choice.family()],
        None => {
            let mut all = vec![InvariantFamily::Mode1, InvariantFamily::Mode2];
            if d9.abs() <= THIRD_INTEGRAL_TOL {
                all.push(InvariantFamily::Mode3);
            }
            all.push(InvariantFamily::Edge);
            all
        }
    };

    let mut config_entries = vec![("command", Value::from("stability"))];
    if let Some(u) = args.u {
        config_entries.push(("u", Value::from(u)));
    }
    config_entries.push(("d6", Value::from(d6)));
    config_entries.push(("d9", Value::from(d9)));
    config_entries.push(("epsilon", Value::from(args.epsilon)));
    config_entries.push(("amplitude", output::to_value(&amplitude)?));
    let config = output::config_object(config_entries);

    let mut reports = Vec::with_capacity(families.len());
    for family in families {
        reports.push(normal_mode_stability(family, d6, d9, amplitude, args.epsilon)?);
    }
    let report = output::report(config, vec![("reports", output::to_value(&reports)?)]);
    output::emit_json(args.out.as_deref(), &report)
}
