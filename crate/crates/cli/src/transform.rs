use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use eigenmode_transform::{
    cubic_from_table, cubic_from_transform, transform_closed_form, transform_numeric,
};
use serde_json::Value;

use crate::args::invert_masses;
use crate::output;

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Emit {
    /// Coordinate matrix only
    #[value(name = "K", alias = "k")]
    K,
    /// Momentum matrix only
    #[value(name = "L", alias = "l")]
    L,
    /// Cubic mode couplings only
    #[value(name = "dcoeffs")]
    Dcoeffs,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("input").required(true).multiple(false)))]
pub struct TransformArgs {
    /// Mass-curve parameter selecting the closed-form transform
    #[arg(long, group = "input")]
    u: Option<f64>,

    /// Particle masses of a four-site chain, comma separated
    #[arg(long, value_delimiter = ',', num_args = 4, group = "input")]
    masses: Option<Vec<f64>>,

    /// Inverse masses of a four-site chain, comma separated
    #[arg(long = "inverse-masses", value_delimiter = ',', num_args = 4, group = "input")]
    inverse_masses: Option<Vec<f64>>,

    /// Cubic coefficient of the spring potential
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,

    /// Restrict the output to one block
    #[arg(long, value_enum)]
    emit: Option<Emit>,

    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: &TransformArgs) -> Result<()> {
    let (pair, cubic) = if let Some(u) = args.u {
        let pair = transform_closed_form(u)?;
        let cubic = cubic_from_table(u, args.alpha)?;
        (pair, cubic)
    } else {
        let values = if let Some(m) = &args.masses {
            invert_masses(m)?
        } else {
            args.inverse_masses.clone().expect("clap requires one input")
        };
        let a: [f64; 4] = values.as_slice().try_into().expect("clap enforces four");
        let pair = transform_numeric(&a)?;
        let cubic = cubic_from_transform(&pair, args.alpha)?;
        (pair, cubic)
    };

    let mut config_entries = vec![("command", Value::from("transform"))];
    if let Some(u) = args.u {
        config_entries.push(("u", Value::from(u)));
    }
    config_entries.push(("inverse_masses", output::to_value(&pair.a)?));
    config_entries.push(("alpha", Value::from(args.alpha)));
    let config = output::config_object(config_entries);

    let fields = match args.emit {
        Some(Emit::K) => vec![("k", output::to_value(&pair.k)?)],
        Some(Emit::L) => vec![("l", output::to_value(&pair.l)?)],
        Some(Emit::Dcoeffs) => vec![("dcoeffs", output::to_value(&cubic.d)?)],
        None => vec![
            ("u", output::to_value(&pair.u)?),
            ("a", output::to_value(&pair.a)?),
            ("eigenvalues", output::to_value(&pair.eigenvalues)?),
            ("k", output::to_value(&pair.k)?),
            ("l", output::to_value(&pair.l)?),
            ("dcoeffs", output::to_value(&cubic.d)?),
        ],
    };
    let report = output::report(config, fields);
    output::emit_json(args.out.as_deref(), &report)
}
