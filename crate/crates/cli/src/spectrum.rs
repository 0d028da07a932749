use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use lattice_core::{char_poly_identities, spectrum, InverseMasses};
use serde_json::Value;

use crate::args::{invert_masses, usage};
use crate::output;

#[derive(Args)]
#[command(group(clap::ArgGroup::new("mass_input").required(true).multiple(false)))]
pub struct SpectrumArgs {
    /// Particle masses m_j, comma separated
    #[arg(long, value_delimiter = ',', group = "mass_input")]
    masses: Option<Vec<f64>>,

    /// Inverse masses a_j = 1/m_j, comma separated
    #[arg(long = "inverse-masses", value_delimiter = ',', group = "mass_input")]
    inverse_masses: Option<Vec<f64>>,

    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: &SpectrumArgs) -> Result<()> {
    let values = if let Some(m) = &args.masses {
        invert_masses(m)?
    } else {
        args.inverse_masses.clone().expect("clap requires one input")
    };
    let a = InverseMasses::new(values).map_err(|e| usage(e.to_string()))?;

    let config = output::config_object(vec![
        ("command", Value::from("spectrum")),
        ("inverse_masses", output::to_value(a.values())?),
    ]);

    let spec = spectrum(&a)?;
    let (p1, p2) = char_poly_identities(&a);
    let spec_value = output::to_value(&spec)?;
    let report = output::report(
        config,
        vec![
            ("eigenvalues", spec_value["eigenvalues"].clone()),
            ("eigenvectors", spec_value["eigenvectors"].clone()),
            ("zero_index", spec_value["zero_index"].clone()),
            ("frequencies", output::to_value(&spec.frequencies())?),
            (
                "char_poly",
                output::config_object(vec![
                    ("p_n_minus_1", Value::from(p1)),
                    ("p_n_minus_2", Value::from(p2)),
                ]),
            ),
        ],
    );
    output::emit_json(args.out.as_deref(), &report)
}
