use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use fiber_solver::{
    fiber123, fiber_classify, region_tests, solve_fiber_at, spherical_coords, target_spectrum,
    FiberClassification, FiberPoint, ResonanceRatio, TargetSpectrum,
};
use serde_json::Value;

use crate::args::{parse_ratio, usage, Format, RatioArg};
use crate::output;

#[derive(Args)]
#[command(group(clap::ArgGroup::new("target").required(true).multiple(false)))]
#[command(group(clap::ArgGroup::new("selector").multiple(false)))]
pub struct FiberArgs {
    /// Frequency ratio written n1:n2:n3
    #[arg(long, value_parser = parse_ratio, group = "target")]
    ratio: Option<RatioArg>,

    /// Three positive eigenvalues standing in for a ratio, comma separated
    #[arg(long, value_delimiter = ',', num_args = 3, group = "target")]
    lambda: Option<Vec<f64>>,

    /// Sample the closed-form 1:2:3 curve at this parameter
    #[arg(long, group = "selector")]
    u: Option<f64>,

    /// Slice the fiber at this value of the second symmetric function
    #[arg(long, group = "selector")]
    eta2: Option<f64>,

    /// Classify the whole fiber into branches
    #[arg(long, group = "selector")]
    classify: bool,

    /// Attach spherical coordinates to every point in JSON output
    #[arg(long)]
    spherical: bool,

    /// Grid resolution of the classification scan
    #[arg(long, default_value_t = 10_000)]
    grid: usize,

    /// Interior sample levels per branch in CSV output
    #[arg(long, default_value_t = 25)]
    samples: usize,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

const CSV_HEADER: &str = "param,a1,a2,a3,a4,phi,psi";

fn target_of(args: &FiberArgs) -> Result<(TargetSpectrum, Value)> {
    if let Some(RatioArg(n1, n2, n3)) = args.ratio {
        let ratio = ResonanceRatio::new(n1, n2, n3).map_err(|e| usage(e.to_string()))?;
        let echo = Value::from(format!("{n1}:{n2}:{n3}"));
        Ok((target_spectrum(&ratio), echo))
    } else {
        let lambda = args.lambda.as_ref().expect("clap requires one target");
        let values: [f64; 3] = lambda.as_slice().try_into().expect("clap enforces three");
        let target = TargetSpectrum::new(values).map_err(|e| usage(e.to_string()))?;
        Ok((target, output::to_value(&values)?))
    }
}

fn point_value(point: &FiberPoint, spherical: bool) -> Result<Value> {
    let mut value = output::to_value(point)?;
    if spherical {
        let coords = spherical_coords(point)?;
        value["spherical"] = output::to_value(&coords)?;
    }
    Ok(value)
}

fn csv_row(param: f64, point: &FiberPoint) -> Result<String> {
    let coords = spherical_coords(point)?;
    let mut cells = vec![output::float_cell(param)];
    cells.extend(point.a.iter().map(|&x| output::float_cell(x)));
    cells.push(output::float_cell(coords.phi));
    cells.push(output::float_cell(coords.psi));
    Ok(cells.join(","))
}

fn classification_rows(
    classification: &FiberClassification,
    samples: usize,
) -> Result<String> {
    let mut rows = String::new();
    for touch in &classification.touches {
        rows.push_str(&csv_row(touch.eta2, &touch.point)?);
        rows.push('\n');
    }
    for branch in &classification.branches {
        let span = branch.eta2_hi - branch.eta2_lo;
        for k in 1..=samples {
            let eta2 = branch.eta2_lo + span * k as f64 / (samples + 1) as f64;
            for point in branch.sample(eta2).with_context(|| {
                format!("failed to sample a branch at eta2 = {eta2}")
            })? {
                rows.push_str(&csv_row(eta2, &point)?);
                rows.push('\n');
            }
        }
    }
    Ok(rows)
}

pub fn run(args: &FiberArgs) -> Result<()> {
    let (target, target_echo) = target_of(args)?;
    let values = target.values();

    let mut config_entries = vec![
        ("command", Value::from("fiber")),
        (
            if args.ratio.is_some() { "ratio" } else { "lambda" },
            target_echo,
        ),
        ("target_eigenvalues", output::to_value(&values)?),
    ];

    if let Some(u) = args.u {
        let on_curve = args
            .ratio
            .map(|RatioArg(n1, n2, n3)| (n1, n2, n3) == (1, 2, 3))
            .unwrap_or(false);
        if !on_curve {
            return Err(usage("--u samples the closed-form curve, which needs --ratio 1:2:3"));
        }
        config_entries.push(("u", Value::from(u)));
        let point = fiber123(u)?;
        match args.format {
            Format::Json => {
                let config = output::config_object(config_entries);
                let report = output::report(
                    config,
                    vec![("point", point_value(&point, args.spherical)?)],
                );
                output::emit_json(args.out.as_deref(), &report)
            }
            Format::Csv => {
                let config = output::config_object(config_entries);
                let mut rows = csv_row(u, &point)?;
                rows.push('\n');
                output::emit_csv(args.out.as_deref(), &config, CSV_HEADER, &rows)
            }
        }
    } else if let Some(eta2) = args.eta2 {
        config_entries.push(("eta2", Value::from(eta2)));
        let points = solve_fiber_at(&target, eta2)?;
        match args.format {
            Format::Json => {
                let point_values: Vec<Value> = points
                    .iter()
                    .map(|p| point_value(p, args.spherical))
                    .collect::<Result<_>>()?;
                let config = output::config_object(config_entries);
                let report = output::report(config, vec![("points", Value::from(point_values))]);
                output::emit_json(args.out.as_deref(), &report)
            }
            Format::Csv => {
                let config = output::config_object(config_entries);
                let mut rows = String::new();
                for point in &points {
                    rows.push_str(&csv_row(eta2, point)?);
                    rows.push('\n');
                }
                output::emit_csv(args.out.as_deref(), &config, CSV_HEADER, &rows)
            }
        }
    } else if args.classify {
        config_entries.push(("grid", Value::from(args.grid)));
        let classification = fiber_classify(&target, args.grid)?;
        match args.format {
            Format::Json => {
                let config = output::config_object(config_entries);
                let report = output::report(
                    config,
                    vec![("classification", output::to_value(&classification)?)],
                );
                output::emit_json(args.out.as_deref(), &report)
            }
            Format::Csv => {
                config_entries.push(("samples", Value::from(args.samples)));
                config_entries.push(("kind", output::to_value(&classification.kind)?));
                let config = output::config_object(config_entries);
                let rows = classification_rows(&classification, args.samples)?;
                output::emit_csv(args.out.as_deref(), &config, CSV_HEADER, &rows)
            }
        }
    } else {
        let (xi, eta) = (target.xi(), target.eta());
        let region = region_tests(xi, eta)?;
        let config = output::config_object(config_entries);
        let report = output::report(
            config,
            vec![
                ("xi", Value::from(xi)),
                ("eta", Value::from(eta)),
                ("region", output::to_value(&region)?),
            ],
        );
        output::emit_json(args.out.as_deref(), &report)
    }
}
