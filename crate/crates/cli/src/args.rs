use std::fmt;

use anyhow::Result;
use clap::ValueEnum;
use dynamics::{Preset, System, SystemSpec};
use eigenmode_transform::cubic_from_table;
use serde_json::Value;

use crate::output;

/// Post-parse validation failure that should exit with the usage code
/// rather than the computation code.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Wraps a message as a usage error.
pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(UsageError(msg.into()))
}

/// Output format selector shared by the data-producing commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// A resonance ratio written `n1:n2:n3` on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RatioArg(pub u32, pub u32, pub u32);

pub fn parse_ratio(s: &str) -> Result<RatioArg, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected n1:n2:n3, got {s:?}"));
    }
    let mut n = [0u32; 3];
    for (slot, part) in n.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|e| format!("bad ratio entry {part:?}: {e}"))?;
    }
    Ok(RatioArg(n[0], n[1], n[2]))
}

/// A scan range written `u0:u1:steps` on the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanArg {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

pub fn parse_scan(s: &str) -> Result<ScanArg, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected u0:u1:steps, got {s:?}"));
    }
    let lo: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|e| format!("bad scan start {:?}: {e}", parts[0]))?;
    let hi: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|e| format!("bad scan end {:?}: {e}", parts[1]))?;
    let steps: usize = parts[2]
        .trim()
        .parse()
        .map_err(|e| format!("bad scan step count {:?}: {e}", parts[2]))?;
    if steps < 2 {
        return Err("a scan needs at least 2 steps".to_owned());
    }
    Ok(ScanArg { lo, hi, steps })
}

/// Converts a list of masses into inverse masses, validating positivity.
pub fn invert_masses(masses: &[f64]) -> Result<Vec<f64>> {
    for &m in masses {
        if !(m.is_finite() && m > 0.0) {
            return Err(usage(format!("masses must be positive and finite, got {m}")));
        }
    }
    Ok(masses.iter().map(|&m| 1.0 / m).collect())
}

/// System kinds selectable with `--system`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SystemKind {
    /// Periodic chain in particle coordinates.
    Chain,
    /// Three eigenmodes with the full set of ten cubic couplings.
    Modal,
    /// Three eigenmodes keeping only the resonant couplings.
    Intermediate,
    /// The 1:2:3 comparison oscillator with couplings a2, a3, b.
    Comparison,
}

/// Flags that select and parametrize the dynamical system; shared by
/// `simulate` and `ensemble`.
#[derive(Debug, clap::Args)]
pub struct SystemArgs {
    /// Named starting point supplying system, state, and time grid
    #[arg(long, conflicts_with = "system")]
    pub preset: Option<String>,

    /// Kind of system to build from the flags below
    #[arg(long, value_enum)]
    pub system: Option<SystemKind>,

    /// Strength of the cubic terms
    #[arg(long)]
    pub epsilon: Option<f64>,

    /// Particle masses of the chain, comma separated
    #[arg(long, value_delimiter = ',', conflicts_with = "inverse_masses")]
    pub masses: Option<Vec<f64>>,

    /// Inverse masses of the chain, comma separated
    #[arg(long = "inverse-masses", value_delimiter = ',')]
    pub inverse_masses: Option<Vec<f64>>,

    /// Cubic coefficient of the spring potential
    #[arg(long)]
    pub alpha: Option<f64>,

    /// Ten cubic mode couplings d1..d10, comma separated
    #[arg(long, value_delimiter = ',', num_args = 10)]
    pub d: Option<Vec<f64>>,

    /// Mass-curve parameter generating the couplings
    #[arg(long)]
    pub u: Option<f64>,

    /// Resonant two-mode coupling of the truncated system
    #[arg(long)]
    pub d6: Option<f64>,

    /// Resonant three-mode coupling of the truncated system
    #[arg(long)]
    pub d9: Option<f64>,

    /// Second-mode coupling of the comparison oscillator
    #[arg(long)]
    pub a2: Option<f64>,

    /// Third-mode coupling of the comparison oscillator
    #[arg(long)]
    pub a3: Option<f64>,

    /// Cross coupling of the comparison oscillator
    #[arg(long)]
    pub b: Option<f64>,
}

impl SystemArgs {
    fn chain_inverse_masses(&self) -> Result<Option<Vec<f64>>> {
        if let Some(m) = &self.masses {
            return Ok(Some(invert_masses(m)?));
        }
        Ok(self.inverse_masses.clone())
    }

    fn couplings_from_u(&self, u: f64) -> Result<[f64; 10]> {
        let alpha = self.alpha.unwrap_or(1.0);
        Ok(cubic_from_table(u, alpha)?.d)
    }

    /// Builds the system, starting from the preset when one was named
    /// and applying every explicit flag on top.
    pub fn resolve(&self) -> Result<(System, Option<Preset>)> {
        if let Some(name) = &self.preset {
            let preset = dynamics::preset(name).map_err(|e| usage(e.to_string()))?;
            let mut system = preset.system.clone();
            if let Some(eps) = self.epsilon {
                system = System::new(system.spec, eps)?;
            }
            self.apply_spec_overrides(&mut system)?;
            return Ok((system, Some(preset)));
        }

        let kind = self
            .system
            .ok_or_else(|| usage("either --preset or --system is required"))?;
        let spec = match kind {
            SystemKind::Chain => {
                let inverse_masses = self.chain_inverse_masses()?.ok_or_else(|| {
                    usage("--system chain needs --masses or --inverse-masses")
                })?;
                SystemSpec::FullChain {
                    inverse_masses,
                    alpha: self.alpha.unwrap_or(1.0),
                }
            }
            SystemKind::Modal => {
                let d = if let Some(d) = &self.d {
                    d.as_slice().try_into().expect("clap enforces ten values")
                } else if let Some(u) = self.u {
                    self.couplings_from_u(u)?
                } else {
                    return Err(usage("--system modal needs --d or --u"));
                };
                SystemSpec::Modal { d }
            }
            SystemKind::Intermediate => {
                let (d6, d9) = if let Some(u) = self.u {
                    let d = self.couplings_from_u(u)?;
                    (self.d6.unwrap_or(d[5]), self.d9.unwrap_or(d[8]))
                } else {
                    let d6 = self
                        .d6
                        .ok_or_else(|| usage("--system intermediate needs --d6 or --u"))?;
                    (d6, self.d9.unwrap_or(0.0))
                };
                SystemSpec::IntermediateNf { d6, d9 }
            }
            SystemKind::Comparison => SystemSpec::ComparisonHhc {
                a2: self.a2.unwrap_or(3.0),
                a3: self.a3.unwrap_or(1.0),
                b: self.b.unwrap_or(1.0),
            },
        };
        let system = System::new(spec, self.epsilon.unwrap_or(0.5))?;
        Ok((system, None))
    }

    fn apply_spec_overrides(&self, system: &mut System) -> Result<()> {
        match &mut system.spec {
            SystemSpec::FullChain {
                inverse_masses,
                alpha,
            } => {
                if let Some(a) = self.chain_inverse_masses()? {
                    *inverse_masses = a;
                }
                if let Some(al) = self.alpha {
                    *alpha = al;
                }
                self.reject_flags_for("a chain preset", &["--d", "--u", "--d6", "--d9", "--a2", "--a3", "--b"])?;
            }
            SystemSpec::Modal { d } => {
                if let Some(values) = &self.d {
                    *d = values.as_slice().try_into().expect("clap enforces ten values");
                } else if let Some(u) = self.u {
                    *d = self.couplings_from_u(u)?;
                }
                self.reject_flags_for(
                    "a modal preset",
                    &["--masses", "--inverse-masses", "--d6", "--d9", "--a2", "--a3", "--b"],
                )?;
            }
            SystemSpec::IntermediateNf { d6, d9 } => {
                if let Some(u) = self.u {
                    let d = self.couplings_from_u(u)?;
                    *d6 = d[5];
                    *d9 = d[8];
                }
                if let Some(v) = self.d6 {
                    *d6 = v;
                }
                if let Some(v) = self.d9 {
                    *d9 = v;
                }
                self.reject_flags_for(
                    "a truncated preset",
                    &["--masses", "--inverse-masses", "--d", "--a2", "--a3", "--b"],
                )?;
            }
            SystemSpec::ComparisonHhc { a2, a3, b } => {
                if let Some(v) = self.a2 {
                    *a2 = v;
                }
                if let Some(v) = self.a3 {
                    *a3 = v;
                }
                if let Some(v) = self.b {
                    *b = v;
                }
                self.reject_flags_for(
                    "a comparison preset",
                    &["--masses", "--inverse-masses", "--d", "--u", "--d6", "--d9"],
                )?;
            }
        }
        Ok(())
    }

    fn reject_flags_for(&self, what: &str, flags: &[&str]) -> Result<()> {
        for &flag in flags {
            let given = match flag {
                "--masses" => self.masses.is_some(),
                "--inverse-masses" => self.inverse_masses.is_some(),
                "--d" => self.d.is_some(),
                "--u" => self.u.is_some(),
                "--d6" => self.d6.is_some(),
                "--d9" => self.d9.is_some(),
                "--a2" => self.a2.is_some(),
                "--a3" => self.a3.is_some(),
                "--b" => self.b.is_some(),
                _ => false,
            };
            if given {
                return Err(usage(format!("{flag} does not apply to {what}")));
            }
        }
        Ok(())
    }
}

/// Adaptive-integrator flags shared by `simulate` and `ensemble`.
#[derive(Debug, clap::Args)]
pub struct IntegratorArgs {
    /// Relative error tolerance
    #[arg(long, default_value_t = 1e-10)]
    pub rtol: f64,

    /// Absolute error tolerance
    #[arg(long, default_value_t = 1e-10)]
    pub atol: f64,

    /// Step budget before the run aborts
    #[arg(long = "max-steps", default_value_t = 10_000_000)]
    pub max_steps: usize,
}

impl IntegratorArgs {
    pub fn options(&self) -> dynamics::IntegratorOptions {
        dynamics::IntegratorOptions {
            rtol: self.rtol,
            atol: self.atol,
            max_steps: self.max_steps,
            ..Default::default()
        }
    }

    pub fn config_entries(&self) -> Vec<(&'static str, Value)> {
        vec![
            ("rtol", Value::from(self.rtol)),
            ("atol", Value::from(self.atol)),
            ("max_steps", Value::from(self.max_steps)),
        ]
    }
}

/// Config entries describing a resolved system.
pub fn system_config_entries(system: &System) -> Result<Vec<(&'static str, Value)>> {
    Ok(vec![
        ("system", output::to_value(&system.spec)?),
        ("epsilon", Value::from(system.epsilon)),
    ])
}
