mod args;
mod ensemble;
mod fiber;
mod output;
mod simulate;
mod spectrum;
mod stability;
mod transform;
mod validate;

use std::process::ExitCode;

use clap::Parser;

/// Spectra, resonance fibers, eigenmode transforms, and dynamics of the
/// periodic nonlinear chain with variable masses.
#[derive(Parser)]
#[command(name = "fpu", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Subcommand)]
enum Command {
    /// Eigenvalue spectrum of a mass distribution
    Spectrum(spectrum::SpectrumArgs),
    /// Mass distributions realizing a prescribed frequency ratio
    Fiber(fiber::FiberArgs),
    /// Symplectic eigenmode transform and cubic mode couplings
    Transform(transform::TransformArgs),
    /// Linear stability of the periodic orbits near the resonance
    Stability(stability::StabilityArgs),
    /// Integrate a single trajectory with conserved-quantity diagnostics
    Simulate(simulate::SimulateArgs),
    /// Integrate an ensemble and project it onto the action simplex
    Ensemble(ensemble::EnsembleArgs),
    /// Cross-check the build against independently computed references
    Validate(validate::ValidateArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Spectrum(a) => spectrum::run(a),
        Command::Fiber(a) => fiber::run(a),
        Command::Transform(a) => transform::run(a),
        Command::Stability(a) => stability::run(a),
        Command::Simulate(a) => simulate::run(a),
        Command::Ensemble(a) => ensemble::run(a),
        Command::Validate(a) => validate::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.downcast_ref::<args::UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
