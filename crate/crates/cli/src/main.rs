//! `rlcm`: analyze right LCM semigroups from the command line.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rlcm::report::{germ_text, load_instance, msf_text, render_report, AnalyzeOptions, Format};

#[derive(Parser)]
#[command(name = "rlcm", version, about = "Structural reports for right LCM semigroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check and print the report.
    Analyze {
        /// `free:X01`, `nat:2`, `odometer`, `modified-odometer` or a spec file.
        instance: String,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        depth: u64,
        #[arg(long = "ep-cap", default_value_t = 4)]
        ep_cap: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Minimal strongly fixed words of a group element.
    Msf {
        instance: String,
        #[arg(long)]
        element: String,
        #[arg(long = "max-len", default_value_t = 8)]
        max_len: usize,
    },
    /// The germ of a hull element at an eventually periodic boundary point.
    Germ {
        instance: String,
        /// A hull element such as `[0, 1]` or `(ε, z, ε)`.
        #[arg(long)]
        s: String,
        /// A boundary point `u(w)`, e.g. `1(0)`.
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
}

fn run(cli: Cli) -> rlcm::Result<String> {
    match cli.command {
        Command::Analyze {
            instance,
            depth,
            ep_cap,
            format,
        } => {
            let inst = load_instance(&instance)?;
            let opts = AnalyzeOptions {
                depth: depth as usize,
                ep_cap,
                ..AnalyzeOptions::default()
            };
            let format = match format {
                OutputFormat::Text => Format::Text,
                OutputFormat::Machine => Format::Machine,
            };
            Ok(render_report(&inst.analyze(&opts), format))
        }
        Command::Msf {
            instance,
            element,
            max_len,
        } => msf_text(&load_instance(&instance)?, &element, max_len),
        Command::Germ {
            instance,
            s,
            point,
            depth,
        } => germ_text(&load_instance(&instance)?, &s, &point, depth),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("rlcm: {e}");
            ExitCode::from(2)
        }
    }
}
