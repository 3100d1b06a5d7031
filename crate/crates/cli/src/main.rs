mod args;
mod commands;

use clap::Parser;

use args::{Cli, Command, Format};
use commands::Outcome;

fn run(cli: &Cli) -> morita_core::Result<Outcome> {
    let ws = commands::workspace(cli.max_cols);
    match &cli.command {
        Command::Groups { order } => commands::cmd_groups(*order),
        Command::Cohomology {
            group,
            degree,
            modulus,
        } => commands::cmd_cohomology(&ws, group, *degree, *modulus),
        Command::Orbits { group } => commands::cmd_orbits(&ws, group),
        Command::Lhs { group, subgroup } => commands::cmd_lhs(&ws, group, subgroup),
        Command::Dual {
            group,
            subgroup,
            omega,
        } => commands::cmd_dual(&ws, group, subgroup, omega.as_deref()),
        Command::Classify {
            dimension,
            jobs,
            out,
        } => commands::cmd_classify(&ws, *dimension, *jobs, out.as_ref()),
        Command::Check {
            node_a,
            node_b,
            jobs,
        } => commands::cmd_check(&ws, node_a, node_b, *jobs),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&outcome.json).unwrap()),
                Format::Table => print!("{}", outcome.table),
            }
            std::process::exit(outcome.exit);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}
