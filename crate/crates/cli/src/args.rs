use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "morita",
    version,
    about = "Finite group cohomology, LHS second differentials, and weak Morita classification of pointed fusion categories"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Cap on cochain-space dimensions before computations refuse to run.
    #[arg(long, global = true, default_value_t = 4096)]
    pub max_cols: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
pub enum Command {
    /// List the catalog groups of one order.
    Groups {
        #[arg(long)]
        order: usize,
    },
    /// Invariant factors and basis handle of H^degree(G, Q/Z).
    Cohomology {
        /// Catalog key (e.g. "8.Q") or path to a group JSON file.
        #[arg(long)]
        group: String,
        #[arg(long)]
        degree: usize,
        /// Working modulus; defaults to |G|.
        #[arg(long)]
        modulus: Option<i64>,
    },
    /// Orbits of H^3(G, Q/Z) under Aut(G).
    Orbits {
        #[arg(long)]
        group: String,
    },
    /// E2 page of the extension 1 -> A -> G -> K -> 1 and the second
    /// differential on row one.
    Lhs {
        #[arg(long)]
        group: String,
        /// Comma-separated element indices of the normal abelian subgroup.
        #[arg(long)]
        subgroup: String,
    },
    /// The dual pointed category of (G, omega) with respect to a subgroup,
    /// or "not pointed" with the obstruction (exit code 2).
    Dual {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: String,
        /// Twist coordinates in the published H^3 basis, comma-separated;
        /// omit for the trivial twist.
        #[arg(long)]
        omega: Option<String>,
    },
    /// Classify all pointed fusion categories of one global dimension up to
    /// weak Morita equivalence.
    Classify {
        #[arg(long)]
        dimension: usize,
        /// Worker count; any value yields byte-identical output.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write the database JSON here as well.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Decide weak Morita equivalence of two nodes "KEY@c1,c2,..."
    /// (exit code 2 when inequivalent).
    Check {
        #[arg(long = "node-a")]
        node_a: String,
        #[arg(long = "node-b")]
        node_b: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}
