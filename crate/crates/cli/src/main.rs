use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod config;
mod render;

#[derive(Parser, Debug)]
#[command(name = "rector", version, about = "Functors on categories of elements over finite fields")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Prime field characteristic.
    #[arg(long, global = true, default_value_t = 2)]
    pub p: u32,
    /// Dimension cap D. Defaults to 3, or to the classification window for
    /// `enumerate-simples` and `verify-theorems`.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    #[arg(long = "n-max", global = true, default_value_t = 2)]
    pub n_max: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    #[arg(long = "budget-maps", global = true)]
    pub budget_maps: Option<u128>,
    #[arg(long = "budget-group", global = true)]
    pub budget_group: Option<usize>,
    /// sfunctor.json (a table or a built-in description). Overrides --builtin.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Built-in set functor: representable, orbit, constant, subspaces, subsets.
    #[arg(long, global = true, default_value = "representable")]
    pub builtin: String,
    #[arg(long = "u-dim", global = true, default_value_t = 1)]
    pub u_dim: usize,
    /// Functor on the category of elements, e.g. `tensor:2`, `injective:1`,
    /// `constant:1`, `cogen:0:0`, `projective:1:0`, or a `+`-separated sum.
    #[arg(long, global = true, default_value = "tensor:2")]
    pub functor: String,
    /// vfunctor.json table; overrides --functor.
    #[arg(long, global = true)]
    pub vfunctor: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Markdown,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Check the functor laws of the set functor (and of --vfunctor if given).
    Validate,
    /// Weak noetherianity and vanishing of regular elements.
    CheckNoetherian,
    /// The Rector skeleton: classes, automorphism groups, hom counts.
    Rector,
    /// Polynomial degree certificate for --functor.
    Degree,
    /// Dimensions of the iterated difference functors of --functor.
    Delta,
    /// Cross effect dimensions of --functor.
    CrossEffect {
        /// Rector class of the base object (all classes if omitted).
        #[arg(long)]
        class: Option<usize>,
        /// Comma-separated dimensions of the added summands.
        #[arg(long, default_value = "1,1")]
        split: String,
    },
    /// Simple modules of a finite group.
    SimplesOfGroup {
        /// `sym:N`, `cyclic:N`, or `aut:C` for Aut(class C) x S_{n-max}.
        #[arg(long, default_value = "sym:3")]
        group: String,
    },
    /// Classify the simple functors up to --n-max.
    EnumerateSimples,
    /// Run the lemma, adjunction, main1 and mainx suites.
    VerifyTheorems,
    /// Run a command on the built-in example (or summarise all built-ins).
    Demo {
        #[arg(value_enum)]
        task: Option<DemoTask>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum DemoTask {
    Validate,
    CheckNoetherian,
    Rector,
    Degree,
    Delta,
    EnumerateSimples,
    VerifyTheorems,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.global.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.global.jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli.global, &cli.command) {
        Ok(out) => {
            let text = match cli.global.format {
                Format::Json => serde_json::to_string_pretty(&out.envelope).expect("reports serialize") + "\n",
                Format::Markdown => render::markdown(&out.envelope),
            };
            // a closed pipe is not an error worth reporting
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
