use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_LAMBDA: &str = "1,0;0,-1";

#[derive(Parser, Debug, Clone, PartialEq, Eq)]
#[command(
    name = "tropcount",
    version,
    about = "Exact counts of real and complex nodal curves on toric Del Pezzo surfaces"
)]
pub struct RunConfig {
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Neither read nor write the report cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[arg(long, global = true, env = "TROPICAL_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Count curves and print the report as JSON.
    Count(CountArgs),
    /// Number of λ-admissible paths, optionally listed.
    Paths(PathsArgs),
    /// Nodal subdivisions of every path, or of one path.
    Subdivisions(SubdivisionsArgs),
    /// Corner locus and regular subdivision of a lift.
    Tropical(TropicalArgs),
    /// Lower bound for the Welschinger invariant.
    Bound(BoundArgs),
    /// Run the oracle suite.
    Verify(VerifyArgs),
    /// One SVG per contribution.
    EmitSvg(EmitSvgArgs),
}

#[derive(Args, Debug, Clone, PartialEq, Eq)]
pub struct Target {
    #[arg(long)]
    pub spec: String,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub genus: i64,
    #[arg(long, default_value = DEFAULT_LAMBDA, allow_hyphen_values = true)]
    pub lambda: String,
}

#[derive(Args, Debug, Clone, PartialEq, Eq)]
pub struct CountArgs {
    #[command(flatten)]
    pub target: Target,
    /// Comma-separated subset of complex_total, complex_irreducible, welschinger.
    #[arg(long, value_delimiter = ',')]
    pub kinds: Vec<String>,
    /// Allow Welschinger sums for positive genus, which are not invariants.
    #[arg(long)]
    pub ack_noninvariant: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, PartialEq, Eq)]
pub struct PathsArgs {
    #[command(flatten)]
    pub target: Target,
    #[arg(long)]
    pub list: bool,
}

#[derive(Args, Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionsArgs {
    #[command(flatten)]
    pub target: Target,
    /// A single path as a JSON array of [i, j] pairs.
    #[arg(long)]
    pub path: Option<String>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, PartialEq, Eq)]
pub struct TropicalArgs {
    /// JSON array of [i, j] pairs.
    #[arg(long)]
    pub support: String,
    /// JSON array of values: integers or "p/q" strings.
    #[arg(long)]
    pub lift: String,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, PartialEq, Eq)]
pub struct BoundArgs {
    #[arg(long)]
    pub spec: String,
    /// Also compute the invariant and compare.
    #[arg(long)]
    pub check: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    DeskSmall,
    Desk,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Oracle {
    Kontsevich,
}

#[derive(Args, Debug, Clone, PartialEq, Eq)]
pub struct VerifyArgs {
    #[arg(long, conflicts_with = "oracle")]
    pub preset: Option<Preset>,
    #[arg(long, requires = "degree")]
    pub oracle: Option<Oracle>,
    #[arg(long)]
    pub degree: Option<usize>,
}

#[derive(Args, Debug, Clone, PartialEq, Eq)]
pub struct EmitSvgArgs {
    /// Output of `subdivisions`.
    #[arg(long, conflicts_with_all = ["spec", "path"])]
    pub contributions: Option<PathBuf>,
    #[arg(long, requires = "path")]
    pub spec: Option<String>,
    #[arg(long, requires = "spec")]
    pub path: Option<String>,
    #[arg(long, default_value = DEFAULT_LAMBDA, allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

fn value_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

impl Target {
    fn push_args(&self, out: &mut Vec<String>) {
        out.extend(["--spec".into(), self.spec.clone(), "--genus".into(), self.genus.to_string()]);
        out.extend(["--lambda".into(), self.lambda.clone()]);
    }
}

impl RunConfig {
    /// Command line that parses back to `self`.
    pub fn to_args(&self) -> Vec<String> {
        let mut out = vec!["tropcount".to_string()];
        if let Some(w) = self.workers {
            out.extend(["--workers".into(), w.to_string()]);
        }
        if self.no_cache {
            out.push("--no-cache".into());
        }
        if let Some(d) = &self.cache_dir {
            out.extend(["--cache-dir".into(), d.display().to_string()]);
        }
        let path = |p: &PathBuf| p.display().to_string();
        match &self.command {
            Command::Count(a) => {
                out.push("count".into());
                a.target.push_args(&mut out);
                if !a.kinds.is_empty() {
                    out.extend(["--kinds".into(), a.kinds.join(",")]);
                }
                if a.ack_noninvariant {
                    out.push("--ack-noninvariant".into());
                }
                if let Some(o) = &a.output {
                    out.extend(["--output".into(), path(o)]);
                }
            }
            Command::Paths(a) => {
                out.push("paths".into());
                a.target.push_args(&mut out);
                if a.list {
                    out.push("--list".into());
                }
            }
            Command::Subdivisions(a) => {
                out.push("subdivisions".into());
                a.target.push_args(&mut out);
                if let Some(p) = &a.path {
                    out.extend(["--path".into(), p.clone()]);
                }
                if let Some(o) = &a.output {
                    out.extend(["--output".into(), path(o)]);
                }
            }
            Command::Tropical(a) => {
                out.extend(["tropical".into(), "--support".into(), a.support.clone(), "--lift".into(), a.lift.clone()]);
                if let Some(s) = &a.svg {
                    out.extend(["--svg".into(), path(s)]);
                }
            }
            Command::Bound(a) => {
                out.extend(["bound".into(), "--spec".into(), a.spec.clone()]);
                if a.check {
                    out.push("--check".into());
                }
            }
            Command::Verify(a) => {
                out.push("verify".into());
                if let Some(p) = &a.preset {
                    out.extend(["--preset".into(), value_name(p)]);
                }
                if let Some(o) = &a.oracle {
                    out.extend(["--oracle".into(), value_name(o)]);
                }
                if let Some(d) = a.degree {
                    out.extend(["--degree".into(), d.to_string()]);
                }
            }
            Command::EmitSvg(a) => {
                out.push("emit-svg".into());
                if let Some(c) = &a.contributions {
                    out.extend(["--contributions".into(), path(c)]);
                }
                if let Some(s) = &a.spec {
                    out.extend(["--spec".into(), s.clone()]);
                }
                if let Some(p) = &a.path {
                    out.extend(["--path".into(), p.clone()]);
                }
                out.extend(["--lambda".into(), a.lambda.clone(), "--out-dir".into(), path(&a.out_dir)]);
            }
        }
        out
    }
}
