//! Command-line surface and its canonical text form.

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, PartialEq, Eq, Parser)]
#[command(name = "toggledyn", version, about = "Toggle promotion dynamics, sieving checks and stones/coins timelines")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Orbit census of a named operator or explicit word.
    Census(CensusArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
    /// Small-step trace of a stones/coins timeline on a path.
    Timeline(TimelineArgs),
    /// List operator families and verification suites.
    List,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Render {
    Ascii,
    Svg,
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct OperatorArgs {
    /// pro, tpro, tpro-pi, tpro-beta, bro, cyc-bro, phi or word.
    #[arg(long)]
    pub op: String,
    #[arg(long)]
    pub d: Option<usize>,
    /// One-line bijection for tpro-pi, e.g. 2,1,3,4.
    #[arg(long, value_delimiter = ',')]
    pub pi: Option<Vec<usize>>,
    /// Residues for bro / cyc-bro, e.g. 1,3,4; `R` selects the canonical ℛ for --d.
    #[arg(long)]
    pub set: Option<String>,
    /// Generators in application order for `--op word`, e.g. "t1 t3 cyc".
    #[arg(long)]
    pub word: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct CensusArgs {
    /// path:N, cycle:N, or "N; a-b,c-d,...".
    #[arg(long)]
    pub graph: String,
    #[command(flatten)]
    pub op: OperatorArgs,
    #[arg(long)]
    pub order_only: bool,
    /// Enumerate beyond the size bound.
    #[arg(long)]
    pub force: bool,
    /// Sample this many orbits from random labelings instead of a full census.
    #[arg(long)]
    pub sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct VerifyArgs {
    pub suite: String,
    /// Sizes: `6`, `2-7` or `4,5,6`.
    #[arg(long)]
    pub n: String,
    #[arg(long, conflicts_with = "all_d")]
    pub d: Option<usize>,
    /// Every admissible d (the default when --d is absent).
    #[arg(long)]
    pub all_d: bool,
    /// Seed labelings for fence and Ω suites: `all` or a sample count.
    #[arg(long, default_value = "all")]
    pub seeds: String,
    /// Random instances for sampling suites.
    #[arg(long, default_value_t = 200)]
    pub instances: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct TimelineArgs {
    #[arg(long, default_value = "")]
    pub graph: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: usize,
    /// Seed labeling, e.g. 5,2,6,4,1,3; random from --seed when absent.
    #[arg(long)]
    pub labeling: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub from: i64,
    /// Last time step; defaults to n.
    #[arg(long)]
    pub to: Option<i64>,
    /// Run exactly one period and report it.
    #[arg(long, conflicts_with = "to")]
    pub until_period: bool,
    #[arg(long, value_enum)]
    pub render: Option<Render>,
    /// Directory for SVG frames.
    #[arg(long)]
    pub out_dir: Option<String>,
    /// Build the Hasse fence and report energies and a transversal.
    #[arg(long)]
    pub fence: bool,
}

/// Parsed configuration plus its canonical argument list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub cli: Cli,
}

fn push_opt<T: ToString>(out: &mut Vec<String>, flag: &str, v: &Option<T>) {
    if let Some(v) = v {
        out.push(flag.into());
        out.push(v.to_string());
    }
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Table => "table",
    }
}

impl RunConfig {
    pub fn parse_from<I, T>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        Ok(Self { cli: Cli::try_parse_from(args)? })
    }

    /// Canonical argument list, with every default spelled out.
    pub fn to_args(&self) -> Vec<String> {
        let mut a = vec!["toggledyn".to_string()];
        match &self.cli.command {
            Command::Census(c) => {
                a.extend(["census".into(), "--graph".into(), c.graph.clone(), "--op".into(), c.op.op.clone()]);
                push_opt(&mut a, "--d", &c.op.d);
                if let Some(pi) = &c.op.pi {
                    a.push("--pi".into());
                    a.push(pi.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
                }
                push_opt(&mut a, "--set", &c.op.set);
                push_opt(&mut a, "--word", &c.op.word);
                if c.order_only {
                    a.push("--order-only".into());
                }
                if c.force {
                    a.push("--force".into());
                }
                push_opt(&mut a, "--sample", &c.sample);
                a.extend(["--seed".into(), c.seed.to_string(), "--format".into(), format_name(c.format).into()]);
            }
            Command::Verify(v) => {
                a.extend(["verify".into(), v.suite.clone(), "--n".into(), v.n.clone()]);
                push_opt(&mut a, "--d", &v.d);
                if v.all_d {
                    a.push("--all-d".into());
                }
                a.extend([
                    "--seeds".into(),
                    v.seeds.clone(),
                    "--instances".into(),
                    v.instances.to_string(),
                    "--seed".into(),
                    v.seed.to_string(),
                    "--format".into(),
                    format_name(v.format).into(),
                ]);
            }
            Command::Timeline(t) => {
                a.push("timeline".into());
                if !t.graph.is_empty() {
                    a.extend(["--graph".into(), t.graph.clone()]);
                }
                push_opt(&mut a, "--n", &t.n);
                a.extend(["--d".into(), t.d.to_string()]);
                push_opt(&mut a, "--labeling", &t.labeling);
                a.extend(["--seed".into(), t.seed.to_string(), "--from".into(), t.from.to_string()]);
                push_opt(&mut a, "--to", &t.to);
                if t.until_period {
                    a.push("--until-period".into());
                }
                if let Some(r) = t.render {
                    a.extend(["--render".into(), if r == Render::Ascii { "ascii" } else { "svg" }.into()]);
                }
                push_opt(&mut a, "--out-dir", &t.out_dir);
                if t.fence {
                    a.push("--fence".into());
                }
            }
            Command::List => a.push("list".into()),
        }
        a
    }
}

/// Shell-style rendering of the argument list.
impl std::fmt::Display for RunConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let quoted: Vec<String> = self
            .to_args()
            .into_iter()
            .map(|s| if s.is_empty() || s.contains([' ', ';', '"']) { format!("{s:?}") } else { s })
            .collect();
        f.write_str(&quoted.join(" "))
    }
}

impl std::str::FromStr for RunConfig {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Self::parse_from(split_words(s)?).map_err(|e| e.to_string())
    }
}

/// Split on whitespace, honoring double quotes with `\"` and `\\` escapes.
fn split_words(s: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut in_word = false;
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        match c {
            '"' => {
                in_word = true;
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some('\\') => cur.push(chars.next().ok_or("dangling escape")?),
                        Some(x) => cur.push(x),
                        None => return Err("unterminated quote".into()),
                    }
                }
            }
            c if c.is_whitespace() => {
                if in_word {
                    out.push(std::mem::take(&mut cur));
                    in_word = false;
                }
            }
            c => {
                in_word = true;
                cur.push(c);
            }
        }
    }
    if in_word {
        out.push(cur);
    }
    Ok(out)
}

/// `6`, `2-7` (inclusive) or `4,5,6`.
pub fn parse_sizes(s: &str) -> Result<Vec<usize>, String> {
    let bad = || format!("bad size list '{s}'");
    if let Some((a, b)) = s.split_once('-') {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect()
}
