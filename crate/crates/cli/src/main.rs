mod config;

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::process::ExitCode;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use config::{parse_sizes, CensusArgs, Command, Format, OperatorArgs, Render, RunConfig, TimelineArgs, VerifyArgs};
use toggledyn::dynamics::{full_census, sampled_orbit_sizes, CensusOptions};
use toggledyn::graph::Graph;
use toggledyn::labeling::Labeling;
use toggledyn::registry::{self, OperatorParams};
use toggledyn::stones::fence::fence_with_transversal;
use toggledyn::stones::{render, trace, Timeline};
use toggledyn::verify::{self, SuiteConfig};
use toggledyn::word::OperatorWord;
use toggledyn::Error;

/// Why a command did not succeed; each maps to one exit code.
enum Failure {
    Mismatch,
    Usage(String),
    Bound(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BoundExceeded { .. } | Error::WindowExhausted { .. } => Failure::Bound(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cfg = match RunConfig::parse_from(std::env::args_os()) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match &cfg.cli.command {
        Command::Census(a) => census(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Timeline(a) => timeline(a),
        Command::List => list(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Bound(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn operator_word(n: usize, op: &OperatorArgs) -> Result<OperatorWord, Failure> {
    let set = match op.set.as_deref() {
        None => None,
        Some("R") => {
            let d = op.d.ok_or_else(|| Failure::Usage("--set R needs --d".into()))?;
            Some(registry::canonical_r(n, d)?)
        }
        Some(s) => Some(
            s.split(',')
                .map(|t| t.trim().parse().map_err(|_| Failure::Usage(format!("bad residue '{t}'"))))
                .collect::<Result<Vec<usize>, _>>()?,
        ),
    };
    let p = OperatorParams { n, d: op.d, pi: op.pi.clone(), set, word: op.word.clone() };
    Ok(registry::build(&op.op, &p)?)
}

fn print_json(v: &Value) -> io::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)
}

fn census(a: &CensusArgs) -> Outcome {
    let g: Graph = a.graph.parse()?;
    let w = operator_word(g.n(), &a.op)?;
    if let Some(k) = a.sample {
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        let sizes = sampled_orbit_sizes(&g, &w, k, &mut rng);
        let mut seen: BTreeMap<String, u64> = BTreeMap::new();
        for s in sizes {
            *seen.entry(s.to_string()).or_insert(0) += 1;
        }
        let v = json!({ "graph": g.to_string(), "op": a.op.op, "word": w.to_string(), "sampled": k, "seed": a.seed, "sizes_seen": seen });
        return match a.format {
            Format::Json => Ok(print_json(&v)?),
            Format::Table => {
                println!("word  {w}\nsampled orbits (not a census)");
                for (s, m) in &seen {
                    println!("{s:>8}  {m}");
                }
                Ok(())
            }
        };
    }
    let opts = CensusOptions { force: a.force, parallel: true, ..CensusOptions::default() };
    let c = full_census(&g, &w, opts)?;
    match (a.format, a.order_only) {
        (Format::Table, true) => println!("{}", c.order),
        (Format::Table, false) => {
            println!("word   {w}\norder  {}\norbits {}", c.order, c.orbit_count());
            println!("{:>8}  count", "size");
            for (s, m) in &c.sizes {
                println!("{s:>8}  {m}");
            }
        }
        (Format::Json, true) => print_json(&json!({ "graph": g.to_string(), "op": a.op.op, "word": w.to_string(), "order": c.order as u64 }))?,
        (Format::Json, false) => {
            let mut v = serde_json::to_value(&c).expect("census serializes");
            v["graph"] = json!(g.to_string());
            v["op"] = json!(a.op.op);
            print_json(&v)?;
        }
    }
    Ok(())
}

fn verify_cmd(a: &VerifyArgs) -> Outcome {
    let suite = verify::lookup(&a.suite)?;
    let seeds = match a.seeds.as_str() {
        "all" => None,
        s => Some(s.parse().map_err(|_| Failure::Usage(format!("--seeds expects 'all' or a count, got '{s}'")))?),
    };
    let cfg = SuiteConfig {
        n: parse_sizes(&a.n).map_err(Failure::Usage)?,
        d: a.d,
        seeds,
        instances: a.instances,
        rng_seed: a.seed,
    };
    let report = suite.run(&cfg)?;
    match a.format {
        Format::Json => print_json(&serde_json::to_value(&report).expect("report serializes"))?,
        Format::Table => {
            for i in &report.instances {
                println!("{} {}", if i.passed { "PASS" } else { "FAIL" }, i.label);
            }
            println!("{}: {} checked, {} failed", report.suite, report.checked, report.failed);
        }
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn timeline_seed(a: &TimelineArgs) -> Result<Labeling, Failure> {
    let n_graph = if a.graph.is_empty() {
        None
    } else {
        let g: Graph = a.graph.parse()?;
        if !g.is_path() {
            return Err(Error::NotAPath.into());
        }
        Some(g.n())
    };
    let seed = match &a.labeling {
        Some(s) => s.parse::<Labeling>()?,
        None => {
            let n = a.n.or(n_graph).ok_or_else(|| Failure::Usage("timeline needs --n, --graph or --labeling".into()))?;
            let mut img: Vec<usize> = (1..=n).collect();
            img.shuffle(&mut ChaCha8Rng::seed_from_u64(a.seed));
            Labeling::new(img)?
        }
    };
    for n in [a.n, n_graph].into_iter().flatten() {
        if n != seed.n() {
            return Err(Error::SizeMismatch { expected: n, got: seed.n() }.into());
        }
    }
    Ok(seed)
}

fn timeline(a: &TimelineArgs) -> Outcome {
    let seed = timeline_seed(a)?;
    let n = seed.n();
    let mut tl = Timeline::new(seed.clone(), a.d)?;
    let period = if a.until_period { Some(tl.period()?) } else { None };
    let to = period.or(a.to).unwrap_or(n as i64);
    if to < a.from {
        return Err(Failure::Usage(format!("--to {to} is before --from {}", a.from)));
    }
    let mut out = io::stdout().lock();
    match a.render {
        None => {
            let events = trace::events(&mut tl, a.from, to);
            trace::write_jsonl(&mut out, &events)?;
        }
        Some(Render::Ascii) => {
            for t in a.from - 1..=to {
                let snap = tl.snapshot(t);
                write!(out, "{}", render::ascii(&snap, t))?;
            }
        }
        Some(Render::Svg) => {
            let dir = a.out_dir.as_deref().ok_or_else(|| Failure::Usage("--render svg needs --out-dir".into()))?;
            std::fs::create_dir_all(dir)?;
            for t in a.from - 1..=to {
                let snap = tl.snapshot(t);
                std::fs::write(format!("{dir}/t{t:04}.svg"), render::svg(&snap, t))?;
            }
        }
    }
    let mut summary = json!({ "n": n, "d": a.d, "seed": seed.image(), "from": a.from, "to": to });
    if let Some(p) = period {
        summary["period"] = json!(p);
    }
    if a.fence {
        let (fence, tr) = fence_with_transversal(&mut tl)?;
        let times = |nodes: &[usize]| nodes.iter().map(|&k| fence.nodes[k].t).collect::<Vec<_>>();
        let image = fence.phi_of(&tr).expect("window holds the image");
        summary["period"] = json!(fence.period);
        summary["fence"] = serde_json::to_value(&fence).expect("fence serializes");
        summary["transversal"] = json!({ "nodes": tr.nodes, "times": times(&tr.nodes), "energy": tr.energy.parts() });
        summary["phi_image"] = json!({ "nodes": image.nodes, "times": times(&image.nodes), "energy": image.energy.parts() });
    }
    if a.render.is_none() || a.until_period || a.fence {
        writeln!(out, "{}", json!({ "summary": summary }))?;
    }
    Ok(())
}

fn list() -> Outcome {
    println!("operators:");
    for f in registry::families() {
        println!("  {:<10} {}", f.name(), f.summary());
    }
    println!("suites:");
    for s in verify::suites() {
        println!("  {:<18} {}", s.name(), s.summary());
    }
    Ok(())
}
