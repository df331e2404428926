use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use redwords::classes::{braid_graph_capped, commutation_classes_capped};
use redwords::elnitsky::{mono, render_tiling_svg, tiling_to_class, tilings_capped, Tile, Tiling};
use redwords::embedding::{construct_isolated_embedding, construct_isolated_embedding_with, is_value_stable};
use redwords::enumeration::{
    count_231_by_length, enumerate_avoiders, formula_231, partitions, partitions_with_k_parts, render_table,
    support_size, table_132, table_132_brute, table_cells,
};
use redwords::pattern::{count_pattern, occurrences, spreads, spreads_contained};
use redwords::verify::parse_suites;
use redwords::word::{enumerate_reduced_words_capped, DEFAULT_MAX_WORDS};
use redwords::{Error, Occurrence, Permutation, ReducedWord};

#[derive(Parser)]
#[command(name = "redwords", version, about = "Reduced words, patterns and tilings of permutations")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Refuse to enumerate more reduced words than this.
    #[arg(long, global = true, env = "REDWORDS_MAX_WORDS", default_value_t = DEFAULT_MAX_WORDS)]
    max_words: u128,
    /// Seed recorded in verification reports.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced words, commutation classes and the braid graph.
    #[command(subcommand)]
    Rw(RwCommand),
    /// Occurrences, counts and spreads.
    #[command(subcommand)]
    Pattern(PatternCommand),
    /// Build a reduced word of W with an isolated shifted factor for P.
    Embed {
        p: String,
        w: String,
        /// Reduced word of P to place in the factor.
        #[arg(long)]
        factor: Option<String>,
    },
    /// Find a value-stable occurrence of P in W.
    Stable { p: String, w: String },
    /// Elnitsky tilings.
    #[command(subcommand)]
    Tile(TileCommand),
    /// Avoiders by length, the 132 table, partitions and 231 counts.
    #[command(subcommand)]
    Enum(EnumCommand),
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
}

#[derive(Subcommand)]
enum RwCommand {
    List { w: String },
    Classes { w: String },
    Graph { w: String },
}

#[derive(Subcommand)]
enum PatternCommand {
    Occ { p: String, w: String },
    Count { p: String, w: String },
    Spreads { p: String },
    SpreadsContained { p: String, w: String },
}

#[derive(Subcommand)]
enum TileCommand {
    List { w: String },
    Svg {
        w: String,
        /// Index into the class list of `rw classes`.
        #[arg(long, default_value_t = 0)]
        class: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Number each tile by its position in the class representative.
        #[arg(long)]
        numbered: bool,
    },
    Mono {
        p: String,
        w: String,
        /// Positions of the occurrence, comma separated.
        #[arg(long)]
        occ: String,
        #[arg(long, default_value_t = 0)]
        class: usize,
    },
}

#[derive(Subcommand)]
enum EnumCommand {
    Avoiders {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        max_rank: Option<usize>,
    },
    Table {
        #[arg(long, default_value_t = 11)]
        lmax: usize,
        #[arg(long, default_value_t = 11)]
        dmax: usize,
        /// Count permutations directly instead of partitions.
        #[arg(long)]
        brute: bool,
    },
    Partitions {
        n: usize,
        #[arg(long)]
        parts: Option<usize>,
    },
    #[command(name = "231")]
    Avoiders231 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        length: usize,
    },
}

#[derive(Debug, PartialEq, Eq)]
enum Status {
    Success,
    Violation,
}

struct Output {
    status: Status,
    json: Value,
    text: String,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { status: Status::Success, json, text }
    }
}

fn perm(s: &str) -> Result<Permutation, Error> {
    s.parse()
}

fn lines<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

fn tile_json(t: &Tile) -> Value {
    json!({"high": t.high, "low": t.low, "anchor": t.anchor})
}

fn tile_text(t: &Tile) -> String {
    let anchor: Vec<String> = t.anchor.iter().map(ToString::to_string).collect();
    format!("{}{}@{{{}}}", t.high, t.low, anchor.join(","))
}

fn tiling_output(t: &Tiling) -> Result<(Value, String), Error> {
    let canonical = tiling_to_class(t)?.canonical;
    let tiles: Vec<Value> = t.tiles.iter().map(tile_json).collect();
    let text = t.tiles.iter().map(tile_text).collect::<Vec<_>>().join(" ");
    Ok((json!({"class": canonical.to_string(), "tiles": tiles}), format!("{canonical}: {text}")))
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let cap = cli.max_words;
    match &cli.command {
        Command::Rw(RwCommand::List { w }) => {
            let words = strings(&enumerate_reduced_words_capped(&perm(w)?, cap)?);
            Ok(Output::ok(json!(words), lines(&words)))
        }
        Command::Rw(RwCommand::Classes { w }) => {
            let classes = commutation_classes_capped(&perm(w)?, cap)?;
            let json: Vec<Value> =
                classes.iter().map(|c| json!({"canonical": c.canonical.to_string(), "size": c.size})).collect();
            let text: Vec<String> = classes.iter().map(|c| format!("{} ({})", c.canonical, c.size)).collect();
            Ok(Output::ok(json!(json), lines(&text)))
        }
        Command::Rw(RwCommand::Graph { w }) => {
            let g = braid_graph_capped(&perm(w)?, cap)?;
            let vertices = strings(&g.vertices.iter().map(|c| &c.canonical).collect::<Vec<_>>());
            let json = json!({"vertices": vertices, "edges": g.edges});
            Ok(Output::ok(json, g.adjacency_text()))
        }
        Command::Pattern(PatternCommand::Occ { p, w }) => {
            let occs = occurrences(&perm(p)?, &perm(w)?);
            let json: Vec<Value> = occs.iter().map(|o| json!({"positions": o.positions, "values": o.values})).collect();
            let text: Vec<String> = occs.iter().map(|o| format!("{:?} -> {:?}", o.positions, o.values)).collect();
            Ok(Output::ok(json!(json), lines(&text)))
        }
        Command::Pattern(PatternCommand::Count { p, w }) => {
            let n = count_pattern(&perm(p)?, &perm(w)?);
            Ok(Output::ok(json!(n), n.to_string()))
        }
        Command::Pattern(PatternCommand::Spreads { p }) => {
            let s: Vec<String> = spreads(&perm(p)?).iter().map(ToString::to_string).collect();
            Ok(Output::ok(json!(s), lines(&s)))
        }
        Command::Pattern(PatternCommand::SpreadsContained { p, w }) => {
            let b = spreads_contained(&perm(p)?, &perm(w)?);
            Ok(Output::ok(json!(b), b.to_string()))
        }
        Command::Embed { p, w, factor } => embed(&perm(p)?, &perm(w)?, factor.as_deref()),
        Command::Stable { p, w } => {
            let (p, w) = (perm(p)?, perm(w)?);
            Ok(match is_value_stable(&p, &w) {
                Some(o) => Output::ok(
                    json!({"stable": true, "positions": o.positions, "values": o.values}),
                    format!("value-stable at positions {:?}", o.positions),
                ),
                None => Output::ok(json!({"stable": false}), "not value-stable".to_string()),
            })
        }
        Command::Tile(TileCommand::List { w }) => {
            let ts = tilings_capped(&perm(w)?, cap)?;
            let (json, text): (Vec<Value>, Vec<String>) =
                ts.iter().map(tiling_output).collect::<Result<Vec<_>, _>>()?.into_iter().unzip();
            Ok(Output::ok(json!(json), lines(&text)))
        }
        Command::Tile(TileCommand::Svg { w, class, out, numbered }) => {
            let ts = tilings_capped(&perm(w)?, cap)?;
            let t = pick(&ts, *class)?;
            let svg = render_tiling_svg(t, *numbered);
            match out {
                Some(path) => {
                    std::fs::write(path, &svg).map_err(|e| Error::InconsistentInput(format!("{}: {e}", path.display())))?;
                    let (mut json, text) = tiling_output(t)?;
                    json["file"] = json!(path.display().to_string());
                    Ok(Output::ok(json, format!("{text}\nwrote {}", path.display())))
                }
                None => Ok(Output::ok(json!({"svg": svg}), svg.trim_end().to_string())),
            }
        }
        Command::Tile(TileCommand::Mono { p, w, occ, class }) => {
            let (p, w) = (perm(p)?, perm(w)?);
            let positions: Vec<usize> = occ
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| Error::Parse(occ.clone())))
                .collect::<Result<_, _>>()?;
            if positions.iter().any(|&i| i == 0 || i > w.rank()) {
                return Err(Error::NotAnOccurrence { pattern: p.to_string(), host: w.to_string(), positions });
            }
            let occ = Occurrence::from_positions(&w, positions);
            let ts = tilings_capped(&p, cap)?;
            let image = mono(&p, &w, &occ, pick(&ts, *class)?)?;
            let (json, text) = tiling_output(&image)?;
            Ok(Output::ok(json, text))
        }
        Command::Enum(e) => enumerate(e),
        Command::Verify { suite, max_n } => verify(suite, *max_n, cli.seed),
    }
}

fn pick(ts: &[Tiling], class: usize) -> Result<&Tiling, Error> {
    ts.get(class)
        .ok_or_else(|| Error::InconsistentInput(format!("class index {class} out of range 0..{}", ts.len())))
}

fn embed(p: &Permutation, w: &Permutation, factor: Option<&str>) -> Result<Output, Error> {
    let built = match factor {
        Some(f) => construct_isolated_embedding_with(p, w, &ReducedWord::parse(f, p.rank())?),
        None => construct_isolated_embedding(p, w),
    };
    match built {
        Ok(e) => {
            let json = json!({
                "word": e.word.to_string(),
                "factor": e.factor().to_string(),
                "shift": e.shift,
                "start": e.start,
                "end": e.end,
                "interval": [e.interval.0, e.interval.1],
                "verified": e.verify(p, w),
            });
            let text = format!(
                "{} = {} | {} | {} (shift {}, letters in [{}, {}])",
                e.word,
                e.word.slice(0, e.start),
                e.factor(),
                e.word.slice(e.end, e.word.len()),
                e.shift,
                e.interval.0,
                e.interval.1
            );
            Ok(Output::ok(json, text))
        }
        Err(err @ (Error::NotContained { .. } | Error::SpreadsNotContained { .. })) => {
            Ok(Output::ok(json!({"word": null, "reason": err.to_string()}), format!("no isolated embedding: {err}")))
        }
        Err(err @ Error::InternalContradiction(_)) => Ok(Output {
            status: Status::Violation,
            json: json!({"word": null, "reason": err.to_string()}),
            text: format!("spreads contained but no isolated embedding: {err}"),
        }),
        Err(err) => Err(err),
    }
}

fn enumerate(e: &EnumCommand) -> Result<Output, Error> {
    match e {
        EnumCommand::Avoiders { pattern, length, max_rank } => {
            let set = enumerate_avoiders(&perm(pattern)?, *length, *max_rank)?;
            let json: Vec<Value> = set.iter().map(|w| json!({"perm": w.to_string(), "d": support_size(w)})).collect();
            let text: Vec<String> = set.iter().map(|w| format!("{w} (d = {})", support_size(w))).collect();
            Ok(Output::ok(json!(json), lines(&text)))
        }
        EnumCommand::Table { lmax, dmax, brute } => {
            let table = if *brute { table_132_brute(*lmax, *dmax) } else { table_132(*lmax, *dmax) };
            Ok(Output::ok(json!(table_cells(&table)), render_table(&table).trim_end().to_string()))
        }
        EnumCommand::Partitions { n, parts } => {
            let ps = match parts {
                Some(k) => partitions_with_k_parts(*n, *k),
                None => partitions(*n),
            };
            let s = strings(&ps);
            Ok(Output::ok(json!(s), lines(&s)))
        }
        EnumCommand::Avoiders231 { n, length } => {
            let brute = count_231_by_length(*n, *length);
            let formula = formula_231(*n, *length)?;
            let agree = formula == brute as i128;
            Ok(Output {
                status: if agree { Status::Success } else { Status::Violation },
                json: json!({"n": n, "length": length, "brute": brute, "formula": formula, "agree": agree}),
                text: format!("brute force {brute}, formula {formula}"),
            })
        }
    }
}

fn verify(suite: &str, max_n: usize, seed: u64) -> Result<Output, Error> {
    let reports: Vec<_> = parse_suites(suite)?.into_iter().map(|s| s.run(max_n)).collect();
    let passed = reports.iter().all(|r| r.passed);
    let text = lines(&reports);
    Ok(Output {
        status: if passed { Status::Success } else { Status::Violation },
        json: json!({"seed": seed, "passed": passed, "suites": reports}),
        text,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = if cli.json { serde_json::to_string_pretty(&out.json).expect("values serialize") } else { out.text };
            // a closed pipe is not an error for the caller
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            match out.status {
                Status::Success => ExitCode::SUCCESS,
                Status::Violation => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
