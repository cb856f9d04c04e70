use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crystal_lab::crystal::{bfs, bfs_starred, ComponentGraph, StarredCrystal};
use crystal_lab::elementary::{BiCrystal, BiElt, TCrystal};
use crystal_lab::extremal::{enum_bmax, is_extremal, is_extremal_level};
use crystal_lab::level_paths::{
    lp_domains, lp_walls, wall_signs_uniform, LevelCrystal, ModCrystal,
};
use crystal_lab::oracle::{
    check_left_path, check_mod, check_right_path, check_seq, padded_len, OracleReport,
};
use crystal_lab::path_inf::{hp_domains, hp_walls, wall_uniformity, PathCrystal};
use crystal_lab::peter_weyl::{
    pw_report, verify_c1, verify_c2, verify_c3, with_pool, PwBounds, Report,
};
use crystal_lab::seq_real::SeqCrystal;
use crystal_lab::star::{star_binf, star_bminf, star_level, star_mod};
use crystal_lab::{
    Crystal, CrystalError, HalfPath, LevelPath, ModElt, NodeIndex, SeqElt, Side, Weight,
};

const EXIT_FAIL: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_MALFORMED: u8 = 64;
const EXIT_PRECONDITION: u8 = 65;

#[derive(Parser)]
#[command(
    name = "crystal-lab",
    version,
    about = "Crystal combinatorics for level-0 modified affine sl2"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(clap::Args)]
struct Input {
    /// Element as JSON (omit when using --seed-file)
    element: Option<String>,
    #[arg(long)]
    seed_file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Apply operators left to right: e0 e1 f0 f1, starred E0 E1 F0 F1
    Apply {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        ops: Vec<String>,
    },
    /// The star involution
    Star {
        #[command(flatten)]
        input: Input,
    },
    /// Walls, domains and wall-sign uniformity of a path
    Walls {
        #[command(flatten)]
        input: Input,
    },
    /// Breadth-first component around an element
    Graph {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
        /// Close under the starred operators instead
        #[arg(long)]
        starred: bool,
    },
    /// Bounded extremality test with a witness when it fails
    Extremal {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// Enumerate a finite slice of B^max(λ)
    Bmax {
        /// λ = m(Λ0−Λ1)+lδ given as m,l
        #[arg(long, value_parser = parse_lambda, allow_hyphen_values = true)]
        lambda: Weight,
        #[arg(long, default_value_t = 2)]
        size: usize,
    },
    /// Check the decomposition conditions and the bi-crystal factorization
    PwVerify {
        #[arg(long, value_parser = parse_lambda, value_delimiter = ';', allow_hyphen_values = true, required = true)]
        lambda: Vec<Weight>,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = 8)]
        word_bound: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Compare the operators on an element against the tensor-product rule
    OracleCheck {
        #[command(flatten)]
        input: Input,
    },
}

fn parse_lambda(s: &str) -> Result<Weight, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [m, l] => {
            let m = m.parse::<i64>().map_err(|e| format!("m: {e}"))?;
            let l = l.parse::<i64>().map_err(|e| format!("l: {e}"))?;
            Ok(Weight::level_zero(m, l))
        }
        _ => Err(format!("expected m,l, got {s:?}")),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum Element {
    Mod(ModElt),
    Level(LevelPath),
    Seq(SeqElt),
    Half(HalfPath),
    Bi(BiElt),
    T { t: Weight },
}

#[derive(Debug)]
enum CliError {
    Malformed(String),
    Precondition(String),
}

impl From<CrystalError> for CliError {
    fn from(e: CrystalError) -> CliError {
        CliError::Precondition(e.to_string())
    }
}

fn precondition(msg: impl Into<String>) -> CliError {
    CliError::Precondition(msg.into())
}

fn read_element(input: &Input) -> Result<Element, CliError> {
    let text = match (&input.element, &input.seed_file) {
        (Some(s), None) => s.clone(),
        (None, Some(p)) => std::fs::read_to_string(p)
            .map_err(|e| CliError::Malformed(format!("{}: {e}", p.display())))?,
        _ => {
            return Err(CliError::Malformed(
                "give an element or --seed-file, not both".into(),
            ))
        }
    };
    serde_json::from_str(&text).map_err(|e| CliError::Malformed(format!("element: {e}")))
}

#[derive(Clone, Copy)]
struct Token {
    i: NodeIndex,
    raise: bool,
    starred: bool,
}

fn parse_tokens(ops: &[String]) -> Result<Vec<Token>, CliError> {
    ops.iter()
        .flat_map(|s| s.split_whitespace())
        .map(|t| {
            let mut ch = t.chars();
            let (raise, starred) = match ch.next() {
                Some('e') => (true, false),
                Some('f') => (false, false),
                Some('E') => (true, true),
                Some('F') => (false, true),
                _ => return Err(CliError::Malformed(format!("bad operator token {t:?}"))),
            };
            let i = match ch.as_str() {
                "0" => NodeIndex::I0,
                "1" => NodeIndex::I1,
                _ => return Err(CliError::Malformed(format!("bad operator token {t:?}"))),
            };
            Ok(Token { i, raise, starred })
        })
        .collect()
}

fn plain<C: Crystal>(c: &C, t: Token, x: &C::Elt) -> Option<C::Elt> {
    if t.raise {
        c.e(t.i, x)
    } else {
        c.f(t.i, x)
    }
}

fn starred<C: StarredCrystal>(c: &C, t: Token, x: &C::Elt) -> Option<C::Elt> {
    if t.raise {
        c.e_star(t.i, x)
    } else {
        c.f_star(t.i, x)
    }
}

fn run_word<C: StarredCrystal>(c: &C, x: C::Elt, toks: &[Token]) -> Option<C::Elt> {
    toks.iter().try_fold(x, |acc, &t| {
        if t.starred {
            starred(c, t, &acc)
        } else {
            plain(c, t, &acc)
        }
    })
}

fn run_plain_word<C: Crystal>(
    c: &C,
    x: C::Elt,
    toks: &[Token],
    kind: &str,
) -> Result<Option<C::Elt>, CliError> {
    if toks.iter().any(|t| t.starred) {
        return Err(precondition(format!(
            "starred operators are not defined on {kind}"
        )));
    }
    Ok(toks.iter().try_fold(x, |acc, &t| plain(c, t, &acc)))
}

fn to_json<T: Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("serializable")
}

fn apply(e: Element, toks: &[Token]) -> Result<Option<String>, CliError> {
    Ok(match e {
        Element::Mod(x) => run_word(&ModCrystal, x, toks).map(|y| to_json(&y)),
        Element::Level(x) => run_word(&LevelCrystal, x, toks).map(|y| to_json(&y)),
        Element::Half(x) => {
            if x.side == Side::Right && toks.iter().any(|t| t.starred) {
                return Err(precondition(
                    "starred operators act on left half paths (B(∞))",
                ));
            }
            run_word(&PathCrystal, x, toks).map(|y| to_json(&y))
        }
        Element::Seq(x) => run_plain_word(&SeqCrystal, x, toks, "sequences")?.map(|y| to_json(&y)),
        Element::Bi(x) => run_plain_word(&BiCrystal, x, toks, "B_i")?.map(|y| to_json(&y)),
        Element::T { t } => {
            run_plain_word(&TCrystal, t, toks, "T_λ")?.map(|y| to_json(&json!({ "t": y })))
        }
    })
}

fn star(e: Element) -> Result<String, CliError> {
    Ok(match e {
        Element::Mod(x) => to_json(&star_mod(&x)),
        Element::Level(x) => to_json(&star_level(&x)),
        Element::Half(x) if x.side == Side::Left => to_json(&star_binf(&x)),
        Element::Half(x) => to_json(&star_bminf(&x)),
        _ => {
            return Err(precondition(
                "star is defined on half paths, level paths and b1⊗t⊗b2",
            ))
        }
    })
}

fn walls(e: Element) -> Result<serde_json::Value, CliError> {
    Ok(match e {
        Element::Half(x) => json!({
            "walls": hp_walls(&x),
            "domains": hp_domains(&x),
            "uniformity": wall_uniformity(&x),
        }),
        Element::Level(x) => json!({
            "walls": lp_walls(&x),
            "domains": lp_domains(&x),
            "uniformity": wall_signs_uniform(&x),
        }),
        _ => {
            return Err(precondition(
                "walls are defined on half paths and level paths",
            ))
        }
    })
}

fn render_graph<C: Crystal>(c: &C, g: &ComponentGraph<C::Elt>, format: GraphFormat) -> String {
    match format {
        GraphFormat::Json => serde_json::to_string_pretty(&g.to_json()).expect("json"),
        GraphFormat::Dot => g.to_dot(),
        GraphFormat::Text => {
            let mut out = String::new();
            for (k, n) in g.nodes.iter().enumerate() {
                out.push_str(&format!(
                    "{k}\t{}\t{}\tdist={}\n",
                    c.serial(&n.elt),
                    n.wt,
                    n.dist
                ));
            }
            for (s, t, i) in &g.edges {
                out.push_str(&format!("{s} -{i}-> {t}\n"));
            }
            out
        }
    }
}

fn graph<C: StarredCrystal>(
    c: &C,
    x: &C::Elt,
    depth: usize,
    format: GraphFormat,
    use_star: bool,
) -> String {
    let g = if use_star {
        bfs_starred(c, x, depth)
    } else {
        bfs(c, x, depth)
    };
    render_graph(c, &g, format)
}

fn graph_plain<C: Crystal>(
    c: &C,
    x: &C::Elt,
    depth: usize,
    format: GraphFormat,
    use_star: bool,
) -> Result<String, CliError> {
    if use_star {
        return Err(precondition(
            "starred closure needs half paths, level paths or b1⊗t⊗b2",
        ));
    }
    Ok(render_graph(c, &bfs(c, x, depth), format))
}

fn oracle(e: Element) -> Result<OracleReport, CliError> {
    Ok(match e {
        Element::Half(x) if x.side == Side::Left => check_left_path(&x, padded_len(&x)),
        Element::Half(x) => check_right_path(&x),
        Element::Seq(x) => check_seq(&x),
        Element::Mod(x) => check_mod(&x),
        Element::Level(x) => check_mod(&crystal_lab::level_paths::lp_split(&x)),
        _ => {
            return Err(precondition(
                "the oracle covers half paths, sequences and level-0 elements",
            ))
        }
    })
}

fn pw_verify(lams: &[Weight], depth: usize, word_bound: usize) -> Result<Report, CliError> {
    let mut report = Report::default();
    for &lam in lams {
        if lam.level() != 0 {
            return Err(CrystalError::NotLevelZero(lam.to_string()).into());
        }
        report.merge(verify_c1(lam, depth)?);
        report.merge(verify_c2(lam, depth));
        report.merge(verify_c3(lam, word_bound, depth)?);
    }
    let bounds = PwBounds {
        bmax_size: depth.min(3),
        right_depth: depth,
        word_bound,
    };
    report.merge(pw_report(lams, bounds)?);
    Ok(report)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.cmd {
        Command::Apply { input, ops } => {
            let toks = parse_tokens(&ops)?;
            match apply(read_element(&input)?, &toks)? {
                Some(s) => println!("{s}"),
                None => println!("0"),
            }
        }
        Command::Star { input } => println!("{}", star(read_element(&input)?)?),
        Command::Walls { input } => println!("{}", walls(read_element(&input)?)?),
        Command::Graph {
            input,
            depth,
            format,
            starred,
        } => {
            let out = match read_element(&input)? {
                Element::Mod(x) => graph(&ModCrystal, &x, depth, format, starred),
                Element::Level(x) => graph(&LevelCrystal, &x, depth, format, starred),
                Element::Half(x) => graph(&PathCrystal, &x, depth, format, starred),
                Element::Seq(x) => graph_plain(&SeqCrystal, &x, depth, format, starred)?,
                Element::Bi(x) => graph_plain(&BiCrystal, &x, depth, format, starred)?,
                Element::T { t } => graph_plain(&TCrystal, &t, depth, format, starred)?,
            };
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
        }
        Command::Extremal { input, bound } => {
            let cert = match read_element(&input)? {
                Element::Level(x) => is_extremal_level(&x, bound)?,
                Element::Mod(x) => is_extremal(&ModCrystal, &x, bound)?,
                _ => {
                    return Err(precondition(
                        "extremality is tested on level paths and b1⊗t⊗b2",
                    ))
                }
            };
            println!("{}", serde_json::to_string_pretty(&cert).expect("json"));
            return Ok(if cert.is_extremal() { 0 } else { EXIT_FAIL });
        }
        Command::Bmax { lambda, size } => {
            let list = enum_bmax(lambda, size)?;
            println!(
                "{}",
                serde_json::to_string_pretty(
                    &json!({ "lambda": lambda, "size": size, "elements": list })
                )
                .expect("json")
            );
        }
        Command::PwVerify {
            lambda,
            depth,
            word_bound,
            format,
        } => {
            let report = with_pool(|| pw_verify(&lambda, depth, word_bound))?;
            match format {
                ReportFormat::Json => {
                    println!("{}", serde_json::to_string_pretty(&report).expect("json"))
                }
                ReportFormat::Text => print!("{}", report.render_text()),
            }
            return Ok(if !report.pass() {
                EXIT_FAIL
            } else if !report.conclusive() {
                EXIT_INCONCLUSIVE
            } else {
                0
            });
        }
        Command::OracleCheck { input } => {
            let rep = oracle(read_element(&input)?)?;
            println!("{}", serde_json::to_string_pretty(&rep).expect("json"));
            return Ok(if rep.ok() { 0 } else { EXIT_FAIL });
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Malformed(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_MALFORMED)
        }
        Err(CliError::Precondition(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_PRECONDITION)
        }
    }
}
