//! `tense`: command-line front end to the tensekit library.
//!
//! Exit status: 0 success, 1 negative answer or failed check, 2 usage or input error.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::process::ExitCode;
use tensekit::constructions::{boost_rdg, combine, unfold, BoostMode};
use tensekit::families::{self, Axiom, PhiMember};
use tensekit::formula::{parse, Formula};
use tensekit::frame::{Closure, FrameJson, SymbolicJson};
use tensekit::morphism::{check, find_surjections, images_up_to};
use tensekit::semantics::{sampled_valid, sampled_valid_at, truth_set, valid, valid_at, Valuation, VerdictReport};
use tensekit::suites::{self, Options, Status, SUITES};
use tensekit::symbolic::{Family, SymbolicFrame};
use tensekit::{Frame, GeneralFrame};

#[derive(Parser)]
#[command(name = "tense", version, about = "Tense logic workbench")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Frame JSON file.
    #[arg(long)]
    frame: Option<String>,
    /// Formula text.
    #[arg(long)]
    formula: Option<String>,
    /// World id.
    #[arg(long)]
    at: Option<String>,
    /// Valuation entry `p<i>=w1|w2`; repeatable.
    #[arg(long = "val")]
    val: Vec<String>,
    /// Print JSON instead of a short summary.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a formula and print its canonical form.
    Parse {
        text: Option<String>,
        #[command(flatten)]
        c: Common,
    },
    /// Truth of a formula under a valuation.
    Mc {
        #[command(flatten)]
        c: Common,
    },
    /// Validity on a (general) frame, exhaustive or sampled.
    Valid {
        #[command(flatten)]
        c: Common,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        /// Sample this many admissible valuations instead of enumerating.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Structural metrics of a frame.
    Metrics {
        #[command(flatten)]
        c: Common,
    },
    /// Closure of a frame: reflexive, transitive, reflexive_transitive or symmetric.
    Closure {
        kind: String,
        #[command(flatten)]
        c: Common,
    },
    /// Glue `G` into `F`, identifying `u` of `G` with `w` of `F` (given by --frame/--at).
    Combine {
        /// Second frame JSON file.
        other: String,
        /// World of the second frame.
        u: String,
        #[arg(long)]
        transitive: bool,
        #[command(flatten)]
        c: Common,
    },
    /// Reflective unfolding at `<w> <u>`, or with --boost an r-degree boost keeping --formula at --at.
    Unfold {
        w: Option<String>,
        u: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        transitive: bool,
        #[arg(long)]
        boost: bool,
        #[command(flatten)]
        c: Common,
    },
    /// Jankov formula of a rooted frame.
    Jankov {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        c: Common,
    },
    /// Check a map (--map a=x,b=y) or search for surjections onto --target; with --images list images.
    Morphism {
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        map: Option<String>,
        #[arg(long, default_value_t = 1)]
        limit: usize,
        /// List t-morphic images with at most this many worlds.
        #[arg(long)]
        images: Option<usize>,
        #[command(flatten)]
        c: Common,
    },
    /// A formula family member, e.g. `gamma:3`, `gamma-star:2`, `axiom:bd2`, `delta:3`, `phi:x0`, `phi:a2`.
    Family {
        name: String,
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        c: Common,
    },
    /// Finite window of a ladder: --frame symbolic JSON, or --family with --I.
    Truncate {
        #[arg(long)]
        family: Option<String>,
        #[arg(long = "I", value_delimiter = ',')]
        i: Vec<u64>,
        #[arg(long)]
        truncate: u64,
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        c: Common,
    },
    /// Run a verification suite (or `all`) and print its report.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long = "I", value_delimiter = ',')]
        i: Option<Vec<u64>>,
        #[arg(long = "J", value_delimiter = ',', num_args = 0..)]
        j: Option<Vec<u64>>,
        #[arg(long)]
        truncate: Option<u64>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

/// Usage or input error, naming the offending flag.
struct Fail(String);

/// `Ok(false)` is a negative answer.
type Out = Result<bool, Fail>;

fn usage(flag: &str, e: impl std::fmt::Display) -> Fail {
    Fail(format!("{flag}: {e}"))
}

fn need<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, Fail> {
    v.as_deref().ok_or_else(|| usage(flag, "required"))
}

fn read(path: &str, flag: &str) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| usage(flag, format!("{path}: {e}")))
}

fn frame_json(path: &str, flag: &str) -> Result<FrameJson, Fail> {
    FrameJson::parse(&read(path, flag)?).map_err(|e| usage(flag, e))
}

fn general(c: &Common) -> Result<GeneralFrame, Fail> {
    frame_json(need(&c.frame, "--frame")?, "--frame")?.general().map_err(|e| usage("--frame", e))
}

fn formula(c: &Common) -> Result<Formula, Fail> {
    parse(need(&c.formula, "--formula")?).map_err(|e| usage("--formula", e))
}

fn world(f: &Frame, id: &str, flag: &str) -> Result<usize, Fail> {
    f.index_of(id).map_err(|e| usage(flag, e))
}

fn valuation(f: &Frame, entries: &[String]) -> Result<Valuation, Fail> {
    let mut v = Valuation::new();
    for e in entries {
        let (var, worlds) = e.split_once('=').ok_or_else(|| usage("--val", format!("expected p<i>=w1|w2, got `{e}`")))?;
        let i: u32 = var
            .strip_prefix('p')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| usage("--val", format!("bad variable `{var}`")))?;
        let ids: Vec<&str> = worlds.split('|').filter(|s| !s.is_empty()).collect();
        v.insert(i, f.set_of(&ids).map_err(|e| usage("--val", e))?);
    }
    Ok(v)
}

/// Writes a line to stdout; a closed pipe is not an error.
fn say(line: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}

fn emit(v: &Value) {
    say(&serde_json::to_string_pretty(v).expect("serializable"));
}

const MAX_TEXT: u64 = 20_000;

/// Formula summary; the text is omitted when the unshared tree is huge.
fn describe(f: &Formula) -> Value {
    let size = f.tree_size();
    json!({"formula": (size <= MAX_TEXT).then(|| f.pretty()), "tree_size": size, "dag_size": f.dag_size(),
           "modal_degree": f.modal_degree(), "vars": f.vars()})
}

fn run(cmd: Cmd) -> Out {
    match cmd {
        Cmd::Parse { text, c } => {
            let src = text.or(c.formula.clone()).ok_or_else(|| usage("--formula", "required"))?;
            let f = parse(&src).map_err(|e| usage("--formula", e))?;
            if c.json {
                let mut d = describe(&f);
                d["primitive"] = json!(f.to_string());
                emit(&d);
            } else {
                say(&f.to_string());
            }
            Ok(true)
        }
        Cmd::Mc { c } => {
            let g = general(&c)?;
            let f = g.base();
            let phi = formula(&c)?;
            let mut v = valuation(f, &c.val)?;
            for p in phi.vars() {
                v.entry(p).or_insert_with(|| f.empty_set());
            }
            let t = truth_set(f, &v, &phi).map_err(|e| usage("--val", e))?;
            match &c.at {
                Some(id) => {
                    let holds = t.contains(world(f, id, "--at")?);
                    if c.json {
                        emit(&json!({"world": id, "holds": holds}));
                    } else {
                        say(&holds.to_string());
                    }
                }
                None => emit(&json!({"truth_set": f.names(&t)})),
            }
            Ok(true)
        }
        Cmd::Valid { c, budget, samples, seed } => {
            let g = general(&c)?;
            let phi = formula(&c)?;
            let at = c.at.as_deref().map(|id| world(g.base(), id, "--at")).transpose()?;
            let verdict = match (samples, at) {
                (Some(n), Some(x)) => sampled_valid_at(&g, &phi, x, n, seed),
                (Some(n), None) => sampled_valid(&g, &phi, n, seed),
                (None, Some(x)) => valid_at(&g, &phi, x, budget),
                (None, None) => valid(&g, &phi, budget),
            };
            let r = VerdictReport::new(g.base(), &verdict);
            if c.json {
                emit(&serde_json::to_value(&r).expect("serializable"));
            } else {
                say(r.verdict);
            }
            Ok(verdict.is_valid())
        }
        Cmd::Metrics { c } => {
            let g = general(&c)?;
            let f = g.base();
            let m = f.metrics();
            let names = |v: &Vec<usize>| -> BTreeMap<String, usize> { v.iter().enumerate().map(|(x, &d)| (f.id(x).to_string(), d)).collect() };
            emit(&json!({
                "rdg": names(&m.rdg), "rdg_max": m.rdg_max, "rooted": m.rooted,
                "reflexive": f.is_reflexive(), "transitive": f.is_transitive(), "symmetric": f.is_symmetric(),
                "dep": m.dep.as_ref().map(names), "wid_plus": m.wid_plus.as_ref().map(names), "wid_minus": m.wid_minus.as_ref().map(names),
                "clusters": m.clusters.as_ref().map(|cs| cs.iter().map(|c| c.iter().map(|&x| f.id(x)).collect::<Vec<_>>()).collect::<Vec<_>>()),
            }));
            Ok(true)
        }
        Cmd::Closure { kind, c } => {
            let k: Closure = kind.parse().map_err(|e| usage("<kind>", e))?;
            emit(&json!(FrameJson::from_frame(&general(&c)?.base().closure(k))));
            Ok(true)
        }
        Cmd::Combine { other, u, transitive, c } => {
            let f = general(&c)?.base().clone();
            let g = frame_json(&other, "<other>")?.frame().map_err(|e| usage("<other>", e))?;
            let w = world(&f, need(&c.at, "--at")?, "--at")?;
            let u = world(&g, &u, "<u>")?;
            let h = combine(&f, w, &g, u, transitive).map_err(|e| usage("--transitive", e))?;
            emit(&json!(FrameJson::from_frame(&h)));
            Ok(true)
        }
        Cmd::Unfold { w, u, n, transitive, boost, c } => {
            let f = general(&c)?.base().clone();
            if boost {
                let phi = formula(&c)?;
                let y = world(&f, need(&c.at, "--at")?, "--at")?;
                let mode = if transitive { BoostMode::Transitive } else { BoostMode::Plain };
                let b = boost_rdg(&f, y, &phi, n, mode).map_err(|e| usage("--boost", e))?;
                emit(&json!({"frame": FrameJson::from_frame(&b.frame), "world": b.frame.id(b.world), "rdg": b.frame.rdg(),
                             "projection": b.projection.iter().map(|&x| f.id(x)).collect::<Vec<_>>(), "via_bilayer": b.via_bilayer}));
            } else {
                let w = world(&f, need(&w, "<w>")?, "<w>")?;
                let u = world(&f, need(&u, "<u>")?, "<u>")?;
                let un = unfold(&f, w, u, n, transitive).map_err(|e| usage("--n", e))?;
                emit(&json!({"frame": FrameJson::from_frame(&un.frame),
                             "projection": un.projection.iter().map(|&x| f.id(x)).collect::<Vec<_>>()}));
            }
            Ok(true)
        }
        Cmd::Jankov { k, c } => {
            let g = general(&c)?;
            let j = families::jankov(g.base(), k).map_err(|e| usage("--frame", e))?;
            emit(&describe(&j));
            Ok(true)
        }
        Cmd::Morphism { target, map, limit, images, c } => {
            let src = general(&c)?;
            if let Some(m) = images {
                let out: Vec<FrameJson> = images_up_to(src.base(), m).iter().map(FrameJson::from_frame).collect();
                emit(&json!({"images": out}));
                return Ok(true);
            }
            let tj = frame_json(need(&target, "--target")?, "--target")?;
            let tgt = tj.general().map_err(|e| usage("--target", e))?;
            match map {
                Some(spec) => {
                    let mut m = vec![usize::MAX; src.len()];
                    for pair in spec.split(',') {
                        let (a, b) = pair.split_once('=').ok_or_else(|| usage("--map", format!("expected a=x, got `{pair}`")))?;
                        m[world(src.base(), a, "--map")?] = world(tgt.base(), b, "--map")?;
                    }
                    if let Some(x) = m.iter().position(|&y| y == usize::MAX) {
                        return Err(usage("--map", format!("world `{}` is unmapped", src.base().id(x))));
                    }
                    let v = check(&src, &tgt, &m).map_err(|e| usage("--map", e))?;
                    let ok = v.is_none();
                    emit(&json!({"t_morphism": ok, "violation": v.map(|v| v.to_string())}));
                    Ok(ok)
                }
                None => {
                    let found = find_surjections(src.base(), tgt.base(), limit.max(1));
                    let maps: Vec<BTreeMap<&str, &str>> = found
                        .iter()
                        .map(|m| m.iter().enumerate().map(|(x, &y)| (src.base().id(x), tgt.base().id(y))).collect())
                        .collect();
                    emit(&json!({"is_image": !maps.is_empty(), "surjections": maps}));
                    Ok(!maps.is_empty())
                }
            }
        }
        Cmd::Family { name, k, c } => {
            let f = family(&name, k, &c)?;
            let mut d = describe(&f);
            d["name"] = json!(name);
            emit(&d);
            Ok(true)
        }
        Cmd::Truncate { family, i, truncate, k, c } => {
            let mut sf = match (&c.frame, family) {
                (Some(path), _) => {
                    let j: SymbolicJson = serde_json::from_str(&read(path, "--frame")?).map_err(|e| usage("--frame", e))?;
                    SymbolicFrame::from_json(&j).map_err(|e| usage("--frame", e))?
                }
                (None, Some(fam)) => {
                    let fam: Family = fam.parse().map_err(|e| usage("--family", e))?;
                    SymbolicFrame::with_default_local(fam, &i).map_err(|e| usage("--I", e))?
                }
                (None, None) => return Err(usage("--frame", "give a symbolic frame file or --family")),
            };
            if let Some(k) = k {
                sf.set_k(k).map_err(|e| usage("--k", e))?;
            }
            let t = sf.truncate(truncate).map_err(|e| usage("--truncate", e))?;
            emit(&json!(FrameJson::from_general(&t.frame)));
            Ok(true)
        }
        Cmd::Verify { suite, seed, budget, samples, i, j, truncate, k, json } => {
            let pair = match (i, j) {
                (Some(i), j) => Some((i, j.unwrap_or_default())),
                (None, Some(_)) => return Err(usage("--J", "needs --I")),
                (None, None) => None,
            };
            let opts = Options { seed, budget, samples, pair, truncate, k };
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut ok = true;
            let mut reports = Vec::new();
            for name in names {
                let r = suites::run(name, &opts).map_err(|e| usage("<suite>", e))?;
                ok &= r.passed;
                if json {
                    reports.push(serde_json::to_value(&r).expect("serializable"));
                } else {
                    say(&format!("{} {} ({} ms)", r.suite, if r.passed { "pass" } else { "FAIL" }, r.elapsed_ms));
                    for ch in &r.checks {
                        let tag = match ch.status {
                            Status::Pass => "pass",
                            Status::Fail => "FAIL",
                            Status::Budget => "BUDGET",
                            Status::Info => "info",
                        };
                        say(&format!("  {tag:6} {}", ch.id));
                    }
                    if !r.passed {
                        say(&format!("  replay: {}", r.replay));
                    }
                }
            }
            if json {
                emit(&if reports.len() == 1 { reports.remove(0) } else { Value::Array(reports) });
            }
            Ok(ok)
        }
    }
}

fn family(name: &str, k: Option<usize>, c: &Common) -> Result<Formula, Fail> {
    let (kind, arg) = name.split_once(':').unwrap_or((name, ""));
    let num = || arg.parse::<usize>().map_err(|_| usage("<name>", format!("`{name}` needs a numeric argument")));
    let k = k.unwrap_or(1);
    let phi = || c.formula.as_deref().map(parse).transpose().map_err(|e| usage("--formula", e));
    Ok(match kind {
        "gamma" => families::gamma(num()?, k),
        "gamma-star" => families::gamma_star(num()?, k),
        "axiom" => families::axiom(arg.parse::<Axiom>().map_err(|e| usage("<name>", e))?).map_err(|e| usage("<name>", e))?,
        "delta" => families::delta_top(num()?, &phi()?.ok_or_else(|| usage("--formula", "required"))?),
        "nabla" => families::nabla_top(num()?, &phi()?.ok_or_else(|| usage("--formula", "required"))?),
        "phi" => {
            let member = match arg {
                "phi0" => PhiMember::Phi0,
                "x0" => PhiMember::X0,
                "x1" => PhiMember::X1,
                "x2" => PhiMember::X2,
                "y0" => PhiMember::Y0,
                "y1" => PhiMember::Y1,
                "AB" | "ab" => PhiMember::AB,
                _ => {
                    let (h, t) = arg.split_at(arg.len().min(1));
                    let l: usize = t.parse().map_err(|_| usage("<name>", format!("unknown member `{arg}`")))?;
                    match h {
                        "a" => PhiMember::A(l),
                        "b" => PhiMember::B(l),
                        "c" => PhiMember::C(l),
                        _ => return Err(usage("<name>", format!("unknown member `{arg}`"))),
                    }
                }
            };
            let phi_l = phi()?.unwrap_or_else(|| tensekit::symbolic::LocalPart::default_for(Family::S4t).phi);
            families::phi_family(k, &phi_l, member)
        }
        _ => return Err(usage("<name>", format!("unknown family `{kind}` (gamma, gamma-star, axiom, delta, nabla, phi)"))),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Fail(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
