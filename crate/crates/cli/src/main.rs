//! `teich` — Teichmüller polynomials of pseudo-Anosov braids on punctured
//! discs, with stretch factors, Alexander polynomials, norm balls, and the
//! topology of the fibers over the fibered cone.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::json;

use teich_core::automaton::{braid_word_string, Automaton, AutomatonLoop, PathStep};
use teich_core::burau::{alexander_polynomial, orientability_test, BraidWord, Orientability};
use teich_core::families;
use teich_core::fiber::{fiber_report, linking_data, LinkData, SlopeOverrides};
use teich_core::norms::{fibered_face, NormBall, NormKind};
use teich_core::ring::{largest_root, CohomologyClass, VarNames};
use teich_core::teich::{certify_pseudo_anosov, teichmuller_polynomial, TeichResult};
use teich_core::track::{FoldSpec, TrainTrack};

const EXIT_USAGE: u8 = 2;
const EXIT_CERTIFICATION: u8 = 3;
const EXIT_CONE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "teich",
    about = "Teichmüller polynomials of fibered faces from folding automata",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the Teichmüller polynomial of the fibered face of a braid.
    Poly(PipelineArgs),
    /// Valuate the polynomial at an integral class and report the dominant root.
    Eval(ClassArgs),
    /// Geometric stretch factor (and homological dilatation) at a class.
    Dilatation(ClassArgs),
    /// Alexander polynomial of the braid's mapping torus via reduced Burau.
    Alexander(PipelineArgs),
    /// Alexander/Teichmüller norms, fibered face, and cone membership.
    Norm(ClassArgs),
    /// Topology of the fiber at a class: boundary, slopes, prongs, genus.
    Fiber(FiberArgs),
    /// Build the folding automaton of a seed track and export it.
    Automaton(AutomatonArgs),
    /// Check pseudo-Anosov certification of the loop.
    Certify(PipelineArgs),
}

#[derive(Args, Clone)]
struct PipelineArgs {
    /// Number of strands of the braid.
    #[arg(long)]
    strands: Option<usize>,
    /// Braid word: whitespace- or comma-separated signed generator indices.
    #[arg(long, allow_hyphen_values = true)]
    braid: Option<String>,
    /// Built-in family: "b4" or "appendix-a".
    #[arg(long)]
    family: Option<String>,
    /// Family parameter for appendix-a.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Loop specification file (JSON with a seed and fold records).
    #[arg(long)]
    path_file: Option<String>,
    /// Apply the determinant formula even when certification fails.
    #[arg(long)]
    override_certification: bool,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Clone)]
struct ClassArgs {
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// Integral cohomology class, comma-separated: s1,…,sr,y.
    #[arg(long, allow_hyphen_values = true)]
    class: String,
}

#[derive(Args, Clone)]
struct FiberArgs {
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// Integral cohomology class, comma-separated: s1,…,sr,y.
    #[arg(long, allow_hyphen_values = true)]
    class: String,
    /// Slope override for a torus, e.g. "T2=1/0" or "S1=0/1"; repeatable.
    #[arg(long = "slope-override")]
    slope_override: Vec<String>,
}

#[derive(Args, Clone)]
struct AutomatonArgs {
    /// Number of strands selecting the built-in seed (3 or 4).
    #[arg(long)]
    strands: Option<usize>,
    /// Seed name: "b3", "b4" or "appendix-a".
    #[arg(long)]
    seed: Option<String>,
    /// Family parameter for appendix-a.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Write a DOT export of the automaton graph here.
    #[arg(long)]
    dot: Option<String>,
    /// Vertex budget before the build is flagged incomplete.
    #[arg(long, default_value_t = 200)]
    max_vertices: usize,
    /// Depth budget before the build is flagged incomplete.
    #[arg(long, default_value_t = 12)]
    max_depth: usize,
    /// List the label-closed loops up to this length.
    #[arg(long)]
    loops: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn general(message: impl Into<String>) -> Failure {
        Failure { code: 1, message: message.into() }
    }
}

#[derive(Deserialize)]
struct PathFile {
    seed: PathSeed,
    /// Fold records `["from", "onto"]` and rotations `["rotate", "+1"|"-1"]`.
    folds: Vec<(String, String)>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PathSeed {
    Named(String),
    Track(Box<TrainTrack>),
}

/// The loop plus the braid word it represents.
struct ResolvedLoop {
    lp: AutomatonLoop,
    word: BraidWord,
}

fn resolve_loop(args: &PipelineArgs) -> Result<ResolvedLoop, Failure> {
    if let Some(path) = &args.path_file {
        let data = fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {path}: {e}")))?;
        let parsed: PathFile = serde_json::from_str(&data)
            .map_err(|e| Failure::usage(format!("bad path file: {e}")))?;
        let seed = match parsed.seed {
            PathSeed::Named(name) => seed_by_name(&name, 1)?,
            PathSeed::Track(track) => *track,
        };
        let steps: Vec<PathStep> = parsed
            .folds
            .iter()
            .map(|(from, onto)| {
                if from == "rotate" {
                    let dir: i32 = onto.parse().unwrap_or(0);
                    PathStep::Rotate(dir)
                } else {
                    PathStep::Fold(FoldSpec::new(from, onto))
                }
            })
            .collect();
        let lp = Automaton::trace_path(&seed, &steps).map_err(Failure::general)?;
        let word = BraidWord::new(lp.punctures, lp.braid_word.clone())
            .map_err(|e| Failure::general(e.to_string()))?;
        return Ok(ResolvedLoop { lp, word });
    }
    if let Some(family) = &args.family {
        return match family.as_str() {
            "b4" => {
                let lp = families::b4_loop().map_err(Failure::general)?;
                let word = BraidWord::new(4, vec![-1, 2, 3]).unwrap();
                Ok(ResolvedLoop { lp, word })
            }
            "appendix-a" => {
                let lp = families::appendix_a_loop(args.n);
                let word = BraidWord::new(args.n + 4, families::appendix_a_word(args.n))
                    .map_err(|e| Failure::general(e.to_string()))?;
                Ok(ResolvedLoop { lp, word })
            }
            other => Err(Failure::usage(format!("unknown family {other:?}"))),
        };
    }
    let strands = args
        .strands
        .ok_or_else(|| Failure::usage("--strands is required with --braid"))?;
    let braid = args
        .braid
        .as_ref()
        .ok_or_else(|| Failure::usage("one of --braid, --family, --path-file is required"))?;
    let word = BraidWord::parse(strands, braid)
        .map_err(|e| Failure::usage(e.to_string()))?;
    let lp = match strands {
        3 => families::b3_word_loop(&word.letters).map_err(Failure::usage)?,
        4 if word.letters == vec![-1, 2, 3] => {
            families::b4_loop().map_err(Failure::general)?
        }
        _ => {
            return Err(Failure::usage(
                "no built-in loop for this braid; supply --path-file or use a family",
            ))
        }
    };
    Ok(ResolvedLoop { lp, word })
}

fn seed_by_name(name: &str, n: usize) -> Result<TrainTrack, Failure> {
    match name {
        "b3" => Ok(families::b3_seed()),
        "b4" => Ok(families::b4_seed()),
        "appendix-a" => Ok(families::appendix_a_seed(n)),
        other => Err(Failure::usage(format!("unknown seed {other:?}"))),
    }
}

fn parse_class(input: &str, arity: usize) -> Result<CohomologyClass, Failure> {
    let coords: Result<Vec<i64>, _> = input
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>())
        .collect();
    let coords = coords.map_err(|e| Failure::usage(format!("bad class: {e}")))?;
    if coords.len() != arity {
        return Err(Failure::usage(format!(
            "class has {} coordinates, expected {} (s1..sr, y)",
            coords.len(),
            arity
        )));
    }
    Ok(CohomologyClass(coords))
}

fn theta_of(resolved: &ResolvedLoop, override_certification: bool) -> Result<TeichResult, Failure> {
    teichmuller_polynomial(&resolved.lp, override_certification).map_err(|e| Failure {
        code: EXIT_CERTIFICATION,
        message: e.to_string(),
    })
}

fn cone_check(result: &TeichResult, class: &CohomologyClass) -> Result<(), Failure> {
    let arity = result.theta.arity();
    let mut reference = vec![0i64; arity];
    reference[arity - 1] = 1;
    let face = fibered_face(&result.theta, &CohomologyClass(reference))
        .map_err(|e| Failure::general(e.to_string()))?;
    if !face.cone_contains(class) {
        return Err(Failure {
            code: EXIT_CONE,
            message: format!("class {:?} lies outside the fibered cone", class.0),
        });
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Poly(args) => {
            let resolved = resolve_loop(&args)?;
            let result = theta_of(&resolved, args.override_certification)?;
            let pretty = result.theta.to_u_grouped_string(&result.names);
            if args.json {
                let cert = result.certified.as_ref();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "braid": braid_word_string(&resolved.word.letters),
                        "variables": result.names.0,
                        "theta": result.theta.to_string_with(&result.names),
                        "theta_grouped": pretty,
                        "certified": cert.map(|c| c.certified()),
                        "pf_eigenvalue": cert.map(|c| c.pf_eigenvalue),
                    }))
                    .unwrap()
                );
            } else {
                println!("{pretty}");
            }
        }
        Command::Eval(args) => {
            let resolved = resolve_loop(&args.pipeline)?;
            let result = theta_of(&resolved, args.pipeline.override_certification)?;
            let class = parse_class(&args.class, result.theta.arity())?;
            cone_check(&result, &class)?;
            let valuated = result
                .theta
                .valuate(&class)
                .map_err(|e| Failure::general(e.to_string()))?;
            let x = VarNames::x();
            let root = largest_root(&valuated);
            if args.pipeline.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "class": class.0,
                        "specialization": valuated.to_string_with(&x),
                        "dominant_root": root.as_ref().ok(),
                        "root_error": root.as_ref().err().map(|e| e.to_string()),
                    }))
                    .unwrap()
                );
            } else {
                println!("{}", valuated.to_string_with(&x));
                match root {
                    Ok(r) => println!("dominant root {r:.9}"),
                    Err(e) => println!("dominant root unavailable: {e}"),
                }
            }
        }
        Command::Dilatation(args) => {
            let resolved = resolve_loop(&args.pipeline)?;
            let result = theta_of(&resolved, args.pipeline.override_certification)?;
            let class = parse_class(&args.class, result.theta.arity())?;
            cone_check(&result, &class)?;
            let valuated = result
                .theta
                .valuate(&class)
                .map_err(|e| Failure::general(e.to_string()))?;
            let geometric =
                largest_root(&valuated).map_err(|e| Failure::general(e.to_string()))?;
            let homological = alexander_polynomial(&resolved.word)
                .ok()
                .and_then(|delta| {
                    orientability_test(&result.theta, &delta, &class).ok()
                });
            if args.pipeline.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "class": class.0,
                        "stretch_factor": geometric,
                        "homological_dilatation": homological.as_ref().map(|o| o.homological),
                        "orientable": homological.as_ref().map(|o| o.verdict == Orientability::Orientable),
                    }))
                    .unwrap()
                );
            } else {
                println!("stretch factor {geometric:.9}");
                if let Some(o) = homological {
                    println!("homological dilatation {:.9}", o.homological);
                    let verdict = match o.verdict {
                        Orientability::Orientable => "orientable",
                        Orientability::NonOrientable => "non-orientable",
                    };
                    println!("invariant foliation {verdict}");
                }
            }
        }
        Command::Alexander(args) => {
            let resolved = resolve_loop(&args)?;
            let delta = alexander_polynomial(&resolved.word)
                .map_err(|e| Failure::general(e.to_string()))?;
            let names = VarNames::default_for(2);
            if args.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "alexander": delta.to_string_with(&names),
                        "alexander_grouped": delta.to_u_grouped_string(&names),
                    }))
                    .unwrap()
                );
            } else {
                println!("{}", delta.to_u_grouped_string(&names));
            }
        }
        Command::Norm(args) => {
            let resolved = resolve_loop(&args.pipeline)?;
            let result = theta_of(&resolved, args.pipeline.override_certification)?;
            let class = parse_class(&args.class, result.theta.arity())?;
            let arity = result.theta.arity();
            let mut reference = vec![0i64; arity];
            reference[arity - 1] = 1;
            let face = fibered_face(&result.theta, &CohomologyClass(reference))
                .map_err(|e| Failure::general(e.to_string()))?;
            let teich_ball = NormBall::new(NormKind::Teichmuller, result.theta.clone())
                .map_err(|e| Failure::general(e.to_string()))?;
            let teich_norm = teich_ball
                .norm(&class)
                .map_err(|e| Failure::general(e.to_string()))?;
            let alexander = alexander_polynomial(&resolved.word).ok().map(|delta| {
                let ball = NormBall::new(NormKind::Alexander, delta).unwrap();
                ball.norm(&class).unwrap()
            });
            let inside = face.cone_contains(&class);
            if args.pipeline.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "class": class.0,
                        "teichmuller_norm": teich_norm,
                        "alexander_norm": alexander,
                        "face_vertices": face.vertices,
                        "in_cone": inside,
                    }))
                    .unwrap()
                );
            } else {
                println!("Teichmuller norm {teich_norm}");
                if let Some(a) = alexander {
                    println!("Alexander norm {a}");
                }
                let verts: Vec<String> =
                    face.vertices.iter().map(|v| format!("{v:?}")).collect();
                println!("face vertices {}", verts.join(" "));
                println!("in fibered cone {inside}");
            }
        }
        Command::Fiber(args) => {
            let resolved = resolve_loop(&args.pipeline)?;
            let result = theta_of(&resolved, args.pipeline.override_certification)?;
            let class = parse_class(&args.class, result.theta.arity())?;
            cone_check(&result, &class)?;
            let ball = NormBall::new(NormKind::Teichmuller, result.theta.clone())
                .map_err(|e| Failure::general(e.to_string()))?;
            let norm = ball
                .norm(&class)
                .map_err(|e| Failure::general(e.to_string()))?;
            let data = linking_data(&resolved.word);
            let overrides = parse_overrides(&args.slope_override, &data)?;
            let report = fiber_report(&resolved.lp, &data, &class, norm, &overrides)
                .map_err(|e| Failure::general(e.to_string()))?;
            if args.pipeline.json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                println!("class {:?}  norm {}", report.class, report.norm);
                for t in &report.tori {
                    println!(
                        "{}: {} boundary component(s), slope {}/{}, orbit slope {}/{}, {}-prong",
                        t.name, t.count, t.slope.0, t.slope.1, t.orbit_slope.0, t.orbit_slope.1,
                        t.prongs
                    );
                }
                println!("total boundary {}", report.total_boundary);
                println!("genus {}", report.genus);
                println!(
                    "Euler-Poincare audit {}",
                    if report.euler_ok { "passed" } else { "FAILED" }
                );
            }
        }
        Command::Automaton(args) => {
            let seed = match (&args.seed, args.strands) {
                (Some(name), _) => seed_by_name(name, args.n)?,
                (None, Some(3)) => families::b3_seed(),
                (None, Some(4)) => families::b4_seed(),
                (None, Some(n)) => {
                    if n >= 5 {
                        families::appendix_a_seed(n - 4)
                    } else {
                        return Err(Failure::usage(format!("no built-in seed for {n} strands")));
                    }
                }
                (None, None) => {
                    return Err(Failure::usage("--seed or --strands is required"))
                }
            };
            let automaton = Automaton::build(&seed, args.max_vertices, args.max_depth)
                .map_err(Failure::general)?;
            if let Some(path) = &args.dot {
                fs::write(path, automaton.to_dot())
                    .map_err(|e| Failure::general(format!("cannot write {path}: {e}")))?;
            }
            if args.json {
                println!("{}", automaton.to_json());
            } else {
                println!(
                    "{} vertices, {} fold edges, {}",
                    automaton.vertices.len(),
                    automaton.edges.len(),
                    if automaton.complete { "complete" } else { "incomplete" }
                );
                if let Some(max_len) = args.loops {
                    let loops = automaton.loops(max_len);
                    println!("{} loop(s) up to length {max_len}", loops.len());
                    for (i, l) in loops.iter().enumerate() {
                        let folds: Vec<String> = l
                            .moves
                            .iter()
                            .map(|m| match &m.fold {
                                Some(f) => format!("{}>{}", f.from_edge, f.onto_edge),
                                None => "braid".to_string(),
                            })
                            .collect();
                        println!(
                            "loop {}: [{}] braid {}",
                            i,
                            folds.join(", "),
                            braid_word_string(&l.braid_word)
                        );
                    }
                }
            }
        }
        Command::Certify(args) => {
            let resolved = resolve_loop(&args)?;
            let cert = certify_pseudo_anosov(&resolved.lp);
            if args.json {
                println!("{}", serde_json::to_string_pretty(&cert).unwrap());
            } else {
                println!("primitive {}", cert.primitive);
                println!("PF eigenvalue {:.9}", cert.pf_eigenvalue);
                println!("switch conditions {}", cert.switch_conditions_hold);
                println!(
                    "certification {}",
                    if cert.certified() { "pseudo-Anosov" } else { "FAILED" }
                );
            }
            if !cert.certified() && !args.override_certification {
                return Err(Failure {
                    code: EXIT_CERTIFICATION,
                    message: "loop is not certified pseudo-Anosov".to_string(),
                });
            }
        }
    }
    Ok(())
}

fn parse_overrides(overrides_args: &[String], data: &LinkData) -> Result<SlopeOverrides, Failure> {
    let mut overrides = SlopeOverrides::default();
    for spec in overrides_args {
        let (name, slope) = spec
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("bad slope override {spec:?}")))?;
        let (p, q) = slope
            .split_once('/')
            .ok_or_else(|| Failure::usage(format!("bad slope {slope:?}")))?;
        let p: i64 = p.parse().map_err(|_| Failure::usage("bad slope numerator"))?;
        let q: i64 = q.parse().map_err(|_| Failure::usage("bad slope denominator"))?;
        if let Some(idx) = name.strip_prefix('S') {
            let idx: usize = idx
                .parse()
                .map_err(|_| Failure::usage("bad interior orbit index"))?;
            if overrides.interior.len() < idx {
                overrides.interior.resize(idx, None);
            }
            overrides.interior[idx - 1] = Some((p, q));
        } else if name == format!("T{}", data.components()) {
            overrides.axis = Some((p, q));
        } else {
            return Err(Failure::usage(format!(
                "only the axis torus T{} and interior orbits S<k> accept overrides",
                data.components()
            )));
        }
    }
    Ok(overrides)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
