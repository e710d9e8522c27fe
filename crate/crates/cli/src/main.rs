//! `zkstokes`: generators, verifiers and theorem checks over JSON files.
//!
//! Exit codes: 0 pass, 1 mathematical failure, 2 usage or format error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use zk_stokes::acceptance;
use zk_stokes::dold::{enumerate_equivariant_vertex_maps, refute_equivariant_map, RefutationVerdict};
use zk_stokes::homalg::{homology_retract_check, reduced_homology};
use zk_stokes::io::{self, chain_to_json, complex_to_json, labelling_to_json, sphere_to_json};
use zk_stokes::labelling::{check_admissible, check_equivariant, random_labelling, Labelling, LabellingMode};
use zk_stokes::resolution::verify_f_chain_map;
use zk_stokes::simplicial::{
    alt_subcomplex, barycentric_subdivision, join_complex, pseudomanifold_analysis,
    GroupActionOnComplex, SimplicialComplex,
};
use zk_stokes::stokes::stokes_sides;
use zk_stokes::tucker::{
    alpha_invariance_experiment, alpha_sequence, build_ezk_sphere, build_kgon_sphere,
    verify_generalized_sphere, GeneralizedSphere,
};
use zk_stokes::{Error, RingSpec};

#[derive(Parser)]
#[command(name = "zkstokes", version, about = "Exact Z_k Stokes and Tucker computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Coefficient ring: Z, Z/m or Zmod:m.
    #[arg(long, global = true, default_value = "Z")]
    ring: String,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file; the report or document is also printed to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Write complexes, spheres, chains and labellings.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Check a single property; exit 0 iff it holds.
    Verify {
        #[command(subcommand)]
        kind: VerifyKind,
    },
    /// Run a theorem check and report both sides.
    Theorem {
        #[command(subcommand)]
        kind: TheoremKind,
    },
    /// Reduced homology of a complex.
    Homology {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Run the acceptance suite.
    Selftest,
}

#[derive(Subcommand)]
enum GenKind {
    /// The join (Z_k)^{*m} with its free action.
    Join {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
    },
    /// The subcomplex of (Z_k)^{*m} with at most d sign changes per facet.
    Alt {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
    },
    /// Generalized sphere in the join of m + 1 rotating k-gons.
    Kgon {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
    },
    /// Generalized d-sphere in (Z_k)^{*(d+1)}.
    EzkSphere {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
    },
    /// Barycentric subdivision of a complex or sphere document.
    Subdivide {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        rounds: usize,
    },
    /// Seeded random admissible labelling of a complex.
    Labelling {
        #[arg(long = "in")]
        input: PathBuf,
        /// Group order; defaults to the order of the complex's action.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        colors: u64,
        /// Make the labelling equivariant for the complex's action.
        #[arg(long)]
        equivariant: bool,
    },
    /// Orientation chain of an orientable pseudomanifold.
    Orientation {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum VerifyKind {
    /// The chain map f from the bar to the minimal resolution.
    Chainmap {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// The relations of a generalized sphere document.
    Sphere {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// No edge carries one color with two different signs.
    Admissible {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        labelling: PathBuf,
    },
    /// The labelling commutes with the complex's action.
    Equivariant {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        labelling: PathBuf,
    },
    /// Pseudomanifold structure and orientability.
    Pm {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum TheoremKind {
    /// Counting and algebraic sides of the Stokes formula.
    Stokes {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        chain: PathBuf,
        #[arg(long)]
        labelling: PathBuf,
    },
    /// Tucker invariants on the sphere of (Z_k)^{*(d+1)} for seeded labellings.
    Tucker {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        /// Number of labellings, seeded from --seed on.
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        /// Colors per labelling; defaults to d + 1.
        #[arg(long)]
        colors: Option<u64>,
        #[arg(long, default_value_t = 0)]
        rounds: usize,
    },
    /// The invariant of the top chain is one class mod k across labellings.
    Invariance {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 20)]
        seeds: u64,
        #[arg(long)]
        colors: Option<u64>,
    },
    /// Refutes every equivariant vertex map (Z_k)^{*m} -> (Z_k)^{*(m-1)}.
    Dold {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
    },
    /// Homology of the bounded-jump subcomplex against the smaller join.
    Retract {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
    },
}

/// A finished command: what to print and whether it passed.
struct Outcome {
    doc: Value,
    passed: bool,
}

impl Outcome {
    fn document(doc: Value) -> Self {
        Outcome { doc, passed: true }
    }
}

fn report(theorem: &str, inputs: Value, values: Value, passed: bool, certificate: Value) -> Outcome {
    let invocation: Vec<String> = std::env::args().skip(1).collect();
    let doc = json!({
        "format": io::FORMAT_VERSION,
        "theorem": theorem,
        "invocation": invocation,
        "inputs": inputs,
        "values": values,
        "verdict": if passed { "pass" } else { "fail" },
        "certificate": certificate,
    });
    Outcome { doc, passed }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

/// Reads a complex document, or the complex embedded in a sphere document.
fn load_complex(path: &Path) -> zk_stokes::Result<(SimplicialComplex, Option<GroupActionOnComplex>)> {
    let doc = io::read_json(path)?;
    match doc.get("complex") {
        Some(inner) if doc.get("chains").is_some() => io::complex_from_json(inner),
        _ => io::complex_from_json(&doc),
    }
}

fn load_labelling(path: &Path, x: &SimplicialComplex) -> zk_stokes::Result<Labelling> {
    io::labelling_from_json(&io::read_json(path)?, x)
}

fn require_action(action: Option<GroupActionOnComplex>) -> zk_stokes::Result<GroupActionOnComplex> {
    action.ok_or_else(|| Error::Format("the complex document has no action".into()))
}

fn gen(kind: GenKind, common: &Common, ring: &RingSpec) -> zk_stokes::Result<Outcome> {
    let doc = match kind {
        GenKind::Join { k, m } => {
            let (x, a) = join_complex(k, m)?;
            complex_to_json(&x, Some(&a))
        }
        GenKind::Alt { k, m, d } => {
            let (x, a) = alt_subcomplex(k, m, d)?;
            complex_to_json(&x, Some(&a))
        }
        GenKind::Kgon { k, m } => sphere_to_json(&build_kgon_sphere(k, m, ring)?),
        GenKind::EzkSphere { k, d } => sphere_to_json(&build_ezk_sphere(k, d, ring)?),
        GenKind::Subdivide { input, rounds } => {
            let doc = io::read_json(&input)?;
            if doc.get("chains").is_some() {
                let mut gs = io::sphere_from_json(&doc)?;
                for _ in 0..rounds {
                    gs = gs.subdivide()?;
                }
                sphere_to_json(&gs)
            } else {
                let (mut x, mut action) = io::complex_from_json(&doc)?;
                for _ in 0..rounds {
                    let sd = barycentric_subdivision(&x, action.as_ref())?;
                    x = sd.complex;
                    action = sd.action;
                }
                complex_to_json(&x, action.as_ref())
            }
        }
        GenKind::Labelling { input, k, colors, equivariant } => {
            let (x, action) = load_complex(&input)?;
            let k = k.or(action.as_ref().map(GroupActionOnComplex::k)).ok_or_else(|| {
                Error::Format("pass --k or use a complex with an action".into())
            })?;
            let mode = if equivariant {
                LabellingMode::EquivariantAdmissible
            } else {
                LabellingMode::Admissible
            };
            let l = random_labelling(&x, k, colors, mode, action.as_ref(), common.seed)?;
            labelling_to_json(&l, &x)
        }
        GenKind::Orientation { input } => {
            let (x, _) = load_complex(&input)?;
            let o = pseudomanifold_analysis(&x)
                .orientation_chain
                .ok_or_else(|| Error::Precondition("the complex is not an orientable pseudomanifold".into()))?;
            chain_to_json(&o.with_ring(ring.clone()), &x)
        }
    };
    Ok(Outcome::document(doc))
}

fn verify(kind: VerifyKind, ring: &RingSpec) -> zk_stokes::Result<Outcome> {
    Ok(match kind {
        VerifyKind::Chainmap { k, max_degree } => {
            let rep = verify_f_chain_map(k, max_degree, ring, None)?;
            let failures: Vec<Value> = rep
                .failures
                .iter()
                .map(|f| {
                    json!({
                        "word": f.word.letters(),
                        "minimal_side": io::group_ring_to_json(&f.minimal_side),
                        "standard_side": io::group_ring_to_json(&f.standard_side),
                    })
                })
                .collect();
            report(
                "chainmap",
                json!({"k": k, "max_degree": max_degree, "ring": ring.to_string()}),
                json!({"checked": rep.checked, "failures": failures.len()}),
                rep.passed(),
                json!({"failures": failures}),
            )
        }
        VerifyKind::Sphere { input } => {
            let gs = io::sphere_from_json(&io::read_json(&input)?)?;
            let v = verify_generalized_sphere(&gs);
            report(
                "sphere",
                json!({"in": input, "k": gs.k(), "degree": gs.degree(), "ring": gs.ring.to_string()}),
                to_value(&v),
                v.ok,
                Value::Null,
            )
        }
        VerifyKind::Admissible { input, labelling } => {
            let (x, _) = load_complex(&input)?;
            let l = load_labelling(&labelling, &x)?;
            let bad = check_admissible(&x, &l)?;
            let names: Vec<[&str; 2]> = bad.iter().map(|&(v, w)| [x.vertex_name(v), x.vertex_name(w)]).collect();
            report(
                "admissible",
                json!({"in": input, "labelling": labelling}),
                json!({"violations": names.len()}),
                bad.is_empty(),
                json!({"edges": names}),
            )
        }
        VerifyKind::Equivariant { input, labelling } => {
            let (x, action) = load_complex(&input)?;
            let action = require_action(action)?;
            let l = load_labelling(&labelling, &x)?;
            let bad = check_equivariant(&l, &action)?;
            let names: Vec<&str> = bad.iter().map(|&v| x.vertex_name(v)).collect();
            report(
                "equivariant",
                json!({"in": input, "labelling": labelling}),
                json!({"violations": names.len()}),
                bad.is_empty(),
                json!({"vertices": names}),
            )
        }
        VerifyKind::Pm { input } => {
            let (x, _) = load_complex(&input)?;
            let pm = pseudomanifold_analysis(&x);
            let names = |ridges: &[Vec<usize>]| -> Vec<Vec<String>> {
                ridges.iter().map(|r| r.iter().map(|&v| x.vertex_name(v).to_string()).collect()).collect()
            };
            let orientation = pm.orientation_chain.as_ref().map(|o| chain_to_json(o, &x));
            report(
                "pm",
                json!({"in": input}),
                json!({
                    "dimension": pm.dimension,
                    "pure": pm.is_pure,
                    "pseudomanifold": pm.is_pseudomanifold,
                    "closed": pm.is_closed(),
                    "orientable": pm.orientable,
                }),
                pm.is_pseudomanifold,
                json!({
                    "overfull_ridges": names(&pm.overfull_ridges),
                    "boundary_ridges": names(&pm.boundary_ridges),
                    "orientation": orientation,
                }),
            )
        }
    })
}

fn seeded_labellings(
    gs: &GeneralizedSphere,
    first_seed: u64,
    count: u64,
    colors: u64,
) -> zk_stokes::Result<Vec<(u64, Labelling)>> {
    (first_seed..first_seed + count)
        .map(|seed| {
            let l = random_labelling(
                &gs.complex,
                gs.k(),
                colors,
                LabellingMode::EquivariantAdmissible,
                Some(&gs.action),
                seed,
            )?;
            Ok((seed, l))
        })
        .collect()
}

fn theorem(kind: TheoremKind, common: &Common, ring: &RingSpec) -> zk_stokes::Result<Outcome> {
    Ok(match kind {
        TheoremKind::Stokes { input, chain, labelling } => {
            let (x, _) = load_complex(&input)?;
            let c = io::chain_from_json(&io::read_json(&chain)?, &x, ring)?;
            let l = load_labelling(&labelling, &x)?;
            let rep = stokes_sides(&c, &l)?;
            report(
                "stokes",
                json!({"in": input, "chain": chain, "labelling": labelling, "ring": c.ring().to_string()}),
                to_value(&rep),
                rep.equal,
                Value::Null,
            )
        }
        TheoremKind::Tucker { k, d, seeds, colors, rounds } => {
            let mut gs = build_ezk_sphere(k, d, ring)?;
            for _ in 0..rounds {
                gs = gs.subdivide()?;
            }
            let sphere = verify_generalized_sphere(&gs);
            let colors = colors.unwrap_or(d as u64 + 1);
            let mut runs = Vec::new();
            let mut passed = sphere.ok;
            for (seed, l) in seeded_labellings(&gs, common.seed, seeds, colors)? {
                let seq = alpha_sequence(&gs, &l)?;
                let ok = seq.congruent && seq.values[0] == 1.into();
                passed &= ok;
                runs.push(json!({"seed": seed, "alpha": seq.values.iter().map(io::json_int).collect::<Vec<_>>(), "ok": ok}));
            }
            report(
                "tucker",
                json!({"k": k, "d": d, "rounds": rounds, "colors": colors, "seeds": seeds,
                       "first_seed": common.seed, "ring": ring.to_string()}),
                json!({"sphere": to_value(&sphere), "vertices": gs.complex.num_vertices(),
                       "facets": gs.complex.facets().len(), "runs": runs}),
                passed,
                Value::Null,
            )
        }
        TheoremKind::Invariance { k, d, seeds, colors } => {
            let gs = build_ezk_sphere(k, d, ring)?;
            let colors = colors.unwrap_or(d as u64 + 1);
            let labellings: Vec<Labelling> =
                seeded_labellings(&gs, common.seed, seeds, colors)?.into_iter().map(|(_, l)| l).collect();
            let rep = alpha_invariance_experiment(&gs.complex, &gs.action, &gs.chains[d], &labellings)?;
            report(
                "invariance",
                json!({"k": k, "d": d, "colors": colors, "seeds": seeds, "first_seed": common.seed,
                       "ring": ring.to_string()}),
                to_value(&rep),
                rep.single_class,
                Value::Null,
            )
        }
        TheoremKind::Dold { k, m } => {
            if m < 2 {
                return Err(Error::Domain("need m >= 2 so that the target is nonempty".into()));
            }
            let (x, ax) = join_complex(k, m)?;
            let (y, ay) = join_complex(k, m - 1)?;
            let maps = enumerate_equivariant_vertex_maps(&ax, &ay)?;
            let mut rejected = 0;
            let mut kinds = serde_json::Map::new();
            let mut certificate = Vec::new();
            for phi in &maps {
                let rep = refute_equivariant_map(&x, &ax, &y, &ay, phi, m - 2, ring)?;
                if rep.rejected() {
                    rejected += 1;
                }
                let kind = match &rep.verdict {
                    RefutationVerdict::NotSimplicial { .. } => "not_simplicial",
                    RefutationVerdict::NotEquivariant { .. } => "not_equivariant",
                    RefutationVerdict::HypothesisFailed { .. } => "hypothesis_failed",
                    RefutationVerdict::Refuted { .. } => "refuted",
                };
                let count = kinds.entry(kind).or_insert(json!(0));
                *count = json!(count.as_u64().unwrap_or(0) + 1);
                certificate.push(json!({"map": phi, "verdict": to_value(&rep.verdict)}));
            }
            report(
                "dold",
                json!({"k": k, "m": m, "target_m": m - 1, "ring": ring.to_string()}),
                json!({"maps": maps.len(), "rejected": rejected, "verdicts": kinds}),
                rejected == maps.len(),
                json!(certificate),
            )
        }
        TheoremKind::Retract { k, d, m } => {
            let rep = homology_retract_check(k, m, d)?;
            report("retract", json!({"k": k, "d": d, "m": m}), to_value(&rep), rep.matches, Value::Null)
        }
    })
}

fn homology(input: &Path, ring: &RingSpec) -> zk_stokes::Result<Outcome> {
    let (x, _) = load_complex(input)?;
    let h = reduced_homology(&x, ring)?;
    let text: Vec<String> = h.iter().map(ToString::to_string).collect();
    Ok(report(
        "homology",
        json!({"in": input, "ring": ring.to_string()}),
        json!({"groups": to_value(&h), "display": text}),
        true,
        Value::Null,
    ))
}

fn selftest() -> Outcome {
    let outcomes = acceptance::run_all();
    for o in &outcomes {
        eprintln!("criterion {} [{}] {}: {}", o.id, if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
    }
    let passed = outcomes.iter().all(|o| o.passed);
    report("selftest", json!({}), to_value(&outcomes), passed, Value::Null)
}

fn run(cli: Cli) -> zk_stokes::Result<Outcome> {
    let ring = RingSpec::parse(&cli.common.ring)?;
    match cli.command {
        Command::Gen { kind } => gen(kind, &cli.common, &ring),
        Command::Verify { kind } => verify(kind, &ring),
        Command::Theorem { kind } => theorem(kind, &cli.common, &ring),
        Command::Homology { input } => homology(&input, &ring),
        Command::Selftest => Ok(selftest()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.common.out.clone();
    match run(cli) {
        Ok(outcome) => {
            let text = io::to_pretty(&outcome.doc);
            print!("{text}");
            if let Some(path) = out {
                if let Err(e) = std::fs::write(&path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
