mod io;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use groupiso::abelian::{aut_group_of, canonical_decomposition, check_aut_factors, AbelianDecomposition};
use groupiso::bilinear::{brute_force_isometries, isometries_via_gris, BilinearFile, BilinearMap};
use groupiso::coloriso::{gris_solve, solve_color_iso, ColorIsoInstance, CosetFile, InstanceFile};
use groupiso::gadget::{ci_to_gis, gis_to_ci, Graph, GraphFile};
use groupiso::group::{composition_factors, FiniteGroup, GroupFile};
use groupiso::perm::{PermGroup, Permutation, Subcoset};
use groupiso::reduction::{radical_derived_series, theorem1_pipeline};
use groupiso::verify::{run_suite, Suite};
use groupiso::wreath::{Holomorph, TowerFile, WreathElementFile, WreathTower};
use serde_json::{json, Value};

use io::{write_report, CliError, CliResult, Inputs, RunReport};

#[derive(Parser)]
#[command(name = "groupiso", version, about = "Group isomorphism through color isomorphism")]
struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest group order accepted as input.
    #[arg(long, global = true, default_value_t = 2000)]
    max_order: usize,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (defaults to one per core).
    #[arg(long, global = true)]
    parallel: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Radical derived series of a group.
    Series { group: PathBuf },
    /// Canonical decomposition of an abelian group.
    Canon { group: PathBuf },
    /// Automorphism group of an abelian group (group or decomposition file).
    AutAbelian { input: PathBuf },
    /// Holomorph of a group acting on its elements.
    Holomorph { group: PathBuf },
    /// Evaluate a wreath tower element.
    WreathEval {
        tower: PathBuf,
        element: PathBuf,
        /// A point of the product domain, coordinates bottom level first.
        #[arg(long, value_delimiter = ',')]
        point: Option<Vec<usize>>,
    },
    /// All isomorphisms between two groups.
    Reduce { g1: PathBuf, g2: PathBuf },
    /// Solve a color isomorphism instance.
    ColorIso { instance: PathBuf },
    /// Isomorphisms inside a coset (the full symmetric group by default).
    Gris {
        g1: PathBuf,
        g2: PathBuf,
        #[arg(long)]
        coset: Option<PathBuf>,
    },
    /// Isometry group of a bilinear map.
    Isometry {
        map: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Brute)]
        method: Method,
    },
    /// Graph gadget reductions.
    Gadget {
        #[command(subcommand)]
        direction: GadgetCommand,
    },
    /// Run a verification suite.
    Verify {
        /// Suite name, or `all`.
        #[arg(long)]
        suite: String,
    },
}

#[derive(Subcommand)]
enum GadgetCommand {
    /// Points-mode instance to a pair of gadget graphs.
    ToGraph { instance: PathBuf },
    /// Two graphs (and a coset) to a points-mode instance on vertex pairs.
    ToColor {
        x: PathBuf,
        y: PathBuf,
        #[arg(long)]
        coset: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Gfgris,
}

fn coset_json(c: &Subcoset) -> Value {
    match c {
        Subcoset::Empty { .. } => json!({ "order": "0", "representative": null, "generators": [] }),
        Subcoset::Coset { rep, group } => json!({
            "order": group.order().to_string(),
            "representative": rep.images(),
            "generators": group.generators().iter().map(Permutation::images).collect::<Vec<_>>(),
        }),
    }
}

fn group_json(g: &PermGroup) -> Value {
    json!({
        "degree": g.degree(),
        "order": g.order().to_string(),
        "generators": g.generators().iter().map(Permutation::images).collect::<Vec<_>>(),
    })
}

fn labels(g: &FiniteGroup) -> Vec<String> {
    composition_factors(g).iter().map(ToString::to_string).collect()
}

fn run(cli: &Cli, inputs: &mut Inputs) -> CliResult<(String, Value)> {
    let max = cli.max_order;
    Ok(match &cli.command {
        Command::Series { group } => {
            let g = inputs.group(group, max)?;
            let s = radical_derived_series(&g);
            let out = json!({
                "order": g.order(),
                "solvable": s.solvable,
                "chain_orders": s.chain.orders(),
                "factor_orders": s.factor_orders(),
                "factor_labels": s.factors.iter().map(labels).collect::<Vec<_>>(),
            });
            ("series".into(), out)
        }
        Command::Canon { group } => {
            let g = inputs.group(group, max)?;
            let (d, iso) = canonical_decomposition(&g)?;
            ("canon".into(), json!({ "factors": d.factors, "isomorphism": iso }))
        }
        Command::AutAbelian { input } => {
            let v: Value = inputs.json(input)?;
            let d = if v.get("factors").is_some() {
                let d: AbelianDecomposition = serde_json::from_value(v).map_err(|e| CliError::Input(e.to_string()))?;
                AbelianDecomposition::new(d.factors)?
            } else {
                let file: GroupFile = serde_json::from_value(v).map_err(|e| CliError::Input(e.to_string()))?;
                if file.order > max {
                    return Err(CliError::Input(format!("order {} exceeds --max-order {max}", file.order)));
                }
                canonical_decomposition(&FiniteGroup::from_file(&file)?)?.0
            };
            let aut = aut_group_of(&d)?;
            let factors: Vec<String> = check_aut_factors(&d.to_group())?.iter().map(ToString::to_string).collect();
            ("aut-abelian".into(), json!({ "factors": d.factors, "aut": group_json(&aut), "composition_factors": factors }))
        }
        Command::Holomorph { group } => {
            let g = inputs.group(group, max)?;
            let hol = Holomorph::new(&g)?;
            let out = json!({ "aut_order": hol.aut.order().to_string(), "holomorph": group_json(&hol.group) });
            ("holomorph".into(), out)
        }
        Command::WreathEval { tower, element, point } => {
            let tf: TowerFile = inputs.json(tower)?;
            let t = WreathTower::from_file(&tf)?;
            let ef: WreathElementFile = inputs.json(element)?;
            let w = t.element_from_file(&ef)?;
            let p = t.to_permutation(&w)?;
            let mut out = json!({ "domains": t.domains(), "permutation": p.images() });
            if let Some(x) = point {
                let dims = t.domains();
                if x.len() != dims.len() || x.iter().zip(&dims).any(|(&c, &d)| c >= d) {
                    return Err(CliError::Input(format!("point {x:?} is not in a product of domains {dims:?}")));
                }
                out["point"] = json!(x);
                out["image"] = json!(t.evaluate(&w, x));
            }
            ("wreath-eval".into(), out)
        }
        Command::Reduce { g1, g2 } => {
            let g = inputs.group(g1, max)?;
            let h = inputs.group(g2, max)?;
            let report = theorem1_pipeline(&g, &h)?.report();
            ("reduce".into(), serde_json::to_value(report).map_err(|e| CliError::Internal(e.to_string()))?)
        }
        Command::ColorIso { instance } => {
            let f: InstanceFile = inputs.json(instance)?;
            let inst = ColorIsoInstance::from_file(&f)?;
            let sol = solve_color_iso(&inst)?;
            ("color-iso".into(), json!({ "mode": inst.mode(), "solutions": coset_json(&sol) }))
        }
        Command::Gris { g1, g2, coset } => {
            let g = inputs.group(g1, max)?;
            let h = inputs.group(g2, max)?;
            let c = match coset {
                Some(path) => inputs.json::<CosetFile>(path)?.to_subcoset()?,
                None => Subcoset::from_group(PermGroup::symmetric(g.order())),
            };
            if c.degree() != g.order() {
                return Err(CliError::Input(format!("coset acts on {} points, group has {}", c.degree(), g.order())));
            }
            ("gris".into(), json!({ "isomorphisms": coset_json(&gris_solve(&g, &h, &c)?) }))
        }
        Command::Isometry { map, method } => {
            let f: BilinearFile = inputs.json(map)?;
            let f = BilinearMap::from_file(&f)?;
            if f.a.order() * f.b.order() > max {
                return Err(CliError::Input(format!("|A||B| = {} exceeds --max-order {max}", f.a.order() * f.b.order())));
            }
            let (name, group) = match method {
                Method::Brute => ("brute", brute_force_isometries(&f)?),
                Method::Gfgris => ("gfgris", isometries_via_gris(&f)?),
            };
            ("isometry".into(), json!({ "method": name, "isometries": group_json(&group) }))
        }
        Command::Gadget { direction: GadgetCommand::ToGraph { instance } } => {
            let f: InstanceFile = inputs.json(instance)?;
            let pair = ci_to_gis(&ColorIsoInstance::from_file(&f)?)?;
            let out = serde_json::to_value(pair.to_file()).map_err(|e| CliError::Internal(e.to_string()))?;
            ("gadget to-graph".into(), out)
        }
        Command::Gadget { direction: GadgetCommand::ToColor { x, y, coset } } => {
            let gx = Graph::from_file(&inputs.json::<GraphFile>(x)?)?;
            let gy = Graph::from_file(&inputs.json::<GraphFile>(y)?)?;
            let c = match coset {
                Some(path) => inputs.json::<CosetFile>(path)?.to_subcoset()?,
                None => Subcoset::from_group(PermGroup::symmetric(gx.order())),
            };
            let inst = gis_to_ci(&gx, &gy, &c)?;
            let out = serde_json::to_value(inst.to_file()).map_err(|e| CliError::Internal(e.to_string()))?;
            ("gadget to-color".into(), out)
        }
        Command::Verify { suite } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![Suite::from_name(suite).ok_or_else(|| {
                    let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                    CliError::Input(format!("unknown suite {suite:?}; expected one of {} or all", names.join(", ")))
                })?]
            };
            let reports: Vec<_> = suites.iter().map(|&s| run_suite(s, cli.seed)).collect();
            let out = serde_json::to_value(&reports).map_err(|e| CliError::Internal(e.to_string()))?;
            if let Some(bad) = reports.iter().find(|r| !r.passed()) {
                let witness = bad.witnesses.first().cloned().unwrap_or_default();
                emit(cli, "verify".into(), Inputs::default().digest(), out)?;
                return Err(CliError::Internal(format!("suite {} failed {} checks; {witness}", bad.suite, bad.failures)));
            }
            ("verify".into(), out)
        }
    })
}

fn emit(cli: &Cli, command: String, inputs_digest: String, outputs: Value) -> CliResult<()> {
    let report = RunReport { command, inputs_digest, seed: cli.seed, outputs };
    write_report(&report, cli.out.as_ref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.parallel {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let mut inputs = Inputs::default();
    let result = run(&cli, &mut inputs).and_then(|(command, outputs)| emit(&cli, command, inputs.digest(), outputs));
    eprintln!("wall time: {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
