use crate::error::{CliError, CliResult};
use crate::*;
use schur_lattice::algebra::{validate_rep, GenModuleJson};
use schur_lattice::cartan::examples::b3;
use schur_lattice::gentle::{c2_presentation, rank_of_string, string_module, tau_orbit, tau_string};
use schur_lattice::modrep::{
    brick_of, end_algebra, ext1_euler, ext1_resolution, generic_rigid, generic_rigid_parallel, hom,
};
use schur_lattice::schur::{enumerate_schur_parallel, schur_absolute};
use schur_lattice::tilting::{
    check_graph, exchange_graph, rigid_atlas, rigid_atlas_parallel, support_tilting_pairs,
};
use schur_lattice::*;
use serde::Serialize;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};

pub const SEED_ENV: &str = "SCHUR_LATTICE_SEED";

/// Resolved global settings.
#[derive(Debug, Clone)]
pub struct Config {
    pub field: FieldSpec,
    pub seed: u64,
    pub tries: usize,
    pub parallel: bool,
    pub max_rank: usize,
    pub out: Option<PathBuf>,
}

impl Config {
    fn from_global(g: &Global) -> CliResult<Self> {
        let seed = match std::env::var(SEED_ENV) {
            Ok(s) if !s.trim().is_empty() => s
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{SEED_ENV}={s:?} is not an unsigned integer")))?,
            _ => g.seed,
        };
        Ok(Config {
            field: FieldSpec::new(g.p)?,
            seed,
            tries: g.tries,
            parallel: g.jobs > 1,
            max_rank: g.max_rank,
            out: g.out.clone(),
        })
    }
}

pub fn execute(cli: Cli) -> CliResult<()> {
    let cfg = Config::from_global(&cli.global)?;
    let output = if cfg.parallel {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.global.jobs as usize)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {} workers: {e}", cli.global.jobs)))?;
        pool.install(|| dispatch(&cfg, cli.command))?
    } else {
        dispatch(&cfg, cli.command)?
    };
    write_output(cfg.out.as_deref(), &output)
}

fn write_output(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io { path: path.to_path_buf(), message: e.to_string() }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Indented JSON with arrays of scalars (vectors, matrix rows) kept on one line.
fn pretty<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("output types serialize");
    let mut s = String::new();
    render(&v, 0, &mut s);
    s.push('\n');
    s
}

fn render(v: &Value, depth: usize, s: &mut String) {
    let pad = |s: &mut String, d: usize| s.extend(std::iter::repeat_n("  ", d));
    match v {
        Value::Array(items) if items.iter().any(|x| x.is_array() || x.is_object()) => {
            s.push_str("[\n");
            for (k, x) in items.iter().enumerate() {
                pad(s, depth + 1);
                render(x, depth + 1, s);
                s.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(s, depth);
            s.push(']');
        }
        Value::Object(map) if !map.is_empty() => {
            s.push_str("{\n");
            for (k, (key, x)) in map.iter().enumerate() {
                pad(s, depth + 1);
                s.push_str(&Value::String(key.clone()).to_string());
                s.push_str(": ");
                render(x, depth + 1, s);
                s.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(s, depth);
            s.push('}');
        }
        other => s.push_str(&other.to_string()),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.to_path_buf(), message: e.to_string() })?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Json { path: path.to_path_buf(), message: e.to_string() })
}

fn load_cartan(cfg: &Config, path: &Path) -> CliResult<CartanData> {
    let j: CartanJson = read_json(path)?;
    let d = CartanData::from_json(&j)?;
    check_rank(cfg, &d)?;
    Ok(d)
}

fn check_rank(cfg: &Config, d: &CartanData) -> CliResult<()> {
    if d.rank() > cfg.max_rank {
        return Err(CliError::RankTooLarge { rank: d.rank(), max: cfg.max_rank });
    }
    Ok(())
}

fn load_module(pres: &HPresentation, path: &Path) -> CliResult<GenModule> {
    let j: GenModuleJson = read_json(path)?;
    let m = GenModule::from_json(pres, &j)?;
    if !validate_rep(pres, &m)? {
        return Err(Error::InvalidRep.into());
    }
    Ok(m)
}

fn schur_roots(cfg: &Config, d: &CartanData, bound: i64) -> Result<RootSet> {
    if cfg.parallel {
        enumerate_schur_parallel(d, bound)
    } else {
        enumerate_schur(d, bound)
    }
}

fn atlas(cfg: &Config, d: &CartanData) -> Result<RigidAtlas> {
    if cfg.parallel {
        rigid_atlas_parallel(d, cfg.field, cfg.seed, cfg.tries)
    } else {
        rigid_atlas(d, cfg.field, cfg.seed, cfg.tries)
    }
}

fn dispatch(cfg: &Config, command: Command) -> CliResult<String> {
    match command {
        Command::Cartan(CartanCmd::Validate { cartan }) => {
            let d = load_cartan(cfg, &cartan)?;
            Ok(pretty(&json!({
                "valid": true,
                "rank": d.rank(),
                "c": d.c(),
                "finite_type": weyl::is_finite_type(&d),
                "datum": d.to_json(),
            })))
        }
        Command::Roots(cmd) => roots(cfg, cmd),
        Command::Module(cmd) => module(cfg, cmd),
        Command::Tilting(TiltingCmd::Graph { cartan, format }) => {
            let d = load_cartan(cfg, &cartan)?;
            let pairs = support_tilting_pairs(&atlas(cfg, &d)?, cfg.parallel)?;
            let g = exchange_graph(d.rank(), &pairs);
            let format = format.unwrap_or_else(|| match cfg.out.as_ref().and_then(|p| p.extension()) {
                Some(ext) if ext == "dot" => GraphFormat::Dot,
                _ => GraphFormat::Json,
            });
            Ok(match format {
                GraphFormat::Dot => g.to_dot(),
                GraphFormat::Json => pretty(&g.to_json()),
            })
        }
        Command::Gentle(GentleCmd::C2(C2Cmd::Tau { dir, vertex, steps, emit })) => {
            gentle_tau(cfg, dir, vertex, steps, emit)
        }
        Command::Repro(ReproCmd::B3) => repro_b3(cfg),
        Command::Repro(ReproCmd::C2 { steps }) => repro_c2(cfg, steps),
    }
}

fn roots(cfg: &Config, cmd: RootsCmd) -> CliResult<String> {
    match cmd {
        RootsCmd::Real { cartan, bound } => {
            let d = load_cartan(cfg, &cartan)?;
            Ok(pretty(&real_roots(&d, bound)?))
        }
        RootsCmd::Schur { cartan, bound, method } => {
            let d = load_cartan(cfg, &cartan)?;
            let set = match method {
                SchurMethod::Braid => schur_roots(cfg, &d, bound)?,
                SchurMethod::Absolute => schur_absolute(&d, bound)?,
            };
            Ok(pretty(&set))
        }
        RootsCmd::Dual { cartan, bound, root } => {
            let d = load_cartan(cfg, &cartan)?;
            match root {
                Some(r) => {
                    let r = RootVector::parse(&r)?;
                    Ok(pretty(&json!({ "root": r, "dual": dual_root(&d, &r)? })))
                }
                None => {
                    let pairs: Vec<Value> = dual_schur_check(&d, bound)?
                        .into_iter()
                        .map(|(r, dual)| json!({ "root": r, "dual": dual }))
                        .collect();
                    Ok(pretty(&json!({ "bound": bound, "pairs": pairs })))
                }
            }
        }
    }
}

fn module(cfg: &Config, cmd: ModuleCmd) -> CliResult<String> {
    match cmd {
        ModuleCmd::Rigid { cartan, rank } => {
            let d = load_cartan(cfg, &cartan)?;
            let pres = HPresentation::new(&d, cfg.field);
            let r = RootVector::parse(&rank)?;
            let m = if cfg.parallel {
                generic_rigid_parallel(&pres, &r, cfg.seed, cfg.tries)?
            } else {
                generic_rigid(&pres, &r, cfg.seed, cfg.tries)?
            };
            Ok(pretty(&m.to_json(&pres)))
        }
        ModuleCmd::Hom { cartan, m, n } => {
            let pres = HPresentation::new(&load_cartan(cfg, &cartan)?, cfg.field);
            let (m, n) = (load_module(&pres, &m)?, load_module(&pres, &n)?);
            Ok(pretty(&json!({ "hom": hom(&pres, &m, &n)?.dim })))
        }
        ModuleCmd::Ext { cartan, m, n, method } => {
            let pres = HPresentation::new(&load_cartan(cfg, &cartan)?, cfg.field);
            let (m, n) = (load_module(&pres, &m)?, load_module(&pres, &n)?);
            let (ext, name) = match method {
                ExtMethod::Resolution => (ext1_resolution(&pres, &m, &n)?, "resolution"),
                ExtMethod::Euler => (ext1_euler(&pres, &m, &n)?, "euler"),
            };
            Ok(pretty(&json!({ "ext1": ext, "method": name })))
        }
        ModuleCmd::End { cartan, m } => {
            let pres = HPresentation::new(&load_cartan(cfg, &cartan)?, cfg.field);
            let m = load_module(&pres, &m)?;
            Ok(pretty(&end_algebra(&pres, &m)?))
        }
        ModuleCmd::Brick { cartan, m } => {
            let pres = HPresentation::new(&load_cartan(cfg, &cartan)?, cfg.field);
            let m = load_module(&pres, &m)?;
            let b = brick_of(&pres, &m)?;
            Ok(pretty(&json!({
                "dims": b.dims,
                "is_brick": b.is_brick,
                "module": b.module.to_json(&pres),
            })))
        }
    }
}

fn gentle_tau(cfg: &Config, dir: Dir, vertex: usize, steps: usize, emit: Emit) -> CliResult<String> {
    if !(1..=3).contains(&vertex) {
        return Err(Error::IndexOutOfRange(vertex).into());
    }
    let direction = match dir {
        Dir::Minus => TauDirection::Minus,
        Dir::Plus => TauDirection::Plus,
    };
    let pres = c2_presentation(cfg.field);
    let mut orbit = Vec::with_capacity(steps + 1);
    for (m, w) in tau_orbit(direction, vertex - 1, steps)?.into_iter().enumerate() {
        let entry = match emit {
            Emit::Strings => json!({ "step": m, "string": w.to_string() }),
            Emit::Ranks => json!({ "step": m, "rank": rank_of_string(&pres, &w)? }),
            Emit::Modules => {
                let module = string_module(&pres, &w)?;
                json!({ "step": m, "string": w.to_string(), "module": module.to_json(&pres) })
            }
        };
        orbit.push(entry);
    }
    let dir = if direction == TauDirection::Minus { "minus" } else { "plus" };
    Ok(pretty(&json!({ "dir": dir, "vertex": vertex, "orbit": orbit })))
}

fn repro_b3(cfg: &Config) -> CliResult<String> {
    let d = b3();
    let braid = schur_roots(cfg, &d, 3)?;
    let absolute = schur_absolute(&d, 3)?;
    let duals: Vec<Value> = braid
        .roots
        .iter()
        .map(|r| Ok(json!({ "root": r, "dual": dual_root(&d, r)? })))
        .collect::<Result<_>>()?;
    let atlas = atlas(cfg, &d)?;
    let mut modules = Vec::with_capacity(atlas.len());
    for (r, m) in &atlas.entries {
        let end = end_algebra(&atlas.pres, m)?;
        let brick = brick_of(&atlas.pres, m)?;
        modules.push(json!({
            "rank": r,
            "dims": m.dims,
            "euler_form": d.euler_form(r, r)?,
            "end": end,
            "brick_dims": brick.dims,
            "is_brick": brick.is_brick,
        }));
    }
    let pairs = support_tilting_pairs(&atlas, cfg.parallel)?;
    let g = exchange_graph(d.rank(), &pairs);
    let check = check_graph(&g, d.rank());
    Ok(pretty(&json!({
        "datum": d.to_json(),
        "schur_roots": braid.roots,
        "methods_agree": braid.roots == absolute.roots,
        "dual_roots": duals,
        "atlas": modules,
        "exchange_graph": {
            "vertices": g.vertices.len(),
            "edges": g.edges.len(),
            "regular": check.regular,
            "degree": check.degree,
            "connected": check.connected,
        },
    })))
}

fn repro_c2(cfg: &Config, steps: usize) -> CliResult<String> {
    let pres = c2_presentation(cfg.field);
    let d = pres.data().clone();
    let mut rows = Vec::with_capacity(steps + 1);
    for n in 0..=steps {
        let w = tau_string(TauDirection::Minus, 2, 2 * n + 1)?;
        let alpha = rank_of_string(&pres, &w)?.ok_or(Error::NotLocallyFree)?;
        let brick = brick_of(&pres, &string_module(&pres, &w)?)?;
        rows.push(json!({
            "n": n,
            "alpha": alpha,
            "alpha_tilde": brick.dims,
            "euler_form": d.euler_form(&alpha, &alpha)?,
            "is_brick": brick.is_brick,
        }));
    }
    Ok(pretty(&json!({ "datum": d.to_json(), "family": rows })))
}
