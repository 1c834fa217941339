//! `torwood`: Schnyder woods and drawings of toroidal maps from the command
//! line.
//!
//! Maps are read from `.tmap` files, or `-` for standard input. A map file
//! may carry its wood as trailing `w` lines, which is what `fixture` prints,
//! so `torwood fixture paper3 | torwood wood check -` works.
//!
//! Exit codes: 0 on success, 1 when the input fails a check, 2 on usage
//! errors. Diagnostics go to standard error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use torwood::cover::{self, CoverWindow};
use torwood::embed::{self, FlatDrawing};
use torwood::io::{self as tio, SvgOptions};
use torwood::wood::{self, check_schnyder};
use torwood::{fixtures, wood_builder, Error, TorusMap, Wood};

/// Relative output paths are taken from this directory when it is set.
const OUT_DIR_VAR: &str = "TORWOOD_OUT_DIR";

#[derive(Parser)]
#[command(name = "torwood", version, about = "Schnyder woods of toroidal maps")]
struct Cli {
    /// Print extra progress on standard error.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print counts and structural properties of a map.
    Info { map: PathBuf },
    /// Check that a file describes a toroidal map.
    Validate { map: PathBuf },
    /// Compute, check or dualise Schnyder woods.
    Wood {
        #[command(subcommand)]
        cmd: WoodCmd,
    },
    /// Dump a window of the universal cover.
    Cover {
        map: PathBuf,
        #[arg(long, default_value_t = 1)]
        radius: i64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Region vectors of the vertices in a window of the cover.
    Coords {
        map: PathBuf,
        #[command(flatten)]
        w: WoodArgs,
        #[arg(long, default_value_t = 0)]
        radius: i64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the geodesic embedding on the orthogonal surface and write it
    /// as OBJ.
    Embed {
        map: PathBuf,
        #[command(flatten)]
        w: WoodArgs,
        #[arg(long, default_value_t = 1)]
        radius: i64,
        /// Also check and write the dual embedding.
        #[arg(long)]
        dual: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw the map as SVG.
    Draw {
        map: PathBuf,
        #[command(flatten)]
        w: WoodArgs,
        #[arg(long, value_enum, default_value_t = Mode::Straight)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Plane::Sum)]
        plane: Plane,
        /// Copies drawn, as PxQ.
        #[arg(long, default_value = "2x2", value_parser = parse_window)]
        window: (i64, i64),
        /// Draw the dual too (one-bend mode).
        #[arg(long)]
        dual: bool,
        /// Mark the bends (one-bend mode).
        #[arg(long)]
        bends: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Convert between map kinds.
    Convert {
        #[command(subcommand)]
        cmd: ConvertCmd,
    },
    /// Print a named map with its wood.
    Fixture {
        /// One of 3loops, 2loops, brick, basic(n), paper3.
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print a random essentially 3-connected triangulation.
    Random {
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Avoid loops and multiple edges.
        #[arg(long)]
        simple: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum WoodCmd {
    /// Compute a Schnyder wood.
    Compute {
        map: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a wood against the Schnyder axioms.
    Check {
        map: PathBuf,
        /// Defaults to the `w` lines of the map file.
        wood: Option<PathBuf>,
    },
    /// The dual wood on the dual map.
    Dual {
        map: PathBuf,
        wood: Option<PathBuf>,
        /// Where to write the dual map.
        #[arg(long)]
        map_output: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ConvertCmd {
    /// Put a plane map with three outer roots on the torus.
    Planar {
        pmap: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct WoodArgs {
    /// Wood to use; computed when absent and the map file has none.
    #[arg(long)]
    wood: Option<PathBuf>,
    /// Scale factor of the region vectors, at least the vertex count.
    #[arg(long)]
    scale: Option<i64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Straight,
    OneBend,
}

#[derive(Clone, Copy, ValueEnum)]
enum Plane {
    Sum,
    X,
    Y,
    Z,
}

impl Plane {
    fn normal(self) -> [i64; 3] {
        match self {
            Plane::Sum => [1, 1, 1],
            Plane::X => [1, 0, 0],
            Plane::Y => [0, 1, 0],
            Plane::Z => [0, 0, 1],
        }
    }
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or("expected PxQ")?;
    let p: i64 = a.parse().map_err(|_| "bad P")?;
    let q: i64 = b.parse().map_err(|_| "bad Q")?;
    if p < 1 || q < 1 {
        return Err("window sides must be positive".into());
    }
    Ok((p, q))
}

/// A failed check on valid input, reported with exit code 1.
#[derive(Debug)]
struct Failed(String);

impl std::fmt::Display for Failed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Failed {}

/// Usage problems not caught by the argument parser, exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn lib(e: Error) -> anyhow::Error {
    anyhow::Error::new(Failed(format!("{}: {}", e.code(), e)))
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

/// Split a map file into its map part and its trailing `w` lines.
fn split_bundle(text: &str) -> (String, Option<String>) {
    let (mut map, mut wood) = (String::new(), String::new());
    for l in text.lines() {
        if l.trim_start().starts_with("w ") {
            wood.push_str(l);
            wood.push('\n');
        } else {
            map.push_str(l);
            map.push('\n');
        }
    }
    (map, (!wood.is_empty()).then_some(wood))
}

fn load_map(path: &Path) -> anyhow::Result<(TorusMap, Option<String>)> {
    let (map, wood) = split_bundle(&read_input(path)?);
    let g = tio::parse_tmap(&map).map_err(lib)?;
    Ok((g, wood))
}

fn load_wood(g: &TorusMap, path: Option<&Path>, embedded: Option<String>) -> anyhow::Result<Option<Wood>> {
    let text = match path {
        Some(p) => Some(read_input(p)?),
        None => embedded,
    };
    text.map(|t| tio::parse_wood(&t, g.m()).map_err(lib)).transpose()
}

fn wood_or_compute(g: &TorusMap, w: Option<Wood>, verbose: bool) -> anyhow::Result<Wood> {
    match w {
        Some(w) => {
            check_schnyder(g, &w).map_err(lib)?;
            Ok(w)
        }
        None => {
            if verbose {
                eprintln!("computing a Schnyder wood");
            }
            wood_builder::compute_wood(g).map_err(lib)
        }
    }
}

fn scale_for(g: &TorusMap, scale: Option<i64>) -> anyhow::Result<i64> {
    let n = g.n() as i64;
    match scale {
        Some(s) if s < n => Err(Usage(format!("--scale {} is below the vertex count {}", s, n)).into()),
        Some(s) => Ok(s),
        None => Ok(n),
    }
}

fn emit(output: Option<&Path>, data: &str) -> anyhow::Result<()> {
    match output {
        None => {
            io::stdout().write_all(data.as_bytes()).context("writing standard output")?;
        }
        Some(p) => {
            let p = match std::env::var_os(OUT_DIR_VAR) {
                Some(dir) if p.is_relative() => PathBuf::from(dir).join(p),
                _ => p.to_path_buf(),
            };
            fs::write(&p, data).with_context(|| format!("writing {}", p.display()))?;
        }
    }
    Ok(())
}

fn fixture(name: &str) -> anyhow::Result<(TorusMap, Option<Wood>)> {
    let name = name.to_ascii_lowercase();
    if let Some(rest) = name.strip_prefix("basic") {
        let k = rest.trim_matches(|c| c == '(' || c == ')' || c == ':');
        let n: usize = k.parse().map_err(|_| Usage(format!("bad basic size '{}'", k)))?;
        let g = fixtures::basic(n).map_err(|e| Usage(e.to_string()))?;
        let w = wood_builder::basic_wood(&g).map_err(lib)?;
        return Ok((g, Some(w)));
    }
    Ok(match name.as_str() {
        "3loops" => (fixtures::three_loops(), Some(fixtures::three_loops_wood())),
        "2loops" => (fixtures::two_loops(), Some(fixtures::two_loops_wood())),
        "brick" => (fixtures::brick(), Some(fixtures::brick_wood())),
        "paper3" | "example3" => (fixtures::example3(), Some(fixtures::example3_wood())),
        other => bail!(Usage(format!(
            "unknown fixture '{}' (try 3loops, 2loops, brick, basic(n), paper3)",
            other
        ))),
    })
}

fn bundle(g: &TorusMap, w: Option<&Wood>) -> anyhow::Result<String> {
    let mut s = tio::write_tmap(g);
    if let Some(w) = w {
        s.push_str(&tio::write_wood(w).map_err(lib)?);
    }
    Ok(s)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let verbose = cli.verbose;
    match cli.cmd {
        Cmd::Info { map } => {
            let (g, _) = load_map(&map)?;
            let degrees: Vec<usize> = g.faces().iter().map(|f| f.len()).collect();
            println!("vertices {}", g.n());
            println!("edges {}", g.m());
            println!("faces {}", g.f());
            println!("face degrees {:?}", degrees);
            println!("triangulation {}", g.is_triangulation());
            println!("essentially 3-connected {}", g.is_essentially_3_connected());
            println!("basic {}", g.is_basic());
            println!("loops and multiple edges {}", fixtures::multiplicity_defect(&g));
        }
        Cmd::Validate { map } => {
            let (g, _) = load_map(&map)?;
            if let Some(v) = g.toroidal_graph_violation() {
                bail!(Failed(format!("INVALID_STRUCTURE: {}", v)));
            }
            match g.essential_3_connectivity_violation() {
                None => eprintln!("valid toroidal map, essentially 3-connected"),
                Some(s) => eprintln!("valid toroidal map, not essentially 3-connected: {}", s),
            }
        }
        Cmd::Wood { cmd } => match cmd {
            WoodCmd::Compute { map, output } => {
                let (g, _) = load_map(&map)?;
                let w = wood_builder::compute_wood(&g).map_err(lib)?;
                let t = check_schnyder(&g, &w).map_err(lib)?;
                eprintln!("Type {} wood", t);
                emit(output.as_deref(), &tio::write_wood(&w).map_err(lib)?)?;
            }
            WoodCmd::Check { map, wood } => {
                let (g, embedded) = load_map(&map)?;
                let w = load_wood(&g, wood.as_deref(), embedded)?
                    .ok_or_else(|| Usage("no wood given and none in the map file".into()))?;
                let t = check_schnyder(&g, &w).map_err(lib)?;
                eprintln!("Type {} wood", t);
            }
            WoodCmd::Dual { map, wood, map_output, output } => {
                let (g, embedded) = load_map(&map)?;
                let w = wood_or_compute(&g, load_wood(&g, wood.as_deref(), embedded)?, verbose)?;
                let dw = wood::dual_wood(&g, &w).map_err(lib)?;
                let gd = g.dual();
                let t = check_schnyder(&gd, &dw).map_err(lib)?;
                eprintln!("dual is a Type {} wood", t);
                if let Some(p) = map_output {
                    emit(Some(&p), &tio::write_tmap(&gd))?;
                }
                emit(output.as_deref(), &tio::write_wood(&dw).map_err(lib)?)?;
            }
        },
        Cmd::Cover { map, radius, output } => {
            let (g, _) = load_map(&map)?;
            let w = CoverWindow::new(&g, radius).map_err(lib)?;
            emit(output.as_deref(), &tio::write_cover(&w))?;
        }
        Cmd::Coords { map, w, radius, output } => {
            let (g, embedded) = load_map(&map)?;
            let wd = wood_or_compute(&g, load_wood(&g, w.wood.as_deref(), embedded)?, verbose)?;
            let c = cover::coordinates(&g, &wd, scale_for(&g, w.scale)?).map_err(lib)?;
            emit(output.as_deref(), &tio::write_coords(&g, &c, radius))?;
        }
        Cmd::Embed { map, w, radius, dual, output } => {
            let (g, embedded) = load_map(&map)?;
            let wd = wood_or_compute(&g, load_wood(&g, w.wood.as_deref(), embedded)?, verbose)?;
            let c = cover::coordinates(&g, &wd, scale_for(&g, w.scale)?).map_err(lib)?;
            let scene = embed::geodesic_scene(&g, &c, radius).map_err(lib)?;
            let r = embed::check_geodesic(&g, &wd, &c, &scene).map_err(lib)?;
            eprintln!("geodesic embedding ok, {} of {} arcs overrun their bend", r.overrunning, r.arcs);
            let ds = if dual {
                let ds = embed::dual_scene(&g, &wd, &scene).map_err(lib)?;
                let r = embed::check_dual(&g, &c, &scene, &ds, false).map_err(lib)?;
                eprintln!("dual embedding ok, {} of {} arcs overrun their bend", r.overrunning, r.arcs);
                Some(ds)
            } else {
                None
            };
            emit(output.as_deref(), &tio::write_obj(&scene, ds.as_ref()))?;
        }
        Cmd::Draw { map, w, mode, plane, window, dual, bends, output } => {
            let (g, embedded) = load_map(&map)?;
            let given = load_wood(&g, w.wood.as_deref(), embedded)?;
            let opts = SvgOptions { window, dual, bends, ..SvgOptions::default() };
            let svg = match mode {
                Mode::Straight => draw_straight(&g, given, plane, opts, verbose)?,
                Mode::OneBend => {
                    let wd = wood_or_compute(&g, given, verbose)?;
                    let scale = scale_for(&g, w.scale)?;
                    let (d, r) = embed::one_bend_drawing(&g, &wd, scale, plane.normal(), 1).map_err(lib)?;
                    if r.coincident_bends > 0 && verbose {
                        eprintln!("{} primal and dual bends coincide", r.coincident_bends);
                    }
                    tio::write_svg(&d, Some(&wd), &opts)
                }
            };
            emit(output.as_deref(), &svg)?;
        }
        Cmd::Convert { cmd: ConvertCmd::Planar { pmap, output } } => {
            let p = tio::parse_pmap(&read_input(&pmap)?).map_err(lib)?;
            let g = TorusMap::from_planar_suspension(&p).map_err(lib)?;
            emit(output.as_deref(), &tio::write_tmap(&g))?;
        }
        Cmd::Fixture { name, output } => {
            let (g, w) = fixture(&name)?;
            emit(output.as_deref(), &bundle(&g, w.as_ref())?)?;
        }
        Cmd::Random { n, seed, simple, output } => {
            eprintln!("seed {}", seed);
            let g = if simple {
                fixtures::random_simple_triangulation(n, seed)
            } else {
                fixtures::random_triangulation(n, seed)
            }
            .map_err(|e| Usage(e.to_string()))?;
            emit(output.as_deref(), &tio::write_tmap(&g))?;
        }
    }
    Ok(())
}

/// Straight-line drawing; other maps are triangulated first and the added
/// edges are hidden once the drawing has passed its checks.
fn draw_straight(g: &TorusMap, given: Option<Wood>, plane: Plane, mut opts: SvgOptions, verbose: bool) -> anyhow::Result<String> {
    let (t, added, w) = if g.is_triangulation() {
        let w = wood_or_compute(g, given, verbose)?;
        (g.clone(), Vec::new(), w)
    } else {
        if verbose {
            eprintln!("triangulating {} faces", g.f());
        }
        let (t, added) = g.triangulate().map_err(lib)?;
        let w = wood_builder::compute_wood(&t).map_err(lib)?;
        (t, added, w)
    };
    let d: FlatDrawing = embed::straight_line_drawing(&t, &w, plane.normal(), 1).map_err(lib)?;
    let bad: Vec<i64> = embed::winding_numbers(&t, &d).into_iter().filter(|&k| k != 1).collect();
    if !bad.is_empty() {
        bail!(Failed(format!("EMBEDDING_VIOLATION: winding numbers {:?}", bad)));
    }
    if !added.is_empty() {
        opts.hidden = added;
        opts.vertex_limit = Some(g.n());
    }
    Ok(tio::write_svg(&d, Some(&w), &opts))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {:#}", e);
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
