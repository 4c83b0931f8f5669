//! `platsurf`: unfoldings of the Platonic solids, Veech group orbits and
//! closed saddle connections on the unfolded dodecahedron.
//!
//! Usage errors exit with status 2, computation errors with status 1.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use platsurf::exactnum::Nf;
use platsurf::orbit::{inverse_word, DEFAULT_CAP};
use platsurf::origami::{veech_data, Convention};
use platsurf::planar::{generator_r, word_matrix, Vec2};
use platsurf::platonic::{
    build_unfolding, monodromy_generators, monodromy_group_order, origami_of, unfolding_data, Solid,
};
use platsurf::render::{render_svg, RenderOptions};
use platsurf::saddle::{
    classify_closed_saddles, closed_classes, combinatorial_length, corner_for_direction, rosen_reduce, trace_separatrix, SaddleKind, REDUCTION_STEPS,
};
use platsurf::teichcurve::topology_over_pi5;
use platsurf_cli::pipeline::{
    check_precision, compute_orbit, dodecahedron_surface, load_orbit, save_orbit, sig, top_corner,
    ClassIndex,
};
use platsurf_cli::verify::run_all;
use serde_json::json;

/// Environment variable naming the directory for relative output paths.
const OUT_DIR_VAR: &str = "PLATSURF_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "platsurf", version, about = "Translation surfaces of the Platonic solids")]
struct Cli {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Significant digits of floating point output (at least 6).
    #[arg(long, global = true, default_value_t = 6, value_parser = parse_precision)]
    precision: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the unfolding of a solid and report its stratum and genus.
    Unfold {
        #[arg(long, default_value = "dodecahedron")]
        solid: Solid,
        /// Write the surface as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the polygon net as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Monodromy permutations of the unfolding and the order of their group.
    Perms {
        #[arg(long, default_value = "dodecahedron")]
        solid: Solid,
    },
    /// Teichmüller curve data of the four arithmetic solids as CSV.
    OrigamiTable {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the orbit of the unfolded dodecahedron under R and T.
    Orbit {
        #[arg(long, default_value = "orbit.json")]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Genus, cusps and cone points of the Teichmüller curve.
    Teich {
        /// Orbit file; computed when absent.
        #[arg(long)]
        orbit: Option<PathBuf>,
    },
    /// Classes of closed saddle connections as CSV.
    Saddles {
        #[arg(long, default_value = "long")]
        kind: SaddleKind,
        #[arg(long)]
        orbit: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trace the separatrix with holonomy R^k w^-1 (2 phi, 0) on the unfolded
    /// dodecahedron, leaving the top vertex of the first upright pentagon.
    Trace {
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_crossings: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Reduce a holonomy vector to the horizontal.
    Reduce {
        /// Coordinates as "c0,c1,c2,c3;d0,d1,d2,d3" (coefficients of 1, s, s^2, s^3).
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        /// Orbit file used to report the class of the vector.
        #[arg(long)]
        orbit: Option<PathBuf>,
    },
    /// Run the full acceptance suite.
    VerifyAll {
        /// Orbit cache; defaults to orbit.json in the output directory.
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Recompute the orbit even if the cache exists.
        #[arg(long)]
        no_cache: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn parse_precision(text: &str) -> Result<usize> {
    check_precision(text.parse()?)
}

/// Resolves a relative output path against the output directory variable.
fn out_path(p: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if p.is_relative() => Path::new(&dir).join(p),
        _ => p.to_path_buf(),
    }
}

fn write_file(p: &Path, contents: &str) -> Result<PathBuf> {
    let p = out_path(p);
    if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(&p, contents).with_context(|| format!("writing {}", p.display()))?;
    Ok(p)
}

fn emit(out: Option<&Path>, contents: &str) -> Result<()> {
    match out {
        Some(p) => {
            let p = write_file(p, contents)?;
            eprintln!("wrote {}", p.display());
        }
        None => std::io::stdout().write_all(contents.as_bytes())?,
    }
    Ok(())
}

fn print_json(v: &serde_json::Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn orbit_from(path: Option<&Path>) -> Result<platsurf::orbit::OrbitTable> {
    match path {
        Some(p) => load_orbit(p),
        None => compute_orbit(DEFAULT_CAP),
    }
}

fn parse_vector(text: &str) -> Result<Vec2> {
    let (x, y) = text.split_once(';').context("vector must be \"x-coefficients;y-coefficients\"")?;
    Ok(Vec2::new(x.parse::<Nf>()?, y.parse::<Nf>()?))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let digits = cli.precision;
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring the thread pool")?;
    }
    match cli.command {
        Command::Unfold { solid, json, svg } => {
            let u = build_unfolding(solid)?;
            let data = unfolding_data(&u);
            print_json(&json!({
                "solid": solid.name(),
                "polygons": u.surface.num_polygons(),
                "stratum": data.stratum_string(),
                "genus": data.genus,
            }))?;
            if let Some(p) = json {
                write_file(&p, &u.surface.to_json_string())?;
            }
            if let Some(p) = svg {
                write_file(&p, &render_svg(&u.surface, &[], &RenderOptions::default()))?;
            }
        }
        Command::Perms { solid } => {
            let gens = monodromy_generators(solid)?;
            print_json(&json!({
                "solid": solid.name(),
                "degree": gens.first().map_or(0, |g| g.len()),
                "generators": gens.iter().map(|g| g.to_one_based()).collect::<Vec<_>>(),
                "group_order": monodromy_group_order(solid)?,
            }))?;
        }
        Command::OrigamiTable { out } => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["solid", "index", "cusps", "cusp_widths", "nu2", "nu3", "genus"])?;
            for s in [Solid::Tetrahedron, Solid::Octahedron, Solid::Cube, Solid::Icosahedron] {
                let v = veech_data(&origami_of(s)?, Convention::Geometric)?;
                let widths = v.cusp_widths.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
                w.write_record([
                    s.name().to_string(),
                    v.index.to_string(),
                    v.cusps().to_string(),
                    widths,
                    v.nu2.to_string(),
                    v.nu3.to_string(),
                    v.genus.to_string(),
                ])?;
            }
            emit(out.as_deref(), &String::from_utf8(w.into_inner()?)?)?;
        }
        Command::Orbit { out, cap } => {
            let table = compute_orbit(cap)?;
            let p = out_path(&out);
            save_orbit(&table, &p)?;
            print_json(&json!({ "N": table.len(), "out": p.display().to_string() }))?;
        }
        Command::Teich { orbit } => {
            let table = orbit_from(orbit.as_deref())?;
            let c = topology_over_pi5(table.r()?, table.t()?)?;
            print_json(&serde_json::to_value(&c)?)?;
        }
        Command::Saddles { kind, orbit, out } => {
            let table = orbit_from(orbit.as_deref())?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["id", "word", "k", "x", "y", "length", "approx_x", "approx_y"])?;
            match kind {
                SaddleKind::Long => {
                    for r in classify_closed_saddles(&table)? {
                        let [x, y] = r.holonomy_strings();
                        w.write_record([
                            r.id.to_string(),
                            r.word.clone(),
                            r.k.to_string(),
                            x,
                            y,
                            sig(r.length, digits),
                            sig(r.approx.0, digits),
                            sig(r.approx.1, digits),
                        ])?;
                    }
                }
                SaddleKind::Short => {
                    // Short saddle connections carry no normalized holonomy, so
                    // only the id and word columns are filled.
                    for (i, (_, word)) in closed_classes(&table, SaddleKind::Short)?.into_iter().enumerate() {
                        w.write_record([(i + 1).to_string(), word, String::new(), String::new(), String::new(), String::new(), String::new(), String::new()])?;
                    }
                }
            }
            emit(out.as_deref(), &String::from_utf8(w.into_inner()?)?)?;
        }
        Command::Trace { word, k, max_crossings, svg } => {
            let s = dodecahedron_surface()?;
            let start = top_corner(&s)?;
            let v = generator_r()
                .pow((k % 10) as u32)
                .mul(&word_matrix(&inverse_word(&word))?)
                .act(&SaddleKind::Long.horizontal_holonomy());
            let start = corner_for_direction(&s, start.0, start.1, &v)?;
            let tr = trace_separatrix(&s, start, &v, max_crossings)?;
            print_json(&json!({
                "direction": [v.x.to_poly_string(), v.y.to_poly_string()],
                "start": [start.0, start.1],
                "closed": tr.closed,
                "crossings": tr.crossings,
                "combinatorial_length": combinatorial_length(&v).ok(),
                "length": tr.holonomy.as_ref().map(|h| sig(h.length_f64(), digits)),
            }))?;
            if let Some(p) = svg {
                write_file(&p, &render_svg(&s, &tr.segments, &RenderOptions::default()))?;
            }
        }
        Command::Reduce { vector, orbit } => {
            let v = parse_vector(&vector)?;
            let red = rosen_reduce(&v, REDUCTION_STEPS)?;
            let mut report = json!({
                "kind": format!("{:?}", red.kind).to_lowercase(),
                "reduction_word": red.word,
                "matrix_word": inverse_word(&red.word),
                "terminal": [red.terminal.x.to_poly_string(), red.terminal.y.to_poly_string()],
                "length": sig(v.length_f64(), digits),
            });
            if red.kind == SaddleKind::Long {
                report["combinatorial_length"] = json!(combinatorial_length(&v).ok());
            }
            if let Some(p) = orbit {
                let table = load_orbit(&p)?;
                let idx = ClassIndex::new(&table)?;
                let c = idx.class_of_word(&table, &red.word)?;
                let closed = closed_classes(&table, red.kind)?.iter().any(|(x, _)| *x == c);
                report["class"] = json!(c);
                report["closed"] = json!(closed);
            }
            print_json(&report)?;
        }
        Command::VerifyAll { cache, no_cache } => {
            let cache = if no_cache { None } else { Some(out_path(&cache.unwrap_or_else(|| PathBuf::from("orbit.json")))) };
            let outcomes = run_all(cache.as_deref(), |o| println!("{}", o.line()));
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            println!("{} of {} criteria passed", outcomes.len() - failed, outcomes.len());
            if failed > 0 {
                bail!("{failed} acceptance criteria failed");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
