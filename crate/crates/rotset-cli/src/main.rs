//! `rotset` — compute rotation sets of lifted torus maps from the command
//! line: orbit-segment sampling, grid discretization, asymptotic unions,
//! mean vectors, hulls of point files, and the nine canned reference
//! experiments. Every run writes CSV data plus a JSON report (and an SVG
//! scatter with `--plot`); all computation is deterministic for a given
//! config, whatever the thread count.

mod config;
mod mapspec;
mod presets;
mod report;
mod svg;

use std::fs::File;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use rotset::discretize::{
    asymptotic_union, discretized_rotation_set, DiscretizedRotationSet, MAX_GRID_SIDE,
};
use rotset::geometry::{convex_hull, hausdorff, ConvexPolygon, SetRef};
use rotset::observable::{
    mean_rotation_vector, sample_observable, RotationSample, SamplingPlan, StartMode,
    DEFAULT_QUADRATURE_SIDE, DEFAULT_RANDOM_COUNT, DEFAULT_SEED, DEFAULT_SEGMENT_LEN,
};
use rotset::Vec2;
use serde_json::json;

use config::ConfigFile;
use mapspec::{parse_map, slug, ParsedMap};
use presets::{Action, ObsCheck};
use report::{RationalRow, Report, Vectors};

#[derive(Parser)]
#[command(
    name = "rotset",
    version,
    about = "Rotation sets of lifted torus maps: orbit sampling and grid discretization"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rotation vectors of sampled orbit segments
    Observable(ObservableArgs),
    /// Exact rational rotation vectors of one grid discretization
    Discretized(DiscretizedArgs),
    /// Union of discretized rotation sets over a range of grid sides
    Asymptotic(AsymptoticArgs),
    /// Mean rotation vector by midpoint quadrature over the torus
    Mean(MeanArgs),
    /// Convex hull (and reference distance) of points read from a CSV
    Hull(HullArgs),
    /// Re-run one of the nine reference experiments
    Reproduce(ReproduceArgs),
}

#[derive(clap::Args)]
struct Shared {
    /// Config file of `key = value` lines mirroring the flags; flags win
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Output directory (default: $ROTSET_OUT_DIR, else the working dir)
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Worker threads; a performance knob only, results never depend on it
    #[arg(long, value_name = "N")]
    threads: Option<usize>,
    /// Also write an SVG scatter plot
    #[arg(long)]
    plot: bool,
}

#[derive(clap::Args)]
struct MapArgs {
    /// Builtin map, optionally with positional parameters after a colon
    /// (translation:DX,DY; p:ALPHA; q:BETA; r|f1|f2:ALPHA,BETA)
    #[arg(long, value_name = "SPEC")]
    map: Option<String>,
    /// Named map parameter override, repeatable (e.g. --param alpha=0.002)
    #[arg(long, value_name = "KEY=VALUE")]
    param: Vec<String>,
}

#[derive(clap::Args)]
struct ObservableArgs {
    #[command(flatten)]
    shared: Shared,
    #[command(flatten)]
    map: MapArgs,
    /// Number of random starting points (default 1000)
    #[arg(long, value_name = "N", conflicts_with = "grid")]
    random: Option<u32>,
    /// Take all N² points of the N×N grid as starts instead
    #[arg(long, value_name = "N")]
    grid: Option<u32>,
    /// Orbit segment length (default 1000)
    #[arg(long, value_name = "T")]
    length: Option<u32>,
    /// Seed for random starts (default 1)
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(clap::Args)]
struct DiscretizedArgs {
    #[command(flatten)]
    shared: Shared,
    #[command(flatten)]
    map: MapArgs,
    /// Grid side (default 100)
    #[arg(long, value_name = "N")]
    n: Option<u32>,
    /// Reference region to measure against: unit-square or segment:AX,AY,BX,BY
    #[arg(long, value_name = "REGION")]
    reference: Option<String>,
}

#[derive(clap::Args)]
struct AsymptoticArgs {
    #[command(flatten)]
    shared: Shared,
    #[command(flatten)]
    map: MapArgs,
    /// Smallest grid side (default 100)
    #[arg(long = "n-min", value_name = "N")]
    n_min: Option<u32>,
    /// Largest grid side (default 200)
    #[arg(long = "n-max", value_name = "N")]
    n_max: Option<u32>,
    /// Side increment (default 10)
    #[arg(long, value_name = "STEP")]
    step: Option<u32>,
    /// Reference region to measure against: unit-square or segment:AX,AY,BX,BY
    #[arg(long, value_name = "REGION")]
    reference: Option<String>,
}

#[derive(clap::Args)]
struct MeanArgs {
    #[command(flatten)]
    shared: Shared,
    #[command(flatten)]
    map: MapArgs,
    /// Quadrature grid side (default 1024)
    #[arg(long, value_name = "N")]
    side: Option<u32>,
}

#[derive(clap::Args)]
struct HullArgs {
    #[command(flatten)]
    shared: Shared,
    /// CSV of points; takes the vx,vy columns, or x,y as a fallback
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Reference region to measure against: unit-square or segment:AX,AY,BX,BY
    #[arg(long, value_name = "REGION")]
    reference: Option<String>,
}

#[derive(clap::Args)]
struct ReproduceArgs {
    #[command(flatten)]
    shared: Shared,
    /// Experiment number, 1–9
    #[arg(value_name = "FIGURE")]
    figure: u8,
    /// Run at the full reference scale instead of the desk-size default
    #[arg(long)]
    full: bool,
    /// Rescale the number of starts / the grid side (reference checks are
    /// evaluated only at the reference scale)
    #[arg(long, value_name = "FACTOR")]
    scale: Option<f64>,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run() -> Result<u8> {
    match Cli::parse().cmd {
        Cmd::Observable(a) => cmd_observable(a),
        Cmd::Discretized(a) => cmd_discretized(a),
        Cmd::Asymptotic(a) => cmd_asymptotic(a),
        Cmd::Mean(a) => cmd_mean(a),
        Cmd::Hull(a) => cmd_hull(a),
        Cmd::Reproduce(a) => cmd_reproduce(a),
    }
}

/// Output dir, plot toggle, and thread pool, resolved from flags, config
/// file, and environment.
struct Ctx {
    out: PathBuf,
    plot: bool,
}

fn load_config(shared: &Shared) -> Result<ConfigFile> {
    match &shared.config {
        Some(path) => ConfigFile::load(path),
        None => Ok(ConfigFile::empty()),
    }
}

fn resolve_shared(shared: Shared, cfg: &mut ConfigFile, default_plot: bool) -> Result<Ctx> {
    let out = cfg
        .resolve(shared.out, "out")?
        .or_else(|| std::env::var_os("ROTSET_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    let plot_flag = if shared.plot { Some(true) } else { None };
    let plot = cfg.resolve(plot_flag, "plot")?.unwrap_or(default_plot);
    if let Some(threads) = cfg.resolve(shared.threads, "threads")? {
        if threads == 0 {
            bail!("--threads must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("initializing the thread pool")?;
    }
    std::fs::create_dir_all(&out)
        .with_context(|| format!("creating output directory {}", out.display()))?;
    Ok(Ctx { out, plot })
}

fn resolve_map(args: MapArgs, cfg: &mut ConfigFile) -> Result<ParsedMap> {
    let spec = cfg.resolve(args.map, "map")?.context("--map is required")?;
    let params = if args.param.is_empty() {
        match cfg.resolve(None::<String>, "param")? {
            Some(list) => list.split(',').map(str::to_string).collect(),
            None => Vec::new(),
        }
    } else {
        cfg.resolve(Some(String::new()), "param")?; // flag wins; consume the key
        args.param
    };
    parse_map(&spec, &params)
}

fn parse_reference(spec: &str) -> Result<ConvexPolygon> {
    if spec == "unit-square" {
        return Ok(ConvexPolygon::unit_square());
    }
    if let Some(rest) = spec.strip_prefix("segment:") {
        let vals: Vec<f64> = rest
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .with_context(|| format!("reference `{spec}`: bad number"))?;
        if vals.len() != 4 {
            bail!("reference `segment:` needs AX,AY,BX,BY");
        }
        return Ok(ConvexPolygon::segment(
            Vec2::new(vals[0], vals[1]),
            Vec2::new(vals[2], vals[3]),
        ));
    }
    bail!("unknown reference `{spec}` (expected unit-square or segment:AX,AY,BX,BY)");
}

fn write_json(ctx: &Ctx, stem: &str, rep: &Report) -> Result<()> {
    let path = ctx.out.join(format!("{stem}.json"));
    rep.write(&path)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn maybe_plot(
    ctx: &Ctx,
    stem: &str,
    title: &str,
    points: &[Vec2],
    hull: Option<&[Vec2]>,
) -> Result<()> {
    if !ctx.plot {
        return Ok(());
    }
    let path = ctx.out.join(format!("{stem}.svg"));
    std::fs::write(&path, svg::scatter(points, hull, title))
        .with_context(|| format!("writing {}", path.display()))?;
    println!("wrote {}", path.display());
    Ok(())
}

/// Measure the hull of the computed set against a reference region; the
/// distance reported is between the two filled regions.
fn reference_distance(
    rep: &mut Report,
    hull: &ConvexPolygon,
    reference: Option<&str>,
) -> Result<()> {
    let Some(spec) = reference else { return Ok(()) };
    let region = parse_reference(spec)?;
    let d = hausdorff(SetRef::Region(hull), SetRef::Region(&region))?;
    println!("Hausdorff(hull, {spec}) = {d:.6}");
    rep.reference = Some(spec.to_string());
    rep.hausdorff_to_reference = Some(d);
    Ok(())
}

fn plural(count: usize) -> &'static str {
    if count == 1 {
        ""
    } else {
        "s"
    }
}

fn plan_description(plan: &SamplingPlan) -> String {
    match plan.mode {
        StartMode::Random { count } => {
            format!(
                "{count} random orbit{} of length {} (seed {})",
                plural(count as usize),
                plan.len,
                plan.seed
            )
        }
        StartMode::Grid { side } => {
            format!("{side}×{side} grid of starts, orbits of length {}", plan.len)
        }
    }
}

fn observable_core(
    ctx: &Ctx,
    pm: &ParsedMap,
    plan: SamplingPlan,
    stem: &str,
    title: &str,
    config: serde_json::Value,
) -> Result<(Report, Vec<RotationSample>)> {
    let t0 = Instant::now();
    let samples = sample_observable(&pm.map, &plan)?;
    let wall = t0.elapsed().as_millis();
    println!("{}: {} in {wall} ms", pm.spec, plan_description(&plan));
    let points: Vec<Vec2> = samples.iter().map(|s| s.vector).collect();
    let hull = convex_hull(&points)?;
    let csv = ctx.out.join(format!("{stem}.csv"));
    rotset::report::write_samples(
        File::create(&csv).with_context(|| format!("creating {}", csv.display()))?,
        &samples,
    )?;
    println!("wrote {}", csv.display());
    maybe_plot(ctx, stem, title, &points, Some(hull.vertices()))?;
    let mut rep = Report::new("observable", config);
    rep.wall_ms = wall;
    rep.hull = Some((&hull).into());
    rep.vectors = Vectors::Real { entries: samples.clone() };
    Ok((rep, samples))
}

fn rational_rows(set: &DiscretizedRotationSet) -> Vec<RationalRow> {
    set.vectors
        .iter()
        .map(|e| RationalRow {
            num_x: e.vector.num_x(),
            num_y: e.vector.num_y(),
            den: e.vector.den(),
            vector: e.vector.to_vec2(),
            side: Some(set.side),
            min_period: Some(e.min_period),
            multiplicity: Some(e.multiplicity),
            basin_size: Some(e.basin_size),
            grid_count: None,
        })
        .collect()
}

fn discretized_core(
    ctx: &Ctx,
    pm: &ParsedMap,
    n: u32,
    reference: Option<&str>,
    stem: &str,
    title: &str,
    config: serde_json::Value,
) -> Result<(Report, DiscretizedRotationSet)> {
    if !(1..=MAX_GRID_SIDE).contains(&n) {
        bail!("grid side must be in 1..={MAX_GRID_SIDE}, got {n}");
    }
    let t0 = Instant::now();
    let set = discretized_rotation_set(&pm.map, n)?;
    let wall = t0.elapsed().as_millis();
    println!(
        "{}: grid {n}×{n} has {} cycle{}, {} distinct rotation vector{} ({wall} ms)",
        pm.spec,
        set.cycles.len(),
        plural(set.cycles.len()),
        set.vectors.len(),
        plural(set.vectors.len())
    );
    let points = set.vector_points();
    let hull = convex_hull(&points)?;
    let csv = ctx.out.join(format!("{stem}.csv"));
    rotset::report::write_discretized(
        File::create(&csv).with_context(|| format!("creating {}", csv.display()))?,
        &set,
    )?;
    println!("wrote {}", csv.display());
    maybe_plot(ctx, stem, title, &points, Some(hull.vertices()))?;
    let mut rep = Report::new("discretized", config);
    rep.wall_ms = wall;
    rep.hull = Some((&hull).into());
    rep.vectors = Vectors::Rational { entries: rational_rows(&set) };
    reference_distance(&mut rep, &hull, reference)?;
    Ok((rep, set))
}

fn asymptotic_core(
    ctx: &Ctx,
    pm: &ParsedMap,
    range: (u32, u32, u32),
    reference: Option<&str>,
    stem: &str,
    title: &str,
    config: serde_json::Value,
) -> Result<(Report, Vec<Vec2>)> {
    let (n_min, n_max, step) = range;
    if n_min < 1 || n_min > n_max {
        bail!("need 1 <= n-min <= n-max, got {n_min}..{n_max}");
    }
    if n_max > MAX_GRID_SIDE {
        bail!("grid side must be at most {MAX_GRID_SIDE}, got {n_max}");
    }
    if step < 1 {
        bail!("--step must be at least 1");
    }
    let t0 = Instant::now();
    let union = asymptotic_union(&pm.map, n_min, n_max, step)?;
    let wall = t0.elapsed().as_millis();
    println!(
        "{}: union over {} grid{} ({n_min}..={n_max} step {step}) has {} distinct vector{} ({wall} ms)",
        pm.spec,
        union.sets.len(),
        plural(union.sets.len()),
        union.union.len(),
        plural(union.union.len())
    );
    for set in &union.sets {
        let csv = ctx.out.join(format!("{stem}_n{}.csv", set.side));
        rotset::report::write_discretized(
            File::create(&csv).with_context(|| format!("creating {}", csv.display()))?,
            set,
        )?;
    }
    println!(
        "wrote {} per-grid CSV{} under {}",
        union.sets.len(),
        plural(union.sets.len()),
        ctx.out.display()
    );
    let csv = ctx.out.join(format!("{stem}_union.csv"));
    rotset::report::write_union(
        File::create(&csv).with_context(|| format!("creating {}", csv.display()))?,
        &union,
    )?;
    println!("wrote {}", csv.display());
    let points: Vec<Vec2> = union.union.iter().map(|e| e.vector.to_vec2()).collect();
    let hull = convex_hull(&points)?;
    maybe_plot(ctx, stem, title, &points, Some(hull.vertices()))?;
    let rows: Vec<RationalRow> = union
        .union
        .iter()
        .map(|e| RationalRow {
            num_x: e.vector.num_x(),
            num_y: e.vector.num_y(),
            den: e.vector.den(),
            vector: e.vector.to_vec2(),
            side: None,
            min_period: None,
            multiplicity: None,
            basin_size: None,
            grid_count: Some(e.grid_count),
        })
        .collect();
    let mut rep = Report::new("asymptotic", config);
    rep.wall_ms = wall;
    rep.hull = Some((&hull).into());
    rep.vectors = Vectors::Rational { entries: rows };
    reference_distance(&mut rep, &hull, reference)?;
    Ok((rep, points))
}

fn cmd_observable(a: ObservableArgs) -> Result<u8> {
    let mut cfg = load_config(&a.shared)?;
    let ctx = resolve_shared(a.shared, &mut cfg, false)?;
    let pm = resolve_map(a.map, &mut cfg)?;
    let random = cfg.resolve(a.random, "random")?;
    let grid = cfg.resolve(a.grid, "grid")?;
    let length = cfg.resolve(a.length, "length")?.unwrap_or(DEFAULT_SEGMENT_LEN);
    let seed = cfg.resolve(a.seed, "seed")?.unwrap_or(DEFAULT_SEED);
    cfg.finish()?;
    if length == 0 {
        bail!("--length must be at least 1");
    }
    let plan = match (random, grid) {
        (Some(_), Some(_)) => bail!("--random and --grid are mutually exclusive"),
        (None, Some(side)) => {
            if side == 0 {
                bail!("--grid must be at least 1");
            }
            SamplingPlan::grid(side, length)
        }
        (count, None) => {
            let count = count.unwrap_or(DEFAULT_RANDOM_COUNT);
            if count == 0 {
                bail!("--random must be at least 1");
            }
            SamplingPlan::random(count, length, seed)
        }
    };
    let stem = format!("observable_{}", slug(&pm.spec));
    let title = format!("observable rotation set, {}: {}", pm.spec, plan_description(&plan));
    let config = json!({
        "map": pm.spec, "overrides": pm.overrides,
        "random": matches!(plan.mode, StartMode::Random { .. }).then(|| plan.start_count()),
        "grid": match plan.mode { StartMode::Grid { side } => Some(side), _ => None },
        "length": length, "seed": seed,
    });
    let (rep, _) = observable_core(&ctx, &pm, plan, &stem, &title, config)?;
    write_json(&ctx, &stem, &rep)?;
    Ok(0)
}

fn cmd_discretized(a: DiscretizedArgs) -> Result<u8> {
    let mut cfg = load_config(&a.shared)?;
    let ctx = resolve_shared(a.shared, &mut cfg, false)?;
    let pm = resolve_map(a.map, &mut cfg)?;
    let n = cfg.resolve(a.n, "n")?.unwrap_or(100);
    let reference = cfg.resolve(a.reference, "reference")?;
    cfg.finish()?;
    let stem = format!("discretized_{}_n{n}", slug(&pm.spec));
    let title = format!("discretized rotation set, {} on the {n}×{n} grid", pm.spec);
    let config = json!({
        "map": pm.spec, "overrides": pm.overrides, "n": n, "reference": reference,
    });
    let (rep, _) = discretized_core(&ctx, &pm, n, reference.as_deref(), &stem, &title, config)?;
    write_json(&ctx, &stem, &rep)?;
    Ok(0)
}

fn cmd_asymptotic(a: AsymptoticArgs) -> Result<u8> {
    let mut cfg = load_config(&a.shared)?;
    let ctx = resolve_shared(a.shared, &mut cfg, false)?;
    let pm = resolve_map(a.map, &mut cfg)?;
    let n_min = cfg.resolve(a.n_min, "n-min")?.unwrap_or(100);
    let n_max = cfg.resolve(a.n_max, "n-max")?.unwrap_or(200);
    let step = cfg.resolve(a.step, "step")?.unwrap_or(10);
    let reference = cfg.resolve(a.reference, "reference")?;
    cfg.finish()?;
    let stem = format!("asymptotic_{}_{n_min}_{n_max}_{step}", slug(&pm.spec));
    let title =
        format!("asymptotic discretized rotation set, {}: grids {n_min}..{n_max}", pm.spec);
    let config = json!({
        "map": pm.spec, "overrides": pm.overrides,
        "n-min": n_min, "n-max": n_max, "step": step, "reference": reference,
    });
    let (rep, _) = asymptotic_core(
        &ctx,
        &pm,
        (n_min, n_max, step),
        reference.as_deref(),
        &stem,
        &title,
        config,
    )?;
    write_json(&ctx, &stem, &rep)?;
    Ok(0)
}

fn cmd_mean(a: MeanArgs) -> Result<u8> {
    let mut cfg = load_config(&a.shared)?;
    let ctx = resolve_shared(a.shared, &mut cfg, false)?;
    let pm = resolve_map(a.map, &mut cfg)?;
    let side = cfg.resolve(a.side, "side")?.unwrap_or(DEFAULT_QUADRATURE_SIDE);
    cfg.finish()?;
    if side == 0 {
        bail!("--side must be at least 1");
    }
    let t0 = Instant::now();
    let v = mean_rotation_vector(&pm.map, side);
    let wall = t0.elapsed().as_millis();
    println!("mean rotation vector of {} = {v} ({side}×{side} quadrature, {wall} ms)", pm.spec);
    let mut rep = Report::new(
        "mean",
        json!({ "map": pm.spec, "overrides": pm.overrides, "side": side }),
    );
    rep.wall_ms = wall;
    rep.mean_vector = Some(v);
    let stem = format!("mean_{}", slug(&pm.spec));
    write_json(&ctx, &stem, &rep)?;
    Ok(0)
}

fn cmd_hull(a: HullArgs) -> Result<u8> {
    let mut cfg = load_config(&a.shared)?;
    let ctx = resolve_shared(a.shared, &mut cfg, false)?;
    let input = cfg.resolve(a.input, "input")?.context("--input is required")?;
    let reference = cfg.resolve(a.reference, "reference")?;
    cfg.finish()?;
    let points = rotset::report::read_points(
        File::open(&input).with_context(|| format!("opening {}", input.display()))?,
    )?;
    let hull = convex_hull(&points)?;
    println!("{} points, {} hull vertices:", points.len(), hull.vertices().len());
    for v in hull.vertices() {
        println!("  {v}");
    }
    let stem = format!(
        "hull_{}",
        slug(input.file_stem().and_then(|s| s.to_str()).unwrap_or("points"))
    );
    let mut rep = Report::new(
        "hull",
        json!({ "input": input.display().to_string(), "reference": reference }),
    );
    rep.hull = Some((&hull).into());
    reference_distance(&mut rep, &hull, reference.as_deref())?;
    maybe_plot(&ctx, &stem, "convex hull", &points, Some(hull.vertices()))?;
    write_json(&ctx, &stem, &rep)?;
    Ok(0)
}

fn cmd_reproduce(a: ReproduceArgs) -> Result<u8> {
    let mut cfg = load_config(&a.shared)?;
    let ctx = resolve_shared(a.shared, &mut cfg, true)?; // figures plot by default
    let full_flag = if a.full { Some(true) } else { None };
    let full = cfg.resolve(full_flag, "full")?.unwrap_or(false);
    let scale = cfg.resolve(a.scale, "scale")?;
    cfg.finish()?;
    if let Some(s) = scale {
        if !(s > 0.0 && s.is_finite()) {
            bail!("--scale must be a positive number");
        }
    }
    let preset = presets::preset(a.figure)
        .with_context(|| format!("unknown figure {}; expected 1..=9", a.figure))?;
    let fig = preset.fig;
    let stem = format!("fig{fig}");

    let check = match preset.action {
        Action::ObsRandom { map, count, len, check } => {
            let eff = scale.unwrap_or(1.0);
            let count_run = ((count as f64 * eff).round() as u32).max(1);
            let pm = parse_map(map, &[])?;
            let plan = SamplingPlan::random(count_run, len, DEFAULT_SEED);
            let title = format!("figure {fig}: observable rotation set of {map}");
            let config = json!({
                "figure": fig, "map": map, "random": count_run, "length": len,
                "seed": DEFAULT_SEED, "scale": eff,
            });
            let (mut rep, samples) = observable_core(&ctx, &pm, plan, &stem, &title, config)?;
            let outcome = if count_run == count {
                check.map(|c| match c {
                    ObsCheck::CenterCluster => presets::check_center_cluster(&samples),
                    ObsCheck::FiveClusters => presets::check_five_clusters(&samples),
                })
            } else {
                println!("check skipped: run is scaled away from the reference size");
                None
            };
            rep.check = outcome;
            let code = conclude_check(&rep);
            write_json(&ctx, &stem, &rep)?;
            code
        }
        Action::ObsGrid { map, full_side, len } => {
            let eff = scale.unwrap_or(if full { 1.0 } else { 0.2 });
            let side = ((full_side as f64 * eff).round() as u32).max(1);
            let pm = parse_map(map, &[])?;
            let plan = SamplingPlan::grid(side, len);
            let title = format!("figure {fig}: observable rotation set of {map}, grid starts");
            let config = json!({
                "figure": fig, "map": map, "grid": side, "length": len, "scale": eff,
            });
            let (rep, _) = observable_core(&ctx, &pm, plan, &stem, &title, config)?;
            write_json(&ctx, &stem, &rep)?;
            0
        }
        Action::Disc { map, n, hull_eps } => {
            let eff = scale.unwrap_or(1.0);
            let n_run = ((n as f64 * eff).round() as u32).max(1);
            let pm = parse_map(map, &[])?;
            let title = format!("figure {fig}: discretized rotation set of {map}, {n_run}×{n_run}");
            let config = json!({ "figure": fig, "map": map, "n": n_run, "scale": eff });
            let (mut rep, set) = discretized_core(
                &ctx,
                &pm,
                n_run,
                Some("unit-square"),
                &stem,
                &title,
                config,
            )?;
            rep.check = if n_run == n {
                hull_eps.map(|eps| presets::check_hull_near_square(&set.vector_points(), eps))
            } else {
                println!("check skipped: run is scaled away from the reference size");
                None
            };
            let code = conclude_check(&rep);
            write_json(&ctx, &stem, &rep)?;
            code
        }
        Action::Union { map, desk, full: full_range, hull_eps, vertex_eps } => {
            if scale.is_some() {
                bail!("--scale does not apply to figure {fig}; use --full for the long sweep");
            }
            let range = if full { full_range } else { desk };
            let pm = parse_map(map, &[])?;
            let title = format!(
                "figure {fig}: asymptotic discretized rotation set of {map}, grids {}..{}",
                range.0, range.1
            );
            let config = json!({
                "figure": fig, "map": map, "n-min": range.0, "n-max": range.1,
                "step": range.2, "full": full,
            });
            let (mut rep, points) =
                asymptotic_core(&ctx, &pm, range, Some("unit-square"), &stem, &title, config)?;
            rep.check = Some(presets::merge(
                presets::check_hull_near_square(&points, hull_eps),
                presets::check_vertices_hit(&points, vertex_eps),
            ));
            let code = conclude_check(&rep);
            write_json(&ctx, &stem, &rep)?;
            code
        }
    };
    Ok(check)
}

/// Print the check verdict; exit code 2 signals a failed check.
fn conclude_check(rep: &Report) -> u8 {
    match &rep.check {
        None => 0,
        Some(c) => {
            println!("check {}: {}", if c.ok { "PASS" } else { "FAIL" }, c.detail);
            if c.ok {
                0
            } else {
                2
            }
        }
    }
}
