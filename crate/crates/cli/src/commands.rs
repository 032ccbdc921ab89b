//! Subcommand implementations.

use std::fs;
use std::path::{Path, PathBuf};

use distineq::error::Error as CoreError;
use distineq::forms::eval_forms;
use distineq::geometry::{kelvin_transform, stereographic_lift, PointConfig};
use distineq::optimize::{
    brute_force_min_ratio, cluster_far_stress, critical_residual_threshold, min_augmented_ratio,
    min_critical_residual, min_ratio_over_configs, min_ratio_over_u_with_history,
    min_sigma_over_configs, ObjectiveKind, SearchConfig, SearchOptions, SearchReport,
};
use distineq::report::{
    config_document, csv_table, fmt_f64, forms_document, history_csv, minimize_document,
    parse_config, residual_document, search_report_document, sign_matrix_document,
    spectrum_document, sphere_document, value_document, ParsedConfig,
};
use distineq::systems::{circle_system, critical_residuals, sign_matrix, spectrum, sphere_system};

use crate::args::{parse_f64, parse_f64_list, parse_u64, parse_usize, Args};
use crate::rundir::{unix_ms, RunDir};

pub enum CliError {
    Usage(String),
    Core(CoreError),
    Input(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Input(_) => 2,
            CliError::Core(e) => {
                if e.is_input_error() {
                    2
                } else {
                    3
                }
            }
            CliError::Io(_) => 3,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Usage(m) => format!("usage error: {m}"),
            CliError::Core(e) => format!("error: {e}"),
            CliError::Input(m) => format!("input error: {m}"),
            CliError::Io(e) => format!("io error: {e}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CmdResult = Result<(), CliError>;

/// Global flags shared by all subcommands.
pub struct Context {
    pub out_root: PathBuf,
    pub json: bool,
    pub quiet: bool,
}

impl Context {
    fn emit(&self, run: &mut RunDir, report: &str, human: &[String]) -> CmdResult {
        run.write_artifact("report", "report.json", report)?;
        if self.json {
            println!("{report}");
        }
        if !self.quiet {
            for line in human {
                println!("{line}");
            }
        }
        Ok(())
    }

    fn finish(&self, run: RunDir) -> CmdResult {
        let manifest = run.finalize(env!("CARGO_PKG_VERSION"))?;
        if !self.quiet {
            println!(
                "run recorded at {}",
                manifest.parent().unwrap_or(Path::new(".")).display()
            );
        }
        Ok(())
    }
}

pub fn dispatch(command: &str, args: &mut Args, ctx: &Context) -> CmdResult {
    match command {
        "eval" => cmd_eval(args, ctx),
        "min-u" => cmd_min_u(args, ctx),
        "estimate-c" => cmd_estimate_c(args, ctx),
        "sphere-sigma" => cmd_sphere_sigma(args, ctx),
        "search-sigma" => cmd_search_sigma(args, ctx),
        "critical-residual" => cmd_critical_residual(args, ctx),
        "min-critical" => cmd_min_critical(args, ctx),
        "augmented" => cmd_augmented(args, ctx),
        "sign-matrix" => cmd_sign_matrix(args, ctx),
        "kelvin" => cmd_kelvin(args, ctx),
        "lift" => cmd_lift(args, ctx),
        "stress" => cmd_stress(args, ctx),
        "brute-force" => cmd_brute_force(args, ctx),
        other => Err(CliError::Usage(format!("unknown subcommand '{other}'"))),
    }
}

pub const USAGE: &str = "distineq <subcommand> [flags]

subcommands:
  eval              --config <path> --u <floats>
  min-u             --config <path> [--seed S --restarts R --iters N]
  estimate-c        -p P -m M [--seed S --iters N --min-sep d --max-diam D]
  sphere-sigma      (--config <path> | --angles <floats>)
  search-sigma      -p P -m M [--seed S --iters N --min-sep d]
  critical-residual --config <path> --u <floats>
  min-critical      --config <path> [--seed S --restarts R --iters N]
  augmented         --config <path> (--u <floats> --up <float> | --minimize [--seed S])
  sign-matrix       -p P
  kelvin            --config <path> --center <floats>
  lift              --config <path>
  stress            -p P -m M --separations <floats> [--seed S]
  brute-force       --config <path> [--samples N]

global flags: --out <dir> (default ./runs), --json, --quiet
exit codes: 0 success, 2 invalid input, 3 numerical failure";

// ---------------------------------------------------------------------------
// Input helpers
// ---------------------------------------------------------------------------

fn read_file(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))
}

fn load_euclidean(path: &str) -> Result<PointConfig<f64>, CliError> {
    match parse_config::<f64>(&read_file(path)?)? {
        ParsedConfig::Euclidean(c) => Ok(c),
        ParsedConfig::Sphere(_) => Err(CliError::Input(format!(
            "{path} holds a sphere configuration; expected points in R^m"
        ))),
    }
}

fn weights_flag(args: &mut Args) -> Result<Vec<f64>, CliError> {
    let raw = args.require("--u").map_err(CliError::Usage)?;
    parse_f64_list("--u", raw).map_err(CliError::Usage)
}

/// Draw a seed when none was given; the caller prints and records it.
fn resolve_seed(args: &mut Args) -> Result<(u64, bool), CliError> {
    match args.get("--seed") {
        Some(raw) => Ok((parse_u64("--seed", raw).map_err(CliError::Usage)?, false)),
        None => {
            let entropy = unix_ms() as u64 ^ (std::process::id() as u64) << 32;
            Ok((entropy, true))
        }
    }
}

struct SearchFlags {
    opts: SearchOptions<f64>,
    drawn: bool,
}

fn search_options(
    args: &mut Args,
    default_restarts: usize,
    default_iters: usize,
) -> Result<SearchFlags, CliError> {
    let (seed, drawn) = resolve_seed(args)?;
    let mut opts = SearchOptions::<f64> {
        seed,
        restarts: default_restarts,
        max_iters: default_iters,
        ..SearchOptions::default()
    };
    if let Some(raw) = args.get("--restarts") {
        opts.restarts = parse_usize("--restarts", raw).map_err(CliError::Usage)?;
    }
    if let Some(raw) = args.get("--iters") {
        opts.max_iters = parse_usize("--iters", raw).map_err(CliError::Usage)?;
    }
    if let Some(raw) = args.get("--min-sep") {
        opts.min_separation = parse_f64("--min-sep", raw).map_err(CliError::Usage)?;
    }
    if let Some(raw) = args.get("--max-diam") {
        opts.max_diameter = parse_f64("--max-diam", raw).map_err(CliError::Usage)?;
    }
    if let Some(raw) = args.get("--step") {
        opts.step_init = parse_f64("--step", raw).map_err(CliError::Usage)?;
    }
    if let Some(raw) = args.get("--t0") {
        opts.annealing.initial_temperature = parse_f64("--t0", raw).map_err(CliError::Usage)?;
    }
    if let Some(raw) = args.get("--decay") {
        opts.annealing.decay = parse_f64("--decay", raw).map_err(CliError::Usage)?;
    }
    if let Some(raw) = args.get("--tol") {
        opts.tolerance = parse_f64("--tol", raw).map_err(CliError::Usage)?;
    }
    if let Some(raw) = args.get("--soft-sup") {
        opts.soft_sup = Some(parse_f64("--soft-sup", raw).map_err(CliError::Usage)?);
    }
    if let Some(raw) = args.get("--threads") {
        opts.threads = parse_usize("--threads", raw).map_err(CliError::Usage)?;
    }
    Ok(SearchFlags { opts, drawn })
}

fn options_json(opts: &SearchOptions<f64>, extra: &[(&str, String)]) -> String {
    let mut out = String::from("{");
    for (k, v) in extra {
        out.push_str(&format!("\"{k}\":{v},"));
    }
    let soft = match opts.soft_sup {
        Some(t) => fmt_f64(t),
        None => "null".to_string(),
    };
    out.push_str(&format!(
        "\"seed\":{},\"restarts\":{},\"max_iters\":{},\"step_init\":{},\"min_separation\":{},\"max_diameter\":{},\"initial_temperature\":{},\"decay\":{},\"tolerance\":{},\"soft_sup\":{},\"threads\":{}}}",
        opts.seed,
        opts.restarts,
        opts.max_iters,
        fmt_f64(opts.step_init),
        fmt_f64(opts.min_separation),
        fmt_f64(opts.max_diameter),
        fmt_f64(opts.annealing.initial_temperature),
        fmt_f64(opts.annealing.decay),
        fmt_f64(opts.tolerance),
        soft,
        opts.threads
    ));
    out
}

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn float_list_json(xs: &[f64]) -> String {
    let mut out = String::from("[");
    for (i, &x) in xs.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&fmt_f64(x));
    }
    out.push(']');
    out
}

fn announce_seed(ctx: &Context, seed: u64, drawn: bool) {
    if drawn && !ctx.quiet {
        println!("seed {seed} (drawn)");
    }
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn cmd_eval(args: &mut Args, ctx: &Context) -> CmdResult {
    let path = args
        .require("--config")
        .map_err(CliError::Usage)?
        .to_string();
    let u = weights_flag(args)?;
    args.reject_unused().map_err(CliError::Usage)?;

    let config = load_euclidean(&path)?;
    let ev = eval_forms(&config, &u)?;
    let options = format!(
        "{{\"config\":{},\"u\":{}}}",
        quoted(&path),
        float_list_json(&u)
    );
    let mut run = RunDir::create(&ctx.out_root, "eval", 0, &options)?;
    run.write_artifact("input", "input.json", &config_document(&config))?;
    let report = forms_document(&ev);
    let human = vec![
        format!("ratio = {}", ev.ratio),
        format!(
            "i1 = {}, i2 = {}, sup term {} at index {}",
            ev.i1, ev.i2, ev.sup_value, ev.sup_index
        ),
    ];
    ctx.emit(&mut run, &report, &human)?;
    ctx.finish(run)
}

fn cmd_min_u(args: &mut Args, ctx: &Context) -> CmdResult {
    let path = args
        .require("--config")
        .map_err(CliError::Usage)?
        .to_string();
    let flags = search_options(args, 8, 500)?;
    args.reject_unused().map_err(CliError::Usage)?;
    announce_seed(ctx, flags.opts.seed, flags.drawn);

    let config = load_euclidean(&path)?;
    let outcome = min_ratio_over_u_with_history(&config, &flags.opts)?;
    let value = outcome.value;
    let report = SearchReport {
        seed: flags.opts.seed,
        objective_kind: ObjectiveKind::MinRatio,
        best_value: outcome.value,
        best_config: SearchConfig::Euclidean(config.clone()),
        best_weights: Some(outcome.point),
        iterations_used: outcome.iterations,
        history: outcome.history,
    };
    let options = options_json(&flags.opts, &[("config", quoted(&path))]);
    let mut run = RunDir::create(&ctx.out_root, "min-u", flags.opts.seed, &options)?;
    run.write_artifact("input", "input.json", &config_document(&config))?;
    run.write_artifact("csv", "history.csv", &history_csv(&report.history))?;
    let doc = search_report_document(&report);
    let human = vec![format!("best ratio estimate = {value} (empirical upper bound on the constant for this configuration)")];
    ctx.emit(&mut run, &doc, &human)?;
    ctx.finish(run)
}

fn cmd_estimate_c(args: &mut Args, ctx: &Context) -> CmdResult {
    let p = parse_usize("-p", args.require("--p").map_err(CliError::Usage)?)
        .map_err(CliError::Usage)?;
    let m = parse_usize("-m", args.require("--m").map_err(CliError::Usage)?)
        .map_err(CliError::Usage)?;
    let flags = search_options(args, 4, 120)?;
    args.reject_unused().map_err(CliError::Usage)?;
    announce_seed(ctx, flags.opts.seed, flags.drawn);

    let report = min_ratio_over_configs(p, m, &flags.opts)?;
    let options = options_json(&flags.opts, &[("p", p.to_string()), ("m", m.to_string())]);
    let mut run = RunDir::create(&ctx.out_root, "estimate-c", flags.opts.seed, &options)?;
    run.write_artifact("csv", "history.csv", &history_csv(&report.history))?;
    let doc = search_report_document(&report);
    let human = vec![format!(
        "smallest ratio found for p={p}, m={m}: {} (search evidence only, not a certified constant)",
        report.best_value
    )];
    ctx.emit(&mut run, &doc, &human)?;
    ctx.finish(run)
}

fn cmd_sphere_sigma(args: &mut Args, ctx: &Context) -> CmdResult {
    let config_flag = args.get("--config").map(|s| s.to_string());
    let angles_flag = args.get("--angles").map(|s| s.to_string());
    args.reject_unused().map_err(CliError::Usage)?;

    let (system, input_doc, options) = match (config_flag, angles_flag) {
        (Some(path), None) => {
            let (sphere, doc) = match parse_config::<f64>(&read_file(&path)?)? {
                ParsedConfig::Sphere(s) => {
                    let doc = sphere_document(&s);
                    (s, doc)
                }
                ParsedConfig::Euclidean(c) => {
                    let lifted = stereographic_lift(&c)?;
                    let doc = sphere_document(&lifted);
                    (lifted, doc)
                }
            };
            let options = format!("{{\"config\":{}}}", quoted(&path));
            (sphere_system(&sphere), doc, options)
        }
        (None, Some(raw)) => {
            let angles = parse_f64_list("--angles", &raw).map_err(CliError::Usage)?;
            let system = circle_system(&angles)?;
            let sphere = distineq::systems::circle_config(&angles)?;
            let options = format!("{{\"angles\":{}}}", float_list_json(&angles));
            (system, sphere_document(&sphere), options)
        }
        _ => {
            return Err(CliError::Usage(
                "sphere-sigma expects exactly one of --config or --angles".to_string(),
            ))
        }
    };

    let spec = spectrum(system.matrix())?;
    let mut run = RunDir::create(&ctx.out_root, "sphere-sigma", 0, &options)?;
    run.write_artifact("input", "input.json", &input_doc)?;
    let report = spectrum_document(&spec);
    let verdict = if spec.has_null_vector() {
        "numerical null vector at the 1e-9 relative threshold"
    } else {
        "no numerical null vector at the 1e-9 relative threshold"
    };
    let human = vec![format!(
        "sigma_min = {} (smallest singular value of the sphere system; {verdict})",
        spec.sigma_min
    )];
    ctx.emit(&mut run, &report, &human)?;
    ctx.finish(run)
}

fn cmd_search_sigma(args: &mut Args, ctx: &Context) -> CmdResult {
    let p = parse_usize("-p", args.require("--p").map_err(CliError::Usage)?)
        .map_err(CliError::Usage)?;
    let m = parse_usize("-m", args.require("--m").map_err(CliError::Usage)?)
        .map_err(CliError::Usage)?;
    let flags = search_options(args, 4, 120)?;
    args.reject_unused().map_err(CliError::Usage)?;
    announce_seed(ctx, flags.opts.seed, flags.drawn);

    let report = min_sigma_over_configs(p, m, &flags.opts)?;
    let options = options_json(&flags.opts, &[("p", p.to_string()), ("m", m.to_string())]);
    let mut run = RunDir::create(&ctx.out_root, "search-sigma", flags.opts.seed, &options)?;
    run.write_artifact("csv", "history.csv", &history_csv(&report.history))?;
    let doc = search_report_document(&report);
    let human = vec![format!(
        "smallest sigma_min found for p={p}, m={m}: {} (search evidence only)",
        report.best_value
    )];
    ctx.emit(&mut run, &doc, &human)?;
    ctx.finish(run)
}

fn cmd_critical_residual(args: &mut Args, ctx: &Context) -> CmdResult {
    let path = args
        .require("--config")
        .map_err(CliError::Usage)?
        .to_string();
    let u = weights_flag(args)?;
    args.reject_unused().map_err(CliError::Usage)?;

    let config = load_euclidean(&path)?;
    let res = critical_residuals(&config, &u)?;
    let options = format!(
        "{{\"config\":{},\"u\":{}}}",
        quoted(&path),
        float_list_json(&u)
    );
    let mut run = RunDir::create(&ctx.out_root, "critical-residual", 0, &options)?;
    run.write_artifact("input", "input.json", &config_document(&config))?;
    let report = residual_document(&res.r1, &res.r2, res.total_norm());
    let human = vec![format!("combined residual norm = {}", res.total_norm())];
    ctx.emit(&mut run, &report, &human)?;
    ctx.finish(run)
}

fn cmd_min_critical(args: &mut Args, ctx: &Context) -> CmdResult {
    let path = args
        .require("--config")
        .map_err(CliError::Usage)?
        .to_string();
    let flags = search_options(args, 8, 500)?;
    args.reject_unused().map_err(CliError::Usage)?;
    announce_seed(ctx, flags.opts.seed, flags.drawn);

    let config = load_euclidean(&path)?;
    let (weights, value) = min_critical_residual(&config, &flags.opts)?;
    let threshold = critical_residual_threshold(&config, distineq::systems::NULL_DECISION_REL_TOL);
    let verdict = if value <= threshold {
        format!("below the declared threshold {threshold:e}: candidate non-zero solution")
    } else {
        format!("above the declared threshold {threshold:e}: no numerical solution found")
    };
    let options = options_json(&flags.opts, &[("config", quoted(&path))]);
    let mut run = RunDir::create(&ctx.out_root, "min-critical", flags.opts.seed, &options)?;
    run.write_artifact("input", "input.json", &config_document(&config))?;
    let report = minimize_document(flags.opts.seed, value, &weights);
    let human = vec![format!(
        "smallest combined squared residual over unit weights: {value} ({verdict})"
    )];
    ctx.emit(&mut run, &report, &human)?;
    ctx.finish(run)
}

fn cmd_augmented(args: &mut Args, ctx: &Context) -> CmdResult {
    let path = args
        .require("--config")
        .map_err(CliError::Usage)?
        .to_string();
    let minimize = args.switch("--minimize");
    let config = load_euclidean(&path)?;
    let points = config.points().to_vec();

    if minimize {
        let flags = search_options(args, 8, 500)?;
        args.reject_unused().map_err(CliError::Usage)?;
        announce_seed(ctx, flags.opts.seed, flags.drawn);
        let (weights, value) = min_augmented_ratio(&points, &flags.opts)?;
        let options = options_json(
            &flags.opts,
            &[("config", quoted(&path)), ("minimize", "true".to_string())],
        );
        let mut run = RunDir::create(&ctx.out_root, "augmented", flags.opts.seed, &options)?;
        run.write_artifact("input", "input.json", &config_document(&config))?;
        let report = minimize_document(flags.opts.seed, value, &weights);
        let human = vec![format!("augmented quotient infimum estimate = {value}")];
        ctx.emit(&mut run, &report, &human)?;
        ctx.finish(run)
    } else {
        let u = weights_flag(args)?;
        let up = parse_f64("--up", args.require("--up").map_err(CliError::Usage)?)
            .map_err(CliError::Usage)?;
        args.reject_unused().map_err(CliError::Usage)?;
        let value = distineq::systems::augmented_ratio(&points, &u, up)?;
        let options = format!(
            "{{\"config\":{},\"u\":{},\"up\":{}}}",
            quoted(&path),
            float_list_json(&u),
            fmt_f64(up)
        );
        let mut run = RunDir::create(&ctx.out_root, "augmented", 0, &options)?;
        run.write_artifact("input", "input.json", &config_document(&config))?;
        let report = value_document(value);
        let human = vec![format!("augmented quotient = {value}")];
        ctx.emit(&mut run, &report, &human)?;
        ctx.finish(run)
    }
}

fn cmd_sign_matrix(args: &mut Args, ctx: &Context) -> CmdResult {
    let p = parse_usize("-p", args.require("--p").map_err(CliError::Usage)?)
        .map_err(CliError::Usage)?;
    args.reject_unused().map_err(CliError::Usage)?;

    let s = sign_matrix(p)?;
    let options = format!("{{\"p\":{p}}}");
    let mut run = RunDir::create(&ctx.out_root, "sign-matrix", 0, &options)?;
    let report = sign_matrix_document(&s);
    let human = vec![format!("p = {}, det = {}, rank = {}", s.p, s.det, s.rank)];
    ctx.emit(&mut run, &report, &human)?;
    ctx.finish(run)
}

fn cmd_kelvin(args: &mut Args, ctx: &Context) -> CmdResult {
    let path = args
        .require("--config")
        .map_err(CliError::Usage)?
        .to_string();
    let center = parse_f64_list(
        "--center",
        args.require("--center").map_err(CliError::Usage)?,
    )
    .map_err(CliError::Usage)?;
    args.reject_unused().map_err(CliError::Usage)?;

    let config = load_euclidean(&path)?;
    let image = kelvin_transform(&config, &center)?;
    let options = format!(
        "{{\"config\":{},\"center\":{}}}",
        quoted(&path),
        float_list_json(&center)
    );
    let mut run = RunDir::create(&ctx.out_root, "kelvin", 0, &options)?;
    run.write_artifact("input", "input.json", &config_document(&config))?;
    let report = config_document(&image);
    run.write_artifact("config", "transformed.json", &report)?;
    let human = vec![format!(
        "transformed configuration written (p = {}, m = {})",
        image.p(),
        image.m()
    )];
    ctx.emit(&mut run, &report, &human)?;
    ctx.finish(run)
}

fn cmd_lift(args: &mut Args, ctx: &Context) -> CmdResult {
    let path = args
        .require("--config")
        .map_err(CliError::Usage)?
        .to_string();
    args.reject_unused().map_err(CliError::Usage)?;

    let config = load_euclidean(&path)?;
    let sphere = stereographic_lift(&config)?;
    let options = format!("{{\"config\":{}}}", quoted(&path));
    let mut run = RunDir::create(&ctx.out_root, "lift", 0, &options)?;
    run.write_artifact("input", "input.json", &config_document(&config))?;
    let report = sphere_document(&sphere);
    run.write_artifact("config", "lifted.json", &report)?;
    let human = vec![format!(
        "lifted onto S^{} (unit norms verified)",
        sphere.m()
    )];
    ctx.emit(&mut run, &report, &human)?;
    ctx.finish(run)
}

fn cmd_stress(args: &mut Args, ctx: &Context) -> CmdResult {
    let p = parse_usize("-p", args.require("--p").map_err(CliError::Usage)?)
        .map_err(CliError::Usage)?;
    let m = parse_usize("-m", args.require("--m").map_err(CliError::Usage)?)
        .map_err(CliError::Usage)?;
    let separations = parse_f64_list(
        "--separations",
        args.require("--separations").map_err(CliError::Usage)?,
    )
    .map_err(CliError::Usage)?;
    let flags = search_options(args, 8, 500)?;
    args.reject_unused().map_err(CliError::Usage)?;
    announce_seed(ctx, flags.opts.seed, flags.drawn);

    let rows = cluster_far_stress(p, m, &separations, &flags.opts)?;
    let options = options_json(
        &flags.opts,
        &[
            ("p", p.to_string()),
            ("m", m.to_string()),
            ("separations", float_list_json(&separations)),
        ],
    );
    let mut run = RunDir::create(&ctx.out_root, "stress", flags.opts.seed, &options)?;
    let csv = csv_table("separation,min_ratio_estimate", &rows);
    run.write_artifact("csv", "table.csv", &csv)?;
    let report = {
        let seps: Vec<f64> = rows.iter().map(|r| r.0).collect();
        let ests: Vec<f64> = rows.iter().map(|r| r.1).collect();
        format!(
            "{{\"seed\":{},\"separations\":{},\"estimates\":{}}}",
            flags.opts.seed,
            float_list_json(&seps),
            float_list_json(&ests)
        )
    };
    let mut human = vec!["separation  min_ratio_estimate".to_string()];
    for (sep, est) in &rows {
        human.push(format!("{sep:<11} {est}"));
    }
    ctx.emit(&mut run, &report, &human)?;
    ctx.finish(run)
}

fn cmd_brute_force(args: &mut Args, ctx: &Context) -> CmdResult {
    let path = args
        .require("--config")
        .map_err(CliError::Usage)?
        .to_string();
    let samples = match args.get("--samples") {
        Some(raw) => parse_usize("--samples", raw).map_err(CliError::Usage)?,
        None => 100_000,
    };
    args.reject_unused().map_err(CliError::Usage)?;

    let config = load_euclidean(&path)?;
    let value = brute_force_min_ratio(&config, samples)?;
    let options = format!("{{\"config\":{},\"samples\":{samples}}}", quoted(&path));
    let mut run = RunDir::create(&ctx.out_root, "brute-force", 0, &options)?;
    run.write_artifact("input", "input.json", &config_document(&config))?;
    let report = value_document(value);
    let human = vec![format!(
        "brute-force ratio minimum over {samples} samples: {value}"
    )];
    ctx.emit(&mut run, &report, &human)?;
    ctx.finish(run)
}
