//! The `expcone` command line: exact cone computations and lattice
//! experiments behind one binary.
//!
//! Exit codes: `0` on success, `1` when the input is well formed but rejected
//! by the mathematics (or the file system), `2` for usage and schema errors.

pub mod args;
pub mod config;
pub mod error;
pub mod exact;
pub mod manifest;
pub mod report;

use args::{Cli, Command, Format};
use clap::Parser;
use config::Experiment;
use error::CliError;
use expcone_sim::{
    nonescape_profile, periodic_orbit_average, pointwise_rate, translate_average, ExperimentResult,
};
use manifest::RunManifest;
use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

struct Rendered {
    body: String,
    config_sha256: String,
    seeds: Vec<u64>,
    det: Option<(u64, u64)>,
    warnings: Vec<String>,
}

fn exact_body(doc: &serde_json::Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("serializable document");
            s.push('\n');
            s
        }
        Format::Csv => report::exact_csv(doc),
        Format::Pretty => report::exact_pretty(doc),
    }
}

pub fn run_experiment(exp: &Experiment) -> Result<ExperimentResult, CliError> {
    Ok(match exp {
        Experiment::Nonescape {
            spec,
            log_diag,
            eps,
        } => nonescape_profile(spec, log_diag, eps)?,
        Experiment::Translate {
            spec,
            chain,
            psis,
            oracle,
        } => translate_average(spec, chain, psis, oracle)?,
        Experiment::PeriodicOrbit(p) => periodic_orbit_average(p)?,
        Experiment::Pointwise(p) => pointwise_rate(p)?,
    })
}

fn simulate(name: &str, path: &std::path::Path, format: Format) -> Result<Rendered, CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let is_json = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"));
    let raw = config::parse_raw(&bytes, is_json)?;
    let exp = config::build(name, &raw)?;
    let res = run_experiment(&exp)?;
    let mut warnings = Vec::new();
    if res.det_warnings > 0 {
        warnings.push(format!(
            "{} determinant renormalizations exceeded the drift threshold",
            res.det_warnings
        ));
    }
    let body = match format {
        Format::Csv => report::rows_to_csv(&res.rows),
        Format::Json => report::result_json(&res),
        Format::Pretty => report::result_pretty(&res),
    };
    Ok(Rendered {
        body,
        config_sha256: manifest::sha256_hex(&bytes),
        seeds: exp.seeds(),
        det: Some((res.det_renormalizations, res.det_warnings)),
        warnings,
    })
}

fn dispatch(cli: &Cli, argv: &[String]) -> Result<Rendered, CliError> {
    let doc = match &cli.command {
        Command::Cone { system } => exact::cone(system)?,
        Command::Member { system, s, mode } => exact::member(system, s, mode)?,
        Command::Floor { system, s, w } => exact::floor_cmd(system, s, w)?,
        Command::Drift { system, s } => exact::drift(system, s)?,
        Command::Restrict {
            system,
            automorphism,
        } => exact::restrict(system, automorphism)?,
        Command::Simulate { experiment, config } => {
            return simulate(experiment, config, cli.format)
        }
    };
    Ok(Rendered {
        body: exact_body(&doc, cli.format),
        config_sha256: manifest::sha256_hex(argv.join("\u{0}").as_bytes()),
        seeds: vec![],
        det: None,
        warnings: vec![],
    })
}

fn finish(
    cli: &Cli,
    argv: Vec<String>,
    r: Rendered,
    started: u128,
    clock: Instant,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let Some(path) = &cli.output else {
        let _ = out.write_all(r.body.as_bytes());
        return Ok(());
    };
    manifest::write_atomic(path, r.body.as_bytes())?;
    let m = RunManifest {
        schema_version: 1,
        tool: "expcone".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: argv,
        config_sha256: r.config_sha256,
        seeds: r.seeds,
        started_unix_ms: started,
        finished_unix_ms: manifest::unix_ms(),
        wall_clock_secs: clock.elapsed().as_secs_f64(),
        det_renormalizations: r.det.map(|d| d.0),
        det_warnings: r.det.map(|d| d.1),
        outputs: vec![manifest::digest(path, r.body.as_bytes())],
    };
    let mut text = serde_json::to_string_pretty(&m).expect("serializable manifest");
    text.push('\n');
    manifest::write_atomic(&manifest::manifest_path(path), text.as_bytes())?;
    if cli.format == Format::Pretty {
        let _ = out.write_all(r.body.as_bytes());
    }
    Ok(())
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let argv: Vec<String> = argv
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let started = manifest::unix_ms();
    let clock = Instant::now();
    let result = dispatch(&cli, &argv).and_then(|r| {
        for w in &r.warnings {
            let _ = writeln!(err, "warning: {w}");
        }
        finish(&cli, argv.clone(), r, started, clock, out)
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
