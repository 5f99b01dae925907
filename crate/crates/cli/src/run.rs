use std::fs;
use std::io::Write;
use std::path::Path;

use negativity_core::choi::ChoiDocument;
use negativity_core::sweep::{cp_map_with_threads, run_sweep_with_threads};
use negativity_core::{
    assemble_choi, gate_distance, negativity, negativity_distance, negativity_from_positivity,
    positivity_from_negativity, AssignmentMap, Axis, ChoiMatrix, ComplexMatrix, CouplingSpec, Error, Family, Result,
    SweepGrid, SweepResult,
};
use serde_json::json;

use crate::args::*;
use crate::params::Params;

/// Positive integer capping sweep parallelism.
pub const THREADS_ENV: &str = "NEGATIVITY_THREADS";

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Choi(a) => choi(a),
        Command::Negativity(a) => negativity_cmd(a),
        Command::Sweep(a) => sweep(a.grid, None),
        Command::Cpmap(a) => sweep(a.grid, Some(a.eta_tol)),
        Command::Distance(a) => distance(a),
        Command::Convert(a) => convert(a),
    }
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))
}

pub fn load_choi(path: &Path) -> Result<ChoiMatrix> {
    ChoiMatrix::from_json(&read_file(path)?).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn load_matrix(path: &Path, dim: usize) -> Result<ComplexMatrix> {
    let doc: ChoiDocument = serde_json::from_str(&read_file(path)?).map_err(|e| {
        Error::Parse(format!(
            "{}: line {} column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })?;
    let m = doc.into_matrix()?;
    if m.dim() != dim {
        return Err(Error::Dimension {
            expected: dim,
            found: m.dim(),
        });
    }
    Ok(m)
}

fn coupling(name: &str, unitary: Option<&Path>, params: &mut Params, scope: Option<&str>) -> Result<CouplingSpec> {
    let owner = format!("coupling {name}");
    let mut req = |p: &str| params.require(scope, p, &owner);
    let spec = match name {
        "rootswap" => CouplingSpec::RootSwap,
        "cz" => CouplingSpec::Cz,
        "czprime" => CouplingSpec::CzPrime { delta: req("delta")? },
        "czdoubleprime" => CouplingSpec::CzDoublePrime {
            delta: req("delta")?,
            xi: req("xi")?,
        },
        "utheta" => CouplingSpec::RotationTheta { theta: req("theta")? },
        "rabi" => {
            let kz = req("kz")?;
            let t = req("t")?;
            CouplingSpec::Rabi {
                nu: params.get(scope, "nu").unwrap_or(0.0),
                omega: params.get(scope, "omega").unwrap_or(1.0),
                kz,
                t,
            }
        }
        "custom" => {
            let path = unitary.ok_or_else(|| Error::Config("coupling custom needs a unitary file".into()))?;
            return CouplingSpec::custom(load_matrix(path, 4)?);
        }
        other => {
            return Err(Error::Config(format!(
                "unknown coupling `{other}` (expected rootswap, cz, czprime, czdoubleprime, utheta, rabi or custom)"
            )))
        }
    };
    if name != "custom" && unitary.is_some() {
        return Err(Error::Config(format!(
            "a unitary file is only used with coupling custom, not {name}"
        )));
    }
    Ok(spec)
}

fn sharp(args: &SharpArgs, params: &mut Params) -> Result<AssignmentMap> {
    let owner = format!("sharp {}", args.sharp);
    let map = match args.sharp.as_str() {
        "hadamard" => AssignmentMap::Hadamard,
        "rotation" => AssignmentMap::Rotation {
            phi: params.require(None, "phi", &owner)?,
        },
        "alpha" => AssignmentMap::alpha(params.require(None, "alpha", &owner)?)?,
        "product" => {
            let p0 = params.require(None, "p0", &owner)?;
            if !(0.0..=1.0).contains(&p0) {
                return Err(Error::Domain(format!("p0 must lie in [0, 1], got {p0}")));
            }
            let bath = ComplexMatrix::from_real_rows([[p0, 0.0], [0.0, 1.0 - p0]]);
            AssignmentMap::product(bath)?
        }
        "conjugation" => {
            let path = args
                .sharp_unitary
                .as_deref()
                .ok_or_else(|| Error::Config("sharp conjugation needs --sharp-unitary".into()))?;
            return AssignmentMap::unitary_conjugation(load_matrix(path, 2)?);
        }
        other => {
            return Err(Error::Config(format!(
                "unknown sharp `{other}` (expected hadamard, rotation, alpha, product or conjugation)"
            )))
        }
    };
    if args.sharp_unitary.is_some() {
        return Err(Error::Config(
            "--sharp-unitary is only used with --sharp conjugation".into(),
        ));
    }
    Ok(map)
}

fn channel_choi(args: &ChannelArgs, params: &mut Params) -> Result<ChoiMatrix> {
    let name = args
        .coupling
        .as_deref()
        .ok_or_else(|| Error::Config("--coupling is required".into()))?;
    let spec = coupling(name, args.unitary.as_deref(), params, None)?;
    let map = sharp(&args.sharp, params)?;
    assemble_choi(&spec, &map)
}

fn emit(out: Option<&Path>, mut text: String) -> Result<()> {
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::Config(format!("cannot write to stdout: {e}")))
        }
    }
}

fn unsupported(format: Format, command: &str) -> Error {
    Error::Config(format!("format {format:?} is not supported by {command}").to_lowercase())
}

/// Rounds to 3 significant digits for display.
pub fn round3(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{}", if x == 0.0 { 0.0 } else { x });
    }
    let rounded: f64 = format!("{x:.2e}").parse().expect("formatted float parses");
    format!("{rounded}")
}

fn choi(a: ChoiArgs) -> Result<()> {
    let mut params = Params::parse(&a.params)?;
    let choi = channel_choi(&a.channel, &mut params)?;
    params.finish()?;
    let text = match a.format {
        Format::Json => choi.to_json(),
        Format::Text => choi.matrix().to_string(),
        f => return Err(unsupported(f, "choi")),
    };
    emit(a.output.out.as_deref(), text)
}

fn negativity_cmd(a: NegativityArgs) -> Result<()> {
    let mut params = Params::parse(&a.params)?;
    let choi = match &a.choi {
        Some(path) => {
            if a.channel.sharp.sharp != "hadamard" || a.channel.sharp.sharp_unitary.is_some() {
                return Err(Error::Config("--sharp does not apply to --choi".into()));
            }
            load_choi(path)?
        }
        None => channel_choi(&a.channel, &mut params)?,
    };
    params.finish()?;
    let report = negativity(&choi)?;
    let text = match a.format {
        Format::Json => report.to_json(),
        Format::Text => format!(
            "eta = {}\npositivity = {}\n",
            round3(report.eta),
            round3(report.positivity())
        ),
        f => return Err(unsupported(f, "negativity")),
    };
    emit(a.output.out.as_deref(), text)
}

fn threads() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::Config(format!(
                "{THREADS_ENV} must be a positive integer, got `{v}`"
            ))),
        },
    }
}

fn sweep_json(result: &SweepResult, eta_tol: Option<f64>) -> String {
    let grid = &result.metadata.grid;
    let axes: Vec<_> = grid
        .axes()
        .iter()
        .map(|a| json!({"name": a.name, "start": a.start, "stop": a.stop, "count": a.count}))
        .collect();
    let rows: Vec<_> = result
        .rows
        .iter()
        .map(|r| {
            let mut v = r.params.clone();
            v.push(r.eta);
            v
        })
        .collect();
    let mut columns: Vec<String> = result.axis_names().iter().map(|s| s.to_string()).collect();
    columns.push("eta".into());
    let mut doc = json!({
        "family": result.metadata.family.name(),
        "axes": axes,
        "fixed": grid.fixed(),
        "columns": columns,
        "rows": rows,
    });
    if let Some(tol) = eta_tol {
        doc["eta_tol"] = json!(tol);
    }
    serde_json::to_string_pretty(&doc).expect("sweep values are finite")
}

fn sweep(a: GridArgs, eta_tol: Option<f64>) -> Result<()> {
    let family: Family = a.family.parse()?;
    let axes = a.axes.iter().map(|s| s.parse::<Axis>()).collect::<Result<Vec<_>>>()?;
    let fixed = Params::parse(&a.params)?.into_map();
    let grid = SweepGrid::new(family, axes, fixed)?;
    let threads = threads()?;
    let result = match eta_tol {
        None => run_sweep_with_threads(&grid, threads)?,
        Some(tol) => cp_map_with_threads(&grid, tol, threads)?,
    };
    let text = match a.format {
        Format::Csv => result.to_csv(),
        Format::Json => sweep_json(&result, eta_tol),
        f => return Err(unsupported(f, if eta_tol.is_some() { "cpmap" } else { "sweep" })),
    };
    emit(a.output.out.as_deref(), text)
}

fn distance(a: DistanceArgs) -> Result<()> {
    let mut params = Params::parse(&a.params)?;
    params.check_ambiguous(&["expected", "implemented"])?;
    let expected = match &a.expected {
        Some(name) => Some(coupling(
            name,
            a.expected_unitary.as_deref(),
            &mut params,
            Some("expected"),
        )?),
        None => None,
    };
    let implemented = match &a.implemented {
        Some(name) => Some(coupling(
            name,
            a.implemented_unitary.as_deref(),
            &mut params,
            Some("implemented"),
        )?),
        None => None,
    };
    let both_files = expected.is_none() && implemented.is_none();
    let map = if both_files {
        if a.sharp.sharp != "hadamard" || a.sharp.sharp_unitary.is_some() {
            return Err(Error::Config("--sharp does not apply to two Choi files".into()));
        }
        AssignmentMap::Hadamard
    } else {
        sharp(&a.sharp, &mut params)?
    };
    params.finish()?;
    let report = match (&expected, &implemented) {
        (Some(e), Some(i)) => gate_distance(e, i, &map)?,
        _ => {
            let side = |spec: &Option<CouplingSpec>, file: &Option<std::path::PathBuf>| match (spec, file) {
                (Some(s), _) => assemble_choi(s, &map),
                (None, Some(path)) => load_choi(path),
                (None, None) => Err(Error::Config("missing gate".into())),
            };
            negativity_distance(
                &side(&expected, &a.expected_choi)?,
                &side(&implemented, &a.implemented_choi)?,
            )?
        }
    };
    let text = match a.format {
        Format::Json => report.to_json(),
        Format::Text => {
            let mut s = format!(
                "eta_expected = {}\neta_implemented = {}\ndelta = {}\n",
                round3(report.eta_expected),
                round3(report.eta_implemented),
                round3(report.delta)
            );
            if let Some(d) = report.trace_distance {
                s.push_str(&format!("trace_distance = {}\n", round3(d)));
            }
            s
        }
        f => return Err(unsupported(f, "distance")),
    };
    emit(a.output.out.as_deref(), text)
}

fn convert(a: ConvertArgs) -> Result<()> {
    let value = match (a.positivity, a.negativity) {
        (Some(p), None) => negativity_from_positivity(p)?,
        (None, Some(eta)) => positivity_from_negativity(eta)?,
        _ => return Err(Error::Config("give exactly one of --positivity or --negativity".into())),
    };
    emit(None, format!("{value}"))
}
