//! Negativity over grids of channel parameters, CP-region mapping and CSV output.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;
use std::time::SystemTime;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::channel::{AssignmentMap, Channel, CouplingSpec};
use crate::choi::assemble_choi_for;
use crate::cmatrix::{c, ComplexMatrix};
use crate::error::{Error, Result};
use crate::negativity::negativity;

/// Default η threshold below which a grid point counts as completely positive.
pub const DEFAULT_CP_TOLERANCE: f64 = 1e-9;

/// Channel families that can be swept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Rabi coupling; Hadamard sharp, or `R(φ)` sharp when `phi` is given.
    Rabi,
    /// `U_θ` coupling with the Hadamard sharp.
    UTheta,
    /// CZ coupling with the `U_α` sharp.
    Alpha,
    /// `U_θ` coupling with the `U_α` sharp.
    ThetaAlpha,
    /// `CZ′(δ)` with the Hadamard sharp.
    CzPrime,
    /// `CZ″(δ, ξ)` with the Hadamard sharp.
    CzDoublePrime,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Rabi,
        Family::UTheta,
        Family::Alpha,
        Family::ThetaAlpha,
        Family::CzPrime,
        Family::CzDoublePrime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Rabi => "rabi",
            Family::UTheta => "utheta",
            Family::Alpha => "alpha",
            Family::ThetaAlpha => "theta_alpha",
            Family::CzPrime => "czprime",
            Family::CzDoublePrime => "czdoubleprime",
        }
    }

    pub fn required(self) -> &'static [&'static str] {
        match self {
            Family::Rabi => &["kz", "t"],
            Family::UTheta => &["theta"],
            Family::Alpha => &["alpha"],
            Family::ThetaAlpha => &["theta", "alpha"],
            Family::CzPrime => &["delta"],
            Family::CzDoublePrime => &["delta", "xi"],
        }
    }

    pub fn optional(self) -> &'static [&'static str] {
        match self {
            Family::Rabi => &["nu", "omega", "phi"],
            _ => &[],
        }
    }

    fn accepts(self, name: &str) -> bool {
        self.required().contains(&name) || self.optional().contains(&name)
    }

    /// Coupling and sharp map at one parameter assignment.
    pub fn channel_at(self, params: &BTreeMap<String, f64>) -> Result<(CouplingSpec, AssignmentMap)> {
        let get = |name: &str| {
            params
                .get(name)
                .copied()
                .ok_or_else(|| Error::Config(format!("family {} needs parameter `{name}`", self.name())))
        };
        Ok(match self {
            Family::Rabi => {
                let coupling = CouplingSpec::Rabi {
                    nu: params.get("nu").copied().unwrap_or(0.0),
                    omega: params.get("omega").copied().unwrap_or(1.0),
                    kz: get("kz")?,
                    t: get("t")?,
                };
                let sharp = match params.get("phi") {
                    Some(&phi) => AssignmentMap::Rotation { phi },
                    None => AssignmentMap::Hadamard,
                };
                (coupling, sharp)
            }
            Family::UTheta => (
                CouplingSpec::RotationTheta { theta: get("theta")? },
                AssignmentMap::Hadamard,
            ),
            Family::Alpha => (CouplingSpec::Cz, AssignmentMap::alpha(get("alpha")?)?),
            Family::ThetaAlpha => (
                CouplingSpec::RotationTheta { theta: get("theta")? },
                AssignmentMap::alpha(get("alpha")?)?,
            ),
            Family::CzPrime => (CouplingSpec::CzPrime { delta: get("delta")? }, AssignmentMap::Hadamard),
            Family::CzDoublePrime => (
                CouplingSpec::CzDoublePrime {
                    delta: get("delta")?,
                    xi: get("xi")?,
                },
                AssignmentMap::Hadamard,
            ),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| {
            let names: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
            Error::Config(format!("unknown family `{s}` (expected one of {})", names.join(", ")))
        })
    }
}

/// Evenly spaced samples `start, …, stop` (both ends included).
#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub name: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(name: impl Into<String>, start: f64, stop: f64, count: usize) -> Result<Self> {
        let axis = Self {
            name: name.into(),
            start,
            stop,
            count,
        };
        axis.validate()?;
        Ok(axis)
    }

    fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::Config(format!("axis `{}` needs at least 2 points", self.name)));
        }
        if !(self.start.is_finite() && self.stop.is_finite()) || self.start >= self.stop {
            return Err(Error::Config(format!(
                "axis `{}` needs finite start < stop, got {}:{}",
                self.name, self.start, self.stop
            )));
        }
        Ok(())
    }

    pub fn value(&self, k: usize) -> f64 {
        if k + 1 == self.count {
            self.stop
        } else {
            self.start + (self.stop - self.start) * k as f64 / (self.count - 1) as f64
        }
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(|k| self.value(k))
    }
}

/// Parses `name=start:stop:count`.
impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("axis `{s}` is not of the form name=start:stop:count"));
        let (name, range) = s.split_once('=').ok_or_else(bad)?;
        let parts: Vec<&str> = range.split(':').collect();
        if name.is_empty() || parts.len() != 3 {
            return Err(bad());
        }
        let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
        Axis::new(name.trim(), start, stop, count)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepGrid {
    family: Family,
    axes: Vec<Axis>,
    fixed: BTreeMap<String, f64>,
}

impl SweepGrid {
    pub fn new(family: Family, axes: Vec<Axis>, fixed: BTreeMap<String, f64>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::Config("a sweep needs at least one axis".into()));
        }
        let mut seen: Vec<&str> = Vec::new();
        for axis in &axes {
            axis.validate()?;
            if seen.contains(&axis.name.as_str()) {
                return Err(Error::Config(format!("axis `{}` given twice", axis.name)));
            }
            if fixed.contains_key(&axis.name) {
                return Err(Error::Config(format!(
                    "`{}` is both an axis and a fixed parameter",
                    axis.name
                )));
            }
            seen.push(&axis.name);
        }
        for name in seen.iter().copied().chain(fixed.keys().map(String::as_str)) {
            if !family.accepts(name) {
                return Err(Error::Config(format!("family {family} has no parameter `{name}`")));
            }
        }
        for (name, value) in &fixed {
            if !value.is_finite() {
                return Err(Error::Config(format!("fixed parameter `{name}` is not finite")));
            }
        }
        for req in family.required() {
            if !seen.contains(req) && !fixed.contains_key(*req) {
                return Err(Error::Config(format!(
                    "family {family} needs parameter `{req}` as an axis or fixed value"
                )));
            }
        }
        Ok(Self { family, axes, fixed })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn fixed(&self) -> &BTreeMap<String, f64> {
        &self.fixed
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Axis values of point `index` in row-major order (last axis fastest).
    pub fn point(&self, mut index: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.axes.len()];
        for (slot, axis) in out.iter_mut().zip(&self.axes).rev() {
            *slot = axis.value(index % axis.count);
            index /= axis.count;
        }
        out
    }

    fn params_at(&self, point: &[f64]) -> BTreeMap<String, f64> {
        let mut params = self.fixed.clone();
        for (axis, &v) in self.axes.iter().zip(point) {
            params.insert(axis.name.clone(), v);
        }
        params
    }

    pub fn eta_at(&self, point: &[f64]) -> Result<f64> {
        let (coupling, sharp) = self.family.channel_at(&self.params_at(point))?;
        let choi = assemble_choi_for(&Channel::new(coupling, sharp)?)?;
        Ok(negativity(&choi)?.eta)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub params: Vec<f64>,
    pub eta: f64,
}

#[derive(Clone, Debug)]
pub struct SweepMetadata {
    pub family: Family,
    pub grid: SweepGrid,
    pub generated_at: SystemTime,
}

#[derive(Clone, Debug)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub metadata: SweepMetadata,
}

impl SweepResult {
    pub fn axis_names(&self) -> Vec<&str> {
        self.metadata.grid.axes.iter().map(|a| a.name.as_str()).collect()
    }

    /// Header of axis names then `eta`; 17 significant digits; LF line endings.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        let mut header = self.axis_names().join(",");
        header.push_str(",eta\n");
        w.write_all(header.as_bytes())?;
        let mut line = String::new();
        for row in &self.rows {
            line.clear();
            for v in &row.params {
                line.push_str(&format_sig17(*v));
                line.push(',');
            }
            line.push_str(&format_sig17(row.eta));
            line.push('\n');
            w.write_all(line.as_bytes())?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is ASCII")
    }

    /// Row with the largest η (first one on ties).
    pub fn max_row(&self) -> Option<&SweepRow> {
        self.rows.iter().fold(None, |best: Option<&SweepRow>, r| match best {
            Some(b) if b.eta >= r.eta => Some(b),
            _ => Some(r),
        })
    }
}

fn evaluate_points(grid: &SweepGrid, indices: &[usize], threads: Option<usize>) -> Result<Vec<SweepRow>> {
    let work = || -> Result<Vec<SweepRow>> {
        indices
            .par_iter()
            .map(|&i| {
                let params = grid.point(i);
                let eta = grid.eta_at(&params)?;
                Ok(SweepRow { params, eta })
            })
            .collect()
    };
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Config(format!("cannot build thread pool: {e}")))?
            .install(work),
        None => work(),
    }
}

fn finish(grid: &SweepGrid, rows: Vec<SweepRow>) -> SweepResult {
    SweepResult {
        rows,
        metadata: SweepMetadata {
            family: grid.family,
            grid: grid.clone(),
            generated_at: SystemTime::now(),
        },
    }
}

pub fn run_sweep(grid: &SweepGrid) -> Result<SweepResult> {
    run_sweep_with_threads(grid, None)
}

/// As [`run_sweep`], on a dedicated pool of `threads` workers when given.
pub fn run_sweep_with_threads(grid: &SweepGrid, threads: Option<usize>) -> Result<SweepResult> {
    let indices: Vec<usize> = (0..grid.len()).collect();
    let rows = evaluate_points(grid, &indices, threads)?;
    Ok(finish(grid, rows))
}

pub fn cp_map(grid: &SweepGrid, eta_tol: f64) -> Result<SweepResult> {
    cp_map_with_threads(grid, eta_tol, None)
}

/// Grid points with `η < eta_tol`.
///
/// For the Rabi family, axis samples with `kz = 0` or `t = 0` are skipped: those planes
/// are completely positive for trivial reasons. Fixed values are used as given.
pub fn cp_map_with_threads(grid: &SweepGrid, eta_tol: f64, threads: Option<usize>) -> Result<SweepResult> {
    if !(eta_tol > 0.0 && eta_tol.is_finite()) {
        return Err(Error::Config(format!("eta tolerance must be positive, got {eta_tol}")));
    }
    let trivial_axes: Vec<usize> = if grid.family == Family::Rabi {
        grid.axes
            .iter()
            .enumerate()
            .filter(|(_, a)| a.name == "kz" || a.name == "t")
            .map(|(i, _)| i)
            .collect()
    } else {
        Vec::new()
    };
    let indices: Vec<usize> = (0..grid.len())
        .filter(|&i| {
            let p = grid.point(i);
            trivial_axes.iter().all(|&k| p[k] != 0.0)
        })
        .collect();
    let rows = evaluate_points(grid, &indices, threads)?
        .into_iter()
        .filter(|r| r.eta < eta_tol)
        .collect();
    Ok(finish(grid, rows))
}

/// `[[1,0,0,x],[0,0,y,0],[0,y*,0,0],[x*,0,0,1]]`.
pub fn xform_matrix(x: Complex64, y: Complex64) -> ComplexMatrix {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    ComplexMatrix::from_rows([[one, z, z, x], [z, z, y, z], [z, y.conj(), z, z], [x.conj(), z, z, one]])
}

/// Closed-form spectrum of [`xform_matrix`]: `(1-|x|, 1+|x|, -|y|, |y|)`.
pub fn xform_spectrum(x: Complex64, y: Complex64) -> [f64; 4] {
    let (ax, ay) = (x.norm(), y.norm());
    [1.0 - ax, 1.0 + ax, -ay, ay]
}

/// Formats like C's `%.17g`.
pub fn format_sig17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (16 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
