//! Acceptance suite: one line per criterion, non-zero exit if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};
use std::process::ExitCode;

use negativity_core::cmatrix::gates;
use negativity_core::sweep::xform_matrix;
use negativity_core::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Tolerance on peak locations quoted as "near" / "around" a value.
fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

const PEAK_ANGLE_TOLERANCE: f64 = PI / 12.0;
const PEAK_ALPHA_TOLERANCE: f64 = 0.1;

type Criterion = (&'static str, &'static str, fn() -> Outcome);

struct Outcome {
    checks: Vec<(String, bool)>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, label: impl Into<String>, ok: bool) {
        self.checks.push((label.into(), ok));
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

fn choi_of(spec: CouplingSpec, map: AssignmentMap) -> ChoiMatrix {
    assemble_choi(&spec, &map).unwrap()
}

fn eta(choi: &ChoiMatrix) -> f64 {
    negativity(choi).unwrap().eta
}

fn reference_root_swap_choi() -> ComplexMatrix {
    let a = 0.5 / 2f64.sqrt();
    let b = c(0.5, 0.5).unscale(2f64.sqrt());
    let bc = b.conj();
    let r = |x: f64| c(x, 0.0);
    ComplexMatrix::from_rows([
        [r(0.75), c(0.0, -a), r(0.25), b],
        [c(0.0, a), r(0.25), bc, r(-0.25)],
        [r(0.25), b, r(0.25), c(0.0, -a)],
        [bc, r(-0.25), c(0.0, a), r(0.75)],
    ])
}

fn reference_cz_choi() -> ComplexMatrix {
    let h = c(0.5, 0.0);
    ComplexMatrix::from_rows([
        [h, h, h, c(-0.5, -0.5)],
        [h, h, c(-0.5, -0.5), -h],
        [h, c(-0.5, 0.5), h, h],
        [c(-0.5, 0.5), -h, h, h],
    ])
}

fn ac1() -> Outcome {
    let mut o = Outcome::new();
    let choi = choi_of(CouplingSpec::RootSwap, AssignmentMap::Hadamard);
    let diff = choi.matrix().max_abs_diff(&reference_root_swap_choi());
    o.check(
        format!("Choi matches reference root-swap matrix (max diff {diff:.2e} <= 1e-12)"),
        diff <= 1e-12,
    );
    let e = eta(&choi);
    o.check(
        format!("eta = {e:.6} within 0.149 +/- 0.001"),
        (e - 0.149).abs() <= 1e-3,
    );
    o
}

/// Reduced dynamics with the first factor traced out instead of the bath.
fn system_traced_choi(spec: &CouplingSpec, map: &AssignmentMap) -> ComplexMatrix {
    let u = realize_coupling(spec).unwrap();
    let tv = canonical_tomography_vector();
    let units = decompose_matrix_units(&tv).unwrap();
    let images: Vec<ComplexMatrix> = tv
        .states()
        .iter()
        .map(|tau| {
            let evolved = &(&u * &apply_sharp(map, tau).unwrap()) * &u.adjoint();
            let mut out = ComplexMatrix::zeros(2);
            for i in 0..2 {
                for j in 0..2 {
                    out[(i, j)] = evolved[(i, j)] + evolved[(2 + i, 2 + j)];
                }
            }
            out
        })
        .collect();
    let images: [ComplexMatrix; 4] = images.try_into().unwrap();
    let mut m = ComplexMatrix::zeros(4);
    for i in 0..2 {
        for j in 0..2 {
            let block = units.combine(i, j, &images);
            for r in 0..2 {
                for s in 0..2 {
                    m[(2 * i + r, 2 * j + s)] = block[(r, s)];
                }
            }
        }
    }
    m
}

fn ac2() -> Outcome {
    let mut o = Outcome::new();
    let choi = choi_of(CouplingSpec::Cz, AssignmentMap::Hadamard);
    let reference = reference_cz_choi();
    let diff = choi.matrix().max_abs_diff(&reference);
    o.check(
        format!("Choi matches reference CZ matrix (max diff {diff:.2e} <= 1e-12)"),
        diff <= 1e-12,
    );
    let e = eta(&choi);
    o.check(
        format!("eta = {e:.6} within 0.167 +/- 0.001"),
        (e - 0.167).abs() <= 1e-3,
    );
    if diff > 1e-12 {
        let reference_eta = eta(&validate_choi(&reference).unwrap());
        let swapped = system_traced_choi(&CouplingSpec::Cz, &AssignmentMap::Hadamard);
        o.notes.push(format!(
            "the reference CZ matrix has eta = {reference_eta:.4}; it equals the Choi matrix obtained \
             by tracing out the reduced qubit instead of the bath (max diff {:.2e})",
            swapped.max_abs_diff(&reference)
        ));
    }
    o
}

fn ac3() -> Outcome {
    let mut o = Outcome::new();
    let e = negativity_from_positivity(0.60).unwrap();
    o.check(
        format!("eta({}) = {e} equals 2/7", 0.60),
        (e - 2.0 / 7.0).abs() <= 1e-15,
    );
    o.check(format!("rounds to 0.29 ({:.2})", e), format!("{e:.2}") == "0.29");
    o
}

fn ac4() -> Outcome {
    let mut o = Outcome::new();
    let mut worst_matrix: f64 = 0.0;
    let mut worst_spectrum: f64 = 0.0;
    let mut in_bounds = true;
    let mut samples: Vec<f64> = (0..=100).map(|k| k as f64 / 100.0).collect();
    samples.push(FRAC_1_SQRT_2);
    let mut best = (f64::NEG_INFINITY, 0.0);
    for &alpha in &samples {
        let pipeline = choi_of(CouplingSpec::Cz, AssignmentMap::alpha(alpha).unwrap());
        let closed = analytic_choi_alpha(alpha).unwrap();
        worst_matrix = worst_matrix.max(pipeline.matrix().max_abs_diff(closed.matrix()));
        let x = alpha * (1.0 - alpha * alpha).sqrt();
        let mut expected = [1.0 - x, -x, x, 1.0 + x];
        expected.sort_by(f64::total_cmp);
        let got = hermitian_eig(pipeline.matrix()).unwrap().eigenvalues;
        for (a, b) in got.iter().zip(&expected) {
            worst_spectrum = worst_spectrum.max((a - b).abs());
        }
        let e = eta(&pipeline);
        in_bounds &= (0.0..=1.0 / 6.0 + 1e-12).contains(&e);
        if e > best.0 {
            best = (e, alpha);
        }
    }
    o.check(
        format!("pipeline == closed form over 101 alphas (max diff {worst_matrix:.2e})"),
        worst_matrix <= 1e-10,
    );
    o.check(
        format!("spectrum {{1-x, -x, x, 1+x}} (max diff {worst_spectrum:.2e})"),
        worst_spectrum <= 1e-10,
    );
    o.check("eta_alpha within [0, 1/6]", in_bounds);
    o.check(
        format!("max eta {:.9} at alpha = {:.6}", best.0, best.1),
        (best.0 - 1.0 / 6.0).abs() <= 1e-6 && (best.1 - FRAC_1_SQRT_2).abs() <= 1e-9,
    );
    o
}

fn sweep_1d(family: Family, name: &str, start: f64, stop: f64, n: usize) -> SweepResult {
    let grid = SweepGrid::new(family, vec![Axis::new(name, start, stop, n).unwrap()], BTreeMap::new()).unwrap();
    run_sweep(&grid).unwrap()
}

fn ac5() -> Outcome {
    let mut o = Outcome::new();
    for theta in [0.0, PI, TAU] {
        let e = eta(&choi_of(CouplingSpec::RotationTheta { theta }, AssignmentMap::Hadamard));
        o.check(format!("eta(theta = {theta:.4}) = {e:.1e} < 1e-9"), e < 1e-9);
    }
    let result = sweep_1d(Family::UTheta, "theta", 0.0, TAU, 201);
    let global = result.max_row().unwrap();
    o.check(
        format!("sweep max {:.4} within 0.24 +/- 0.01", global.eta),
        (global.eta - 0.24).abs() <= 0.01,
    );
    for (lo, hi, target, label) in [(0.0, PI, PI / 3.0, "pi/3"), (PI, TAU, 4.0 * PI / 3.0, "4pi/3")] {
        let peak = result
            .rows
            .iter()
            .filter(|r| r.params[0] >= lo && r.params[0] <= hi)
            .max_by(|a, b| a.eta.total_cmp(&b.eta))
            .unwrap();
        o.check(
            format!(
                "peak {:.4} at theta = {:.4} within pi/12 of {label}",
                peak.eta, peak.params[0]
            ),
            (peak.params[0] - target).abs() <= PEAK_ANGLE_TOLERANCE && (peak.eta - 0.24).abs() <= 0.01,
        );
    }
    o
}

fn ac6() -> Outcome {
    let mut o = Outcome::new();
    let corner = |sign: f64| {
        ComplexMatrix::from_real_rows([
            [1.0, 0.0, 0.0, sign],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [sign, 0.0, 0.0, 1.0],
        ])
    };
    let mut worst: f64 = 0.0;
    for (theta, sign) in [(0.0, 1.0), (PI, -1.0), (TAU, 1.0)] {
        for alpha in [0.0, 0.3, FRAC_1_SQRT_2, 1.0] {
            let choi = choi_of(
                CouplingSpec::RotationTheta { theta },
                AssignmentMap::alpha(alpha).unwrap(),
            );
            worst = worst.max(choi.matrix().max_abs_diff(&corner(sign)));
        }
    }
    o.check(
        format!("theta in {{0, pi, 2pi}} Choi matrices independent of alpha (max diff {worst:.2e})"),
        worst <= 1e-10,
    );

    let grid = SweepGrid::new(
        Family::ThetaAlpha,
        vec![
            Axis::new("theta", 0.0, TAU, 101).unwrap(),
            Axis::new("alpha", 0.0, 1.0, 101).unwrap(),
        ],
        BTreeMap::new(),
    )
    .unwrap();
    let result = run_sweep(&grid).unwrap();
    let best = result.max_row().unwrap();
    let (theta, alpha) = (best.params[0], best.params[1]);
    let near_theta = [PI / 3.0, 4.0 * PI / 3.0]
        .iter()
        .any(|t| (theta - t).abs() <= PEAK_ANGLE_TOLERANCE);
    o.check(
        format!("2-D max {:.4} within 0.24 +/- 0.01", best.eta),
        (best.eta - 0.24).abs() <= 0.01,
    );
    o.check(
        format!("located at (theta, alpha) = ({theta:.4}, {alpha:.3}), near (pi/3 or 4pi/3, 0.707)"),
        near_theta && (alpha - FRAC_1_SQRT_2).abs() <= PEAK_ALPHA_TOLERANCE,
    );
    o
}

fn ac7() -> Outcome {
    let mut o = Outcome::new();
    let cz = realize_coupling(&CouplingSpec::Cz).unwrap();
    let mut worst: f64 = 0.0;
    for k in 0..17 {
        let delta = TAU * k as f64 / 16.0;
        let implemented = realize_coupling(&CouplingSpec::CzPrime { delta }).unwrap();
        let d = trace_distance(&cz, &implemented).unwrap();
        worst = worst.max((d - 2.0 * (delta / 2.0).cos().abs()).abs());
    }
    o.check(
        format!("trace distance = 2|cos(delta/2)| on 17 points (max err {worst:.2e})"),
        worst <= 1e-10,
    );

    let eta_cz = eta(&choi_of(CouplingSpec::Cz, AssignmentMap::Hadamard));
    for delta in [0.0, TAU] {
        let r = gate_distance(
            &CouplingSpec::Cz,
            &CouplingSpec::CzPrime { delta },
            &AssignmentMap::Hadamard,
        )
        .unwrap();
        o.check(
            format!("Delta(delta = {delta:.4}) = {:.9} equals eta_CZ", r.delta),
            (r.delta - eta_cz).abs() <= 1e-6,
        );
    }
    let r = gate_distance(
        &CouplingSpec::Cz,
        &CouplingSpec::CzPrime { delta: PI },
        &AssignmentMap::Hadamard,
    )
    .unwrap();
    o.check(format!("Delta(pi) = {:.1e} <= 1e-6", r.delta), r.delta <= 1e-6);

    let mut worst_eta: f64 = 0.0;
    for k in 0..33 {
        let d = TAU * k as f64 / 32.0;
        let e = eta(&choi_of(
            CouplingSpec::CzDoublePrime { delta: d, xi: d },
            AssignmentMap::Hadamard,
        ));
        worst_eta = worst_eta.max(e);
    }
    o.check(
        format!("CZ'' with delta = xi has eta = 0 (max {worst_eta:.1e})"),
        worst_eta < 1e-9,
    );
    o
}

fn all_sharps<R: Rng>(rng: &mut R, k: usize) -> Vec<AssignmentMap> {
    let p = k as f64 / 9.0;
    vec![
        AssignmentMap::Rotation { phi: TAU * p },
        AssignmentMap::unitary_conjugation(common::random_unitary(rng, 2)).unwrap(),
        AssignmentMap::Hadamard,
        AssignmentMap::alpha(p).unwrap(),
        AssignmentMap::product(common::random_density(rng)).unwrap(),
    ]
}

fn ac8() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = StdRng::seed_from_u64(0x5eed);

    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let u = common::random_unitary(&mut rng, 4);
        let bath = common::random_density(&mut rng);
        let e = eta(&choi_of(
            CouplingSpec::custom(u).unwrap(),
            AssignmentMap::product(bath).unwrap(),
        ));
        worst = worst.max(e);
    }
    o.check(
        format!("product sharp, 100 random couplings: max eta {worst:.1e} < 1e-9"),
        worst < 1e-9,
    );

    let mut worst: f64 = 0.0;
    for k in 0..10 {
        let u = kron(
            &common::random_unitary(&mut rng, 2),
            &common::random_unitary(&mut rng, 2),
        );
        let spec = CouplingSpec::custom(u).unwrap();
        for map in all_sharps(&mut rng, k) {
            worst = worst.max(eta(&choi_of(spec.clone(), map)));
        }
    }
    o.check(
        format!("local-unitary couplings, every sharp: max eta {worst:.1e} < 1e-9"),
        worst < 1e-9,
    );

    let mut worst: f64 = 0.0;
    for k in 0..33 {
        let v = TAU * k as f64 / 32.0;
        for sharp in [
            AssignmentMap::Hadamard,
            AssignmentMap::Rotation { phi: v },
            AssignmentMap::Rotation { phi: 1.0 },
        ] {
            worst = worst.max(eta(&choi_of(CouplingSpec::rabi(0.0, v), sharp.clone())));
            worst = worst.max(eta(&choi_of(CouplingSpec::rabi(v, 0.0), sharp)));
        }
    }
    o.check(
        format!("Rabi with kz = 0 or t = 0: max eta {worst:.1e} < 1e-9"),
        worst < 1e-9,
    );

    let grid = SweepGrid::new(
        Family::Rabi,
        vec![
            Axis::new("kz", 0.0, TAU, 101).unwrap(),
            Axis::new("t", 0.0, TAU, 101).unwrap(),
        ],
        BTreeMap::new(),
    )
    .unwrap();
    let result = run_sweep(&grid).unwrap();
    let ok = result.rows.iter().all(|r| r.eta >= 0.0 && r.eta < 0.5);
    let max = result.max_row().unwrap().eta;
    o.check(
        format!("Rabi 101x101 (kz, t) grid: eta in [0, 1/2) (max {max:.4})"),
        ok && result.rows.len() == 10201,
    );
    o
}

fn corpus() -> Vec<ChoiMatrix> {
    let mut out = vec![
        choi_of(CouplingSpec::RootSwap, AssignmentMap::Hadamard),
        choi_of(CouplingSpec::Cz, AssignmentMap::Hadamard),
    ];
    for k in 0..=100 {
        let alpha = k as f64 / 100.0;
        out.push(choi_of(CouplingSpec::Cz, AssignmentMap::alpha(alpha).unwrap()));
        out.push(analytic_choi_alpha(alpha).unwrap());
    }
    for i in 0..=40 {
        let theta = TAU * i as f64 / 40.0;
        out.push(choi_of(CouplingSpec::RotationTheta { theta }, AssignmentMap::Hadamard));
        for j in 0..=20 {
            let alpha = j as f64 / 20.0;
            out.push(choi_of(
                CouplingSpec::RotationTheta { theta },
                AssignmentMap::alpha(alpha).unwrap(),
            ));
        }
    }
    for i in 0..=16 {
        let delta = TAU * i as f64 / 16.0;
        out.push(choi_of(CouplingSpec::CzPrime { delta }, AssignmentMap::Hadamard));
        for j in 0..=16 {
            let xi = TAU * j as f64 / 16.0;
            out.push(choi_of(
                CouplingSpec::CzDoublePrime { delta, xi },
                AssignmentMap::Hadamard,
            ));
        }
    }
    for i in 0..=20 {
        for j in 0..=20 {
            let (kz, t) = (TAU * i as f64 / 20.0, TAU * j as f64 / 20.0);
            out.push(choi_of(CouplingSpec::rabi(kz, t), AssignmentMap::Hadamard));
            out.push(choi_of(
                CouplingSpec::rabi(kz, t),
                AssignmentMap::Rotation { phi: kz + t },
            ));
        }
    }
    let mut rng = StdRng::seed_from_u64(9);
    for k in 0..100 {
        let spec = CouplingSpec::custom(common::random_unitary(&mut rng, 4)).unwrap();
        for map in all_sharps(&mut rng, k % 10) {
            out.push(choi_of(spec.clone(), map));
        }
    }
    out
}

fn ac9() -> Outcome {
    let mut o = Outcome::new();
    let corpus = corpus();
    let mut worst: f64 = 0.0;
    let mut bounded = true;
    for choi in &corpus {
        let report = negativity(choi).unwrap();
        // Independent route: trace norm from the singular values of C.
        let norm = trace_norm(choi.matrix()).unwrap();
        let trace_form = 0.5 * (1.0 - choi.matrix().trace().re / norm);
        worst = worst.max((report.eta - trace_form).abs());
        worst = worst.max((report.eta - report.eta_from_trace()).abs());
        bounded &= (0.0..0.5).contains(&report.eta);
    }
    o.check(
        format!(
            "eigenvalue form == trace-norm form over {} Choi matrices (max diff {worst:.2e})",
            corpus.len()
        ),
        worst <= 1e-10,
    );
    o.check("eta in [0, 1/2) over the corpus", bounded);
    o
}

fn ac10() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = StdRng::seed_from_u64(10);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let x = Complex64::from_polar(rng.random::<f64>(), rng.random::<f64>() * TAU);
        let y = Complex64::from_polar(rng.random::<f64>(), rng.random::<f64>() * TAU);
        let mut closed = xform_spectrum(x, y);
        closed.sort_by(f64::total_cmp);
        let brute = hermitian_eig(&xform_matrix(x, y)).unwrap().eigenvalues;
        for (a, b) in closed.iter().zip(&brute) {
            worst = worst.max((a - b).abs());
        }
    }
    o.check(
        format!("closed-form X spectrum vs eigensolver, 100 pairs (max diff {worst:.2e})"),
        worst <= 1e-10,
    );
    // Local check that the identity gate really is in the corpus of sharp-invariant points.
    let id = kron(&gates::identity2(), &gates::identity2());
    o.check(
        "identity coupling is CP",
        eta(&choi_of(CouplingSpec::custom(id).unwrap(), AssignmentMap::Hadamard)) == 0.0,
    );
    o
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1", "root-swap channel", ac1),
        ("AC2", "CZ channel", ac2),
        ("AC3", "positivity conversion", ac3),
        ("AC4", "alpha family", ac4),
        ("AC5", "theta family", ac5),
        ("AC6", "combined theta-alpha family", ac6),
        ("AC7", "distances", ac7),
        ("AC8", "CP theorems", ac8),
        ("AC9", "negativity formula oracle", ac9),
        ("AC10", "X-form spectrum", ac10),
    ];
    let mut failed = Vec::new();
    for (id, name, run) in criteria {
        let outcome = run();
        let status = if outcome.passed() { "PASS" } else { "FAIL" };
        println!("{status} {id} {name}");
        for (label, ok) in &outcome.checks {
            println!("    [{}] {label}", if *ok { "ok" } else { "FAILED" });
        }
        for note in &outcome.notes {
            println!("    note: {note}");
        }
        if !outcome.passed() {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria: {}", failed.join(", "));
        ExitCode::FAILURE
    }
}
