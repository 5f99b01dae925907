//! Assignment (sharp) maps, coupling unitaries and the reduced channel
//! `ε(τ) = Tr_B(U τ♯ U†)`.

use std::fmt;

use num_complex::Complex64;

use crate::cmatrix::{c, expm_unitary, gates, kron, partial_trace_bath, ComplexMatrix};
use crate::error::{Error, Result};

/// Largest accepted `max |τ² - τ|` for a state fed to a sharp map.
pub const PURITY_TOLERANCE: f64 = 1e-10;
/// Largest accepted `max |U†U - I|` for user-supplied unitaries.
pub const UNITARY_TOLERANCE: f64 = 1e-10;

/// Injects a tomography state of the reduced system into a two-qubit composite state.
///
/// Every variant has the form `τ ↦ τ ⊗ β(τ)`, so tracing out the bath always returns `τ`.
#[derive(Clone, Debug, PartialEq)]
pub enum AssignmentMap {
    /// Bath prepared as `R(φ) τ R(φ)†` with the real rotation `R(φ)`.
    Rotation { phi: f64 },
    /// Bath prepared as `u τ u†`.
    UnitaryConjugation(ComplexMatrix),
    /// Bath prepared as `H τ H†`.
    Hadamard,
    /// Bath prepared as `U_α τ U_α†` with `U_α = α σx + √(1-α²) σz`.
    Alpha(f64),
    /// Uncorrelated bath in a fixed density matrix.
    Product(ComplexMatrix),
}

impl AssignmentMap {
    pub fn unitary_conjugation(u: ComplexMatrix) -> Result<Self> {
        check_unitary(&u, 2)?;
        Ok(Self::UnitaryConjugation(u))
    }

    pub fn alpha(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Self::Alpha(alpha))
    }

    pub fn product(bath: ComplexMatrix) -> Result<Self> {
        check_density_matrix(&bath)?;
        Ok(Self::Product(bath))
    }

    /// The single-qubit unitary applied to the bath copy, if this map has one.
    pub fn bath_unitary(&self) -> Result<Option<ComplexMatrix>> {
        Ok(match self {
            Self::Rotation { phi } => Some(rotation(*phi)),
            Self::UnitaryConjugation(u) => Some(u.clone()),
            Self::Hadamard => Some(gates::hadamard()),
            Self::Alpha(a) => Some(alpha_unitary(*a)?),
            Self::Product(_) => None,
        })
    }

    pub fn apply(&self, tau: &ComplexMatrix) -> Result<ComplexMatrix> {
        apply_sharp(self, tau)
    }
}

impl fmt::Display for AssignmentMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Rotation { phi } => write!(f, "rotation(phi={phi})"),
            Self::UnitaryConjugation(_) => f.write_str("unitary"),
            Self::Hadamard => f.write_str("hadamard"),
            Self::Alpha(a) => write!(f, "alpha(alpha={a})"),
            Self::Product(_) => f.write_str("product"),
        }
    }
}

/// `R(φ) = [[cos φ, -sin φ], [sin φ, cos φ]]`.
pub fn rotation(phi: f64) -> ComplexMatrix {
    let (s, co) = phi.sin_cos();
    ComplexMatrix::from_real_rows([[co, -s], [s, co]])
}

/// `U_α = α σx + √(1-α²) σz`, unitary for `α ∈ [0, 1]`.
pub fn alpha_unitary(alpha: f64) -> Result<ComplexMatrix> {
    check_alpha(alpha)?;
    let z = (1.0 - alpha * alpha).sqrt();
    Ok(ComplexMatrix::from_real_rows([[z, alpha], [alpha, -z]]))
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Domain(format!("alpha must lie in [0, 1], got {alpha}")));
    }
    Ok(())
}

fn check_unitary(u: &ComplexMatrix, dim: usize) -> Result<()> {
    if u.dim() != dim {
        return Err(Error::Dimension {
            expected: dim,
            found: u.dim(),
        });
    }
    if !u.is_finite() {
        return Err(Error::Domain("unitary has non-finite entries".into()));
    }
    let residual = u.unitarity_residual();
    if residual > UNITARY_TOLERANCE {
        return Err(Error::NotUnitary { residual });
    }
    Ok(())
}

fn check_density_matrix(rho: &ComplexMatrix) -> Result<()> {
    if rho.dim() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            found: rho.dim(),
        });
    }
    let herm = rho.hermiticity_residual();
    if herm > 1e-12 {
        return Err(Error::NotHermitian { residual: herm });
    }
    let tr = rho.trace();
    if (tr - c(1.0, 0.0)).norm() > 1e-12 {
        return Err(Error::Domain(format!("bath state has trace {tr}, expected 1")));
    }
    // 2×2 Hermitian with unit trace is PSD iff det ≥ 0.
    if rho.determinant().re < -1e-12 {
        return Err(Error::Domain("bath state is not positive semidefinite".into()));
    }
    Ok(())
}

/// Checks that `tau` is a pure unit-trace qubit state; sharp maps are undefined elsewhere.
fn check_tomography_state(tau: &ComplexMatrix) -> Result<()> {
    if tau.dim() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            found: tau.dim(),
        });
    }
    let herm = tau.hermiticity_residual();
    let trace_dev = (tau.trace() - c(1.0, 0.0)).norm();
    let purity = (tau * tau).max_abs_diff(tau);
    if herm > PURITY_TOLERANCE || trace_dev > PURITY_TOLERANCE || purity > PURITY_TOLERANCE {
        return Err(Error::Domain(format!(
            "sharp map is only defined on pure tomography states \
             (hermiticity {herm:e}, trace deviation {trace_dev:e}, purity residual {purity:e})"
        )));
    }
    Ok(())
}

/// `τ ⊗ β(τ)`, the composite initial state assigned to the tomography state `τ`.
pub fn apply_sharp(map: &AssignmentMap, tau: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_tomography_state(tau)?;
    let bath = match map {
        AssignmentMap::Product(rho) => {
            check_density_matrix(rho)?;
            rho.clone()
        }
        other => {
            let u = other.bath_unitary()?.expect("non-product maps carry a bath unitary");
            if let AssignmentMap::UnitaryConjugation(u) = other {
                check_unitary(u, 2)?;
            }
            &(&u * tau) * &u.adjoint()
        }
    };
    Ok(kron(tau, &bath))
}

/// Two-qubit composite dynamics.
#[derive(Clone, Debug, PartialEq)]
pub enum CouplingSpec {
    RootSwap,
    Cz,
    /// `diag(1, 1, 1, e^{-iδ})`.
    CzPrime {
        delta: f64,
    },
    /// `diag(1, 1, e^{-iξ}, e^{-iδ})`.
    CzDoublePrime {
        delta: f64,
        xi: f64,
    },
    /// Rotation by `θ` in the `{|01⟩, |10⟩}` plane.
    RotationTheta {
        theta: f64,
    },
    /// `exp(-i t H)` with `H = H_q⊗I + I⊗H_q + k_z σz⊗σz`, `H_q = ½[[-ν, Ω], [Ω, ν]]`, in the bare basis.
    Rabi {
        nu: f64,
        omega: f64,
        kz: f64,
        t: f64,
    },
    Custom(ComplexMatrix),
}

impl CouplingSpec {
    /// Resonant Rabi dynamics with `ν = 0`, `Ω = 1`.
    pub fn rabi(kz: f64, t: f64) -> Self {
        Self::Rabi {
            nu: 0.0,
            omega: 1.0,
            kz,
            t,
        }
    }

    pub fn custom(u: ComplexMatrix) -> Result<Self> {
        check_unitary(&u, 4)?;
        Ok(Self::Custom(u))
    }

    pub fn realize(&self) -> Result<ComplexMatrix> {
        realize_coupling(self)
    }
}

impl fmt::Display for CouplingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::RootSwap => f.write_str("rootswap"),
            Self::Cz => f.write_str("cz"),
            Self::CzPrime { delta } => write!(f, "czprime(delta={delta})"),
            Self::CzDoublePrime { delta, xi } => write!(f, "czdoubleprime(delta={delta},xi={xi})"),
            Self::RotationTheta { theta } => write!(f, "utheta(theta={theta})"),
            Self::Rabi { nu, omega, kz, t } => {
                write!(f, "rabi(nu={nu},omega={omega},kz={kz},t={t})")
            }
            Self::Custom(_) => f.write_str("custom"),
        }
    }
}

/// Single-atom Rabi Hamiltonian `½[[-ν, Ω], [Ω, ν]]` (ħ = 1).
pub fn rabi_qubit_hamiltonian(nu: f64, omega: f64) -> ComplexMatrix {
    ComplexMatrix::from_real_rows([[-0.5 * nu, 0.5 * omega], [0.5 * omega, 0.5 * nu]])
}

/// Two identical Rabi atoms with a `k_z σz⊗σz` coupling.
pub fn rabi_hamiltonian(nu: f64, omega: f64, kz: f64) -> ComplexMatrix {
    let hq = rabi_qubit_hamiltonian(nu, omega);
    let id = gates::identity2();
    let z = gates::sigma_z();
    let local = &kron(&hq, &id) + &kron(&id, &hq);
    &local + &kron(&z, &z).scale(c(kz, 0.0))
}

fn phase(angle: f64) -> Complex64 {
    Complex64::from_polar(1.0, -angle)
}

fn require_finite(values: &[f64]) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::Domain(format!("coupling parameters must be finite: {values:?}")))
    }
}

pub fn realize_coupling(spec: &CouplingSpec) -> Result<ComplexMatrix> {
    let one = c(1.0, 0.0);
    Ok(match spec {
        CouplingSpec::RootSwap => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            let z = c(0.0, 0.0);
            ComplexMatrix::from_rows([
                [one, z, z, z],
                [z, c(h, 0.0), c(0.0, h), z],
                [z, c(0.0, h), c(h, 0.0), z],
                [z, z, z, one],
            ])
        }
        CouplingSpec::Cz => ComplexMatrix::diagonal(&[one, one, one, -one]),
        CouplingSpec::CzPrime { delta } => {
            require_finite(&[*delta])?;
            ComplexMatrix::diagonal(&[one, one, one, phase(*delta)])
        }
        CouplingSpec::CzDoublePrime { delta, xi } => {
            require_finite(&[*delta, *xi])?;
            ComplexMatrix::diagonal(&[one, one, phase(*xi), phase(*delta)])
        }
        CouplingSpec::RotationTheta { theta } => {
            require_finite(&[*theta])?;
            let (s, co) = theta.sin_cos();
            ComplexMatrix::from_real_rows([
                [1.0, 0.0, 0.0, 0.0],
                [0.0, co, s, 0.0],
                [0.0, -s, co, 0.0],
                [0.0, 0.0, 0.0, 1.0],
            ])
        }
        CouplingSpec::Rabi { nu, omega, kz, t } => {
            require_finite(&[*nu, *omega, *kz, *t])?;
            expm_unitary(&rabi_hamiltonian(*nu, *omega, *kz), *t)?
        }
        CouplingSpec::Custom(u) => {
            check_unitary(u, 4)?;
            u.clone()
        }
    })
}

/// A coupling and sharp map with the coupling unitary realized once.
#[derive(Clone, Debug)]
pub struct Channel {
    coupling: CouplingSpec,
    sharp: AssignmentMap,
    unitary: ComplexMatrix,
}

impl Channel {
    pub fn new(coupling: CouplingSpec, sharp: AssignmentMap) -> Result<Self> {
        let unitary = realize_coupling(&coupling)?;
        Ok(Self {
            coupling,
            sharp,
            unitary,
        })
    }

    pub fn coupling(&self) -> &CouplingSpec {
        &self.coupling
    }

    pub fn sharp(&self) -> &AssignmentMap {
        &self.sharp
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        &self.unitary
    }

    /// `Tr_B(U τ♯ U†)`.
    pub fn evaluate(&self, tau: &ComplexMatrix) -> Result<ComplexMatrix> {
        let composite = apply_sharp(&self.sharp, tau)?;
        let evolved = &(&self.unitary * &composite) * &self.unitary.adjoint();
        partial_trace_bath(&evolved)
    }
}

pub fn apply_channel(spec: &CouplingSpec, map: &AssignmentMap, tau: &ComplexMatrix) -> Result<ComplexMatrix> {
    Channel::new(spec.clone(), map.clone())?.evaluate(tau)
}
