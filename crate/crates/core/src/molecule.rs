//! Displaced-harmonic-oscillator model of a vibronic molecule and the
//! composite evolution operator it generates.
//!
//! Per mode (ħ = 1 throughout, d̃ = √D):
//!
//! ```text
//! H_g = ω₀ a†a
//! H_e = ω_eg + ω₀ D(d̃) a†a D(−d̃) = ω_eg + ω₀ (a†a − d̃(a + a†) + d̃²)
//! U(t) = e^{iH_g t} e^{−iH_e t} = e^{−iφ(t)} D(d̃(e^{iω₀t} − 1))
//! φ(t) = ω_eg t + d̃² sin ω₀t
//! ```
//!
//! The closed displacement form is the production path (exact per element);
//! the product of matrix exponentials is the brute-force check, built from
//! eigendecompositions of the real-symmetric truncated Hamiltonians.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::Result;
use crate::fock::{CavityOperator, TruncatedSpace};
use crate::C64;

/// One vibrational mode: frequency and electron-phonon coupling D = d̃².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeParams {
    /// Angular vibrational frequency ω₀ > 0.
    pub omega0: f64,
    /// Huang-Rhys parameter D ≥ 0.
    pub huang_rhys_d: f64,
}

impl ModeParams {
    pub fn new(omega0: f64, huang_rhys_d: f64) -> ModeParams {
        ModeParams {
            omega0,
            huang_rhys_d,
        }
    }

    /// d̃ = √D, the dimensionless displacement between the two minima.
    pub fn d_tilde(&self) -> f64 {
        self.huang_rhys_d.sqrt()
    }

    /// Largest displacement magnitude the protocol generates on this mode:
    /// |α(t)| = 2√D |sin(ω₀t/2)| ≤ 2√D.
    pub fn alpha_max(&self) -> f64 {
        2.0 * self.d_tilde()
    }
}

/// Electronic parameters: the 0-0 gap plus the vibrational mode list.
#[derive(Debug, Clone, PartialEq)]
pub struct MoleculeParams {
    /// 0-0 electronic splitting ω_eg > 0.
    pub omega_eg: f64,
    /// Vibrational modes; single-mode is the common case.
    pub modes: Vec<ModeParams>,
}

impl MoleculeParams {
    pub fn single_mode(omega_eg: f64, mode: ModeParams) -> MoleculeParams {
        MoleculeParams {
            omega_eg,
            modes: vec![mode],
        }
    }
}

/// Ground-surface Hamiltonian H_g = ω₀ a†a (diagonal).
pub fn hamiltonian_ground(mode: &ModeParams, space: &TruncatedSpace) -> CavityOperator {
    let dim = space.dim();
    let mut mat = DMatrix::zeros(dim, dim);
    for n in 0..dim {
        mat[(n, n)] = C64::new(mode.omega0 * n as f64, 0.0);
    }
    CavityOperator::from_matrix(mat)
}

/// Excited-surface Hamiltonian H_e = ω_eg + ω₀(a†a − d̃(a + a†) + d̃²).
///
/// This is the displaced-oscillator form ω_eg + ω₀ D(d̃) a†a D(−d̃): its
/// spectrum on the certified block is ω_eg + ω₀·n, and conjugating with
/// D(∓d̃) recovers ω_eg + H_g.
pub fn hamiltonian_excited(
    params: &MoleculeParams,
    mode: &ModeParams,
    space: &TruncatedSpace,
) -> CavityOperator {
    let mat = excited_real(params, mode, space).map(|x| C64::new(x, 0.0));
    CavityOperator::from_matrix(mat)
}

/// Real-symmetric representation of H_e in the Fock basis (tridiagonal).
fn excited_real(params: &MoleculeParams, mode: &ModeParams, space: &TruncatedSpace) -> DMatrix<f64> {
    let dim = space.dim();
    let dt = mode.d_tilde();
    let shift = params.omega_eg + mode.omega0 * mode.huang_rhys_d;
    let mut mat = DMatrix::zeros(dim, dim);
    for n in 0..dim {
        mat[(n, n)] = shift + mode.omega0 * n as f64;
        if n + 1 < dim {
            let coupling = -mode.omega0 * dt * ((n + 1) as f64).sqrt();
            mat[(n, n + 1)] = coupling;
            mat[(n + 1, n)] = coupling;
        }
    }
    mat
}

/// Interferometer phase φ(t) = ω_eg t + D sin ω₀t.
pub fn phase_phi(params: &MoleculeParams, mode: &ModeParams, t: f64) -> f64 {
    params.omega_eg * t + mode.huang_rhys_d * (mode.omega0 * t).sin()
}

/// Controlled-displacement amplitude α(t) = √D (e^{iω₀t} − 1).
pub fn displacement_amplitude(mode: &ModeParams, t: f64) -> C64 {
    let phase = C64::from_polar(1.0, mode.omega0 * t);
    (phase - C64::new(1.0, 0.0)) * mode.d_tilde()
}

/// Closed-form evolution operator U(t) = e^{−iφ(t)} D(α(t)).
pub fn evolution_closed(
    params: &MoleculeParams,
    mode: &ModeParams,
    t: f64,
    space: &TruncatedSpace,
) -> Result<CavityOperator> {
    let d = crate::fock::displacement_operator(displacement_amplitude(mode, t), space)?;
    let phase = C64::from_polar(1.0, -phase_phi(params, mode, t));
    Ok(CavityOperator::from_matrix(d.matrix() * phase))
}

/// Brute-force evolution operator e^{iH_g t} e^{−iH_e t} from
/// eigendecompositions of the truncated Hamiltonians. Verification path
/// only: O(dim³) against the closed form's O(dim²).
pub fn evolution_brute(
    params: &MoleculeParams,
    mode: &ModeParams,
    t: f64,
    space: &TruncatedSpace,
) -> CavityOperator {
    let dim = space.dim();
    let eig = SymmetricEigen::new(excited_real(params, mode, space));
    // exp(−iH_e t) = V diag(e^{−iλt}) Vᵀ with real V
    let mut phases = DMatrix::<C64>::zeros(dim, dim);
    for k in 0..dim {
        phases[(k, k)] = C64::from_polar(1.0, -eig.eigenvalues[k] * t);
    }
    let v = eig.eigenvectors.map(|x| C64::new(x, 0.0));
    let ue = &v * phases * v.transpose();
    // exp(+iH_g t) is diagonal; apply row-wise
    let mut u = ue;
    for m in 0..dim {
        let row_phase = C64::from_polar(1.0, mode.omega0 * m as f64 * t);
        for n in 0..dim {
            u[(m, n)] *= row_phase;
        }
    }
    CavityOperator::from_matrix(u)
}
