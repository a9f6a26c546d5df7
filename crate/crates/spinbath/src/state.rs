//! Pure many-spin states over the σ^z product basis.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::layout::{CentralPattern, SpinLayout};
use crate::rng::{standard_complex, stream_rng};

/// Tolerance on the Euclidean norm of constructed states.
pub const NORM_TOL: f64 = 1e-12;

/// A pure state of the whole system: one complex amplitude per basis index.
#[derive(Debug, Clone)]
pub struct PureState {
    layout: SpinLayout,
    amps: Vec<Complex64>,
}

impl PureState {
    /// Wrap a raw amplitude vector. The length must match the layout; the
    /// norm is not constrained (Hamiltonian images are unnormalized).
    pub fn from_amplitudes(layout: SpinLayout, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != layout.dim() {
            return Err(Error::mismatch(format!(
                "amplitude vector length {} does not match layout dimension {}",
                amps.len(),
                layout.dim()
            )));
        }
        Ok(PureState { layout, amps })
    }

    /// The zero vector (useful as an accumulator).
    pub fn zeros(layout: SpinLayout) -> Self {
        PureState {
            layout,
            amps: vec![Complex64::new(0.0, 0.0); layout.dim()],
        }
    }

    pub fn layout(&self) -> SpinLayout {
        self.layout
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub(crate) fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    /// Euclidean norm ‖ψ‖.
    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&mut self) {
        let norm = self.norm();
        if norm > 0.0 {
            let inv = 1.0 / norm;
            for a in &mut self.amps {
                *a *= inv;
            }
        }
    }

    /// ⟨self|other⟩, conjugate-linear in `self`.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        inner_product(self, other)
    }
}

/// ⟨a|b⟩ = Σ conj(a_i) b_i, conjugate-linear in the first argument.
pub fn inner_product(a: &PureState, b: &PureState) -> Result<Complex64> {
    if a.layout != b.layout {
        return Err(Error::mismatch(format!(
            "inner product between layouts with {} and {} bath spins",
            a.layout.n_bath(),
            b.layout.n_bath()
        )));
    }
    Ok(a.amps
        .iter()
        .zip(&b.amps)
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// The basis state |central⟩ ⊗ |bath_index⟩.
pub fn basis_state(
    layout: SpinLayout,
    central: CentralPattern,
    bath_index: usize,
) -> Result<PureState> {
    let index = layout.encode(central, bath_index)?;
    let mut state = PureState::zeros(layout);
    state.amps[index] = Complex64::new(1.0, 0.0);
    Ok(state)
}

/// A normalized random superposition of all 2^N bath basis states.
///
/// Amplitudes are i.i.d. complex normal and the vector is normalized, which
/// samples the unitarily invariant ensemble — the pure-state counterpart of
/// the bath's infinite-temperature density matrix. Deterministic per seed.
pub fn random_bath_state(n_bath: usize, seed: u64) -> Vec<Complex64> {
    assert!(n_bath >= 1, "random bath state needs at least one spin");
    let mut rng = stream_rng(seed);
    let mut amps: Vec<Complex64> = (0..1usize << n_bath)
        .map(|_| standard_complex(&mut rng))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let inv = 1.0 / norm;
    for a in &mut amps {
        *a *= inv;
    }
    amps
}

/// Tensor product |central⟩ ⊗ |bath⟩ under the layout bit convention.
///
/// `central` is a 4-component vector over (↑↑, ↑↓, ↓↑, ↓↓); `bath` must have
/// length 2^N. Both factors must be normalized.
pub fn product_state(central: &[Complex64; 4], bath: &[Complex64]) -> Result<PureState> {
    if !bath.len().is_power_of_two() {
        return Err(Error::mismatch(format!(
            "bath factor length {} is not a power of two",
            bath.len()
        )));
    }
    let n_bath = bath.len().trailing_zeros() as usize;
    let layout = SpinLayout::new(n_bath)?;

    let central_norm = central.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if (central_norm - 1.0).abs() > NORM_TOL {
        return Err(Error::mismatch(format!(
            "central factor norm {central_norm} is not 1 within {NORM_TOL:e}"
        )));
    }
    let bath_norm = bath.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if (bath_norm - 1.0).abs() > NORM_TOL {
        return Err(Error::mismatch(format!(
            "bath factor norm {bath_norm} is not 1 within {NORM_TOL:e}"
        )));
    }

    let mut amps = vec![Complex64::new(0.0, 0.0); layout.dim()];
    for (b, &beta) in bath.iter().enumerate() {
        let base = b << 2;
        for (a, &alpha) in central.iter().enumerate() {
            amps[base | a] = alpha * beta;
        }
    }
    Ok(PureState { layout, amps })
}

/// Central factor for the fixed initial condition |↑↓⟩.
pub fn up_down_central() -> [Complex64; 4] {
    let mut v = [Complex64::new(0.0, 0.0); 4];
    v[CentralPattern::UpDown.index()] = Complex64::new(1.0, 0.0);
    v
}
