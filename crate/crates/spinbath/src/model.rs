//! The model Hamiltonian H = H_c + H_ce + H_e and its matrix-free action.
//!
//! H_c = -J S1·S2 couples the two central spins; H_e couples bath pairs on
//! the chosen topology with per-axis strengths Ω; H_ce couples each central
//! spin to each bath spin with per-axis strengths Δ. All spin operators are
//! spin-1/2 (half Pauli), so every two-spin axis term has operator norm 1/4.
//!
//! No matrix is ever stored: the Hamiltonian is compiled into a list of
//! two-spin terms, each applied as a bit-indexed kernel over the amplitude
//! vector.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::layout::SpinLayout;
use crate::rng::stream_rng;
use crate::state::PureState;
use crate::topology::EdgeList;

/// How the intra-bath couplings Ω are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BathCouplingMode {
    /// No intra-bath interaction (H_e = 0).
    None,
    /// Each Ω_{i,j}^(α) i.i.d. uniform on [-Ω, Ω].
    HeisenbergLike,
    /// Ω_{i,j}^(α) = Ω identically for every pair and axis.
    Isotropic,
}

/// How the central-bath couplings Δ are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentralCouplingMode {
    /// Δ_{i,j}^(α) = Δ identically.
    Isotropic,
    /// Each Δ_{i,j}^(α) i.i.d. uniform on [-Δ, Δ].
    HeisenbergLike,
    /// One random value per pair, shared by the three axes, uniform on [0, Δ].
    DiagRandom,
}

/// Selects which part of H an operation acts with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HamiltonianPart {
    Full,
    /// H_c only.
    Central,
    /// H_e only.
    Bath,
    /// H_ce only.
    CentralBath,
}

/// Per-pair, per-axis coupling values, aligned with a pair list.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingTable {
    values: Vec<[f64; 3]>,
}

impl CouplingTable {
    pub fn empty() -> Self {
        CouplingTable { values: Vec::new() }
    }

    pub fn values(&self) -> &[[f64; 3]] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sum of |c| over all pairs and axes.
    fn abs_sum(&self) -> f64 {
        self.values
            .iter()
            .map(|v| v[0].abs() + v[1].abs() + v[2].abs())
            .sum()
    }
}

/// Draw the intra-bath coupling table for the given edges.
///
/// Values are drawn edge by edge in the (lexicographically sorted) edge
/// order, axes x, y, z within each edge, so the seed fully determines the
/// table.
pub fn sample_bath_couplings(
    mode: BathCouplingMode,
    omega: f64,
    edges: &EdgeList,
    seed: u64,
) -> CouplingTable {
    match mode {
        BathCouplingMode::None => CouplingTable::empty(),
        BathCouplingMode::Isotropic => CouplingTable {
            values: vec![[omega; 3]; edges.len()],
        },
        BathCouplingMode::HeisenbergLike => {
            let mut rng = stream_rng(seed);
            let bound = omega.abs();
            let values = (0..edges.len())
                .map(|_| {
                    let mut v = [0.0; 3];
                    for axis in &mut v {
                        *axis = if bound == 0.0 {
                            0.0
                        } else {
                            rng.gen_range(-bound..=bound)
                        };
                    }
                    v
                })
                .collect();
            CouplingTable { values }
        }
    }
}

/// Draw the central-bath coupling table: 2N pairs ordered (central spin 1,
/// bath 0..N-1) then (central spin 2, bath 0..N-1), axes x, y, z within each.
pub fn sample_ce_couplings(
    mode: CentralCouplingMode,
    delta: f64,
    n_bath: usize,
    seed: u64,
) -> CouplingTable {
    let n_pairs = 2 * n_bath;
    match mode {
        CentralCouplingMode::Isotropic => CouplingTable {
            values: vec![[delta; 3]; n_pairs],
        },
        CentralCouplingMode::HeisenbergLike => {
            let mut rng = stream_rng(seed);
            let bound = delta.abs();
            let values = (0..n_pairs)
                .map(|_| {
                    let mut v = [0.0; 3];
                    for axis in &mut v {
                        *axis = if bound == 0.0 {
                            0.0
                        } else {
                            rng.gen_range(-bound..=bound)
                        };
                    }
                    v
                })
                .collect();
            CouplingTable { values }
        }
        CentralCouplingMode::DiagRandom => {
            let mut rng = stream_rng(seed);
            let (lo, hi) = if delta >= 0.0 { (0.0, delta) } else { (delta, 0.0) };
            let values = (0..n_pairs)
                .map(|_| {
                    let d = if lo == hi { lo } else { rng.gen_range(lo..=hi) };
                    [d; 3]
                })
                .collect();
            CouplingTable { values }
        }
    }
}

/// One compiled two-spin term -(cx SxSx + cy SySy + cz SzSz) on bit
/// positions (lo, hi). `diag` acts with + on aligned and - on anti-aligned
/// configurations; `flip_aligned` couples ↑↑ ↔ ↓↓ and `flip_anti` ↑↓ ↔ ↓↑.
#[derive(Debug, Clone, Copy)]
struct PairTerm {
    bit_lo: usize,
    bit_hi: usize,
    diag: f64,
    flip_aligned: f64,
    flip_anti: f64,
}

impl PairTerm {
    fn new(bit_a: usize, bit_b: usize, c: [f64; 3]) -> Self {
        let (bit_lo, bit_hi) = if bit_a < bit_b {
            (bit_a, bit_b)
        } else {
            (bit_b, bit_a)
        };
        debug_assert!(bit_lo < bit_hi);
        PairTerm {
            bit_lo,
            bit_hi,
            diag: -c[2] / 4.0,
            flip_aligned: -(c[0] - c[1]) / 4.0,
            flip_anti: -(c[0] + c[1]) / 4.0,
        }
    }

    /// y += T x over the whole amplitude vector.
    fn accumulate(&self, x: &[Complex64], y: &mut [Complex64]) {
        let dim = x.len();
        let mp = 1usize << self.bit_lo;
        let mq = 1usize << self.bit_hi;
        let low_mask = mp - 1;
        let mid_shift = self.bit_hi - 1 - self.bit_lo;
        let mid_mask = ((1usize << mid_shift) - 1) << self.bit_lo;
        let d = self.diag;
        let fa = self.flip_aligned;
        let fx = self.flip_anti;
        for g in 0..dim / 4 {
            let low = g & low_mask;
            let mid = (g & mid_mask) << 1;
            let high = (g >> (self.bit_lo + mid_shift)) << (self.bit_hi + 1);
            let i00 = high | mid | low;
            let i01 = i00 | mp; // spin at bit_lo flipped down
            let i10 = i00 | mq; // spin at bit_hi flipped down
            let i11 = i00 | mp | mq;
            // All indices are < dim by construction: g enumerates the
            // dim/4 configurations of the remaining bits.
            unsafe {
                let x00 = *x.get_unchecked(i00);
                let x01 = *x.get_unchecked(i01);
                let x10 = *x.get_unchecked(i10);
                let x11 = *x.get_unchecked(i11);
                let y00 = y.get_unchecked_mut(i00);
                y00.re += d * x00.re + fa * x11.re;
                y00.im += d * x00.im + fa * x11.im;
                let y11 = y.get_unchecked_mut(i11);
                y11.re += d * x11.re + fa * x00.re;
                y11.im += d * x11.im + fa * x00.im;
                let y01 = y.get_unchecked_mut(i01);
                y01.re += -d * x01.re + fx * x10.re;
                y01.im += -d * x01.im + fx * x10.im;
                let y10 = y.get_unchecked_mut(i10);
                y10.re += -d * x10.re + fx * x01.re;
                y10.im += -d * x10.im + fx * x01.im;
            }
        }
    }
}

/// A fully specified model: couplings plus the compiled term stream.
#[derive(Debug, Clone)]
pub struct ModelSpec {
    j: f64,
    layout: SpinLayout,
    bath_edges: EdgeList,
    bath_couplings: CouplingTable,
    ce_couplings: CouplingTable,
    bath_mode: BathCouplingMode,
    ce_mode: CentralCouplingMode,
    central_term: PairTerm,
    bath_terms: Vec<PairTerm>,
    ce_terms: Vec<PairTerm>,
}

impl ModelSpec {
    /// Assemble a model. The bath coupling table must have one entry per
    /// edge (or be empty, meaning H_e = 0); the central-bath table must have
    /// 2N entries (or be empty, meaning H_ce = 0).
    pub fn new(
        j: f64,
        layout: SpinLayout,
        bath_edges: EdgeList,
        bath_couplings: CouplingTable,
        bath_mode: BathCouplingMode,
        ce_couplings: CouplingTable,
        ce_mode: CentralCouplingMode,
    ) -> Result<Self> {
        if !bath_couplings.is_empty() && bath_couplings.len() != bath_edges.len() {
            return Err(Error::mismatch(format!(
                "bath coupling table has {} entries for {} edges",
                bath_couplings.len(),
                bath_edges.len()
            )));
        }
        if !ce_couplings.is_empty() && ce_couplings.len() != 2 * layout.n_bath() {
            return Err(Error::mismatch(format!(
                "central-bath coupling table has {} entries for {} pairs",
                ce_couplings.len(),
                2 * layout.n_bath()
            )));
        }
        if let Some(&(_, j_max)) = bath_edges.edges().last() {
            if j_max >= layout.n_bath() {
                return Err(Error::mismatch(format!(
                    "edge vertex {} outside bath of size {}",
                    j_max,
                    layout.n_bath()
                )));
            }
        }

        let central_term = PairTerm::new(layout.central_bit(0), layout.central_bit(1), [j; 3]);
        let bath_terms = bath_edges
            .edges()
            .iter()
            .zip(bath_couplings.values())
            .map(|(&(a, b), &c)| PairTerm::new(layout.bath_bit(a), layout.bath_bit(b), c))
            .collect();
        let n = layout.n_bath();
        let ce_terms = ce_couplings
            .values()
            .iter()
            .enumerate()
            .map(|(p, &c)| {
                let (i, jb) = (p / n, p % n);
                PairTerm::new(layout.central_bit(i), layout.bath_bit(jb), c)
            })
            .collect();

        Ok(ModelSpec {
            j,
            layout,
            bath_edges,
            bath_couplings,
            ce_couplings,
            bath_mode,
            ce_mode,
            central_term,
            bath_terms,
            ce_terms,
        })
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn layout(&self) -> SpinLayout {
        self.layout
    }

    pub fn bath_edges(&self) -> &EdgeList {
        &self.bath_edges
    }

    pub fn bath_couplings(&self) -> &CouplingTable {
        &self.bath_couplings
    }

    pub fn ce_couplings(&self) -> &CouplingTable {
        &self.ce_couplings
    }

    pub fn bath_mode(&self) -> BathCouplingMode {
        self.bath_mode
    }

    pub fn ce_mode(&self) -> CentralCouplingMode {
        self.ce_mode
    }

    /// Raw (bit_lo, bit_hi, [cx, cy, cz]) triples of every term, in the
    /// fixed order central, bath edges, central-bath pairs. Used by the
    /// product-formula cross-check, which exponentiates terms one by one.
    pub(crate) fn pair_terms_for_splitting(&self) -> Vec<(usize, usize, [f64; 3])> {
        let mut terms = Vec::with_capacity(1 + self.bath_terms.len() + self.ce_terms.len());
        terms.push((
            self.layout.central_bit(1),
            self.layout.central_bit(0),
            [self.j; 3],
        ));
        for (&(a, b), &c) in self.bath_edges.edges().iter().zip(self.bath_couplings.values()) {
            terms.push((self.layout.bath_bit(a), self.layout.bath_bit(b), c));
        }
        let n = self.layout.n_bath();
        for (p, &c) in self.ce_couplings.values().iter().enumerate() {
            let (i, jb) = (p / n, p % n);
            let (lo, hi) = (self.layout.central_bit(i), self.layout.bath_bit(jb));
            terms.push((lo.min(hi), lo.max(hi), c));
        }
        terms
    }

    /// y = H_part x over raw amplitude slices (y is overwritten).
    pub(crate) fn apply_part_into(
        &self,
        part: HamiltonianPart,
        x: &[Complex64],
        y: &mut [Complex64],
    ) {
        debug_assert_eq!(x.len(), self.layout.dim());
        debug_assert_eq!(y.len(), x.len());
        y.fill(Complex64::new(0.0, 0.0));
        let (central, bath, ce) = match part {
            HamiltonianPart::Full => (true, true, true),
            HamiltonianPart::Central => (true, false, false),
            HamiltonianPart::Bath => (false, true, false),
            HamiltonianPart::CentralBath => (false, false, true),
        };
        if central {
            self.central_term.accumulate(x, y);
        }
        if bath {
            for term in &self.bath_terms {
                term.accumulate(x, y);
            }
        }
        if ce {
            for term in &self.ce_terms {
                term.accumulate(x, y);
            }
        }
    }
}

/// The (unnormalized) image H_part |ψ⟩.
pub fn apply_hamiltonian(
    spec: &ModelSpec,
    part: HamiltonianPart,
    psi: &PureState,
) -> Result<PureState> {
    if psi.layout() != spec.layout() {
        return Err(Error::mismatch(format!(
            "state has {} bath spins, model has {}",
            psi.layout().n_bath(),
            spec.layout().n_bath()
        )));
    }
    let mut out = PureState::zeros(spec.layout());
    spec.apply_part_into(part, psi.amplitudes(), out.amplitudes_mut());
    Ok(out)
}

/// ⟨ψ|H_part|ψ⟩ for a normalized ψ; real for Hermitian H.
pub fn expectation(spec: &ModelSpec, part: HamiltonianPart, psi: &PureState) -> Result<f64> {
    let image = apply_hamiltonian(spec, part, psi)?;
    Ok(psi.inner(&image)?.re)
}

/// Triangle-inequality upper bound on ‖H‖:
/// (3/4)|J| + (1/4) Σ |Ω| + (1/4) Σ |Δ|, every two-spin axis term having
/// operator norm 1/4 and H_c containing three of them.
pub fn spectral_bound(spec: &ModelSpec) -> f64 {
    0.75 * spec.j.abs()
        + 0.25 * spec.bath_couplings.abs_sum()
        + 0.25 * spec.ce_couplings.abs_sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::{CentralPattern, SpinLayout};
    use crate::state::{basis_state, random_bath_state, PureState};
    use crate::topology::build_topology;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    pub(crate) fn random_state(layout: SpinLayout, seed: u64) -> PureState {
        let amps = random_bath_state(layout.n_spins(), seed);
        PureState::from_amplitudes(layout, amps).unwrap()
    }

    /// J-only model on the given layout.
    fn central_only(j: f64, layout: SpinLayout) -> ModelSpec {
        ModelSpec::new(
            j,
            layout,
            EdgeList::empty(),
            CouplingTable::empty(),
            BathCouplingMode::None,
            CouplingTable::empty(),
            CentralCouplingMode::Isotropic,
        )
        .unwrap()
    }

    pub(crate) fn random_model(n_bath: usize, k: usize, seed: u64) -> ModelSpec {
        let layout = SpinLayout::new(n_bath).unwrap();
        let edges = build_topology(k, n_bath).unwrap();
        let bath = sample_bath_couplings(BathCouplingMode::HeisenbergLike, 0.8, &edges, seed);
        let ce = sample_ce_couplings(CentralCouplingMode::HeisenbergLike, 0.3, n_bath, seed + 1);
        ModelSpec::new(
            -5.0,
            layout,
            edges,
            bath,
            BathCouplingMode::HeisenbergLike,
            ce,
            CentralCouplingMode::HeisenbergLike,
        )
        .unwrap()
    }

    #[test]
    fn heisenberg_like_values_bounded() {
        let edges = build_topology(2, 16).unwrap();
        let table = sample_bath_couplings(BathCouplingMode::HeisenbergLike, 0.15, &edges, 3);
        assert_eq!(table.len(), 16);
        for v in table.values() {
            for &c in v {
                assert!(c.abs() <= 0.15);
            }
        }
    }

    #[test]
    fn isotropic_bath_couplings_identical() {
        let edges = build_topology(2, 8).unwrap();
        let table = sample_bath_couplings(BathCouplingMode::Isotropic, 0.15, &edges, 0);
        assert!(table.values().iter().all(|v| *v == [0.15; 3]));
    }

    #[test]
    fn heisenberg_like_moments() {
        // uniform on [-1, 1]: mean 0, variance 1/3, within 5 standard errors
        let edges = build_topology(15, 16).unwrap();
        let mut values = Vec::new();
        for seed in 0..85u64 {
            let t = sample_bath_couplings(BathCouplingMode::HeisenbergLike, 1.0, &edges, seed);
            values.extend(t.values().iter().flatten().copied());
        }
        assert!(values.len() >= 10_000);
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| v * v).sum::<f64>() / n;
        let se_mean = (1.0f64 / 3.0).sqrt() / n.sqrt();
        // Var of x^2 for uniform [-1,1] is 1/5 - 1/9 = 4/45
        let se_var = (4.0f64 / 45.0).sqrt() / n.sqrt();
        assert!(mean.abs() < 5.0 * se_mean, "mean {mean}");
        assert!((var - 1.0 / 3.0).abs() < 5.0 * se_var, "variance {var}");
    }

    #[test]
    fn ce_modes() {
        let iso = sample_ce_couplings(CentralCouplingMode::Isotropic, -0.075, 16, 0);
        assert_eq!(iso.len(), 32);
        assert!(iso.values().iter().all(|v| *v == [-0.075; 3]));

        let heis = sample_ce_couplings(CentralCouplingMode::HeisenbergLike, 0.15, 16, 1);
        assert!(heis
            .values()
            .iter()
            .flatten()
            .all(|c| c.abs() <= 0.15));

        let diag = sample_ce_couplings(CentralCouplingMode::DiagRandom, 0.1, 16, 2);
        for v in diag.values() {
            assert_eq!(v[0], v[1]);
            assert_eq!(v[1], v[2]);
            assert!((0.0..=0.1).contains(&v[0]));
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let edges = build_topology(2, 10).unwrap();
        let a = sample_bath_couplings(BathCouplingMode::HeisenbergLike, 0.5, &edges, 11);
        let b = sample_bath_couplings(BathCouplingMode::HeisenbergLike, 0.5, &edges, 11);
        assert_eq!(a, b);
    }

    #[test]
    fn central_action_on_up_down() {
        // H_c = -J S1·S2 with J=-5 sends |↑↓⟩ to -1.25|↑↓⟩ + 2.5|↓↑⟩
        let layout = SpinLayout::new(3).unwrap();
        let spec = central_only(-5.0, layout);
        let psi = basis_state(layout, CentralPattern::UpDown, 5).unwrap();
        let image = apply_hamiltonian(&spec, HamiltonianPart::Central, &psi).unwrap();
        let up_down = layout.encode(CentralPattern::UpDown, 5).unwrap();
        let down_up = layout.encode(CentralPattern::DownUp, 5).unwrap();
        assert_abs_diff_eq!(image.amplitudes()[up_down].re, -1.25, epsilon = 1e-14);
        assert_abs_diff_eq!(image.amplitudes()[down_up].re, 2.5, epsilon = 1e-14);
        let rest: f64 = image
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != up_down && *i != down_up)
            .map(|(_, a)| a.norm())
            .sum();
        assert_eq!(rest, 0.0);
    }

    #[test]
    fn singlet_and_triplet_eigenvalues() {
        // H_c |S⟩ = (3J/4)|S⟩ and H_c |T0⟩ = (-J/4)|T0⟩
        let j = -5.0;
        let layout = SpinLayout::new(2).unwrap();
        let spec = central_only(j, layout);
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        let mut singlet = [Complex64::new(0.0, 0.0); 4];
        singlet[CentralPattern::UpDown.index()] = Complex64::new(inv_sqrt2, 0.0);
        singlet[CentralPattern::DownUp.index()] = Complex64::new(-inv_sqrt2, 0.0);
        let bath = random_bath_state(2, 4);
        let psi = crate::state::product_state(&singlet, &bath).unwrap();
        let image = apply_hamiltonian(&spec, HamiltonianPart::Central, &psi).unwrap();
        for (a, b) in psi.amplitudes().iter().zip(image.amplitudes()) {
            assert_abs_diff_eq!((a * 0.75 * j).re, b.re, epsilon = 1e-14);
            assert_abs_diff_eq!((a * 0.75 * j).im, b.im, epsilon = 1e-14);
        }

        let mut triplet0 = [Complex64::new(0.0, 0.0); 4];
        triplet0[CentralPattern::UpDown.index()] = Complex64::new(inv_sqrt2, 0.0);
        triplet0[CentralPattern::DownUp.index()] = Complex64::new(inv_sqrt2, 0.0);
        let psi = crate::state::product_state(&triplet0, &bath).unwrap();
        let image = apply_hamiltonian(&spec, HamiltonianPart::Central, &psi).unwrap();
        for (a, b) in psi.amplitudes().iter().zip(image.amplitudes()) {
            assert_abs_diff_eq!((a * -0.25 * j).re, b.re, epsilon = 1e-14);
            assert_abs_diff_eq!((a * -0.25 * j).im, b.im, epsilon = 1e-14);
        }
    }

    #[test]
    fn hermiticity_on_random_vectors() {
        let spec = random_model(5, 2, 7);
        let layout = spec.layout();
        for seed in 0..6 {
            let phi = random_state(layout, 100 + seed);
            let psi = random_state(layout, 200 + seed);
            let h_psi = apply_hamiltonian(&spec, HamiltonianPart::Full, &psi).unwrap();
            let h_phi = apply_hamiltonian(&spec, HamiltonianPart::Full, &phi).unwrap();
            let lhs = phi.inner(&h_psi).unwrap();
            let rhs = psi.inner(&h_phi).unwrap().conj();
            assert_abs_diff_eq!(lhs.re, rhs.re, epsilon = 1e-12);
            assert_abs_diff_eq!(lhs.im, rhs.im, epsilon = 1e-12);
        }
    }

    #[test]
    fn linearity() {
        let spec = random_model(4, 3, 9);
        let layout = spec.layout();
        let psi = random_state(layout, 31);
        let phi = random_state(layout, 32);
        let a = Complex64::new(0.3, -1.1);
        let b = Complex64::new(-0.7, 0.2);
        let combo_amps: Vec<Complex64> = psi
            .amplitudes()
            .iter()
            .zip(phi.amplitudes())
            .map(|(x, y)| a * x + b * y)
            .collect();
        let combo = PureState::from_amplitudes(layout, combo_amps).unwrap();
        let h_combo = apply_hamiltonian(&spec, HamiltonianPart::Full, &combo).unwrap();
        let h_psi = apply_hamiltonian(&spec, HamiltonianPart::Full, &psi).unwrap();
        let h_phi = apply_hamiltonian(&spec, HamiltonianPart::Full, &phi).unwrap();
        for ((z, x), y) in h_combo
            .amplitudes()
            .iter()
            .zip(h_psi.amplitudes())
            .zip(h_phi.amplitudes())
        {
            let expect = a * x + b * y;
            assert_abs_diff_eq!(z.re, expect.re, epsilon = 1e-12);
            assert_abs_diff_eq!(z.im, expect.im, epsilon = 1e-12);
        }
    }

    #[test]
    fn parts_sum_to_full() {
        let spec = random_model(9, 4, 13);
        let psi = random_state(spec.layout(), 77);
        let full = apply_hamiltonian(&spec, HamiltonianPart::Full, &psi).unwrap();
        let hc = apply_hamiltonian(&spec, HamiltonianPart::Central, &psi).unwrap();
        let he = apply_hamiltonian(&spec, HamiltonianPart::Bath, &psi).unwrap();
        let hce = apply_hamiltonian(&spec, HamiltonianPart::CentralBath, &psi).unwrap();
        for (((f, c), e), x) in full
            .amplitudes()
            .iter()
            .zip(hc.amplitudes())
            .zip(he.amplitudes())
            .zip(hce.amplitudes())
        {
            let sum = c + e + x;
            assert_abs_diff_eq!(f.re, sum.re, epsilon = 1e-12);
            assert_abs_diff_eq!(f.im, sum.im, epsilon = 1e-12);
        }
    }

    #[test]
    fn central_energy_commutes_for_isotropic_ce() {
        // [H, H_c] = 0 when H_ce is isotropic, for any bath couplings
        let n_bath = 5;
        let layout = SpinLayout::new(n_bath).unwrap();
        let edges = build_topology(2, n_bath).unwrap();
        let bath = sample_bath_couplings(BathCouplingMode::HeisenbergLike, 1.3, &edges, 5);
        let ce = sample_ce_couplings(CentralCouplingMode::Isotropic, -0.4, n_bath, 6);
        let spec = ModelSpec::new(
            -5.0,
            layout,
            edges,
            bath,
            BathCouplingMode::HeisenbergLike,
            ce,
            CentralCouplingMode::Isotropic,
        )
        .unwrap();
        let psi = random_state(layout, 55);
        let h_psi = apply_hamiltonian(&spec, HamiltonianPart::Full, &psi).unwrap();
        let hc_h_psi = apply_hamiltonian(&spec, HamiltonianPart::Central, &h_psi).unwrap();
        let hc_psi = apply_hamiltonian(&spec, HamiltonianPart::Central, &psi).unwrap();
        let h_hc_psi = apply_hamiltonian(&spec, HamiltonianPart::Full, &hc_psi).unwrap();
        let commutator_norm: f64 = hc_h_psi
            .amplitudes()
            .iter()
            .zip(h_hc_psi.amplitudes())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(
            commutator_norm <= 1e-10 * psi.norm(),
            "commutator norm {commutator_norm}"
        );
    }

    #[test]
    fn spectral_bound_values() {
        let layout = SpinLayout::new(4).unwrap();
        let spec = central_only(-5.0, layout);
        assert_abs_diff_eq!(spectral_bound(&spec), 3.75, epsilon = 1e-15);

        // isotropic Δ=-0.075 at N=16, K=0: 3.75 + 96*0.075/4 = 5.55
        let layout = SpinLayout::new(16).unwrap();
        let ce = sample_ce_couplings(CentralCouplingMode::Isotropic, -0.075, 16, 0);
        let spec = ModelSpec::new(
            -5.0,
            layout,
            EdgeList::empty(),
            CouplingTable::empty(),
            BathCouplingMode::None,
            ce,
            CentralCouplingMode::Isotropic,
        )
        .unwrap();
        assert_abs_diff_eq!(spectral_bound(&spec), 5.55, epsilon = 1e-12);
    }

    #[test]
    fn expectation_real_for_random_states() {
        let spec = random_model(4, 0, 21);
        let psi = random_state(spec.layout(), 90);
        let image = apply_hamiltonian(&spec, HamiltonianPart::Full, &psi).unwrap();
        let val = psi.inner(&image).unwrap();
        assert!(val.im.abs() < 1e-12);
    }

    #[test]
    fn layout_mismatch_rejected() {
        let spec = random_model(4, 0, 2);
        let psi = PureState::zeros(SpinLayout::new(5).unwrap());
        assert!(apply_hamiltonian(&spec, HamiltonianPart::Full, &psi).is_err());
    }
}
