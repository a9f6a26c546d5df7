//! Bit conventions for the tensor-product basis of 2 central + N bath spins.
//!
//! A basis state is a `usize` whose bits record the σ^z projection of every
//! spin, `0` = up, `1` = down:
//!
//! - bit 0: central spin 2
//! - bit 1: central spin 1
//! - bit j+2: bath spin j (j = 0..N-1)
//!
//! The two central spins live on the lowest-order bits so that the value
//! `index & 3` directly enumerates the product basis in the order
//! (↑↑, ↑↓, ↓↑, ↓↓) and the partial trace over the bath becomes a stride-4
//! reduction over `index >> 2`.

use crate::error::{Error, Result};

/// Upper limit on the bath size; 2^(N+2) amplitudes must stay addressable.
pub const MAX_BATH_SPINS: usize = 28;

/// σ^z configuration of the two central spins, in product-basis order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentralPattern {
    UpUp,
    UpDown,
    DownUp,
    DownDown,
}

impl CentralPattern {
    /// All four patterns in product-basis order.
    pub const ALL: [CentralPattern; 4] = [
        CentralPattern::UpUp,
        CentralPattern::UpDown,
        CentralPattern::DownUp,
        CentralPattern::DownDown,
    ];

    /// Position in the product basis (↑↑, ↑↓, ↓↑, ↓↓) = (0, 1, 2, 3);
    /// identical to the two low-order bits of any basis index carrying it.
    pub fn index(self) -> usize {
        match self {
            CentralPattern::UpUp => 0,
            CentralPattern::UpDown => 1,
            CentralPattern::DownUp => 2,
            CentralPattern::DownDown => 3,
        }
    }
}

/// Sizes and bit positions for a fixed system of 2 central + N bath spins.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinLayout {
    n_bath: usize,
}

impl SpinLayout {
    pub fn new(n_bath: usize) -> Result<Self> {
        if n_bath > MAX_BATH_SPINS {
            return Err(Error::config(format!(
                "bath size {n_bath} exceeds the supported maximum {MAX_BATH_SPINS}"
            )));
        }
        Ok(SpinLayout { n_bath })
    }

    pub fn n_central(&self) -> usize {
        2
    }

    pub fn n_bath(&self) -> usize {
        self.n_bath
    }

    pub fn n_spins(&self) -> usize {
        self.n_bath + 2
    }

    /// Dimension of the full Hilbert space, 2^(N+2).
    pub fn dim(&self) -> usize {
        1 << (self.n_bath + 2)
    }

    /// Dimension of the bath factor, 2^N.
    pub fn bath_dim(&self) -> usize {
        1 << self.n_bath
    }

    /// Bit position of central spin `k` (k = 0 for S1, 1 for S2).
    pub fn central_bit(&self, k: usize) -> usize {
        debug_assert!(k < 2);
        1 - k
    }

    /// Bit position of bath spin `j`.
    pub fn bath_bit(&self, j: usize) -> usize {
        debug_assert!(j < self.n_bath);
        j + 2
    }

    /// Basis index of the configuration (central pattern, bath index).
    pub fn encode(&self, central: CentralPattern, bath_index: usize) -> Result<usize> {
        if bath_index >= self.bath_dim() {
            return Err(Error::index(format!(
                "bath index {bath_index} out of range for {} bath spins (max {})",
                self.n_bath,
                self.bath_dim() - 1
            )));
        }
        Ok(central.index() | (bath_index << 2))
    }

    /// Invert `encode`: (central part, bath part) of a basis index.
    pub fn decode(&self, index: usize) -> (CentralPattern, usize) {
        (CentralPattern::ALL[index & 3], index >> 2)
    }
}
