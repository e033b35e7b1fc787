//! Exact n-qubit Pauli operators in the binary symplectic representation.
//!
//! An operator is `i^phase_exp * P_0 ⊗ P_1 ⊗ ... ⊗ P_{n-1}` where site `k` is
//! `I, X, Z, Y` for `(x_k, z_k) = (0,0), (1,0), (0,1), (1,1)`. Note that `Y` is
//! stored directly, not as the product `XZ`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bits::{full_mask, VertexSet};
use crate::MAX_QUBITS;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PauliError {
    #[error("dimension mismatch: {0} vs {1} qubits")]
    DimensionMismatch(usize, usize),
    #[error("qubit count {0} outside 1..=32")]
    BadQubitCount(usize),
    #[error("mask bits set above qubit {0}")]
    MaskOutOfRange(usize),
    #[error("cannot parse Pauli string {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n: usize,
    x_mask: u32,
    z_mask: u32,
    phase_exp: u8,
}

impl PauliOperator {
    pub fn new(n: usize, x_mask: u32, z_mask: u32, phase_exp: u8) -> Result<Self, PauliError> {
        if n == 0 || n > MAX_QUBITS {
            return Err(PauliError::BadQubitCount(n));
        }
        let full = full_mask(n);
        if x_mask & !full != 0 || z_mask & !full != 0 {
            return Err(PauliError::MaskOutOfRange(n - 1));
        }
        Ok(PauliOperator {
            n,
            x_mask,
            z_mask,
            phase_exp: phase_exp % 4,
        })
    }

    pub fn identity(n: usize) -> Result<Self, PauliError> {
        Self::new(n, 0, 0, 0)
    }

    /// Single-site operator; `kind` is one of `'X' 'Y' 'Z' 'I'`.
    pub fn single(n: usize, qubit: usize, kind: char) -> Result<Self, PauliError> {
        let bit = 1u32 << qubit;
        let (x, z) = match kind {
            'I' => (0, 0),
            'X' => (bit, 0),
            'Y' => (bit, bit),
            'Z' => (0, bit),
            _ => return Err(PauliError::Parse(kind.to_string())),
        };
        Self::new(n, x, z, 0)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn x_mask(&self) -> u32 {
        self.x_mask
    }
    pub fn z_mask(&self) -> u32 {
        self.z_mask
    }
    pub fn phase_exp(&self) -> u8 {
        self.phase_exp
    }

    pub fn is_identity(&self) -> bool {
        self.x_mask == 0 && self.z_mask == 0
    }

    /// Hermitian iff the overall phase is real.
    pub fn is_hermitian(&self) -> bool {
        self.phase_exp.is_multiple_of(2)
    }

    /// `+1` or `-1` for Hermitian operators; `None` for `±i` phases.
    pub fn sign(&self) -> Option<i8> {
        match self.phase_exp {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    pub fn with_phase(self, phase_exp: u8) -> Self {
        PauliOperator {
            phase_exp: phase_exp % 4,
            ..self
        }
    }

    pub fn negated(self) -> Self {
        self.with_phase(self.phase_exp + 2)
    }

    pub fn support_mask(&self) -> VertexSet {
        self.x_mask | self.z_mask
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> usize {
        self.support_mask().count_ones() as usize
    }

    pub fn support(&self) -> Vec<usize> {
        crate::bits::iter_bits(self.support_mask()).collect()
    }

    fn check_dim(&self, other: &Self) -> Result<(), PauliError> {
        if self.n != other.n {
            Err(PauliError::DimensionMismatch(self.n, other.n))
        } else {
            Ok(())
        }
    }

    /// Operator product `self · other`, phase-exact.
    pub fn multiply(&self, other: &Self) -> Result<Self, PauliError> {
        self.check_dim(other)?;
        let (x1, z1, x2, z2) = (self.x_mask, self.z_mask, other.x_mask, other.z_mask);
        let (y1, xo1, zo1) = (x1 & z1, x1 & !z1, !x1 & z1);
        let (y2, xo2, zo2) = (x2 & z2, x2 & !z2, !x2 & z2);
        // Sitewise: XY = iZ, YZ = iX, ZX = iY and the reversed orders give -i.
        let plus = (xo1 & y2) | (y1 & zo2) | (zo1 & xo2);
        let minus = (y1 & xo2) | (zo1 & y2) | (xo1 & zo2);
        let delta = plus.count_ones() as i64 - minus.count_ones() as i64;
        let phase = (self.phase_exp as i64 + other.phase_exp as i64 + delta).rem_euclid(4);
        Ok(PauliOperator {
            n: self.n,
            x_mask: x1 ^ x2,
            z_mask: z1 ^ z2,
            phase_exp: phase as u8,
        })
    }

    /// Symplectic commutation test.
    pub fn commutes(&self, other: &Self) -> Result<bool, PauliError> {
        self.check_dim(other)?;
        let s = (self.x_mask & other.z_mask).count_ones() + (self.z_mask & other.x_mask).count_ones();
        Ok(s.is_multiple_of(2))
    }

    /// Action on a computational basis state: `P|j> = coeff * |j ^ x_mask>`,
    /// with `coeff = i^k` returned as `k mod 4`. Qubit `q` is bit `q` of `j`.
    #[inline]
    pub fn apply_to_basis(&self, j: u64) -> (u64, u8) {
        let y_count = (self.x_mask & self.z_mask).count_ones();
        let z_sign = ((self.z_mask as u64) & j).count_ones() * 2;
        let k = (self.phase_exp as u32 + y_count + z_sign) % 4;
        (j ^ self.x_mask as u64, k as u8)
    }

    /// Single-qubit letter at site `q`.
    pub fn letter(&self, q: usize) -> char {
        match ((self.x_mask >> q) & 1, (self.z_mask >> q) & 1) {
            (0, 0) => 'I',
            (1, 0) => 'X',
            (0, 1) => 'Z',
            _ => 'Y',
        }
    }
}

impl fmt::Display for PauliOperator {
    /// Renders `"XZZ"`, `"-XXX"`, `"iY"`, `"-iY"`; the leftmost letter is qubit 0.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["", "i", "-", "-i"][self.phase_exp as usize];
        f.write_str(prefix)?;
        for q in 0..self.n {
            write!(f, "{}", self.letter(q))?;
        }
        Ok(())
    }
}

impl FromStr for PauliOperator {
    type Err = PauliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let (phase, body) = if let Some(r) = t.strip_prefix("+i") {
            (1, r)
        } else if let Some(r) = t.strip_prefix("-i") {
            (3, r)
        } else if let Some(r) = t.strip_prefix('i') {
            (1, r)
        } else if let Some(r) = t.strip_prefix('-') {
            (2, r)
        } else if let Some(r) = t.strip_prefix('+') {
            (0, r)
        } else {
            (0, t)
        };
        let n = body.chars().count();
        if n == 0 || n > MAX_QUBITS {
            return Err(PauliError::Parse(s.to_string()));
        }
        let (mut x, mut z) = (0u32, 0u32);
        for (q, c) in body.chars().enumerate() {
            match c {
                'I' => {}
                'X' => x |= 1 << q,
                'Z' => z |= 1 << q,
                'Y' => {
                    x |= 1 << q;
                    z |= 1 << q;
                }
                _ => return Err(PauliError::Parse(s.to_string())),
            }
        }
        PauliOperator::new(n, x, z, phase)
    }
}
