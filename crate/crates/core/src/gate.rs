use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

/// Gate kinds supported by the circuit model.
///
/// Multi-controlled gates act on all their wires symmetrically except
/// `MultiControlledX`, whose last wire is the target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GateKind {
    I,
    X,
    Y,
    Z,
    H,
    T,
    Tdg,
    PhaseShift(f64),
    MultiControlledZ,
    MultiControlledPhaseShift(f64),
    /// Controlled NOT with any number of controls (CNOT for two wires).
    MultiControlledX,
    Measure,
    Barrier,
}

impl GateKind {
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::I => "I",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::H => "H",
            GateKind::T => "T",
            GateKind::Tdg => "TDG",
            GateKind::PhaseShift(_) => "PS",
            GateKind::MultiControlledZ => "MCZ",
            GateKind::MultiControlledPhaseShift(_) => "MCPS",
            GateKind::MultiControlledX => "MCX",
            GateKind::Measure => "MEASURE",
            GateKind::Barrier => "BARRIER",
        }
    }

    pub fn is_unitary(&self) -> bool {
        !matches!(self, GateKind::Measure | GateKind::Barrier)
    }

    /// The rotation angle carried by parameterized kinds.
    pub fn phase(&self) -> Option<f64> {
        match *self {
            GateKind::PhaseShift(phi) | GateKind::MultiControlledPhaseShift(phi) => Some(phi),
            _ => None,
        }
    }

    pub fn is_single_qubit(&self) -> bool {
        self.single_qubit_matrix().is_some()
    }

    pub fn is_multi_controlled(&self) -> bool {
        matches!(
            self,
            GateKind::MultiControlledZ
                | GateKind::MultiControlledPhaseShift(_)
                | GateKind::MultiControlledX
        )
    }

    /// Whether `arity` wires is a legal width for this kind.
    pub fn accepts_arity(&self, arity: usize) -> bool {
        if self.is_single_qubit() {
            arity == 1
        } else {
            arity >= 1
        }
    }

    /// Row-major 2x2 matrix of a single-qubit kind.
    pub fn single_qubit_matrix(&self) -> Option<[C64; 4]> {
        let zero = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let m = match *self {
            GateKind::I => [one, zero, zero, one],
            GateKind::X => [zero, one, one, zero],
            GateKind::Y => [zero, -i, i, zero],
            GateKind::Z => [one, zero, zero, -one],
            GateKind::H => [
                C64::new(r, 0.0),
                C64::new(r, 0.0),
                C64::new(r, 0.0),
                C64::new(-r, 0.0),
            ],
            GateKind::T => [
                one,
                zero,
                zero,
                C64::from_polar(1.0, std::f64::consts::FRAC_PI_4),
            ],
            GateKind::Tdg => [
                one,
                zero,
                zero,
                C64::from_polar(1.0, -std::f64::consts::FRAC_PI_4),
            ],
            GateKind::PhaseShift(phi) => [one, zero, zero, C64::from_polar(1.0, phi)],
            _ => return None,
        };
        Some(m)
    }

    fn validate_phase(&self) -> Result<()> {
        match self.phase() {
            Some(phi) if !phi.is_finite() => Err(Error::InvalidArgument(format!(
                "non-finite phase {phi} on {}",
                self.name()
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.phase() {
            Some(phi) => write!(f, "{}({phi})", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<C64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(dim: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), dim * dim);
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim);
        let d = self.dim;
        let mut out = Matrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * rhs.data[k * d + j];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Matrix {
        let d = self.dim;
        let mut out = Matrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        out
    }

    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let (a, b) = (self.dim, rhs.dim);
        let mut out = Matrix::zeros(a * b);
        for i in 0..a {
            for j in 0..a {
                let x = self.get(i, j);
                for k in 0..b {
                    for l in 0..b {
                        out.set(i * b + k, j * b + l, x * rhs.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Largest entry-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entry-wise deviation after aligning `other`'s global phase to
    /// `self` on the largest entry.
    pub fn max_abs_diff_up_to_phase(&self, other: &Matrix) -> f64 {
        let (idx, _) = self
            .data
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .expect("non-empty matrix");
        let (a, b) = (self.data[idx], other.data[idx]);
        if b.norm() == 0.0 {
            return f64::INFINITY;
        }
        let phase = (a / b) / (a / b).norm();
        self.data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| (x - y * phase).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.mul(&self.adjoint())
            .max_abs_diff(&Matrix::identity(self.dim))
            <= tol
    }
}

/// The `2^arity x 2^arity` matrix of `kind`, with the first listed wire as the
/// most significant bit of the local index.
pub fn gate_unitary(kind: GateKind, arity: usize) -> Result<Matrix> {
    if !kind.is_unitary() {
        return Err(Error::NotUnitary(kind.name()));
    }
    if !kind.accepts_arity(arity) || arity > 16 {
        return Err(Error::ArityMismatch {
            kind: kind.name(),
            arity,
        });
    }
    kind.validate_phase()?;
    if let Some(m) = kind.single_qubit_matrix() {
        return Ok(Matrix::from_rows(2, m.to_vec()));
    }
    let dim = 1usize << arity;
    let last = dim - 1;
    let mut m = Matrix::identity(dim);
    match kind {
        GateKind::MultiControlledZ => m.set(last, last, C64::new(-1.0, 0.0)),
        GateKind::MultiControlledPhaseShift(phi) => m.set(last, last, C64::from_polar(1.0, phi)),
        GateKind::MultiControlledX => {
            // controls all set: swap target 0 <-> 1
            let zero = C64::new(0.0, 0.0);
            let one = C64::new(1.0, 0.0);
            m.set(last - 1, last - 1, zero);
            m.set(last, last, zero);
            m.set(last - 1, last, one);
            m.set(last, last - 1, one);
        }
        _ => unreachable!("single-qubit kinds handled above"),
    }
    Ok(m)
}
