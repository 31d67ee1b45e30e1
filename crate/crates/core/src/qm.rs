//! A discretized particle in a box [0, L].
//!
//! The box is sampled at N interior points x_j = j·L/(N+1); wavefunctions are
//! complex N-vectors normalized with the spacing-weighted sum
//! Σ h·|ψ_j|² = 1. Multiplication operators live in the diagonal algebra and
//! the momentum operator in the full matrix algebra.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::linalg::{CMat, C64, ZERO};
use crate::states::{vector_state, State};

#[derive(Clone, Debug)]
pub struct BoxGrid {
    length: f64,
    points: usize,
    hbar: f64,
    mass: f64,
    diagonal: Arc<Algebra>,
}

impl BoxGrid {
    /// Grid with ħ = m = 1.
    pub fn new(length: f64, points: usize) -> Result<BoxGrid> {
        BoxGrid::with_constants(length, points, 1.0, 1.0)
    }

    pub fn with_constants(length: f64, points: usize, hbar: f64, mass: f64) -> Result<BoxGrid> {
        if points < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 interior points, got {points}")));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidGrid(format!("box length must be positive, got {length}")));
        }
        if !(hbar.is_finite() && hbar > 0.0 && mass.is_finite() && mass > 0.0) {
            return Err(Error::InvalidGrid("ħ and m must be positive".into()));
        }
        Ok(BoxGrid { length, points, hbar, mass, diagonal: Algebra::diagonal(points) })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn spacing(&self) -> f64 {
        self.length / (self.points + 1) as f64
    }

    pub fn abscissae(&self) -> Vec<f64> {
        let h = self.spacing();
        (1..=self.points).map(|j| j as f64 * h).collect()
    }

    /// The algebra of multiplication operators on the grid.
    pub fn diagonal_algebra(&self) -> &Arc<Algebra> {
        &self.diagonal
    }

    fn multiplication(&self, f: impl Fn(f64) -> C64) -> Element {
        let d: Vec<C64> = self.abscissae().into_iter().map(f).collect();
        Element::from_coords(&self.diagonal, &d)
    }
}

/// A wavefunction sampled on a grid.
#[derive(Clone, Debug)]
pub struct GridState {
    pub amplitudes: Vec<C64>,
    pub grid: BoxGrid,
}

impl GridState {
    /// Σ h·|ψ_j|².
    pub fn norm_sqr(&self) -> f64 {
        self.grid.spacing() * self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>()
    }

    /// Spacing-weighted inner product ⟨ψ, φ⟩ = Σ h·ψ_j·conj(φ_j).
    pub fn inner(&self, other: &GridState) -> C64 {
        let s: C64 = self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a * b.conj()).sum();
        s * self.grid.spacing()
    }

    /// Euclidean unit vector √h·ψ.
    pub fn unit_vector(&self) -> Vec<C64> {
        let s = self.grid.spacing().sqrt();
        self.amplitudes.iter().map(|z| z * s).collect()
    }
}

/// ψ_n(x) = √(2/L)·sin(nπx/L) on the grid, renormalized.
pub fn box_eigenstate(g: &BoxGrid, n: usize) -> Result<GridState> {
    if n == 0 || n > g.points {
        return Err(Error::LevelOutOfRange { level: n, max: g.points });
    }
    let amp = (2.0 / g.length).sqrt();
    let raw: Vec<f64> = g.abscissae().iter().map(|x| amp * (n as f64 * PI * x / g.length).sin()).collect();
    let norm = (g.spacing() * raw.iter().map(|v| v * v).sum::<f64>()).sqrt();
    Ok(GridState { amplitudes: raw.iter().map(|v| C64::new(v / norm, 0.0)).collect(), grid: g.clone() })
}

/// E_n = n²π²ħ²/(2mL²).
pub fn box_energy(g: &BoxGrid, n: usize) -> f64 {
    let n = n as f64;
    n * n * PI * PI * g.hbar * g.hbar / (2.0 * g.mass * g.length * g.length)
}

/// x̂ = diag(x_j).
pub fn position_operator(g: &BoxGrid) -> Element {
    g.multiplication(|x| C64::new(x, 0.0))
}

/// −2cos(2πx/L) as a multiplication operator.
pub fn cosine_observable(g: &BoxGrid) -> Element {
    g.multiplication(|x| C64::new(-2.0 * (2.0 * PI * x / g.length).cos(), 0.0))
}

/// e^{ikx̂} = diag(e^{ikx_j}).
pub fn phase_shift(g: &BoxGrid, k: f64) -> Element {
    g.multiplication(|x| C64::from_polar(1.0, k * x))
}

/// p̂ = −iħ·D with D the central difference (wrapping around when
/// `periodic`).
pub fn momentum_operator(g: &BoxGrid, periodic: bool) -> Result<Element> {
    let n = g.points;
    if n < 3 {
        return Err(Error::InvalidGrid(format!("momentum needs at least 3 points, got {n}")));
    }
    let c = C64::new(0.0, -g.hbar / (2.0 * g.spacing()));
    let mut p = CMat::zeros(n, n);
    for j in 0..n {
        if j + 1 < n || periodic {
            p[(j, (j + 1) % n)] = c;
        }
        if j > 0 || periodic {
            p[(j, (j + n - 1) % n)] = -c;
        }
    }
    Element::new(&Algebra::full(n), p)
}

/// ⟨aψ, ψ⟩ with the spacing-weighted inner product.
pub fn expectation(a: &Element, psi: &GridState) -> Result<C64> {
    let m = a.matrix();
    let n = psi.amplitudes.len();
    if m.rows() != n {
        return Err(Error::DimensionMismatch(format!("{}×{} observable on a {n}-point grid", m.rows(), m.cols())));
    }
    let h = psi.grid.spacing();
    let s: C64 = if m.is_diagonal() {
        m.diagonal().iter().zip(&psi.amplitudes).map(|(d, z)| d * z.norm_sqr()).sum()
    } else {
        m.matvec(&psi.amplitudes).iter().zip(&psi.amplitudes).map(|(a, b)| a * b.conj()).sum()
    };
    Ok(s * h)
}

/// ω_n, the vector state of ψ_n restricted to `alg`.
pub fn eigenstate_functional(g: &BoxGrid, n: usize, alg: &Arc<Algebra>) -> Result<State> {
    if alg.ambient_dim() != g.points {
        return Err(Error::DimensionMismatch(format!(
            "algebra of {}×{} matrices on a {}-point grid",
            alg.ambient_dim(),
            alg.ambient_dim(),
            g.points
        )));
    }
    let psi = box_eigenstate(g, n)?;
    vector_state(alg, &psi.unit_vector())
}

/// Sums of the interior rows of x̂p̂ − p̂x̂ (those away from the wrap-around
/// entries of a periodic p̂); each equals iħ.
pub fn commutator_row_sums(g: &BoxGrid, periodic: bool) -> Result<Vec<C64>> {
    let x = position_operator(g);
    let p = momentum_operator(g, periodic)?;
    let c = x.matrix().commutator(p.matrix());
    let n = g.points;
    Ok((1..n - 1).map(|i| (0..n).map(|j| c[(i, j)]).fold(ZERO, |s, z| s + z)).collect())
}
