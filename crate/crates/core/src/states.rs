//! Positive functionals, states and the GNS construction.

use std::sync::Arc;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::linalg::{herm_eig, op_norm, vec_norm, CMat, C64, DEFAULT_TOL, ZERO};
use crate::random;
use crate::spectral::classify;

/// Eigenvalues of the Gram matrix at most this fraction of the largest are
/// treated as zero when forming the null space 𝒩_f.
pub const GNS_NULL_TOL: f64 = 1e-10;

/// A linear functional stored by its values on the algebra basis.
#[derive(Clone, Debug)]
pub struct Functional {
    algebra: Arc<Algebra>,
    values: Vec<C64>,
}

impl Functional {
    pub fn new(alg: &Arc<Algebra>, values: Vec<C64>) -> Result<Functional> {
        if values.len() != alg.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for an algebra of dimension {}",
                values.len(),
                alg.dim()
            )));
        }
        if values.iter().any(|z| !z.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Functional { algebra: Arc::clone(alg), values })
    }

    /// a ↦ trace(ρ·a).
    pub fn from_density(alg: &Arc<Algebra>, rho: &CMat) -> Result<Functional> {
        if rho.rows() != alg.ambient_dim() || rho.cols() != alg.ambient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "density of shape {}×{} for {}×{} matrices",
                rho.rows(),
                rho.cols(),
                alg.ambient_dim(),
                alg.ambient_dim()
            )));
        }
        Functional::new(alg, alg.trace_pairing(rho))
    }

    /// Restriction of a functional defined on all ambient matrices.
    pub fn from_ambient(alg: &Arc<Algebra>, f: impl Fn(&CMat) -> C64) -> Functional {
        let values = (0..alg.dim()).map(|i| f(&alg.basis_element(i))).collect();
        Functional { algebra: Arc::clone(alg), values }
    }

    pub fn zero(alg: &Arc<Algebra>) -> Functional {
        Functional { algebra: Arc::clone(alg), values: vec![ZERO; alg.dim()] }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    /// f on the projection of `m` onto the algebra.
    pub fn eval(&self, m: &CMat) -> C64 {
        self.eval_coords(&self.algebra.coords(m))
    }

    pub fn eval_coords(&self, coords: &[C64]) -> C64 {
        coords.iter().zip(&self.values).map(|(c, v)| c * v).sum()
    }

    pub fn apply(&self, a: &Element) -> C64 {
        self.eval(a.matrix())
    }

    pub fn scale(&self, s: C64) -> Functional {
        Functional { algebra: Arc::clone(&self.algebra), values: self.values.iter().map(|v| v * s).collect() }
    }

    pub fn add(&self, other: &Functional) -> Result<Functional> {
        if !self.algebra.same_as(&other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(Functional { algebra: Arc::clone(&self.algebra), values })
    }

    /// f(𝟙), if the algebra is unital.
    pub fn at_identity(&self) -> Option<C64> {
        self.algebra.identity_coords().map(|c| self.eval_coords(c))
    }

    /// H_pq = f(e_p*·e_q), so that f(b*a) = c(b)*·H·c(a).
    pub fn gram(&self) -> Result<CMat> {
        let alg = &self.algebra;
        if !alg.is_star_closed() {
            return Err(Error::NotStarClosed);
        }
        let d = alg.dim();
        if alg.is_diagonal_basis() {
            // e_p*·e_q = δ_pq·e_p
            return Ok(CMat::diag(&self.values));
        }
        let basis = alg.basis();
        let adjoints: Vec<CMat> = basis.iter().map(CMat::adjoint).collect();
        let mut h = CMat::zeros(d, d);
        for p in 0..d {
            for q in p..d {
                let v = self.eval(&adjoints[p].matmul(&basis[q]));
                h[(p, q)] = v;
                if p != q {
                    // f(e_q*e_p) = conj f(e_p*e_q) is only guaranteed for
                    // Hermitian f, so evaluate it directly
                    h[(q, p)] = self.eval(&adjoints[q].matmul(&basis[p]));
                }
            }
        }
        Ok(h)
    }
}

/// Outcome of the Gram-matrix positivity test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PositivityReport {
    pub positive: bool,
    pub min_gram_eigenvalue: f64,
    /// ‖H − H*‖, zero for Hermitian functionals.
    pub hermitian_residual: f64,
}

pub fn is_positive_functional(alg: &Algebra, f: &Functional) -> Result<PositivityReport> {
    if !alg.same_as(&f.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let h = f.gram()?;
    let hermitian_residual = h.distance(&h.adjoint());
    let scale = h.frobenius_norm().max(1.0);
    let sym = (&h + &h.adjoint()).scale_real(0.5);
    let eig = herm_eig(&sym)?;
    let min_gram_eigenvalue = eig.values.first().copied().unwrap_or(0.0);
    let positive = hermitian_residual <= DEFAULT_TOL * scale && min_gram_eigenvalue >= -DEFAULT_TOL * scale;
    Ok(PositivityReport { positive, min_gram_eigenvalue, hermitian_residual })
}

fn require_positive(f: &Functional) -> Result<()> {
    let report = is_positive_functional(&f.algebra, f)?;
    if !report.positive {
        return Err(Error::NotPositive(format!(
            "Gram matrix has eigenvalue {:.3e} (hermitian residual {:.3e})",
            report.min_gram_eigenvalue, report.hermitian_residual
        )));
    }
    Ok(())
}

/// ‖f‖ = f(𝟙) for a positive functional on a unital algebra.
pub fn functional_norm(alg: &Algebra, f: &Functional) -> Result<f64> {
    if !alg.same_as(&f.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    require_positive(f)?;
    f.at_identity().map(|v| v.re).ok_or(Error::NotUnital)
}

/// max |f(a)| over `samples` seeded random elements scaled to operator norm 1;
/// a lower bound for ‖f‖.
pub fn unit_ball_sup(f: &Functional, samples: usize, seed: u64) -> f64 {
    let mut rng = random::rng(seed);
    let mut best: f64 = 0.0;
    for _ in 0..samples {
        let a = random::element(&mut rng, &f.algebra);
        let norm = a.op_norm();
        if norm > 0.0 {
            best = best.max(f.apply(&a).norm() / norm);
        }
    }
    best
}

/// f(a*a)·f(b*b) − |f(b*a)|², non-negative for positive f.
pub fn cauchy_schwarz_residual(f: &Functional, a: &Element, b: &Element) -> Result<f64> {
    require_positive(f)?;
    let (am, bm) = (a.matrix(), b.matrix());
    let faa = f.eval(&am.adjoint().matmul(am)).re;
    let fbb = f.eval(&bm.adjoint().matmul(bm)).re;
    let fba = f.eval(&bm.adjoint().matmul(am));
    Ok(faa * fbb - fba.norm_sqr())
}

/// A positive functional of norm one.
#[derive(Clone, Debug)]
pub struct State {
    functional: Functional,
    norm: f64,
}

impl State {
    pub fn new(f: Functional) -> Result<State> {
        require_positive(&f)?;
        let value = f.at_identity().ok_or(Error::NotUnital)?;
        if (value - 1.0).norm() > DEFAULT_TOL {
            return Err(Error::NotNormalized { value: value.re });
        }
        Ok(State { functional: f, norm: value.re })
    }

    /// The normalized trace a ↦ trace(a)/trace(𝟙).
    pub fn trace_state(alg: &Arc<Algebra>) -> Result<State> {
        let e = alg.identity_matrix().ok_or(Error::NotUnital)?;
        let t = e.trace().re;
        State::new(Functional::from_density(alg, &CMat::identity(alg.ambient_dim()).scale_real(1.0 / t))?)
    }

    pub fn functional(&self) -> &Functional {
        &self.functional
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.functional.algebra
    }

    pub fn eval(&self, m: &CMat) -> C64 {
        self.functional.eval(m)
    }

    pub fn apply(&self, a: &Element) -> C64 {
        self.functional.apply(a)
    }
}

/// a ↦ x*·a·x for a unit vector x.
pub fn vector_state(alg: &Arc<Algebra>, x: &[C64]) -> Result<State> {
    if x.len() != alg.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for {}×{} matrices",
            x.len(),
            alg.ambient_dim(),
            alg.ambient_dim()
        )));
    }
    let norm = vec_norm(x);
    if (norm - 1.0).abs() > DEFAULT_TOL {
        return Err(Error::NotUnitVector { norm });
    }
    let rho = CMat::from_fn(x.len(), x.len(), |i, j| x[i] * x[j].conj());
    State::new(Functional::from_density(alg, &rho)?)
}

/// Vector state at a top eigenvector of a positive element, so f(a) = ‖a‖.
pub fn norming_state(a: &Element) -> Result<State> {
    if !classify(a).positive {
        return Err(Error::NotPositive("norming states need a positive element".into()));
    }
    let alg = a.algebra();
    let h = (a.matrix() + &a.matrix().adjoint()).scale_real(0.5);
    let compressed = alg.compress(&h);
    let eig = herm_eig(&compressed)?;
    let top = eig.vectors.column(eig.values.len() - 1);
    let x = match alg.compression_basis() {
        Some(q) => q.matvec(&top),
        None => top,
    };
    let norm = vec_norm(&x);
    vector_state(alg, &x.iter().map(|z| z / norm).collect::<Vec<_>>())
}

/// A linear map from an algebra into k×k matrices, given on the basis.
#[derive(Clone, Debug)]
pub struct Representation {
    algebra: Arc<Algebra>,
    dim: usize,
    matrices: Vec<CMat>,
}

impl Representation {
    pub fn new(alg: &Arc<Algebra>, matrices: Vec<CMat>) -> Result<Representation> {
        if matrices.len() != alg.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for an algebra of dimension {}",
                matrices.len(),
                alg.dim()
            )));
        }
        let dim = matrices.first().map_or(0, CMat::rows);
        if matrices.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimensionMismatch("representing matrices differ in shape".into()));
        }
        Ok(Representation { algebra: Arc::clone(alg), dim, matrices })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[CMat] {
        &self.matrices
    }

    pub fn apply_coords(&self, coords: &[C64]) -> CMat {
        let mut out = CMat::zeros(self.dim, self.dim);
        for (m, &c) in self.matrices.iter().zip(coords) {
            if c != ZERO {
                out += &m.scale(c);
            }
        }
        out
    }

    /// π(a).
    pub fn apply(&self, m: &CMat) -> CMat {
        self.apply_coords(&self.algebra.coords(m))
    }
}

/// Block-diagonal sum of representations of one algebra.
pub fn direct_sum_reps(reps: &[Representation]) -> Result<Representation> {
    let first = reps.first().ok_or_else(|| Error::InvalidArgument("no representations given".into()))?;
    if reps.iter().any(|r| !r.algebra.same_as(&first.algebra)) {
        return Err(Error::AlgebraMismatch);
    }
    let d = first.algebra.dim();
    let matrices = (0..d)
        .map(|i| reps.iter().map(|r| &r.matrices[i]).fold(CMat::zeros(0, 0), |acc, m| acc.direct_sum(m)))
        .collect();
    Representation::new(&first.algebra, matrices)
}

/// The GNS representation of a state.
#[derive(Clone, Debug)]
pub struct GnsRepresentation {
    pub hilbert_dim: usize,
    /// k×d map from algebra coordinates to orthonormal coordinates of H_f.
    pub coset_map: CMat,
    pub representation: Representation,
    pub state: State,
    /// Coordinates of [𝟙] in H_f.
    pub cyclic_vector: Option<Vec<C64>>,
}

impl GnsRepresentation {
    pub fn rep_matrices(&self) -> &[CMat] {
        self.representation.matrices()
    }

    /// H_f coordinates of the coset [m].
    pub fn coset(&self, m: &CMat) -> Vec<C64> {
        self.coset_map.matvec(&self.representation.algebra.coords(m))
    }

    pub fn apply(&self, m: &CMat) -> CMat {
        self.representation.apply(m)
    }
}

/// GNS construction: H_f = 𝒜/𝒩_f with ⟨[a],[b]⟩ = f(b*a) and π(a)[b] = [ab].
pub fn gns(alg: &Arc<Algebra>, f: &State) -> Result<GnsRepresentation> {
    if !alg.same_as(f.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let h = f.functional().gram()?;
    let sym = (&h + &h.adjoint()).scale_real(0.5);
    let eig = herm_eig(&sym)?;
    let d = alg.dim();
    let lmax = eig.values.last().copied().unwrap_or(0.0);
    if eig.values.first().is_some_and(|&l| l < -DEFAULT_TOL * lmax.max(1.0)) {
        return Err(Error::NotPositive("Gram matrix is not positive semidefinite".into()));
    }
    let kept: Vec<usize> = (0..d).filter(|&j| eig.values[j] > GNS_NULL_TOL * lmax).collect();
    let k = kept.len();
    // M = Λ^{1/2}·W*, M⁺ = W·Λ^{-1/2}
    let coset_map = CMat::from_fn(k, d, |r, c| eig.vectors[(c, kept[r])].conj() * eig.values[kept[r]].sqrt());
    let pinv = CMat::from_fn(d, k, |r, c| eig.vectors[(r, kept[c])] / eig.values[kept[c]].sqrt());
    let matrices = (0..d).map(|i| coset_map.matmul(&alg.left_regular(&alg.basis_element(i))).matmul(&pinv)).collect();
    let representation = Representation::new(alg, matrices)?;
    let cyclic_vector = alg.identity_coords().map(|c| coset_map.matvec(c));
    Ok(GnsRepresentation { hilbert_dim: k, coset_map, representation, state: f.clone(), cyclic_vector })
}

/// The direct sum of GNS representations over a finite family of states,
/// with its measured distance from isometry.
#[derive(Clone, Debug)]
pub struct UniversalReport {
    pub representation: Representation,
    /// Number of states the sum runs over.
    pub states_used: usize,
    /// max |‖π(a)‖ − ‖a‖| over the sampled elements.
    pub max_isometry_residual: f64,
}

/// Samples used for the isometry residual of a universal representation.
pub const UNIVERSAL_SAMPLES: usize = 100;

/// Universal representation over the trace state, the valid states among
/// `extra`, and a norming state of (aa*)² for each basis element a.
pub fn universal_rep(alg: &Arc<Algebra>, extra: &[Functional], seed: u64) -> Result<UniversalReport> {
    let mut states = vec![State::trace_state(alg)?];
    states.extend(extra.iter().filter_map(|f| State::new(f.clone()).ok()));
    for i in 0..alg.dim() {
        let a = alg.basis_element(i);
        let aa = a.matmul(&a.adjoint());
        let p = Element::new(alg, aa.matmul(&aa))?;
        if p.op_norm() > 0.0 {
            states.push(norming_state(&p)?);
        }
    }
    universal_rep_from_states(alg, &states, seed)
}

/// Direct sum of the GNS representations of exactly the given states.
pub fn universal_rep_from_states(alg: &Arc<Algebra>, states: &[State], seed: u64) -> Result<UniversalReport> {
    let reps = states.iter().map(|s| gns(alg, s).map(|g| g.representation)).collect::<Result<Vec<_>>>()?;
    let representation = direct_sum_reps(&reps)?;
    let mut rng = random::rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..UNIVERSAL_SAMPLES {
        let a = random::element(&mut rng, alg);
        let pi = representation.apply_coords(&a.coords());
        worst = worst.max((op_norm(&pi) - a.op_norm()).abs());
    }
    Ok(UniversalReport { representation, states_used: states.len(), max_isometry_residual: worst })
}
