//! Characters of abelian algebras, the Gelfand transform, maximal ideals,
//! the GKZ witness search and the cyclic group algebra.

use std::sync::Arc;

use crate::algebra::{Algebra, Element, Field, SubspaceBasis};
use crate::error::{Error, Result};
use crate::linalg::{eig_general, null_basis, smallest_singular_value, CMat, C64, DEFAULT_TOL, ONE, ZERO};
use crate::random;
use crate::spectral::{cluster, spectral_radius};
use crate::states::Functional;

/// Characters closer than this in the max-coordinate metric are merged.
pub const CHARACTER_DEDUPE: f64 = 1e-7;
/// Seeded retries when eigenvalues of the generic element collide.
const CHARACTER_ATTEMPTS: u64 = 10;
/// Relative defect |χ(ab) − χ(a)χ(b)| tolerated on basis pairs.
const MULTIPLICATIVE_TOL: f64 = 1e-7;

/// A nonzero multiplicative functional.
#[derive(Clone, Debug)]
pub struct Character {
    algebra: Arc<Algebra>,
    values: Vec<C64>,
}

impl Character {
    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn eval(&self, m: &CMat) -> C64 {
        self.algebra.coords(m).iter().zip(&self.values).map(|(c, v)| c * v).sum()
    }

    pub fn apply(&self, a: &Element) -> C64 {
        self.eval(a.matrix())
    }

    pub fn to_functional(&self) -> Functional {
        Functional::new(&self.algebra, self.values.clone()).expect("values match the basis")
    }
}

/// The Gelfand spectrum Σ(𝒜) of a finite-dimensional abelian algebra.
#[derive(Clone, Debug)]
pub struct GelfandSpectrum {
    pub characters: Vec<Character>,
    /// Set for real algebras: the characters are those of the
    /// complexification and may take complex values.
    pub complexified: bool,
}

/// Structure constants t[(i·d + j)·d + k] = k-th coordinate of e_i·e_j.
fn structure_constants(alg: &Algebra) -> Vec<C64> {
    let d = alg.dim();
    let basis = alg.basis();
    let mut t = Vec::with_capacity(d * d * d);
    for ei in &basis {
        for ej in &basis {
            t.extend(alg.coords(&ei.matmul(ej)));
        }
    }
    t
}

fn multiplicative_defect(values: &[C64], table: &[C64]) -> f64 {
    let d = values.len();
    let mut worst: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            let row = &table[(i * d + j) * d..(i * d + j + 1) * d];
            let prod: C64 = row.iter().zip(values).map(|(c, v)| c * v).sum();
            worst = worst.max((prod - values[i] * values[j]).norm());
        }
    }
    worst
}

fn max_commutator(alg: &Algebra) -> f64 {
    let basis = alg.basis();
    let mut worst: f64 = 0.0;
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            worst = worst.max(basis[i].commutator(&basis[j]).frobenius_norm());
        }
    }
    worst
}

/// Characters from the eigenspaces of a generic element g = Σ tᵢeᵢ.
///
/// Each eigenspace V of g is invariant under the commutative algebra, and
/// every element acts on it with the single eigenvalue χ(a); so the
/// candidate χ(a) = trace(Q*·a·Q)/dim V, with Q an orthonormal basis of V,
/// is exact whenever V belongs to one character. Candidates that fail
/// multiplicativity signal an eigenvalue collision and trigger a retry.
pub fn characters(alg: &Arc<Algebra>) -> Result<GelfandSpectrum> {
    characters_seeded(alg, 0)
}

pub fn characters_seeded(alg: &Arc<Algebra>, seed: u64) -> Result<GelfandSpectrum> {
    if !alg.is_abelian() {
        return Err(Error::NonAbelian { residual: max_commutator(alg) });
    }
    let complexified = alg.field() == Field::Real;
    let d = alg.dim();
    if d == 0 {
        return Ok(GelfandSpectrum { characters: Vec::new(), complexified });
    }
    let table = structure_constants(alg);
    let basis = alg.basis();
    let scale = basis.iter().map(|b| b.max_abs()).fold(1.0, f64::max);
    let mut found: Vec<Vec<C64>> = Vec::new();

    for attempt in 0..CHARACTER_ATTEMPTS {
        let mut rng = random::rng(seed.wrapping_mul(0x9E37_79B9).wrapping_add(attempt));
        let coeffs: Vec<C64> = (0..d).map(|_| random::complex_gaussian(&mut rng)).collect();
        let g = alg.from_coords(&coeffs);
        let eigs = eig_general(&g)?;
        let r = eigs.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let mut clean = true;
        for mu in cluster(&eigs, 1e-5 * (1.0 + r)) {
            let shifted = &g - &CMat::identity(g.rows()).scale(mu);
            let gram = shifted.adjoint().matmul(&shifted);
            let q = null_basis(&gram, 1e-10)?;
            if q.is_empty() {
                clean = false;
                continue;
            }
            let k = q.len() as f64;
            let values: Vec<C64> = basis
                .iter()
                .map(|e| q.iter().map(|v| crate::linalg::vec_inner(&e.matvec(v), v)).sum::<C64>() / k)
                .collect();
            let size = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
            if size <= DEFAULT_TOL {
                // the common null space of a nilpotent part or of the
                // complement of the identity
                continue;
            }
            if multiplicative_defect(&values, &table) > MULTIPLICATIVE_TOL * scale * (1.0 + size * size) {
                clean = false;
                continue;
            }
            let duplicate = found
                .iter()
                .any(|f| f.iter().zip(&values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) <= CHARACTER_DEDUPE);
            if !duplicate {
                found.push(values);
            }
        }
        if clean {
            break;
        }
    }
    found.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let characters = found.into_iter().map(|values| Character { algebra: Arc::clone(alg), values }).collect();
    Ok(GelfandSpectrum { characters, complexified })
}

/// â = (χ₁(a), …, χ_m(a)).
pub fn gelfand_transform(a: &Element, spec: &GelfandSpectrum) -> Vec<C64> {
    let coords = a.coords();
    spec.characters.iter().map(|chi| coords.iter().zip(&chi.values).map(|(c, v)| c * v).sum()).collect()
}

/// One sampled element in an isometry report.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IsometrySample {
    pub sup_transform: f64,
    pub spectral_radius: f64,
    pub norm: f64,
}

#[derive(Clone, Debug)]
pub struct IsometryReport {
    pub samples: Vec<IsometrySample>,
    /// max |sup|â| − r(a)|; zero up to roundoff for every abelian algebra.
    pub max_radius_residual: f64,
    /// max |sup|â| − ‖a‖|; zero up to roundoff exactly for C*-subalgebras.
    pub max_norm_residual: f64,
    pub star_closed: bool,
    pub character_count: usize,
    /// Dimension of the kernel of the Gelfand transform (the radical).
    pub kernel_dim: usize,
}

pub fn gelfand_isometry_report(alg: &Arc<Algebra>, samples: usize, seed: u64) -> Result<IsometryReport> {
    let spec = characters(alg)?;
    let mut rng = random::rng(seed);
    let mut out = Vec::with_capacity(samples);
    let (mut rr, mut nr): (f64, f64) = (0.0, 0.0);
    for _ in 0..samples {
        let a = random::element(&mut rng, alg);
        let hat = gelfand_transform(&a, &spec);
        let sup_transform = hat.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let s = IsometrySample { sup_transform, spectral_radius: spectral_radius(&a)?, norm: a.op_norm() };
        rr = rr.max((s.sup_transform - s.spectral_radius).abs());
        nr = nr.max((s.sup_transform - s.norm).abs());
        out.push(s);
    }
    let kernel_dim = transform_kernel_dim(alg, &spec);
    Ok(IsometryReport {
        samples: out,
        max_radius_residual: rr,
        max_norm_residual: nr,
        star_closed: alg.is_star_closed(),
        character_count: spec.characters.len(),
        kernel_dim,
    })
}

fn transform_kernel_dim(alg: &Algebra, spec: &GelfandSpectrum) -> usize {
    let d = alg.dim();
    let m = spec.characters.len();
    if m == 0 {
        return d;
    }
    // rank of the m×d matrix of character values
    let values = CMat::from_fn(m, d, |i, j| spec.characters[i].values[j]);
    let sv = crate::linalg::singular_values(&values);
    let rank = sv.iter().filter(|&&s| s > 1e-9 * sv[0].max(1.0)).count();
    d - rank
}

/// ker χ, a maximal ideal of codimension one.
pub fn char_kernel(alg: &Arc<Algebra>, chi: &Character) -> Result<SubspaceBasis> {
    if !alg.same_as(&chi.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let d = alg.dim();
    // χ(a) = Σ cᵢvᵢ = ⟨c, w⟩ with w = conj(v)
    let w: Vec<C64> = chi.values.iter().map(|v| v.conj()).collect();
    let ww = CMat::from_fn(d, d, |i, j| w[i] * w[j].conj());
    let null = null_basis(&ww, 1e-12)?;
    let mats = null.iter().map(|c| alg.from_coords(c)).collect();
    Ok(SubspaceBasis::from_orthonormal(mats, Field::Complex))
}

/// Result of testing a normalized functional against the GKZ criterion.
#[derive(Clone, Debug)]
pub enum GkzOutcome {
    /// The functional is multiplicative.
    Character,
    /// An invertible element of ker φ, so φ is not a character.
    Witness { element: Element, sigma_min: f64, value: C64 },
}

pub const GKZ_DEFAULT_ATTEMPTS: usize = 200;

/// Searches ker φ for an invertible element.
pub fn gkz_witness(alg: &Arc<Algebra>, phi: &Functional, seed: u64, attempts: usize) -> Result<GkzOutcome> {
    if !alg.same_as(phi.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    if alg.field() != Field::Complex {
        return Err(Error::InvalidArgument("the witness search needs a complex algebra".into()));
    }
    let one = phi.at_identity().ok_or(Error::NotUnital)?;
    if (one - ONE).norm() > DEFAULT_TOL {
        return Err(Error::NotNormalized { value: one.re });
    }
    let v = phi.values();
    let table = structure_constants(alg);
    let size = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if multiplicative_defect(v, &table) <= DEFAULT_TOL * (1.0 + size * size) {
        return Ok(GkzOutcome::Character);
    }
    let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    let mut rng = random::rng(seed);
    for _ in 0..attempts {
        let mut c: Vec<C64> = (0..alg.dim()).map(|_| random::complex_gaussian(&mut rng)).collect();
        // project onto {c : Σ cᵢvᵢ = 0}
        let along: C64 = c.iter().zip(v).map(|(a, b)| a * b).sum::<C64>() / vv;
        for (ci, vi) in c.iter_mut().zip(v) {
            *ci -= along * vi.conj();
        }
        let m = alg.from_coords(&c);
        let norm = crate::linalg::op_norm(&m);
        if norm == 0.0 {
            continue;
        }
        let m = m.scale_real(1.0 / norm);
        let sigma_min = smallest_singular_value(&alg.compress(&m));
        let value = phi.eval(&m);
        if sigma_min > 1e-8 && value.norm() <= DEFAULT_TOL {
            return Ok(GkzOutcome::Witness { element: Element::new(alg, m)?, sigma_min, value });
        }
    }
    Err(Error::WitnessNotFound { attempts })
}

/// The N×N circulant matrix with first column c: C_jk = c_{(j−k) mod N}.
pub fn circulant(c: &[C64]) -> CMat {
    let n = c.len();
    CMat::from_fn(n, n, |j, k| c[(j + n - k) % n])
}

/// Cyclic convolution (x∗y)_n = Σ_m x_m·y_{(n−m) mod N}.
pub fn conv(x: &[C64], y: &[C64]) -> Vec<C64> {
    assert_eq!(x.len(), y.len(), "conv: sequences differ in length");
    let n = x.len();
    (0..n).map(|k| (0..n).map(|m| x[m] * y[(k + n - m) % n]).sum()).collect()
}

/// The group algebra of ℤ/N as N×N circulants, with basis Sᵏ/√N where S is
/// the cyclic shift.
pub fn cyclic_group_algebra(n: usize) -> Result<Arc<Algebra>> {
    if n == 0 {
        return Err(Error::InvalidArgument("the cyclic group needs N ≥ 1".into()));
    }
    let powers: Vec<CMat> =
        (0..n).map(|k| circulant(&(0..n).map(|j| if j == k { ONE } else { ZERO }).collect::<Vec<_>>())).collect();
    Algebra::from_spanning_set(&powers, Field::Complex)
}
