//! Seeded sampling of matrices, vectors and algebra elements.
//!
//! Everything here draws from a ChaCha8 stream so that a seed reproduces the
//! same samples on every platform.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::algebra::{Algebra, Element, Field};
use crate::linalg::{vec_norm, CMat, C64};

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// Standard complex Gaussian (independent real and imaginary parts).
pub fn complex_gaussian(rng: &mut Rng) -> C64 {
    C64::new(gaussian(rng), gaussian(rng))
}

pub fn complex_matrix(rng: &mut Rng, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

pub fn real_matrix(rng: &mut Rng, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| C64::new(gaussian(rng), 0.0))
}

pub fn hermitian(rng: &mut Rng, n: usize) -> CMat {
    let m = complex_matrix(rng, n, n);
    (&m + &m.adjoint()).scale_real(0.5)
}

/// Positive semidefinite c*·c.
pub fn positive(rng: &mut Rng, n: usize) -> CMat {
    let c = complex_matrix(rng, n, n);
    c.adjoint().matmul(&c)
}

/// Positive matrix of unit trace.
pub fn density_matrix(rng: &mut Rng, n: usize) -> CMat {
    let p = positive(rng, n);
    let t = p.trace().re;
    p.scale_real(1.0 / t)
}

pub fn complex_vector(rng: &mut Rng, n: usize) -> Vec<C64> {
    (0..n).map(|_| complex_gaussian(rng)).collect()
}

pub fn unit_vector(rng: &mut Rng, n: usize) -> Vec<C64> {
    let v = complex_vector(rng, n);
    let norm = vec_norm(&v);
    v.into_iter().map(|z| z / norm).collect()
}

/// Haar-ish unitary from Gram–Schmidt on a Gaussian matrix.
pub fn unitary(rng: &mut Rng, n: usize) -> CMat {
    let m = complex_matrix(rng, n, n);
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = m.column(j);
        for u in &cols {
            let proj: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= proj * ui;
            }
        }
        let norm = vec_norm(&v);
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    CMat::from_columns(n, &cols)
}

/// Normal matrix U·diag(d)·U* with Gaussian eigenvalues.
pub fn normal(rng: &mut Rng, n: usize) -> CMat {
    let u = unitary(rng, n);
    let d = CMat::diag(&complex_vector(rng, n));
    u.matmul(&d).matmul(&u.adjoint())
}

/// Element with Gaussian coordinates (real coordinates over a real algebra).
pub fn element(rng: &mut Rng, alg: &std::sync::Arc<Algebra>) -> Element {
    let coords: Vec<C64> = (0..alg.dim())
        .map(|_| match alg.field() {
            Field::Real => C64::new(gaussian(rng), 0.0),
            Field::Complex => complex_gaussian(rng),
        })
        .collect();
    Element::from_coords(alg, &coords)
}
