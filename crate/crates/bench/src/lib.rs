//! Seeded fixtures shared by the kernel benchmarks.

use std::sync::Arc;

use cstar_core::algebra::{Algebra, Element};
use cstar_core::linalg::CMat;
use cstar_core::random;
use cstar_core::states::{Functional, State};

/// Random Hermitian n×n matrix.
pub fn hermitian(n: usize, seed: u64) -> CMat {
    random::hermitian(&mut random::rng(seed), n)
}

/// Random complex n×n matrix.
pub fn general(n: usize, seed: u64) -> CMat {
    random::complex_matrix(&mut random::rng(seed), n, n)
}

/// Random element of M_n.
pub fn element(n: usize, seed: u64) -> Element {
    random::element(&mut random::rng(seed), &Algebra::full(n))
}

/// M_n with a faithful random density state.
pub fn faithful_state(n: usize, seed: u64) -> (Arc<Algebra>, State) {
    let alg = Algebra::full(n);
    let rho = random::density_matrix(&mut random::rng(seed), n);
    let f = Functional::from_density(&alg, &rho).expect("density on the full algebra");
    (Arc::clone(&alg), State::new(f).expect("density matrices give states"))
}
