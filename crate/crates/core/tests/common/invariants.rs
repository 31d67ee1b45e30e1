//! Seeded checks of the structural identities each module promises. Every
//! check returns `Err` with a description of the first violation.

// `ensure!` negates the comparison so that a NaN residual fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::PI;
use std::sync::Arc;

use cstar_core::algebra::{
    algebra_from_generators, direct_sum_algebras, quotient, quotient_norm, Algebra, Element, SubspaceBasis,
};
use cstar_core::gelfand::{char_kernel, characters, cyclic_group_algebra, gelfand_transform};
use cstar_core::linalg::{eig_general, herm_eig, normal_eig, null_basis, op_norm, CMat, C64};
use cstar_core::qm::{
    box_eigenstate, cosine_observable, eigenstate_functional, expectation, momentum_operator, phase_shift,
    position_operator, BoxGrid,
};
use cstar_core::random::{self, Rng};
use cstar_core::spectral::{
    classify, cluster_radius, commutator_scalar_test, exp_element, inverse, spec_symmetry_check, spectral_radius_limit,
    spectrum,
};
use cstar_core::states::{functional_norm, gns, is_positive_functional, vector_state, Functional, State};
use cstar_core::{ClosureOptions, Field};

pub type Check = Result<(), String>;
pub type NamedCheck = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn hausdorff(a: &[C64], b: &[C64]) -> f64 {
    cstar_core::linalg::hausdorff(a, b)
}

/// (name, check) for every invariant, in module order.
pub fn all() -> Vec<NamedCheck> {
    vec![
        ("adjoint preserves the norm", adjoint_norm),
        ("C*-identity ‖m*m‖ = ‖m‖²", cstar_identity),
        ("submultiplicative norm", submultiplicative),
        ("Hermitian and general eigenvalues agree", herm_matches_general),
        ("closure is idempotent", closure_idempotent),
        ("identity is self-adjoint", identity_self_adjoint),
        ("inverses are two-sided", inverse_two_sided),
        ("quotient map is a homomorphism", quotient_homomorphism),
        ("quotient norm is submultiplicative", quotient_norm_submultiplicative),
        ("complex spectra are non-empty and bounded", spectrum_nonempty_bounded),
        ("spectral radius formula converges", beurling_consistency),
        ("normal elements have r(a) = ‖a‖", normal_radius_is_norm),
        ("Hermitian spectra are real", hermitian_spectra_real),
        ("c*c spectra are non-negative", positive_spectra),
        ("unitary spectra lie on the circle", unitary_spectra),
        ("exp commutes with the adjoint; exp(ia) unitary", exp_star_and_unitary),
        ("exp(a+b) = exp(a)exp(b) for commuting pairs", exp_commuting_sum),
        ("powers vanish exactly when r < 1", powers_vanish_iff_radius_below_one),
        ("σ(ab)∖{0} = σ(ba)∖{0}", spectral_symmetry),
        ("commutators have zero trace", commutator_trace_zero),
        ("characters have norm one", character_norm),
        ("characters give the spectrum", character_spectrum),
        ("characters respect the adjoint", character_star),
        ("character kernels are distinct maximal ideals", kernel_correspondence),
        ("Gelfand transform is multiplicative", transform_multiplicative),
        ("GNS representations are *-homomorphisms", gns_star_homomorphism),
        ("GNS representations are contractive", gns_contractive),
        ("every spectral value is attained by a state", state_from_spectrum),
        ("GNS null space is a left ideal", null_space_left_ideal),
        ("box observables are Hermitian", box_observables_hermitian),
        ("Hermitian expectations are real", box_expectations_real),
        ("eigenstate functionals are states", eigenstate_functionals_are_states),
        ("phase shifts form a group", phase_shift_group),
    ]
}

fn sizes_and_matrices(seed: u64, count: usize) -> Vec<CMat> {
    let mut rng = random::rng(seed);
    (0..count)
        .map(|i| {
            let n = 1 + i % 6;
            random::complex_matrix(&mut rng, n, n)
        })
        .collect()
}

pub fn adjoint_norm() -> Check {
    for m in sizes_and_matrices(1, 60) {
        let d = (op_norm(&m.adjoint()) - op_norm(&m)).abs();
        ensure!(d <= 1e-9 * op_norm(&m).max(1.0), "‖m*‖ and ‖m‖ differ by {d:e}");
    }
    Ok(())
}

pub fn cstar_identity() -> Check {
    for m in sizes_and_matrices(2, 60) {
        let n = op_norm(&m);
        let d = (op_norm(&m.adjoint().matmul(&m)) - n * n).abs();
        ensure!(d <= 1e-9 * n * n, "‖m*m‖ − ‖m‖² = {d:e}");
    }
    Ok(())
}

pub fn submultiplicative() -> Check {
    let mut rng = random::rng(3);
    for i in 0..60 {
        let n = 1 + i % 6;
        let a = random::complex_matrix(&mut rng, n, n);
        let b = random::complex_matrix(&mut rng, n, n);
        let excess = op_norm(&a.matmul(&b)) - op_norm(&a) * op_norm(&b);
        ensure!(excess <= 1e-9, "‖ab‖ exceeds ‖a‖‖b‖ by {excess:e}");
    }
    Ok(())
}

pub fn herm_matches_general() -> Check {
    let mut rng = random::rng(4);
    for i in 0..40 {
        let h = random::hermitian(&mut rng, 1 + i % 7);
        let mut general: Vec<f64> = eig_general(&h).map_err(|e| e.to_string())?.iter().map(|z| z.re).collect();
        general.sort_by(f64::total_cmp);
        let jacobi = herm_eig(&h).map_err(|e| e.to_string())?.values;
        for (a, b) in general.iter().zip(&jacobi) {
            ensure!((a - b).abs() <= 1e-8, "eigenvalues {a} and {b} disagree");
        }
    }
    Ok(())
}

/// A few unital algebras with different shapes: full, diagonal, a block
/// algebra M₂ ⊕ ℂ, a corner M₂ inside M₃ and the circulants.
fn sample_algebras() -> Vec<Arc<Algebra>> {
    let corner = algebra_from_generators(&[CMat::unit(3, 0, 1), CMat::unit(3, 0, 0), CMat::unit(3, 1, 1)], false)
        .expect("corner algebra");
    vec![
        Algebra::full(3),
        Algebra::diagonal(4),
        direct_sum_algebras(&Algebra::full(2), &Algebra::full(1)).algebra,
        corner,
        cyclic_group_algebra(5).expect("circulants"),
    ]
}

pub fn closure_idempotent() -> Check {
    let mut rng = random::rng(5);
    for _ in 0..10 {
        let g = random::complex_matrix(&mut rng, 2, 2).direct_sum(&random::complex_matrix(&mut rng, 1, 1));
        let alg = algebra_from_generators(&[g], true).map_err(|e| e.to_string())?;
        let again = algebra_from_generators(&alg.basis(), false).map_err(|e| e.to_string())?;
        ensure!(alg.same_as(&again) && again.same_as(&alg), "closure changed the span");
    }
    for alg in sample_algebras() {
        let again = algebra_from_generators(&alg.basis(), false).map_err(|e| e.to_string())?;
        ensure!(alg.same_as(&again), "closure of a basis of dimension {} changed the span", alg.dim());
    }
    Ok(())
}

pub fn identity_self_adjoint() -> Check {
    for alg in sample_algebras() {
        let e = alg.identity_matrix().ok_or("sample algebra without identity")?;
        ensure!(e.distance(&e.adjoint()) <= 1e-9, "𝟙* ≠ 𝟙");
    }
    Ok(())
}

pub fn inverse_two_sided() -> Check {
    let mut rng = random::rng(6);
    for alg in sample_algebras() {
        let one = alg.identity_matrix().unwrap();
        for _ in 0..10 {
            let a = random::element(&mut rng, &alg);
            let inv = inverse(&a).map_err(|e| e.to_string())?;
            let scale = a.op_norm() * inv.op_norm();
            let (l, r) = (inv.matrix().matmul(a.matrix()), a.matrix().matmul(inv.matrix()));
            ensure!(l.distance(&one) <= 1e-9 * scale && r.distance(&one) <= 1e-9 * scale, "a⁻¹ is not two-sided");
            ensure!(alg.contains(inv.matrix()), "inverse left the algebra");
        }
    }
    Ok(())
}

fn sample_quotients() -> Vec<(Arc<Algebra>, SubspaceBasis)> {
    let d3 = Algebra::diagonal(3);
    let i1 = SubspaceBasis::span(&d3, &[CMat::unit(3, 1, 1), CMat::unit(3, 2, 2)]).unwrap();
    let block = direct_sum_algebras(&Algebra::full(2), &Algebra::full(1)).algebra;
    let i2 = SubspaceBasis::span(&block, &[CMat::unit(3, 2, 2)]).unwrap();
    vec![(d3, i1), (block, i2)]
}

pub fn quotient_homomorphism() -> Check {
    let mut rng = random::rng(7);
    for (alg, ideal) in sample_quotients() {
        let q = quotient(&alg, &ideal).map_err(|e| e.to_string())?;
        for _ in 0..20 {
            let (a, b) = (random::element(&mut rng, &alg), random::element(&mut rng, &alg));
            let lhs = q.mul_cosets(&q.coset(a.matrix()), &q.coset(b.matrix()));
            let rhs = q.coset(&a.matrix().matmul(b.matrix()));
            let d = lhs.iter().zip(&rhs).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
            ensure!(d <= 1e-9 * (1.0 + a.op_norm() * b.op_norm()), "[a][b] − [ab] = {d:e}");
        }
    }
    Ok(())
}

pub fn quotient_norm_submultiplicative() -> Check {
    let mut rng = random::rng(8);
    for (alg, ideal) in sample_quotients() {
        let q = quotient(&alg, &ideal).map_err(|e| e.to_string())?;
        for _ in 0..10 {
            let (a, b) = (random::element(&mut rng, &alg), random::element(&mut rng, &alg));
            let ab = &a * &b;
            let qa = quotient_norm(&q, &a, 20_000).map_err(|e| e.to_string())?;
            let qb = quotient_norm(&q, &b, 20_000).map_err(|e| e.to_string())?;
            let qab = quotient_norm(&q, &ab, 20_000).map_err(|e| e.to_string())?;
            ensure!(qab <= qa * qb + 1e-6 * (1.0 + qa * qb), "‖[ab]‖ = {qab} > ‖[a]‖‖[b]‖ = {}", qa * qb);
            ensure!(qa <= a.op_norm() + 1e-9, "quotient norm above the norm");
        }
    }
    Ok(())
}

fn random_elements(seed: u64, count: usize, n: usize) -> Vec<Element> {
    let alg = Algebra::full(n);
    let mut rng = random::rng(seed);
    (0..count).map(|_| random::element(&mut rng, &alg)).collect()
}

pub fn spectrum_nonempty_bounded() -> Check {
    let mut rng = random::rng(9);
    for alg in sample_algebras() {
        for _ in 0..20 {
            let a = random::element(&mut rng, &alg);
            let s = spectrum(&a, Field::Complex).map_err(|e| e.to_string())?;
            ensure!(!s.points.is_empty(), "empty complex spectrum");
            ensure!(s.radius <= a.op_norm() * (1.0 + 1e-9), "r(a) = {} > ‖a‖ = {}", s.radius, a.op_norm());
        }
    }
    Ok(())
}

pub fn beurling_consistency() -> Check {
    for a in random_elements(10, 100, 5) {
        let t = spectral_radius_limit(&a, 1 << 10).map_err(|e| e.to_string())?;
        ensure!(t.gap <= 1e-3, "estimate {} vs eigenvalue radius {}", t.estimate, t.eigen_radius);
        ensure!(t.infimum >= t.eigen_radius * (1.0 - 1e-9), "‖aⁿ‖^(1/n) dipped below r(a)");
    }
    Ok(())
}

pub fn normal_radius_is_norm() -> Check {
    let alg = Algebra::full(4);
    let mut rng = random::rng(11);
    for _ in 0..30 {
        let a = alg.element(random::normal(&mut rng, 4)).map_err(|e| e.to_string())?;
        let r = spectrum(&a, Field::Complex).map_err(|e| e.to_string())?.radius;
        ensure!((r - a.op_norm()).abs() <= 1e-8 * a.op_norm().max(1.0), "r(a) = {r}, ‖a‖ = {}", a.op_norm());
    }
    Ok(())
}

fn spectrum_points(m: CMat) -> Result<Vec<C64>, String> {
    let n = m.rows();
    let a = Algebra::full(n).element(m).map_err(|e| e.to_string())?;
    Ok(spectrum(&a, Field::Complex).map_err(|e| e.to_string())?.points)
}

pub fn hermitian_spectra_real() -> Check {
    let mut rng = random::rng(12);
    for i in 0..30 {
        for z in spectrum_points(random::hermitian(&mut rng, 1 + i % 6))? {
            ensure!(z.im.abs() <= 1e-8, "Hermitian eigenvalue {z}");
        }
    }
    Ok(())
}

pub fn positive_spectra() -> Check {
    let mut rng = random::rng(13);
    for i in 0..30 {
        for z in spectrum_points(random::positive(&mut rng, 1 + i % 6))? {
            ensure!(z.re >= -1e-8 && z.im.abs() <= 1e-8, "c*c eigenvalue {z}");
        }
    }
    Ok(())
}

pub fn unitary_spectra() -> Check {
    let mut rng = random::rng(14);
    for i in 0..30 {
        for z in spectrum_points(random::unitary(&mut rng, 1 + i % 6))? {
            ensure!((z.norm() - 1.0).abs() <= 1e-8, "unitary eigenvalue {z}");
        }
    }
    Ok(())
}

pub fn exp_star_and_unitary() -> Check {
    let alg = Algebra::full(3);
    let mut rng = random::rng(15);
    for _ in 0..20 {
        let a = random::element(&mut rng, &alg);
        let e = exp_element(&a).map_err(|e| e.to_string())?;
        let es = exp_element(&a.adjoint().unwrap()).map_err(|e| e.to_string())?;
        ensure!(es.matrix().distance(&e.matrix().adjoint()) <= 1e-9 * e.matrix().frobenius_norm(), "exp(a*) ≠ exp(a)*");
        let h = alg.element(random::hermitian(&mut rng, 3)).unwrap();
        let u = exp_element(&h.scale(C64::new(0.0, 1.0))).map_err(|e| e.to_string())?;
        ensure!(classify(&u).unitary, "exp(ih) is not unitary");
    }
    Ok(())
}

pub fn exp_commuting_sum() -> Check {
    let alg = Algebra::full(3);
    let mut rng = random::rng(16);
    for _ in 0..20 {
        // commuting pairs: polynomials in a common element, and diagonal pairs
        let c = random::element(&mut rng, &alg).scale_real(0.5);
        let a = &c * &c;
        let b = &c + &c.scale(C64::new(0.0, 0.3));
        ensure!(a.matrix().commutator(b.matrix()).frobenius_norm() <= 1e-9, "sample pair does not commute");
        let lhs = exp_element(&(&a + &b)).map_err(|e| e.to_string())?;
        let rhs = exp_element(&a).unwrap().matrix().matmul(exp_element(&b).unwrap().matrix());
        ensure!(lhs.matrix().distance(&rhs) <= 1e-9 * rhs.frobenius_norm(), "exp(a+b) ≠ exp(a)exp(b)");
    }
    Ok(())
}

pub fn powers_vanish_iff_radius_below_one() -> Check {
    let mut rng = random::rng(17);
    let alg = Algebra::full(4);
    for target in [0.3, 0.8, 0.95, 1.05, 1.3, 2.0] {
        for _ in 0..5 {
            let a = random::element(&mut rng, &alg);
            let r = spectrum(&a, Field::Complex).unwrap().radius;
            let a = a.scale_real(target / r);
            let t = spectral_radius_limit(&a, 1 << 10).map_err(|e| e.to_string())?;
            let vanished = *t.log_norms.last().unwrap() < (1e-8f64).ln();
            ensure!(vanished == (target < 1.0), "r = {target}: ln ‖a^1024‖ = {}", t.log_norms.last().unwrap());
        }
    }
    let nilpotent = Algebra::full(3).element(&CMat::unit(3, 0, 1) + &CMat::unit(3, 1, 2)).unwrap();
    let t = spectral_radius_limit(&nilpotent, 64).map_err(|e| e.to_string())?;
    ensure!(*t.log_norms.last().unwrap() == f64::NEG_INFINITY, "nilpotent powers did not vanish");
    Ok(())
}

pub fn spectral_symmetry() -> Check {
    let mut rng = random::rng(18);
    let alg = Algebra::full(4);
    for _ in 0..50 {
        let (a, b) = (random::element(&mut rng, &alg), random::element(&mut rng, &alg));
        let d = spec_symmetry_check(&a, &b).map_err(|e| e.to_string())?;
        ensure!(d <= 1e-7, "Hausdorff distance {d:e}");
    }
    Ok(())
}

pub fn commutator_trace_zero() -> Check {
    let mut rng = random::rng(19);
    let alg = Algebra::full(3);
    for _ in 0..100 {
        let (a, b) = (random::element(&mut rng, &alg), random::element(&mut rng, &alg));
        let t = commutator_scalar_test(&a, &b).trace_value.norm();
        ensure!(t <= 1e-12, "trace(ab − ba) = {t:e}");
    }
    Ok(())
}

fn abelian_algebras() -> Vec<Arc<Algebra>> {
    vec![
        Algebra::diagonal(4),
        cyclic_group_algebra(4).unwrap(),
        cyclic_group_algebra(8).unwrap(),
        algebra_from_generators(&[CMat::diag_real(&[1.0, 2.0, 2.0])], true).unwrap(),
    ]
}

fn unit_norm(rng: &mut Rng, alg: &Arc<Algebra>) -> Element {
    let a = random::element(rng, alg);
    let n = a.op_norm();
    a.scale_real(1.0 / n)
}

pub fn character_norm() -> Check {
    let mut rng = random::rng(20);
    for alg in abelian_algebras() {
        let spec = characters(&alg).map_err(|e| e.to_string())?;
        let one = alg.identity_matrix().unwrap();
        for chi in &spec.characters {
            ensure!((chi.eval(&one) - 1.0).norm() <= 1e-9, "χ(𝟙) = {}", chi.eval(&one));
        }
        for _ in 0..200 {
            let a = unit_norm(&mut rng, &alg);
            for chi in &spec.characters {
                ensure!(chi.apply(&a).norm() <= 1.0 + 1e-8, "|χ(a)| = {} on a unit element", chi.apply(&a).norm());
            }
        }
    }
    Ok(())
}

pub fn character_spectrum() -> Check {
    let mut rng = random::rng(21);
    let mut algs = abelian_algebras();
    algs.push(
        Algebra::generated(
            &[CMat::unit(2, 0, 1)],
            ClosureOptions { include_identity: true, star: false, field: Field::Complex },
        )
        .unwrap(),
    );
    for alg in algs {
        let spec = characters(&alg).map_err(|e| e.to_string())?;
        for _ in 0..20 {
            let a = random::element(&mut rng, &alg);
            let s = spectrum(&a, Field::Complex).map_err(|e| e.to_string())?;
            let hat = gelfand_transform(&a, &spec);
            let d = hausdorff(&s.points, &hat);
            ensure!(d <= cluster_radius(s.radius), "σ(a) and {{χ(a)}} differ by {d:e}");
        }
    }
    Ok(())
}

pub fn character_star() -> Check {
    let mut rng = random::rng(22);
    for alg in abelian_algebras() {
        let spec = characters(&alg).map_err(|e| e.to_string())?;
        for _ in 0..20 {
            let a = random::element(&mut rng, &alg);
            let astar = a.adjoint().map_err(|e| e.to_string())?;
            let aa = &astar * &a;
            for chi in &spec.characters {
                ensure!((chi.apply(&astar) - chi.apply(&a).conj()).norm() <= 1e-9, "χ(a*) ≠ conj χ(a)");
                let v = chi.apply(&aa);
                ensure!(v.re >= -1e-9 && v.im.abs() <= 1e-9, "χ(a*a) = {v}");
            }
        }
    }
    Ok(())
}

pub fn kernel_correspondence() -> Check {
    for alg in abelian_algebras() {
        let spec = characters(&alg).map_err(|e| e.to_string())?;
        let kernels: Vec<SubspaceBasis> = spec
            .characters
            .iter()
            .map(|c| char_kernel(&alg, c))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        for (i, k) in kernels.iter().enumerate() {
            ensure!(k.dim() + 1 == alg.dim(), "kernel of codimension {}", alg.dim() - k.dim());
            for (j, chi) in spec.characters.iter().enumerate() {
                if i == j {
                    continue;
                }
                let moved = k.vectors().iter().map(|v| chi.eval(v).norm()).fold(0.0, f64::max);
                ensure!(moved > 1e-6, "characters {i} and {j} share a kernel");
            }
        }
    }
    Ok(())
}

pub fn transform_multiplicative() -> Check {
    let mut rng = random::rng(23);
    for alg in abelian_algebras() {
        let spec = characters(&alg).map_err(|e| e.to_string())?;
        for _ in 0..20 {
            let (a, b) = (random::element(&mut rng, &alg), random::element(&mut rng, &alg));
            let hat_ab = gelfand_transform(&(&a * &b), &spec);
            let (ha, hb) = (gelfand_transform(&a, &spec), gelfand_transform(&b, &spec));
            for k in 0..hat_ab.len() {
                ensure!((hat_ab[k] - ha[k] * hb[k]).norm() <= 1e-10, "(ab)^ ≠ â·b̂ at {k}");
            }
        }
    }
    Ok(())
}

fn sample_states(rng: &mut Rng) -> Vec<State> {
    let m3 = Algebra::full(3);
    let d3 = Algebra::diagonal(3);
    let block = direct_sum_algebras(&Algebra::full(2), &Algebra::full(1)).algebra;
    vec![
        vector_state(&m3, &random::unit_vector(rng, 3)).unwrap(),
        State::new(Functional::from_density(&m3, &random::density_matrix(rng, 3)).unwrap()).unwrap(),
        State::new(Functional::from_density(&d3, &random::density_matrix(rng, 3)).unwrap()).unwrap(),
        vector_state(&block, &random::unit_vector(rng, 3)).unwrap(),
        State::trace_state(&block).unwrap(),
    ]
}

pub fn gns_star_homomorphism() -> Check {
    let mut rng = random::rng(24);
    for state in sample_states(&mut rng) {
        let alg = Arc::clone(state.algebra());
        let g = gns(&alg, &state).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let (a, b) = (random::element(&mut rng, &alg), random::element(&mut rng, &alg));
            let (pa, pb) = (g.apply(a.matrix()), g.apply(b.matrix()));
            let pab = g.apply(&a.matrix().matmul(b.matrix()));
            ensure!(pab.distance(&pa.matmul(&pb)) <= 1e-9, "π(ab) − π(a)π(b) = {:e}", pab.distance(&pa.matmul(&pb)));
            let pstar = g.apply(&a.matrix().adjoint());
            ensure!(pstar.distance(&pa.adjoint()) <= 1e-9, "π(a*) ≠ π(a)*");
        }
    }
    Ok(())
}

pub fn gns_contractive() -> Check {
    let mut rng = random::rng(25);
    for state in sample_states(&mut rng) {
        let alg = Arc::clone(state.algebra());
        let g = gns(&alg, &state).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let a = random::element(&mut rng, &alg);
            let excess = op_norm(&g.apply(a.matrix())) - a.op_norm();
            ensure!(excess <= 1e-9, "‖π(a)‖ exceeds ‖a‖ by {excess:e}");
        }
    }
    Ok(())
}

pub fn state_from_spectrum() -> Check {
    let mut rng = random::rng(26);
    let alg = Algebra::full(3);
    for _ in 0..20 {
        let a = alg.element(random::normal(&mut rng, 3)).unwrap();
        let (values, v) = normal_eig(a.matrix(), 1e-9).map_err(|e| e.to_string())?;
        for (j, lambda) in values.iter().enumerate() {
            let f = vector_state(&alg, &v.column(j)).map_err(|e| e.to_string())?;
            ensure!((f.apply(&a) - lambda).norm() <= 1e-8, "state value {} vs λ = {lambda}", f.apply(&a));
        }
    }
    Ok(())
}

pub fn null_space_left_ideal() -> Check {
    let mut rng = random::rng(27);
    let alg = Algebra::full(3);
    for _ in 0..10 {
        let f = vector_state(&alg, &random::unit_vector(&mut rng, 3)).unwrap();
        let h = f.functional().gram().map_err(|e| e.to_string())?;
        let null = null_basis(&h, 1e-10).map_err(|e| e.to_string())?;
        ensure!(null.len() == 6, "vector state on M₃ has null space of dimension {}", null.len());
        for c in &null {
            let a = alg.from_coords(c);
            for _ in 0..10 {
                let b = random::element(&mut rng, &alg);
                let ba = b.matrix().matmul(&a);
                let v = f.eval(&ba.adjoint().matmul(&ba)).norm();
                ensure!(v <= 1e-9 * (1.0 + b.op_norm().powi(2)), "f((ba)*(ba)) = {v:e}");
            }
        }
    }
    Ok(())
}

fn box_grid() -> BoxGrid {
    BoxGrid::new(1.0, 300).unwrap()
}

pub fn box_observables_hermitian() -> Check {
    let g = box_grid();
    let p = momentum_operator(&g, true).map_err(|e| e.to_string())?;
    for o in [position_operator(&g), cosine_observable(&g), p] {
        let r = cstar_core::linalg::hermitian_residual(o.matrix());
        ensure!(r <= 1e-12, "observable with hermitian residual {r:e}");
    }
    Ok(())
}

pub fn box_expectations_real() -> Check {
    let g = box_grid();
    let p = momentum_operator(&g, true).map_err(|e| e.to_string())?;
    let observables = [position_operator(&g), cosine_observable(&g), p];
    for n in 1..=6 {
        let psi = box_eigenstate(&g, n).map_err(|e| e.to_string())?;
        for o in &observables {
            let v = expectation(o, &psi).map_err(|e| e.to_string())?;
            ensure!(v.im.abs() <= 1e-10, "expectation {v} on level {n}");
        }
    }
    Ok(())
}

pub fn eigenstate_functionals_are_states() -> Check {
    let g = box_grid();
    let alg = Arc::clone(g.diagonal_algebra());
    for n in 1..=5 {
        let w = eigenstate_functional(&g, n, &alg).map_err(|e| e.to_string())?;
        let report = is_positive_functional(&alg, w.functional()).map_err(|e| e.to_string())?;
        ensure!(report.positive, "ω_{n} is not positive");
        let norm = functional_norm(&alg, w.functional()).map_err(|e| e.to_string())?;
        ensure!((norm - 1.0).abs() <= 1e-9, "‖ω_{n}‖ = {norm}");
    }
    Ok(())
}

pub fn phase_shift_group() -> Check {
    let g = box_grid();
    for (k1, k2) in [(0.0, 1.0), (PI, -2.5), (10.0, 3.3), (-7.1, 7.1)] {
        let lhs = phase_shift(&g, k1).matrix().matmul(phase_shift(&g, k2).matrix());
        let d = lhs.max_abs_diff(phase_shift(&g, k1 + k2).matrix());
        ensure!(d <= 1e-10, "phase shifts ({k1}, {k2}) off by {d:e}");
    }
    Ok(())
}
