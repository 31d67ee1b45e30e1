//! Derivative-free minimization used for quotient norms.

/// Outcome of a Nelder–Mead run.
#[derive(Clone, Debug)]
pub struct NelderMead {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Nelder–Mead with dimension-adapted coefficients (Gao–Han).
///
/// Stops when the spread of simplex values is at most `ftol·(1 + |f_best|)`
/// and every vertex lies within `xtol` of the best one, or when `max_evals`
/// evaluations have been spent. A run whose simplex values agree within
/// `ftol` and whose best value has not moved for `20·(m + 1)` iterations is
/// also accepted: on a flat minimum the vertices need not contract.
pub fn nelder_mead(
    f: &mut impl FnMut(&[f64]) -> f64,
    x0: &[f64],
    step: f64,
    max_evals: usize,
    ftol: f64,
    xtol: f64,
) -> NelderMead {
    let m = x0.len();
    let mut evaluations = 0usize;
    let mut eval = |x: &[f64], count: &mut usize| {
        *count += 1;
        f(x)
    };
    if m == 0 {
        let value = eval(x0, &mut evaluations);
        return NelderMead { x: Vec::new(), value, evaluations, converged: true };
    }
    let md = m as f64;
    let (alpha, gamma, rho, sigma) =
        if m > 1 { (1.0, 1.0 + 2.0 / md, 0.75 - 1.0 / (2.0 * md), 1.0 - 1.0 / md) } else { (1.0, 2.0, 0.5, 0.5) };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(m + 1);
    simplex.push((x0.to_vec(), eval(x0, &mut evaluations)));
    for i in 0..m {
        let mut x = x0.to_vec();
        x[i] += step;
        let v = eval(&x, &mut evaluations);
        simplex.push((x, v));
    }

    let mut converged = false;
    let patience = 20 * (m + 1);
    let mut stalled = 0usize;
    let mut last_best = f64::INFINITY;
    while evaluations < max_evals {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[m].1;
        let spread_ok = worst - best <= ftol * (1.0 + best.abs());
        if last_best - best > ftol * (1.0 + best.abs()) {
            stalled = 0;
            last_best = best;
        } else {
            stalled += 1;
        }
        if spread_ok && stalled >= patience {
            converged = true;
            break;
        }
        let size = simplex[1..]
            .iter()
            .map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if spread_ok && size <= xtol {
            converged = true;
            break;
        }

        let mut centroid = vec![0.0; m];
        for (x, _) in &simplex[..m] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / md;
            }
        }
        let along = |t: f64| -> Vec<f64> { centroid.iter().zip(&simplex[m].0).map(|(c, w)| c + t * (c - w)).collect() };

        let xr = along(alpha);
        let fr = eval(&xr, &mut evaluations);
        if fr < best {
            let xe = along(alpha * gamma);
            let fe = eval(&xe, &mut evaluations);
            simplex[m] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[m - 1].1 {
            simplex[m] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < worst {
            let xc = along(alpha * rho);
            let fc = eval(&xc, &mut evaluations);
            (xc, fc)
        } else {
            let xc = along(-rho);
            let fc = eval(&xc, &mut evaluations);
            (xc, fc)
        };
        if fc <= fr.min(worst) {
            simplex[m] = (xc, fc);
            continue;
        }
        // shrink towards the best vertex
        let best_x = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x: Vec<f64> = best_x.iter().zip(&vertex.0).map(|(b, v)| b + sigma * (v - b)).collect();
            let v = eval(&x, &mut evaluations);
            *vertex = (x, v);
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, value) = simplex.swap_remove(0);
    NelderMead { x, value, evaluations, converged }
}
