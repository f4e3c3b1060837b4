//! Local maximization used by the entanglement search and the qudit ladder.
//!
//! The main engine is gradient ascent with a backtracking (Armijo) line
//! search; directions come from a limited-memory BFGS update, falling back to
//! the plain gradient whenever the update is not an ascent direction.
//! Gradients are either analytic or central finite differences.

/// A smooth function of real parameters.
pub trait Landscape {
    fn value(&self, x: &[f64]) -> f64;
    fn gradient(&self, x: &[f64]) -> Vec<f64>;
}

/// Wraps a value function with a central-difference gradient.
pub struct FiniteDifference<F> {
    pub f: F,
    pub step: f64,
}

pub const DEFAULT_FD_STEP: f64 = 1e-5;

impl<F: Fn(&[f64]) -> f64> FiniteDifference<F> {
    pub fn new(f: F) -> Self {
        Self { f, step: DEFAULT_FD_STEP }
    }
}

impl<F: Fn(&[f64]) -> f64> Landscape for FiniteDifference<F> {
    fn value(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        finite_difference_gradient(&self.f, x, self.step)
    }
}

pub fn finite_difference_gradient(f: impl Fn(&[f64]) -> f64, x: &[f64], step: f64) -> Vec<f64> {
    let mut probe = x.to_vec();
    (0..x.len())
        .map(|i| {
            probe[i] = x[i] + step;
            let up = f(&probe);
            probe[i] = x[i] - step;
            let down = f(&probe);
            probe[i] = x[i];
            (up - down) / (2.0 * step)
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct AscentOptions {
    pub max_iters: usize,
    /// Stop once the gradient norm falls below this.
    pub grad_tol: f64,
    /// Stop after `stall_iters` consecutive steps improving by less than this.
    pub value_tol: f64,
    pub stall_iters: usize,
    /// Curvature pairs kept; 0 gives steepest ascent.
    pub memory: usize,
    /// Length of the first trial step along the normalized gradient.
    pub initial_step: f64,
    pub armijo: f64,
    /// Stop early once the value reaches this (e.g. a known upper bound).
    pub target: Option<f64>,
}

impl Default for AscentOptions {
    fn default() -> Self {
        Self {
            max_iters: 2000,
            grad_tol: 1e-9,
            value_tol: 1e-12,
            stall_iters: 20,
            memory: 8,
            initial_step: 0.1,
            armijo: 1e-4,
            target: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AscentResult {
    pub params: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    /// Value after every accepted step, starting with the initial value.
    pub history: Vec<f64>,
    pub converged: bool,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Maximizes `landscape` from `x0`.
pub fn maximize(landscape: &impl Landscape, x0: Vec<f64>, opts: &AscentOptions) -> AscentResult {
    let mut x = x0;
    let mut fx = landscape.value(&x);
    let mut g = landscape.gradient(&x);
    let mut history = vec![fx];
    let mut pairs: Vec<(Vec<f64>, Vec<f64>, f64)> = Vec::new(); // (s, y, 1/(y·s))
    let mut stall = 0;
    let mut converged = false;
    let mut step_hint = opts.initial_step;
    let mut iterations = 0;

    while iterations < opts.max_iters {
        if opts.target.is_some_and(|t| fx >= t) {
            converged = true;
            break;
        }
        let gnorm = norm(&g);
        if gnorm < opts.grad_tol {
            converged = true;
            break;
        }
        iterations += 1;

        let mut dir = if opts.memory > 0 && !pairs.is_empty() { lbfgs_direction(&g, &pairs) } else { g.clone() };
        let mut slope = dot(&dir, &g);
        let quasi_newton = opts.memory > 0 && !pairs.is_empty();
        if slope <= 0.0 || !slope.is_finite() {
            pairs.clear();
            dir = g.clone();
            slope = gnorm * gnorm;
        }
        let mut t = if quasi_newton && slope > 0.0 && dir != g { 1.0 } else { step_hint / norm(&dir) };

        let mut accepted = None;
        for _ in 0..60 {
            let trial: Vec<f64> = x.iter().zip(&dir).map(|(xi, di)| xi + t * di).collect();
            let ft = landscape.value(&trial);
            if ft.is_finite() && ft >= fx + opts.armijo * t * slope {
                accepted = Some((trial, ft));
                break;
            }
            t *= 0.5;
        }
        let Some((next, fnext)) = accepted else {
            // no ascent possible along the gradient at machine precision
            if dir != g || !pairs.is_empty() {
                pairs.clear();
                continue;
            }
            converged = true;
            break;
        };
        step_hint = 2.0 * t * norm(&dir);

        let gnext = landscape.gradient(&next);
        if opts.memory > 0 {
            let s: Vec<f64> = next.iter().zip(&x).map(|(a, b)| a - b).collect();
            // curvature of the minimized function -f
            let y: Vec<f64> = g.iter().zip(&gnext).map(|(a, b)| a - b).collect();
            let ys = dot(&y, &s);
            if ys > 1e-14 {
                pairs.push((s, y, 1.0 / ys));
                if pairs.len() > opts.memory {
                    pairs.remove(0);
                }
            }
        }
        let gain = fnext - fx;
        x = next;
        fx = fnext;
        g = gnext;
        history.push(fx);
        if gain < opts.value_tol {
            stall += 1;
            if stall >= opts.stall_iters {
                converged = true;
                break;
            }
        } else {
            stall = 0;
        }
    }
    AscentResult { params: x, value: fx, iterations, history, converged }
}

// Two-loop recursion on the gradient of -f; returns an ascent direction for f.
fn lbfgs_direction(g: &[f64], pairs: &[(Vec<f64>, Vec<f64>, f64)]) -> Vec<f64> {
    let mut q: Vec<f64> = g.iter().map(|v| -v).collect();
    let mut alphas = Vec::with_capacity(pairs.len());
    for (s, y, rho) in pairs.iter().rev() {
        let a = rho * dot(s, &q);
        for (qi, yi) in q.iter_mut().zip(y) {
            *qi -= a * yi;
        }
        alphas.push(a);
    }
    let (s, y, _) = pairs.last().expect("nonempty");
    let gamma = dot(s, y) / dot(y, y);
    for qi in q.iter_mut() {
        *qi *= gamma;
    }
    for ((s, y, rho), a) in pairs.iter().zip(alphas.iter().rev()) {
        let b = rho * dot(y, &q);
        for (qi, si) in q.iter_mut().zip(s) {
            *qi += (a - b) * si;
        }
    }
    q.iter().map(|v| -v).collect()
}

/// Derivative-free compass search: try `±step` along every coordinate,
/// keep improvements, halve the step when none is found.
pub fn compass_search(
    f: impl Fn(&[f64]) -> f64,
    x0: Vec<f64>,
    initial_step: f64,
    min_step: f64,
    max_evals: usize,
) -> AscentResult {
    let mut x = x0;
    let mut fx = f(&x);
    let mut history = vec![fx];
    let mut step = initial_step;
    let mut evals = 1;
    let mut iterations = 0;
    while step >= min_step && evals < max_evals {
        iterations += 1;
        let mut improved = false;
        for i in 0..x.len() {
            for sign in [1.0, -1.0] {
                let old = x[i];
                x[i] = old + sign * step;
                let ft = f(&x);
                evals += 1;
                if ft > fx {
                    fx = ft;
                    improved = true;
                    history.push(fx);
                    break;
                }
                x[i] = old;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    AscentResult { params: x, value: fx, iterations, history, converged: step < min_step }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Bowl;

    impl Landscape for Bowl {
        // concave with maximum 3 at (1, -2)
        fn value(&self, x: &[f64]) -> f64 {
            3.0 - (x[0] - 1.0).powi(2) - 10.0 * (x[1] + 2.0).powi(2)
        }
        fn gradient(&self, x: &[f64]) -> Vec<f64> {
            vec![-2.0 * (x[0] - 1.0), -20.0 * (x[1] + 2.0)]
        }
    }

    #[test]
    fn finds_maximum_of_quadratic() {
        for memory in [0, 5] {
            let opts = AscentOptions { memory, ..Default::default() };
            let r = maximize(&Bowl, vec![5.0, 5.0], &opts);
            assert!((r.value - 3.0).abs() < 1e-12, "memory {memory}: {}", r.value);
            assert!(r.history.windows(2).all(|w| w[1] >= w[0]));
        }
    }

    #[test]
    fn finite_differences_match_analytic() {
        let x = [0.3, -1.1];
        let fd = finite_difference_gradient(|x| Bowl.value(x), &x, 1e-5);
        for (a, b) in fd.iter().zip(Bowl.gradient(&x)) {
            assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn rosenbrock_with_finite_differences() {
        let f = FiniteDifference::new(|x: &[f64]| -((1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2)));
        let r = maximize(&f, vec![-1.2, 1.0], &AscentOptions { max_iters: 5000, ..Default::default() });
        assert!(r.value > -1e-8, "{}", r.value);
    }

    #[test]
    fn compass_search_agrees_at_looser_tolerance() {
        let r = compass_search(|x| Bowl.value(x), vec![5.0, 5.0], 1.0, 1e-7, 100_000);
        assert!((r.value - 3.0).abs() < 1e-10);
        assert!((r.params[0] - 1.0).abs() < 1e-5);
    }
}
