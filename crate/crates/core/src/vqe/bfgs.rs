//! Quasi-Newton minimization with a strong-Wolfe line search.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BfgsOptions {
    /// Stop once `max |∇f| <` this value.
    pub gradient_tolerance: f64,
    pub max_iterations: usize,
    /// Sufficient-decrease constant.
    pub c1: f64,
    /// Curvature constant.
    pub c2: f64,
    pub initial_step: f64,
    /// Function evaluations allowed per line search.
    pub max_line_search_evaluations: usize,
}

impl Default for BfgsOptions {
    fn default() -> Self {
        Self {
            gradient_tolerance: 1e-6,
            max_iterations: 2000,
            c1: 1e-4,
            c2: 0.9,
            initial_step: 1.0,
            max_line_search_evaluations: 40,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BfgsOutcome {
    pub x: Vec<f64>,
    pub f: f64,
    pub gradient: Vec<f64>,
    /// Objective at the starting point and after every accepted step.
    pub trace: Vec<f64>,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn identity(n: usize) -> Vec<f64> {
    let mut h = vec![0.0; n * n];
    for i in 0..n {
        h[i * n + i] = 1.0;
    }
    h
}

struct Point {
    alpha: f64,
    f: f64,
    slope: f64,
    gradient: Vec<f64>,
}

struct LineSearch<'a, F> {
    objective: &'a mut F,
    x: &'a [f64],
    p: &'a [f64],
    f0: f64,
    slope0: f64,
    opts: &'a BfgsOptions,
    evaluations: usize,
}

impl<F> LineSearch<'_, F>
where
    F: FnMut(&[f64]) -> Result<(f64, Vec<f64>)>,
{
    fn eval(&mut self, alpha: f64) -> Result<Point> {
        self.evaluations += 1;
        let trial: Vec<f64> = self.x.iter().zip(self.p).map(|(x, p)| x + alpha * p).collect();
        let (f, gradient) = (self.objective)(&trial)?;
        let slope = if f.is_finite() { dot(&gradient, self.p) } else { f64::NAN };
        Ok(Point { alpha, f, slope, gradient })
    }

    fn armijo_fails(&self, pt: &Point) -> bool {
        !pt.f.is_finite() || pt.f > self.f0 + self.opts.c1 * pt.alpha * self.slope0
    }

    fn curvature_holds(&self, pt: &Point) -> bool {
        pt.slope.abs() <= -self.opts.c2 * self.slope0
    }

    fn budget_left(&self) -> bool {
        self.evaluations < self.opts.max_line_search_evaluations
    }

    /// Bracketing phase; returns an accepted point or `None`.
    fn search(&mut self) -> Result<Option<Point>> {
        let mut prev = Point { alpha: 0.0, f: self.f0, slope: self.slope0, gradient: Vec::new() };
        let mut alpha = self.opts.initial_step;
        let mut first = true;
        while self.budget_left() {
            let cur = self.eval(alpha)?;
            if self.armijo_fails(&cur) || (!first && cur.f >= prev.f) {
                return self.zoom(prev, cur);
            }
            if self.curvature_holds(&cur) {
                return Ok(Some(cur));
            }
            if cur.slope >= 0.0 {
                return self.zoom(cur, prev);
            }
            alpha = cur.alpha * 2.0;
            prev = cur;
            first = false;
        }
        Ok(None)
    }

    fn zoom(&mut self, mut lo: Point, mut hi: Point) -> Result<Option<Point>> {
        while self.budget_left() {
            let width = hi.alpha - lo.alpha;
            if width.abs() <= f64::EPSILON * lo.alpha.abs().max(1e-300) {
                break;
            }
            let alpha = interpolate(&lo, &hi);
            let cur = self.eval(alpha)?;
            if self.armijo_fails(&cur) || cur.f >= lo.f {
                hi = cur;
                continue;
            }
            if self.curvature_holds(&cur) {
                return Ok(Some(cur));
            }
            if cur.slope * (hi.alpha - lo.alpha) >= 0.0 {
                hi = lo;
            }
            lo = cur;
        }
        // Sufficient decrease without the curvature condition.
        Ok(if lo.alpha > 0.0 && lo.f < self.f0 { Some(lo) } else { None })
    }
}

/// Cubic minimizer of the bracket, falling back to bisection near the ends.
fn interpolate(lo: &Point, hi: &Point) -> f64 {
    let (a, b) = (lo.alpha, hi.alpha);
    let mid = 0.5 * (a + b);
    if !hi.f.is_finite() || !hi.slope.is_finite() {
        return mid;
    }
    let d1 = lo.slope + hi.slope - 3.0 * (lo.f - hi.f) / (a - b);
    let disc = d1 * d1 - lo.slope * hi.slope;
    if disc < 0.0 {
        return mid;
    }
    let d2 = (b - a).signum() * disc.sqrt();
    let denom = hi.slope - lo.slope + 2.0 * d2;
    if denom == 0.0 {
        return mid;
    }
    let trial = b - (b - a) * (hi.slope + d2 - d1) / denom;
    let (left, right) = (a.min(b), a.max(b));
    let margin = 0.1 * (right - left);
    if trial.is_finite() && trial > left + margin && trial < right - margin {
        trial
    } else {
        mid
    }
}

/// Minimizes `objective`, which returns the value and gradient at a point.
///
/// The inverse-Hessian estimate starts at the identity and is rescaled by
/// `sᵀy / yᵀy` after the first accepted step. If the search direction is
/// not a descent direction, or a line search fails, the estimate is reset to
/// the identity once; a second consecutive failure ends the run with
/// `converged = false` at the best point found.
pub fn bfgs<F>(mut objective: F, x0: Vec<f64>, opts: &BfgsOptions) -> Result<BfgsOutcome>
where
    F: FnMut(&[f64]) -> Result<(f64, Vec<f64>)>,
{
    let n = x0.len();
    let mut x = x0;
    let (mut f, mut g) = objective(&x)?;
    if !f.is_finite() || g.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical("objective is not finite at the starting point".into()));
    }
    if g.len() != n {
        return Err(Error::ParameterLength { expected: n, actual: g.len() });
    }
    let mut evaluations = 1;
    let mut trace = vec![f];
    let mut h = identity(n);
    let mut scaled = false;
    let mut iterations = 0;
    let mut just_reset = false;

    while iterations < opts.max_iterations && max_norm(&g) >= opts.gradient_tolerance {
        let mut p: Vec<f64> = (0..n).map(|i| -dot(&h[i * n..(i + 1) * n], &g)).collect();
        let mut slope0 = dot(&g, &p);
        if slope0.is_nan() || slope0 >= 0.0 {
            h = identity(n);
            p = g.iter().map(|v| -v).collect();
            slope0 = -dot(&g, &g);
        }
        let mut ls = LineSearch { objective: &mut objective, x: &x, p: &p, f0: f, slope0, opts, evaluations: 0 };
        let accepted = ls.search()?;
        evaluations += ls.evaluations;
        let Some(pt) = accepted else {
            if just_reset {
                break;
            }
            h = identity(n);
            scaled = false;
            just_reset = true;
            continue;
        };
        just_reset = false;

        let s: Vec<f64> = p.iter().map(|v| pt.alpha * v).collect();
        let y: Vec<f64> = pt.gradient.iter().zip(&g).map(|(a, b)| a - b).collect();
        for (xi, si) in x.iter_mut().zip(&s) {
            *xi += si;
        }
        f = pt.f;
        g = pt.gradient;
        trace.push(f);
        iterations += 1;

        let sy = dot(&s, &y);
        if sy > 0.0 {
            if !scaled {
                let scale = sy / dot(&y, &y);
                h.iter_mut().for_each(|v| *v *= scale);
                scaled = true;
            }
            update_inverse_hessian(&mut h, &s, &y, sy);
        }
    }

    let converged = max_norm(&g) < opts.gradient_tolerance;
    Ok(BfgsOutcome { x, f, gradient: g, trace, iterations, evaluations, converged })
}

/// `H ← (I − ρsyᵀ) H (I − ρysᵀ) + ρssᵀ` with `ρ = 1/sᵀy`.
fn update_inverse_hessian(h: &mut [f64], s: &[f64], y: &[f64], sy: f64) {
    let n = s.len();
    let rho = 1.0 / sy;
    let hy: Vec<f64> = (0..n).map(|i| dot(&h[i * n..(i + 1) * n], y)).collect();
    let yhy = dot(y, &hy);
    let ss_factor = rho * (1.0 + rho * yhy);
    for i in 0..n {
        for j in 0..n {
            h[i * n + j] += ss_factor * s[i] * s[j] - rho * (hy[i] * s[j] + s[i] * hy[j]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rosenbrock(x: &[f64]) -> Result<(f64, Vec<f64>)> {
        let (a, b) = (x[0], x[1]);
        let f = (1.0 - a).powi(2) + 100.0 * (b - a * a).powi(2);
        let g = vec![-2.0 * (1.0 - a) - 400.0 * a * (b - a * a), 200.0 * (b - a * a)];
        Ok((f, g))
    }

    #[test]
    fn rosenbrock_minimum() {
        let out = bfgs(rosenbrock, vec![-1.2, 1.0], &BfgsOptions::default()).unwrap();
        assert!(out.converged);
        assert!((out.x[0] - 1.0).abs() < 1e-5 && (out.x[1] - 1.0).abs() < 1e-5);
    }

    #[test]
    fn trace_is_monotone() {
        let out = bfgs(rosenbrock, vec![-1.2, 1.0], &BfgsOptions::default()).unwrap();
        assert!(out.trace.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(*out.trace.last().unwrap(), out.f);
        assert_eq!(out.trace.len(), out.iterations + 1);
    }

    #[test]
    fn iteration_cap() {
        let opts = BfgsOptions { max_iterations: 3, ..BfgsOptions::default() };
        let out = bfgs(rosenbrock, vec![-1.2, 1.0], &opts).unwrap();
        assert_eq!(out.iterations, 3);
        assert!(!out.converged);
    }

    #[test]
    fn already_stationary() {
        let out = bfgs(|x: &[f64]| Ok((x[0] * x[0], vec![2.0 * x[0]])), vec![0.0], &BfgsOptions::default()).unwrap();
        assert!(out.converged);
        assert_eq!(out.iterations, 0);
    }

    #[test]
    fn non_finite_start_rejected() {
        assert!(bfgs(|_: &[f64]| Ok((f64::NAN, vec![0.0])), vec![0.0], &BfgsOptions::default()).is_err());
    }
}
