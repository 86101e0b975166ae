//! Gauss-Legendre rules and a globally adaptive integrator on finite and
//! semi-infinite intervals.
//!
//! Every panel is integrated with an n-point Gauss-Legendre rule and with the
//! same rule on its two halves; the difference is the panel's error estimate
//! and the two-half sum is the accepted value. The panel with the largest
//! estimate is bisected until the summed estimate meets the tolerance or the
//! evaluation budget is spent.

use std::collections::BinaryHeap;
use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        let nf = n as f64;
        for i in 0..m {
            // Tricomi initial guess, then Newton on P_n.
            let theta = std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5);
            let mut x = (1.0 - (nf - 1.0) / (8.0 * nf * nf * nf)) * theta.cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Nodes and weights mapped onto [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F, a: f64, b: f64) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }

    /// Composite rule over `panels` equal subintervals of [a, b].
    pub fn integrate_composite<F: FnMut(f64) -> f64>(
        &self,
        mut f: F,
        a: f64,
        b: f64,
        panels: usize,
    ) -> f64 {
        let h = (b - a) / panels as f64;
        (0..panels)
            .map(|p| {
                let lo = a + h * p as f64;
                self.integrate(&mut f, lo, lo + h)
            })
            .sum()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p, d)
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Self {
        Self { abs, rel }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }
}

struct Panel {
    a: f64,
    b: f64,
    left: f64,
    right: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive integrator. Holds the panel rule so repeated calls do not
/// rebuild it.
#[derive(Debug, Clone)]
pub struct Adaptive {
    rule: GaussLegendre,
}

impl Default for Adaptive {
    fn default() -> Self {
        Self::new(15)
    }
}

impl Adaptive {
    pub fn new(points: usize) -> Self {
        Self {
            rule: GaussLegendre::new(points),
        }
    }

    fn panel<F: FnMut(f64) -> f64>(&self, f: &mut F, a: f64, b: f64, coarse: f64) -> Panel {
        let mid = 0.5 * (a + b);
        let left = self.rule.integrate(&mut *f, a, mid);
        let right = self.rule.integrate(&mut *f, mid, b);
        Panel {
            a,
            b,
            left,
            right,
            error: (coarse - left - right).abs(),
        }
    }

    /// Integrates `f` over the union of the given consecutive finite intervals.
    pub fn integrate_intervals<F: FnMut(f64) -> f64>(
        &self,
        mut f: F,
        breaks: &[f64],
        tol: Tolerance,
        budget: usize,
    ) -> Result<Estimate> {
        let n = self.rule.len();
        let mut evaluations = 0;
        let mut heap = BinaryHeap::new();
        for w in breaks.windows(2) {
            let coarse = self.rule.integrate(&mut f, w[0], w[1]);
            heap.push(self.panel(&mut f, w[0], w[1], coarse));
            evaluations += 3 * n;
        }
        loop {
            let (value, error) = heap
                .iter()
                .fold((0.0, 0.0), |(v, e), p| (v + p.left + p.right, e + p.error));
            if !value.is_finite() || !error.is_finite() {
                return Err(Error::Numeric("adaptive quadrature"));
            }
            if error <= tol.target(value) {
                return Ok(Estimate {
                    value,
                    error,
                    evaluations,
                });
            }
            if evaluations + 4 * n > budget {
                return Err(Error::Accuracy {
                    value,
                    error,
                    evaluations,
                });
            }
            let worst = heap.pop().expect("at least one panel");
            let mid = 0.5 * (worst.a + worst.b);
            if mid <= worst.a || mid >= worst.b {
                // Panel cannot be split further in floating point.
                return Err(Error::Accuracy {
                    value,
                    error,
                    evaluations,
                });
            }
            heap.push(self.panel(&mut f, worst.a, mid, worst.left));
            heap.push(self.panel(&mut f, mid, worst.b, worst.right));
            evaluations += 4 * n;
        }
    }

    pub fn integrate<F: FnMut(f64) -> f64>(
        &self,
        f: F,
        a: f64,
        b: f64,
        tol: Tolerance,
        budget: usize,
    ) -> Result<Estimate> {
        self.integrate_intervals(f, &[a, b], tol, budget)
    }
}

/// Settings for integrals over the half line [0, ∞).
///
/// The axis is split at `split_points`; the last piece [s_last, ∞) is mapped
/// onto [0, 1) by u = s_last + L·τ/(1 − τ) with L = `tail_scale`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureSettings {
    /// Maximum number of integrand evaluations.
    pub node_budget: usize,
    pub split_points: Vec<f64>,
    pub tail_scale: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            node_budget: 2_000_000,
            split_points: vec![1.0, 10.0, 50.0],
            tail_scale: 50.0,
            abs_tol: 1e-300,
            rel_tol: 1e-11,
        }
    }
}

impl QuadratureSettings {
    pub fn validate(&self) -> Result<()> {
        if self.node_budget == 0 {
            return Err(Error::Config("quadrature node budget must be positive".into()));
        }
        for tol in [self.abs_tol, self.rel_tol] {
            if !(tol > 0.0 && tol <= 1e-2) {
                return Err(Error::Config(format!(
                    "quadrature tolerance {tol} outside (0, 1e-2]"
                )));
            }
        }
        if !(self.tail_scale > 0.0) {
            return Err(Error::Config("tail scale must be positive".into()));
        }
        if self.split_points.iter().any(|&s| !(s > 0.0 && s.is_finite())) {
            return Err(Error::Config("split points must be positive and finite".into()));
        }
        if self.split_points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("split points must be strictly increasing".into()));
        }
        Ok(())
    }

    pub fn tolerance(&self) -> Tolerance {
        Tolerance::new(self.abs_tol, self.rel_tol)
    }

    /// ∫₀^∞ f(u) du.
    pub fn integrate_half_line<F: FnMut(f64) -> f64>(&self, mut f: F) -> Result<Estimate> {
        self.validate()?;
        let adaptive = Adaptive::default();
        let last = self.split_points.last().copied().unwrap_or(0.0);
        let scale = self.tail_scale;
        // Both pieces share the tolerance target of the final sum, so the head
        // is integrated first and its value informs the tail's share.
        let mut breaks = vec![0.0];
        breaks.extend_from_slice(&self.split_points);
        let head = if breaks.len() > 1 {
            adaptive.integrate_intervals(&mut f, &breaks, self.tolerance(), self.node_budget)?
        } else {
            Estimate {
                value: 0.0,
                error: 0.0,
                evaluations: 0,
            }
        };
        let tail_tol = Tolerance::new(
            self.abs_tol.max(self.rel_tol * head.value.abs()),
            self.rel_tol,
        );
        let remaining = self.node_budget.saturating_sub(head.evaluations);
        let tail = adaptive
            .integrate(
                |t: f64| {
                    let d = 1.0 - t;
                    let u = last + scale * t / d;
                    let fu = f(u);
                    if fu == 0.0 {
                        0.0
                    } else {
                        fu * scale / (d * d)
                    }
                },
                0.0,
                1.0,
                tail_tol,
                remaining,
            )
            .map_err(|e| match e {
                Error::Accuracy {
                    value,
                    error,
                    evaluations,
                } => Error::Accuracy {
                    value: value + head.value,
                    error: error + head.error,
                    evaluations: evaluations + head.evaluations,
                },
                other => other,
            })?;
        Ok(Estimate {
            value: head.value + tail.value,
            error: head.error + tail.error,
            evaluations: head.evaluations + tail.evaluations,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_integrates_polynomials_exactly() {
        for n in [1, 2, 5, 16, 64] {
            let rule = GaussLegendre::new(n);
            assert!((rule.weights().iter().sum::<f64>() - 2.0).abs() < 1e-13);
            for deg in 0..(2 * n) {
                let got = rule.integrate(|x| x.powi(deg as i32), 0.0, 1.0);
                let want = 1.0 / (deg as f64 + 1.0);
                assert!((got - want).abs() < 1e-13, "n={n} deg={deg}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let est = Adaptive::default()
            .integrate(|x| x.sqrt().recip(), 0.0, 1.0, Tolerance::new(1e-10, 1e-10), 200_000)
            .unwrap();
        assert!((est.value - 2.0).abs() < 1e-8, "{est:?}");
    }

    #[test]
    fn half_line_exponential_and_algebraic_tails() {
        let q = QuadratureSettings::default();
        let e = q.integrate_half_line(|u| (-0.001 * u).exp()).unwrap();
        assert!((e.value / 1000.0 - 1.0).abs() < 1e-10, "{e:?}");
        let a = q.integrate_half_line(|u| 1.0 / (1.0 + u * u)).unwrap();
        assert!((a.value - std::f64::consts::FRAC_PI_2).abs() < 1e-10, "{a:?}");
    }

    #[test]
    fn budget_exhaustion_reports_accuracy_error() {
        let q = QuadratureSettings {
            node_budget: 200,
            ..Default::default()
        };
        let err = q.integrate_half_line(|u| (50.0 * u).sin() / (1.0 + u)).unwrap_err();
        assert!(matches!(err, Error::Accuracy { .. }), "{err:?}");
    }

    #[test]
    fn settings_validation() {
        let mut q = QuadratureSettings::default();
        q.split_points = vec![1.0, 1.0];
        assert!(q.validate().is_err());
        q.split_points = vec![1.0];
        q.rel_tol = 0.5;
        assert!(q.validate().is_err());
    }
}
