//! Floater-Hormann barycentric rational interpolation.
//!
//! On equispaced nodes it has no Runge oscillation near the ends, which is the
//! situation for values sampled on a ladder of quantum numbers.

use alloc::vec;
use alloc::vec::Vec;


#[derive(Debug, Clone, PartialEq)]
pub struct Barycentric {
    nodes: Vec<f64>,
    values: Vec<f64>,
    weights: Vec<f64>,
}

impl Barycentric {
    /// Interpolant of blending degree `d` (clamped to the node count).
    pub fn new(nodes: Vec<f64>, values: Vec<f64>, d: usize) -> Self {
        assert_eq!(nodes.len(), values.len());
        assert!(!nodes.is_empty());
        let n = nodes.len() - 1;
        let d = d.min(n);
        let mut weights = vec![0.0; n + 1];
        for (k, w) in weights.iter_mut().enumerate() {
            let lo = k.saturating_sub(d);
            let hi = k.min(n - d);
            let mut s = 0.0;
            for i in lo..=hi {
                let mut p = 1.0;
                for j in i..=i + d {
                    if j != k {
                        p /= (nodes[k] - nodes[j]).abs();
                    }
                }
                s += p;
            }
            let sign = if (k + d) % 2 == 0 { 1.0 } else { -1.0 };
            *w = sign * s;
        }
        Barycentric { nodes, values, weights }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut num = 0.0;
        let mut den = 0.0;
        for ((&xk, &fk), &wk) in self.nodes.iter().zip(&self.values).zip(&self.weights) {
            let dx = x - xk;
            if dx == 0.0 {
                return fk;
            }
            let t = wk / dx;
            num += t * fk;
            den += t;
        }
        num / den
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_polynomials_up_to_degree_d() {
        let xs: Vec<f64> = (0..21).map(|k| -3.0 + 0.3 * k as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 * x * x * x - x + 1.0).collect();
        let p = Barycentric::new(xs, ys, 3);
        for x in [-2.95, -1.234, 0.0, 0.5, 2.99] {
            assert!((p.eval(x) - (2.0 * x * x * x - x + 1.0)).abs() < 1e-10);
        }
    }

    #[test]
    fn exact_at_nodes() {
        let xs: Vec<f64> = (0..9).map(|k| k as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x.sin()).collect();
        let p = Barycentric::new(xs.clone(), ys.clone(), 4);
        for (x, y) in xs.iter().zip(&ys) {
            assert_eq!(p.eval(*x), *y);
        }
    }

    #[test]
    fn runge_free() {
        let n = 41;
        let xs: Vec<f64> = (0..n).map(|k| -1.0 + 2.0 * k as f64 / (n - 1) as f64).collect();
        let f = |x: f64| 1.0 / (1.0 + 25.0 * x * x);
        let p = Barycentric::new(xs.clone(), xs.iter().map(|&x| f(x)).collect(), 3);
        let worst = (0..400)
            .map(|i| -1.0 + 2.0 * i as f64 / 399.0)
            .map(|x| (p.eval(x) - f(x)).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-3);
    }
}
