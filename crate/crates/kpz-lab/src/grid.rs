//! Uniform periodic grids on the torus of size `M` and fields living on them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A uniform discretization of the torus `[0, M)` with `n_x` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodicGrid {
    /// Period of the torus.
    pub period: f64,
    /// Number of grid points.
    pub n_x: usize,
}

impl PeriodicGrid {
    pub fn new(period: f64, n_x: usize) -> Result<Self> {
        if !(period > 0.0) {
            return Err(Error::config("grid.period", "period must be positive"));
        }
        if n_x < 8 {
            return Err(Error::config("grid.n_x", "need at least 8 grid points"));
        }
        Ok(PeriodicGrid { period, n_x })
    }

    /// Grid spacing Δx = M / n_x.
    #[inline]
    pub fn dx(&self) -> f64 {
        self.period / self.n_x as f64
    }

    /// Position of grid point `i`.
    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        i as f64 * self.dx()
    }

    /// Periodic index arithmetic.
    #[inline]
    pub fn wrap(&self, i: isize) -> usize {
        let n = self.n_x as isize;
        (((i % n) + n) % n) as usize
    }

    /// Signed periodic distance from `x` to `y`, in `(-M/2, M/2]`.
    pub fn signed_dist(&self, x: f64, y: f64) -> f64 {
        let mut d = (y - x) % self.period;
        if d > self.period / 2.0 {
            d -= self.period;
        }
        if d <= -self.period / 2.0 {
            d += self.period;
        }
        d
    }
}

/// A real-valued field sampled on a [`PeriodicGrid`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorusField {
    pub grid: PeriodicGrid,
    pub values: Vec<f64>,
    /// Simulation time the snapshot belongs to.
    pub time_stamp: f64,
}

impl TorusField {
    pub fn new(grid: PeriodicGrid, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), grid.n_x, "field length must match grid");
        TorusField { grid, values, time_stamp: 0.0 }
    }

    pub fn constant(grid: PeriodicGrid, c: f64) -> Self {
        TorusField::new(grid, vec![c; grid.n_x])
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Mean value of the field (uniform weight).
    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.len() as f64
    }

    /// ∫ f dx over one period (left Riemann sum; exact for grid functions).
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.dx()
    }

    /// ∫ f·g dx over one period.
    pub fn inner(&self, other: &TorusField) -> f64 {
        assert_eq!(self.len(), other.len());
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum::<f64>()
            * self.grid.dx()
    }

    /// Central difference approximation of ∂_x f.
    pub fn central_diff(&self) -> TorusField {
        let n = self.len();
        let inv2dx = 0.5 / self.grid.dx();
        let mut out = vec![0.0; n];
        for i in 0..n {
            let ip = if i + 1 == n { 0 } else { i + 1 };
            let im = if i == 0 { n - 1 } else { i - 1 };
            out[i] = (self.values[ip] - self.values[im]) * inv2dx;
        }
        let mut f = TorusField::new(self.grid, out);
        f.time_stamp = self.time_stamp;
        f
    }

    /// Standard 3-point discrete Laplacian.
    pub fn laplacian(&self) -> TorusField {
        let n = self.len();
        let invdx2 = 1.0 / (self.grid.dx() * self.grid.dx());
        let mut out = vec![0.0; n];
        for i in 0..n {
            let ip = if i + 1 == n { 0 } else { i + 1 };
            let im = if i == 0 { n - 1 } else { i - 1 };
            out[i] = (self.values[ip] - 2.0 * self.values[i] + self.values[im]) * invdx2;
        }
        let mut f = TorusField::new(self.grid, out);
        f.time_stamp = self.time_stamp;
        f
    }

    /// Pointwise map.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> TorusField {
        let mut out = self.clone();
        for v in &mut out.values {
            *v = f(*v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spacing_times_points_is_period() {
        let g = PeriodicGrid::new(4.0, 256).unwrap();
        assert_eq!(g.dx() * g.n_x as f64, 4.0);
    }

    #[test]
    fn wrap_handles_negatives() {
        let g = PeriodicGrid::new(1.0, 8).unwrap();
        assert_eq!(g.wrap(-1), 7);
        assert_eq!(g.wrap(8), 0);
        assert_eq!(g.wrap(-9), 7);
    }

    #[test]
    fn laplacian_of_cosine_is_scaled_cosine() {
        let g = PeriodicGrid::new(4.0, 512).unwrap();
        let k = 2.0 * std::f64::consts::PI / 4.0;
        let f = TorusField::new(g, (0..512).map(|i| (k * g.x(i)).cos()).collect());
        let lap = f.laplacian();
        // Discrete symbol: -(2/dx^2)(1-cos(k dx)) ≈ -k².
        for i in 0..512 {
            let expect = -k * k * (k * g.x(i)).cos();
            assert!((lap.values[i] - expect).abs() < 1e-3);
        }
    }

    #[test]
    fn central_diff_telescopes_to_zero() {
        let g = PeriodicGrid::new(2.0, 64).unwrap();
        let f = TorusField::new(g, (0..64).map(|i| (i as f64).sin().powi(3)).collect());
        let d = f.central_diff();
        assert!(d.integral().abs() < 1e-12);
    }
}
