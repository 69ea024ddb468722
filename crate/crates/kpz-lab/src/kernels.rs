//! Compactly supported mollifier kernels and their convolutions.
//!
//! A kernel is a nonnegative probability density with compact support,
//! stored as a finely sampled profile. The operations mirror exactly what
//! the smeared equations need:
//!
//! * ε-scaling  η^ε(x) = η(x/ε)/ε  (exact on the sampled grid),
//! * n-fold self-convolution  η_n = η ∗ ⋯ ∗ η,
//! * the squared-density integral  ξ^ε = ∫ (η^ε)²,
//! * periodic convolution of torus fields against the kernel.
//!
//! Profiles are renormalized at construction so the discrete mass is exactly
//! one; discrete self-convolution then preserves mass to rounding because the
//! Riemann sum of a discrete convolution factorizes exactly.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::grid::TorusField;

/// Number of sample intervals across a base kernel's support.
const BASE_SAMPLES: usize = 4096;

/// Grid sizes at or above this threshold use the FFT path of
/// [`convolve_periodic`]; smaller grids use direct summation.
pub const FFT_THRESHOLD: usize = 128;

/// Built-in kernel shapes selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelShape {
    /// 0.75·(1−x²) on [−1, 1]. The default.
    Epanechnikov,
    /// 1−|x| on [−1, 1].
    Triangle,
    /// Standard normal density truncated at ±4 and renormalized.
    GaussianTruncated,
    /// 1.5·(1−x²) on [0, 1]; deliberately asymmetric.
    OneSidedEpanechnikov,
}

impl KernelShape {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "epanechnikov" => Ok(KernelShape::Epanechnikov),
            "triangle" => Ok(KernelShape::Triangle),
            "gaussian-truncated" => Ok(KernelShape::GaussianTruncated),
            "one-sided-epanechnikov" => Ok(KernelShape::OneSidedEpanechnikov),
            other => Err(Error::config(
                "kernel.name",
                format!("unknown kernel `{other}`; expected epanechnikov | triangle | gaussian-truncated | one-sided-epanechnikov"),
            )),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            KernelShape::Epanechnikov => "epanechnikov",
            KernelShape::Triangle => "triangle",
            KernelShape::GaussianTruncated => "gaussian-truncated",
            KernelShape::OneSidedEpanechnikov => "one-sided-epanechnikov",
        }
    }
}

/// A sampled mollifier profile on `[lo, lo + (len-1)·dx]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MollifierKernel {
    values: Vec<f64>,
    lo: f64,
    dx: f64,
    symmetric: bool,
    /// Discrete mass at construction time (1 after renormalization).
    normalization: f64,
}

impl MollifierKernel {
    /// Build one of the named shapes at the default resolution.
    pub fn named(shape: KernelShape) -> Self {
        let (lo, hi): (f64, f64) = match shape {
            KernelShape::Epanechnikov | KernelShape::Triangle => (-1.0, 1.0),
            KernelShape::GaussianTruncated => (-4.0, 4.0),
            KernelShape::OneSidedEpanechnikov => (0.0, 1.0),
        };
        let n = BASE_SAMPLES + 1;
        let dx = (hi - lo) / BASE_SAMPLES as f64;
        let mut values: Vec<f64> = (0..n)
            .map(|i| {
                let x = lo + i as f64 * dx;
                match shape {
                    KernelShape::Epanechnikov => 0.75 * (1.0 - x * x).max(0.0),
                    KernelShape::Triangle => (1.0 - x.abs()).max(0.0),
                    KernelShape::GaussianTruncated => {
                        (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
                    }
                    KernelShape::OneSidedEpanechnikov => 1.5 * (1.0 - x * x).max(0.0),
                }
            })
            .collect();
        if shape == KernelShape::OneSidedEpanechnikov {
            // Half-weight the jump at the support edge so the Riemann mass is
            // trapezoid-accurate despite the discontinuity.
            values[0] *= 0.5;
        }
        let symmetric = shape != KernelShape::OneSidedEpanechnikov;
        Self::from_samples(values, lo, dx, symmetric)
    }

    /// Build directly from samples; renormalizes to discrete mass one.
    pub fn from_samples(mut values: Vec<f64>, lo: f64, dx: f64, symmetric: bool) -> Self {
        assert!(values.len() >= 2, "kernel needs at least two samples");
        assert!(values.iter().all(|v| *v >= 0.0), "kernel must be nonnegative");
        let mass: f64 = values.iter().sum::<f64>() * dx;
        assert!(mass > 0.0, "kernel must have positive mass");
        for v in &mut values {
            *v /= mass;
        }
        MollifierKernel { values, lo, dx, symmetric, normalization: 1.0 }
    }

    /// Lower edge of the support interval.
    pub fn lo(&self) -> f64 {
        self.lo
    }

    /// Upper edge of the support interval.
    pub fn hi(&self) -> f64 {
        self.lo + (self.values.len() - 1) as f64 * self.dx
    }

    /// max(|lo|, |hi|): the profile vanishes outside [−r, r].
    pub fn support_radius(&self) -> f64 {
        self.lo().abs().max(self.hi().abs())
    }

    pub fn grid_step(&self) -> f64 {
        self.dx
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    pub fn samples(&self) -> &[f64] {
        &self.values
    }

    /// Discrete mass ∫ profile (Riemann sum; 1 by construction).
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.dx
    }

    /// Evaluate by linear interpolation; zero outside the support.
    pub fn eval(&self, x: f64) -> f64 {
        let t = (x - self.lo) / self.dx;
        if t < 0.0 || t > (self.values.len() - 1) as f64 {
            return 0.0;
        }
        let i = t.floor() as usize;
        if i + 1 >= self.values.len() {
            return self.values[self.values.len() - 1];
        }
        let frac = t - i as f64;
        self.values[i] * (1.0 - frac) + self.values[i + 1] * frac
    }

    /// η^ε(x) = η(x/ε)/ε, exact on the sampled grid.
    pub fn scale(&self, epsilon: f64) -> Result<MollifierKernel> {
        if !(epsilon > 0.0) {
            return Err(Error::config("kernel.epsilon", "epsilon must be positive"));
        }
        Ok(MollifierKernel {
            values: self.values.iter().map(|v| v / epsilon).collect(),
            lo: self.lo * epsilon,
            dx: self.dx * epsilon,
            symmetric: self.symmetric,
            normalization: self.normalization,
        })
    }

    /// n-fold self-convolution η ∗ ⋯ ∗ η (n factors).
    pub fn self_convolve(&self, n: usize) -> MollifierKernel {
        assert!(n >= 2, "self_convolve needs n >= 2");
        let mut out = self.convolve_with(self);
        for _ in 2..n {
            out = out.convolve_with(self);
        }
        out
    }

    /// Discrete linear convolution of two sampled kernels on a common step.
    pub fn convolve_with(&self, other: &MollifierKernel) -> MollifierKernel {
        assert!(
            (self.dx - other.dx).abs() < 1e-12 * self.dx,
            "kernels must share a grid step to convolve"
        );
        let la = self.values.len();
        let lb = other.values.len();
        let lc = la + lb - 1;
        let mut vals = vec![0.0; lc];
        // FFT-free direct sum: sizes are a few thousand, cost is negligible
        // compared to the Monte Carlo work elsewhere.
        for (i, &a) in self.values.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.values.iter().enumerate() {
                vals[i + j] += a * b;
            }
        }
        for v in &mut vals {
            *v *= self.dx;
        }
        MollifierKernel {
            values: vals,
            lo: self.lo + other.lo,
            dx: self.dx,
            symmetric: self.symmetric && other.symmetric,
            normalization: self.normalization,
        }
    }

    /// ∫ (η^ε)² dy, the variance constant of the smeared noise.
    pub fn xi_epsilon(&self, epsilon: f64) -> Result<f64> {
        let scaled = self.scale(epsilon)?;
        Ok(scaled.values.iter().map(|v| v * v).sum::<f64>() * scaled.dx)
    }

    /// Tap weights of this kernel resampled onto a grid with step `dx_target`,
    /// normalized so that Σ taps · dx_target = 1 (constants are fixed points).
    ///
    /// Returns (offset of the first tap in grid units, weights).
    pub fn taps(&self, dx_target: f64) -> Result<(isize, Vec<f64>)> {
        let j_lo = (self.lo / dx_target).floor() as isize;
        let j_hi = (self.hi() / dx_target).ceil() as isize;
        let count = (j_hi - j_lo + 1) as usize;
        if count < 4 {
            return Err(Error::UnresolvedKernel {
                support: self.hi() - self.lo,
                dx: dx_target,
                points: count,
            });
        }
        let mut w: Vec<f64> = (j_lo..=j_hi)
            .map(|j| self.eval(j as f64 * dx_target))
            .collect();
        let mass: f64 = w.iter().sum::<f64>() * dx_target;
        assert!(mass > 0.0, "kernel taps have zero mass on the target grid");
        for v in &mut w {
            *v /= mass;
        }
        Ok((j_lo, w))
    }
}

/// Periodic convolution (f ∗ k)(x_i) = Σ_j f(x_j) k(x_i − x_j) Δx on the torus.
///
/// Dispatches between direct summation (small grids) and the FFT path.
pub fn convolve_periodic(f: &TorusField, k: &MollifierKernel) -> Result<TorusField> {
    if 2.0 * k.support_radius() >= f.grid.period {
        return Err(Error::KernelTooWide {
            support_radius: k.support_radius(),
            period: f.grid.period,
        });
    }
    if f.grid.n_x >= FFT_THRESHOLD {
        convolve_periodic_fft(f, k)
    } else {
        convolve_periodic_direct(f, k)
    }
}

/// Direct O(N·taps) periodic convolution; also the oracle for the FFT path.
pub fn convolve_periodic_direct(f: &TorusField, k: &MollifierKernel) -> Result<TorusField> {
    let (j_lo, w) = k.taps(f.grid.dx())?;
    let n = f.grid.n_x;
    let dx = f.grid.dx();
    let mut out = vec![0.0; n];
    for i in 0..n {
        let mut acc = 0.0;
        for (t, &wt) in w.iter().enumerate() {
            // k(x_i − x_j) with x_i − x_j = (j_lo + t)·dx  ⇒  j = i − (j_lo + t).
            let j = f.grid.wrap(i as isize - (j_lo + t as isize));
            acc += f.values[j] * wt;
        }
        out[i] = acc * dx;
    }
    let mut g = TorusField::new(f.grid, out);
    g.time_stamp = f.time_stamp;
    Ok(g)
}

/// FFT path of the periodic convolution.
pub fn convolve_periodic_fft(f: &TorusField, k: &MollifierKernel) -> Result<TorusField> {
    let (j_lo, w) = k.taps(f.grid.dx())?;
    let n = f.grid.n_x;
    let dx = f.grid.dx();
    // Wrap the taps into a length-n circular kernel.
    let mut circ = vec![0.0; n];
    for (t, &wt) in w.iter().enumerate() {
        let j = f.grid.wrap(j_lo + t as isize);
        circ[j] += wt * dx;
    }
    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(n);
    let ifft = planner.plan_fft_inverse(n);
    let mut fa: Vec<Complex<f64>> = f.values.iter().map(|&v| Complex::new(v, 0.0)).collect();
    let mut fb: Vec<Complex<f64>> = circ.iter().map(|&v| Complex::new(v, 0.0)).collect();
    fft.process(&mut fa);
    fft.process(&mut fb);
    for (a, b) in fa.iter_mut().zip(&fb) {
        *a *= *b;
    }
    ifft.process(&mut fa);
    let scale = 1.0 / n as f64;
    let out: Vec<f64> = fa.iter().map(|c| c.re * scale).collect();
    let mut g = TorusField::new(f.grid, out);
    g.time_stamp = f.time_stamp;
    Ok(g)
}

/// Precomputed periodic tap stencil for repeated convolutions inside steppers.
#[derive(Debug, Clone)]
pub struct PeriodicStencil {
    /// Tap weights already multiplied by Δx.
    pub weights: Vec<f64>,
    /// Grid offset of the first tap.
    pub j_lo: isize,
}

impl PeriodicStencil {
    pub fn new(k: &MollifierKernel, dx: f64) -> Result<Self> {
        let (j_lo, mut w) = k.taps(dx)?;
        for v in &mut w {
            *v *= dx;
        }
        Ok(PeriodicStencil { weights: w, j_lo })
    }

    /// Apply to a raw slice (periodic), writing into `out`.
    pub fn apply(&self, f: &[f64], out: &mut [f64]) {
        let n = f.len() as isize;
        for i in 0..f.len() {
            let mut acc = 0.0;
            let base = i as isize - self.j_lo;
            for (t, &wt) in self.weights.iter().enumerate() {
                let mut j = base - t as isize;
                while j < 0 {
                    j += n;
                }
                while j >= n {
                    j -= n;
                }
                acc += f[j as usize] * wt;
            }
            out[i] = acc;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::PeriodicGrid;

    fn epan() -> MollifierKernel {
        MollifierKernel::named(KernelShape::Epanechnikov)
    }

    #[test]
    fn all_shapes_integrate_to_one() {
        for shape in [
            KernelShape::Epanechnikov,
            KernelShape::Triangle,
            KernelShape::GaussianTruncated,
            KernelShape::OneSidedEpanechnikov,
        ] {
            let k = MollifierKernel::named(shape);
            assert!((k.integral() - 1.0).abs() < 1e-10, "{shape:?}");
            assert!(k.samples().iter().all(|v| *v >= 0.0));
        }
    }

    #[test]
    fn symmetric_profiles_mirror_exactly() {
        for shape in [
            KernelShape::Epanechnikov,
            KernelShape::Triangle,
            KernelShape::GaussianTruncated,
        ] {
            let k = MollifierKernel::named(shape);
            let v = k.samples();
            let n = v.len();
            for i in 0..n {
                assert_eq!(v[i], v[n - 1 - i], "{shape:?} at {i}");
            }
        }
    }

    #[test]
    fn scaling_shrinks_support_and_raises_peak() {
        let k = epan().scale(0.1).unwrap();
        assert!((k.lo() + 0.1).abs() < 1e-12);
        assert!((k.hi() - 0.1).abs() < 1e-12);
        let peak = k.samples().iter().cloned().fold(f64::MIN, f64::max);
        assert!((peak - 7.5).abs() < 1e-6, "peak {peak}");
        assert!((k.integral() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn scale_by_one_is_identity() {
        let k = epan();
        let s = k.scale(1.0).unwrap();
        assert_eq!(k.samples(), s.samples());
        assert_eq!(k.lo(), s.lo());
    }

    #[test]
    fn gaussian_truncation_mass_error_small() {
        // Raw (un-renormalized) mass of the ±4-truncated Gaussian misses
        // less than 1e-4 relative; after renormalization it is exactly 1.
        let k = MollifierKernel::named(KernelShape::GaussianTruncated);
        let s = k.scale(0.5).unwrap();
        assert!((s.integral() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn self_convolution_doubles_support_and_keeps_mass() {
        let k = epan().scale(0.1).unwrap();
        let k2 = k.self_convolve(2);
        assert!((k2.lo() + 0.2).abs() < 1e-9);
        assert!((k2.hi() - 0.2).abs() < 1e-9);
        assert!((k2.integral() - 1.0).abs() < 1e-9);
        assert!(k2.is_symmetric());
        // Mirror symmetry of the sampled self-convolution.
        let v = k2.samples();
        let n = v.len();
        for i in 0..n {
            assert!((v[i] - v[n - 1 - i]).abs() < 1e-12 * (1.0 + v[i].abs()));
        }
    }

    #[test]
    fn higher_self_convolutions_scale_support() {
        let k = epan();
        for n in 2..=4 {
            let kn = k.self_convolve(n);
            assert!((kn.hi() - n as f64).abs() < 2.0 * kn.grid_step(), "n={n}");
            assert!((kn.integral() - 1.0).abs() < 1e-9, "n={n}");
        }
    }

    #[test]
    fn gaussian_self_convolution_matches_closed_form() {
        // N(0,1) ∗ N(0,1) = N(0,2); at the origin 1/(2√π).
        let k = MollifierKernel::named(KernelShape::GaussianTruncated);
        let k2 = k.self_convolve(2);
        let expect = 1.0 / (2.0 * std::f64::consts::PI.sqrt());
        assert!((k2.eval(0.0) - expect).abs() < 1e-5, "{}", k2.eval(0.0));
        // And a couple of off-center points of the N(0,2) density.
        for x in [0.5, 1.0, 2.0] {
            let expect = (-x * x / 4.0).exp() / (4.0 * std::f64::consts::PI).sqrt();
            assert!((k2.eval(x) - expect).abs() < 1e-5, "x={x}");
        }
    }

    #[test]
    fn xi_epsilon_epanechnikov_closed_form() {
        // ∫η² = 3/5 for the Epanechnikov profile, so ξ^ε = 3/(5ε).
        let k = epan();
        let xi = k.xi_epsilon(0.1).unwrap();
        assert!((xi - 6.0).abs() < 1e-8, "{xi}");
    }

    #[test]
    fn xi_epsilon_equals_self_convolution_at_zero() {
        for shape in [
            KernelShape::Epanechnikov,
            KernelShape::Triangle,
            KernelShape::GaussianTruncated,
        ] {
            let k = MollifierKernel::named(shape);
            let xi = k.xi_epsilon(0.1).unwrap();
            let k2 = k.scale(0.1).unwrap().self_convolve(2);
            assert!((xi - k2.eval(0.0)).abs() < 1e-8 * xi, "{shape:?}");
        }
    }

    #[test]
    fn xi_epsilon_scales_inversely() {
        let k = epan();
        let a = k.xi_epsilon(0.1).unwrap();
        let b = k.xi_epsilon(0.2).unwrap();
        assert!((b - a / 2.0).abs() < 1e-9 * a);
    }

    #[test]
    fn periodic_convolution_fixes_constants() {
        let g = PeriodicGrid::new(4.0, 96).unwrap();
        let f = TorusField::constant(g, 2.5);
        let k = epan().scale(0.1).unwrap();
        let c = convolve_periodic(&f, &k).unwrap();
        for v in &c.values {
            assert!((v - 2.5).abs() < 1e-12);
        }
    }

    #[test]
    fn periodic_convolution_of_point_mass_translates_kernel() {
        let g = PeriodicGrid::new(4.0, 64).unwrap();
        let mut vals = vec![0.0; 64];
        vals[10] = 1.0 / g.dx(); // unit-mass spike
        let f = TorusField::new(g, vals);
        let k = epan().scale(0.3).unwrap();
        let c = convolve_periodic(&f, &k).unwrap();
        let (j_lo, w) = k.taps(g.dx()).unwrap();
        let mass: f64 = w.iter().sum::<f64>() * g.dx();
        assert!((mass - 1.0).abs() < 1e-12);
        for (t, &wt) in w.iter().enumerate() {
            let i = g.wrap(10 + j_lo + t as isize);
            assert!((c.values[i] - wt).abs() < 1e-9, "tap {t}");
        }
    }

    #[test]
    fn fft_and_direct_paths_agree() {
        for n in [64usize, 128, 256, 512] {
            let g = PeriodicGrid::new(4.0, n).unwrap();
            let f = TorusField::new(
                g,
                (0..n)
                    .map(|i| (2.0 * std::f64::consts::PI * g.x(i) / 4.0).cos() + 0.3 * (i as f64 * 0.7).sin())
                    .collect(),
            );
            let k = epan().scale(0.1).unwrap();
            let a = convolve_periodic_direct(&f, &k).unwrap();
            let b = convolve_periodic_fft(&f, &k).unwrap();
            let scale: f64 = a.values.iter().map(|v| v.abs()).fold(0.0, f64::max);
            for i in 0..n {
                assert!((a.values[i] - b.values[i]).abs() < 1e-9 * scale.max(1.0), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn cosine_damped_by_fourier_multiplier() {
        let g = PeriodicGrid::new(4.0, 256).unwrap();
        let f = TorusField::new(
            g,
            (0..256).map(|i| (2.0 * std::f64::consts::PI * g.x(i) / 4.0).cos()).collect(),
        );
        let k = epan().scale(0.1).unwrap();
        let c = convolve_periodic(&f, &k).unwrap();
        let oracle = convolve_periodic_direct(&f, &k).unwrap();
        for i in 0..256 {
            assert!((c.values[i] - oracle.values[i]).abs() < 1e-9);
        }
        // Eigenfunction property: output is the same cosine times a constant < 1.
        let ratio = c.values[0] / f.values[0];
        for i in 0..256 {
            if f.values[i].abs() > 0.3 {
                assert!((c.values[i] - ratio * f.values[i]).abs() < 1e-9, "i={i}");
            }
        }
        assert!(ratio < 1.0 && ratio > 0.9);
    }

    #[test]
    fn too_wide_kernel_rejected() {
        let g = PeriodicGrid::new(1.0, 64).unwrap();
        let f = TorusField::constant(g, 1.0);
        let k = epan(); // support radius 1 on a period-1 torus
        assert!(matches!(
            convolve_periodic(&f, &k),
            Err(Error::KernelTooWide { .. })
        ));
    }

    #[test]
    fn unresolved_kernel_rejected() {
        let g = PeriodicGrid::new(4.0, 32).unwrap(); // dx = 0.125
        let k = epan().scale(0.05).unwrap(); // support 0.1 < 4 dx
        assert!(matches!(k.taps(g.dx()), Err(Error::UnresolvedKernel { .. })));
    }

    #[test]
    fn one_sided_kernel_mass_and_support() {
        let k = MollifierKernel::named(KernelShape::OneSidedEpanechnikov);
        assert!((k.integral() - 1.0).abs() < 1e-10);
        assert_eq!(k.lo(), 0.0);
        assert!((k.hi() - 1.0).abs() < 1e-12);
        assert!(!k.is_symmetric());
        let k2 = k.self_convolve(2);
        assert!(k2.lo() >= -1e-12 && (k2.hi() - 2.0).abs() < 1e-9);
        assert!((k2.integral() - 1.0).abs() < 1e-9);
    }
}
