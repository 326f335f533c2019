use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::Grid;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Multi-dimensional complex FFT built from 1D line transforms.
///
/// The plan is immutable and `Sync`; scratch space is allocated per call so
/// one plan may be shared across threads.
pub struct FftPlan {
    grid: Grid,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl FftPlan {
    pub fn new(grid: Grid) -> Self {
        let mut planner = FftPlanner::new();
        FftPlan {
            grid,
            forward: planner.plan_fft_forward(grid.n()),
            inverse: planner.plan_fft_inverse(grid.n()),
        }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    /// Unnormalized forward transform, in place.
    pub fn forward(&self, data: &mut [Complex64]) {
        self.process(data, &self.forward);
    }

    /// Inverse transform including the `N^-dim` normalization, in place.
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.process(data, &self.inverse);
        let scale = 1.0 / self.grid.len() as f64;
        for z in data.iter_mut() {
            *z *= scale;
        }
    }

    /// Forward transform of a real array.
    pub fn forward_real(&self, values: &[f64]) -> Vec<Complex64> {
        let mut data: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.forward(&mut data);
        data
    }

    /// Inverse transform keeping the real part (the input is assumed Hermitian).
    pub fn inverse_real(&self, coeffs: &[Complex64]) -> Vec<f64> {
        let mut data = coeffs.to_vec();
        self.inverse(&mut data);
        data.into_iter().map(|z| z.re).collect()
    }

    fn process(&self, data: &mut [Complex64], fft: &Arc<dyn Fft<f64>>) {
        let n = self.grid.n();
        let dim = self.grid.dim();
        assert_eq!(data.len(), self.grid.len(), "array length does not match grid");
        let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];

        // Last axis is contiguous: every chunk of n is one line.
        fft.process_with_scratch(data, &mut scratch);

        let mut lines = vec![Complex64::default(); data.len()];
        for axis in 0..dim - 1 {
            let stride = n.pow((dim - 1 - axis) as u32);
            let block = stride * n;
            // gather lines along `axis` into contiguous storage
            let mut line = 0;
            for outer in (0..data.len()).step_by(block) {
                for inner in 0..stride {
                    let base = outer + inner;
                    let dst = &mut lines[line * n..(line + 1) * n];
                    for (m, d) in dst.iter_mut().enumerate() {
                        *d = data[base + m * stride];
                    }
                    line += 1;
                }
            }
            fft.process_with_scratch(&mut lines, &mut scratch);
            let mut line = 0;
            for outer in (0..data.len()).step_by(block) {
                for inner in 0..stride {
                    let base = outer + inner;
                    let src = &lines[line * n..(line + 1) * n];
                    for (m, s) in src.iter().enumerate() {
                        data[base + m * stride] = *s;
                    }
                    line += 1;
                }
            }
        }
    }
}
