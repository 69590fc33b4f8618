use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// Chirp-z transform `Y_j = sum_k x_k exp(i * phi * j * k)`, `j < m`, via
/// Bluestein's convolution. One plan serves any number of inputs.
pub struct ChirpZ {
    n: usize,
    m: usize,
    len: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    kernel: Vec<Complex64>,
    pre: Vec<Complex64>,
    post: Vec<Complex64>,
}

fn chirp(phi: f64, k: usize) -> Complex64 {
    let k = k as f64;
    Complex64::from_polar(1.0, 0.5 * phi * k * k)
}

impl ChirpZ {
    pub fn new(n: usize, m: usize, phi: f64) -> Self {
        let len = (n + m - 1).next_power_of_two();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(len);
        let inverse = planner.plan_fft_inverse(len);
        let mut kernel = vec![Complex64::new(0.0, 0.0); len];
        for d in 0..m {
            kernel[d] = chirp(phi, d).conj();
        }
        for d in 1..n {
            kernel[len - d] = chirp(phi, d).conj();
        }
        forward.process(&mut kernel);
        let pre = (0..n).map(|k| chirp(phi, k)).collect();
        let post = (0..m).map(|j| chirp(phi, j) / len as f64).collect();
        Self {
            n,
            m,
            len,
            forward,
            inverse,
            kernel,
            pre,
            post,
        }
    }

    pub fn input_len(&self) -> usize {
        self.n
    }

    pub fn output_len(&self) -> usize {
        self.m
    }

    pub fn apply(&self, input: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(input.len(), self.n, "chirp-z input length");
        let mut buf = vec![Complex64::new(0.0, 0.0); self.len];
        for (b, (x, c)) in buf.iter_mut().zip(input.iter().zip(&self.pre)) {
            *b = x * c;
        }
        self.forward.process(&mut buf);
        for (b, k) in buf.iter_mut().zip(&self.kernel) {
            *b *= k;
        }
        self.inverse.process(&mut buf);
        buf.truncate(self.m);
        for (b, c) in buf.iter_mut().zip(&self.post) {
            *b *= c;
        }
        buf
    }
}
