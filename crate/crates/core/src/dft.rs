//! Discrete Fourier transforms of arbitrary length.
//!
//! Power-of-two lengths use an iterative radix-2 transform; every other
//! length goes through Bluestein's chirp-z reduction to a power-of-two
//! cyclic convolution. Both are exact up to rounding, with errors of order
//! `1e-15 * log2(n)` relative to the input norm.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

/// Sign of the exponent in `X[k] = sum_j x[j] e^{sign 2 pi i jk / n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Negative,
    Positive,
}

/// Precomputed transform of a fixed length.
#[derive(Debug, Clone)]
pub struct Dft {
    n: usize,
    plan: Plan,
}

#[derive(Debug, Clone)]
enum Plan {
    Radix2(Radix2),
    Bluestein {
        inner: Radix2,
        // e^{-pi i j^2 / n}
        chirp: Vec<Complex64>,
        // forward transform of the conjugate chirp, wrapped to inner length
        kernel: Vec<Complex64>,
    },
}

impl Dft {
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "transform length must be positive");
        if n.is_power_of_two() {
            return Self {
                n,
                plan: Plan::Radix2(Radix2::new(n)),
            };
        }
        let m = (2 * n - 1).next_power_of_two();
        let inner = Radix2::new(m);
        let two_n = 2 * n as u64;
        let chirp: Vec<Complex64> = (0..n as u64)
            .map(|j| {
                let k = (j * j) % two_n;
                let angle = -PI * k as f64 / n as f64;
                Complex64::new(angle.cos(), angle.sin())
            })
            .collect();
        let mut kernel = alloc::vec![Complex64::new(0.0, 0.0); m];
        kernel[0] = chirp[0].conj();
        for j in 1..n {
            kernel[j] = chirp[j].conj();
            kernel[m - j] = chirp[j].conj();
        }
        inner.run(&mut kernel, Direction::Negative);
        Self {
            n,
            plan: Plan::Bluestein {
                inner,
                chirp,
                kernel,
            },
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Unnormalized transform in place.
    pub fn process(&self, data: &mut [Complex64], dir: Direction) {
        assert_eq!(data.len(), self.n, "buffer length does not match plan");
        match &self.plan {
            Plan::Radix2(r) => r.run(data, dir),
            Plan::Bluestein {
                inner,
                chirp,
                kernel,
            } => {
                let m = kernel.len();
                // Positive direction is the conjugate of the negative one
                // applied to the conjugated input.
                let conj_in = dir == Direction::Positive;
                let mut work = alloc::vec![Complex64::new(0.0, 0.0); m];
                for (j, (w, &x)) in work.iter_mut().zip(data.iter()).enumerate() {
                    let x = if conj_in { x.conj() } else { x };
                    *w = x * chirp[j];
                }
                inner.run(&mut work, Direction::Negative);
                for (w, k) in work.iter_mut().zip(kernel) {
                    *w *= k;
                }
                inner.run(&mut work, Direction::Positive);
                let scale = 1.0 / m as f64;
                for (k, out) in data.iter_mut().enumerate() {
                    let v = work[k] * chirp[k] * scale;
                    *out = if conj_in { v.conj() } else { v };
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
struct Radix2 {
    n: usize,
    // e^{-2 pi i k / n}, k < n/2
    twiddles: Vec<Complex64>,
}

impl Radix2 {
    fn new(n: usize) -> Self {
        debug_assert!(n.is_power_of_two());
        let twiddles = (0..n / 2)
            .map(|k| {
                let angle = -2.0 * PI * k as f64 / n as f64;
                Complex64::new(angle.cos(), angle.sin())
            })
            .collect();
        Self { n, twiddles }
    }

    fn run(&self, data: &mut [Complex64], dir: Direction) {
        let n = self.n;
        if n <= 1 {
            return;
        }
        let bits = n.trailing_zeros();
        for i in 0..n {
            let j = i.reverse_bits() >> (usize::BITS - bits);
            if i < j {
                data.swap(i, j);
            }
        }
        let mut len = 2;
        while len <= n {
            let half = len / 2;
            let stride = n / len;
            for start in (0..n).step_by(len) {
                for k in 0..half {
                    let mut w = self.twiddles[k * stride];
                    if dir == Direction::Positive {
                        w = w.conj();
                    }
                    let a = data[start + k];
                    let b = data[start + k + half] * w;
                    data[start + k] = a + b;
                    data[start + k + half] = a - b;
                }
            }
            len <<= 1;
        }
    }
}
