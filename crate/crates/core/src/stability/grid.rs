use std::io::{self, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::modulus;

/// `|R(z)|` sampled on a uniform rectangle of the complex plane.
///
/// `values` is stored imaginary-row-major: entry `(i, j)` sits at
/// `i·n_re + j` with `i` indexing the imaginary axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityGrid {
    pub theta: f64,
    pub order: usize,
    pub re_range: (f64, f64),
    pub im_range: (f64, f64),
    /// Sample counts `(n_re, n_im)`.
    pub resolution: (usize, usize),
    pub values: Vec<f64>,
}

fn axis(range: (f64, f64), n: usize, i: usize) -> f64 {
    range.0 + (range.1 - range.0) * i as f64 / (n - 1) as f64
}

/// Samples `|R|` for the `(θ, K)` scheme; poles are stored as `+∞`.
///
/// Resolutions below 2 are raised to 2.
pub fn sample_region(
    theta: f64,
    order: usize,
    re_range: (f64, f64),
    im_range: (f64, f64),
    resolution: (usize, usize),
) -> StabilityGrid {
    let (n_re, n_im) = (resolution.0.max(2), resolution.1.max(2));
    let mut values = Vec::with_capacity(n_re * n_im);
    for i in 0..n_im {
        let im = axis(im_range, n_im, i);
        for j in 0..n_re {
            let z = Complex64::new(axis(re_range, n_re, j), im);
            values.push(modulus(z, theta, order));
        }
    }
    StabilityGrid {
        theta,
        order,
        re_range,
        im_range,
        resolution: (n_re, n_im),
        values,
    }
}

impl StabilityGrid {
    pub fn point(&self, i_im: usize, j_re: usize) -> Complex64 {
        Complex64::new(
            axis(self.re_range, self.resolution.0, j_re),
            axis(self.im_range, self.resolution.1, i_im),
        )
    }

    pub fn value(&self, i_im: usize, j_re: usize) -> f64 {
        self.values[i_im * self.resolution.0 + j_re]
    }

    /// Sample points with their `|R|`, imaginary row by row.
    pub fn samples(&self) -> impl Iterator<Item = (Complex64, f64)> + '_ {
        let n_re = self.resolution.0;
        self.values
            .iter()
            .enumerate()
            .map(move |(idx, &v)| (self.point(idx / n_re, idx % n_re), v))
    }

    /// Fraction of sampled cells with `Re z < 0` where `|R| > 1 + tol`.
    pub fn unstable_fraction_lhp(&self, tol: f64) -> f64 {
        let (total, bad) = self
            .samples()
            .filter(|(z, _)| z.re < 0.0)
            .fold((0usize, 0usize), |(t, b), (_, v)| (t + 1, b + usize::from(v > 1.0 + tol)));
        if total == 0 {
            0.0
        } else {
            bad as f64 / total as f64
        }
    }

    /// Writes `re,im,absR` rows after a header line.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "re,im,absR")?;
        for (z, v) in self.samples() {
            writeln!(out, "{},{},{}", z.re, z.im, v)?;
        }
        Ok(())
    }
}
