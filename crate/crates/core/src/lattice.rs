//! Distances to shifted period lattices, used to keep samples away from the
//! zeros and poles of theta quotients.

use num_complex::Complex64;

/// A lattice `offset + m * real_period + n * complex_period` with a real
/// first period and a second period in the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice {
    pub offset: Complex64,
    pub real_period: f64,
    pub complex_period: Complex64,
}

impl Lattice {
    pub fn new(offset: Complex64, real_period: f64, complex_period: Complex64) -> Self {
        debug_assert!(real_period > 0.0 && complex_period.im > 0.0);
        Self {
            offset,
            real_period,
            complex_period,
        }
    }

    /// Euclidean distance from `w` to the nearest lattice point.
    pub fn distance(&self, w: Complex64) -> f64 {
        let d = w - self.offset;
        let n0 = (d.im / self.complex_period.im).round();
        let mut best = f64::INFINITY;
        for dn in -1..=1 {
            let n = n0 + dn as f64;
            let e = d - self.complex_period * n;
            let m0 = (e.re / self.real_period).round();
            for dm in -1..=1 {
                let m = m0 + dm as f64;
                best = best.min((e - self.real_period * m).norm());
            }
        }
        best
    }
}
