use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::registry::Constraint;
use crate::error::{Error, Result};

/// Axis-aligned rectangle `[re.0, re.1] x [im.0, im.1]` in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexBox {
    pub re: (f64, f64),
    pub im: (f64, f64),
}

impl ComplexBox {
    pub fn new(re: (f64, f64), im: (f64, f64)) -> Self {
        Self { re, im }
    }

    pub(crate) fn sample(&self, rng: &mut ChaCha8Rng) -> Complex64 {
        let a: f64 = rng.random();
        let b: f64 = rng.random();
        Complex64::new(
            self.re.0 + (self.re.1 - self.re.0) * a,
            self.im.0 + (self.im.1 - self.im.0) * b,
        )
    }

    fn is_valid(&self) -> bool {
        [self.re.0, self.re.1, self.im.0, self.im.1]
            .iter()
            .all(|v| v.is_finite())
            && self.re.0 <= self.re.1
            && self.im.0 <= self.im.1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SamplePlan {
    pub seed: u64,
    /// Accepted samples per `tau`.
    pub count: usize,
    pub x_box: ComplexBox,
    pub y_box: ComplexBox,
    pub tau_set: Vec<Complex64>,
    /// Overrides each identity's own constraint when set.
    pub constraint: Option<Constraint>,
    /// Fixed coordinates replacing the random draw.
    pub pin_x: Option<Complex64>,
    pub pin_y: Option<Complex64>,
}

impl Default for SamplePlan {
    fn default() -> Self {
        let b = ComplexBox::new((0.05, 1.5), (-0.4, 0.4));
        Self {
            seed: 42,
            count: 500,
            x_box: b,
            y_box: b,
            tau_set: vec![
                Complex64::new(0.0, 1.1),
                Complex64::new(0.3, 1.1),
                Complex64::new(0.5, 0.9),
            ],
            constraint: None,
            pin_x: None,
            pin_y: None,
        }
    }
}

impl SamplePlan {
    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::Domain("sample count must be at least 1".into()));
        }
        if self.tau_set.is_empty() {
            return Err(Error::Domain("tau set is empty".into()));
        }
        if let Some(t) = self
            .tau_set
            .iter()
            .find(|t| t.im.is_nan() || t.im <= 0.0 || !t.re.is_finite())
        {
            return Err(Error::Domain(format!(
                "tau = {t} is not in the upper half-plane"
            )));
        }
        if !self.x_box.is_valid() || !self.y_box.is_valid() {
            return Err(Error::Domain(
                "sample boxes must be finite with lo <= hi".into(),
            ));
        }
        Ok(())
    }

    pub(crate) fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    pub(crate) fn draw(&self, rng: &mut ChaCha8Rng) -> (Complex64, Complex64) {
        // Always consume both draws so pinning one coordinate leaves the other's
        // sequence unchanged.
        let x = self.x_box.sample(rng);
        let y = self.y_box.sample(rng);
        (self.pin_x.unwrap_or(x), self.pin_y.unwrap_or(y))
    }

    pub(crate) fn is_pinned(&self) -> bool {
        self.pin_x.is_some() && self.pin_y.is_some()
    }
}
