//! Small numeric helpers shared across the crate.

/// Neumaier-compensated accumulator. Keeps long sums of mixed-magnitude
/// terms accurate enough for the 1e-9 relative tolerances used by the
/// test oracles.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sum {
    total: f64,
    compensation: f64,
}

impl Sum {
    pub fn new() -> Sum {
        Sum::default()
    }

    pub fn add(&mut self, value: f64) {
        let t = self.total + value;
        if self.total.abs() >= value.abs() {
            self.compensation += (self.total - t) + value;
        } else {
            self.compensation += (value - t) + self.total;
        }
        self.total = t;
    }

    pub fn value(&self) -> f64 {
        self.total + self.compensation
    }
}

/// Compensated sum of an iterator of terms.
pub fn sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut acc = Sum::new();
    for v in values {
        acc.add(v);
    }
    acc.value()
}

/// Round half away from zero to `digits` decimal places.
pub fn round_to(x: f64, digits: u32) -> f64 {
    let scale = 10f64.powi(digits as i32);
    (x * scale).round() / scale
}

/// Relative closeness check with an absolute floor for near-zero pairs.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    let diff = (a - b).abs();
    diff <= tol || diff <= tol * a.abs().max(b.abs())
}
