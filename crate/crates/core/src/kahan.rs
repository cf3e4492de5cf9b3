//! Compensated (error-free-transformation) accumulation.
//!
//! Every real64 accumulation in this crate goes through [`KahanSum`] so that
//! reported error bounds stay honest near the 1e-14 round-off floor.

/// Neumaier's variant of Kahan summation: also compensates when the incoming
/// term is larger than the running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}
