//! Compensated (Neumaier) accumulation for the long image-charge series.

use crate::math;

/// Running sum with a first-order error term; the correction also captures
/// the case where the addend is larger than the running sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    correction: f64,
}

impl CompensatedSum {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub(crate) fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if math::abs(self.sum) >= math::abs(value) {
            self.correction += (self.sum - t) + value;
        } else {
            self.correction += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub(crate) fn value(&self) -> f64 {
        self.sum + self.correction
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancellation_that_plain_sum_loses() {
        let mut acc = CompensatedSum::new();
        for _ in 0..10_000 {
            acc.add(0.1);
        }
        acc.add(-1000.0);
        assert!(math::abs(acc.value()) < 1e-12);
    }

    #[test]
    fn large_then_small_terms() {
        let mut acc = CompensatedSum::new();
        acc.add(1e16);
        acc.add(1.0);
        acc.add(-1e16);
        assert_eq!(acc.value(), 1.0);
    }
}
