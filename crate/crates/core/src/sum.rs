//! Compensated accumulation for long series.
//!
//! A Neumaier-style compensated summator: the running compensation also
//! captures the case where the addend is larger than the running sum, which
//! plain Kahan summation loses. All series in this crate that sum more than
//! a handful of terms go through this type so that partial sums are
//! reproducible and accurate to a few ulps regardless of term count.

use num_traits::Float;

#[derive(Clone, Copy, Debug)]
pub struct CompensatedSum<F> {
    sum: F,
    compensation: F,
}

impl<F: Float> Default for CompensatedSum<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Float> CompensatedSum<F> {
    pub fn new() -> Self {
        CompensatedSum {
            sum: F::zero(),
            compensation: F::zero(),
        }
    }

    pub fn add(&mut self, term: F) {
        let t = self.sum + term;
        let correction = if self.sum.abs() >= term.abs() {
            (self.sum - t) + term
        } else {
            (term - t) + self.sum
        };
        self.compensation = self.compensation + correction;
        self.sum = t;
    }

    pub fn total(&self) -> F {
        self.sum + self.compensation
    }
}

impl<F: Float> std::iter::FromIterator<F> for CompensatedSum<F> {
    fn from_iter<I: IntoIterator<Item = F>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}
