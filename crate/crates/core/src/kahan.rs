//! Compensated (Kahan) summation.

/// Kahan accumulator for series whose terms span many orders of magnitude.
#[derive(Clone, Copy, Debug, Default)]
pub struct Kahan {
    sum: f64,
    err: f64,
}

impl Kahan {
    pub fn new() -> Self {
        Kahan::default()
    }

    pub fn add(&mut self, x: f64) {
        let y = x - self.err;
        let t = self.sum + y;
        self.err = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum
    }
}

impl FromIterator<f64> for Kahan {
    fn from_iter<T: IntoIterator<Item = f64>>(iter: T) -> Self {
        let mut acc = Kahan::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}
