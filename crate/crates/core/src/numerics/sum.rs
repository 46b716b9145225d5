use num_complex::Complex64;

/// Neumaier-compensated accumulator for complex sums.
///
/// Summation order is whatever order `add` is called in, so results are
/// reproducible as long as callers iterate deterministically.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    re: (f64, f64),
    im: (f64, f64),
}

fn neumaier(acc: &mut (f64, f64), x: f64) {
    let (sum, comp) = *acc;
    let t = sum + x;
    let c = if sum.abs() >= x.abs() {
        (sum - t) + x
    } else {
        (x - t) + sum
    };
    *acc = (t, comp + c);
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: Complex64) {
        neumaier(&mut self.re, x.re);
        neumaier(&mut self.im, x.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

impl std::iter::FromIterator<Complex64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_low_order_bits() {
        let mut acc = CompensatedSum::new();
        acc.add(Complex64::new(1.0, -1.0));
        acc.add(Complex64::new(1e-17, 1e-17));
        acc.add(Complex64::new(-1.0, 1.0));
        let v = acc.value();
        assert_eq!(v, Complex64::new(1e-17, 1e-17));
    }
}
