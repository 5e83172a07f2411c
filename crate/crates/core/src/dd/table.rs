use std::collections::HashMap;

use num_complex::Complex;

use crate::scalar::Scalar;

/// Interns real numbers so that values within the tolerance grid share one
/// representative. Edge weights are built from these representatives, which
/// makes them usable as exact hash keys.
#[derive(Debug)]
pub(crate) struct ComplexTable<T> {
    tolerance: T,
    buckets: HashMap<i64, Vec<T>>,
}

impl<T: Scalar> ComplexTable<T> {
    pub fn new() -> Self {
        let mut t = Self { tolerance: T::dd_tolerance(), buckets: HashMap::new() };
        for v in [T::zero(), T::one(), -T::one(), T::FRAC_1_SQRT_2(), -T::FRAC_1_SQRT_2(), T::lit(0.5), T::lit(-0.5)] {
            t.real(v);
        }
        t
    }

    pub fn tolerance(&self) -> T {
        self.tolerance
    }

    fn bucket(&self, x: T) -> i64 {
        (x / self.tolerance).floor().to_i64().unwrap_or(i64::MAX)
    }

    pub fn real(&mut self, x: T) -> T {
        let b = self.bucket(x);
        for probe in [b, b - 1, b + 1] {
            if let Some(found) =
                self.buckets.get(&probe).and_then(|vs| vs.iter().find(|&&v| (v - x).abs() <= self.tolerance))
            {
                return *found;
            }
        }
        self.buckets.entry(b).or_default().push(x);
        x
    }

    pub fn lookup(&mut self, c: Complex<T>) -> Complex<T> {
        Complex::new(self.real(c.re), self.real(c.im))
    }

    pub fn is_zero(&self, c: Complex<T>) -> bool {
        c.re.abs() <= self.tolerance && c.im.abs() <= self.tolerance
    }
}

/// Hash key for an interned weight.
pub(crate) fn weight_key<T: Scalar>(w: Complex<T>) -> (u64, u64) {
    let bits = |x: T| {
        let x = x.to_f64().unwrap_or(0.0);
        // -0.0 and 0.0 must collide
        if x == 0.0 {
            0
        } else {
            x.to_bits()
        }
    };
    (bits(w.re), bits(w.im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nearby_values_share_a_representative() {
        let mut t = ComplexTable::<f64>::new();
        let a = t.real(0.3);
        let b = t.real(0.3 + 4e-11);
        let c = t.real(0.3 - 6e-11);
        assert_eq!(a.to_bits(), b.to_bits());
        assert_eq!(a.to_bits(), c.to_bits());
        assert_ne!(t.real(0.3 + 5e-9).to_bits(), a.to_bits());
        assert_eq!(t.real(std::f64::consts::FRAC_1_SQRT_2 + 1e-14), std::f64::consts::FRAC_1_SQRT_2);
        assert_eq!(t.real(-1e-13), 0.0);
    }
}
