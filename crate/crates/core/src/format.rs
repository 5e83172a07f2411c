//! Text output shared by the backends and the command line.

use num_complex::Complex;

use crate::ir::BasisState;
use crate::scalar::Scalar;

/// Amplitudes below this magnitude are omitted from sparse dumps.
pub const DUMP_ZERO_THRESHOLD: f64 = 1e-12;

/// Formats like C's `%.17g`, with negative zero printed as `0`.
pub fn format_g17(x: f64) -> String {
    if x == 0.0 {
        return "0".to_owned();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (16 - exp) as usize;
        trim_fraction(&format!("{:.*}", decimals, x)).to_owned()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// One `<bits> <re> <im>` line.
pub fn amplitude_line<T: Scalar>(basis: &BasisState, amp: Complex<T>) -> String {
    format!(
        "{} {} {}",
        basis,
        format_g17(amp.re.to_f64().unwrap_or(f64::NAN)),
        format_g17(amp.im.to_f64().unwrap_or(f64::NAN))
    )
}

/// Amplitude dump in increasing binary order. Without `full`, rows whose
/// magnitude is below [`DUMP_ZERO_THRESHOLD`] are skipped.
pub fn amplitude_dump<T: Scalar>(amps: &[Complex<T>], num_qubits: usize, full: bool) -> String {
    let mut out = String::new();
    for (i, &a) in amps.iter().enumerate() {
        if !full && a.norm().to_f64().unwrap_or(0.0) < DUMP_ZERO_THRESHOLD {
            continue;
        }
        out.push_str(&amplitude_line(&BasisState::from_index(i, num_qubits), a));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(format_g17(std::f64::consts::FRAC_1_SQRT_2), "0.70710678118654757");
        assert_eq!(format_g17(1.0), "1");
        assert_eq!(format_g17(-0.0), "0");
        assert_eq!(format_g17(0.5), "0.5");
        assert_eq!(format_g17(-0.25), "-0.25");
        assert_eq!(format_g17(1e-20), "9.9999999999999995e-21");
        assert_eq!(format_g17(123456.0), "123456");
        assert_eq!(format_g17(0.0001), "0.0001");
        assert_eq!(format_g17(1e17), "1e+17");
    }

    #[test]
    fn sparse_and_full_dumps() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let amps = [Complex::new(s, 0.0), Complex::new(0.0, 0.0), Complex::new(0.0, 0.0), Complex::new(s, 0.0)];
        let full = amplitude_dump(&amps, 2, true);
        assert_eq!(full.lines().count(), 4);
        assert_eq!(full.lines().next().unwrap(), "00 0.70710678118654757 0");
        assert_eq!(full.lines().nth(1).unwrap(), "01 0 0");
        assert_eq!(amplitude_dump(&amps, 2, false), "00 0.70710678118654757 0\n11 0.70710678118654757 0\n");
    }
}
