//! Human-readable number and matrix formatting: six significant digits, and anything
//! smaller in magnitude than the tolerance printed as a bare `0`.

use chanforms::{Complex64, ComplexMatrix};

const SIGNIFICANT: usize = 6;

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `%g`-style formatting with six significant digits.
pub fn real(x: f64, tol: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x.abs() < tol || x == 0.0 {
        return "0".into();
    }
    // Round once in scientific form so the exponent reflects carries like 9.999995 -> 10.
    let sci = format!("{:.*e}", SIGNIFICANT - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIGNIFICANT as i32).contains(&exp) {
        let decimals = (SIGNIFICANT as i32 - 1 - exp).max(0) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim_fraction(mantissa))
    }
}

pub fn complex(z: Complex64, tol: f64) -> String {
    let re = if z.re.abs() < tol { 0.0 } else { z.re };
    let im = if z.im.abs() < tol { 0.0 } else { z.im };
    match (re == 0.0, im == 0.0) {
        (_, true) => real(re, tol),
        (true, false) => format!("{}i", real(im, tol)),
        (false, false) => {
            let sign = if im < 0.0 { '-' } else { '+' };
            format!("{}{sign}{}i", real(re, tol), real(im.abs(), tol))
        }
    }
}

pub fn list(values: &[f64], tol: f64) -> String {
    values
        .iter()
        .map(|&v| real(v, tol))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Right-aligned columns, one bracketed row per line, each prefixed by `indent`.
pub fn matrix(m: &ComplexMatrix, tol: f64, indent: &str) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|&z| complex(z, tol)).collect())
        .collect();
    let widths: Vec<usize> = (0..m.cols())
        .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(1))
        .collect();
    let mut out = String::new();
    for row in &cells {
        out.push_str(indent);
        out.push('[');
        for (cell, w) in row.iter().zip(&widths) {
            out.push_str(&format!(" {cell:>w$}"));
        }
        out.push_str(" ]\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(real(1.0, 1e-9), "1");
        assert_eq!(real(-0.5, 1e-9), "-0.5");
        assert_eq!(real(2.0f64.sqrt(), 1e-9), "1.41421");
        assert_eq!(real(1234567.0, 1e-9), "1.23457e6");
        assert_eq!(real(0.000123456789, 1e-9), "0.000123457");
        assert_eq!(real(1.5e-7, 1e-9), "1.5e-7");
        assert_eq!(real(9.9999996, 1e-9), "10");
        assert_eq!(real(100.0, 1e-9), "100");
    }

    #[test]
    fn below_tolerance_is_zero() {
        assert_eq!(real(3e-12, 1e-9), "0");
        assert_eq!(real(-3e-12, 1e-9), "0");
        assert_eq!(complex(Complex64::new(1e-15, -0.5), 1e-9), "-0.5i");
        assert_eq!(complex(Complex64::new(0.25, 1e-15), 1e-9), "0.25");
    }

    #[test]
    fn complex_forms() {
        assert_eq!(complex(Complex64::new(0.5, -0.5), 1e-9), "0.5-0.5i");
        assert_eq!(complex(Complex64::new(-1.0, 2.0), 1e-9), "-1+2i");
        assert_eq!(complex(Complex64::new(0.0, 0.0), 1e-9), "0");
    }

    #[test]
    fn aligned_matrix() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, -0.5], &[0.25, 0.0]]).unwrap();
        assert_eq!(matrix(&m, 1e-9, "  "), "  [    1 -0.5 ]\n  [ 0.25    0 ]\n");
    }
}
