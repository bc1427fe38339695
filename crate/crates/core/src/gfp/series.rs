//! Closed-form Poincare series of the fixed-point coefficient rings.
//!
//! Both series share the numerator prod_{i=1}^n (1 + (p^{i-1} - 1) x); the
//! mod-p form divides by (1-x)^n, the integral form trades one of those
//! factors for (1-x^2). Division by (1 - x^k) is a stride-k running sum,
//! so expansion is exact integer arithmetic throughout.

use crate::error::{Error, Result};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

/// A power series expansion to a fixed bound plus its factored display
/// form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincareSeries {
    coeffs: Vec<u64>,
    factored: String,
}

impl PoincareSeries {
    /// Coefficients in degrees `0..=bound`.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// One coefficient; zero past the bound.
    pub fn coeff(&self, d: usize) -> u64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    /// Factored closed form, e.g. `(1+x)(1+3x)/(1-x)^3`.
    pub fn factored(&self) -> &str {
        &self.factored
    }
}

pub(super) fn check_parameters(p: u32, n: usize) -> Result<()> {
    let prime = p >= 2 && (2..p).all(|d| p % d != 0);
    if !prime {
        return Err(Error::invalid(format!("{} is not prime", p)));
    }
    if n == 0 {
        return Err(Error::invalid("rank must be at least 1"));
    }
    let mut lines = 1usize;
    let mut power = u64::from(p);
    for _ in 1..n {
        lines = lines
            .checked_mul(p as usize)
            .and_then(|l| l.checked_add(1))
            .unwrap_or(usize::MAX);
        power = power.saturating_mul(u64::from(p));
    }
    // (p^n - 1)/(p - 1) projective points; the exterior bitmask caps this.
    if lines > 64 || power > 4096 {
        return Err(Error::SizeCap {
            what: "projective points of the rank".into(),
            limit: 64,
            got: lines,
        });
    }
    Ok(())
}

/// Numerator coefficients and display factors.
fn numerator(p: u32, n: usize) -> (Vec<u64>, String) {
    let mut coeffs = vec![1u64];
    let mut display = String::new();
    let mut power = 1u64;
    for _ in 1..=n {
        let c = power - 1;
        power *= u64::from(p);
        if c == 0 {
            continue;
        }
        let mut next = vec![0u64; coeffs.len() + 1];
        for (d, &a) in coeffs.iter().enumerate() {
            next[d] += a;
            next[d + 1] += a * c;
        }
        coeffs = next;
        if c == 1 {
            display.push_str("(1+x)");
        } else {
            display.push_str(&format!("(1+{}x)", c));
        }
    }
    if display.is_empty() {
        display.push('1');
    }
    (coeffs, display)
}

/// In-place division by (1 - x^k): a forward running sum with stride k.
fn divide(coeffs: &mut [u64], k: usize) {
    for d in k..coeffs.len() {
        coeffs[d] += coeffs[d - k];
    }
}

fn denominator_display(ones: usize, square: bool) -> String {
    let one_part = match ones {
        0 => String::new(),
        1 => String::from("(1-x)"),
        e => format!("(1-x)^{}", e),
    };
    if !square {
        return format!("/{}", one_part);
    }
    if one_part.is_empty() {
        return String::from("/(1-x^2)");
    }
    format!("/((1-x^2){})", one_part)
}

/// Series of the mod-p coefficient ring of rank n, through `bound`.
pub fn poincare_mod_p(p: u32, n: usize, bound: usize) -> Result<PoincareSeries> {
    check_parameters(p, n)?;
    let (num, display) = numerator(p, n);
    let mut coeffs = vec![0u64; bound + 1];
    for (d, &a) in num.iter().enumerate().take(bound + 1) {
        coeffs[d] = a;
    }
    for _ in 0..n {
        divide(&mut coeffs, 1);
    }
    Ok(PoincareSeries {
        coeffs,
        factored: format!("{}{}", display, denominator_display(n, false)),
    })
}

/// Series of the integral coefficient ring: the mod-p series divided by
/// (1 + x).
pub fn poincare_integral(p: u32, n: usize, bound: usize) -> Result<PoincareSeries> {
    check_parameters(p, n)?;
    let (num, display) = numerator(p, n);
    let mut coeffs = vec![0u64; bound + 1];
    for (d, &a) in num.iter().enumerate().take(bound + 1) {
        coeffs[d] = a;
    }
    for _ in 0..n - 1 {
        divide(&mut coeffs, 1);
    }
    divide(&mut coeffs, 2);
    Ok(PoincareSeries {
        coeffs,
        factored: format!("{}{}", display, denominator_display(n - 1, true)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_p_expansions() {
        assert_eq!(poincare_mod_p(2, 1, 4).unwrap().coeffs(), &[1, 1, 1, 1, 1]);
        assert_eq!(poincare_mod_p(2, 2, 4).unwrap().coeffs(), &[1, 3, 5, 7, 9]);
        assert_eq!(
            poincare_mod_p(2, 3, 6).unwrap().coeffs(),
            &[1, 7, 21, 43, 73, 111, 157]
        );
        assert_eq!(poincare_mod_p(3, 1, 3).unwrap().coeffs(), &[1, 1, 1, 1]);
        assert_eq!(
            poincare_mod_p(3, 2, 4).unwrap().coeffs(),
            &[1, 4, 7, 10, 13]
        );
    }

    #[test]
    fn integral_expansions() {
        assert_eq!(
            poincare_integral(2, 1, 5).unwrap().coeffs(),
            &[1, 0, 1, 0, 1, 0]
        );
        assert_eq!(
            poincare_integral(2, 2, 4).unwrap().coeffs(),
            &[1, 2, 3, 4, 5]
        );
        assert_eq!(
            poincare_integral(3, 2, 4).unwrap().coeffs(),
            &[1, 3, 4, 6, 7]
        );
    }

    #[test]
    fn factored_forms() {
        assert_eq!(poincare_mod_p(2, 2, 1).unwrap().factored(), "(1+x)/(1-x)^2");
        assert_eq!(
            poincare_mod_p(2, 3, 1).unwrap().factored(),
            "(1+x)(1+3x)/(1-x)^3"
        );
        assert_eq!(poincare_integral(2, 1, 1).unwrap().factored(), "1/(1-x^2)");
        assert_eq!(
            poincare_integral(3, 2, 1).unwrap().factored(),
            "(1+2x)/((1-x^2)(1-x))"
        );
    }

    #[test]
    fn parameter_validation() {
        assert!(poincare_mod_p(4, 1, 3).is_err());
        assert!(poincare_mod_p(2, 0, 3).is_err());
        assert!(poincare_mod_p(3, 5, 3).is_err());
    }
}
