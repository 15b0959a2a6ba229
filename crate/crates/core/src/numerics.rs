//! Precision-parameterized scalars and the special-function kernels shared by
//! every other module.
//!
//! Real scalars are MPFR floats ([`rug::Float`]) and complex scalars are
//! [`rug::Complex`]. A [`Precision`] fixes the number of significant decimal
//! digits `P`; the binary working precision carries [`GUARD_BITS`] extra bits on
//! top of `P` digits so that results are accurate to `P` digits after the mild
//! cancellation present in the closed forms.

use rug::float::Constant;
use rug::{Complex, Float, Integer};

use crate::error::{domain, Result};

/// Default number of significant decimal digits.
pub const DEFAULT_DIGITS: u32 = 50;
/// Smallest accepted precision.
pub const MIN_DIGITS: u32 = 15;
/// Extra binary digits carried beyond the requested decimal precision.
pub const GUARD_BITS: u32 = 32;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Number of significant decimal digits a computation runs at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Precision(u32);

impl Precision {
    pub fn new(digits: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(domain!("precision must be at least {MIN_DIGITS} digits, got {digits}"));
        }
        Ok(Precision(digits))
    }

    pub fn digits(self) -> u32 {
        self.0
    }

    /// Binary working precision, guard bits included.
    pub fn bits(self) -> u32 {
        digits_to_bits(self.0) + GUARD_BITS
    }

    /// `10^{-(P - slack)}` at working precision.
    pub fn tolerance(self, slack: u32) -> Float {
        let e = self.0.saturating_sub(slack) as i32;
        Float::with_val(self.bits(), Float::i_pow_u(10, e as u32)).recip()
    }

    /// Same precision plus `extra` decimal digits.
    pub fn widened(self, extra: u32) -> Precision {
        Precision(self.0 + extra)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision(DEFAULT_DIGITS)
    }
}

impl std::fmt::Display for Precision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * LOG2_10).ceil() as u32
}

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: &Float) -> Result<Float> {
    if !x.is_finite() || *x <= 0 {
        return Err(domain!("log_gamma requires x > 0, got {}", x.to_f64()));
    }
    Ok(Float::with_val(x.prec(), x.ln_gamma_ref()))
}

/// `Γ(a) / Γ(b)` for positive arguments, assembled as `exp(ln Γ(a) - ln Γ(b))`.
pub fn gamma_ratio(a: &Float, b: &Float) -> Result<Float> {
    let la = log_gamma(a)?;
    let lb = log_gamma(b)?;
    Ok((la - lb).exp())
}

/// `1/Γ(x)` on the whole real line; zero at the poles `x = 0, -1, -2, ...`.
///
/// Positive arguments go through `exp(-ln Γ(x))`; non-positive ones use MPFR's
/// real Gamma, which is only needed for the β-lowered kernels of the raising
/// operator.
pub fn recip_gamma(x: &Float) -> Float {
    if *x > 0 {
        return Float::with_val(x.prec(), -Float::with_val(x.prec(), x.ln_gamma_ref())).exp();
    }
    if x.is_integer() {
        return Float::new(x.prec());
    }
    Float::with_val(x.prec(), x.gamma_ref()).recip()
}

/// Rising factorial `a (a+1) ... (a+m-1)`; the empty product is 1.
pub fn pochhammer(a: &Float, m: u32) -> Float {
    let mut acc = Float::with_val(a.prec(), 1);
    let mut t = a.clone();
    for _ in 0..m {
        acc *= &t;
        t += 1;
    }
    acc
}

/// Binomial coefficient `C(n, k)` as an exact integer.
pub fn binomial(n: u32, k: u32) -> Integer {
    Integer::from(Integer::binomial_u(n, k))
}

/// `n!` as an exact integer.
pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// `ω^j = e^{2πij/r}` with `j` reduced mod `r`.
///
/// The angle is formed from the reduced index, never by repeated
/// multiplication. Quarter turns are returned exactly.
pub fn root_of_unity(r: u32, j: i64, bits: u32) -> Complex {
    assert!(r >= 1, "root_of_unity needs r >= 1");
    let m = j.rem_euclid(r as i64) as u64;
    let r64 = r as u64;
    if (4 * m) % r64 == 0 {
        let (re, im) = match (4 * m) / r64 {
            0 => (1, 0),
            1 => (0, 1),
            2 => (-1, 0),
            _ => (0, -1),
        };
        return Complex::with_val(bits, (re, im));
    }
    let mut angle = Float::with_val(bits + 8, Constant::Pi);
    angle *= 2 * m;
    angle /= r64;
    let s = Float::with_val(bits, angle.sin_ref());
    let c = Float::with_val(bits, angle.cos_ref());
    Complex::with_val(bits, (c, s))
}

/// The `r` powers `ω^0, ..., ω^{r-1}`, indexed by any integer exponent.
#[derive(Clone, Debug)]
pub struct RootTable {
    r: u32,
    powers: Vec<Complex>,
}

impl RootTable {
    pub fn new(r: u32, bits: u32) -> Self {
        let powers = (0..r as i64).map(|j| root_of_unity(r, j, bits)).collect();
        RootTable { r, powers }
    }

    pub fn pow(&self, j: i64) -> &Complex {
        &self.powers[j.rem_euclid(self.r as i64) as usize]
    }

    pub fn r(&self) -> u32 {
        self.r
    }
}

/// Modulus of a complex number as an MPFR float.
pub(crate) fn cabs(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.abs_ref())
}

/// Solves the dense complex system `a x = b` by Gaussian elimination with
/// partial pivoting; `a` is row-major and square.
pub(crate) fn solve_complex(mut a: Vec<Vec<Complex>>, mut b: Vec<Complex>, bits: u32) -> Result<Vec<Complex>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| cabs(&a[i][col]).total_cmp(&cabs(&a[j][col])))
            .unwrap_or(col);
        if a[pivot][col].is_zero() {
            return Err(crate::error::Error::Precision(format!("singular system at column {col}")));
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = Complex::with_val(bits, a[col][col].recip_ref());
        for row in col + 1..n {
            let f = Complex::with_val(bits, &a[row][col] * &inv);
            if f.is_zero() {
                continue;
            }
            for c in col..n {
                let t = Complex::with_val(bits, &f * &a[col][c]);
                a[row][c] -= t;
            }
            let t = Complex::with_val(bits, &f * &b[col]);
            b[row] -= t;
        }
    }
    let mut x = vec![Complex::new(bits); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for c in row + 1..n {
            acc -= Complex::with_val(bits, &a[row][c] * &x[c]);
        }
        x[row] = acc / &a[row][row];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn p() -> Precision {
        Precision::default()
    }

    fn close(a: &Float, b: &Float, tol: &Float) -> bool {
        let d = Float::with_val(a.prec(), a - b).abs();
        let s = Float::with_val(a.prec(), b.abs_ref()).max(&Float::with_val(a.prec(), 1));
        d <= Float::with_val(a.prec(), tol * &s)
    }

    #[test]
    fn precision_floor() {
        assert!(Precision::new(14).is_err());
        assert_eq!(Precision::new(15).unwrap().digits(), 15);
        assert_eq!(Precision::default().digits(), 50);
        assert!(p().bits() >= 166 + GUARD_BITS);
    }

    #[test]
    fn log_gamma_values() {
        let b = p().bits();
        let tol = p().tolerance(5);
        assert!(log_gamma(&Float::with_val(b, 1)).unwrap().is_zero());
        let l5 = log_gamma(&Float::with_val(b, 5)).unwrap();
        assert!(close(&l5, &Float::with_val(b, 24).ln(), &tol));
        let half = log_gamma(&Float::with_val(b, 0.5)).unwrap();
        let pi = Float::with_val(b, Constant::Pi);
        assert!(close(&half, &(pi.sqrt().ln()), &tol));
    }

    #[test]
    fn log_gamma_rejects_non_positive() {
        let b = p().bits();
        assert!(matches!(log_gamma(&Float::with_val(b, 0)), Err(Error::Domain(_))));
        assert!(matches!(log_gamma(&Float::with_val(b, -2.5)), Err(Error::Domain(_))));
    }

    #[test]
    fn pochhammer_values() {
        let b = p().bits();
        assert_eq!(pochhammer(&Float::with_val(b, 7.25), 0), 1);
        assert_eq!(pochhammer(&Float::with_val(b, 3), 2), 12);
        for m in 0..12u32 {
            assert_eq!(pochhammer(&Float::with_val(b, 1), m), factorial(m));
        }
    }

    #[test]
    fn recip_gamma_poles_and_reflection() {
        let b = p().bits();
        assert!(recip_gamma(&Float::with_val(b, 0)).is_zero());
        assert!(recip_gamma(&Float::with_val(b, -3)).is_zero());
        // 1/Γ(-1/2) = -1/(2√π)
        let v = recip_gamma(&Float::with_val(b, -0.5));
        let pi = Float::with_val(b, Constant::Pi);
        let expect = -(pi.sqrt() * 2u32).recip();
        assert!(close(&v, &expect, &p().tolerance(5)));
    }

    #[test]
    fn roots_of_unity_values() {
        let b = p().bits();
        assert_eq!(root_of_unity(1, 5, b), Complex::with_val(b, (1, 0)));
        assert_eq!(root_of_unity(4, 1, b), Complex::with_val(b, (0, 1)));
        assert_eq!(root_of_unity(3, 3, b), Complex::with_val(b, (1, 0)));
        assert_eq!(root_of_unity(4, -1, b), Complex::with_val(b, (0, -1)));
    }

    #[test]
    fn pochhammer_matches_log_gamma_route() {
        let b = p().bits();
        let tol = p().tolerance(5);
        for a in [0.25, 1.0, 2.5, 7.0, 13.75] {
            let a = Float::with_val(b, a);
            for m in 0..=20u32 {
                let direct = pochhammer(&a, m);
                let via = gamma_ratio(&Float::with_val(b, &a + m), &a).unwrap();
                let rel = Float::with_val(b, &direct - &via).abs() / &direct;
                assert!(rel <= tol, "a={} m={m}", a.to_f64());
            }
        }
    }

    #[test]
    fn root_products_and_collapse() {
        let b = p().bits();
        let tol = p().tolerance(5);
        for r in 1..=9u32 {
            for j in 0..(2 * r as i64) {
                let prod = Complex::with_val(b, root_of_unity(r, j, b) * root_of_unity(r, r as i64 - j, b));
                let d = cabs(&Complex::with_val(b, &prod - 1));
                assert!(d <= tol, "r={r} j={j}");
                assert!((cabs(&root_of_unity(r, j, b)) - 1u32).abs() <= tol);
            }
            let table = RootTable::new(r, b);
            for m in 0..(3 * r as i64) {
                let mut s = Complex::new(b);
                for j in 1..=r as i64 {
                    s += table.pow((j - 1) * m);
                }
                let expect = if m % r as i64 == 0 { r } else { 0 };
                let d = cabs(&Complex::with_val(b, &s - expect));
                assert!(d <= tol, "r={r} m={m}");
            }
        }
    }
}
