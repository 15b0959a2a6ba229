//! Dense complex-coefficient polynomials and the weighted derivative behind the
//! Rodrigues formulas.

use std::ops::{Add, Mul, Neg, Sub};

use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::numerics::cabs;

/// Polynomial with complex coefficients; `coeffs[k]` multiplies `x^k`.
///
/// The highest stored coefficient is nonzero; the zero polynomial stores
/// nothing. Every coefficient carries the same MPFR precision `bits`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPoly {
    coeffs: Vec<Complex>,
    bits: u32,
}

impl ComplexPoly {
    pub fn zero(bits: u32) -> Self {
        ComplexPoly { coeffs: Vec::new(), bits }
    }

    pub fn one(bits: u32) -> Self {
        Self::from_coeffs(vec![Complex::with_val(bits, 1)], bits)
    }

    /// `c x^k`.
    pub fn monomial(k: usize, c: Complex) -> Self {
        let bits = c.prec().0;
        let mut coeffs = vec![Complex::new(bits); k];
        coeffs.push(c);
        Self::from_coeffs(coeffs, bits)
    }

    /// Builds a polynomial, rounding every coefficient to `bits` and dropping
    /// exactly-zero leading coefficients.
    pub fn from_coeffs(coeffs: Vec<Complex>, bits: u32) -> Self {
        let coeffs = coeffs
            .into_iter()
            .map(|c| if c.prec() == (bits, bits) { c } else { Complex::with_val(bits, c) })
            .collect();
        let mut p = ComplexPoly { coeffs, bits };
        p.trim();
        p
    }

    pub fn from_real(coeffs: Vec<Float>, bits: u32) -> Self {
        Self::from_coeffs(coeffs.into_iter().map(|c| Complex::with_val(bits, (c, 0))).collect(), bits)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Complex {
        self.coeffs.get(k).cloned().unwrap_or_else(|| Complex::new(self.bits))
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Complex> {
        self.coeffs.last()
    }

    /// True when every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.imag().is_zero())
    }

    /// Real parts of the coefficients.
    pub fn real_parts(&self) -> Vec<Float> {
        self.coeffs.iter().map(|c| c.real().clone()).collect()
    }

    /// Horner evaluation.
    pub fn eval(&self, z: &Complex) -> Complex {
        let mut acc = Complex::new(self.bits);
        for c in self.coeffs.iter().rev() {
            acc *= z;
            acc += c;
        }
        acc
    }

    /// Formal derivative of the given order.
    pub fn derivative(&self, order: usize) -> Self {
        if order == 0 {
            return self.clone();
        }
        if self.coeffs.len() <= order {
            return Self::zero(self.bits);
        }
        let coeffs = (order..self.coeffs.len())
            .map(|k| {
                // k (k-1) ... (k-order+1)
                let falling: u64 = ((k - order + 1)..=k).map(|v| v as u64).product();
                Complex::with_val(self.bits, &self.coeffs[k] * rug::Integer::from(falling))
            })
            .collect();
        Self::from_coeffs(coeffs, self.bits)
    }

    /// `q(x) = p(s x)`: coefficient `k` is multiplied by `s^k`.
    pub fn compose_linear(&self, s: &Complex) -> Self {
        let mut pow = Complex::with_val(self.bits, 1);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(Complex::with_val(self.bits, c * &pow));
            pow *= s;
        }
        Self::from_coeffs(coeffs, self.bits)
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Complex::new(self.bits); k];
        coeffs.extend(self.coeffs.iter().cloned());
        ComplexPoly { coeffs, bits: self.bits }
    }

    pub fn scale(&self, s: &Complex) -> Self {
        let coeffs = self.coeffs.iter().map(|c| Complex::with_val(self.bits, c * s)).collect();
        Self::from_coeffs(coeffs, self.bits)
    }

    pub fn scale_real(&self, s: &Float) -> Self {
        let coeffs = self.coeffs.iter().map(|c| Complex::with_val(self.bits, c * s)).collect();
        Self::from_coeffs(coeffs, self.bits)
    }

    /// Largest coefficient modulus; zero for the zero polynomial.
    pub fn norm_inf(&self) -> Float {
        let mut m = Float::new(self.bits);
        for c in &self.coeffs {
            let a = cabs(c);
            if a > m {
                m = a;
            }
        }
        m
    }

    /// Largest coefficient-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexPoly) -> Float {
        (self - other).norm_inf()
    }

    /// Rounds coefficients to a different precision.
    pub fn with_bits(&self, bits: u32) -> Self {
        Self::from_coeffs(self.coeffs.clone(), bits)
    }

    /// Drops every coefficient above `degree` after checking that each one is
    /// no larger than `tol`; `None` keeps nothing.
    ///
    /// Used where a leading coefficient cancels analytically but only to
    /// working precision numerically.
    pub fn truncate_to(&self, degree: Option<usize>, tol: &Float) -> Result<Self> {
        let keep = degree.map_or(0, |d| d + 1);
        for (k, c) in self.coeffs.iter().enumerate().skip(keep) {
            if cabs(c) > *tol {
                return Err(Error::Consistency(format!(
                    "coefficient of x^{k} is {:e}, expected to cancel",
                    cabs(c).to_f64()
                )));
            }
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(keep);
        Ok(Self::from_coeffs(coeffs, self.bits))
    }

    /// Coefficient-wise comparison with mixed tolerance
    /// `max(abs, rel · max(‖self‖∞, ‖other‖∞))`.
    pub fn approx_eq(&self, other: &ComplexPoly, abs: &Float, rel: &Float) -> bool {
        let scale = self.norm_inf().max(&other.norm_inf());
        let tol = Float::with_val(self.bits, rel * &scale).max(abs);
        self.max_abs_diff(other) <= tol
    }
}

fn combine(a: &ComplexPoly, b: &ComplexPoly, sign: i32) -> ComplexPoly {
    let bits = a.bits.max(b.bits);
    let n = a.coeffs.len().max(b.coeffs.len());
    let coeffs = (0..n)
        .map(|k| {
            let mut c = a.coeffs.get(k).map_or_else(|| Complex::new(bits), |v| Complex::with_val(bits, v));
            if let Some(v) = b.coeffs.get(k) {
                if sign > 0 {
                    c += v;
                } else {
                    c -= v;
                }
            }
            c
        })
        .collect();
    ComplexPoly::from_coeffs(coeffs, bits)
}

impl Add for &ComplexPoly {
    type Output = ComplexPoly;
    fn add(self, rhs: &ComplexPoly) -> ComplexPoly {
        combine(self, rhs, 1)
    }
}

impl Sub for &ComplexPoly {
    type Output = ComplexPoly;
    fn sub(self, rhs: &ComplexPoly) -> ComplexPoly {
        combine(self, rhs, -1)
    }
}

impl Neg for &ComplexPoly {
    type Output = ComplexPoly;
    fn neg(self) -> ComplexPoly {
        let coeffs = self.coeffs.iter().map(|c| Complex::with_val(self.bits, -c)).collect();
        ComplexPoly { coeffs, bits: self.bits }
    }
}

impl Mul for &ComplexPoly {
    type Output = ComplexPoly;
    fn mul(self, rhs: &ComplexPoly) -> ComplexPoly {
        let bits = self.bits.max(rhs.bits);
        if self.is_zero() || rhs.is_zero() {
            return ComplexPoly::zero(bits);
        }
        let mut coeffs = vec![Complex::new(bits); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += Complex::with_val(bits, a * b);
            }
        }
        ComplexPoly::from_coeffs(coeffs, bits)
    }
}

/// A polynomial identity evaluated as `residual = lhs - rhs`, together with
/// the largest coefficient norm among the terms that were combined.
#[derive(Clone, Debug)]
pub struct PolyResidual {
    pub residual: ComplexPoly,
    pub scale: Float,
}

impl PolyResidual {
    /// Builds the residual `Σ sign_i · term_i` and records `max ‖term_i‖∞`.
    pub fn from_terms(terms: &[(i32, &ComplexPoly)], bits: u32) -> Self {
        let mut residual = ComplexPoly::zero(bits);
        let mut scale = Float::new(bits);
        for (sign, t) in terms {
            scale.max_mut(&t.norm_inf());
            residual = if *sign >= 0 { &residual + *t } else { &residual - *t };
        }
        PolyResidual { residual, scale }
    }

    /// `‖residual‖∞ / scale`; the plain norm when the scale is zero.
    pub fn relative(&self) -> Float {
        let n = self.residual.norm_inf();
        if self.scale.is_zero() {
            n
        } else {
            n / &self.scale
        }
    }
}

/// `x^c e^{-x^r} poly(x)`, with `r` supplied by the caller.
#[derive(Clone, Debug)]
pub struct WeightedForm {
    pub exponent: Float,
    pub poly: ComplexPoly,
}

impl WeightedForm {
    pub fn new(exponent: Float, poly: ComplexPoly) -> Self {
        WeightedForm { exponent, poly }
    }
}

/// One derivative of `x^c e^{-x^r} q(x)`:
/// `x^{c-1} e^{-x^r} (c q + x q' - r x^r q)`.
pub fn weighted_derivative(f: &WeightedForm, r: u32) -> WeightedForm {
    assert!(r >= 1, "weighted_derivative needs r >= 1");
    let q = &f.poly;
    let bits = q.bits();
    let c = Complex::with_val(bits, (&f.exponent, 0));
    let cq = q.scale(&c);
    let xq = q.derivative(1).shift(1);
    let rq = q.shift(r as usize).scale(&Complex::with_val(bits, r));
    let poly = &(&cq + &xq) - &rq;
    WeightedForm { exponent: Float::with_val(f.exponent.prec(), &f.exponent - 1u32), poly }
}

/// `m` successive weighted derivatives.
pub fn weighted_derivative_n(f: &WeightedForm, r: u32, m: usize) -> WeightedForm {
    let mut g = f.clone();
    for _ in 0..m {
        g = weighted_derivative(&g, r);
    }
    g
}
