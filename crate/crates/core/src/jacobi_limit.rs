//! The type I Jacobi–Angelesco kernel on the r-star and its limit to the
//! Laguerre–Angelesco kernel.
//!
//! With weight `|x|^β (1 - x^r)^α` on the r-star of unit rays,
//! `α^{-β/r} p_n^{JA}(α^{-1/r} x; α, β) → p_n(x; β)` as `α → ∞`.
//! Coefficient `k` carries the ratio `Γ(n+α+(β+k)/r+1)/Γ(n+α+1) ~ α^{(β+k)/r}`,
//! so the error decays like `1/α`.
//!
//! Scaling. Under `x = α^{-1/r} t` the Jacobi weight becomes
//! `α^{-β/r} |t|^β (1 - t^r/α)^α → α^{-β/r} |t|^β e^{-t^r}`, and each function
//! of a type I vector at multi-index `n` picks up `α^{-(|n|+β)/r}` from the
//! weight and the change of variables. Both kernels share the normalization
//! `r^n/n!` on the diagonal, so dividing out the common `α^{-|n|/r}` leaves the
//! kernel-level factor `α^{-β/r}`.

use rug::ops::Pow;
use rug::{Complex, Float};

use crate::error::{domain, Result};
use crate::moments::StarWeight;
use crate::numerics::{binomial, log_gamma, recip_gamma};
use crate::polynomials::ComplexPoly;
use crate::type1::p_poly;

/// Parameters of the Jacobi–Angelesco weight; `r` and `β` come from `w`.
#[derive(Clone, Debug)]
pub struct JacobiParams {
    alpha: Float,
    w: StarWeight,
}

impl JacobiParams {
    pub fn new(alpha: f64, w: &StarWeight) -> Result<Self> {
        Self::from_float(Float::with_val(w.bits(), alpha), w)
    }

    pub fn from_float(alpha: Float, w: &StarWeight) -> Result<Self> {
        if !alpha.is_finite() || alpha <= -1 {
            return Err(domain!("alpha must exceed -1"));
        }
        Ok(JacobiParams { alpha: Float::with_val(w.bits(), alpha), w: w.clone() })
    }

    pub fn alpha(&self) -> &Float {
        &self.alpha
    }

    pub fn weight(&self) -> &StarWeight {
        &self.w
    }
}

/// `Σ_k C(n,k) (-1)^{n-k} Γ(n+α+(β+k)/r+1) / (Γ(n+α+1) Γ((β+k)/r+1)) x^k`.
pub fn p_poly_jacobi(n: usize, jp: &JacobiParams) -> Result<ComplexPoly> {
    let w = &jp.w;
    let bits = w.bits();
    let r = w.r();
    let base = Float::with_val(bits, &jp.alpha + (n as u64 + 1));
    let lg_base = log_gamma(&base)?;
    let coeffs = (0..=n)
        .map(|k| {
            let s = Float::with_val(bits, w.beta() + k as u64) / r;
            let ratio = (log_gamma(&Float::with_val(bits, &base + &s))? - &lg_base).exp();
            let mut c = ratio * recip_gamma(&(s + 1u32)) * binomial(n as u32, k as u32);
            if (n - k) % 2 == 1 {
                c = -c;
            }
            Ok(Complex::with_val(bits, (c, 0)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ComplexPoly::from_coeffs(coeffs, bits))
}

/// `max_k |α^{-(β+k)/r} c_k^{JA} - c_k| / ‖p_n‖∞`.
pub fn type1_limit_error(n: usize, w: &StarWeight, alpha: &Float) -> Result<Float> {
    if *alpha <= 0 {
        return Err(domain!("the limit needs alpha > 0"));
    }
    let jp = JacobiParams::from_float(alpha.clone(), w)?;
    let bits = w.bits();
    let ja = p_poly_jacobi(n, &jp)?;
    let la = p_poly(n, w)?;
    let mut worst = Float::new(bits);
    for k in 0..=n {
        let e = Float::with_val(bits, w.beta() + k as u64) / w.r();
        let scale = Float::with_val(bits, (&jp.alpha).pow(-e));
        let scaled = Complex::with_val(bits, ja.coeff(k) * scale);
        let d = Complex::with_val(bits, scaled - la.coeff(k));
        worst.max_mut(&Float::with_val(bits, d.abs_ref()));
    }
    Ok(worst / la.norm_inf())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Precision;
    use crate::type1::nu;

    fn w(r: u32, beta: f64) -> StarWeight {
        StarWeight::new(r, beta, Precision::default()).unwrap()
    }

    fn beta_fn(a: &Float, b: &Float) -> Float {
        let s = Float::with_val(a.prec(), a + b);
        (log_gamma(a).unwrap() + log_gamma(b).unwrap() - log_gamma(&s).unwrap()).exp()
    }

    #[test]
    fn small_cases() {
        let wt = w(3, 0.4);
        let jp = JacobiParams::new(2.5, &wt).unwrap();
        let b = wt.bits();
        let p0 = p_poly_jacobi(0, &jp).unwrap();
        let expect = (log_gamma(&Float::with_val(b, 2.5 + 0.4 / 3.0 + 1.0)).unwrap()
            - log_gamma(&Float::with_val(b, 3.5)).unwrap())
        .exp()
            * nu(0, 3, wt.beta());
        // β/r in the expectation was formed in f64, hence the loose tolerance.
        assert!((p0.coeff(0).real().clone() - expect).abs() < 1e-14);

        let p4 = p_poly_jacobi(4, &jp).unwrap();
        assert_eq!(p4.degree(), Some(4));
        assert!(p4.is_real());
        assert!(JacobiParams::new(-1.0, &wt).is_err());
    }

    #[test]
    fn orthogonality_by_beta_integrals() {
        // ∫₀¹ x^{m+β} (1-x^r)^α dx = B((m+β+1)/r, α+1) / r
        for (r, n) in [(1u32, 2usize), (2, 3), (3, 4)] {
            let wt = w(r, 0.3);
            let jp = JacobiParams::new(1.7, &wt).unwrap();
            let b = wt.bits();
            let p = p_poly_jacobi(n, &jp).unwrap();
            let a1 = Float::with_val(b, jp.alpha() + 1u32);
            for j in 1..=n {
                let mut s = Float::new(b);
                let mut scale = Float::new(b);
                for (c, coeff) in p.coeffs().iter().enumerate() {
                    let m = Float::with_val(b, wt.beta() + (r as usize * j + c) as u64) / r;
                    let t = Float::with_val(b, coeff.real() * beta_fn(&m, &a1));
                    scale += Float::with_val(b, t.abs_ref());
                    s += t;
                }
                assert!(s.abs() <= scale * Precision::default().tolerance(10), "r={r} j={j}");
            }
        }
    }

    #[test]
    fn limit_is_first_order() {
        let wt = w(2, 0.5);
        let b = wt.bits();
        let errs: Vec<Float> = [1e2, 1e3, 1e4, 1e5]
            .iter()
            .map(|a| type1_limit_error(5, &wt, &Float::with_val(b, *a)).unwrap())
            .collect();
        assert!(errs.windows(2).all(|p| p[1] < p[0]));
        let rates: Vec<f64> = errs.iter().zip([1e2, 1e3, 1e4, 1e5]).map(|(e, a)| e.to_f64() * a).collect();
        assert!(rates[1..].iter().all(|r| (r / rates[3] - 1.0).abs() < 0.2), "{rates:?}");

        let wt = w(1, 0.0);
        let e = type1_limit_error(1, &wt, &Float::with_val(b, 1e6)).unwrap();
        assert!(e <= 1e-5);
    }
}
