//! Exact evaluation of the weight integrals on the r-star.
//!
//! Every integral in scope reduces to Gamma values: on the positive ray
//! `∫₀^∞ x^{m+β} e^{-x^r} dx = Γ((β+m+1)/r)/r`, and the substitution
//! `x = ω^{j-1} t` moves ray `j` onto the positive ray at the cost of a phase.
//! Residuals therefore carry no quadrature error and are limited only by the
//! working precision. Each residual is returned together with the sum of the
//! moduli of the terms that produced it, which is the scale the cancellation is
//! measured against.

use rug::{Complex, Float};

use crate::error::{domain, Error, Result};
use crate::numerics::{cabs, log_gamma, Precision, RootTable};
use crate::polynomials::ComplexPoly;

#[derive(Clone, Debug, PartialEq)]
enum BetaSource {
    Binary(f64),
    Decimal(String),
}

/// Weight `|x|^β e^{-x^r}` on the r-star, at a fixed precision.
#[derive(Clone, Debug)]
pub struct StarWeight {
    r: u32,
    beta: Float,
    source: BetaSource,
    precision: Precision,
}

impl StarWeight {
    /// `beta` is taken as the exact binary value of the `f64`.
    pub fn new(r: u32, beta: f64, precision: Precision) -> Result<Self> {
        let b = Float::with_val(precision.bits(), beta);
        Self::build(r, b, BetaSource::Binary(beta), precision)
    }

    /// `beta` given as a decimal string, rounded once at the working precision.
    pub fn from_decimal(r: u32, beta: &str, precision: Precision) -> Result<Self> {
        let parsed = Float::parse(beta.trim()).map_err(|e| domain!("cannot parse beta {beta:?}: {e}"))?;
        let b = Float::with_val(precision.bits(), parsed);
        Self::build(r, b, BetaSource::Decimal(beta.trim().to_string()), precision)
    }

    fn build(r: u32, beta: Float, source: BetaSource, precision: Precision) -> Result<Self> {
        if r == 0 {
            return Err(domain!("the star needs at least one ray (r >= 1)"));
        }
        if !beta.is_finite() || beta <= -1 {
            return Err(domain!("beta must satisfy beta > -1, got {}", beta.to_f64()));
        }
        Ok(StarWeight { r, beta, source, precision })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn beta(&self) -> &Float {
        &self.beta
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn bits(&self) -> u32 {
        self.precision.bits()
    }

    /// The same weight re-rounded at another precision.
    pub fn with_precision(&self, precision: Precision) -> StarWeight {
        let beta = match &self.source {
            BetaSource::Binary(b) => Float::with_val(precision.bits(), *b),
            BetaSource::Decimal(s) => {
                Float::with_val(precision.bits(), Float::parse(s).expect("validated at construction"))
            }
        };
        StarWeight { r: self.r, beta, source: self.source.clone(), precision }
    }

    /// The β parameter as written by the user, for reports.
    pub fn beta_text(&self) -> String {
        match &self.source {
            BetaSource::Binary(b) => format!("{b}"),
            BetaSource::Decimal(s) => s.clone(),
        }
    }
}

/// `∫₀^∞ x^{m+β} e^{-x^r} dx = Γ((β+m+1)/r)/r`.
pub fn ray_moment(m: usize, w: &StarWeight) -> Result<Float> {
    moment_at(m, w.r, &w.beta, w.bits())
}

fn moment_at(m: usize, r: u32, beta: &Float, bits: u32) -> Result<Float> {
    let arg = Float::with_val(bits, beta + m as u64);
    if arg <= -1 {
        return Err(domain!("moment of order {m} diverges for beta = {}", beta.to_f64()));
    }
    let a = Float::with_val(bits, (arg + 1u32) / r);
    Ok(log_gamma(&a)?.exp() / r)
}

/// Positive-ray moments `M(0), ..., M(len-1)` for one weight.
#[derive(Clone, Debug)]
pub(crate) struct MomentTable {
    values: Vec<Float>,
}

impl MomentTable {
    pub(crate) fn new(w: &StarWeight, len: usize) -> Result<Self> {
        let values = (0..len).map(|m| ray_moment(m, w)).collect::<Result<_>>()?;
        Ok(MomentTable { values })
    }

    pub(crate) fn get(&self, m: usize) -> &Float {
        &self.values[m]
    }
}

/// Value and absolute-term scale of `∫` over ray `j` of `x^k q(x) w(x) dx`.
fn ray_integral_scaled(
    q: &ComplexPoly,
    k: usize,
    j: u32,
    moments: &MomentTable,
    roots: &RootTable,
    bits: u32,
) -> (Complex, Float) {
    let mut acc = Complex::new(bits);
    let mut scale = Float::new(bits);
    let jm = (j - 1) as i64;
    for (c, qc) in q.coeffs().iter().enumerate() {
        if qc.is_zero() {
            continue;
        }
        let m = moments.get(k + c);
        let term = Complex::with_val(bits, qc * roots.pow(jm * c as i64)) * m;
        scale += cabs(qc) * m;
        acc += term;
    }
    acc *= roots.pow(jm * (k as i64 + 1));
    (acc, scale)
}

/// `∫₀^{ω^{j-1}∞} x^k q(x) |x|^β e^{-x^r} dx` for ray `j ∈ 1..=r`, as a finite
/// Gamma sum.
pub fn ray_integral(q: &ComplexPoly, k: usize, j: u32, w: &StarWeight) -> Result<Complex> {
    check_ray(j, w.r)?;
    let bits = w.bits();
    let len = k + q.coeffs().len().max(1);
    let moments = MomentTable::new(w, len)?;
    let roots = RootTable::new(w.r, bits);
    Ok(ray_integral_scaled(q, k, j, &moments, &roots, bits).0)
}

fn check_ray(j: u32, r: u32) -> Result<()> {
    if j == 0 || j > r {
        return Err(domain!("ray index {j} outside 1..={r}"));
    }
    Ok(())
}

/// One residual together with the scale of the terms it was summed from.
#[derive(Clone, Debug)]
pub struct Residual {
    pub value: Complex,
    pub scale: Float,
}

impl Residual {
    /// `|value - target| / scale` (or the plain distance when the scale is zero).
    pub fn relative_to(&self, target: u32) -> Float {
        let d = cabs(&Complex::with_val(self.value.prec().0, &self.value - target));
        if self.scale.is_zero() {
            d
        } else {
            d / &self.scale
        }
    }
}

/// Moments of order `k = 0..total_degree` of a type I vector summed over the
/// rays. Entries `0..total_degree-1` should vanish, the last should equal 1.
pub fn type1_residuals(a: &[ComplexPoly], w: &StarWeight, total_degree: usize) -> Result<Vec<Residual>> {
    if a.len() != w.r as usize {
        return Err(domain!("type I vector has {} entries, expected r = {}", a.len(), w.r));
    }
    let bits = w.bits();
    let max_deg = a.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
    let moments = MomentTable::new(w, total_degree + max_deg + 1)?;
    let roots = RootTable::new(w.r, bits);
    Ok((0..total_degree)
        .map(|k| {
            let mut value = Complex::new(bits);
            let mut scale = Float::new(bits);
            for (j, p) in a.iter().enumerate() {
                let (v, s) = ray_integral_scaled(p, k, j as u32 + 1, &moments, &roots, bits);
                value += v;
                scale += s;
            }
            Residual { value, scale }
        })
        .collect())
}

/// Worst scale-relative orthogonality residual and the normalization error of a
/// type I residual sequence.
#[derive(Clone, Debug)]
pub struct Type1Summary {
    pub max_orthogonality: Float,
    pub normalization_error: Float,
}

impl Type1Summary {
    pub fn from_residuals(entries: &[Residual]) -> Result<Self> {
        let (last, rest) = entries
            .split_last()
            .ok_or_else(|| Error::Usage("empty residual sequence".into()))?;
        let bits = last.value.prec().0;
        let mut max_orthogonality = Float::new(bits);
        for e in rest {
            max_orthogonality.max_mut(&e.relative_to(0));
        }
        Ok(Type1Summary { max_orthogonality, normalization_error: last.relative_to(1) })
    }

    pub fn passes(&self, tol: &Float) -> bool {
        self.max_orthogonality <= *tol && self.normalization_error <= *tol
    }
}

/// One ray-wise orthogonality residual of a type II polynomial.
#[derive(Clone, Debug)]
pub struct Type2Residual {
    pub ray: u32,
    pub k: usize,
    pub residual: Residual,
}

/// `∫` over ray `j` of `x^k L(x) w(x)` for every `j` and `0 ≤ k < degrees[j-1]`.
pub fn type2_residuals(l: &ComplexPoly, w: &StarWeight, degrees: &[usize]) -> Result<Vec<Type2Residual>> {
    if degrees.len() != w.r as usize {
        return Err(domain!("multi-index has {} entries, expected r = {}", degrees.len(), w.r));
    }
    let total: usize = degrees.iter().sum();
    if l.degree().unwrap_or(0) != total {
        return Err(domain!("polynomial degree {:?} differs from |n| = {total}", l.degree()));
    }
    let bits = w.bits();
    let max_k = degrees.iter().copied().max().unwrap_or(0);
    let moments = MomentTable::new(w, max_k + l.coeffs().len() + 1)?;
    let roots = RootTable::new(w.r, bits);
    let mut out = Vec::with_capacity(total);
    for (j, &nj) in degrees.iter().enumerate() {
        for k in 0..nj {
            let (value, scale) = ray_integral_scaled(l, k, j as u32 + 1, &moments, &roots, bits);
            out.push(Type2Residual { ray: j as u32 + 1, k, residual: Residual { value, scale } });
        }
    }
    Ok(out)
}

/// Largest scale-relative entry of a type II residual set (zero when empty).
pub fn max_type2_residual(entries: &[Type2Residual], bits: u32) -> Float {
    let mut m = Float::new(bits);
    for e in entries {
        m.max_mut(&e.residual.relative_to(0));
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    fn w(r: u32, beta: f64) -> StarWeight {
        StarWeight::new(r, beta, Precision::default()).unwrap()
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(StarWeight::new(0, 0.0, Precision::default()).is_err());
        assert!(StarWeight::new(2, -1.0, Precision::default()).is_err());
        assert!(StarWeight::from_decimal(2, "abc", Precision::default()).is_err());
        assert!(StarWeight::from_decimal(2, "-0.5", Precision::default()).is_ok());
    }

    #[test]
    fn moment_values() {
        let tol = Precision::default().tolerance(5);
        let b = Precision::default().bits();
        assert!((ray_moment(0, &w(1, 0.0)).unwrap() - 1u32).abs() <= tol);
        let half_gauss = Float::with_val(b, Constant::Pi).sqrt() / 2u32;
        assert!((ray_moment(0, &w(2, 0.0)).unwrap() - half_gauss).abs() <= tol);
        // m = r-1: Γ(β/r + 1)/r
        let wt = w(3, 0.5);
        let expect = Float::with_val(b, Float::with_val(b, 0.5) / 3u32 + 1u32).gamma() / 3u32;
        assert!((ray_moment(2, &wt).unwrap() - expect).abs() <= tol);
    }

    #[test]
    fn divergent_moment_is_domain_error() {
        let wt = w(2, -0.5);
        // Private path with a shifted β below -1.
        let bits = wt.bits();
        let beta = Float::with_val(bits, -1.5);
        assert!(matches!(moment_at(0, 2, &beta, bits), Err(Error::Domain(_))));
        assert!(moment_at(1, 2, &beta, bits).is_ok());
    }

    #[test]
    fn constant_integral_is_moment() {
        let wt = w(3, 0.25);
        let one = ComplexPoly::one(wt.bits());
        let v = ray_integral(&one, 0, 1, &wt).unwrap();
        assert_eq!(*v.real(), ray_moment(0, &wt).unwrap());
        assert!(v.imag().is_zero());
        assert!(ray_integral(&one, 0, 4, &wt).is_err());
    }

    #[test]
    fn ray_collapse_of_monomials() {
        let tol = Precision::default().tolerance(10);
        for r in 1..=5u32 {
            let wt = w(r, 0.3);
            for c in 0..6usize {
                let q = ComplexPoly::monomial(c, Complex::with_val(wt.bits(), 1));
                for k in 0..8usize {
                    let mut total = Complex::new(wt.bits());
                    let mut scale = Float::new(wt.bits());
                    for j in 1..=r {
                        let v = ray_integral(&q, k, j, &wt).unwrap();
                        scale += cabs(&v);
                        total += v;
                    }
                    let collapsed = cabs(&total) / scale;
                    if (k + c + 1) % r as usize == 0 {
                        assert!(collapsed > 0.5, "r={r} k={k} c={c}");
                    } else {
                        assert!(collapsed <= tol, "r={r} k={k} c={c}");
                    }
                }
            }
        }
    }

    #[test]
    fn residual_shape_checks() {
        let wt = w(2, 0.0);
        let one = ComplexPoly::one(wt.bits());
        assert!(type1_residuals(&[one.clone()], &wt, 2).is_err());
        assert!(type2_residuals(&one, &wt, &[1, 0]).is_err());
        assert!(type2_residuals(&one, &wt, &[0, 0]).unwrap().is_empty());
    }
}
