//! Type II polynomials `L_n(x; β)` on the diagonal and one step above it.
//!
//! The diagonal coefficients are alternating sums of Pochhammer symbols whose
//! terms grow much faster than the result, so they are summed at an escalating
//! working precision under a running error bound.

use rug::ops::Pow;
use rug::Assign;
use rug::{Complex, Float, Integer, Rational};

use crate::error::{domain, Error, Result};
use crate::moments::{type2_residuals, max_type2_residual, MomentTable, StarWeight};
use crate::numerics::{binomial, cabs, factorial, gamma_ratio, pochhammer, solve_complex, Precision, RootTable};
use crate::polynomials::{weighted_derivative, weighted_derivative_n, ComplexPoly, PolyResidual, WeightedForm};
use crate::type1::{type1_recurrence_coeffs, DiagonalIndex, RecurrenceCoeffs};

/// Largest number of extra bits the diagonal sums may use before giving up.
const MAX_EXTRA_BITS: u32 = 1 << 15;

/// A monic type II polynomial with its multi-index.
#[derive(Clone, Debug)]
pub struct Type2Poly {
    pub poly: ComplexPoly,
    pub index: DiagonalIndex,
    pub beta: Float,
    pub precision: Precision,
}

/// Coefficients of `x^{rℓ}`, `ℓ = 0..=n`, of the diagonal polynomial for an
/// arbitrary real `β` with `rk+β+1` never a non-positive integer.
pub(crate) fn diagonal_coeffs(n: usize, r: u32, beta: &Float, bits: u32) -> Result<Vec<Float>> {
    let mut work = bits + 64;
    loop {
        match diagonal_coeffs_at(n, r, beta, bits, work) {
            Ok(c) => return Ok(c),
            Err(needed) => {
                let next = needed.max(2 * work - bits);
                if next > bits + MAX_EXTRA_BITS {
                    return Err(Error::Precision(format!(
                        "type II diagonal coefficients for n = {n}, r = {r} need more than {} bits",
                        bits + MAX_EXTRA_BITS
                    )));
                }
                work = next;
            }
        }
    }
}

/// One attempt at `work` bits. On failure returns an estimate of the bits
/// needed.
fn diagonal_coeffs_at(n: usize, r: u32, beta: &Float, bits: u32, work: u32) -> std::result::Result<Vec<Float>, u32> {
    let beta_w = Float::with_val(work, beta);
    let poch: Vec<Float> = (0..=n)
        .map(|k| {
            let a = Float::with_val(work, &beta_w + (r as u64 * k as u64 + 1));
            pochhammer(&a, n as u32)
        })
        .collect();
    let r_pow = Integer::from(r).pow(n as u32);
    let ulp = Float::with_val(64, Float::i_exp(1, 1 - work as i32));
    let mut out = Vec::with_capacity(n + 1);
    let mut needed = 0u32;
    for l in 0..=n {
        // binom walks C(l, k) along k
        let mut binom = Integer::from(1);
        let mut s = Float::new(work);
        let mut scale = Float::new(64);
        for (k, p) in poch.iter().enumerate().take(l + 1) {
            if k > 0 {
                binom *= (l - k + 1) as u64;
                binom /= k as u64;
            }
            let t = Float::with_val(work, p * &binom);
            scale += Float::with_val(64, t.abs_ref());
            if k % 2 == 1 {
                s -= t;
            } else {
                s += t;
            }
        }
        // n roundings in the Pochhammer product, one for the binomial, l in the sum
        let err = Float::with_val(64, &scale * &ulp) * (n + l + 4) as u64;
        let target = Float::with_val(64, s.abs_ref()) >> bits as i32;
        if err > target {
            let ratio = Float::with_val(64, &err / Float::with_val(64, s.abs_ref()).max(&Float::with_val(64, Float::i_exp(1, -(work as i32)))));
            let extra = ratio.log2().to_f64().ceil().max(0.0) as u32;
            needed = needed.max(work + extra + bits + 32);
            continue;
        }
        let mut c = Float::with_val(bits, &s / &r_pow);
        c /= factorial(l as u32);
        if n % 2 == 1 {
            c = -c;
        }
        out.push(c);
    }
    if needed > 0 {
        return Err(needed);
    }
    Ok(out)
}

fn diagonal_poly(n: usize, r: u32, beta: &Float, bits: u32) -> Result<ComplexPoly> {
    let mut c = diagonal_coeffs(n, r, beta, bits)?;
    let lead = c.last_mut().expect("n + 1 coefficients");
    let off = Float::with_val(bits, &*lead - 1u32).abs();
    if off > Float::with_val(bits, Float::i_exp(1, -(bits as i32) + 40)) {
        return Err(Error::Consistency(format!("leading coefficient differs from 1 by {:e}", off.to_f64())));
    }
    lead.assign(1);
    let mut coeffs = vec![Complex::new(bits); r as usize * n + 1];
    for (l, v) in c.into_iter().enumerate() {
        coeffs[r as usize * l] = Complex::with_val(bits, (v, 0));
    }
    Ok(ComplexPoly::from_coeffs(coeffs, bits))
}

/// `L_n(x; β) = ((-1)^n/r^n) Σ_ℓ x^{rℓ}/ℓ! Σ_k C(ℓ,k) (rk+β+1)_n (-1)^k`,
/// multi-index `(n, ..., n)`.
pub fn type2_diagonal(n: usize, w: &StarWeight) -> Result<Type2Poly> {
    let poly = diagonal_poly(n, w.r(), w.beta(), w.bits())?;
    Ok(Type2Poly {
        poly,
        index: DiagonalIndex::diagonal(n, w.r())?,
        beta: w.beta().clone(),
        precision: w.precision(),
    })
}

/// `n` weighted derivatives of `x^{β+n} e^{-x^r} start`, times `(-1)^n/r^n`.
fn rodrigues(n: usize, w: &StarWeight, start: ComplexPoly) -> Result<ComplexPoly> {
    let bits = w.bits();
    let c0 = Float::with_val(bits, w.beta() + n as u64);
    let end = weighted_derivative_n(&WeightedForm::new(c0, start), w.r(), n);
    let drift = Float::with_val(bits, &end.exponent - w.beta()).abs();
    if drift > w.precision().tolerance(10) {
        return Err(Error::Consistency(format!("terminal exponent is off by {:e}", drift.to_f64())));
    }
    let mut s = Float::with_val(bits, Integer::from(w.r()).pow(n as u32)).recip();
    if n % 2 == 1 {
        s = -s;
    }
    Ok(end.poly.scale_real(&s))
}

/// The diagonal polynomial from `x^β e^{-x^r} L_n = ((-1)^n/r^n) (x^{β+n} e^{-x^r})^{(n)}`.
pub fn type2_rodrigues(n: usize, w: &StarWeight) -> Result<Type2Poly> {
    let poly = rodrigues(n, w, ComplexPoly::one(w.bits()))?;
    Ok(Type2Poly {
        poly,
        index: DiagonalIndex::diagonal(n, w.r())?,
        beta: w.beta().clone(),
        precision: w.precision(),
    })
}

/// `Γ((β+n+2)/r) / Γ((β+n+1)/r)`.
fn first_moment_ratio(n: usize, w: &StarWeight) -> Result<Float> {
    let bits = w.bits();
    let r = w.r();
    let a = Float::with_val(bits, w.beta() + (n as u64 + 2)) / r;
    let b = Float::with_val(bits, w.beta() + (n as u64 + 1)) / r;
    gamma_ratio(&a, &b)
}

/// `b_{n,k} = Γ((β+n+2)/r)/Γ((β+n+1)/r) ω^{k-1}`, `r > 1`.
pub fn type2_recurrence_coeff_b(n: usize, k: u32, w: &StarWeight) -> Result<Complex> {
    let r = w.r();
    if r == 1 {
        return Err(Error::Unsupported("b_{n,k} is only given for r > 1".into()));
    }
    if k == 0 || k > r {
        return Err(domain!("direction k = {k} outside 1..={r}"));
    }
    let g = first_moment_ratio(n, w)?;
    let roots = RootTable::new(r, w.bits());
    Ok(Complex::with_val(w.bits(), roots.pow(k as i64 - 1) * g))
}

/// Type I `a` coefficients with the type II `b_{n,k}`.
pub fn type2_recurrence_coeffs(n: usize, k: u32, w: &StarWeight) -> Result<RecurrenceCoeffs> {
    let a = type1_recurrence_coeffs(n, k, w)?.a;
    Ok(RecurrenceCoeffs { a, b: Some(type2_recurrence_coeff_b(n, k, w)?) })
}

/// `L_{n+e_k}(x; β) = x L_n(x; β+1) - b_{n,k} L_n(x; β)`, with the same `b`
/// for `r = 1`.
pub fn type2_above(n: usize, k: u32, w: &StarWeight) -> Result<Type2Poly> {
    let r = w.r();
    let index = DiagonalIndex::above(n, r, k)?;
    let bits = w.bits();
    let beta1 = Float::with_val(bits, w.beta() + 1u32);
    let shifted = diagonal_poly(n, r, &beta1, bits)?.shift(1);
    let g = first_moment_ratio(n, w)?;
    let b = Complex::with_val(bits, RootTable::new(r, bits).pow(k as i64 - 1) * g);
    let poly = &shifted - &diagonal_poly(n, r, w.beta(), bits)?.scale(&b);
    Ok(Type2Poly { poly, index, beta: w.beta().clone(), precision: w.precision() })
}

/// `L_{n+e_k}` from `n` weighted derivatives of `x^{β+n} e^{-x^r} L_{e_k}(x; β+n)`,
/// where `L_{e_k}(x; β+n) = x - Γ((β+n+2)/r)/Γ((β+n+1)/r) ω^{k-1}`.
pub fn type2_rodrigues_above(n: usize, k: u32, w: &StarWeight) -> Result<Type2Poly> {
    let r = w.r();
    let index = DiagonalIndex::above(n, r, k)?;
    let bits = w.bits();
    let g = first_moment_ratio(n, w)?;
    let c0 = -Complex::with_val(bits, RootTable::new(r, bits).pow(k as i64 - 1) * g);
    let start = ComplexPoly::from_coeffs(vec![c0, Complex::with_val(bits, 1)], bits);
    let poly = rodrigues(n, w, start)?;
    Ok(Type2Poly { poly, index, beta: w.beta().clone(), precision: w.precision() })
}

/// Monic polynomial of degree `Σ degrees` orthogonal to `x^k`, `k < degrees[j-1]`,
/// on every ray `j`, found by solving the moment system directly.
///
/// The system is solved at four times the working precision and the result is
/// checked against the orthogonality conditions at working precision. Only
/// small multi-indices are practical.
pub fn type2_from_moments(degrees: &[usize], w: &StarWeight) -> Result<ComplexPoly> {
    let r = w.r();
    if degrees.len() != r as usize {
        return Err(domain!("multi-index has {} entries, expected r = {r}", degrees.len()));
    }
    let total: usize = degrees.iter().sum();
    let hi = w.with_precision(Precision::new(4 * w.precision().digits())?);
    let bits = hi.bits();
    let max_k = degrees.iter().copied().max().unwrap_or(0);
    let moments = MomentTable::new(&hi, max_k + total + 1)?;
    let roots = RootTable::new(r, bits);
    // ∫ over ray j of x^m w = ω^{(j-1)(m+1)} M(m)
    let ray = |j: usize, m: usize| Complex::with_val(bits, roots.pow(j as i64 * (m as i64 + 1)) * moments.get(m));
    let mut rows = Vec::with_capacity(total);
    let mut rhs = Vec::with_capacity(total);
    for (j, &nj) in degrees.iter().enumerate() {
        for k in 0..nj {
            rows.push((0..total).map(|i| ray(j, k + i)).collect());
            rhs.push(-ray(j, k + total));
        }
    }
    let mut coeffs = solve_complex(rows, rhs, bits)?;
    coeffs.push(Complex::with_val(bits, 1));
    let poly = ComplexPoly::from_coeffs(coeffs, bits).with_bits(w.bits());
    let res = type2_residuals(&poly, w, degrees)?;
    let worst = max_type2_residual(&res, w.bits());
    if worst > w.precision().tolerance(10) {
        return Err(Error::Precision(format!("moment solve left a residual of {:e}", worst.to_f64())));
    }
    Ok(poly)
}

/// `x L_n - L_{n+e_k} - b_{n,k} L_n - Σ_ℓ a_{n,ℓ} L_{n-e_ℓ}`, `n ≥ 1`, `r ≥ 2`.
///
/// The below-diagonal polynomials come from [`type2_from_moments`].
pub fn type2_recurrence_residual(n: usize, k: u32, w: &StarWeight) -> Result<PolyResidual> {
    let r = w.r();
    if r < 2 {
        return Err(Error::Unsupported("the type II recurrence check needs r > 1".into()));
    }
    if n == 0 {
        return Err(domain!("the recurrence check needs n >= 1"));
    }
    let bits = w.bits();
    let coeffs = type2_recurrence_coeffs(n, k, w)?;
    let on = type2_diagonal(n, w)?.poly;
    let x_on = on.shift(1);
    let up = type2_above(n, k, w)?.poly;
    let b_on = on.scale(coeffs.b()?);
    let mut below = Vec::with_capacity(r as usize);
    for (l, a) in coeffs.a.iter().enumerate() {
        let mut degrees = vec![n; r as usize];
        degrees[l] -= 1;
        below.push(type2_from_moments(&degrees, w)?.scale(a));
    }
    let mut terms: Vec<(i32, &ComplexPoly)> = vec![(1, &x_on), (-1, &up), (-1, &b_on)];
    terms.extend(below.iter().map(|p| (-1, p)));
    Ok(PolyResidual::from_terms(&terms, bits))
}

/// `b_{k,n} = (-1)^{k+1} C(n,k) (r-k+1)_{k-1} / r^{k-2}` for `k = 1..=r`,
/// requiring `n ≥ r+1`.
pub fn type2_lowering_coeffs(n: usize, r: u32) -> Result<Vec<Rational>> {
    if r == 0 {
        return Err(domain!("r must be positive"));
    }
    if n < r as usize + 1 {
        return Err(domain!("the lowering identity is stated for n >= r + 1 = {}, got n = {n}", r + 1));
    }
    Ok((1..=r)
        .map(|k| {
            let mut poch = Integer::from(1);
            for i in 0..k - 1 {
                poch *= r - k + 1 + i;
            }
            let num = binomial(n as u32, k) * poch;
            let mut v = Rational::from(num) * Rational::from(r).pow(2 - k as i32);
            if k % 2 == 0 {
                v = -v;
            }
            v
        })
        .collect())
}

/// `L_n'(x; β) - Σ_k b_{k,n} x^{r-1} L_{n-k}(x; β+k)`.
pub fn type2_lowering_residual(n: usize, w: &StarWeight) -> Result<PolyResidual> {
    let r = w.r();
    let bits = w.bits();
    let coeffs = type2_lowering_coeffs(n, r)?;
    let lhs = diagonal_poly(n, r, w.beta(), bits)?.derivative(1);
    let mut rhs = ComplexPoly::zero(bits);
    for (i, b) in coeffs.iter().enumerate() {
        let k = i + 1;
        let beta_k = Float::with_val(bits, w.beta() + k as u64);
        let term = diagonal_poly(n - k, r, &beta_k, bits)?
            .shift(r as usize - 1)
            .scale_real(&Float::with_val(bits, b));
        rhs = &rhs + &term;
    }
    Ok(PolyResidual::from_terms(&[(1, &lhs), (-1, &rhs)], bits))
}

/// `x^{1-β} e^{x^r} (x^β e^{-x^r} L_n(x; β))' + r L_{n+1}(x; β-1)`, `β > 0`.
pub fn type2_raising_residual(n: usize, w: &StarWeight) -> Result<PolyResidual> {
    if *w.beta() <= 0 {
        return Err(domain!("the raising identity needs beta > 0"));
    }
    let r = w.r();
    let bits = w.bits();
    let l = diagonal_poly(n, r, w.beta(), bits)?;
    let lhs = weighted_derivative(&WeightedForm::new(w.beta().clone(), l), r).poly;
    let beta_m1 = Float::with_val(bits, w.beta() - 1u32);
    let rhs = diagonal_poly(n + 1, r, &beta_m1, bits)?.scale_real(&Float::with_val(bits, r));
    Ok(PolyResidual::from_terms(&[(1, &lhs), (1, &rhs)], bits))
}

/// `c_{k,n} = r C(r,k) [(n+k+1)_{r-k} - (k+1)_{r-k}]` for `k = 0..r`.
pub fn type2_ode_coeffs(n: usize, r: u32) -> Vec<Integer> {
    let rising = |a: u64, m: u32| (0..m as u64).fold(Integer::from(1), |acc, i| acc * (a + i));
    (0..r)
        .map(|k| {
            let d = rising(n as u64 + k as u64 + 1, r - k) - rising(k as u64 + 1, r - k);
            binomial(r, k) * d * r
        })
        .collect()
}

/// The order-`r+1` equation
/// `[x^{β+1} e^{-x^r} y']^{(r)} + Σ_{k<r} c_{k,n} x^k [x^β e^{-x^r} y]^{(k)} = 0`
/// for `y = L_n(x; β)`, after stripping `x^{β+1-r} e^{-x^r}`.
pub fn type2_ode_poly_residual(n: usize, w: &StarWeight) -> Result<PolyResidual> {
    let r = w.r();
    if Float::with_val(w.bits(), w.beta() - (r as i64 - 2)) <= 0 {
        return Err(domain!("the type II equation needs beta > r - 2"));
    }
    let bits = w.bits();
    let y = diagonal_poly(n, r, w.beta(), bits)?;
    let first = WeightedForm::new(Float::with_val(bits, w.beta() + 1u32), y.derivative(1));
    let p1 = weighted_derivative_n(&first, r, r as usize).poly;
    let mut owned = vec![p1];
    let mut form = WeightedForm::new(w.beta().clone(), y);
    for c in type2_ode_coeffs(n, r) {
        // x^k [x^β e^{-x^r} y]^{(k)} = x^{β} e^{-x^r} Q_k; relative to x^{β+1-r} that is x^{r-1} Q_k.
        owned.push(form.poly.shift(r as usize - 1).scale_real(&Float::with_val(bits, c)));
        form = weighted_derivative(&form, r);
    }
    let terms: Vec<_> = owned.iter().map(|t| (1, t)).collect();
    Ok(PolyResidual::from_terms(&terms, bits))
}

/// Worst of the coefficient-wise relative residual of the type II equation and
/// its relative size at the given sample points.
pub fn type2_ode_residual(n: usize, w: &StarWeight, sample_points: &[Complex]) -> Result<Float> {
    let res = type2_ode_poly_residual(n, w)?;
    let bits = w.bits();
    let mut worst = res.relative();
    for z in sample_points {
        let v = cabs(&res.residual.eval(z));
        let mut scale = Float::new(bits);
        let mut zp = Complex::with_val(bits, 1);
        for c in res.residual.coeffs() {
            scale += cabs(c) * cabs(&zp);
            zp *= z;
        }
        let mut s = res.scale.clone();
        let za = cabs(z);
        if za > 1 {
            s *= za.pow(res.residual.degree().unwrap_or(0) as u32);
        }
        let denom = s.max(&scale);
        if !denom.is_zero() {
            worst.max_mut(&(v / denom));
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::type2_residuals;

    fn w(r: u32, beta: f64) -> StarWeight {
        StarWeight::new(r, beta, Precision::default()).unwrap()
    }

    fn tol() -> Float {
        Precision::default().tolerance(10)
    }

    fn close(a: &ComplexPoly, b: &ComplexPoly) -> bool {
        let z = Float::new(a.bits());
        a.approx_eq(b, &z, &tol())
    }

    fn orth(l: &ComplexPoly, wt: &StarWeight, degrees: &[usize]) -> Float {
        max_type2_residual(&type2_residuals(l, wt, degrees).unwrap(), wt.bits())
    }

    #[test]
    fn small_diagonal_cases() {
        let wt = w(3, 0.4);
        let l0 = type2_diagonal(0, &wt).unwrap();
        assert_eq!(l0.poly, ComplexPoly::one(wt.bits()));
        let l1 = type2_diagonal(1, &wt).unwrap().poly;
        let c0 = -Float::with_val(wt.bits(), wt.beta() + 1u32) / 3u32;
        let expect = ComplexPoly::from_coeffs(
            vec![Complex::with_val(wt.bits(), (c0, 0)), Complex::new(wt.bits()), Complex::new(wt.bits()), Complex::with_val(wt.bits(), 1)],
            wt.bits(),
        );
        assert!(close(&l1, &expect));
        assert!(close(&type2_rodrigues(1, &wt).unwrap().poly, &expect));
    }

    #[test]
    fn diagonal_structure_and_rodrigues() {
        for r in 1..=4u32 {
            for beta in [-0.5, 0.0, 1.5] {
                let wt = w(r, beta);
                for n in [0usize, 1, 2, 5, 9, 15] {
                    let l = type2_diagonal(n, &wt).unwrap().poly;
                    assert_eq!(l.degree(), Some(r as usize * n));
                    assert_eq!(*l.leading().unwrap(), 1);
                    assert!(l.is_real());
                    for (i, c) in l.coeffs().iter().enumerate() {
                        if i % r as usize != 0 {
                            assert!(c.is_zero());
                        }
                    }
                    let rod = type2_rodrigues(n, &wt).unwrap().poly;
                    assert!(close(&l, &rod), "r={r} β={beta} n={n}");
                }
            }
        }
    }

    #[test]
    fn diagonal_orthogonality() {
        let wt = w(2, 0.0);
        let l = type2_diagonal(6, &wt).unwrap().poly;
        assert!(orth(&l, &wt, &[6, 6]) <= tol());
        let wt = w(3, 1.25);
        let l = type2_diagonal(5, &wt).unwrap().poly;
        assert!(orth(&l, &wt, &[5, 5, 5]) <= tol());
    }

    #[test]
    fn large_degree_sums_certify() {
        let wt = w(2, 0.0);
        let l = type2_diagonal(120, &wt).unwrap().poly;
        assert_eq!(l.degree(), Some(240));
        assert!(close(&l, &type2_rodrigues(120, &wt).unwrap().poly));
    }

    #[test]
    fn above_diagonal() {
        let wt = w(3, 0.5);
        let l = type2_above(0, 2, &wt).unwrap().poly;
        let g = first_moment_ratio(0, &wt).unwrap();
        let w1 = RootTable::new(3, wt.bits()).pow(1).clone();
        assert!(Float::with_val(wt.bits(), (l.coeff(0) + w1 * g).abs_ref()) <= tol());

        let wt = w(2, 0.5);
        let l = type2_above(3, 2, &wt).unwrap().poly;
        assert_eq!(l.degree(), Some(7));
        assert!(orth(&l, &wt, &[3, 4]) <= tol());

        for r in 1..=3u32 {
            let wt = w(r, 0.75);
            for n in 0..=10usize {
                for k in 1..=r {
                    let a = type2_above(n, k, &wt).unwrap().poly;
                    let b = type2_rodrigues_above(n, k, &wt).unwrap().poly;
                    assert!(close(&a, &b), "r={r} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn recurrence_b() {
        let wt = w(3, 0.0);
        let roots = RootTable::new(3, wt.bits());
        let b1 = type2_recurrence_coeff_b(4, 1, &wt).unwrap();
        for k in 1..=3u32 {
            let bk = type2_recurrence_coeff_b(4, k, &wt).unwrap();
            let d = Complex::with_val(wt.bits(), &bk - Complex::with_val(wt.bits(), &b1 * roots.pow(k as i64 - 1)));
            assert!(Float::with_val(wt.bits(), d.abs_ref()) <= tol());
            // b = -(coefficient of x^{rn} in L_{n+e_k})
            let up = type2_above(4, k, &wt).unwrap().poly;
            let d = Complex::with_val(wt.bits(), &bk + up.coeff(12));
            assert!(Float::with_val(wt.bits(), d.abs_ref()) <= tol());
        }
        assert!(matches!(type2_recurrence_coeff_b(2, 1, &w(1, 0.0)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn recurrence_residual_vanishes() {
        for (n, r, k) in [(2usize, 2u32, 1u32), (3, 3, 2), (1, 2, 2), (3, 2, 2)] {
            let wt = w(r, 0.5);
            let res = type2_recurrence_residual(n, k, &wt).unwrap();
            assert!(res.relative() <= tol(), "n={n} r={r} k={k}: {:e}", res.relative().to_f64());
        }
    }

    #[test]
    fn lowering_coefficients_and_identity() {
        for r in 1..=4u32 {
            let n = r as usize + 3;
            let c = type2_lowering_coeffs(n, r).unwrap();
            assert_eq!(c[0], Rational::from(n as u64 * r as u64));
        }
        assert_eq!(type2_lowering_coeffs(5, 1).unwrap(), vec![Rational::from(5)]);
        assert!(type2_lowering_coeffs(3, 3).is_err());
        let res = type2_lowering_residual(8, &w(3, 0.5)).unwrap();
        assert!(res.relative() <= tol());
    }

    #[test]
    fn raising_identity() {
        for r in 1..=4u32 {
            let wt = w(r, 1.5);
            for n in 0..=8usize {
                assert!(type2_raising_residual(n, &wt).unwrap().relative() <= tol());
            }
        }
        assert!(type2_raising_residual(2, &w(2, 0.0)).is_err());
    }

    #[test]
    fn ode_residuals() {
        for n in 0..6usize {
            assert_eq!(type2_ode_coeffs(n, 1), vec![Integer::from(n)]);
        }
        let pts = [Complex::with_val(200, (0.3, 0.0)), Complex::with_val(200, (2.0, 1.0))];
        let wt = w(2, 1.0);
        assert!(type2_ode_residual(5, &wt, &pts).unwrap() <= Precision::default().tolerance(12));
        let wt = w(3, 2.0);
        assert!(type2_ode_residual(1, &wt, &pts).unwrap() <= tol());
        for r in 1..=4u32 {
            let wt = w(r, r as f64 - 1.5);
            for n in 0..=10usize {
                assert!(type2_ode_residual(n, &wt, &[]).unwrap() <= tol(), "r={r} n={n}");
            }
        }
        assert!(matches!(type2_ode_residual(3, &w(3, 1.0), &[]), Err(Error::Domain(_))));
    }
}
