//! Type I vectors `(A_{n,1}, ..., A_{n,r})` on the diagonal and one step above
//! or below it, built from the kernel polynomials `p_n(x; β)`.

use rug::ops::Pow;
use rug::{Complex, Float, Integer};

use crate::error::{domain, Error, Result};
use crate::moments::StarWeight;
use crate::numerics::{binomial, factorial, log_gamma, recip_gamma, Precision, RootTable};
use crate::polynomials::{weighted_derivative, ComplexPoly, PolyResidual, WeightedForm};

/// Direction of the unit step away from the diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Up,
    Down,
}

/// The multi-index `(n, ..., n)` or `(n, ..., n) ± e_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalIndex {
    pub n: usize,
    pub r: u32,
    pub shift: Option<(u32, Direction)>,
}

impl DiagonalIndex {
    pub fn diagonal(n: usize, r: u32) -> Result<Self> {
        check_r(r)?;
        Ok(DiagonalIndex { n, r, shift: None })
    }

    pub fn above(n: usize, r: u32, k: u32) -> Result<Self> {
        check_r(r)?;
        check_k(k, r)?;
        Ok(DiagonalIndex { n, r, shift: Some((k, Direction::Up)) })
    }

    pub fn below(n: usize, r: u32, k: u32) -> Result<Self> {
        check_r(r)?;
        check_k(k, r)?;
        if r == 1 {
            return Err(Error::Unsupported("below-diagonal indices need r > 1".into()));
        }
        if n == 0 {
            return Err(domain!("below-diagonal index needs n >= 1"));
        }
        Ok(DiagonalIndex { n, r, shift: Some((k, Direction::Down)) })
    }

    /// Entries `n_1, ..., n_r`.
    pub fn entries(&self) -> Vec<usize> {
        let mut e = vec![self.n; self.r as usize];
        if let Some((k, dir)) = self.shift {
            let slot = &mut e[k as usize - 1];
            match dir {
                Direction::Up => *slot += 1,
                Direction::Down => *slot -= 1,
            }
        }
        e
    }

    /// `|n| = n_1 + ... + n_r`.
    pub fn total(&self) -> usize {
        self.entries().iter().sum()
    }
}

fn check_r(r: u32) -> Result<()> {
    if r == 0 {
        return Err(domain!("r must be positive"));
    }
    Ok(())
}

fn check_k(k: u32, r: u32) -> Result<()> {
    if k == 0 || k > r {
        return Err(domain!("direction k = {k} outside 1..={r}"));
    }
    Ok(())
}

/// A type I vector together with the multi-index it belongs to.
///
/// `polys[j-1]` lives on ray `j`. The total degree checked by
/// [`crate::moments::type1_residuals`] is `|index|`.
#[derive(Clone, Debug)]
pub struct Type1Vector {
    pub polys: Vec<ComplexPoly>,
    pub index: DiagonalIndex,
    pub beta: Float,
    pub precision: Precision,
}

impl Type1Vector {
    /// Total degree of the orthogonality conditions, `|index|`.
    pub fn total_degree(&self) -> usize {
        self.index.total()
    }
}

/// Coefficients `C(n,k)(-1)^{n-k}/Γ((β+k)/r+1)` of `p_n(x; β)`.
///
/// `1/Γ` is entire, so any real `β` is accepted here.
pub(crate) fn kernel(n: usize, r: u32, beta: &Float, bits: u32) -> ComplexPoly {
    let coeffs = (0..=n)
        .map(|k| {
            let arg = Float::with_val(bits, beta + k as u64) / r + 1u32;
            let mut c = recip_gamma(&arg) * binomial(n as u32, k as u32);
            if (n - k) % 2 == 1 {
                c = -c;
            }
            Complex::with_val(bits, (c, 0))
        })
        .collect();
    ComplexPoly::from_coeffs(coeffs, bits)
}

/// `p_n(x; β) = Σ_k C(n,k) (-1)^{n-k} x^k / Γ((β+k)/r+1)`.
pub fn p_poly(n: usize, w: &StarWeight) -> Result<ComplexPoly> {
    if *w.beta() <= -1 {
        return Err(domain!("beta must exceed -1"));
    }
    Ok(kernel(n, w.r(), w.beta(), w.bits()))
}

/// Leading coefficient `ν_n^{(β)} = 1/Γ((β+n)/r+1)` of `p_n(x; β)`.
pub fn nu(n: usize, r: u32, beta: &Float) -> Float {
    let arg = Float::with_val(beta.prec(), beta + n as u64) / r + 1u32;
    recip_gamma(&arg)
}

/// `Σ_k C(n,k) (-1)^{n-k} k^m`, exactly: zero for `m < n` and `n!` for `m = n`.
pub fn binomial_alternating_sum(n: u32, m: u32) -> Result<Integer> {
    if m > n {
        return Err(domain!("need m <= n, got m = {m}, n = {n}"));
    }
    let mut s = Integer::new();
    for k in 0..=n {
        let term = binomial(n, k) * Integer::from(k).pow(m);
        if (n - k) % 2 == 1 {
            s -= term;
        } else {
            s += term;
        }
    }
    Ok(s)
}

/// `A_{n+1,j}(x) = (r^n/n!) p_n(ω^{-j+1} x)`, multi-index `(n+1, ..., n+1)`.
pub fn type1_diagonal(n: usize, w: &StarWeight) -> Result<Type1Vector> {
    let r = w.r();
    let bits = w.bits();
    let p = p_poly(n, w)?;
    let c = Float::with_val(bits, Integer::from(r).pow(n as u32)) / factorial(n as u32);
    let base = p.scale_real(&c);
    let roots = RootTable::new(r, bits);
    let polys = (1..=r as i64).map(|j| base.compose_linear(roots.pow(1 - j))).collect();
    Ok(Type1Vector {
        polys,
        index: DiagonalIndex::diagonal(n + 1, r)?,
        beta: w.beta().clone(),
        precision: w.precision(),
    })
}

/// Drops coefficients above `degree` that cancel analytically, checking them
/// against `scale · 10^{-(P-10)}` first.
fn drop_cancelled(p: &ComplexPoly, degree: Option<usize>, scale: &Float, precision: Precision) -> Result<ComplexPoly> {
    let tol = Float::with_val(p.bits(), scale * &precision.tolerance(10));
    p.truncate_to(degree, &tol)
}

/// Multi-index `(n, ..., n) + e_k`.
///
/// With `τ A_ℓ = Σ_m ω^{ℓm} p_n(x; β-m)/ν_n^{(β-m)}` the entries are
/// `A_{n+e_k,j}(x) = ω^{-k+1} A_{(j-k) mod r}(ω^{-j+1} x)`.
pub fn type1_above(n: usize, k: u32, w: &StarWeight) -> Result<Type1Vector> {
    let r = w.r();
    let index = DiagonalIndex::above(n, r, k)?;
    let bits = w.bits();
    let beta = w.beta();
    let roots = RootTable::new(r, bits);

    // p_n(x; β-m) / ν_n^{(β-m)}: the Gamma argument (β-m+n)/r+1 stays positive.
    let mut monic = Vec::with_capacity(r as usize);
    for m in 0..r {
        let b = Float::with_val(bits, beta - m);
        let arg = Float::with_val(bits, &b + n as u64) / r + 1u32;
        assert!(arg > 0, "shifted Gamma argument must stay positive");
        let inv_nu = log_gamma(&arg)?.exp();
        monic.push(kernel(n, r, &b, bits).scale_real(&inv_nu));
    }
    let scale = monic.iter().fold(Float::new(bits), |acc, p| acc.max(&p.norm_inf()));

    // τ = n!/r^n Γ((β+n+1)/r)
    let tau_arg = Float::with_val(bits, beta + (n as u64 + 1)) / r;
    let tau = log_gamma(&tau_arg)?.exp() * factorial(n as u32) / Integer::from(r).pow(n as u32);
    let inv_tau = Float::with_val(bits, tau.recip_ref());

    let mut a = Vec::with_capacity(r as usize);
    for l in 0..r as i64 {
        let mut acc = ComplexPoly::zero(bits);
        for (m, q) in monic.iter().enumerate() {
            acc = &acc + &q.scale(roots.pow(l * m as i64));
        }
        let top = if l == 0 { Some(n) } else { n.checked_sub(1) };
        a.push(drop_cancelled(&acc, top, &scale, w.precision())?.scale_real(&inv_tau));
    }

    let k = k as i64;
    let polys = (1..=r as i64)
        .map(|j| {
            let l = (j - k).rem_euclid(r as i64) as usize;
            a[l].compose_linear(roots.pow(1 - j)).scale(roots.pow(1 - k))
        })
        .collect();
    Ok(Type1Vector { polys, index, beta: beta.clone(), precision: w.precision() })
}

/// Multi-index `(n, ..., n) - e_k`, `r > 1`, `n ≥ 1`:
///
/// `γ A_j = ω^{j-1} ν_{n-1}^{(β)} p_{n-1}(ω^{-j+1}x; β-1) - ω^{k-1} ν_{n-1}^{(β-1)} p_{n-1}(ω^{-j+1}x; β)`
/// with `γ = (n-1)!/(r^{n-1} Γ((β+n-1)/r+1))`.
pub fn type1_below(n: usize, k: u32, w: &StarWeight) -> Result<Type1Vector> {
    let r = w.r();
    let index = DiagonalIndex::below(n, r, k)?;
    let bits = w.bits();
    let beta = w.beta();
    let roots = RootTable::new(r, bits);
    let beta_m1 = Float::with_val(bits, beta - 1u32);

    let p_lo = kernel(n - 1, r, &beta_m1, bits).scale_real(&nu(n - 1, r, beta));
    let p_hi = kernel(n - 1, r, beta, bits).scale_real(&nu(n - 1, r, &beta_m1));
    let scale = p_lo.norm_inf().max(&p_hi.norm_inf());

    let gamma_arg = Float::with_val(bits, beta + (n as u64 - 1)) / r + 1u32;
    let inv_gamma = log_gamma(&gamma_arg)?.exp() * Integer::from(r).pow(n as u32 - 1) / factorial(n as u32 - 1);

    let k = k as i64;
    let mut polys = Vec::with_capacity(r as usize);
    for j in 1..=r as i64 {
        let rot = roots.pow(1 - j);
        let first = p_lo.compose_linear(rot).scale(roots.pow(j - 1));
        let second = p_hi.compose_linear(rot).scale(roots.pow(k - 1));
        let diff = &first - &second;
        let top = if j == k { n.checked_sub(2) } else { Some(n - 1) };
        polys.push(drop_cancelled(&diff, top, &scale, w.precision())?.scale_real(&inv_gamma));
    }
    Ok(Type1Vector { polys, index, beta: beta.clone(), precision: w.precision() })
}

/// Nearest-neighbour recurrence coefficients at `(n, ..., n)`: `a[ℓ-1] = a_{n,ℓ}`
/// for every direction and `b = b_{n-e_k,k}` when `r > 1`.
#[derive(Clone, Debug)]
pub struct RecurrenceCoeffs {
    pub a: Vec<Complex>,
    pub b: Option<Complex>,
}

impl RecurrenceCoeffs {
    pub fn b(&self) -> Result<&Complex> {
        self.b
            .as_ref()
            .ok_or_else(|| Error::Unsupported("b coefficient only exists for r > 1".into()))
    }
}

/// `a_{n,ℓ} = (n/r²) Γ((n+β+1)/r)/Γ((n+β-1)/r+1) ω^{2(ℓ-1)}` and
/// `b_{n-e_k,k} = Γ((n+β-1)/r+1)/Γ((n+β-2)/r+1) ω^{k-1}`.
pub fn type1_recurrence_coeffs(n: usize, k: u32, w: &StarWeight) -> Result<RecurrenceCoeffs> {
    let r = w.r();
    check_k(k, r)?;
    if n == 0 {
        return Err(domain!("recurrence coefficients need n >= 1"));
    }
    let bits = w.bits();
    let beta = w.beta();
    let roots = RootTable::new(r, bits);
    let nb = Float::with_val(bits, beta + n as u64);

    let g1 = log_gamma(&(Float::with_val(bits, &nb + 1u32) / r))?;
    let g2 = log_gamma(&(Float::with_val(bits, &nb - 1u32) / r + 1u32))?;
    let a0 = (g1 - &g2).exp() * n as u64 / (r * r);
    let a = (0..r as i64)
        .map(|l| Complex::with_val(bits, roots.pow(2 * l) * &a0))
        .collect();

    let b = if r > 1 {
        let g3 = log_gamma(&(Float::with_val(bits, &nb - 2u32) / r + 1u32))?;
        let b0 = (g2 - g3).exp();
        Some(Complex::with_val(bits, roots.pow(k as i64 - 1) * b0))
    } else {
        None
    };
    Ok(RecurrenceCoeffs { a, b })
}

/// `x A_{n,j} - A_{n-e_k,j} - b_{n-e_k,k} A_{n,j} - Σ_ℓ a_{n,ℓ} A_{n+e_ℓ,j}`.
pub fn type1_recurrence_residual(n: usize, j: u32, k: u32, w: &StarWeight) -> Result<PolyResidual> {
    let r = w.r();
    check_k(j, r)?;
    if r < 2 {
        return Err(Error::Unsupported("the recurrence check needs below-diagonal vectors, r > 1".into()));
    }
    if n == 0 {
        return Err(domain!("the recurrence check needs n >= 1"));
    }
    let bits = w.bits();
    let coeffs = type1_recurrence_coeffs(n, k, w)?;
    let ji = j as usize - 1;
    let on = type1_diagonal(n - 1, w)?.polys.swap_remove(ji);
    let below = type1_below(n, k, w)?.polys.swap_remove(ji);
    let x_on = on.shift(1);
    let b_on = on.scale(coeffs.b()?);
    let mut above = Vec::with_capacity(r as usize);
    for (l, a) in coeffs.a.iter().enumerate() {
        above.push(type1_above(n, l as u32 + 1, w)?.polys.swap_remove(ji).scale(a));
    }
    let mut terms: Vec<(i32, &ComplexPoly)> = vec![(1, &x_on), (-1, &below), (-1, &b_on)];
    terms.extend(above.iter().map(|p| (-1, p)));
    Ok(PolyResidual::from_terms(&terms, bits))
}

/// Coefficients `c_{0,n}, ..., c_{r,n}` of the order-`r+1` equation
/// `x y^{(r+1)} + (β+r) y^{(r)} + Σ_k c_{k,n} x^k y^{(k)} = 0`, with
/// `c_{k,n} = (-1)^{r+1+k} C(r,k) r (n-r+1)_{r-k}`.
pub fn type1_ode_coeffs(n: usize, r: u32) -> Vec<Integer> {
    (0..=r)
        .map(|k| {
            let mut poch = Integer::from(1);
            for i in 0..(r - k) as i64 {
                poch *= n as i64 - r as i64 + 1 + i;
            }
            let mut c = binomial(r, k) * poch * r;
            if (r + 1 + k) % 2 == 1 {
                c = -c;
            }
            c
        })
        .collect()
}

/// Residual of the order-`r+1` equation applied to `p_n(x; β)`.
pub fn type1_ode_residual(n: usize, w: &StarWeight) -> Result<PolyResidual> {
    let r = w.r();
    let bits = w.bits();
    let p = p_poly(n, w)?;
    let mut owned = vec![
        p.derivative(r as usize + 1).shift(1),
        p.derivative(r as usize)
            .scale_real(&Float::with_val(bits, w.beta() + r)),
    ];
    for (k, c) in type1_ode_coeffs(n, r).into_iter().enumerate() {
        owned.push(p.derivative(k).shift(k).scale_real(&Float::with_val(bits, c)));
    }
    let terms: Vec<_> = owned.iter().map(|t| (1, t)).collect();
    Ok(PolyResidual::from_terms(&terms, bits))
}

/// `p_n'(x; β) - n p_{n-1}(x; β+1)`.
pub fn type1_lowering_residual(n: usize, w: &StarWeight) -> Result<PolyResidual> {
    if n == 0 {
        return Err(domain!("the lowering identity needs n >= 1"));
    }
    let bits = w.bits();
    let lhs = p_poly(n, w)?.derivative(1);
    let beta1 = Float::with_val(bits, w.beta() + 1u32);
    let rhs = kernel(n - 1, w.r(), &beta1, bits).scale_real(&Float::with_val(bits, n as u64));
    Ok(PolyResidual::from_terms(&[(1, &lhs), (-1, &rhs)], bits))
}

/// `x^{1-β} e^{x^r} (x^β e^{-x^r} p_n(x; β))'` against
/// `Σ_k (-1)^k C(r,k) r x^{r-k} p_{n+k}(x; β-k)`.
pub fn type1_raising_residual(n: usize, w: &StarWeight) -> Result<PolyResidual> {
    let r = w.r();
    let bits = w.bits();
    let lhs = weighted_derivative(&WeightedForm::new(w.beta().clone(), p_poly(n, w)?), r).poly;
    let mut rhs = ComplexPoly::zero(bits);
    for k in 1..=r {
        let b = Float::with_val(bits, w.beta() - k);
        let mut c = Float::with_val(bits, binomial(r, k) * r);
        if k % 2 == 1 {
            c = -c;
        }
        let term = kernel(n + k as usize, r, &b, bits).shift((r - k) as usize).scale_real(&c);
        rhs = &rhs + &term;
    }
    Ok(PolyResidual::from_terms(&[(1, &lhs), (-1, &rhs)], bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::{ray_integral, type1_residuals, Type1Summary};

    fn w(r: u32, beta: f64) -> StarWeight {
        StarWeight::new(r, beta, Precision::default()).unwrap()
    }

    fn tol() -> Float {
        Precision::default().tolerance(10)
    }

    fn assert_vector(v: &Type1Vector, wt: &StarWeight) {
        let res = type1_residuals(&v.polys, wt, v.total_degree()).unwrap();
        let s = Type1Summary::from_residuals(&res).unwrap();
        assert!(
            s.passes(&tol()),
            "{:?}: orth {:e}, norm {:e}",
            v.index,
            s.max_orthogonality.to_f64(),
            s.normalization_error.to_f64()
        );
    }

    #[test]
    fn p_poly_small_cases() {
        let wt = w(3, 0.7);
        let p0 = p_poly(0, &wt).unwrap();
        assert_eq!(p0.degree(), Some(0));
        let expect = nu(0, 3, wt.beta());
        assert!((p0.coeff(0).real().clone() - expect).abs() <= tol());

        let p1 = p_poly(1, &w(1, 0.0)).unwrap();
        assert!((p1.coeff(1).real().clone() - 1u32).abs() <= tol());
        assert!((p1.coeff(0).real().clone() + 1u32).abs() <= tol());
        assert!(p1.is_real());
    }

    #[test]
    fn p_poly_orthogonality_and_normalization() {
        let wt = w(2, 0.5);
        let p = p_poly(6, &wt).unwrap();
        let b = wt.bits();
        for j in 1..=6 {
            let v = ray_integral(&p, 2 * j - 1, 1, &wt).unwrap();
            assert!(Float::with_val(b, v.abs_ref()) <= tol(), "j={j}");
        }
        let norm = ray_integral(&p, 2 * 6 + 1, 1, &wt).unwrap();
        let expect = Float::with_val(b, 720) / 128u32;
        assert!((norm.real().clone() - expect).abs() <= tol());
    }

    #[test]
    fn alternating_sums() {
        assert_eq!(binomial_alternating_sum(3, 0).unwrap(), 0);
        assert_eq!(binomial_alternating_sum(3, 3).unwrap(), 6);
        assert_eq!(binomial_alternating_sum(0, 0).unwrap(), 1);
        for n in 0..10u32 {
            for m in 0..n {
                assert_eq!(binomial_alternating_sum(n, m).unwrap(), 0);
            }
            assert_eq!(binomial_alternating_sum(n, n).unwrap(), factorial(n));
        }
        assert!(binomial_alternating_sum(2, 3).is_err());
    }

    #[test]
    fn diagonal_vectors() {
        let wt = w(4, 0.3);
        let v = type1_diagonal(0, &wt).unwrap();
        for p in &v.polys {
            assert_eq!(p.degree(), Some(0));
            assert!((p.coeff(0).real().clone() - nu(0, 4, wt.beta())).abs() <= tol());
        }
        let wt = w(2, 0.0);
        let v = type1_diagonal(3, &wt).unwrap();
        assert_eq!(v.total_degree(), 8);
        assert_vector(&v, &wt);
        for p in &v.polys {
            assert_eq!(p.degree(), Some(3));
        }
    }

    #[test]
    fn above_vectors() {
        let wt = w(3, 0.25);
        let v = type1_above(4, 2, &wt).unwrap();
        assert_eq!(v.total_degree(), 13);
        assert_vector(&v, &wt);
        for (j, p) in v.polys.iter().enumerate() {
            let expect = if j == 1 { 4 } else { 3 };
            assert_eq!(p.degree(), Some(expect), "j={}", j + 1);
        }
        let wt = w(1, 1.5);
        assert_vector(&type1_above(5, 1, &wt).unwrap(), &wt);
    }

    #[test]
    fn below_vectors() {
        let wt = w(2, 0.0);
        let v = type1_below(5, 1, &wt).unwrap();
        assert_eq!(v.total_degree(), 9);
        assert_vector(&v, &wt);
        assert_eq!(v.polys[0].degree(), Some(3));
        assert_eq!(v.polys[1].degree(), Some(4));

        let wt = w(3, 0.0);
        let v = type1_below(1, 2, &wt).unwrap();
        assert!(v.polys[1].is_zero());
        assert_vector(&v, &wt);

        assert!(matches!(type1_below(3, 1, &w(1, 0.0)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn recurrence_coefficients() {
        for beta in [0.0, 0.5, 2.25] {
            let wt = w(1, beta);
            for n in 1..8usize {
                let c = type1_recurrence_coeffs(n, 1, &wt).unwrap();
                let expect = Float::with_val(wt.bits(), beta + n as f64) * n as u64;
                let d = Float::with_val(wt.bits(), c.a[0].real() - &expect).abs();
                assert!(d <= Float::with_val(wt.bits(), &expect * tol()));
                assert!(matches!(c.b(), Err(Error::Unsupported(_))));
            }
        }
        let wt = w(3, 0.5);
        let c = type1_recurrence_coeffs(4, 1, &wt).unwrap();
        let roots = RootTable::new(3, wt.bits());
        for k in 0..3i64 {
            let ratio = Complex::with_val(wt.bits(), &c.a[k as usize] / &c.a[0]);
            let d = Complex::with_val(wt.bits(), ratio - roots.pow(2 * k));
            assert!(Float::with_val(wt.bits(), d.abs_ref()) <= tol());
        }
    }

    #[test]
    fn b_matches_value_solved_from_recurrence() {
        let wt = w(2, 0.5);
        let (n, k) = (3usize, 1u32);
        let bits = wt.bits();
        let c = type1_recurrence_coeffs(n, k, &wt).unwrap();
        let on = type1_diagonal(n - 1, &wt).unwrap().polys[0].clone();
        let mut rest = &on.shift(1) - &type1_below(n, k, &wt).unwrap().polys[0];
        for (l, a) in c.a.iter().enumerate() {
            rest = &rest - &type1_above(n, l as u32 + 1, &wt).unwrap().polys[0].scale(a);
        }
        // rest = b · on, so every coefficient ratio is b.
        for i in 0..=n - 1 {
            let solved = Complex::with_val(bits, rest.coeff(i) / on.coeff(i));
            let d = Complex::with_val(bits, &solved - c.b().unwrap());
            assert!(Float::with_val(bits, d.abs_ref()) <= tol(), "coefficient {i}");
        }
    }

    #[test]
    fn recurrence_residual_vanishes() {
        for (n, r, j, k) in [(2usize, 2u32, 1u32, 1u32), (3, 3, 2, 3), (1, 2, 2, 1), (4, 3, 1, 2)] {
            let wt = w(r, 0.5);
            let res = type1_recurrence_residual(n, j, k, &wt).unwrap();
            assert!(res.relative() <= tol(), "n={n} r={r} j={j} k={k}: {:e}", res.relative().to_f64());
        }
    }

    #[test]
    fn ode_coefficients() {
        for n in 0..6usize {
            let c = type1_ode_coeffs(n, 1);
            assert_eq!(c, vec![Integer::from(n), Integer::from(-1)]);
        }
        for r in 1..6u32 {
            for n in 0..6usize {
                assert_eq!(*type1_ode_coeffs(n, r).last().unwrap(), -(r as i64));
            }
        }
        let res = type1_ode_residual(7, &w(3, 0.5)).unwrap();
        assert!(res.relative() <= tol());
    }

    #[test]
    fn lowering_and_raising() {
        for r in 1..=4u32 {
            for beta in [-0.5, 0.0, 1.5] {
                let wt = w(r, beta);
                for n in 1..=8usize {
                    assert!(type1_lowering_residual(n, &wt).unwrap().relative() <= tol());
                    assert!(type1_raising_residual(n, &wt).unwrap().relative() <= tol(), "r={r} β={beta} n={n}");
                }
            }
        }
    }

    #[test]
    fn index_bookkeeping() {
        assert_eq!(DiagonalIndex::above(3, 2, 2).unwrap().entries(), vec![3, 4]);
        assert_eq!(DiagonalIndex::below(3, 3, 1).unwrap().total(), 8);
        assert!(DiagonalIndex::below(0, 3, 1).is_err());
        assert!(DiagonalIndex::above(3, 3, 4).is_err());
    }
}
