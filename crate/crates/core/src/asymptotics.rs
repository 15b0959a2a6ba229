//! Limiting zero densities after rescaling by `α_r n^{1/r}`.
//!
//! Both densities are parametrized by `θ ∈ (0, π/(r+1))` through
//! `x̂ = x^r = sin^{r+1}((r+1)θ) / (c_r sin^r(rθ) sin θ)`, `c_r = (r+1)^{r+1}/r^r`.
//! The density of `x̂` is
//! `w_r = sin θ sin rθ sin (r+1)θ / (π x̂ |sin((r+1)θ) e^{iθ} - sin rθ|²)`,
//! and since `|sin((r+1)θ) e^{iθ} - sin rθ| = sin θ` this is evaluated as
//! `sin rθ sin (r+1)θ / (π x̂ sin θ)`.
//!
//! MPFR routines serve the exact checks; `f64` routines serve quadrature, the
//! CDF and KS distances. There `x̂` is written through `ln(sin t / t)`, summed
//! as a series for small `t`, and the left end of the support is located by
//! `δ = π/(r+1) - θ` rather than `θ`.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::sync::Mutex;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float};

use crate::error::{domain, Error, Result};
use crate::numerics::{cabs, Precision};
use crate::zeros::ZeroSet;

/// Grid size of the monotonicity check of `θ ↦ x̂`.
const MONOTONE_GRID: usize = 10_000;

static MONOTONE_CHECKED: Mutex<BTreeSet<u32>> = Mutex::new(BTreeSet::new());

/// `α_r = ((r+1)/r)^{(r+1)/r}`.
pub fn alpha_r(r: u32, precision: Precision) -> Result<Float> {
    if r == 0 {
        return Err(domain!("r must be positive"));
    }
    let bits = precision.bits();
    let base = Float::with_val(bits, r + 1) / r;
    let e = Float::with_val(bits, r + 1) / r;
    Ok(base.pow(e))
}

pub fn alpha_r_f64(r: u32) -> f64 {
    let q = (r as f64 + 1.0) / r as f64;
    q.powf(q)
}

/// `c_r = (r+1)^{r+1} / r^r = r α_r^r`.
fn c_r(r: u32, bits: u32) -> Float {
    Float::with_val(bits, Float::u_pow_u(r + 1, r + 1)) / Float::with_val(bits, Float::u_pow_u(r, r))
}

fn theta_max(r: u32, bits: u32) -> Float {
    Float::with_val(bits, Constant::Pi) / (r + 1)
}

fn check_theta(theta: &Float, r: u32) -> Result<()> {
    if r == 0 {
        return Err(domain!("r must be positive"));
    }
    if !(*theta > 0 && *theta < theta_max(r, theta.prec())) {
        return Err(domain!("theta = {} outside (0, pi/{})", theta.to_f64(), r + 1));
    }
    Ok(())
}

fn sin_mul(k: u32, theta: &Float) -> Float {
    Float::with_val(theta.prec(), theta * k).sin()
}

/// `x̂(θ)` at the precision of `theta`.
pub fn xhat_of_theta(theta: &Float, r: u32) -> Result<Float> {
    check_theta(theta, r)?;
    let bits = theta.prec();
    let num = sin_mul(r + 1, theta).pow(r + 1);
    let den = sin_mul(r, theta).pow(r) * sin_mul(1, theta) * c_r(r, bits);
    Ok(num / den)
}

/// `d ln x̂ / dθ = (r+1)² cot((r+1)θ) - r² cot(rθ) - cot θ`.
fn dlog_xhat(theta: &Float, r: u32) -> Float {
    let bits = theta.prec();
    let cot = |k: u32| Float::with_val(bits, theta * k).cot();
    let a = cot(r + 1) * ((r + 1) * (r + 1));
    let b = cot(r) * (r * r);
    a - b - cot(1)
}

/// The `θ ∈ (0, π/(r+1))` with `x̂(θ) = xhat`, by Newton's method on `ln x̂`
/// from an `f64` starting value.
pub fn theta_of_xhat(xhat: &Float, r: u32) -> Result<Float> {
    if r == 0 {
        return Err(domain!("r must be positive"));
    }
    if !(*xhat > 0 && *xhat < 1) {
        return Err(domain!("xhat = {} outside (0, 1)", xhat.to_f64()));
    }
    ensure_monotone(r)?;
    let bits = xhat.prec() + 32;
    let target = Float::with_val(bits, xhat).ln();
    let mut theta = Float::with_val(bits, theta_of_xhat_f64(xhat.to_f64(), r));
    let hi = theta_max(r, bits);
    let stop = Float::with_val(bits, Float::i_exp(1, -(xhat.prec() as i32 - 8)));
    for _ in 0..100 {
        let h = Float::with_val(bits, xhat_of_theta(&theta, r)?.ln() - &target);
        let step = h / dlog_xhat(&theta, r);
        let mut next = Float::with_val(bits, &theta - &step);
        if next <= 0 {
            next = Float::with_val(bits, &theta / 2u32);
        } else if next >= hi {
            next = Float::with_val(bits, &theta + &hi) / 2u32;
        }
        let done = Float::with_val(bits, step.abs_ref()) <= Float::with_val(bits, &theta * &stop);
        theta = next;
        if done {
            return Ok(Float::with_val(xhat.prec(), theta));
        }
    }
    Err(Error::Precision(format!("theta_of_xhat did not converge for xhat = {}", xhat.to_f64())))
}

/// Taylor coefficients of `ln(sin t / t)` in `t^2, t^4, ..., t^22`.
const LN_SINC: [f64; 11] = [
    -0.16666666666666666,
    -0.005555555555555556,
    -0.0003527336860670194,
    -2.6455026455026456e-05,
    -2.1377799155576935e-06,
    -1.803670234005331e-07,
    -1.5661391322766983e-08,
    -1.3884130493737299e-09,
    -1.2504359176004997e-10,
    -1.1402575602296091e-11,
    -1.0502923908637557e-12,
];
/// Below this argument the series of `ln(sin t / t)` is used.
const SINC_SERIES: f64 = 0.5;

/// `ln(sin t / t)`.
fn ln_sinc(t: f64) -> f64 {
    if t < SINC_SERIES {
        let t2 = t * t;
        LN_SINC.iter().rev().fold(0.0, |acc, c| (acc + c) * t2)
    } else {
        (t.sin() / t).ln()
    }
}

/// `d/dt ln(sin t / t) = cot t - 1/t`.
fn ln_sinc_deriv(t: f64) -> f64 {
    if t < SINC_SERIES {
        let t2 = t * t;
        let mut acc = 0.0;
        for (n, c) in LN_SINC.iter().enumerate().rev() {
            acc = acc * t2 + 2.0 * (n + 1) as f64 * c;
        }
        acc * t
    } else {
        1.0 / t.tan() - 1.0 / t
    }
}

/// `sin t (cot t - 1/t) = cos t - sin t / t`, finite up to `t = π`.
fn sin_times_ln_sinc_deriv(t: f64) -> f64 {
    if t < SINC_SERIES {
        t.sin() * ln_sinc_deriv(t)
    } else {
        t.cos() - t.sin() / t
    }
}

/// `ln x̂(θ)` in double precision, as
/// `(r+1) ln sinc((r+1)θ) - r ln sinc(rθ) - ln sinc θ`; the powers of `θ` and
/// `c_r` cancel exactly, which keeps `ln x̂` accurate near `θ = 0`.
pub fn ln_xhat_f64(theta: f64, r: u32) -> f64 {
    let rf = r as f64;
    (rf + 1.0) * ln_sinc((rf + 1.0) * theta) - rf * ln_sinc(rf * theta) - ln_sinc(theta)
}

pub fn xhat_of_theta_f64(theta: f64, r: u32) -> f64 {
    ln_xhat_f64(theta, r).exp()
}

/// `ln x̂` in terms of `δ = π/(r+1) - θ`, accurate as `δ → 0`, where
/// `sin((r+1)θ) = sin((r+1)δ)` and `sin(rθ) = sin(π/(r+1) + rδ)`.
fn ln_xhat_delta_f64(delta: f64, r: u32) -> f64 {
    let rf = r as f64;
    let top = PI / (rf + 1.0);
    let ln_c = (rf + 1.0) * (rf + 1.0).ln() - rf * rf.ln();
    (rf + 1.0) * ((rf + 1.0) * delta).sin().ln() - rf * (top + rf * delta).sin().ln() - (top - delta).sin().ln() - ln_c
}

/// The parameter of a point of the support, kept as `θ` on the right half of
/// the `θ` range and as `δ = π/(r+1) - θ` on the left half, so that `x̂` near 0
/// and near 1 are both resolved.
#[derive(Clone, Copy, Debug)]
struct Angle {
    theta: f64,
    delta: f64,
    near_top: bool,
}

impl Angle {
    /// `(sin θ, sin rθ, sin (r+1)θ)`.
    fn sines(self, r: u32) -> (f64, f64, f64) {
        let rf = r as f64;
        if self.near_top {
            let top = PI / (rf + 1.0);
            ((top - self.delta).sin(), (top + rf * self.delta).sin(), ((rf + 1.0) * self.delta).sin())
        } else {
            (self.theta.sin(), (rf * self.theta).sin(), ((rf + 1.0) * self.theta).sin())
        }
    }
}

/// Solves `ln x̂(θ) = ln_xhat` by bisection: in `θ` on the right half, in `ln δ`
/// on the left half.
fn angle_of_ln_xhat(ln_xhat: f64, r: u32) -> Angle {
    let top = PI / (r as f64 + 1.0);
    let half = 0.5 * top;
    if ln_xhat >= 0.0 {
        return Angle { theta: 0.0, delta: top, near_top: false };
    }
    if ln_xhat >= ln_xhat_f64(half, r) {
        let (mut lo, mut hi) = (0.0f64, half);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if ln_xhat_f64(mid, r) > ln_xhat {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let theta = 0.5 * (lo + hi);
        return Angle { theta, delta: top - theta, near_top: false };
    }
    let (mut lo, mut hi) = (f64::MIN_POSITIVE.ln(), half.ln());
    if ln_xhat <= ln_xhat_delta_f64(lo.exp(), r) {
        return Angle { theta: top, delta: 0.0, near_top: true };
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if ln_xhat_delta_f64(mid.exp(), r) < ln_xhat {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let delta = (0.5 * (lo + hi)).exp();
    Angle { theta: top - delta, delta, near_top: true }
}

/// Inverse of `θ ↦ x̂` in double precision.
pub fn theta_of_xhat_f64(xhat: f64, r: u32) -> f64 {
    if xhat <= 0.0 {
        return PI / (r as f64 + 1.0);
    }
    angle_of_ln_xhat(xhat.ln(), r).theta
}

/// Checks once per `r` that `x̂` decreases strictly on a uniform `θ` grid.
fn ensure_monotone(r: u32) -> Result<()> {
    let mut done = MONOTONE_CHECKED.lock().unwrap_or_else(|e| e.into_inner());
    if done.contains(&r) {
        return Ok(());
    }
    let hi = PI / (r as f64 + 1.0);
    let mut prev = f64::INFINITY;
    for i in 1..MONOTONE_GRID {
        let t = hi * i as f64 / MONOTONE_GRID as f64;
        let v = ln_xhat_f64(t, r);
        if v >= prev {
            return Err(Error::Consistency(format!("x̂(θ) is not decreasing near θ = {t} for r = {r}")));
        }
        prev = v;
    }
    done.insert(r);
    Ok(())
}

/// `θ`, `x̂` and the modulus `ρ = sin((r+1)θ)/sin(rθ)` of the type I solution.
#[derive(Clone, Debug)]
pub struct ThetaPoint {
    pub theta: Float,
    pub xhat: Float,
    pub rho: Float,
}

impl ThetaPoint {
    pub fn new(theta: &Float, r: u32) -> Result<Self> {
        let xhat = xhat_of_theta(theta, r)?;
        let rho = sin_mul(r + 1, theta) / sin_mul(r, theta);
        Ok(ThetaPoint { theta: theta.clone(), xhat, rho })
    }
}

/// `u_r(x) = x^{r-1} w_r(x^r)` for `0 < x < 1`.
pub fn density_type1(x: &Float, r: u32) -> Result<Float> {
    if !(*x > 0 && *x < 1) {
        return Err(domain!("density needs 0 < x < 1, got {}", x.to_f64()));
    }
    let xhat = Float::with_val(x.prec(), (&x).pow(r));
    let theta = theta_of_xhat(&xhat, r)?;
    let pi = Float::with_val(x.prec(), Constant::Pi);
    let w = sin_mul(r, &theta) * sin_mul(r + 1, &theta) / (pi * &xhat * sin_mul(1, &theta));
    Ok(w * Float::with_val(x.prec(), (&x).pow(r - 1)))
}

/// Per-ray type II density, `u_r / r`.
pub fn density_type2_per_ray(x: &Float, r: u32) -> Result<Float> {
    Ok(density_type1(x, r)? / r)
}

/// `u_r(x) = sin rθ sin (r+1)θ / (π x sin θ)`, with `θ` found from `ln x̂ = r ln x`
/// so that no power of `x` underflows.
pub fn density_type1_f64(x: f64, r: u32) -> f64 {
    if !(x > 0.0 && x < 1.0) {
        return 0.0;
    }
    let (s1, sr, sr1) = angle_of_ln_xhat(r as f64 * x.ln(), r).sines(r);
    if sr1 == 0.0 {
        return 0.0;
    }
    sr * sr1 / (PI * x * s1)
}

pub fn density_type2_per_ray_f64(x: f64, r: u32) -> f64 {
    density_type1_f64(x, r) / r as f64
}

/// `w_r |dx̂/dθ|`, the density of `θ`; it integrates to `r` over `(0, π/(r+1))`.
fn theta_integrand(theta: f64, r: u32) -> f64 {
    let rf = r as f64;
    let ratio = if theta < SINC_SERIES { rf * (ln_sinc(rf * theta) - ln_sinc(theta)).exp() } else { (rf * theta).sin() / theta.sin() };
    let a = (rf + 1.0) * theta;
    // sin((r+1)θ) |d ln x̂/dθ|, with the cot((r+1)θ) pole cancelled
    let body = (rf + 1.0) * (rf + 1.0) * sin_times_ln_sinc_deriv(a)
        - a.sin() * (rf * rf * ln_sinc_deriv(rf * theta) + ln_sinc_deriv(theta));
    ratio * body.abs() / PI
}

/// `F(x) = ∫₀^x u_r`, integrated in `θ`.
pub fn cdf_type1(x: f64, r: u32) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let lo = theta_of_xhat_f64(x.powi(r as i32), r);
    let hi = PI / (r as f64 + 1.0);
    (integrate(&|t| theta_integrand(t, r), lo, hi, 1e-14) / r as f64).clamp(0.0, 1.0)
}

/// Adaptive Gauss–Kronrod (7, 15) quadrature.
///
/// A panel is accepted once its Gauss–Kronrod difference is below its share
/// of `tol` or at the round-off level of its own value.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn step(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (k, g) = gk15(f, a, b);
        let floor = 64.0 * f64::EPSILON * k.abs();
        if (k - g).abs() <= tol.max(floor) || depth == 0 || (b - a).abs() < 1e-15 * a.abs().max(1e-300) {
            return k;
        }
        let m = 0.5 * (a + b);
        step(f, a, m, tol / 2.0, depth - 1) + step(f, m, b, tol / 2.0, depth - 1)
    }
    if a == b {
        return 0.0;
    }
    step(f, a, b, tol, 50)
}

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    const XK: [f64; 8] = [
        0.991_455_371_120_812_6,
        0.949_107_912_342_758_5,
        0.864_864_423_359_769_1,
        0.741_531_185_599_394_4,
        0.586_087_235_467_691_1,
        0.405_845_151_377_397_2,
        0.207_784_955_007_898_5,
        0.0,
    ];
    const WK: [f64; 8] = [
        0.022_935_322_010_529_22,
        0.063_092_092_629_978_55,
        0.104_790_010_322_250_2,
        0.140_653_259_715_525_9,
        0.169_004_726_639_267_9,
        0.190_350_578_064_785_4,
        0.204_432_940_075_298_9,
        0.209_482_141_084_727_8,
    ];
    const WG: [f64; 4] = [
        0.129_484_966_168_869_7,
        0.279_705_391_489_276_7,
        0.381_830_050_505_118_9,
        0.417_959_183_673_469_4,
    ];
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let s = f(c - h * XK[i]) + f(c + h * XK[i]);
        k += WK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, g * h)
}

/// `sup_k max(|k/n - F(x_k)|, |(k-1)/n - F(x_k)|)` over the sorted rescaled
/// zeros, with `F` the type I CDF (also the per-ray type II CDF times `r`).
pub fn ks_distance(zs: &ZeroSet, r: u32) -> Result<f64> {
    if !zs.rescaled {
        return Err(Error::Usage("KS distance needs rescaled zeros".into()));
    }
    let n = zs.zeros.len();
    if n == 0 {
        return Err(domain!("empty zero set"));
    }
    let mut xs = zs.to_f64();
    xs.sort_by(f64::total_cmp);
    let nf = n as f64;
    Ok(xs
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf_type1(x, r);
            let k = (i + 1) as f64;
            (k / nf - f).abs().max(((k - 1.0) / nf - f).abs())
        })
        .fold(0.0, f64::max))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityKind {
    TypeI,
    TypeIIPerRay,
}

/// Density samples `(x, u(x))` on a grid.
#[derive(Clone, Debug)]
pub struct DensityCurve {
    pub samples: Vec<(f64, f64)>,
    pub kind: DensityKind,
    pub r: u32,
}

impl DensityCurve {
    /// Midpoints `x_i = (i + 1/2)/grid`, `i = 0..grid`.
    pub fn midpoints(r: u32, kind: DensityKind, grid: usize) -> Result<Self> {
        if r == 0 || grid == 0 {
            return Err(domain!("density curve needs r >= 1 and a positive grid"));
        }
        ensure_monotone(r)?;
        let samples = (0..grid)
            .map(|i| {
                let x = (i as f64 + 0.5) / grid as f64;
                let u = match kind {
                    DensityKind::TypeI => density_type1_f64(x, r),
                    DensityKind::TypeIIPerRay => density_type2_per_ray_f64(x, r),
                };
                (x, u)
            })
            .collect();
        Ok(DensityCurve { samples, kind, r })
    }

    /// Midpoint-rule integral over `[0, 1]`.
    pub fn midpoint_integral(&self) -> f64 {
        let h = 1.0 / self.samples.len() as f64;
        self.samples.iter().map(|(_, u)| u * h).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    TypeI,
    TypeII,
}

/// Residual of the algebraic equation for `W` at the parametric solution
/// `W = ρ e^{iθ}`, relative to the largest of its three terms.
///
/// Type I: `W^{r+1} - r α_r^r x̂ W + r α_r^r x̂` with `ρ = sin((r+1)θ)/sin(rθ)`.
/// Type II: `α_r^r W^{r+1} - r α_r^r x W^r + r^r x` with
/// `ρ = r^{1-1/r} sin^{1/r}((r+1)θ) / (α_r sin^{1/r}θ)` and `x = ρ sin((r+1)θ)/(r sin rθ)`.
pub fn w_equation_residual(theta: &Float, r: u32, which: Which) -> Result<Float> {
    w_equation_residual_signed(theta, r, which, 1)
}

/// As [`w_equation_residual`] for `W = ρ e^{-iθ}` when `sign < 0`.
pub fn w_equation_residual_signed(theta: &Float, r: u32, which: Which, sign: i32) -> Result<Float> {
    check_theta(theta, r)?;
    let bits = theta.prec();
    let digits = ((bits.saturating_sub(crate::numerics::GUARD_BITS)) as f64 / std::f64::consts::LOG2_10) as u32;
    let alpha = alpha_r(r, Precision::new(digits.max(crate::numerics::MIN_DIGITS))?)?;
    let alpha = Float::with_val(bits, alpha);
    let alpha_pow = Float::with_val(bits, (&alpha).pow(r));
    let s1 = sin_mul(1, theta);
    let sr = sin_mul(r, theta);
    let sr1 = sin_mul(r + 1, theta);
    let phase = {
        let t = if sign < 0 { -theta.clone() } else { theta.clone() };
        Complex::with_val(bits, (t.cos_ref(), t.sin_ref()))
    };
    let terms: [Complex; 3] = match which {
        Which::TypeI => {
            let rho = Float::with_val(bits, &sr1 / &sr);
            let w = Complex::with_val(bits, &phase * &rho);
            let z = xhat_of_theta(theta, r)?;
            let k = Float::with_val(bits, &alpha_pow * r) * &z;
            [
                Complex::with_val(bits, (&w).pow(r + 1)),
                -Complex::with_val(bits, &w * &k),
                Complex::with_val(bits, (k, 0)),
            ]
        }
        Which::TypeII => {
            let ratio = Float::with_val(bits, &sr1 / &s1).root(r);
            let rpow = Float::with_val(bits, r).pow(Float::with_val(bits, 1u32) - Float::with_val(bits, 1u32) / r);
            let rho = rpow * ratio / &alpha;
            let x = Float::with_val(bits, &rho * &sr1) / (Float::with_val(bits, &sr * r));
            let w = Complex::with_val(bits, &phase * &rho);
            let wr = Complex::with_val(bits, (&w).pow(r));
            let wr1 = Complex::with_val(bits, &wr * &w);
            let rr = Float::with_val(bits, Float::u_pow_u(r, r));
            [
                wr1 * &alpha_pow,
                -(wr * Float::with_val(bits, &alpha_pow * r) * &x),
                Complex::with_val(bits, (rr * x, 0)),
            ]
        }
    };
    let mut sum = Complex::new(bits);
    let mut scale = Float::new(bits);
    for t in &terms {
        sum += t;
        scale.max_mut(&cabs(t));
    }
    Ok(cabs(&sum) / scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::default()
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha_r(1, p()).unwrap(), 4);
        let a2 = alpha_r(2, p()).unwrap().to_f64();
        assert!((a2 - 1.5f64.powf(1.5)).abs() < 1e-14);
        let mut prev = f64::INFINITY;
        for r in 1..=64 {
            let a = alpha_r(r, p()).unwrap().to_f64();
            assert!(a < prev && a > 1.0);
            prev = a;
        }
    }

    #[test]
    fn xhat_examples() {
        let b = p().bits();
        let pi = Float::with_val(b, Constant::Pi);
        let x = xhat_of_theta(&(pi.clone() / 4u32), 1).unwrap();
        assert!((x - 0.5f64).abs() < p().tolerance(10));
        let tiny = Float::with_val(b, 1e-6);
        let x = xhat_of_theta(&tiny, 2).unwrap();
        assert!((x - 1u32).abs() < 1e-9);
        assert!((xhat_of_theta_f64(1e-6, 2) - 1.0).abs() < 1e-9);
        assert!(xhat_of_theta(&Float::with_val(b, 0), 2).is_err());
        assert!(xhat_of_theta(&(pi / 3u32), 2).is_err());
    }

    #[test]
    fn theta_round_trip() {
        let b = p().bits();
        let tol = p().tolerance(10);
        for r in 1..=3u32 {
            for v in [0.01, 0.1, 0.5, 0.9, 0.99] {
                let x = Float::with_val(b, v);
                let t = theta_of_xhat(&x, r).unwrap();
                let back = xhat_of_theta(&t, r).unwrap();
                assert!((back - &x).abs() <= Float::with_val(b, &x * &tol), "r={r} v={v}");
            }
        }
        let t = theta_of_xhat(&Float::with_val(b, 0.5), 1).unwrap();
        let quarter = Float::with_val(b, Constant::Pi) / 4u32;
        assert!((t - quarter).abs() <= tol);
    }

    #[test]
    fn marchenko_pastur() {
        let b = p().bits();
        let u = density_type1(&Float::with_val(b, 0.25), 1).unwrap().to_f64();
        let expect = 2.0 * 3f64.sqrt() / PI;
        assert!((u - expect).abs() < 1e-10);
        for x in [0.05f64, 0.3, 0.77] {
            let mp = 2.0 / PI * x.powf(-0.5) * (1.0 - x).sqrt();
            assert!((density_type1_f64(x, 1) - mp).abs() < 1e-10);
        }
        assert!((cdf_type1(0.5, 1) - (0.5 + 1.0 / PI)).abs() < 1e-8);
    }

    #[test]
    fn normalization_and_types() {
        for r in 1..=4u32 {
            assert!((cdf_type1(1.0 - 1e-15, r) - 1.0).abs() < 1e-8, "r={r}");
            let total = integrate(&|t| theta_integrand(t, r), 0.0, PI / (r as f64 + 1.0), 1e-13);
            assert!((total - r as f64).abs() < 1e-9);
            for x in [0.2, 0.5, 0.8] {
                let ratio = density_type1_f64(x, r) / density_type2_per_ray_f64(x, r);
                assert!((ratio - r as f64).abs() < 1e-12);
            }
        }
        let mut prev = 0.0;
        for i in 0..=1000 {
            let f = cdf_type1(i as f64 / 1000.0, 3);
            assert!(f >= prev);
            prev = f;
        }
    }

    #[test]
    fn mpfr_and_f64_densities_agree() {
        let b = p().bits();
        for r in 1..=4u32 {
            for x in [0.1, 0.5, 0.9] {
                let a = density_type1(&Float::with_val(b, x), r).unwrap().to_f64();
                assert!((a - density_type1_f64(x, r)).abs() < 1e-10 * a.max(1.0));
            }
        }
    }

    #[test]
    fn w_equations() {
        let b = p().bits();
        let tol = p().tolerance(10);
        let pi = Float::with_val(b, Constant::Pi);
        assert!(w_equation_residual(&(pi / 6u32), 2, Which::TypeI).unwrap() <= tol);
        let t = Float::with_val(b, 0.3);
        assert!(w_equation_residual(&t, 3, Which::TypeII).unwrap() <= tol);
        for which in [Which::TypeI, Which::TypeII] {
            let a = w_equation_residual_signed(&t, 3, which, 1).unwrap();
            let c = w_equation_residual_signed(&t, 3, which, -1).unwrap();
            assert!((a - c).abs() <= tol);
        }
    }

    #[test]
    fn ks_from_quantiles() {
        let r = 2;
        let n = 50;
        let zeros = (0..n)
            .map(|k| {
                let target = (k as f64 + 0.5) / n as f64;
                let (mut lo, mut hi) = (0.0f64, 1.0f64);
                for _ in 0..80 {
                    let m = 0.5 * (lo + hi);
                    if cdf_type1(m, r) < target {
                        lo = m;
                    } else {
                        hi = m;
                    }
                }
                Float::with_val(64, 0.5 * (lo + hi))
            })
            .collect();
        let zs = ZeroSet { zeros, n_expected: n, rescaled: true, source: crate::zeros::ZeroSource::TypeIKernel, r };
        let ks = ks_distance(&zs, r).unwrap();
        assert!(ks <= 0.5 / n as f64 + 1e-8);
        let raw = ZeroSet { rescaled: false, ..zs };
        assert!(matches!(ks_distance(&raw, r), Err(Error::Usage(_))));
    }
}
