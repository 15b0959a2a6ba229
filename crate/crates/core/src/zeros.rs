//! Real zeros of `p_n(x; β)` and of the diagonal type II polynomials.
//!
//! Zeros are isolated by a sign scan on `(0, V)`, with `V` the containment
//! bound, and refined by safeguarded Newton steps inside certified brackets.
//! Every sign is certified against a running rounding-error bound; when a sign
//! cannot be certified, the coefficients are regenerated at a higher working
//! precision and the search restarts.

use rug::ops::Pow;
use rug::Float;

use crate::asymptotics::alpha_r;
use crate::error::{domain, Error, Result};
use crate::moments::StarWeight;
use crate::numerics::Precision;
use crate::type1::kernel;
use crate::type2::diagonal_coeffs;

/// Largest number of bits added on top of the working precision.
const MAX_EXTRA_BITS: u32 = 1 << 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroSource {
    TypeIKernel,
    TypeIIDiagonal,
}

/// Positive real zeros in increasing order.
#[derive(Clone, Debug)]
pub struct ZeroSet {
    pub zeros: Vec<Float>,
    pub n_expected: usize,
    pub rescaled: bool,
    pub source: ZeroSource,
    pub r: u32,
}

impl ZeroSet {
    /// Number of zeros strictly greater than `limit`.
    pub fn count_above(&self, limit: f64) -> usize {
        self.zeros.iter().filter(|z| **z > limit).count()
    }

    pub fn largest(&self) -> Option<&Float> {
        self.zeros.last()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.zeros.iter().map(Float::to_f64).collect()
    }
}

/// Right endpoint of `[0, (r+1)^{1/r} ((r+1)/r)^{(r+1)/r} n^{1/r}]`, which
/// contains the zeros of `p_n` and the real zeros of the diagonal type II
/// polynomials.
pub fn zero_bound(n: usize, r: u32, precision: Precision) -> Result<Float> {
    if n == 0 || r == 0 {
        return Err(domain!("zero_bound needs n >= 1 and r >= 1"));
    }
    let bits = precision.bits();
    let a = Float::with_val(bits, r + 1).root(r);
    let b = alpha_r(r, precision)?;
    let c = Float::with_val(bits, n as u64).root(r);
    Ok(a * b * c)
}

/// The `n` zeros of `p_n(x; β)`.
pub fn real_zeros_type1_kernel(n: usize, w: &StarWeight) -> Result<ZeroSet> {
    if n == 0 {
        return Err(domain!("p_0 has no zeros"));
    }
    let r = w.r();
    let upper = zero_bound(n, r, w.precision())?;
    let beta = w.beta().clone();
    let gen = |bits: u32| -> Result<Vec<Float>> {
        Ok(kernel(n, r, &beta, bits).coeffs().iter().map(|c| c.real().clone()).collect())
    };
    let zeros = find_zeros(&gen, n, &upper, w.precision())?;
    Ok(ZeroSet { zeros, n_expected: n, rescaled: false, source: ZeroSource::TypeIKernel, r })
}

/// The `n` positive zeros of `L_n(x; β)`. The remaining zeros are their
/// rotations by powers of `ω`.
pub fn real_zeros_type2(n: usize, w: &StarWeight) -> Result<ZeroSet> {
    if n == 0 {
        return Err(domain!("L_0 has no zeros"));
    }
    let r = w.r();
    let bound = zero_bound(n, r, w.precision())?;
    let upper = Float::with_val(bound.prec(), (&bound).pow(r));
    let beta = w.beta().clone();
    let gen = |bits: u32| diagonal_coeffs(n, r, &beta, bits);
    let bits = w.bits();
    let zeros = find_zeros(&gen, n, &upper, w.precision())?
        .into_iter()
        .map(|t| Float::with_val(bits, t.root_ref(r)))
        .collect();
    Ok(ZeroSet { zeros, n_expected: n, rescaled: false, source: ZeroSource::TypeIIDiagonal, r })
}

/// Divides every zero by `α_r n^{1/r}`.
pub fn rescale_zeros(zs: &ZeroSet, n: usize, r: u32) -> Result<ZeroSet> {
    if zs.rescaled {
        return Err(Error::Usage("zero set is already rescaled".into()));
    }
    if n == 0 || r == 0 {
        return Err(domain!("rescaling needs n >= 1 and r >= 1"));
    }
    let bits = zs.zeros.first().map_or(64, |z| z.prec());
    let digits = ((bits as f64) / std::f64::consts::LOG2_10) as u32;
    let alpha = alpha_r(r, Precision::new(digits.max(crate::numerics::MIN_DIGITS))?)?;
    let div = Float::with_val(bits, alpha * Float::with_val(bits, n as u64).root(r));
    let zeros = zs.zeros.iter().map(|z| Float::with_val(bits, z / &div)).collect();
    Ok(ZeroSet { zeros, rescaled: true, ..zs.clone() })
}

/// Strict interlacing of the positive zeros of consecutive type II diagonal
/// polynomials, counted rather than asserted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterlacingReport {
    pub n: usize,
    pub pairs_checked: usize,
    pub violations: usize,
}

impl InterlacingReport {
    pub fn interlaces(&self) -> bool {
        self.violations == 0
    }
}

/// Compares the zeros of `L_n` with those of `L_{n-1}`, `n ≥ 2`.
pub fn type2_interlacing(n: usize, w: &StarWeight) -> Result<InterlacingReport> {
    if n < 2 {
        return Err(domain!("interlacing needs n >= 2"));
    }
    let big = real_zeros_type2(n, w)?.zeros;
    let small = real_zeros_type2(n - 1, w)?.zeros;
    let violations = small
        .iter()
        .enumerate()
        .filter(|(i, s)| !(big[*i] < **s && **s < big[i + 1]))
        .count();
    Ok(InterlacingReport { n, pairs_checked: small.len(), violations })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sign {
    Neg,
    Pos,
    Unknown,
}

/// Real polynomial evaluated with a certified sign.
struct CertifiedPoly {
    coeffs: Vec<Float>,
    abs: Vec<Float>,
    bits: u32,
    /// `(2n+4) 2^{1-W}`, inflated slightly for the 64-bit bound arithmetic.
    unit: Float,
}

impl CertifiedPoly {
    fn new(coeffs: Vec<Float>, bits: u32) -> Self {
        let abs = coeffs.iter().map(|c| Float::with_val(64, c.abs_ref())).collect();
        let n = coeffs.len() as u64;
        let unit = Float::with_val(64, Float::i_exp(1, 1 - bits as i32)) * (2 * n + 4) * 1.01f64;
        CertifiedPoly { coeffs, abs, bits, unit }
    }

    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Value, derivative and certified sign at `x ≥ 0`.
    fn eval(&self, x: &Float) -> (Float, Float, Sign) {
        let mut p = Float::new(self.bits);
        let mut dp = Float::new(self.bits);
        for c in self.coeffs.iter().rev() {
            dp *= x;
            dp += &p;
            p *= x;
            p += c;
        }
        let x64 = Float::with_val(64, x);
        let mut s = Float::new(64);
        for a in self.abs.iter().rev() {
            s *= &x64;
            s += a;
        }
        let bound = s * &self.unit;
        let sign = if Float::with_val(64, p.abs_ref()) <= bound {
            Sign::Unknown
        } else if p.is_sign_negative() {
            Sign::Neg
        } else {
            Sign::Pos
        };
        (p, dp, sign)
    }

    fn sign(&self, x: &Float) -> Sign {
        self.eval(x).2
    }

    /// Certified sign at `x`, or at `x ± delta` when `x` sits on a zero to
    /// working precision. Returns the point actually used.
    fn sign_near(&self, x: &Float, delta: &Float) -> (Float, Sign) {
        let s = self.sign(x);
        if s != Sign::Unknown {
            return (x.clone(), s);
        }
        for cand in [Float::with_val(self.bits, x + delta), Float::with_val(self.bits, x - delta)] {
            if cand < 0 {
                continue;
            }
            let s = self.sign(&cand);
            if s != Sign::Unknown {
                return (cand, s);
            }
        }
        (x.clone(), Sign::Unknown)
    }

    /// `1 + max |c_k / c_n|`.
    fn cauchy_bound(&self) -> Float {
        let lead = Float::with_val(64, self.coeffs[self.degree()].abs_ref());
        let mut m = Float::new(64);
        for a in &self.abs[..self.degree()] {
            m.max_mut(&Float::with_val(64, a / &lead));
        }
        Float::with_val(self.bits, m + 1u32)
    }
}

enum Attempt {
    Done(Vec<Float>),
    Escalate,
}

/// Isolates and refines the `n` positive zeros of the polynomial produced by
/// `gen(bits)`, escalating the working precision until every sign is certified.
fn find_zeros(
    gen: &dyn Fn(u32) -> Result<Vec<Float>>,
    n: usize,
    upper: &Float,
    precision: Precision,
) -> Result<Vec<Float>> {
    let bits = precision.bits();
    let mut extra = 64u32;
    loop {
        let work = bits + extra;
        let poly = CertifiedPoly::new(gen(work)?, work);
        if poly.degree() != n {
            return Err(Error::Consistency(format!("expected degree {n}, got {}", poly.degree())));
        }
        match attempt(&poly, n, upper, precision)? {
            Attempt::Done(z) => return Ok(z.into_iter().map(|v| Float::with_val(bits, v)).collect()),
            Attempt::Escalate => {
                extra *= 2;
                if extra > MAX_EXTRA_BITS {
                    return Err(Error::Precision(format!(
                        "could not certify the zeros of a degree-{n} polynomial within {} bits",
                        bits + MAX_EXTRA_BITS
                    )));
                }
            }
        }
    }
}

fn attempt(poly: &CertifiedPoly, n: usize, upper: &Float, precision: Precision) -> Result<Attempt> {
    let work = poly.bits;
    let upper = Float::with_val(work, upper);

    // Probe from the right, where cancellation is worst, before paying for a full scan.
    let nudge = Float::with_val(work, &upper / 1_000_000u32);
    for i in (1..=16u32).rev() {
        let x = Float::with_val(work, &upper * i) / 16u32;
        if poly.sign_near(&x, &nudge).1 == Sign::Unknown {
            return Ok(Attempt::Escalate);
        }
    }

    let mut brackets = None;
    let mut m = (4 * n).max(64);
    while m <= 256 * n.max(16) {
        match scan(poly, &Float::new(work), &upper, m, true) {
            None => return Ok(Attempt::Escalate),
            Some(b) if b.len() == n => {
                brackets = Some(b);
                break;
            }
            Some(b) if b.len() > n => {
                return Err(Error::Consistency(format!("{} sign changes for degree {n}", b.len())));
            }
            Some(_) => m *= 2,
        }
    }
    let brackets = match brackets {
        Some(b) => b,
        None => {
            // Fall back to the Cauchy bound if the containment interval missed a zero.
            let cauchy = poly.cauchy_bound();
            if cauchy <= upper {
                return Err(Error::Precision(format!("found fewer than {n} sign changes")));
            }
            match scan(poly, &Float::new(work), &cauchy, 256 * n.max(16), true) {
                None => return Ok(Attempt::Escalate),
                Some(b) if b.len() == n => b,
                Some(b) => {
                    return Err(Error::Precision(format!("found {} of {n} sign changes", b.len())));
                }
            }
        }
    };

    let eps = {
        let d = precision.digits().div_ceil(2);
        Float::with_val(work, Float::i_pow_u(10, d)).recip()
    };
    let max_iter = 4 * precision.bits();
    let mut zeros = Vec::with_capacity(n);
    for (a, b, sa) in brackets {
        match refine(poly, a, b, sa, &eps, max_iter)? {
            Some(z) => zeros.push(z),
            None => return Ok(Attempt::Escalate),
        }
    }
    Ok(Attempt::Done(zeros))
}

/// Brackets `(a, b, sign(a))` of sign changes on the grid `lo + (hi-lo) u^2`,
/// `u = i/m`; `None` if some grid sign is uncertain.
fn scan(poly: &CertifiedPoly, lo: &Float, hi: &Float, m: usize, quadratic: bool) -> Option<Vec<(Float, Float, Sign)>> {
    let work = poly.bits;
    let width = Float::with_val(work, hi - lo);
    let point = |i: usize| {
        let u = Float::with_val(work, i as u64) / m as u64;
        let t = if quadratic { Float::with_val(work, u.square_ref()) } else { u };
        Float::with_val(work, lo + &width * t)
    };
    // small enough to stay inside the first grid cell
    let delta = Float::with_val(work, &width / (1000 * m as u64 * m as u64));
    let mut out = Vec::new();
    let (mut prev_x, mut prev) = poly.sign_near(&point(0), &delta);
    if prev == Sign::Unknown {
        return None;
    }
    for i in 1..=m {
        let (x, s) = poly.sign_near(&point(i), &delta);
        if s == Sign::Unknown {
            return None;
        }
        if s != prev {
            out.push((prev_x.clone(), x.clone(), prev));
        }
        prev = s;
        prev_x = x;
    }
    Some(out)
}

/// Shrinks the bracket to relative width `eps` with Newton steps, falling back
/// to bisection when a step leaves the bracket. `None` asks for more bits.
fn refine(poly: &CertifiedPoly, mut a: Float, mut b: Float, sa: Sign, eps: &Float, max_iter: u32) -> Result<Option<Float>> {
    let work = poly.bits;
    let mut x = Float::with_val(work, &a + &b) / 2u32;
    for _ in 0..max_iter {
        let tol = Float::with_val(work, &a * eps);
        if Float::with_val(work, &b - &a) <= tol {
            return Ok(Some(Float::with_val(work, &a + &b) / 2u32));
        }
        let (p, dp, s) = poly.eval(&x);
        if s == Sign::Unknown {
            // x is a zero to working precision; accept it if x(1 ± eps/2) certify a sign change.
            let half = Float::with_val(work, &x * eps) / 2u32;
            let left = poly.sign(&Float::with_val(work, &x - &half));
            let right = poly.sign(&Float::with_val(work, &x + &half));
            if left != Sign::Unknown && right != Sign::Unknown && left != right {
                return Ok(Some(x));
            }
            return Ok(None);
        }
        let toward_b = s == sa;
        if toward_b {
            a.clone_from(&x);
        } else {
            b.clone_from(&x);
        }
        // Probe just past x on the side that holds the root, so Newton
        // iterates approaching from one side still close the bracket.
        let step = Float::with_val(work, &x * eps) / 2u32;
        let probe = if toward_b { Float::with_val(work, &x + &step) } else { Float::with_val(work, &x - &step) };
        if probe > a && probe < b {
            match poly.sign(&probe) {
                Sign::Unknown => return Ok(None),
                ps if ps == sa => a = probe,
                _ => b = probe,
            }
        }
        let newton = if dp.is_zero() { None } else { Some(Float::with_val(work, &x - Float::with_val(work, &p / &dp))) };
        x = match newton {
            Some(v) if v > a && v < b => v,
            _ => Float::with_val(work, &a + &b) / 2u32,
        };
    }
    Err(Error::Precision(format!("zero refinement exceeded {max_iter} steps")))
}
