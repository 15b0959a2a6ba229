//! Residual checks behind `angelesco verify`.

use clap::ValueEnum;
use laguerre_angelesco::asymptotics::{w_equation_residual, Which};
use laguerre_angelesco::jacobi_limit::type1_limit_error;
use laguerre_angelesco::moments::{max_type2_residual, type1_residuals, type2_residuals, Type1Summary};
use laguerre_angelesco::type1::{
    type1_above, type1_below, type1_diagonal, type1_lowering_residual, type1_ode_residual,
    type1_raising_residual, type1_recurrence_residual,
};
use laguerre_angelesco::type2::{
    type2_above, type2_diagonal, type2_lowering_residual, type2_ode_residual, type2_raising_residual,
    type2_recurrence_residual, type2_rodrigues, type2_rodrigues_above,
};
use laguerre_angelesco::{ComplexPoly, StarWeight, Type1Vector};
use rug::float::Constant;
use rug::{Complex, Float};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Orthogonality,
    Recurrence,
    OdeType1,
    OdeType2,
    Rodrigues,
    LoweringRaising,
    Limit,
    WEquation,
}

/// Slack digits for the exact identities.
const SLACK: u32 = 10;
/// Slack digits for the type II differential equation.
const ODE2_SLACK: u32 = 12;
/// Limit parameters of the Jacobi check.
const ALPHAS: [f64; 4] = [1e2, 1e3, 1e4, 1e5];
/// θ points per type in the W-equation check.
const THETA_POINTS: usize = 100;

pub struct Instance {
    pub name: String,
    pub residual: Float,
    pub tolerance: Float,
    pub pass: bool,
}

impl Instance {
    fn new(name: String, residual: Float, tolerance: &Float) -> Self {
        let pass = residual <= *tolerance;
        Instance { name, residual, tolerance: tolerance.clone(), pass }
    }
}

fn directions(r: u32, k: Option<u32>) -> Result<Vec<u32>, CliError> {
    match k {
        Some(k) if k == 0 || k > r => Err(CliError::Config(format!("--k must lie in 1..={r}, got {k}"))),
        Some(k) => Ok(vec![k]),
        None => Ok((1..=r).collect()),
    }
}

fn need_n(n: Option<usize>, check: &str) -> Result<usize, CliError> {
    n.ok_or_else(|| CliError::Config(format!("--n is required for the {check} check")))
}

fn type1_instance(name: String, v: &Type1Vector, w: &StarWeight, tol: &Float) -> Result<Instance, CliError> {
    let res = type1_residuals(&v.polys, w, v.total_degree())?;
    let s = Type1Summary::from_residuals(&res)?;
    let worst = Float::with_val(w.bits(), s.max_orthogonality.max(&s.normalization_error));
    Ok(Instance::new(name, worst, tol))
}

fn type2_instance(name: String, p: &ComplexPoly, degrees: &[usize], w: &StarWeight, tol: &Float) -> Result<Instance, CliError> {
    let res = type2_residuals(p, w, degrees)?;
    Ok(Instance::new(name, max_type2_residual(&res, w.bits()), tol))
}

fn relative_diff(a: &ComplexPoly, b: &ComplexPoly) -> Float {
    let norm = b.norm_inf();
    let d = a.max_abs_diff(b);
    if norm.is_zero() {
        d
    } else {
        d / norm
    }
}

pub fn run(check: Check, w: &StarWeight, n: Option<usize>, k: Option<u32>) -> Result<Vec<Instance>, CliError> {
    let r = w.r();
    let bits = w.bits();
    let p = w.precision();
    let tol = p.tolerance(SLACK);
    let mut out = Vec::new();
    match check {
        Check::Orthogonality => {
            let n = need_n(n, "orthogonality")?;
            let ks = directions(r, k)?;
            out.push(type1_instance(format!("type1-diagonal n={n}"), &type1_diagonal(n, w)?, w, &tol)?);
            for &k in &ks {
                out.push(type1_instance(format!("type1-above n={n} k={k}"), &type1_above(n, k, w)?, w, &tol)?);
            }
            if r > 1 && n > 0 {
                for &k in &ks {
                    out.push(type1_instance(format!("type1-below n={n} k={k}"), &type1_below(n, k, w)?, w, &tol)?);
                }
            }
            let d = type2_diagonal(n, w)?;
            out.push(type2_instance(format!("type2-diagonal n={n}"), &d.poly, &d.index.entries(), w, &tol)?);
            for &k in &ks {
                let a = type2_above(n, k, w)?;
                out.push(type2_instance(format!("type2-above n={n} k={k}"), &a.poly, &a.index.entries(), w, &tol)?);
            }
        }
        Check::Recurrence => {
            let n = need_n(n, "recurrence")?;
            if r < 2 {
                return Err(CliError::Config("the recurrence check needs r > 1".into()));
            }
            if n == 0 {
                return Err(CliError::Config("the recurrence check needs n >= 1".into()));
            }
            let ks = directions(r, k)?;
            for &k in &ks {
                for j in 1..=r {
                    let res = type1_recurrence_residual(n, j, k, w)?;
                    out.push(Instance::new(format!("type1 n={n} j={j} k={k}"), res.relative(), &tol));
                }
            }
            for &k in &ks {
                let res = type2_recurrence_residual(n, k, w)?;
                out.push(Instance::new(format!("type2 n={n} k={k}"), res.relative(), &tol));
            }
        }
        Check::OdeType1 => {
            let n = need_n(n, "ode-type1")?;
            out.push(Instance::new(format!("p-kernel n={n}"), type1_ode_residual(n, w)?.relative(), &tol));
        }
        Check::OdeType2 => {
            let n = need_n(n, "ode-type2")?;
            if Float::with_val(bits, w.beta() - (r as i64 - 2)) <= 0 {
                return Err(CliError::Config(format!(
                    "the type II differential equation needs beta > r - 2 = {}",
                    r as i64 - 2
                )));
            }
            let pts: Vec<Complex> = [0.5, 1.0, 2.0].iter().map(|x| Complex::with_val(bits, (*x, 0))).collect();
            let res = type2_ode_residual(n, w, &pts)?;
            out.push(Instance::new(format!("type2-diagonal n={n}"), res, &p.tolerance(ODE2_SLACK)));
        }
        Check::Rodrigues => {
            let n = need_n(n, "rodrigues")?;
            let d = relative_diff(&type2_rodrigues(n, w)?.poly, &type2_diagonal(n, w)?.poly);
            out.push(Instance::new(format!("diagonal n={n}"), d, &tol));
            for k in directions(r, k)? {
                let d = relative_diff(&type2_rodrigues_above(n, k, w)?.poly, &type2_above(n, k, w)?.poly);
                out.push(Instance::new(format!("above n={n} k={k}"), d, &tol));
            }
        }
        Check::LoweringRaising => {
            let n = need_n(n, "lowering-raising")?;
            if n == 0 {
                return Err(CliError::Config("the lowering/raising check needs n >= 1".into()));
            }
            out.push(Instance::new(format!("type1-lowering n={n}"), type1_lowering_residual(n, w)?.relative(), &tol));
            out.push(Instance::new(format!("type1-raising n={n}"), type1_raising_residual(n, w)?.relative(), &tol));
            if n > r as usize {
                out.push(Instance::new(format!("type2-lowering n={n}"), type2_lowering_residual(n, w)?.relative(), &tol));
            }
            if *w.beta() > 0 {
                out.push(Instance::new(format!("type2-raising n={n}"), type2_raising_residual(n, w)?.relative(), &tol));
            }
        }
        Check::Limit => {
            let n = need_n(n, "limit")?;
            // error·α ≤ 2(n+1)² along the grid, and errors decrease unless already at round-off.
            let c = 2.0 * ((n + 1) * (n + 1)) as f64;
            let mut prev: Option<Float> = None;
            for a in ALPHAS {
                let e = type1_limit_error(n, w, &Float::with_val(bits, a))?;
                let bound = Float::with_val(bits, c) / a;
                let decreasing = prev.as_ref().is_none_or(|q| e < *q || e <= tol);
                let mut inst = Instance::new(format!("alpha={a:e}"), e.clone(), &bound);
                inst.pass &= decreasing;
                out.push(inst);
                prev = Some(e);
            }
        }
        Check::WEquation => {
            let step = Float::with_val(bits, Constant::Pi) / ((r + 1) as u64 * THETA_POINTS as u64);
            for (label, which) in [("typeI", Which::TypeI), ("typeII", Which::TypeII)] {
                let mut worst = Float::new(bits);
                for i in 0..THETA_POINTS {
                    let theta = Float::with_val(bits, &step * (i as f64 + 0.5));
                    worst.max_mut(&w_equation_residual(&theta, r, which)?);
                }
                out.push(Instance::new(format!("{label} {THETA_POINTS} theta points"), worst, &tol));
            }
        }
    }
    Ok(out)
}
