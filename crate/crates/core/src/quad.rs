//! Adaptive complex-valued quadrature with 15-point Gauss–Kronrod
//! panels.
//!
//! The caller supplies initial breakpoints (typically a geometric
//! ladder accumulating at each singular point); panels are then split
//! at their midpoints, worst error first, until the summed error
//! estimate meets the tolerance or the evaluation budget runs out.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

// 15-point Kronrod abscissae on [-1, 1] (positive half) with the
// embedded 7-point Gauss rule; classic QUADPACK values.
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let min_err = 50.0 * f64::EPSILON * res_abs;
        if min_err > scaled {
            scaled = min_err;
        }
    }
    scaled
}

/// One evaluated panel: value, error estimate, and bounds.
#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.partial_cmp(&other.err).unwrap_or(Ordering::Equal)
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: Complex64,
    pub abs_err: f64,
    pub evals: usize,
    pub budget_exceeded: bool,
}

fn gk15<F>(f: &mut F, a: f64, b: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center)?;

    let mut res_kronrod = f_center * WGK[7];
    let mut res_gauss = Complex64::new(0.0, 0.0);
    let mut res_abs = res_kronrod.norm();
    let mut vals = [[Complex64::new(0.0, 0.0); 2]; 7];

    for j in 0..7 {
        let abscissa = half * XGK[j];
        let f1 = f(center - abscissa)?;
        let f2 = f(center + abscissa)?;
        vals[j] = [f1, f2];
        let fsum = f1 + f2;
        res_kronrod += fsum * WGK[j];
        res_abs += WGK[j] * (f1.norm() + f2.norm());
        if j % 2 == 1 {
            // odd Kronrod indices carry the embedded Gauss nodes
            res_gauss += fsum * WG[j / 2];
        }
    }

    let mean = res_kronrod * 0.5;
    let mut res_asc = WGK[7] * (f_center - mean).norm();
    for j in 0..7 {
        res_asc += WGK[j] * ((vals[j][0] - mean).norm() + (vals[j][1] - mean).norm());
    }

    let err = ((res_kronrod - res_gauss) * half).norm();
    let value = res_kronrod * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    Ok(Panel { a, b, value, err: rescale_error(err, res_abs, res_asc) })
}

/// Integrate `f` over `[a, b]`.
///
/// `breakpoints` are clipped to the interior and used as initial panel
/// boundaries. Refinement stops once the total error estimate is below
/// `max(abs_tol, rel_tol·|value|)`; if `budget` evaluations are
/// exhausted first, the partial result is returned with
/// `budget_exceeded` set.
pub fn integrate<F>(
    mut f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    rel_tol: f64,
    abs_tol: f64,
    budget: usize,
) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    if !(b > a) {
        return Err(Error::Domain(format!("empty integration range [{a}, {b}]")));
    }
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|t| *t > a && *t < b)
        .collect();
    cuts.push(a);
    cuts.push(b);
    cuts.sort_by(|p, q| p.partial_cmp(q).unwrap());
    cuts.dedup();

    let mut evals = 0usize;
    let mut heap: BinaryHeap<Panel> = BinaryHeap::new();
    let mut total = Complex64::new(0.0, 0.0);
    let mut total_err = 0.0;
    for w in cuts.windows(2) {
        let p = gk15(&mut f, w[0], w[1])?;
        evals += 15;
        total += p.value;
        total_err += p.err;
        heap.push(p);
    }

    let mut budget_exceeded = false;
    while total_err > abs_tol.max(rel_tol * total.norm()) {
        if evals + 30 > budget {
            budget_exceeded = true;
            break;
        }
        let worst = match heap.pop() {
            Some(p) if p.err > 0.0 && p.b - p.a > 4.0 * f64::EPSILON * p.b.abs().max(1.0) => p,
            Some(p) => {
                // can't usefully refine further
                heap.push(p);
                break;
            }
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        let left = gk15(&mut f, worst.a, mid)?;
        let right = gk15(&mut f, mid, worst.b)?;
        evals += 30;
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }

    // re-sum from panels for a tighter error estimate
    let panels: Vec<Panel> = heap.into_vec();
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for p in &panels {
        value += p.value;
        err += p.err;
    }
    Ok(QuadResult { value, abs_err: err, evals, budget_exceeded })
}

/// Geometric ladder of breakpoints accumulating at `center` from both
/// sides, from `smallest` out to `reach`, doubling each step.
pub fn geometric_ladder(center: f64, smallest: f64, reach: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut w = smallest.max(1e-300);
    while w < reach {
        out.push(center - w);
        out.push(center + w);
        w *= 2.0;
    }
    out
}
