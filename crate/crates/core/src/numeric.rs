//! One-dimensional search, root bracketing and adaptive quadrature.

use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section maximization of `f` on `[lo, hi]`.
///
/// Returns the best point seen, including the interval ends, so a maximum on
/// the boundary is reported exactly.
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
    let mut best = (lo, f(lo));
    let f_hi = f(hi);
    if f_hi > best.1 {
        best = (hi, f_hi);
    }
    if b - a <= tol {
        return best;
    }
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    for (x, fx) in [(c, fc), (d, fd)] {
        if fx > best.1 {
            best = (x, fx);
        }
    }
    best
}

/// Coarse scan over `n` equal intervals, then golden-section refinement
/// around the best grid point. Guards against multimodal objectives.
pub fn scan_then_golden<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, n: usize, tol: f64) -> (f64, f64) {
    debug_assert!(n >= 2);
    if hi <= lo {
        return (lo, f(lo));
    }
    let h = (hi - lo) / n as f64;
    let mut best_i = 0;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..=n {
        let x = if i == n { hi } else { lo + i as f64 * h };
        let v = f(x);
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let left = if best_i == 0 { lo } else { lo + (best_i - 1) as f64 * h };
    let right = if best_i >= n - 1 { hi } else { lo + (best_i + 1) as f64 * h };
    let grid_x = if best_i == n { hi } else { lo + best_i as f64 * h };
    let (x, v) = golden_max(&mut f, left, right, tol);
    if v > best_v {
        (x, v)
    } else {
        (grid_x, best_v)
    }
}

/// Bisection for a sign change of `f` on `[lo, hi]`, stopping once
/// `|f(x)| < residual_tol` or the bracket has collapsed to machine precision.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, residual_tol: f64) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(Error::Numeric(format!("no sign change on [{lo}, {hi}]: f = {fa}, {fb}")));
    }
    for _ in 0..400 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm.abs() < residual_tol || m <= a || m >= b {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Smallest `x` in `[lo, hi]` where a nondecreasing predicate-like function
/// `g(x) >= 0` holds, assuming `g(hi) >= 0`. Bisects to `residual_tol` on `g`.
pub fn first_nonnegative<F: FnMut(f64) -> f64>(mut g: F, lo: f64, hi: f64, residual_tol: f64) -> f64 {
    if g(lo) >= 0.0 {
        return lo;
    }
    let (mut a, mut b) = (lo, hi);
    for _ in 0..400 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let gm = g(m);
        if gm >= 0.0 {
            b = m;
            if gm < residual_tol {
                break;
            }
        } else {
            a = m;
        }
    }
    b
}

/// Largest `x` in `[lo, hi]` with `g(x) >= 0` for a nonincreasing `g`,
/// assuming `g(lo) >= 0`.
pub fn last_nonnegative<F: FnMut(f64) -> f64>(mut g: F, lo: f64, hi: f64, residual_tol: f64) -> f64 {
    if g(hi) >= 0.0 {
        return hi;
    }
    let (mut a, mut b) = (lo, hi);
    for _ in 0..400 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let gm = g(m);
        if gm >= 0.0 {
            a = m;
            if gm < residual_tol {
                break;
            }
        } else {
            b = m;
        }
    }
    a
}

// Gauss–Kronrod 7/15 abscissae and weights (QUADPACK qk15).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Globally adaptive Gauss–Kronrod quadrature of `f` over `[a, b]`, refining
/// the interval with the largest error estimate until the summed estimate is
/// below `abs_tol`.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, abs_tol: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    const MAX_INTERVALS: usize = 4000;
    let (v, e) = gk15(&mut f, a, b);
    let mut parts = vec![(a, b, v, e)];
    let mut total_err = e;
    while total_err > abs_tol && parts.len() < MAX_INTERVALS {
        let (idx, _) = parts.iter().enumerate().max_by(|x, y| x.1 .3.total_cmp(&y.1 .3)).expect("non-empty");
        let (lo, hi, _, err) = parts.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            parts.push((lo, hi, 0.0, 0.0));
            total_err -= err;
            continue;
        }
        let (v1, e1) = gk15(&mut f, lo, mid);
        let (v2, e2) = gk15(&mut f, mid, hi);
        total_err += e1 + e2 - err;
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
    }
    parts.iter().map(|p| p.2).sum()
}
