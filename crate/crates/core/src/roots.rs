//! Bracketing root finders and a golden-section minimizer.

/// Bisection on `[a, b]`; requires `f(a)` and `f(b)` of opposite sign (or zero).
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> Option<f64> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return None;
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if (b - a).abs() <= tol || m == a || m == b {
            return Some(m);
        }
        let fm = f(m);
        if fm == 0.0 {
            return Some(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}

/// Bisection down to `coarse`, then secant steps kept inside the bracket.
pub fn bisect_secant<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    coarse: f64,
    tol: f64,
) -> Option<f64> {
    let mut lo = a;
    let mut hi = b;
    let mut flo = f(lo);
    let fhi = f(hi);
    if !(flo.is_finite() && fhi.is_finite()) || flo.signum() == fhi.signum() {
        if flo == 0.0 {
            return Some(lo);
        }
        if fhi == 0.0 {
            return Some(hi);
        }
        return None;
    }
    while (hi - lo).abs() > coarse {
        let m = 0.5 * (lo + hi);
        let fm = f(m);
        if fm == 0.0 {
            return Some(m);
        }
        if fm.signum() == flo.signum() {
            lo = m;
            flo = fm;
        } else {
            hi = m;
        }
    }
    let mut x0 = lo;
    let mut x1 = hi;
    let mut f0 = flo;
    let mut f1 = f(hi);
    for _ in 0..60 {
        if f1 == f0 {
            break;
        }
        let x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if !x2.is_finite() || x2 < lo.min(hi) || x2 > lo.max(hi) {
            break;
        }
        let f2 = f(x2);
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
        if (x1 - x0).abs() <= tol || f1 == 0.0 {
            return Some(x1);
        }
    }
    bisect(f, lo, hi, tol)
}

/// Golden-section minimization of a unimodal function on `[a, b]`.
pub fn golden_min<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}
