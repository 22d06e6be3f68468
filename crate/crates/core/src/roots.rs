//! Scalar root finding on brackets.

/// Brent's method. `f(lo)` and `f(hi)` must differ in sign (or one be zero).
pub fn brent<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, xtol: f64, max_iter: usize) -> Option<f64> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if !(fa.is_finite() && fb.is_finite()) {
        return None;
    }
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Some(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
        if !fb.is_finite() {
            return None;
        }
    }
    None
}

/// Newton iteration kept inside a sign-changing bracket, falling back to
/// bisection whenever the step leaves it. `f` returns value and slope.
pub fn newton_bracketed<F: FnMut(f64) -> (f64, f64)>(
    mut f: F,
    lo: f64,
    hi: f64,
    xtol: f64,
    max_iter: usize,
) -> Option<f64> {
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let fa = f(a).0;
    let fb = f(b).0;
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() || !fa.is_finite() || !fb.is_finite() {
        return None;
    }
    let rising = fb > 0.0;
    let mut x = 0.5 * (a + b);
    for _ in 0..max_iter {
        let (v, dv) = f(x);
        if v == 0.0 {
            return Some(x);
        }
        if (v > 0.0) == rising {
            b = x;
        } else {
            a = x;
        }
        let mut next = x - v / dv;
        if !(next > a && next < b) || !next.is_finite() {
            next = 0.5 * (a + b);
        }
        if (next - x).abs() <= xtol * (1.0 + x.abs()) || (b - a) <= xtol * (1.0 + x.abs()) {
            return Some(next);
        }
        x = next;
    }
    None
}

/// Plain bisection, used as an independent check of the faster solvers.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, xtol: f64) -> Option<f64> {
    let (mut a, mut b) = (lo, hi);
    let fa = f(a);
    let fb = f(b);
    if fa.signum() == fb.signum() {
        return None;
    }
    let neg_at_a = fa < 0.0;
    while (b - a).abs() > xtol * (1.0 + a.abs().max(b.abs())) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return Some(m);
        }
        if (fm < 0.0) == neg_at_a {
            a = m;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}

/// Grow `[x0/factor^k, x0]` or `[x0, x0*factor^k]` until `f` changes sign.
/// Returns the bracket ordered as (near x0, far).
pub fn expand_positive<F: FnMut(f64) -> f64>(mut f: F, x0: f64, upward: bool, max_steps: usize) -> Option<(f64, f64)> {
    let f0 = f(x0);
    let mut near = x0;
    let mut far = x0;
    for _ in 0..max_steps {
        far = if upward { far * 2.0 } else { far * 0.5 };
        let v = f(far);
        if !v.is_finite() {
            return None;
        }
        if v.signum() != f0.signum() || v == 0.0 {
            return Some((near, far));
        }
        near = far;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_solvers_agree_on_cubic() {
        let f = |x: f64| x * x * x - 2.0 * x - 5.0;
        let r1 = brent(f, 2.0, 3.0, 1e-15, 100).unwrap();
        let r2 = newton_bracketed(|x| (f(x), 3.0 * x * x - 2.0), 2.0, 3.0, 1e-15, 100).unwrap();
        let r3 = bisect(f, 2.0, 3.0, 1e-15).unwrap();
        assert!((r1 - 2.0945514815423265).abs() < 1e-14);
        assert!((r1 - r2).abs() < 1e-13 && (r1 - r3).abs() < 1e-13);
    }

    #[test]
    fn no_bracket_is_reported() {
        assert!(brent(|x| x * x + 1.0, -1.0, 1.0, 1e-12, 50).is_none());
    }

    #[test]
    fn expansion_finds_sign_change() {
        let (a, b) = expand_positive(|x| x - 100.0, 1.0, true, 20).unwrap();
        assert!(a < 100.0 && b >= 100.0);
    }
}
