use crate::config::Limiter;

fn minmod(a: f64, b: f64) -> f64 {
    if a * b <= 0.0 {
        0.0
    } else if a.abs() < b.abs() {
        a
    } else {
        b
    }
}

/// Limited slope from the backward and forward differences.
#[must_use]
pub fn limited_slope(limiter: Limiter, back: f64, fwd: f64) -> f64 {
    match limiter {
        Limiter::Minmod => minmod(back, fwd),
        Limiter::VanLeer => {
            if back * fwd <= 0.0 {
                0.0
            } else {
                2.0 * back * fwd / (back + fwd)
            }
        }
        // Centred slope clipped so both face values stay within the neighbour range.
        Limiter::Barth => {
            if back * fwd <= 0.0 {
                0.0
            } else {
                minmod(0.5 * (back + fwd), minmod(2.0 * back, 2.0 * fwd))
            }
        }
        Limiter::Superbee => {
            if back * fwd <= 0.0 {
                return 0.0;
            }
            let s1 = minmod(fwd, 2.0 * back);
            let s2 = minmod(2.0 * fwd, back);
            if s1.abs() > s2.abs() {
                s1
            } else {
                s2
            }
        }
    }
}

#[must_use]
pub fn limited_slopes(limiter: Limiter, left: &[f64; 5], mid: &[f64; 5], right: &[f64; 5]) -> [f64; 5] {
    std::array::from_fn(|k| limited_slope(limiter, mid[k] - left[k], right[k] - mid[k]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extrema_get_zero_slope() {
        for l in [Limiter::Minmod, Limiter::VanLeer, Limiter::Barth, Limiter::Superbee] {
            assert_eq!(limited_slope(l, 1.0, -2.0), 0.0);
            assert_eq!(limited_slope(l, 0.0, 3.0), 0.0);
        }
    }

    #[test]
    fn linear_data_keep_their_slope() {
        for l in [Limiter::Minmod, Limiter::VanLeer, Limiter::Barth, Limiter::Superbee] {
            assert!((limited_slope(l, 0.5, 0.5) - 0.5).abs() < 1e-15);
        }
    }
}
