//! Peak location and width estimates for sampled spectra.

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Peak {
    pub position: f64,
    pub height: f64,
    /// Full width at half maximum, when both half-maximum crossings occur
    /// before a neighbouring minimum.
    pub fwhm: Option<f64>,
}

fn crossing(x0: f64, y0: f64, x1: f64, y1: f64, level: f64) -> f64 {
    if y1 == y0 {
        return x0;
    }
    x0 + (level - y0) * (x1 - x0) / (y1 - y0)
}

/// Local maxima of `y(x)` higher than `min_rel_height · max y`, ordered by
/// position. Positions are refined by a parabola through the three samples.
pub fn find_peaks(x: &[f64], y: &[f64], min_rel_height: f64) -> Vec<Peak> {
    assert_eq!(x.len(), y.len());
    let n = y.len();
    if n < 3 {
        return Vec::new();
    }
    let top = y.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut peaks = Vec::new();
    for i in 1..n - 1 {
        if !(y[i] > y[i - 1] && y[i] >= y[i + 1]) || y[i] < min_rel_height * top {
            continue;
        }
        let denom = y[i - 1] - 2.0 * y[i] + y[i + 1];
        let (mut position, mut height) = (x[i], y[i]);
        if denom < 0.0 {
            let off = 0.5 * (y[i - 1] - y[i + 1]) / denom;
            let h = x[i + 1] - x[i];
            position = x[i] + off * h;
            height = y[i] - 0.25 * (y[i - 1] - y[i + 1]) * off;
        }
        let half = 0.5 * y[i];
        let mut left = None;
        let mut j = i;
        while j > 0 && y[j - 1] <= y[j] {
            if y[j - 1] < half {
                left = Some(crossing(x[j - 1], y[j - 1], x[j], y[j], half));
                break;
            }
            j -= 1;
        }
        let mut right = None;
        let mut j = i;
        while j + 1 < n && y[j + 1] <= y[j] {
            if y[j + 1] < half {
                right = Some(crossing(x[j], y[j], x[j + 1], y[j + 1], half));
                break;
            }
            j += 1;
        }
        let fwhm = match (left, right) {
            (Some(l), Some(r)) => Some(r - l),
            _ => None,
        };
        peaks.push(Peak { position, height, fwhm });
    }
    peaks
}

/// Height of the sample `y[i]` above the higher of the two lowest points
/// within `window` samples on either side. Separates a narrow line from the
/// broad background it sits on.
pub fn prominence(y: &[f64], i: usize, window: usize) -> f64 {
    let lo = i.saturating_sub(window);
    let hi = (i + window).min(y.len() - 1);
    let left = y[lo..=i].iter().cloned().fold(f64::INFINITY, f64::min);
    let right = y[i..=hi].iter().cloned().fold(f64::INFINITY, f64::min);
    y[i] - left.max(right)
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
pub fn refine_peak(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let r = 0.5 * (5.0_f64.sqrt() - 1.0);
    let mut a = hi - r * (hi - lo);
    let mut b = lo + r * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    while hi - lo > tol {
        if fa > fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - r * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + r * (hi - lo);
            fb = f(b);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}
