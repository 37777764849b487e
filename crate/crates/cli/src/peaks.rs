//! Peak finding on sampled curves.

/// Indices of interior samples that rise strictly from the left and do not fall to the right.
pub fn local_maxima(values: &[f64]) -> Vec<usize> {
    if values.len() < 3 {
        return Vec::new();
    }
    (1..values.len() - 1)
        .filter(|&i| values[i] > values[i - 1] && values[i] >= values[i + 1])
        .collect()
}

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
pub fn refine_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Index of the largest finite sample.
pub fn argmax(values: &[f64]) -> Option<usize> {
    values
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_finite())
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
}

/// Full width at half maximum of the peak at `peak`, with linear
/// interpolation of the half-height crossings. `None` if the curve does not
/// drop below half height on both sides.
pub fn fwhm(xs: &[f64], ys: &[f64], peak: usize) -> Option<f64> {
    let half = ys[peak] / 2.0;
    let crossing = |i: usize, j: usize| xs[i] + (half - ys[i]) * (xs[j] - xs[i]) / (ys[j] - ys[i]);
    let left = (0..peak)
        .rev()
        .find(|&i| ys[i] < half)
        .map(|i| crossing(i, i + 1))?;
    let right = (peak + 1..ys.len())
        .find(|&i| ys[i] < half)
        .map(|i| crossing(i - 1, i))?;
    Some(right - left)
}
