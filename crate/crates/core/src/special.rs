//! Cancellation-free forms of sin(x)/x, sinh(x)/x and (sin x - x cos x)/x^3.

const SINC_SERIES_BELOW: f64 = 1e-4;
const F3_SERIES_BELOW: f64 = 0.05;

/// sin(x)/x, with sinc(0) = 1.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < SINC_SERIES_BELOW {
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0))
    } else {
        x.sin() / x
    }
}

/// sinh(x)/x, with sinhc(0) = 1.
pub fn sinhc(x: f64) -> f64 {
    if x.abs() < SINC_SERIES_BELOW {
        let x2 = x * x;
        1.0 + x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0))
    } else {
        x.sinh() / x
    }
}

/// (sin x - x cos x)/x^3, with f3(0) = 1/3. Equals j1(x)/x.
pub fn f3(x: f64) -> f64 {
    if x.abs() < F3_SERIES_BELOW {
        // sum_k (-1)^k x^(2k) / ((2k+3) (2k+1)!)
        let x2 = x * x;
        1.0 / 3.0 - x2 / 30.0 + x2 * x2 / 840.0 - x2 * x2 * x2 / 45360.0 + x2 * x2 * x2 * x2 / 3991680.0
    } else {
        (x.sin() - x * x.cos()) / (x * x * x)
    }
}
