//! Exponential trend lines `time = a * exp(b * size)`, fitted in log space.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogLinearFit {
    pub coefficient: f64,
    pub exponent: f64,
    /// R² of the straight-line fit of `ln(time)` against size.
    pub r2: f64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FitError {
    TooFewPoints(usize),
    NonPositiveTime,
    ConstantSize,
}

impl fmt::Display for FitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitError::TooFewPoints(n) => write!(f, "need at least 3 points, got {n}"),
            FitError::NonPositiveTime => f.write_str("times must be positive"),
            FitError::ConstantSize => f.write_str("all sizes are equal"),
        }
    }
}

/// Least squares of `ln(time)` on `size` over `(size, seconds)` points.
pub fn fit_log_linear(points: &[(f64, f64)]) -> Result<LogLinearFit, FitError> {
    if points.len() < 3 {
        return Err(FitError::TooFewPoints(points.len()));
    }
    if !points.iter().all(|&(_, t)| t > 0.0) {
        return Err(FitError::NonPositiveTime);
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(FitError::ConstantSize);
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_tot: f64 = ys.iter().map(|y| (y - mean_y).powi(2)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let r2 = if ss_tot <= f64::EPSILON * n {
        // Flat data: the horizontal line fits it exactly.
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    Ok(LogLinearFit {
        coefficient: intercept.exp(),
        exponent: slope,
        r2,
    })
}
