use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

/// Least-squares fit of `log(error) = slope * log(h) + intercept`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub slope: f64,
    pub intercept: f64,
    pub h: Vec<f64>,
    pub errors: Vec<f64>,
    /// False if the error grows from one level to the next.
    pub monotone: bool,
}

pub fn convergence_report(h: &[f64], errors: &[f64]) -> Result<ConvergenceReport> {
    if h.len() != errors.len() {
        return Err(Error::InvalidInput(format!(
            "{} mesh sizes but {} errors",
            h.len(),
            errors.len()
        )));
    }
    if h.len() < 3 {
        return Err(Error::TooFewPoints {
            required: 3,
            got: h.len(),
        });
    }
    if h.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidInput(
            "mesh sizes must be strictly decreasing".into(),
        ));
    }
    if h.iter()
        .chain(errors)
        .any(|v| v.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) || !v.is_finite())
    {
        return Err(Error::InvalidInput(
            "mesh sizes and errors must be positive".into(),
        ));
    }
    let xs: Vec<f64> = h.iter().map(|v| v.ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    Ok(ConvergenceReport {
        slope,
        intercept: my - slope * mx,
        h: h.to_vec(),
        errors: errors.to_vec(),
        monotone: errors.windows(2).all(|w| w[1] <= w[0]),
    })
}

impl ConvergenceReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("h,error,fit\n");
        for (h, e) in self.h.iter().zip(&self.errors) {
            let fit = (self.intercept + self.slope * h.ln()).exp();
            let _ = writeln!(s, "{h:.10e},{e:.10e},{fit:.10e}");
        }
        s
    }

    /// Whitespace-separated `log10(h) log10(error)` columns with the slope in a comment.
    pub fn plot_data(&self) -> String {
        let mut s = format!("# slope {:.6}\n# log10(h) log10(error)\n", self.slope);
        for (h, e) in self.h.iter().zip(&self.errors) {
            let _ = writeln!(s, "{:.8} {:.8}", h.log10(), e.log10());
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_laws() {
        let h = [0.5, 0.25, 0.125, 0.0625];
        let e2: Vec<f64> = h.iter().map(|h| 3.0 * h * h).collect();
        let r = convergence_report(&h, &e2).unwrap();
        assert!((r.slope - 2.0).abs() < 1e-12);
        assert!((r.intercept - 3f64.ln()).abs() < 1e-12);
        assert!(r.monotone);
        let e1: Vec<f64> = h.iter().map(|h| 0.7 * h).collect();
        assert!((convergence_report(&h, &e1).unwrap().slope - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_series() {
        assert!(matches!(
            convergence_report(&[1.0, 0.5], &[1.0, 0.3]),
            Err(Error::TooFewPoints { got: 2, .. })
        ));
        assert!(convergence_report(&[1.0, 1.0, 0.5], &[1.0, 0.5, 0.2]).is_err());
        assert!(convergence_report(&[1.0, 0.5, 0.2], &[1.0, 0.0, 0.2]).is_err());
    }

    #[test]
    fn flags_non_monotone_series_and_writes_tables() {
        let r = convergence_report(&[1.0, 0.5, 0.25], &[1.0, 2.0, 0.1]).unwrap();
        assert!(!r.monotone);
        let csv = r.to_csv();
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.starts_with("h,error,fit"));
        assert_eq!(
            r.plot_data()
                .lines()
                .filter(|l| !l.starts_with('#'))
                .count(),
            3
        );
    }
}
