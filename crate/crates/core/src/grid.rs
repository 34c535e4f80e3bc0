//! Time grids (units of `1/γ₀`).

use crate::error::{Error, Result};

/// Relative tolerance used to decide whether a grid has a uniform step.
const UNIFORM_RTOL: f64 = 1e-9;

/// A strictly increasing, non-negative sequence of times starting at `t = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    times: Vec<f64>,
}

impl TimeGrid {
    /// Uniform grid of `points` samples on `[0, t_max]`.
    pub fn uniform(t_max: f64, points: usize) -> Result<Self> {
        if !(t_max.is_finite() && t_max > 0.0) {
            return Err(Error::InvalidGrid(format!("t_max must be finite and > 0, got {t_max}")));
        }
        if points < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 points, got {points}")));
        }
        let n = points - 1;
        let times = (0..points).map(|i| t_max * i as f64 / n as f64).collect();
        Ok(Self { times })
    }

    pub fn from_points(times: Vec<f64>) -> Result<Self> {
        match times.first() {
            None => return Err(Error::InvalidGrid("grid is empty".into())),
            Some(&t0) if t0 != 0.0 => return Err(Error::InvalidGrid(format!("grid must start at t = 0, got {t0}"))),
            _ => {}
        }
        if let Some(bad) = times.iter().find(|t| !t.is_finite()) {
            return Err(Error::InvalidGrid(format!("non-finite time {bad}")));
        }
        if let Some(w) = times.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::InvalidGrid(format!(
                "times must be strictly increasing ({} followed by {})",
                w[0], w[1]
            )));
        }
        Ok(Self { times })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn t_max(&self) -> f64 {
        *self.times.last().expect("grid is never empty")
    }

    /// The common step if the grid is uniform, `None` otherwise.
    ///
    /// A single-point grid (`[0]`) has no step.
    pub fn uniform_step(&self) -> Option<f64> {
        if self.times.len() < 2 {
            return None;
        }
        let h = self.t_max() / (self.times.len() - 1) as f64;
        let uniform =
            self.times.iter().enumerate().all(|(i, &t)| (t - h * i as f64).abs() <= UNIFORM_RTOL * self.t_max());
        uniform.then_some(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_grid_endpoints() {
        let g = TimeGrid::uniform(50.0, 2001).unwrap();
        assert_eq!(g.len(), 2001);
        assert_eq!(g.times()[0], 0.0);
        assert_eq!(g.t_max(), 50.0);
        assert!((g.uniform_step().unwrap() - 0.025).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(TimeGrid::from_points(vec![]).is_err());
        assert!(TimeGrid::from_points(vec![0.5, 1.0]).is_err());
        assert!(TimeGrid::from_points(vec![0.0, 1.0, 1.0]).is_err());
        assert!(TimeGrid::from_points(vec![0.0, 2.0, 1.0]).is_err());
        assert!(TimeGrid::from_points(vec![0.0, f64::NAN]).is_err());
        assert!(TimeGrid::uniform(0.0, 10).is_err());
        assert!(TimeGrid::uniform(1.0, 1).is_err());
    }

    #[test]
    fn single_point_grid() {
        let g = TimeGrid::from_points(vec![0.0]).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.uniform_step(), None);
    }

    #[test]
    fn non_uniform_detected() {
        let g = TimeGrid::from_points(vec![0.0, 1.0, 3.0]).unwrap();
        assert_eq!(g.uniform_step(), None);
    }
}
