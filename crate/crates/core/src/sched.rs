//! Geometric ε-schedules driving sweeps.

use crate::error::{Error, Result};

/// A strictly decreasing geometric sequence `eps0 · ratio^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsSchedule {
    pub eps0: f64,
    pub ratio: f64,
    pub count: usize,
}

impl EpsSchedule {
    pub fn new(eps0: f64, ratio: f64, count: usize) -> Result<EpsSchedule> {
        if !(eps0 > 0.0) {
            return Err(Error::BadSchedule("eps0 must be positive".into()));
        }
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::BadSchedule("ratio must lie in (0, 1)".into()));
        }
        if count < 6 {
            return Err(Error::BadSchedule("count must be at least 6".into()));
        }
        Ok(EpsSchedule { eps0, ratio, count })
    }

    /// Default sweep: 2^-4 halving down to ~7.6e-6.
    pub fn default_sweep() -> EpsSchedule {
        EpsSchedule { eps0: 0.0625, ratio: 0.5, count: 14 }
    }

    /// Short sweep for oscillatory integrands: 2^-4 down to 2^-10.
    pub fn oscillatory() -> EpsSchedule {
        EpsSchedule { eps0: 0.0625, ratio: 0.5, count: 7 }
    }

    /// Halving sweep from 2^-4 with the given length.
    pub fn halving(count: usize) -> EpsSchedule {
        EpsSchedule { eps0: 0.0625, ratio: 0.5, count }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count)
            .map(|j| self.eps0 * self.ratio.powi(j as i32))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_are_strictly_decreasing() {
        let v = EpsSchedule::default_sweep().values();
        assert_eq!(v.len(), 14);
        assert!(v.windows(2).all(|w| w[1] < w[0]));
        assert!((v[13] - 0.0625 * 0.5f64.powi(13)).abs() < 1e-20);
    }

    #[test]
    fn invalid_schedules_are_rejected() {
        assert!(EpsSchedule::new(0.0, 0.5, 10).is_err());
        assert!(EpsSchedule::new(0.1, 1.0, 10).is_err());
        assert!(EpsSchedule::new(0.1, 0.5, 5).is_err());
    }
}
