//! Parameter sweeps behind `sweep-power`, `gap-grid` and `regime-grid`.
//!
//! Cells are computed in parallel and collected in grid order, so the
//! output only depends on the configuration.

use imac::{bounds, classify, ImacChannelF64, OptimizerSettings};
use rayon::prelude::*;

use crate::table::{Cell, Table};
use crate::UsageError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Spacing {
    Linear,
    Log,
}

/// One swept parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl Axis {
    pub fn linear(start: f64, stop: f64, points: usize) -> Self {
        Axis { start, stop, points, spacing: Spacing::Linear }
    }

    pub fn validate(&self, name: &str) -> Result<(), UsageError> {
        if self.points < 2 {
            return Err(UsageError(format!("{name}: need at least 2 points, got {}", self.points)));
        }
        if !(self.start.is_finite() && self.stop.is_finite() && self.start < self.stop) {
            return Err(UsageError(format!("{name}: start {} must be below stop {}", self.start, self.stop)));
        }
        if self.spacing == Spacing::Log && self.start <= 0.0 {
            return Err(UsageError(format!("{name}: logarithmic spacing needs a positive start")));
        }
        Ok(())
    }

    /// Grid values; both endpoints are exact.
    pub fn values(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i == 0 {
                    return self.start;
                }
                if i + 1 == self.points {
                    return self.stop;
                }
                let u = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.start + (self.stop - self.start) * u,
                    Spacing::Log => (self.start.ln() + (self.stop.ln() - self.start.ln()) * u).exp(),
                }
            })
            .collect()
    }
}

fn channel(p1: f64, p2: f64, h1: f64, h2: f64) -> Result<ImacChannelF64, UsageError> {
    ImacChannelF64::new(p1, p2, h1, h2).map_err(|e| UsageError(e.to_string()))
}

/// Sum-capacity bounds against `P` with `P1 = P2 = P`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSweep {
    pub power: Axis,
    pub h1: f64,
    pub h2: f64,
    pub optimizer: OptimizerSettings,
}

impl PowerSweep {
    pub fn run(&self) -> anyhow::Result<Table> {
        self.power.validate("P")?;
        self.optimizer.validate().map_err(|e| UsageError(e.to_string()))?;
        let channels = self
            .power
            .values()
            .into_iter()
            .map(|p| channel(p, p, self.h1, self.h2).map(|c| (p, c)))
            .collect::<Result<Vec<_>, _>>()?;
        let rows = channels
            .par_iter()
            .map(|(p, c)| {
                let b = bounds(c, &self.optimizer)?;
                Ok(vec![Cell::Num(*p), b.lower.into(), b.upper.into(), b.gap.into()])
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        Ok(Table {
            header: vec!["P", "lower_bits", "upper_bits", "gap_bits"],
            rows,
        })
    }
}

/// Level sets of the gap plot.
pub const GAP_BANDS: [f64; 5] = [0.1, 0.2, 0.4, 0.8, 1.6];

pub fn gap_band(gap: f64) -> String {
    GAP_BANDS
        .iter()
        .find(|&&t| gap < t)
        .map(|t| format!("<{t}"))
        .unwrap_or_else(|| format!(">={}", GAP_BANDS[GAP_BANDS.len() - 1]))
}

/// Bound gap over a `(h1, h2)` grid at fixed powers.
#[derive(Debug, Clone, PartialEq)]
pub struct GapGrid {
    pub p1: f64,
    pub p2: f64,
    pub h1: Axis,
    pub h2: Axis,
    pub bands: bool,
    pub optimizer: OptimizerSettings,
}

impl GapGrid {
    pub fn run(&self) -> anyhow::Result<Table> {
        self.h1.validate("h1")?;
        self.h2.validate("h2")?;
        self.optimizer.validate().map_err(|e| UsageError(e.to_string()))?;
        let mut cells = Vec::new();
        for &h1 in &self.h1.values() {
            for &h2 in &self.h2.values() {
                cells.push((h1, h2, channel(self.p1, self.p2, h1, h2)?));
            }
        }
        let rows = cells
            .par_iter()
            .map(|(h1, h2, c)| {
                let gap = bounds(c, &self.optimizer)?.gap;
                let mut row = vec![Cell::Num(*h1), Cell::Num(*h2), Cell::Num(gap)];
                if self.bands {
                    row.push(Cell::Text(gap_band(gap)));
                }
                Ok(row)
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        let mut header = vec!["h1", "h2", "gap_bits"];
        if self.bands {
            header.push("band");
        }
        Ok(Table { header, rows })
    }
}

/// Regime flags over the received interference powers `x = h1²P1`, `y = h2²P2`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegimeGrid {
    pub p1: f64,
    pub p2: f64,
    pub x: Axis,
    pub y: Axis,
}

impl RegimeGrid {
    /// Axes spanning twice the combined threshold `(P1+P2)(1+P1+P2)`.
    pub fn default_axis(p1: f64, p2: f64, points: usize) -> Axis {
        Axis::linear(0.0, 2.0 * (p1 + p2) * (1.0 + p1 + p2), points)
    }

    pub fn run(&self) -> anyhow::Result<Table> {
        self.x.validate("x")?;
        self.y.validate("y")?;
        if self.x.start < 0.0 || self.y.start < 0.0 {
            return Err(UsageError("interference powers must be nonnegative".into()).into());
        }
        let mut rows = Vec::new();
        for &x in &self.x.values() {
            for &y in &self.y.values() {
                let c = channel(self.p1, self.p2, (x / self.p1).sqrt(), (y / self.p2).sqrt())?;
                let r = classify(&c);
                rows.push(vec![
                    Cell::Num(x),
                    Cell::Num(y),
                    r.mses12.into(),
                    r.mses21.into(),
                    r.ivs.into(),
                    r.vsc.into(),
                ]);
            }
        }
        Ok(Table {
            header: vec!["x", "y", "mses12", "mses21", "ivs", "vsc"],
            rows,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_values() {
        assert_eq!(Axis::linear(0.0, 1.0, 5).values(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let log = Axis { start: 0.1, stop: 10.0, points: 3, spacing: Spacing::Log }.values();
        assert_eq!(log[0], 0.1);
        assert!((log[1] - 1.0).abs() < 1e-12);
        assert_eq!(log[2], 10.0);
    }

    #[test]
    fn axis_validation() {
        assert!(Axis::linear(0.0, 1.0, 1).validate("a").is_err());
        assert!(Axis::linear(1.0, 1.0, 3).validate("a").is_err());
        assert!(Axis { start: 0.0, stop: 1.0, points: 3, spacing: Spacing::Log }.validate("a").is_err());
    }

    #[test]
    fn bands() {
        assert_eq!(gap_band(0.05), "<0.1");
        assert_eq!(gap_band(0.1), "<0.2");
        assert_eq!(gap_band(1.0), "<1.6");
        assert_eq!(gap_band(2.0), ">=1.6");
    }

    #[test]
    fn two_point_power_sweep() {
        let s = PowerSweep {
            power: Axis { start: 0.1, stop: 50.0, points: 2, spacing: Spacing::Log },
            h1: 0.3,
            h2: 0.15,
            optimizer: OptimizerSettings { grid: 41, refine_iterations: 50 },
        };
        let t = s.run().unwrap();
        assert_eq!(t.rows.len(), 2);
        for row in &t.rows {
            let [Cell::Num(_), Cell::Num(lo), Cell::Num(up), Cell::Num(gap)] = row[..] else { panic!() };
            assert_eq!(gap, up - lo);
        }
    }

    #[test]
    fn regime_grid_corners() {
        let g = RegimeGrid { p1: 1.0, p2: 1.0, x: Axis::linear(0.0, 3.0, 2), y: Axis::linear(0.0, 3.0, 2) };
        let t = g.run().unwrap();
        let flags = |r: &Vec<Cell>| r[2..].to_vec();
        assert_eq!(flags(&t.rows[0]), vec![Cell::Bool(false); 4]);
        // x = P1(1+P1+P2), y = P2(1+P1+P2): both links individually very strong.
        assert_eq!(t.rows[3][4], Cell::Bool(true));
        assert_eq!(t.rows[3][5], Cell::Bool(true));
    }
}
