//! Sum-capacity bounds: the genie-aided upper bound and treating
//! interference as noise.
//!
//! The genie bound is
//!
//! ```text
//! min over ρ ∈ [-1, 1], η² ≤ 1 − ρ² of
//!     log2(1 + (INR + A / (1 − ρ² + INR)) / η²)
//! A = P1(η − ρh1)² + P2(η − ρh2)² + P1·P2·(h1 − h2)²
//! ```
//!
//! Substituting `η = t·√(1 − ρ²)` turns the feasible set into the square
//! `(ρ, t) ∈ [-1, 1]²`, searched by a coarse grid and then Nelder–Mead.

use serde_json::{json, Value};

use crate::channel::ImacChannel;
use crate::error::{Error, Result};
use crate::format::json_number;
use crate::optimize::{grid_min, nelder_mead};
use crate::regimes::{exact_sum_capacity, CapacityRegime};
use crate::regions::outer_bound;
use crate::scalar::Scalar;

/// Genie correlation `rho` and noise amplitude `eta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenieParams<T> {
    rho: T,
    eta: T,
}

impl<T: Scalar> GenieParams<T> {
    /// Requires `ρ ∈ [-1, 1]` and `η² ≤ 1 − ρ²` (within tolerance).
    pub fn new(rho: T, eta: T) -> Result<Self> {
        if !(rho.is_finite() && eta.is_finite()) {
            return Err(Error::GenieDomain(format!("non-finite parameters rho={rho}, eta={eta}")));
        }
        if rho.abs() > T::one() {
            return Err(Error::GenieDomain(format!("rho={rho} outside [-1, 1]")));
        }
        if eta * eta > T::one() - rho * rho + T::tolerance() {
            return Err(Error::GenieDomain(format!("eta^2={} exceeds 1 - rho^2", eta * eta)));
        }
        Ok(GenieParams { rho, eta })
    }

    /// Maps `(ρ, t) ∈ [-1, 1]²` onto the feasible set via `η = t·√(1 − ρ²)`.
    pub fn from_square(rho: T, t: T) -> Self {
        let eta = t * (T::one() - rho * rho).max(T::zero()).sqrt();
        GenieParams { rho, eta }
    }

    pub fn rho(&self) -> T {
        self.rho
    }

    pub fn eta(&self) -> T {
        self.eta
    }
}

/// Genie objective in bits.
///
/// Fails for `|η|` below [`Scalar::eta_floor`], where the expression
/// diverges whenever `INR > 0`. With both cross gains zero, `A = (P1+P2)η²`
/// and the simplified value `log2(1 + (P1+P2)/(1−ρ²))` is used instead.
pub fn genie_objective<T: Scalar>(ch: &ImacChannel<T>, p: &GenieParams<T>) -> Result<T> {
    let (rho, eta) = (p.rho, p.eta);
    let one = T::one();
    let rho_c = one - rho * rho;

    if ch.h1() == T::zero() && ch.h2() == T::zero() {
        if rho_c <= T::zero() {
            return Err(Error::GenieDomain(format!("rho={rho} leaves no genie noise")));
        }
        return Ok((one + ch.total_power() / rho_c).log2());
    }
    if eta.abs() < T::eta_floor() {
        return Err(Error::GenieDomain(format!("|eta|={} below floor", eta.abs())));
    }

    let (p1, p2, h1, h2) = (ch.p1(), ch.p2(), ch.h1(), ch.h2());
    let inr = ch.inr();
    let a = p1 * (eta - rho * h1).powi(2) + p2 * (eta - rho * h2).powi(2) + p1 * p2 * (h1 - h2).powi(2);
    Ok((one + (inr + a / (rho_c + inr)) / (eta * eta)).log2())
}

/// Grid and refinement settings for [`upper_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OptimizerSettings {
    /// Points per axis of the coarse `(ρ, t)` grid.
    pub grid: usize,
    /// Nelder–Mead iterations started from the best grid point.
    pub refine_iterations: usize,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        OptimizerSettings {
            grid: 201,
            refine_iterations: 200,
        }
    }
}

impl OptimizerSettings {
    pub fn validate(&self) -> Result<()> {
        if self.grid < 2 {
            return Err(Error::invalid("grid", format!("need at least 2 points per axis, got {}", self.grid)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenieBound<T> {
    pub bits: T,
    pub argmin: GenieParams<T>,
    /// Best value found on the coarse grid alone.
    pub grid_bits: T,
}

/// Approximate global minimum of [`genie_objective`].
///
/// Never exceeds the best coarse-grid value.
pub fn upper_bound<T: Scalar>(ch: &ImacChannel<T>, settings: &OptimizerSettings) -> Result<GenieBound<T>> {
    settings.validate()?;
    let objective = |[rho, t]: [T; 2]| {
        genie_objective(ch, &GenieParams::from_square(rho, t)).unwrap_or(T::infinity())
    };
    let (grid_bits, grid_point) = grid_min(settings.grid, objective);
    if !grid_bits.is_finite() {
        return Err(Error::GenieDomain("objective is infinite on the whole grid".into()));
    }
    let spacing = T::lit(2.0) / T::from_usize(settings.grid - 1).expect("grid size fits");
    let (refined, point) = if settings.refine_iterations > 0 {
        nelder_mead(grid_point, spacing, settings.refine_iterations, objective)
    } else {
        (grid_bits, grid_point)
    };
    let (bits, [rho, t]) = if refined < grid_bits {
        (refined, point)
    } else {
        (grid_bits, grid_point)
    };
    Ok(GenieBound {
        bits,
        argmin: GenieParams::from_square(rho, t),
        grid_bits,
    })
}

/// Sum rate of Gaussian codes with interference treated as noise:
/// `log2(1 + (P1 + P2) / (1 + INR))`.
pub fn lower_bound_tin<T: Scalar>(ch: &ImacChannel<T>) -> T {
    (T::one() + ch.total_power() / (T::one() + ch.inr())).log2()
}

/// Lower and upper sum-capacity bounds with their gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumCapacityBounds<T> {
    pub lower: T,
    pub upper: T,
    pub gap: T,
    pub argmin: GenieParams<T>,
    /// Set when a regime result pins the sum capacity exactly.
    pub exact: Option<CapacityRegime>,
}

impl<T: Scalar> SumCapacityBounds<T> {
    pub fn to_json(&self) -> Value {
        json!({
            "lower_bits": json_number(self.lower.as_f64()),
            "upper_bits": json_number(self.upper.as_f64()),
            "gap_bits": json_number(self.gap.as_f64()),
            "argmin": {
                "rho": json_number(self.argmin.rho.as_f64()),
                "eta": json_number(self.argmin.eta.as_f64()),
            },
            "exact": self.exact.map(|r| r.as_str()),
        })
    }
}

/// Combines every bound the crate knows.
///
/// `upper = min(genie bound, max sum rate of the outer region)` and
/// `lower = TIN`; when a regime result applies both equal the exact value.
pub fn bounds<T: Scalar>(ch: &ImacChannel<T>, settings: &OptimizerSettings) -> Result<SumCapacityBounds<T>> {
    let genie = upper_bound(ch, settings)?;
    let (outer, _) = outer_bound(ch).max_sum_rate()?;
    let (lower, upper, exact) = match exact_sum_capacity(ch) {
        Some(e) => (e.bits, e.bits, Some(e.regime)),
        None => (lower_bound_tin(ch), genie.bits.min(outer), None),
    };
    Ok(SumCapacityBounds {
        lower,
        upper,
        gap: upper - lower,
        argmin: genie.argmin,
        exact,
    })
}
