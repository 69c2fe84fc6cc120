//! Interference regime classification and the exact sum capacities it unlocks.
//!
//! All conditions compare received powers in linear units. Comparisons are
//! inclusive, with tolerance `tol · max(1, |rhs|)` so that the implication
//! "individually very strong ⇒ very strong combined" survives rounding.

use serde_json::{json, Value};

use crate::channel::ImacChannel;
use crate::error::{Error, Result};
use crate::format::json_number;
use crate::regions::{achievable_product_region, mses_region_unchecked};
use crate::scalar::Scalar;

/// Which cross link is merely strong in a mixed strong / extremely strong channel.
///
/// `H1Strong` means `h1² ≥ 1` and `h2²` extremely strong; `H2Strong` is the mirror.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    H1Strong,
    H2Strong,
}

impl Orientation {
    pub const ALL: [Orientation; 2] = [Orientation::H1Strong, Orientation::H2Strong];

    /// Short name used in reports: `mses12` or `mses21`.
    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::H1Strong => "mses12",
            Orientation::H2Strong => "mses21",
        }
    }
}

/// Signed slacks `lhs − rhs` of every regime condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Margins<T> {
    /// `[h2² − (1+P1+P2+h1²P1), h1² − 1]`
    pub mses12: [T; 2],
    /// `[h1² − (1+P1+P2+h2²P2), h2² − 1]`
    pub mses21: [T; 2],
    /// `[h1² − (1+P1+P2), h2² − (1+P1+P2)]`
    pub ivs: [T; 2],
    /// `h1²P1 + h2²P2 − (P1+P2)(1+P1+P2)`
    pub vsc: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeReport<T> {
    pub mses12: bool,
    pub mses21: bool,
    pub ivs: bool,
    pub vsc: bool,
    pub margins: Margins<T>,
}

impl<T: Scalar> RegimeReport<T> {
    pub fn mses(&self, orientation: Orientation) -> bool {
        match orientation {
            Orientation::H1Strong => self.mses12,
            Orientation::H2Strong => self.mses21,
        }
    }

    pub(crate) fn require_mses(&self, orientation: Orientation) -> Result<()> {
        let (flag, [extreme, strong], names) = match orientation {
            Orientation::H1Strong => (
                self.mses12,
                self.margins.mses12,
                ["h2^2 >= 1+P1+P2+h1^2*P1", "h1^2 >= 1"],
            ),
            Orientation::H2Strong => (
                self.mses21,
                self.margins.mses21,
                ["h1^2 >= 1+P1+P2+h2^2*P2", "h2^2 >= 1"],
            ),
        };
        if flag {
            return Ok(());
        }
        let (condition, margin) = if extreme <= strong {
            (names[0], extreme)
        } else {
            (names[1], strong)
        };
        Err(Error::Regime {
            condition,
            margin: margin.as_f64(),
        })
    }

    pub(crate) fn require_ivs(&self) -> Result<()> {
        if self.ivs {
            return Ok(());
        }
        let [a, b] = self.margins.ivs;
        let (condition, margin) = if a <= b {
            ("h1^2 >= 1+P1+P2", a)
        } else {
            ("h2^2 >= 1+P1+P2", b)
        };
        Err(Error::Regime {
            condition,
            margin: margin.as_f64(),
        })
    }

    pub fn to_json(&self) -> Value {
        let m = &self.margins;
        let pair = |v: [T; 2]| json!([json_number(v[0].as_f64()), json_number(v[1].as_f64())]);
        json!({
            "mses12": self.mses12,
            "mses21": self.mses21,
            "ivs": self.ivs,
            "vsc": self.vsc,
            "margins": {
                "mses12": pair(m.mses12),
                "mses21": pair(m.mses21),
                "ivs": pair(m.ivs),
                "vsc": json_number(m.vsc.as_f64()),
            }
        })
    }
}

/// `lhs ≥ rhs` up to `tol · max(1, |rhs|)`.
fn holds<T: Scalar>(lhs: T, rhs: T) -> bool {
    lhs - rhs >= -T::tolerance() * rhs.abs().max(T::one())
}

pub fn classify<T: Scalar>(ch: &ImacChannel<T>) -> RegimeReport<T> {
    let (p1, p2) = (ch.p1(), ch.p2());
    let (g1, g2) = (ch.h1() * ch.h1(), ch.h2() * ch.h2());
    let n = ch.interference_decoding_noise();
    let one = T::one();

    let mses12_rhs = [n + g1 * p1, one];
    let mses21_rhs = [n + g2 * p2, one];
    let mses12_lhs = [g2, g1];
    let mses21_lhs = [g1, g2];
    let vsc_rhs = ch.total_power() * n;
    let inr = ch.inr();

    let all = |lhs: [T; 2], rhs: [T; 2]| holds(lhs[0], rhs[0]) && holds(lhs[1], rhs[1]);
    let slack = |lhs: [T; 2], rhs: [T; 2]| [lhs[0] - rhs[0], lhs[1] - rhs[1]];

    RegimeReport {
        mses12: all(mses12_lhs, mses12_rhs),
        mses21: all(mses21_lhs, mses21_rhs),
        ivs: all([g1, g2], [n, n]),
        vsc: holds(inr, vsc_rhs),
        margins: Margins {
            mses12: slack(mses12_lhs, mses12_rhs),
            mses21: slack(mses21_lhs, mses21_rhs),
            ivs: [g1 - n, g2 - n],
            vsc: inr - vsc_rhs,
        },
    }
}

/// Regime under which an exact sum capacity was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CapacityRegime {
    /// Combined interference is very strong and decoding both interferers
    /// first reaches the interference-free sum capacity.
    VeryStrongCombined,
    /// Mixed strong / extremely strong interference; the value is the
    /// maximum sum rate of the corresponding capacity region.
    MixedStrongExtremelyStrong(Orientation),
    /// Both cross links individually very strong.
    IndividuallyVeryStrong,
}

impl CapacityRegime {
    pub fn as_str(self) -> &'static str {
        match self {
            CapacityRegime::VeryStrongCombined => "very-strong-combined",
            CapacityRegime::MixedStrongExtremelyStrong(o) => o.as_str(),
            CapacityRegime::IndividuallyVeryStrong => "individually-very-strong",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactSumCapacity<T> {
    pub bits: T,
    pub regime: CapacityRegime,
}

/// Sum capacity when a regime result applies, `None` otherwise.
///
/// Very strong combined interference yields `log2(1 + P1 + P2)` only when
/// the decode-interference-first product region actually attains it; when
/// a cross gain sits in `[1, (1+P1+P2)/(1+P_other))` the outer bound is
/// strictly smaller and the closed form is not reported.
pub fn exact_sum_capacity<T: Scalar>(ch: &ImacChannel<T>) -> Option<ExactSumCapacity<T>> {
    let report = classify(ch);
    let closed_form = (T::one() + ch.total_power()).log2();

    if report.vsc {
        let (achieved, _) = achievable_product_region(ch)
            .max_sum_rate()
            .expect("origin is feasible");
        if (achieved - closed_form).abs() <= T::tolerance() {
            return Some(ExactSumCapacity {
                bits: closed_form,
                regime: CapacityRegime::VeryStrongCombined,
            });
        }
    }
    for orientation in Orientation::ALL {
        if report.mses(orientation) {
            let (bits, _) = mses_region_unchecked(ch, orientation)
                .max_sum_rate()
                .expect("origin is feasible");
            return Some(ExactSumCapacity {
                bits,
                regime: CapacityRegime::MixedStrongExtremelyStrong(orientation),
            });
        }
    }
    report.ivs.then_some(ExactSumCapacity {
        bits: closed_form,
        regime: CapacityRegime::IndividuallyVeryStrong,
    })
}
