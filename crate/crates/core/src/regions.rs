//! Four-dimensional rate polytopes of the interfering MAC.
//!
//! Every region here is an intersection of polymatroids, i.e. a list of
//! constraints `Σ_{i∈mask} R_i ≤ rhs` plus `R ≥ 0`. Sum-rate maximization
//! enumerates all bases of the augmented constraint system, which is exact
//! and cheap at this size (a few thousand 4×4 solves).

use serde_json::{json, Value};

use crate::channel::{ImacChannel, Receiver};
use crate::error::{Error, Result};
use crate::format::json_number;
use crate::polymatroid::MacSpec;
use crate::regimes::{classify, Orientation};
use crate::scalar::{le_tol, Scalar};
use crate::users::{UserSet, MAX_USERS};

const DIM: usize = MAX_USERS;

/// `Σ_{i∈mask} R_i ≤ rhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constraint<T> {
    pub mask: UserSet,
    pub rhs: T,
}

/// A rate tuple `(R1, R2, R3, R4)` in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePoint4<T>([T; DIM]);

impl<T: Scalar> RatePoint4<T> {
    pub fn new(rates: [T; DIM]) -> Result<Self> {
        if let Some(r) = rates.iter().find(|r| !(r.is_finite() && **r >= T::zero())) {
            return Err(Error::invalid("rates", format!("rates must be nonnegative and finite, got {r}")));
        }
        Ok(RatePoint4(rates))
    }

    pub fn origin() -> Self {
        RatePoint4([T::zero(); DIM])
    }

    pub fn rates(&self) -> [T; DIM] {
        self.0
    }

    /// Rate of transmitter `label` (1..=4).
    pub fn rate(&self, label: usize) -> T {
        self.0[label - 1]
    }

    pub fn sum(&self) -> T {
        self.0.iter().fold(T::zero(), |a, &r| a + r)
    }

    fn mask_sum(&self, mask: UserSet) -> T {
        mask.positions().fold(T::zero(), |a, k| a + self.0[k])
    }
}

/// A bounded polytope in nonnegative 4-space.
#[derive(Debug, Clone, PartialEq)]
pub struct RatePolytope<T> {
    constraints: Vec<Constraint<T>>,
}

impl<T: Scalar> RatePolytope<T> {
    /// Validates and normalizes a constraint list.
    ///
    /// Repeated masks keep the smallest right-hand side. Constraints are
    /// ordered by mask size, then by mask bits.
    pub fn new(constraints: impl IntoIterator<Item = Constraint<T>>) -> Result<Self> {
        let mut kept: Vec<Constraint<T>> = Vec::new();
        for c in constraints {
            if c.mask.is_empty() {
                return Err(Error::invalid("mask", "constraint mask is empty"));
            }
            if !(c.rhs.is_finite() && c.rhs >= T::zero()) {
                return Err(Error::invalid("rhs", format!("must be nonnegative and finite, got {}", c.rhs)));
            }
            match kept.iter_mut().find(|k| k.mask == c.mask) {
                Some(k) => k.rhs = k.rhs.min(c.rhs),
                None => kept.push(c),
            }
        }
        let covered = kept.iter().fold(UserSet::EMPTY, |acc, c| acc.union(c.mask));
        if covered != UserSet::full(DIM) {
            return Err(Error::invalid(
                "constraints",
                format!("unbounded: coordinates outside {covered:?} are unconstrained"),
            ));
        }
        kept.sort_by_key(|c| (c.mask.len(), c.mask.bits()));
        Ok(RatePolytope { constraints: kept })
    }

    /// Intersection of MAC regions, each embedded through its user labels.
    pub fn from_macs<'a>(macs: impl IntoIterator<Item = &'a MacSpec<T>>) -> Result<Self> {
        let mut constraints = Vec::new();
        for mac in macs {
            let positions: Vec<usize> = mac.labels().iter().map(|l| l - 1).collect();
            constraints.extend(mac.constraints().map(|(t, rhs)| Constraint {
                mask: t.remap(&positions),
                rhs,
            }));
        }
        Self::new(constraints)
    }

    pub fn constraints(&self) -> &[Constraint<T>] {
        &self.constraints
    }

    /// Every constraint holds within tolerance. Negative coordinates are
    /// rejected by [`RatePoint4::new`], so nonnegativity is implicit.
    pub fn member(&self, p: &RatePoint4<T>) -> bool {
        self.constraints
            .iter()
            .all(|c| le_tol(p.mask_sum(c.mask), c.rhs))
    }

    /// Exact maximum of `R1 + R2 + R3 + R4` and a maximizer.
    ///
    /// Among maximizers within tolerance the lexicographically smallest
    /// point is returned.
    pub fn max_sum_rate(&self) -> Result<(T, RatePoint4<T>)> {
        self.max_weighted_sum(&[T::one(); DIM])
    }

    /// Exact maximum of `Σ w_i R_i` over the polytope.
    pub fn max_weighted_sum(&self, weights: &[T; DIM]) -> Result<(T, RatePoint4<T>)> {
        let objective = |p: &[T; DIM]| {
            p.iter()
                .zip(weights)
                .fold(T::zero(), |a, (&x, &w)| a + x * w)
        };
        let candidates: Vec<(T, [T; DIM])> = self
            .basic_points()
            .into_iter()
            .map(|p| (objective(&p), p))
            .collect();
        let best = candidates
            .iter()
            .map(|c| c.0)
            .fold(None, |m: Option<T>, v| Some(m.map_or(v, |m| m.max(v))))
            .ok_or(Error::Infeasible)?;
        let (value, point) = candidates
            .into_iter()
            .filter(|c| c.0 >= best - T::tolerance())
            .min_by(|a, b| lex_cmp(&a.1, &b.1))
            .expect("the maximizer itself passes the filter");
        Ok((value, RatePoint4(point)))
    }

    /// All feasible basic solutions, duplicates included.
    pub fn basic_feasible_points(&self) -> Vec<RatePoint4<T>> {
        self.basic_points().into_iter().map(RatePoint4).collect()
    }

    /// Whether `self ⊆ other`: no point of `self` exceeds any of `other`'s constraints.
    pub fn is_subset_of(&self, other: &RatePolytope<T>) -> Result<bool> {
        for c in &other.constraints {
            let mut w = [T::zero(); DIM];
            c.mask.positions().for_each(|k| w[k] = T::one());
            let (m, _) = self.max_weighted_sum(&w)?;
            if !le_tol(m, c.rhs) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `[{"mask": [1, 2], "rhs_bits": 0.79248125}, ...]`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.constraints
                .iter()
                .map(|c| json!({ "mask": c.mask.labels(), "rhs_bits": json_number(c.rhs.as_f64()) }))
                .collect(),
        )
    }

    fn basic_points(&self) -> Vec<[T; DIM]> {
        // Facet rows: the listed constraints followed by R_k = 0.
        let mut rows: Vec<([T; DIM], T)> = self
            .constraints
            .iter()
            .map(|c| {
                let mut a = [T::zero(); DIM];
                c.mask.positions().for_each(|k| a[k] = T::one());
                (a, c.rhs)
            })
            .collect();
        for k in 0..DIM {
            let mut a = [T::zero(); DIM];
            a[k] = T::one();
            rows.push((a, T::zero()));
        }

        let m = rows.len();
        let mut points = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    for l in k + 1..m {
                        let basis = [rows[i], rows[j], rows[k], rows[l]];
                        let Some(x) = solve4(basis) else { continue };
                        if let Some(p) = self.feasible(x) {
                            points.push(p);
                        }
                    }
                }
            }
        }
        points
    }

    /// Vertex feasibility at rounding-error scale, so that the optimum never
    /// exceeds the true one by more than floating-point noise.
    fn feasible(&self, x: [T; DIM]) -> Option<[T; DIM]> {
        let slack = |scale: T| T::epsilon() * T::lit(64.0) * scale.abs().max(T::one());
        if x.iter().any(|&v| !v.is_finite() || v < -slack(v)) {
            return None;
        }
        let p = x.map(|v| v.max(T::zero()));
        let point = RatePoint4(p);
        self.constraints
            .iter()
            .all(|c| point.mask_sum(c.mask) <= c.rhs + slack(c.rhs))
            .then_some(p)
    }
}

fn lex_cmp<T: Scalar>(a: &[T; DIM], b: &[T; DIM]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.partial_cmp(y).expect("finite coordinates"))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

/// Solves a 4×4 system by Gaussian elimination with partial pivoting.
/// Returns `None` when `|det| < singular_threshold`.
fn solve4<T: Scalar>(basis: [([T; DIM], T); DIM]) -> Option<[T; DIM]> {
    let mut a = basis.map(|(row, _)| row);
    let mut b = basis.map(|(_, rhs)| rhs);
    let mut det = T::one();
    for col in 0..DIM {
        let pivot = (col..DIM)
            .max_by(|&r, &s| a[r][col].abs().partial_cmp(&a[s][col].abs()).expect("finite"))
            .expect("nonempty range");
        if pivot != col {
            a.swap(pivot, col);
            b.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col];
        det = det * p;
        if p == T::zero() {
            return None;
        }
        for r in col + 1..DIM {
            let f = a[r][col] / p;
            if f != T::zero() {
                let pivot_row = a[col];
                for (x, &y) in a[r].iter_mut().zip(&pivot_row).skip(col) {
                    *x = *x - f * y;
                }
                b[r] = b[r] - f * b[col];
            }
        }
    }
    if det.abs() < T::singular_threshold() {
        return None;
    }
    let mut x = [T::zero(); DIM];
    for r in (0..DIM).rev() {
        let tail = (r + 1..DIM).fold(T::zero(), |s, c| s + a[r][c] * x[c]);
        x[r] = (b[r] - tail) / a[r][r];
    }
    Some(x)
}

/// Outer bound on the capacity region.
///
/// Both interference-free MACs always apply; the three-user MACs that
/// include transmitter 3 (resp. 4) join when `h1² ≥ 1` (resp. `h2² ≥ 1`).
pub fn outer_bound<T: Scalar>(ch: &ImacChannel<T>) -> RatePolytope<T> {
    use Receiver::*;
    let mut macs = vec![ch.mac(&[1, 2], First), ch.mac(&[3, 4], Second)];
    if le_tol(T::one(), ch.h1() * ch.h1()) {
        macs.push(ch.mac(&[1, 2, 3], First));
        macs.push(ch.mac(&[1, 3, 4], Second));
    }
    if le_tol(T::one(), ch.h2() * ch.h2()) {
        macs.push(ch.mac(&[1, 2, 4], First));
        macs.push(ch.mac(&[2, 3, 4], Second));
    }
    RatePolytope::from_macs(&macs).expect("MAC constraints cover all users")
}

/// Capacity region under mixed strong / extremely strong interference.
///
/// Each receiver strips the extremely strong interferer first and is left
/// with a three-user MAC containing the strong one.
pub fn mses_region<T: Scalar>(ch: &ImacChannel<T>, orientation: Orientation) -> Result<RatePolytope<T>> {
    classify(ch).require_mses(orientation)?;
    Ok(mses_region_unchecked(ch, orientation))
}

pub(crate) fn mses_region_unchecked<T: Scalar>(ch: &ImacChannel<T>, orientation: Orientation) -> RatePolytope<T> {
    use Receiver::*;
    let macs = match orientation {
        Orientation::H1Strong => [ch.mac(&[1, 2, 3], First), ch.mac(&[1, 3, 4], Second)],
        Orientation::H2Strong => [ch.mac(&[1, 2, 4], First), ch.mac(&[2, 3, 4], Second)],
    };
    RatePolytope::from_macs(&macs).expect("MAC constraints cover all users")
}

/// The interference-free product region, which is the capacity region when
/// both cross links are individually very strong.
pub fn ivs_region<T: Scalar>(ch: &ImacChannel<T>) -> Result<RatePolytope<T>> {
    classify(ch).require_ivs()?;
    Ok(interference_free_region(ch))
}

pub(crate) fn interference_free_region<T: Scalar>(ch: &ImacChannel<T>) -> RatePolytope<T> {
    use Receiver::*;
    RatePolytope::from_macs(&[ch.mac(&[1, 2], First), ch.mac(&[3, 4], Second)])
        .expect("MAC constraints cover all users")
}

/// Rates reachable by decoding both interferers first (under the desired
/// signals as noise) and then the desired pair interference-free.
///
/// Defined for every channel. With a zero cross gain the interferer cannot
/// be decoded and the corresponding rate collapses to zero.
pub fn achievable_product_region<T: Scalar>(ch: &ImacChannel<T>) -> RatePolytope<T> {
    use Receiver::*;
    let n = ch.interference_decoding_noise();
    RatePolytope::from_macs(&[
        ch.mac(&[1, 2], First),
        ch.mac_with_noise(&[1, 2], Second, n),
        ch.mac(&[3, 4], Second),
        ch.mac_with_noise(&[3, 4], First, n),
    ])
    .expect("MAC constraints cover all users")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const HALF_LOG2_3: f64 = 0.792_481_250_360_578_1;
    const LOG2_3: f64 = 1.584_962_500_721_156;

    fn ch(p1: f64, p2: f64, h1: f64, h2: f64) -> ImacChannel<f64> {
        ImacChannel::new(p1, p2, h1, h2).unwrap()
    }

    fn rhs(poly: &RatePolytope<f64>, labels: &[usize]) -> Option<f64> {
        let mask = UserSet::from_labels(labels).unwrap();
        poly.constraints().iter().find(|c| c.mask == mask).map(|c| c.rhs)
    }

    fn p4(r: [f64; 4]) -> RatePoint4<f64> {
        RatePoint4::new(r).unwrap()
    }

    #[test]
    fn outer_bound_weak_links_has_six_constraints() {
        let poly = outer_bound(&ch(1.0, 1.0, 0.5, 0.5));
        assert_eq!(poly.constraints().len(), 6);
    }

    #[test]
    fn outer_bound_strong_links() {
        let poly = outer_bound(&ch(1.0, 1.0, 2.0, 2.0));
        assert_abs_diff_eq!(rhs(&poly, &[1, 2, 3]).unwrap(), 0.5 * 7f64.log2(), epsilon = 1e-12);
        assert_abs_diff_eq!(rhs(&poly, &[1, 2, 3]).unwrap(), 1.403_677_461_028_802, epsilon = 1e-12);
        // {1,2,3}@1, {1,3,4}@2, {1,2,4}@1 and {2,3,4}@2 contribute 4 triples
        // and the cross pairs {1,3}, {1,4}, {2,3}, {2,4}.
        assert_eq!(poly.constraints().len(), 14);
    }

    #[test]
    fn outer_bound_unit_gains_activate_every_family() {
        let poly = outer_bound(&ch(1.0, 1.0, 1.0, 1.0));
        for triple in [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]] {
            assert!(rhs(&poly, &triple).is_some(), "{triple:?}");
        }
        let poly = outer_bound(&ch(1.0, 1.0, 1.0, 0.999));
        assert!(rhs(&poly, &[1, 2, 3]).is_some());
        assert!(rhs(&poly, &[1, 2, 4]).is_none());
    }

    #[test]
    fn duplicate_masks_keep_smaller_rhs() {
        // {1}@1 (rank ½log2 2) and {1}@{1,2,3}@1 coincide; {1,3}@{1,2,3},1 and
        // {1,3}@{1,3,4},2 are equal by symmetry.
        let poly = outer_bound(&ch(1.0, 1.0, 2.0, 0.1));
        let masks: Vec<u8> = poly.constraints().iter().map(|c| c.mask.bits()).collect();
        let mut dedup = masks.clone();
        dedup.dedup();
        assert_eq!(masks, dedup);
        let explicit = RatePolytope::new([
            Constraint { mask: UserSet::from_bits(0b1111).unwrap(), rhs: 2.0 },
            Constraint { mask: UserSet::from_bits(0b1111).unwrap(), rhs: 1.0 },
        ])
        .unwrap();
        assert_eq!(explicit.constraints().len(), 1);
        assert_eq!(explicit.constraints()[0].rhs, 1.0);
    }

    #[test]
    fn polytope_validation() {
        let m = |b| UserSet::from_bits(b).unwrap();
        assert!(RatePolytope::new([Constraint { mask: m(0b0011), rhs: 1.0 }]).is_err());
        assert!(RatePolytope::new([Constraint { mask: m(0), rhs: 1.0 }]).is_err());
        assert!(RatePolytope::new([Constraint { mask: m(0b1111), rhs: -1.0 }]).is_err());
        assert!(RatePolytope::new([Constraint { mask: m(0b1111), rhs: f64::INFINITY }]).is_err());
    }

    #[test]
    fn member_examples() {
        let poly = outer_bound(&ch(1.0, 1.0, 2.0, 2.0));
        assert!(poly.member(&p4([0.3; 4])));
        assert!(!poly.member(&p4([0.5, 0.5, 0.0, 0.0])));
        assert!(poly.member(&RatePoint4::origin()));
        assert!(achievable_product_region(&ch(1.0, 1.0, 0.0, 0.0)).member(&RatePoint4::origin()));
    }

    #[test]
    fn max_sum_rate_of_outer_bound() {
        let (v, p) = outer_bound(&ch(1.0, 1.0, 2.0, 2.0)).max_sum_rate().unwrap();
        assert_abs_diff_eq!(v, LOG2_3, epsilon = 1e-12);
        let r = p.rates();
        let expected = [HALF_LOG2_3 - 0.5, 0.5, HALF_LOG2_3 - 0.5, 0.5];
        for (a, b) in r.iter().zip(expected) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn max_sum_rate_of_mses_region() {
        let region = mses_region(&ch(1.0, 1.0, 1.0, 3.0), Orientation::H1Strong).unwrap();
        let (v, p) = region.max_sum_rate().unwrap();
        // R1+R2+R3 ≤ ½log2 4 = 1 and R4 ≤ ½log2 2 bound the sum by 1.5,
        // attained at (0.2925, 0.5, 0.2075, 0.5).
        assert_abs_diff_eq!(v, 1.5, epsilon = 1e-12);
        assert!(region.member(&p));
        assert!(region.member(&p4([0.25, 0.5, 0.25, 0.5])));
    }

    #[test]
    fn max_sum_rate_degenerate_polytope() {
        let m = |b| UserSet::from_bits(b).unwrap();
        let poly = RatePolytope::new((0..4).map(|k| Constraint { mask: m(1 << k), rhs: 0.0 })).unwrap();
        let (v, p) = poly.max_sum_rate().unwrap();
        assert_eq!(v, 0.0);
        assert_eq!(p, RatePoint4::origin());
    }

    #[test]
    fn mses_preconditions() {
        assert!(mses_region(&ch(1.0, 1.0, 1.0, 3.0), Orientation::H1Strong).is_ok());
        match mses_region(&ch(1.0, 1.0, 1.0, 3.0), Orientation::H2Strong) {
            Err(Error::Regime { margin, .. }) => assert_abs_diff_eq!(margin, 1.0 - 12.0, epsilon = 1e-12),
            other => panic!("unexpected {other:?}"),
        }
        for o in [Orientation::H1Strong, Orientation::H2Strong] {
            assert!(matches!(mses_region(&ch(1.0, 1.0, 2.0, 2.0), o), Err(Error::Regime { .. })));
        }
    }

    #[test]
    fn ivs_region_examples() {
        let poly = ivs_region(&ch(1.0, 1.0, 2.0, 2.0)).unwrap();
        assert_eq!(poly.constraints().len(), 6);
        assert_abs_diff_eq!(rhs(&poly, &[1]).unwrap(), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(rhs(&poly, &[2]).unwrap(), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(rhs(&poly, &[1, 2]).unwrap(), HALF_LOG2_3, epsilon = 1e-12);
        assert_abs_diff_eq!(rhs(&poly, &[3, 4]).unwrap(), HALF_LOG2_3, epsilon = 1e-12);
        assert!(matches!(ivs_region(&ch(1.0, 1.0, 0.3, 0.15)), Err(Error::Regime { .. })));
        let edge = 3f64.sqrt();
        assert!(ivs_region(&ch(1.0, 1.0, edge, -edge)).is_ok());
    }

    #[test]
    fn product_region_examples() {
        let poly = achievable_product_region(&ch(1.0, 1.0, 5f64.sqrt(), 2f64.sqrt()));
        assert_abs_diff_eq!(rhs(&poly, &[1]).unwrap(), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(rhs(&poly, &[2]).unwrap(), 0.368_482_797_083_103, epsilon = 1e-12);
        assert_abs_diff_eq!(rhs(&poly, &[1, 2]).unwrap(), HALF_LOG2_3, epsilon = 1e-12);

        let dead = achievable_product_region(&ch(1.0, 1.0, 0.0, 0.0));
        assert!(dead.constraints().iter().all(|c| c.rhs == 0.0));
        assert_eq!(dead.max_sum_rate().unwrap().0, 0.0);

        let c = ch(1.0, 1.0, 2.0, 2.0);
        let (prod, ivs) = (achievable_product_region(&c), ivs_region(&c).unwrap());
        assert!(prod.is_subset_of(&ivs).unwrap() && ivs.is_subset_of(&prod).unwrap());
    }

    #[test]
    fn product_region_misses_sum_capacity_with_a_silent_cross_link() {
        // Decoding both interferers forces R2 = R4 = 0 when h2 = 0, even
        // though the combined interference is very strong (9 ≥ 6).
        let (v, _) = achievable_product_region(&ch(1.0, 1.0, 3.0, 0.0)).max_sum_rate().unwrap();
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-12);
        assert!(v < LOG2_3 - 0.5);
    }

    #[test]
    fn lexicographic_tie_break() {
        let m = |b| UserSet::from_bits(b).unwrap();
        let poly = RatePolytope::new([Constraint { mask: m(0b1111), rhs: 1.0 }]).unwrap();
        let (v, p) = poly.max_sum_rate().unwrap();
        assert_eq!(v, 1.0);
        assert_eq!(p.rates(), [0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn json_shape() {
        let poly = ivs_region(&ch(1.0, 1.0, 2.0, 2.0)).unwrap();
        let j = poly.to_json();
        assert_eq!(j[0]["mask"], json!([1]));
        assert_eq!(j[0]["rhs_bits"], json!(0.5));
        assert_eq!(j[4]["mask"], json!([1, 2]));
        assert_eq!(j[4]["rhs_bits"].to_string(), "0.79248125");
    }
}
