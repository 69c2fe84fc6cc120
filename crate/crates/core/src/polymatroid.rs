//! Gaussian MAC capacity regions as polymatroids.
//!
//! A region is the set of nonnegative rate vectors whose subset sums are
//! bounded by the rank function `½·log2(1 + Σ_T g²P / N)`. With at most
//! four users every one of the `2^n - 1` constraints is enumerated.

use crate::error::{Error, Result};
use crate::scalar::{half_log2_1p, le_tol, Scalar};
use crate::users::{UserSet, MAX_USERS};

/// One transmitter of a Gaussian MAC.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MacUser<T> {
    power: T,
    gain: T,
}

impl<T: Scalar> MacUser<T> {
    pub fn new(power: T, gain: T) -> Result<Self> {
        if !(power.is_finite() && power > T::zero()) {
            return Err(Error::invalid("power", format!("must be positive and finite, got {power}")));
        }
        if !gain.is_finite() {
            return Err(Error::invalid("gain", format!("{gain} is not finite")));
        }
        Ok(MacUser { power, gain })
    }

    pub fn power(&self) -> T {
        self.power
    }

    pub fn gain(&self) -> T {
        self.gain
    }

    /// Received power `g²P`.
    pub fn received_power(&self) -> T {
        self.gain * self.gain * self.power
    }
}

/// A Gaussian MAC: ordered users plus a noise variance.
///
/// `labels` records which IMAC transmitters the users are (ascending); a
/// standalone spec is labelled `1..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct MacSpec<T> {
    users: Vec<MacUser<T>>,
    noise: T,
    labels: Vec<usize>,
}

impl<T: Scalar> MacSpec<T> {
    pub fn new(users: Vec<MacUser<T>>, noise: T) -> Result<Self> {
        let labels = (1..=users.len()).collect();
        Self::with_labels(users, noise, labels)
    }

    pub(crate) fn with_labels(users: Vec<MacUser<T>>, noise: T, labels: Vec<usize>) -> Result<Self> {
        if users.is_empty() {
            return Err(Error::invalid("users", "a MAC needs at least one user"));
        }
        if users.len() > MAX_USERS {
            return Err(Error::invalid("users", format!("at most {MAX_USERS} users supported")));
        }
        if !(noise.is_finite() && noise > T::zero()) {
            return Err(Error::invalid("noise", format!("must be positive and finite, got {noise}")));
        }
        debug_assert_eq!(labels.len(), users.len());
        Ok(MacSpec { users, noise, labels })
    }

    /// Convenience constructor from `(power, gain)` pairs.
    pub fn from_pairs(pairs: &[(T, T)], noise: T) -> Result<Self> {
        let users = pairs
            .iter()
            .map(|&(p, g)| MacUser::new(p, g))
            .collect::<Result<Vec<_>>>()?;
        Self::new(users, noise)
    }

    pub fn users(&self) -> &[MacUser<T>] {
        &self.users
    }

    pub fn noise(&self) -> T {
        self.noise
    }

    /// 1-based IMAC transmitter labels, aligned with [`Self::users`].
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.users.len()
    }

    pub fn is_empty(&self) -> bool {
        self.users.is_empty()
    }

    pub fn all_users(&self) -> UserSet {
        UserSet::full(self.len())
    }

    /// Rank of `subset`, given in local positions. `rank(∅) = 0`.
    pub fn rank(&self, subset: UserSet) -> Result<T> {
        if let Some(k) = subset.positions().find(|&k| k >= self.len()) {
            return Err(Error::UnknownUser(k));
        }
        Ok(self.rank_unchecked(subset))
    }

    pub(crate) fn rank_unchecked(&self, subset: UserSet) -> T {
        let received = subset
            .positions()
            .fold(T::zero(), |acc, k| acc + self.users[k].received_power());
        half_log2_1p(received / self.noise)
    }

    /// `(subset, rank)` for every nonempty subset.
    pub fn constraints(&self) -> impl Iterator<Item = (UserSet, T)> + '_ {
        self.all_users()
            .nonempty_subsets()
            .map(move |t| (t, self.rank_unchecked(t)))
    }

    pub fn contains(&self, point: &RatePoint<T>) -> Result<bool> {
        self.check_dim(point.len())?;
        Ok(self.constraints().all(|(t, r)| le_tol(point.subset_sum(t), r)))
    }

    /// Whether `self`'s region lies inside `outer`'s.
    ///
    /// For polymatroids this reduces to rank dominance on every subset,
    /// since each rank value is attained by a point of the region.
    pub fn region_contained_in(&self, outer: &MacSpec<T>) -> Result<bool> {
        if self.len() != outer.len() {
            return Err(Error::Dimension {
                expected: self.len(),
                got: outer.len(),
            });
        }
        Ok(self
            .constraints()
            .all(|(t, r)| le_tol(r, outer.rank_unchecked(t))))
    }

    /// Maximum sum rate: the rank of the full user set.
    pub fn sum_capacity(&self) -> T {
        self.rank_unchecked(self.all_users())
    }

    /// Vertex reached by handing out marginal ranks along `order`.
    ///
    /// `order` must be a permutation of `0..len`.
    pub fn greedy_vertex(&self, order: &[usize]) -> Result<RatePoint<T>> {
        self.check_dim(order.len())?;
        let mut rates = vec![T::zero(); self.len()];
        let mut prefix = UserSet::EMPTY;
        let mut prev = T::zero();
        for &k in order {
            if k >= self.len() || prefix.contains(k) {
                return Err(Error::invalid("order", "not a permutation of the users"));
            }
            prefix = prefix.with(k);
            let r = self.rank_unchecked(prefix);
            rates[k] = r - prev;
            prev = r;
        }
        RatePoint::new(rates)
    }

    /// `max Σ w_i R_i` over the region, by the polymatroid greedy rule.
    ///
    /// Users are visited by descending weight, ties by ascending position.
    pub fn max_weighted_sum(&self, weights: &[T]) -> Result<T> {
        self.check_dim(weights.len())?;
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= T::zero())) {
            return Err(Error::invalid("weights", format!("weights must be nonnegative and finite, got {w}")));
        }
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| {
            weights[b]
                .partial_cmp(&weights[a])
                .expect("finite weights")
                .then(a.cmp(&b))
        });
        let vertex = self.greedy_vertex(&order)?;
        Ok(weights
            .iter()
            .zip(vertex.rates())
            .fold(T::zero(), |acc, (&w, &r)| acc + w * r))
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.len() {
            return Err(Error::Dimension {
                expected: self.len(),
                got,
            });
        }
        Ok(())
    }
}

/// Rates in bits per channel use, aligned with a [`MacSpec`]'s users.
#[derive(Debug, Clone, PartialEq)]
pub struct RatePoint<T>(Vec<T>);

impl<T: Scalar> RatePoint<T> {
    pub fn new(rates: Vec<T>) -> Result<Self> {
        // Marginal ranks can dip a hair below zero through rounding.
        let rates: Vec<T> = rates
            .into_iter()
            .map(|r| if r < T::zero() && r >= -T::tolerance() { T::zero() } else { r })
            .collect();
        if let Some(r) = rates.iter().find(|r| !(r.is_finite() && **r >= T::zero())) {
            return Err(Error::invalid("rates", format!("rates must be nonnegative and finite, got {r}")));
        }
        Ok(RatePoint(rates))
    }

    pub fn zeros(n: usize) -> Self {
        RatePoint(vec![T::zero(); n])
    }

    pub fn rates(&self) -> &[T] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn subset_sum(&self, subset: UserSet) -> T {
        subset.positions().fold(T::zero(), |acc, k| acc + self.0[k])
    }
}
