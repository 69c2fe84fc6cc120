//! Bitmask sets over at most four users.

use std::fmt;

use crate::error::{Error, Result};

/// Maximum number of users in any set handled by the crate.
pub const MAX_USERS: usize = 4;

/// A subset of at most [`MAX_USERS`] users, stored as a bitmask.
///
/// Bit `k` stands for position `k` (0-based). For IMAC-level sets the
/// position of transmitter `u` is `u - 1`, so `{1, 3}` is `0b0101`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct UserSet(u8);

impl UserSet {
    pub const EMPTY: UserSet = UserSet(0);

    /// Builds a set from raw bits. Bits above [`MAX_USERS`] are rejected.
    pub fn from_bits(bits: u8) -> Result<Self> {
        if bits >> MAX_USERS != 0 {
            return Err(Error::invalid("mask", format!("bits {bits:#06b} exceed {MAX_USERS} users")));
        }
        Ok(UserSet(bits))
    }

    /// Builds a set from 1-based transmitter labels.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        labels.iter().try_fold(UserSet::EMPTY, |set, &label| {
            if label == 0 || label > MAX_USERS {
                return Err(Error::invalid("users", format!("user label {label} not in 1..={MAX_USERS}")));
            }
            Ok(set.with(label - 1))
        })
    }

    /// The first `n` positions.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_USERS);
        UserSet(((1u16 << n) - 1) as u8)
    }

    pub fn singleton(position: usize) -> Self {
        UserSet::EMPTY.with(position)
    }

    #[inline]
    pub fn bits(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn contains(self, position: usize) -> bool {
        position < MAX_USERS && self.0 & (1 << position) != 0
    }

    #[inline]
    pub fn with(self, position: usize) -> Self {
        debug_assert!(position < MAX_USERS);
        UserSet(self.0 | (1 << position))
    }

    #[inline]
    pub fn union(self, other: UserSet) -> Self {
        UserSet(self.0 | other.0)
    }

    #[inline]
    pub fn is_subset_of(self, other: UserSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Positions in ascending order.
    pub fn positions(self) -> impl Iterator<Item = usize> {
        (0..MAX_USERS).filter(move |&k| self.0 & (1 << k) != 0)
    }

    /// 1-based labels in ascending order.
    pub fn labels(self) -> Vec<usize> {
        self.positions().map(|k| k + 1).collect()
    }

    /// All nonempty subsets of `self`, in ascending bit order.
    pub fn nonempty_subsets(self) -> impl Iterator<Item = UserSet> {
        let full = self.0;
        (1..=full).filter(move |b| b & !full == 0).map(UserSet)
    }

    /// Maps local positions through `positions`, e.g. a MAC subset onto IMAC users.
    pub(crate) fn remap(self, positions: &[usize]) -> UserSet {
        self.positions()
            .fold(UserSet::EMPTY, |acc, k| acc.with(positions[k]))
    }
}

impl fmt::Debug for UserSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.labels()).finish()
    }
}
