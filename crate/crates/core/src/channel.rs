//! The symmetric interfering MAC and the Gaussian MACs embedded in it.
//!
//! Receiver 1 observes `X1 + X2 + h1·X3 + h2·X4 + Z1` and receiver 2
//! observes `h1·X1 + h2·X2 + X3 + X4 + Z2` with unit-variance noise.
//! Transmitters 3 and 4 share the power budgets of 1 and 2.

use crate::error::{Error, Result};
use crate::polymatroid::{MacSpec, MacUser};
use crate::scalar::Scalar;
use crate::users::UserSet;

/// A receiving node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Receiver {
    First,
    Second,
}

impl Receiver {
    /// Parses a 1-based receiver index.
    pub fn from_index(index: usize) -> Result<Self> {
        match index {
            1 => Ok(Receiver::First),
            2 => Ok(Receiver::Second),
            _ => Err(Error::invalid("receiver", format!("{index} is not 1 or 2"))),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Receiver::First => 1,
            Receiver::Second => 2,
        }
    }

    pub fn other(self) -> Self {
        match self {
            Receiver::First => Receiver::Second,
            Receiver::Second => Receiver::First,
        }
    }
}

/// Channel parameters `(P1, P2, h1, h2)`.
///
/// Cross gains keep their sign; rate formulas only ever use `h²`, but the
/// genie bound couples `h` with its correlation parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImacChannel<T> {
    p1: T,
    p2: T,
    h1: T,
    h2: T,
}

impl<T: Scalar> ImacChannel<T> {
    pub fn new(p1: T, p2: T, h1: T, h2: T) -> Result<Self> {
        for (field, value) in [("p1", p1), ("p2", p2), ("h1", h1), ("h2", h2)] {
            if !value.is_finite() {
                return Err(Error::invalid(field, format!("{value} is not finite")));
            }
        }
        for (field, value) in [("p1", p1), ("p2", p2)] {
            if value <= T::zero() {
                return Err(Error::invalid(field, format!("power must be positive, got {value}")));
            }
        }
        Ok(ImacChannel { p1, p2, h1, h2 })
    }

    pub fn p1(&self) -> T {
        self.p1
    }

    pub fn p2(&self) -> T {
        self.p2
    }

    pub fn h1(&self) -> T {
        self.h1
    }

    pub fn h2(&self) -> T {
        self.h2
    }

    /// `P1 + P2`, the desired power at either receiver.
    pub fn total_power(&self) -> T {
        self.p1 + self.p2
    }

    /// `1 + P1 + P2`: noise seen when decoding interference under desired signals.
    pub fn interference_decoding_noise(&self) -> T {
        T::one() + self.total_power()
    }

    /// Transmit power of user `label` (1..=4).
    pub fn power(&self, label: usize) -> T {
        match label {
            1 | 3 => self.p1,
            2 | 4 => self.p2,
            _ => panic!("user label {label} out of range"),
        }
    }

    /// Amplitude gain from transmitter `label` to `receiver`.
    pub fn gain(&self, label: usize, receiver: Receiver) -> T {
        let desired = match receiver {
            Receiver::First => label <= 2,
            Receiver::Second => label >= 3,
        };
        if desired {
            T::one()
        } else if label % 2 == 1 {
            self.h1
        } else {
            self.h2
        }
    }

    /// Interference-to-noise ratio `h1²P1 + h2²P2`, the same at both receivers.
    pub fn inr(&self) -> T {
        self.h1 * self.h1 * self.p1 + self.h2 * self.h2 * self.p2
    }

    /// The Gaussian MAC from `users` to `receiver` with noise variance `noise`.
    ///
    /// Users appear in ascending label order.
    pub fn mac_spec(&self, users: UserSet, receiver: Receiver, noise: T) -> Result<MacSpec<T>> {
        if users.is_empty() {
            return Err(Error::invalid("users", "user set is empty"));
        }
        let labels = users.labels();
        let members = labels
            .iter()
            .map(|&u| MacUser::new(self.power(u), self.gain(u, receiver)))
            .collect::<Result<Vec<_>>>()?;
        MacSpec::with_labels(members, noise, labels)
    }

    /// [`Self::mac_spec`] for 1-based labels and unit noise.
    pub(crate) fn mac(&self, labels: &[usize], receiver: Receiver) -> MacSpec<T> {
        self.mac_with_noise(labels, receiver, T::one())
    }

    pub(crate) fn mac_with_noise(&self, labels: &[usize], receiver: Receiver, noise: T) -> MacSpec<T> {
        let users = UserSet::from_labels(labels).expect("static labels");
        self.mac_spec(users, receiver, noise)
            .expect("channel invariants yield a valid MAC")
    }
}
