//! Composition indices and the index spaces they are summed over.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::SeriesError;

/// `(k_1, …, k_r)` summed over `n_1 < n_2 < … < n_r`; admissible when
/// `k_r ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self, SeriesError> {
        if parts.is_empty() {
            return Err(SeriesError::EmptyComposition);
        }
        if parts.contains(&0) {
            return Err(SeriesError::ZeroPart(parts));
        }
        if *parts.last().expect("nonempty") < 2 {
            return Err(SeriesError::Inadmissible(parts));
        }
        Ok(Composition { parts })
    }

    /// `(2^a, 3, 2^b)`.
    pub fn hoffman(a: u32, b: u32) -> Self {
        let mut parts = vec![2; a as usize];
        parts.push(3);
        parts.extend(std::iter::repeat_n(2, b as usize));
        Composition { parts }
    }

    /// `(2, …, 2)` with `n ≥ 1` parts.
    pub fn twos(n: u32) -> Result<Self, SeriesError> {
        Composition::new(vec![2; n as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.parts.len()
    }

    /// Number of parts equal to 1; each can contribute a power of `log N`
    /// to the truncation error.
    pub fn ones(&self) -> u32 {
        self.parts.iter().filter(|&&k| k == 1).count() as u32
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    /// Index `n ≥ 1` carries weight `n`.
    All,
    /// Index `n ≥ 0` carries weight `2n + 1`.
    Odd,
}

impl Parity {
    pub fn weight(self, n: u64) -> u64 {
        match self {
            Parity::All => n,
            Parity::Odd => 2 * n + 1,
        }
    }

    pub fn first_index(self) -> u64 {
        match self {
            Parity::All => 1,
            Parity::Odd => 0,
        }
    }

    pub(crate) fn code(self) -> u8 {
        match self {
            Parity::All => 0,
            Parity::Odd => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    /// Multiple zeta value: all positive integers.
    Zeta,
    /// Multiple t-value: odd positive integers.
    T,
}

impl SeriesKind {
    pub fn parity(self) -> Parity {
        match self {
            SeriesKind::Zeta => Parity::All,
            SeriesKind::T => Parity::Odd,
        }
    }
}

/// Consecutive indices `start, start+1, …` with the weights of `parity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexSpace {
    pub parity: Parity,
    pub start: u64,
}

impl IndexSpace {
    pub fn full(parity: Parity) -> Self {
        IndexSpace {
            parity,
            start: parity.first_index(),
        }
    }

    /// Indices strictly greater than `n`.
    pub fn after(parity: Parity, n: u64) -> Self {
        IndexSpace {
            parity,
            start: n + 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility() {
        assert!(Composition::new(vec![1, 2]).is_ok());
        assert_eq!(
            Composition::new(vec![1, 1]),
            Err(SeriesError::Inadmissible(vec![1, 1]))
        );
        assert_eq!(Composition::new(vec![]), Err(SeriesError::EmptyComposition));
        assert_eq!(
            Composition::new(vec![0, 2]),
            Err(SeriesError::ZeroPart(vec![0, 2]))
        );
    }

    #[test]
    fn hoffman_shape() {
        let c = Composition::hoffman(2, 1);
        assert_eq!(c.parts(), &[2, 2, 3, 2]);
        assert_eq!(c.weight(), 9);
        assert_eq!(c.depth(), 4);
        assert_eq!(c.to_string(), "(2,2,3,2)");
        assert_eq!(Composition::new(vec![1, 1, 3]).unwrap().ones(), 2);
    }

    #[test]
    fn odd_weights() {
        assert_eq!(Parity::Odd.weight(0), 1);
        assert_eq!(Parity::Odd.weight(3), 7);
        assert_eq!(Parity::All.weight(3), 3);
    }
}
