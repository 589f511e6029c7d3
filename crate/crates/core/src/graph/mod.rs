//! Circulant (multi)graphs `Cay(Z_n, S)` and their exact spectra.
//!
//! Graphs are directed: vertex `i` has an arc to `i + s` for each `s ∈ S`,
//! counted with multiplicity. Undirectedness (`S = -S`) is a property, not a
//! requirement.

mod spectrum;
mod text;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::arith::{gcd, mod_floor};
use crate::error::{Error, Result};

pub use spectrum::{
    has_repeated_eigenvalues, isospectral, numeric_spectrum_crosscheck, numeric_spectrum_deviation,
    spectrum, Spectrum,
};
pub use text::parse_graph;

/// Largest order for which [`adjacency_matrix`] will allocate.
pub const DEFAULT_MATRIX_BOUND: usize = 4096;

/// A multiset of nonzero residues mod n, kept as sorted
/// `(element, multiplicity)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConnectionMultiset {
    modulus: usize,
    elements: Vec<(usize, u32)>,
}

impl ConnectionMultiset {
    /// Reduces each value mod n and merges duplicates. Rejects `n < 2` and
    /// any value `≡ 0`.
    pub fn new<I: IntoIterator<Item = i64>>(modulus: usize, values: I) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidArgument(format!("modulus must be >= 2, got {modulus}")));
        }
        let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
        for v in values {
            let e = mod_floor(v, modulus);
            if e == 0 {
                return Err(Error::InvalidArgument(format!(
                    "{v} ≡ 0 mod {modulus}; self-loops are not allowed"
                )));
            }
            *counts.entry(e).or_default() += 1;
        }
        Ok(ConnectionMultiset {
            modulus,
            elements: counts.into_iter().collect(),
        })
    }

    pub fn from_counts(modulus: usize, counts: &[(usize, u32)]) -> Result<Self> {
        let expanded = counts
            .iter()
            .flat_map(|&(e, c)| std::iter::repeat(e as i64).take(c as usize));
        Self::new(modulus, expanded)
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// Sorted `(element, multiplicity)` pairs.
    pub fn counts(&self) -> &[(usize, u32)] {
        &self.elements
    }

    /// `m`, the size counted with multiplicity.
    pub fn size(&self) -> usize {
        self.elements.iter().map(|&(_, c)| c as usize).sum()
    }

    pub fn multiplicity(&self, e: usize) -> u32 {
        let e = e % self.modulus;
        self.elements
            .binary_search_by_key(&e, |&(x, _)| x)
            .map(|i| self.elements[i].1)
            .unwrap_or(0)
    }

    /// Elements in ascending order, repeated by multiplicity.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.elements
            .iter()
            .flat_map(|&(e, c)| std::iter::repeat(e).take(c as usize))
    }

    pub fn is_simple(&self) -> bool {
        self.elements.iter().all(|&(_, c)| c == 1)
    }

    /// `S = -S` as multisets.
    pub fn is_symmetric(&self) -> bool {
        self.elements
            .iter()
            .all(|&(e, c)| self.multiplicity(self.modulus - e) == c)
    }

    /// `qS` for a unit `q`.
    pub fn scaled(&self, q: i64) -> Result<Self> {
        let q = mod_floor(q, self.modulus);
        if gcd(q as u64, self.modulus as u64) != 1 {
            return Err(Error::InvalidArgument(format!(
                "{q} is not a unit mod {}",
                self.modulus
            )));
        }
        let values = self.iter().map(|e| ((e * q) % self.modulus) as i64);
        Self::new(self.modulus, values)
    }

    /// Multiset sum.
    pub fn union(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Self::new(self.modulus, self.iter().chain(other.iter()).map(|e| e as i64))
    }
}

impl Serialize for ConnectionMultiset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// `Cay(Z_n, S)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CirculantGraph {
    connections: ConnectionMultiset,
}

impl CirculantGraph {
    pub fn new(connections: ConnectionMultiset) -> Self {
        CirculantGraph { connections }
    }

    pub fn from_elements<I: IntoIterator<Item = i64>>(modulus: usize, values: I) -> Result<Self> {
        Ok(Self::new(ConnectionMultiset::new(modulus, values)?))
    }

    pub fn modulus(&self) -> usize {
        self.connections.modulus
    }

    pub fn connections(&self) -> &ConnectionMultiset {
        &self.connections
    }

    /// Out-degree of every vertex.
    pub fn degree(&self) -> usize {
        self.connections.size()
    }

    pub fn is_undirected(&self) -> bool {
        self.connections.is_symmetric()
    }

    /// Number of arcs `i → j`.
    pub fn arcs(&self, i: usize, j: usize) -> u32 {
        let n = self.modulus();
        self.connections.multiplicity((j % n + n - i % n) % n)
    }
}

impl fmt::Display for CirculantGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.modulus())?;
        for (k, &(e, c)) in self.connections.elements.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            if c == 1 {
                write!(f, "{e}")?;
            } else {
                write!(f, "{e}*{c}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for CirculantGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Dense adjacency matrix; entry `(i, j)` is the multiplicity of `j - i`.
pub fn adjacency_matrix(g: &CirculantGraph, bound: usize) -> Result<Vec<Vec<u32>>> {
    let n = g.modulus();
    if n > bound {
        return Err(Error::Resource(format!(
            "adjacency matrix of order {n} exceeds the bound {bound}"
        )));
    }
    let first: Vec<u32> = (0..n).map(|j| g.connections.multiplicity(j)).collect();
    Ok((0..n)
        .map(|i| (0..n).map(|j| first[(j + n - i) % n]).collect())
        .collect())
}
