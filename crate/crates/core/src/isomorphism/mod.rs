//! Isomorphism of circulant graphs.
//!
//! The decider tries, in order: spectra (non-isospectral graphs are not
//! isomorphic), a multiplier search `S₁ = q·S₂` with `gcd(q, n) = 1`, the
//! Elspas–Turner and Muzychuk conditions under which a failed multiplier
//! search is conclusive, and finally a brute-force search over vertex
//! bijections with a node budget.

mod search;

use serde::Serialize;

use crate::arith::{gcd, is_odd_squarefree};
use crate::error::{Error, Result};
use crate::graph::{has_repeated_eigenvalues, isospectral, CirculantGraph};

pub use search::brute_force_isomorphic;

/// Default node budget for the brute-force search.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Status {
    Isomorphic,
    NonIsomorphic,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Reason {
    AdamMultiplierFound,
    BruteForcePermutationFound,
    AdamExhaustedUnderElspasTurner,
    AdamExhaustedUnderMuzychuk,
    BruteForceExhausted,
    BudgetExceeded,
    NotIsospectral,
}

/// Evidence for an isomorphism `g1 ≅ g2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", content = "value", rename_all = "lowercase")]
pub enum Witness {
    /// A unit `q` with `q·S₂ = S₁`.
    Multiplier(usize),
    /// `perm[v]` is the image in `g2` of vertex `v` of `g1`.
    Permutation(Vec<usize>),
}

impl Witness {
    /// Re-checks the witness directly against both graphs.
    pub fn verify(&self, g1: &CirculantGraph, g2: &CirculantGraph) -> bool {
        let n = g1.modulus();
        if g2.modulus() != n {
            return false;
        }
        match self {
            Witness::Multiplier(q) => {
                gcd(*q as u64, n as u64) == 1
                    && g2.connections().scaled(*q as i64).as_ref() == Ok(g1.connections())
            }
            Witness::Permutation(perm) => {
                let mut seen = vec![false; n];
                if perm.len() != n || perm.iter().any(|&w| w >= n || std::mem::replace(&mut seen[w], true)) {
                    return false;
                }
                (0..n).all(|u| (0..n).all(|v| g1.arcs(u, v) == g2.arcs(perm[u], perm[v])))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsomorphismVerdict {
    pub status: Status,
    pub reason: Reason,
    pub witness: Option<Witness>,
}

impl IsomorphismVerdict {
    fn isomorphic(reason: Reason, witness: Witness) -> Self {
        IsomorphismVerdict {
            status: Status::Isomorphic,
            reason,
            witness: Some(witness),
        }
    }

    fn non_isomorphic(reason: Reason) -> Self {
        IsomorphismVerdict {
            status: Status::NonIsomorphic,
            reason,
            witness: None,
        }
    }

    fn unknown() -> Self {
        IsomorphismVerdict {
            status: Status::Unknown,
            reason: Reason::BudgetExceeded,
            witness: None,
        }
    }
}

fn check_moduli(g1: &CirculantGraph, g2: &CirculantGraph) -> Result<()> {
    if g1.modulus() != g2.modulus() {
        return Err(Error::ModulusMismatch {
            left: g1.modulus(),
            right: g2.modulus(),
        });
    }
    Ok(())
}

/// Smallest unit `q` with `q·S₂ = S₁`, if any.
pub fn adam_equivalent(g1: &CirculantGraph, g2: &CirculantGraph) -> Result<Option<usize>> {
    check_moduli(g1, g2)?;
    let n = g1.modulus();
    if g1.degree() != g2.degree() || g1.connections().counts().len() != g2.connections().counts().len() {
        return Ok(None);
    }
    let target = g1.connections();
    let found = (1..n)
        .filter(|&q| gcd(q as u64, n as u64) == 1)
        .find(|&q| g2.connections().scaled(q as i64).as_ref() == Ok(target));
    Ok(found)
}

/// Neither graph has a repeated eigenvalue, so a failed multiplier search
/// certifies non-isomorphism.
pub fn elspas_turner_applies(g1: &CirculantGraph, g2: &CirculantGraph) -> Result<bool> {
    check_moduli(g1, g2)?;
    Ok(!has_repeated_eigenvalues(g1)? && !has_repeated_eigenvalues(g2)?)
}

/// `n`, `n/2` or `n/4` is odd and square-free.
pub fn muzychuk_applies(n: usize) -> bool {
    if n % 2 == 1 {
        is_odd_squarefree(n)
    } else if n % 4 == 2 {
        is_odd_squarefree(n / 2)
    } else {
        is_odd_squarefree(n / 4)
    }
}

/// Full pipeline; see the module docs. `Unknown` is returned only when the
/// brute-force budget runs out.
pub fn decide_isomorphism(
    g1: &CirculantGraph,
    g2: &CirculantGraph,
    node_budget: u64,
) -> Result<IsomorphismVerdict> {
    check_moduli(g1, g2)?;
    if !isospectral(g1, g2)? {
        return Ok(IsomorphismVerdict::non_isomorphic(Reason::NotIsospectral));
    }
    if let Some(q) = adam_equivalent(g1, g2)? {
        return Ok(IsomorphismVerdict::isomorphic(
            Reason::AdamMultiplierFound,
            Witness::Multiplier(q),
        ));
    }
    if elspas_turner_applies(g1, g2)? {
        return Ok(IsomorphismVerdict::non_isomorphic(
            Reason::AdamExhaustedUnderElspasTurner,
        ));
    }
    if muzychuk_applies(g1.modulus()) {
        return Ok(IsomorphismVerdict::non_isomorphic(
            Reason::AdamExhaustedUnderMuzychuk,
        ));
    }
    brute_force_isomorphic(g1, g2, node_budget)
}
