//! Exhaustive check that isospectral circulants of a given order and degree
//! are isomorphic.
//!
//! Every connection (multi)set of size `m` over `Z_n \ {0}` is enumerated,
//! graphs are bucketed by spectrum fingerprint, and each bucket is split into
//! isomorphism classes with a union-find keyed by verified witnesses.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

pub use crate::arith::Factorization;
use crate::error::{Error, Result};
use crate::graph::{spectrum, CirculantGraph, ConnectionMultiset};
use crate::isomorphism::{decide_isomorphism, Status};

pub const DEFAULT_ENUMERATION_BUDGET: u128 = 2_000_000;

pub fn factorize(n: usize) -> Result<Factorization> {
    Factorization::of(n)
}

/// `p_1 >= m` and (`s = 1` or `p_2 > p_1 (m - 1)`).
pub fn criterion_holds(n: usize, m: usize) -> Result<bool> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be >= 1".into()));
    }
    let f = factorize(n)?;
    let p1 = f.prime(0).unwrap() as usize;
    let second = f.prime(1).map_or(true, |p2| p2 as usize > p1 * (m - 1));
    Ok(p1 >= m && second)
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Number of size-`m` subsets (or multisets) of `{1, …, n-1}`.
pub fn count_connection_sets(n: usize, m: usize, allow_multisets: bool) -> u128 {
    let pool = n.saturating_sub(1) as u128;
    if allow_multisets {
        if pool == 0 {
            return u128::from(m == 0);
        }
        binomial(pool + m as u128 - 1, m as u128)
    } else {
        binomial(pool, m as u128)
    }
}

/// Lexicographic stream of connection (multi)sets.
#[derive(Debug, Clone)]
pub struct ConnectionSets {
    n: usize,
    allow_multisets: bool,
    current: Option<Vec<usize>>,
}

impl Iterator for ConnectionSets {
    type Item = ConnectionMultiset;

    fn next(&mut self) -> Option<ConnectionMultiset> {
        let current = self.current.as_mut()?;
        let out = ConnectionMultiset::new(self.n, current.iter().map(|&e| e as i64))
            .expect("enumerated elements are nonzero");
        // advance: rightmost position that can still grow
        let m = current.len();
        let max_at = |i: usize| if self.allow_multisets { self.n - 1 } else { self.n - m + i };
        match (0..m).rev().find(|&i| current[i] < max_at(i)) {
            Some(i) => {
                current[i] += 1;
                for j in i + 1..m {
                    current[j] = if self.allow_multisets { current[i] } else { current[j - 1] + 1 };
                }
            }
            None => self.current = None,
        }
        Some(out)
    }
}

pub fn enumerate_connection_sets(
    n: usize,
    m: usize,
    allow_multisets: bool,
    budget: u128,
) -> Result<ConnectionSets> {
    if n < 2 || m == 0 {
        return Err(Error::InvalidArgument(format!("need n >= 2 and m >= 1, got n={n}, m={m}")));
    }
    let count = count_connection_sets(n, m, allow_multisets);
    if count > budget {
        return Err(Error::Resource(format!(
            "{count} connection sets exceed the enumeration budget {budget}"
        )));
    }
    let start = if allow_multisets {
        vec![1; m]
    } else {
        (1..=m).collect()
    };
    let current = (count > 0).then_some(start);
    Ok(ConnectionSets {
        n,
        allow_multisets,
        current,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterizationReport {
    pub n: usize,
    pub m: usize,
    pub multisets: bool,
    pub criterion_holds: bool,
    pub graphs_enumerated: usize,
    /// Spectrum buckets holding two or more graphs.
    pub buckets_examined: usize,
    /// Pairs of distinct graphs sharing a bucket.
    pub isospectral_pairs: usize,
    pub all_isomorphic: bool,
    pub counterexamples: Vec<(ConnectionMultiset, ConnectionMultiset)>,
    pub unknown_pairs: Vec<(ConnectionMultiset, ConnectionMultiset)>,
}

impl CharacterizationReport {
    /// Criterion holds, everything was decided, yet a counterexample exists.
    pub fn contradicts_criterion(&self) -> bool {
        self.criterion_holds && self.unknown_pairs.is_empty() && !self.counterexamples.is_empty()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let parent = self.0[x];
        if parent == x {
            return x;
        }
        let root = self.find(parent);
        self.0[x] = root;
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra.max(rb)] = ra.min(rb);
    }
}

#[derive(Default)]
struct BucketOutcome {
    counterexamples: Vec<(usize, usize)>,
    unknown: Vec<(usize, usize)>,
}

fn split_bucket(graphs: &[CirculantGraph], members: &[usize], node_budget: u64) -> Result<BucketOutcome> {
    let mut uf = UnionFind::new(members.len());
    let mut out = BucketOutcome::default();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if uf.find(i) == uf.find(j) {
                continue;
            }
            let (gi, gj) = (&graphs[members[i]], &graphs[members[j]]);
            let verdict = decide_isomorphism(gi, gj, node_budget)?;
            match verdict.status {
                Status::Isomorphic => {
                    let verified = verdict.witness.as_ref().is_some_and(|w| w.verify(gi, gj));
                    if !verified {
                        return Err(Error::Precondition(format!(
                            "isomorphism witness for {gi} and {gj} failed re-verification"
                        )));
                    }
                    uf.union(i, j);
                }
                Status::NonIsomorphic => out.counterexamples.push((members[i], members[j])),
                Status::Unknown => out.unknown.push((members[i], members[j])),
            }
        }
    }
    Ok(out)
}

pub fn verify_characterization(
    n: usize,
    m: usize,
    allow_multisets: bool,
    node_budget: u64,
) -> Result<CharacterizationReport> {
    verify_characterization_bounded(n, m, allow_multisets, node_budget, DEFAULT_ENUMERATION_BUDGET)
}

pub fn verify_characterization_bounded(
    n: usize,
    m: usize,
    allow_multisets: bool,
    node_budget: u64,
    enumeration_budget: u128,
) -> Result<CharacterizationReport> {
    let criterion = criterion_holds(n, m)?;
    let graphs: Vec<CirculantGraph> = enumerate_connection_sets(n, m, allow_multisets, enumeration_budget)?
        .map(CirculantGraph::new)
        .collect();

    let keys: Vec<Vec<u8>> = graphs
        .par_iter()
        .map(|g| spectrum(g).map(|s| s.canonical_key().to_vec()))
        .collect::<Result<_>>()?;
    let mut buckets: BTreeMap<&[u8], Vec<usize>> = BTreeMap::new();
    for (i, key) in keys.iter().enumerate() {
        buckets.entry(key).or_default().push(i);
    }
    let crowded: Vec<&Vec<usize>> = buckets.values().filter(|b| b.len() > 1).collect();
    let isospectral_pairs = crowded.iter().map(|b| b.len() * (b.len() - 1) / 2).sum();

    let outcomes: Vec<BucketOutcome> = crowded
        .par_iter()
        .map(|members| split_bucket(&graphs, members, node_budget))
        .collect::<Result<_>>()?;

    let as_pair = |(a, b): (usize, usize)| {
        let (x, y) = (graphs[a].connections().clone(), graphs[b].connections().clone());
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    };
    let mut counterexamples: Vec<_> = outcomes
        .iter()
        .flat_map(|o| o.counterexamples.iter().copied())
        .map(as_pair)
        .collect();
    let mut unknown_pairs: Vec<_> = outcomes
        .iter()
        .flat_map(|o| o.unknown.iter().copied())
        .map(as_pair)
        .collect();
    counterexamples.sort();
    unknown_pairs.sort();

    Ok(CharacterizationReport {
        n,
        m,
        multisets: allow_multisets,
        criterion_holds: criterion,
        graphs_enumerated: graphs.len(),
        buckets_examined: crowded.len(),
        isospectral_pairs,
        all_isomorphic: counterexamples.is_empty() && unknown_pairs.is_empty(),
        counterexamples,
        unknown_pairs,
    })
}
