//! Brute-force isomorphism search for directed multigraphs.
//!
//! Individualization-refinement run on both graphs at once: the two vertex
//! colourings share one colour namespace, every refinement round recolours a
//! vertex by its colour and the colour/multiplicity profile of its in- and
//! out-neighbourhoods, and a branch dies as soon as the colour histograms
//! disagree. Branching maps one vertex of the first graph to every
//! same-coloured vertex of the second.

use std::collections::BTreeMap;

use super::{IsomorphismVerdict, Reason, Status, Witness};
use crate::error::Result;
use crate::graph::CirculantGraph;

struct Adjacency {
    out: Vec<Vec<(usize, u32)>>,
    inn: Vec<Vec<(usize, u32)>>,
}

impl Adjacency {
    fn of(g: &CirculantGraph) -> Self {
        let n = g.modulus();
        let out = (0..n)
            .map(|v| g.connections().counts().iter().map(|&(s, c)| ((v + s) % n, c)).collect())
            .collect();
        let inn = (0..n)
            .map(|v| g.connections().counts().iter().map(|&(s, c)| ((v + n - s) % n, c)).collect())
            .collect();
        Adjacency { out, inn }
    }
}

type Signature = (u32, Vec<(u32, u32)>, Vec<(u32, u32)>);

fn profile(edges: &[(usize, u32)], colours: &[u32]) -> Vec<(u32, u32)> {
    let mut acc: BTreeMap<u32, u32> = BTreeMap::new();
    for &(u, c) in edges {
        *acc.entry(colours[u]).or_default() += c;
    }
    acc.into_iter().collect()
}

fn signatures(adj: &Adjacency, colours: &[u32]) -> Vec<Signature> {
    (0..colours.len())
        .map(|v| (colours[v], profile(&adj.out[v], colours), profile(&adj.inn[v], colours)))
        .collect()
}

fn class_count(colours: &[u32]) -> usize {
    let mut seen: Vec<u32> = colours.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// Refines both colourings to a common stable partition. Returns `false`
/// when the graphs are distinguished.
fn refine(a1: &Adjacency, a2: &Adjacency, c1: &mut Vec<u32>, c2: &mut Vec<u32>) -> bool {
    let mut classes = class_count(c1);
    loop {
        let s1 = signatures(a1, c1);
        let s2 = signatures(a2, c2);
        let mut ids: BTreeMap<&Signature, (u32, i64)> = BTreeMap::new();
        for s in &s1 {
            ids.entry(s).or_insert((0, 0)).1 += 1;
        }
        for s in &s2 {
            ids.entry(s).or_insert((0, 0)).1 -= 1;
        }
        if ids.values().any(|&(_, balance)| balance != 0) {
            return false;
        }
        for (next, slot) in ids.values_mut().enumerate() {
            slot.0 = next as u32;
        }
        let fresh = ids.len();
        *c1 = s1.iter().map(|s| ids[s].0).collect();
        *c2 = s2.iter().map(|s| ids[s].0).collect();
        if fresh == classes {
            return true;
        }
        classes = fresh;
    }
}

enum Outcome {
    Found(Vec<usize>),
    Exhausted,
    OutOfBudget,
}

struct Search<'a> {
    a1: &'a Adjacency,
    a2: &'a Adjacency,
    g1: &'a CirculantGraph,
    g2: &'a CirculantGraph,
    budget: u64,
    nodes: u64,
}

impl Search<'_> {
    fn run(&mut self, mut c1: Vec<u32>, mut c2: Vec<u32>) -> Outcome {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Outcome::OutOfBudget;
        }
        if !refine(self.a1, self.a2, &mut c1, &mut c2) {
            return Outcome::Exhausted;
        }
        let n = c1.len();
        let mut members: BTreeMap<u32, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for v in 0..n {
            members.entry(c1[v]).or_default().0.push(v);
            members.entry(c2[v]).or_default().1.push(v);
        }
        if members.len() == n {
            let perm: Vec<usize> = (0..n).map(|v| members[&c1[v]].1[0]).collect();
            // an equitable discrete colouring is an isomorphism; checked anyway
            return if Witness::Permutation(perm.clone()).verify(self.g1, self.g2) {
                Outcome::Found(perm)
            } else {
                Outcome::Exhausted
            };
        }
        // smallest nontrivial cell, lowest colour first
        let (_, (left, right)) = members
            .iter()
            .filter(|(_, (l, _))| l.len() > 1)
            .min_by_key(|(colour, (l, _))| (l.len(), **colour))
            .expect("non-discrete partition has a nontrivial cell");
        let v = left[0];
        let fresh = members.len() as u32;
        for &w in right {
            let mut d1 = c1.clone();
            let mut d2 = c2.clone();
            d1[v] = fresh;
            d2[w] = fresh;
            match self.run(d1, d2) {
                Outcome::Exhausted => continue,
                other => return other,
            }
        }
        Outcome::Exhausted
    }
}

/// Searches for a vertex bijection carrying `g1` onto `g2`.
///
/// Translations are automorphisms of every circulant, so vertex 0 of `g1` is
/// sent to vertex 0 of `g2` without loss of generality. `node_budget` caps the
/// number of search-tree nodes visited; running out yields `Unknown`.
pub fn brute_force_isomorphic(
    g1: &CirculantGraph,
    g2: &CirculantGraph,
    node_budget: u64,
) -> Result<IsomorphismVerdict> {
    super::check_moduli(g1, g2)?;
    let n = g1.modulus();
    let a1 = Adjacency::of(g1);
    let a2 = Adjacency::of(g2);
    let mut c1 = vec![0u32; n];
    let mut c2 = vec![0u32; n];
    c1[0] = 1;
    c2[0] = 1;
    let mut search = Search {
        a1: &a1,
        a2: &a2,
        g1,
        g2,
        budget: node_budget,
        nodes: 0,
    };
    let verdict = match search.run(c1, c2) {
        Outcome::Found(perm) => IsomorphismVerdict {
            status: Status::Isomorphic,
            reason: Reason::BruteForcePermutationFound,
            witness: Some(Witness::Permutation(perm)),
        },
        Outcome::Exhausted => IsomorphismVerdict::non_isomorphic(Reason::BruteForceExhausted),
        Outcome::OutOfBudget => IsomorphismVerdict::unknown(),
    };
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;
    use crate::isomorphism::adam_equivalent;

    fn g(text: &str) -> CirculantGraph {
        parse_graph(text).unwrap()
    }

    #[test]
    fn twelve_vertex_pair_is_not_isomorphic() {
        let v = brute_force_isomorphic(&g("12:1,5,11"), &g("12:1,3,9"), 10_000_000).unwrap();
        assert_eq!(v.status, Status::NonIsomorphic);
        assert_eq!(v.reason, Reason::BruteForceExhausted);
    }

    #[test]
    fn identity_on_self() {
        let x = g("12:1,5,11");
        let v = brute_force_isomorphic(&x, &x, 1000).unwrap();
        assert_eq!(v.status, Status::Isomorphic);
        assert_eq!(v.witness, Some(Witness::Permutation((0..12).collect())));
    }

    #[test]
    fn reversal_agrees_with_multiplier() {
        let a = g("6:1");
        let b = g("6:5");
        assert_eq!(adam_equivalent(&a, &b).unwrap(), Some(5));
        let v = brute_force_isomorphic(&a, &b, 1000).unwrap();
        assert_eq!(v.status, Status::Isomorphic);
        assert!(v.witness.unwrap().verify(&a, &b));
    }

    #[test]
    fn multigraph_multiplicities_matter() {
        let v = brute_force_isomorphic(&g("7:1*2,3"), &g("7:1,3*2"), 10_000).unwrap();
        let q = adam_equivalent(&g("7:1*2,3"), &g("7:1,3*2")).unwrap();
        assert_eq!(v.status == Status::Isomorphic, q.is_some());
    }

    #[test]
    fn tiny_budget_is_unknown() {
        let v = brute_force_isomorphic(&g("8:1,2,5"), &g("8:1,5,6"), 0).unwrap();
        assert_eq!(v.status, Status::Unknown);
        assert_eq!(v.reason, Reason::BudgetExceeded);
    }
}
