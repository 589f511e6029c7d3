//! Isospectral non-isomorphic circulant pairs on `n = 2^r·p`.
//!
//! ```text
//! A = {1 + i·2^r : 0 <= i <= (p-1)/2} ∪ {1 + j·2^r + n/2 : 1 <= j <= (p-1)/2}
//! B = {1 - i·2^r : 0 <= i <= (p-1)/2} ∪ {1 - j·2^r + n/2 : 1 <= j <= (p-1)/2}
//! ```
//!
//! and the extension `Ã = A ∪ qA`, `B̃ = B ∪ qB` for a unit `q`.

use serde::Serialize;

use crate::arith::{gcd, is_prime, mod_floor};
use crate::cyclotomic::{reduce, GroupRingElementOf};
use crate::error::{Error, Result};
use crate::graph::{has_repeated_eigenvalues, isospectral, spectrum, CirculantGraph, ConnectionMultiset};
use crate::isomorphism::{decide_isomorphism, IsomorphismVerdict, DEFAULT_NODE_BUDGET};

/// Brute-force budget used for extended pairs.
pub const EXTENSION_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConstructionParams {
    pub r: u32,
    pub p: u64,
    /// Stored reduced mod n.
    pub q: Option<usize>,
}

impl ConstructionParams {
    pub fn new(r: u32, p: u64, q: Option<i64>) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidArgument(format!("r must be >= 2, got {r}")));
        }
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidArgument(format!("p must be an odd prime, got {p}")));
        }
        let n = 1u64
            .checked_shl(r)
            .and_then(|t| t.checked_mul(p))
            .filter(|&n| n <= i64::MAX as u64 / 4)
            .ok_or_else(|| Error::InvalidArgument(format!("2^{r}·{p} is too large")))?
            as usize;
        let q = match q {
            None => None,
            Some(raw) => {
                let q = mod_floor(raw, n);
                if gcd(q as u64, n as u64) != 1 {
                    return Err(Error::InvalidArgument(format!("q = {raw} is not a unit mod {n}")));
                }
                if q == 1 {
                    return Err(Error::InvalidArgument(format!("q = {raw} is 1 mod {n}")));
                }
                Some(q)
            }
        };
        Ok(ConstructionParams { r, p, q })
    }

    pub fn n(&self) -> usize {
        (1usize << self.r) * self.p as usize
    }

    fn without_q(&self) -> Self {
        ConstructionParams { q: None, ..*self }
    }
}

fn connection_set(params: &ConstructionParams, sign: i64) -> Result<ConnectionMultiset> {
    let n = params.n() as i64;
    let step = 1i64 << params.r;
    let half = (params.p as i64 - 1) / 2;
    let first = (0..=half).map(|i| 1 + sign * i * step);
    let second = (1..=half).map(|j| 1 + sign * j * step + n / 2);
    ConnectionMultiset::new(n as usize, first.chain(second))
}

/// `(Cay(Z_n, A), Cay(Z_n, B))`. Any `q` in `params` is ignored.
pub fn build_pair(params: &ConstructionParams) -> Result<(CirculantGraph, CirculantGraph)> {
    Ok((
        CirculantGraph::new(connection_set(params, 1)?),
        CirculantGraph::new(connection_set(params, -1)?),
    ))
}

/// `(Cay(Z_n, A ∪ qA), Cay(Z_n, B ∪ qB))` as multiset unions.
pub fn extend_pair(params: &ConstructionParams) -> Result<(CirculantGraph, CirculantGraph)> {
    let q = params
        .q
        .ok_or_else(|| Error::InvalidArgument("extension needs a multiplier q".into()))? as i64;
    let a = connection_set(params, 1)?;
    let b = connection_set(params, -1)?;
    Ok((
        CirculantGraph::new(a.union(&a.scaled(q)?)?),
        CirculantGraph::new(b.union(&b.scaled(q)?)?),
    ))
}

fn is_power_of_two_above_one(k: usize) -> bool {
    k > 1 && k.is_power_of_two()
}

/// `λ_x = μ_{x+n/2}` when `gcd(x, n)` is a power of two greater than 1, and
/// `λ_x = μ_x` otherwise.
pub fn verify_pairing(x: &CirculantGraph, y: &CirculantGraph) -> bool {
    let n = x.modulus();
    if y.modulus() != n || n % 2 == 1 {
        return false;
    }
    let (Ok(sx), Ok(sy)) = (spectrum(x), spectrum(y)) else {
        return false;
    };
    (0..n).all(|k| {
        let g = gcd(k as u64, n as u64) as usize;
        let partner = if is_power_of_two_above_one(g) { k + n / 2 } else { k };
        sx.eigenvalue(k) == sy.eigenvalue(partner)
    })
}

fn power_sum_images_agree(r: u32, p: u64, k_max: u32, top: usize) -> bool {
    let Ok(params) = ConstructionParams::new(r, p, None) else {
        return false;
    };
    let n = params.n();
    let image = |shift: usize| {
        let exponents = (0..=top).map(|i| i * shift % n);
        reduce(&GroupRingElementOf::<i64>::from_exponents(n, exponents)?)
    };
    let Ok(base) = image((1usize << r) % n) else {
        return false;
    };
    let mut shift = (1usize << r) % n;
    for _ in 0..=k_max {
        match image(shift) {
            Ok(v) if v == base => {}
            _ => return false,
        }
        shift = shift * 2 % n;
    }
    true
}

/// `Σ_{i=0}^{(p-1)/2} ω^{i·2^{r+k}} = Σ_{i=0}^{(p-1)/2} ω^{i·2^r}` for every
/// `k <= k_max`.
///
/// Holds only when `2^k ≡ 1 mod p` for each tested `k`, so any `k_max >= 1`
/// gives `false`: at `n = 12`, `1 + ω^4 = -ω^8` but `1 + ω^8 = -ω^4`.
pub fn verify_power_sum_identity(r: u32, p: u64, k_max: u32) -> bool {
    power_sum_images_agree(r, p, k_max, (p as usize - 1) / 2)
}

/// The same identity over the full range `0 <= i <= p-1`, where both sides
/// vanish.
pub fn verify_full_power_sum_identity(r: u32, p: u64, k_max: u32) -> bool {
    power_sum_images_agree(r, p, k_max, p as usize - 1)
}

/// One connection set has exactly two elements divisible by `p`; the other
/// consists of units only.
pub fn verify_divisibility_split(x: &CirculantGraph, y: &CirculantGraph, p: u64) -> bool {
    let n = x.modulus() as u64;
    if y.modulus() as u64 != n || p == 0 {
        return false;
    }
    let multiples = |g: &CirculantGraph| g.connections().iter().filter(|&e| e as u64 % p == 0).count();
    let all_units = |g: &CirculantGraph| g.connections().iter().all(|e| gcd(e as u64, n) == 1);
    (multiples(x) == 2 && all_units(y)) != (multiples(y) == 2 && all_units(x))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionReport {
    pub params: ConstructionParams,
    pub n: usize,
    pub graph_x: CirculantGraph,
    pub graph_y: CirculantGraph,
    pub isospectral: bool,
    /// `None` for extended pairs.
    pub pairing_verified: Option<bool>,
    /// `None` for extended pairs, which may have repeated eigenvalues.
    pub distinct_eigenvalues: Option<bool>,
    /// Checked on the base sets `A`, `B`.
    pub divisibility_verified: bool,
    pub multigraph: bool,
    pub undirected: bool,
    pub verdict: IsomorphismVerdict,
    /// Set for extended pairs with `r > 2`, whose isomorphism is open; the
    /// verdict is computed data, not a proof.
    pub open_question_data: bool,
}

impl ConstructionReport {
    /// Every flag the base construction guarantees holds, and the verdict is
    /// non-isomorphic. Extended reports only need `isospectral`.
    pub fn properties_hold(&self) -> bool {
        use crate::isomorphism::Status;
        if self.params.q.is_some() {
            return self.isospectral;
        }
        self.isospectral
            && self.pairing_verified == Some(true)
            && self.distinct_eigenvalues == Some(true)
            && self.divisibility_verified
            && self.verdict.status == Status::NonIsomorphic
    }
}

pub fn full_report(params: &ConstructionParams) -> Result<ConstructionReport> {
    full_report_with_budget(
        params,
        if params.q.is_some() { EXTENSION_NODE_BUDGET } else { DEFAULT_NODE_BUDGET },
    )
}

pub fn full_report_with_budget(params: &ConstructionParams, node_budget: u64) -> Result<ConstructionReport> {
    let (base_x, base_y) = build_pair(&params.without_q())?;
    let divisibility = verify_divisibility_split(&base_x, &base_y, params.p);
    let (graph_x, graph_y, pairing, distinct) = if params.q.is_some() {
        let (x, y) = extend_pair(params)?;
        (x, y, None, None)
    } else {
        let pairing = verify_pairing(&base_x, &base_y);
        let distinct = !has_repeated_eigenvalues(&base_x)? && !has_repeated_eigenvalues(&base_y)?;
        (base_x, base_y, Some(pairing), Some(distinct))
    };
    let verdict = decide_isomorphism(&graph_x, &graph_y, node_budget)?;
    Ok(ConstructionReport {
        params: *params,
        n: params.n(),
        isospectral: isospectral(&graph_x, &graph_y)?,
        pairing_verified: pairing,
        distinct_eigenvalues: distinct,
        divisibility_verified: divisibility,
        multigraph: !(graph_x.connections().is_simple() && graph_y.connections().is_simple()),
        undirected: graph_x.is_undirected() && graph_y.is_undirected(),
        open_question_data: params.q.is_some() && params.r > 2,
        verdict,
        graph_x,
        graph_y,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;
    use crate::isomorphism::{Reason, Status};

    fn params(r: u32, p: u64, q: Option<i64>) -> ConstructionParams {
        ConstructionParams::new(r, p, q).unwrap()
    }

    #[test]
    fn twelve_vertex_sets() {
        let (x, y) = build_pair(&params(2, 3, None)).unwrap();
        assert_eq!(x.to_string(), "12:1,5,11");
        assert_eq!(y.to_string(), "12:1,3,9");
    }

    #[test]
    fn n24_sets() {
        let (x, y) = build_pair(&params(3, 3, None)).unwrap();
        // A: 1, 9, 1+8+12 = 21; B: 1, -7 = 17, 1-8+12 = 5
        assert_eq!(x.to_string(), "24:1,9,21");
        assert_eq!(y.to_string(), "24:1,5,17");
    }

    #[test]
    fn cardinalities() {
        for (r, p) in [(2, 5), (3, 7), (4, 11), (2, 13)] {
            let (x, y) = build_pair(&params(r, p, None)).unwrap();
            assert_eq!(x.degree(), p as usize);
            assert_eq!(y.degree(), p as usize);
            assert!(x.connections().is_simple() && y.connections().is_simple());
            let (ex, ey) = extend_pair(&params(r, p, Some(-1))).unwrap();
            assert_eq!(ex.degree(), 2 * p as usize);
            assert_eq!(ey.degree(), 2 * p as usize);
        }
    }

    #[test]
    fn param_validation() {
        assert!(ConstructionParams::new(1, 3, None).is_err());
        assert!(ConstructionParams::new(2, 9, None).is_err());
        assert!(ConstructionParams::new(2, 2, None).is_err());
        assert!(ConstructionParams::new(2, 3, Some(1)).is_err());
        assert!(ConstructionParams::new(2, 3, Some(13)).is_err());
        assert!(ConstructionParams::new(2, 3, Some(3)).is_err());
        assert_eq!(params(2, 3, Some(-1)).q, Some(11));
    }

    #[test]
    fn pairing_examples() {
        let (x, y) = build_pair(&params(2, 3, None)).unwrap();
        let (sx, sy) = (spectrum(&x).unwrap(), spectrum(&y).unwrap());
        assert_eq!(sx.eigenvalue(2), sy.eigenvalue(8));
        assert_eq!(sx.eigenvalue(1), sy.eigenvalue(1));
        assert_eq!(sx.eigenvalue(3), sy.eigenvalue(3));
        assert!(verify_pairing(&x, &y));
        assert!(!verify_pairing(&x, &parse_graph("12:1,5,7").unwrap()));
    }

    #[test]
    fn power_sum_examples() {
        assert!(verify_power_sum_identity(2, 3, 0));
        assert!(!verify_power_sum_identity(2, 3, 1));
        assert!(!verify_power_sum_identity(2, 3, 5));
        assert!(!verify_power_sum_identity(3, 7, 8));
        assert!(!verify_power_sum_identity(2, 4, 1));
        for (r, p) in [(2, 3), (3, 7), (4, 5)] {
            assert!(verify_full_power_sum_identity(r, p, 10));
        }
    }

    #[test]
    fn power_sum_half_range_oracle() {
        // n = 12: 1 + ω^4 and 1 + ω^8 are the two conjugates -ω^8, -ω^4
        let lhs = reduce(&GroupRingElementOf::<i64>::from_exponents(12, [0, 8]).unwrap()).unwrap();
        let rhs = reduce(&GroupRingElementOf::<i64>::from_exponents(12, [0, 4]).unwrap()).unwrap();
        assert_ne!(lhs, rhs);
        let neg = |k| reduce(&GroupRingElementOf::<i64>::monomial(12, k, -1)).unwrap();
        assert_eq!(lhs, neg(4));
        assert_eq!(rhs, neg(8));
    }

    #[test]
    fn divisibility_examples() {
        let (x, y) = build_pair(&params(2, 3, None)).unwrap();
        assert!(verify_divisibility_split(&x, &y, 3));
        let (x, y) = build_pair(&params(3, 3, None)).unwrap();
        assert!(verify_divisibility_split(&x, &y, 3));
        let tampered = parse_graph("12:1,5,7").unwrap();
        assert!(!verify_divisibility_split(&tampered, &y, 3));
    }

    #[test]
    fn base_reports() {
        for (r, p) in [(2, 3), (4, 5), (3, 7)] {
            let report = full_report(&params(r, p, None)).unwrap();
            assert!(report.properties_hold(), "{report:?}");
            assert_eq!(report.verdict.reason, Reason::AdamExhaustedUnderElspasTurner);
            assert!(!report.open_question_data);
        }
    }

    #[test]
    fn extension_at_r2_is_multigraph() {
        let report = full_report(&params(2, 3, Some(-1))).unwrap();
        assert!(report.isospectral);
        assert!(report.multigraph);
        assert!(report.undirected);
        assert!(!report.open_question_data);
        assert_eq!(report.pairing_verified, None);
    }

    #[test]
    fn extension_at_r3_is_simple_and_flagged() {
        let (x, y) = extend_pair(&params(3, 3, Some(-1))).unwrap();
        assert!(x.connections().is_simple() && y.connections().is_simple());
        assert!(x.is_undirected() && y.is_undirected());
        assert!(isospectral(&x, &y).unwrap());
    }

    #[test]
    fn report_json_has_graph_text() {
        let report = full_report(&params(2, 3, None)).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["graph_x"], "12:1,5,11");
        assert_eq!(json["graph_y"], "12:1,3,9");
        assert_eq!(json["verdict"]["status"], "NonIsomorphic");
        assert_eq!(report.verdict.status, Status::NonIsomorphic);
    }
}
