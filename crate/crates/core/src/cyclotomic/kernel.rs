//! Nonnegative vanishing sums: coset structure, decomposition into
//! translates of `σ(P_1)` and `σ(P_2)`, and the equal-image classifier.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::group_ring::{sigma, GroupRingElementOf, Subgroup};
use super::value::reduce;
use crate::arith::Factorization;
use crate::error::{Error, Result};
use crate::scalar::Coefficient;

/// Result of inspecting `a` against the cosets of a subgroup `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CosetConstancy {
    /// Coefficients are constant on every coset, i.e. `a ∈ ZG·σ(H)`.
    pub constant_on_cosets: bool,
    /// All coefficients are `>= 0`.
    pub nonnegative: bool,
}

impl CosetConstancy {
    /// `a ∈ NG·σ(H)`.
    pub fn in_natural_ideal(&self) -> bool {
        self.constant_on_cosets && self.nonnegative
    }
}

pub fn is_coset_constant_multiple<C: Coefficient>(
    a: &GroupRingElementOf<C>,
    h: &Subgroup,
) -> Result<CosetConstancy> {
    if a.modulus() != h.modulus() {
        return Err(Error::ModulusMismatch {
            left: a.modulus(),
            right: h.modulus(),
        });
    }
    let constant_on_cosets = (0..h.coset_count()).all(|r| {
        let first = a.coeff(r);
        h.coset(r).all(|e| a.coeff(e) == first)
    });
    Ok(CosetConstancy {
        constant_on_cosets,
        nonnegative: a.is_nonnegative(),
    })
}

/// `a = Σ a_g·g·σ(P_1) + Σ b_g·g·σ(P_2)` with every stored coefficient `>= 1`.
///
/// Keys are coset representatives `g ∈ {0, …, n/p_i - 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelDecomposition<C> {
    pub modulus: usize,
    /// Order of `P_1` (the smallest prime dividing n), if any.
    pub p1: Option<usize>,
    pub p2: Option<usize>,
    pub part1: BTreeMap<usize, C>,
    pub part2: BTreeMap<usize, C>,
}

impl<C: Coefficient> KernelDecomposition<C> {
    pub fn reconstruct(&self) -> Result<GroupRingElementOf<C>> {
        let mut out = GroupRingElementOf::zero(self.modulus);
        for (order, part) in [(self.p1, &self.part1), (self.p2, &self.part2)] {
            let Some(order) = order else { continue };
            let s: GroupRingElementOf<C> = sigma(&Subgroup::new(self.modulus, order)?);
            for (&g, c) in part {
                out = out.checked_add(&s.shift(g).scale(c)?)?;
            }
        }
        Ok(out)
    }
}

/// Subtract `c` from every coefficient of coset `r` of `h`.
fn subtract_on_coset<C: Coefficient>(coeffs: &mut [C], h: &Subgroup, r: usize, c: &C) -> Result<()> {
    for e in h.coset(r) {
        coeffs[e] = coeffs[e].checked_sub(c).ok_or(Error::Overflow)?;
    }
    Ok(())
}

/// Writes a nonnegative kernel element as `NG·σ(P_1) + NG·σ(P_2)`.
///
/// Returns `None` when no such decomposition exists, which for `s <= 2`
/// happens exactly when `a` is not in the kernel of `φ`.
///
/// Each coset of `P_1` gives up its minimum coefficient; what remains must be
/// constant on the cosets of `P_2` (or zero when `s = 1`). Inside a coset of
/// `P_1 P_2` the coefficients form a `p_1 × p_2` grid and a decomposition is
/// a split `a[i][j] = u_j + v_i`; taking `u_j` as the column minimum is the
/// least choice of `u` that keeps `v` nonnegative, so the greedy pass finds a
/// decomposition whenever one exists.
pub fn decompose_kernel<C: Coefficient>(
    a: &GroupRingElementOf<C>,
) -> Result<Option<KernelDecomposition<C>>> {
    a.check_nonnegative()?;
    let n = a.modulus();
    let mut out = KernelDecomposition {
        modulus: n,
        p1: None,
        p2: None,
        part1: BTreeMap::new(),
        part2: BTreeMap::new(),
    };
    if n == 1 {
        return Ok(a.is_zero().then_some(out));
    }
    let f = Factorization::of(n)?;
    if f.distinct_primes() > 2 {
        return Err(Error::UnsupportedModulus {
            n,
            primes: f.distinct_primes(),
        });
    }
    let p1 = Subgroup::new(n, f.prime(0).unwrap() as usize)?;
    out.p1 = Some(p1.order());
    let mut rest: Vec<C> = a.coeffs().to_vec();
    for r in 0..p1.coset_count() {
        let min = p1.coset(r).map(|e| rest[e].clone()).min().unwrap();
        if min.is_zero() {
            continue;
        }
        subtract_on_coset(&mut rest, &p1, r, &min)?;
        out.part1.insert(r, min);
    }

    let Some(p2_order) = f.prime(1) else {
        return Ok(rest.iter().all(Zero::is_zero).then_some(out));
    };
    let p2 = Subgroup::new(n, p2_order as usize)?;
    out.p2 = Some(p2.order());
    for r in 0..p2.coset_count() {
        let value = rest[r].clone();
        if p2.coset(r).any(|e| rest[e] != value) {
            return Ok(None);
        }
        if !value.is_zero() {
            out.part2.insert(r, value);
        }
    }
    Ok(Some(out))
}

/// Whether `a` lies in `NP_1·σ(P_2) + NP_2·σ(P_1)`, the form in which the
/// multipliers are restricted to the subgroups themselves. Decided by
/// exhausting all nonnegative combinations bounded by `a`.
///
/// Only meaningful for `s = 2`; other moduli are rejected.
pub fn in_subgroup_restricted_form<C: Coefficient>(a: &GroupRingElementOf<C>) -> Result<bool> {
    a.check_nonnegative()?;
    let n = a.modulus();
    let f = Factorization::of(n)?;
    if f.distinct_primes() != 2 {
        return Err(Error::UnsupportedModulus {
            n,
            primes: f.distinct_primes(),
        });
    }
    let p1 = Subgroup::new(n, f.prime(0).unwrap() as usize)?;
    let p2 = Subgroup::new(n, f.prime(1).unwrap() as usize)?;
    let s1: GroupRingElementOf<C> = sigma(&p1);
    let s2: GroupRingElementOf<C> = sigma(&p2);
    // g·σ(P_2) for g ∈ P_1, then h·σ(P_1) for h ∈ P_2
    let generators: Vec<GroupRingElementOf<C>> = p1
        .elements()
        .map(|g| s2.shift(g))
        .chain(p2.elements().map(|h| s1.shift(h)))
        .collect();
    Ok(exhaust(a.clone(), &generators))
}

fn exhaust<C: Coefficient>(rest: GroupRingElementOf<C>, generators: &[GroupRingElementOf<C>]) -> bool {
    if rest.is_zero() {
        return true;
    }
    let Some((first, others)) = generators.split_first() else {
        return false;
    };
    // every count of `first` that keeps the remainder nonnegative
    let mut current = rest;
    loop {
        if exhaust(current.clone(), others) {
            return true;
        }
        match current.checked_sub(first) {
            Ok(next) if next.is_nonnegative() => current = next,
            _ => return false,
        }
    }
}

/// The two outcomes allowed when two nonnegative elements of equal weight
/// share an image, plus the one that should never happen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EqualImageClass {
    Equal,
    /// `a = z^{g_a} σ(P_1)` and `b = z^{g_b} σ(P_1)`.
    BothCosetSums { g_a: usize, g_b: usize },
    NeitherCaseApplies,
}

/// Classify a pair `a, b ∈ NG` with `ε(a) = ε(b) = m` and `φ(a) = φ(b)`,
/// under `p_1 >= m` and (`s = 1` or `p_2 > p_1 (m - 1)`).
///
/// The hypotheses are checked; a violation is a precondition error that names
/// the clause. The coset-sum case is verified constructively.
pub fn classify_equal_image<C: Coefficient>(
    a: &GroupRingElementOf<C>,
    b: &GroupRingElementOf<C>,
) -> Result<EqualImageClass> {
    a.check_same_modulus(b)?;
    a.check_nonnegative()?;
    b.check_nonnegative()?;
    let n = a.modulus();
    let (ea, eb) = (a.epsilon()?, b.epsilon()?);
    if ea != eb {
        return Err(Error::Precondition(format!(
            "ε(a) = {ea:?} differs from ε(b) = {eb:?}"
        )));
    }
    if reduce(a)? != reduce(b)? {
        return Err(Error::Precondition("φ(a) ≠ φ(b)".into()));
    }
    let f = Factorization::of(n)
        .map_err(|_| Error::Precondition(format!("n = {n} has no prime factor p_1")))?;
    let m = ea
        .to_u64()
        .ok_or_else(|| Error::Precondition(format!("m = {ea:?} out of range")))?;
    let p1 = f.prime(0).unwrap();
    if p1 < m {
        return Err(Error::Precondition(format!("p_1 >= m fails: p_1 = {p1}, m = {m}")));
    }
    if let Some(p2) = f.prime(1) {
        if p2 <= p1 * m.saturating_sub(1) {
            return Err(Error::Precondition(format!(
                "s = 1 or p_2 > p_1(m-1) fails: p_2 = {p2}, p_1(m-1) = {}",
                p1 * (m - 1)
            )));
        }
    }

    if a == b {
        return Ok(EqualImageClass::Equal);
    }
    let p1 = Subgroup::new(n, p1 as usize)?;
    let s1: GroupRingElementOf<C> = sigma(&p1);
    let lowest = |x: &GroupRingElementOf<C>| x.coeffs().iter().position(|c| !c.is_zero());
    if let (Some(g_a), Some(g_b)) = (lowest(a), lowest(b)) {
        if &s1.shift(g_a) == a && &s1.shift(g_b) == b {
            return Ok(EqualImageClass::BothCosetSums { g_a, g_b });
        }
    }
    Ok(EqualImageClass::NeitherCaseApplies)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::value::is_in_kernel;

    type E = GroupRingElementOf<i64>;

    fn sub(n: usize, d: usize) -> Subgroup {
        Subgroup::new(n, d).unwrap()
    }

    #[test]
    fn coset_constancy_examples() {
        let s: E = sigma(&sub(12, 2));
        assert!(is_coset_constant_multiple(&s, &sub(12, 2)).unwrap().in_natural_ideal());

        let a = E::from_exponents(12, [1, 5, 9]).unwrap();
        let c = is_coset_constant_multiple(&a, &sub(12, 2)).unwrap();
        assert!(!c.constant_on_cosets);
        // coefficient at 1 is 1, at 7 is 0
        assert_eq!((*a.coeff(1), *a.coeff(7)), (1, 0));

        let b = E::from_exponents(12, [1, 7]).unwrap();
        assert!(is_coset_constant_multiple(&b, &sub(12, 2)).unwrap().constant_on_cosets);

        let neg = b.scale(&-1).unwrap();
        let c = is_coset_constant_multiple(&neg, &sub(12, 2)).unwrap();
        assert!(c.constant_on_cosets && !c.nonnegative && !c.in_natural_ideal());
    }

    #[test]
    fn decompose_kernel_regression() {
        let a = E::from_exponents(12, [1, 5, 9]).unwrap();
        let d = decompose_kernel(&a).unwrap().unwrap();
        assert!(d.part1.is_empty());
        assert_eq!(d.part2, BTreeMap::from([(1, 1)]));
        assert_eq!(d.reconstruct().unwrap(), a);
    }

    #[test]
    fn decompose_non_kernel_is_none() {
        assert_eq!(decompose_kernel(&E::unit(12, 1)).unwrap(), None);
    }

    #[test]
    fn decompose_sum_of_generators() {
        let a = sigma::<i64>(&sub(15, 3)).checked_add(&sigma(&sub(15, 5))).unwrap();
        let d = decompose_kernel(&a).unwrap().unwrap();
        assert_eq!(d.part1, BTreeMap::from([(0, 1)]));
        assert_eq!(d.part2, BTreeMap::from([(0, 1)]));
    }

    #[test]
    fn decompose_errors() {
        assert!(matches!(
            decompose_kernel(&E::unit(30, 1)),
            Err(Error::UnsupportedModulus { n: 30, primes: 3 })
        ));
        assert!(matches!(
            decompose_kernel(&E::monomial(12, 2, -1)),
            Err(Error::NegativeCoefficient { index: 2, .. })
        ));
    }

    #[test]
    fn decompose_prime_power() {
        let a = sigma::<i64>(&sub(9, 3)).shift(2).scale(&2).unwrap();
        let d = decompose_kernel(&a).unwrap().unwrap();
        assert_eq!(d.part1, BTreeMap::from([(2, 2)]));
        assert!(d.part2.is_empty());
        assert_eq!(decompose_kernel(&E::from_exponents(9, [0, 3]).unwrap()).unwrap(), None);
    }

    #[test]
    fn decompose_trivial_modulus() {
        assert!(decompose_kernel(&E::zero(1)).unwrap().is_some());
        assert!(decompose_kernel(&E::unit(1, 0)).unwrap().is_none());
    }

    #[test]
    fn kernel_member_outside_restricted_form() {
        let a = E::from_exponents(12, [1, 5, 9]).unwrap();
        assert!(is_in_kernel(&a).unwrap());
        assert!(!in_subgroup_restricted_form(&a).unwrap());
        // while σ(P_2) itself is
        assert!(in_subgroup_restricted_form(&sigma::<i64>(&sub(12, 3))).unwrap());
        let mixed = sigma::<i64>(&sub(12, 3))
            .shift(6)
            .checked_add(&sigma(&sub(12, 2)).shift(4))
            .unwrap();
        assert!(in_subgroup_restricted_form(&mixed).unwrap());
    }

    #[test]
    fn classify_equal() {
        let a = E::from_exponents(25, [1, 2]).unwrap();
        assert_eq!(classify_equal_image(&a, &a).unwrap(), EqualImageClass::Equal);
    }

    #[test]
    fn classify_coset_sums() {
        let a: E = sigma(&sub(25, 5));
        let b = a.shift(1);
        assert_eq!(
            classify_equal_image(&a, &b).unwrap(),
            EqualImageClass::BothCosetSums { g_a: 0, g_b: 1 }
        );
    }

    #[test]
    fn classify_rejects_failed_criterion() {
        let a = E::from_exponents(15, [1, 2, 4]).unwrap();
        let err = classify_equal_image(&a, &a).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref m) if m.contains("p_2 > p_1(m-1)")), "{err}");
    }

    #[test]
    fn classify_rejects_bad_inputs() {
        let a = E::from_exponents(25, [1, 2]).unwrap();
        let b = E::from_exponents(25, [1, 3]).unwrap();
        assert!(matches!(classify_equal_image(&a, &b), Err(Error::Precondition(m)) if m.contains("φ")));
        let c = E::from_exponents(25, [1]).unwrap();
        assert!(matches!(classify_equal_image(&a, &c), Err(Error::Precondition(m)) if m.contains("ε")));
        let big = E::from_exponents(9, [1, 2, 3, 4]).unwrap();
        assert!(matches!(classify_equal_image(&big, &big), Err(Error::Precondition(m)) if m.contains("p_1 >= m")));
    }
}
