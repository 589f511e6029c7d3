use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Coefficient;

/// An element `Σ C_i z^i` of the group ring `Z[Z_n]`, stored in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElementOf<C> {
    modulus: usize,
    coeffs: Vec<C>,
}

impl<C: Coefficient> GroupRingElementOf<C> {
    pub fn zero(modulus: usize) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        GroupRingElementOf {
            modulus,
            coeffs: vec![C::zero(); modulus],
        }
    }

    /// `c · z^exponent`, exponent taken mod n.
    pub fn monomial(modulus: usize, exponent: usize, c: C) -> Self {
        let mut out = Self::zero(modulus);
        out.coeffs[exponent % modulus] = c;
        out
    }

    /// `z^exponent`.
    pub fn unit(modulus: usize, exponent: usize) -> Self {
        Self::monomial(modulus, exponent, C::one())
    }

    pub fn from_coeffs(modulus: usize, coeffs: Vec<C>) -> Result<Self> {
        if modulus == 0 || coeffs.len() != modulus {
            return Err(Error::InvalidArgument(format!(
                "expected {modulus} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(GroupRingElementOf { modulus, coeffs })
    }

    /// Sum of `z^e` over a multiset of exponents (reduced mod n).
    pub fn from_exponents<I: IntoIterator<Item = usize>>(modulus: usize, exponents: I) -> Result<Self> {
        let mut out = Self::zero(modulus);
        for e in exponents {
            let slot = &mut out.coeffs[e % modulus];
            *slot = slot.checked_add(&C::one()).ok_or(Error::Overflow)?;
        }
        Ok(out)
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// `C_j` with `j` taken mod n.
    pub fn coeff(&self, j: usize) -> &C {
        &self.coeffs[j % self.modulus]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// `ε`: sum of all coefficients.
    pub fn epsilon(&self) -> Result<C> {
        self.coeffs
            .iter()
            .try_fold(C::zero(), |acc, c| acc.checked_add(c).ok_or(Error::Overflow))
    }

    /// `ε₀`: number of nonzero coefficients.
    pub fn epsilon0(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Support as a sorted multiset of exponents; defined only for
    /// nonnegative elements.
    pub fn support(&self) -> Result<Vec<usize>> {
        self.check_nonnegative()?;
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            let times = c.to_usize().ok_or_else(|| {
                Error::Resource(format!("multiplicity {c:?} at exponent {i} is too large"))
            })?;
            out.extend(std::iter::repeat(i).take(times));
        }
        Ok(out)
    }

    pub(crate) fn check_nonnegative(&self) -> Result<()> {
        match self.coeffs.iter().position(|c| c.is_negative()) {
            Some(index) => Err(Error::NegativeCoefficient {
                index,
                value: format!("{:?}", self.coeffs[index]),
            }),
            None => Ok(()),
        }
    }

    pub(crate) fn check_same_modulus(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_modulus(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(b).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(GroupRingElementOf {
            modulus: self.modulus,
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_modulus(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_sub(b).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(GroupRingElementOf {
            modulus: self.modulus,
            coeffs,
        })
    }

    pub fn scale(&self, factor: &C) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_mul(factor).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(GroupRingElementOf {
            modulus: self.modulus,
            coeffs,
        })
    }

    /// Multiplication by `z^k`: a cyclic shift of the coefficients.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.modulus;
        let mut coeffs = vec![C::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(i + k) % n] = c.clone();
        }
        GroupRingElementOf { modulus: n, coeffs }
    }

    /// Cyclic convolution, `C_k = Σ_{i+j ≡ k} a_i b_j`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same_modulus(other)?;
        let n = self.modulus;
        let mut coeffs = vec![C::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let term = a.checked_mul(b).ok_or(Error::Overflow)?;
                let slot = &mut coeffs[(i + j) % n];
                *slot = slot.checked_add(&term).ok_or(Error::Overflow)?;
            }
        }
        Ok(GroupRingElementOf { modulus: n, coeffs })
    }
}

impl GroupRingElementOf<i64> {
    /// Lossless widening to arbitrary precision.
    pub fn widen(&self) -> GroupRingElementOf<BigInt> {
        GroupRingElementOf {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }
}

/// The unique subgroup of order `d` of the cyclic group of order `n`,
/// i.e. the exponents `{ i·n/d : 0 <= i < d }`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subgroup {
    modulus: usize,
    order: usize,
}

impl Subgroup {
    pub fn new(modulus: usize, order: usize) -> Result<Self> {
        if modulus == 0 || order == 0 || modulus % order != 0 {
            return Err(Error::InvalidArgument(format!(
                "no subgroup of order {order} in Z_{modulus}"
            )));
        }
        Ok(Subgroup { modulus, order })
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Spacing `n/d` between consecutive elements.
    pub fn step(&self) -> usize {
        self.modulus / self.order
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order).map(move |i| i * self.step())
    }

    pub fn contains(&self, exponent: usize) -> bool {
        exponent % self.modulus % self.step() == 0
    }

    /// Number of cosets, `n/d`. Coset `r` is `{ r + i·n/d }` for `0 <= r < n/d`.
    pub fn coset_count(&self) -> usize {
        self.step()
    }

    pub fn coset(&self, representative: usize) -> impl Iterator<Item = usize> + '_ {
        let r = representative % self.step();
        self.elements().map(move |h| r + h)
    }

    pub fn coset_of(&self, exponent: usize) -> usize {
        exponent % self.modulus % self.step()
    }
}

/// `σ(H)`, the sum of the elements of `H`.
pub fn sigma<C: Coefficient>(h: &Subgroup) -> GroupRingElementOf<C> {
    let mut out = GroupRingElementOf::zero(h.modulus);
    for e in h.elements() {
        out.coeffs[e] = C::one();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    type E = GroupRingElementOf<i64>;

    #[test]
    fn sigma_examples() {
        let p1: E = sigma(&Subgroup::new(12, 2).unwrap());
        assert_eq!(p1.support().unwrap(), vec![0, 6]);
        let p2: E = sigma(&Subgroup::new(12, 3).unwrap());
        assert_eq!(p2.support().unwrap(), vec![0, 4, 8]);
        assert_eq!(p2.epsilon().unwrap(), 3);
        assert_eq!(p2.epsilon0(), 3);
        let trivial: E = sigma(&Subgroup::new(12, 1).unwrap());
        assert_eq!(trivial.support().unwrap(), vec![0]);
    }

    #[test]
    fn epsilon_and_support() {
        let a = E::monomial(12, 3, 2);
        assert_eq!(a.epsilon().unwrap(), 2);
        assert_eq!(a.epsilon0(), 1);
        assert_eq!(a.support().unwrap(), vec![3, 3]);

        let z = E::unit(12, 1);
        let zero = z.checked_sub(&z).unwrap();
        assert_eq!(zero.epsilon().unwrap(), 0);
        assert_eq!(zero.epsilon0(), 0);
        assert!(zero.support().unwrap().is_empty());
    }

    #[test]
    fn support_rejects_negative() {
        let a = E::monomial(5, 2, -1);
        assert!(matches!(a.support(), Err(Error::NegativeCoefficient { index: 2, .. })));
    }

    #[test]
    fn coefficient_index_wraps() {
        let a = E::unit(12, 1);
        assert_eq!(*a.coeff(13), 1);
        assert_eq!(*a.coeff(25), 1);
    }

    #[test]
    fn multiply_examples() {
        let p2: E = sigma(&Subgroup::new(12, 3).unwrap());
        let prod = E::unit(12, 1).multiply(&p2).unwrap();
        assert_eq!(prod.support().unwrap(), vec![1, 5, 9]);

        let a = E::from_coeffs(7, vec![3, -1, 0, 4, 0, 0, 2]).unwrap();
        assert_eq!(a.multiply(&E::unit(7, 0)).unwrap(), a);

        let one_plus_z = E::from_exponents(4, [0, 1]).unwrap();
        let sq = one_plus_z.multiply(&one_plus_z).unwrap();
        assert_eq!(sq.coeffs(), &[1, 2, 1, 0]);
    }

    #[test]
    fn multiply_rejects_mismatched_moduli() {
        let err = E::unit(4, 1).multiply(&E::unit(5, 1)).unwrap_err();
        assert_eq!(err, Error::ModulusMismatch { left: 4, right: 5 });
    }

    #[test]
    fn overflow_is_reported_not_wrapped() {
        let big = E::monomial(3, 0, i64::MAX / 2 + 1);
        assert_eq!(big.checked_add(&big).unwrap_err(), Error::Overflow);
        assert_eq!(big.multiply(&E::monomial(3, 1, 4)).unwrap_err(), Error::Overflow);
        // the widened element carries the product exactly
        let wide = big.widen().multiply(&E::monomial(3, 1, 4).widen()).unwrap();
        assert_eq!(wide.coeffs()[1], BigInt::from(i64::MAX / 2 + 1) * 4);
    }

    #[test]
    fn absorption_by_subgroup_elements() {
        for n in 1..=40usize {
            for d in crate::arith::divisors(n) {
                let h = Subgroup::new(n, d).unwrap();
                let s: E = sigma(&h);
                for e in h.elements() {
                    assert_eq!(s.multiply(&E::unit(n, e)).unwrap(), s);
                    assert_eq!(s.shift(e), s);
                }
            }
        }
    }

    #[test]
    fn cosets_partition_the_group() {
        let h = Subgroup::new(12, 3).unwrap();
        let mut seen = vec![0; 12];
        for r in 0..h.coset_count() {
            for e in h.coset(r) {
                seen[e] += 1;
                assert_eq!(h.coset_of(e), r);
            }
        }
        assert!(seen.iter().all(|&c| c == 1));
        assert!(Subgroup::new(12, 5).is_err());
    }
}
