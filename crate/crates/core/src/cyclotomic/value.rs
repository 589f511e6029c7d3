use num_traits::Zero;

use super::group_ring::GroupRingElementOf;
use super::polynomial::reduction_table;
use crate::error::{Error, Result};
use crate::scalar::{Coefficient, Real};

/// An element of `Z[ω]`, stored as its canonical remainder modulo `Φ_n`
/// in the power basis `1, ω, …, ω^{φ(n)-1}`.
///
/// Equality of values is equality of the remainder vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclotomicValueOf<C> {
    modulus: usize,
    coeffs: Vec<C>,
}

fn degree(n: usize) -> Result<usize> {
    Ok(reduction_table(n)?.degree())
}

impl<C: Coefficient> CyclotomicValueOf<C> {
    pub fn zero(modulus: usize) -> Result<Self> {
        Ok(CyclotomicValueOf {
            modulus,
            coeffs: vec![C::zero(); degree(modulus)?],
        })
    }

    /// The rational integer `k` viewed in `Z[ω]`.
    pub fn integer(modulus: usize, k: C) -> Result<Self> {
        let mut out = Self::zero(modulus)?;
        out.coeffs[0] = k;
        Ok(out)
    }

    /// `ω^k`.
    pub fn omega_power(modulus: usize, k: usize) -> Result<Self> {
        reduce(&GroupRingElementOf::<C>::unit(modulus, k))
    }

    pub fn from_coeffs(modulus: usize, coeffs: Vec<C>) -> Result<Self> {
        let d = degree(modulus)?;
        if coeffs.len() != d {
            return Err(Error::InvalidArgument(format!(
                "Z[ω_{modulus}] has rank {d}, got {} coefficients",
                coeffs.len()
            )));
        }
        Ok(CyclotomicValueOf { modulus, coeffs })
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_same_modulus(&self, other: &Self) -> Result<()> {
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
        Ok(CyclotomicValueOf {
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
        Ok(CyclotomicValueOf {
            modulus: self.modulus,
            coeffs,
        })
    }

    /// Product in `Z[ω]`: multiply as polynomials, fold exponents mod n
    /// (`x^n ≡ 1` modulo `Φ_n`), then reduce.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_modulus(other)?;
        let n = self.modulus;
        let mut folded = vec![C::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let term = a.checked_mul(b).ok_or(Error::Overflow)?;
                let slot = &mut folded[(i + j) % n];
                *slot = slot.checked_add(&term).ok_or(Error::Overflow)?;
            }
        }
        reduce(&GroupRingElementOf::from_coeffs(n, folded)?)
    }

    /// Complex value at `ω = e^{2πi/n}`, as `(re, im)`.
    pub fn evaluate<F: Real>(&self) -> (F, F) {
        let n = F::from(self.modulus).unwrap();
        let mut re = F::zero();
        let mut im = F::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = F::from(c.clone()).unwrap();
            let angle = F::TAU() * F::from(k).unwrap() / n;
            re = re + c * angle.cos();
            im = im + c * angle.sin();
        }
        (re, im)
    }
}

/// `φ`: the image of a group-ring element in `Z[ω]`, as the canonical
/// remainder of `Σ C_i x^i` modulo `Φ_n`.
pub fn reduce<C: Coefficient>(a: &GroupRingElementOf<C>) -> Result<CyclotomicValueOf<C>> {
    let n = a.modulus();
    let table = reduction_table(n)?;
    let mut coeffs = vec![C::zero(); table.degree()];
    for (i, c) in a.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        accumulate(&mut coeffs, table.power(i), c)?;
    }
    Ok(CyclotomicValueOf { modulus: n, coeffs })
}

/// `acc += c · row` with checked arithmetic.
pub(crate) fn accumulate<C: Coefficient>(acc: &mut [C], row: &[i64], c: &C) -> Result<()> {
    for (slot, &r) in acc.iter_mut().zip(row) {
        if r == 0 {
            continue;
        }
        let term = c.checked_mul(&C::from(r)).ok_or(Error::Overflow)?;
        *slot = slot.checked_add(&term).ok_or(Error::Overflow)?;
    }
    Ok(())
}

/// Whether `φ(a) = 0`.
pub fn is_in_kernel<C: Coefficient>(a: &GroupRingElementOf<C>) -> Result<bool> {
    Ok(reduce(a)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::group_ring::{sigma, Subgroup};

    type E = GroupRingElementOf<i64>;

    #[test]
    fn coset_sum_of_order_three_vanishes() {
        let a = E::from_exponents(12, [1, 5, 9]).unwrap();
        assert!(reduce(&a).unwrap().is_zero());
        assert!(is_in_kernel(&a).unwrap());
    }

    #[test]
    fn three_z6_is_minus_three() {
        // x^6 ≡ -1 mod x^4 - x^2 + 1
        let v = reduce(&E::monomial(12, 6, 3)).unwrap();
        assert_eq!(v.coeffs(), &[-3, 0, 0, 0]);
    }

    #[test]
    fn zero_maps_to_zero() {
        for n in 1..30 {
            assert!(reduce(&E::zero(n)).unwrap().is_zero());
        }
    }

    #[test]
    fn kernel_examples() {
        let p1: E = sigma(&Subgroup::new(12, 2).unwrap());
        assert!(is_in_kernel(&p1).unwrap());
        assert!(!is_in_kernel(&E::unit(12, 1)).unwrap());
    }

    #[test]
    fn omega_power_wraps() {
        let a = CyclotomicValueOf::<i64>::omega_power(7, 3).unwrap();
        let b = CyclotomicValueOf::<i64>::omega_power(7, 10).unwrap();
        assert_eq!(a, b);
        let prod = a.checked_mul(&CyclotomicValueOf::omega_power(7, 4).unwrap()).unwrap();
        assert_eq!(prod, CyclotomicValueOf::integer(7, 1).unwrap());
    }

    #[test]
    fn evaluation_of_omega() {
        let w = CyclotomicValueOf::<i64>::omega_power(8, 1).unwrap();
        let (re, im): (f64, f64) = w.evaluate();
        let expected = std::f64::consts::FRAC_1_SQRT_2;
        assert!((re - expected).abs() < 1e-12 && (im - expected).abs() < 1e-12);
        let (re32, _): (f32, f32) = w.evaluate();
        assert!((re32 - expected as f32).abs() < 1e-6);
    }

    #[test]
    fn big_coefficients_reduce_identically() {
        let a = E::from_coeffs(10, vec![1, -2, 3, 0, 5, 7, -1, 0, 2, 9]).unwrap();
        let small = reduce(&a).unwrap();
        let big = reduce(&a.widen()).unwrap();
        let narrowed: Vec<i64> = big
            .coeffs()
            .iter()
            .map(|c| i64::try_from(c.clone()).unwrap())
            .collect();
        assert_eq!(small.coeffs(), &narrowed[..]);
    }

    #[test]
    fn reduce_overflow_is_an_error() {
        let a = E::from_coeffs(12, vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, i64::MIN]).unwrap();
        // x^11 ≡ x - x^3, and negating i64::MIN overflows
        assert_eq!(reduce(&a).unwrap_err(), Error::Overflow);
        assert!(reduce(&a.widen()).is_ok());
    }
}
