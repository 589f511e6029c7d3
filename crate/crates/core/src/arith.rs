//! Elementary number theory on machine integers.

use serde::Serialize;

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Reduces a possibly negative integer into `0..n`.
pub fn mod_floor(value: i64, n: usize) -> usize {
    value.rem_euclid(n as i64) as usize
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn totient(n: usize) -> usize {
    if n == 1 {
        return 1;
    }
    let f = Factorization::of(n).expect("n >= 2");
    f.factors
        .iter()
        .fold(n, |acc, &(p, _)| acc / p as usize * (p as usize - 1))
}

/// Prime factorization `n = p_1^{r_1} ... p_s^{r_s}` with `p_1 < ... < p_s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub n: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Trial division; fine for anything that fits a desk-scale enumeration.
    pub fn of(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "cannot factorize {n}: need n >= 2"
            )));
        }
        let mut rest = n as u64;
        let mut factors = Vec::new();
        let mut p = 2u64;
        while p * p <= rest {
            if rest % p == 0 {
                let mut e = 0;
                while rest % p == 0 {
                    rest /= p;
                    e += 1;
                }
                factors.push((p, e));
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if rest > 1 {
            factors.push((rest, 1));
        }
        Ok(Factorization {
            n: n as u64,
            factors,
        })
    }

    /// Number of distinct primes, `s`.
    pub fn distinct_primes(&self) -> usize {
        self.factors.len()
    }

    /// The `i`-th smallest prime (0-based).
    pub fn prime(&self, i: usize) -> Option<u64> {
        self.factors.get(i).map(|&(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

/// Odd and square-free; 1 counts.
pub fn is_odd_squarefree(n: usize) -> bool {
    if n % 2 == 0 {
        return false;
    }
    n == 1 || Factorization::of(n).map(|f| f.is_squarefree()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_examples() {
        assert_eq!(Factorization::of(12).unwrap().factors, vec![(2, 2), (3, 1)]);
        assert_eq!(Factorization::of(15).unwrap().factors, vec![(3, 1), (5, 1)]);
        assert_eq!(Factorization::of(49).unwrap().factors, vec![(7, 2)]);
        assert!(Factorization::of(1).is_err());
        assert!(Factorization::of(0).is_err());
    }

    #[test]
    fn factorization_multiplies_back() {
        for n in 2..2000usize {
            let f = Factorization::of(n).unwrap();
            let prod: u64 = f.factors.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, n as u64);
            assert!(f.factors.windows(2).all(|w| w[0].0 < w[1].0));
            assert!(f.factors.iter().all(|&(p, e)| is_prime(p) && e >= 1));
        }
    }

    #[test]
    fn totient_by_counting() {
        for n in 1..300usize {
            let count = (1..=n).filter(|&k| gcd(k as u64, n as u64) == 1).count();
            assert_eq!(totient(n), count, "n={n}");
        }
    }

    #[test]
    fn divisors_sorted() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn odd_squarefree() {
        assert!(is_odd_squarefree(1));
        assert!(is_odd_squarefree(15));
        assert!(!is_odd_squarefree(45));
        assert!(!is_odd_squarefree(6));
    }
}
