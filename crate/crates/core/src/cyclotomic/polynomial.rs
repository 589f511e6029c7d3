//! Cyclotomic polynomials and the per-modulus reduction tables.
//!
//! `Φ_n` is obtained from `x^n - 1` by exact division by `Φ_d` for every
//! proper divisor `d` of `n`. Both `Φ_n` and the table of `x^k mod Φ_n`
//! for `0 <= k < n` are cached process-wide.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::arith::divisors;
use crate::error::{Error, Result};

/// Dense integer polynomial, lowest degree first.
pub type IntPoly = Vec<i64>;

fn trim(poly: &mut IntPoly) {
    while poly.len() > 1 && *poly.last().unwrap() == 0 {
        poly.pop();
    }
}

/// Exact division by a monic polynomial. Fails if the remainder is nonzero
/// or an intermediate value overflows.
pub fn divide_exact(dividend: &[i64], divisor: &[i64]) -> Result<IntPoly> {
    let (quotient, remainder) = div_rem_monic(dividend, divisor)?;
    if remainder.iter().any(|&c| c != 0) {
        return Err(Error::Precondition("polynomial division is not exact".into()));
    }
    Ok(quotient)
}

/// Long division by a monic polynomial with checked arithmetic.
pub fn div_rem_monic(dividend: &[i64], divisor: &[i64]) -> Result<(IntPoly, IntPoly)> {
    let dd = divisor.len() - 1;
    assert_eq!(divisor[dd], 1, "divisor must be monic");
    let mut rem: IntPoly = dividend.to_vec();
    if rem.len() <= dd {
        rem.resize(dd.max(1), 0);
        return Ok((vec![0], rem));
    }
    let mut quotient = vec![0i64; rem.len() - dd];
    for top in (dd..rem.len()).rev() {
        let lead = rem[top];
        if lead == 0 {
            continue;
        }
        quotient[top - dd] = lead;
        for (k, &c) in divisor.iter().enumerate() {
            let idx = top - dd + k;
            let delta = lead.checked_mul(c).ok_or(Error::Overflow)?;
            rem[idx] = rem[idx].checked_sub(delta).ok_or(Error::Overflow)?;
        }
    }
    rem.truncate(dd.max(1));
    trim(&mut quotient);
    Ok((quotient, rem))
}

fn phi_cache() -> &'static RwLock<HashMap<usize, Arc<IntPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The `n`-th cyclotomic polynomial, monic, lowest degree first.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn cyclotomic_polynomial(n: usize) -> Arc<IntPoly> {
    assert!(n > 0, "cyclotomic_polynomial: n must be positive");
    if let Some(hit) = phi_cache().read().unwrap().get(&n) {
        return hit.clone();
    }
    let poly = if n == 1 {
        vec![-1, 1]
    } else {
        let mut acc = vec![0i64; n + 1];
        acc[0] = -1;
        acc[n] = 1;
        for d in divisors(n).into_iter().filter(|&d| d < n) {
            let phi_d = cyclotomic_polynomial(d);
            acc = divide_exact(&acc, &phi_d).expect("x^n - 1 is divisible by every Φ_d, d | n");
        }
        acc
    };
    let poly = Arc::new(poly);
    // Concurrent writers compute identical values; last one wins.
    phi_cache().write().unwrap().insert(n, poly.clone());
    poly
}

/// Everything needed to reduce group-ring elements of `Z[Z_n]` into
/// `Z[ω] ≅ Z[x]/Φ_n`.
#[derive(Debug)]
pub struct ReductionTable {
    pub modulus: usize,
    pub phi: Arc<IntPoly>,
    /// `powers[k]` holds the remainder of `x^k` modulo `Φ_n`, `0 <= k < n`.
    powers: Vec<Vec<i64>>,
}

impl ReductionTable {
    fn build(n: usize) -> Result<Self> {
        let phi = cyclotomic_polynomial(n);
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(n);
        let mut current = vec![0i64; degree];
        current[0] = 1;
        for k in 0..n {
            if k > 0 {
                // multiply by x, then fold the overflow term back with Φ_n
                let lead = current[degree - 1];
                for i in (1..degree).rev() {
                    current[i] = current[i - 1];
                }
                current[0] = 0;
                if lead != 0 {
                    for i in 0..degree {
                        let delta = lead.checked_mul(phi[i]).ok_or(Error::Overflow)?;
                        current[i] = current[i].checked_sub(delta).ok_or(Error::Overflow)?;
                    }
                }
            }
            powers.push(current.clone());
        }
        Ok(ReductionTable {
            modulus: n,
            phi,
            powers,
        })
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Remainder of `x^k mod Φ_n`; `k` is taken mod `n`.
    pub fn power(&self, k: usize) -> &[i64] {
        &self.powers[k % self.modulus]
    }
}

fn table_cache() -> &'static RwLock<HashMap<usize, Arc<ReductionTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<ReductionTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

pub fn reduction_table(n: usize) -> Result<Arc<ReductionTable>> {
    if n == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    if let Some(hit) = table_cache().read().unwrap().get(&n) {
        return Ok(hit.clone());
    }
    let table = Arc::new(ReductionTable::build(n)?);
    table_cache().write().unwrap().insert(n, table.clone());
    Ok(table)
}
