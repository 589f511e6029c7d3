use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::CirculantGraph;
use crate::cyclotomic::reduction_table;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::CyclotomicValue;

/// Eigenvalues `λ_x = Σ_{s∈S} ω^{xs}` indexed by `x ∈ Z_n`, plus a
/// fingerprint of the eigenvalue multiset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    modulus: usize,
    eigenvalues: Vec<CyclotomicValue>,
    canonical_key: Vec<u8>,
}

impl Spectrum {
    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// `λ_x`, with `x` taken mod n.
    pub fn eigenvalue(&self, x: usize) -> &CyclotomicValue {
        &self.eigenvalues[x % self.modulus]
    }

    pub fn eigenvalues(&self) -> &[CyclotomicValue] {
        &self.eigenvalues
    }

    /// The modulus as a little-endian `u64`, followed by the remainder
    /// vectors in lexicographic order, each coefficient a little-endian
    /// `i64`. Equal multisets give identical bytes.
    pub fn canonical_key(&self) -> &[u8] {
        &self.canonical_key
    }

    pub fn canonical_key_hex(&self) -> String {
        self.canonical_key.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Eigenvalue coefficient vectors sorted lexicographically.
    pub fn sorted_values(&self) -> Vec<&[i64]> {
        let mut values: Vec<&[i64]> = self.eigenvalues.iter().map(|v| v.coeffs()).collect();
        values.sort_unstable();
        values
    }

    fn from_eigenvalues(modulus: usize, eigenvalues: Vec<CyclotomicValue>) -> Self {
        let mut spectrum = Spectrum {
            modulus,
            eigenvalues,
            canonical_key: Vec::new(),
        };
        let mut key = (modulus as u64).to_le_bytes().to_vec();
        for v in spectrum.sorted_values() {
            for c in v {
                key.extend_from_slice(&c.to_le_bytes());
            }
        }
        spectrum.canonical_key = key;
        spectrum
    }
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let eigenvalues: Vec<&[i64]> = self.eigenvalues.iter().map(|v| v.coeffs()).collect();
        let mut s = serializer.serialize_struct("Spectrum", 3)?;
        s.serialize_field("n", &self.modulus)?;
        s.serialize_field("eigenvalues", &eigenvalues)?;
        s.serialize_field("canonical_key", &self.canonical_key_hex())?;
        s.end()
    }
}

/// Exact spectrum: entry `x` is the reduction of `Σ_s mult(s)·z^{xs}`.
pub fn spectrum(g: &CirculantGraph) -> Result<Spectrum> {
    let n = g.modulus();
    let table = reduction_table(n)?;
    let counts = g.connections().counts();
    let eigenvalues = (0..n)
        .map(|x| {
            let mut acc = vec![0i64; table.degree()];
            for &(s, mult) in counts {
                let row = table.power(x * s % n);
                let mult = mult as i64;
                for (slot, &r) in acc.iter_mut().zip(row) {
                    let term = r.checked_mul(mult).ok_or(Error::Overflow)?;
                    *slot = slot.checked_add(term).ok_or(Error::Overflow)?;
                }
            }
            CyclotomicValue::from_coeffs(n, acc)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Spectrum::from_eigenvalues(n, eigenvalues))
}

/// Equal eigenvalue multisets. Graphs of different orders are never
/// isospectral.
pub fn isospectral(g1: &CirculantGraph, g2: &CirculantGraph) -> Result<bool> {
    if g1.modulus() != g2.modulus() {
        return Ok(false);
    }
    Ok(spectrum(g1)?.canonical_key == spectrum(g2)?.canonical_key)
}

pub fn has_repeated_eigenvalues(g: &CirculantGraph) -> Result<bool> {
    let s = spectrum(g)?;
    Ok(s.sorted_values().windows(2).any(|w| w[0] == w[1]))
}

/// Largest distance between each exact eigenvalue evaluated at
/// `ω = e^{2πi/n}` and the direct sum `Σ_s e^{2πi·xs/n}`.
pub fn numeric_spectrum_deviation<F: Real>(g: &CirculantGraph) -> Result<F> {
    let n = g.modulus();
    let exact = spectrum(g)?;
    let nf = F::from(n).unwrap();
    let mut worst = F::zero();
    for x in 0..n {
        let (re, im) = exact.eigenvalue(x).evaluate::<F>();
        let (mut dre, mut dim) = (F::zero(), F::zero());
        for &(s, mult) in g.connections().counts() {
            let angle = F::TAU() * F::from(x * s % n).unwrap() / nf;
            let mult = F::from(mult).unwrap();
            dre = dre + mult * angle.cos();
            dim = dim + mult * angle.sin();
        }
        worst = worst.max((re - dre).hypot(im - dim));
    }
    Ok(worst)
}

/// Whether the exact spectrum agrees with floating-point evaluation to within
/// `tolerance`. Validation only.
pub fn numeric_spectrum_crosscheck(g: &CirculantGraph, tolerance: f64) -> Result<bool> {
    if !(tolerance > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tolerance}")));
    }
    Ok(numeric_spectrum_deviation::<f64>(g)? < tolerance)
}
