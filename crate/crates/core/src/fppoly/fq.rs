use std::fmt;
use std::sync::Arc;

use super::{is_irreducible, FpPoly};
use crate::error::{invalid, Result};

/// Element of F_q = F_p[Z]/(modulus).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqElement {
    modulus: Arc<FpPoly>,
    value: FpPoly,
}

impl FqElement {
    /// Reduces `value` modulo `modulus`. The modulus is trusted here; use
    /// [`fq_enumerate_units`] or [`FqElement::checked_modulus`] to validate it.
    pub fn new(modulus: Arc<FpPoly>, value: FpPoly) -> Self {
        let value = value.rem(&modulus).expect("nonzero modulus");
        FqElement { modulus, value }
    }

    pub fn checked_modulus(modulus: &FpPoly) -> Result<Arc<FpPoly>> {
        if !modulus.is_monic() || modulus.degree().unwrap_or(0) == 0 {
            return invalid(format!("modulus {modulus} must be monic of positive degree"));
        }
        if !is_irreducible(modulus)? {
            return invalid(format!("modulus {modulus} is reducible"));
        }
        Ok(Arc::new(modulus.clone()))
    }

    pub fn zero(modulus: &Arc<FpPoly>) -> Self {
        Self::new(modulus.clone(), FpPoly::zero(modulus.p()))
    }

    pub fn one(modulus: &Arc<FpPoly>) -> Self {
        Self::new(modulus.clone(), FpPoly::one(modulus.p()))
    }

    pub fn from_u64(modulus: &Arc<FpPoly>, c: u64) -> Self {
        Self::new(modulus.clone(), FpPoly::constant(modulus.p(), c))
    }

    pub fn value(&self) -> &FpPoly {
        &self.value
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    pub fn p(&self) -> u64 {
        self.modulus.p()
    }

    /// Field size `p^e`.
    pub fn q(&self) -> u64 {
        self.p().pow(self.modulus.degree().unwrap_or(0) as u32)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.modulus.clone(), &self.value + &o.value)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.modulus.clone(), &self.value - &o.value)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.modulus.clone(), -&self.value)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.modulus.clone(), &self.value * &o.value)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(self.pow(self.q() - 2))
    }
}

impl fmt::Display for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.value.display_with("Z"))
    }
}

impl fmt::Debug for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in F_{}", self, self.q())
    }
}

/// The `q - 1` nonzero residues in enumeration order.
pub fn fq_enumerate_units(p: u64, modulus: &FpPoly) -> Result<Vec<FqElement>> {
    if modulus.p() != p {
        return invalid(format!("modulus lives over F_{}, not F_{p}", modulus.p()));
    }
    let m = FqElement::checked_modulus(modulus)?;
    let q = p.pow(modulus.degree().unwrap() as u32);
    Ok((1..q).map(|v| FqElement::new(m.clone(), FpPoly::from_index(p, v))).collect())
}
