//! Additive and multiplicative characters of F_q with values in C.
//!
//! The additive character is `psi(x) = exp(2 pi i Tr(x) / p)`; multiplicative
//! characters are indexed by an exponent `m` with `chi(g^j) = exp(2 pi i m j / (q-1))`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::field::{FieldElement, FieldSpec};

/// `exp(2 pi i j / n)` for `j` in `0..n`, each evaluated directly.
pub fn roots_of_unity(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64))
        .collect()
}

#[derive(Clone, Debug)]
pub struct AdditiveCharacter {
    field: Arc<FieldSpec>,
    root_table: Vec<Complex64>,
}

impl AdditiveCharacter {
    pub fn new(field: Arc<FieldSpec>) -> Self {
        let root_table = roots_of_unity(field.p as usize);
        AdditiveCharacter { field, root_table }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn eval(&self, x: FieldElement) -> Complex64 {
        self.root_table[self.field.trace(x) as usize]
    }

    /// Values `psi(c * g^j)` for `j` in `0..q-1`.
    pub fn table_scaled(&self, c: FieldElement) -> Vec<Complex64> {
        let m = self.field.order();
        let traces = self.field.trace_table();
        let shift = c.log as usize;
        (0..m)
            .map(|j| self.root_table[traces[(j + shift) % m] as usize])
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct MultiplicativeCharacter {
    field: Arc<FieldSpec>,
    exponent: u64,
}

impl MultiplicativeCharacter {
    pub fn new(field: Arc<FieldSpec>, exponent: u64) -> Self {
        let exponent = exponent % field.order() as u64;
        MultiplicativeCharacter { field, exponent }
    }

    pub fn trivial(field: Arc<FieldSpec>) -> Self {
        Self::new(field, 0)
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_trivial(&self) -> bool {
        self.exponent == 0
    }

    pub fn eval(&self, x: FieldElement) -> Complex64 {
        if x.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        let m = self.field.order() as u128;
        let j = (self.exponent as u128 * x.log as u128) % m;
        Complex64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64)
    }

    /// Values `chi(g^j)` for `j` in `0..q-1`.
    pub fn table(&self, roots: &[Complex64]) -> Vec<Complex64> {
        let m = self.field.order();
        debug_assert_eq!(roots.len(), m);
        (0..m)
            .map(|j| roots[((self.exponent as u128 * j as u128) % m as u128) as usize])
            .collect()
    }
}
