//! Reference blade multiplier.
//!
//! Works on explicit generator lists rather than bitmasks: concatenate the
//! two index lists, bubble-sort them counting swaps, then cancel adjacent
//! equal pairs (each `e_j e_j = +1`). Slow and obvious, which is the point;
//! it shares no code with [`crate::multivector`]'s product.

use alloc::vec::Vec;

use crate::multivector::{BladeIndex, Multivector};
use crate::Result;

/// Product of two blades given as ascending generator lists.
/// Returns the sign and the canonical generator list of the result.
pub fn blade_product(a: &[u8], b: &[u8]) -> (i32, Vec<u8>) {
    let mut list: Vec<u8> = a.iter().chain(b).copied().collect();
    let mut sign = 1i32;
    // bubble sort
    let n = list.len();
    for pass in 0..n {
        for k in 0..n.saturating_sub(pass + 1) {
            if list[k] > list[k + 1] {
                list.swap(k, k + 1);
                sign = -sign;
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    let mut k = 0;
    while k < list.len() {
        if k + 1 < list.len() && list[k] == list[k + 1] {
            k += 2;
        } else {
            out.push(list[k]);
            k += 1;
        }
    }
    (sign, out)
}

fn generators_of(index: usize) -> Vec<u8> {
    (0..16u8).filter(|b| index & (1 << b) != 0).map(|b| b + 1).collect()
}

/// Multiplication table of all blade pairs of `Cl(dim,0)`, built with
/// [`blade_product`]. Entry `i * 2^dim + j` holds `(sign, result index)`.
pub struct NaiveTable {
    dim: u8,
    entries: Vec<(i8, u16)>,
}

impl NaiveTable {
    pub fn new(dim: u8) -> Self {
        let size = 1usize << dim;
        let lists: Vec<Vec<u8>> = (0..size).map(generators_of).collect();
        let mut entries = Vec::with_capacity(size * size);
        for a in &lists {
            for b in &lists {
                let (sign, gens) = blade_product(a, b);
                entries.push((sign as i8, BladeIndex::from_generators(&gens).mask()));
            }
        }
        NaiveTable { dim, entries }
    }

    pub fn product(&self, x: &Multivector, y: &Multivector) -> Result<Multivector> {
        let size = 1usize << self.dim;
        let zero = Multivector::zero(self.dim)?;
        zero.try_add(x)?;
        zero.try_add(y)?;
        let mut out = alloc::vec![0.0; size];
        for (i, &cx) in x.coeffs().iter().enumerate() {
            for (j, &cy) in y.coeffs().iter().enumerate() {
                let (sign, idx) = self.entries[i * size + j];
                out[idx as usize] += f64::from(sign) * cx * cy;
            }
        }
        Multivector::from_coeffs(self.dim, out)
    }
}

/// Full geometric product via [`blade_product`] on every coefficient pair.
pub fn naive_product(x: &Multivector, y: &Multivector) -> Result<Multivector> {
    let zero = x.try_sub(x)?;
    zero.try_add(y)?; // dimension check
    let mut out: Vec<f64> = zero.coeffs().to_vec();
    for (i, &cx) in x.coeffs().iter().enumerate() {
        for (j, &cy) in y.coeffs().iter().enumerate() {
            if cx == 0.0 || cy == 0.0 {
                continue;
            }
            let (sign, gens) = blade_product(&generators_of(i), &generators_of(j));
            let idx = BladeIndex::from_generators(&gens).mask() as usize;
            out[idx] += f64::from(sign) * cx * cy;
        }
    }
    Multivector::from_coeffs(x.dim(), out)
}

/// Grade-`|r-s|` filtered product computed through [`blade_product`].
pub fn naive_contract(x: &Multivector, y: &Multivector) -> Result<Multivector> {
    let zero = x.try_sub(x)?;
    zero.try_add(y)?;
    let mut out: Vec<f64> = zero.coeffs().to_vec();
    for (i, &cx) in x.coeffs().iter().enumerate() {
        for (j, &cy) in y.coeffs().iter().enumerate() {
            if cx == 0.0 || cy == 0.0 {
                continue;
            }
            let (ga, gb) = (generators_of(i), generators_of(j));
            let (sign, gens) = blade_product(&ga, &gb);
            if gens.len() != ga.len().abs_diff(gb.len()) {
                continue;
            }
            let idx = BladeIndex::from_generators(&gens).mask() as usize;
            out[idx] += f64::from(sign) * cx * cy;
        }
    }
    Multivector::from_coeffs(x.dim(), out)
}
