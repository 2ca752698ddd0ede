//! Exact arithmetic in `Z[xi]`, `xi = exp(2 pi i / p)`, over the basis
//! `1, xi, ..., xi^(p-2)` (reduced with `1 + xi + ... + xi^(p-1) = 0`).

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycInt {
    /// Coefficients of `xi^0 .. xi^(p-2)`.
    c: Vec<i128>,
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.c)
    }
}

impl CycInt {
    pub fn zero(p: u32) -> CycInt {
        CycInt { c: vec![0; p as usize - 1] }
    }

    pub fn from_int(p: u32, v: i128) -> CycInt {
        let mut z = CycInt::zero(p);
        z.c[0] = v;
        z
    }

    /// `xi^e`.
    pub fn xi_pow(p: u32, e: u64) -> CycInt {
        let mut full = vec![0i128; p as usize];
        full[(e % p as u64) as usize] = 1;
        CycInt::from_unreduced(&full)
    }

    /// Reduces a coefficient vector over `xi^0 .. xi^(p-1)`.
    pub fn from_unreduced(full: &[i128]) -> CycInt {
        let p = full.len();
        let top = full[p - 1];
        CycInt { c: full[..p - 1].iter().map(|&x| x - top).collect() }
    }

    /// Coefficients over `xi^0 .. xi^(p-1)` with the last one zero.
    pub fn to_unreduced(&self) -> Vec<i128> {
        let mut v = self.c.clone();
        v.push(0);
        v
    }

    pub fn p(&self) -> u32 {
        self.c.len() as u32 + 1
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    /// The value when it is a rational integer.
    pub fn as_integer(&self) -> Option<i128> {
        self.c[1..].iter().all(|&x| x == 0).then_some(self.c[0])
    }

    pub fn add(&self, o: &CycInt) -> CycInt {
        CycInt { c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &CycInt) -> CycInt {
        CycInt { c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> CycInt {
        CycInt { c: self.c.iter().map(|a| -a).collect() }
    }

    pub fn mul(&self, o: &CycInt) -> CycInt {
        let p = self.p() as usize;
        let mut full = vec![0i128; p];
        for (i, &a) in self.c.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (j, &b) in o.c.iter().enumerate() {
                full[(i + j) % p] += a * b;
            }
        }
        CycInt::from_unreduced(&full)
    }

    pub fn scale(&self, k: i128) -> CycInt {
        CycInt { c: self.c.iter().map(|a| a * k).collect() }
    }

    /// Exact division by a rational integer, if every coefficient divides.
    pub fn div_exact(&self, d: i128) -> Option<CycInt> {
        self.c.iter().all(|a| a % d == 0).then(|| CycInt { c: self.c.iter().map(|a| a / d).collect() })
    }
}
