//! The ring `B_k = F_q[v_1..v_k]/(v_i^2 - v_i, v_i v_j - v_j v_i)`.
//!
//! Subsets of `{1..k}` are indexed by bitmask: bit `j-1` is set when `j` is in
//! the subset, so subset 0 is the empty set and subset `2^k - 1` is everything.
//! An element `a = sum_S alpha_S v_S` is stored by its coefficients in that
//! order together with its Gray image `phi(a)`, whose coordinate `m` is
//! `sum_{S subset of m} alpha_S`, i.e. the evaluation of `a` at `v_j = [j in m]`.
//! Coordinate `m` of the Gray image is the CRT residue modulo the maximal ideal
//! `<w_1..w_k>` with `w_j = v_j` when bit `j-1` of `m` is clear and
//! `w_j = 1 - v_j` when it is set. Ring products are computed coordinatewise
//! on Gray images.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::subset;

/// Largest supported number of idempotent generators.
pub const MAX_K: usize = 6;

/// Rings with at most this many elements cache element lookup tables.
pub const TABLE_LIMIT: u128 = 1 << 16;

pub(crate) struct RingTables {
    /// Wire rank of the element with a given Gray index.
    pub gray_to_wire: Vec<u32>,
}

struct RingInner {
    field: Field,
    k: usize,
    tables: OnceLock<Option<RingTables>>,
}

/// `B_k` over a fixed field. Cheap to clone.
#[derive(Clone)]
pub struct Ring {
    inner: Arc<RingInner>,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ring").field("field", &self.inner.field).field("k", &self.inner.k).finish()
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.inner.k == other.inner.k && self.inner.field == other.inner.field
    }
}

impl Eq for Ring {}

/// An element of `B_k`. Equality and hashing use the coefficients only.
#[derive(Clone)]
pub struct RingElement {
    coeffs: Vec<FieldElement>,
    gray: Vec<FieldElement>,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for RingElement {}

impl Hash for RingElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingElement").field("coeffs", &self.coeffs).field("gray", &self.gray).finish()
    }
}

impl RingElement {
    /// Coefficient `alpha_S` for each subset in bitmask order.
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// The Gray image `phi(a)`.
    pub fn gray(&self) -> &[FieldElement] {
        &self.gray
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// `gamma(alpha_S v_S)`: `-1` when the coefficient is nonzero, `0` otherwise.
pub fn gamma_coeff(alpha: FieldElement) -> i8 {
    if alpha.is_zero() {
        0
    } else {
        -1
    }
}

impl Ring {
    pub fn new(field: Field, k: usize) -> Result<Ring> {
        if k > MAX_K {
            return Err(Error::TooLargeToEnumerate {
                what: "idempotent generators".into(),
                size: k as u128,
                cap: MAX_K as u128,
            });
        }
        Ok(Ring { inner: Arc::new(RingInner { field, k, tables: OnceLock::new() }) })
    }

    /// Convenience constructor from field parameters.
    pub fn with_params(p: u64, r: usize, irr: Option<&[u32]>, k: usize) -> Result<Ring> {
        Ring::new(Field::new(p, r, irr)?, k)
    }

    pub fn field(&self) -> &Field {
        &self.inner.field
    }

    pub fn k(&self) -> usize {
        self.inner.k
    }

    /// Number of subsets / Gray coordinates, `2^k`.
    pub fn dim(&self) -> usize {
        1 << self.inner.k
    }

    /// `|B_k| = q^(2^k)`, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        (self.field().order() as u128).checked_pow(self.dim() as u32).unwrap_or(u128::MAX)
    }

    /// The same field with `k` replaced.
    pub fn with_k(&self, k: usize) -> Result<Ring> {
        Ring::new(self.inner.field.clone(), k)
    }

    pub(crate) fn tables(&self) -> Option<&RingTables> {
        self.inner
            .tables
            .get_or_init(|| {
                if self.order() > TABLE_LIMIT {
                    return None;
                }
                let n = self.order() as usize;
                let mut gray_to_wire = vec![0u32; n];
                for gi in 0..n as u64 {
                    let a = self.from_gray_index(gi);
                    gray_to_wire[gi as usize] = self.wire_rank(&a) as u32;
                }
                Some(RingTables { gray_to_wire })
            })
            .as_ref()
    }

    pub fn zero(&self) -> RingElement {
        let z = vec![FieldElement::ZERO; self.dim()];
        RingElement { coeffs: z.clone(), gray: z }
    }

    pub fn one(&self) -> RingElement {
        self.scalar(self.field().one())
    }

    /// Embeds a field element as a constant.
    pub fn scalar(&self, c: FieldElement) -> RingElement {
        let mut coeffs = vec![FieldElement::ZERO; self.dim()];
        coeffs[0] = c;
        RingElement { coeffs, gray: vec![c; self.dim()] }
    }

    /// The monomial `v_S` for the subset with bitmask `mask`.
    pub fn monomial(&self, mask: usize) -> RingElement {
        assert!(mask < self.dim());
        let mut coeffs = vec![FieldElement::ZERO; self.dim()];
        coeffs[mask] = self.field().one();
        self.from_coeffs_unchecked(coeffs)
    }

    /// The generator `v_i`, `1 <= i <= k`.
    pub fn v(&self, i: usize) -> RingElement {
        assert!(i >= 1 && i <= self.k(), "v_{i} out of range");
        self.monomial(1 << (i - 1))
    }

    pub fn from_coeffs(&self, coeffs: Vec<FieldElement>) -> Result<RingElement> {
        if coeffs.len() != self.dim() {
            return Err(Error::ShapeMismatch { expected: self.dim(), got: coeffs.len() });
        }
        Ok(self.from_coeffs_unchecked(coeffs))
    }

    fn from_coeffs_unchecked(&self, coeffs: Vec<FieldElement>) -> RingElement {
        let mut gray = coeffs.clone();
        subset::zeta(self.field(), &mut gray);
        RingElement { coeffs, gray }
    }

    /// `phi^{-1}`: the unique element with the given Gray image.
    pub fn gray_phi_inv(&self, gray: &[FieldElement]) -> Result<RingElement> {
        if gray.len() != self.dim() {
            return Err(Error::ShapeMismatch { expected: self.dim(), got: gray.len() });
        }
        Ok(self.from_gray_unchecked(gray.to_vec()))
    }

    pub(crate) fn from_gray_unchecked(&self, gray: Vec<FieldElement>) -> RingElement {
        let mut coeffs = gray.clone();
        subset::moebius(self.field(), &mut coeffs);
        RingElement { coeffs, gray }
    }

    /// The Gray image `phi(a)`.
    pub fn gray_phi(&self, a: &RingElement) -> Vec<FieldElement> {
        a.gray.clone()
    }

    /// The tower Gray map `Phi_k = phi_1 o ... o phi_k`, with
    /// `phi_j(alpha + beta v_j) = (alpha, alpha + beta)`. Output blocks are
    /// concatenated in the order the splits produce them.
    pub fn gray_big_phi(&self, a: &RingElement) -> Vec<FieldElement> {
        fn split(field: &Field, coeffs: &[FieldElement]) -> Vec<FieldElement> {
            if coeffs.len() == 1 {
                return coeffs.to_vec();
            }
            let half = coeffs.len() / 2;
            let (alpha, beta) = coeffs.split_at(half);
            let sum: Vec<_> = alpha.iter().zip(beta).map(|(&x, &y)| field.add(x, y)).collect();
            let mut out = split(field, alpha);
            out.extend(split(field, &sum));
            out
        }
        split(self.field(), &a.coeffs)
    }

    /// `Pi_{j,k} = phi_{k+1} o ... o phi_j` for `a` in this ring (`j = self.k()`):
    /// `2^(j-k)` elements of `B_k`. Component `c` is obtained by fixing
    /// `v_{k+1..j}` to the bits of `c`.
    pub fn pi_project(&self, a: &RingElement, k: usize) -> Result<(Ring, Vec<RingElement>)> {
        let j = self.k();
        if k >= j {
            return Err(Error::LevelOutOfRange { j, k });
        }
        let target = self.with_k(k)?;
        let block = 1usize << k;
        fn split(field: &Field, coeffs: &[FieldElement], block: usize, out: &mut Vec<Vec<FieldElement>>) {
            if coeffs.len() == block {
                out.push(coeffs.to_vec());
                return;
            }
            let half = coeffs.len() / 2;
            let (alpha, beta) = coeffs.split_at(half);
            let sum: Vec<_> = alpha.iter().zip(beta).map(|(&x, &y)| field.add(x, y)).collect();
            split(field, alpha, block, out);
            split(field, &sum, block, out);
        }
        let mut parts = Vec::with_capacity(1 << (j - k));
        split(self.field(), &a.coeffs, block, &mut parts);
        let elems = parts.into_iter().map(|c| target.from_coeffs_unchecked(c)).collect();
        Ok((target, elems))
    }

    /// Embeds an element of `B_k` (`k <= self.k()`) by keeping its coefficients.
    pub fn embed(&self, from: &Ring, a: &RingElement) -> Result<RingElement> {
        if from.k() > self.k() || from.field() != self.field() {
            return Err(Error::LevelOutOfRange { j: self.k(), k: from.k() });
        }
        let mut coeffs = vec![FieldElement::ZERO; self.dim()];
        coeffs[..from.dim()].copy_from_slice(&a.coeffs);
        Ok(self.from_coeffs_unchecked(coeffs))
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let f = self.field();
        RingElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| f.add(x, y)).collect(),
            gray: a.gray.iter().zip(&b.gray).map(|(&x, &y)| f.add(x, y)).collect(),
        }
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        let f = self.field();
        RingElement {
            coeffs: a.coeffs.iter().map(|&x| f.neg(x)).collect(),
            gray: a.gray.iter().map(|&x| f.neg(x)).collect(),
        }
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.add(a, &self.neg(b))
    }

    /// Product via coordinatewise multiplication of Gray images.
    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let f = self.field();
        let gray = a.gray.iter().zip(&b.gray).map(|(&x, &y)| f.mul(x, y)).collect();
        self.from_gray_unchecked(gray)
    }

    /// `c * a` for a field scalar `c`.
    pub fn scale(&self, c: FieldElement, a: &RingElement) -> RingElement {
        let f = self.field();
        RingElement {
            coeffs: a.coeffs.iter().map(|&x| f.mul(c, x)).collect(),
            gray: a.gray.iter().map(|&x| f.mul(c, x)).collect(),
        }
    }

    pub fn pow(&self, a: &RingElement, e: u64) -> RingElement {
        let f = self.field();
        let gray = a.gray.iter().map(|&x| f.pow(x, e)).collect();
        self.from_gray_unchecked(gray)
    }

    /// Product computed on coefficients with `v_S v_T = v_{S cup T}`; the
    /// reference route for [`Ring::mul`].
    pub fn mul_monomial(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let f = self.field();
        let mut coeffs = vec![FieldElement::ZERO; self.dim()];
        for (s, &x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (t, &y) in b.coeffs.iter().enumerate() {
                coeffs[s | t] = f.add(coeffs[s | t], f.mul(x, y));
            }
        }
        self.from_coeffs_unchecked(coeffs)
    }

    /// The automorphism fixing `F_q` with `v_i -> 1 - v_i` for every `i`; on
    /// Gray images it is the bitmask-complement permutation.
    pub fn conjugate(&self, a: &RingElement) -> RingElement {
        let full = self.dim() - 1;
        let gray = (0..self.dim()).map(|m| a.gray[m ^ full]).collect();
        self.from_gray_unchecked(gray)
    }

    pub fn is_unit(&self, a: &RingElement) -> bool {
        a.gray.iter().all(|g| !g.is_zero())
    }

    /// `|B_k^x| = (q - 1)^(2^k)`.
    pub fn unit_count(&self) -> u128 {
        ((self.field().order() - 1) as u128).pow(self.dim() as u32)
    }

    pub fn inv(&self, a: &RingElement) -> Result<RingElement> {
        let f = self.field();
        let gray = a.gray.iter().map(|&x| f.inv(x)).collect::<Result<Vec<_>>>()?;
        Ok(self.from_gray_unchecked(gray))
    }

    /// `Theta(a) = (Theta_1(a), ..., Theta_{2^k}(a))`, the residues modulo
    /// the maximal ideals in [`crate::ideal::maximal_ideals`] order.
    pub fn theta_decompose(&self, a: &RingElement) -> Vec<FieldElement> {
        a.gray.clone()
    }

    /// `Theta^{-1}`.
    pub fn theta_combine(&self, residues: &[FieldElement]) -> Result<RingElement> {
        self.gray_phi_inv(residues)
    }

    /// Bitmask of the Gray coordinates where `a` is nonzero.
    pub fn support_mask(&self, a: &RingElement) -> u64 {
        a.gray.iter().enumerate().filter(|(_, g)| !g.is_zero()).fold(0, |acc, (m, _)| acc | 1 << m)
    }

    /// The idempotent whose Gray image is the indicator of `mask`.
    pub fn idempotent(&self, mask: u64) -> RingElement {
        let f = self.field();
        let gray = (0..self.dim()).map(|m| if mask >> m & 1 == 1 { f.one() } else { f.zero() }).collect();
        self.from_gray_unchecked(gray)
    }

    /// `wtgr(a) = sum of base weights over the Gray image`.
    pub fn lee_weight(&self, a: &RingElement) -> u32 {
        a.gray.iter().map(|&g| self.field().base_weight(g)).sum()
    }

    /// Wire encoding: per subset, the residue array of `alpha_S`.
    pub fn encode(&self, a: &RingElement) -> Vec<Vec<u32>> {
        a.coeffs.iter().map(|&c| self.field().coeffs(c)).collect()
    }

    pub fn decode(&self, wire: &[Vec<u32>]) -> Result<RingElement> {
        if wire.len() != self.dim() {
            return Err(Error::ShapeMismatch { expected: self.dim(), got: wire.len() });
        }
        let coeffs = wire.iter().map(|c| self.field().element(c)).collect::<Result<Vec<_>>>()?;
        Ok(self.from_coeffs_unchecked(coeffs))
    }

    /// Rank of `a` in the lexicographic order of its flattened wire encoding.
    pub fn wire_rank(&self, a: &RingElement) -> u128 {
        let q = self.field().order() as u128;
        a.coeffs.iter().fold(0u128, |acc, &c| acc * q + self.field().wire_rank(c) as u128)
    }

    pub fn from_wire_rank(&self, mut rank: u128) -> RingElement {
        let q = self.field().order() as u128;
        let mut coeffs = vec![FieldElement::ZERO; self.dim()];
        for slot in coeffs.iter_mut().rev() {
            *slot = self.field().from_wire_rank((rank % q) as u32);
            rank /= q;
        }
        self.from_coeffs_unchecked(coeffs)
    }

    pub fn wire_cmp(&self, a: &RingElement, b: &RingElement) -> Ordering {
        self.wire_rank(a).cmp(&self.wire_rank(b))
    }

    /// `sum_m gray[m] q^m` with packed field values; a dense index for tables.
    pub fn gray_index(&self, a: &RingElement) -> u64 {
        let q = self.field().order() as u64;
        a.gray.iter().rev().fold(0u64, |acc, g| acc * q + g.raw() as u64)
    }

    pub fn from_gray_index(&self, mut gi: u64) -> RingElement {
        let q = self.field().order() as u64;
        let gray = (0..self.dim())
            .map(|_| {
                let g = self.field().from_raw((gi % q) as u32);
                gi /= q;
                g
            })
            .collect();
        self.from_gray_unchecked(gray)
    }

    /// All elements in wire order. Fails above `cap` elements.
    pub fn elements(&self, cap: u128) -> Result<Vec<RingElement>> {
        let n = self.order();
        if n > cap {
            return Err(Error::TooLargeToEnumerate { what: "ring elements".into(), size: n, cap });
        }
        Ok((0..n).map(|w| self.from_wire_rank(w)).collect())
    }
}
