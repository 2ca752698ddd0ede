//! Lee-type weights, weight enumerators, character matrices and exact
//! MacWilliams transforms.
//!
//! Complete enumerators use one variable per ring element, indexed by wire
//! rank. Symmetrized enumerators use one variable per unit class, in the
//! order of [`unit_classes`]. Hamming and Lee enumerators are homogeneous in
//! two variables `(x, y)` with `y` counting weight.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::code::Code;
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{hamming_weight, Matrix};
use crate::ring::{Ring, RingElement};

/// Default cap on character matrix rows.
pub const MATRIX_CAP: usize = 1 << 12;

/// Cap on the entries of the MacWilliams substitution tensor.
pub const TENSOR_CAP: u128 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnumeratorKind {
    Complete,
    Symmetrized,
    Hamming,
    Lee,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CharKind {
    T,
    TH,
    S,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEnumerator {
    pub kind: EnumeratorKind,
    pub num_vars: usize,
    /// Characteristic `p` of the coefficient ring `Z[xi]`.
    pub p: u32,
    /// Dense exponent vector to coefficient; zero coefficients are absent.
    pub terms: BTreeMap<Vec<u32>, CycInt>,
}

impl WeightEnumerator {
    pub fn new(kind: EnumeratorKind, num_vars: usize, p: u32) -> WeightEnumerator {
        WeightEnumerator { kind, num_vars, p, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: &CycInt) {
        debug_assert_eq!(exps.len(), self.num_vars);
        let entry = self.terms.entry(exps).or_insert_with(|| CycInt::zero(self.p));
        *entry = entry.add(c);
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn add_count(&mut self, exps: Vec<u32>) {
        let one = CycInt::from_int(self.p, 1);
        self.add_term(exps, &one);
    }

    /// Total degree (the code length for code enumerators).
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|e| e.iter().sum())
    }

    /// Value at all variables equal to 1.
    pub fn total(&self) -> CycInt {
        self.terms.values().fold(CycInt::zero(self.p), |acc, c| acc.add(c))
    }

    /// Merges variables: variable `i` becomes `map[i]`.
    pub fn fold(&self, kind: EnumeratorKind, num_vars: usize, map: &[usize]) -> WeightEnumerator {
        let mut out = WeightEnumerator::new(kind, num_vars, self.p);
        for (exps, c) in &self.terms {
            let mut e = vec![0u32; num_vars];
            for (i, &x) in exps.iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(e, c);
        }
        out
    }

    /// `(exponents, coefficients)` pairs in key order.
    pub fn to_pairs(&self) -> Vec<(Vec<u32>, Vec<i128>)> {
        self.terms.iter().map(|(e, c)| (e.clone(), c.coeffs().to_vec())).collect()
    }
}

/// `wtgr(x)`: base weights summed over the Gray images of all positions.
pub fn lee_weight(ring: &Ring, x: &[RingElement]) -> u32 {
    x.iter().map(|a| ring.lee_weight(a)).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitClasses {
    /// Representatives in increasing wire order.
    pub reps: Vec<RingElement>,
    pub sizes: Vec<u128>,
    /// Class index for each element, by wire rank.
    pub class_of: Vec<usize>,
}

/// Orbits of `B_k` under multiplication by units. Two elements are in the same
/// orbit exactly when their Gray supports agree, so an orbit of support `s`
/// has `(q-1)^|s|` elements; the representative is its least wire rank.
pub fn unit_classes(ring: &Ring, cap: u128) -> Result<UnitClasses> {
    let els = ring.elements(cap)?;
    let mut rep_of_mask: BTreeMap<u64, usize> = BTreeMap::new();
    for (w, a) in els.iter().enumerate() {
        rep_of_mask.entry(ring.support_mask(a)).or_insert(w);
    }
    let mut reps: Vec<(usize, u64)> = rep_of_mask.iter().map(|(&m, &w)| (w, m)).collect();
    reps.sort();
    let index_of_mask: BTreeMap<u64, usize> = reps.iter().enumerate().map(|(i, &(_, m))| (m, i)).collect();
    let q1 = ring.field().order() as u128 - 1;
    Ok(UnitClasses {
        sizes: reps.iter().map(|&(_, m)| q1.pow(m.count_ones())).collect(),
        reps: reps.iter().map(|&(w, _)| els[w].clone()).collect(),
        class_of: els.iter().map(|a| index_of_mask[&ring.support_mask(a)]).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharMatrix {
    pub kind: CharKind,
    pub p: u32,
    pub entries: Vec<Vec<CycInt>>,
}

/// `T[a][b] = xi^(wtgr(ab) mod p)`, `TH[a][b] = xi^(wtgr(a conj(b)) mod p)`,
/// indexed by wire rank, and `S[a][b] = sum over c ~ b of T[a][c]`, indexed by
/// unit classes. Rows of `S` are checked to be constant on unit classes.
pub fn char_matrix(ring: &Ring, kind: CharKind, cap: usize) -> Result<CharMatrix> {
    let size = ring.order();
    if size > cap as u128 {
        return Err(Error::MatrixTooLarge { rows: size, cap: cap as u128 });
    }
    let p = ring.field().p();
    let els = ring.elements(size)?;
    let t_entry = |a: &RingElement, b: &RingElement, herm: bool| {
        let b = if herm { ring.conjugate(b) } else { b.clone() };
        CycInt::xi_pow(p, ring.lee_weight(&ring.mul(a, &b)) as u64)
    };
    let entries = match kind {
        CharKind::T | CharKind::TH => {
            els.iter().map(|a| els.iter().map(|b| t_entry(a, b, kind == CharKind::TH)).collect()).collect()
        }
        CharKind::S => {
            let classes = unit_classes(ring, size)?;
            let t_row = |a: &RingElement| {
                let mut row = vec![CycInt::zero(p); classes.reps.len()];
                for (w, b) in els.iter().enumerate() {
                    let slot = &mut row[classes.class_of[w]];
                    *slot = slot.add(&t_entry(a, b, false));
                }
                row
            };
            let rows: Vec<Vec<CycInt>> = classes.reps.iter().map(t_row).collect();
            for (w, a) in els.iter().enumerate() {
                if t_row(a) != rows[classes.class_of[w]] {
                    return Err(Error::InvariantViolation(format!(
                        "S rows differ within the unit class of element {w}"
                    )));
                }
            }
            rows
        }
    };
    Ok(CharMatrix { kind, p, entries })
}

fn count_key(num_vars: usize, idx: impl Iterator<Item = usize>) -> Vec<u32> {
    let mut e = vec![0u32; num_vars];
    for i in idx {
        e[i] += 1;
    }
    e
}

/// Complete weight enumerator.
pub fn cwe(code: &Code, cap: u128) -> Result<WeightEnumerator> {
    let ring = code.ring();
    let a = ring.order();
    if a > u32::MAX as u128 {
        return Err(Error::TooLargeToEnumerate { what: "enumerator variables".into(), size: a, cap: u32::MAX as u128 });
    }
    let mut counts: BTreeMap<Vec<u32>, i128> = BTreeMap::new();
    let tables = ring.tables();
    code.for_each_codeword(cap, |w| {
        let key = count_key(
            a as usize,
            w.iter().map(|x| match tables {
                Some(t) => t.gray_to_wire[ring.gray_index(x) as usize] as usize,
                None => ring.wire_rank(x) as usize,
            }),
        );
        *counts.entry(key).or_insert(0) += 1;
    })?;
    let p = ring.field().p();
    let mut out = WeightEnumerator::new(EnumeratorKind::Complete, a as usize, p);
    out.terms = counts.into_iter().map(|(k, c)| (k, CycInt::from_int(p, c))).collect();
    Ok(out)
}

/// Symmetrized weight enumerator.
pub fn swe(code: &Code, cap: u128) -> Result<WeightEnumerator> {
    let classes = unit_classes(code.ring(), u32::MAX as u128)?;
    Ok(cwe_to_swe(&cwe(code, cap)?, &classes))
}

pub fn cwe_to_swe(w: &WeightEnumerator, classes: &UnitClasses) -> WeightEnumerator {
    w.fold(EnumeratorKind::Symmetrized, classes.reps.len(), &classes.class_of)
}

/// Hamming enumerator `sum x^(n - wt) y^wt`.
pub fn hamming_we(code: &Code, cap: u128) -> Result<WeightEnumerator> {
    let n = code.n() as u32;
    let p = code.ring().field().p();
    let mut out = WeightEnumerator::new(EnumeratorKind::Hamming, 2, p);
    code.for_each_codeword(cap, |w| {
        let wt = w.iter().filter(|x| !x.is_zero()).count() as u32;
        out.add_count(vec![n - wt, wt]);
    })?;
    Ok(out)
}

/// Lee enumerator `sum x^(N - wtgr) y^wtgr` with `N = r (p-1) 2^k n`.
pub fn lee_we(code: &Code, cap: u128) -> Result<WeightEnumerator> {
    let ring = code.ring();
    let f = ring.field();
    let big_n = (f.r() as u32) * (f.p() - 1) * ring.dim() as u32 * code.n() as u32;
    let mut out = WeightEnumerator::new(EnumeratorKind::Lee, 2, f.p());
    code.for_each_codeword(cap, |w| {
        let wt = lee_weight(ring, w);
        out.add_count(vec![big_n - wt, wt]);
    })?;
    Ok(out)
}

/// Hamming enumerator of the row space of `m` over `field`.
pub fn field_hamming_we(field: &Field, m: &Matrix, cap: u128) -> Result<WeightEnumerator> {
    let n = m.cols() as u32;
    let mut out = WeightEnumerator::new(EnumeratorKind::Hamming, 2, field.p());
    for v in m.rref(field).span(field, cap)? {
        let wt = hamming_weight(&v) as u32;
        out.add_count(vec![n - wt, wt]);
    }
    Ok(out)
}

/// `W(M X) / size`: substitutes `X_a <- sum_b M[a][b] X_b` and divides by
/// `size`. Every coefficient must come out a non-negative rational integer.
///
/// Each monomial's coefficient is placed on one ordered tuple of variable
/// indices; the substitution is then applied along each of the `n` tensor
/// axes and the result is collected by composition.
pub fn macwilliams(w: &WeightEnumerator, m: &CharMatrix, size: u128) -> Result<WeightEnumerator> {
    let (out_kind, ok) = match (w.kind, m.kind) {
        (EnumeratorKind::Complete, CharKind::T | CharKind::TH) => (EnumeratorKind::Complete, true),
        (EnumeratorKind::Symmetrized, CharKind::S) => (EnumeratorKind::Symmetrized, true),
        _ => (w.kind, false),
    };
    if !ok || m.entries.len() != w.num_vars || w.p != m.p {
        return Err(Error::KindMismatch { enumerator: format!("{:?}", w.kind), matrix: format!("{:?}", m.kind) });
    }
    let a = w.num_vars;
    let p = w.p as usize;
    let Some(n) = w.degree() else {
        return Ok(WeightEnumerator::new(out_kind, a, w.p));
    };
    let n = n as usize;
    let cells = (a as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if cells.saturating_mul(p as u128) > TENSOR_CAP {
        return Err(Error::TooLargeToEnumerate {
            what: "MacWilliams tensor".into(),
            size: cells.saturating_mul(p as u128),
            cap: TENSOR_CAP,
        });
    }
    let cells = cells as usize;
    // Sparse xi-power terms of each matrix entry.
    let mat: Vec<Vec<Vec<(usize, i128)>>> = m
        .entries
        .iter()
        .map(|row| {
            row.iter().map(|e| e.to_unreduced().into_iter().enumerate().filter(|(_, c)| *c != 0).collect()).collect()
        })
        .collect();
    let mut t = vec![0i128; cells * p];
    for (exps, c) in &w.terms {
        let idx = exps
            .iter()
            .enumerate()
            .flat_map(|(var, &e)| std::iter::repeat_n(var, e as usize))
            .rev()
            .fold(0usize, |acc, var| acc * a + var);
        for (j, x) in c.to_unreduced().into_iter().enumerate() {
            t[idx * p + j] += x;
        }
    }
    let mut stride = 1usize;
    for _ in 0..n {
        let mut next = vec![0i128; cells * p];
        let block = stride * a;
        for base in (0..cells).step_by(block) {
            for lo in 0..stride {
                for alpha in 0..a {
                    let src = (base + alpha * stride + lo) * p;
                    let entry = &t[src..src + p];
                    if entry.iter().all(|&x| x == 0) {
                        continue;
                    }
                    for (beta, terms) in mat[alpha].iter().enumerate() {
                        let dst = (base + beta * stride + lo) * p;
                        for &(e, c) in terms {
                            for (j, &x) in entry.iter().enumerate() {
                                if x != 0 {
                                    next[dst + (j + e) % p] += x * c;
                                }
                            }
                        }
                    }
                }
            }
        }
        t = next;
        stride = block;
    }
    let mut sums: BTreeMap<Vec<u32>, Vec<i128>> = BTreeMap::new();
    for idx in 0..cells {
        let entry = &t[idx * p..idx * p + p];
        if entry.iter().all(|&x| x == 0) {
            continue;
        }
        let mut rest = idx;
        let key = count_key(
            a,
            (0..n).map(|_| {
                let v = rest % a;
                rest /= a;
                v
            }),
        );
        let slot = sums.entry(key).or_insert_with(|| vec![0; p]);
        for (s, &x) in slot.iter_mut().zip(entry) {
            *s += x;
        }
    }
    let mut out = WeightEnumerator::new(out_kind, a, w.p);
    for (key, full) in sums {
        let c = CycInt::from_unreduced(&full);
        if c.is_zero() {
            continue;
        }
        let q = c
            .div_exact(size as i128)
            .filter(|q| q.as_integer().is_some_and(|v| v >= 0))
            .ok_or_else(|| Error::NonIntegralResult(format!("coefficient {c:?} of {key:?} over {size}")))?;
        out.terms.insert(key, q);
    }
    Ok(out)
}

/// Hamming MacWilliams: `W(x + (Q-1) y, x - y) / size`.
pub fn hamming_macwilliams(w: &WeightEnumerator, alphabet: u128, size: u128) -> Result<WeightEnumerator> {
    if w.kind != EnumeratorKind::Hamming || w.num_vars != 2 {
        return Err(Error::KindMismatch { enumerator: format!("{:?}", w.kind), matrix: "hamming".into() });
    }
    let n = w.degree().unwrap_or(0) as usize;
    let binom = |n: usize, k: usize| -> i128 { (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128) };
    let qm1 = alphabet as i128 - 1;
    let mut acc = vec![0i128; n + 1];
    for (exps, c) in &w.terms {
        let c = c.as_integer().ok_or_else(|| Error::NonIntegralResult("Hamming coefficient".into()))?;
        let (zeros, wt) = (exps[0] as usize, exps[1] as usize);
        // (x + (Q-1) y)^zeros (x - y)^wt
        for i in 0..=zeros {
            let a = binom(zeros, i) * qm1.pow(i as u32);
            for j in 0..=wt {
                let b = binom(wt, j) * if j % 2 == 0 { 1 } else { -1 };
                acc[i + j] += c * a * b;
            }
        }
    }
    let mut out = WeightEnumerator::new(EnumeratorKind::Hamming, 2, w.p);
    for (y, v) in acc.into_iter().enumerate() {
        if v == 0 {
            continue;
        }
        if v % size as i128 != 0 || v < 0 {
            return Err(Error::NonIntegralResult(format!("Hamming coefficient {v} over {size}")));
        }
        out.terms.insert(vec![(n - y) as u32, y as u32], CycInt::from_int(w.p, v / size as i128));
    }
    Ok(out)
}
