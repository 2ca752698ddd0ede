//! Exact arithmetic in `F_{p^r}` over the polynomial basis `{1, x, ..., x^{r-1}}`.
//!
//! Elements are packed as `sum c_i p^i` where `c_i` is the coefficient of
//! `x^i`. The packing is an implementation detail; the external encoding is
//! the residue array returned by [`Field::coeffs`]. Fields of order at most
//! [`TABLE_LIMIT`] carry precomputed addition and multiplication tables.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order for which full operation tables are built.
pub const TABLE_LIMIT: u32 = 256;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 24;

/// An element of `F_{p^r}` in packed form. Only meaningful together with the
/// [`Field`] that produced it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);

    /// Packed value `sum c_i p^i`.
    pub fn raw(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F#{}", self.0)
    }
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

struct FieldInner {
    p: u32,
    r: usize,
    q: u32,
    irr: Vec<u32>,
    tables: Option<Tables>,
}

/// The field `F_{p^r} = Z_p[x]/(irr)`. Cheap to clone.
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.inner.p)
            .field("r", &self.inner.r)
            .field("irr", &self.inner.irr)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.irr == other.inner.irr
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Builds `F_{p^r}`. When `irr` is `None` the lexicographically smallest
    /// monic irreducible polynomial of degree `r` is used, comparing the
    /// coefficient arrays constant term first.
    pub fn new(p: u64, r: usize, irr: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r == 0 {
            return Err(Error::DegreeMismatch { expected: 1, got: irr.map(|s| s.to_vec()).unwrap_or_default() });
        }
        let q = (p as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
        if q > MAX_ORDER as u128 || p >= 1 << 16 {
            return Err(Error::FieldTooLarge { p, r });
        }
        let p = p as u32;
        let irr = match irr {
            Some(f) => {
                if f.len() != r + 1 {
                    return Err(Error::DegreeMismatch { expected: r, got: f.to_vec() });
                }
                if let Some(&c) = f.iter().find(|&&c| c >= p) {
                    return Err(Error::ResidueOutOfRange { value: c as u64, p: p as u64 });
                }
                if f[r] != 1 {
                    return Err(Error::NotMonic(f.to_vec()));
                }
                if !fp::is_irreducible(p, f) {
                    return Err(Error::ReduciblePolynomial(f.to_vec()));
                }
                f.to_vec()
            }
            None => fp::smallest_irreducible(p, r),
        };
        let mut inner = FieldInner { p, r, q: q as u32, irr, tables: None };
        if inner.q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(Field { inner: Arc::new(inner) })
    }

    /// The prime field `Z_p`.
    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1, None)
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn r(&self) -> usize {
        self.inner.r
    }

    /// Field order `q = p^r`.
    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// Defining polynomial, constant term first.
    pub fn irr(&self) -> &[u32] {
        &self.inner.irr
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// The class of `x`, i.e. the root of `irr` (equals `-irr[0]` when r = 1).
    pub fn generator(&self) -> FieldElement {
        if self.inner.r == 1 {
            let p = self.inner.p;
            FieldElement((p - self.inner.irr[0] % p) % p)
        } else {
            FieldElement(self.inner.p)
        }
    }

    /// Embeds an integer of the prime subfield.
    pub fn from_int(&self, c: i64) -> FieldElement {
        FieldElement(c.rem_euclid(self.inner.p as i64) as u32)
    }

    /// Builds an element from its `r` residues (basis-ascending).
    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.inner.r {
            return Err(Error::ShapeMismatch { expected: self.inner.r, got: coeffs.len() });
        }
        let p = self.inner.p;
        let mut v = 0u32;
        for &c in coeffs.iter().rev() {
            if c >= p {
                return Err(Error::ResidueOutOfRange { value: c as u64, p: p as u64 });
            }
            v = v * p + c;
        }
        Ok(FieldElement(v))
    }

    /// Element with the given packed value. Panics if out of range.
    pub fn from_raw(&self, raw: u32) -> FieldElement {
        assert!(raw < self.inner.q, "packed value {raw} out of range");
        FieldElement(raw)
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let p = self.inner.p;
        let mut v = a.0;
        (0..self.inner.r)
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    /// All elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.inner.q).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.inner.tables {
            Some(t) => FieldElement(t.add[(a.0 * self.inner.q + b.0) as usize]),
            None => self.add_direct(a, b),
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        match &self.inner.tables {
            Some(t) => FieldElement(t.neg[a.0 as usize]),
            None => self.neg_direct(a),
        }
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.inner.tables {
            Some(t) => FieldElement(t.mul[(a.0 * self.inner.q + b.0) as usize]),
            None => self.mul_direct(a, b),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.inner.tables {
            Some(t) => FieldElement(t.inv[a.0 as usize]),
            None => self.pow(a, self.inner.q as u64 - 2),
        })
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Sum of the integer lifts of the basis coefficients; lies in `[0, r(p-1)]`.
    pub fn base_weight(&self, a: FieldElement) -> u32 {
        let p = self.inner.p;
        let mut v = a.0;
        let mut w = 0;
        while v > 0 {
            w += v % p;
            v /= p;
        }
        w
    }

    /// Rank of `a` in the lexicographic order of its residue array
    /// (coefficient of `x^0` most significant).
    pub fn wire_rank(&self, a: FieldElement) -> u32 {
        let p = self.inner.p;
        let mut v = a.0;
        let mut rank = 0;
        for _ in 0..self.inner.r {
            rank = rank * p + v % p;
            v /= p;
        }
        rank
    }

    /// Inverse of [`Field::wire_rank`].
    pub fn from_wire_rank(&self, rank: u32) -> FieldElement {
        let p = self.inner.p;
        let mut v = rank;
        let mut raw = 0;
        for _ in 0..self.inner.r {
            raw = raw * p + v % p;
            v /= p;
        }
        FieldElement(raw)
    }

    pub(crate) fn add_direct(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.inner.p;
        if p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut scale) = (a.0, b.0, 0u32, 1u32);
        for _ in 0..self.inner.r {
            out += ((x % p + y % p) % p) * scale;
            x /= p;
            y /= p;
            scale = scale.wrapping_mul(p);
        }
        FieldElement(out)
    }

    pub(crate) fn neg_direct(&self, a: FieldElement) -> FieldElement {
        let p = self.inner.p;
        let (mut x, mut out, mut scale) = (a.0, 0u32, 1u32);
        for _ in 0..self.inner.r {
            out += ((p - x % p) % p) * scale;
            x /= p;
            scale = scale.wrapping_mul(p);
        }
        FieldElement(out)
    }

    /// Schoolbook polynomial product reduced modulo `irr`.
    pub(crate) fn mul_direct(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.inner.p as u64;
        let r = self.inner.r;
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let mut prod = vec![0u64; 2 * r - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let irr = &self.inner.irr;
        for d in (r..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..r {
                let sub = c * irr[i] as u64 % p;
                let slot = &mut prod[d - r + i];
                *slot = (*slot + p - sub) % p;
            }
        }
        let mut v = 0u32;
        for &c in prod[..r].iter().rev() {
            v = v * self.inner.p + c as u32;
        }
        FieldElement(v)
    }
}

fn build_tables(inner: &FieldInner) -> Tables {
    let field = Field { inner: Arc::new(FieldInner { tables: None, irr: inner.irr.clone(), ..*inner }) };
    let q = inner.q as usize;
    let mut add = vec![0; q * q];
    let mut mul = vec![0; q * q];
    for a in 0..q {
        for b in 0..q {
            add[a * q + b] = field.add_direct(FieldElement(a as u32), FieldElement(b as u32)).0;
            mul[a * q + b] = field.mul_direct(FieldElement(a as u32), FieldElement(b as u32)).0;
        }
    }
    let neg = (0..q).map(|a| field.neg_direct(FieldElement(a as u32)).0).collect();
    let mut inv = vec![0; q];
    for a in 1..q {
        inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).expect("nonzero element without inverse") as u32;
    }
    Tables { add, mul, neg, inv }
}

/// Polynomial helpers over the prime field `Z_p`, coefficients constant term first.
pub(crate) mod fp {
    fn trim(f: &mut Vec<u32>) {
        while f.len() > 1 && *f.last().unwrap() == 0 {
            f.pop();
        }
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let mut acc = 1u64;
        let mut base = a as u64 % p as u64;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut m = m.to_vec();
        trim(&mut m);
        let dm = m.len() - 1;
        if dm == 0 {
            return vec![0];
        }
        let lead_inv = inv_mod(m[dm], p) as u64;
        while a.len() > dm {
            let da = a.len() - 1;
            let c = a[da] as u64 * lead_inv % p as u64;
            if c != 0 {
                for i in 0..=dm {
                    let sub = c * m[i] as u64 % p as u64;
                    let slot = &mut a[da - dm + i];
                    *slot = ((*slot as u64 + p as u64 - sub) % p as u64) as u32;
                }
            }
            a.pop();
        }
        if a.is_empty() {
            a.push(0);
        }
        trim(&mut a);
        a
    }

    fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        trim(&mut out);
        out
    }

    fn is_zero(a: &[u32]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !is_zero(&b) {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// `x^(p^e) mod f`.
    fn frobenius_power(f: &[u32], p: u32, e: usize) -> Vec<u32> {
        let mut cur = rem(&[0, 1], f, p);
        for _ in 0..e {
            // cur <- cur^p mod f
            let mut acc = vec![1u32];
            let mut base = cur.clone();
            let mut k = p;
            while k > 0 {
                if k & 1 == 1 {
                    acc = rem(&mul(&acc, &base, p), f, p);
                }
                base = rem(&mul(&base, &base, p), f, p);
                k >>= 1;
            }
            cur = acc;
        }
        cur
    }

    fn sub_x(a: &[u32], p: u32) -> Vec<u32> {
        let mut out = a.to_vec();
        if out.len() < 2 {
            out.resize(2, 0);
        }
        out[1] = (out[1] + p - 1) % p;
        trim(&mut out);
        out
    }

    fn prime_divisors(mut n: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                out.push(d);
                while n.is_multiple_of(d) {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            out.push(n);
        }
        out
    }

    /// Irreducibility of a monic `f` over `Z_p`: trial division by every monic
    /// polynomial of degree at most `deg/2` when `deg <= 4`, Rabin's test otherwise.
    pub fn is_irreducible(p: u32, f: &[u32]) -> bool {
        let deg = f.len() - 1;
        if deg == 0 {
            return false;
        }
        if deg == 1 {
            return true;
        }
        if deg <= 4 {
            for d in 1..=deg / 2 {
                let count = (p as u64).pow(d as u32);
                for t in 0..count {
                    let mut g = Vec::with_capacity(d + 1);
                    let mut v = t;
                    for _ in 0..d {
                        g.push((v % p as u64) as u32);
                        v /= p as u64;
                    }
                    g.push(1);
                    if is_zero(&rem(f, &g, p)) {
                        return false;
                    }
                }
            }
            return true;
        }
        if !is_zero(&sub_x(&frobenius_power(f, p, deg), p)) {
            return false;
        }
        prime_divisors(deg).into_iter().all(|d| {
            let h = sub_x(&frobenius_power(f, p, deg / d), p);
            let g = gcd(f, &h, p);
            g.len() == 1 && g[0] != 0
        })
    }

    /// Lexicographically smallest monic irreducible of degree `r`,
    /// comparing coefficient arrays constant term first.
    pub fn smallest_irreducible(p: u32, r: usize) -> Vec<u32> {
        let count = (p as u64).pow(r as u32);
        for t in 0..count {
            let mut f = vec![0u32; r + 1];
            let mut v = t;
            for i in (0..r).rev() {
                f[i] = (v % p as u64) as u32;
                v /= p as u64;
            }
            f[r] = 1;
            if is_irreducible(p, &f) {
                return f;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }
}
