//! Ideals of `B_k`.
//!
//! Through the CRT every ideal is determined by the set of Gray coordinates on
//! which some element is nonzero (its support mask), and is generated by the
//! idempotent supported there. Cardinality, membership, annihilators and
//! equality all reduce to mask operations; the closed-form generator
//! formulas are kept alongside for comparison.

use crate::code::DualMode;
use crate::error::{Error, Result};
use crate::ring::{gamma_coeff, Ring, RingElement};

#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<RingElement>,
}

impl PartialEq for Ideal {
    /// Set equality.
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.support_mask() == other.support_mask()
    }
}

impl Eq for Ideal {}

impl Ideal {
    pub fn new(ring: &Ring, generators: Vec<RingElement>) -> Ideal {
        Ideal { ring: ring.clone(), generators }
    }

    pub fn principal(ring: &Ring, g: RingElement) -> Ideal {
        Ideal::new(ring, vec![g])
    }

    /// The ideal supported on the Gray coordinates in `mask`.
    pub fn from_support(ring: &Ring, mask: u64) -> Ideal {
        Ideal::principal(ring, ring.idempotent(mask))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[RingElement] {
        &self.generators
    }

    pub fn support_mask(&self) -> u64 {
        self.generators.iter().fold(0, |acc, g| acc | self.ring.support_mask(g))
    }

    /// `|I| = q^(number of supported coordinates)`.
    pub fn cardinality(&self) -> u128 {
        (self.ring.field().order() as u128).pow(self.support_mask().count_ones())
    }

    pub fn contains(&self, x: &RingElement) -> bool {
        self.ring.support_mask(x) & !self.support_mask() == 0
    }

    /// Elements in wire order.
    pub fn elements(&self, cap: u128) -> Result<Vec<RingElement>> {
        let size = self.cardinality();
        if size > cap {
            return Err(Error::TooLargeToEnumerate { what: "ideal elements".into(), size, cap });
        }
        let mut out: Vec<_> = self.ring.elements(u128::MAX)?.into_iter().filter(|x| self.contains(x)).collect();
        out.sort_by(|a, b| self.ring.wire_cmp(a, b));
        Ok(out)
    }

    /// The single generator
    /// `sum_{A nonempty} (-1)^(|A|+1) (prod_{j in A} alpha_j)^(q-1)`.
    pub fn collapse(&self) -> Result<RingElement> {
        let m = self.generators.len();
        if m == 0 {
            return Err(Error::EmptyGeneratorList);
        }
        if m > 24 {
            return Err(Error::TooLargeToEnumerate { what: "generator subsets".into(), size: 1 << m, cap: 1 << 24 });
        }
        let ring = &self.ring;
        let f = ring.field();
        let e = f.order() as u64 - 1;
        let mut acc = ring.zero();
        for a in 1u32..(1 << m) {
            let prod = (0..m).filter(|j| a >> j & 1 == 1).fold(ring.one(), |p, j| ring.mul(&p, &self.generators[j]));
            let sign = if a.count_ones() % 2 == 1 { 1 } else { -1 };
            acc = ring.add(&acc, &ring.scale(f.from_int(sign), &ring.pow(&prod, e)));
        }
        Ok(acc)
    }

    /// The dual ideal: the annihilator `{u : u x = 0 for all x in I}` for
    /// [`DualMode::Euclidean`], its conjugate for [`DualMode::Hermitian`].
    /// Generated by `1 - e` where `e` is the idempotent supported on `I`.
    pub fn dual(&self, mode: DualMode) -> Ideal {
        let ring = &self.ring;
        let full = (1u64 << ring.dim()) - 1;
        let ann = ring.idempotent(!self.support_mask() & full);
        let g = match mode {
            DualMode::Euclidean => ann,
            DualMode::Hermitian => ring.conjugate(&ann),
        };
        Ideal::principal(ring, g)
    }

    /// The closed-form dual generator built from the collapsed generator
    /// `sum alpha_S v_S`: the product over subsets `S` in bitmask order of
    /// `1 + gamma(alpha_S v_S) v_S`, expanded with `v_S v_T = v_{S cup T}`
    /// (conjugated for the Hermitian mode).
    ///
    /// This agrees with [`Ideal::dual`] exactly when the Gray support of the
    /// generator is the up-closure of its coefficient support; cancellation
    /// inside a subset sum breaks it (e.g. `<1 + v>` over `F_2`).
    pub fn dual_closed_form(&self, mode: DualMode) -> Result<Ideal> {
        let g = self.collapse()?;
        let ring = &self.ring;
        let mut acc = ring.one();
        for (mask, &alpha) in g.coeffs().iter().enumerate() {
            if gamma_coeff(alpha) == 0 {
                continue;
            }
            let factor = ring.sub(&ring.one(), &ring.monomial(mask));
            acc = ring.mul_monomial(&acc, &factor);
        }
        if mode == DualMode::Hermitian {
            acc = ring.conjugate(&acc);
        }
        Ok(Ideal::principal(ring, acc))
    }
}

/// The `2^k` maximal ideals `<w_1, ..., w_k>`, `w_j in {v_j, 1 - v_j}`.
/// Ideal `m` is the kernel of Gray coordinate `m`: `w_j = v_j` when bit `j-1`
/// of `m` is clear and `1 - v_j` when it is set.
pub fn maximal_ideals(ring: &Ring) -> Vec<Ideal> {
    (0..ring.dim())
        .map(|m| {
            let gens = (1..=ring.k())
                .map(|j| {
                    let v = ring.v(j);
                    if m >> (j - 1) & 1 == 1 {
                        ring.sub(&ring.one(), &v)
                    } else {
                        v
                    }
                })
                .collect();
            Ideal::new(ring, gens)
        })
        .collect()
}

/// Every ideal of `B_k`, one per support mask, generated by its idempotent.
pub fn all_ideals(ring: &Ring) -> Vec<Ideal> {
    (0..1u64 << ring.dim()).map(|mask| Ideal::from_support(ring, mask)).collect()
}
