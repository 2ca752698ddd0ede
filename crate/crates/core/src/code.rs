//! Linear codes over `B_k^n`.
//!
//! A code is stored through its `2^k` CRT components: component `m` is the
//! row-reduced span over `F_q` of the generators' Gray coordinate `m`, taken
//! position by position. Size, rank, duals and membership are computed on the
//! components; generators are kept for reporting.

use std::cmp::Ordering;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linalg::Matrix;
use crate::ring::{Ring, RingElement};

/// Default cap on the number of codewords enumerated.
pub const DEFAULT_CAP: u128 = 1 << 24;

pub type Vector = Vec<RingElement>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DualMode {
    Euclidean,
    Hermitian,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Independence {
    /// `sum a_i u_i = 0` forces every `a_i u_i = 0`.
    Plain,
    /// Some CRT component of the family is linearly independent.
    Modular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrayMap {
    Phi,
    BigPhi,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfDualStatus {
    pub euclid_orthogonal: bool,
    pub euclid_dual: bool,
    pub hermitian_orthogonal: bool,
    pub hermitian_dual: bool,
    pub type_ii: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub rank: usize,
    pub free_rank: usize,
    pub component_ranks: Vec<usize>,
    pub is_free: bool,
}

#[derive(Clone, Debug)]
pub struct Code {
    ring: Ring,
    n: usize,
    generators: Vec<Vector>,
    components: Vec<Matrix>,
}

impl PartialEq for Code {
    /// Codeword-set equality.
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.n == other.n && self.components == other.components
    }
}

impl Eq for Code {}

/// Gray coordinate `m` of every position of `v`.
pub fn gray_column(v: &[RingElement], m: usize) -> Vec<FieldElement> {
    v.iter().map(|a| a.gray()[m]).collect()
}

/// Lexicographic order on wire ranks, position by position.
pub fn vector_wire_cmp(ring: &Ring, a: &[RingElement], b: &[RingElement]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match ring.wire_cmp(x, y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Cartesian index over component spans, first component varying fastest.
fn odometer(digits: &mut [usize], bases: &[usize]) -> bool {
    for (d, &b) in digits.iter_mut().zip(bases) {
        *d += 1;
        if *d < b {
            return true;
        }
        *d = 0;
    }
    false
}

impl Code {
    pub fn new(ring: &Ring, n: usize, generators: Vec<Vector>) -> Result<Code> {
        if n == 0 {
            return Err(Error::EmptyLengthZero);
        }
        for (index, g) in generators.iter().enumerate() {
            if g.len() != n {
                return Err(Error::LengthMismatch { index, expected: n, got: g.len() });
            }
        }
        let field = ring.field();
        let components = (0..ring.dim())
            .map(|m| {
                let rows = generators.iter().map(|g| gray_column(g, m)).collect();
                Matrix::new(n, rows).expect("lengths checked").rref(field)
            })
            .collect();
        Ok(Code { ring: ring.clone(), n, generators, components })
    }

    pub fn zero(ring: &Ring, n: usize) -> Result<Code> {
        Code::new(ring, n, Vec::new())
    }

    /// `B_k^n`.
    pub fn full(ring: &Ring, n: usize) -> Result<Code> {
        let gens = (0..n).map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect()).collect();
        Code::new(ring, n, gens)
    }

    /// `Theta^{-1}` applied to the component codes. Generators are the CRT
    /// lifts of the component bases: generator `j` has component `m` equal to
    /// basis row `j` of `C_m`, or zero when `C_m` has fewer rows.
    pub fn crt_combine(ring: &Ring, n: usize, components: &[Matrix]) -> Result<Code> {
        if n == 0 {
            return Err(Error::EmptyLengthZero);
        }
        if components.len() != ring.dim() {
            return Err(Error::ShapeMismatch { expected: ring.dim(), got: components.len() });
        }
        if let Some(bad) = components.iter().find(|c| c.cols() != n) {
            return Err(Error::ShapeMismatch { expected: n, got: bad.cols() });
        }
        let field = ring.field();
        let reduced: Vec<Matrix> = components.iter().map(|c| c.rref(field)).collect();
        let rank = reduced.iter().map(|c| c.nrows()).max().unwrap_or(0);
        let generators = (0..rank)
            .map(|j| {
                (0..n)
                    .map(|i| {
                        let gray: Vec<_> =
                            reduced.iter().map(|c| c.rows().get(j).map_or(field.zero(), |row| row[i])).collect();
                        ring.theta_combine(&gray).expect("shape fixed")
                    })
                    .collect()
            })
            .collect();
        Ok(Code { ring: ring.clone(), n, generators, components: reduced })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    /// The component codes in RREF, indexed by Gray coordinate.
    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    pub fn component_ranks(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.nrows()).collect()
    }

    /// `log_q |C|`.
    pub fn dimension(&self) -> usize {
        self.components.iter().map(|c| c.nrows()).sum()
    }

    /// `|C|`, saturating at `u128::MAX`.
    pub fn cardinality(&self) -> u128 {
        (self.ring.field().order() as u128).checked_pow(self.dimension() as u32).unwrap_or(u128::MAX)
    }

    pub fn cardinality_big(&self) -> BigUint {
        BigUint::from(self.ring.field().order()).pow(self.dimension() as u32)
    }

    pub fn is_zero(&self) -> bool {
        self.dimension() == 0
    }

    pub fn is_full(&self) -> bool {
        self.components.iter().all(|c| c.nrows() == self.n)
    }

    pub fn contains(&self, v: &[RingElement]) -> bool {
        v.len() == self.n
            && self.components.iter().enumerate().all(|(m, c)| c.contains(self.ring.field(), &gray_column(v, m)))
    }

    /// `C subset of D`.
    pub fn is_subcode_of(&self, other: &Code) -> bool {
        let f = self.ring.field();
        self.n == other.n
            && self.components.iter().zip(&other.components).all(|(a, b)| a.rows().iter().all(|r| b.contains(f, r)))
    }

    /// Calls `f` on every codeword, in component-odometer order.
    pub fn for_each_codeword(&self, cap: u128, mut f: impl FnMut(&[RingElement])) -> Result<()> {
        let size = self.cardinality();
        if size > cap {
            return Err(Error::TooLargeToEnumerate { what: "codewords".into(), size, cap });
        }
        let field = self.ring.field();
        let spans: Vec<Vec<Vec<FieldElement>>> =
            self.components.iter().map(|c| c.span(field, cap)).collect::<Result<_>>()?;
        let bases: Vec<usize> = spans.iter().map(|s| s.len()).collect();
        let mut digits = vec![0usize; spans.len()];
        let mut word = Vec::with_capacity(self.n);
        loop {
            word.clear();
            for i in 0..self.n {
                let gray = spans.iter().zip(&digits).map(|(s, &d)| s[d][i]).collect();
                word.push(self.ring.from_gray_unchecked(gray));
            }
            f(&word);
            if !odometer(&mut digits, &bases) {
                return Ok(());
            }
        }
    }

    /// Every codeword, sorted in wire order.
    pub fn enumerate(&self, cap: u128) -> Result<Vec<Vector>> {
        let mut out = Vec::with_capacity(self.cardinality().min(cap) as usize);
        self.for_each_codeword(cap, |w| out.push(w.to_vec()))?;
        out.sort_by(|a, b| vector_wire_cmp(&self.ring, a, b));
        Ok(out)
    }

    pub fn dual(&self, mode: DualMode) -> Code {
        let field = self.ring.field();
        let full = self.ring.dim() - 1;
        let comps: Vec<Matrix> = (0..self.ring.dim())
            .map(|m| match mode {
                DualMode::Euclidean => self.components[m].kernel(field),
                DualMode::Hermitian => self.components[m ^ full].kernel(field),
            })
            .collect();
        Code::crt_combine(&self.ring, self.n, &comps).expect("shapes preserved")
    }

    /// Self-orthogonality and self-duality flags. The Type II flag enumerates
    /// the code, and only when it is Euclidean self-dual.
    pub fn self_dual_status(&self, cap: u128) -> Result<SelfDualStatus> {
        let e = self.dual(DualMode::Euclidean);
        let h = self.dual(DualMode::Hermitian);
        let euclid_dual = *self == e;
        let type_ii = if euclid_dual {
            let mut all = true;
            self.for_each_codeword(cap, |w| {
                all &= w.iter().map(|a| self.ring.lee_weight(a)).sum::<u32>() % 4 == 0;
            })?;
            all
        } else {
            false
        };
        Ok(SelfDualStatus {
            euclid_orthogonal: self.is_subcode_of(&e),
            euclid_dual,
            hermitian_orthogonal: self.is_subcode_of(&h),
            hermitian_dual: *self == h,
            type_ii,
        })
    }

    pub fn rank_profile(&self) -> RankProfile {
        let component_ranks = self.component_ranks();
        let rank = component_ranks.iter().copied().max().unwrap_or(0);
        let free_rank = component_ranks.iter().copied().min().unwrap_or(0);
        RankProfile { rank, free_rank, is_free: rank == free_rank, component_ranks }
    }

    /// A family that is both independent and modular independent and
    /// generates the code: the CRT lifts of the component bases, so
    /// generator `j` is nonzero exactly on components of rank above `j`.
    pub fn minimal_generating_set(&self) -> Vec<Vector> {
        Code::crt_combine(&self.ring, self.n, &self.components).expect("own components").generators
    }

    /// Generator matrix over `F_q` of `{map(c) : c in C}`, positions laid out
    /// as consecutive blocks of `2^k` coordinates. Spanned by the images of
    /// `v_S g` over generators `g` and subsets `S`.
    pub fn gray_image(&self, map: GrayMap) -> Matrix {
        let ring = &self.ring;
        let mut rows = Vec::new();
        for g in &self.generators {
            for s in 0..ring.dim() {
                let vs = ring.monomial(s);
                let row = g
                    .iter()
                    .flat_map(|a| {
                        let b = ring.mul(&vs, a);
                        match map {
                            GrayMap::Phi => ring.gray_phi(&b),
                            GrayMap::BigPhi => ring.gray_big_phi(&b),
                        }
                    })
                    .collect();
                rows.push(row);
            }
        }
        Matrix::new(self.n * ring.dim(), rows).expect("block layout").rref(ring.field())
    }

    /// [`Code::gray_image`] computed from every codeword.
    pub fn gray_image_exhaustive(&self, map: GrayMap, cap: u128) -> Result<Matrix> {
        let ring = &self.ring;
        let mut rows = Vec::new();
        self.for_each_codeword(cap, |w| {
            rows.push(
                w.iter()
                    .flat_map(|a| match map {
                        GrayMap::Phi => ring.gray_phi(a),
                        GrayMap::BigPhi => ring.gray_big_phi(a),
                    })
                    .collect(),
            )
        })?;
        Ok(Matrix::new(self.n * ring.dim(), rows)?.rref(ring.field()))
    }
}

/// `I(u)`: the size of the ideal generated by the coordinates of `u`.
pub fn ideal_size(ring: &Ring, u: &[RingElement]) -> u128 {
    let mask = u.iter().fold(0u64, |acc, a| acc | ring.support_mask(a));
    (ring.field().order() as u128).pow(mask.count_ones())
}

/// Independence through the CRT. Plain: on every component the nonzero
/// images are linearly independent. Modular: on some component all images are.
pub fn check_independence(ring: &Ring, vectors: &[Vector], mode: Independence) -> Result<bool> {
    let n = vectors.first().map_or(0, |v| v.len());
    for (index, v) in vectors.iter().enumerate() {
        if v.len() != n {
            return Err(Error::LengthMismatch { index, expected: n, got: v.len() });
        }
    }
    let field = ring.field();
    let mut per_component = (0..ring.dim()).map(|m| {
        let cols: Vec<_> = vectors.iter().map(|v| gray_column(v, m)).collect();
        let nonzero: Vec<_> = cols.iter().filter(|c| c.iter().any(|x| !x.is_zero())).cloned().collect();
        let all_nonzero = nonzero.len() == cols.len();
        let independent = Matrix::new(n, nonzero.clone()).expect("lengths checked").rank(field) == nonzero.len();
        (independent, independent && all_nonzero)
    });
    Ok(match mode {
        Independence::Plain => per_component.all(|(ind, _)| ind),
        Independence::Modular => per_component.any(|(_, full)| full),
    })
}

/// Plain independence by trying every scalar tuple in `B_k^s`.
pub fn independence_by_enumeration(ring: &Ring, vectors: &[Vector], cap: u128) -> Result<bool> {
    let s = vectors.len() as u32;
    let size = ring.order().checked_pow(s).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::TooLargeToEnumerate { what: "scalar tuples".into(), size, cap });
    }
    let els = ring.elements(cap)?;
    let n = vectors.first().map_or(0, |v| v.len());
    let bases = vec![els.len(); vectors.len()];
    let mut digits = vec![0usize; vectors.len()];
    loop {
        let mut sum = vec![ring.zero(); n];
        let mut all_vanish = true;
        for (v, &d) in vectors.iter().zip(&digits) {
            for (acc, x) in sum.iter_mut().zip(v) {
                let t = ring.mul(&els[d], x);
                all_vanish &= t.is_zero();
                *acc = ring.add(acc, &t);
            }
        }
        if sum.iter().all(|x| x.is_zero()) && !all_vanish {
            return Ok(false);
        }
        if !odometer(&mut digits, &bases) {
            return Ok(true);
        }
    }
}
