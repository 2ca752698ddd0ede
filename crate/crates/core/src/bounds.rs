//! Minimum distances, Singleton-type bounds and the rank identities.
//!
//! A codeword's Hamming support is the union of its component supports and
//! its Lee weight is the sum of its component Lee weights, so both minimum
//! distances are minima over the component codes. `None` stands for the
//! infinite distance of the zero code.

use serde::{Deserialize, Serialize};

use crate::code::{Code, DualMode};
use crate::error::Result;
use crate::field::{Field, FieldElement};
use crate::linalg::{hamming_weight, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Hamming,
    Lee,
}

fn word_weight(field: &Field, v: &[FieldElement], metric: Metric) -> u32 {
    match metric {
        Metric::Hamming => hamming_weight(v) as u32,
        Metric::Lee => v.iter().map(|&x| field.base_weight(x)).sum(),
    }
}

/// Minimum nonzero weight of the row space of an RREF matrix.
pub fn component_distance(field: &Field, m: &Matrix, metric: Metric, cap: u128) -> Result<Option<u32>> {
    let mut best: Option<u32> = None;
    for v in m.span(field, cap)? {
        let w = word_weight(field, &v, metric);
        if w > 0 && best.is_none_or(|b| w < b) {
            best = Some(w);
            if w == 1 {
                break;
            }
        }
    }
    Ok(best)
}

/// Minimum distance through the components; `cap` bounds each component span.
pub fn min_distance(code: &Code, metric: Metric, cap: u128) -> Result<Option<u32>> {
    let field = code.ring().field();
    let mut best = None;
    for c in code.components() {
        if let Some(d) = component_distance(field, c, metric, cap)? {
            best = Some(best.map_or(d, |b: u32| b.min(d)));
        }
    }
    Ok(best)
}

/// Minimum distance by enumerating every codeword.
pub fn min_distance_exhaustive(code: &Code, metric: Metric, cap: u128) -> Result<Option<u32>> {
    let ring = code.ring();
    let mut best: Option<u32> = None;
    code.for_each_codeword(cap, |w| {
        let d = match metric {
            Metric::Hamming => w.iter().filter(|x| !x.is_zero()).count() as u32,
            Metric::Lee => w.iter().map(|x| ring.lee_weight(x)).sum(),
        };
        if d > 0 && best.is_none_or(|b| d < b) {
            best = Some(d);
        }
    })?;
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    /// `log_q |C|`.
    pub dimension: usize,
    pub d_h: Option<u32>,
    pub d_l: Option<u32>,
    pub rank: usize,
    pub free_rank: usize,
    /// `n - log_{|B_k|} |C| + 1` as the fraction `num / den`.
    pub singleton_h_num: i64,
    pub singleton_h_den: i64,
    pub mdr_bound: i64,
    pub mlds_lhs: Option<i64>,
    pub mlds_rhs: i64,
    pub mldr_lhs: Option<i64>,
    pub mldr_rhs: i64,
    pub is_mds: bool,
    pub is_mdr: bool,
    pub is_mlds: bool,
    pub is_mldr: bool,
    /// Free, MLDR, and `r (p-1) 2^k` divides `d_L - 1`.
    pub free_mldr_exact: bool,
    /// `free_mldr_exact` implies MLDS.
    pub free_mldr_implies_mlds: bool,
}

impl BoundReport {
    /// Every bound inequality holds. Vacuous for the zero code.
    pub fn inequalities_hold(&self) -> bool {
        let (Some(dh), Some(ll), Some(rl)) = (self.d_h, self.mlds_lhs, self.mldr_lhs) else {
            return true;
        };
        (dh as i64) * self.singleton_h_den <= self.singleton_h_num
            && dh as i64 <= self.mdr_bound
            && ll <= self.mlds_rhs
            && rl <= self.mldr_rhs
    }
}

pub fn singleton_report(code: &Code, cap: u128) -> Result<BoundReport> {
    let ring = code.ring();
    let f = ring.field();
    let n = code.n();
    let two_k = ring.dim() as i64;
    let dim = code.dimension();
    let profile = code.rank_profile();
    let d_h = min_distance(code, Metric::Hamming, cap)?;
    let d_l = min_distance(code, Metric::Lee, cap)?;
    let unit = (f.r() as i64) * (f.p() as i64 - 1);
    let mlds_lhs = d_l.map(|d| (d as i64 - 1).div_euclid(unit));
    let mldr_lhs = d_l.map(|d| (d as i64 - 1).div_euclid(unit * two_k));
    let mlds_rhs = two_k * n as i64 - dim as i64;
    let mldr_rhs = n as i64 - profile.rank as i64;
    let singleton_h_num = (n as i64 + 1) * two_k - dim as i64;
    let mdr_bound = n as i64 - profile.rank as i64 + 1;
    // |C| |B_k|^(d_H - 1) = |B_k|^n, compared on exponents of q.
    let is_mds = d_h.is_some_and(|d| dim as i64 + two_k * (d as i64 - 1) == two_k * n as i64);
    let is_mdr = d_h.is_some_and(|d| d as i64 == mdr_bound);
    let is_mlds = mlds_lhs == Some(mlds_rhs);
    let is_mldr = mldr_lhs == Some(mldr_rhs);
    let free_mldr_exact = profile.is_free && is_mldr && d_l.is_some_and(|d| (d as i64 - 1) % (unit * two_k) == 0);
    Ok(BoundReport {
        n,
        dimension: dim,
        d_h,
        d_l,
        rank: profile.rank,
        free_rank: profile.free_rank,
        singleton_h_num,
        singleton_h_den: two_k,
        mdr_bound,
        mlds_lhs,
        mlds_rhs,
        mldr_lhs,
        mldr_rhs,
        is_mds,
        is_mdr,
        is_mlds,
        is_mldr,
        free_mldr_exact,
        free_mldr_implies_mlds: !free_mldr_exact || is_mlds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankIdentity {
    pub rank: usize,
    pub free_rank: usize,
    pub dual_free_rank: usize,
    /// `rk(C) + frk(C) = n`.
    pub paper_form_holds: bool,
    /// `rk(C) + frk(C^perp) = n`.
    pub corrected_form_holds: bool,
}

pub fn rank_identity_check(code: &Code) -> RankIdentity {
    let p = code.rank_profile();
    let d = code.dual(DualMode::Euclidean).rank_profile();
    RankIdentity {
        rank: p.rank,
        free_rank: p.free_rank,
        dual_free_rank: d.free_rank,
        paper_form_holds: p.rank + p.free_rank == code.n(),
        corrected_form_holds: p.rank + d.free_rank == code.n(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn f2b1() -> Ring {
        Ring::with_params(2, 1, None, 1).unwrap()
    }

    #[test]
    fn distance_examples() {
        let r = f2b1();
        let c = Code::new(&r, 1, vec![vec![r.v(1)]]).unwrap();
        assert_eq!(min_distance(&c, Metric::Hamming, 1 << 20).unwrap(), Some(1));
        assert_eq!(min_distance(&c, Metric::Lee, 1 << 20).unwrap(), Some(1));
        let c = Code::new(&r, 2, vec![vec![r.one(), r.one()]]).unwrap();
        assert_eq!(min_distance(&c, Metric::Hamming, 1 << 20).unwrap(), Some(2));
        assert_eq!(min_distance(&Code::zero(&r, 2).unwrap(), Metric::Lee, 1 << 20).unwrap(), None);
    }

    #[test]
    fn distances_match_enumeration() {
        for &(p, rr, k) in &[(2u64, 1usize, 1usize), (3, 1, 1), (2, 2, 1), (2, 1, 2)] {
            let r = Ring::with_params(p, rr, None, k).unwrap();
            let els = r.elements(1 << 16).unwrap();
            for (i, a) in els.iter().enumerate().step_by(3) {
                let b = &els[(i * 5 + 1) % els.len()];
                let c = Code::new(&r, 3, vec![vec![a.clone(), b.clone(), a.clone()]]).unwrap();
                for m in [Metric::Hamming, Metric::Lee] {
                    assert_eq!(min_distance(&c, m, 1 << 20).unwrap(), min_distance_exhaustive(&c, m, 1 << 20).unwrap());
                }
                assert!(singleton_report(&c, 1 << 20).unwrap().inequalities_hold());
            }
        }
    }

    #[test]
    fn report_examples() {
        let r = f2b1();
        let c = Code::new(&r, 2, vec![vec![r.one(), r.one()]]).unwrap();
        let rep = singleton_report(&c, 1 << 20).unwrap();
        assert!(rep.is_mdr);
        // |C| |B_1|^(d_H - 1) = 4 * 4 = |B_1|^2.
        assert!(rep.is_mds);
        let r4 = Ring::with_params(2, 2, None, 1).unwrap();
        let full = Code::full(&r4, 1).unwrap();
        let rep = singleton_report(&full, 1 << 20).unwrap();
        assert_eq!(rep.d_l, Some(1));
        assert!(rep.is_mldr && rep.is_mlds && rep.free_mldr_exact && rep.free_mldr_implies_mlds);
        let z = singleton_report(&Code::zero(&r, 2).unwrap(), 1 << 20).unwrap();
        assert!(!z.is_mds && !z.is_mdr && !z.is_mlds && !z.is_mldr);
        assert_eq!(z.d_h, None);
    }

    #[test]
    fn rank_identities() {
        let r = f2b1();
        let f = r.field().clone();
        let full = rank_identity_check(&Code::full(&r, 2).unwrap());
        assert!(!full.paper_form_holds && full.corrected_form_holds);
        let two = Matrix::new(3, vec![vec![f.one(), f.zero(), f.zero()], vec![f.zero(), f.one(), f.zero()]]).unwrap();
        let one = Matrix::new(3, vec![vec![f.one(), f.one(), f.one()]]).unwrap();
        let c = Code::crt_combine(&r, 3, &[two, one]).unwrap();
        let id = rank_identity_check(&c);
        assert_eq!((id.rank, id.dual_free_rank), (2, 1));
        assert!(id.paper_form_holds && id.corrected_form_holds);
    }
}
