//! Searches for codes satisfying a predicate.
//!
//! Every code is `crt_combine` of one subspace of `F_q^n` per Gray
//! coordinate, so the exhaustive mode enumerates component subspaces and
//! covers every code exactly once. When that space exceeds the budget, seeded
//! random codes are drawn instead.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bounds::singleton_report;
use crate::code::{Code, DualMode, DEFAULT_CAP};
use crate::doc::CodeSpecDoc;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::random::{random_code, rng};
use crate::ring::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    SelfDualEuclid,
    SelfDualHerm,
    Mds,
    Mdr,
    Mlds,
    Mldr,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchParams {
    pub p: u64,
    pub r: usize,
    pub k: usize,
    pub n: usize,
    pub budget: u64,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    Random,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub predicate: Predicate,
    pub params: SearchParams,
    pub mode: SearchMode,
    pub examined: u64,
    /// Distinct witnesses ordered by their component row spaces.
    pub witnesses: Vec<CodeSpecDoc>,
}

/// Every subspace of `F_q^n`, as RREF matrices: for each pivot set the
/// entries right of a pivot in non-pivot columns range over `F_q`.
pub fn all_subspaces(field: &Field, n: usize, cap: u64) -> Result<Vec<Matrix>> {
    let q = field.order() as u64;
    let mut out = Vec::new();
    for pivots in 0u32..(1 << n) {
        let piv: Vec<usize> = (0..n).filter(|c| pivots >> c & 1 == 1).collect();
        let free: Vec<(usize, usize)> = piv
            .iter()
            .enumerate()
            .flat_map(|(i, &pc)| ((pc + 1)..n).filter(|c| pivots >> c & 1 == 0).map(move |c| (i, c)))
            .collect();
        let count = q.checked_pow(free.len() as u32).unwrap_or(u64::MAX);
        if count.saturating_add(out.len() as u64) > cap {
            return Err(Error::TooLargeToEnumerate {
                what: "subspaces".into(),
                size: u128::from(count),
                cap: cap.into(),
            });
        }
        for mut idx in 0..count {
            let mut rows: Vec<Vec<_>> = piv
                .iter()
                .map(|&pc| (0..n).map(|c| if c == pc { field.one() } else { field.zero() }).collect())
                .collect();
            for &(i, c) in &free {
                rows[i][c] = field.from_raw((idx % q) as u32);
                idx /= q;
            }
            out.push(Matrix::new(n, rows)?);
        }
    }
    out.sort();
    Ok(out)
}

pub fn holds(code: &Code, predicate: Predicate) -> Result<bool> {
    Ok(match predicate {
        Predicate::SelfDualEuclid => *code == code.dual(DualMode::Euclidean),
        Predicate::SelfDualHerm => *code == code.dual(DualMode::Hermitian),
        other => {
            let rep = singleton_report(code, DEFAULT_CAP)?;
            match other {
                Predicate::Mds => rep.is_mds,
                Predicate::Mdr => rep.is_mdr,
                Predicate::Mlds => rep.is_mlds,
                _ => rep.is_mldr,
            }
        }
    })
}

pub fn search(predicate: Predicate, params: &SearchParams) -> Result<SearchResult> {
    let ring = Ring::with_params(params.p, params.r, None, params.k)?;
    if params.n == 0 {
        return Err(Error::EmptyLengthZero);
    }
    let mut found: BTreeSet<Vec<Matrix>> = BTreeSet::new();
    let mut examined = 0u64;
    let exhaustive = all_subspaces(ring.field(), params.n, params.budget)
        .ok()
        .filter(|subs| (subs.len() as u128).checked_pow(ring.dim() as u32).is_some_and(|t| t <= params.budget as u128));
    let mode = match exhaustive {
        Some(subs) => {
            let mut digits = vec![0usize; ring.dim()];
            loop {
                let comps: Vec<Matrix> = digits.iter().map(|&d| subs[d].clone()).collect();
                let code = Code::crt_combine(&ring, params.n, &comps)?;
                examined += 1;
                if holds(&code, predicate)? {
                    found.insert(comps);
                }
                let mut i = 0;
                loop {
                    if i == digits.len() {
                        break;
                    }
                    digits[i] += 1;
                    if digits[i] < subs.len() {
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
                if i == digits.len() {
                    break;
                }
            }
            SearchMode::Exhaustive
        }
        None => {
            let mut rng = rng(params.seed);
            for _ in 0..params.budget {
                let code = random_code(&ring, params.n, params.n, &mut rng)?;
                examined += 1;
                if holds(&code, predicate)? {
                    found.insert(code.components().to_vec());
                }
            }
            SearchMode::Random
        }
    };
    let witnesses = found
        .into_iter()
        .map(|comps| Code::crt_combine(&ring, params.n, &comps).map(|c| CodeSpecDoc::from_code(&c)))
        .collect::<Result<_>>()?;
    Ok(SearchResult { predicate, params: params.clone(), mode, examined, witnesses })
}
