//! Seeded property suites behind `idemcode verify`.

use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{min_distance, min_distance_exhaustive, rank_identity_check, singleton_report, Metric};
use crate::code::{Code, DualMode, DEFAULT_CAP};
use crate::cyclic::{component_cyclic_check, cyclic_component_generators, is_quasi_cyclic, lifted_code, shift};
use crate::doc::CodeSpecDoc;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::random::{random_code, random_cyclic_code, random_element, rng};
use crate::ring::Ring;
use crate::weight::{self, char_matrix, CharKind, MATRIX_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Macwilliams,
    Crt,
    Duality,
    Bounds,
    Cyclic,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyParams {
    pub p: u64,
    pub r: usize,
    pub k: usize,
    /// Largest code length drawn.
    pub n: usize,
    pub seed: u64,
    pub cases: usize,
    /// Replaces computed duals by a wrong code, to exercise the failure path.
    #[serde(skip)]
    pub corrupt_dual: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub check: String,
    pub counterexample: Option<CodeSpecDoc>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub params: VerifyParams,
    pub checks: u64,
    pub failures: Vec<Failure>,
    pub passed: bool,
}

/// Brute-force work per case stays below this many ring operations.
const BRUTE_LIMIT: u128 = 1 << 16;

struct Tally {
    checks: u64,
    failures: Vec<Failure>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: &str, code: Option<&Code>) {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure { check: what.into(), counterexample: code.map(CodeSpecDoc::from_code) });
        }
    }
}

fn dual_of(code: &Code, mode: DualMode, corrupt: bool) -> Code {
    let d = code.dual(mode);
    if !corrupt {
        return d;
    }
    let field = code.ring().field();
    let mut comps = d.components().to_vec();
    comps[0] = if comps[0].nrows() > 0 {
        Matrix::new(code.n(), comps[0].rows()[1..].to_vec()).expect("same width")
    } else {
        Matrix::identity(field, code.n())
    };
    Code::crt_combine(code.ring(), code.n(), &comps).expect("same shapes")
}

fn draw_code(ring: &Ring, max_n: usize, rng: &mut impl Rng) -> Result<Code> {
    let n = rng.gen_range(1..=max_n);
    random_code(ring, n, n, rng)
}

pub fn run(suite: Suite, params: &VerifyParams) -> Result<VerifyReport> {
    if params.n == 0 {
        return Err(Error::EmptyLengthZero);
    }
    let ring = Ring::with_params(params.p, params.r, None, params.k)?;
    let mut rng = rng(params.seed);
    let mut t = Tally { checks: 0, failures: Vec::new() };
    match suite {
        Suite::Macwilliams => macwilliams_suite(&ring, params, &mut rng, &mut t)?,
        Suite::Crt => crt_suite(&ring, params, &mut rng, &mut t)?,
        Suite::Duality => duality_suite(&ring, params, &mut rng, &mut t)?,
        Suite::Bounds => bounds_suite(&ring, params, &mut rng, &mut t)?,
        Suite::Cyclic => cyclic_suite(&ring, params, &mut rng, &mut t)?,
    }
    Ok(VerifyReport {
        suite,
        params: params.clone(),
        checks: t.checks,
        passed: t.failures.is_empty(),
        failures: t.failures,
    })
}

fn macwilliams_suite(ring: &Ring, params: &VerifyParams, rng: &mut impl Rng, t: &mut Tally) -> Result<()> {
    let tm = char_matrix(ring, CharKind::T, MATRIX_CAP)?;
    let th = char_matrix(ring, CharKind::TH, MATRIX_CAP)?;
    let s = match char_matrix(ring, CharKind::S, MATRIX_CAP) {
        Ok(s) => Some(s),
        Err(Error::InvariantViolation(_)) => None,
        Err(e) => return Err(e),
    };
    t.check(s.is_some(), "S rows constant on unit classes", None);
    let classes = weight::unit_classes(ring, MATRIX_CAP as u128)?;
    for _ in 0..params.cases {
        let code = draw_code(ring, params.n, rng)?;
        let size = code.cardinality();
        let w = weight::cwe(&code, DEFAULT_CAP)?;
        for (m, mode, name) in [(&tm, DualMode::Euclidean, "cwe/T"), (&th, DualMode::Hermitian, "cwe/T_H")] {
            let expect = weight::cwe(&dual_of(&code, mode, params.corrupt_dual), DEFAULT_CAP)?;
            let ok = weight::macwilliams(&w, m, size).is_ok_and(|got| got == expect);
            t.check(ok, name, Some(&code));
        }
        let expect = weight::cwe_to_swe(
            &weight::cwe(&dual_of(&code, DualMode::Euclidean, params.corrupt_dual), DEFAULT_CAP)?,
            &classes,
        );
        if let Some(s) = &s {
            let sw = weight::cwe_to_swe(&w, &classes);
            let ok = weight::macwilliams(&sw, s, size).is_ok_and(|got| got == expect);
            t.check(ok, "swe/S", Some(&code));
        }
        let folded = weight::macwilliams(&w, &tm, size).map(|x| weight::cwe_to_swe(&x, &classes));
        t.check(folded.is_ok_and(|x| x == expect), "fold commutes with transform", Some(&code));
    }
    Ok(())
}

fn crt_suite(ring: &Ring, params: &VerifyParams, rng: &mut impl Rng, t: &mut Tally) -> Result<()> {
    let els = ring.elements(BRUTE_LIMIT)?;
    // Positions of the Gray idempotents under Phi fix the permutation pi_k.
    let pi: Vec<Option<usize>> = (0..ring.dim())
        .map(|m| {
            let img = ring.gray_big_phi(&ring.idempotent(1 << m));
            let ones: Vec<_> = img.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect();
            (ones.len() == 1 && img[ones[0]] == ring.field().one()).then(|| ones[0])
        })
        .collect();
    let perm_ok = pi.iter().all(|x| x.is_some()) && pi.iter().collect::<BTreeSet<_>>().len() == ring.dim();
    t.check(perm_ok, "Phi idempotent images form a permutation", None);
    let mut phi_seen = BTreeSet::new();
    let mut big_seen = BTreeSet::new();
    for a in &els {
        let g = ring.gray_phi(a);
        t.check(ring.gray_phi_inv(&g)? == *a, "phi round trip", None);
        let big = ring.gray_big_phi(a);
        if perm_ok {
            let permuted: Vec<_> = (0..ring.dim()).map(|m| (m, pi[m].expect("checked"))).collect();
            t.check(permuted.iter().all(|&(m, i)| big[i] == g[m]), "Phi = pi o phi", None);
        }
        phi_seen.insert(g);
        big_seen.insert(big);
        t.check(ring.conjugate(&ring.conjugate(a)) == *a, "conjugation is an involution", None);
    }
    t.check(phi_seen.len() == els.len() && big_seen.len() == els.len(), "phi and Phi are bijective", None);
    let pairs: Vec<(usize, usize)> = if (els.len() as u128).pow(2) <= BRUTE_LIMIT {
        (0..els.len()).flat_map(|i| (0..els.len()).map(move |j| (i, j))).collect()
    } else {
        (0..BRUTE_LIMIT as usize).map(|_| (rng.gen_range(0..els.len()), rng.gen_range(0..els.len()))).collect()
    };
    let f = ring.field();
    for (i, j) in pairs {
        let (a, b) = (&els[i], &els[j]);
        let prod = ring.gray_phi(&ring.mul_monomial(a, b));
        let pointwise: Vec<_> = a.gray().iter().zip(b.gray()).map(|(&x, &y)| f.mul(x, y)).collect();
        t.check(prod == pointwise, "phi multiplicative", None);
        let sum: Vec<_> = a.gray().iter().zip(b.gray()).map(|(&x, &y)| f.add(x, y)).collect();
        t.check(ring.gray_phi(&ring.add(a, b)) == sum, "phi additive", None);
        let cc = ring.conjugate(&ring.mul(a, b));
        t.check(cc == ring.mul(&ring.conjugate(a), &ring.conjugate(b)), "conjugation multiplicative", None);
    }
    for _ in 0..params.cases {
        let code = draw_code(ring, params.n, rng)?;
        let again = Code::crt_combine(ring, code.n(), code.components())?;
        t.check(again == code, "crt_combine of components", Some(&code));
        if code.cardinality() <= BRUTE_LIMIT {
            let words = code.enumerate(BRUTE_LIMIT)?;
            t.check(words.len() as u128 == code.cardinality(), "enumeration size", Some(&code));
            t.check(words.iter().all(|w| again.contains(w)), "enumerated words in recombined code", Some(&code));
        }
        let x = random_element(ring, rng);
        let g = &code.generators()[0];
        let scaled: Vec<_> = g.iter().map(|a| ring.mul(&x, a)).collect();
        t.check(code.contains(&scaled), "closed under ring scalars", Some(&code));
    }
    Ok(())
}

fn duality_suite(ring: &Ring, params: &VerifyParams, rng: &mut impl Rng, t: &mut Tally) -> Result<()> {
    for _ in 0..params.cases {
        let code = draw_code(ring, params.n, rng)?;
        let total = ring.order().pow(code.n() as u32);
        for mode in [DualMode::Euclidean, DualMode::Hermitian] {
            let d = dual_of(&code, mode, params.corrupt_dual);
            t.check(code.cardinality_big() * d.cardinality_big() == total.into(), "|C||C^dual| = |B_k|^n", Some(&code));
            t.check(code.dual(mode).dual(mode) == code, "double dual", Some(&code));
            if total <= BRUTE_LIMIT && code.cardinality() * total <= BRUTE_LIMIT * 64 {
                let words = code.enumerate(BRUTE_LIMIT)?;
                let all = Code::full(ring, code.n())?.enumerate(BRUTE_LIMIT)?;
                let brute: Vec<_> = all
                    .into_iter()
                    .filter(|u| {
                        words.iter().all(|c| {
                            u.iter()
                                .zip(c)
                                .fold(ring.zero(), |acc, (x, y)| {
                                    let y = if mode == DualMode::Hermitian { ring.conjugate(y) } else { y.clone() };
                                    ring.add(&acc, &ring.mul(x, &y))
                                })
                                .is_zero()
                        })
                    })
                    .collect();
                t.check(d.enumerate(BRUTE_LIMIT)? == brute, "dual equals brute-force orthogonal", Some(&code));
            }
        }
    }
    Ok(())
}

fn bounds_suite(ring: &Ring, params: &VerifyParams, rng: &mut impl Rng, t: &mut Tally) -> Result<()> {
    for _ in 0..params.cases {
        let code = draw_code(ring, params.n, rng)?;
        let rep = singleton_report(&code, DEFAULT_CAP)?;
        t.check(rep.inequalities_hold(), "Singleton-type inequalities", Some(&code));
        t.check(rep.free_mldr_implies_mlds, "free exact MLDR implies MLDS", Some(&code));
        t.check(rank_identity_check(&code).corrected_form_holds, "rk(C) + frk(C^perp) = n", Some(&code));
        if code.cardinality() <= BRUTE_LIMIT {
            for m in [Metric::Hamming, Metric::Lee] {
                let ok = min_distance(&code, m, DEFAULT_CAP)? == min_distance_exhaustive(&code, m, BRUTE_LIMIT)?;
                t.check(ok, "component distance equals enumerated distance", Some(&code));
            }
        }
    }
    Ok(())
}

fn cyclic_suite(ring: &Ring, params: &VerifyParams, rng: &mut impl Rng, t: &mut Tally) -> Result<()> {
    let f = ring.field();
    for _ in 0..params.cases {
        let code = draw_code(ring, params.n, rng)?;
        for l in 1..=code.n() {
            t.check(component_cyclic_check(&code, l)?.equivalence_holds, "QC iff components QC", Some(&code));
            let shifted: Vec<_> = code.generators().iter().map(|g| shift(g, l)).collect::<Result<_>>()?;
            let sc = Code::new(ring, code.n(), shifted)?;
            let comps_ok = sc.components().iter().zip(code.components()).all(|(a, b)| {
                let rows: Vec<_> = b.rows().iter().map(|r| shift(r, l).expect("l in range")).collect();
                *a == Matrix::new(code.n(), rows).expect("same width").rref(f)
            });
            t.check(comps_ok, "shift commutes with components", Some(&code));
        }
        let n = rng.gen_range(1..=params.n);
        let cyc = random_cyclic_code(ring, n, rng)?;
        t.check(is_quasi_cyclic(&cyc, 1)?, "lifted code is cyclic", Some(&cyc));
        let back = lifted_code(ring, n, &cyclic_component_generators(&cyc)?)?;
        t.check(back == cyc, "generator extraction and lifting round trip", Some(&cyc));
    }
    Ok(())
}
