//! JSON code-spec and report documents, and the `analyze` pipeline.
//!
//! Ring elements travel in their wire encoding: one residue array per subset,
//! subsets in bitmask order, residues constant term first. Reports are
//! byte-deterministic: every map is ordered and enumerators are summarized
//! by a SHA-256 digest of their canonical serialization.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bounds::{rank_identity_check, singleton_report, BoundReport, Metric, RankIdentity};
use crate::code::{Code, DualMode, DEFAULT_CAP};
use crate::cyclic::{component_cyclic_check, cyclic_component_generators};
use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::weight::{self, char_matrix, CharKind, WeightEnumerator, MATRIX_CAP};

pub const TOOL_NAME: &str = "idemcode";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub type WireElement = Vec<Vec<u32>>;
pub type WireVector = Vec<WireElement>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Analysis {
    Duality,
    Enumerators,
    Bounds,
    Cyclic,
}

pub const ALL_ANALYSES: [Analysis; 4] = [Analysis::Duality, Analysis::Enumerators, Analysis::Bounds, Analysis::Cyclic];

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift_index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analyses: Option<Vec<Analysis>>,
}

impl SpecOptions {
    fn is_empty(&self) -> bool {
        *self == SpecOptions::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSpecDoc {
    pub p: u64,
    pub r: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub irr: Option<Vec<u32>>,
    pub k: usize,
    pub n: usize,
    pub generators: Vec<WireVector>,
    #[serde(default, skip_serializing_if = "SpecOptions::is_empty")]
    pub options: SpecOptions,
}

impl CodeSpecDoc {
    pub fn parse(text: &str) -> Result<CodeSpecDoc> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn ring(&self) -> Result<Ring> {
        Ring::with_params(self.p, self.r, self.irr.as_deref(), self.k)
    }

    pub fn build(&self) -> Result<Code> {
        let ring = self.ring()?;
        let gens = self
            .generators
            .iter()
            .enumerate()
            .map(|(index, g)| {
                if g.len() != self.n {
                    return Err(Error::LengthMismatch { index, expected: self.n, got: g.len() });
                }
                g.iter().map(|a| ring.decode(a)).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Code::new(&ring, self.n, gens)
    }

    /// The spec of `code` on its minimal generating set.
    pub fn from_code(code: &Code) -> CodeSpecDoc {
        let ring = code.ring();
        let f = ring.field();
        CodeSpecDoc {
            p: f.p() as u64,
            r: f.r(),
            irr: (f.r() > 1).then(|| f.irr().to_vec()),
            k: ring.k(),
            n: code.n(),
            generators: code
                .minimal_generating_set()
                .iter()
                .map(|g| g.iter().map(|a| ring.encode(a)).collect())
                .collect(),
            options: SpecOptions::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

/// Conventions every encoded quantity in a report depends on.
#[derive(Clone, Debug, Serialize)]
pub struct FrozenOrders {
    pub subset_order: &'static str,
    pub element_order: &'static str,
    pub gray_layout: &'static str,
    pub complete_variables: &'static str,
    pub symmetrized_variables: &'static str,
    pub enumerator_digest: &'static str,
}

pub const FROZEN_ORDERS: FrozenOrders = FrozenOrders {
    subset_order: "bitmask-ascending",
    element_order: "wire-lexicographic",
    gray_layout: "position-major-blocks-of-2^k",
    complete_variables: "element-wire-rank",
    symmetrized_variables: "unit-class-by-representative-wire-rank",
    enumerator_digest: "sha256-of-compact-json-term-pairs",
};

#[derive(Clone, Debug, Serialize)]
pub struct Params {
    pub p: u64,
    pub r: usize,
    pub irr: Vec<u32>,
    pub k: usize,
    pub n: usize,
    pub q: u32,
    pub ring_order: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub euclid_orthogonal: bool,
    pub euclid_dual: bool,
    pub hermitian_orthogonal: bool,
    pub hermitian_dual: bool,
    pub type_ii: bool,
    pub euclid_dual_cardinality: String,
    pub hermitian_dual_cardinality: String,
    pub euclid_dual_component_ranks: Vec<usize>,
    pub hermitian_dual_component_ranks: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumeratorDigest {
    pub kind: weight::EnumeratorKind,
    pub num_vars: usize,
    pub num_terms: usize,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumeratorReport {
    pub complete: EnumeratorDigest,
    pub symmetrized: EnumeratorDigest,
    /// `[[n - wt, wt], count]` pairs.
    pub hamming: Vec<(Vec<u32>, i128)>,
    pub lee: Vec<(Vec<u32>, i128)>,
    /// Whether the transform of the complete enumerator equals the dual's;
    /// `null` when the transform is beyond its caps.
    pub macwilliams_euclid: Option<bool>,
    pub macwilliams_hermitian: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CyclicReport {
    pub shift_index: usize,
    pub quasi_cyclic: bool,
    pub components_qc: Vec<bool>,
    pub equivalence_holds: bool,
    /// Monic generator per component, when the code is cyclic.
    pub component_generators: Option<Vec<Vec<Vec<u32>>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DistanceReport {
    pub metric: Metric,
    pub value: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    pub rank: usize,
    pub free_rank: usize,
    pub is_free: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDoc {
    pub tool: ToolInfo,
    pub orders: FrozenOrders,
    pub params: Params,
    pub cardinality: String,
    pub dimension: usize,
    pub component_ranks: Vec<usize>,
    pub rank_profile: RankReport,
    pub minimal_generating_set: Vec<WireVector>,
    pub distance: Option<DistanceReport>,
    pub duality: Option<DualityReport>,
    pub enumerators: Option<EnumeratorReport>,
    pub bounds: Option<BoundReport>,
    pub rank_identity: Option<RankIdentity>,
    pub cyclic: Option<CyclicReport>,
}

impl ReportDoc {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

pub fn digest(w: &WeightEnumerator) -> EnumeratorDigest {
    let bytes = serde_json::to_vec(&w.to_pairs()).expect("serializable");
    let hash = Sha256::digest(&bytes);
    EnumeratorDigest {
        kind: w.kind,
        num_vars: w.num_vars,
        num_terms: w.terms.len(),
        sha256: hash.iter().map(|b| format!("{b:02x}")).collect(),
    }
}

fn integer_pairs(w: &WeightEnumerator) -> Result<Vec<(Vec<u32>, i128)>> {
    w.terms
        .iter()
        .map(|(e, c)| {
            c.as_integer()
                .map(|v| (e.clone(), v))
                .ok_or_else(|| Error::InvariantViolation("code enumerator with irrational coefficient".into()))
        })
        .collect()
}

/// Transform check, `None` when a cap is hit.
fn macwilliams_check(code: &Code, w: &WeightEnumerator, mode: DualMode, cap: u128) -> Result<Option<bool>> {
    let kind = match mode {
        DualMode::Euclidean => CharKind::T,
        DualMode::Hermitian => CharKind::TH,
    };
    let m = match char_matrix(code.ring(), kind, MATRIX_CAP) {
        Ok(m) => m,
        Err(Error::MatrixTooLarge { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let transformed = match weight::macwilliams(w, &m, code.cardinality()) {
        Ok(t) => t,
        Err(Error::TooLargeToEnumerate { .. }) => return Ok(None),
        Err(Error::NonIntegralResult(_)) => return Ok(Some(false)),
        Err(e) => return Err(e),
    };
    Ok(Some(transformed == weight::cwe(&code.dual(mode), cap)?))
}

pub struct AnalyzeOptions {
    pub cap: u128,
    pub shift_index: usize,
    pub analyses: Vec<Analysis>,
    pub metric: Option<Metric>,
}

impl AnalyzeOptions {
    pub fn from_spec(spec: &CodeSpecDoc) -> AnalyzeOptions {
        AnalyzeOptions {
            cap: spec.options.cap.map_or(DEFAULT_CAP, u128::from),
            shift_index: spec.options.shift_index.unwrap_or(1),
            analyses: spec.options.analyses.clone().unwrap_or_else(|| ALL_ANALYSES.to_vec()),
            metric: None,
        }
    }
}

pub fn analyze(spec: &CodeSpecDoc, opts: &AnalyzeOptions) -> Result<ReportDoc> {
    let code = spec.build()?;
    let ring = code.ring().clone();
    let f = ring.field();
    let cap = opts.cap;
    let wants = |a: Analysis| opts.analyses.contains(&a);
    let profile = code.rank_profile();

    let duality = if wants(Analysis::Duality) {
        let st = code.self_dual_status(cap)?;
        let e = code.dual(DualMode::Euclidean);
        let h = code.dual(DualMode::Hermitian);
        Some(DualityReport {
            euclid_orthogonal: st.euclid_orthogonal,
            euclid_dual: st.euclid_dual,
            hermitian_orthogonal: st.hermitian_orthogonal,
            hermitian_dual: st.hermitian_dual,
            type_ii: st.type_ii,
            euclid_dual_cardinality: e.cardinality_big().to_string(),
            hermitian_dual_cardinality: h.cardinality_big().to_string(),
            euclid_dual_component_ranks: e.component_ranks(),
            hermitian_dual_component_ranks: h.component_ranks(),
        })
    } else {
        None
    };

    let enumerators = if wants(Analysis::Enumerators) {
        let c = weight::cwe(&code, cap)?;
        let classes = weight::unit_classes(&ring, u32::MAX as u128)?;
        let s = weight::cwe_to_swe(&c, &classes);
        Some(EnumeratorReport {
            complete: digest(&c),
            symmetrized: digest(&s),
            hamming: integer_pairs(&weight::hamming_we(&code, cap)?)?,
            lee: integer_pairs(&weight::lee_we(&code, cap)?)?,
            macwilliams_euclid: macwilliams_check(&code, &c, DualMode::Euclidean, cap)?,
            macwilliams_hermitian: macwilliams_check(&code, &c, DualMode::Hermitian, cap)?,
        })
    } else {
        None
    };

    let (bounds, rank_identity) = if wants(Analysis::Bounds) {
        (Some(singleton_report(&code, cap)?), Some(rank_identity_check(&code)))
    } else {
        (None, None)
    };

    let distance = match opts.metric {
        Some(metric) => Some(DistanceReport { metric, value: crate::bounds::min_distance(&code, metric, cap)? }),
        None => None,
    };

    let cyclic = if wants(Analysis::Cyclic) {
        let check = component_cyclic_check(&code, opts.shift_index)?;
        let component_generators = if check.components_qc.iter().all(|&b| b) && opts.shift_index == 1 {
            Some(
                cyclic_component_generators(&code)?
                    .into_iter()
                    .map(|pc| pc.generators[0].iter().map(|&c| f.coeffs(c)).collect())
                    .collect(),
            )
        } else {
            None
        };
        Some(CyclicReport {
            shift_index: opts.shift_index,
            quasi_cyclic: check.code_qc,
            components_qc: check.components_qc,
            equivalence_holds: check.equivalence_holds,
            component_generators,
        })
    } else {
        None
    };

    Ok(ReportDoc {
        tool: ToolInfo { name: TOOL_NAME, version: TOOL_VERSION },
        orders: FROZEN_ORDERS,
        params: Params {
            p: spec.p,
            r: spec.r,
            irr: f.irr().to_vec(),
            k: spec.k,
            n: spec.n,
            q: f.order(),
            ring_order: ring.order().to_string(),
        },
        cardinality: code.cardinality_big().to_string(),
        dimension: code.dimension(),
        component_ranks: code.component_ranks(),
        rank_profile: RankReport { rank: profile.rank, free_rank: profile.free_rank, is_free: profile.is_free },
        minimal_generating_set: CodeSpecDoc::from_code(&code).generators,
        distance,
        duality,
        enumerators,
        bounds,
        rank_identity,
        cyclic,
    })
}
