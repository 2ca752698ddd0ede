//! Element tables of `B_k` for documentation: encodings, both Gray images,
//! units, Lee weights, conjugates and unit classes.

use serde::Serialize;

use crate::error::Result;
use crate::ring::Ring;
use crate::weight::unit_classes;

#[derive(Clone, Debug, Serialize)]
pub struct ElementRow {
    pub wire_rank: u128,
    pub encoding: Vec<Vec<u32>>,
    pub phi: Vec<Vec<u32>>,
    pub big_phi: Vec<Vec<u32>>,
    pub is_unit: bool,
    pub lee_weight: u32,
    pub conjugate_rank: u128,
    pub unit_class: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RingTable {
    pub p: u32,
    pub r: usize,
    pub irr: Vec<u32>,
    pub k: usize,
    pub order: String,
    pub unit_count: String,
    /// `big_phi[pi[m]] = phi[m]` for every element.
    pub pi: Vec<usize>,
    pub elements: Vec<ElementRow>,
}

pub fn ring_table(ring: &Ring, cap: u128) -> Result<RingTable> {
    let f = ring.field();
    let els = ring.elements(cap)?;
    let classes = unit_classes(ring, cap)?;
    let enc = |v: Vec<crate::field::FieldElement>| v.into_iter().map(|c| f.coeffs(c)).collect();
    let pi = (0..ring.dim())
        .map(|m| {
            ring.gray_big_phi(&ring.idempotent(1 << m)).iter().position(|x| !x.is_zero()).expect("nonzero idempotent")
        })
        .collect();
    let elements = els
        .iter()
        .enumerate()
        .map(|(w, a)| ElementRow {
            wire_rank: w as u128,
            encoding: ring.encode(a),
            phi: enc(ring.gray_phi(a)),
            big_phi: enc(ring.gray_big_phi(a)),
            is_unit: ring.is_unit(a),
            lee_weight: ring.lee_weight(a),
            conjugate_rank: ring.wire_rank(&ring.conjugate(a)),
            unit_class: classes.class_of[w],
        })
        .collect();
    Ok(RingTable {
        p: f.p(),
        r: f.r(),
        irr: f.irr().to_vec(),
        k: ring.k(),
        order: ring.order().to_string(),
        unit_count: ring.unit_count().to_string(),
        pi,
        elements,
    })
}
