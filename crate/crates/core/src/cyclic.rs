//! Shifts, cyclic and quasi-cyclic codes, and polynomial generators of the
//! component codes.
//!
//! Polynomials over `F_q` are coefficient vectors, constant term first, with
//! trailing zeros trimmed; the zero polynomial is the empty vector.

use crate::code::{Code, Vector};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::Matrix;
use crate::ring::Ring;

pub type Poly = Vec<FieldElement>;

/// Right cyclic shift by `l`: position `i` moves to `i + l mod n`.
pub fn shift<T: Clone>(x: &[T], l: usize) -> Result<Vec<T>> {
    let n = x.len();
    if l == 0 || l > n {
        return Err(Error::BadShift { l, n });
    }
    let mut out = x.to_vec();
    for (i, v) in x.iter().enumerate() {
        out[(i + l) % n] = v.clone();
    }
    Ok(out)
}

/// Whether the row space of `m` is closed under the shift by `l`.
pub fn matrix_is_quasi_cyclic(field: &Field, m: &Matrix, l: usize) -> Result<bool> {
    let red = m.rref(field);
    if l == 0 || l > m.cols() {
        return Err(Error::BadShift { l, n: m.cols() });
    }
    for row in red.rows() {
        if !red.contains(field, &shift(row, l)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Closure under the shift by `l`, tested on generators.
pub fn is_quasi_cyclic(code: &Code, l: usize) -> Result<bool> {
    if l == 0 || l > code.n() {
        return Err(Error::BadShift { l, n: code.n() });
    }
    for g in code.generators() {
        if !code.contains(&shift(g, l)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCheck {
    pub code_qc: bool,
    pub components_qc: Vec<bool>,
    /// `code_qc` iff every component is quasi-cyclic.
    pub equivalence_holds: bool,
}

pub fn component_cyclic_check(code: &Code, l: usize) -> Result<CyclicCheck> {
    let code_qc = is_quasi_cyclic(code, l)?;
    let field = code.ring().field();
    let components_qc =
        code.components().iter().map(|c| matrix_is_quasi_cyclic(field, c, l)).collect::<Result<Vec<_>>>()?;
    let equivalence_holds = code_qc == components_qc.iter().all(|&b| b);
    Ok(CyclicCheck { code_qc, components_qc, equivalence_holds })
}

pub fn poly_trim(mut a: Poly) -> Poly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

/// `x^n - 1`.
pub fn x_n_minus_one(field: &Field, n: usize) -> Poly {
    let mut p = vec![field.zero(); n + 1];
    p[0] = field.neg(field.one());
    p[n] = field.one();
    p
}

/// Quotient and remainder; `b` must be nonzero.
pub fn poly_divmod(field: &Field, a: &[FieldElement], b: &[FieldElement]) -> Result<(Poly, Poly)> {
    let b = poly_trim(b.to_vec());
    let lead = *b.last().ok_or(Error::DivisionByZero)?;
    let inv = field.inv(lead)?;
    let mut r = poly_trim(a.to_vec());
    if r.len() < b.len() {
        return Ok((Vec::new(), r));
    }
    let mut q = vec![field.zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = field.mul(*r.last().expect("nonempty"), inv);
        q[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = field.sub(r[shift + i], field.mul(c, bi));
        }
        r = poly_trim(r);
    }
    Ok((poly_trim(q), r))
}

pub fn poly_monic(field: &Field, a: Poly) -> Poly {
    match a.last() {
        Some(&lead) => {
            let inv = field.inv(lead).expect("leading coefficient is nonzero");
            a.into_iter().map(|c| field.mul(c, inv)).collect()
        }
        None => a,
    }
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn poly_gcd(field: &Field, a: &[FieldElement], b: &[FieldElement]) -> Poly {
    let (mut a, mut b) = (poly_trim(a.to_vec()), poly_trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = poly_divmod(field, &a, &b).expect("b nonzero");
        a = std::mem::replace(&mut b, r);
    }
    poly_monic(field, a)
}

/// `x^i g mod x^n - 1` as a length-`n` vector.
pub fn poly_shift_vector(field: &Field, g: &[FieldElement], i: usize, n: usize) -> Vec<FieldElement> {
    let mut v = vec![field.zero(); n];
    for (j, &c) in g.iter().enumerate() {
        v[(i + j) % n] = field.add(v[(i + j) % n], c);
    }
    v
}

/// RREF of the span of `x^i g_j mod x^n - 1` over all `i` and generators `g_j`.
pub fn poly_code_matrix(field: &Field, n: usize, gens: &[Poly]) -> Matrix {
    let rows = gens.iter().flat_map(|g| (0..n).map(move |i| poly_shift_vector(field, g, i, n))).collect();
    Matrix::new(n, rows).expect("length n").rref(field)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCode {
    pub component: usize,
    pub generators: Vec<Poly>,
}

/// One monic generator `g_m | x^n - 1` per component: the gcd of the basis
/// rows (as polynomials) with `x^n - 1`. The zero component gets `x^n - 1`.
pub fn cyclic_component_generators(code: &Code) -> Result<Vec<PolyCode>> {
    let field = code.ring().field();
    let n = code.n();
    code.components()
        .iter()
        .enumerate()
        .map(|(m, c)| {
            if !matrix_is_quasi_cyclic(field, c, 1)? {
                return Err(Error::NotCyclic { component: m });
            }
            let g = c.rows().iter().fold(x_n_minus_one(field, n), |acc, row| poly_gcd(field, &acc, row));
            Ok(PolyCode { component: m, generators: vec![g] })
        })
        .collect()
}

fn embed_poly(ring: &Ring, n: usize, g: &[FieldElement], i: usize) -> Vector {
    poly_shift_vector(ring.field(), g, i, n).into_iter().map(|c| ring.scalar(c)).collect()
}

fn check_polycodes(ring: &Ring, polycodes: &[PolyCode]) -> Result<()> {
    if polycodes.len() != ring.dim() {
        return Err(Error::ShapeMismatch { expected: ring.dim(), got: polycodes.len() });
    }
    if let Some(bad) = polycodes.iter().enumerate().find(|(m, pc)| pc.component != *m) {
        return Err(Error::ShapeMismatch { expected: bad.0, got: bad.1.component });
    }
    Ok(())
}

/// Generators over `B_k` of the code whose component `m` is generated by
/// `polycodes[m]`: `e_m x^i g` for each generator `g` of component `m` and
/// each shift `i`, where `e_m` is the idempotent of Gray coordinate `m`.
pub fn lift_generators(ring: &Ring, n: usize, polycodes: &[PolyCode]) -> Result<Vec<Vector>> {
    check_polycodes(ring, polycodes)?;
    let mut out = Vec::new();
    for pc in polycodes {
        let e = ring.idempotent(1 << pc.component);
        for g in pc.generators.iter().filter(|g| !poly_trim(g.to_vec()).is_empty()) {
            for i in 0..n {
                out.push(embed_poly(ring, n, g, i).iter().map(|a| ring.mul(&e, a)).collect());
            }
        }
    }
    Ok(out)
}

/// The family `v_S x^i g` over every subset `S`, every component generator
/// `g` and every shift `i`, with no idempotent weighting. It generates the
/// sum of all component codes on every component, so it reproduces the code
/// only when all components coincide.
pub fn lift_generators_unweighted(ring: &Ring, n: usize, polycodes: &[PolyCode]) -> Result<Vec<Vector>> {
    check_polycodes(ring, polycodes)?;
    let mut out = Vec::new();
    for pc in polycodes {
        for g in pc.generators.iter().filter(|g| !poly_trim(g.to_vec()).is_empty()) {
            for s in 0..ring.dim() {
                let vs = ring.monomial(s);
                for i in 0..n {
                    out.push(embed_poly(ring, n, g, i).iter().map(|a| ring.mul(&vs, a)).collect());
                }
            }
        }
    }
    Ok(out)
}

pub fn lifted_code(ring: &Ring, n: usize, polycodes: &[PolyCode]) -> Result<Code> {
    Code::new(ring, n, lift_generators(ring, n, polycodes)?)
}
