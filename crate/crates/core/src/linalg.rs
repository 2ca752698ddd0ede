//! Dense linear algebra over `F_q`: reduced row echelon form, kernels,
//! membership and span enumeration. Row spaces are compared through their
//! canonical RREF.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    cols: usize,
    rows: Vec<Vec<FieldElement>>,
}

impl Matrix {
    pub fn new(cols: usize, rows: Vec<Vec<FieldElement>>) -> Result<Matrix> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch { expected: cols, got: bad.len() });
        }
        Ok(Matrix { cols, rows })
    }

    pub fn zero(cols: usize) -> Matrix {
        Matrix { cols, rows: Vec::new() }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let rows = (0..n).map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect()).collect();
        Matrix { cols: n, rows }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<FieldElement>> {
        self.rows
    }

    /// Reduced row echelon form with zero rows removed.
    pub fn rref(&self, field: &Field) -> Matrix {
        let mut rows = self.rows.clone();
        let mut lead = 0;
        for col in 0..self.cols {
            let Some(pivot) = (lead..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(lead, pivot);
            let inv = field.inv(rows[lead][col]).expect("pivot is nonzero");
            for x in rows[lead].iter_mut() {
                *x = field.mul(*x, inv);
            }
            let pivot_row = rows[lead].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == lead || row[col].is_zero() {
                    continue;
                }
                let c = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(c, y));
                }
            }
            lead += 1;
            if lead == rows.len() {
                break;
            }
        }
        rows.truncate(lead);
        Matrix { cols: self.cols, rows }
    }

    pub fn rank(&self, field: &Field) -> usize {
        self.rref(field).nrows()
    }

    /// Pivot columns of a matrix already in RREF.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.iter().position(|x| !x.is_zero()).expect("RREF rows are nonzero")).collect()
    }

    /// RREF basis of `{x : self * x^T = 0}`, i.e. the Euclidean dual of the row space.
    pub fn kernel(&self, field: &Field) -> Matrix {
        let red = self.rref(field);
        let pivots = red.pivots();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![field.zero(); self.cols];
            v[free] = field.one();
            for (row, &p) in red.rows.iter().zip(&pivots) {
                v[p] = field.neg(row[free]);
            }
            basis.push(v);
        }
        Matrix { cols: self.cols, rows: basis }.rref(field)
    }

    /// Residue of `v` after elimination against an RREF matrix.
    pub fn reduce(&self, field: &Field, v: &[FieldElement]) -> Vec<FieldElement> {
        let mut v = v.to_vec();
        for row in &self.rows {
            let p = row.iter().position(|x| !x.is_zero()).expect("RREF rows are nonzero");
            let c = v[p];
            if c.is_zero() {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                *x = field.sub(*x, field.mul(c, y));
            }
        }
        v
    }

    /// Membership in the row space; `self` must be in RREF.
    pub fn contains(&self, field: &Field, v: &[FieldElement]) -> bool {
        self.reduce(field, v).iter().all(|x| x.is_zero())
    }

    /// Every vector of the row space of `self` (assumed independent rows),
    /// in odometer order over the row coefficients.
    pub fn span(&self, field: &Field, cap: u128) -> Result<Vec<Vec<FieldElement>>> {
        let q = field.order() as u128;
        let size = q.checked_pow(self.nrows() as u32).unwrap_or(u128::MAX);
        if size > cap {
            return Err(Error::TooLargeToEnumerate { what: "row space".into(), size, cap });
        }
        let mut out = Vec::with_capacity(size as usize);
        let mut digits = vec![0u32; self.nrows()];
        loop {
            let mut v = vec![field.zero(); self.cols];
            for (d, row) in digits.iter().zip(&self.rows) {
                if *d == 0 {
                    continue;
                }
                let c = field.from_raw(*d);
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = field.add(*x, field.mul(c, y));
                }
            }
            out.push(v);
            let mut i = 0;
            loop {
                if i == digits.len() {
                    return Ok(out);
                }
                digits[i] += 1;
                if digits[i] < q as u32 {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }

    pub fn transpose(&self) -> Vec<Vec<FieldElement>> {
        (0..self.cols).map(|c| self.rows.iter().map(|r| r[c]).collect()).collect()
    }
}

pub fn dot(field: &Field, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    a.iter().zip(b).fold(field.zero(), |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

pub fn hamming_weight(v: &[FieldElement]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}
