use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::poly::LaurentPoly;
use super::RingError;

/// Dense square matrix over the Laurent ring. All entries share one arity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMatrix {
    dim: usize,
    arity: usize,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn identity(dim: usize, arity: usize) -> Self {
        let mut m = Self::zero(dim, arity);
        for i in 0..dim {
            *m.at_mut(i, i) = LaurentPoly::one(arity);
        }
        m
    }

    pub fn zero(dim: usize, arity: usize) -> Self {
        PolyMatrix { dim, arity, entries: vec![LaurentPoly::zero(arity); dim * dim] }
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self, RingError> {
        let dim = rows.len();
        let arity = rows
            .first()
            .and_then(|r| r.first())
            .map(|p| p.arity())
            .unwrap_or(0);
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            assert_eq!(row.len(), dim, "matrix must be square");
            for p in row {
                if p.arity() != arity {
                    return Err(RingError::ArityMismatch(arity, p.arity()));
                }
                entries.push(p);
            }
        }
        Ok(PolyMatrix { dim, arity, entries })
    }

    /// Builds a matrix of `u`-free entries from integer rows.
    pub fn from_int_rows(rows: &[Vec<i64>], arity: usize) -> Self {
        let dim = rows.len();
        let mut m = Self::zero(dim, arity);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim);
            for (j, c) in row.iter().enumerate() {
                *m.at_mut(i, j) = LaurentPoly::constant(arity, *c as i128);
            }
        }
        m
    }

    /// Diagonal matrix from the given entries.
    pub fn diagonal(entries: Vec<LaurentPoly>) -> Result<Self, RingError> {
        let dim = entries.len();
        let arity = entries.first().map(|p| p.arity()).unwrap_or(0);
        let mut m = Self::zero(dim, arity);
        for (i, p) in entries.into_iter().enumerate() {
            if p.arity() != arity {
                return Err(RingError::ArityMismatch(arity, p.arity()));
            }
            *m.at_mut(i, i) = p;
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn at(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.dim + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut LaurentPoly {
        &mut self.entries[i * self.dim + j]
    }

    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        if self.arity != other.arity {
            return Err(RingError::ArityMismatch(self.arity, other.arity));
        }
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut out = Self::zero(self.dim, self.arity);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut acc = LaurentPoly::zero(self.arity);
                for k in 0..self.dim {
                    acc = acc.add(&self.at(i, k).mul(other.at(k, j))?)?;
                }
                *out.at_mut(i, j) = acc;
            }
        }
        Ok(out)
    }

    /// Exact determinant by cofactor expansion memoized over column subsets.
    /// Practical for the dimensions that occur here (≤ 32 by construction,
    /// a dozen or so in any shipped instance).
    pub fn determinant(&self) -> Result<LaurentPoly, RingError> {
        assert!(self.dim <= 32, "determinant limited to dimension 32");
        let mut memo: HashMap<u32, LaurentPoly> = HashMap::new();
        self.det_rec(0, (1u64 << self.dim).wrapping_sub(1) as u32, &mut memo)
    }

    fn det_rec(
        &self,
        row: usize,
        cols: u32,
        memo: &mut HashMap<u32, LaurentPoly>,
    ) -> Result<LaurentPoly, RingError> {
        if cols == 0 {
            return Ok(LaurentPoly::one(self.arity));
        }
        if let Some(p) = memo.get(&cols) {
            return Ok(p.clone());
        }
        let mut acc = LaurentPoly::zero(self.arity);
        let mut sign = 1i128;
        for j in 0..self.dim {
            if cols & (1 << j) == 0 {
                continue;
            }
            let entry = self.at(row, j);
            if !entry.is_zero() {
                let minor = self.det_rec(row + 1, cols & !(1 << j), memo)?;
                let term = entry.mul(&minor)?.scale(sign);
                acc = acc.add(&term)?;
            }
            sign = -sign;
        }
        memo.insert(cols, acc.clone());
        Ok(acc)
    }

    /// Characteristic polynomial `det(u·Id − M)` of a matrix whose entries
    /// do not involve `u`. The result is monic in `u` of degree `dim`.
    pub fn char_poly(&self) -> Result<LaurentPoly, RingError> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                if !self.at(i, j).is_u_free() {
                    return Err(RingError::EntryContainsU(i, j));
                }
            }
        }
        let u = LaurentPoly::u_var(self.arity, 1);
        let mut shifted = Self::zero(self.dim, self.arity);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut e = self.at(i, j).neg();
                if i == j {
                    e = e.add(&u)?;
                }
                *shifted.at_mut(i, j) = e;
            }
        }
        shifted.determinant()
    }

    /// Integer specialization with all deck variables set to one; entries
    /// must be `u`-free.
    pub fn specialize_t_to_one(&self) -> Vec<Vec<i128>> {
        let mut out = vec![vec![0i128; self.dim]; self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[i][j] = self.at(i, j).terms().map(|(_, c)| *c).sum();
            }
        }
        out
    }
}
