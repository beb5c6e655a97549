//! Reduced Burau representation of braid words, the Alexander polynomial of
//! the mapping torus for single-cycle braids, homological dilatations, and
//! the orientability test for the invariant foliation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::{spectral_radius, CohomologyClass, LaurentPoly, PolyMatrix, RingError};

#[derive(Debug, Error)]
pub enum BurauError {
    #[error("generator index {0} out of range for {1} strands")]
    BadGenerator(i32, usize),
    #[error("braid word parse error: {0}")]
    Parse(String),
    #[error("strand permutation is not a single cycle; the single-variable Alexander polynomial is not defined")]
    NotSingleCycle,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A braid word on `strands` strands. Letters are signed generator indices,
/// `+i` for σ_i and `-i` for its inverse, in written order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BurauError> {
        let word = BraidWord { strands, letters };
        word.check()?;
        Ok(word)
    }

    /// Parses whitespace- or comma-separated signed integers.
    pub fn parse(strands: usize, input: &str) -> Result<Self, BurauError> {
        let mut letters = Vec::new();
        for tok in input.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let v: i32 = tok
                .parse()
                .map_err(|_| BurauError::Parse(format!("bad letter {tok:?}")))?;
            if v == 0 {
                return Err(BurauError::Parse("generator index 0".to_string()));
            }
            letters.push(v);
        }
        Self::new(strands, letters)
    }

    fn check(&self) -> Result<(), BurauError> {
        for l in &self.letters {
            let i = l.unsigned_abs() as usize;
            if i == 0 || i + 1 > self.strands {
                return Err(BurauError::BadGenerator(*l, self.strands));
            }
        }
        Ok(())
    }

    /// Strand-following permutation: `perm[i]` is the position where the
    /// strand entering at `i` (0-based) exits; the first letter acts first.
    pub fn strand_permutation(&self) -> Vec<usize> {
        let mut pos: Vec<usize> = (0..self.strands).collect(); // strand -> position
        for l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            for p in pos.iter_mut() {
                if *p == i {
                    *p += 1;
                } else if *p == i + 1 {
                    *p -= 1;
                }
            }
        }
        pos
    }

    /// Orbits of the strand permutation, sorted by least element.
    pub fn strand_cycles(&self) -> Vec<Vec<usize>> {
        let perm = self.strand_permutation();
        let n = self.strands;
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = perm[i];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Exponent sum of the word.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }
}

fn generator_matrix(n: usize, letter: i32) -> PolyMatrix {
    let dim = n - 1;
    let mut m = PolyMatrix::identity(dim, 1);
    let i = letter.unsigned_abs() as usize; // 1-based row
    let row = i - 1;
    let t = |e: i64| LaurentPoly::monomial(1, vec![e], 1);
    if letter > 0 {
        *m.at_mut(row, row) = t(1).neg();
        if i >= 2 {
            *m.at_mut(row, row - 1) = t(1);
        }
        if i < dim {
            *m.at_mut(row, row + 1) = LaurentPoly::one(1);
        }
    } else {
        *m.at_mut(row, row) = t(-1).neg();
        if i >= 2 {
            *m.at_mut(row, row - 1) = LaurentPoly::one(1);
        }
        if i < dim {
            *m.at_mut(row, row + 1) = t(-1);
        }
    }
    m
}

/// Reduced Burau matrix of a braid word: the product of generator blocks in
/// word order, exact over `Z[t, t^-1]`, dimension `n − 1`.
pub fn reduced_burau(word: &BraidWord) -> Result<PolyMatrix, BurauError> {
    word.check()?;
    let dim = word.strands - 1;
    let mut acc = PolyMatrix::identity(dim, 1);
    for l in &word.letters {
        acc = acc.mul(&generator_matrix(word.strands, *l))?;
    }
    Ok(acc)
}

/// Alexander polynomial `Δ(t, u)` of the mapping torus of a braid whose
/// strand permutation is a single cycle: the canonical unit form of
/// `det(u·Id − Burau(word))`.
pub fn alexander_polynomial(word: &BraidWord) -> Result<LaurentPoly, BurauError> {
    if word.strand_cycles().len() != 1 {
        return Err(BurauError::NotSingleCycle);
    }
    let burau = reduced_burau(word)?;
    // embed the t-matrix into (t, u) and take det(u·Id − M)
    let dim = burau.dim();
    let mut rows = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut row = Vec::with_capacity(dim);
        for j in 0..dim {
            let mut p = LaurentPoly::zero(2);
            for (e, c) in burau.at(i, j).terms() {
                p = p
                    .add(&LaurentPoly::monomial(2, vec![e.0[0], 0], *c))
                    .expect("arity 2");
            }
            row.push(p);
        }
        rows.push(row);
    }
    let m = PolyMatrix::from_rows(rows)?;
    Ok(m.char_poly()?.canonical_unit_form()?)
}

/// Homological dilatation at a class: the largest root modulus of the
/// valuated Alexander polynomial (the spectral radius of the homological
/// action of the monodromy).
pub fn homological_dilatation(
    delta: &LaurentPoly,
    class: &CohomologyClass,
) -> Result<f64, BurauError> {
    let v = delta.valuate(class)?;
    Ok(spectral_radius(&v)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientability {
    Orientable,
    NonOrientable,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrientabilityReport {
    pub verdict: Orientability,
    pub geometric: f64,
    pub homological: f64,
    /// For two-variable classes `(s, y)`: whether the parity rule
    /// "orientable when s is odd and y is even" applies to this class.
    pub parity_rule: Option<bool>,
}

/// Compares the homological dilatation with the geometric stretch factor at
/// the same fibered class: the invariant foliation is orientable exactly
/// when they agree.
pub fn orientability_test(
    theta: &LaurentPoly,
    delta: &LaurentPoly,
    class: &CohomologyClass,
) -> Result<OrientabilityReport, BurauError> {
    let geometric = {
        let v = theta.valuate(class)?;
        spectral_radius(&v)?
    };
    let homological = homological_dilatation(delta, class)?;
    let verdict = if (geometric - homological).abs() < 1e-9 * geometric.max(1.0) {
        Orientability::Orientable
    } else {
        Orientability::NonOrientable
    };
    let parity_rule = if class.arity() == 2 {
        let s = class.0[0];
        let y = class.0[1];
        Some(s.rem_euclid(2) == 1 && y.rem_euclid(2) == 0)
    } else {
        None
    };
    Ok(OrientabilityReport { verdict, geometric, homological, parity_rule })
}
