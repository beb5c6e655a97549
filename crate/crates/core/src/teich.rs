//! The main pipeline: from a decorated loop to the Teichmüller polynomial.
//!
//! The braid's strand permutation determines one deck variable per cycle of
//! punctures. Decoration vectors are transported along the loop by the
//! η-recursion, turned into diagonal matrices of unit monomials, and the
//! lifted product `M = M(T₁)D₁ ⋯ M(T_k)D_k M(R)` over the Laurent ring has
//! the Teichmüller polynomial as its characteristic polynomial in `u`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automaton::{AutomatonLoop, Decoration};
use crate::burau::BraidWord;
use crate::ring::{largest_root, CohomologyClass, LaurentPoly, PolyMatrix, RingError, VarNames};
use crate::track::{prong_letter, IntMatrix, SignedPerm};

#[derive(Debug, Error)]
pub enum TeichError {
    #[error("loop is not certified pseudo-Anosov: {0}")]
    NotCertified(String),
    #[error("class has arity {0}, expected {1}")]
    ClassArity(usize, usize),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Deck variables of the loop: one per cycle of the braid's strand
/// permutation, named after the least puncture letter of the cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TMap {
    /// Cycles of 0-based puncture positions, sorted by minimum.
    pub cycles: Vec<Vec<usize>>,
    /// Cycle index of each 0-based position.
    pub var_of: Vec<usize>,
}

impl TMap {
    /// From the strand permutation of a braid word.
    pub fn from_word(word: &BraidWord) -> TMap {
        Self::from_permutation(&word.strand_permutation())
    }

    /// `perm[i]` is where the strand starting at position `i` ends.
    pub fn from_permutation(perm: &[usize]) -> TMap {
        let n = perm.len();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut var_of = vec![usize::MAX; n];
        for start in 0..n {
            if var_of[start] != usize::MAX {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while var_of[i] == usize::MAX {
                var_of[i] = cycles.len();
                cycle.push(i);
                i = perm[i];
            }
            cycles.push(cycle);
        }
        TMap { cycles, var_of }
    }

    /// Rank of the deck group `H`.
    pub fn rank(&self) -> usize {
        self.cycles.len()
    }

    /// Variable names `t` (single cycle) or `tA, tB, …` keyed by each
    /// cycle's least puncture, plus the fibration variable `u`.
    pub fn names(&self) -> VarNames {
        let r = self.rank();
        let mut names = Vec::with_capacity(r + 1);
        if r == 1 {
            names.push("t".to_string());
        } else {
            for cycle in &self.cycles {
                names.push(format!("t{}", prong_letter(cycle[0] + 1)));
            }
        }
        names.push("u".to_string());
        VarNames(names)
    }

    /// The unit monomial `t(letter)^sign` in arity `rank+1`.
    pub fn monomial(&self, position: usize, sign: i64) -> LaurentPoly {
        let arity = self.rank() + 1;
        let mut exps = vec![0i64; arity];
        exps[self.var_of[position]] = sign;
        LaurentPoly::monomial(arity, exps, 1)
    }
}

/// Result of the main computation.
#[derive(Clone, Debug)]
pub struct TeichResult {
    pub theta: LaurentPoly,
    pub lifted_matrix: PolyMatrix,
    pub tmap: TMap,
    pub names: VarNames,
    pub certified: Option<Certification>,
}

/// Pseudo-Anosov certification data for a loop.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certification {
    pub primitive: bool,
    pub pf_eigenvalue: f64,
    pub pf_vector: Vec<f64>,
    pub switch_conditions_hold: bool,
}

impl Certification {
    pub fn certified(&self) -> bool {
        self.primitive && self.switch_conditions_hold
    }
}

/// The transported decoration vectors `w_i = η_i(v_i)` with
/// `η_1 = Id` and `η_{i+1} = η_i ∘ π_i`.
pub fn eta_sequence(lp: &AutomatonLoop) -> Vec<SignedPerm> {
    let n = lp.punctures;
    let mut etas = Vec::with_capacity(lp.moves.len());
    let mut eta = SignedPerm::identity(n);
    for mv in &lp.moves {
        etas.push(eta.clone());
        eta = eta.compose(&mv.prong_perm);
    }
    etas
}

/// Diagonal matrices `D_i = Diag(t(w_i))` of the loop under a t-map.
pub fn diagonal_matrices(lp: &AutomatonLoop, tmap: &TMap) -> Vec<PolyMatrix> {
    let etas = eta_sequence(lp);
    let arity = tmap.rank() + 1;
    lp.moves
        .iter()
        .zip(etas.iter())
        .map(|(mv, eta)| {
            let entries: Vec<LaurentPoly> = mv
                .decorations
                .iter()
                .map(|d| match d {
                    Decoration::Unit => LaurentPoly::one(arity),
                    Decoration::Prong { position, sign } => {
                        tmap.monomial(eta.apply(*position), sign.signum())
                    }
                })
                .collect();
            PolyMatrix::diagonal(entries).expect("uniform arity")
        })
        .collect()
}

/// The lifted incidence matrix `M = M(T₁)D₁ ⋯ M(T_k)D_k · M(R)` over the
/// Laurent ring.
pub fn lifted_matrix(lp: &AutomatonLoop, tmap: &TMap) -> Result<PolyMatrix, TeichError> {
    let arity = tmap.rank() + 1;
    let dim = lp.labels.len();
    let diagonals = diagonal_matrices(lp, tmap);
    let mut acc = PolyMatrix::identity(dim, arity);
    for (mv, diag) in lp.moves.iter().zip(diagonals) {
        let m = PolyMatrix::from_int_rows(&mv.matrix.0, arity);
        acc = acc.mul(&m)?.mul(&diag)?;
    }
    let r = PolyMatrix::from_int_rows(&lp.relabel_matrix().0, arity);
    Ok(acc.mul(&r)?)
}

/// The t-map of a loop, from its composite braid word.
pub fn t_map(lp: &AutomatonLoop) -> TMap {
    let word = BraidWord { strands: lp.punctures, letters: lp.braid_word.clone() };
    TMap::from_word(&word)
}

/// Certifies a loop as pseudo-Anosov: the integer incidence matrix must be
/// primitive and its Perron–Frobenius eigenvector must satisfy the switch
/// conditions of the starting track.
pub fn certify_pseudo_anosov(lp: &AutomatonLoop) -> Certification {
    let m = lp.incidence_matrix();
    let primitive = m.is_primitive();
    // an invariant transverse measure is a left eigenvector: the incidence
    // entry M[α][β] counts β in the image of α, so weights push forward by
    // the transpose
    let (lambda, vector) = m.transpose().pf_eigen(1e-12);
    let switch_conditions_hold = match (&lp.start_track, primitive) {
        (Some(track), true) => track.admissible_weights_f64(&vector, 1e-9),
        (None, true) => true,
        _ => false,
    };
    Certification { primitive, pf_eigenvalue: lambda, pf_vector: vector, switch_conditions_hold }
}

/// Computes the Teichmüller polynomial of the fibered face determined by a
/// certified loop. `override_certification` applies the determinant formula
/// to loops that fail certification, as one may formally do.
pub fn teichmuller_polynomial(
    lp: &AutomatonLoop,
    override_certification: bool,
) -> Result<TeichResult, TeichError> {
    let cert = certify_pseudo_anosov(lp);
    if !cert.certified() && !override_certification {
        let reason = if cert.primitive {
            "PF eigenvector violates a switch condition"
        } else {
            "incidence matrix is not primitive"
        };
        return Err(TeichError::NotCertified(reason.to_string()));
    }
    let tmap = t_map(lp);
    let names = tmap.names();
    let lifted = lifted_matrix(lp, &tmap)?;
    let theta = lifted.char_poly()?;
    Ok(TeichResult {
        theta,
        lifted_matrix: lifted,
        tmap,
        names,
        certified: Some(cert),
    })
}

/// Stretch factor of the monodromy at an integral class in the fibered
/// cone: the largest root of the valuated polynomial.
pub fn stretch_factor(result: &TeichResult, class: &CohomologyClass) -> Result<f64, TeichError> {
    if class.arity() != result.theta.arity() {
        return Err(TeichError::ClassArity(class.arity(), result.theta.arity()));
    }
    let specialized = result.theta.valuate(class)?;
    Ok(largest_root(&specialized)?)
}

/// Integer incidence matrix of the loop (specialization of the lift at all
/// deck variables equal to one).
pub fn loop_matrix(lp: &AutomatonLoop) -> IntMatrix {
    lp.incidence_matrix()
}
