//! Alexander and Teichmüller norms, fibered-face identification through
//! Newton-polytope duality, and the Thurston norm on the fibered cone.
//!
//! A norm ball is carried by a polynomial: the norm of a class is the width
//! of the polynomial's support in that direction, `sup α(g − h)` over
//! support pairs, and equals the width over polytope vertices by convexity.
//! The face maximizing the pairing with a reference fibered class describes
//! the fibered cone: a class lies inside exactly when its maximizing vertex
//! set coincides with the reference face.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::{newton_polytope, CohomologyClass, LaurentPoly, RingError};

#[derive(Debug, Error)]
pub enum NormError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("class has arity {0}, expected {1}")]
    ClassArity(usize, usize),
    #[error("class {0:?} lies outside the fibered cone")]
    OutsideCone(Vec<i64>),
    #[error("reference class degenerates: every vertex maximizes")]
    DegenerateFace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormKind {
    Alexander,
    Teichmuller,
}

/// A seminorm on cohomology carried by a Laurent polynomial.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormBall {
    pub kind: NormKind,
    pub source: LaurentPoly,
    pub polytope: Vec<Vec<i64>>,
}

impl NormBall {
    pub fn new(kind: NormKind, source: LaurentPoly) -> Result<Self, NormError> {
        let polytope = newton_polytope(&source)?;
        Ok(NormBall { kind, source, polytope })
    }

    /// `sup α(g − h)` over pairs of polytope vertices.
    pub fn norm(&self, class: &CohomologyClass) -> Result<i64, NormError> {
        let arity = self.source.arity();
        if class.arity() != arity {
            return Err(NormError::ClassArity(class.arity(), arity));
        }
        let values: Vec<i64> = self
            .polytope
            .iter()
            .map(|v| v.iter().zip(&class.0).map(|(a, b)| a * b).sum())
            .collect();
        let max = values.iter().max().copied().unwrap_or(0);
        let min = values.iter().min().copied().unwrap_or(0);
        Ok(max - min)
    }

    /// Same width computed on the full support; equals [`norm`] by
    /// convexity.
    pub fn norm_on_support(&self, class: &CohomologyClass) -> Result<i64, NormError> {
        if class.arity() != self.source.arity() {
            return Err(NormError::ClassArity(class.arity(), self.source.arity()));
        }
        let values: Vec<i64> = self.source.support().iter().map(|e| e.dot(class)).collect();
        let max = values.iter().max().copied().unwrap_or(0);
        let min = values.iter().min().copied().unwrap_or(0);
        Ok(max - min)
    }
}

/// The face of the Newton polytope dual to a fibered cone: the vertex set
/// maximizing the pairing with the reference class.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiberedFace {
    pub vertices: Vec<Vec<i64>>,
    pub reference: CohomologyClass,
    polytope: Vec<Vec<i64>>,
}

impl FiberedFace {
    /// Vertex subset of the maximizers at `class`.
    fn maximizers(polytope: &[Vec<i64>], class: &CohomologyClass) -> Vec<Vec<i64>> {
        let values: Vec<i64> = polytope
            .iter()
            .map(|v| v.iter().zip(&class.0).map(|(a, b)| a * b).sum())
            .collect();
        let max = values.iter().max().copied().unwrap_or(0);
        polytope
            .iter()
            .zip(values)
            .filter(|(_, val)| *val == max)
            .map(|(v, _)| v.clone())
            .collect()
    }

    /// Membership in the open cone over the face: the maximizing vertex set
    /// at `class` equals the reference face.
    pub fn cone_contains(&self, class: &CohomologyClass) -> bool {
        if class.is_zero() {
            return false;
        }
        Self::maximizers(&self.polytope, class) == self.vertices
    }
}

/// The polytope face of `theta` maximizing the pairing with a reference
/// fibered class (for a loop's own fibration this is `(0,…,0,1)`).
pub fn fibered_face(
    theta: &LaurentPoly,
    reference: &CohomologyClass,
) -> Result<FiberedFace, NormError> {
    if reference.arity() != theta.arity() {
        return Err(NormError::ClassArity(reference.arity(), theta.arity()));
    }
    let polytope = newton_polytope(theta)?;
    let vertices = FiberedFace::maximizers(&polytope, reference);
    if vertices.len() == polytope.len() && polytope.len() > 1 {
        return Err(NormError::DegenerateFace);
    }
    Ok(FiberedFace { vertices, reference: reference.clone(), polytope })
}

/// The Thurston norm of an integral class in the fibered cone, where it
/// agrees with the Alexander norm (and with the Teichmüller norm of the
/// face). Refuses classes outside the cone.
pub fn thurston_norm_on_cone(
    ball: &NormBall,
    face: &FiberedFace,
    class: &CohomologyClass,
) -> Result<i64, NormError> {
    if !face.cone_contains(class) {
        return Err(NormError::OutsideCone(class.0.clone()));
    }
    ball.norm(class)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::VarNames;

    fn p2(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, &VarNames::default_for(2)).unwrap()
    }

    fn alexander_ball() -> NormBall {
        // Δ = u + u^-1 - (-t^-1 + 1 - t)
        NormBall::new(NormKind::Alexander, p2("u + u^-1 + t^-1 - 1 + t")).unwrap()
    }

    fn theta() -> LaurentPoly {
        p2("u^2 - u - t*u - t^-1*u + 1")
    }

    #[test]
    fn alexander_norm_formula() {
        let ball = alexander_ball();
        for s in -5i64..=5 {
            for y in -5i64..=5 {
                let class = CohomologyClass(vec![s, y]);
                let expect = (2 * s.abs()).max(2 * y.abs());
                assert_eq!(ball.norm(&class).unwrap(), expect, "at ({s},{y})");
                assert_eq!(ball.norm_on_support(&class).unwrap(), expect);
            }
        }
    }

    #[test]
    fn teichmuller_norm_at_1_2() {
        let ball = NormBall::new(NormKind::Teichmuller, theta()).unwrap();
        assert_eq!(ball.norm(&CohomologyClass(vec![1, 2])).unwrap(), 4);
    }

    #[test]
    fn fibered_face_of_simplest_braid() {
        let face = fibered_face(&theta(), &CohomologyClass(vec![0, 1])).unwrap();
        assert_eq!(face.vertices, vec![vec![0, 2]]);
        // cone = { (s,y) : y > |s| }
        for s in -4i64..=4 {
            for y in -4i64..=4 {
                let inside = y > s.abs();
                assert_eq!(
                    face.cone_contains(&CohomologyClass(vec![s, y])),
                    inside,
                    "({s},{y})"
                );
            }
        }
        // opposite reference gives the opposite face
        let opposite = fibered_face(&theta(), &CohomologyClass(vec![0, -1])).unwrap();
        assert_eq!(opposite.vertices, vec![vec![0, 0]]);
        assert!(opposite.cone_contains(&CohomologyClass(vec![0, -1])));
        assert!(!opposite.cone_contains(&CohomologyClass(vec![0, 1])));
    }

    #[test]
    fn thurston_norm_values() {
        let ball = alexander_ball();
        let face = fibered_face(&theta(), &CohomologyClass(vec![0, 1])).unwrap();
        assert_eq!(
            thurston_norm_on_cone(&ball, &face, &CohomologyClass(vec![0, 1])).unwrap(),
            2
        );
        assert_eq!(
            thurston_norm_on_cone(&ball, &face, &CohomologyClass(vec![1, 2])).unwrap(),
            4
        );
        assert!(matches!(
            thurston_norm_on_cone(&ball, &face, &CohomologyClass(vec![2, 1])),
            Err(NormError::OutsideCone(_))
        ));
    }

    #[test]
    fn alexander_equals_teichmuller_on_cone_samples() {
        let alexander = alexander_ball();
        let teich = NormBall::new(NormKind::Teichmuller, theta()).unwrap();
        let face = fibered_face(&theta(), &CohomologyClass(vec![0, 1])).unwrap();
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut sampled = 0;
        while sampled < 100 {
            let s = (next() % 19) as i64 - 9;
            let y = (next() % 12) as i64 + 1;
            let class = CohomologyClass(vec![s, y]);
            if !face.cone_contains(&class) {
                continue;
            }
            assert_eq!(
                alexander.norm(&class).unwrap(),
                teich.norm(&class).unwrap(),
                "norms at ({s},{y})"
            );
            sampled += 1;
        }
    }

    #[test]
    fn homogeneity_and_triangle_inequality() {
        let ball = alexander_ball();
        let classes = [
            CohomologyClass(vec![0, 1]),
            CohomologyClass(vec![1, 2]),
            CohomologyClass(vec![-3, 4]),
            CohomologyClass(vec![2, -5]),
        ];
        for a in &classes {
            for k in 1i64..=4 {
                let scaled = CohomologyClass(a.0.iter().map(|x| k * x).collect());
                assert_eq!(ball.norm(&scaled).unwrap(), k * ball.norm(a).unwrap());
            }
            for b in &classes {
                let sum = CohomologyClass(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect());
                assert!(
                    ball.norm(&sum).unwrap() <= ball.norm(a).unwrap() + ball.norm(b).unwrap()
                );
            }
        }
        // symmetry
        for a in &classes {
            let neg = CohomologyClass(a.0.iter().map(|x| -x).collect());
            assert_eq!(ball.norm(a).unwrap(), ball.norm(&neg).unwrap());
        }
    }
}
