use num::rational::BigRational;
use num::{BigInt, One, Signed, Zero};

use super::poly::LaurentPoly;
use super::RingError;

/// Vertices of the Newton polytope (convex hull of the occurring exponent
/// vectors) in sorted order. Exact in every dimension: the planar case uses
/// a monotone chain, higher dimensions an exact rational feasibility test
/// per point.
pub fn newton_polytope(poly: &LaurentPoly) -> Result<Vec<Vec<i64>>, RingError> {
    if poly.is_zero() {
        return Err(RingError::ZeroPolynomial("Newton polytope"));
    }
    let mut points: Vec<Vec<i64>> = poly.support().into_iter().map(|e| e.0).collect();
    points.sort();
    points.dedup();
    let mut vertices = hull_vertices(&points);
    vertices.sort();
    Ok(vertices)
}

/// Extreme points of the convex hull of a set of lattice points.
pub fn hull_vertices(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if points.len() <= 2 {
        return points.to_vec();
    }
    let dim = points[0].len();
    match dim {
        0 => vec![points[0].clone()],
        1 => {
            let min = points.iter().min().unwrap().clone();
            let max = points.iter().max().unwrap().clone();
            let mut v = vec![min, max];
            v.dedup();
            v
        }
        2 => monotone_chain(points),
        _ => points
            .iter()
            .filter(|p| !in_hull_of_others(p, points))
            .cloned()
            .collect(),
    }
}

fn cross(o: &[i64], a: &[i64], b: &[i64]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn monotone_chain(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Vec<i64>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<i64>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    let mut hull = lower;
    hull.extend(upper);
    if hull.is_empty() {
        // all points collinear: endpoints only
        let min = pts.first().unwrap().clone();
        let max = pts.last().unwrap().clone();
        hull = vec![min, max];
        hull.dedup();
    }
    hull
}

/// Exact test whether `p` lies in the convex hull of the other points:
/// phase-1 simplex over rationals on `Σ λ_q q = p, Σ λ_q = 1, λ ≥ 0`.
fn in_hull_of_others(p: &[i64], points: &[Vec<i64>]) -> bool {
    let others: Vec<&Vec<i64>> = points.iter().filter(|q| q.as_slice() != p).collect();
    if others.is_empty() {
        return false;
    }
    let dim = p.len();
    let rows = dim + 1;
    let cols = others.len();
    // b column, made nonnegative row by row
    let mut a: Vec<Vec<BigRational>> =
        vec![vec![BigRational::zero(); cols + rows]; rows];
    let mut b: Vec<BigRational> = Vec::with_capacity(rows);
    for i in 0..rows {
        let bi = if i < dim { BigInt::from(p[i]) } else { BigInt::one() };
        let flip = bi.is_negative();
        for (j, q) in others.iter().enumerate() {
            let v = if i < dim { BigInt::from(q[i]) } else { BigInt::one() };
            let v = if flip { -v } else { v };
            a[i][j] = BigRational::from_integer(v);
        }
        // artificial variable for the row
        a[i][cols + i] = BigRational::one();
        b.push(BigRational::from_integer(if flip { -bi } else { bi }));
    }
    // phase-1 objective: minimize the sum of artificial variables
    let mut basis: Vec<usize> = (cols..cols + rows).collect();
    let mut obj: Vec<BigRational> = vec![BigRational::zero(); cols + rows];
    let mut obj_val = BigRational::zero();
    for j in 0..cols + rows {
        for i in 0..rows {
            if j >= cols {
                continue;
            }
            obj[j] -= &a[i][j];
        }
    }
    for bi in &b {
        obj_val -= bi;
    }
    loop {
        // Bland's rule: first column with negative reduced cost
        let enter = (0..cols + rows).find(|j| obj[*j].is_negative());
        let enter = match enter {
            Some(j) => j,
            None => break,
        };
        let mut leave: Option<usize> = None;
        let mut best: Option<BigRational> = None;
        for i in 0..rows {
            if a[i][enter].is_positive() {
                let ratio = &b[i] / &a[i][enter];
                let better = match &best {
                    None => true,
                    Some(r) => &ratio < r || (&ratio == r && basis[i] < basis[leave.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let leave = match leave {
            Some(i) => i,
            None => break, // unbounded cannot happen in phase 1
        };
        // pivot
        let pivot = a[leave][enter].clone();
        for v in a[leave].iter_mut() {
            *v /= &pivot;
        }
        b[leave] /= &pivot;
        for i in 0..rows {
            if i != leave && !a[i][enter].is_zero() {
                let f = a[i][enter].clone();
                for j in 0..cols + rows {
                    let d = &a[leave][j] * &f;
                    a[i][j] -= d;
                }
                let d = &b[leave] * &f;
                b[i] -= d;
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for j in 0..cols + rows {
                let d = &a[leave][j] * &f;
                obj[j] -= d;
            }
            let d = &b[leave] * &f;
            obj_val -= d;
        }
        basis[leave] = enter;
    }
    obj_val.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::poly::VarNames;

    fn p2(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, &VarNames::default_for(2)).unwrap()
    }

    #[test]
    fn simplest_theta_polytope() {
        // support {(0,2),(1,1),(0,1),(-1,1),(0,0)} -> vertices drop (0,1)
        let theta = p2("u^2 - u - t*u - t^-1*u + 1");
        let v = newton_polytope(&theta).unwrap();
        assert_eq!(v, vec![vec![-1, 1], vec![0, 0], vec![0, 2], vec![1, 1]]);
    }

    #[test]
    fn monomial_is_a_point() {
        let m = p2("t^3*u^-2");
        assert_eq!(newton_polytope(&m).unwrap(), vec![vec![3, -2]]);
    }

    #[test]
    fn alexander_diamond() {
        // u + u^-1 + t^-1 - 1 + t: hull is the diamond, (0,0) interior
        let d = p2("u + u^-1 + t^-1 - 1 + t");
        let v = newton_polytope(&d).unwrap();
        assert_eq!(v, vec![vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn zero_rejected() {
        assert!(newton_polytope(&LaurentPoly::zero(2)).is_err());
    }

    #[test]
    fn three_dimensional_hull() {
        let pts: Vec<Vec<i64>> = vec![
            vec![0, 0, 0],
            vec![2, 0, 0],
            vec![0, 2, 0],
            vec![0, 0, 2],
            vec![1, 1, 1], // on the facet x+y+z=2... actually inside? sum=3>2: outside
            vec![1, 0, 0], // edge midpoint: not a vertex
        ];
        let mut v = hull_vertices(&pts);
        v.sort();
        assert!(v.contains(&vec![0, 0, 0]));
        assert!(v.contains(&vec![1, 1, 1]));
        assert!(!v.contains(&vec![1, 0, 0]));
        assert_eq!(v.len(), 5);
    }
}
