//! Combinatorial model of labeled standard train tracks on the n-punctured
//! disc.
//!
//! A track is a ribbon graph: vertices carry a counterclockwise rotation of
//! darts and every dart occupies one of the two tangent rays at its vertex.
//! Infinitesimal edges are grouped into polygons — one prong polygon around
//! each puncture plus optional interior polygons — and every vertex lies on
//! exactly one polygon. Real edges connect polygon vertices. Standard
//! position is not stored geometrically: it is recovered from the face
//! structure (each prong polygon must expose a side to the outer face, and
//! the exposures must appear there in puncture order).
//!
//! Folding reroutes one real edge along the cusp it shares with another
//! edge; when the slide continues around a prong polygon the result dips
//! below that puncture once and the track records the crossing as a wrap
//! flag. Standardization consumes the flag by a braid of the form
//! `δ±[l,m]`, returning the standard track, the braid word, and the signed
//! permutation of the prong labels.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num::rational::Ratio;
use num::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Rational = Ratio<i64>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TrackError {
    #[error("invalid track: {0}")]
    Invalid(String),
    #[error("unknown edge label {0}")]
    UnknownLabel(String),
    #[error("edges {0} and {1} do not form a cusp")]
    NoCusp(String, String),
    #[error("edge {0} is not real")]
    NotReal(String),
    #[error("track is neither standard nor almost standard: {0}")]
    NotStandardizable(String),
    #[error("fold failed: {0}")]
    Fold(String),
}

/// Which of the two tangent directions a dart occupies at its vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ray {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeKind {
    Real,
    Infinitesimal,
}

/// Half-edge: one end of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dart {
    pub edge: usize,
    pub end: u8,
}

impl Dart {
    pub fn reversed(self) -> Dart {
        Dart { edge: self.edge, end: 1 - self.end }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeEnd {
    pub vertex: usize,
    pub ray: Ray,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub label: String,
    pub kind: EdgeKind,
    pub ends: [EdgeEnd; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    /// Counterclockwise cyclic order of the darts leaving this vertex.
    pub rotation: Vec<Dart>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PolygonKind {
    /// Encloses the puncture at this 1-based position.
    Prong { position: usize },
    Interior,
}

/// Cycle of infinitesimal edges. `sides[i]` joins `vertices[i]` to
/// `vertices[(i+1) % k]`; a monogon stores one vertex and one looping side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polygon {
    pub kind: PolygonKind,
    pub label: String,
    pub vertices: Vec<usize>,
    pub sides: Vec<usize>,
}

/// Which side of a puncture the anomalous edge finally enters from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// "Passes below puncture" flag on a real edge of an almost-standard track.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wrap {
    pub edge: usize,
    /// End of the edge that wound around the polygon.
    pub end: u8,
    /// 1-based puncture position the edge dips below.
    pub position: usize,
    pub enter: Side,
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrainTrack {
    pub punctures: usize,
    pub polygons: Vec<Polygon>,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    /// At most one entry on an almost-standard track.
    pub wraps: Vec<Wrap>,
}

/// One fold instruction: `from_edge` is folded onto `onto_edge` across the
/// cusp they form at `shared_vertex`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldSpec {
    pub from_edge: String,
    pub onto_edge: String,
    pub shared_vertex: Option<usize>,
}

impl FoldSpec {
    pub fn new(from_edge: &str, onto_edge: &str) -> Self {
        FoldSpec {
            from_edge: from_edge.to_string(),
            onto_edge: onto_edge.to_string(),
            shared_vertex: None,
        }
    }
}

/// Nonnegative rational weights on the real edges.
#[derive(Clone, Debug, Default)]
pub struct Weights(pub BTreeMap<String, Rational>);

impl Weights {
    pub fn from_pairs(pairs: &[(&str, i64)]) -> Self {
        Weights(
            pairs
                .iter()
                .map(|(l, w)| (l.to_string(), Rational::from_integer(*w)))
                .collect(),
        )
    }
}

/// Signed permutation of the prong labels: position `i` (0-based) maps to
/// `targets[i]` carrying the rotation exponent `exps[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedPerm {
    pub targets: Vec<usize>,
    pub exps: Vec<i64>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm { targets: (0..n).collect(), exps: vec![0; n] }
    }

    pub fn is_identity(&self) -> bool {
        self.targets.iter().enumerate().all(|(i, t)| i == *t)
            && self.exps.iter().all(|e| *e == 0)
    }

    /// `self ∘ first`: apply `first`, then `self`; exponents add along the way.
    pub fn compose(&self, first: &SignedPerm) -> SignedPerm {
        let n = self.targets.len();
        assert_eq!(n, first.targets.len());
        let mut targets = vec![0; n];
        let mut exps = vec![0; n];
        for i in 0..n {
            let mid = first.targets[i];
            targets[i] = self.targets[mid];
            exps[i] = first.exps[i] + self.exps[mid];
        }
        SignedPerm { targets, exps }
    }

    pub fn apply(&self, i: usize) -> usize {
        self.targets[i]
    }

    /// Cycles of the underlying permutation, each starting at its minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.targets.len();
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
                i = self.targets[i];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// `(A,B,C) -> (C^+1, A^-1, B)` style display.
    pub fn display(&self) -> String {
        let images: Vec<String> = (0..self.targets.len())
            .map(|i| {
                let mut s = prong_letter(self.targets[i] + 1);
                match self.exps[i] {
                    0 => {}
                    1 => s.push('+'),
                    -1 => s.push('-'),
                    e => s.push_str(&format!("^{e}")),
                }
                s
            })
            .collect();
        format!("({})", images.join(","))
    }
}

/// Spells the canonical label of the prong at 1-based position `pos`.
pub fn prong_letter(pos: usize) -> String {
    if (1..=26).contains(&pos) {
        ((b'A' + (pos - 1) as u8) as char).to_string()
    } else {
        format!("P{pos}")
    }
}

/// Small dense integer matrix used for fold incidence matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix(pub Vec<Vec<i64>>);

impl IntMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut rows = vec![vec![0; dim]; dim];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 1;
        }
        IntMatrix(rows)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.dim();
        assert_eq!(n, other.dim());
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..n {
            for k in 0..n {
                if self.0[i][k] == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i][j] += self.0[i][k] * other.0[k][j];
                }
            }
        }
        IntMatrix(out)
    }

    pub fn transpose(&self) -> IntMatrix {
        let n = self.dim();
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                out[j][i] = self.0[i][j];
            }
        }
        IntMatrix(out)
    }

    /// Applies the matrix to a weight vector: `w ↦ M·w`.
    pub fn apply(&self, w: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            for j in 0..n {
                out[i] += Rational::from_integer(self.0[i][j]) * w[j];
            }
        }
        out
    }

    /// Primitivity of a nonnegative matrix: some power up to the Wielandt
    /// bound `(d−1)² + 1` is strictly positive. Decided on the boolean
    /// support so large entries cannot overflow.
    pub fn is_primitive(&self) -> bool {
        let n = self.dim();
        if n == 0 {
            return false;
        }
        let bound = (n - 1) * (n - 1) + 1;
        let step: Vec<Vec<bool>> =
            self.0.iter().map(|r| r.iter().map(|x| *x > 0).collect()).collect();
        let mut reach = step.clone();
        for _ in 1..=bound {
            if reach.iter().all(|r| r.iter().all(|x| *x)) {
                return true;
            }
            let mut next = vec![vec![false; n]; n];
            for i in 0..n {
                for k in 0..n {
                    if reach[i][k] {
                        for j in 0..n {
                            if step[k][j] {
                                next[i][j] = true;
                            }
                        }
                    }
                }
            }
            if next == reach {
                return false;
            }
            reach = next;
        }
        reach.iter().all(|r| r.iter().all(|x| *x))
    }

    /// Perron–Frobenius eigenvalue and right eigenvector by power iteration.
    pub fn pf_eigen(&self, tol: f64) -> (f64, Vec<f64>) {
        let n = self.dim();
        let mut v = vec![1.0f64; n];
        let mut lambda = 0.0f64;
        for _ in 0..100_000 {
            let mut w = vec![0.0f64; n];
            for i in 0..n {
                for j in 0..n {
                    w[i] += self.0[i][j] as f64 * v[j];
                }
            }
            let norm: f64 = w.iter().map(|x| x.abs()).sum();
            if norm == 0.0 {
                return (0.0, v);
            }
            for x in w.iter_mut() {
                *x /= norm;
            }
            let mut new_lambda = 0.0f64;
            for i in 0..n {
                if v[i].abs() > 1e-14 {
                    let mut wi = 0.0;
                    for j in 0..n {
                        wi += self.0[i][j] as f64 * v[j];
                    }
                    new_lambda = new_lambda.max(wi / v[i]);
                }
            }
            let done = (new_lambda - lambda).abs() < tol;
            lambda = new_lambda;
            v = w;
            if done {
                break;
            }
        }
        let total: f64 = v.iter().sum();
        if total > 0.0 {
            for x in v.iter_mut() {
                *x /= total;
            }
        }
        (lambda, v)
    }
}

/// Outcome of a fold attempt.
#[derive(Clone, Debug)]
pub struct FoldResult {
    pub track: TrainTrack,
    pub foldable: bool,
    /// Incidence matrix on the real-edge weight space, rows and columns in
    /// sorted label order.
    pub matrix: IntMatrix,
    /// Vertex carrying the new cusp.
    pub cusp_vertex: Option<usize>,
    /// Set when the fold wound around a prong polygon.
    pub wrap: Option<Wrap>,
}

/// Result of standardization.
#[derive(Clone, Debug)]
pub struct Standardization {
    pub track: TrainTrack,
    /// Braid word, written left to right; the rightmost letter acts first.
    /// Letter `+i` is the Artin generator σ_i, `-i` its inverse.
    pub braid: Vec<i32>,
    pub prong_perm: SignedPerm,
}

struct Faces {
    /// Orbits of darts; each face is traversed with itself on the left.
    orbits: Vec<Vec<Dart>>,
    face_of: HashMap<Dart, usize>,
}

impl TrainTrack {
    pub fn real_labels(&self) -> Vec<String> {
        let mut labels: Vec<String> = self
            .edges
            .iter()
            .filter(|e| e.kind == EdgeKind::Real)
            .map(|e| e.label.clone())
            .collect();
        labels.sort();
        labels
    }

    pub fn edge_by_label(&self, label: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.label == label)
    }

    pub fn prong_polygon(&self, position: usize) -> Option<&Polygon> {
        self.polygons
            .iter()
            .find(|p| p.kind == PolygonKind::Prong { position })
    }

    pub fn interior_polygons(&self) -> Vec<&Polygon> {
        self.polygons
            .iter()
            .filter(|p| p.kind == PolygonKind::Interior)
            .collect()
    }

    fn vertex_of(&self, d: Dart) -> usize {
        self.edges[d.edge].ends[d.end as usize].vertex
    }

    fn ray_of(&self, d: Dart) -> Ray {
        self.edges[d.edge].ends[d.end as usize].ray
    }

    fn ccw_next(&self, d: Dart) -> Dart {
        let v = &self.vertices[self.vertex_of(d)];
        let i = v.rotation.iter().position(|x| *x == d).unwrap();
        v.rotation[(i + 1) % v.rotation.len()]
    }

    fn ccw_prev(&self, d: Dart) -> Dart {
        let v = &self.vertices[self.vertex_of(d)];
        let i = v.rotation.iter().position(|x| *x == d).unwrap();
        v.rotation[(i + v.rotation.len() - 1) % v.rotation.len()]
    }

    fn faces(&self) -> Faces {
        let mut orbits = Vec::new();
        let mut face_of = HashMap::new();
        for e in 0..self.edges.len() {
            for end in 0..2u8 {
                let start = Dart { edge: e, end };
                if face_of.contains_key(&start) {
                    continue;
                }
                let mut orbit = Vec::new();
                let mut d = start;
                loop {
                    orbit.push(d);
                    face_of.insert(d, orbits.len());
                    d = self.ccw_next(d.reversed());
                    if d == start {
                        break;
                    }
                }
                orbits.push(orbit);
            }
        }
        Faces { orbits, face_of }
    }

    /// Corners of a face that are cusps (consecutive boundary darts on the
    /// same tangent ray).
    fn face_cusps(&self, orbit: &[Dart]) -> usize {
        let mut count = 0;
        for (i, d) in orbit.iter().enumerate() {
            let arrived = d.reversed();
            let next = orbit[(i + 1) % orbit.len()];
            if self.vertex_of(arrived) == self.vertex_of(next)
                && self.ray_of(arrived) == self.ray_of(next)
            {
                count += 1;
            }
        }
        count
    }

    /// All cusps as ordered pairs `(a, b)` with `b` counterclockwise after
    /// `a` on the same ray.
    pub fn cusps(&self) -> Vec<(Dart, Dart)> {
        let mut out = Vec::new();
        for v in &self.vertices {
            let k = v.rotation.len();
            for i in 0..k {
                let a = v.rotation[i];
                let b = v.rotation[(i + 1) % k];
                if a != b && self.ray_of(a) == self.ray_of(b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// For each polygon, the face index of its interior.
    fn polygon_interior_faces(&self, faces: &Faces) -> Result<Vec<usize>, TrackError> {
        let mut out = Vec::with_capacity(self.polygons.len());
        for poly in &self.polygons {
            let side_set: HashSet<usize> = poly.sides.iter().copied().collect();
            let mut found = None;
            for (fi, orbit) in faces.orbits.iter().enumerate() {
                if orbit.len() == poly.sides.len()
                    && orbit.iter().all(|d| side_set.contains(&d.edge))
                {
                    let distinct: HashSet<usize> = orbit.iter().map(|d| d.edge).collect();
                    if distinct.len() == poly.sides.len() {
                        if found.is_some() {
                            return Err(TrackError::Invalid(format!(
                                "polygon {} has two interior candidates",
                                poly.label
                            )));
                        }
                        found = Some(fi);
                    }
                }
            }
            out.push(found.ok_or_else(|| {
                TrackError::Invalid(format!("polygon {} has no interior face", poly.label))
            })?);
        }
        Ok(out)
    }

    /// The outer-face exposure of the prong polygons: for each position a
    /// dart of one of its sides lying on the common outer face, appearing
    /// there in ascending cyclic order. Present exactly when the embedding
    /// data admits standard position.
    fn standard_exposure(&self) -> Result<(usize, Vec<Dart>), TrackError> {
        let faces = self.faces();
        let interior = self.polygon_interior_faces(&faces)?;
        let interior_set: HashSet<usize> = interior.iter().copied().collect();
        let mut candidates: Vec<Vec<Dart>> = vec![Vec::new(); self.punctures];
        for (pi, poly) in self.polygons.iter().enumerate() {
            let position = match poly.kind {
                PolygonKind::Prong { position } => position,
                PolygonKind::Interior => continue,
            };
            for side in &poly.sides {
                for end in 0..2u8 {
                    let d = Dart { edge: *side, end };
                    let f = faces.face_of[&d];
                    if f != interior[pi] && !interior_set.contains(&f) {
                        candidates[position - 1].push(d);
                    }
                }
            }
        }
        for f in 0..faces.orbits.len() {
            if interior_set.contains(&f) {
                continue;
            }
            let choice: Vec<Vec<usize>> = candidates
                .iter()
                .map(|cands| {
                    cands
                        .iter()
                        .filter(|d| faces.face_of[*d] == f)
                        .map(|d| faces.orbits[f].iter().position(|x| x == d).unwrap())
                        .collect()
                })
                .collect();
            if choice.iter().any(|c| c.is_empty()) {
                continue;
            }
            if let Some(picks) = pick_cyclic_ascending(&choice) {
                let darts = picks.iter().map(|idx| faces.orbits[f][*idx]).collect();
                return Ok((f, darts));
            }
        }
        Err(TrackError::NotStandardizable(
            "no outer face exposes the punctures in order".to_string(),
        ))
    }

    /// True when the embedding data admits standard position: no wrap flags
    /// and the prong polygons are exposed to a single outer face in puncture
    /// order.
    pub fn is_standard(&self) -> bool {
        self.wraps.is_empty() && self.standard_exposure().is_ok()
    }

    pub fn is_almost_standard(&self) -> bool {
        self.wraps.len() == 1
    }

    /// Number of cusps on the outer face; this is the prong count of the
    /// boundary (axis) singularity.
    pub fn outer_cusps(&self) -> Result<usize, TrackError> {
        let (outer, _) = self.standard_exposure()?;
        let faces = self.faces();
        Ok(self.face_cusps(&faces.orbits[outer]))
    }

    /// Full validation: structural invariants first, then the embedding
    /// checks. Returns the first violated invariant.
    pub fn validate(&self) -> Result<(), TrackError> {
        let fail = |msg: String| Err(TrackError::Invalid(msg));
        if self.punctures == 0 {
            return fail("no punctures".into());
        }
        let mut real_labels = HashSet::new();
        for e in &self.edges {
            if e.kind == EdgeKind::Real && !real_labels.insert(e.label.clone()) {
                return fail(format!("duplicate real label {}", e.label));
            }
        }
        let mut positions = HashSet::new();
        for p in &self.polygons {
            if p.vertices.len() != p.sides.len() || p.vertices.is_empty() {
                return fail(format!("polygon {} cycle malformed", p.label));
            }
            if let PolygonKind::Prong { position } = p.kind {
                if position == 0 || position > self.punctures || !positions.insert(position) {
                    return fail(format!("polygon {} has bad position", p.label));
                }
            }
            let k = p.vertices.len();
            for i in 0..k {
                let side = &self.edges[p.sides[i]];
                if side.kind != EdgeKind::Infinitesimal {
                    return fail(format!("polygon {} side {i} not infinitesimal", p.label));
                }
                let (a, b) = (p.vertices[i], p.vertices[(i + 1) % k]);
                let (x, y) = (side.ends[0].vertex, side.ends[1].vertex);
                if (x, y) != (a, b) && (x, y) != (b, a) {
                    return fail(format!("polygon {} side {i} detached", p.label));
                }
            }
        }
        if positions.len() != self.punctures {
            return fail("missing prong polygon".into());
        }
        let mut owned = vec![false; self.vertices.len()];
        for p in &self.polygons {
            for v in &p.vertices {
                if owned[*v] {
                    return fail(format!("vertex {v} on two polygons"));
                }
                owned[*v] = true;
            }
        }
        if !owned.iter().all(|x| *x) {
            return fail("vertex not on any polygon".into());
        }
        let mut seen_darts = HashSet::new();
        for (vi, v) in self.vertices.iter().enumerate() {
            if v.rotation.len() < 3 {
                return fail(format!("vertex {vi} has valence {} < 3", v.rotation.len()));
            }
            let mut rays = (false, false);
            for d in &v.rotation {
                if d.edge >= self.edges.len() {
                    return fail(format!("vertex {vi} rotation has bad edge"));
                }
                if self.vertex_of(*d) != vi {
                    return fail(format!("dart at vertex {vi} points elsewhere"));
                }
                if !seen_darts.insert(*d) {
                    return fail(format!("dart listed twice at vertex {vi}"));
                }
                match self.ray_of(*d) {
                    Ray::Plus => rays.0 = true,
                    Ray::Minus => rays.1 = true,
                }
            }
            if !(rays.0 && rays.1) {
                return fail(format!("vertex {vi} has all darts on one ray"));
            }
        }
        if seen_darts.len() != 2 * self.edges.len() {
            return fail("edge end missing from its rotation".into());
        }
        let mut visited = vec![false; self.vertices.len()];
        let mut stack = vec![0usize];
        if !self.vertices.is_empty() {
            visited[0] = true;
        }
        while let Some(v) = stack.pop() {
            for d in &self.vertices[v].rotation {
                let w = self.vertex_of(d.reversed());
                if !visited[w] {
                    visited[w] = true;
                    stack.push(w);
                }
            }
        }
        if !visited.iter().all(|x| *x) {
            return fail("track is disconnected".into());
        }
        let faces = self.faces();
        let euler = self.vertices.len() as i64 - self.edges.len() as i64
            + faces.orbits.len() as i64;
        if euler != 2 {
            return fail(format!("Euler characteristic {euler} != 2 (genus > 0)"));
        }
        let interior = self.polygon_interior_faces(&faces)?;
        let interior_set: HashSet<usize> = interior.iter().copied().collect();
        for (fi, orbit) in faces.orbits.iter().enumerate() {
            if !interior_set.contains(&fi) && self.face_cusps(orbit) == 0 {
                return fail(format!("complementary face {fi} has no cusp"));
            }
        }
        for (pi, p) in self.polygons.iter().enumerate() {
            let cusps = self.face_cusps(&faces.orbits[interior[pi]]);
            if cusps != p.sides.len() {
                return fail(format!(
                    "polygon {} interior has {cusps} cusps, expected {}",
                    p.label,
                    p.sides.len()
                ));
            }
        }
        if self.wraps.is_empty() {
            self.standard_exposure()?;
        } else if self.wraps.len() > 1 {
            return fail("more than one wrap flag".into());
        }
        Ok(())
    }

    /// Textual diagnostics; empty iff the track is valid.
    pub fn diagnostics(&self) -> Vec<String> {
        match self.validate() {
            Ok(()) => Vec::new(),
            Err(e) => vec![e.to_string()],
        }
    }

    /// Multiset of cusp counts over complementary faces, used to check that
    /// folding preserves the face census.
    pub fn face_census(&self) -> Vec<usize> {
        let faces = self.faces();
        let mut census: Vec<usize> =
            faces.orbits.iter().map(|o| self.face_cusps(o)).collect();
        census.sort();
        census
    }

    fn resolve_cusp(&self, spec: &FoldSpec) -> Result<(Dart, Dart), TrackError> {
        let e1 = self
            .edge_by_label(&spec.from_edge)
            .ok_or_else(|| TrackError::UnknownLabel(spec.from_edge.clone()))?;
        let e2 = self
            .edge_by_label(&spec.onto_edge)
            .ok_or_else(|| TrackError::UnknownLabel(spec.onto_edge.clone()))?;
        if self.edges[e1].kind != EdgeKind::Real {
            return Err(TrackError::NotReal(spec.from_edge.clone()));
        }
        for (a, b) in self.cusps() {
            for (d1, d2) in [(a, b), (b, a)] {
                if d1.edge == e1 && d2.edge == e2 {
                    if let Some(v) = spec.shared_vertex {
                        if self.vertex_of(d1) != v {
                            continue;
                        }
                    }
                    return Ok((d1, d2));
                }
            }
        }
        Err(TrackError::NoCusp(spec.from_edge.clone(), spec.onto_edge.clone()))
    }

    fn remove_dart(&mut self, d: Dart) {
        let v = self.vertex_of(d);
        self.vertices[v].rotation.retain(|x| *x != d);
    }

    /// Inserts `d` at `anchor`'s vertex immediately counterclockwise after
    /// (`after == true`) or before `anchor`.
    fn insert_dart(&mut self, d: Dart, anchor: Dart, after: bool, ray: Ray) {
        let v = self.vertex_of(anchor);
        let idx = self.vertices[v]
            .rotation
            .iter()
            .position(|x| *x == anchor)
            .unwrap();
        let at = if after { idx + 1 } else { idx };
        self.vertices[v].rotation.insert(at, d);
        self.edges[d.edge].ends[d.end as usize] = EdgeEnd { vertex: v, ray };
    }

    /// Outer-face darts of the prong polygon sides of a standard track; a
    /// secondary fold over one of these dips below the puncture.
    fn exposed_side_darts(&self) -> HashSet<Dart> {
        let mut out = HashSet::new();
        if let Ok((outer, _)) = self.standard_exposure() {
            let faces = self.faces();
            for poly in &self.polygons {
                if matches!(poly.kind, PolygonKind::Prong { .. }) {
                    for side in &poly.sides {
                        for end in 0..2u8 {
                            let d = Dart { edge: *side, end };
                            if faces.face_of[&d] == outer {
                                out.insert(d);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn polygon_of_vertex(&self, v: usize) -> usize {
        self.polygons
            .iter()
            .position(|p| p.vertices.contains(&v))
            .expect("vertex on no polygon")
    }

    /// Performs the folding operation. When the cusp determined by the
    /// continuing edge lies on the same side, the fold is obstructed:
    /// `foldable` is false and the track is returned unchanged.
    pub fn fold(&self, spec: &FoldSpec) -> Result<(TrainTrack, bool), TrackError> {
        let r = self.fold_full(spec)?;
        Ok((r.track, r.foldable))
    }

    /// Folding with full bookkeeping (incidence matrix, wrap flag, cusp).
    pub fn fold_full(&self, spec: &FoldSpec) -> Result<FoldResult, TrackError> {
        if !self.wraps.is_empty() {
            return Err(TrackError::Fold("cannot fold an almost-standard track".into()));
        }
        let (d1, d2) = self.resolve_cusp(spec)?;
        let exposed = self.exposed_side_darts();
        let ccw_after = self.ccw_next(d2) == d1;
        let mut track = self.clone();
        let moving = d1;
        let mut over = d2;
        let mut wrap: Option<Wrap> = None;
        let mut steps = 0usize;
        let cusp_vertex;
        loop {
            steps += 1;
            if steps > 2 * track.edges.len() + 4 {
                return Err(TrackError::Fold("folding did not terminate".into()));
            }
            let far = over.reversed();
            let continuing = if ccw_after {
                track.ccw_prev(far)
            } else {
                track.ccw_next(far)
            };
            if continuing == moving || continuing == far {
                return Err(TrackError::Fold("degenerate fold".into()));
            }
            if track.ray_of(continuing) == track.ray_of(far) {
                if steps == 1 {
                    return Ok(FoldResult {
                        track: self.clone(),
                        foldable: false,
                        matrix: IntMatrix::identity(self.real_labels().len()),
                        cusp_vertex: None,
                        wrap: None,
                    });
                }
                return Err(TrackError::Fold("secondary fold obstructed".into()));
            }
            track.remove_dart(moving);
            let ray = track.ray_of(continuing);
            track.insert_dart(moving, far, !ccw_after, ray);
            if track.edges[over.edge].kind == EdgeKind::Infinitesimal {
                let poly = track.polygon_of_vertex(track.vertex_of(far));
                if let PolygonKind::Prong { position } = track.polygons[poly].kind {
                    if exposed.contains(&over) || exposed.contains(&over.reversed()) {
                        // wound below the puncture; the exposed side descends
                        // on the left, so traversing it lands on the right
                        let enter = if exposed.contains(&over) {
                            Side::Right
                        } else {
                            Side::Left
                        };
                        wrap = Some(Wrap {
                            edge: moving.edge,
                            end: moving.end,
                            position,
                            enter,
                        });
                    }
                }
            }
            if track.edges[continuing.edge].kind == EdgeKind::Infinitesimal {
                over = continuing;
            } else {
                cusp_vertex = track.vertex_of(moving);
                break;
            }
        }
        let labels = self.real_labels();
        let mut matrix = IntMatrix::identity(labels.len());
        if self.edges[d2.edge].kind == EdgeKind::Real {
            let row = labels
                .iter()
                .position(|l| *l == self.edges[d1.edge].label)
                .unwrap();
            let col = labels
                .iter()
                .position(|l| *l == self.edges[d2.edge].label)
                .unwrap();
            matrix.0[row][col] += 1;
        }
        track.wraps = wrap.clone().into_iter().collect();
        Ok(FoldResult { track, foldable: true, matrix, cusp_vertex: Some(cusp_vertex), wrap })
    }

    /// Incidence matrix of a legal fold, acting on the real-edge weight
    /// space (rows and columns in sorted label order).
    pub fn fold_matrix(&self, spec: &FoldSpec) -> Result<IntMatrix, TrackError> {
        let r = self.fold_full(spec)?;
        if !r.foldable {
            return Err(TrackError::Fold("fold is obstructed".into()));
        }
        Ok(r.matrix)
    }

    /// Re-seats the prong polygons according to a position permutation,
    /// as a braid-only move does.
    pub fn rotate_positions(&self, perm: &SignedPerm) -> TrainTrack {
        self.with_positions_permuted(perm)
    }

    /// Applies a pure position permutation to the prong polygons and clears
    /// the wrap flags.
    fn with_positions_permuted(&self, perm: &SignedPerm) -> TrainTrack {
        let mut track = self.clone();
        track.wraps.clear();
        for poly in track.polygons.iter_mut() {
            if let PolygonKind::Prong { position } = poly.kind {
                let new_pos = perm.apply(position - 1) + 1;
                poly.kind = PolygonKind::Prong { position: new_pos };
                poly.label = prong_letter(new_pos);
            }
        }
        track
    }

    /// Standardizes a standard or almost-standard track. On standard input
    /// this is the identity. Otherwise the wrapped puncture is carried by a
    /// braid of the form `δ±[l,m]` whose sign matches the side the wrap
    /// enters from; the destination is taken next to the wrapped edge's
    /// anchor, falling back to the nearest position restoring standard form.
    pub fn standardize(&self) -> Result<Standardization, TrackError> {
        if self.wraps.is_empty() {
            if self.standard_exposure().is_ok() {
                return Ok(Standardization {
                    track: self.clone(),
                    braid: Vec::new(),
                    prong_perm: SignedPerm::identity(self.punctures),
                });
            }
            return Err(TrackError::NotStandardizable("no wrap flag and not standard".into()));
        }
        if self.wraps.len() > 1 {
            return Err(TrackError::NotStandardizable("multiple wrap flags".into()));
        }
        let wrap = self.wraps[0].clone();
        let n = self.punctures;
        let p = wrap.position;
        // minimal slide distance first, preferring the side the wrap enters
        // from; the standardness check selects among the candidates
        let mut candidates: Vec<usize> = (1..=n).filter(|q| *q != p).collect();
        candidates.sort_by_key(|q| {
            let preferred = match wrap.enter {
                Side::Left => *q < p,
                Side::Right => *q > p,
            };
            (q.abs_diff(p), !preferred)
        });
        for q in candidates {
            let (braid, perm) = slide_braid(n, p, q, wrap.enter);
            let candidate = self.with_positions_permuted(&perm);
            if candidate.standard_exposure().is_ok() {
                return Ok(Standardization { track: candidate, braid, prong_perm: perm });
            }
        }
        Err(TrackError::NotStandardizable(format!(
            "no braid standardizes the wrap below puncture {p}"
        )))
    }

    /// Checks the switch conditions for nonnegative rational weights on the
    /// real edges, solving for the infinitesimal side weights polygon by
    /// polygon.
    pub fn admissible_weights(&self, weights: &Weights) -> Result<bool, TrackError> {
        let labels = self.real_labels();
        for label in weights.0.keys() {
            if !labels.contains(label) {
                return Err(TrackError::UnknownLabel(label.clone()));
            }
        }
        let mut by_edge: HashMap<usize, Rational> = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.kind == EdgeKind::Real {
                let w = weights.0.get(&e.label).copied().unwrap_or_else(Rational::zero);
                if w < Rational::zero() {
                    return Ok(false);
                }
                by_edge.insert(i, w);
            }
        }
        for poly in &self.polygons {
            if !self.polygon_weights_feasible(poly, &by_edge) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Real-edge weights from a float vector in sorted label order; used by
    /// the certification pipeline to test a Perron–Frobenius vector.
    pub fn admissible_weights_f64(&self, values: &[f64], rel_tol: f64) -> bool {
        let labels = self.real_labels();
        assert_eq!(labels.len(), values.len());
        if values.iter().any(|v| *v < -rel_tol) {
            return false;
        }
        let scale: f64 = values.iter().map(|v| v.abs()).sum::<f64>().max(1.0);
        let mut by_edge: HashMap<usize, f64> = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.kind == EdgeKind::Real {
                let idx = labels.iter().position(|l| *l == e.label).unwrap();
                by_edge.insert(i, values[idx]);
            }
        }
        for poly in &self.polygons {
            if !self.polygon_weights_feasible_f64(poly, &by_edge, rel_tol * scale) {
                return false;
            }
        }
        true
    }

    fn polygon_corner_sums<T: Copy>(
        &self,
        poly: &Polygon,
        real: &HashMap<usize, T>,
        zero: T,
        add: fn(T, T) -> T,
        sub: fn(T, T) -> T,
    ) -> Vec<T> {
        let k = poly.vertices.len();
        let mut c = Vec::with_capacity(k);
        for (i, v) in poly.vertices.iter().enumerate() {
            let side_in = poly.sides[(i + k - 1) % k];
            let side_ray = self.vertices[*v]
                .rotation
                .iter()
                .find(|d| d.edge == side_in || d.edge == poly.sides[i])
                .map(|d| self.ray_of(*d))
                .expect("side dart at its vertex");
            let mut acc = zero;
            for d in &self.vertices[*v].rotation {
                if self.edges[d.edge].kind == EdgeKind::Real {
                    let w = real[&d.edge];
                    acc = if self.ray_of(*d) == side_ray { sub(acc, w) } else { add(acc, w) };
                }
            }
            c.push(acc);
        }
        c
    }

    /// Nonnegative solvability of the cyclic system
    /// `side_{i-1} + side_i = c_i` around one polygon.
    fn polygon_weights_feasible(
        &self,
        poly: &Polygon,
        real: &HashMap<usize, Rational>,
    ) -> bool {
        let c = self.polygon_corner_sums(
            poly,
            real,
            Rational::zero(),
            |a, b| a + b,
            |a, b| a - b,
        );
        let k = c.len();
        if k == 1 {
            // monogon: the loop passes the vertex twice, 2w = c
            return c[0] >= Rational::zero();
        }
        // s_i = (-1)^i x + cons_i with s_0 = x
        let mut coef = 1i64;
        let mut cons = Rational::zero();
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        let add_bound = |coef: i64, cons: Rational, lo: &mut Option<Rational>, hi: &mut Option<Rational>| {
            if coef > 0 {
                let b = -cons;
                if lo.is_none() || *lo.as_ref().unwrap() < b {
                    *lo = Some(b);
                }
            } else {
                let b = cons;
                if hi.is_none() || *hi.as_ref().unwrap() > b {
                    *hi = Some(b);
                }
            }
        };
        add_bound(coef, cons, &mut lo, &mut hi);
        for item in c.iter().take(k).skip(1) {
            cons = *item - cons;
            coef = -coef;
            add_bound(coef, cons, &mut lo, &mut hi);
        }
        // closure: s_0 = c_0 - s_{k-1}
        let close_coef = 1 + coef;
        let close_cons = cons - c[0];
        if close_coef != 0 {
            let x = -close_cons / Rational::from_integer(close_coef);
            let lo_ok = lo.map(|b| x >= b).unwrap_or(true);
            let hi_ok = hi.map(|b| x <= b).unwrap_or(true);
            return lo_ok && hi_ok;
        }
        if close_cons != Rational::zero() {
            return false;
        }
        match (lo, hi) {
            (Some(l), Some(h)) => l <= h,
            _ => true,
        }
    }

    fn polygon_weights_feasible_f64(
        &self,
        poly: &Polygon,
        real: &HashMap<usize, f64>,
        tol: f64,
    ) -> bool {
        let c = self.polygon_corner_sums(poly, real, 0.0f64, |a, b| a + b, |a, b| a - b);
        let k = c.len();
        if k == 1 {
            return c[0] >= -tol;
        }
        let mut coef = 1.0f64;
        let mut cons = 0.0f64;
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        let add_bound = |coef: f64, cons: f64, lo: &mut f64, hi: &mut f64| {
            if coef > 0.0 {
                *lo = lo.max(-cons);
            } else {
                *hi = hi.min(cons);
            }
        };
        add_bound(coef, cons, &mut lo, &mut hi);
        for item in c.iter().take(k).skip(1) {
            cons = *item - cons;
            coef = -coef;
            add_bound(coef, cons, &mut lo, &mut hi);
        }
        let close_coef = 1.0 + coef;
        let close_cons = cons - c[0];
        if close_coef.abs() > 0.5 {
            let x = -close_cons / close_coef;
            return x >= lo - tol && x <= hi + tol;
        }
        if close_cons.abs() > tol {
            return false;
        }
        lo <= hi + tol
    }

    /// Canonical serialization of the labeled track; equal strings identify
    /// equal automaton vertices (up to isotopy of the disc fixing the
    /// punctures).
    pub fn canonical_string(&self) -> String {
        self.canonical(false).0
    }

    /// Label-forgetting canonical serialization along with the real edges in
    /// slot order. Equal strings identify the same unlabeled vertex and the
    /// slot orders align.
    pub fn canonical_unlabeled(&self) -> (String, Vec<usize>) {
        self.canonical(true)
    }

    /// Polygon cycles re-derived from the interior face orbits, giving a
    /// canonical orientation independent of the stored lists.
    fn derived_cycles(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let faces = self.faces();
        let interior = self
            .polygon_interior_faces(&faces)
            .expect("valid polygon interiors");
        self.polygons
            .iter()
            .zip(interior)
            .map(|(_, fi)| {
                let orbit = &faces.orbits[fi];
                let vertices: Vec<usize> = orbit.iter().map(|d| self.vertex_of(*d)).collect();
                let sides: Vec<usize> = orbit.iter().map(|d| d.edge).collect();
                (vertices, sides)
            })
            .collect()
    }

    fn canonical(&self, forget_labels: bool) -> (String, Vec<usize>) {
        let mut prongs: Vec<usize> = Vec::new();
        for pos in 1..=self.punctures {
            let pi = self
                .polygons
                .iter()
                .position(|p| p.kind == PolygonKind::Prong { position: pos })
                .expect("prong polygon");
            prongs.push(pi);
        }
        let interiors: Vec<usize> = (0..self.polygons.len())
            .filter(|pi| self.polygons[*pi].kind == PolygonKind::Interior)
            .collect();
        let cycles = self.derived_cycles();
        let mut best: Option<(String, Vec<usize>)> = None;
        for int_order in permutations(&interiors) {
            let order: Vec<usize> = prongs.iter().chain(int_order.iter()).copied().collect();
            let choice_sets: Vec<Vec<usize>> = order
                .iter()
                .map(|pi| (0..self.polygons[*pi].vertices.len()).collect())
                .collect();
            for combo in cartesian(&choice_sets) {
                let (s, slots) = self.serialize_with(&order, &combo, &cycles, forget_labels);
                if best.as_ref().map(|(b, _)| s < *b).unwrap_or(true) {
                    best = Some((s, slots));
                }
            }
        }
        best.expect("canonical serialization")
    }

    fn serialize_with(
        &self,
        order: &[usize],
        starts: &[usize],
        cycles: &[(Vec<usize>, Vec<usize>)],
        forget_labels: bool,
    ) -> (String, Vec<usize>) {
        let mut s = String::new();
        s.push_str(&format!("n={};", self.punctures));
        let mut slot_of: HashMap<usize, usize> = HashMap::new();
        let mut slots: Vec<usize> = Vec::new();
        let mut vname: HashMap<usize, String> = HashMap::new();
        for (oi, pi) in order.iter().enumerate() {
            let (vertices, _) = &cycles[*pi];
            let k = vertices.len();
            for j in 0..k {
                let v = vertices[(starts[oi] + j) % k];
                vname.insert(v, format!("{oi}.{j}"));
            }
        }
        for (oi, pi) in order.iter().enumerate() {
            let poly = &self.polygons[*pi];
            let (vertices, sides) = &cycles[*pi];
            let k = vertices.len();
            match poly.kind {
                PolygonKind::Prong { position } => s.push_str(&format!("P{position}[{k}](")),
                PolygonKind::Interior => s.push_str(&format!("I[{k}](")),
            }
            for j in 0..k {
                let cycle_idx = (starts[oi] + j) % k;
                let v = vertices[cycle_idx];
                let incoming_side = sides[(cycle_idx + k - 1) % k];
                let rot = &self.vertices[v].rotation;
                // the monogon's side has both darts here; start from the one
                // bounding the puncture face, which is intrinsic
                let start_idx = rot
                    .iter()
                    .position(|d| {
                        d.edge == incoming_side
                            && (k > 1 || self.ccw_next(d.reversed()) == *d)
                    })
                    .or_else(|| rot.iter().position(|d| d.edge == incoming_side))
                    .expect("incoming side dart");
                // the ray partition has no intrinsic labels; normalize so the
                // first dart reads '+'
                let base_ray = self.ray_of(rot[start_idx]);
                s.push('v');
                for step in 0..rot.len() {
                    let d = rot[(start_idx + step) % rot.len()];
                    let e = &self.edges[d.edge];
                    let tag = match e.kind {
                        EdgeKind::Infinitesimal => {
                            // side index relative to the chosen cycle start,
                            // direction tag by cycle structure: a monogon
                            // dart is "i"nterior or "o"uter, a longer side is
                            // "f"orward (towards the next cycle vertex) or
                            // "b"ackward
                            match sides.iter().position(|x| *x == d.edge) {
                                Some(si) => {
                                    let rel = (si + k - starts[oi]) % k;
                                    let dir = if k == 1 {
                                        if self.ccw_next(d.reversed()) == d { 'i' } else { 'o' }
                                    } else if si == cycle_idx {
                                        'f'
                                    } else {
                                        'b'
                                    };
                                    format!("s{rel}{dir}")
                                }
                                None => "s?".to_string(),
                            }
                        }
                        EdgeKind::Real => {
                            let slot = *slot_of.entry(d.edge).or_insert_with(|| {
                                slots.push(d.edge);
                                slots.len() - 1
                            });
                            if forget_labels {
                                format!("r{slot}")
                            } else {
                                format!("r{slot}={}", e.label)
                            }
                        }
                    };
                    let ray = if self.ray_of(d) == base_ray { '+' } else { '-' };
                    s.push_str(&format!("[{tag}{ray}]"));
                }
                s.push(';');
            }
            s.push(')');
        }
        let mut edge_descs: Vec<String> = Vec::new();
        for (ei, e) in self.edges.iter().enumerate() {
            if e.kind != EdgeKind::Real {
                continue;
            }
            let slot = slot_of.get(&ei).copied().unwrap_or(usize::MAX);
            let a = vname[&e.ends[0].vertex].clone();
            let b = vname[&e.ends[1].vertex].clone();
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            edge_descs.push(format!("e{slot}:{a}-{b}"));
        }
        edge_descs.sort();
        s.push_str(&edge_descs.join(","));
        (s, slots)
    }

    /// JSON serialization; round-trips bit-exactly.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable track")
    }

    pub fn from_json(data: &str) -> Result<TrainTrack, TrackError> {
        serde_json::from_str(data).map_err(|e| TrackError::Invalid(e.to_string()))
    }
}

impl fmt::Debug for TrainTrack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TrainTrack({})", self.canonical_string())
    }
}

/// Braid word and signed prong permutation for sliding the puncture at
/// position `p` to position `q` (both 1-based). The sign follows the side
/// the wrap enters from: entering from the left takes a positive braid,
/// from the right a negative one.
fn slide_braid(n: usize, p: usize, q: usize, enter: Side) -> (Vec<i32>, SignedPerm) {
    let mut perm = SignedPerm::identity(n);
    let mut braid: Vec<i32> = Vec::new();
    if q < p {
        match enter {
            Side::Left => {
                // positive word σ_q σ_{q+1} … σ_{p−1}: the passed punctures
                // dive under gaining +1 each; the wrapped one drops to q.
                for j in q..p {
                    braid.push(j as i32);
                }
                perm.targets[p - 1] = q - 1;
                for j in q..p {
                    perm.targets[j - 1] = j;
                    perm.exps[j - 1] = 1;
                }
            }
            Side::Right => {
                // δ⁻[q,p] = σ_q⁻¹ … σ_{p−1}⁻¹: the wrapped puncture travels
                // under the block, one negative rotation per step.
                for j in q..p {
                    braid.push(-(j as i32));
                }
                perm.targets[p - 1] = q - 1;
                perm.exps[p - 1] = -((p - q) as i64);
                for j in q..p {
                    perm.targets[j - 1] = j;
                }
            }
        }
    } else if q > p {
        match enter {
            Side::Right => {
                // word σ_{q−1}⁻¹ … σ_p⁻¹: the passed punctures dive left
                // with −1 each.
                for j in (p..q).rev() {
                    braid.push(-(j as i32));
                }
                perm.targets[p - 1] = q - 1;
                for j in p + 1..=q {
                    perm.targets[j - 1] = j - 2;
                    perm.exps[j - 1] = -1;
                }
            }
            Side::Left => {
                // δ⁺[p,q] = σ_{q−1} … σ_p: the wrapped puncture passes over,
                // one positive rotation per step.
                for j in (p..q).rev() {
                    braid.push(j as i32);
                }
                perm.targets[p - 1] = q - 1;
                perm.exps[p - 1] = (q - p) as i64;
                for j in p + 1..=q {
                    perm.targets[j - 1] = j - 2;
                }
            }
        }
    }
    (braid, perm)
}

/// Picks one index per row so the chosen values ascend cyclically in row
/// order; used for the exposure-order test.
fn pick_cyclic_ascending(choices: &[Vec<usize>]) -> Option<Vec<usize>> {
    fn rec(choices: &[Vec<usize>], i: usize, picked: &mut Vec<usize>) -> bool {
        if i == choices.len() {
            let mut idx: Vec<(usize, usize)> =
                picked.iter().copied().enumerate().map(|(p, v)| (v, p)).collect();
            idx.sort();
            let order: Vec<usize> = idx.iter().map(|(_, p)| *p).collect();
            let start = order.iter().position(|p| *p == 0).unwrap();
            return (0..order.len()).all(|k| order[(start + k) % order.len()] == k);
        }
        for v in &choices[i] {
            picked.push(*v);
            if rec(choices, i + 1, picked) {
                return true;
            }
            picked.pop();
        }
        false
    }
    let mut picked = Vec::new();
    if rec(choices, 0, &mut picked) {
        Some(picked)
    } else {
        None
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, *x);
            out.push(tail);
        }
    }
    out
}

fn cartesian(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for set in sets {
        let mut next = Vec::new();
        for prefix in &out {
            for v in set {
                let mut p = prefix.clone();
                p.push(*v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}
