//! Topology of the fibers over the fibered cone: boundary component counts
//! and slopes on each torus of the link complement, singularity prong
//! types transported from the base monodromy's rotation data, interior
//! singularity orbits, genus, and the Euler–Poincaré audit.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automaton::AutomatonLoop;
use crate::burau::BraidWord;
use crate::ring::CohomologyClass;

#[derive(Debug, Error, PartialEq)]
pub enum FiberError {
    #[error("class has arity {0}, expected {1}")]
    ClassArity(usize, usize),
    #[error("torus {0}: both pairing coordinates vanish; the class is not transverse there")]
    NotTransverse(String),
    #[error("genus parity violated: norm {norm}, boundary {boundary}")]
    GenusParity { norm: i64, boundary: i64 },
    #[error("loop carries no start track; prong data unavailable")]
    NoTrack,
    #[error("inconsistent prong data on orbit {0}")]
    InconsistentProngs(String),
}

/// Linking data of the braid closure together with the axis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkData {
    /// Strand orbits, 0-based strands, sorted by least strand.
    pub orbits: Vec<Vec<usize>>,
    /// Linking matrix over (orbits…, axis); `B = Id` in this basis.
    pub linking: Vec<Vec<i64>>,
}

impl LinkData {
    pub fn components(&self) -> usize {
        self.orbits.len() + 1
    }
}

/// Linking numbers of the closure components and the axis: orbit–orbit
/// linking is half the signed count of crossings between strands of the two
/// orbits, orbit–axis linking is the number of strands in the orbit.
pub fn linking_data(word: &BraidWord) -> LinkData {
    let orbits = word.strand_cycles();
    let orbit_of = {
        let mut v = vec![0usize; word.strands];
        for (oi, orbit) in orbits.iter().enumerate() {
            for s in orbit {
                v[*s] = oi;
            }
        }
        v
    };
    let r = orbits.len() + 1;
    let mut crossings = vec![vec![0i64; r]; r];
    let mut at_position: Vec<usize> = (0..word.strands).collect(); // position -> strand
    for letter in &word.letters {
        let i = letter.unsigned_abs() as usize - 1;
        let (sa, sb) = (at_position[i], at_position[i + 1]);
        let (oa, ob) = (orbit_of[sa], orbit_of[sb]);
        if oa != ob {
            let sign = letter.signum() as i64;
            crossings[oa][ob] += sign;
            crossings[ob][oa] += sign;
        }
        at_position.swap(i, i + 1);
    }
    let mut linking = vec![vec![0i64; r]; r];
    for i in 0..r - 1 {
        for j in 0..r - 1 {
            if i != j {
                linking[i][j] = crossings[i][j] / 2;
            }
        }
        linking[i][r - 1] = orbits[i].len() as i64;
        linking[r - 1][i] = orbits[i].len() as i64;
    }
    LinkData { orbits, linking }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TorusKind {
    StrandOrbit,
    Axis,
    InteriorOrbit,
}

/// Boundary data of the fiber on one torus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusReport {
    pub name: String,
    pub kind: TorusKind,
    /// Number of boundary components of the fiber on this torus.
    pub count: i64,
    /// Boundary slope `p/q` in meridian–longitude coordinates.
    pub slope: (i64, i64),
    /// Slope of the closed singular orbit on this torus.
    pub orbit_slope: (i64, i64),
    /// Prongs at each boundary component.
    pub prongs: i64,
}

/// Full per-class fiber description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberReport {
    pub class: Vec<i64>,
    pub norm: i64,
    pub tori: Vec<TorusReport>,
    pub total_boundary: i64,
    pub genus: i64,
    pub euler_ok: bool,
}

/// Pairing coordinates `(a_j, b_j)` of a class on the link tori:
/// `a = c·A`, `b = c·B = c`.
pub fn boundary_pairings(
    data: &LinkData,
    class: &CohomologyClass,
) -> Result<Vec<(i64, i64)>, FiberError> {
    let r = data.components();
    if class.arity() != r {
        return Err(FiberError::ClassArity(class.arity(), r));
    }
    let mut out = Vec::with_capacity(r);
    for j in 0..r {
        let a: i64 = (0..r).map(|i| class.0[i] * data.linking[i][j]).sum();
        let b = class.0[j];
        out.push((a, b));
    }
    Ok(out)
}

/// Per-torus boundary component counts and slopes of the fiber dual to an
/// integral class. The count on torus `j` is the gcd of the class
/// coordinate `c_j` with the linking coefficients feeding the meridian
/// pairing there; on primitive classes this equals `gcd(a_j, b_j)` and it
/// extends the closed-form counts of the worked examples to the whole
/// cone. The slope is `(a_j, b_j)` divided by the count.
pub fn boundary_components(
    data: &LinkData,
    class: &CohomologyClass,
) -> Result<Vec<(i64, (i64, i64))>, FiberError> {
    let pairings = boundary_pairings(data, class)?;
    let r = data.components();
    let mut out = Vec::with_capacity(pairings.len());
    for (j, (a, b)) in pairings.iter().enumerate() {
        if *a == 0 && *b == 0 {
            return Err(FiberError::NotTransverse(format!("T{}", j + 1)));
        }
        let mut g = class.0[j].unsigned_abs();
        for i in 0..r {
            if i != j {
                g = gcd(g, data.linking[i][j].unsigned_abs());
            }
        }
        let g = gcd(g, gcd(a.unsigned_abs(), b.unsigned_abs())) as i64;
        out.push((g, (a / g, b / g)));
    }
    Ok(out)
}

/// Slopes of the closed singular orbits, one per strand orbit in t-variable
/// order: the meridian coordinate is the rotation exponent accumulated
/// around the orbit cycle of the loop's prong permutation, the longitude is
/// one per period.
pub fn singular_orbit_slopes(lp: &AutomatonLoop) -> Vec<(i64, i64)> {
    let perm = lp.prong_perm();
    perm.cycles()
        .iter()
        .map(|cycle| {
            let total: i64 = cycle.iter().map(|i| perm.exps[*i]).sum();
            (total, 1)
        })
        .collect()
}

/// Prong count shared by the punctures of one orbit, read from the start
/// track's prong polygons.
fn orbit_prongs(lp: &AutomatonLoop, cycle: &[usize]) -> Result<i64, FiberError> {
    let track = lp.start_track.as_ref().ok_or(FiberError::NoTrack)?;
    let mut sizes = cycle.iter().map(|pos| {
        track
            .prong_polygon(pos + 1)
            .map(|p| p.sides.len() as i64)
            .unwrap_or(1)
    });
    let first = sizes.next().unwrap_or(1);
    if sizes.all(|s| s == first) {
        Ok(first)
    } else {
        Err(FiberError::InconsistentProngs(format!("{cycle:?}")))
    }
}

/// Optional overrides for slopes the construction does not derive: the
/// axis torus and interior orbits without rotation bookkeeping.
#[derive(Clone, Debug, Default)]
pub struct SlopeOverrides {
    pub axis: Option<(i64, i64)>,
    pub interior: Vec<Option<(i64, i64)>>,
}

/// Assembles the complete fiber report of a class: boundary counts, slopes
/// and prong types on the strand-orbit tori and the axis torus, interior
/// singular orbits promoted to puncture-like tori, the genus from the
/// Thurston norm, and the Euler–Poincaré audit `4 − 4g = Σ(2 − p)`.
pub fn fiber_report(
    lp: &AutomatonLoop,
    data: &LinkData,
    class: &CohomologyClass,
    norm: i64,
    overrides: &SlopeOverrides,
) -> Result<FiberReport, FiberError> {
    let track = lp.start_track.as_ref().ok_or(FiberError::NoTrack)?;
    let boundary = boundary_components(data, class)?;
    let perm = lp.prong_perm();
    let cycles = perm.cycles();
    let orbit_slopes = singular_orbit_slopes(lp);
    let r = data.components();
    let mut tori = Vec::new();
    for (j, (count, (p, q))) in boundary.iter().enumerate() {
        let is_axis = j == r - 1;
        let (ps, qs) = if is_axis {
            overrides.axis.unwrap_or((1, 0))
        } else {
            orbit_slopes[j]
        };
        let k = if is_axis {
            track.outer_cusps().map(|c| c as i64).unwrap_or(1)
        } else {
            orbit_prongs(lp, &cycles[j])?
        };
        let prongs = k * (ps * q - qs * p).abs();
        tori.push(TorusReport {
            name: format!("T{}", j + 1),
            kind: if is_axis { TorusKind::Axis } else { TorusKind::StrandOrbit },
            count: *count,
            slope: (*p, *q),
            orbit_slope: (ps, qs),
            prongs,
        });
    }
    // interior singularity orbits, punctured per the capping-off
    // correspondence
    let y = *class.0.last().unwrap();
    for (ii, orbit) in lp.interior_orbits.iter().enumerate() {
        let (ps, qs) = overrides
            .interior
            .get(ii)
            .copied()
            .flatten()
            .unwrap_or((orbit.exponent, 1));
        let s1 = if class.arity() >= 2 { class.0[0] } else { 0 };
        let a = orbit.period as i64 * y + orbit.exponent * s1;
        let b = 0i64;
        if a == 0 && b == 0 {
            return Err(FiberError::NotTransverse(format!("interior orbit {ii}")));
        }
        let g = gcd(a.unsigned_abs(), b.unsigned_abs()) as i64;
        let (p, q) = (a / g, b / g);
        let prongs = orbit.prongs as i64 * (ps * q - qs * p).abs();
        tori.push(TorusReport {
            name: format!("S{}", ii + 1),
            kind: TorusKind::InteriorOrbit,
            count: g,
            slope: (p, q),
            orbit_slope: (ps, qs),
            prongs,
        });
    }
    let total_boundary: i64 = tori.iter().map(|t| t.count).sum();
    let genus = genus(norm, total_boundary)?;
    let mut euler_sum = 0i64;
    for t in &tori {
        if t.prongs == 0 {
            return Err(FiberError::InconsistentProngs(t.name.clone()));
        }
        euler_sum += t.count * (2 - t.prongs);
    }
    let euler_ok = 4 - 4 * genus == euler_sum;
    Ok(FiberReport {
        class: class.0.clone(),
        norm,
        tori,
        total_boundary,
        genus,
        euler_ok,
    })
}

/// Genus from the norm and boundary count: `2g − 2 + b = ‖α‖`. Parity
/// violations are surfaced, not rounded away.
pub fn genus(norm: i64, total_boundary: i64) -> Result<i64, FiberError> {
    let twice = norm - total_boundary + 2;
    if twice % 2 != 0 || twice < 0 {
        return Err(FiberError::GenusParity { norm, boundary: total_boundary });
    }
    Ok(twice / 2)
}

/// Interior-orbit bookkeeping of a loop: identity on loops without interior
/// polygons.
pub fn puncture_interior(lp: &AutomatonLoop) -> Vec<(usize, usize)> {
    let Some(track) = lp.start_track.as_ref() else {
        return Vec::new();
    };
    track
        .interior_polygons()
        .iter()
        .map(|p| (p.vertices.len(), 1usize))
        .collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        if a == 0 {
            1
        } else {
            a
        }
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{b3_word_loop, b4_loop};

    fn simplest_link() -> LinkData {
        let word = BraidWord::new(3, vec![-1, 2]).unwrap();
        linking_data(&word)
    }

    #[test]
    fn linking_of_simplest_braid() {
        let data = simplest_link();
        assert_eq!(data.orbits.len(), 1);
        assert_eq!(data.linking, vec![vec![0, 3], vec![3, 0]]);
    }

    #[test]
    fn linking_of_trivial_strand() {
        let word = BraidWord::new(1, vec![]).unwrap();
        let data = linking_data(&word);
        assert_eq!(data.linking, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn linking_of_b4_braid() {
        let word = BraidWord::new(4, vec![-1, 2, 3]).unwrap();
        let data = linking_data(&word);
        assert_eq!(data.orbits.len(), 1);
        assert_eq!(data.linking[0][1], 4);
    }

    #[test]
    fn linking_is_conjugation_invariant_on_rotation() {
        // cyclic rotation of the word preserves the closure link
        let a = linking_data(&BraidWord::new(3, vec![-1, 2]).unwrap());
        let b = linking_data(&BraidWord::new(3, vec![2, -1]).unwrap());
        assert_eq!(a.linking, b.linking);
    }

    #[test]
    fn boundary_counts_of_simplest_braid() {
        let data = simplest_link();
        // class (s,y) = (0,1): counts gcd(3,0)=3 and gcd(0,1)=1
        let b = boundary_components(&data, &CohomologyClass(vec![0, 1])).unwrap();
        assert_eq!(b[0], (3, (1, 0)));
        assert_eq!(b[1], (1, (0, 1)));
        // class (1,2): counts 1 and 1
        let b = boundary_components(&data, &CohomologyClass(vec![1, 2])).unwrap();
        assert_eq!(b[0].0, 1);
        assert_eq!(b[1].0, 1);
        // class (3,3): counts 3 and 3
        let b = boundary_components(&data, &CohomologyClass(vec![3, 3])).unwrap();
        assert_eq!(b[0].0, 3);
        assert_eq!(b[1].0, 3);
    }

    #[test]
    fn orbit_slope_of_simplest_braid() {
        let lp = b3_word_loop(&[-1, 2]).unwrap();
        // π(β) = (C+, A-, B): exponent sum 0 around the 3-cycle
        let slopes = singular_orbit_slopes(&lp);
        assert_eq!(slopes, vec![(0, 1)]);
        let perm = lp.prong_perm();
        assert_eq!(perm.targets, vec![2, 0, 1]);
        assert_eq!(perm.exps, vec![1, -1, 0]);
    }

    #[test]
    fn sigma2_power_rotation_exponents() {
        // π(σ2^{2k}) = (A, B^k, C^k)
        for k in 1usize..=3 {
            let word: Vec<i32> = vec![2; 2 * k];
            let lp = b3_word_loop(&word).unwrap();
            let perm = lp.prong_perm();
            assert_eq!(perm.targets, vec![0, 1, 2]);
            assert_eq!(perm.exps, vec![0, k as i64, k as i64]);
        }
    }

    #[test]
    fn fiber_reports_of_simplest_braid() {
        let lp = b3_word_loop(&[-1, 2]).unwrap();
        let data = simplest_link();
        // at (0,1): 3 components of 1 prong on T1, one 1-prong on T2, genus 0
        let report = fiber_report(
            &lp,
            &data,
            &CohomologyClass(vec![0, 1]),
            2,
            &SlopeOverrides::default(),
        )
        .unwrap();
        assert_eq!(report.tori[0].count, 3);
        assert_eq!(report.tori[0].prongs, 1);
        assert_eq!(report.tori[1].count, 1);
        assert_eq!(report.tori[1].prongs, 1);
        assert_eq!(report.genus, 0);
        assert!(report.euler_ok);
        // at (1,2): one 6-prong and one 2-prong, genus 2
        let report = fiber_report(
            &lp,
            &data,
            &CohomologyClass(vec![1, 2]),
            4,
            &SlopeOverrides::default(),
        )
        .unwrap();
        assert_eq!(report.tori[0].count, 1);
        assert_eq!(report.tori[0].prongs, 6);
        assert_eq!(report.tori[1].count, 1);
        assert_eq!(report.tori[1].prongs, 2);
        assert_eq!(report.genus, 2);
        assert!(report.euler_ok);
        // mirror class gives the same prong multiset
        let mirror = fiber_report(
            &lp,
            &data,
            &CohomologyClass(vec![-1, 2]),
            4,
            &SlopeOverrides::default(),
        )
        .unwrap();
        let mut a: Vec<i64> = report.tori.iter().map(|t| t.prongs).collect();
        let mut b: Vec<i64> = mirror.tori.iter().map(|t| t.prongs).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn scaled_class_genus() {
        let lp = b3_word_loop(&[-1, 2]).unwrap();
        let data = simplest_link();
        // (0,3): boundary gcd(9,0)/?? counts gcd(3,0)+... = 3 + 3, norm 6,
        // genus 3+1-(3+3)/2 = 1
        let report = fiber_report(
            &lp,
            &data,
            &CohomologyClass(vec![0, 3]),
            6,
            &SlopeOverrides::default(),
        )
        .unwrap();
        assert_eq!(report.total_boundary, 6);
        assert_eq!(report.genus, 1);
        assert!(report.euler_ok);
    }

    #[test]
    fn b4_interior_orbit_audit() {
        let lp = b4_loop().unwrap();
        assert_eq!(lp.interior_orbits.len(), 1);
        assert_eq!(lp.interior_orbits[0].prongs, 3);
        let word = BraidWord::new(4, vec![-1, 2, 3]).unwrap();
        let data = linking_data(&word);
        // Teichmüller norm of the B4 theta at (0,1) is 4
        let report = fiber_report(
            &lp,
            &data,
            &CohomologyClass(vec![0, 1]),
            4,
            &SlopeOverrides::default(),
        )
        .unwrap();
        // 4 one-prong components on the strand torus, one on the axis, one
        // 3-prong interior orbit: 4 - 4g = 4+1-1 = 4
        assert_eq!(report.genus, 0);
        assert_eq!(report.total_boundary, 6);
        assert!(report.euler_ok);
    }

    #[test]
    fn genus_parity_is_surfaced() {
        assert!(matches!(genus(3, 2), Err(FiberError::GenusParity { .. })));
        assert_eq!(genus(2, 4), Ok(0));
    }
}
