//! Property suites: Burau is a homomorphism satisfying the braid relations,
//! fold matrices carry admissible weights to admissible weights, loop
//! characteristic polynomials do not depend on the labeling, and the
//! canonical unit form is invariant under unit multiples.

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use teich_core::automaton::{enumerate_folds, Automaton};
use teich_core::burau::{reduced_burau, BraidWord};
use teich_core::families::{appendix_a_seed, b3_seed, b4_seed};
use teich_core::ring::{ExponentVector, LaurentPoly, PolyMatrix, VarNames};
use teich_core::track::{EdgeKind, Rational, TrainTrack, Weights};

fn random_word(rng: &mut StdRng, strands: usize, len: usize) -> BraidWord {
    let letters: Vec<i32> = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord::new(strands, letters).unwrap()
}

#[test]
fn burau_homomorphism_and_relations() {
    let mut rng = StdRng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 1000 {
        let strands = rng.gen_range(3..=6usize);
        let len1 = rng.gen_range(0..6);
        let len2 = rng.gen_range(0..6);
        let w1 = random_word(&mut rng, strands, len1);
        let w2 = random_word(&mut rng, strands, len2);
        let mut joined = w1.letters.clone();
        joined.extend(&w2.letters);
        let joined = BraidWord::new(strands, joined).unwrap();
        let lhs = reduced_burau(&joined).unwrap();
        let rhs = reduced_burau(&w1).unwrap().mul(&reduced_burau(&w2).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "homomorphism for {:?} · {:?}", w1.letters, w2.letters);
        checked += 1;
    }
    // relations on every generator pair
    for strands in 3..=6usize {
        for i in 1..strands as i32 {
            let id = reduced_burau(&BraidWord::new(strands, vec![i, -i]).unwrap()).unwrap();
            assert_eq!(id, PolyMatrix::identity(strands - 1, 1));
            if i + 1 < strands as i32 {
                let lhs =
                    reduced_burau(&BraidWord::new(strands, vec![i, i + 1, i]).unwrap()).unwrap();
                let rhs =
                    reduced_burau(&BraidWord::new(strands, vec![i + 1, i, i + 1]).unwrap())
                        .unwrap();
                assert_eq!(lhs, rhs, "braid relation at {i}");
            }
            for j in i + 2..strands as i32 {
                let lhs = reduced_burau(&BraidWord::new(strands, vec![i, j]).unwrap()).unwrap();
                let rhs = reduced_burau(&BraidWord::new(strands, vec![j, i]).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "commutation {i},{j}");
            }
        }
    }
}

/// Samples weights admissible on `track` by rejection.
fn sample_admissible(rng: &mut StdRng, track: &TrainTrack) -> Option<Weights> {
    let labels = track.real_labels();
    for _ in 0..400 {
        let mut w = BTreeMap::new();
        for l in &labels {
            w.insert(l.clone(), Rational::from_integer(rng.gen_range(0..8i64)));
        }
        let weights = Weights(w);
        if track.admissible_weights(&weights).unwrap() {
            return Some(weights);
        }
    }
    None
}

#[test]
fn fold_matrices_preserve_admissibility() {
    let mut rng = StdRng::seed_from_u64(11);
    let seeds: Vec<TrainTrack> = vec![b3_seed(), b4_seed(), appendix_a_seed(1), appendix_a_seed(2)];
    // also sample a few non-seed vertices of the b4 automaton for variety
    let b4 = Automaton::build(&b4_seed(), 12, 3).unwrap();
    let mut tracks = seeds;
    for v in b4.vertices.iter().skip(1).take(4) {
        tracks.push(v.track.clone());
    }
    let mut checked = 0;
    'outer: while checked < 500 {
        for track in &tracks {
            let folds = enumerate_folds(track);
            if folds.is_empty() {
                continue;
            }
            let (spec, _) = &folds[rng.gen_range(0..folds.len())];
            let result = track.fold_full(spec).unwrap();
            if !result.foldable {
                continue;
            }
            // a measure carried by the track pushes forward along the
            // transpose of the incidence matrix to a measure carried by the
            // folded track
            let Some(weights) = sample_admissible(&mut rng, track) else {
                continue;
            };
            let labels = track.real_labels();
            let vector: Vec<Rational> = labels
                .iter()
                .map(|l| weights.0.get(l).copied().unwrap_or_default())
                .collect();
            let transported = result.matrix.transpose().apply(&vector);
            let mut pushed = BTreeMap::new();
            for (l, v) in labels.iter().zip(transported) {
                pushed.insert(l.clone(), v);
            }
            assert!(
                result.track.admissible_weights(&Weights(pushed)).unwrap(),
                "fold {spec:?} broke admissibility"
            );
            checked += 1;
            if checked == 500 {
                break 'outer;
            }
        }
    }
}

#[test]
fn loop_char_polys_are_label_independent() {
    // the same seed with its real labels renamed must give the same multiset
    // of loop characteristic polynomials
    let original = b3_seed();
    let mut renamed = original.clone();
    for e in renamed.edges.iter_mut() {
        if e.kind == EdgeKind::Real {
            e.label = match e.label.as_str() {
                "a" => "y".to_string(),
                "b" => "x".to_string(),
                other => other.to_string(),
            };
        }
    }
    let char_polys = |track: &TrainTrack| -> Vec<String> {
        let automaton = Automaton::build(track, 16, 16).unwrap();
        let mut polys: Vec<String> = automaton
            .loops(3)
            .iter()
            .map(|l| {
                let m = l.incidence_matrix();
                let pm = PolyMatrix::from_int_rows(&m.0, 1);
                pm.char_poly().unwrap().to_string_with(&VarNames::default_for(1))
            })
            .collect();
        polys.sort();
        polys
    };
    assert_eq!(char_polys(&original), char_polys(&renamed));
}

#[test]
fn canonical_form_unit_invariance() {
    let mut rng = StdRng::seed_from_u64(23);
    let names = VarNames::default_for(3);
    for _ in 0..500 {
        // random polynomial in (t1, t2, u)
        let mut p = LaurentPoly::zero(3);
        let terms = rng.gen_range(1..7usize);
        for _ in 0..terms {
            let exps = vec![
                rng.gen_range(-3..=3i64),
                rng.gen_range(-3..=3i64),
                rng.gen_range(-3..=3i64),
            ];
            let coef = rng.gen_range(-5..=5i128);
            p = p.add(&LaurentPoly::monomial(3, exps, coef)).unwrap();
        }
        if p.is_zero() {
            continue;
        }
        let unit = LaurentPoly::monomial(
            3,
            vec![
                rng.gen_range(-4..=4i64),
                rng.gen_range(-4..=4i64),
                rng.gen_range(-4..=4i64),
            ],
            if rng.gen_bool(0.5) { 1 } else { -1 },
        );
        let scaled = p.mul(&unit).unwrap();
        assert_eq!(
            p.canonical_unit_form().unwrap(),
            scaled.canonical_unit_form().unwrap(),
            "unit invariance of {}",
            p.to_string_with(&names)
        );
    }
}

#[test]
fn fold_preserves_face_census_and_labels() {
    // folding is a carrying: cusp census is unchanged and labels survive
    for track in [b3_seed(), b4_seed(), appendix_a_seed(2)] {
        let census = track.face_census();
        let labels = track.real_labels();
        for (spec, _) in enumerate_folds(&track) {
            let result = track.fold_full(&spec).unwrap();
            if !result.foldable {
                continue;
            }
            assert_eq!(result.track.face_census(), census, "census after {spec:?}");
            assert_eq!(result.track.real_labels(), labels, "labels after {spec:?}");
            // standardize and fold again: closure under the operations
            let std = result.track.standardize().unwrap();
            assert!(std.track.is_standard());
            assert!(std.track.validate().is_ok());
        }
    }
}

#[test]
fn lift_unit_rescaling_keeps_canonical_form() {
    // replacing the lift rescales u by a unit; the canonical form of the
    // characteristic polynomial is unchanged
    use teich_core::families::b3_word_loop;
    use teich_core::teich::{lifted_matrix, t_map};
    let lp = b3_word_loop(&[-1, 2]).unwrap();
    let tmap = t_map(&lp);
    let lifted = lifted_matrix(&lp, &tmap).unwrap();
    let theta = lifted.char_poly().unwrap();
    // rescale the matrix by the unit t: det(uI - tM) = t^2 det((u/t)I - M)
    let dim = lifted.dim();
    let t = LaurentPoly::t_var(2, 0, 1);
    let mut rescaled = lifted.clone();
    for i in 0..dim {
        for j in 0..dim {
            *rescaled.at_mut(i, j) = lifted.at(i, j).mul(&t).unwrap();
        }
    }
    let theta2 = rescaled.char_poly().unwrap();
    // det(uI − tM) = t^dim · θ(t, u/t), so substituting u ↦ u/t in θ matches
    // the rescaled characteristic polynomial up to a unit
    let substituted: LaurentPoly = {
        let mut acc = LaurentPoly::zero(2);
        for (e, c) in theta.terms() {
            let k = e.0[1];
            let term = LaurentPoly::monomial(2, vec![e.0[0] - k, k], *c);
            acc = acc.add(&term).unwrap();
        }
        acc
    };
    let _ = ExponentVector::zeros(2);
    assert_eq!(
        substituted.canonical_unit_form().unwrap(),
        theta2.canonical_unit_form().unwrap()
    );
    // leading structure agrees: both are monic in u of the same degree
    let lead = |p: &LaurentPoly| p.support().iter().map(|e| e.u_exp()).max();
    assert_eq!(lead(&theta), lead(&theta2));
}
