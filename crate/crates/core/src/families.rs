//! Built-in train tracks and loops: the two-edge B₃ track, the B₄ track
//! with an interior trigon, and the infinite family on n+4 punctures. CLI
//! pipelines resolve braid words against these.

use crate::automaton::{Automaton, AutomatonLoop, DecoratedMove, Decoration, MoveKind};
use crate::track::{
    prong_letter, Dart, Edge, EdgeEnd, EdgeKind, FoldSpec, IntMatrix, Polygon, PolygonKind, Ray,
    SignedPerm, TrainTrack, Vertex,
};

fn fold_labels_match(mv: &DecoratedMove, spec: &FoldSpec) -> bool {
    mv.fold
        .as_ref()
        .map(|f| f.from_edge == spec.from_edge && f.onto_edge == spec.onto_edge)
        .unwrap_or(false)
}

fn real(label: &str, va: usize, ra: Ray, vb: usize, rb: Ray) -> Edge {
    Edge {
        label: label.to_string(),
        kind: EdgeKind::Real,
        ends: [EdgeEnd { vertex: va, ray: ra }, EdgeEnd { vertex: vb, ray: rb }],
    }
}

fn monogon_loop(label: &str, v: usize) -> Edge {
    Edge {
        label: label.to_string(),
        kind: EdgeKind::Infinitesimal,
        ends: [
            EdgeEnd { vertex: v, ray: Ray::Minus },
            EdgeEnd { vertex: v, ray: Ray::Minus },
        ],
    }
}

fn prong_polygon(position: usize, vertex: usize, side: usize) -> Polygon {
    Polygon {
        kind: PolygonKind::Prong { position },
        label: prong_letter(position),
        vertices: vec![vertex],
        sides: vec![side],
    }
}

/// The invariant track of the simplest pseudo-Anosov braid: three 1-prong
/// punctures chained by two real edges `a` (sites 1–2) and `b` (sites 2–3).
pub fn b3_seed() -> TrainTrack {
    // vertices 0,1,2 at punctures A,B,C
    // edges 0..2: monogon loops; 3: a; 4: b
    let edges = vec![
        monogon_loop("A", 0),
        monogon_loop("B", 1),
        monogon_loop("C", 2),
        real("a", 0, Ray::Plus, 1, Ray::Plus),
        real("b", 1, Ray::Plus, 2, Ray::Plus),
    ];
    // counterclockwise rotations; loop end 0 descends on the left and is
    // exposed to the outer face, end 1 bounds the puncture
    let vertices = vec![
        Vertex {
            rotation: vec![
                Dart { edge: 3, end: 0 },
                Dart { edge: 0, end: 0 },
                Dart { edge: 0, end: 1 },
            ],
        },
        Vertex {
            rotation: vec![
                Dart { edge: 4, end: 0 },
                Dart { edge: 3, end: 1 },
                Dart { edge: 1, end: 0 },
                Dart { edge: 1, end: 1 },
            ],
        },
        Vertex {
            rotation: vec![
                Dart { edge: 4, end: 1 },
                Dart { edge: 2, end: 0 },
                Dart { edge: 2, end: 1 },
            ],
        },
    ];
    let polygons = vec![
        prong_polygon(1, 0, 0),
        prong_polygon(2, 1, 1),
        prong_polygon(3, 2, 2),
    ];
    TrainTrack { punctures: 3, polygons, vertices, edges, wraps: Vec::new() }
}

/// The invariant track of `σ₁⁻¹σ₂σ₃` on four punctures: monogons at the
/// punctures and an interior trigon; real edges `a` (1–2 arc), `b` (2 to the
/// trigon), `c` (3 to the trigon), `d` (trigon top to 4).
pub fn b4_seed() -> TrainTrack {
    // vertices: 0..3 punctures A..D; 4 = trigon left, 5 = trigon top,
    // 6 = trigon right
    // edges: 0..3 loops; 4 = LT, 5 = TR, 6 = RL trigon sides;
    // 7 = a, 8 = b, 9 = c, 10 = d
    let mut edges = vec![
        monogon_loop("A", 0),
        monogon_loop("B", 1),
        monogon_loop("C", 2),
        monogon_loop("D", 3),
    ];
    edges.push(Edge {
        label: "LT".to_string(),
        kind: EdgeKind::Infinitesimal,
        ends: [
            EdgeEnd { vertex: 4, ray: Ray::Plus },
            EdgeEnd { vertex: 5, ray: Ray::Minus },
        ],
    });
    edges.push(Edge {
        label: "TR".to_string(),
        kind: EdgeKind::Infinitesimal,
        ends: [
            EdgeEnd { vertex: 5, ray: Ray::Minus },
            EdgeEnd { vertex: 6, ray: Ray::Minus },
        ],
    });
    edges.push(Edge {
        label: "RL".to_string(),
        kind: EdgeKind::Infinitesimal,
        ends: [
            EdgeEnd { vertex: 6, ray: Ray::Minus },
            EdgeEnd { vertex: 4, ray: Ray::Plus },
        ],
    });
    edges.push(real("a", 0, Ray::Plus, 1, Ray::Plus)); // 7
    edges.push(real("b", 1, Ray::Plus, 4, Ray::Minus)); // 8
    edges.push(real("c", 2, Ray::Plus, 6, Ray::Plus)); // 9
    edges.push(real("d", 5, Ray::Plus, 3, Ray::Plus)); // 10
    let vertices = vec![
        Vertex {
            rotation: vec![
                Dart { edge: 7, end: 0 },
                Dart { edge: 0, end: 0 },
                Dart { edge: 0, end: 1 },
            ],
        },
        Vertex {
            rotation: vec![
                Dart { edge: 8, end: 0 },
                Dart { edge: 7, end: 1 },
                Dart { edge: 1, end: 0 },
                Dart { edge: 1, end: 1 },
            ],
        },
        Vertex {
            rotation: vec![
                Dart { edge: 9, end: 0 },
                Dart { edge: 2, end: 0 },
                Dart { edge: 2, end: 1 },
            ],
        },
        Vertex {
            rotation: vec![
                Dart { edge: 10, end: 1 },
                Dart { edge: 3, end: 0 },
                Dart { edge: 3, end: 1 },
            ],
        },
        // trigon left: RL end, LT start, b
        Vertex {
            rotation: vec![
                Dart { edge: 6, end: 1 },
                Dart { edge: 4, end: 0 },
                Dart { edge: 8, end: 1 },
            ],
        },
        // trigon top: d up, LT and TR down
        Vertex {
            rotation: vec![
                Dart { edge: 10, end: 0 },
                Dart { edge: 4, end: 1 },
                Dart { edge: 5, end: 0 },
            ],
        },
        // trigon right: TR end, RL start, c
        Vertex {
            rotation: vec![
                Dart { edge: 5, end: 1 },
                Dart { edge: 6, end: 0 },
                Dart { edge: 9, end: 1 },
            ],
        },
    ];
    let polygons = vec![
        prong_polygon(1, 0, 0),
        prong_polygon(2, 1, 1),
        prong_polygon(3, 2, 2),
        prong_polygon(4, 3, 3),
        Polygon {
            kind: PolygonKind::Interior,
            label: "Q".to_string(),
            vertices: vec![4, 5, 6],
            sides: vec![4, 5, 6],
        },
    ];
    TrainTrack { punctures: 4, polygons, vertices, edges, wraps: Vec::new() }
}

/// The invariant track of the braid family on n+4 punctures: monogons
/// everywhere, `a1` the 1–3 arc, `a2` the 1–2 arc, and a fan
/// `a3..a(n+3)` from site 3 to sites 4..n+4.
pub fn appendix_a_seed(n: usize) -> TrainTrack {
    assert!(n >= 1);
    let m = n + 4;
    let mut edges: Vec<Edge> = (0..m).map(|i| monogon_loop(&prong_letter(i + 1), i)).collect();
    // reals: m = a1 (1-3), m+1 = a2 (1-2), m+j-1 = aj (3, j+1) for j>=3
    edges.push(real("a1", 0, Ray::Plus, 2, Ray::Plus));
    edges.push(real("a2", 0, Ray::Plus, 1, Ray::Plus));
    for j in 3..=n + 3 {
        edges.push(real(&format!("a{j}"), 2, Ray::Plus, j + 1 - 1, Ray::Plus));
    }
    let mut vertices = Vec::with_capacity(m);
    for i in 0..m {
        let mut rotation: Vec<Dart> = Vec::new();
        match i {
            0 => {
                rotation.push(Dart { edge: m + 1, end: 0 }); // a2 tight
                rotation.push(Dart { edge: m, end: 0 }); // a1 above it
            }
            1 => rotation.push(Dart { edge: m + 1, end: 1 }),
            2 => {
                // fan ascending from the tightest arc, then a1 from the west
                for j in 3..=n + 3 {
                    rotation.push(Dart { edge: m + j - 1, end: 0 });
                }
                rotation.push(Dart { edge: m, end: 1 });
            }
            _ => rotation.push(Dart { edge: m + i - 1, end: 1 }),
        }
        rotation.push(Dart { edge: i, end: 0 });
        rotation.push(Dart { edge: i, end: 1 });
        vertices.push(Vertex { rotation });
    }
    let polygons = (0..m).map(|i| prong_polygon(i + 1, i, i)).collect();
    TrainTrack { punctures: m, polygons, vertices, edges, wraps: Vec::new() }
}

/// Loop in the B₃ automaton for a braid word over `{σ₁⁻¹, σ₂}`, one move
/// per letter. Letters are applied right to left, matching the composition
/// of mapping classes.
pub fn b3_word_loop(word: &[i32]) -> Result<AutomatonLoop, String> {
    if word.is_empty() {
        return Err("empty braid word".to_string());
    }
    for letter in word {
        if *letter != -1 && *letter != 2 {
            return Err(format!(
                "letter σ{}{} is outside the built-in B3 automaton (only σ1^-1 and σ2 translate \
                 directly; supply a path file for other words)",
                letter.abs(),
                if *letter < 0 { "^-1" } else { "" }
            ));
        }
    }
    let automaton = Automaton::build(&b3_seed(), usize::MAX, usize::MAX)?;
    let start = 0usize;
    let mut moves = Vec::new();
    for letter in word.iter().rev() {
        let spec = if *letter == 2 {
            FoldSpec::new("a", "b")
        } else {
            FoldSpec::new("b", "a")
        };
        let mv = automaton
            .edges
            .iter()
            .find(|m| m.source == start && fold_labels_match(m, &spec))
            .ok_or_else(|| "B3 automaton edge missing".to_string())?;
        moves.push(mv.clone());
    }
    automaton.close_loop(moves)
}

/// The three-move loop of `σ₁⁻¹σ₂σ₃` in the B₄ automaton.
pub fn b4_loop() -> Result<AutomatonLoop, String> {
    let automaton = Automaton::build(&b4_seed(), 64, 16)?;
    // moves: standard fold a▷b from the seed, then a▷d, then d▷a
    let seed_id = 0usize;
    let m1 = automaton
        .edges
        .iter()
        .find(|m| m.source == seed_id && fold_labels_match(m, &FoldSpec::new("a", "b")))
        .ok_or("B4 move a onto b missing")?
        .clone();
    let m2 = automaton
        .edges
        .iter()
        .find(|m| m.source == m1.target && fold_labels_match(m, &FoldSpec::new("a", "d")))
        .ok_or("B4 move a onto d missing")?
        .clone();
    let m3 = automaton
        .edges
        .iter()
        .find(|m| m.source == m2.target && fold_labels_match(m, &FoldSpec::new("d", "a")))
        .ok_or("B4 move d onto a missing")?
        .clone();
    automaton.close_loop(vec![m1, m2, m3])
}

/// The braid word of the family member `β_n = δ_n δ_3 σ_1` in `B(n+4)`,
/// with `δ_k = (σ_1 σ_2 ⋯ σ_k)^{-1}`.
pub fn appendix_a_word(n: usize) -> Vec<i32> {
    let mut word = Vec::new();
    for j in 1..=n + 3 {
        let _ = j;
    }
    // δ_n = (σ1…σ(n+3))^{-1} = σ(n+3)^{-1} … σ1^{-1}
    for j in (1..=n + 3).rev() {
        word.push(-(j as i32));
    }
    // δ_3 = (σ1 σ2 σ3)^{-1}
    for j in (1..=3).rev() {
        word.push(-j);
    }
    word.push(1);
    word
}

/// The decorated loop of the family member on n+4 punctures, shipped with
/// the decoration vectors of each move. All strands lie on a single cycle,
/// so only the signs of the decorations matter for the lift.
pub fn appendix_a_loop(n: usize) -> AutomatonLoop {
    let m = n + 4; // punctures
    let dim = n + 3; // real edges a1..a(n+3)
    let labels: Vec<String> = (1..=dim).map(|j| format!("a{j}")).collect();
    let label_index =
        |l: &str| labels.iter().position(|x| x == l).expect("family label");
    let unit_matrix = IntMatrix::identity(dim);
    let elementary = |from: &str, onto: &str| {
        let mut mx = unit_matrix.clone();
        mx.0[label_index(from)][label_index(onto)] += 1;
        mx
    };
    let mut moves: Vec<DecoratedMove> = Vec::new();
    let decoration_vec = |entries: Vec<(usize, i64)>| {
        let mut v = vec![Decoration::Unit; dim];
        for (idx, sign) in entries {
            v[idx] = Decoration::Prong { position: 0, sign };
        }
        v
    };
    // T1: fold a1 onto a2, standardizing braid σ1, decoration +1 on a2
    moves.push(DecoratedMove {
        id: 0,
        source: 0,
        target: 0,
        kind: MoveKind::Fold,
        fold: Some(FoldSpec::new("a1", "a2")),
        braid: vec![1],
        prong_perm: SignedPerm::identity(m),
        decorations: decoration_vec(vec![(label_index("a2"), 1)]),
        matrix: elementary("a1", "a2"),
        labels: labels.clone(),
    });
    // T2: fold a(n+3) onto a1; case 2, decoration -1 on everything except
    // the folded edge
    let entries: Vec<(usize, i64)> = (0..dim - 1).map(|i| (i, -1)).collect();
    moves.push(DecoratedMove {
        id: 1,
        source: 0,
        target: 0,
        kind: MoveKind::Fold,
        fold: Some(FoldSpec::new(&format!("a{}", n + 3), "a1")),
        braid: (1..=3).rev().map(|j| -j).collect(),
        prong_perm: SignedPerm::identity(m),
        decorations: decoration_vec(entries),
        matrix: elementary(&format!("a{}", n + 3), "a1"),
        labels: labels.clone(),
    });
    // Ti, i = 3..n+1: fold a(n+5-i) onto a1; case 1, decoration +1 on the
    // folded edge itself
    for i in 3..=n + 1 {
        let folded = format!("a{}", n + 5 - i);
        moves.push(DecoratedMove {
            id: moves.len(),
            source: 0,
            target: 0,
            kind: MoveKind::Fold,
            fold: Some(FoldSpec::new(&folded, "a1")),
            braid: Vec::new(),
            prong_perm: SignedPerm::identity(m),
            decorations: decoration_vec(vec![(label_index(&folded), 1)]),
            matrix: elementary(&folded, "a1"),
            labels: labels.clone(),
        });
    }
    // T(n+2): braid-only move by δ_n; decoration -1 everywhere
    let entries: Vec<(usize, i64)> = (0..dim).map(|i| (i, -1)).collect();
    moves.push(DecoratedMove {
        id: moves.len(),
        source: 0,
        target: 0,
        kind: MoveKind::BraidOnly,
        fold: None,
        braid: (1..=n + 3).rev().map(|j| -(j as i32)).collect(),
        prong_perm: SignedPerm::identity(m),
        decorations: decoration_vec(entries),
        matrix: unit_matrix.clone(),
        labels: labels.clone(),
    });
    // relabeling: a1 fixed; a2 -> a(n+3); aj -> a(j-1) for j >= 3
    let mut relabel = vec![0usize; dim];
    relabel[label_index("a1")] = label_index("a1");
    relabel[label_index("a2")] = label_index(&format!("a{}", n + 3));
    for j in 3..=n + 3 {
        relabel[label_index(&format!("a{j}"))] = label_index(&format!("a{}", j - 1));
    }
    AutomatonLoop {
        moves,
        relabel,
        labels,
        punctures: m,
        start_track: Some(appendix_a_seed(n)),
        braid_word: appendix_a_word(n),
        interior_orbits: Vec::new(),
    }
}
