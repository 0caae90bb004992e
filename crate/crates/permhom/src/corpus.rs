//! Built-in example complexes.
//!
//! The corpus is frozen: these names and triangulations are relied on by the
//! test suites and the command-line tool.

use crate::simplicial::{SimplicialComplex, Vertex};

/// The solid n-simplex.
pub fn simplex(n: usize) -> SimplicialComplex {
    let tuple: Vec<Vertex> = (0..=n as Vertex).collect();
    SimplicialComplex::from_maximal([tuple]).unwrap()
}

/// The boundary of the (n+1)-simplex, a combinatorial n-sphere.
pub fn sphere(n: usize) -> SimplicialComplex {
    let all: Vec<Vertex> = (0..=(n + 1) as Vertex).collect();
    let mut faces = Vec::new();
    for drop in 0..all.len() {
        let mut f = all.clone();
        f.remove(drop);
        faces.push(f);
    }
    SimplicialComplex::from_maximal(faces).unwrap()
}

/// The 7-vertex triangulation of the torus (vertices 0..6, faces
/// {i, i+1, i+3} and {i, i+2, i+3} mod 7).
pub fn torus7() -> SimplicialComplex {
    let mut faces = Vec::new();
    for i in 0..7i64 {
        faces.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        faces.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    SimplicialComplex::from_maximal(faces).unwrap()
}

/// The 6-vertex triangulation of the real projective plane.
pub fn rp2_6() -> SimplicialComplex {
    let faces: [[Vertex; 3]; 10] = [
        [1, 2, 4],
        [1, 2, 6],
        [1, 3, 4],
        [1, 3, 5],
        [1, 5, 6],
        [2, 3, 5],
        [2, 3, 6],
        [2, 4, 5],
        [3, 4, 6],
        [4, 5, 6],
    ];
    SimplicialComplex::from_maximal(faces).unwrap()
}

/// The 5-vertex Moebius band (faces {i, i+1, i+2} mod 5). Its boundary is
/// the 5-cycle of "diagonal" edges {i, i+2}.
pub fn moebius() -> SimplicialComplex {
    let mut faces = Vec::new();
    for i in 0..5i64 {
        faces.push(vec![i, (i + 1) % 5, (i + 2) % 5]);
    }
    SimplicialComplex::from_maximal(faces).unwrap()
}

/// The boundary circle of the Moebius band above, as a standalone complex.
pub fn moebius_boundary() -> SimplicialComplex {
    let mut edges = Vec::new();
    for i in 0..5i64 {
        edges.push(vec![i, (i + 2) % 5]);
    }
    SimplicialComplex::from_maximal(edges).unwrap()
}

/// The three-page book: three triangles sharing the spine edge [0, 1].
pub fn book3() -> SimplicialComplex {
    SimplicialComplex::from_maximal([[0i64, 1, 2], [0, 1, 3], [0, 1, 4]]).unwrap()
}

/// The suspension of two disjoint circles: two 2-spheres sharing their north
/// pole 0 and south pole 1. A closed pseudomanifold that is not a homology
/// manifold at the poles.
pub fn x_pp() -> SimplicialComplex {
    let circle_a = [(2i64, 3i64), (3, 4), (2, 4)];
    let circle_b = [(5i64, 6i64), (6, 7), (5, 7)];
    let mut faces = Vec::new();
    for &(a, b) in circle_a.iter().chain(circle_b.iter()) {
        faces.push(vec![0, a, b]);
        faces.push(vec![1, a, b]);
    }
    SimplicialComplex::from_maximal(faces).unwrap()
}

/// Cone over a complex: adds one apex vertex joined to every simplex.
pub fn cone(base: &SimplicialComplex, apex: Vertex) -> SimplicialComplex {
    assert!(!base.vertices().any(|v| v == apex), "apex must be a fresh vertex");
    let mut faces = Vec::new();
    let top = base.dim().max(0) as usize;
    for k in 0..=top {
        for t in base.simplexes(k) {
            let mut f = t.clone();
            f.push(apex);
            faces.push(f);
        }
    }
    SimplicialComplex::from_maximal(faces).unwrap()
}

/// Suspension of a complex: cones from two fresh poles.
pub fn suspension(base: &SimplicialComplex, north: Vertex, south: Vertex) -> SimplicialComplex {
    assert!(north != south);
    assert!(!base.vertices().any(|v| v == north || v == south));
    let mut faces = Vec::new();
    let top = base.dim().max(0) as usize;
    for k in 0..=top {
        for t in base.simplexes(k) {
            let mut f = t.clone();
            f.push(north);
            faces.push(f);
            let mut g = t.clone();
            g.push(south);
            faces.push(g);
        }
    }
    SimplicialComplex::from_maximal(faces).unwrap()
}

/// Suspension of the 7-vertex torus (poles 7 and 8).
pub fn susp_torus() -> SimplicialComplex {
    suspension(&torus7(), 7, 8)
}

/// Cone over the 7-vertex torus (apex 7).
pub fn cone_torus() -> SimplicialComplex {
    cone(&torus7(), 7)
}

/// Frozen names of the built-in corpus.
pub const BUILTIN_NAMES: &[&str] = &[
    "simplex1",
    "simplex2",
    "simplex3",
    "sphere1",
    "sphere2",
    "sphere3",
    "torus7",
    "rp2_6",
    "moebius",
    "book3",
    "x_pp",
    "susp_torus",
    "cone_torus",
];

/// Looks a built-in complex up by its frozen name.
pub fn builtin(name: &str) -> Option<SimplicialComplex> {
    match name {
        "simplex1" => Some(simplex(1)),
        "simplex2" => Some(simplex(2)),
        "simplex3" => Some(simplex(3)),
        "sphere1" => Some(sphere(1)),
        "sphere2" => Some(sphere(2)),
        "sphere3" => Some(sphere(3)),
        "torus7" => Some(torus7()),
        "rp2_6" => Some(rp2_6()),
        "moebius" => Some(moebius()),
        "book3" => Some(book3()),
        "x_pp" => Some(x_pp()),
        "susp_torus" => Some(susp_torus()),
        "cone_torus" => Some(cone_torus()),
        _ => None,
    }
}
