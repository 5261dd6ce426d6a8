//! Shared fixtures for the integration suites: the corpus complexes and
//! maps, the degree-d wrap maps on circle subdivisions, and seeded random
//! generators for complexes and simplicial self-maps.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use lefschetz_core::ratio::ratio;
use lefschetz_core::{
    custom_subdivision, identity_subdivision, BarycentricPoint, Complex, SimplicialMap, VertexId,
};

pub fn circle() -> Complex {
    Complex::from_maximal([[0, 1], [1, 2], [0, 2]]).unwrap()
}

pub fn square() -> Complex {
    Complex::from_maximal([[0, 1], [1, 2], [2, 3], [0, 3]]).unwrap()
}

pub fn triangle() -> Complex {
    Complex::from_maximal([[0, 1, 2]]).unwrap()
}

/// Boundary of the 3-simplex: a 2-sphere.
pub fn sphere() -> Complex {
    Complex::from_maximal([[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap()
}

pub fn rotation() -> SimplicialMap {
    SimplicialMap::from_labels(identity_subdivision(&circle()), [(0, 1), (1, 2), (2, 0)]).unwrap()
}

pub fn reflection() -> SimplicialMap {
    SimplicialMap::from_labels(identity_subdivision(&circle()), [(0, 0), (1, 2), (2, 1)]).unwrap()
}

pub fn constant_map(complex: &Complex, target: u32) -> SimplicialMap {
    let images = complex.vertices().into_iter().map(|v| (v.0, target));
    SimplicialMap::from_labels(identity_subdivision(complex), images).unwrap()
}

pub fn square_rotation() -> SimplicialMap {
    SimplicialMap::from_labels(
        identity_subdivision(&square()),
        [(0, 1), (1, 2), (2, 3), (3, 0)],
    )
    .unwrap()
}

/// p_i ↦ p_{1−i mod 4}: swaps 0↔1 and 2↔3, fixing two edge midpoints.
pub fn square_reflection() -> SimplicialMap {
    SimplicialMap::from_labels(
        identity_subdivision(&square()),
        [(0, 1), (1, 0), (2, 3), (3, 2)],
    )
    .unwrap()
}

/// 3-circle reflection on the 4-gon labels: fixes vertex 0.
pub fn square_vertex_reflection() -> SimplicialMap {
    SimplicialMap::from_labels(
        identity_subdivision(&square()),
        [(0, 0), (1, 3), (2, 2), (3, 1)],
    )
    .unwrap()
}

/// The hexagon subdivision of the 3-circle: 3, 4, 5 at the midpoints of
/// [0,1], [1,2], [0,2].
pub fn hexagon() -> lefschetz_core::SubdividedComplex {
    let mut locations = BTreeMap::new();
    locations.insert(3, midpoint(0, 1));
    locations.insert(4, midpoint(1, 2));
    locations.insert(5, midpoint(0, 2));
    custom_subdivision(
        &circle(),
        vec![
            vec![0, 3],
            vec![1, 3],
            vec![1, 4],
            vec![2, 4],
            vec![2, 5],
            vec![0, 5],
        ],
        locations,
    )
    .unwrap()
}

/// The degree-2 doubling map on the hexagon over the 3-circle.
pub fn hexagon_doubling() -> SimplicialMap {
    SimplicialMap::from_labels(hexagon(), [(0, 0), (3, 1), (1, 2), (4, 0), (2, 1), (5, 2)]).unwrap()
}

pub fn midpoint(a: u32, b: u32) -> BarycentricPoint {
    let mut w = BTreeMap::new();
    w.insert(VertexId(a), ratio(1, 2));
    w.insert(VertexId(b), ratio(1, 2));
    BarycentricPoint::new(w).unwrap()
}

/// The standard degree-`d` wrap map on the circle with `3·max(1,|d|)` edges,
/// presented as a subdivision of the 3-circle.
///
/// Refined vertices sit equally spaced around the circle; position `j` maps
/// to base vertex `(sgn(d)·j + [d = 1]) mod 3`, so `d = 1` is the rotation,
/// `d = 0` the constant map at vertex 0, and `d = 2` the hexagon doubling.
pub fn wrap_map(d: i64) -> SimplicialMap {
    let segments = d.unsigned_abs().max(1) as u32; // refined edges per base edge
    let n = 3 * segments;
    // labels around the circle: base vertices keep 0,1,2, the rest are fresh
    let mut labels = Vec::with_capacity(n as usize);
    let mut next = 3;
    for j in 0..n {
        if j % segments == 0 {
            labels.push(j / segments);
        } else {
            labels.push(next);
            next += 1;
        }
    }
    let mut locations = BTreeMap::new();
    for j in 0..n {
        let within = j % segments;
        if within == 0 {
            continue;
        }
        let from = j / segments; // base vertex behind position j
        let to = (from + 1) % 3;
        let t = ratio(within as i64, segments as i64);
        let mut w = BTreeMap::new();
        w.insert(VertexId(from), ratio(1, 1) - t.clone());
        w.insert(VertexId(to), t);
        locations.insert(labels[j as usize], BarycentricPoint::new(w).unwrap());
    }
    let maximal: Vec<Vec<u32>> = (0..n)
        .map(|j| vec![labels[j as usize], labels[((j + 1) % n) as usize]])
        .collect();
    let subdivision = custom_subdivision(&circle(), maximal, locations).unwrap();
    let offset: i64 = if d == 1 { 1 } else { 0 };
    let images = (0..n).map(|j| {
        let position = if d == 0 {
            0
        } else {
            (d.signum() * j as i64 + offset).rem_euclid(3)
        };
        (labels[j as usize], position as u32)
    });
    SimplicialMap::from_labels(subdivision, images).unwrap()
}

/// A random complex with at most `max_vertices` vertices and dimension ≤ 2.
pub fn random_complex(rng: &mut impl Rng, max_vertices: u32) -> Complex {
    let nv = rng.gen_range(1..=max_vertices);
    let count = rng.gen_range(1..=12);
    let maximal: Vec<Vec<u32>> = (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=3usize).min(nv as usize);
            let mut verts: Vec<u32> = (0..nv).collect();
            verts.shuffle(rng);
            verts.truncate(size);
            verts
        })
        .collect();
    Complex::from_maximal(maximal).unwrap()
}

/// A random valid simplicial self-map of the complex (identity subdivision):
/// a mix of the identity, maps into the vertex set of one simplex (always
/// simplicial), and rejection-sampled arbitrary vertex maps.
pub fn random_self_map(rng: &mut impl Rng, complex: &Complex) -> SimplicialMap {
    let vertices = complex.vertices();
    match rng.gen_range(0..4u8) {
        0 => SimplicialMap::identity(complex),
        1 | 2 => {
            let simplices: Vec<_> = complex.simplices().cloned().collect();
            let target = simplices[rng.gen_range(0..simplices.len())].clone();
            let images = vertices.iter().map(|v| {
                let tv = target.vertices()[rng.gen_range(0..target.vertices().len())];
                (v.0, tv.0)
            });
            SimplicialMap::from_labels(identity_subdivision(complex), images.collect::<Vec<_>>())
                .unwrap()
        }
        _ => {
            for _ in 0..30 {
                let images: Vec<(u32, u32)> = vertices
                    .iter()
                    .map(|v| (v.0, vertices[rng.gen_range(0..vertices.len())].0))
                    .collect();
                if let Ok(map) = SimplicialMap::from_labels(identity_subdivision(complex), images) {
                    return map;
                }
            }
            constant_map(complex, vertices[0].0)
        }
    }
}
