//! Subdivisions of a base complex with exact barycentric geometry.
//!
//! A [`SubdividedComplex`] is a pair of complexes `X' / X` together with a
//! [`BarycentricPoint`] location for every `X'`-vertex, expressed in the
//! coordinates of `X`. Iterated subdivisions stay rooted in the original
//! base, so chains on `X` and on any refinement are directly comparable.
//!
//! The subdivision chain operator sends a base `q`-simplex to the signed sum
//! of the refined `q`-simplices tiling it. The sign of each refined simplex
//! is the sign of the determinant of its vertices' barycentric coordinates
//! in the base simplex's ascending frame; this is the unique sign choice
//! with that support that commutes with the boundary operator, which the
//! chain-level and homological evaluators both rely on.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use crate::chain::{Chain, ChainOperator};
use crate::complex::{Complex, Simplex, VertexId};
use crate::error::{Error, Result};
use crate::ratio::Rational;

/// A point of the base complex in exact barycentric coordinates.
///
/// The carrier is implicit: it is the support of the weight map, which by
/// the positivity invariant is the minimal simplex containing the point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BarycentricPoint {
    weights: BTreeMap<VertexId, Rational>,
}

impl BarycentricPoint {
    /// Validates that all weights are strictly positive and sum to one.
    pub fn new(weights: BTreeMap<VertexId, Rational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::MalformedInput(
                "barycentric point with no weights".into(),
            ));
        }
        if let Some((v, w)) = weights.iter().find(|(_, w)| !w.is_positive()) {
            return Err(Error::MalformedInput(format!(
                "barycentric weight {w} on vertex {v} is not strictly positive"
            )));
        }
        let total: Rational = weights.values().cloned().sum();
        if !total.is_one() {
            return Err(Error::MalformedInput(format!(
                "barycentric weights sum to {total}, expected 1"
            )));
        }
        Ok(Self { weights })
    }

    /// The base vertex itself, with weight one.
    pub fn at_vertex(v: VertexId) -> Self {
        let mut weights = BTreeMap::new();
        weights.insert(v, Rational::one());
        Self { weights }
    }

    /// The minimal base simplex containing the point.
    pub fn carrier(&self) -> Simplex {
        Simplex::new(self.weights.keys().map(|v| v.0)).expect("support is non-empty and distinct")
    }

    /// Weight on `v`; zero off the carrier.
    pub fn weight(&self, v: VertexId) -> Rational {
        self.weights.get(&v).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn weights(&self) -> impl Iterator<Item = (&VertexId, &Rational)> {
        self.weights.iter()
    }

    /// Affine combination of points lying in a common base simplex. The
    /// coefficients must be strictly positive and sum to one, so the result
    /// is again a valid point.
    pub fn combine(terms: &[(Rational, &BarycentricPoint)]) -> Result<Self> {
        let mut weights: BTreeMap<VertexId, Rational> = BTreeMap::new();
        for (coeff, point) in terms {
            for (v, w) in point.weights() {
                *weights.entry(*v).or_insert_with(Rational::zero) += coeff.clone() * w;
            }
        }
        weights.retain(|_, w| !w.is_zero());
        Self::new(weights)
    }
}

/// A complex `X'` refining a base complex `X`, with a located vertex set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubdividedComplex {
    base: Complex,
    refined: Complex,
    locations: BTreeMap<VertexId, BarycentricPoint>,
}

impl SubdividedComplex {
    pub fn base(&self) -> &Complex {
        &self.base
    }

    pub fn refined(&self) -> &Complex {
        &self.refined
    }

    pub fn location(&self, v: VertexId) -> &BarycentricPoint {
        &self.locations[&v]
    }

    /// The minimal base simplex containing the refined simplex `x`: the
    /// union of the supports of its vertices' locations.
    pub fn carrier_of(&self, x: &Simplex) -> Simplex {
        carrier_from_locations(&self.locations, x)
    }
}

fn carrier_from_locations(
    locations: &BTreeMap<VertexId, BarycentricPoint>,
    x: &Simplex,
) -> Simplex {
    let support: BTreeSet<u32> = x
        .vertices()
        .iter()
        .flat_map(|v| locations[v].weights().map(|(b, _)| b.0))
        .collect();
    Simplex::new(support).expect("carrier support is non-empty")
}

/// The trivial subdivision: `X' = X`, every vertex located at itself.
pub fn identity_subdivision(base: &Complex) -> SubdividedComplex {
    let locations = base
        .vertices()
        .into_iter()
        .map(|v| (v, BarycentricPoint::at_vertex(v)))
        .collect();
    SubdividedComplex {
        refined: base.clone(),
        base: base.clone(),
        locations,
    }
}

/// One round of barycentric subdivision: one new vertex per positive-
/// dimensional simplex of the refined complex, located at its barycenter in
/// the coordinates of the original base, and one refined simplex per chain
/// of the face poset.
pub fn barycentric_subdivide(k: &SubdividedComplex) -> SubdividedComplex {
    if k.refined.is_empty() {
        return k.clone();
    }
    // label map: vertices keep their labels, higher simplices get fresh ones
    let mut next = k
        .refined
        .vertices()
        .iter()
        .map(|v| v.0)
        .max()
        .map_or(0, |m| m + 1);
    let mut label_of: BTreeMap<Simplex, VertexId> = BTreeMap::new();
    for s in k.refined.simplices() {
        if s.dim() == 0 {
            label_of.insert(s.clone(), s.vertices()[0]);
        } else {
            label_of.insert(s.clone(), VertexId(next));
            next += 1;
        }
    }

    let mut locations: BTreeMap<VertexId, BarycentricPoint> = BTreeMap::new();
    for (s, label) in &label_of {
        let share = Rational::new(1.into(), ((s.dim() + 1) as i64).into());
        let terms: Vec<(Rational, &BarycentricPoint)> = s
            .vertices()
            .iter()
            .map(|v| (share.clone(), &k.locations[v]))
            .collect();
        let point = BarycentricPoint::combine(&terms)
            .expect("barycenter of located vertices is a valid point");
        locations.insert(*label, point);
    }

    // flags: strictly increasing chains in the face poset
    let members: Vec<&Simplex> = k.refined.simplices().collect();
    let mut flags: Vec<Simplex> = Vec::new();
    let mut chain: Vec<&Simplex> = Vec::new();
    fn extend<'a>(
        chain: &mut Vec<&'a Simplex>,
        members: &[&'a Simplex],
        label_of: &BTreeMap<Simplex, VertexId>,
        flags: &mut Vec<Simplex>,
    ) {
        let labels: Vec<u32> = chain.iter().map(|s| label_of[*s].0).collect();
        flags.push(Simplex::new(labels).expect("flag labels are distinct"));
        let last = *chain.last().expect("chain is non-empty");
        for t in members {
            if last != *t && last.is_face_of(t) {
                chain.push(t);
                extend(chain, members, label_of, flags);
                chain.pop();
            }
        }
    }
    for s in &members {
        chain.push(s);
        extend(&mut chain, &members, &label_of, &mut flags);
        chain.pop();
    }

    let refined = Complex::from_simplices(flags);
    let sub = SubdividedComplex {
        base: k.base.clone(),
        refined,
        locations,
    };
    debug_assert!(validate(&sub).is_ok());
    sub
}

/// Builds and fully validates a subdivision from explicit data.
///
/// Base vertices may be omitted from `locations`; they are located at
/// themselves. Every other refined vertex must be located, every refined
/// simplex must have a carrier in the base with affinely independent
/// vertices, and the same-dimensional refined simplices carried by each
/// base simplex must tile it (unsigned volumes summing to one).
pub fn custom_subdivision(
    base: &Complex,
    refined_maximal: Vec<Vec<u32>>,
    mut locations: BTreeMap<u32, BarycentricPoint>,
) -> Result<SubdividedComplex> {
    let refined = Complex::from_maximal(refined_maximal)?;
    let mut located: BTreeMap<VertexId, BarycentricPoint> = BTreeMap::new();
    for v in refined.vertices() {
        match locations.remove(&v.0) {
            Some(p) => {
                located.insert(v, p);
            }
            None => {
                if base.contains(&Simplex::vertex(v.0)) {
                    located.insert(v, BarycentricPoint::at_vertex(v));
                } else {
                    return Err(Error::MalformedInput(format!(
                        "no location given for refined vertex {v}"
                    )));
                }
            }
        }
    }
    if let Some((v, _)) = locations.iter().next() {
        return Err(Error::MalformedInput(format!(
            "location given for unknown vertex {v}"
        )));
    }
    let sub = SubdividedComplex {
        base: base.clone(),
        refined,
        locations: located,
    };
    validate(&sub)?;
    Ok(sub)
}

/// Full validity check; used by `custom_subdivision` and as a re-ingestion
/// check in tests.
pub fn validate(sub: &SubdividedComplex) -> Result<()> {
    // base vertices appear in the refinement, located at themselves
    for v in sub.base.vertices() {
        if !sub.refined.contains(&Simplex::vertex(v.0)) {
            return Err(Error::InvalidSubdivision(format!(
                "base vertex {v} missing from the refined complex"
            )));
        }
        if sub.locations.get(&v) != Some(&BarycentricPoint::at_vertex(v)) {
            return Err(Error::InvalidSubdivision(format!(
                "base vertex {v} is not located at itself"
            )));
        }
    }
    for v in sub.refined.vertices() {
        if !sub.locations.contains_key(&v) {
            return Err(Error::MalformedInput(format!(
                "no location given for refined vertex {v}"
            )));
        }
    }
    // carriers exist and located vertices are affinely independent;
    // checking maximal simplices covers their faces
    for x in sub.refined.maximal_simplices() {
        let carrier = carrier_from_locations(&sub.locations, x);
        if !sub.base.contains(&carrier) {
            return Err(Error::InvalidSubdivision(format!(
                "refined simplex {x} has no carrier: {carrier} is not a base simplex"
            )));
        }
        let coords = coordinate_matrix(sub, &carrier, x);
        if rank(coords) != x.vertices().len() {
            return Err(Error::InvalidSubdivision(format!(
                "located vertices of refined simplex {x} are affinely dependent"
            )));
        }
    }
    // unit tiling per base simplex
    for sigma in sub.base.simplices() {
        let mut total = Rational::zero();
        for x in sub.refined.simplices_of_dim(sigma.dim()) {
            if carrier_from_locations(&sub.locations, x) == *sigma {
                total += determinant(coordinate_matrix(sub, sigma, x)).abs();
            }
        }
        if !total.is_one() {
            return Err(Error::InvalidSubdivision(format!(
                "refined simplices carried by {sigma} have total volume {total}, expected 1"
            )));
        }
    }
    Ok(())
}

/// Coordinates of `x`'s located vertices in the frame of the base simplex
/// `sigma`: row `i` is the weight of `sigma`'s `i`-th vertex, column `j` the
/// `j`-th vertex of `x`, both in ascending order.
fn coordinate_matrix(sub: &SubdividedComplex, sigma: &Simplex, x: &Simplex) -> Vec<Vec<Rational>> {
    sigma
        .vertices()
        .iter()
        .map(|b| {
            x.vertices()
                .iter()
                .map(|v| sub.locations[v].weight(*b))
                .collect()
        })
        .collect()
}

/// Signed volume of the refined simplex `x` relative to the base simplex
/// `sigma` of the same dimension: the determinant of the barycentric
/// coordinates of `x`'s located vertices in `sigma`'s ascending frame.
pub fn relative_volume(sub: &SubdividedComplex, sigma: &Simplex, x: &Simplex) -> Rational {
    determinant(coordinate_matrix(sub, sigma, x))
}

/// Orientation of the refined simplex `x` relative to its base carrier
/// `sigma`, both taken with ascending vertex order: the sign of the
/// barycentric coordinate determinant. Requires `dim x == dim sigma` and
/// `carrier(x) == sigma`.
pub fn orientation_sign(sub: &SubdividedComplex, sigma: &Simplex, x: &Simplex) -> Rational {
    let det = determinant(coordinate_matrix(sub, sigma, x));
    match det.cmp(&Rational::zero()) {
        std::cmp::Ordering::Greater => Rational::one(),
        std::cmp::Ordering::Less => -Rational::one(),
        std::cmp::Ordering::Equal => Rational::zero(),
    }
}

/// The subdivision chain operator, one sparse matrix per dimension.
///
/// The column of a base `q`-simplex holds every refined `q`-simplex whose
/// carrier is exactly that simplex, signed by [`orientation_sign`]. The
/// identity subdivision yields identity matrices.
#[derive(Clone, Debug)]
pub struct SubdivisionOperator {
    per_dim: Vec<ChainOperator>,
}

impl SubdivisionOperator {
    /// The dimension-`q` block, mapping base `q`-chains to refined
    /// `q`-chains. Dimensions beyond the base complex give zero operators.
    pub fn operator(&self, q: usize) -> ChainOperator {
        self.per_dim
            .get(q)
            .cloned()
            .unwrap_or_else(|| ChainOperator::zero(q, q))
    }

    pub fn dims(&self) -> usize {
        self.per_dim.len()
    }
}

/// Builds the subdivision operator for all dimensions of the base complex.
pub fn subdivision_operator(sub: &SubdividedComplex) -> SubdivisionOperator {
    let Some(dim) = sub.base.dimension() else {
        return SubdivisionOperator {
            per_dim: Vec::new(),
        };
    };
    // carrier of every refined simplex, computed once
    let carriers: BTreeMap<&Simplex, Simplex> = sub
        .refined
        .simplices()
        .map(|x| (x, sub.carrier_of(x)))
        .collect();
    let per_dim = (0..=dim)
        .map(|q| {
            let columns = sub.base.simplices_of_dim(q).into_iter().map(|sigma| {
                let mut col = Chain::zero(q);
                for x in sub.refined.simplices_of_dim(q) {
                    if carriers[x] == *sigma {
                        col.add_term(x.clone(), orientation_sign(sub, sigma, x));
                    }
                }
                (sigma.clone(), col)
            });
            ChainOperator::from_columns(q, q, columns)
        })
        .collect();
    SubdivisionOperator { per_dim }
}

fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= pivot.clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / pivot.clone();
            let (top, bottom) = m.split_at_mut(r);
            for (entry, p) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *entry -= factor.clone() * p.clone();
            }
        }
    }
    det
}

fn rank(mut m: Vec<Vec<Rational>>) -> usize {
    if m.is_empty() {
        return 0;
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, rank);
        let pivot = m[rank][col].clone();
        for r in rank + 1..rows {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / pivot.clone();
            let (top, bottom) = m.split_at_mut(r);
            for (entry, p) in bottom[0][col..].iter_mut().zip(&top[rank][col..]) {
                *entry -= factor.clone() * p.clone();
            }
        }
        rank += 1;
    }
    rank
}
