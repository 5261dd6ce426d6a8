//! Finite abstract simplicial complexes and their subcomplex lattice.
//!
//! A [`Complex`] is a face-closed set of [`Simplex`] values over
//! integer-labeled vertices. Vertex labels are ordered, and ascending label
//! order is the canonical orientation everywhere in this crate: chain bases,
//! boundary signs and subdivision signs all refer to it. Complexes are
//! immutable after construction, so they can be shared freely.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

/// Vertex label. Distinct labels within a complex denote distinct vertices,
/// and the numeric order of labels is the canonical orientation order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A non-empty simplex, stored as a strictly increasing vertex sequence.
///
/// Dimension is `vertices.len() - 1`. The `Ord` impl is lexicographic on the
/// vertex sequence, which is the deterministic ordering used for chain bases
/// and homology pivots.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Simplex {
    vertices: Vec<VertexId>,
}

impl Simplex {
    /// Builds a simplex from vertex labels, sorting them. Rejects empty
    /// input and repeated vertices.
    pub fn new(labels: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut vertices: Vec<VertexId> = labels.into_iter().map(VertexId).collect();
        if vertices.is_empty() {
            return Err(Error::MalformedInput("empty simplex".into()));
        }
        vertices.sort();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedInput(format!(
                "duplicate vertex in simplex {:?}",
                vertices.iter().map(|v| v.0).collect::<Vec<_>>()
            )));
        }
        Ok(Self { vertices })
    }

    /// Builds from vertices already known to be sorted and distinct.
    pub(crate) fn from_sorted(vertices: Vec<VertexId>) -> Self {
        debug_assert!(!vertices.is_empty());
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Self { vertices }
    }

    pub fn vertex(label: u32) -> Self {
        Self {
            vertices: vec![VertexId(label)],
        }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// True iff `self`'s vertex set is contained in `other`'s.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.vertices.iter().all(|v| other.contains_vertex(*v))
    }

    /// The codimension-one face omitting the `i`-th vertex. Only valid for
    /// positive-dimensional simplices.
    pub fn facet(&self, i: usize) -> Simplex {
        let mut vertices = self.vertices.clone();
        vertices.remove(i);
        Simplex::from_sorted(vertices)
    }

    /// All non-empty subsets of the vertex set, including the simplex itself.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.vertices.len();
        let mut out = Vec::with_capacity((1 << n) - 1);
        for mask in 1u64..(1 << n) {
            let vertices: Vec<VertexId> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| self.vertices[i])
                .collect();
            out.push(Simplex::from_sorted(vertices));
        }
        out
    }

    /// All non-empty proper subsets of the vertex set.
    pub fn proper_faces(&self) -> Vec<Simplex> {
        let mut faces = self.faces();
        faces.retain(|f| f != self);
        faces
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// A simplex regarded as a single lattice cell rather than a face-closed
/// set. The open simplices of a complex partition its simplex set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct OpenSimplex(pub Simplex);

impl OpenSimplex {
    /// The closed simplex: this cell together with all its faces.
    pub fn closure(&self) -> Complex {
        Complex::closed_simplex(&self.0)
    }
}

/// A finite abstract simplicial complex: a face-closed set of simplices.
/// The empty complex is a valid value.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Complex {
    simplices: BTreeSet<Simplex>,
}

impl Complex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Face closure of the given maximal simplices. Idempotent: feeding the
    /// result's maximal simplices back reproduces the same complex.
    pub fn from_maximal<I>(maximal: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: IntoIterator<Item = u32>,
    {
        let mut simplices = BTreeSet::new();
        for labels in maximal {
            let s = Simplex::new(labels)?;
            simplices.extend(s.faces());
        }
        Ok(Self { simplices })
    }

    /// Face closure of an arbitrary set of simplices.
    pub fn from_simplices(simplices: impl IntoIterator<Item = Simplex>) -> Self {
        let mut closed = BTreeSet::new();
        for s in simplices {
            closed.extend(s.faces());
        }
        Self { simplices: closed }
    }

    /// Wraps a set already known to be face-closed; checked.
    pub fn from_closed_set(simplices: BTreeSet<Simplex>) -> Result<Self> {
        for s in &simplices {
            for f in s.proper_faces() {
                if !simplices.contains(&f) {
                    return Err(Error::MalformedInput(format!(
                        "set is not face-closed: {s} present but face {f} missing"
                    )));
                }
            }
        }
        Ok(Self { simplices })
    }

    /// The closed simplex: `x` together with all its faces.
    pub fn closed_simplex(x: &Simplex) -> Self {
        Self {
            simplices: x.faces().into_iter().collect(),
        }
    }

    /// The boundary complex of `x`: its closure minus `x` itself. For a
    /// vertex this is the empty complex.
    pub fn boundary_of_simplex(x: &Simplex) -> Self {
        Self {
            simplices: x.proper_faces().into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.contains(s)
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.dim()).max()
    }

    /// All simplices in lexicographic order.
    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter()
    }

    /// The `q`-simplices in lexicographic order.
    pub fn simplices_of_dim(&self, q: usize) -> Vec<&Simplex> {
        self.simplices.iter().filter(|s| s.dim() == q).collect()
    }

    /// Number of `q`-simplices for q = 0..=dim.
    pub fn counts_by_dim(&self) -> Vec<usize> {
        let Some(dim) = self.dimension() else {
            return Vec::new();
        };
        let mut counts = vec![0usize; dim + 1];
        for s in &self.simplices {
            counts[s.dim()] += 1;
        }
        counts
    }

    /// Simplices that are not a proper face of any other member.
    pub fn maximal_simplices(&self) -> Vec<&Simplex> {
        self.simplices
            .iter()
            .filter(|s| !self.simplices.iter().any(|t| t != *s && s.is_face_of(t)))
            .collect()
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        self.simplices
            .iter()
            .filter(|s| s.dim() == 0)
            .map(|s| s.vertices()[0])
            .collect()
    }

    /// Alternating count of simplices per dimension; 0 on the empty complex.
    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .map(|s| if s.dim() % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// Lattice join: set union of the simplex sets.
    pub fn union(&self, other: &Complex) -> Complex {
        Complex {
            simplices: self.simplices.union(&other.simplices).cloned().collect(),
        }
    }

    /// Lattice meet: set intersection of the simplex sets.
    pub fn intersection(&self, other: &Complex) -> Complex {
        Complex {
            simplices: self
                .simplices
                .intersection(&other.simplices)
                .cloned()
                .collect(),
        }
    }

    pub fn is_subcomplex_of(&self, other: &Complex) -> bool {
        self.simplices.is_subset(&other.simplices)
    }

    /// Decomposes the complex into its open simplices, each exactly once.
    pub fn open_simplices(&self) -> Vec<OpenSimplex> {
        self.simplices.iter().cloned().map(OpenSimplex).collect()
    }

    /// Streams every subcomplex (face-closed subset) exactly once, the empty
    /// complex included. Refuses complexes above `limit` simplices, since the
    /// count grows exponentially.
    pub fn subcomplexes_exhaustive(&self, limit: usize) -> Result<SubcomplexIter> {
        if self.len() > limit {
            return Err(Error::EnumerationTooLarge {
                size: self.len(),
                limit,
            });
        }
        Ok(SubcomplexIter::new(self))
    }

    /// Samples subcomplexes as face closures of random simplex subsets.
    pub fn sample_subcomplexes(&self, count: usize, rng: &mut impl Rng) -> Vec<Complex> {
        (0..count)
            .map(|_| {
                let chosen = self.simplices.iter().filter(|_| rng.gen_bool(0.5)).cloned();
                Complex::from_simplices(chosen)
            })
            .collect()
    }
}

/// Default cap for [`Complex::subcomplexes_exhaustive`].
pub const DEFAULT_ENUMERATION_LIMIT: usize = 20;

/// Depth-first enumeration of the down-sets of the face poset.
///
/// Simplices are scanned in ascending-dimension order; a simplex may be
/// included only when all of its facets are already included, which yields
/// each face-closed subset exactly once.
pub struct SubcomplexIter {
    // simplices sorted by (dim, lex); facet indices precomputed
    order: Vec<Simplex>,
    facets: Vec<Vec<usize>>,
    // DFS over decision prefixes: (next index, chosen membership bitset)
    stack: Vec<(usize, Vec<bool>)>,
}

impl SubcomplexIter {
    fn new(complex: &Complex) -> Self {
        let mut order: Vec<Simplex> = complex.simplices.iter().cloned().collect();
        order.sort_by_key(|s| (s.dim(), s.clone()));
        let index_of = |s: &Simplex| {
            order
                .binary_search_by_key(&(s.dim(), s.clone()), |t| (t.dim(), t.clone()))
                .unwrap()
        };
        let facets = order
            .iter()
            .map(|s| {
                if s.dim() == 0 {
                    Vec::new()
                } else {
                    (0..=s.dim()).map(|i| index_of(&s.facet(i))).collect()
                }
            })
            .collect();
        SubcomplexIter {
            order,
            facets,
            stack: vec![(0, Vec::new())],
        }
    }
}

impl Iterator for SubcomplexIter {
    type Item = Complex;

    fn next(&mut self) -> Option<Complex> {
        while let Some((i, chosen)) = self.stack.pop() {
            if i == self.order.len() {
                let simplices = self
                    .order
                    .iter()
                    .zip(&chosen)
                    .filter(|(_, &c)| c)
                    .map(|(s, _)| s.clone())
                    .collect();
                return Some(Complex { simplices });
            }
            let admissible = self.facets[i].iter().all(|&f| chosen[f]);
            let mut out = chosen.clone();
            out.push(false);
            if admissible {
                let mut inn = chosen;
                inn.push(true);
                self.stack.push((i + 1, inn));
            }
            self.stack.push((i + 1, out));
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn circle() -> Complex {
        Complex::from_maximal([[0, 1], [1, 2], [0, 2]]).unwrap()
    }

    fn sphere() -> Complex {
        Complex::from_maximal([[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap()
    }

    #[test]
    fn simplex_rejects_duplicates() {
        assert!(matches!(
            Simplex::new([1, 1]),
            Err(Error::MalformedInput(_))
        ));
        assert!(Simplex::new([]).is_err());
    }

    #[test]
    fn simplex_sorts_vertices() {
        let s = Simplex::new([3, 1, 2]).unwrap();
        assert_eq!(s.vertices(), &[VertexId(1), VertexId(2), VertexId(3)]);
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn circle_counts() {
        let c = circle();
        assert_eq!(c.counts_by_dim(), vec![3, 3]);
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn full_triangle_closure() {
        let t = Complex::from_maximal([[0, 1, 2]]).unwrap();
        assert_eq!(t.counts_by_dim(), vec![3, 3, 1]);
        assert_eq!(t.euler_characteristic(), 1);
        // idempotent under re-feeding maximal simplices
        let maximal: Vec<Vec<u32>> = t
            .maximal_simplices()
            .iter()
            .map(|s| s.vertices().iter().map(|v| v.0).collect())
            .collect();
        assert_eq!(Complex::from_maximal(maximal).unwrap(), t);
    }

    #[test]
    fn empty_complex() {
        let e = Complex::from_maximal(Vec::<Vec<u32>>::new()).unwrap();
        assert!(e.is_empty());
        assert_eq!(e.dimension(), None);
        assert_eq!(e.euler_characteristic(), 0);
    }

    #[test]
    fn boundary_of_triangle() {
        let b = Complex::boundary_of_simplex(&Simplex::new([0, 1, 2]).unwrap());
        assert_eq!(b.counts_by_dim(), vec![3, 3]);
        assert_eq!(b, circle());
    }

    #[test]
    fn boundary_of_vertex_is_empty() {
        let b = Complex::boundary_of_simplex(&Simplex::vertex(5));
        assert!(b.is_empty());
    }

    #[test]
    fn boundary_of_edge() {
        let b = Complex::boundary_of_simplex(&Simplex::new([1, 2]).unwrap());
        assert_eq!(b.counts_by_dim(), vec![2]);
        assert!(b.contains(&Simplex::vertex(1)));
        assert!(b.contains(&Simplex::vertex(2)));
    }

    #[test]
    fn lattice_union_intersection() {
        let a = Complex::from_maximal([[0, 1]]).unwrap();
        let b = Complex::from_maximal([[1, 2]]).unwrap();
        let u = a.union(&b);
        assert_eq!(u.counts_by_dim(), vec![3, 2]);
        let i = a.intersection(&b);
        assert_eq!(i.counts_by_dim(), vec![1]);
        assert!(i.contains(&Simplex::vertex(1)));

        let e = Complex::empty();
        assert_eq!(a.union(&e), a);
        assert_eq!(a.intersection(&e), e);
        assert_eq!(a.union(&a), a);
        assert_eq!(a.intersection(&a), a);
    }

    #[test]
    fn euler_of_sphere() {
        assert_eq!(sphere().euler_characteristic(), 2);
        assert_eq!(sphere().counts_by_dim(), vec![4, 6, 4]);
    }

    #[test]
    fn open_simplex_decomposition() {
        let edge = Complex::from_maximal([[0, 1]]).unwrap();
        let open = edge.open_simplices();
        assert_eq!(open.len(), 3);
        // concatenated closures reconstruct the complex
        let mut rebuilt = Complex::empty();
        for o in &open {
            rebuilt = rebuilt.union(&o.closure());
        }
        assert_eq!(rebuilt, edge);

        assert!(Complex::empty().open_simplices().is_empty());
        assert_eq!(circle().open_simplices().len(), 6);
    }

    // Independent oracle for subcomplex enumeration: brute force over all
    // 2^n subsets of the simplex set, keeping the face-closed ones.
    fn subcomplexes_brute(c: &Complex) -> BTreeSet<Vec<Simplex>> {
        let all: Vec<Simplex> = c.simplices().cloned().collect();
        let mut out = BTreeSet::new();
        for mask in 0u64..(1 << all.len()) {
            let subset: BTreeSet<Simplex> = (0..all.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| all[i].clone())
                .collect();
            if Complex::from_closed_set(subset.clone()).is_ok() {
                out.insert(subset.into_iter().collect());
            }
        }
        out
    }

    #[test]
    fn enumerate_subcomplexes_of_edge() {
        let edge = Complex::from_maximal([[0, 1]]).unwrap();
        let oracle = subcomplexes_brute(&edge);
        assert_eq!(oracle.len(), 5); // ∅, [0], [1], [0]+[1], the closed edge
        let listed: BTreeSet<Vec<Simplex>> = edge
            .subcomplexes_exhaustive(20)
            .unwrap()
            .map(|s| s.simplices().cloned().collect())
            .collect();
        assert_eq!(listed, oracle);
    }

    #[test]
    fn enumerate_subcomplexes_small_cases() {
        let v = Complex::from_maximal([[7]]).unwrap();
        assert_eq!(v.subcomplexes_exhaustive(20).unwrap().count(), 2);
        assert_eq!(
            Complex::empty()
                .subcomplexes_exhaustive(20)
                .unwrap()
                .count(),
            1
        );
        let circle = circle();
        let listed: BTreeSet<Vec<Simplex>> = circle
            .subcomplexes_exhaustive(20)
            .unwrap()
            .map(|s| s.simplices().cloned().collect())
            .collect();
        assert_eq!(listed, subcomplexes_brute(&circle));
        assert_eq!(listed.len(), 18);
    }

    #[test]
    fn lattice_laws_exhaustive_on_the_circle() {
        let subs: Vec<Complex> = circle().subcomplexes_exhaustive(20).unwrap().collect();
        for a in &subs {
            assert_eq!(a.union(a), *a);
            assert_eq!(a.intersection(a), *a);
            for b in &subs {
                assert_eq!(a.union(b), b.union(a));
                assert_eq!(a.intersection(b), b.intersection(a));
                for c in &subs {
                    assert_eq!(a.union(&b.union(c)), a.union(b).union(c));
                    assert_eq!(
                        a.intersection(&b.intersection(c)),
                        a.intersection(b).intersection(c)
                    );
                    assert_eq!(
                        a.intersection(&b.union(c)),
                        a.intersection(b).union(&a.intersection(c))
                    );
                    assert_eq!(
                        a.union(&b.intersection(c)),
                        a.union(b).intersection(&a.union(c))
                    );
                }
            }
        }
    }

    #[test]
    fn enumeration_refuses_large_complexes() {
        let c = sphere();
        assert!(matches!(
            c.subcomplexes_exhaustive(10),
            Err(Error::EnumerationTooLarge {
                size: 14,
                limit: 10
            })
        ));
    }

    #[test]
    fn sampled_subcomplexes_are_face_closed() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for sub in sphere().sample_subcomplexes(50, &mut rng) {
            let set: BTreeSet<Simplex> = sub.simplices().cloned().collect();
            assert!(Complex::from_closed_set(set).is_ok());
            assert!(sub.is_subcomplex_of(&sphere()));
        }
    }
}
