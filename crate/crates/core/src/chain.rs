//! Chain groups with exact rational coefficients, boundary operators, and
//! the composed operator whose trace carries the Lefschetz number.
//!
//! Chains are sparse maps from ascending-oriented simplices to rationals;
//! operators are sparse column maps keyed by simplex, so bases never have to
//! be re-indexed across subdivisions. The composed operator of a map/
//! subcomplex pair is `s ∘ f ∘ j`: restrict to the subcomplex, push through
//! the simplicial map with its permutation sign, and spread back over the
//! subdivision with orientation signs. Its diagonal entry at a simplex is
//! the self-coefficient `c(f, x) ∈ {−1, 0, +1}`: the orientation with which
//! `x` covers itself when it subdivides its own image.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::complex::{Complex, Simplex, VertexId};
use crate::error::{Error, Result};
use crate::ratio::{int, neg_one_pow, Rational};
use crate::subdivision::{
    identity_subdivision, orientation_sign, subdivision_operator, SubdividedComplex,
};

/// A formal rational sum of `q`-simplices. Zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Chain {
    dim: usize,
    terms: BTreeMap<Simplex, Rational>,
}

impl Chain {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_simplex(s: Simplex) -> Self {
        let dim = s.dim();
        let mut terms = BTreeMap::new();
        terms.insert(s, int(1));
        Self { dim, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, s: &Simplex) -> Rational {
        self.terms.get(s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, &Rational)> {
        self.terms.iter()
    }

    /// Adds `scale * s` to the chain, dropping the term if it cancels.
    pub fn add_term(&mut self, s: Simplex, scale: Rational) {
        debug_assert_eq!(s.dim(), self.dim);
        if scale.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(s) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += scale;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(scale);
            }
        }
    }

    /// `self += scale * other`.
    pub fn add_scaled(&mut self, other: &Chain, scale: &Rational) {
        debug_assert_eq!(self.dim, other.dim);
        if scale.is_zero() {
            return;
        }
        for (s, c) in &other.terms {
            let entry = self.terms.entry(s.clone()).or_insert_with(Rational::zero);
            *entry += scale.clone() * c;
        }
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn scaled(&self, scale: &Rational) -> Chain {
        if scale.is_zero() {
            return Chain::zero(self.dim);
        }
        Chain {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(s, c)| (s.clone(), c.clone() * scale))
                .collect(),
        }
    }

    /// The lexicographically largest term, used as an elimination pivot.
    pub fn pivot(&self) -> Option<(&Simplex, &Rational)> {
        self.terms.iter().next_back()
    }
}

/// A sparse rational matrix between chain groups, keyed by simplex. Zero
/// columns are omitted, so equal operators compare equal structurally.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainOperator {
    source_dim: usize,
    target_dim: usize,
    columns: BTreeMap<Simplex, Chain>,
}

impl ChainOperator {
    pub fn zero(source_dim: usize, target_dim: usize) -> Self {
        Self {
            source_dim,
            target_dim,
            columns: BTreeMap::new(),
        }
    }

    /// Identity on the `q`-simplices of a complex.
    pub fn identity(complex: &Complex, q: usize) -> Self {
        Self::from_columns(
            q,
            q,
            complex
                .simplices_of_dim(q)
                .into_iter()
                .map(|s| (s.clone(), Chain::from_simplex(s.clone()))),
        )
    }

    pub fn from_columns(
        source_dim: usize,
        target_dim: usize,
        columns: impl IntoIterator<Item = (Simplex, Chain)>,
    ) -> Self {
        let columns = columns.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self {
            source_dim,
            target_dim,
            columns,
        }
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn column(&self, s: &Simplex) -> Option<&Chain> {
        self.columns.get(s)
    }

    pub fn columns(&self) -> impl Iterator<Item = (&Simplex, &Chain)> {
        self.columns.iter()
    }

    pub fn apply(&self, chain: &Chain) -> Chain {
        debug_assert_eq!(chain.dim(), self.source_dim);
        let mut out = Chain::zero(self.target_dim);
        for (s, c) in chain.iter() {
            if let Some(col) = self.columns.get(s) {
                out.add_scaled(col, c);
            }
        }
        out
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ChainOperator) -> ChainOperator {
        debug_assert_eq!(inner.target_dim, self.source_dim);
        ChainOperator::from_columns(
            inner.source_dim,
            self.target_dim,
            inner
                .columns
                .iter()
                .map(|(s, col)| (s.clone(), self.apply(col))),
        )
    }

    /// Sum of diagonal entries. Only meaningful for endomorphisms.
    pub fn trace(&self) -> Rational {
        debug_assert_eq!(self.source_dim, self.target_dim);
        self.columns.iter().map(|(s, col)| col.coefficient(s)).sum()
    }
}

/// The simplicial boundary operator `∂_q` of a complex, with alternating
/// signs over ascending vertex order. Requires `q ≥ 1`.
pub fn boundary_operator(complex: &Complex, q: usize) -> ChainOperator {
    assert!(q >= 1, "boundary operator needs q >= 1");
    ChainOperator::from_columns(
        q,
        q - 1,
        complex
            .simplices_of_dim(q)
            .into_iter()
            .map(|s| (s.clone(), boundary_chain(s))),
    )
}

/// `∂x` as a chain: the alternating sum of the facets of `x`.
pub fn boundary_chain(x: &Simplex) -> Chain {
    let mut out = Chain::zero(x.dim().saturating_sub(1));
    if x.dim() == 0 {
        return out;
    }
    for i in 0..=x.dim() {
        out.add_term(x.facet(i), neg_one_pow(i));
    }
    out
}

/// A simplicial self-map presented on a subdivision: vertices of the
/// refined complex `X'` map to vertices of the base `X`, carrying simplices
/// to simplices (possibly degenerately). The un-subdivided case is the
/// identity subdivision.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialMap {
    domain: SubdividedComplex,
    vertex_images: BTreeMap<VertexId, VertexId>,
}

impl SimplicialMap {
    /// Validates totality and simpliciality: every refined vertex has an
    /// image vertex of the base, and the image vertex set of every refined
    /// simplex spans a base simplex.
    pub fn new(
        domain: SubdividedComplex,
        vertex_images: BTreeMap<VertexId, VertexId>,
    ) -> Result<Self> {
        for v in domain.refined().vertices() {
            let Some(img) = vertex_images.get(&v) else {
                return Err(Error::MalformedInput(format!(
                    "map is missing an image for vertex {v}"
                )));
            };
            if !domain.base().contains(&Simplex::vertex(img.0)) {
                return Err(Error::MalformedInput(format!(
                    "vertex {v} maps to {img}, which is not a base vertex"
                )));
            }
        }
        for v in vertex_images.keys() {
            if !domain.refined().contains(&Simplex::vertex(v.0)) {
                return Err(Error::MalformedInput(format!(
                    "map assigns an image to unknown vertex {v}"
                )));
            }
        }
        let map = Self {
            domain,
            vertex_images,
        };
        // checking maximal simplices covers all faces
        for x in map.domain.refined().maximal_simplices() {
            if map.image_simplex(x).is_none() {
                return Err(Error::NotSimplicial { simplex: x.clone() });
            }
        }
        Ok(map)
    }

    /// The identity map of a complex, over the identity subdivision.
    pub fn identity(complex: &Complex) -> Self {
        let vertex_images = complex.vertices().into_iter().map(|v| (v, v)).collect();
        Self::new(identity_subdivision(complex), vertex_images).expect("identity map is simplicial")
    }

    /// A map of the same complex given by vertex label pairs.
    pub fn from_labels(
        domain: SubdividedComplex,
        pairs: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self> {
        let vertex_images = pairs
            .into_iter()
            .map(|(v, w)| (VertexId(v), VertexId(w)))
            .collect();
        Self::new(domain, vertex_images)
    }

    pub fn domain(&self) -> &SubdividedComplex {
        &self.domain
    }

    pub fn refined(&self) -> &Complex {
        self.domain.refined()
    }

    pub fn base(&self) -> &Complex {
        self.domain.base()
    }

    pub fn image_of(&self, v: VertexId) -> VertexId {
        self.vertex_images[&v]
    }

    /// The base simplex spanned by the image vertex set, or `None` if it is
    /// not a base simplex.
    pub fn image_simplex(&self, x: &Simplex) -> Option<Simplex> {
        let labels: std::collections::BTreeSet<u32> = x
            .vertices()
            .iter()
            .map(|v| self.vertex_images[v].0)
            .collect();
        let image = Simplex::new(labels).expect("image vertex set is non-empty");
        self.domain.base().contains(&image).then_some(image)
    }

    /// The image simplex with the sign of the permutation that sorts the
    /// image vertices, or `None` when two vertices collide (the degenerate
    /// case, which induces zero on chains).
    pub fn signed_image(&self, x: &Simplex) -> Option<(Simplex, Rational)> {
        let images: Vec<VertexId> = x.vertices().iter().map(|v| self.vertex_images[v]).collect();
        for (i, a) in images.iter().enumerate() {
            if images[i + 1..].contains(a) {
                return None;
            }
        }
        let mut inversions = 0usize;
        for i in 0..images.len() {
            for j in i + 1..images.len() {
                if images[i] > images[j] {
                    inversions += 1;
                }
            }
        }
        let ordered = Simplex::new(images.iter().map(|v| v.0)).expect("distinct images");
        Some((ordered, neg_one_pow(inversions)))
    }
}

/// A simplicial map together with a subcomplex of its refined domain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MapPair {
    map: SimplicialMap,
    subcomplex: Complex,
}

impl MapPair {
    pub fn new(map: SimplicialMap, subcomplex: Complex) -> Result<Self> {
        if !subcomplex.is_subcomplex_of(map.refined()) {
            return Err(Error::NotASubcomplex("map pair subcomplex".into()));
        }
        Ok(Self { map, subcomplex })
    }

    /// The pair with the whole refined complex as subcomplex.
    pub fn whole(map: SimplicialMap) -> Self {
        let subcomplex = map.refined().clone();
        Self { map, subcomplex }
    }

    pub fn map(&self) -> &SimplicialMap {
        &self.map
    }

    pub fn subcomplex(&self) -> &Complex {
        &self.subcomplex
    }
}

/// The induced map on `q`-chains, `C_q(X') → C_q(X)`: permutation sign on
/// non-degenerate simplices, zero on degenerate ones.
pub fn induced_chain_map(map: &SimplicialMap, q: usize) -> ChainOperator {
    ChainOperator::from_columns(
        q,
        q,
        map.refined().simplices_of_dim(q).into_iter().map(|x| {
            let col = match map.signed_image(x) {
                Some((image, sign)) => {
                    debug_assert!(map.base().contains(&image));
                    let mut c = Chain::zero(q);
                    c.add_term(image, sign);
                    c
                }
                None => Chain::zero(q),
            };
            (x.clone(), col)
        }),
    )
}

/// The diagonal 0/1 projection of `C_q(ambient)` onto the span of the
/// `q`-simplices of the subcomplex `a`.
pub fn restriction_operator(a: &Complex, ambient: &Complex, q: usize) -> ChainOperator {
    assert!(
        a.is_subcomplex_of(ambient),
        "restriction target must be a subcomplex"
    );
    ChainOperator::identity(a, q)
}

/// The composed operator `s ∘ f_q ∘ j_A : C_q(X') → C_q(X')` of a pair.
pub fn lefschetz_chain_operator(pair: &MapPair, q: usize) -> ChainOperator {
    let j = restriction_operator(pair.subcomplex(), pair.map().refined(), q);
    let f = induced_chain_map(pair.map(), q);
    let s = subdivision_operator(pair.map().domain()).operator(q);
    s.compose(&f.compose(&j))
}

/// The self-coefficient `c(f, x)` for a simplex of the pair's subcomplex:
/// the diagonal entry of the composed operator at `x`. Zero when `x` lies
/// outside the subcomplex.
pub fn simplex_coefficient(pair: &MapPair, x: &Simplex) -> Rational {
    if !pair.subcomplex().contains(x) {
        return Rational::zero();
    }
    self_coefficient(pair.map(), x)
}

/// The diagonal entry of `s ∘ f` at `x`, which is `c(f, x)` for any pair
/// whose subcomplex contains `x`: ±1 when `x` is one of the subdivision
/// cells of its own image simplex, 0 otherwise.
pub(crate) fn self_coefficient(map: &SimplicialMap, x: &Simplex) -> Rational {
    let Some((image, sign)) = map.signed_image(x) else {
        return Rational::zero();
    };
    if image.dim() != x.dim() || map.domain().carrier_of(x) != image {
        return Rational::zero();
    }
    sign * orientation_sign(map.domain(), &image, x)
}

/// The matrix trace of the composed operator in dimension `q`.
pub fn chain_trace(pair: &MapPair, q: usize) -> Rational {
    lefschetz_chain_operator(pair, q).trace()
}

/// Alternating sum of chain traces over all dimensions of `X'`.
pub fn chain_lefschetz(pair: &MapPair) -> Rational {
    let Some(dim) = pair.map().refined().dimension() else {
        return Rational::zero();
    };
    (0..=dim)
        .map(|q| neg_one_pow(q) * chain_trace(pair, q))
        .sum()
}
