//! Simplicial homology with rational coefficients and induced maps.
//!
//! The basis of each homology group is produced by exact column reduction
//! with lexicographically largest simplices as pivots: the boundary image is
//! put in echelon form, kernels are extracted with combination tracking, and
//! the representatives completing the image to the kernel are kept, also in
//! echelon form. The deterministic pivot order makes induced matrices
//! reproducible across runs.
//!
//! Expressing an image chain in the basis requires the chain to be a cycle.
//! A non-cycle image means the composed operator failed to be a chain map,
//! which would make the homological trace meaningless; the computation
//! aborts with [`Error::InternalConsistency`] instead of projecting.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::chain::{boundary_chain, lefschetz_chain_operator, Chain, MapPair};
use crate::complex::{Complex, Simplex};
use crate::error::{Error, Result};
use crate::ratio::{neg_one_pow, Rational};

/// Per-dimension cycle bases of a complex, with the reduction data needed
/// to express any cycle in the basis modulo boundaries.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    complex: Complex,
    dims: Vec<DimBasis>,
}

#[derive(Clone, Debug)]
struct DimBasis {
    /// Echelon basis of the boundary image, keyed by pivot, pivots scaled
    /// to one.
    boundary: BTreeMap<Simplex, Chain>,
    /// Homology representative cycles, echelon against the boundary image
    /// and one another.
    cycles: Vec<Chain>,
}

/// Reduces `chain` against an echelon family, returning the coefficient
/// picked up on each member when tracking is requested.
fn reduce_against(chain: &mut Chain, family: &BTreeMap<Simplex, Chain>) {
    while let Some((p, c)) = chain.pivot() {
        let (p, c) = (p.clone(), c.clone());
        let Some(other) = family.get(&p) else { break };
        let factor = -(c / other
            .pivot()
            .expect("stored columns are non-zero")
            .1
            .clone());
        chain.add_scaled(other, &factor);
    }
}

fn echelon(cols: impl IntoIterator<Item = Chain>) -> BTreeMap<Simplex, Chain> {
    let mut out: BTreeMap<Simplex, Chain> = BTreeMap::new();
    for mut col in cols {
        reduce_against(&mut col, &out);
        if let Some((p, c)) = col.pivot() {
            let (p, inv) = (p.clone(), c.recip());
            out.insert(p, col.scaled(&inv));
        }
    }
    out
}

/// Kernel basis of `∂_q` via column reduction with combination tracking.
fn kernel_basis(complex: &Complex, q: usize) -> Vec<Chain> {
    if q == 0 {
        return complex
            .simplices_of_dim(0)
            .into_iter()
            .map(|s| Chain::from_simplex(s.clone()))
            .collect();
    }
    let mut reduced: BTreeMap<Simplex, (Chain, Chain)> = BTreeMap::new();
    let mut kernel = Vec::new();
    for x in complex.simplices_of_dim(q) {
        let mut r = boundary_chain(x);
        let mut v = Chain::from_simplex(x.clone());
        loop {
            let Some((p, c)) = r.pivot() else {
                kernel.push(v);
                break;
            };
            let (p, c) = (p.clone(), c.clone());
            match reduced.get(&p) {
                Some((r2, v2)) => {
                    let factor = -(c / r2.pivot().expect("non-zero").1.clone());
                    r.add_scaled(r2, &factor);
                    v.add_scaled(v2, &factor);
                }
                None => {
                    reduced.insert(p, (r, v));
                    break;
                }
            }
        }
    }
    kernel
}

/// Computes cycle bases and reduction data for every dimension of the
/// complex.
pub fn homology_basis(complex: &Complex) -> HomologyBasis {
    let mut dims = Vec::new();
    if let Some(top) = complex.dimension() {
        for q in 0..=top {
            let boundary = if q == top {
                BTreeMap::new()
            } else {
                echelon(
                    complex
                        .simplices_of_dim(q + 1)
                        .into_iter()
                        .map(boundary_chain),
                )
            };
            let mut cycles: Vec<Chain> = Vec::new();
            for mut z in kernel_basis(complex, q) {
                reduce_against(&mut z, &boundary);
                // reduce against previously accepted representatives
                while let Some((p, c)) = z.pivot() {
                    let Some(other) = cycles
                        .iter()
                        .find(|cy| cy.pivot().expect("non-zero").0 == p)
                    else {
                        break;
                    };
                    let factor = -(c.clone() / other.pivot().expect("non-zero").1.clone());
                    let other = other.clone();
                    z.add_scaled(&other, &factor);
                    reduce_against(&mut z, &boundary);
                }
                if let Some((_, c)) = z.pivot() {
                    let inv = c.recip();
                    cycles.push(z.scaled(&inv));
                }
            }
            dims.push(DimBasis { boundary, cycles });
        }
    }
    HomologyBasis {
        complex: complex.clone(),
        dims,
    }
}

impl HomologyBasis {
    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    /// Betti numbers per dimension.
    pub fn betti(&self) -> Vec<usize> {
        self.dims.iter().map(|d| d.cycles.len()).collect()
    }

    /// The representative cycles in dimension `q`.
    pub fn cycles(&self, q: usize) -> &[Chain] {
        self.dims.get(q).map_or(&[], |d| &d.cycles)
    }

    /// Expresses a cycle in the basis modulo boundaries. Fails if the chain
    /// does not reduce to zero, which means it was not a cycle of the
    /// complex.
    pub fn express(&self, q: usize, z: &Chain) -> Result<Vec<Rational>> {
        let Some(dim_basis) = self.dims.get(q) else {
            return if z.is_zero() {
                Ok(Vec::new())
            } else {
                Err(Error::InternalConsistency(format!(
                    "chain in dimension {q} outside the complex"
                )))
            };
        };
        let mut coeffs = vec![Rational::zero(); dim_basis.cycles.len()];
        let mut w = z.clone();
        loop {
            let Some((p, c)) = w.pivot() else {
                return Ok(coeffs);
            };
            let (p, c) = (p.clone(), c.clone());
            if let Some(b) = dim_basis.boundary.get(&p) {
                let factor = -(c / b.pivot().expect("non-zero").1.clone());
                w.add_scaled(b, &factor);
            } else if let Some(i) = dim_basis
                .cycles
                .iter()
                .position(|cy| *cy.pivot().expect("non-zero").0 == p)
            {
                let factor = c / dim_basis.cycles[i].pivot().expect("non-zero").1.clone();
                coeffs[i] += factor.clone();
                w.add_scaled(&dim_basis.cycles[i].clone(), &-factor);
            } else {
                return Err(Error::InternalConsistency(format!(
                    "chain with pivot {p} is not a cycle modulo boundaries"
                )));
            }
        }
    }

    /// Action of the pair's composed chain operator on this basis. Every
    /// basis cycle's image is verified to be a cycle before it is expressed.
    pub fn induced_map(&self, pair: &MapPair) -> Result<InducedHomologyMap> {
        if pair.map().refined() != &self.complex {
            return Err(Error::InternalConsistency(
                "homology basis belongs to a different complex".into(),
            ));
        }
        let mut per_dim = Vec::with_capacity(self.dims.len());
        for (q, dim_basis) in self.dims.iter().enumerate() {
            let op = lefschetz_chain_operator(pair, q);
            let mut columns = Vec::with_capacity(dim_basis.cycles.len());
            for b in &dim_basis.cycles {
                let image = op.apply(b);
                if q >= 1 {
                    let mut boundary = Chain::zero(q - 1);
                    for (s, c) in image.iter() {
                        boundary.add_scaled(&boundary_chain(s), c);
                    }
                    if !boundary.is_zero() {
                        return Err(Error::InternalConsistency(format!(
                            "image of a dimension-{q} basis cycle is not a cycle; the composed operator is not a chain map on this pair"
                        )));
                    }
                }
                columns.push(self.express(q, &image)?);
            }
            per_dim.push(columns);
        }
        Ok(InducedHomologyMap { per_dim })
    }
}

/// The matrices of the induced maps on homology, one square rational matrix
/// per dimension, stored column-wise in the basis of [`HomologyBasis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedHomologyMap {
    per_dim: Vec<Vec<Vec<Rational>>>,
}

impl InducedHomologyMap {
    /// Entry `(row, col)` of the dimension-`q` matrix.
    pub fn entry(&self, q: usize, row: usize, col: usize) -> Rational {
        self.per_dim[q][col][row].clone()
    }

    pub fn size(&self, q: usize) -> usize {
        self.per_dim.get(q).map_or(0, |m| m.len())
    }

    pub fn dims(&self) -> usize {
        self.per_dim.len()
    }

    pub fn trace(&self, q: usize) -> Rational {
        self.per_dim.get(q).map_or_else(Rational::zero, |m| {
            m.iter().enumerate().map(|(j, col)| col[j].clone()).sum()
        })
    }
}

/// Convenience wrapper: computes the basis of the pair's refined complex
/// and the induced map on it.
pub fn induced_homology_map(pair: &MapPair) -> Result<InducedHomologyMap> {
    homology_basis(pair.map().refined()).induced_map(pair)
}

/// Alternating sum of the traces of the induced maps on homology.
pub fn homological_lefschetz(pair: &MapPair) -> Result<Rational> {
    let basis = homology_basis(pair.map().refined());
    let induced = basis.induced_map(pair)?;
    Ok((0..induced.dims())
        .map(|q| neg_one_pow(q) * induced.trace(q))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{chain_lefschetz, SimplicialMap};
    use crate::complex::VertexId;
    use crate::ratio::{int, ratio};
    use crate::subdivision::{custom_subdivision, identity_subdivision, BarycentricPoint};

    fn circle() -> Complex {
        Complex::from_maximal([[0, 1], [1, 2], [0, 2]]).unwrap()
    }

    fn sphere() -> Complex {
        Complex::from_maximal([[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap()
    }

    fn rotation() -> SimplicialMap {
        SimplicialMap::from_labels(identity_subdivision(&circle()), [(0, 1), (1, 2), (2, 0)])
            .unwrap()
    }

    fn reflection() -> SimplicialMap {
        SimplicialMap::from_labels(identity_subdivision(&circle()), [(0, 0), (1, 2), (2, 1)])
            .unwrap()
    }

    fn hexagon_doubling() -> SimplicialMap {
        let mid = |a: u32, b: u32| {
            let mut w = BTreeMap::new();
            w.insert(VertexId(a), ratio(1, 2));
            w.insert(VertexId(b), ratio(1, 2));
            BarycentricPoint::new(w).unwrap()
        };
        let mut locations = BTreeMap::new();
        locations.insert(3, mid(0, 1));
        locations.insert(4, mid(1, 2));
        locations.insert(5, mid(0, 2));
        let hexagon = custom_subdivision(
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
        .unwrap();
        SimplicialMap::from_labels(hexagon, [(0, 0), (3, 1), (1, 2), (4, 0), (2, 1), (5, 2)])
            .unwrap()
    }

    #[test]
    fn betti_numbers_of_standard_complexes() {
        assert_eq!(homology_basis(&circle()).betti(), vec![1, 1]);
        assert_eq!(homology_basis(&sphere()).betti(), vec![1, 0, 1]);
        let triangle = Complex::from_maximal([[0, 1, 2]]).unwrap();
        assert_eq!(homology_basis(&triangle).betti(), vec![1, 0, 0]);
        assert!(homology_basis(&Complex::empty()).betti().is_empty());
    }

    #[test]
    fn betti_zero_counts_components() {
        let two_parts = Complex::from_maximal(vec![vec![0, 1, 2], vec![4, 5]]).unwrap();
        assert_eq!(homology_basis(&two_parts).betti()[0], 2);
    }

    #[test]
    fn basis_chains_are_cycles() {
        for complex in [circle(), sphere()] {
            let basis = homology_basis(&complex);
            for q in 1..basis.betti().len() {
                for z in basis.cycles(q) {
                    let mut b = Chain::zero(q - 1);
                    for (s, c) in z.iter() {
                        b.add_scaled(&boundary_chain(s), c);
                    }
                    assert!(b.is_zero());
                }
            }
        }
    }

    #[test]
    fn induced_entries_on_the_circle() {
        let basis = homology_basis(&circle());

        let r = basis.induced_map(&MapPair::whole(rotation())).unwrap();
        assert_eq!(r.size(1), 1);
        assert_eq!(r.entry(1, 0, 0), int(1));

        let t = basis.induced_map(&MapPair::whole(reflection())).unwrap();
        assert_eq!(t.entry(1, 0, 0), int(-1));
    }

    #[test]
    fn doubling_scales_the_fundamental_cycle() {
        let g = MapPair::whole(hexagon_doubling());
        let basis = homology_basis(g.map().refined());
        let induced = basis.induced_map(&g).unwrap();
        assert_eq!(induced.entry(1, 0, 0), int(2));
        assert_eq!(homological_lefschetz(&g).unwrap(), int(-1));
    }

    #[test]
    fn identity_induces_identity_matrices() {
        for complex in [circle(), sphere()] {
            let pair = MapPair::whole(SimplicialMap::identity(&complex));
            let basis = homology_basis(&complex);
            let induced = basis.induced_map(&pair).unwrap();
            for q in 0..induced.dims() {
                for i in 0..induced.size(q) {
                    for j in 0..induced.size(q) {
                        let expected = if i == j { int(1) } else { int(0) };
                        assert_eq!(induced.entry(q, i, j), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn homological_values_on_the_circle() {
        let id = MapPair::whole(SimplicialMap::identity(&circle()));
        assert_eq!(homological_lefschetz(&id).unwrap(), int(0));
        let t = MapPair::whole(reflection());
        assert_eq!(homological_lefschetz(&t).unwrap(), int(2));
    }

    #[test]
    fn hopf_trace_identity_on_whole_pairs() {
        for map in [rotation(), reflection(), hexagon_doubling()] {
            let pair = MapPair::whole(map);
            assert_eq!(
                chain_lefschetz(&pair),
                homological_lefschetz(&pair).unwrap()
            );
        }
    }

    #[test]
    fn representative_perturbation_does_not_change_the_matrix() {
        // adding a boundary to a cycle before mapping leaves the expressed
        // coefficients unchanged for chain-map pairs
        let pair = MapPair::whole(reflection());
        let basis = homology_basis(&circle());
        let induced = basis.induced_map(&pair).unwrap();

        let z = &basis.cycles(1)[0];
        // H_1 of the circle has no boundaries; perturb in dimension 0 instead
        let v = basis.cycles(0)[0].clone();
        let mut perturbed = v.clone();
        perturbed.add_scaled(
            &boundary_chain(&Simplex::new([0, 1]).unwrap()),
            &ratio(7, 3),
        );
        let op = crate::chain::lefschetz_chain_operator(&pair, 0);
        let expressed = basis.express(0, &op.apply(&perturbed)).unwrap();
        assert_eq!(expressed[0], induced.entry(0, 0, 0));

        // in dimension 1 the image itself must express to the same entry
        let op1 = crate::chain::lefschetz_chain_operator(&pair, 1);
        assert_eq!(
            basis.express(1, &op1.apply(z)).unwrap()[0],
            induced.entry(1, 0, 0)
        );
    }

    #[test]
    fn non_chain_map_pair_aborts() {
        // restricting the identity to a closed edge of the circle sends the
        // fundamental cycle to a non-cycle; the evaluator must refuse
        let id = SimplicialMap::identity(&circle());
        let edge = Complex::from_maximal([[0, 1]]).unwrap();
        let pair = MapPair::new(id, edge).unwrap();
        assert!(matches!(
            homological_lefschetz(&pair),
            Err(Error::InternalConsistency(_))
        ));
    }

    #[test]
    fn express_rejects_non_cycles() {
        let basis = homology_basis(&circle());
        let not_a_cycle = Chain::from_simplex(Simplex::new([0, 1]).unwrap());
        assert!(basis.express(1, &not_a_cycle).is_err());
    }
}
