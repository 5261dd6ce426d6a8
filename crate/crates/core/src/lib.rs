//! Exact-arithmetic computational topology for finite abstract simplicial
//! complexes.
//!
//! The crate computes the Lefschetz number of a simplicial self-map by four
//! independent routes and checks that they agree:
//!
//! 1. **Axiomatic**: a recursion over closed simplices extended to arbitrary
//!    subcomplexes as a lattice valuation ([`lefschetz::lefschetz_axiomatic`]).
//! 2. **Open-simplex sum**: the signed self-coefficient summed over the open
//!    simplices of the subcomplex ([`lefschetz::lefschetz_open_sum`]).
//! 3. **Chain trace**: alternating traces of the composed chain operator
//!    ([`chain::chain_lefschetz`]).
//! 4. **Homological**: alternating traces of the induced maps on rational
//!    homology ([`homology::homological_lefschetz`]).
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point anywhere, so orientation signs, barycentric coordinates and
//! homology projections are exact and the agreement checks are equalities,
//! not tolerances.
//!
//! Supporting machinery: the subcomplex lattice with Euler characteristics
//! ([`complex`]), Möbius extension of arbitrary simplex values to lattice
//! valuations ([`valuation`]), subdivisions with exact barycentric geometry
//! and the orientation-signed subdivision chain operator ([`subdivision`]),
//! and exact fixed-point certificates with a Hopf classifier
//! ([`lefschetz::fixed_point_certificates`]).

pub mod chain;
pub mod complex;
pub mod error;
pub mod homology;
pub mod lefschetz;
pub mod ratio;
pub mod subdivision;
pub mod valuation;

pub use chain::{
    boundary_operator, chain_lefschetz, chain_trace, induced_chain_map, lefschetz_chain_operator,
    restriction_operator, simplex_coefficient, Chain, ChainOperator, MapPair, SimplicialMap,
};
pub use complex::{Complex, OpenSimplex, Simplex, VertexId};
pub use error::Error;
pub use homology::{
    homological_lefschetz, homology_basis, induced_homology_map, HomologyBasis, InducedHomologyMap,
};
pub use lefschetz::{
    fixed_point_certificates, hopf_axiom_value, is_hopf_simplicial, lefschetz_axiomatic,
    lefschetz_open_sum, lefschetz_report, simplex_axiom_value, FixedPointCertificate,
    LefschetzReport,
};
pub use ratio::Rational;
pub use subdivision::{
    barycentric_subdivide, custom_subdivision, identity_subdivision, subdivision_operator,
    BarycentricPoint, SubdividedComplex, SubdivisionOperator,
};
pub use valuation::{
    extend_valuation, mobius_weights, verify_valuation, OpenSimplexWeights, SimplexAssignment,
    ValuationVerdict, VerifyMode,
};
