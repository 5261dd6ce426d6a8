//! The Lefschetz evaluators and their cross-checking report.
//!
//! Four routes compute the same number for a map/subcomplex pair:
//!
//! * the **axiomatic** route evaluates every closed simplex by the recursion
//!   `L(x) = (−1)^{dim x} c(f,x) + L(∂x)` and extends those values over the
//!   subcomplex lattice as the unique valuation with them;
//! * the **open-sum** route adds `(−1)^{dim ρ} c(f,ρ)` over the open
//!   simplices of the subcomplex;
//! * the **chain** route takes alternating traces of the composed chain
//!   operator;
//! * the **homological** route takes alternating traces of the induced maps
//!   on rational homology.
//!
//! The first three agree on every pair; the homological route is defined
//! whenever the composed operator maps cycles to cycles (always the case
//! for whole-complex pairs) and must then agree with the others. The report
//! runs all four and records the verdict.
//!
//! Fixed points are located exactly: the map is affine on each open simplex,
//! so the fixed set is the solution of a rational linear system intersected
//! with the open cell, decided by Fourier–Motzkin elimination of strict
//! inequalities. A map whose fixed points all lie in open maximal simplices
//! is Hopf simplicial, and for those maps the simplex recursion collapses to
//! a value on maximal simplices only.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::chain::{chain_trace, self_coefficient, MapPair, SimplicialMap};
use crate::complex::{Simplex, VertexId};
use crate::error::{Error, Result};
use crate::homology::homology_basis;
use crate::ratio::{neg_one_pow, Rational};
use crate::subdivision::BarycentricPoint;
use crate::valuation::{extend_valuation, SimplexAssignment};

/// Values of the simplex recursion on every closed simplex of the map's
/// refined domain, computed in one ascending-dimension pass. The boundary
/// term of each simplex is the Möbius extension of the already-known values
/// of its proper faces.
pub fn simplex_axiom_values(map: &SimplicialMap) -> SimplexAssignment {
    let refined = map.refined();
    let mut values: BTreeMap<Simplex, Rational> = BTreeMap::new();
    if let Some(top) = refined.dimension() {
        for q in 0..=top {
            for x in refined.simplices_of_dim(q) {
                let own = neg_one_pow(q) * self_coefficient(map, x);
                let boundary: Rational = x
                    .proper_faces()
                    .iter()
                    .map(|rho| {
                        rho.faces()
                            .iter()
                            .map(|tau| {
                                neg_one_pow(rho.vertices().len() - tau.vertices().len())
                                    * values[tau].clone()
                            })
                            .sum::<Rational>()
                    })
                    .sum();
                values.insert(x.clone(), own + boundary);
            }
        }
    }
    SimplexAssignment::new(refined.clone(), values).expect("values are total by construction")
}

/// `L(f, x̄)` by the simplex recursion: the signed self-coefficient plus the
/// value on the boundary complex, which terminates because dimension drops
/// and the empty complex evaluates to zero.
pub fn simplex_axiom_value(map: &SimplicialMap, x: &Simplex) -> Rational {
    simplex_axiom_values(map).value(x).clone()
}

/// The axiomatic evaluator: the unique valuation extension of the simplex
/// recursion values, evaluated on the pair's subcomplex.
pub fn lefschetz_axiomatic(pair: &MapPair) -> Rational {
    extend_valuation(&simplex_axiom_values(pair.map()), pair.subcomplex())
        .expect("pair subcomplex is validated against the refined complex")
}

/// The open-simplex sum `Σ_ρ (−1)^{dim ρ} c(f, ρ)` over the subcomplex.
pub fn lefschetz_open_sum(pair: &MapPair) -> Rational {
    pair.subcomplex()
        .simplices()
        .map(|rho| neg_one_pow(rho.dim()) * self_coefficient(pair.map(), rho))
        .sum()
}

/// An exactly verified fixed point set inside one open simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointCertificate {
    /// The open simplex of the refined complex containing the fixed set.
    pub simplex: Simplex,
    /// Dimension of the fixed set inside that open cell.
    pub fixed_set_dimension: usize,
    /// One fixed point, exactly representable.
    pub witness: BarycentricPoint,
}

/// Locates all fixed points of the map, one certificate per open simplex
/// with a non-empty fixed set.
///
/// On each open simplex the map is affine, so a fixed point solves a linear
/// system in barycentric coordinates; strict positivity (the point must lie
/// in the *open* cell) is decided by exact elimination of inequalities over
/// the affine solution space.
pub fn fixed_point_certificates(map: &SimplicialMap) -> Vec<FixedPointCertificate> {
    let domain = map.domain();
    let mut out = Vec::new();
    for rho in domain.refined().simplices() {
        let verts = rho.vertices();
        let n = verts.len();
        // all base coordinates touched by the located vertices or images
        let mut coords: BTreeSet<VertexId> = BTreeSet::new();
        for v in verts {
            coords.extend(domain.location(*v).weights().map(|(b, _)| *b));
            coords.insert(map.image_of(*v));
        }
        // fixed-point equations Σ_j t_j (loc(v_j)_b − [f(v_j) = b]) = 0,
        // plus the affine constraint Σ_j t_j = 1
        let mut system: Vec<(Vec<Rational>, Rational)> = coords
            .iter()
            .map(|b| {
                let row = verts
                    .iter()
                    .map(|v| {
                        let mut c = domain.location(*v).weight(*b);
                        if map.image_of(*v) == *b {
                            c -= Rational::one();
                        }
                        c
                    })
                    .collect();
                (row, Rational::zero())
            })
            .collect();
        system.push((vec![Rational::one(); n], Rational::one()));

        let Some((particular, nullspace)) = solve_affine(system, n) else {
            continue;
        };
        // feasibility of t_j > 0 over the solution space
        let positivity: Vec<(Vec<Rational>, Rational)> = (0..n)
            .map(|j| {
                let coeffs = nullspace.iter().map(|d| d[j].clone()).collect();
                (coeffs, particular[j].clone())
            })
            .collect();
        let Some(lambda) = strictly_feasible_point(positivity, nullspace.len()) else {
            continue;
        };
        let t: Vec<Rational> = (0..n)
            .map(|j| {
                let mut v = particular[j].clone();
                for (i, d) in nullspace.iter().enumerate() {
                    v += lambda[i].clone() * d[j].clone();
                }
                v
            })
            .collect();
        let terms: Vec<(Rational, &BarycentricPoint)> = t
            .iter()
            .cloned()
            .zip(verts.iter().map(|v| domain.location(*v)))
            .collect();
        let witness =
            BarycentricPoint::combine(&terms).expect("solution coordinates are strictly positive");
        debug_assert_eq!(
            affine_image(map, rho, &witness).expect("witness lies in the open simplex"),
            witness
        );
        out.push(FixedPointCertificate {
            simplex: rho.clone(),
            fixed_set_dimension: nullspace.len(),
            witness,
        });
    }
    out
}

/// Pushes a point of the closed simplex `rho` through the map's affine
/// action: solve for the point's barycentric coordinates over `rho`'s
/// located vertices and recombine over the image vertices. `None` if the
/// point is not an affine combination of those vertices.
pub fn affine_image(
    map: &SimplicialMap,
    rho: &Simplex,
    point: &BarycentricPoint,
) -> Option<BarycentricPoint> {
    let domain = map.domain();
    let verts = rho.vertices();
    let mut coords: BTreeSet<VertexId> = point.weights().map(|(b, _)| *b).collect();
    for v in verts {
        coords.extend(domain.location(*v).weights().map(|(b, _)| *b));
    }
    let mut system: Vec<(Vec<Rational>, Rational)> = coords
        .iter()
        .map(|b| {
            let row = verts
                .iter()
                .map(|v| domain.location(*v).weight(*b))
                .collect();
            (row, point.weight(*b))
        })
        .collect();
    system.push((vec![Rational::one(); verts.len()], Rational::one()));
    let (t, _) = solve_affine(system, verts.len())?;
    let mut weights: BTreeMap<VertexId, Rational> = BTreeMap::new();
    for (j, v) in verts.iter().enumerate() {
        if t[j].is_zero() {
            continue;
        }
        *weights
            .entry(map.image_of(*v))
            .or_insert_with(Rational::zero) += t[j].clone();
    }
    weights.retain(|_, w| !w.is_zero());
    BarycentricPoint::new(weights).ok()
}

/// True iff every fixed point of the map lies inside an open maximal
/// simplex of the refined complex; vacuously true for fixed-point-free maps.
pub fn is_hopf_simplicial(map: &SimplicialMap) -> bool {
    hopf_offender(map).is_none()
}

fn hopf_offender(map: &SimplicialMap) -> Option<FixedPointCertificate> {
    let maximal: BTreeSet<&Simplex> = map.refined().maximal_simplices().into_iter().collect();
    fixed_point_certificates(map)
        .into_iter()
        .find(|cert| !maximal.contains(&cert.simplex))
}

/// The collapsed simplex value for Hopf simplicial maps: zero on non-maximal
/// simplices and `(−1)^{dim X} c(f, x)` on maximal ones. Refuses maps with a
/// fixed point outside the open maximal simplices, naming the offending
/// certificate.
pub fn hopf_axiom_value(map: &SimplicialMap, x: &Simplex) -> Result<Rational> {
    if let Some(cert) = hopf_offender(map) {
        return Err(Error::HopfPrecondition {
            simplex: cert.simplex,
            fixed_dim: cert.fixed_set_dimension,
        });
    }
    let maximal: BTreeSet<&Simplex> = map.refined().maximal_simplices().into_iter().collect();
    if !maximal.contains(x) {
        return Ok(Rational::zero());
    }
    let dim = map.base().dimension().unwrap_or(0);
    Ok(neg_one_pow(dim) * self_coefficient(map, x))
}

/// The values of all evaluators on one pair, with per-dimension traces and
/// the agreement verdict.
#[derive(Clone, Debug)]
pub struct LefschetzReport {
    pub pair: MapPair,
    pub value_axiomatic: Rational,
    pub value_open_sum: Rational,
    pub value_chain: Rational,
    pub value_homological: Rational,
    /// Trace of the composed chain operator per dimension of the refined
    /// complex.
    pub chain_traces: Vec<Rational>,
    /// Trace of the induced map on homology per dimension.
    pub homology_traces: Vec<Rational>,
    /// Betti numbers of the refined complex.
    pub betti: Vec<usize>,
    /// True iff all four values coincide.
    pub agree: bool,
}

/// Runs the four evaluators on the pair. Fails only if the homological
/// route is undefined for the pair (its composed operator does not carry
/// cycles to cycles); whole-complex pairs always succeed.
pub fn lefschetz_report(pair: &MapPair) -> Result<LefschetzReport> {
    let value_axiomatic = lefschetz_axiomatic(pair);
    let value_open_sum = lefschetz_open_sum(pair);

    let refined_dim = pair.map().refined().dimension();
    let chain_traces: Vec<Rational> = match refined_dim {
        Some(top) => (0..=top).map(|q| chain_trace(pair, q)).collect(),
        None => Vec::new(),
    };
    let value_chain: Rational = chain_traces
        .iter()
        .enumerate()
        .map(|(q, t)| neg_one_pow(q) * t)
        .sum();

    let basis = homology_basis(pair.map().refined());
    let induced = basis.induced_map(pair)?;
    let homology_traces: Vec<Rational> = (0..induced.dims()).map(|q| induced.trace(q)).collect();
    let value_homological: Rational = homology_traces
        .iter()
        .enumerate()
        .map(|(q, t)| neg_one_pow(q) * t)
        .sum();

    let agree = value_axiomatic == value_open_sum
        && value_open_sum == value_chain
        && value_chain == value_homological;
    Ok(LefschetzReport {
        pair: pair.clone(),
        value_axiomatic,
        value_open_sum,
        value_chain,
        value_homological,
        chain_traces,
        homology_traces,
        betti: basis.betti(),
        agree,
    })
}

/// Gaussian elimination over the rationals: solves the affine system given
/// as `(coefficients, rhs)` rows over `n` variables. Returns a particular
/// solution and a basis of the homogeneous solution space, or `None` when
/// inconsistent.
fn solve_affine(
    mut rows: Vec<(Vec<Rational>, Rational)>,
    n: usize,
) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..n {
        let Some(r) = (rank..rows.len()).find(|&r| !rows[r].0[col].is_zero()) else {
            continue;
        };
        rows.swap(rank, r);
        let pivot = rows[rank].0[col].clone();
        for c in rows[rank].0.iter_mut() {
            *c /= pivot.clone();
        }
        rows[rank].1 /= pivot;
        let pivot_row = rows[rank].clone();
        for (r2, row) in rows.iter_mut().enumerate() {
            if r2 == rank || row.0[col].is_zero() {
                continue;
            }
            let factor = row.0[col].clone();
            for c in 0..n {
                let delta = factor.clone() * pivot_row.0[c].clone();
                row.0[c] -= delta;
            }
            let delta = factor * pivot_row.1.clone();
            row.1 -= delta;
        }
        pivot_cols.push(col);
        rank += 1;
    }
    // inconsistency: zero coefficients with non-zero rhs
    for (coeffs, rhs) in rows.iter().skip(rank) {
        debug_assert!(coeffs.iter().all(|c| c.is_zero()));
        if !rhs.is_zero() {
            return None;
        }
    }
    let mut particular = vec![Rational::zero(); n];
    for (r, &col) in pivot_cols.iter().enumerate() {
        particular[col] = rows[r].1.clone();
    }
    let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    let nullspace = free_cols
        .iter()
        .map(|&free| {
            let mut dir = vec![Rational::zero(); n];
            dir[free] = Rational::one();
            for (r, &col) in pivot_cols.iter().enumerate() {
                dir[col] = -rows[r].0[free].clone();
            }
            dir
        })
        .collect();
    Some((particular, nullspace))
}

/// Fourier–Motzkin elimination for strict inequalities over `vars`
/// variables: each row asserts `coeffs · λ + constant > 0`. Returns a
/// strictly feasible point when one exists.
fn strictly_feasible_point(
    rows: Vec<(Vec<Rational>, Rational)>,
    vars: usize,
) -> Option<Vec<Rational>> {
    debug_assert!(rows.iter().all(|(c, _)| c.len() == vars));
    if vars == 0 {
        return rows
            .iter()
            .all(|(_, c)| c > &Rational::zero())
            .then(Vec::new);
    }
    if rows.is_empty() {
        return Some(vec![Rational::zero(); vars]);
    }
    // eliminate the last variable
    let mut kept: Vec<(Vec<Rational>, Rational)> = Vec::new();
    let mut lower: Vec<(Vec<Rational>, Rational, Rational)> = Vec::new(); // a > 0
    let mut upper: Vec<(Vec<Rational>, Rational, Rational)> = Vec::new(); // a < 0
    for (mut coeffs, c) in rows {
        let a = coeffs.pop().expect("vars >= 1");
        if a.is_zero() {
            kept.push((coeffs, c));
        } else if a > Rational::zero() {
            lower.push((coeffs, c, a));
        } else {
            upper.push((coeffs, c, a));
        }
    }
    let mut reduced = kept;
    for (pc, pconst, pa) in &lower {
        for (nc, nconst, na) in &upper {
            // (−na)·pos + pa·neg eliminates the variable, signs stay valid
            let coeffs = pc
                .iter()
                .zip(nc)
                .map(|(p, q)| -na.clone() * p + pa.clone() * q)
                .collect();
            let c = -na.clone() * pconst + pa.clone() * nconst;
            reduced.push((coeffs, c));
        }
    }
    let rest = strictly_feasible_point(reduced, vars - 1)?;
    let eval = |coeffs: &[Rational], c: &Rational| -> Rational {
        let mut v = c.clone();
        for (i, a) in coeffs.iter().enumerate() {
            v += a.clone() * rest[i].clone();
        }
        v
    };
    // bound for the eliminated variable: a·λ + r > 0 gives λ > −r/a for
    // a > 0 and λ < −r/a for a < 0
    let lo = lower
        .iter()
        .map(|(coeffs, c, a)| -eval(coeffs, c) / a.clone())
        .max();
    let hi = upper
        .iter()
        .map(|(coeffs, c, a)| -eval(coeffs, c) / a.clone())
        .min();
    let value = match (lo, hi) {
        (Some(lo), Some(hi)) => {
            debug_assert!(lo < hi);
            (lo + hi) / Rational::from_integer(2.into())
        }
        (Some(lo), None) => lo + Rational::one(),
        (None, Some(hi)) => hi - Rational::one(),
        (None, None) => Rational::zero(),
    };
    let mut point = rest;
    point.push(value);
    Some(point)
}
