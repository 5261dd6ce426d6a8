//! The problem document: a JSON description of a base complex, an optional
//! subdivision with exact fractional vertex locations, an optional vertex
//! map, and an optional subcomplex selection.
//!
//! Fractions are written as `"p/q"` strings; JSON numbers are rejected in
//! weight positions, so no floating point can enter the pipeline. Emission
//! is canonical (sorted keys, maximal simplices only, locations for exactly
//! the non-base vertices), which makes parse ∘ emit the identity on parsed
//! documents and reports byte-reproducible.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use lefschetz_core::ratio::Rational;
use lefschetz_core::{
    custom_subdivision, identity_subdivision, BarycentricPoint, Complex, MapPair, SimplicialMap,
    SubdividedComplex, VertexId,
};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    /// Maximal simplices of the base complex, as vertex label lists.
    pub base: Vec<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subdivision: Option<SubdivisionSpec>,
    /// Vertex images of the simplicial map, keyed by vertex label.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map: Option<BTreeMap<String, u32>>,
    /// Generating simplices of the selected subcomplex (face-closed on
    /// load). Defaults to the whole refined complex.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subcomplex: Option<Vec<Vec<u32>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubdivisionSpec {
    /// Maximal simplices of the refined complex.
    pub maximal: Vec<Vec<u32>>,
    /// Locations of refined vertices, keyed by vertex label. Base vertices
    /// may be omitted (they sit at themselves).
    pub locations: BTreeMap<String, LocationSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocationSpec {
    /// Base simplex carrying the vertex, ascending vertex order.
    pub carrier: Vec<u32>,
    /// Weights on the carrier vertices, parallel to `carrier`, as exact
    /// `"p/q"` fractions.
    pub weights: Vec<String>,
}

/// The in-memory problem: a validated subdivision, an optional validated
/// map, and the selected subcomplex.
#[derive(Clone, Debug)]
pub struct Problem {
    pub subdivision: SubdividedComplex,
    pub map: Option<SimplicialMap>,
    pub selection: Complex,
}

impl Problem {
    /// The map/subcomplex pair over the selection; requires a map.
    pub fn pair(&self) -> Result<MapPair, CliError> {
        let map = self.map.clone().ok_or_else(|| {
            CliError::Malformed("this command needs a \"map\" in the document".into())
        })?;
        Ok(MapPair::new(map, self.selection.clone())?)
    }

    /// The map/whole-complex pair; requires a map.
    pub fn whole_pair(&self) -> Result<MapPair, CliError> {
        let map = self.map.clone().ok_or_else(|| {
            CliError::Malformed("this command needs a \"map\" in the document".into())
        })?;
        Ok(MapPair::whole(map))
    }
}

pub fn parse_problem(text: &str) -> Result<Problem, CliError> {
    let doc: ProblemDocument = serde_json::from_str(text)
        .map_err(|e| CliError::Malformed(format!("document syntax: {e}")))?;
    problem_from_document(&doc)
}

pub fn problem_from_document(doc: &ProblemDocument) -> Result<Problem, CliError> {
    let base = Complex::from_maximal(doc.base.clone())?;
    let subdivision = match &doc.subdivision {
        None => identity_subdivision(&base),
        Some(spec) => {
            let mut locations: BTreeMap<u32, BarycentricPoint> = BTreeMap::new();
            for (label, loc) in &spec.locations {
                let vertex: u32 = label.parse().map_err(|_| {
                    CliError::Malformed(format!("vertex label {label:?} is not an integer"))
                })?;
                if loc.weights.len() != loc.carrier.len() {
                    return Err(CliError::Malformed(format!(
                        "vertex {vertex}: {} weights for {} carrier vertices",
                        loc.weights.len(),
                        loc.carrier.len()
                    )));
                }
                let mut weights: BTreeMap<VertexId, Rational> = BTreeMap::new();
                for (v, w) in loc.carrier.iter().zip(&loc.weights) {
                    let value = Rational::from_str(w).map_err(|e| {
                        CliError::Malformed(format!(
                            "vertex {vertex}: weight {w:?} is not an exact fraction: {e}"
                        ))
                    })?;
                    if weights.insert(VertexId(*v), value).is_some() {
                        return Err(CliError::Malformed(format!(
                            "vertex {vertex}: carrier vertex {v} repeated"
                        )));
                    }
                }
                locations.insert(vertex, BarycentricPoint::new(weights)?);
            }
            custom_subdivision(&base, spec.maximal.clone(), locations)?
        }
    };
    let map = match &doc.map {
        None => None,
        Some(images) => {
            let mut pairs = Vec::with_capacity(images.len());
            for (label, target) in images {
                let vertex: u32 = label.parse().map_err(|_| {
                    CliError::Malformed(format!("vertex label {label:?} is not an integer"))
                })?;
                pairs.push((vertex, *target));
            }
            Some(SimplicialMap::from_labels(subdivision.clone(), pairs)?)
        }
    };
    let selection = match &doc.subcomplex {
        None => subdivision.refined().clone(),
        Some(generators) => {
            let sel = Complex::from_maximal(generators.clone())?;
            if !sel.is_subcomplex_of(subdivision.refined()) {
                return Err(CliError::Malformed(
                    "subcomplex selection is not contained in the refined complex".into(),
                ));
            }
            sel
        }
    };
    Ok(Problem {
        subdivision,
        map,
        selection,
    })
}

fn maximal_lists(c: &Complex) -> Vec<Vec<u32>> {
    c.maximal_simplices()
        .into_iter()
        .map(|s| s.vertices().iter().map(|v| v.0).collect())
        .collect()
}

/// Canonical document for a problem: maximal simplices in lexicographic
/// order, locations for exactly the non-base vertices, the subdivision and
/// selection omitted when trivial.
pub fn document_from_problem(problem: &Problem) -> ProblemDocument {
    let base = problem.subdivision.base();
    let refined = problem.subdivision.refined();
    let subdivision = if refined == base {
        None
    } else {
        let locations = refined
            .vertices()
            .into_iter()
            .filter(|v| !base.contains(&lefschetz_core::Simplex::vertex(v.0)))
            .map(|v| {
                let point = problem.subdivision.location(v);
                let carrier: Vec<u32> = point.weights().map(|(b, _)| b.0).collect();
                let weights: Vec<String> = point.weights().map(|(_, w)| w.to_string()).collect();
                (v.0.to_string(), LocationSpec { carrier, weights })
            })
            .collect();
        Some(SubdivisionSpec {
            maximal: maximal_lists(refined),
            locations,
        })
    };
    let map = problem.map.as_ref().map(|m| {
        refined
            .vertices()
            .into_iter()
            .map(|v| (v.0.to_string(), m.image_of(v).0))
            .collect()
    });
    let subcomplex = if problem.selection == *refined {
        None
    } else {
        Some(maximal_lists(&problem.selection))
    };
    ProblemDocument {
        base: maximal_lists(base),
        subdivision,
        map,
        subcomplex,
    }
}

pub fn emit_document(doc: &ProblemDocument) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("document serializes");
    text.push('\n');
    text
}
