//! Lattice valuations on the subcomplex lattice, determined by their values
//! on closed simplices.
//!
//! A valuation is a function `μ` on subcomplexes with `μ(∅) = 0` and
//! `μ(A∪B) = μ(A) + μ(B) − μ(A∩B)`. Such a function is uniquely determined
//! by its values on closed simplices, and those values may be assigned
//! arbitrarily. This module realizes the extension constructively: Möbius
//! inversion over the Boolean lattice of each simplex's faces turns closed
//! simplex values into open-cell densities, and the extension of the
//! valuation to a subcomplex is the sum of the densities of its open cells.
//!
//! The all-ones assignment recovers the Euler characteristic, which is the
//! unique valuation taking value 1 on every closed simplex.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rand::SeedableRng;

use crate::complex::{Complex, Simplex};
use crate::error::{Error, Result};
use crate::ratio::{int, neg_one_pow, Rational};

/// A total assignment of rational values to the closed simplices of an
/// ambient complex.
#[derive(Clone, Debug)]
pub struct SimplexAssignment {
    ambient: Complex,
    values: BTreeMap<Simplex, Rational>,
}

impl SimplexAssignment {
    /// Checks totality: every simplex of `ambient` must carry a value.
    pub fn new(ambient: Complex, values: BTreeMap<Simplex, Rational>) -> Result<Self> {
        for s in ambient.simplices() {
            if !values.contains_key(s) {
                return Err(Error::MalformedInput(format!(
                    "assignment is missing a value for simplex {s}"
                )));
            }
        }
        Ok(Self { ambient, values })
    }

    /// Value 1 on every closed simplex (the Euler characteristic instance).
    pub fn all_ones(ambient: &Complex) -> Self {
        Self::from_fn(ambient, |_| int(1))
    }

    pub fn from_fn(ambient: &Complex, f: impl Fn(&Simplex) -> Rational) -> Self {
        let values = ambient.simplices().map(|s| (s.clone(), f(s))).collect();
        Self {
            ambient: ambient.clone(),
            values,
        }
    }

    pub fn ambient(&self) -> &Complex {
        &self.ambient
    }

    pub fn value(&self, s: &Simplex) -> &Rational {
        &self.values[s]
    }
}

/// Open-cell densities: one rational weight per open simplex. Summing the
/// weights over the faces of a closed simplex recovers its assigned value.
#[derive(Clone, Debug)]
pub struct OpenSimplexWeights {
    weights: BTreeMap<Simplex, Rational>,
}

impl OpenSimplexWeights {
    pub fn weight(&self, s: &Simplex) -> &Rational {
        &self.weights[s]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, &Rational)> {
        self.weights.iter()
    }

    /// Sum of weights over the open simplices of `a`.
    pub fn total_on(&self, a: &Complex) -> Rational {
        a.simplices().map(|s| self.weights[s].clone()).sum()
    }
}

/// Möbius inversion on the face lattice:
/// `weight(ρ) = Σ_{∅ ≠ τ ⊆ ρ} (−1)^{|ρ|−|τ|} value(τ̄)`.
pub fn mobius_weights(assignment: &SimplexAssignment) -> OpenSimplexWeights {
    let weights = assignment
        .ambient
        .simplices()
        .map(|rho| {
            let mut w = Rational::zero();
            for tau in rho.faces() {
                let sign = neg_one_pow(rho.vertices().len() - tau.vertices().len());
                w += sign * assignment.value(&tau);
            }
            (rho.clone(), w)
        })
        .collect();
    OpenSimplexWeights { weights }
}

/// The unique valuation with the assigned simplex values, evaluated at the
/// subcomplex `a`. Returns 0 on the empty complex and reproduces the
/// assignment on closed simplices.
pub fn extend_valuation(assignment: &SimplexAssignment, a: &Complex) -> Result<Rational> {
    if !a.is_subcomplex_of(&assignment.ambient) {
        return Err(Error::NotASubcomplex(format!(
            "valuation argument with {} simplices",
            a.len()
        )));
    }
    Ok(mobius_weights(assignment).total_on(a))
}

/// How [`verify_valuation`] chooses subcomplex pairs.
#[derive(Clone, Copy, Debug)]
pub enum VerifyMode {
    /// All unordered pairs of subcomplexes, diagonal included.
    Exhaustive,
    /// `pairs` pseudo-random pairs of sampled subcomplexes.
    Sampled { pairs: usize, seed: u64 },
}

/// Outcome of a valuation check, carrying a counterexample on failure.
#[derive(Clone, Debug)]
pub enum ValuationVerdict {
    Pass {
        pairs_checked: usize,
    },
    /// The function is non-zero on the empty complex.
    FailEmpty {
        value: Rational,
    },
    Fail {
        a: Complex,
        b: Complex,
        union_plus_intersection: Rational,
        sum_of_parts: Rational,
    },
}

impl ValuationVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, ValuationVerdict::Pass { .. })
    }
}

impl fmt::Display for ValuationVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValuationVerdict::Pass { pairs_checked } => {
                write!(f, "valuation law holds on {pairs_checked} pairs")
            }
            ValuationVerdict::FailEmpty { value } => {
                write!(f, "valuation law fails: E(∅) = {value}, expected 0")
            }
            ValuationVerdict::Fail {
                a,
                b,
                union_plus_intersection,
                sum_of_parts,
            } => {
                write!(
                    f,
                    "valuation law fails: E(A∪B)+E(A∩B) = {union_plus_intersection} but E(A)+E(B) = {sum_of_parts}; A = {{{}}}, B = {{{}}}",
                    a.simplices().map(|s| s.to_string()).collect::<Vec<_>>().join(" "),
                    b.simplices().map(|s| s.to_string()).collect::<Vec<_>>().join(" "),
                )
            }
        }
    }
}

/// Checks `E(∅) = 0` and the inclusion–exclusion identity
/// `E(A∪B) + E(A∩B) = E(A) + E(B)` over subcomplex pairs of `ambient`.
///
/// A failed check is a verdict with the offending pair, not an error.
pub fn verify_valuation(
    evaluate: impl Fn(&Complex) -> Rational,
    ambient: &Complex,
    mode: VerifyMode,
) -> Result<ValuationVerdict> {
    let on_empty = evaluate(&Complex::empty());
    if !on_empty.is_zero() {
        return Ok(ValuationVerdict::FailEmpty { value: on_empty });
    }
    let pairs: Vec<(Complex, Complex)> = match mode {
        VerifyMode::Exhaustive => {
            let subs: Vec<Complex> = ambient
                .subcomplexes_exhaustive(crate::complex::DEFAULT_ENUMERATION_LIMIT)?
                .collect();
            let mut pairs = Vec::new();
            for (i, a) in subs.iter().enumerate() {
                for b in &subs[i..] {
                    pairs.push((a.clone(), b.clone()));
                }
            }
            pairs
        }
        VerifyMode::Sampled { pairs, seed } => {
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let all_a = ambient.sample_subcomplexes(pairs, &mut rng);
            let all_b = ambient.sample_subcomplexes(pairs, &mut rng);
            all_a.into_iter().zip(all_b).collect()
        }
    };
    let checked = pairs.len();
    for (a, b) in pairs {
        let lhs = evaluate(&a.union(&b)) + evaluate(&a.intersection(&b));
        let rhs = evaluate(&a) + evaluate(&b);
        if lhs != rhs {
            return Ok(ValuationVerdict::Fail {
                a,
                b,
                union_plus_intersection: lhs,
                sum_of_parts: rhs,
            });
        }
    }
    Ok(ValuationVerdict::Pass {
        pairs_checked: checked,
    })
}

/// Convenience: sample `count` subcomplexes with a fixed seed.
pub fn seeded_subcomplex_sample(ambient: &Complex, count: usize, seed: u64) -> Vec<Complex> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    ambient.sample_subcomplexes(count, &mut rng)
}
