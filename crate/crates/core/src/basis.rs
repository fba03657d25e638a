use nalgebra::Vector3;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{vector_to_pairs, ComplexMatrix, ComplexVector};
use crate::lorentz::{Generators, HalfInt};

/// A labelled set of `2j+1` spinors `u_σ` and `2j+1` spinors `v_σ`.
///
/// Labels follow the `J_z` order `σ = j, j−1, …, −j`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorBasis {
    pub spin: HalfInt,
    pub mass: f64,
    pub u: Vec<ComplexVector>,
    pub v: Vec<ComplexVector>,
}

impl SpinorBasis {
    pub fn new(spin: HalfInt, mass: f64, u: Vec<ComplexVector>, v: Vec<ComplexVector>) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::InvalidMass(mass));
        }
        let (count, dim) = (spin.multiplicity(), spin.dirac_dim());
        for set in [&u, &v] {
            if set.len() != count {
                return Err(Error::DimensionMismatch { expected: count, found: set.len() });
            }
            if let Some(bad) = set.iter().find(|s| s.len() != dim) {
                return Err(Error::DimensionMismatch { expected: dim, found: bad.len() });
            }
        }
        Ok(Self { spin, mass, u, v })
    }

    pub fn dim(&self) -> usize {
        self.spin.dirac_dim()
    }

    /// Matrix whose columns are `u_j … u_−j, v_j … v_−j`.
    pub fn columns(&self) -> ComplexMatrix {
        let all: Vec<ComplexVector> = self.u.iter().chain(&self.v).cloned().collect();
        ComplexMatrix::from_columns(&all).expect("validated dimensions")
    }

    /// Applies a linear map to every spinor.
    pub fn map(&self, m: &ComplexMatrix) -> Self {
        Self {
            spin: self.spin,
            mass: self.mass,
            u: self.u.iter().map(|s| m.apply(s)).collect(),
            v: self.v.iter().map(|s| m.apply(s)).collect(),
        }
    }

    /// `u_σ(q) = exp(i𝔎·φ) u_σ(0)` and likewise for `v`.
    pub fn boosted(&self, generators: &Generators, phi: &Vector3<f64>) -> Result<Self> {
        Ok(self.map(&generators.boost(phi)?))
    }

    /// Smallest singular value of the stacked spinors divided by the largest.
    pub fn independence(&self) -> f64 {
        let s = self.columns().singular_values();
        s.last().copied().unwrap_or(0.0) / s.first().copied().unwrap_or(1.0)
    }

    /// `Σ_σ (u_σ u_σ† + v_σ v_σ†)`
    pub fn completeness_sum(&self) -> ComplexMatrix {
        let w = self.columns();
        &w * &w.adjoint()
    }
}

#[derive(Serialize)]
pub(crate) struct SpinorBasisJson {
    pub spin_twice: u32,
    pub mass: f64,
    pub u: Vec<Vec<[f64; 2]>>,
    pub v: Vec<Vec<[f64; 2]>>,
}

impl From<&SpinorBasis> for SpinorBasisJson {
    fn from(b: &SpinorBasis) -> Self {
        Self {
            spin_twice: b.spin.twice(),
            mass: b.mass,
            u: b.u.iter().map(vector_to_pairs).collect(),
            v: b.v.iter().map(vector_to_pairs).collect(),
        }
    }
}

impl Serialize for SpinorBasis {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SpinorBasisJson::from(self).serialize(serializer)
    }
}
