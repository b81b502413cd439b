use std::ops::{Add, Deref, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{self, Q};

/// Coordinate mode of a container. Float-mode coordinates are always exact
/// images of doubles, so the exact kernel still applies to them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

impl Mode {
    pub fn combine(self, other: Mode) -> Mode {
        if self == Mode::Float || other == Mode::Float {
            Mode::Float
        } else {
            Mode::Exact
        }
    }

    pub(crate) fn normalize(self, v: Vector) -> Vector {
        match self {
            Mode::Exact => v,
            Mode::Float => Vector(v.0.iter().map(scalar::round_to_f64).collect()),
        }
    }
}

/// A point of `R^n` with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector(pub Vec<Q>);

impl Vector {
    pub fn new(coords: Vec<Q>) -> Self {
        Vector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![scalar::q(0); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| scalar::q(c)).collect())
    }

    pub fn from_f64(coords: &[f64]) -> Result<Self> {
        coords.iter().map(|&c| scalar::from_f64(c)).collect::<Result<_>>().map(Vector)
    }

    pub fn unit(dim: usize, axis: usize, length: &Q) -> Self {
        let mut v = Self::zeros(dim);
        v.0[axis] = length.clone();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(scalar::to_f64).collect()
    }

    pub fn scale(&self, t: &Q) -> Vector {
        Vector(self.0.iter().map(|c| c * t).collect())
    }

    pub fn dot(&self, other: &[Q]) -> Q {
        crate::linalg::dot(&self.0, other)
    }

    pub fn norm_inf_f64(&self) -> f64 {
        self.to_f64().iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: self.dim() });
        }
        Ok(())
    }
}

impl Deref for Vector {
    type Target = [Q];
    fn deref(&self) -> &[Q] {
        &self.0
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }
}

/// Float-mode dedup tolerance, scale aware: `1e-9 * (1 + |v|_inf)`.
pub fn dedup_tolerance(v: &Vector) -> f64 {
    1e-9 * (1.0 + v.norm_inf_f64())
}

pub(crate) fn dedup(mode: Mode, points: Vec<Vector>) -> Vec<Vector> {
    match mode {
        Mode::Exact => {
            let mut seen = std::collections::HashSet::new();
            points.into_iter().filter(|p| seen.insert(p.clone())).collect()
        }
        Mode::Float => {
            let mut kept: Vec<(Vector, Vec<f64>)> = Vec::new();
            for p in points {
                let pf = p.to_f64();
                let tol = dedup_tolerance(&p);
                let close = kept.iter().any(|(_, kf)| {
                    kf.iter().zip(&pf).all(|(a, b)| (a - b).abs() <= tol)
                });
                if !close {
                    kept.push((p, pf));
                }
            }
            kept.into_iter().map(|(p, _)| p).collect()
        }
    }
}
