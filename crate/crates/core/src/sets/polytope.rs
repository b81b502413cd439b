use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::hull;
use crate::linalg;
use crate::scalar::Q;
use crate::sets::vector::{dedup, Mode, Vector};

/// `normal . p <= offset`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Halfspace {
    pub normal: Vector,
    pub offset: Q,
}

impl Halfspace {
    pub fn contains(&self, p: &[Q]) -> bool {
        self.normal.dot(p) <= self.offset
    }

    pub fn is_tight(&self, p: &[Q]) -> bool {
        self.normal.dot(p) == self.offset
    }
}

/// A polyhedron given as an intersection of halfspaces.
#[derive(Debug, Clone, PartialEq)]
pub struct HPolytope {
    dim: usize,
    halfspaces: Vec<Halfspace>,
    bounded: bool,
}

impl HPolytope {
    pub fn new(dim: usize, halfspaces: Vec<Halfspace>, bounded: bool) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        for h in &halfspaces {
            h.normal.check_dim(dim)?;
            if h.normal.iter().all(Zero::is_zero) {
                return Err(Error::Degenerate("zero halfspace normal".into()));
            }
        }
        Ok(HPolytope { dim, halfspaces, bounded })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn is_bounded(&self) -> bool {
        self.bounded
    }

    pub fn contains(&self, p: &[Q]) -> bool {
        self.halfspaces.iter().all(|h| h.contains(p))
    }

    pub(crate) fn with_extra(&self, extra: Vec<Halfspace>) -> HPolytope {
        let mut halfspaces = self.halfspaces.clone();
        halfspaces.extend(extra);
        HPolytope { dim: self.dim, halfspaces, bounded: self.bounded }
    }
}

/// Facet description of a full-dimensional polytope, with vertex incidence.
#[derive(Debug, Clone)]
pub struct Facets {
    pub hpoly: HPolytope,
    /// For each facet, the indices of the vertices lying on it.
    pub incidence: Vec<FixedBitSet>,
}

/// A convex polytope given by its vertex list.
#[derive(Debug, Clone)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<Vector>,
    full_dim: bool,
    mode: Mode,
    facets: OnceLock<Arc<Facets>>,
}

impl VPolytope {
    /// Exact-mode polytope over `vertices` (deduplicated, not pruned).
    pub fn new(vertices: Vec<Vector>) -> Result<Self> {
        Self::with_mode(Mode::Exact, vertices)
    }

    pub fn with_mode(mode: Mode, vertices: Vec<Vector>) -> Result<Self> {
        let first = vertices.first().ok_or(Error::Empty("polytope vertex list"))?;
        let dim = first.dim();
        if dim == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        for v in &vertices {
            v.check_dim(dim)?;
        }
        let vertices: Vec<Vector> = vertices.into_iter().map(|v| mode.normalize(v)).collect();
        let vertices = dedup(mode, vertices);
        let refs: Vec<&[Q]> = vertices.iter().map(|v| &v[..]).collect();
        let full_dim = linalg::affine_dim(&refs) == Some(dim);
        Ok(VPolytope { dim, vertices, full_dim, mode, facets: OnceLock::new() })
    }

    pub fn from_f64(vertices: &[Vec<f64>]) -> Result<Self> {
        let vs = vertices
            .iter()
            .map(|v| Vector::from_f64(v))
            .collect::<Result<Vec<_>>>()?;
        Self::with_mode(Mode::Float, vs)
    }

    pub fn from_ints(vertices: &[&[i64]]) -> Result<Self> {
        Self::new(vertices.iter().map(|v| Vector::from_ints(v)).collect())
    }

    pub(crate) fn with_facets(mut self, facets: Facets) -> Self {
        self.facets = OnceLock::from(Arc::new(facets));
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn is_full_dim(&self) -> bool {
        self.full_dim
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Facets of a full-dimensional polytope, computed once and cached.
    pub fn facets(&self) -> Result<Arc<Facets>> {
        if let Some(f) = self.facets.get() {
            return Ok(f.clone());
        }
        let computed = Arc::new(hull::compute_facets(self)?);
        // A concurrent fill computes the same value; whichever lands first wins.
        Ok(self.facets.get_or_init(|| computed).clone())
    }

    pub fn centroid(&self) -> Vector {
        let n = Q::from_integer(self.vertices.len().into());
        let mut acc = Vector::zeros(self.dim);
        for v in &self.vertices {
            acc = &acc + v;
        }
        acc.scale(&(Q::from_integer(1.into()) / n))
    }

    pub fn bounding_box(&self) -> (Vector, Vector) {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for v in &self.vertices[1..] {
            for j in 0..self.dim {
                if v[j] < lo.0[j] {
                    lo.0[j] = v[j].clone();
                }
                if v[j] > hi.0[j] {
                    hi.0[j] = v[j].clone();
                }
            }
        }
        (lo, hi)
    }

    pub fn translate(&self, by: &Vector) -> Result<VPolytope> {
        by.check_dim(self.dim)?;
        Self::with_mode(self.mode, self.vertices.iter().map(|v| v + by).collect())
    }

    /// Image under `p -> t p` for any rational `t` (not only `[0, 1]`).
    pub fn dilate(&self, t: &Q) -> Result<VPolytope> {
        let mut vs: Vec<Vector> = self.vertices.iter().map(|v| v.scale(t)).collect();
        if t.is_negative() {
            vs.sort();
        }
        Self::with_mode(self.mode, vs)
    }

    /// Vertex-set equality, independent of vertex order.
    pub fn same_vertex_set(&self, other: &VPolytope) -> bool {
        if self.dim != other.dim || self.vertices.len() != other.vertices.len() {
            return false;
        }
        let mut a = self.vertices.clone();
        let mut b = other.vertices.clone();
        a.sort();
        b.sort();
        a == b
    }
}

impl PartialEq for VPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.mode == other.mode && self.same_vertex_set(other)
    }
}
