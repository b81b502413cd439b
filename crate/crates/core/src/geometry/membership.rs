use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::scalar::{self, Q};
use crate::sets::{Mode, VPolytope, Vector};
use crate::FACET_DIM_CAP;

/// Is `point` in `conv(vertices(P))`?
///
/// Exact mode uses the cached facets when the polytope is full-dimensional
/// and within the facet cap, otherwise exact linear feasibility. Float mode
/// uses a toleranced halfspace test.
pub fn membership(p: &VPolytope, point: &Vector) -> Result<bool> {
    point.check_dim(p.dim())?;
    if p.is_full_dim() && p.dim() <= FACET_DIM_CAP {
        let facets = p.facets()?;
        return Ok(match p.mode() {
            Mode::Exact => facets.hpoly.contains(point),
            Mode::Float => {
                let x = point.to_f64();
                facets.hpoly.halfspaces().iter().all(|h| {
                    let lhs: f64 = h.normal.to_f64().iter().zip(&x).map(|(a, b)| a * b).sum();
                    let b = scalar::to_f64(&h.offset);
                    lhs <= b + 1e-9 * (1.0 + b.abs())
                })
            }
        });
    }
    Ok(in_convex_hull_lp(p.vertices(), point))
}

/// Exact feasibility of `sum l_i v_i = p, sum l_i = 1, l >= 0` by a phase-one
/// simplex with Bland's rule.
pub fn in_convex_hull_lp(vertices: &[Vector], point: &[Q]) -> bool {
    let k = vertices.len();
    let d = point.len();
    let m = d + 1;
    let width = k + m + 1;
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m);
    for j in 0..=d {
        let mut row = vec![Q::zero(); width];
        for (i, v) in vertices.iter().enumerate() {
            row[i] = if j < d { v[j].clone() } else { Q::one() };
        }
        row[k + j] = Q::one();
        row[width - 1] = if j < d { point[j].clone() } else { Q::one() };
        if row[width - 1].is_negative() {
            for (c, x) in row.iter_mut().enumerate() {
                if c != k + j {
                    *x = -x.clone();
                }
            }
        }
        t.push(row);
    }
    let mut basis: Vec<usize> = (k..k + m).collect();
    let mut z = vec![Q::zero(); width];
    for c in 0..width {
        if c >= k && c < k + m {
            continue;
        }
        z[c] = -t.iter().map(|r| &r[c]).sum::<Q>();
    }

    loop {
        let Some(enter) = (0..width - 1).find(|&c| z[c].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Q)> = None;
        for r in 0..m {
            if t[r][enter].is_positive() {
                let ratio = &t[r][width - 1] / &t[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // Phase one is bounded below by zero; cannot happen.
            break;
        };
        let pivot = t[r][enter].clone();
        for x in t[r].iter_mut() {
            *x /= &pivot;
        }
        let prow = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x -= &f * p;
                }
            }
        }
        if !z[enter].is_zero() {
            let f = z[enter].clone();
            for (x, p) in z.iter_mut().zip(&prow) {
                *x -= &f * p;
            }
        }
        basis[r] = enter;
    }
    z[width - 1].is_zero()
}

/// Deterministic point-membership test backing Monte Carlo volumes.
#[derive(Clone)]
pub struct MembershipOracle {
    dim: usize,
    description: String,
    test: Arc<dyn Fn(&[f64]) -> bool + Send + Sync>,
}

impl MembershipOracle {
    pub fn new(
        dim: usize,
        description: impl Into<String>,
        test: impl Fn(&[f64]) -> bool + Send + Sync + 'static,
    ) -> Self {
        MembershipOracle { dim, description: description.into(), test: Arc::new(test) }
    }

    /// Halfspace test against the polytope's facets, evaluated in doubles.
    pub fn for_polytope(p: &VPolytope, label: &str) -> Result<Self> {
        let facets = p.facets()?;
        let rows: Vec<(Vec<f64>, f64)> = facets
            .hpoly
            .halfspaces()
            .iter()
            .map(|h| (h.normal.to_f64(), scalar::to_f64(&h.offset)))
            .collect();
        Ok(Self::new(p.dim(), format!("{label}: facet halfspace test ({} facets)", rows.len()), move |x| {
            rows.iter()
                .all(|(a, b)| a.iter().zip(x).map(|(u, v)| u * v).sum::<f64>() <= *b)
        }))
    }

    /// Closed Euclidean ball centred at the origin.
    pub fn ball(dim: usize, radius: f64) -> Self {
        Self::new(dim, format!("ball of radius {radius} in R^{dim}"), move |x| {
            x.iter().map(|c| c * c).sum::<f64>() <= radius * radius
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        (self.test)(x)
    }
}

impl fmt::Debug for MembershipOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MembershipOracle")
            .field("dim", &self.dim)
            .field("description", &self.description)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, ratio};
    use crate::sets::{make_cube, make_simplex};

    #[test]
    fn centroid_vertex_and_outside() {
        let t = make_simplex(2, &q(1)).unwrap();
        assert!(membership(&t, &t.centroid()).unwrap());
        assert!(membership(&t, &Vector::from_ints(&[1, 0])).unwrap());
        assert!(!membership(&t, &Vector::from_ints(&[2, 2])).unwrap());
        assert!(!membership(&t, &Vector(vec![ratio(1, 2), ratio(2, 3)])).unwrap());
    }

    #[test]
    fn lp_agrees_with_facets() {
        let cube = make_cube(3, &q(2)).unwrap();
        for x in -1..=3 {
            for y in [-1, 0, 2] {
                for z in [0, 1, 3] {
                    let p = Vector::from_ints(&[x, y, z]);
                    assert_eq!(
                        membership(&cube, &p).unwrap(),
                        in_convex_hull_lp(cube.vertices(), &p),
                        "{p:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn degenerate_polytope_uses_lp() {
        let seg = VPolytope::from_ints(&[&[0, 0], &[2, 2]]).unwrap();
        assert!(membership(&seg, &Vector::from_ints(&[1, 1])).unwrap());
        assert!(!membership(&seg, &Vector::from_ints(&[1, 0])).unwrap());
        assert!(!membership(&seg, &Vector::from_ints(&[3, 3])).unwrap());
    }

    #[test]
    fn float_mode_tolerates_rounding() {
        let p = VPolytope::from_f64(&[vec![0.0, 0.0], vec![0.1, 0.0], vec![0.0, 0.1]]).unwrap();
        let edge_mid = Vector::from_f64(&[0.05, 0.05]).unwrap();
        assert!(membership(&p, &edge_mid).unwrap());
    }

    #[test]
    fn oracle_is_deterministic() {
        let o = MembershipOracle::for_polytope(&make_cube(2, &q(1)).unwrap(), "square").unwrap();
        assert!(o.contains(&[0.5, 0.5]));
        assert!(!o.contains(&[1.5, 0.5]));
        assert_eq!(o.contains(&[1.0, 1.0]), o.contains(&[1.0, 1.0]));
    }
}
