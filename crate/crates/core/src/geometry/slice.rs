use crate::error::Result;
use crate::sets::{HPolytope, Halfspace, Vector};

/// `A_x = A ∩ (A - x)`: the halfspaces of `A` plus each of them shifted by
/// `-x`. Redundant halfspaces are kept; the result may be empty or flat.
pub fn slice_body(a: &HPolytope, x: &Vector) -> Result<HPolytope> {
    x.check_dim(a.dim())?;
    let shifted = a
        .halfspaces()
        .iter()
        .map(|h| Halfspace {
            normal: h.normal.clone(),
            offset: &h.offset - h.normal.dot(x),
        })
        .collect();
    Ok(a.with_extra(shifted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::hull::facet_enum;
    use crate::measure::volume_h;
    use crate::scalar::{q, ratio};
    use crate::sets::{make_cube, make_simplex};

    #[test]
    fn zero_shift_is_identity() {
        let a = facet_enum(&make_simplex(2, &q(1)).unwrap()).unwrap();
        let s = slice_body(&a, &Vector::zeros(2)).unwrap();
        assert_eq!(volume_h(&s).unwrap(), ratio(1, 2));
        assert_eq!(s.halfspaces().len(), 6);
    }

    #[test]
    fn unit_interval_half_shift() {
        let a = facet_enum(&make_cube(1, &q(1)).unwrap()).unwrap();
        let s = slice_body(&a, &Vector(vec![ratio(1, 2)])).unwrap();
        assert_eq!(volume_h(&s).unwrap(), ratio(1, 2));
        assert!(s.contains(&[q(0)]));
        assert!(!s.contains(&[ratio(3, 4)]));
    }

    #[test]
    fn extreme_difference_vector_leaves_a_point() {
        let a = facet_enum(&make_simplex(2, &q(1)).unwrap()).unwrap();
        let s = slice_body(&a, &Vector::from_ints(&[1, 0])).unwrap();
        assert_eq!(volume_h(&s).unwrap(), q(0));
        assert!(s.contains(&[q(0), q(0)]));
        let outside = slice_body(&a, &Vector::from_ints(&[2, 0])).unwrap();
        assert_eq!(volume_h(&outside).unwrap(), q(0));
    }
}
