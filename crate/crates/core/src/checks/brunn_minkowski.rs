use num_traits::{One, Zero};
use serde_json::json;

use crate::checks::{describe_polytope, require_convex_primary, same_dim, CheckReport, Quantity};
use crate::error::Result;
use crate::geometry::minkowski_sum;
use crate::measure::volume_exact_q;
use crate::precise::nth_root_q;
use crate::scalar::{self, Q};
use crate::sets::VPolytope;

/// Fractional bits for the n-th roots.
const ROOT_BITS: u32 = 128;

/// `mu(A)^(1/n) + mu(B)^(1/n) <= mu(A+B)^(1/n)` from exact volumes.
///
/// When `mu(A) / mu(B)` is a rational n-th power `rho^n` the comparison is
/// made exactly in the form `mu(B) (1 + rho)^n <= mu(A+B)`, which also
/// settles the equality cases. Otherwise the roots are enclosed with
/// outward rounding: the left side rounded up, the right side down.
pub fn check_brunn_minkowski(a: &VPolytope, b: &VPolytope) -> Result<CheckReport> {
    require_convex_primary(a, "A")?;
    require_convex_primary(b, "B")?;
    same_dim(a.dim(), b.dim())?;
    let n = a.dim() as u32;
    let mu_a = volume_exact_q(a)?;
    let mu_b = volume_exact_q(b)?;
    let mu_s = volume_exact_q(&minkowski_sum(a, b)?)?;
    let mut equality = None;
    let report = match scalar::exact_nth_root(&(&mu_a / &mu_b), n) {
        Some(rho) => {
            let lhs = &mu_b * scalar::pow(&(Q::one() + &rho), n);
            equality = Some(lhs == mu_s);
            CheckReport::new("brunn_minkowski", Quantity::exact(lhs), Quantity::exact(mu_s.clone()), Q::zero())
                .with_param("comparison", "exact n-th power form")
        }
        None => {
            let lhs = nth_root_q(&mu_a, n, ROOT_BITS).add(&nth_root_q(&mu_b, n, ROOT_BITS));
            let rhs = nth_root_q(&mu_s, n, ROOT_BITS);
            CheckReport::new("brunn_minkowski", Quantity::enclosure(&lhs), Quantity::enclosure(&rhs), Q::zero())
                .with_param("comparison", "directed-rounding n-th roots")
                .with_param("precisionBits", ROOT_BITS)
        }
    };
    Ok(report
        .with_input(describe_polytope("A", a))
        .with_input(describe_polytope("B", b))
        .with_details(json!({
            "muA": mu_a.to_string(),
            "muB": mu_b.to_string(),
            "muAplusB": mu_s.to_string(),
            "equality": equality,
        })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::scalar::{q, ratio};
    use crate::sets::{make_box, make_cube, make_simplex, Reflect};

    #[test]
    fn cubes_are_an_equality_case() {
        for n in 1..=3 {
            let c = make_cube(n, &q(1)).unwrap();
            let r = check_brunn_minkowski(&c, &c).unwrap();
            assert!(r.pass, "n={n}");
            assert_eq!(r.lhs, r.rhs);
            assert_eq!(r.details["equality"], true);
        }
    }

    #[test]
    fn triangle_and_reflection() {
        let a = make_simplex(2, &q(1)).unwrap();
        let r = check_brunn_minkowski(&a, &a.reflect()).unwrap();
        assert!(r.pass);
        // sqrt(3) versus 2 sqrt(1/2) = sqrt(2), in squared form: 3 >= 2.
        assert_eq!(r.rhs, Quantity::int(3));
        assert_eq!(r.lhs, Quantity::int(2));
    }

    #[test]
    fn thin_boxes_are_strict() {
        let eps = ratio(1, 7);
        let a = make_box(&[q(0), q(0)], &[q(1), eps.clone()]).unwrap();
        let b = make_box(&[q(0), q(0)], &[eps.clone(), q(1)]).unwrap();
        let r = check_brunn_minkowski(&a, &b).unwrap();
        assert!(r.pass);
        assert_eq!(r.rhs, Quantity::exact((q(1) + &eps) * (q(1) + &eps)));
        assert_eq!(r.lhs, Quantity::exact(q(4) * &eps));
    }

    #[test]
    fn irrational_roots_use_enclosures() {
        let a = make_simplex(3, &q(1)).unwrap();
        let b = make_cube(3, &q(1)).unwrap();
        let r = check_brunn_minkowski(&a, &b).unwrap();
        assert!(r.pass);
        assert!(matches!(r.lhs, Quantity::Interval { .. }));
    }

    #[test]
    fn degenerate_inputs_rejected() {
        let flat = VPolytope::from_ints(&[&[0, 0], &[1, 0]]).unwrap();
        let sq = make_cube(2, &q(1)).unwrap();
        assert!(matches!(check_brunn_minkowski(&flat, &sq), Err(Error::Degenerate(_))));
    }
}
