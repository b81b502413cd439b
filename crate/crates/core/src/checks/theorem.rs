use num_integer::Roots;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::checks::{describe_polytope, require_convex_primary, same_dim, Body, CheckReport, Condition, Quantity};
use crate::error::{Error, Result};
use crate::geometry::{grid_minkowski, membership, minkowski_sum, DifferenceBody, SelectSubset};
use crate::measure::volume_exact_q;
use crate::precise::{nth_root_q, sqrt_q, Interval};
use crate::scalar::{self, Q};
use crate::sets::{rasterize, GridSet, VPolytope};

pub const DEFAULT_C_BUDGET: i64 = 10;

const BITS: u32 = 128;

/// The three forms of the difference-body bound, each `lhs << mu(A+B)^2`:
///
/// * `FULL`: `(1 + omega + ... + omega^[sqrt n]) mu(B)^(1-1/n) mu(A)^(1/n) mu(A-A)`
/// * `A_GE_B`: `sqrt(n) mu(A)^(1/n) mu(B)^(1-1/n) mu(A-A)`, for `mu(A) >= mu(B)`
/// * `B_GE_A`: `sqrt(n) mu(A) mu(A-A)`, for `mu(B) >= mu(A)`
///
/// with `omega = (mu(A) / mu(B))^(1/n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TheoremForm {
    Full,
    AGeB,
    BGeA,
}

impl TheoremForm {
    pub const ALL: [TheoremForm; 3] = [TheoremForm::Full, TheoremForm::AGeB, TheoremForm::BGeA];

    pub fn label(self) -> &'static str {
        match self {
            TheoremForm::Full => "FULL",
            TheoremForm::AGeB => "A_GE_B",
            TheoremForm::BGeA => "B_GE_A",
        }
    }

    /// Whether the measure precondition of the form holds.
    pub fn applies(self, mu_a: &Q, mu_b: &Q) -> bool {
        match self {
            TheoremForm::Full => true,
            TheoremForm::AGeB => mu_a >= mu_b,
            TheoremForm::BGeA => mu_b >= mu_a,
        }
    }
}

impl std::str::FromStr for TheoremForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "FULL" => Ok(TheoremForm::Full),
            "A_GE_B" => Ok(TheoremForm::AGeB),
            "B_GE_A" => Ok(TheoremForm::BGeA),
            other => Err(Error::invalid(format!("unknown theorem form {other:?}"))),
        }
    }
}

/// `mu(A + B)`: exact for convex `B`; for a voxel union, the dilation of `A`
/// voxelized at the same resolution.
fn sum_measure(a: &VPolytope, b: &Body) -> Result<Q> {
    match b {
        Body::Convex(bp) => volume_exact_q(&minkowski_sum(a, bp)?),
        Body::Grid(bg) => Ok(grid_minkowski(&voxelize(a, bg)?, bg)?.measure()),
    }
}

fn voxelize(a: &VPolytope, b: &GridSet) -> Result<GridSet> {
    let ag = rasterize(a, b.cell())?;
    if ag.is_empty() {
        return Err(Error::Degenerate(format!("A has no voxel centre at resolution {}", b.cell())));
    }
    Ok(ag)
}

/// `sum_{k=lo}^{hi} omega^k`.
fn geometric(omega: &Interval, lo: u64, hi: u64) -> Interval {
    let mut power = Interval::from_int(1, omega.bits());
    let mut sum = Interval::from_int(0, omega.bits());
    for k in 0..=hi {
        if k >= lo {
            sum = sum.add(&power);
        }
        power = power.mul(omega);
    }
    sum
}

/// Empirical constant `c_emp = lhs / mu(A+B)^2` of the selected form,
/// passing when `c_emp <= c_budget`.
pub fn check_theorem(a: &VPolytope, b: &Body, form: TheoremForm, c_budget: &Q) -> Result<CheckReport> {
    require_convex_primary(a, "A")?;
    same_dim(a.dim(), b.dim())?;
    let n = a.dim() as u64;
    let mu_a = volume_exact_q(a)?;
    let mu_b = b.measure()?;
    if !mu_b.is_positive() {
        return Err(Error::Degenerate("B has zero measure".into()));
    }
    if !form.applies(&mu_a, &mu_b) {
        return Err(Error::precondition(format!(
            "form {} needs {}, but mu(A) = {mu_a} and mu(B) = {mu_b}",
            form.label(),
            if form == TheoremForm::AGeB { "mu(A) >= mu(B)" } else { "mu(B) >= mu(A)" }
        )));
    }
    let mu_d = volume_exact_q(&a.difference_body()?)?;
    let mu_s = sum_measure(a, b)?;
    let omega = nth_root_q(&(&mu_a / &mu_b), n as u32, BITS);
    let sqrt_n = sqrt_q(&Q::from_integer(n.into()), BITS);
    let squared = &mu_s * &mu_s;
    // mu(B)^(1-1/n) mu(A)^(1/n) = omega mu(B)
    let c_emp = match form {
        TheoremForm::Full => geometric(&omega, 0, n.sqrt()).mul(&omega).mul_q(&(&mu_b * &mu_d / &squared)),
        TheoremForm::AGeB => sqrt_n.mul(&omega).mul_q(&(&mu_b * &mu_d / &squared)),
        TheoremForm::BGeA => sqrt_n.mul_q(&(&mu_a * &mu_d / &squared)),
    };

    let mut details = json!({
        "muA": mu_a.to_string(),
        "muB": mu_b.to_string(),
        "muAminusA": mu_d.to_string(),
        "muAplusB": mu_s.to_string(),
        "omega": Quantity::enclosure(&omega),
        "proofGeometricSum": Quantity::enclosure(&geometric(&omega, 1, n.sqrt() + 1)),
    });
    if form == TheoremForm::Full {
        details["geometricSum"] = json!(Quantity::enclosure(&geometric(&omega, 0, n.sqrt())));
    }
    let mut report = CheckReport::new(
        format!("theorem_{}", form.label().to_ascii_lowercase()),
        Quantity::enclosure(&c_emp),
        Quantity::exact(c_budget.clone()),
        Q::zero(),
    )
    .with_input(describe_polytope("A", a))
    .with_input(format!("B: {}", b.describe()))
    .with_param("form", form.label())
    .with_param("cBudget", c_budget.to_string())
    .with_param("precisionBits", BITS);

    if form == TheoremForm::BGeA {
        let (mu_sub_sum, contained, residual) = match b {
            Body::Convex(bp) => {
                let sel = bp.select_subset_of_measure(&mu_a)?;
                let contained = sel
                    .subset
                    .vertices()
                    .iter()
                    .map(|v| membership(bp, v))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .all(|x| x);
                (volume_exact_q(&minkowski_sum(a, &sel.subset)?)?, contained, sel.residual)
            }
            Body::Grid(bg) => {
                let sel = bg.select_subset_of_measure(&mu_a).or_else(|e| match e {
                    // Less than one voxel of A: keep a single cell.
                    Error::InvalidArgument(_) => bg.select_subset_of_measure(&bg.cell_volume()),
                    other => Err(other),
                })?;
                let m = grid_minkowski(&voxelize(a, bg)?, &sel.subset)?.measure();
                (m, sel.subset.is_subset(bg)?, sel.residual)
            }
        };
        let c_sub = sqrt_n.mul_q(&(&mu_a * &mu_d / (&mu_sub_sum * &mu_sub_sum)));
        details["muAplusBprime"] = json!(mu_sub_sum.to_string());
        details["subsetResidual"] = json!(residual.to_string());
        details["cEmpSubset"] = json!(Quantity::enclosure(&c_sub));
        report = report
            .with_condition(Condition::holds("B' is a subset of B", contained))
            .with_condition(Condition::le(
                "mu(A+B') <= mu(A+B)",
                Quantity::exact(mu_sub_sum),
                Quantity::exact(mu_s.clone()),
            ));
    }
    if matches!(b, Body::Grid(_)) {
        report = report.with_note("B is a voxel union: mu(A+B) is the dilation of A voxelized at B's resolution");
    }
    Ok(report.with_details(details))
}

pub fn default_c_budget() -> Q {
    scalar::q(DEFAULT_C_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, ratio};
    use crate::sets::{make_cube, make_simplex};

    fn c_of(r: &CheckReport) -> f64 {
        r.lhs.approx()
    }

    #[test]
    fn full_form_cubes() {
        for n in 1..=4usize {
            let c = make_cube(n, &q(1)).unwrap();
            let r = check_theorem(&c, &Body::Convex(c.clone()), TheoremForm::Full, &default_c_budget()).unwrap();
            let expected = ((n as f64).sqrt().floor() + 1.0) / 2f64.powi(n as i32);
            assert_eq!(r.lhs, Quantity::exact(scalar::from_f64(expected).unwrap()), "n={n}");
            assert!(r.pass);
        }
    }

    #[test]
    fn simplex_a_ge_b_is_near_extremal() {
        for n in 1..=4usize {
            let s = make_simplex(n, &q(1)).unwrap();
            let r = check_theorem(&s, &Body::Convex(s.clone()), TheoremForm::AGeB, &default_c_budget()).unwrap();
            let c = c_of(&r);
            assert!((0.28..=0.6).contains(&c), "n={n}: {c}");
        }
    }

    #[test]
    fn b_ge_a_selects_a_subset() {
        let a = make_simplex(2, &q(1)).unwrap();
        let b = make_cube(2, &q(2)).unwrap();
        let r = check_theorem(&a, &Body::Convex(b), TheoremForm::BGeA, &default_c_budget()).unwrap();
        assert!(r.pass);
        assert_eq!(r.conditions.len(), 2);
        assert!(r.conditions.iter().all(|c| c.pass));
        let g = GridSet::aligned(2, ratio(1, 4), (0..8).flat_map(|i| (0..8).map(move |j| vec![i, j]))).unwrap();
        let r = check_theorem(&a, &Body::Grid(g), TheoremForm::BGeA, &default_c_budget()).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn preconditions_and_scaling() {
        let small = make_cube(2, &q(1)).unwrap();
        let big = make_cube(2, &q(3)).unwrap();
        assert!(matches!(
            check_theorem(&small, &Body::Convex(big.clone()), TheoremForm::AGeB, &default_c_budget()),
            Err(Error::Precondition(_))
        ));
        let r1 = check_theorem(&big, &Body::Convex(small.clone()), TheoremForm::AGeB, &default_c_budget()).unwrap();
        let t = ratio(2, 5);
        let r2 = check_theorem(
            &big.dilate(&t).unwrap(),
            &Body::Convex(small.dilate(&t).unwrap()),
            TheoremForm::AGeB,
            &default_c_budget(),
        )
        .unwrap();
        assert_eq!(r1.lhs, r2.lhs);
    }

    #[test]
    fn form_names() {
        assert_eq!(serde_json::to_value(TheoremForm::AGeB).unwrap(), "A_GE_B");
        assert_eq!("b_ge_a".parse::<TheoremForm>().unwrap(), TheoremForm::BGeA);
        assert!("other".parse::<TheoremForm>().is_err());
    }
}
