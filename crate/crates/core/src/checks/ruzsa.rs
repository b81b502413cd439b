use num_traits::Zero;
use serde_json::json;

use crate::checks::{same_dim, CheckReport, Quantity};
use crate::error::{Error, Result};
use crate::scalar::Q;
use crate::sets::LatticeSet;

/// `|A - B| |C| <= |A + C| |C + B|` in exact integers.
pub fn check_ruzsa_triangle(a: &LatticeSet, b: &LatticeSet, c: &LatticeSet) -> Result<CheckReport> {
    same_dim(a.dim(), b.dim())?;
    same_dim(a.dim(), c.dim())?;
    if c.is_empty() {
        return Err(Error::Empty("C"));
    }
    let diff = a.difference_set(b)?.len() as i64;
    let ac = a.sumset(c)?.len() as i64;
    let cb = c.sumset(b)?.len() as i64;
    let cn = c.len() as i64;
    Ok(CheckReport::new("ruzsa_triangle", Quantity::int(diff * cn), Quantity::int(ac * cb), Q::zero())
        .with_input(format!("A: {} points in Z^{}", a.len(), a.dim()))
        .with_input(format!("B: {} points in Z^{}", b.len(), b.dim()))
        .with_input(format!("C: {} points in Z^{}", c.len(), c.dim()))
        .with_details(json!({ "|A-B|": diff, "|A+C|": ac, "|C+B|": cb, "|C|": cn })))
}
