//! Double description method for pointed polyhedral cones.
//!
//! Given integer rows `a_1..a_m` spanning `R^D`, computes the extreme rays of
//! `{x : a_i . x >= 0 for all i}` together with the set of rows tight at each
//! ray. Adjacency uses the combinatorial test, so every intermediate ray set
//! is kept minimal. All arithmetic is exact (`BigInt`, primitive rays).

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{dot_int, independent_rows, inverse, primitive, scale_to_int, common_denominator};
use crate::scalar::Q;

#[derive(Debug, Clone)]
pub struct Ray {
    pub coords: Vec<BigInt>,
    /// Rows `i` with `a_i . coords == 0`.
    pub zeros: FixedBitSet,
}

pub fn extreme_rays(rows: &[Vec<BigInt>]) -> Result<Vec<Ray>> {
    let m = rows.len();
    let dim = rows.first().map(Vec::len).ok_or(Error::Empty("constraint rows"))?;
    let basis = independent_rows(rows);
    if basis.len() < dim {
        return Err(Error::Degenerate(format!(
            "cone is not pointed: constraint rank {} < {dim}",
            basis.len()
        )));
    }

    let basis_matrix: Vec<Vec<Q>> = basis
        .iter()
        .map(|&i| rows[i].iter().map(|x| Q::from_integer(x.clone())).collect())
        .collect();
    let inv = inverse(&basis_matrix).expect("independent rows form an invertible basis");

    let mut processed = FixedBitSet::with_capacity(m);
    let mut rays: Vec<Ray> = Vec::with_capacity(dim);
    for j in 0..dim {
        let column: Vec<Q> = (0..dim).map(|i| inv[i][j].clone()).collect();
        let den = common_denominator(column.iter());
        let mut coords = scale_to_int(&column, &den);
        primitive(&mut coords);
        let mut zeros = FixedBitSet::with_capacity(m);
        for (k, &row) in basis.iter().enumerate() {
            if k != j {
                zeros.insert(row);
            }
        }
        rays.push(Ray { coords, zeros });
    }
    for &row in &basis {
        processed.insert(row);
    }

    for (i, row) in rows.iter().enumerate() {
        if processed.contains(i) {
            continue;
        }
        rays = add_row(rays, row, i, dim);
        processed.insert(i);
    }
    Ok(rays)
}

fn add_row(rays: Vec<Ray>, row: &[BigInt], index: usize, dim: usize) -> Vec<Ray> {
    let values: Vec<BigInt> = rays.iter().map(|r| dot_int(row, &r.coords)).collect();
    let positive: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_positive()).collect();
    let negative: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_negative()).collect();

    if negative.is_empty() {
        let mut rays = rays;
        for (ray, v) in rays.iter_mut().zip(&values) {
            if v.is_zero() {
                ray.zeros.insert(index);
            }
        }
        return rays;
    }

    let mut created = Vec::new();
    for &p in &positive {
        for &n in &negative {
            let mut common = rays[p].zeros.clone();
            common.intersect_with(&rays[n].zeros);
            if common.count_ones(..) + 2 < dim {
                continue;
            }
            let blocked = rays
                .iter()
                .enumerate()
                .any(|(t, ray)| t != p && t != n && common.is_subset(&ray.zeros));
            if blocked {
                continue;
            }
            let vp = &values[p];
            let vn = -&values[n];
            let mut coords: Vec<BigInt> = rays[n]
                .coords
                .iter()
                .zip(&rays[p].coords)
                .map(|(cn, cp)| vp * cn + &vn * cp)
                .collect();
            primitive(&mut coords);
            common.insert(index);
            created.push(Ray { coords, zeros: common });
        }
    }

    let mut next: Vec<Ray> = Vec::with_capacity(positive.len() + created.len());
    for (k, mut ray) in rays.into_iter().enumerate() {
        if values[k].is_zero() {
            ray.zeros.insert(index);
            next.push(ray);
        } else if values[k].is_positive() {
            next.push(ray);
        }
    }
    next.extend(created);
    next
}
