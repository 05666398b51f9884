//! Classical Steiner 2-designs over small finite fields.

use crate::design::Design;
use crate::error::{Error, Result};
use crate::field::FiniteField;

/// Largest plane order the generators accept.
pub const MAX_PLANE_ORDER: usize = 9;

fn plane_field(q: usize) -> Result<FiniteField> {
    let field = FiniteField::new(q)?;
    if q > MAX_PLANE_ORDER {
        return Err(Error::UnsupportedOrder { what: "plane", q });
    }
    Ok(field)
}

/// AG(2,q): points `(x, y)` numbered `x*q + y`, lines `y = mx + c` and `x = c`.
pub fn affine_plane(q: usize) -> Result<Design> {
    let f = plane_field(q)?;
    let mut blocks = Vec::with_capacity(q * q + q);
    for m in f.elements() {
        for c in f.elements() {
            blocks.push(
                f.elements()
                    .map(|x| x * q + f.add(f.mul(m, x), c))
                    .collect(),
            );
        }
    }
    for c in f.elements() {
        blocks.push(f.elements().map(|y| c * q + y).collect());
    }
    Ok(Design::new(q * q, q, blocks).normalized())
}

/// Normalized homogeneous coordinates of PG(2,F): first non-zero entry is 1.
fn projective_points(f: &FiniteField) -> Vec<[usize; 3]> {
    let q = f.order();
    let mut out: Vec<[usize; 3]> = Vec::with_capacity(q * q + q + 1);
    for y in 0..q {
        for z in 0..q {
            out.push([1, y, z]);
        }
    }
    for z in 0..q {
        out.push([0, 1, z]);
    }
    out.push([0, 0, 1]);
    out
}

fn dot(f: &FiniteField, a: &[usize; 3], b: &[usize; 3]) -> usize {
    let mut acc = 0;
    for i in 0..3 {
        acc = f.add(acc, f.mul(a[i], b[i]));
    }
    acc
}

/// PG(2,q) over the Desarguesian field; lines use the same coordinates as
/// points, with incidence given by the dot product.
pub fn projective_plane(q: usize) -> Result<Design> {
    let f = plane_field(q)?;
    let points = projective_points(&f);
    let blocks = points
        .iter()
        .map(|line| {
            points
                .iter()
                .enumerate()
                .filter(|(_, p)| dot(&f, line, p) == 0)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    Ok(Design::new(points.len(), q + 1, blocks).normalized())
}

/// Classical Hermitian unital of order q (q = 2, 3 or 4): the points of the
/// curve `x^(q+1) + y^(q+1) + z^(q+1) = 0` in PG(2,q^2), with the secant
/// lines as blocks.
pub fn hermitian_unital(q: usize) -> Result<Design> {
    if !(2..=4).contains(&q) {
        return Err(Error::UnsupportedOrder {
            what: "Hermitian unital",
            q,
        });
    }
    let f = FiniteField::new(q * q)?;
    let norm = |x: usize| f.pow(x, q + 1);
    let all = projective_points(&f);
    let curve: Vec<[usize; 3]> = all
        .iter()
        .copied()
        .filter(|p| f.add(f.add(norm(p[0]), norm(p[1])), norm(p[2])) == 0)
        .collect();
    let blocks: Vec<Vec<usize>> = all
        .iter()
        .map(|line| {
            curve
                .iter()
                .enumerate()
                .filter(|(_, p)| dot(&f, line, p) == 0)
                .map(|(i, _)| i)
                .collect::<Vec<usize>>()
        })
        .filter(|b| b.len() == q + 1)
        .collect();
    Ok(Design::new(curve.len(), q + 1, blocks).normalized())
}
