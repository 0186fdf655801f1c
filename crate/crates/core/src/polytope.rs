//! Exact polytope conversions via the double description method.
//!
//! Everything is phrased through the polar: for a polytope with the origin in
//! its interior, facet functionals are the vertices of the polar body, and
//! vertex enumeration of an H-polytope is ray enumeration of its
//! homogenization. The double description core below enumerates the extreme
//! rays of a pointed cone {y : A y >= 0} with exact arithmetic, so the
//! combinatorics are decided by true sign tests, never tolerances.

use crate::linalg;
use crate::scalar::Coeff;
use crate::{Error, Result};
use std::cmp::Ordering;

/// Lexicographic comparison of coefficient vectors; total on rationals.
pub fn lex_cmp<S: Coeff>(a: &[S], b: &[S]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.partial_cmp(y) {
            Some(Ordering::Equal) => continue,
            Some(o) => return o,
            None => return Ordering::Equal,
        }
    }
    a.len().cmp(&b.len())
}

/// Scales a ray to canonical form: positive multiple with max |coordinate| 1.
fn normalize_ray<S: Coeff>(r: &mut [S]) {
    let mut best: Option<S> = None;
    for v in r.iter() {
        let a = v.abs();
        if !a.is_zero() && best.as_ref().map_or(true, |b| a > *b) {
            best = Some(a);
        }
    }
    if let Some(b) = best {
        for v in r.iter_mut() {
            *v = v.clone() / b.clone();
        }
    }
}

struct Ray<S> {
    dir: Vec<S>,
    /// Indices of processed constraints tight at this ray.
    active: Vec<usize>,
}

/// Extreme rays of the pointed cone {y : rows[i] . y >= 0}.
///
/// Errors if the constraint rows do not have full column rank (the cone would
/// contain a line and have no extreme rays).
pub fn extreme_rays<S: Coeff>(rows: &[Vec<S>]) -> Result<Vec<Vec<S>>> {
    let d = rows.first().map_or(0, Vec::len);
    if d == 0 || rows.len() < d {
        return Err(Error::InvalidInput("cone needs at least d constraints".into()));
    }
    // Greedy full-rank initial subset.
    let mut init: Vec<usize> = Vec::new();
    let mut picked: Vec<Vec<S>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        picked.push(row.clone());
        if linalg::rank(&picked) == picked.len() {
            init.push(i);
            if init.len() == d {
                break;
            }
        } else {
            picked.pop();
        }
    }
    if init.len() < d {
        return Err(Error::NotFullDimensional { rank: init.len(), dim: d });
    }
    let inv = linalg::invert(&picked).expect("full-rank subset");
    // Columns of the inverse satisfy rows[init[i]] . col_j = delta_ij >= 0.
    let mut rays: Vec<Ray<S>> = (0..d)
        .map(|j| {
            let mut dir: Vec<S> = inv.iter().map(|r| r[j].clone()).collect();
            normalize_ray(&mut dir);
            let active = init
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != j)
                .map(|(_, &i)| i)
                .collect();
            Ray { dir, active }
        })
        .collect();
    let mut processed: Vec<usize> = init.clone();

    for (i, row) in rows.iter().enumerate() {
        if init.contains(&i) {
            continue;
        }
        let vals: Vec<S> = rays.iter().map(|r| linalg::dot(row, &r.dir)).collect();
        let has_neg = vals.iter().any(|v| *v < S::zero());
        if !has_neg {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.active.push(i);
                }
            }
            processed.push(i);
            continue;
        }
        let mut next: Vec<Ray<S>> = Vec::new();
        // Keep nonnegative rays; record tightness of the new constraint.
        for (r, v) in rays.iter().zip(&vals) {
            if *v >= S::zero() {
                let mut active = r.active.clone();
                if v.is_zero() {
                    active.push(i);
                }
                next.push(Ray { dir: r.dir.clone(), active });
            }
        }
        // Combine adjacent (+,-) pairs into new tight rays.
        for (pi, pv) in vals.iter().enumerate() {
            if *pv <= S::zero() {
                continue;
            }
            for (ni, nv) in vals.iter().enumerate() {
                if *nv >= S::zero() {
                    continue;
                }
                if !adjacent(rows, &rays[pi], &rays[ni], d) {
                    continue;
                }
                let mut dir: Vec<S> = rays[pi]
                    .dir
                    .iter()
                    .zip(&rays[ni].dir)
                    .map(|(p, n)| pv.clone() * n.clone() - nv.clone() * p.clone())
                    .collect();
                normalize_ray(&mut dir);
                let mut active: Vec<usize> = rays[pi]
                    .active
                    .iter()
                    .filter(|a| rays[ni].active.contains(a))
                    .cloned()
                    .collect();
                active.push(i);
                next.push(Ray { dir, active });
            }
        }
        rays = next;
        processed.push(i);
    }

    let mut out: Vec<Vec<S>> = rays.into_iter().map(|r| r.dir).collect();
    out.sort_by(|a, b| lex_cmp(a, b));
    out.dedup();
    Ok(out)
}

/// Algebraic adjacency: the common active rows have rank d - 2.
fn adjacent<S: Coeff>(rows: &[Vec<S>], a: &Ray<S>, b: &Ray<S>, d: usize) -> bool {
    let common: Vec<Vec<S>> = a
        .active
        .iter()
        .filter(|i| b.active.contains(i))
        .map(|&i| rows[i].clone())
        .collect();
    common.len() >= d - 2 && linalg::rank(&common) == d - 2
}

/// A facet of a polytope with 0 in its interior, in the normalization
/// functional . x = 1 on the facet.
#[derive(Debug, Clone, PartialEq)]
pub struct Facet<S> {
    pub functional: Vec<S>,
    /// Indices (into the input vertex list) of all vertices on the facet.
    pub vertex_indices: Vec<usize>,
}

/// Facet enumeration of conv(vertices), which must be full-dimensional with 0
/// in its interior. Output is sorted canonically and independent of the input
/// vertex order up to index relabeling.
pub fn facets_from_vrep<S: Coeff>(vertices: &[Vec<S>]) -> Result<Vec<Facet<S>>> {
    let n = vertices.first().map_or(0, Vec::len);
    // Homogenized polar cone {(f, t) : f . v_i <= t, t >= 0}.
    let mut rows: Vec<Vec<S>> = vertices
        .iter()
        .map(|v| {
            let mut r: Vec<S> = v.iter().map(|x| -x.clone()).collect();
            r.push(S::one());
            r
        })
        .collect();
    let mut t_row = vec![S::zero(); n];
    t_row.push(S::one());
    rows.push(t_row);
    let rays = extreme_rays(&rows)?;
    let mut facets = Vec::new();
    for ray in rays {
        let (f, t) = ray.split_at(n);
        let t = &t[0];
        if t.is_zero() {
            // A recession direction of the polar: 0 is not interior.
            return Err(Error::InvalidInput(
                "origin is not in the interior of the polytope".into(),
            ));
        }
        let functional: Vec<S> = f.iter().map(|x| x.clone() / t.clone()).collect();
        let vertex_indices: Vec<usize> = vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| linalg::dot(&functional, v) == S::one())
            .map(|(i, _)| i)
            .collect();
        facets.push(Facet { functional, vertex_indices });
    }
    facets.sort_by(|a, b| lex_cmp(&a.functional, &b.functional));
    Ok(facets)
}

/// Vertex enumeration of {x : rows[j] . x <= 1}, which must be bounded with 0
/// in its interior. Output sorted canonically.
pub fn vertices_from_hrep<S: Coeff>(rows: &[Vec<S>]) -> Result<Vec<Vec<S>>> {
    let n = rows.first().map_or(0, Vec::len);
    let mut cone: Vec<Vec<S>> = rows
        .iter()
        .map(|g| {
            let mut r: Vec<S> = g.iter().map(|x| -x.clone()).collect();
            r.push(S::one());
            r
        })
        .collect();
    let mut t_row = vec![S::zero(); n];
    t_row.push(S::one());
    cone.push(t_row);
    let rays = extreme_rays(&cone)?;
    let mut verts = Vec::new();
    for ray in rays {
        let (x, t) = ray.split_at(n);
        let t = &t[0];
        if t.is_zero() {
            return Err(Error::InvalidInput("H-polytope is unbounded".into()));
        }
        verts.push(x.iter().map(|v| v.clone() / t.clone()).collect::<Vec<S>>());
    }
    verts.sort_by(|a, b| lex_cmp(a, b));
    Ok(verts)
}

/// Vertices of a possibly lower-dimensional polytope given by inequality and
/// equality constraints, by exhausting tight active sets. Intended for trace
/// polytopes (faces cut by a subspace) where the constraint count is small.
///
/// `ineqs` are (row, rhs) with row . x <= rhs; `eqs` are row . x = rhs.
pub fn vertices_by_active_sets<S: Coeff>(
    ineqs: &[(Vec<S>, S)],
    eqs: &[(Vec<S>, S)],
    dim: usize,
) -> Vec<Vec<S>> {
    let mut verts: Vec<Vec<S>> = Vec::new();
    let base_rows: Vec<Vec<S>> = eqs.iter().map(|(r, _)| r.clone()).collect();
    let base_rhs: Vec<S> = eqs.iter().map(|(_, b)| b.clone()).collect();
    let k = dim.saturating_sub(linalg::rank(&base_rows));
    let m = ineqs.len();
    let mut choose = vec![0usize; k];
    // Iterate over all k-subsets of the inequality indices.
    fn rec<S: Coeff>(
        start: usize,
        slot: usize,
        choose: &mut Vec<usize>,
        m: usize,
        ineqs: &[(Vec<S>, S)],
        base_rows: &[Vec<S>],
        base_rhs: &[S],
        verts: &mut Vec<Vec<S>>,
    ) {
        if slot == choose.len() {
            let mut rows = base_rows.to_vec();
            let mut rhs = base_rhs.to_vec();
            for &i in choose.iter() {
                rows.push(ineqs[i].0.clone());
                rhs.push(ineqs[i].1.clone());
            }
            let dim = rows.first().map_or(0, Vec::len);
            if linalg::rank(&rows) < dim {
                return;
            }
            if let Some(x) = linalg::solve(&rows, &rhs) {
                if ineqs.iter().all(|(r, b)| linalg::dot(r, &x) <= *b) {
                    verts.push(x);
                }
            }
            return;
        }
        for i in start..m {
            choose[slot] = i;
            rec(i + 1, slot + 1, choose, m, ineqs, base_rows, base_rhs, verts);
        }
    }
    rec(0, 0, &mut choose, m, ineqs, &base_rows, &base_rhs, &mut verts);
    verts.sort_by(|a, b| lex_cmp(a, b));
    verts.dedup();
    verts
}
