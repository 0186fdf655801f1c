//! Worked example fixtures used across the test suites and the CLI fixture
//! generator.
//!
//! Irrational coordinates (√3/2, cos π/2k) are rationalized by exact
//! conversion of their f64 values; the combinatorics of the resulting
//! polytopes (facet counts, dominance margins) are robust under this
//! perturbation.

use crate::faces::Subspace;
use crate::scalar::{rat, rat_from_f64, ratio, Rat};
use crate::spaces::{PolyhedralSpace, SpaceSpec};
use num_traits::Zero;

/// The 14-vertex prism-pyramid polytope: a hexagonal-prism-like symmetric
/// hull with apexes ±(0,0,2). Its ball has 18 facets and admits no strongly
/// anti-coproximinal 2-dimensional subspace.
pub fn prism_pyramid_vertices() -> Vec<Vec<Rat>> {
    let s = rat_from_f64(3f64.sqrt() / 2.0);
    let half = ratio(1, 2);
    let base = vec![
        vec![rat(1), rat(0), rat(1)],
        vec![half.clone(), s.clone(), rat(1)],
        vec![-half.clone(), s.clone(), rat(1)],
        vec![rat(-1), rat(0), rat(1)],
        vec![-half.clone(), -s.clone(), rat(1)],
        vec![half.clone(), -s.clone(), rat(1)],
        vec![rat(0), rat(0), rat(2)],
    ];
    let mut verts = Vec::with_capacity(14);
    for v in base {
        verts.push(v.iter().map(|c| -c.clone()).collect());
        verts.push(v);
    }
    verts
}

pub fn prism_pyramid_space() -> PolyhedralSpace {
    PolyhedralSpace::new(prism_pyramid_vertices(), 3).expect("valid fixture")
}

/// The flagship strongly anti-coproximinal plane in ℓ_∞³.
pub fn flagship_subspace() -> Subspace {
    Subspace::new(vec![
        vec![rat(3), rat(0), rat(2)],
        vec![rat(0), rat(3), rat(2)],
    ])
    .expect("valid fixture")
}

/// Finite truncation of {x ∈ c₀ : x₁ + x₂ + x₃ = 0} to ℓ_∞ⁿ (n ≥ 4).
pub fn c0_truncation_subspace(n: usize) -> Subspace {
    assert!(n >= 4);
    let mut cols = Vec::with_capacity(n - 1);
    let mut col = vec![Rat::zero(); n];
    col[0] = rat(1);
    col[1] = rat(-1);
    cols.push(col);
    let mut col = vec![Rat::zero(); n];
    col[1] = rat(1);
    col[2] = rat(-1);
    cols.push(col);
    for i in 3..n {
        let mut col = vec![Rat::zero(); n];
        col[i] = rat(1);
        cols.push(col);
    }
    Subspace::new(cols).expect("valid fixture")
}

/// Truncation of the trigonometric plane span{ũ, ṽ} with
/// ũ_k = cos(π/2k), ṽ_k = sin(π/2k), k = 1..n.
pub fn trig_subspace(n: usize) -> Subspace {
    assert!(n >= 2);
    let u: Vec<Rat> =
        (1..=n).map(|k| rat_from_f64((std::f64::consts::PI / (2.0 * k as f64)).cos())).collect();
    let v: Vec<Rat> =
        (1..=n).map(|k| rat_from_f64((std::f64::consts::PI / (2.0 * k as f64)).sin())).collect();
    Subspace::new(vec![u, v]).expect("valid fixture")
}

/// The ℓ_1³ coordinate plane span{e₁, e₂}: intersects every maximal face but
/// is not strongly anti-coproximinal.
pub fn l1_plane_subspace() -> Subspace {
    Subspace::new(vec![
        vec![rat(1), rat(0), rat(0)],
        vec![rat(0), rat(1), rat(0)],
    ])
    .expect("valid fixture")
}

pub fn linf3_spec() -> SpaceSpec {
    SpaceSpec::linf(3)
}

pub fn l13_spec() -> SpaceSpec {
    SpaceSpec::l1(3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::faces;

    #[test]
    fn prism_pyramid_has_18_facets() {
        let space = prism_pyramid_space();
        assert_eq!(space.vertices().len(), 14);
        assert_eq!(space.facets().len(), 18);
        let faces = faces::enumerate_facets(&space);
        assert!(faces.iter().all(|f| f.dimension == 2));
    }

    #[test]
    fn truncation_dimensions() {
        let y = c0_truncation_subspace(6);
        assert_eq!(y.ambient_dim(), 6);
        assert_eq!(y.dim(), 5);
        // Membership: x1 + x2 + x3 = 0 on every basis column.
        for col in y.basis() {
            assert!((col[0].clone() + col[1].clone() + col[2].clone()).is_zero());
        }
        let t = trig_subspace(4);
        assert_eq!(t.ambient_dim(), 4);
        assert_eq!(t.dim(), 2);
    }
}
