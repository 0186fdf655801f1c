//! Face machinery: facet descriptors, subspaces, the restricted ball
//! B_X ∩ Y, and face-intersection tests.
//!
//! Relative-interior membership is decided by a margin-maximization LP whose
//! exact rational optimum is compared to zero — no thresholds.

use crate::lp::{Lp, Outcome, Rel, VarKind};
use crate::orthogonality::{Certificate, Verdict};
use crate::polytope;
use crate::scalar::Rat;
use crate::spaces::PolyhedralSpace;
use crate::{linalg, Error, Result};
use num_traits::{One, Zero};

/// A face of the unit ball, described by a supporting functional and the
/// vertices it touches.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceDescriptor {
    pub supporting_functional: Vec<Rat>,
    pub vertex_indices: Vec<usize>,
    pub dimension: usize,
}

/// A linear subspace given by a full-column-rank basis (columns).
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    basis: Vec<Vec<Rat>>,
}

impl Subspace {
    pub fn new(basis: Vec<Vec<Rat>>) -> Result<Self> {
        let ambient = basis.first().map_or(0, Vec::len);
        if basis.is_empty() || ambient == 0 {
            return Err(Error::DegenerateBasis);
        }
        for col in &basis {
            if col.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, got: col.len() });
            }
        }
        if basis.len() > ambient || linalg::rank(&basis) < basis.len() {
            return Err(Error::DegenerateBasis);
        }
        Ok(Subspace { basis })
    }

    pub fn line(y: Vec<Rat>) -> Result<Self> {
        Subspace::new(vec![y])
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis[0].len()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_proper(&self) -> bool {
        self.dim() < self.ambient_dim()
    }

    pub fn require_proper(&self) -> Result<()> {
        if self.is_proper() {
            Ok(())
        } else {
            Err(Error::ImproperSubspace)
        }
    }

    /// Basis columns.
    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    /// Maps basis coordinates to the ambient space.
    pub fn embed(&self, coords: &[Rat]) -> Vec<Rat> {
        linalg::combine(&self.basis, coords)
    }

    /// Basis coordinates of x, if x lies in the subspace.
    pub fn coords(&self, x: &[Rat]) -> Option<Vec<Rat>> {
        linalg::in_span(&self.basis, x)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.coords(x).is_some()
    }
}

/// A facet of the restricted ball B_X ∩ Y, in basis coordinates, together
/// with the ambient dual extremes that are identically 1 on it.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedFacet {
    /// Facet functional in basis coordinates (g . c = 1 on the facet).
    pub functional: Vec<Rat>,
    /// Indices into the restricted ball's vertex list.
    pub vertex_indices: Vec<usize>,
    /// A(Q): indices into the ambient space's dual extreme list.
    pub active_ambient: Vec<usize>,
}

/// B_X ∩ Y in basis coordinates.
#[derive(Debug, Clone)]
pub struct RestrictedBall {
    pub vertices: Vec<Vec<Rat>>,
    pub facets: Vec<RestrictedFacet>,
}

/// Facets of a polyhedral space as face descriptors.
pub fn enumerate_facets(space: &PolyhedralSpace) -> Vec<FaceDescriptor> {
    space
        .facets()
        .iter()
        .map(|f| {
            let pts: Vec<Vec<Rat>> =
                f.vertex_indices.iter().map(|&i| space.vertices()[i].clone()).collect();
            FaceDescriptor {
                supporting_functional: f.functional.clone(),
                vertex_indices: f.vertex_indices.clone(),
                dimension: linalg::affine_dim(&pts).unwrap_or(0),
            }
        })
        .collect()
}

/// Computes B_X ∩ Y in basis coordinates, with the active ambient dual set
/// of every restricted facet.
///
/// The dual ball of (Y, ‖·‖ restricted) is the image of the ambient dual ball
/// under B^T, i.e. conv{B^T f : f dual extreme}; its extreme points are the
/// facet functionals of the restricted ball.
pub fn restrict_ball(space: &PolyhedralSpace, y: &Subspace) -> Result<RestrictedBall> {
    if y.ambient_dim() != space.dim() {
        return Err(Error::DimensionMismatch { expected: space.dim(), got: y.ambient_dim() });
    }
    let duals = space.dual_extremes();
    let projected: Vec<Vec<Rat>> = duals.iter().map(|f| linalg::project(y.basis(), f)).collect();
    let mut distinct: Vec<Vec<Rat>> = Vec::new();
    for g in &projected {
        if !distinct.contains(g) {
            distinct.push(g.clone());
        }
    }
    // Keep only the extreme points of conv of the projections.
    let mut extremes: Vec<Vec<Rat>> = Vec::new();
    for (i, g) in distinct.iter().enumerate() {
        let others: Vec<&Vec<Rat>> =
            distinct.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, h)| h).collect();
        if !in_hull(g, &others) {
            extremes.push(g.clone());
        }
    }
    let vertices = polytope::vertices_from_hrep(&extremes)?;
    let mut facets = Vec::new();
    for g in &extremes {
        let vertex_indices: Vec<usize> = vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| linalg::dot(g, v).is_one())
            .map(|(i, _)| i)
            .collect();
        let active_ambient: Vec<usize> = projected
            .iter()
            .enumerate()
            .filter(|(_, gj)| vertex_indices.iter().all(|&vi| linalg::dot(gj, &vertices[vi]).is_one()))
            .map(|(j, _)| j)
            .collect();
        debug_assert!(!active_ambient.is_empty());
        facets.push(RestrictedFacet { functional: g.clone(), vertex_indices, active_ambient });
    }
    Ok(RestrictedBall { vertices, facets })
}

/// Is p a convex combination of the given points?
fn in_hull(p: &[Rat], points: &[&Vec<Rat>]) -> bool {
    if points.is_empty() {
        return false;
    }
    let k = points.len();
    let mut lp = Lp::new(vec![VarKind::NonNeg; k], vec![Rat::zero(); k]);
    lp.constrain(vec![Rat::one(); k], Rel::Eq, Rat::one());
    for d in 0..p.len() {
        let row: Vec<Rat> = points.iter().map(|q| q[d].clone()).collect();
        lp.constrain(row, Rel::Eq, p[d].clone());
    }
    lp.feasible().is_some()
}

/// Builds the LP skeleton for "y ∈ F ∩ Y": simplex weights over the face's
/// vertices plus free subspace coordinates, optionally with a margin variable
/// bounding the weights from below.
fn face_meet_lp(
    space: &PolyhedralSpace,
    y: &Subspace,
    face: &FaceDescriptor,
    margin: bool,
) -> Lp<Rat> {
    let nv = face.vertex_indices.len();
    let k = y.dim();
    let ncols = nv + k + usize::from(margin);
    let mut kinds = vec![VarKind::NonNeg; nv];
    kinds.extend(vec![VarKind::Free; k]);
    let mut objective = vec![Rat::zero(); nv + k];
    if margin {
        kinds.push(VarKind::Free);
        objective.push(Rat::one());
    }
    let mut lp = Lp::new(kinds, objective);
    let mut ones = vec![Rat::zero(); ncols];
    ones[..nv].fill(Rat::one());
    lp.constrain(ones, Rel::Eq, Rat::one());
    for d in 0..space.dim() {
        let mut row = vec![Rat::zero(); ncols];
        for (slot, &vi) in face.vertex_indices.iter().enumerate() {
            row[slot] = space.vertices()[vi][d].clone();
        }
        for (j, col) in y.basis().iter().enumerate() {
            row[nv + j] = -col[d].clone();
        }
        lp.constrain(row, Rel::Eq, Rat::zero());
    }
    if margin {
        for slot in 0..nv {
            let mut row = vec![Rat::zero(); ncols];
            row[slot] = Rat::one();
            row[ncols - 1] = -Rat::one();
            lp.constrain(row, Rel::Ge, Rat::zero());
        }
    }
    lp
}

fn witness_from(space: &PolyhedralSpace, face: &FaceDescriptor, x: &[Rat]) -> Vec<Rat> {
    let weights = &x[..face.vertex_indices.len()];
    let pts: Vec<Vec<Rat>> =
        face.vertex_indices.iter().map(|&i| space.vertices()[i].clone()).collect();
    let cols: Vec<Vec<Rat>> = pts;
    linalg::combine(&cols, weights)
}

/// Is the descriptor the full facet carried by its supporting functional?
fn is_full_facet(space: &PolyhedralSpace, face: &FaceDescriptor) -> bool {
    space.vertices().iter().enumerate().all(|(i, v)| {
        (linalg::dot(&face.supporting_functional, v) == Rat::one())
            == face.vertex_indices.contains(&i)
    })
}

/// H-form meet LP in subspace coordinates: f(Yc) = 1, h(Yc) (+ t) <= 1 for
/// every other facet functional h. Sound only for full facets, where
/// relint(F) = {x : f(x) = 1, h(x) < 1 for all facets h != f}.
fn facet_meet_lp(space: &PolyhedralSpace, y: &Subspace, face: &FaceDescriptor, margin: bool) -> Lp<Rat> {
    let k = y.dim();
    let ncols = k + usize::from(margin);
    let mut kinds = vec![VarKind::Free; k];
    let mut objective = vec![Rat::zero(); k];
    if margin {
        kinds.push(VarKind::Free);
        objective.push(Rat::one());
    }
    let mut lp = Lp::new(kinds, objective);
    let target = linalg::project(y.basis(), &face.supporting_functional);
    let mut row = target.clone();
    row.extend(std::iter::repeat(Rat::zero()).take(usize::from(margin)));
    lp.constrain(row, Rel::Eq, Rat::one());
    for facet in space.facets() {
        if facet.functional == face.supporting_functional {
            continue;
        }
        let mut row = linalg::project(y.basis(), &facet.functional);
        if margin {
            row.push(Rat::one());
        }
        lp.constrain(row, Rel::Le, Rat::one());
    }
    lp
}

/// Does Y intersect the face F?
pub fn meets_face(space: &PolyhedralSpace, y: &Subspace, face: &FaceDescriptor) -> Result<Verdict<Rat>> {
    if y.ambient_dim() != space.dim() {
        return Err(Error::DimensionMismatch { expected: space.dim(), got: y.ambient_dim() });
    }
    if is_full_facet(space, face) {
        let k = y.dim();
        let mut lp = facet_meet_lp(space, y, face, false);
        // Feasibility only; cap nothing, objective is zero.
        return Ok(match lp_feasible_point(&mut lp, k) {
            Some(c) => Verdict::yes(Certificate::Witness(y.embed(&c)), "face-lp"),
            None => Verdict::no(Certificate::None, "face-lp"),
        });
    }
    let lp = face_meet_lp(space, y, face, false);
    Ok(match lp.feasible() {
        Some(x) => Verdict::yes(Certificate::Witness(witness_from(space, face, &x)), "face-lp"),
        None => Verdict::no(Certificate::None, "face-lp"),
    })
}

fn lp_feasible_point(lp: &mut Lp<Rat>, take: usize) -> Option<Vec<Rat>> {
    lp.feasible().map(|x| x[..take].to_vec())
}

/// Does Y intersect the relative interior of F? Maximizes the margin to all
/// other facets (equivalently the least simplex weight); true iff the optimum
/// is strictly positive.
pub fn meets_face_relint(
    space: &PolyhedralSpace,
    y: &Subspace,
    face: &FaceDescriptor,
) -> Result<Verdict<Rat>> {
    if y.ambient_dim() != space.dim() {
        return Err(Error::DimensionMismatch { expected: space.dim(), got: y.ambient_dim() });
    }
    if is_full_facet(space, face) {
        let k = y.dim();
        let lp = facet_meet_lp(space, y, face, true);
        return Ok(match lp.solve() {
            Outcome::Optimal { x, value } if value > Rat::zero() => {
                Verdict::yes(Certificate::Witness(y.embed(&x[..k])), "relint-margin-lp")
            }
            _ => Verdict::no(Certificate::None, "relint-margin-lp"),
        });
    }
    let lp = face_meet_lp(space, y, face, true);
    Ok(match lp.solve() {
        Outcome::Optimal { x, value } if value > Rat::zero() => {
            Verdict::yes(Certificate::Witness(witness_from(space, face, &x)), "relint-margin-lp")
        }
        _ => Verdict::no(Certificate::None, "relint-margin-lp"),
    })
}

/// Vertex set of the trace F ∩ Y in basis coordinates, canonically sorted.
fn trace_vertices(space: &PolyhedralSpace, y: &Subspace, facet_idx: usize) -> Vec<Vec<Rat>> {
    let projected: Vec<Vec<Rat>> = space
        .facets()
        .iter()
        .map(|f| linalg::project(y.basis(), &f.functional))
        .collect();
    let ineqs: Vec<(Vec<Rat>, Rat)> =
        projected.iter().map(|g| (g.clone(), Rat::one())).collect();
    let eqs = vec![(projected[facet_idx].clone(), Rat::one())];
    polytope::vertices_by_active_sets(&ineqs, &eqs, y.dim())
}

/// Are the traces F ∩ Y pairwise distinct over all facet pairs F₁ ≠ ±F₂ with
/// both traces nonempty? Certificate on failure: the offending facet pair.
pub fn face_traces_distinct(space: &PolyhedralSpace, y: &Subspace) -> Result<Verdict<Rat>> {
    if y.ambient_dim() != space.dim() {
        return Err(Error::DimensionMismatch { expected: space.dim(), got: y.ambient_dim() });
    }
    let traces: Vec<Vec<Vec<Rat>>> =
        (0..space.facets().len()).map(|i| trace_vertices(space, y, i)).collect();
    for i in 0..traces.len() {
        if traces[i].is_empty() {
            continue;
        }
        for j in i + 1..traces.len() {
            if traces[j].is_empty() {
                continue;
            }
            let fi = &space.facets()[i].functional;
            let fj = &space.facets()[j].functional;
            if *fj == linalg::neg(fi) {
                continue;
            }
            if traces[i] == traces[j] {
                return Ok(Verdict::no(
                    Certificate::FacetPair { first: i, second: j },
                    "trace-vertex-sets",
                ));
            }
        }
    }
    Ok(Verdict::yes(Certificate::None, "trace-vertex-sets"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};
    use crate::spaces::SpaceSpec;
    use num_traits::Signed;

    fn rv(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    fn poly(spec: SpaceSpec) -> PolyhedralSpace {
        match spec.build_default().unwrap() {
            crate::spaces::Space::Polyhedral(p) => p,
            _ => unreachable!(),
        }
    }

    fn flagship_y() -> Subspace {
        Subspace::new(vec![rv(&[3, 0, 2]), rv(&[0, 3, 2])]).unwrap()
    }

    #[test]
    fn facet_descriptors_of_cube() {
        let cube = poly(SpaceSpec::linf(3));
        let faces = enumerate_facets(&cube);
        assert_eq!(faces.len(), 6);
        for f in &faces {
            assert_eq!(f.dimension, 2);
            assert_eq!(f.vertex_indices.len(), 4);
            for (i, v) in cube.vertices().iter().enumerate() {
                let val = linalg::dot(&f.supporting_functional, v);
                if f.vertex_indices.contains(&i) {
                    assert_eq!(val, rat(1));
                } else {
                    assert!(val < rat(1));
                }
            }
        }
    }

    #[test]
    fn subspace_validation() {
        assert!(Subspace::new(vec![rv(&[1, 0]), rv(&[2, 0])]).is_err());
        assert!(Subspace::new(vec![]).is_err());
        let y = Subspace::new(vec![rv(&[1, 0, 1]), rv(&[0, 1, 1])]).unwrap();
        assert!(y.is_proper());
        assert_eq!(y.coords(&rv(&[2, 3, 5])).unwrap(), rv(&[2, 3]));
        assert!(!y.contains(&rv(&[0, 0, 1])));
        let full = Subspace::new(vec![rv(&[1, 0]), rv(&[1, 1])]).unwrap();
        assert!(full.require_proper().is_err());
    }

    #[test]
    fn restricted_ball_is_hexagon_for_flagship() {
        let cube = poly(SpaceSpec::linf(3));
        let ball = restrict_ball(&cube, &flagship_y()).unwrap();
        assert_eq!(ball.facets.len(), 6);
        assert_eq!(ball.vertices.len(), 6);
        // Round trip: every restricted vertex has ambient norm exactly 1.
        for v in &ball.vertices {
            let ambient = flagship_y().embed(v);
            assert_eq!(cube.norm(&ambient).unwrap(), rat(1));
        }
        for q in &ball.facets {
            assert!(!q.active_ambient.is_empty());
            assert_eq!(q.vertex_indices.len(), 2);
        }
    }

    #[test]
    fn restricted_ball_l1_coordinate_plane() {
        let l13 = poly(SpaceSpec::l1(3));
        let y = Subspace::new(vec![rv(&[1, 0, 0]), rv(&[0, 1, 0])]).unwrap();
        let ball = restrict_ball(&l13, &y).unwrap();
        assert_eq!(ball.facets.len(), 4);
        assert_eq!(ball.vertices.len(), 4);
        let duals = l13.dual_extremes();
        // The facet through e1, e2 has exactly the two ambient duals (1,1,±1).
        let q = ball
            .facets
            .iter()
            .find(|q| q.functional == rv(&[1, 1]))
            .expect("facet with functional (1,1)");
        let mut active: Vec<Vec<Rat>> =
            q.active_ambient.iter().map(|&j| duals[j].clone()).collect();
        active.sort_by(|a, b| polytope::lex_cmp(a, b));
        assert_eq!(active, vec![rv(&[1, 1, -1]), rv(&[1, 1, 1])]);
    }

    #[test]
    fn restricted_ball_of_vertex_line_is_segment() {
        let cube = poly(SpaceSpec::linf(3));
        let y = Subspace::line(rv(&[1, 1, 1])).unwrap();
        let ball = restrict_ball(&cube, &y).unwrap();
        assert_eq!(ball.facets.len(), 2);
        assert_eq!(ball.vertices, vec![vec![rat(-1)], vec![rat(1)]]);
    }

    #[test]
    fn meets_face_examples() {
        let l13 = poly(SpaceSpec::l1(3));
        let y = Subspace::new(vec![rv(&[1, 0, 0]), rv(&[0, 1, 0])]).unwrap();
        for f in enumerate_facets(&l13) {
            let v = meets_face(&l13, &y, &f).unwrap();
            assert!(v.decision);
        }
        let cube = poly(SpaceSpec::linf(3));
        let top = enumerate_facets(&cube)
            .into_iter()
            .find(|f| f.supporting_functional == rv(&[0, 0, 1]))
            .unwrap();
        let v = meets_face(&cube, &flagship_y(), &top).unwrap();
        assert!(v.decision);
        match v.certificate {
            Certificate::Witness(w) => {
                assert_eq!(w[2], rat(1));
                assert!(flagship_y().contains(&w));
            }
            other => panic!("unexpected certificate {other:?}"),
        }
        let sq = poly(SpaceSpec::linf(2));
        let yline = Subspace::line(rv(&[1, 0])).unwrap();
        let top = enumerate_facets(&sq)
            .into_iter()
            .find(|f| f.supporting_functional == rv(&[0, 1]))
            .unwrap();
        assert!(!meets_face(&sq, &yline, &top).unwrap().decision);
    }

    #[test]
    fn relint_examples() {
        let cube = poly(SpaceSpec::linf(3));
        for f in enumerate_facets(&cube) {
            assert!(meets_face_relint(&cube, &flagship_y(), &f).unwrap().decision);
        }
        let l13 = poly(SpaceSpec::l1(3));
        let y = Subspace::new(vec![rv(&[1, 0, 0]), rv(&[0, 1, 0])]).unwrap();
        let pos = enumerate_facets(&l13)
            .into_iter()
            .find(|f| f.supporting_functional == rv(&[1, 1, 1]))
            .unwrap();
        assert!(!meets_face_relint(&l13, &y, &pos).unwrap().decision);
        assert!(meets_face(&l13, &y, &pos).unwrap().decision);
        // Improper subspace meets every relint.
        let full = Subspace::new(vec![rv(&[1, 0, 0]), rv(&[0, 1, 0]), rv(&[0, 0, 1])]).unwrap();
        for f in enumerate_facets(&l13) {
            assert!(meets_face_relint(&l13, &full, &f).unwrap().decision);
        }
    }

    #[test]
    fn relint_witness_has_positive_weights() {
        let cube = poly(SpaceSpec::linf(3));
        let top = enumerate_facets(&cube)
            .into_iter()
            .find(|f| f.supporting_functional == rv(&[0, 0, 1]))
            .unwrap();
        let v = meets_face_relint(&cube, &flagship_y(), &top).unwrap();
        let Certificate::Witness(w) = v.certificate else { panic!() };
        assert_eq!(w[2], rat(1));
        assert!(w[0].abs() < rat(1) && w[1].abs() < rat(1));
    }

    #[test]
    fn traces_distinct_examples() {
        let cube = poly(SpaceSpec::linf(3));
        assert!(face_traces_distinct(&cube, &flagship_y()).unwrap().decision);
        // The diagonal of the square meets two non-opposite facets in the
        // same corner, so its traces are not distinct.
        let sq = poly(SpaceSpec::linf(2));
        let diag = Subspace::line(rv(&[1, 1])).unwrap();
        assert!(!face_traces_distinct(&sq, &diag).unwrap().decision);
        let off_diag = Subspace::line(rv(&[2, 1])).unwrap();
        assert!(face_traces_distinct(&sq, &off_diag).unwrap().decision);
        // Y hugging an edge of the cube: the two facets x1=1 and x2=1 share
        // the trace through (1,1,·).
        let y = Subspace::new(vec![rv(&[1, 1, 0]), rv(&[0, 0, 1])]).unwrap();
        let v = face_traces_distinct(&cube, &y).unwrap();
        assert!(!v.decision);
        let Certificate::FacetPair { first, second } = v.certificate else { panic!() };
        let f1 = &cube.facets()[first].functional;
        let f2 = &cube.facets()[second].functional;
        assert_ne!(f1, f2);
        assert_ne!(*f2, linalg::neg(f1));
    }

    #[test]
    fn half_vertex_point_is_in_face_hull() {
        // (1/2, 1/2, 0) lies in conv{e1, e2, e3}.
        let l13 = poly(SpaceSpec::l1(3));
        let pos = enumerate_facets(&l13)
            .into_iter()
            .find(|f| f.supporting_functional == rv(&[1, 1, 1]))
            .unwrap();
        let pts: Vec<Vec<Rat>> =
            pos.vertex_indices.iter().map(|&i| l13.vertices()[i].clone()).collect();
        let refs: Vec<&Vec<Rat>> = pts.iter().collect();
        assert!(in_hull(&[ratio(1, 2), ratio(1, 2), rat(0)], &refs));
    }
}
