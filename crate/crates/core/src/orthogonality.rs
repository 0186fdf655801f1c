//! Birkhoff–James and ε-Birkhoff–James orthogonality.
//!
//! With real scalars the set {f(y) : f ∈ J(x)} is an interval, and every
//! "convex hull meets disc" condition reduces to an interval-overlap test —
//! that reduction is the backbone of this module. The exact deciders live on
//! the polyhedral (rational) and ℓ_p (f64 closed-form) paths; the λ-grid
//! oracle works straight from the norm inequality and can only refute.

use crate::faces::{self, Subspace};
use crate::lp::{Lp, Rel, VarKind};
use crate::scalar::{rat_to_f64, Coeff, Rat};
use crate::spaces::{LpSpace, PolyhedralSpace, Space};
use crate::{linalg, Error, Result};
use num_traits::{One, Zero};

/// The interval {f(y) : f ∈ J(x)}.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval<S> {
    pub lo: S,
    pub hi: S,
}

impl<S: Coeff> Interval<S> {
    pub fn new(lo: S, hi: S) -> Self {
        assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(v: S) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= S::zero() && S::zero() <= self.hi
    }

    /// Overlap with the symmetric interval [-a, a].
    pub fn meets_symmetric(&self, a: &S) -> bool {
        self.lo <= *a && -a.clone() <= self.hi
    }

    /// Distance from the interval to 0.
    pub fn dist_to_zero(&self) -> S {
        if self.lo > S::zero() {
            self.lo.clone()
        } else if self.hi < S::zero() {
            -self.hi.clone()
        } else {
            S::zero()
        }
    }
}

/// ε ∈ [0, 1).
#[derive(Debug, Clone, PartialEq)]
pub struct Epsilon(Rat);

impl Epsilon {
    pub fn new(value: Rat) -> Result<Self> {
        if value < Rat::zero() || value >= Rat::one() {
            return Err(Error::BadEpsilon);
        }
        Ok(Epsilon(value))
    }

    pub fn zero() -> Self {
        Epsilon(Rat::zero())
    }

    pub fn from_f64(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::BadEpsilon);
        }
        Epsilon::new(Rat::from_float(value).ok_or(Error::BadEpsilon)?)
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }

    pub fn as_f64(&self) -> f64 {
        rat_to_f64(&self.0)
    }
}

/// A decision with a re-checkable witness.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict<S> {
    pub decision: bool,
    pub certificate: Certificate<S>,
    pub method: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Certificate<S> {
    /// f ∈ J(x) together with f(y).
    SupportingFunctional { functional: Vec<S>, value: S },
    /// A nonzero direction (e.g. z with Y ⊥_B z).
    Direction(Vec<S>),
    /// λ violating the defining norm inequality, with ‖x + λy‖.
    ViolatingLambda { lambda: f64, norm_value: f64 },
    /// A point witnessing an intersection.
    Witness(Vec<S>),
    /// A restricted facet whose interval misses the ε-disc.
    ViolatingFacet { facet_index: usize, functional: Vec<S>, interval: Interval<S> },
    /// Two facets with identical traces.
    FacetPair { first: usize, second: usize },
    /// A list of supporting functionals (smooth-span certificate).
    Functionals(Vec<Vec<S>>),
    None,
}

impl<S> Verdict<S> {
    pub fn yes(certificate: Certificate<S>, method: &'static str) -> Self {
        Verdict { decision: true, certificate, method }
    }

    pub fn no(certificate: Certificate<S>, method: &'static str) -> Self {
        Verdict { decision: false, certificate, method }
    }
}

fn interval_over_hull(hull: &[Vec<Rat>], y: &[Rat]) -> Interval<Rat> {
    let vals: Vec<Rat> = hull.iter().map(|g| linalg::dot(g, y)).collect();
    let lo = vals.iter().min_by(|a, b| a.partial_cmp(b).unwrap()).unwrap().clone();
    let hi = vals.iter().max_by(|a, b| a.partial_cmp(b).unwrap()).unwrap().clone();
    Interval::new(lo, hi)
}

/// [min, max] of f(y) over f ∈ J(x), polyhedral path.
pub fn support_interval(space: &PolyhedralSpace, x: &[Rat], y: &[Rat]) -> Result<Interval<Rat>> {
    let hull = space.support_hull(x)?;
    if y.len() != space.dim() {
        return Err(Error::DimensionMismatch { expected: space.dim(), got: y.len() });
    }
    Ok(interval_over_hull(&hull, y))
}

/// Degenerate interval at the unique pairing, ℓ_p path.
pub fn lp_support_interval(space: &LpSpace, x: &[f64], y: &[f64]) -> Result<Interval<f64>> {
    let f = space.support_functional(x)?;
    if y.len() != space.n {
        return Err(Error::DimensionMismatch { expected: space.n, got: y.len() });
    }
    Ok(Interval::point(f.iter().zip(y).map(|(a, b)| a * b).sum()))
}

/// A functional in J(x) whose pairing with y equals `target`, as a convex
/// combination of two active extreme duals.
fn functional_achieving(hull: &[Vec<Rat>], y: &[Rat], target: &Rat) -> Vec<Rat> {
    if let Some(g) = hull.iter().find(|g| linalg::dot(g, y) == *target) {
        return g.clone();
    }
    let lo_g = hull.iter().min_by(|a, b| linalg::dot(a, y).partial_cmp(&linalg::dot(b, y)).unwrap()).unwrap();
    let hi_g = hull.iter().max_by(|a, b| linalg::dot(a, y).partial_cmp(&linalg::dot(b, y)).unwrap()).unwrap();
    let lo = linalg::dot(lo_g, y);
    let hi = linalg::dot(hi_g, y);
    debug_assert!(lo < *target && *target < hi);
    let t = (hi.clone() - target.clone()) / (hi - lo);
    linalg::add(&linalg::scale(lo_g, &t), &linalg::scale(hi_g, &(Rat::one() - t)))
}

fn clamp(v: Rat, lo: &Rat, hi: &Rat) -> Rat {
    if v < *lo {
        lo.clone()
    } else if v > *hi {
        hi.clone()
    } else {
        v
    }
}

/// x ⊥_B^ε y on the polyhedral path: the support interval must meet
/// [-ε‖y‖, ε‖y‖].
pub fn eps_orthogonal(
    space: &PolyhedralSpace,
    x: &[Rat],
    y: &[Rat],
    eps: &Epsilon,
) -> Result<Verdict<Rat>> {
    let hull = space.support_hull(x)?;
    if y.len() != space.dim() {
        return Err(Error::DimensionMismatch { expected: space.dim(), got: y.len() });
    }
    let iv = interval_over_hull(&hull, y);
    let a = eps.value().clone() * space.norm(y)?;
    if iv.meets_symmetric(&a) {
        let target = clamp(Rat::zero(), &iv.lo.clone().max(-a.clone()), &iv.hi.clone().min(a));
        let f = functional_achieving(&hull, y, &target);
        Ok(Verdict::yes(
            Certificate::SupportingFunctional { functional: f, value: target },
            "hull-interval",
        ))
    } else {
        Ok(Verdict::no(Certificate::None, "hull-interval"))
    }
}

/// x ⊥_B y on the polyhedral path.
pub fn bj_orthogonal(space: &PolyhedralSpace, x: &[Rat], y: &[Rat]) -> Result<Verdict<Rat>> {
    eps_orthogonal(space, x, y, &Epsilon::zero())
}

/// x ⊥_B^ε y on the ℓ_p path (unique supporting functional).
pub fn lp_eps_orthogonal(
    space: &LpSpace,
    x: &[f64],
    y: &[f64],
    eps: f64,
) -> Result<Verdict<f64>> {
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::BadEpsilon);
    }
    let f = space.support_functional(x)?;
    if y.len() != space.n {
        return Err(Error::DimensionMismatch { expected: space.n, got: y.len() });
    }
    let v: f64 = f.iter().zip(y).map(|(a, b)| a * b).sum();
    let a = eps * space.norm(y)?;
    if v.abs() <= a {
        Ok(Verdict::yes(
            Certificate::SupportingFunctional { functional: f, value: v },
            "lp-closed-form",
        ))
    } else {
        Ok(Verdict::no(
            Certificate::SupportingFunctional { functional: f, value: v },
            "lp-closed-form",
        ))
    }
}

pub fn lp_bj_orthogonal(space: &LpSpace, x: &[f64], y: &[f64]) -> Result<Verdict<f64>> {
    lp_eps_orthogonal(space, x, y, 0.0)
}

/// Y ⊥_B^ε z for a subspace: for every facet Q of the restricted ball, the
/// interval of f(z) over the active ambient duals A(Q) must meet the ε-disc.
/// Sub-faces of Q have larger active sets and hence wider intervals, so
/// checking facets suffices.
pub fn subspace_eps_orthogonal(
    space: &PolyhedralSpace,
    y: &Subspace,
    z: &[Rat],
    eps: &Epsilon,
) -> Result<Verdict<Rat>> {
    y.require_proper()?;
    if z.len() != space.dim() {
        return Err(Error::DimensionMismatch { expected: space.dim(), got: z.len() });
    }
    if linalg::is_zero(z) {
        return Err(Error::ZeroVector);
    }
    let ball = faces::restrict_ball(space, y)?;
    let duals = space.dual_extremes();
    let a = eps.value().clone() * space.norm(z)?;
    for (qi, q) in ball.facets.iter().enumerate() {
        let active: Vec<Vec<Rat>> = q.active_ambient.iter().map(|&j| duals[j].clone()).collect();
        let iv = interval_over_hull(&active, z);
        if !iv.meets_symmetric(&a) {
            return Ok(Verdict::no(
                Certificate::ViolatingFacet {
                    facet_index: qi,
                    functional: q.functional.clone(),
                    interval: iv,
                },
                "restricted-facets",
            ));
        }
    }
    Ok(Verdict::yes(Certificate::None, "restricted-facets"))
}

pub fn subspace_orthogonal(space: &PolyhedralSpace, y: &Subspace, z: &[Rat]) -> Result<Verdict<Rat>> {
    subspace_eps_orthogonal(space, y, z, &Epsilon::zero())
}

/// λ-grid configuration for the definition-based oracle.
#[derive(Debug, Clone)]
pub struct GridConfig {
    pub points: usize,
    pub range_factor: f64,
    pub tol: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig { points: 4001, range_factor: 10.0, tol: 1e-6 }
    }
}

/// Searches for λ with ‖x + λy‖ < ‖x‖ − ε‖λy‖ − tol. One-sided: a `true`
/// verdict means "no violation found", not a proof of orthogonality.
pub fn oracle_eps_orthogonal(
    space: &Space,
    x: &[f64],
    y: &[f64],
    eps: f64,
    cfg: &GridConfig,
) -> Result<Verdict<f64>> {
    oracle_with_norm(&|v| space.norm_f64(v).unwrap(), x, y, eps, cfg)
}

/// Same grid search against an arbitrary norm (used for operator norms).
pub fn oracle_with_norm(
    norm: &dyn Fn(&[f64]) -> f64,
    x: &[f64],
    y: &[f64],
    eps: f64,
    cfg: &GridConfig,
) -> Result<Verdict<f64>> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { expected: x.len(), got: y.len() });
    }
    let nx = norm(x);
    let ny = norm(y);
    if nx == 0.0 || ny == 0.0 {
        return Err(Error::ZeroVector);
    }
    let phi = |lambda: f64| -> f64 {
        let pt: Vec<f64> = x.iter().zip(y).map(|(a, b)| a + lambda * b).collect();
        norm(&pt) + eps * lambda.abs() * ny
    };
    let top = cfg.range_factor * nx / ny;
    let half = cfg.points / 2;
    let mut grid = vec![0.0f64];
    for i in 0..half {
        // Magnitudes log-spaced over twelve decades below the range cap.
        let mag = top * 10f64.powf(-12.0 * (half - 1 - i) as f64 / (half.max(2) - 1) as f64);
        grid.push(mag);
        grid.push(-mag);
    }
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut best_i = 0;
    let mut best = f64::INFINITY;
    for (i, &l) in grid.iter().enumerate() {
        let v = phi(l);
        if v < best {
            best = v;
            best_i = i;
        }
    }
    // Golden-section refinement around the best grid point.
    let mut a = grid[best_i.saturating_sub(1)];
    let mut b = grid[(best_i + 1).min(grid.len() - 1)];
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (phi(c), phi(d));
    for _ in 0..200 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = phi(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = phi(d);
        }
    }
    let (lam, val) = if fc < fd { (c, fc) } else { (d, fd) };
    let (lam, val) = if best < val { (grid[best_i], best) } else { (lam, val) };
    if val < nx - cfg.tol {
        let pt: Vec<f64> = x.iter().zip(y).map(|(a, b)| a + lam * b).collect();
        Ok(Verdict::no(
            Certificate::ViolatingLambda { lambda: lam, norm_value: norm(&pt) },
            "grid-oracle",
        ))
    } else {
        Ok(Verdict::yes(Certificate::None, "grid-oracle (no violation found)"))
    }
}

/// A functional in J(x) ∩ J(y), when the two active hulls intersect.
pub fn shared_support_functional(
    space: &PolyhedralSpace,
    x: &[Rat],
    y: &[Rat],
) -> Result<Option<Vec<Rat>>> {
    let hx = space.support_hull(x)?;
    let hy = space.support_hull(y)?;
    let (nx, ny) = (hx.len(), hy.len());
    let dim = space.dim();
    let mut lp = Lp::new(vec![VarKind::NonNeg; nx + ny], vec![Rat::zero(); nx + ny]);
    let mut row = vec![Rat::zero(); nx + ny];
    row[..nx].fill(Rat::one());
    lp.constrain(row, Rel::Eq, Rat::one());
    let mut row = vec![Rat::zero(); nx + ny];
    row[nx..].fill(Rat::one());
    lp.constrain(row, Rel::Eq, Rat::one());
    for d in 0..dim {
        let mut row: Vec<Rat> = hx.iter().map(|g| g[d].clone()).collect();
        row.extend(hy.iter().map(|g| -g[d].clone()));
        lp.constrain(row, Rel::Eq, Rat::zero());
    }
    Ok(lp.feasible().map(|sol| {
        let weights = &sol[..nx];
        linalg::combine(&hx, weights)
    }))
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
            Space::Polyhedral(p) => p,
            _ => unreachable!(),
        }
    }

    #[test]
    fn support_interval_examples() {
        let sq = poly(SpaceSpec::linf(2));
        let iv = support_interval(&sq, &rv(&[1, 1]), &rv(&[1, -1])).unwrap();
        assert_eq!(iv, Interval::new(rat(-1), rat(1)));
        let iv = support_interval(&sq, &rv(&[1, 1]), &rv(&[0, 0])).unwrap();
        assert_eq!(iv, Interval::point(rat(0)));
        let lp3 = LpSpace::new(3, 3.0).unwrap();
        let iv = lp_support_interval(&lp3, &[1.0, 1.0, 1.0], &[1.0, 0.0, 0.0]).unwrap();
        assert!((iv.lo - 3f64.powf(-2.0 / 3.0)).abs() < 1e-14);
        assert_eq!(iv.lo, iv.hi);
    }

    #[test]
    fn bj_examples() {
        let sq = poly(SpaceSpec::linf(2));
        let v = bj_orthogonal(&sq, &rv(&[1, 1]), &rv(&[1, -1])).unwrap();
        assert!(v.decision);
        let Certificate::SupportingFunctional { functional: f, value } = v.certificate else {
            panic!()
        };
        assert_eq!(value, rat(0));
        assert_eq!(linalg::dot(&f, &rv(&[1, -1])), rat(0));
        assert_eq!(linalg::dot(&f, &rv(&[1, 1])), rat(1)); // f ∈ J(x)
        assert!(!bj_orthogonal(&sq, &rv(&[1, 1]), &rv(&[1, 1])).unwrap().decision);
        let lp3 = LpSpace::new(3, 3.0).unwrap();
        let v = lp_bj_orthogonal(&lp3, &[1.0, 1.0, 1.0], &[1.0, -1.0, 0.0]).unwrap();
        assert!(v.decision);
    }

    #[test]
    fn eps_examples() {
        let sq = poly(SpaceSpec::linf(2));
        let half = Epsilon::new(ratio(1, 2)).unwrap();
        assert!(!eps_orthogonal(&sq, &rv(&[1, 0]), &rv(&[1, 0]), &half).unwrap().decision);
        // x = (1, 1/5): smooth, active dual e1*; f(y) = 2/5 <= 1/2.
        let x = vec![rat(1), ratio(1, 5)];
        let y = vec![ratio(2, 5), rat(1)];
        let v = eps_orthogonal(&sq, &x, &y, &half).unwrap();
        assert!(v.decision);
        let Certificate::SupportingFunctional { functional: f, value } = v.certificate else {
            panic!()
        };
        assert_eq!(linalg::dot(&f, &x), sq.norm(&x).unwrap());
        assert!(value.abs() <= ratio(1, 2) * sq.norm(&y).unwrap());
        // ε-monotonicity at the boundary: ε = 0 rejects the same pair.
        assert!(!bj_orthogonal(&sq, &x, &y).unwrap().decision);
    }

    #[test]
    fn subspace_examples() {
        let l13 = poly(SpaceSpec::l1(3));
        let y = Subspace::new(vec![rv(&[1, 0, 0]), rv(&[0, 1, 0])]).unwrap();
        assert!(subspace_orthogonal(&l13, &y, &rv(&[0, 0, 1])).unwrap().decision);
        let cube = poly(SpaceSpec::linf(3));
        let fy = Subspace::new(vec![rv(&[3, 0, 2]), rv(&[0, 3, 2])]).unwrap();
        for z in [rv(&[1, 1, 1]), rv(&[1, 0, 0]), rv(&[-2, 5, 1])] {
            let v = subspace_orthogonal(&cube, &fy, &z).unwrap();
            assert!(!v.decision);
            assert!(matches!(v.certificate, Certificate::ViolatingFacet { .. }));
        }
        assert!(subspace_orthogonal(&cube, &fy, &rv(&[0, 0, 0])).is_err());
        // One-dimensional subspace coincides with the point decider.
        let yline = Subspace::line(rv(&[1, 1, 0])).unwrap();
        for z in [rv(&[1, -1, 0]), rv(&[1, 1, 0]), rv(&[0, 0, 1]), rv(&[2, 1, 1])] {
            let a = subspace_orthogonal(&cube, &yline, &z).unwrap().decision;
            let b = bj_orthogonal(&cube, &rv(&[1, 1, 0]), &z).unwrap().decision;
            assert_eq!(a, b);
        }
    }

    #[test]
    fn oracle_examples() {
        let sq = SpaceSpec::linf(2).build_default().unwrap();
        let cfg = GridConfig::default();
        let v = oracle_eps_orthogonal(&sq, &[1.0, 0.0], &[1.0, 0.0], 0.0, &cfg).unwrap();
        assert!(!v.decision);
        let Certificate::ViolatingLambda { lambda, norm_value } = v.certificate else { panic!() };
        assert!((lambda + 1.0).abs() < 1e-6);
        assert!(norm_value < 1e-6);
        let v = oracle_eps_orthogonal(&sq, &[1.0, 1.0], &[1.0, -1.0], 0.0, &cfg).unwrap();
        assert!(v.decision);
    }

    #[test]
    fn shared_functional_examples() {
        let cube = poly(SpaceSpec::linf(3));
        let x = rv(&[1, 1, 1]);
        let y = vec![rat(1), rat(-1), ratio(1, 2)];
        let f = shared_support_functional(&cube, &x, &y).unwrap().unwrap();
        assert_eq!(f, rv(&[1, 0, 0]));
        let sq = poly(SpaceSpec::linf(2));
        assert!(shared_support_functional(&sq, &rv(&[1, 0]), &rv(&[0, 1])).unwrap().is_none());
        let f = shared_support_functional(&sq, &rv(&[1, 0]), &rv(&[1, 0])).unwrap().unwrap();
        assert_eq!(linalg::dot(&f, &rv(&[1, 0])), rat(1));
    }
}
