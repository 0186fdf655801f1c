//! Best coapproximation and the anti-coproximinality deciders.
//!
//! The quantitative heart is the coapproximation defect: for unit z the least
//! ε with Y ⊥_B^ε z equals max over restricted facets Q of
//! dist(interval_Q(z), 0), and its infimum over the unit sphere is an exact
//! LP minimum once the per-facet existential choices and the sphere-facet
//! normalization branch are enumerated. Strong anti-coproximinality is
//! decided twice — facet-relint route and defect route — and the two must
//! agree.

use crate::faces::{self, RestrictedBall, Subspace};
use crate::lp::{Lp, Outcome, Rel, VarKind};
use crate::orthogonality::{self, Certificate, Epsilon, Interval, Verdict};
use crate::scalar::Rat;
use crate::spaces::{LpSpace, PolyhedralSpace};
use crate::{linalg, Error, Result};
use num_traits::{One, Zero};

/// Default bound on the number of per-facet selection patterns enumerated.
pub const DEFAULT_SELECTION_CAP: usize = 1_000_000;

/// Quantitative report on how close Y comes to admitting an orthogonal
/// direction. delta = 0 with an exact direction means not anti-coproximinal;
/// delta = 1 means strongly anti-coproximinal.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectReport {
    pub delta: Rat,
    pub minimizing_direction: Vec<Rat>,
    pub per_facet_distances: Vec<Rat>,
}

/// Is y0 a best coapproximation to x out of Y, i.e. Y ⊥_B (x − y0)?
pub fn verify_best_coapprox(
    space: &PolyhedralSpace,
    y: &Subspace,
    x: &[Rat],
    y0: &[Rat],
) -> Result<Verdict<Rat>> {
    verify_eps_best_coapprox(space, y, x, y0, &Epsilon::zero())
}

pub fn verify_eps_best_coapprox(
    space: &PolyhedralSpace,
    y: &Subspace,
    x: &[Rat],
    y0: &[Rat],
    eps: &Epsilon,
) -> Result<Verdict<Rat>> {
    if y0.len() != space.dim() || x.len() != space.dim() {
        return Err(Error::DimensionMismatch { expected: space.dim(), got: y0.len().max(x.len()) });
    }
    if !y.contains(y0) {
        return Err(Error::InvalidInput("candidate y0 does not lie in Y".into()));
    }
    let diff = linalg::sub(x, y0);
    if linalg::is_zero(&diff) {
        return Ok(Verdict::yes(Certificate::None, "degenerate (x = y0)"));
    }
    orthogonality::subspace_eps_orthogonal(space, y, &diff, eps)
}

/// Indices of one facet per ± pair (the lexicographically positive one).
fn pair_representatives(functionals: &[Vec<Rat>]) -> Vec<usize> {
    functionals
        .iter()
        .enumerate()
        .filter(|(_, f)| crate::polytope::lex_cmp(f, &linalg::neg(f)) == std::cmp::Ordering::Greater)
        .map(|(i, _)| i)
        .collect()
}

struct Enumeration {
    ball: RestrictedBall,
    duals: Vec<Vec<Rat>>,
    /// Active ambient dual sets for one restricted facet per ± pair.
    active_sets: Vec<Vec<usize>>,
    /// Ambient facet functionals used as normalization branches (one per pair).
    branches: Vec<Vec<Rat>>,
    all_branches: Vec<Vec<Rat>>,
}

fn prepare(space: &PolyhedralSpace, y: &Subspace, cap: usize) -> Result<Enumeration> {
    y.require_proper()?;
    let ball = faces::restrict_ball(space, y)?;
    let duals = space.dual_extremes();
    let g_list: Vec<Vec<Rat>> = ball.facets.iter().map(|q| q.functional.clone()).collect();
    let reps = pair_representatives(&g_list);
    let active_sets: Vec<Vec<usize>> =
        reps.iter().map(|&i| ball.facets[i].active_ambient.clone()).collect();
    let branch_reps = pair_representatives(&duals);
    let branches: Vec<Vec<Rat>> = branch_reps.iter().map(|&i| duals[i].clone()).collect();
    let mut needed: usize = branches.len().max(1);
    for a in &active_sets {
        needed = match needed.checked_mul(a.len() * a.len()) {
            Some(v) if v <= cap => v,
            _ => {
                return Err(Error::SelectionCapExceeded { cap: cap as u64, needed: u64::MAX })
            }
        };
    }
    let all_branches = duals.clone();
    Ok(Enumeration { ball, duals, active_sets, branches, all_branches })
}

/// Iterates mixed-radix selection counters: one (lo, hi) index pair per facet.
fn selections(active_sets: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for set in active_sets {
        let mut next = Vec::with_capacity(out.len() * set.len() * set.len());
        for prefix in &out {
            for &lo in set {
                for &hi in set {
                    let mut s = prefix.clone();
                    s.push((lo, hi));
                    next.push(s);
                }
            }
        }
        out = next;
    }
    out
}

/// Constrains z to the unit sphere on branch k: h_k(z) = 1, h_j(z) ≤ 1.
fn sphere_branch(lp: &mut Lp<Rat>, all: &[Vec<Rat>], k: &[Rat], extra_cols: usize) {
    let pad = |h: &[Rat]| {
        let mut row = h.to_vec();
        row.extend(std::iter::repeat(Rat::zero()).take(extra_cols));
        row
    };
    lp.constrain(pad(k), Rel::Eq, Rat::one());
    for h in all {
        lp.constrain(pad(h), Rel::Le, Rat::one());
    }
}

/// Feasibility of the ε = 0 cell for a selection prefix.
fn direction_prefix_feasible(
    en: &Enumeration,
    n: usize,
    branch: &[Rat],
    sel: &[(usize, usize)],
) -> Option<Vec<Rat>> {
    let mut lp = Lp::new(vec![VarKind::Free; n], vec![Rat::zero(); n]);
    sphere_branch(&mut lp, &en.all_branches, branch, 0);
    for (lo, hi) in sel {
        lp.constrain(en.duals[*lo].clone(), Rel::Le, Rat::zero());
        lp.constrain(en.duals[*hi].clone(), Rel::Ge, Rat::zero());
    }
    lp.feasible()
}

/// Depth-first scan of the selection tree in lexicographic order. A partial
/// selection is a relaxation of all its completions, so an infeasible prefix
/// prunes the whole subtree.
fn direction_dfs(
    en: &Enumeration,
    n: usize,
    branch: &[Rat],
    idx: usize,
    sel: &mut Vec<(usize, usize)>,
) -> Option<Vec<Rat>> {
    if idx == en.active_sets.len() {
        return direction_prefix_feasible(en, n, branch, sel);
    }
    if en.active_sets[idx].len() == 1 {
        let a = en.active_sets[idx][0];
        sel.push((a, a));
        let r = direction_dfs(en, n, branch, idx + 1, sel);
        sel.pop();
        return r;
    }
    direction_prefix_feasible(en, n, branch, sel)?;
    for i in 0..en.active_sets[idx].len() {
        for j in 0..en.active_sets[idx].len() {
            let pair = (en.active_sets[idx][i], en.active_sets[idx][j]);
            sel.push(pair);
            let r = direction_dfs(en, n, branch, idx + 1, sel);
            sel.pop();
            if r.is_some() {
                return r;
            }
        }
    }
    None
}

/// A nonzero z with Y ⊥_B z, or None. Deterministic: branches and selection
/// patterns are scanned in a fixed order and the first feasible witness wins.
pub fn exists_orthogonal_direction(
    space: &PolyhedralSpace,
    y: &Subspace,
    cap: usize,
) -> Result<Option<Vec<Rat>>> {
    let en = prepare(space, y, cap)?;
    let n = space.dim();
    for branch in &en.branches {
        let mut sel = Vec::new();
        if let Some(z) = direction_dfs(&en, n, branch, 0, &mut sel) {
            // The branch guarantees ‖z‖ = 1; re-check the defining
            // facet-interval condition before returning.
            debug_assert!(orthogonality::subspace_orthogonal(space, y, &z)?.decision);
            return Ok(Some(z));
        }
    }
    Ok(None)
}

fn facet_distances(en: &Enumeration, z: &[Rat]) -> Vec<Rat> {
    en.ball
        .facets
        .iter()
        .map(|q| {
            let vals: Vec<Rat> = q.active_ambient.iter().map(|&j| linalg::dot(&en.duals[j], z)).collect();
            let lo = vals.iter().min_by(|a, b| a.partial_cmp(b).unwrap()).unwrap().clone();
            let hi = vals.iter().max_by(|a, b| a.partial_cmp(b).unwrap()).unwrap().clone();
            Interval::new(lo, hi).dist_to_zero()
        })
        .collect()
}

/// Optimum (ε, z) of the defect cell LP for a selection prefix: minimize ε
/// over the sphere branch subject to g_lo(z) ≤ ε, g_hi(z) ≥ −ε per selected
/// pair. A prefix is a relaxation of all its completions.
fn defect_cell_lp(
    en: &Enumeration,
    n: usize,
    branch: &[Rat],
    sel: &[(usize, usize)],
) -> Option<(Rat, Vec<Rat>)> {
    // Variables: z (free) then ε (nonneg); maximize −ε.
    let mut kinds = vec![VarKind::Free; n];
    kinds.push(VarKind::NonNeg);
    let mut obj = vec![Rat::zero(); n];
    obj.push(-Rat::one());
    let mut lp = Lp::new(kinds, obj);
    sphere_branch(&mut lp, &en.all_branches, branch, 1);
    for (lo, hi) in sel {
        let mut row = en.duals[*lo].clone();
        row.push(-Rat::one());
        lp.constrain(row, Rel::Le, Rat::zero());
        let mut row = en.duals[*hi].clone();
        row.push(Rat::one());
        lp.constrain(row, Rel::Ge, Rat::zero());
    }
    match lp.solve() {
        Outcome::Optimal { x, value } => Some((-value, x[..n].to_vec())),
        _ => None,
    }
}

/// Exact minimum over unit z of the least ε with Y ⊥_B^ε z.
pub fn coapprox_defect(space: &PolyhedralSpace, y: &Subspace, cap: usize) -> Result<DefectReport> {
    let en = prepare(space, y, cap)?;
    let n = space.dim();
    let sels = selections(&en.active_sets);
    let mut best: Option<(Rat, Vec<Rat>)> = None;
    for branch in &en.branches {
        for sel in &sels {
            if let Some((eps, z)) = defect_cell_lp(&en, n, branch, sel) {
                if best.as_ref().map_or(true, |(b, _)| eps < *b) {
                    best = Some((eps, z));
                }
            }
        }
    }
    let (delta, z) = best.expect("every sphere branch is feasible");
    let delta = delta.min(Rat::one());
    let per_facet = facet_distances(&en, &z);
    Ok(DefectReport { delta, minimizing_direction: z, per_facet_distances: per_facet })
}

/// Decision form of "δ(Y) = 1" by branch and bound over the selection tree:
/// a prefix optimum ≥ 1 certifies every completion, and any full cell below 1
/// refutes with its (ε, z) witness. Equivalent to
/// `coapprox_defect(..).delta.is_one()` but prunes instead of enumerating.
fn defect_reaches_one(en: &Enumeration, n: usize) -> (bool, Option<(Rat, Vec<Rat>)>) {
    fn subtree_ok(
        en: &Enumeration,
        n: usize,
        branch: &[Rat],
        idx: usize,
        sel: &mut Vec<(usize, usize)>,
        refute: &mut Option<(Rat, Vec<Rat>)>,
    ) -> bool {
        if idx < en.active_sets.len() && en.active_sets[idx].len() == 1 {
            let a = en.active_sets[idx][0];
            sel.push((a, a));
            let r = subtree_ok(en, n, branch, idx + 1, sel, refute);
            sel.pop();
            return r;
        }
        match defect_cell_lp(en, n, branch, sel) {
            Some((eps, z)) => {
                if eps >= Rat::one() {
                    return true;
                }
                if idx == en.active_sets.len() {
                    *refute = Some((eps, z));
                    return false;
                }
            }
            None => return true,
        }
        for i in 0..en.active_sets[idx].len() {
            for j in 0..en.active_sets[idx].len() {
                let pair = (en.active_sets[idx][i], en.active_sets[idx][j]);
                sel.push(pair);
                let ok = subtree_ok(en, n, branch, idx + 1, sel, refute);
                sel.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    for branch in &en.branches {
        let mut refute = None;
        if !subtree_ok(en, n, branch, 0, &mut Vec::new(), &mut refute) {
            return (false, refute);
        }
    }
    (true, None)
}

/// Y is anti-coproximinal iff no nonzero direction is orthogonal to it.
pub fn decide_anti(space: &PolyhedralSpace, y: &Subspace, cap: usize) -> Result<Verdict<Rat>> {
    Ok(match exists_orthogonal_direction(space, y, cap)? {
        Some(z) => Verdict::no(Certificate::Direction(z), "selection-lp"),
        None => Verdict::yes(Certificate::None, "selection-lp"),
    })
}

/// Strong anti-coproximinality, decided by two independent routes:
/// (A) Y meets the relative interior of every ambient facet;
/// (B) the coapproximation defect equals 1.
/// Disagreement is a hard internal error.
pub fn decide_strong_anti(space: &PolyhedralSpace, y: &Subspace, cap: usize) -> Result<Verdict<Rat>> {
    y.require_proper()?;
    let facets = faces::enumerate_facets(space);
    let mut route_a = true;
    let mut offender: Option<usize> = None;
    for (i, f) in facets.iter().enumerate() {
        if !faces::meets_face_relint(space, y, f)?.decision {
            route_a = false;
            offender = Some(i);
            break;
        }
    }
    let en = prepare(space, y, cap)?;
    let (route_b, refutation) = defect_reaches_one(&en, space.dim());
    if route_a != route_b {
        return Err(Error::RouteDisagreement(format!(
            "relint route says {route_a}, defect route says {route_b}"
        )));
    }
    Ok(if route_a {
        Verdict::yes(Certificate::None, "relint-facets + defect")
    } else {
        let i = offender.expect("failed route A names a facet");
        // The refutation carries a unit direction that is ε-orthogonal to Y
        // for some ε < 1, reported as the interval point.
        let eps = refutation.expect("failed route B yields a witness").0;
        Verdict::no(
            Certificate::ViolatingFacet {
                facet_index: i,
                functional: facets[i].supporting_functional.clone(),
                interval: Interval::point(eps),
            },
            "relint-facets + defect",
        )
    })
}

/// Sufficient condition for anti-coproximinality: smooth points of Y whose
/// supporting functionals span the whole dual. A false verdict means
/// "inconclusive".
pub fn anti_via_smooth_span(
    space: &PolyhedralSpace,
    y: &Subspace,
    probes: &[Vec<Rat>],
) -> Result<Verdict<Rat>> {
    let mut functionals = Vec::new();
    for probe in probes {
        if !y.contains(probe) {
            return Err(Error::InvalidInput("probe does not lie in Y".into()));
        }
        let hull = space.support_hull(probe)?;
        if hull.len() != 1 {
            return Err(Error::NotSmoothProbe);
        }
        functionals.push(hull.into_iter().next().unwrap());
    }
    if linalg::rank(&functionals) == space.dim() {
        Ok(Verdict::yes(Certificate::Functionals(functionals), "smooth-span"))
    } else {
        Ok(Verdict::no(Certificate::Functionals(functionals), "smooth-span (inconclusive)"))
    }
}

/// ℓ_p variant of the smooth-span certificate; every nonzero point is smooth.
pub fn lp_anti_via_smooth_span(
    space: &LpSpace,
    basis: &[Vec<f64>],
    probes: &[Vec<f64>],
) -> Result<Verdict<f64>> {
    use nalgebra::DMatrix;
    let n = space.n;
    let b = DMatrix::from_fn(n, basis.len(), |r, c| basis[c][r]);
    let mut functionals = Vec::new();
    for probe in probes {
        if probe.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: probe.len() });
        }
        let p = nalgebra::DVector::from_column_slice(probe);
        let residual = &p - &b * b.clone().svd(true, true).solve(&p, 1e-12).map_err(|_| Error::DegenerateBasis)?;
        if residual.norm() > 1e-9 {
            return Err(Error::InvalidInput("probe does not lie in Y".into()));
        }
        functionals.push(space.support_functional(probe)?);
    }
    let m = DMatrix::from_fn(functionals.len(), n, |r, c| functionals[r][c]);
    if m.rank(1e-9) == n {
        Ok(Verdict::yes(Certificate::Functionals(functionals), "smooth-span"))
    } else {
        Ok(Verdict::no(Certificate::Functionals(functionals), "smooth-span (inconclusive)"))
    }
}

/// ∃y ∈ Y with |y_r| > |y_n| for all n ≠ r, in the sup-norm ambient space.
pub fn coordinate_dominance(y: &Subspace, r: usize) -> Result<Verdict<Rat>> {
    y.require_proper()?;
    let n = y.ambient_dim();
    if r >= n {
        return Err(Error::InvalidInput(format!("coordinate index {r} out of range")));
    }
    let k = y.dim();
    for sign in [Rat::one(), -Rat::one()] {
        // Variables: coefficients c (free) then margin t; maximize t subject
        // to sign * y_r = 1 and |y_m| ≤ 1 − t for m ≠ r.
        let mut kinds = vec![VarKind::Free; k];
        kinds.push(VarKind::Free);
        let mut obj = vec![Rat::zero(); k];
        obj.push(Rat::one());
        let mut lp = Lp::new(kinds, obj);
        let coeff_row = |m: usize, scale: &Rat, t_coeff: Rat| {
            let mut row: Vec<Rat> =
                y.basis().iter().map(|col| scale.clone() * col[m].clone()).collect();
            row.push(t_coeff);
            row
        };
        lp.constrain(coeff_row(r, &sign, Rat::zero()), Rel::Eq, Rat::one());
        for m in 0..n {
            if m == r {
                continue;
            }
            lp.constrain(coeff_row(m, &Rat::one(), Rat::one()), Rel::Le, Rat::one());
            lp.constrain(coeff_row(m, &(-Rat::one()), Rat::one()), Rel::Le, Rat::one());
        }
        if let Outcome::Optimal { x, value } = lp.solve() {
            if value > Rat::zero() {
                let witness = y.embed(&x[..k]);
                return Ok(Verdict::yes(Certificate::Witness(witness), "dominance-margin-lp"));
            }
        }
    }
    Ok(Verdict::no(Certificate::None, "dominance-margin-lp"))
}

pub fn coordinate_dominance_all(y: &Subspace) -> Result<Verdict<Rat>> {
    for r in 0..y.ambient_dim() {
        let v = coordinate_dominance(y, r)?;
        if !v.decision {
            return Ok(Verdict::no(
                Certificate::FacetPair { first: r, second: r },
                "dominance-margin-lp",
            ));
        }
    }
    Ok(Verdict::yes(Certificate::None, "dominance-margin-lp"))
}

/// Verdicts of the necessary conditions for strong anti-coproximinality.
#[derive(Debug, Clone, PartialEq)]
pub struct NecessaryReport {
    /// Y meets every maximal face.
    pub maximal_faces_met: bool,
    /// Distinct maximal faces trace distinct sets on Y.
    pub traces_distinct: bool,
    /// Some unit y ∈ Y shares a supporting functional with a relint
    /// representative of each facet.
    pub shared_functionals: bool,
    /// Names of the failed conditions (each forces strong-anti = false).
    pub failed: Vec<&'static str>,
}

/// Battery of necessary conditions. The shared-functional line is computed
/// independently of meets_face (direct LP on the facet's functional) as an
/// internal cross-check.
pub fn necessary_checks(space: &PolyhedralSpace, y: &Subspace) -> Result<NecessaryReport> {
    y.require_proper()?;
    let facets = faces::enumerate_facets(space);
    let mut maximal_faces_met = true;
    for f in &facets {
        if !faces::meets_face(space, y, f)?.decision {
            maximal_faces_met = false;
            break;
        }
    }
    let traces_distinct = faces::face_traces_distinct(space, y)?.decision;
    // For x in relint F, J(x) = {f_F}; a shared functional with some unit
    // y ∈ Y exists iff f_F attains value 1 on B_X ∩ Y.
    let mut shared_functionals = true;
    'outer: for f in &facets {
        let g = linalg::project(y.basis(), &f.supporting_functional);
        let k = y.dim();
        let mut lp = Lp::new(vec![VarKind::Free; k], vec![Rat::zero(); k]);
        lp.constrain(g, Rel::Eq, Rat::one());
        for h in space.dual_extremes() {
            lp.constrain(linalg::project(y.basis(), &h), Rel::Le, Rat::one());
        }
        if lp.feasible().is_none() {
            shared_functionals = false;
            break 'outer;
        }
    }
    let mut failed = Vec::new();
    if !maximal_faces_met {
        failed.push("maximal-face intersection");
    }
    if !traces_distinct {
        failed.push("face-trace distinctness");
    }
    if !shared_functionals {
        failed.push("shared supporting functional");
    }
    Ok(NecessaryReport { maximal_faces_met, traces_distinct, shared_functionals, failed })
}

/// Block-diagonal lift of Y into the k-fold sup-norm product of its ambient
/// space: C(K, Y) with |K| = k.
pub fn lift_sup_product(y: &Subspace, copies: usize) -> Result<Subspace> {
    if copies == 0 {
        return Err(Error::InvalidInput("lift needs copies >= 1".into()));
    }
    if copies == 1 {
        return Ok(y.clone());
    }
    let n = y.ambient_dim();
    let mut cols = Vec::with_capacity(copies * y.dim());
    for block in 0..copies {
        for col in y.basis() {
            let mut v = vec![Rat::zero(); copies * n];
            v[block * n..(block + 1) * n].clone_from_slice(col);
            cols.push(v);
        }
    }
    Subspace::new(cols)
}
