//! Norm specifications and supporting-functional sets.
//!
//! Two arithmetic worlds live side by side. Polyhedral spaces carry their
//! vertex list and the derived dual extreme points as exact rationals; norms
//! and support sets are exact. ell_p spaces (1 < p < infinity) use f64 with
//! the closed-form support functional.

use crate::polytope::{self, Facet};
use crate::scalar::{rat_to_f64, Rat};
use crate::{linalg, Error, Result};
use num_traits::{Signed, Zero};

/// Default dimension cap for facet enumeration.
pub const DEFAULT_CAP: usize = 6;

/// Tolerance for float-path equality tests.
pub const FLOAT_TOL: f64 = 1e-9;

/// User-facing norm description.
#[derive(Debug, Clone, PartialEq)]
pub enum SpaceSpec {
    Polyhedral { vertices: Vec<Vec<Rat>> },
    Lp { n: usize, p: f64 },
    LInf { n: usize },
    L1 { n: usize },
    SupProduct { base: Box<SpaceSpec>, copies: usize },
}

impl SpaceSpec {
    pub fn linf(n: usize) -> Self {
        SpaceSpec::LInf { n }
    }

    pub fn l1(n: usize) -> Self {
        SpaceSpec::L1 { n }
    }

    pub fn lp(n: usize, p: f64) -> Self {
        SpaceSpec::Lp { n, p }
    }

    pub fn polyhedral(vertices: Vec<Vec<Rat>>) -> Self {
        SpaceSpec::Polyhedral { vertices }
    }

    pub fn sup_product(base: SpaceSpec, copies: usize) -> Self {
        SpaceSpec::SupProduct { base: Box::new(base), copies }
    }

    pub fn dim(&self) -> usize {
        match self {
            SpaceSpec::Polyhedral { vertices } => vertices.first().map_or(0, Vec::len),
            SpaceSpec::Lp { n, .. } | SpaceSpec::LInf { n } | SpaceSpec::L1 { n } => *n,
            SpaceSpec::SupProduct { base, copies } => base.dim() * copies,
        }
    }

    /// Expands polyhedral-expressible specs to their vertex list.
    fn expand_vertices(&self) -> Result<Vec<Vec<Rat>>> {
        match self {
            SpaceSpec::Polyhedral { vertices } => Ok(vertices.clone()),
            SpaceSpec::Lp { .. } => Err(Error::NonPolyhedral),
            SpaceSpec::LInf { n } => {
                if *n == 0 {
                    return Err(Error::InvalidInput("dimension 0".into()));
                }
                Ok((0..1usize << n)
                    .map(|mask| {
                        (0..*n)
                            .map(|i| {
                                if mask >> i & 1 == 1 {
                                    Rat::from_integer(1.into())
                                } else {
                                    Rat::from_integer((-1).into())
                                }
                            })
                            .collect()
                    })
                    .collect())
            }
            SpaceSpec::L1 { n } => {
                if *n == 0 {
                    return Err(Error::InvalidInput("dimension 0".into()));
                }
                let mut v = Vec::with_capacity(2 * n);
                for i in 0..*n {
                    for s in [1i64, -1] {
                        let mut x = vec![Rat::zero(); *n];
                        x[i] = Rat::from_integer(s.into());
                        v.push(x);
                    }
                }
                Ok(v)
            }
            SpaceSpec::SupProduct { base, copies } => {
                if *copies == 0 {
                    return Err(Error::InvalidInput("sup product needs copies >= 1".into()));
                }
                // Extreme points of a sup-norm direct sum are tuples of
                // extreme points of the factors.
                let bv = base.expand_vertices()?;
                let mut out: Vec<Vec<Rat>> = vec![Vec::new()];
                for _ in 0..*copies {
                    let mut next = Vec::with_capacity(out.len() * bv.len());
                    for prefix in &out {
                        for v in &bv {
                            let mut w = prefix.clone();
                            w.extend(v.iter().cloned());
                            next.push(w);
                        }
                    }
                    out = next;
                }
                Ok(out)
            }
        }
    }

    pub fn build(&self, cap: usize) -> Result<Space> {
        match self {
            SpaceSpec::Lp { n, p } => Ok(Space::Lp(LpSpace::new(*n, *p)?)),
            _ => Ok(Space::Polyhedral(PolyhedralSpace::new(self.expand_vertices()?, cap)?)),
        }
    }

    pub fn build_default(&self) -> Result<Space> {
        self.build(DEFAULT_CAP)
    }
}

/// A realized space, ready for computation.
#[derive(Debug, Clone)]
pub enum Space {
    Polyhedral(PolyhedralSpace),
    Lp(LpSpace),
}

impl Space {
    pub fn dim(&self) -> usize {
        match self {
            Space::Polyhedral(p) => p.dim(),
            Space::Lp(l) => l.n,
        }
    }

    /// Floating-point norm, available on both paths (used by the oracle).
    pub fn norm_f64(&self, x: &[f64]) -> Result<f64> {
        match self {
            Space::Polyhedral(p) => {
                if x.len() != p.dim() {
                    return Err(Error::DimensionMismatch { expected: p.dim(), got: x.len() });
                }
                let mut best = 0.0f64;
                for f in &p.facets {
                    let v: f64 = f.functional.iter().zip(x).map(|(c, xi)| rat_to_f64(c) * xi).sum();
                    best = best.max(v);
                }
                Ok(best)
            }
            Space::Lp(l) => l.norm(x),
        }
    }

    pub fn as_polyhedral(&self) -> Result<&PolyhedralSpace> {
        match self {
            Space::Polyhedral(p) => Ok(p),
            Space::Lp(_) => Err(Error::NonPolyhedral),
        }
    }
}

/// The supporting-functional set J(x).
#[derive(Debug, Clone, PartialEq)]
pub enum SupportSet {
    /// ell_p path: the unique supporting functional.
    Singleton { point: Vec<f64>, functional: Vec<f64> },
    /// Polyhedral path: all extreme dual functionals active at x. J(x) is
    /// their convex hull.
    Hull { point: Vec<Rat>, functionals: Vec<Vec<Rat>> },
}

impl SupportSet {
    pub fn is_singleton(&self) -> bool {
        match self {
            SupportSet::Singleton { .. } => true,
            SupportSet::Hull { functionals, .. } => functionals.len() == 1,
        }
    }
}

/// A polyhedral space: the supplied polytope is the unit ball by definition.
#[derive(Debug, Clone)]
pub struct PolyhedralSpace {
    vertices: Vec<Vec<Rat>>,
    facets: Vec<Facet<Rat>>,
}

impl PolyhedralSpace {
    pub fn new(vertices: Vec<Vec<Rat>>, cap: usize) -> Result<Self> {
        let dim = vertices.first().map_or(0, Vec::len);
        if dim == 0 {
            return Err(Error::InvalidInput("empty vertex list".into()));
        }
        if dim > cap {
            return Err(Error::CapExceeded { dim, cap });
        }
        for v in &vertices {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
            }
        }
        for (i, v) in vertices.iter().enumerate() {
            let nv = linalg::neg(v);
            if !vertices.contains(&nv) {
                return Err(Error::NotSymmetric { index: i });
            }
        }
        let r = linalg::rank(&vertices);
        if r < dim {
            return Err(Error::NotFullDimensional { rank: r, dim });
        }
        let facets = polytope::facets_from_vrep(&vertices)?;
        Ok(PolyhedralSpace { vertices, facets })
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet<Rat>] {
        &self.facets
    }

    /// Extreme points of the dual unit ball (one per facet).
    pub fn dual_extremes(&self) -> Vec<Vec<Rat>> {
        self.facets.iter().map(|f| f.functional.clone()).collect()
    }

    fn check_dim(&self, x: &[Rat]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: x.len() });
        }
        Ok(())
    }

    /// Exact norm: max of f(x) over the dual extreme points.
    pub fn norm(&self, x: &[Rat]) -> Result<Rat> {
        self.check_dim(x)?;
        let mut best = Rat::zero();
        for f in &self.facets {
            let v = linalg::dot(&f.functional, x);
            if v > best {
                best = v;
            }
        }
        Ok(best)
    }

    /// Extreme dual functionals active at x (exact equality f(x) = ||x||).
    pub fn support_hull(&self, x: &[Rat]) -> Result<Vec<Vec<Rat>>> {
        self.check_dim(x)?;
        if linalg::is_zero(x) {
            return Err(Error::ZeroVector);
        }
        let n = self.norm(x)?;
        Ok(self
            .facets
            .iter()
            .filter(|f| linalg::dot(&f.functional, x) == n)
            .map(|f| f.functional.clone())
            .collect())
    }

    pub fn support_set(&self, x: &[Rat]) -> Result<SupportSet> {
        Ok(SupportSet::Hull { point: x.to_vec(), functionals: self.support_hull(x)? })
    }

    pub fn is_smooth_point(&self, x: &[Rat]) -> Result<bool> {
        Ok(self.support_hull(x)?.len() == 1)
    }

    /// {x} is a face of the unit ball. In a polyhedral space of dimension at
    /// least 2 every unit vector lies in a facet of dimension >= 1, so no
    /// point is rotund; in dimension 1 the two endpoints are.
    pub fn is_rotund_point(&self, x: &[Rat]) -> Result<bool> {
        self.check_dim(x)?;
        if self.norm(x)? != Rat::from_integer(1.into()) {
            return Err(Error::NotUnitNorm);
        }
        Ok(self.dim() == 1)
    }
}

/// ell_p space with 1 < p < infinity (f64 path).
#[derive(Debug, Clone, Copy)]
pub struct LpSpace {
    pub n: usize,
    pub p: f64,
}

impl LpSpace {
    pub fn new(n: usize, p: f64) -> Result<Self> {
        if !(p.is_finite() && p > 1.0) {
            return Err(Error::BadExponent { p });
        }
        if n == 0 {
            return Err(Error::InvalidInput("dimension 0".into()));
        }
        Ok(LpSpace { n, p })
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: x.len() });
        }
        Ok(())
    }

    pub fn norm(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x)?;
        Ok(x.iter().map(|v| v.abs().powf(self.p)).sum::<f64>().powf(1.0 / self.p))
    }

    /// The unique supporting functional: f_i = sign(x_i) |x_i|^{p-1} / ||x||^{p-1}.
    pub fn support_functional(&self, x: &[f64]) -> Result<Vec<f64>> {
        let norm = self.norm(x)?;
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        let scale = norm.powf(self.p - 1.0);
        Ok(x
            .iter()
            .map(|v| v.signum() * v.abs().powf(self.p - 1.0) / scale)
            .map(|v| if v == 0.0 { 0.0 } else { v })
            .collect())
    }

    pub fn support_set(&self, x: &[f64]) -> Result<SupportSet> {
        Ok(SupportSet::Singleton { point: x.to_vec(), functional: self.support_functional(x)? })
    }

    /// ell_p is smooth for 1 < p < infinity.
    pub fn is_smooth_point(&self, x: &[f64]) -> Result<bool> {
        self.check_dim(x)?;
        if self.norm(x)? == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(true)
    }

    /// ell_p is strictly convex, so every unit vector is rotund.
    pub fn is_rotund_point(&self, x: &[f64]) -> Result<bool> {
        let n = self.norm(x)?;
        if (n - 1.0).abs() > FLOAT_TOL {
            return Err(Error::NotUnitNorm);
        }
        Ok(true)
    }
}

/// Converts a rational vector to f64 coordinates.
pub fn to_f64_vec(x: &[Rat]) -> Vec<f64> {
    x.iter().map(rat_to_f64).collect()
}
