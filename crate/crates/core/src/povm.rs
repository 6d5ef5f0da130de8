//! POVMs and qubit measurement geometry.
//!
//! A rank-1 qubit POVM element `γ P` is stored as its weight `γ` and the angles
//! `(θ, φ)` of the projector
//!
//! ```text
//! P = [ cos²θ            e^{-iφ} sinθ cosθ ]
//!     [ e^{iφ} sinθ cosθ  sin²θ            ]     0 ≤ θ ≤ π/2,  0 ≤ φ ≤ 2π
//! ```
//!
//! whose Bloch vector is `(sin2θ cosφ, sin2θ sinφ, cos2θ)`.
//!
//! Angles are canonicalized in one place ([`Rank1Element::new`]):
//! - the north pole (`θ = 0`) gets `φ = 0`,
//! - the south pole (`θ = π/2`) gets `φ = π`,
//! - `φ` within the angle tolerance of `0` or `2π` becomes `0`, within it of `π` becomes `π`.
//!
//! Hemispheres follow from `φ`: east for `0 ≤ φ < π`, west for `π < φ ≤ 2π`. The north
//! pole and the `φ = 0` meridian belong to both; `φ = π`, south pole included, to neither.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI, TAU};

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, PovmViolation, Result};
use crate::linalg::{c, eig_hermitian, ComplexMatrix, StateVector, C64, MAX_EIG_DIM};
use crate::tolerance::Tolerances;

/// Measurement given by positive matrices summing to the identity. Outcome `i`
/// is the `i`-th element.
#[derive(Clone, Debug, PartialEq)]
pub struct Povm {
    dim: usize,
    elements: Vec<ComplexMatrix>,
}

impl Povm {
    /// Checks shapes only; see [`Povm::validate`] for positivity and completeness.
    pub fn new(elements: Vec<ComplexMatrix>) -> Result<Self> {
        let Some(first) = elements.first() else {
            return Err(Error::InvalidPovm(PovmViolation::Empty));
        };
        let dim = first.rows();
        if dim > MAX_EIG_DIM {
            return Err(Error::DimensionTooLarge {
                dim,
                max: MAX_EIG_DIM,
            });
        }
        for m in &elements {
            if !m.is_square() {
                return Err(Error::NotSquare {
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
            if m.rows() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: m.rows(),
                });
            }
        }
        Ok(Self { dim, elements })
    }

    /// [`Povm::new`] followed by [`Povm::validate`].
    pub fn checked(elements: Vec<ComplexMatrix>) -> Result<Self> {
        let p = Self::new(elements)?;
        p.validate().map_err(Error::InvalidPovm)?;
        Ok(p)
    }

    /// Projective measurement onto the columns of a unitary.
    pub fn from_basis(u: &ComplexMatrix) -> Result<Self> {
        let elements = (0..u.cols())
            .map(|k| {
                let v = u.column(k);
                ComplexMatrix::outer(&v, &v)
            })
            .collect();
        Self::new(elements)
    }

    pub fn computational_basis(dim: usize) -> Self {
        Self::from_basis(&ComplexMatrix::identity(dim)).expect("identity is square")
    }

    /// One outcome per rank-1 element.
    pub fn from_rank1(elements: &[Rank1Element]) -> Result<Self> {
        Self::new(elements.iter().map(Rank1Element::matrix).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> Option<&ComplexMatrix> {
        self.elements.get(i)
    }

    /// Every element conjugated, `M ↦ U† M U`. With a tall isometry `U` this
    /// compresses the POVM onto the range of `U`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        Self::new(self.elements.iter().map(|m| m.conjugate_by(u)).collect())
    }

    /// Outcome probabilities `⟨ψ|M_i|ψ⟩` on a local pure state.
    pub fn probabilities(&self, psi: &StateVector) -> Vec<f64> {
        self.elements.iter().map(|m| psi.expectation(m)).collect()
    }

    pub fn validate(&self) -> core::result::Result<(), PovmViolation> {
        validate_povm(self)
    }
}

/// Positivity then completeness; reports the first violated condition.
pub fn validate_povm(p: &Povm) -> core::result::Result<(), PovmViolation> {
    let tol = Tolerances::DEFAULT;
    if p.elements.is_empty() {
        return Err(PovmViolation::Empty);
    }
    let mut sum = ComplexMatrix::zeros(p.dim, p.dim);
    for (index, m) in p.elements.iter().enumerate() {
        let asymmetry = m.hermitian_asymmetry();
        if asymmetry > tol.hermitian {
            return Err(PovmViolation::NotHermitian { index, asymmetry });
        }
        let min_eigenvalue = eig_hermitian(m)
            .map(|e| *e.values.last().unwrap())
            .unwrap_or(f64::NEG_INFINITY);
        if min_eigenvalue < -tol.povm {
            return Err(PovmViolation::NotPositive {
                index,
                min_eigenvalue,
            });
        }
        sum = &sum + m;
    }
    let deviation = sum.max_abs_diff(&ComplexMatrix::identity(p.dim));
    if deviation > tol.povm {
        return Err(PovmViolation::Incomplete { deviation });
    }
    Ok(())
}

/// Outcome `(outcome, term)` of a refined POVM: the `term`-th spectral piece of
/// original element `outcome`. Reporting a refined outcome means reporting `outcome`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RefinedLabel {
    pub outcome: usize,
    pub term: usize,
}

impl RefinedLabel {
    pub fn new(outcome: usize, term: usize) -> Self {
        Self { outcome, term }
    }
}

/// Weighted qubit projector `γ P(θ, φ)` with canonical angles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rank1Element {
    pub gamma: f64,
    pub theta: f64,
    pub phi: f64,
    pub label: RefinedLabel,
}

impl Rank1Element {
    /// Validates ranges and canonicalizes the angles.
    pub fn new(gamma: f64, theta: f64, phi: f64, label: RefinedLabel) -> Result<Self> {
        let tol = Tolerances::DEFAULT;
        if !(gamma > 0.0 && gamma <= 1.0 + tol.normalization) {
            return Err(Error::InvalidWeight(gamma));
        }
        let angle_ok = theta.is_finite()
            && phi.is_finite()
            && theta >= -tol.angle
            && theta <= FRAC_PI_2 + tol.angle
            && phi >= -tol.angle
            && phi <= TAU + tol.angle;
        if !angle_ok {
            return Err(Error::InvalidAngles { theta, phi });
        }
        let (theta, phi) = canonical_angles(theta, phi);
        Ok(Self {
            gamma,
            theta,
            phi,
            label,
        })
    }

    /// `γ |v⟩⟨v|` for a unit vector `v`.
    pub fn from_vector(gamma: f64, v: [C64; 2], label: RefinedLabel) -> Result<Self> {
        let p = ComplexMatrix::outer(&v, &v);
        let (theta, phi) = projector_to_angles(&p)?;
        Self::new(gamma, theta, phi, label)
    }

    pub fn projector(&self) -> ComplexMatrix {
        projector_from_angles(self.theta, self.phi)
    }

    /// `γ P`.
    pub fn matrix(&self) -> ComplexMatrix {
        self.projector().scale_real(self.gamma)
    }

    pub fn bloch(&self) -> BlochPoint {
        angles_to_bloch(self.theta, self.phi)
    }

    pub fn hemisphere(&self) -> Hemisphere {
        hemisphere_of(self)
    }
}

/// Reduce into `[0, 2π)`.
fn wrap_angle(x: f64) -> f64 {
    let r = x % TAU;
    if r < 0.0 {
        r + TAU
    } else {
        r
    }
}

fn canonical_angles(theta: f64, phi: f64) -> (f64, f64) {
    let tol = Tolerances::DEFAULT.angle;
    let theta = theta.clamp(0.0, FRAC_PI_2);
    if theta <= tol {
        return (0.0, 0.0);
    }
    if theta >= FRAC_PI_2 - tol {
        return (FRAC_PI_2, PI);
    }
    let mut phi = wrap_angle(phi);
    if phi <= tol || phi >= TAU - tol {
        phi = 0.0;
    } else if (phi - PI).abs() <= tol {
        phi = PI;
    }
    (theta, phi)
}

/// Rank-1 projector for the given angles.
pub fn projector_from_angles(theta: f64, phi: f64) -> ComplexMatrix {
    let (s, co) = theta.sin_cos();
    let off = s * co;
    let (sp, cp) = phi.sin_cos();
    ComplexMatrix::new(
        2,
        2,
        alloc::vec![
            c(co * co, 0.0),
            c(off * cp, -off * sp),
            c(off * cp, off * sp),
            c(s * s, 0.0),
        ],
    )
    .expect("2x2")
}

/// Canonical `(θ, φ)` of a 2×2 rank-1 projector.
pub fn projector_to_angles(p: &ComplexMatrix) -> Result<(f64, f64)> {
    let tol = Tolerances::DEFAULT.projector;
    if p.rows() != 2 || p.cols() != 2 {
        return Err(Error::NotProjector("not 2x2"));
    }
    if p.hermitian_asymmetry() > tol {
        return Err(Error::NotProjector("not Hermitian"));
    }
    if (p.trace() - c(1.0, 0.0)).norm() > tol {
        return Err(Error::NotProjector("trace is not 1"));
    }
    if (p * p).max_abs_diff(p) > tol {
        return Err(Error::NotProjector("not idempotent"));
    }
    let p00 = p[(0, 0)].re;
    let p11 = p[(1, 1)].re;
    let off = p[(1, 0)];
    let theta = 0.5 * (2.0 * off.norm()).atan2(p00 - p11);
    let phi = wrap_angle(off.im.atan2(off.re));
    Ok(canonical_angles(theta, phi))
}

/// Point on the Bloch sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochPoint {
    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

pub fn angles_to_bloch(theta: f64, phi: f64) -> BlochPoint {
    let (s2, c2) = (2.0 * theta).sin_cos();
    let (sp, cp) = phi.sin_cos();
    BlochPoint {
        x: s2 * cp,
        y: s2 * sp,
        z: c2,
    }
}

/// `Σ γ_i v_i = 0` and `Σ γ_i = 2`, both within `1e-9`. For rank-1 qubit
/// elements this is equivalent to `Σ γ_i P_i = 1`.
pub fn check_vector_condition(elems: &[Rank1Element]) -> bool {
    let tol = Tolerances::DEFAULT.vector_condition;
    let (mut sx, mut sy, mut sz, mut sg) = (0.0, 0.0, 0.0, 0.0);
    for e in elems {
        let v = e.bloch();
        sx += e.gamma * v.x;
        sy += e.gamma * v.y;
        sz += e.gamma * v.z;
        sg += e.gamma;
    }
    (sx * sx + sy * sy + sz * sz).sqrt() <= tol && (sg - 2.0).abs() <= tol
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Hemisphere {
    East,
    West,
    Both,
    Neither,
}

impl Hemisphere {
    pub fn is_east(self) -> bool {
        matches!(self, Hemisphere::East | Hemisphere::Both)
    }

    pub fn is_west(self) -> bool {
        matches!(self, Hemisphere::West | Hemisphere::Both)
    }

    pub fn name(self) -> &'static str {
        match self {
            Hemisphere::East => "east",
            Hemisphere::West => "west",
            Hemisphere::Both => "both",
            Hemisphere::Neither => "neither",
        }
    }
}

/// Classification ignores the weight `γ`.
pub fn hemisphere_of(e: &Rank1Element) -> Hemisphere {
    let tol = Tolerances::DEFAULT.angle;
    if e.theta <= tol || e.phi <= tol || e.phi >= TAU - tol {
        Hemisphere::Both
    } else if (e.phi - PI).abs() <= tol {
        Hemisphere::Neither
    } else if e.phi < PI {
        Hemisphere::East
    } else {
        Hemisphere::West
    }
}

/// Smallest index of an element in the east hemisphere (`Both` included).
pub fn pick_east(elems: &[Rank1Element]) -> Result<usize> {
    elems
        .iter()
        .position(|e| hemisphere_of(e).is_east())
        .ok_or(Error::HemisphereContradiction("east"))
}

/// Smallest index of an element in the west hemisphere (`Both` included).
pub fn pick_west(elems: &[Rank1Element]) -> Result<usize> {
    elems
        .iter()
        .position(|e| hemisphere_of(e).is_west())
        .ok_or(Error::HemisphereContradiction("west"))
}

/// Rank-1 rewriting of a qubit POVM.
#[derive(Clone, Debug, PartialEq)]
pub struct Refinement {
    pub elements: Vec<Rank1Element>,
    /// Outcome count of the original POVM.
    pub original_outcomes: usize,
}

impl Refinement {
    pub fn original_outcome(&self, k: usize) -> usize {
        self.elements[k].label.outcome
    }

    /// Sum refined probabilities back onto original outcomes.
    pub fn marginalize(&self, refined: &[f64]) -> Vec<f64> {
        let mut out = alloc::vec![0.0; self.original_outcomes];
        for (e, p) in self.elements.iter().zip(refined) {
            out[e.label.outcome] += p;
        }
        out
    }

    pub fn to_povm(&self) -> Povm {
        Povm::from_rank1(&self.elements).expect("refined elements are 2x2")
    }
}

/// Spectral refinement of a qubit POVM into weighted rank-1 projectors.
///
/// Eigen-terms with weight at or below `1e-12` are dropped and completeness is
/// re-checked on the result.
pub fn refine_to_rank1(p: &Povm) -> Result<Refinement> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.dim(),
        });
    }
    p.validate().map_err(Error::InvalidPovm)?;
    let tol = Tolerances::DEFAULT;
    let mut elements = Vec::new();
    for (i, m) in p.elements().iter().enumerate() {
        let eig = eig_hermitian(m)?;
        let mut term = 0;
        for (k, &lambda) in eig.values.iter().enumerate() {
            if lambda <= tol.rank {
                continue;
            }
            let v = eig.vectors.column(k);
            let e = Rank1Element::from_vector(
                lambda.min(1.0),
                [v[0], v[1]],
                RefinedLabel::new(i, term),
            )?;
            elements.push(e);
            term += 1;
        }
    }
    let refined = Refinement {
        elements,
        original_outcomes: p.len(),
    };
    refined.to_povm().validate().map_err(Error::InvalidPovm)?;
    Ok(refined)
}

/// Symmetric trine: weights `2/3` on three real states 120° apart on the Bloch sphere.
pub fn trine() -> Povm {
    let elements = (0..3)
        .map(|k| {
            let a = k as f64 * PI / 3.0;
            let v = [c(a.cos(), 0.0), c(a.sin(), 0.0)];
            ComplexMatrix::outer(&v, &v).scale_real(2.0 / 3.0)
        })
        .collect();
    Povm::new(elements).expect("2x2")
}
