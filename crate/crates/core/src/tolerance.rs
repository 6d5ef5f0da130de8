//! Numerical tolerances shared by every module.

/// Every threshold used by the crate, in one place.
///
/// Library functions read [`Tolerances::DEFAULT`]; callers that expose a knob
/// (winning verification, support extraction) take the relevant field explicitly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Entrywise Hermitian symmetry.
    pub hermitian: f64,
    /// State normalization and Schmidt coefficient sums.
    pub normalization: f64,
    /// Eigen/Schmidt reconstruction residuals and orthonormality.
    pub reconstruction: f64,
    /// Eigenvalues / Schmidt coefficients / refined weights at or below this are zero.
    pub rank: f64,
    /// POVM positivity (min eigenvalue) and completeness (entrywise).
    pub povm: f64,
    /// Trace and idempotency checks on rank-1 projectors.
    pub projector: f64,
    /// Vector-sum POVM condition on Bloch vectors.
    pub vector_condition: f64,
    /// Angle equality tests (poles, hemisphere boundaries), radians.
    pub angle: f64,
    /// Smallest Schmidt coefficient still treated as entangled.
    pub product_state: f64,
    /// Probability above which an outcome is "possible".
    pub support: f64,
    /// Probability mass on losing tuples tolerated by winning verification.
    pub win: f64,
    /// Tolerance on the (a, b, c) amplitudes of the vanishing characterization.
    pub vanishing: f64,
    /// Upper edge of the band of probabilities considered ambiguous by generators.
    pub ambiguous_upper: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        hermitian: 1e-12,
        normalization: 1e-10,
        reconstruction: 1e-10,
        rank: 1e-12,
        povm: 1e-10,
        projector: 1e-10,
        vector_condition: 1e-9,
        angle: 1e-9,
        product_state: 1e-9,
        support: 1e-12,
        win: 1e-9,
        vanishing: 1e-9,
        ambiguous_upper: 1e-8,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
