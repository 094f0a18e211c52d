//! The numeric policy: every tolerance used by construction and validation
//! checks lives in this one record.

/// Tolerances shared by all modules.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericPolicy {
    /// Invariants enforced when a value is built (normalization, Hermiticity,
    /// unit trace).
    pub construction_tol: f64,
    /// Validation checks (orthonormality, completeness, unitarity).
    pub validation_tol: f64,
    /// Smallest post-selection probability accepted; below it weak
    /// conditional quantities diverge and are refused.
    pub overlap_floor: f64,
    /// Magnitude below which a complex quasi-probability counts as zero and
    /// its phase is masked as undefined.
    pub magnitude_floor: f64,
    /// Witness threshold for the positive-semidefiniteness probe of density
    /// operators.
    pub psd_floor: f64,
}

/// The tolerances in effect throughout the crate.
pub const POLICY: NumericPolicy = NumericPolicy {
    construction_tol: 1e-12,
    validation_tol: 1e-10,
    overlap_floor: 1e-12,
    magnitude_floor: 1e-14,
    psd_floor: -1e-10,
};

impl NumericPolicy {
    /// Render the record as a single `key=value` line for report metadata.
    pub fn summary(&self) -> String {
        format!(
            "construction_tol={:e} validation_tol={:e} overlap_floor={:e} magnitude_floor={:e} psd_floor={:e}",
            self.construction_tol,
            self.validation_tol,
            self.overlap_floor,
            self.magnitude_floor,
            self.psd_floor,
        )
    }
}
