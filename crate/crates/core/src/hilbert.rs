//! Finite-dimensional Hilbert space primitives: normalized state vectors,
//! density operators, observables in spectral form, and the exact unitary
//! evolution an observable generates.
//!
//! Observables are always supplied as eigenvalues plus an orthonormal
//! eigenbasis, never as raw matrices, so no general eigensolver is needed:
//! every quantity downstream is a sum over the eigenbasis index.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::policy::POLICY;

/// Wrap an angle onto the principal branch (−π, π].
pub fn wrap_phase(theta: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut t = theta % two_pi;
    if t <= -PI {
        t += two_pi;
    } else if t > PI {
        t -= two_pi;
    }
    t
}

/// Complex argument on the branch (−π, π].
///
/// `Complex64::arg` returns values in [−π, π]; an exact −π (negative real
/// axis approached from below) is mapped to +π so the branch is half-open.
pub fn principal_arg(z: Complex64) -> f64 {
    let a = z.arg();
    if a <= -PI {
        PI
    } else {
        a
    }
}

/// A normalized pure state over a finite basis.
///
/// Construction normalizes the amplitudes, so Σ|aₖ|² = 1 holds afterwards
/// within the construction tolerance. Global phase is never canonicalized;
/// states are compared through overlaps and probabilities only.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() < 2 {
            return Err(Error::InvalidDimension(amplitudes.len()));
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if !norm_sq.is_finite() || norm_sq <= POLICY.magnitude_floor {
            return Err(Error::NotNormalizable(norm_sq));
        }
        let norm = norm_sq.sqrt();
        let amplitudes = amplitudes.into_iter().map(|a| a / norm).collect();
        Ok(Self { amplitudes })
    }

    /// State from real amplitudes.
    pub fn from_reals(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The basis state |k⟩ in dimension `dim`.
    pub fn basis_state(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::InvalidParameter(format!(
                "basis index {k} out of range for dimension {dim}"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim.max(2)];
        if dim < 2 {
            return Err(Error::InvalidDimension(dim));
        }
        amplitudes[k] = Complex64::new(1.0, 0.0);
        Self::new(amplitudes)
    }

    /// |+⟩ = (|0⟩ + |1⟩)/√2
    pub fn plus() -> Self {
        Self::new(vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]).unwrap()
    }

    /// |−⟩ = (|0⟩ − |1⟩)/√2
    pub fn minus() -> Self {
        Self::new(vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]).unwrap()
    }

    /// |+i⟩ = (|0⟩ + i|1⟩)/√2
    pub fn plus_i() -> Self {
        Self::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]).unwrap()
    }

    /// |−i⟩ = (|0⟩ − i|1⟩)/√2
    pub fn minus_i() -> Self {
        Self::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, -1.0)]).unwrap()
    }

    /// The uniform superposition (Σₖ |k⟩)/√dim.
    pub fn uniform(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension(dim));
        }
        Self::new(vec![Complex64::new(1.0, 0.0); dim])
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Multiply by a global phase e^{iθ}. All physical quantities downstream
    /// are invariant under this.
    pub fn with_global_phase(&self, theta: f64) -> Self {
        let phase = Complex64::from_polar(1.0, theta);
        Self {
            amplitudes: self.amplitudes.iter().map(|a| a * phase).collect(),
        }
    }
}

/// ⟨a|b⟩ with the left argument conjugated.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    Ok(a.amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// A density operator: Hermitian, unit trace, positive semidefinite.
///
/// Positivity is checked with a witness: ⟨v|ρ|v⟩ must stay above the PSD
/// floor over a fixed deterministic probe set (basis vectors, pairwise
/// superpositions, and 32 seeded pseudo-random vectors). That is sufficient
/// at desk scale and avoids a full eigendecomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    dim: usize,
    entries: Vec<Complex64>, // row-major
}

const PSD_PROBE_SEED: u64 = 0x7053_d51e_77ab_cafe;
const PSD_RANDOM_PROBES: usize = 32;

impl DensityOperator {
    /// Build and validate a density operator from a dense matrix in row-major
    /// nested form.
    pub fn from_matrix(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        if dim < 2 {
            return Err(Error::InvalidDimension(dim));
        }
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidDensity("matrix is not square".into()));
        }
        let entries: Vec<Complex64> = rows.into_iter().flatten().collect();
        let op = Self { dim, entries };
        op.validate()?;
        Ok(op)
    }

    /// |ψ⟩⟨ψ| for a pure state.
    pub fn pure(state: &StateVector) -> Self {
        let dim = state.dim();
        let a = state.amplitudes();
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(a[r] * a[c].conj());
            }
        }
        Self { dim, entries }
    }

    /// Convex mixture Σₖ wₖ |ψₖ⟩⟨ψₖ|. Weights must be nonnegative and sum
    /// to one within the construction tolerance.
    pub fn mixture(components: &[(f64, StateVector)]) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidDensity("empty mixture".into()));
        }
        let dim = components[0].1.dim();
        if components.iter().any(|(_, s)| s.dim() != dim) {
            return Err(Error::InvalidDensity(
                "mixture components have differing dimensions".into(),
            ));
        }
        if components.iter().any(|(w, _)| *w < 0.0 || !w.is_finite()) {
            return Err(Error::InvalidDensity("negative or non-finite weight".into()));
        }
        let total: f64 = components.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > POLICY.construction_tol {
            return Err(Error::InvalidDensity(format!(
                "weights sum to {total}, expected 1"
            )));
        }
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (w, state) in components {
            let a = state.amplitudes();
            for r in 0..dim {
                for c in 0..dim {
                    entries[r * dim + c] += w * a[r] * a[c].conj();
                }
            }
        }
        Ok(Self { dim, entries })
    }

    /// The maximally mixed state 1/dim.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension(dim));
        }
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for k in 0..dim {
            entries[k * dim + k] = Complex64::new(1.0 / dim as f64, 0.0);
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    /// ρ|v⟩ for a raw amplitude slice.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for r in 0..self.dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in 0..self.dim {
                acc += self.entries[r * self.dim + c] * v[c];
            }
            out[r] = acc;
        }
        out
    }

    /// ⟨f|ρ|f⟩ (real by Hermiticity).
    pub fn expectation(&self, f: &StateVector) -> Result<f64> {
        if f.dim() != self.dim {
            return Err(Error::DimensionMismatch(f.dim(), self.dim));
        }
        let rho_f = self.apply(f.amplitudes());
        let val: Complex64 = f
            .amplitudes()
            .iter()
            .zip(&rho_f)
            .map(|(a, b)| a.conj() * b)
            .sum();
        Ok(val.re)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|k| self.entry(k, k)).sum()
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim;
        let mut herm_violation: f64 = 0.0;
        for r in 0..d {
            for c in 0..d {
                let diff = self.entry(r, c) - self.entry(c, r).conj();
                herm_violation = herm_violation.max(diff.norm());
            }
        }
        if herm_violation > POLICY.construction_tol {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (violation {herm_violation:e})"
            )));
        }
        let tr = self.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > POLICY.construction_tol {
            return Err(Error::InvalidDensity(format!("trace {tr} is not 1")));
        }
        let witness = self.psd_witness_min();
        if witness < POLICY.psd_floor {
            return Err(Error::InvalidDensity(format!(
                "PSD witness found ⟨v|ρ|v⟩ = {witness:e}"
            )));
        }
        Ok(())
    }

    /// Minimum of ⟨v|ρ|v⟩ over the deterministic probe set.
    fn psd_witness_min(&self) -> f64 {
        let d = self.dim;
        let quad = |v: &[Complex64]| -> f64 {
            let rv = self.apply(v);
            v.iter()
                .zip(&rv)
                .map(|(a, b)| (a.conj() * b).re)
                .sum::<f64>()
        };
        let mut min = f64::INFINITY;
        let mut probe = vec![Complex64::new(0.0, 0.0); d];
        // basis vectors
        for k in 0..d {
            probe.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
            probe[k] = Complex64::new(1.0, 0.0);
            min = min.min(quad(&probe));
        }
        // pairwise superpositions (e_j ± e_k)/√2 and (e_j ± i e_k)/√2
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        for j in 0..d {
            for k in (j + 1)..d {
                for second in [
                    Complex64::new(inv_sqrt2, 0.0),
                    Complex64::new(-inv_sqrt2, 0.0),
                    Complex64::new(0.0, inv_sqrt2),
                    Complex64::new(0.0, -inv_sqrt2),
                ] {
                    probe.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
                    probe[j] = Complex64::new(inv_sqrt2, 0.0);
                    probe[k] = second;
                    min = min.min(quad(&probe));
                }
            }
        }
        // seeded pseudo-random directions
        let mut rng = ChaCha8Rng::seed_from_u64(PSD_PROBE_SEED);
        for _ in 0..PSD_RANDOM_PROBES {
            let mut norm_sq = 0.0;
            for z in probe.iter_mut() {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                *z = Complex64::new(re, im);
                norm_sq += z.norm_sqr();
            }
            let norm = norm_sq.sqrt();
            probe.iter_mut().for_each(|z| *z /= norm);
            min = min.min(quad(&probe));
        }
        min
    }
}

/// A Hermitian observable in spectral form: eigenvalues A_m with an
/// orthonormal eigenbasis {|m⟩}. Eigenvalues may repeat.
///
/// Construction only checks shapes; orthonormality and completeness are the
/// business of [`validate_observable`], which [`evolve`] consults.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralObservable {
    eigenvalues: Vec<f64>,
    eigenbasis: Vec<StateVector>,
}

impl SpectralObservable {
    pub fn new(eigenvalues: Vec<f64>, eigenbasis: Vec<StateVector>) -> Result<Self> {
        if eigenvalues.len() != eigenbasis.len() {
            return Err(Error::DimensionMismatch(
                eigenvalues.len(),
                eigenbasis.len(),
            ));
        }
        let dim = eigenbasis.len();
        if dim < 2 {
            return Err(Error::InvalidDimension(dim));
        }
        if eigenbasis.iter().any(|s| s.dim() != dim) {
            return Err(Error::DimensionMismatch(dim, eigenbasis[0].dim()));
        }
        if eigenvalues.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidParameter("non-finite eigenvalue".into()));
        }
        Ok(Self {
            eigenvalues,
            eigenbasis,
        })
    }

    /// σ_x with eigenstates |±⟩.
    pub fn pauli_x() -> Self {
        Self::new(vec![1.0, -1.0], vec![StateVector::plus(), StateVector::minus()]).unwrap()
    }

    /// σ_y with eigenstates |±i⟩.
    pub fn pauli_y() -> Self {
        Self::new(
            vec![1.0, -1.0],
            vec![StateVector::plus_i(), StateVector::minus_i()],
        )
        .unwrap()
    }

    /// σ_z with eigenstates |0⟩, |1⟩.
    pub fn pauli_z() -> Self {
        Self::new(
            vec![1.0, -1.0],
            vec![
                StateVector::basis_state(2, 0).unwrap(),
                StateVector::basis_state(2, 1).unwrap(),
            ],
        )
        .unwrap()
    }

    pub fn dim(&self) -> usize {
        self.eigenbasis.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenbasis(&self) -> &[StateVector] {
        &self.eigenbasis
    }

    pub fn max_abs_eigenvalue(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |acc, a| acc.max(a.abs()))
    }

    /// ⟨s|Â|s⟩ = Σ_m A_m |⟨m|s⟩|².
    pub fn expectation(&self, s: &StateVector) -> Result<f64> {
        if s.dim() != self.dim() {
            return Err(Error::DimensionMismatch(s.dim(), self.dim()));
        }
        let mut acc = 0.0;
        for (a, m) in self.eigenvalues.iter().zip(&self.eigenbasis) {
            acc += a * inner_product(m, s)?.norm_sqr();
        }
        Ok(acc)
    }
}

/// Result of checking an observable's spectral form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ObservableReport {
    /// max |⟨m|m'⟩ − δ_{mm'}|
    pub max_orthonormality_violation: f64,
    /// max elementwise |Σ_m |m⟩⟨m| − 1|
    pub max_completeness_violation: f64,
}

impl ObservableReport {
    pub fn passed(&self) -> bool {
        self.max_orthonormality_violation < POLICY.validation_tol
            && self.max_completeness_violation < POLICY.validation_tol
    }
}

/// Check orthonormality and completeness of the eigenbasis.
pub fn validate_observable(obs: &SpectralObservable) -> ObservableReport {
    let d = obs.dim();
    let mut ortho: f64 = 0.0;
    for (j, m) in obs.eigenbasis().iter().enumerate() {
        for (k, m2) in obs.eigenbasis().iter().enumerate() {
            let delta = if j == k { 1.0 } else { 0.0 };
            let overlap = inner_product(m, m2).expect("dims checked at construction");
            ortho = ortho.max((overlap - Complex64::new(delta, 0.0)).norm());
        }
    }
    let mut complete: f64 = 0.0;
    for r in 0..d {
        for c in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for m in obs.eigenbasis() {
                acc += m.amplitudes()[r] * m.amplitudes()[c].conj();
            }
            let delta = if r == c { 1.0 } else { 0.0 };
            complete = complete.max((acc - Complex64::new(delta, 0.0)).norm());
        }
    }
    ObservableReport {
        max_orthonormality_violation: ortho,
        max_completeness_violation: complete,
    }
}

/// The action parameter φ of a generated unitary exp(−iφÂ).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitaryParameter {
    phi: f64,
}

impl UnitaryParameter {
    pub fn new(phi: f64) -> Result<Self> {
        if !phi.is_finite() {
            return Err(Error::InvalidParameter(format!("non-finite phi {phi}")));
        }
        Ok(Self { phi })
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// Apply U_φ = exp(−iφÂ) = Σ_m e^{−iφA_m} |m⟩⟨m| to a state.
pub fn evolve(
    state: &StateVector,
    obs: &SpectralObservable,
    phi: UnitaryParameter,
) -> Result<StateVector> {
    if state.dim() != obs.dim() {
        return Err(Error::DimensionMismatch(state.dim(), obs.dim()));
    }
    let report = validate_observable(obs);
    if !report.passed() {
        return Err(Error::InvalidObservable {
            orthonormality: report.max_orthonormality_violation,
            completeness: report.max_completeness_violation,
        });
    }
    let dim = state.dim();
    let mut out = vec![Complex64::new(0.0, 0.0); dim];
    for (a, m) in obs.eigenvalues().iter().zip(obs.eigenbasis()) {
        let coeff = inner_product(m, state)?;
        let phased = coeff * Complex64::from_polar(1.0, -phi.phi() * a);
        for (o, amp) in out.iter_mut().zip(m.amplitudes()) {
            *o += phased * amp;
        }
    }
    StateVector::new(out)
}

/// An initial preparation: a pure state or a density operator.
#[derive(Clone, Copy, Debug)]
pub enum Initial<'a> {
    Pure(&'a StateVector),
    Mixed(&'a DensityOperator),
}

impl<'a> Initial<'a> {
    pub fn dim(&self) -> usize {
        match self {
            Initial::Pure(s) => s.dim(),
            Initial::Mixed(rho) => rho.dim(),
        }
    }
}

impl<'a> From<&'a StateVector> for Initial<'a> {
    fn from(s: &'a StateVector) -> Self {
        Initial::Pure(s)
    }
}

impl<'a> From<&'a DensityOperator> for Initial<'a> {
    fn from(rho: &'a DensityOperator) -> Self {
        Initial::Mixed(rho)
    }
}

/// |⟨f|i⟩|² for a pure preparation, ⟨f|ρ|f⟩ for a mixed one, clamped to [0, 1].
pub fn transition_probability<'a>(initial: impl Into<Initial<'a>>, f: &StateVector) -> Result<f64> {
    let p = match initial.into() {
        Initial::Pure(i) => inner_product(f, i)?.norm_sqr(),
        Initial::Mixed(rho) => rho.expectation(f)?,
    };
    Ok(p.clamp(0.0, 1.0))
}

/// A dense dim×dim complex operator, row-major. Used for the unitaries the
/// weak engine constructs.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    dim: usize,
    entries: Vec<Complex64>,
}

impl Operator {
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(entries.len(), dim * dim));
        }
        Ok(Self { dim, entries })
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for k in 0..dim {
            entries[k * dim + k] = Complex64::new(1.0, 0.0);
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for r in 0..self.dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in 0..self.dim {
                acc += self.entries[r * self.dim + c] * v[c];
            }
            out[r] = acc;
        }
        out
    }

    pub fn apply_state(&self, s: &StateVector) -> Result<StateVector> {
        if s.dim() != self.dim {
            return Err(Error::DimensionMismatch(s.dim(), self.dim));
        }
        StateVector::new(self.apply(s.amplitudes()))
    }

    pub fn adjoint(&self) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); self.dim * self.dim];
        for r in 0..self.dim {
            for c in 0..self.dim {
                entries[c * self.dim + r] = self.entries[r * self.dim + c].conj();
            }
        }
        Self {
            dim: self.dim,
            entries,
        }
    }

    pub fn matmul(&self, other: &Operator) -> Result<Operator> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let d = self.dim;
        let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
        for r in 0..d {
            for k in 0..d {
                let a = self.entries[r * d + k];
                for c in 0..d {
                    entries[r * d + c] += a * other.entries[k * d + c];
                }
            }
        }
        Ok(Operator { dim: d, entries })
    }

    /// max elementwise |U†U − 1|.
    pub fn unitarity_deviation(&self) -> f64 {
        let prod = self
            .adjoint()
            .matmul(self)
            .expect("same dimension by construction");
        let mut dev: f64 = 0.0;
        for r in 0..self.dim {
            for c in 0..self.dim {
                let delta = if r == c { 1.0 } else { 0.0 };
                dev = dev.max((prod.entry(r, c) - Complex64::new(delta, 0.0)).norm());
            }
        }
        dev
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn inner_product_identity_and_orthogonality() {
        let zero = StateVector::basis_state(2, 0).unwrap();
        let one = StateVector::basis_state(2, 1).unwrap();
        assert_eq!(inner_product(&zero, &zero).unwrap(), c(1.0, 0.0));
        assert_eq!(inner_product(&zero, &one).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn inner_product_plus_with_plus_i() {
        // ⟨+|+i⟩ = (1+i)/2
        let v = inner_product(&StateVector::plus(), &StateVector::plus_i()).unwrap();
        assert!((v - c(0.5, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn inner_product_dimension_mismatch() {
        let a = StateVector::plus();
        let b = StateVector::uniform(3).unwrap();
        assert!(matches!(
            inner_product(&a, &b),
            Err(Error::DimensionMismatch(2, 3))
        ));
    }

    #[test]
    fn state_normalizes_on_construction() {
        let s = StateVector::new(vec![c(3.0, 0.0), c(4.0, 0.0)]).unwrap();
        let norm_sq: f64 = s.amplitudes().iter().map(|a| a.norm_sqr()).sum();
        assert!((norm_sq - 1.0).abs() < 1e-12);
        assert!((s.amplitudes()[0].re - 0.6).abs() < 1e-15);
    }

    #[test]
    fn state_rejects_zero_vector_and_dim_one() {
        assert!(StateVector::new(vec![c(0.0, 0.0), c(0.0, 0.0)]).is_err());
        assert!(StateVector::new(vec![c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn validate_pauli_z_passes() {
        let report = validate_observable(&SpectralObservable::pauli_z());
        assert!(report.passed());
        assert!(report.max_orthonormality_violation < 1e-15);
    }

    #[test]
    fn validate_duplicated_vector_fails() {
        let zero = StateVector::basis_state(2, 0).unwrap();
        let obs = SpectralObservable::new(vec![1.0, -1.0], vec![zero.clone(), zero]).unwrap();
        let report = validate_observable(&obs);
        assert!(!report.passed());
        assert!((report.max_orthonormality_violation - 1.0).abs() < 1e-15);
    }

    #[test]
    fn evolve_at_zero_is_identity() {
        let s = StateVector::plus_i();
        let out = evolve(&s, &SpectralObservable::pauli_z(), UnitaryParameter::new(0.0).unwrap())
            .unwrap();
        for (a, b) in s.amplitudes().iter().zip(out.amplitudes()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn evolve_quarter_turn_closed_form() {
        // |⟨+| e^{−iφZ} |+i⟩|² = (1 − sin 2φ)/2, zero at φ = π/4
        let phi = UnitaryParameter::new(PI / 4.0).unwrap();
        let evolved = evolve(&StateVector::plus_i(), &SpectralObservable::pauli_z(), phi).unwrap();
        let p = transition_probability(&evolved, &StateVector::plus()).unwrap();
        assert!(p < 1e-15, "expected 0, got {p}");
    }

    #[test]
    fn evolve_rejects_invalid_observable() {
        let zero = StateVector::basis_state(2, 0).unwrap();
        let obs = SpectralObservable::new(vec![1.0, -1.0], vec![zero.clone(), zero]).unwrap();
        let res = evolve(
            &StateVector::plus(),
            &obs,
            UnitaryParameter::new(0.3).unwrap(),
        );
        assert!(matches!(res, Err(Error::InvalidObservable { .. })));
    }

    #[test]
    fn transition_probability_examples() {
        let zero = StateVector::basis_state(2, 0).unwrap();
        assert!((transition_probability(&zero, &zero).unwrap() - 1.0).abs() < 1e-15);
        // (|+i⟩, |+⟩) → |(1+i)/2|² = 1/2
        let p = transition_probability(&StateVector::plus_i(), &StateVector::plus()).unwrap();
        assert!((p - 0.5).abs() < 1e-15);
        // maximally mixed qubit against any state → 1/2
        let rho = DensityOperator::maximally_mixed(2).unwrap();
        let p = transition_probability(&rho, &zero).unwrap();
        assert!((p - 0.5).abs() < 1e-15);
    }

    #[test]
    fn density_rejects_non_hermitian_and_bad_trace() {
        let bad = DensityOperator::from_matrix(vec![
            vec![c(0.5, 0.0), c(0.1, 0.2)],
            vec![c(0.3, 0.0), c(0.5, 0.0)],
        ]);
        assert!(matches!(bad, Err(Error::InvalidDensity(_))));
        let bad_trace = DensityOperator::from_matrix(vec![
            vec![c(0.7, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.7, 0.0)],
        ]);
        assert!(matches!(bad_trace, Err(Error::InvalidDensity(_))));
    }

    #[test]
    fn density_psd_witness_catches_negative_direction() {
        // Hermitian, unit trace, but with eigenvalues 1.5 and −0.5.
        let bad = DensityOperator::from_matrix(vec![
            vec![c(0.5, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.5, 0.0)],
        ]);
        assert!(matches!(bad, Err(Error::InvalidDensity(_))));
    }

    #[test]
    fn density_accepts_pure_and_mixture() {
        let rho = DensityOperator::from_matrix(vec![
            vec![c(0.75, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.25, 0.0)],
        ])
        .unwrap();
        assert!((rho.expectation(&StateVector::plus()).unwrap() - 0.5).abs() < 1e-15);

        let mix = DensityOperator::mixture(&[
            (0.75, StateVector::basis_state(2, 0).unwrap()),
            (0.25, StateVector::basis_state(2, 1).unwrap()),
        ])
        .unwrap();
        assert_eq!(mix, rho);
    }

    #[test]
    fn wrap_phase_branch() {
        assert_eq!(wrap_phase(PI), PI);
        assert!((wrap_phase(-PI) - PI).abs() < 1e-15);
        assert!((wrap_phase(3.0 * PI) - PI).abs() < 1e-12);
        assert!((wrap_phase(-2.5 * PI) + 0.5 * PI).abs() < 1e-12);
        assert_eq!(wrap_phase(0.25), 0.25);
    }

    #[test]
    fn principal_arg_maps_negative_real_axis_to_pi() {
        assert_eq!(principal_arg(c(-1.0, 0.0)), PI);
        assert_eq!(principal_arg(c(-1.0, -0.0)), PI);
        assert!(principal_arg(c(1.0, -1e-18)) <= 0.0);
    }

    #[test]
    fn operator_identity_and_unitarity() {
        let id = Operator::identity(3);
        assert!(id.unitarity_deviation() < 1e-15);
        let s = StateVector::uniform(3).unwrap();
        let out = id.apply_state(&s).unwrap();
        assert_eq!(out.amplitudes(), s.amplitudes());
    }
}
