//! Weak values, complex weak conditional probabilities, and the response of
//! transition probabilities to unitaries generated by the measured
//! observable.
//!
//! The central object is the distribution of complex weights
//! p(m|if) = ⟨f|m⟩⟨m|i⟩ / ⟨f|i⟩ over the eigenbasis of an observable. Its
//! real parts carry the conditional averages seen in weak measurements, its
//! imaginary parts the linear response to small unitary kicks, and its phases
//! the action profile of the diagonal unitary that maximizes the overlap of
//! initial and final state. For a mixed preparation ρ the same formulas apply
//! with |i⟩ replaced by ρ|f⟩, at which point the exact response only obeys an
//! inequality instead of an equality.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{
    evolve, inner_product, principal_arg, transition_probability, DensityOperator, Initial,
    Operator, SpectralObservable, StateVector, UnitaryParameter,
};
use crate::policy::POLICY;

/// Which kind of preparation a distribution was computed from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Pure,
    Mixed,
}

/// Complex weak conditional probabilities p(m|if), one per eigenvector of the
/// basis they were computed against, plus the base probability p(f;0).
///
/// The values always sum to 1 (completeness of the eigenbasis); individual
/// values may have negative real parts or be complex, which is the point.
#[derive(Clone, Debug, PartialEq)]
pub struct WeakConditionalDistribution {
    values: Vec<Complex64>,
    base_probability: f64,
    source: Source,
}

impl WeakConditionalDistribution {
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn base_probability(&self) -> f64 {
        self.base_probability
    }

    pub fn source(&self) -> Source {
        self.source
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn check_basis(&self, basis: &SpectralObservable) -> Result<()> {
        if self.len() != basis.dim() {
            return Err(Error::BasisMismatch(self.len(), basis.dim()));
        }
        Ok(())
    }
}

/// Per-outcome action S_m = Arg p(m|if) on the branch (−π, π].
///
/// Outcomes whose weight is below the magnitude floor carry S_m = 0 with the
/// mask cleared, so the optimal unitary acts as identity on zero-weight rays.
#[derive(Clone, Debug, PartialEq)]
pub struct ActionProfile {
    actions: Vec<f64>,
    defined: Vec<bool>,
}

impl ActionProfile {
    pub fn actions(&self) -> &[f64] {
        &self.actions
    }

    pub fn defined_mask(&self) -> &[bool] {
        &self.defined
    }
}

/// Predicted vs directly computed response over a grid of unitary parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct ResponseCurve {
    pub phis: Vec<f64>,
    pub predicted: Vec<f64>,
    pub direct: Vec<f64>,
}

/// A response curve together with the per-φ outcome of the mixed-state bound
/// direct ≥ predicted.
#[derive(Clone, Debug, PartialEq)]
pub struct ResponseBoundReport {
    pub curve: ResponseCurve,
    pub satisfied: Vec<bool>,
}

/// Finite-difference vs weak-value form of the logarithmic response.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ImaginaryResponse {
    /// Central difference of ½ ln p(f;φ) at φ = 0.
    pub finite_diff: f64,
    /// Σ_m A_m Im p(m|if).
    pub weak_imag: f64,
}

/// Second derivative of the response at φ = 0 against its lower bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvatureBound {
    pub second_deriv: f64,
    pub bound: f64,
    pub satisfied: bool,
}

fn postselection_probability<'a>(initial: Initial<'a>, f: &StateVector) -> Result<f64> {
    let p = transition_probability(initial, f)?;
    if p <= POLICY.overlap_floor {
        return Err(Error::OrthogonalPostselection(p));
    }
    Ok(p)
}

/// The weak value ⟨f|Â|i⟩ / ⟨f|i⟩.
pub fn weak_value(
    i: &StateVector,
    f: &StateVector,
    obs: &SpectralObservable,
) -> Result<Complex64> {
    if i.dim() != obs.dim() {
        return Err(Error::DimensionMismatch(i.dim(), obs.dim()));
    }
    postselection_probability(Initial::Pure(i), f)?;
    let fi = inner_product(f, i)?;
    let mut numerator = Complex64::new(0.0, 0.0);
    for (a, m) in obs.eigenvalues().iter().zip(obs.eigenbasis()) {
        numerator += a * inner_product(f, m)? * inner_product(m, i)?;
    }
    Ok(numerator / fi)
}

/// The distribution of weak conditional probabilities
/// p(m|if) = ⟨f|m⟩⟨m|i⟩ / ⟨f|i⟩ over the eigenbasis.
pub fn weak_conditional(
    i: &StateVector,
    f: &StateVector,
    basis: &SpectralObservable,
) -> Result<WeakConditionalDistribution> {
    if i.dim() != basis.dim() {
        return Err(Error::DimensionMismatch(i.dim(), basis.dim()));
    }
    let base = postselection_probability(Initial::Pure(i), f)?;
    let fi = inner_product(f, i)?;
    let values = basis
        .eigenbasis()
        .iter()
        .map(|m| Ok(inner_product(f, m)? * inner_product(m, i)? / fi))
        .collect::<Result<Vec<_>>>()?;
    Ok(WeakConditionalDistribution {
        values,
        base_probability: base,
        source: Source::Pure,
    })
}

/// Mixed-state weak conditional probabilities
/// p(m|if) = ⟨f|m⟩⟨m|ρ|f⟩ / ⟨f|ρ|f⟩, i.e. the pure-state formula with |i⟩
/// replaced by ρ|f⟩.
pub fn weak_conditional_mixed(
    rho: &DensityOperator,
    f: &StateVector,
    basis: &SpectralObservable,
) -> Result<WeakConditionalDistribution> {
    if rho.dim() != basis.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), basis.dim()));
    }
    let base = postselection_probability(Initial::Mixed(rho), f)?;
    let rho_f = rho.apply(f.amplitudes());
    let denom = Complex64::new(rho.expectation(f)?, 0.0);
    let values = basis
        .eigenbasis()
        .iter()
        .map(|m| {
            let fm = inner_product(f, m)?;
            let m_rho_f: Complex64 = m
                .amplitudes()
                .iter()
                .zip(&rho_f)
                .map(|(a, b)| a.conj() * b)
                .sum();
            Ok(fm * m_rho_f / denom)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WeakConditionalDistribution {
        values,
        base_probability: base,
        source: Source::Mixed,
    })
}

/// The action profile S_m = Arg p(m|if), masked where |p(m|if)| vanishes.
pub fn action_profile(dist: &WeakConditionalDistribution) -> ActionProfile {
    let mut actions = Vec::with_capacity(dist.len());
    let mut defined = Vec::with_capacity(dist.len());
    for v in dist.values() {
        if v.norm() > POLICY.magnitude_floor {
            actions.push(principal_arg(*v));
            defined.push(true);
        } else {
            actions.push(0.0);
            defined.push(false);
        }
    }
    ActionProfile { actions, defined }
}

/// The diagonal unitary U_max = Σ_m e^{−iS_m} |m⟩⟨m| that cancels the phases
/// of the weak conditional probabilities and so maximizes the overlap of
/// initial and final state among unitaries conserving the projectors |m⟩⟨m|.
pub fn optimal_unitary(
    dist: &WeakConditionalDistribution,
    basis: &SpectralObservable,
) -> Result<Operator> {
    dist.check_basis(basis)?;
    let profile = action_profile(dist);
    let d = basis.dim();
    let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
    for (s, m) in profile.actions().iter().zip(basis.eigenbasis()) {
        let phase = Complex64::from_polar(1.0, -s);
        let a = m.amplitudes();
        for r in 0..d {
            for c in 0..d {
                entries[r * d + c] += phase * a[r] * a[c].conj();
            }
        }
    }
    Operator::from_entries(d, entries)
}

/// The maximal overlap probability p(f;max) = (Σ_m |p(m|if)|)² p(f;0)
/// reached when the applied action cancels every phase.
pub fn max_overlap_probability(dist: &WeakConditionalDistribution) -> f64 {
    let total: f64 = dist.values().iter().map(|v| v.norm()).sum();
    total * total * dist.base_probability()
}

/// Predict the full response p(f;φ) = |Σ_m e^{−iφA_m} p(m|if)|² p(f;0) from
/// the weak data alone.
pub fn predict_response(
    dist: &WeakConditionalDistribution,
    basis: &SpectralObservable,
    phi: f64,
) -> Result<f64> {
    dist.check_basis(basis)?;
    if !phi.is_finite() {
        return Err(Error::InvalidParameter(format!("non-finite phi {phi}")));
    }
    if phi == 0.0 {
        // e^{0} = 1 and the values sum to one by completeness, so the base
        // probability is returned as-is rather than through the rounded sum.
        return Ok(dist.base_probability());
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (a, v) in basis.eigenvalues().iter().zip(dist.values()) {
        acc += Complex64::from_polar(1.0, -phi * a) * v;
    }
    Ok((acc.norm_sqr() * dist.base_probability()).clamp(0.0, 1.0))
}

/// The directly computed response: |⟨f|U_φ|i⟩|² for a pure preparation,
/// ⟨f|U_φ ρ U_φ†|f⟩ for a mixed one.
pub fn direct_response<'a>(
    initial: impl Into<Initial<'a>>,
    f: &StateVector,
    obs: &SpectralObservable,
    phi: f64,
) -> Result<f64> {
    let initial = initial.into();
    if initial.dim() != obs.dim() {
        return Err(Error::DimensionMismatch(initial.dim(), obs.dim()));
    }
    let phi = UnitaryParameter::new(phi)?;
    match initial {
        Initial::Pure(i) => {
            let evolved = evolve(i, obs, phi)?;
            transition_probability(&evolved, f)
        }
        Initial::Mixed(rho) => {
            // ⟨f|U ρ U†|f⟩ = ⟨v|ρ|v⟩ with |v⟩ = U†|f⟩ = U_{−φ}|f⟩.
            let back = evolve(f, obs, UnitaryParameter::new(-phi.phi())?)?;
            transition_probability(rho, &back)
        }
    }
}

/// Compare the two faces of the imaginary weak value: the central difference
/// of ½ ln p(f;φ) at φ = 0 against Σ_m A_m Im p(m|if).
pub fn imaginary_response_check(
    i: &StateVector,
    f: &StateVector,
    obs: &SpectralObservable,
    h: f64,
) -> Result<ImaginaryResponse> {
    if !(1e-6..=1e-2).contains(&h) {
        return Err(Error::InvalidParameter(format!(
            "step {h} outside [1e-6, 1e-2]"
        )));
    }
    let dist = weak_conditional(i, f, obs)?;
    let weak_imag: f64 = obs
        .eigenvalues()
        .iter()
        .zip(dist.values())
        .map(|(a, v)| a * v.im)
        .sum();
    let p_plus = direct_response(i, f, obs, h)?;
    let p_minus = direct_response(i, f, obs, -h)?;
    if p_plus <= 0.0 || p_minus <= 0.0 {
        return Err(Error::DegenerateProbability(
            "response vanished at a probe offset".into(),
        ));
    }
    let finite_diff = (p_plus.ln() - p_minus.ln()) / (4.0 * h);
    Ok(ImaginaryResponse {
        finite_diff,
        weak_imag,
    })
}

/// Curvature slack grows with the stencil step so truncation error never
/// masquerades as a bound violation.
fn curvature_slack(h: f64) -> f64 {
    (100.0 * h * h).max(1e-6)
}

/// Check the lower bound on the second derivative of the response at φ = 0:
/// ∂²p/∂φ² ≥ −2 (Σ A_m² Re p(m|if) − |Σ A_m p(m|if)|²) p(f;0).
///
/// The second derivative is taken with a 5-point central stencil.
pub fn curvature_bound_check<'a>(
    initial: impl Into<Initial<'a>>,
    f: &StateVector,
    obs: &SpectralObservable,
    h: f64,
) -> Result<CurvatureBound> {
    if !(1e-6..=1e-2).contains(&h) {
        return Err(Error::InvalidParameter(format!(
            "step {h} outside [1e-6, 1e-2]"
        )));
    }
    let initial = initial.into();
    let dist = match initial {
        Initial::Pure(i) => weak_conditional(i, f, obs)?,
        Initial::Mixed(rho) => weak_conditional_mixed(rho, f, obs)?,
    };
    let p0 = dist.base_probability();
    let mut second_moment = 0.0;
    let mut first_moment = Complex64::new(0.0, 0.0);
    for (a, v) in obs.eigenvalues().iter().zip(dist.values()) {
        second_moment += a * a * v.re;
        first_moment += a * v;
    }
    let bound = -2.0 * (second_moment - first_moment.norm_sqr()) * p0;

    let p = |phi: f64| direct_response(initial, f, obs, phi);
    let stencil = -p(2.0 * h)? + 16.0 * p(h)? - 30.0 * p(0.0)? + 16.0 * p(-h)? - p(-2.0 * h)?;
    let second_deriv = stencil / (12.0 * h * h);
    let satisfied = second_deriv >= bound - curvature_slack(h);
    Ok(CurvatureBound {
        second_deriv,
        bound,
        satisfied,
    })
}

fn response_bound_over_grid<'a>(
    initial: Initial<'a>,
    f: &StateVector,
    obs: &SpectralObservable,
    phis: &[f64],
) -> Result<ResponseBoundReport> {
    let dist = match initial {
        Initial::Pure(i) => weak_conditional(i, f, obs)?,
        Initial::Mixed(rho) => weak_conditional_mixed(rho, f, obs)?,
    };
    let mut predicted = Vec::with_capacity(phis.len());
    let mut direct = Vec::with_capacity(phis.len());
    let mut satisfied = Vec::with_capacity(phis.len());
    for &phi in phis {
        let pred = predict_response(&dist, obs, phi)?;
        let dir = direct_response(initial, f, obs, phi)?;
        predicted.push(pred);
        direct.push(dir);
        satisfied.push(dir >= pred - POLICY.validation_tol);
    }
    Ok(ResponseBoundReport {
        curve: ResponseCurve {
            phis: phis.to_vec(),
            predicted,
            direct,
        },
        satisfied,
    })
}

/// Predicted vs direct response over a grid of φ for any preparation.
/// For pure preparations the two columns agree; for mixed ones the direct
/// value dominates the prediction.
pub fn response_curve<'a>(
    initial: impl Into<Initial<'a>>,
    f: &StateVector,
    obs: &SpectralObservable,
    phis: &[f64],
) -> Result<ResponseBoundReport> {
    response_bound_over_grid(initial.into(), f, obs, phis)
}

/// The mixed-state inequality p(f;φ) ≥ |Σ_m e^{−iφA_m} p(m|if)|² p(f;0),
/// checked pointwise over a grid of φ.
pub fn mixed_response_bound_check(
    rho: &DensityOperator,
    f: &StateVector,
    obs: &SpectralObservable,
    phis: &[f64],
) -> Result<ResponseBoundReport> {
    response_bound_over_grid(Initial::Mixed(rho), f, obs, phis)
}

/// Reconstruct the amplitudes ⟨m|i⟩ (up to one common complex factor) by
/// post-selecting on the uniform superposition of the basis states: with
/// ⟨f|m⟩ constant, p(m|if) is directly proportional to ⟨m|i⟩.
pub fn reconstruct_wavefunction(
    i: &StateVector,
    basis: &SpectralObservable,
) -> Result<Vec<Complex64>> {
    let d = basis.dim();
    if i.dim() != d {
        return Err(Error::DimensionMismatch(i.dim(), d));
    }
    let mut uniform = vec![Complex64::new(0.0, 0.0); d];
    let weight = 1.0 / (d as f64).sqrt();
    for m in basis.eigenbasis() {
        for (u, a) in uniform.iter_mut().zip(m.amplitudes()) {
            *u += weight * a;
        }
    }
    let f = StateVector::new(uniform)?;
    let dist = weak_conditional(i, &f, basis)?;
    Ok(dist.values().to_vec())
}

/// Fidelity |⟨r|i⟩|² between the normalized state r = Σ_m c_m |m⟩ built from
/// reconstructed basis coefficients and a reference state. Global phase drops
/// out of the modulus.
pub fn reconstruction_fidelity(
    coefficients: &[Complex64],
    reference: &StateVector,
    basis: &SpectralObservable,
) -> Result<f64> {
    if coefficients.len() != basis.dim() {
        return Err(Error::BasisMismatch(coefficients.len(), basis.dim()));
    }
    let norm_sq: f64 = coefficients.iter().map(|c| c.norm_sqr()).sum();
    if norm_sq <= POLICY.magnitude_floor {
        return Err(Error::NotNormalizable(norm_sq));
    }
    let mut overlap = Complex64::new(0.0, 0.0);
    for (c, m) in coefficients.iter().zip(basis.eigenbasis()) {
        overlap += c.conj() * inner_product(m, reference)?;
    }
    Ok(overlap.norm_sqr() / norm_sq)
}
