//! Free-particle scenario on a position grid: chirped initial and final
//! states crossing at the origin, the closed-form complex weak conditional
//! density of position, its action curve, and the momentum-difference law.
//!
//! The initial state satisfies (x̂ − τP̂/2m)|i⟩ = 0 and the final state
//! (x̂ + τP̂/2m)|f⟩ = 0, so the position wavefunctions are pure chirps
//! exp(±i m x²/(ħτ)) and the weak momenta are the straight lines ±2mx/τ.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{principal_arg, wrap_phase};

/// A free-particle position-grid scenario.
///
/// The grid is uniform and symmetric about the origin. The normalization
/// length L of the chirped states is fixed to one grid-length unit; it
/// cancels in every ratio the scenario produces.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeParticleScenario {
    mass: f64,
    tau: f64,
    hbar: f64,
    grid: Vec<f64>,
    dx: f64,
}

pub const MIN_GRID_POINTS: usize = 16;

/// Which of the two chirped states a sample array holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WavefunctionRole {
    Initial,
    Final,
}

/// A wavefunction sampled on the scenario grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledWavefunction {
    values: Vec<Complex64>,
    role: WavefunctionRole,
}

impl SampledWavefunction {
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn role(&self) -> WavefunctionRole {
        self.role
    }
}

/// Build a scenario with a grid of `n` points spanning [−x_max, x_max].
pub fn build_scenario(
    mass: f64,
    tau: f64,
    hbar: f64,
    x_max: f64,
    n: usize,
) -> Result<FreeParticleScenario> {
    for (name, v) in [("mass", mass), ("tau", tau), ("hbar", hbar), ("x_max", x_max)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "{name} must be positive and finite, got {v}"
            )));
        }
    }
    if n < MIN_GRID_POINTS {
        return Err(Error::InvalidParameter(format!(
            "grid needs at least {MIN_GRID_POINTS} points, got {n}"
        )));
    }
    let dx = 2.0 * x_max / (n - 1) as f64;
    let grid = (0..n).map(|k| -x_max + k as f64 * dx).collect();
    Ok(FreeParticleScenario {
        mass,
        tau,
        hbar,
        grid,
        dx,
    })
}

impl FreeParticleScenario {
    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn x_max(&self) -> f64 {
        *self.grid.last().expect("grid is never empty")
    }

    /// The chirp rate m/(ħτ) of the state phases.
    pub fn chirp_rate(&self) -> f64 {
        self.mass / (self.hbar * self.tau)
    }
}

/// Sample ⟨x|i⟩ or ⟨x|f⟩ = exp(±i m x²/(ħτ)) on the grid (L = 1).
pub fn sample_wavefunction(
    scenario: &FreeParticleScenario,
    role: WavefunctionRole,
) -> SampledWavefunction {
    let chirp = scenario.chirp_rate();
    let sign = match role {
        WavefunctionRole::Initial => 1.0,
        WavefunctionRole::Final => -1.0,
    };
    let values = scenario
        .grid
        .iter()
        .map(|&x| Complex64::from_polar(1.0, sign * chirp * x * x))
        .collect();
    SampledWavefunction { values, role }
}

/// The closed-form weak conditional density
/// p(x|if) = √(2m/(πħτ)) exp(i 2m x²/(ħτ) − iπ/4).
///
/// Its magnitude is independent of x; all structure lives in the phase.
pub fn weak_density(scenario: &FreeParticleScenario, x: f64) -> Complex64 {
    let chirp = scenario.chirp_rate();
    let magnitude = (2.0 * chirp / PI).sqrt();
    Complex64::from_polar(magnitude, 2.0 * chirp * x * x - FRAC_PI_4)
}

/// The action curve S(xₖ) in wrapped and unwrapped form.
///
/// Unwrapping proceeds by nearest-branch continuation outward from the grid
/// point closest to x = 0, where the phase −π/4 sits safely inside the
/// principal branch.
#[derive(Clone, Debug, PartialEq)]
pub struct ActionCurve {
    pub wrapped: Vec<f64>,
    pub unwrapped: Vec<f64>,
}

pub fn action_curve(scenario: &FreeParticleScenario) -> ActionCurve {
    let wrapped: Vec<f64> = scenario
        .grid
        .iter()
        .map(|&x| principal_arg(weak_density(scenario, x)))
        .collect();
    let n = wrapped.len();
    let center = scenario
        .grid
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.abs().partial_cmp(&b.abs()).expect("grid is finite"))
        .map(|(k, _)| k)
        .expect("grid is never empty");
    let mut unwrapped = vec![0.0; n];
    unwrapped[center] = wrapped[center];
    for k in (center + 1)..n {
        unwrapped[k] = unwrapped[k - 1] + wrap_phase(wrapped[k] - wrapped[k - 1]);
    }
    for k in (0..center).rev() {
        unwrapped[k] = unwrapped[k + 1] + wrap_phase(wrapped[k] - wrapped[k + 1]);
    }
    ActionCurve { wrapped, unwrapped }
}

/// The momentum transfer −ħ ∂S/∂x = −4mx/τ of the overlap-maximizing
/// transformation, equal to P_f(x) − P_i(x).
pub fn momentum_difference(scenario: &FreeParticleScenario, x: f64) -> f64 {
    -4.0 * scenario.mass * x / scenario.tau
}

/// The weak value of momentum at x for one of the chirped states, read off
/// the phase gradient by a central difference of width `dx_probe`:
/// ħ ∂ₓ Arg⟨x|ψ⟩ = ±2mx/τ.
pub fn weak_momentum(
    scenario: &FreeParticleScenario,
    role: WavefunctionRole,
    x: f64,
    dx_probe: f64,
) -> Result<f64> {
    if !(dx_probe.is_finite() && dx_probe > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "probe width must be positive, got {dx_probe}"
        )));
    }
    if x.abs() + dx_probe > scenario.x_max() {
        return Err(Error::OutOfGrid(x, dx_probe));
    }
    let chirp = scenario.chirp_rate();
    let sign = match role {
        WavefunctionRole::Initial => 1.0,
        WavefunctionRole::Final => -1.0,
    };
    let psi = |x: f64| Complex64::from_polar(1.0, sign * chirp * x * x);
    // the phase step stays on the principal branch for any sane probe width
    let delta = principal_arg(psi(x + dx_probe) * psi(x - dx_probe).conj());
    Ok(scenario.hbar * delta / (2.0 * dx_probe))
}

/// Partial normalization integral ∫_{−w}^{w} p(x|if) dx of the weak density.
///
/// Evaluated with composite Simpson quadrature on a refinement fine enough to
/// resolve every oscillation of the chirp; converges to 1 as the window
/// grows, with the oscillatory Fresnel tail decaying like 1/w.
pub fn density_normalization_check(
    scenario: &FreeParticleScenario,
    window: f64,
) -> Result<Complex64> {
    if !window.is_finite() || window < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "window must be nonnegative, got {window}"
        )));
    }
    if window > scenario.x_max() {
        return Err(Error::InvalidParameter(format!(
            "window {window} exceeds the grid half-width {}",
            scenario.x_max()
        )));
    }
    if window == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    // at least 64 sample points per 2π of phase, and never fewer than 4096
    let total_phase = 2.0 * scenario.chirp_rate() * window * window;
    let per_period = 64.0 * total_phase / (2.0 * PI);
    let mut intervals = (per_period.ceil() as usize).max(4096);
    if intervals % 2 == 1 {
        intervals += 1;
    }
    let h = 2.0 * window / intervals as f64;
    let mut acc = weak_density(scenario, -window) + weak_density(scenario, window);
    for k in 1..intervals {
        let x = -window + k as f64 * h;
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * weak_density(scenario, x);
    }
    Ok(acc * (h / 3.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn default_scenario() -> FreeParticleScenario {
        build_scenario(1.0, 1.0, 1.0, 3.0, 601).unwrap()
    }

    #[test]
    fn build_default_grid() {
        let s = default_scenario();
        assert_eq!(s.grid().len(), 601);
        assert!((s.dx() - 0.01).abs() < 1e-15);
        assert!((s.x_max() - 3.0).abs() < 1e-12);
        // symmetric about zero
        assert!((s.grid()[0] + s.grid()[600]).abs() < 1e-12);
        assert!(s.grid()[300].abs() < 1e-12);
    }

    #[test]
    fn build_rejects_small_grid_and_bad_parameters() {
        assert!(build_scenario(1.0, 1.0, 1.0, 3.0, 8).is_err());
        assert!(build_scenario(-1.0, 1.0, 1.0, 3.0, 100).is_err());
        assert!(build_scenario(1.0, 0.0, 1.0, 3.0, 100).is_err());
    }

    #[test]
    fn chirp_rate_arithmetic() {
        let s = build_scenario(2.0, 0.5, 1.0, 3.0, 64).unwrap();
        assert!((s.chirp_rate() - 4.0).abs() < 1e-15);
    }

    #[test]
    fn weak_density_at_origin() {
        let s = default_scenario();
        let p = weak_density(&s, 0.0);
        let expected = Complex64::from_polar((2.0 / PI).sqrt(), -FRAC_PI_4);
        assert!((p - expected).norm() < 1e-15);
    }

    #[test]
    fn weak_density_magnitude_is_constant() {
        let s = default_scenario();
        let m0 = weak_density(&s, 0.0).norm();
        for &x in &[0.3, 1.0, 2.5, -1.7] {
            assert!((weak_density(&s, x).norm() - m0).abs() < 1e-12);
        }
    }

    #[test]
    fn positive_real_band_boundary() {
        // Re p(x|if) > 0 while the action stays within π/2 of the branch
        // start at −π/4, i.e. for 2mx²/(ħτ) up to 3π/4 above the minimum.
        let s = default_scenario();
        let x_edge = (3.0 * PI / 8.0).sqrt(); // 2x² = 3π/4
        let just_inside = weak_density(&s, x_edge - 1e-6);
        let just_outside = weak_density(&s, x_edge + 1e-6);
        assert!(just_inside.re > 0.0);
        assert!(just_outside.re < 0.0);
    }

    #[test]
    fn action_curve_matches_formula() {
        let s = default_scenario();
        let curve = action_curve(&s);
        for (k, &x) in s.grid().iter().enumerate() {
            let expected = 2.0 * x * x - FRAC_PI_4;
            assert!(
                (curve.unwrapped[k] - expected).abs() < 1e-10,
                "x={x}: {} vs {expected}",
                curve.unwrapped[k]
            );
            assert!((curve.wrapped[k] - wrap_phase(expected)).abs() < 1e-12);
        }
        // even in x
        assert!((curve.unwrapped[0] - curve.unwrapped[600]).abs() < 1e-10);
    }

    #[test]
    fn momentum_difference_values() {
        let s = default_scenario();
        assert_eq!(momentum_difference(&s, 0.0), 0.0);
        assert!((momentum_difference(&s, 1.0) + 4.0).abs() < 1e-15);
    }

    #[test]
    fn weak_momentum_straight_lines() {
        let s = default_scenario();
        let p = weak_momentum(&s, WavefunctionRole::Initial, 0.5, 1e-3).unwrap();
        assert!((p - 1.0).abs() < 1e-4);
        let p = weak_momentum(&s, WavefunctionRole::Final, 0.5, 1e-3).unwrap();
        assert!((p + 1.0).abs() < 1e-4);
        let p = weak_momentum(&s, WavefunctionRole::Initial, 0.0, 1e-3).unwrap();
        assert!(p.abs() < 1e-10);
    }

    #[test]
    fn weak_momentum_out_of_grid() {
        let s = default_scenario();
        assert!(matches!(
            weak_momentum(&s, WavefunctionRole::Initial, 3.0, 1e-3),
            Err(Error::OutOfGrid(_, _))
        ));
    }

    #[test]
    fn normalization_zero_window() {
        let s = default_scenario();
        let v = density_normalization_check(&s, 0.0).unwrap();
        assert_eq!(v, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn normalization_rejects_oversized_window() {
        let s = default_scenario();
        assert!(density_normalization_check(&s, 4.0).is_err());
        assert!(density_normalization_check(&s, -1.0).is_err());
    }

    #[test]
    fn action_derivative_matches_momentum_difference() {
        let s = default_scenario();
        let curve = action_curve(&s);
        let dx = s.dx();
        for k in (1..s.grid().len() - 1).step_by(37) {
            let ds = (curve.unwrapped[k + 1] - curve.unwrapped[k - 1]) / (2.0 * dx);
            let dp = momentum_difference(&s, s.grid()[k]);
            assert!(
                (-s.hbar() * ds - dp).abs() < 10.0 * dx * dx,
                "x={}: {} vs {dp}",
                s.grid()[k],
                -s.hbar() * ds
            );
        }
    }
}
