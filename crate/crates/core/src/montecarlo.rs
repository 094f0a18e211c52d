//! Monte Carlo simulation of the weak measurement protocol: meter readouts
//! drawn from the exact Born rule for the measurement operators
//! E_μ = √w_μ (1 + ε_μ Â), post-selection on a final state, and statistical
//! recovery of the real and imaginary parts of the weak value.
//!
//! The simulator samples the exact readout/post-selection table, not the
//! first-order formula, so the linear-response relations are tested
//! predictions rather than assumptions; the O(ε²) residuals the weak limit
//! neglects stay in the data.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hilbert::{
    inner_product, transition_probability, SpectralObservable, StateVector,
};
use crate::policy::POLICY;
use crate::weak::weak_conditional;

/// Largest |ε_μ · A_max| accepted as weak coupling.
pub const WEAK_COUPLING_BOUND: f64 = 0.05;

/// Trials are consumed in fixed-size logical blocks, each with its own
/// derived RNG seed, so merged counts do not depend on how the blocks are
/// scheduled across workers.
const TRIAL_BLOCK: u64 = 1 << 16;

/// A weak meter: readout labels μ, their prior distribution w_μ, and the
/// per-readout coupling ε_μ.
///
/// Couplings must have zero mean under w (Σ w_μ ε_μ = 0) so that readout
/// probabilities stay normalized for every value of the observable.
#[derive(Clone, Debug, PartialEq)]
pub struct MeterModel {
    labels: Vec<String>,
    weights: Vec<f64>,
    couplings: Vec<f64>,
}

impl MeterModel {
    pub fn new(labels: Vec<String>, weights: Vec<f64>, couplings: Vec<f64>) -> Result<Self> {
        let k = labels.len();
        if k < 2 {
            return Err(Error::InvalidParameter(format!(
                "a meter needs at least 2 readouts, got {k}"
            )));
        }
        if weights.len() != k || couplings.len() != k {
            return Err(Error::DimensionMismatch(weights.len(), k));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidParameter(
                "readout weights must be nonnegative".into(),
            ));
        }
        if couplings.iter().any(|e| !e.is_finite()) {
            return Err(Error::InvalidParameter("non-finite coupling".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > POLICY.construction_tol {
            return Err(Error::InvalidParameter(format!(
                "readout weights sum to {total}, expected 1"
            )));
        }
        let mean_coupling: f64 = weights.iter().zip(&couplings).map(|(w, e)| w * e).sum();
        if mean_coupling.abs() > POLICY.construction_tol {
            return Err(Error::InvalidParameter(format!(
                "couplings must have zero mean under w, got {mean_coupling:e}"
            )));
        }
        Ok(Self {
            labels,
            weights,
            couplings,
        })
    }

    /// A two-outcome meter with w = (1/2, 1/2) and couplings ±eps.
    pub fn balanced_pair(eps: f64) -> Result<Self> {
        Self::new(
            vec!["plus".into(), "minus".into()],
            vec![0.5, 0.5],
            vec![eps, -eps],
        )
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    fn check_weak_regime(&self, obs: &SpectralObservable) -> Result<()> {
        let a_max = obs.max_abs_eigenvalue();
        let worst = self
            .couplings
            .iter()
            .fold(0.0f64, |acc, e| acc.max((e * a_max).abs()));
        if worst > WEAK_COUPLING_BOUND {
            return Err(Error::CouplingTooStrong(worst, WEAK_COUPLING_BOUND));
        }
        Ok(())
    }
}

/// Post-selected counts per readout from a simulation run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialCounts {
    counts: Vec<u64>,
    n_total: u64,
}

impl TrialCounts {
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn n_total(&self) -> u64 {
        self.n_total
    }

    pub fn n_postselected(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// A statistical estimate with its standard error and sample bookkeeping.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EstimateReport {
    pub estimate: f64,
    pub std_error: f64,
    pub n_total: u64,
    pub n_postselected: u64,
}

/// ⟨f|E_μ|i⟩ for every readout.
fn postselected_amplitudes(
    i: &StateVector,
    f: &StateVector,
    obs: &SpectralObservable,
    meter: &MeterModel,
) -> Result<Vec<Complex64>> {
    let fi = inner_product(f, i)?;
    let mut f_a_i = Complex64::new(0.0, 0.0);
    for (a, m) in obs.eigenvalues().iter().zip(obs.eigenbasis()) {
        f_a_i += a * inner_product(f, m)? * inner_product(m, i)?;
    }
    Ok(meter
        .weights
        .iter()
        .zip(&meter.couplings)
        .map(|(w, e)| w.sqrt() * (fi + e * f_a_i))
        .collect())
}

/// ⟨i|E_μ²|i⟩ = w_μ (1 + 2ε_μ⟨Â⟩ + ε_μ²⟨Â²⟩), exact.
fn readout_norms(
    i: &StateVector,
    obs: &SpectralObservable,
    meter: &MeterModel,
) -> Result<Vec<f64>> {
    let mut mean = 0.0;
    let mut mean_sq = 0.0;
    for (a, m) in obs.eigenvalues().iter().zip(obs.eigenbasis()) {
        let p = inner_product(m, i)?.norm_sqr();
        mean += a * p;
        mean_sq += a * a * p;
    }
    Ok(meter
        .weights
        .iter()
        .zip(&meter.couplings)
        .map(|(w, e)| w * (1.0 + 2.0 * e * mean + e * e * mean_sq))
        .collect())
}

/// The readout distribution p(μ).
///
/// Without post-selection this is the linear-response form
/// w_μ (1 + 2ε_μ ⟨i|Â|i⟩), which is exactly normalized thanks to the
/// zero-mean couplings. With post-selection on `f` the exact Born-rule table
/// |⟨f|E_μ|i⟩|² (normalized) is returned.
pub fn readout_distribution(
    i: &StateVector,
    f: Option<&StateVector>,
    obs: &SpectralObservable,
    meter: &MeterModel,
) -> Result<Vec<f64>> {
    if i.dim() != obs.dim() {
        return Err(Error::DimensionMismatch(i.dim(), obs.dim()));
    }
    meter.check_weak_regime(obs)?;
    match f {
        None => {
            let mean = obs.expectation(i)?;
            Ok(meter
                .weights
                .iter()
                .zip(&meter.couplings)
                .map(|(w, e)| w * (1.0 + 2.0 * e * mean))
                .collect())
        }
        Some(f) => {
            let p_post = transition_probability(i, f)?;
            if p_post <= POLICY.overlap_floor {
                return Err(Error::OrthogonalPostselection(p_post));
            }
            let amps = postselected_amplitudes(i, f, obs, meter)?;
            let raw: Vec<f64> = amps.iter().map(|a| a.norm_sqr()).collect();
            let total: f64 = raw.iter().sum();
            Ok(raw.into_iter().map(|p| p / total).collect())
        }
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn block_seed(master: u64, stream: u64, block: u64) -> u64 {
    let mut s = master ^ stream.rotate_left(32) ^ block.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    splitmix64(&mut s)
}

/// Draw a category from a cumulative table by inverse CDF.
fn draw(cdf: &[f64], u: f64) -> usize {
    match cdf.iter().position(|&c| u < c) {
        Some(k) => k,
        None => cdf.len() - 1,
    }
}

/// Run `n` weak-measurement trials and return the post-selected counts per
/// readout.
///
/// Each trial samples the joint outcome (μ, post-selection accept/reject)
/// from the exact Born-rule table by inverse CDF. Fixed seeds give identical
/// counts; the block structure makes the result independent of how trials
/// would be partitioned across workers.
pub fn simulate_trials(
    i: &StateVector,
    f: &StateVector,
    obs: &SpectralObservable,
    meter: &MeterModel,
    n: u64,
    seed: u64,
) -> Result<TrialCounts> {
    if i.dim() != obs.dim() {
        return Err(Error::DimensionMismatch(i.dim(), obs.dim()));
    }
    meter.check_weak_regime(obs)?;
    let p_post = transition_probability(i, f)?;
    if p_post <= POLICY.overlap_floor {
        return Err(Error::OrthogonalPostselection(p_post));
    }

    let k = meter.len();
    let accept: Vec<f64> = postselected_amplitudes(i, f, obs, meter)?
        .iter()
        .map(|a| a.norm_sqr())
        .collect();
    let norms = readout_norms(i, obs, meter)?;
    // joint table: (μ accepted, μ rejected) pairs, normalized
    let mut joint = Vec::with_capacity(2 * k);
    for mu in 0..k {
        let acc = accept[mu].min(norms[mu]);
        joint.push(acc);
        joint.push(norms[mu] - acc);
    }
    let total: f64 = joint.iter().sum();
    let mut cdf = Vec::with_capacity(2 * k);
    let mut running = 0.0;
    for p in &joint {
        running += p / total;
        cdf.push(running);
    }

    let mut counts = vec![0u64; k];
    let mut remaining = n;
    let mut block = 0u64;
    while remaining > 0 {
        let take = remaining.min(TRIAL_BLOCK);
        let mut rng = ChaCha8Rng::seed_from_u64(block_seed(seed, 0, block));
        for _ in 0..take {
            let u: f64 = rng.gen();
            let cat = draw(&cdf, u);
            if cat % 2 == 0 {
                counts[cat / 2] += 1;
            }
        }
        remaining -= take;
        block += 1;
    }
    Ok(TrialCounts { counts, n_total: n })
}

/// Recover Re⟨Â⟩_weak from post-selected counts by least squares on the
/// linear model p(μ) = w_μ (1 + 2ε_μ x).
///
/// The standard error propagates the multinomial covariance of the empirical
/// frequencies; a half-count continuity correction keeps it positive even for
/// degenerate-looking counts.
pub fn estimate_real_weak_value(
    counts: &TrialCounts,
    meter: &MeterModel,
) -> Result<EstimateReport> {
    let k = meter.len();
    if counts.counts().len() != k {
        return Err(Error::DimensionMismatch(counts.counts().len(), k));
    }
    let spread = meter
        .couplings
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &e| {
            (lo.min(e), hi.max(e))
        });
    if spread.1 - spread.0 <= 0.0 {
        return Err(Error::DegenerateDesign(
            "all couplings are equal; the linear model is not invertible".into(),
        ));
    }
    let n_post = counts.n_postselected();
    if n_post < 100 {
        return Err(Error::InsufficientData(format!(
            "need at least 100 post-selected trials, got {n_post}"
        )));
    }

    let design: Vec<f64> = meter
        .weights
        .iter()
        .zip(&meter.couplings)
        .map(|(w, e)| 2.0 * w * e)
        .collect();
    let gram: f64 = design.iter().map(|d| d * d).sum();
    if gram <= 0.0 {
        return Err(Error::DegenerateDesign(
            "design vector vanishes (all w·ε = 0)".into(),
        ));
    }

    let n = n_post as f64;
    let mut estimate = 0.0;
    for mu in 0..k {
        let freq = counts.counts()[mu] as f64 / n;
        estimate += design[mu] * (freq - meter.weights[mu]);
    }
    estimate /= gram;

    // multinomial propagation of var(Σ g_μ p̂_μ) with corrected frequencies
    let g: Vec<f64> = design.iter().map(|d| d / gram).collect();
    let mut ex_g = 0.0;
    let mut ex_g2 = 0.0;
    for mu in 0..k {
        let corrected = (counts.counts()[mu] as f64 + 0.5) / (n + 0.5 * k as f64);
        ex_g += g[mu] * corrected;
        ex_g2 += g[mu] * g[mu] * corrected;
    }
    let variance = (ex_g2 - ex_g * ex_g).max(0.0) / n;
    Ok(EstimateReport {
        estimate,
        std_error: variance.sqrt(),
        n_total: counts.n_total(),
        n_postselected: n_post,
    })
}

/// Recover Im⟨Â⟩_weak as half the logarithmic derivative of the final
/// probability in φ: two simulated Bernoulli batches at φ = ±δ give
/// [ln p̂₊ − ln p̂₋] / 4δ.
pub fn estimate_imag_weak_value(
    i: &StateVector,
    f: &StateVector,
    obs: &SpectralObservable,
    delta_phi: f64,
    n: u64,
    seed: u64,
) -> Result<EstimateReport> {
    if !(1e-3..=0.1).contains(&delta_phi) {
        return Err(Error::InvalidParameter(format!(
            "delta_phi {delta_phi} outside [1e-3, 0.1]"
        )));
    }
    if n < 100 {
        return Err(Error::InsufficientData(format!(
            "need at least 100 trials per batch, got {n}"
        )));
    }
    let p0 = transition_probability(i, f)?;
    if p0 <= POLICY.overlap_floor {
        return Err(Error::OrthogonalPostselection(p0));
    }
    // margin check: the probed probabilities must stay inside (0, 1)
    let dist = weak_conditional(i, f, obs)?;
    let weak_imag: f64 = obs
        .eigenvalues()
        .iter()
        .zip(dist.values())
        .map(|(a, v)| a * v.im)
        .sum();
    let slope = 2.0 * p0 * weak_imag;
    let margin = 10.0 * delta_phi * slope.abs();
    if p0 < margin || p0 > 1.0 - margin {
        return Err(Error::DegenerateProbability(format!(
            "base probability {p0} sits within the excursion margin {margin} of 0 or 1"
        )));
    }

    let p_plus = crate::weak::direct_response(i, f, obs, delta_phi)?;
    let p_minus = crate::weak::direct_response(i, f, obs, -delta_phi)?;

    let run_batch = |p: f64, stream: u64| -> u64 {
        let mut successes = 0u64;
        let mut remaining = n;
        let mut block = 0u64;
        while remaining > 0 {
            let take = remaining.min(TRIAL_BLOCK);
            let mut rng = ChaCha8Rng::seed_from_u64(block_seed(seed, stream, block));
            for _ in 0..take {
                if rng.gen::<f64>() < p {
                    successes += 1;
                }
            }
            remaining -= take;
            block += 1;
        }
        successes
    };
    let k_plus = run_batch(p_plus, 1);
    let k_minus = run_batch(p_minus, 2);
    if k_plus == 0 || k_minus == 0 {
        return Err(Error::DegenerateProbability(
            "a batch recorded zero post-selections; the log estimate is undefined".into(),
        ));
    }

    let nf = n as f64;
    let hat_plus = k_plus as f64 / nf;
    let hat_minus = k_minus as f64 / nf;
    let estimate = (hat_plus.ln() - hat_minus.ln()) / (4.0 * delta_phi);
    // var(ln p̂) ≈ (1 − p)/(p n), with a half-count correction so that
    // all-success batches still report a positive error bar
    let var_ln = |kk: u64| {
        let p = (kk as f64 + 0.5) / (nf + 1.0);
        (1.0 - p) / (p * nf)
    };
    let std_error = (var_ln(k_plus) + var_ln(k_minus)).sqrt() / (4.0 * delta_phi);
    Ok(EstimateReport {
        estimate,
        std_error,
        n_total: 2 * n,
        n_postselected: k_plus + k_minus,
    })
}
