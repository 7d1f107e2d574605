//! Truncated-space evaluation of the single-mode scattering operator
//! Ŝ = exp(g_Q b̂†â − g_Q* b̂â†) and photon statistics of spontaneous
//! emission.
//!
//! The electron ladder operator b̂ is an exact down-shift on a finite index
//! window k ∈ [−K, K] (non-unitary only at the window edges); correctness
//! is guaranteed by a reported leak metric — the probability within one
//! index of a truncating boundary — rather than by operator-level
//! unitarization. Sign/phase convention: b̂ lowers the electron energy
//! while creating a photon, so emission of one photon lowers k by one and
//! raises n by one; only |amplitudes|² are observable here.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest supported truncation per axis; beyond this the module refuses
/// rather than silently degrading.
pub const MAX_TRUNCATION: usize = 128;

/// Taylor terms are accumulated until they fall below this relative size.
const TERM_RATIO: f64 = 1e-18;

/// Configuration for a spontaneous scattering run.
#[derive(Debug, Clone, Copy)]
pub struct ScatterConfig {
    /// Dimensionless vacuum coupling g_Q.
    pub g_q: Complex64,
    /// Electron ladder window half-size K (k ∈ [−K, K]).
    pub k_max: usize,
    /// Photon-number cutoff N (n ∈ [0, N]).
    pub n_max: usize,
    /// Largest acceptable truncation leak.
    pub tolerance: f64,
}

impl ScatterConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k_max > MAX_TRUNCATION || self.n_max > MAX_TRUNCATION {
            return Err(Error::Unsupported(format!(
                "truncation ({}, {}) exceeds the supported maximum ({MAX_TRUNCATION}, {MAX_TRUNCATION})",
                self.k_max, self.n_max
            )));
        }
        if self.n_max < 1 || self.k_max < self.n_max {
            return Err(Error::Domain(format!(
                "truncation must satisfy K ≥ N ≥ 1, got ({}, {})",
                self.k_max, self.n_max
            )));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::Domain(format!(
                "leak tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if !self.g_q.norm().is_finite() || self.g_q.norm() > 2.0 {
            return Err(Error::Domain(format!(
                "|g_Q| = {} is outside the documented operating range |g_Q| ≤ 2",
                self.g_q.norm()
            )));
        }
        Ok(())
    }
}

/// Joint electron–photon state on the truncated product space, stored as
/// amplitudes c_{k,n} with k ∈ [−K, K] and n ∈ [0, N].
#[derive(Debug, Clone)]
pub struct JointState {
    /// Row-major over (k + K, n): index = (k + K)·(N + 1) + n.
    pub amplitudes: Vec<Complex64>,
    pub k_max: usize,
    pub n_max: usize,
    /// Probability within one index of a truncating boundary (|k| ≥ K−1 or
    /// n ≥ N−1; the photon vacuum n = 0 is a physical wall, not a cut).
    pub leak: f64,
    /// |‖Ŝψ‖ − 1| before renormalization.
    pub norm_drift: f64,
}

impl JointState {
    pub fn index(&self, k: i64, n: usize) -> usize {
        debug_assert!(k.unsigned_abs() as usize <= self.k_max && n <= self.n_max);
        (k + self.k_max as i64) as usize * (self.n_max + 1) + n
    }

    pub fn amplitude(&self, k: i64, n: usize) -> Complex64 {
        self.amplitudes[self.index(k, n)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// Linear operator G with G† = −G on a truncated space, applied
/// matrix-free.
pub trait AntiHermitianGenerator: Sync {
    fn dim(&self) -> usize;
    /// output ← G·input (output starts zeroed).
    fn apply(&self, input: &[Complex64], output: &mut [Complex64]);
    /// Any upper bound on the operator norm ‖G‖.
    fn norm_bound(&self) -> f64;
}

/// The scattering generator g b̂†â − g* b̂â† on the (k, n) window.
pub struct ShiftGenerator {
    pub g: Complex64,
    pub k_max: usize,
    pub n_max: usize,
}

impl ShiftGenerator {
    fn index(&self, k: i64, n: usize) -> usize {
        (k + self.k_max as i64) as usize * (self.n_max + 1) + n
    }
}

impl AntiHermitianGenerator for ShiftGenerator {
    fn dim(&self) -> usize {
        (2 * self.k_max + 1) * (self.n_max + 1)
    }

    fn apply(&self, input: &[Complex64], output: &mut [Complex64]) {
        let kk = self.k_max as i64;
        for k in -kk..=kk {
            for n in 0..=self.n_max {
                let mut acc = Complex64::ZERO;
                // ⟨k,n| g b̂†â |k−1,n+1⟩ = g√(n+1)
                if k > -kk && n < self.n_max {
                    acc += self.g * ((n + 1) as f64).sqrt() * input[self.index(k - 1, n + 1)];
                }
                // ⟨k,n| −g* b̂â† |k+1,n−1⟩ = −g*√n
                if k < kk && n >= 1 {
                    acc -= self.g.conj() * (n as f64).sqrt() * input[self.index(k + 1, n - 1)];
                }
                output[self.index(k, n)] = acc;
            }
        }
    }

    fn norm_bound(&self) -> f64 {
        // Each row holds at most two entries of magnitude ≤ |g|√N.
        2.0 * self.g.norm() * ((self.n_max + 1) as f64).sqrt()
    }
}

/// Dense anti-Hermitian matrix, used for oracle comparisons and tests of
/// the exponential kernel on arbitrary generators.
pub struct DenseGenerator {
    /// Row-major dim×dim entries.
    pub entries: Vec<Complex64>,
    pub dim: usize,
}

impl AntiHermitianGenerator for DenseGenerator {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, input: &[Complex64], output: &mut [Complex64]) {
        for (i, out) in output.iter_mut().enumerate() {
            let row = &self.entries[i * self.dim..(i + 1) * self.dim];
            *out = row.iter().zip(input).map(|(a, x)| a * x).sum::<Complex64>();
        }
    }

    fn norm_bound(&self) -> f64 {
        // Maximum absolute row sum bounds the operator norm.
        (0..self.dim)
            .map(|i| {
                self.entries[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .map(|a| a.norm())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }
}

/// exp(G)·input via scaling and repeated Taylor application: the generator
/// is scaled so ‖G/2^s‖ ≤ 1/2, the series is summed to a 1e-18 term ratio,
/// and the result is propagated 2^s times. Anti-Hermiticity of G makes
/// every step norm-preserving up to the series residual.
pub fn exponential_apply<G: AntiHermitianGenerator>(
    generator: &G,
    input: &[Complex64],
) -> Result<Vec<Complex64>> {
    let dim = generator.dim();
    if input.len() != dim {
        return Err(Error::Domain(format!(
            "state length {} does not match generator dimension {dim}",
            input.len()
        )));
    }
    let bound = generator.norm_bound();
    if !bound.is_finite() {
        return Err(Error::NumericalFailure(
            "generator norm bound is not finite".into(),
        ));
    }
    let steps = if bound <= 0.5 {
        0
    } else {
        (bound / 0.5).log2().ceil() as u32
    };
    let scale = 0.5f64.powi(steps as i32);

    let mut state = input.to_vec();
    let mut term = vec![Complex64::ZERO; dim];
    let mut next = vec![Complex64::ZERO; dim];
    for _ in 0..(1u64 << steps) {
        term.copy_from_slice(&state);
        let mut acc = state.clone();
        let mut converged = false;
        for m in 1..=120u32 {
            generator.apply(&term, &mut next);
            let factor = scale / m as f64;
            for (t, n) in term.iter_mut().zip(next.iter()) {
                *t = n * factor;
            }
            let mut term_sq = 0.0;
            for (a, t) in acc.iter_mut().zip(term.iter()) {
                *a += t;
                term_sq += t.norm_sqr();
            }
            let acc_sq: f64 = acc.iter().map(|c| c.norm_sqr()).sum();
            if term_sq.sqrt() <= TERM_RATIO * acc_sq.sqrt().max(f64::MIN_POSITIVE) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NumericalFailure(
                "exponential Taylor series did not converge within 120 terms".into(),
            ));
        }
        state = acc;
    }
    Ok(state)
}

/// Apply Ŝ = exp(g b̂†â − g* b̂â†) to |E₀, 0⟩ on the truncated space.
///
/// The returned state is normalized; `leak` records the probability found
/// within one index of a truncating boundary before normalization.
pub fn evolve_spontaneous(cfg: &ScatterConfig) -> Result<JointState> {
    cfg.validate()?;
    let generator = ShiftGenerator {
        g: cfg.g_q,
        k_max: cfg.k_max,
        n_max: cfg.n_max,
    };
    let dim = generator.dim();
    let mut initial = vec![Complex64::ZERO; dim];
    let origin = generator.index(0, 0);
    initial[origin] = Complex64::ONE;

    let amplitudes = exponential_apply(&generator, &initial)?;
    let norm_sq: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
    let norm_drift = (norm_sq.sqrt() - 1.0).abs();
    if norm_drift > 1e-10 {
        return Err(Error::NumericalFailure(format!(
            "evolution lost unitarity: norm drift {norm_drift:.3e}"
        )));
    }

    let mut state = JointState {
        amplitudes,
        k_max: cfg.k_max,
        n_max: cfg.n_max,
        leak: 0.0,
        norm_drift,
    };
    let norm = norm_sq.sqrt();
    for c in &mut state.amplitudes {
        *c /= norm;
    }

    let kk = cfg.k_max as i64;
    let mut leak = 0.0;
    for k in -kk..=kk {
        for n in 0..=cfg.n_max {
            if k.unsigned_abs() as usize + 1 >= cfg.k_max || n + 1 >= cfg.n_max {
                leak += state.amplitude(k, n).norm_sqr();
            }
        }
    }
    state.leak = leak;
    if leak > cfg.tolerance {
        return Err(Error::Truncation(format!(
            "truncation leak {leak:.3e} exceeds tolerance {:.3e}; retry with a larger \
             truncation, e.g. (K, N) = ({}, {})",
            cfg.tolerance,
            (2 * cfg.k_max).min(MAX_TRUNCATION),
            (2 * cfg.n_max).min(MAX_TRUNCATION),
        )));
    }
    Ok(state)
}

/// Photon-number distribution P(n) = Σ_k |c_{k,n}|².
pub fn photon_distribution(state: &JointState) -> Vec<f64> {
    let mut p = vec![0.0; state.n_max + 1];
    for (i, c) in state.amplitudes.iter().enumerate() {
        p[i % (state.n_max + 1)] += c.norm_sqr();
    }
    p
}

/// Poisson probability mass e^{−λ}λⁿ/n!, evaluated in log space.
pub fn poisson_pmf(lambda: f64, n: usize) -> f64 {
    if lambda == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let ln_factorial: f64 = (1..=n).map(|k| (k as f64).ln()).sum();
    (n as f64 * lambda.ln() - lambda - ln_factorial).exp()
}

/// Total variation distance ½Σ|P(n) − Poi_λ(n)|, counting the Poisson mass
/// beyond the truncated support as unmatched.
pub fn tv_to_poisson(p: &[f64], lambda: f64) -> f64 {
    let mut dist = 0.0;
    let mut covered = 0.0;
    for (n, &pn) in p.iter().enumerate() {
        let q = poisson_pmf(lambda, n);
        dist += (pn - q).abs();
        covered += q;
    }
    dist += (1.0 - covered).max(0.0);
    0.5 * dist
}
