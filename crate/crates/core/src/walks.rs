//! Randomization kernels: uniform box sampling, Gaussian walks and Lévy steps.
//!
//! Every draw goes through a [`RandomStream`]. The production stream is
//! [`RandomSource`]; [`ScriptedSource`] replays fixed values so kernels and
//! optimizers can be driven through exact, hand-checkable paths.
//!
//! The recipes are fixed so that a seed reproduces the same stream on every
//! platform:
//!
//! * generator: xoshiro256++ seeded through SplitMix64 (`seed_from_u64`);
//! * uniform: `(next_u64 >> 11) · 2⁻⁵³`, which lies in `[0, 1)`;
//! * Gaussian: Box–Muller on two uniforms `u1, u2`, using `1 − u1` so the
//!   logarithm argument lies in `(0, 1]`:
//!   `z0 = √(−2 ln(1 − u1)) · cos(2π u2)`, `z1 = √(−2 ln(1 − u1)) · sin(2π u2)`;
//!   `z0` is returned first and `z1` on the next call;
//! * transcendental functions come from `libm`, not the platform C library;
//! * Lévy: Mantegna's ratio `u / |v|^{1/β}` with `u ~ N(0, σ_u²)`,
//!   `v ~ N(0, 1)` and
//!   `σ_u = [Γ(1+β) sin(πβ/2) / (Γ((1+β)/2) β 2^{(β−1)/2})]^{1/β}`.

use std::collections::VecDeque;

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{check_dim, Error, Result};
use crate::problem::SearchSpace;
use crate::scalar::Scalar;

/// Source of the uniform and standard-normal variates every kernel consumes.
pub trait RandomStream {
    /// A uniform draw in `[0, 1)` (scripted streams may also return `1.0`).
    fn uniform(&mut self) -> f64;

    /// A standard normal draw.
    fn gaussian(&mut self) -> f64;

    /// Uniform index in `0..n`. `n` must be non-zero.
    fn index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.uniform() * n as f64) as usize).min(n - 1)
    }
}

impl<R: RandomStream + ?Sized> RandomStream for &mut R {
    fn uniform(&mut self) -> f64 {
        (**self).uniform()
    }

    fn gaussian(&mut self) -> f64 {
        (**self).gaussian()
    }

    fn index(&mut self, n: usize) -> usize {
        (**self).index(n)
    }
}

/// Bernoulli trial with probability `p`. Probabilities of exactly 0 or 1 are
/// decided without consuming a draw, so degenerate settings leave the stream
/// untouched.
pub fn coin<R: RandomStream + ?Sized>(rng: &mut R, p: f64) -> bool {
    if p <= 0.0 {
        false
    } else if p >= 1.0 {
        true
    } else {
        rng.uniform() < p
    }
}

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Deterministically mixes a parent seed with a sequence of tags into a child
/// seed. Used for per-run and per-cell stream splitting.
pub fn derive_seed(parent: u64, tags: &[u64]) -> u64 {
    tags.iter().fold(splitmix64(parent), |h, &t| splitmix64(h ^ splitmix64(t.wrapping_add(GOLDEN_GAMMA))))
}

/// Stable 64-bit FNV-1a hash, used to turn names into seed tags.
pub fn name_tag(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Seeded xoshiro256++ stream with a Box–Muller Gaussian transform.
#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    rng: Xoshiro256PlusPlus,
    spare: Option<f64>,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self { seed, rng: Xoshiro256PlusPlus::seed_from_u64(seed), spare: None }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// An independent stream derived from this source's seed and `index`.
    /// Does not advance `self`.
    pub fn child(&self, index: u64) -> RandomSource {
        RandomSource::new(derive_seed(self.seed, &[index]))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }
}

impl RandomStream for RandomSource {
    fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let r = libm::sqrt(-2.0 * libm::log(u1));
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.spare = Some(r * libm::sin(theta));
        r * libm::cos(theta)
    }
}

/// Replays scripted uniform and Gaussian values, then falls back to a
/// constant (if set) or a seeded [`RandomSource`].
#[derive(Debug, Clone)]
pub struct ScriptedSource {
    uniforms: VecDeque<f64>,
    gaussians: VecDeque<f64>,
    uniform_default: Option<f64>,
    gaussian_default: Option<f64>,
    fallback: RandomSource,
}

impl ScriptedSource {
    pub fn new(fallback_seed: u64) -> Self {
        Self {
            uniforms: VecDeque::new(),
            gaussians: VecDeque::new(),
            uniform_default: None,
            gaussian_default: None,
            fallback: RandomSource::new(fallback_seed),
        }
    }

    pub fn with_uniforms(mut self, values: impl IntoIterator<Item = f64>) -> Self {
        self.uniforms.extend(values);
        self
    }

    pub fn with_gaussians(mut self, values: impl IntoIterator<Item = f64>) -> Self {
        self.gaussians.extend(values);
        self
    }

    /// Every uniform draw past the script returns `v`.
    pub fn constant_uniform(mut self, v: f64) -> Self {
        self.uniform_default = Some(v);
        self
    }

    /// Every Gaussian draw past the script returns `v`.
    pub fn constant_gaussian(mut self, v: f64) -> Self {
        self.gaussian_default = Some(v);
        self
    }

    pub fn remaining_uniforms(&self) -> usize {
        self.uniforms.len()
    }

    pub fn remaining_gaussians(&self) -> usize {
        self.gaussians.len()
    }
}

impl RandomStream for ScriptedSource {
    fn uniform(&mut self) -> f64 {
        self.uniforms.pop_front().or(self.uniform_default).unwrap_or_else(|| self.fallback.uniform())
    }

    fn gaussian(&mut self) -> f64 {
        self.gaussians.pop_front().or(self.gaussian_default).unwrap_or_else(|| self.fallback.gaussian())
    }
}

/// Per-dimension step scale `d`, Gaussian standard deviation `σ` and Lévy
/// tail index `β`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepConfig<T> {
    d: Vec<T>,
    sigma: T,
    levy_beta: T,
}

impl<T: Scalar> StepConfig<T> {
    pub const DEFAULT_LEVY_BETA: f64 = 1.5;

    pub fn new(d: Vec<T>, sigma: T, levy_beta: T) -> Result<Self> {
        if d.iter().any(|v| !(*v >= T::zero()) || !v.is_finite()) {
            return Err(Error::config("step lengths must be finite and non-negative"));
        }
        if !(sigma > T::zero()) || !sigma.is_finite() {
            return Err(Error::config("sigma must be positive"));
        }
        if !(levy_beta > T::one() && levy_beta <= T::of(2.0)) {
            return Err(Error::config("levy_beta must lie in (1, 2]"));
        }
        Ok(Self { d, sigma, levy_beta })
    }

    /// Step lengths `d` with `σ = 1` and `β = 1.5`.
    pub fn gaussian(d: Vec<T>) -> Result<Self> {
        Self::new(d, T::one(), T::of(Self::DEFAULT_LEVY_BETA))
    }

    /// `d = ratio · (U − L)`, the usual way to tie the step to the box scale.
    pub fn from_space(space: &SearchSpace<T>, ratio: T, sigma: T) -> Result<Self> {
        let d = space.widths().into_iter().map(|w| w * ratio).collect();
        Self::new(d, sigma, T::of(Self::DEFAULT_LEVY_BETA))
    }

    pub fn with_levy_beta(self, levy_beta: T) -> Result<Self> {
        Self::new(self.d, self.sigma, levy_beta)
    }

    pub fn d(&self) -> &[T] {
        &self.d
    }

    pub fn sigma(&self) -> T {
        self.sigma
    }

    pub fn levy_beta(&self) -> T {
        self.levy_beta
    }

    pub fn dim(&self) -> usize {
        self.d.len()
    }
}

/// `L + (U − L) ∘ ε_u`, one uniform per axis. The result is clamped so that
/// rounding can never leave the box.
pub fn uniform_sample<T: Scalar, R: RandomStream + ?Sized>(space: &SearchSpace<T>, rng: &mut R) -> Vec<T> {
    space.lower().iter().zip(space.upper()).map(|(&l, &u)| uniform_coordinate(l, u, rng)).collect()
}

/// One axis of [`uniform_sample`].
pub fn uniform_coordinate<T: Scalar, R: RandomStream + ?Sized>(lower: T, upper: T, rng: &mut R) -> T {
    let eps = T::of(rng.uniform());
    (lower + (upper - lower) * eps).max(lower).min(upper)
}

/// `w_i = ε_i d_i` with `ε_i ~ N(0, σ²)` independent per axis.
pub fn gaussian_step<T: Scalar, R: RandomStream + ?Sized>(config: &StepConfig<T>, rng: &mut R) -> Vec<T> {
    let sigma = config.sigma.as_f64();
    config.d.iter().map(|&d| T::of(sigma * rng.gaussian()) * d).collect()
}

/// `x_old + s · w`. No bound handling.
pub fn local_walk<T: Scalar, R: RandomStream + ?Sized>(
    x_old: &[T],
    s: T,
    config: &StepConfig<T>,
    rng: &mut R,
) -> Result<Vec<T>> {
    check_dim(config.dim(), x_old.len())?;
    if !(s >= T::zero()) {
        return Err(Error::input("walk scale s must be non-negative"));
    }
    let w = gaussian_step(config, rng);
    Ok(x_old.iter().zip(w).map(|(&x, w)| x + s * w).collect())
}

/// `g* + w`: a Gaussian walk around the current best. No bound handling.
pub fn best_walk<T: Scalar, R: RandomStream + ?Sized>(
    g_best: &[T],
    config: &StepConfig<T>,
    rng: &mut R,
) -> Result<Vec<T>> {
    check_dim(config.dim(), g_best.len())?;
    let w = gaussian_step(config, rng);
    Ok(g_best.iter().zip(w).map(|(&g, w)| g + w).collect())
}

/// Mantegna's scale `σ_u` for tail index `beta`.
pub fn mantegna_sigma(beta: f64) -> f64 {
    let num = libm::tgamma(1.0 + beta) * libm::sin(std::f64::consts::PI * beta / 2.0);
    let den = libm::tgamma((1.0 + beta) / 2.0) * beta * libm::pow(2.0, (beta - 1.0) / 2.0);
    libm::pow(num / den, 1.0 / beta)
}

/// Heavy-tailed step per axis, `d_i · u / |v|^{1/β}` (Mantegna).
pub fn levy_step<T: Scalar, R: RandomStream + ?Sized>(config: &StepConfig<T>, rng: &mut R) -> Vec<T> {
    let beta = config.levy_beta.as_f64();
    let sigma_u = mantegna_sigma(beta);
    config
        .d
        .iter()
        .map(|&d| {
            let u = sigma_u * rng.gaussian();
            let v = rng.gaussian();
            T::of(u / libm::pow(v.abs(), 1.0 / beta)) * d
        })
        .collect()
}
