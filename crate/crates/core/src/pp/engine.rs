use std::collections::HashMap;
use std::hash::Hash;

use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::Serialize;

use super::module::{
    cocycle_system, ext1_dim, hom_dim, hom_system, nullity, plus_orbit, random_extension, random_hom,
    restricted_profile, sample_generic, system_size, PiModule,
};
use super::tmatrix::t_matrix;
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, DEFAULT_PRIME};
use crate::multiseg::Multisegment;
use crate::quiver::{multisegment_from_ranks, orbit_of};

/// A randomized answer with the number of trials behind it and an a-priori
/// upper bound on the probability that it differs from the generic value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RandomizedVerdict<T> {
    pub value: T,
    pub trials: usize,
    pub error_bound: f64,
}

impl<T> RandomizedVerdict<T> {
    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> RandomizedVerdict<U> {
        RandomizedVerdict { value: f(self.value), trials: self.trials, error_bound: self.error_bound }
    }

    fn exact(value: T) -> Self {
        RandomizedVerdict { value, trials: 0, error_bound: 0.0 }
    }
}

/// Field, trial count and seed shared by every randomized computation.
///
/// Trial `t` draws from the ChaCha8 stream `t` of `seed`, so results do not
/// depend on how trials are scheduled across threads.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Engine {
    pub field: Field,
    pub trials: usize,
    pub seed: u64,
}

impl Default for Engine {
    fn default() -> Self {
        Engine { field: Field::default(), trials: 5, seed: 0 }
    }
}

/// Per-trial failure probability for a degree bound `degree` over the field.
fn epsilon(field: Field, degree: usize) -> f64 {
    (degree.max(1) as f64 / field.prime() as f64).min(1.0)
}

/// All trials non-generic.
fn min_bound(eps: f64, trials: usize) -> f64 {
    eps.powi(trials as i32)
}

/// At least a strict majority of trials non-generic.
fn modal_bound(eps: f64, trials: usize) -> f64 {
    let majority = trials / 2 + 1;
    let mut total = 0.0;
    let mut binom = 1.0f64;
    for k in 0..=trials {
        if k > 0 {
            binom = binom * (trials - k + 1) as f64 / k as f64;
        }
        if k >= majority {
            total += binom * eps.powi(k as i32);
        }
    }
    total.min(1.0)
}

fn modal<T: Clone + Eq + Hash>(values: &[T]) -> Result<T> {
    let mut counts: HashMap<&T, usize> = HashMap::new();
    for v in values {
        *counts.entry(v).or_default() += 1;
    }
    // first occurrence wins ties in counting order; a strict majority is unique anyway
    let best = values.iter().max_by_key(|v| counts[v]).expect("at least one trial");
    if 2 * counts[best] > values.len() {
        Ok(best.clone())
    } else {
        Err(Error::NoMajority { trials: values.len(), distinct: counts.len() })
    }
}

fn same_ambient(m: &Multisegment, n: &Multisegment) -> Result<()> {
    if m.n() != n.n() {
        return Err(Error::AmbientMismatch(m.n(), n.n()));
    }
    Ok(())
}

impl Engine {
    pub fn new(prime: u64, trials: usize, seed: u64) -> Result<Self> {
        if trials == 0 {
            return Err(Error::precondition("at least one trial is required"));
        }
        Ok(Engine { field: Field::new(prime)?, trials, seed })
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Engine { seed, ..self }
    }

    pub fn with_trials(self, trials: usize) -> Self {
        Engine { trials: trials.max(1), ..self }
    }

    pub fn default_prime() -> u64 {
        DEFAULT_PRIME
    }

    pub fn trial_rng(&self, trial: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial as u64);
        rng
    }

    /// Runs `f` once per trial in parallel; results are in trial order.
    pub fn run_trials<T: Send>(&self, f: impl Fn(&mut ChaCha8Rng) -> Result<T> + Sync) -> Result<Vec<T>> {
        (0..self.trials).into_par_iter().map(|t| f(&mut self.trial_rng(t))).collect()
    }

    /// Points of the two components; a single shared point when `m == n`.
    fn sample_pair(&self, m: &Multisegment, n: &Multisegment, rng: &mut ChaCha8Rng, shared: bool) -> (PiModule, PiModule) {
        let x1 = sample_generic(m, self.field, rng).module;
        let x2 = if shared && m == n { x1.clone() } else { sample_generic(n, self.field, rng).module };
        (x1, x2)
    }

    fn min_verdict(&self, samples: Vec<(usize, usize)>) -> RandomizedVerdict<usize> {
        let value = samples.iter().map(|s| s.0).min().expect("at least one trial");
        let degree = samples.iter().map(|s| s.1).max().unwrap_or(0);
        RandomizedVerdict { value, trials: self.trials, error_bound: min_bound(epsilon(self.field, degree), self.trials) }
    }

    fn modal_verdict<T: Clone + Eq + Hash>(&self, samples: Vec<(T, usize)>) -> Result<RandomizedVerdict<T>> {
        let values: Vec<T> = samples.iter().map(|s| s.0.clone()).collect();
        let degree = samples.iter().map(|s| s.1).max().unwrap_or(0);
        let value = modal(&values)?;
        Ok(RandomizedVerdict { value, trials: self.trials, error_bound: modal_bound(epsilon(self.field, degree), self.trials) })
    }

    /// `dim Hom_Π` between generic points; identical arguments share one point.
    pub fn hom_pi(&self, m: &Multisegment, n: &Multisegment) -> Result<RandomizedVerdict<usize>> {
        same_ambient(m, n)?;
        let samples = self.run_trials(|rng| {
            let (x1, x2) = self.sample_pair(m, n, rng, true);
            Ok((hom_dim(&x1, &x2), system_size(&x1, &x2)))
        })?;
        Ok(self.min_verdict(samples))
    }

    /// `dim Ext¹_Π` between generic points; identical arguments share one point.
    pub fn ext1_pi(&self, m: &Multisegment, n: &Multisegment) -> Result<RandomizedVerdict<usize>> {
        same_ambient(m, n)?;
        let samples = self.run_trials(|rng| {
            let (x1, x2) = self.sample_pair(m, n, rng, true);
            Ok((ext1_dim(&x1, &x2), 2 * system_size(&x1, &x2)))
        })?;
        Ok(self.min_verdict(samples))
    }

    pub fn is_rigid(&self, m: &Multisegment) -> Result<RandomizedVerdict<bool>> {
        Ok(self.ext1_pi(m, m)?.map(|e| e == 0))
    }

    /// Vanishing of `Ext¹_Π` between independent generic points.
    pub fn strongly_commute(&self, m: &Multisegment, n: &Multisegment) -> Result<RandomizedVerdict<bool>> {
        same_ambient(m, n)?;
        let samples = self.run_trials(|rng| {
            let (x1, x2) = self.sample_pair(m, n, rng, false);
            Ok((ext1_dim(&x1, &x2), 2 * system_size(&x1, &x2)))
        })?;
        Ok(self.min_verdict(samples).map(|e| e == 0))
    }

    /// Parameter of the generic extension with quotient in the component of
    /// `m` and submodule in the component of `n`.
    pub fn star(&self, m: &Multisegment, n: &Multisegment) -> Result<RandomizedVerdict<Multisegment>> {
        same_ambient(m, n)?;
        if m.is_empty() || n.is_empty() {
            return Ok(RandomizedVerdict::exact(m.sum(n)));
        }
        let samples = self.run_trials(|rng| {
            let (x1, x2) = self.sample_pair(m, n, rng, false);
            let x = random_extension(&x1, &x2, rng);
            let total = x.dims().total();
            Ok((plus_orbit(&x)?, system_size(&x1, &x2) + x.n() * total))
        })?;
        self.modal_verdict(samples)
    }

    pub fn commute(&self, m: &Multisegment, n: &Multisegment) -> Result<RandomizedVerdict<bool>> {
        let a = self.star(m, n)?;
        let b = self.star(n, m)?;
        Ok(RandomizedVerdict {
            value: a.value == b.value,
            trials: self.trials,
            error_bound: (a.error_bound + b.error_bound).min(1.0),
        })
    }

    /// Finds `n` with `star(m1, n) = mc` from a random map onto a point of
    /// the component of `m1`; `None` when no trial yields a surjection.
    pub fn factor(&self, mc: &Multisegment, m1: &Multisegment) -> Result<RandomizedVerdict<Option<Multisegment>>> {
        same_ambient(mc, m1)?;
        if !self.is_rigid(m1)?.value {
            return Err(Error::precondition(format!("{m1} is not rigid")));
        }
        self.factor_unchecked(mc, m1)
    }

    /// `factor` without the rigidity check on `m1`.
    pub fn factor_unchecked(&self, mc: &Multisegment, m1: &Multisegment) -> Result<RandomizedVerdict<Option<Multisegment>>> {
        same_ambient(mc, m1)?;
        if !m1.grdim().fits_in(&mc.grdim()) {
            return Ok(RandomizedVerdict::exact(None));
        }
        let samples = self.run_trials(|rng| {
            let x = sample_generic(mc, self.field, rng).module;
            let x1 = sample_generic(m1, self.field, rng).module;
            let phi = random_hom(&x, &x1, rng);
            let size = system_size(&x, &x1) + x.n() * x.dims().total();
            let surjective = phi.iter().zip(&x1.dims().counts).all(|(p, &d)| p.rank() == d);
            if !surjective {
                return Ok((None, size));
            }
            let kernel: Vec<Matrix> = phi
                .iter()
                .zip(&x.dims().counts)
                .map(|(p, &d)| Matrix::from_columns(self.field, d, &p.nullspace()))
                .collect();
            let profile = restricted_profile(&x.t_plus, &kernel);
            Ok((Some(multisegment_from_ranks(&profile)?), size))
        })?;
        let degree = samples.iter().map(|s| s.1).max().unwrap_or(0);
        let eps = epsilon(self.field, degree);
        let found: Vec<Multisegment> = samples.iter().filter_map(|s| s.0.clone()).collect();
        if found.is_empty() {
            return Ok(RandomizedVerdict { value: None, trials: self.trials, error_bound: min_bound(eps, self.trials) });
        }
        let value = modal(&found)?;
        Ok(RandomizedVerdict { value: Some(value), trials: self.trials, error_bound: modal_bound(eps, self.trials) })
    }

    /// Parameter of the component read through `T₋`.
    pub fn mw(&self, m: &Multisegment) -> Result<RandomizedVerdict<Multisegment>> {
        let samples = self.run_trials(|rng| {
            let x = sample_generic(m, self.field, rng).module;
            Ok((orbit_of(&x.t_minus)?, x.n() * x.dims().total()))
        })?;
        self.modal_verdict(samples)
    }

    /// Corank of the 𝒯-matrix `𝒯_{M;N}`, which computes `Hom_Π(M, N)`.
    /// Identical arguments share one point, as in `hom_pi`.
    pub fn hom_pi_via_t_matrix(&self, m: &Multisegment, n: &Multisegment) -> Result<RandomizedVerdict<usize>> {
        same_ambient(m, n)?;
        let samples = self.run_trials(|rng| {
            let a = sample_generic(m, self.field, rng);
            let b = if m == n { a.clone() } else { sample_generic(n, self.field, rng) };
            let t = t_matrix(&a, &b);
            let size = t.matrix.rows().min(t.matrix.cols());
            Ok((nullity(&t.matrix), size))
        })?;
        Ok(self.min_verdict(samples))
    }

    /// Dimension of the degree-0 graded maps `V(m) -> V(n)`.
    pub fn graded_hom_dim(m: &Multisegment, n: &Multisegment) -> usize {
        m.grdim().counts.iter().zip(&n.grdim().counts).map(|(a, b)| a * b).sum()
    }
}

/// Hom and Ext¹ between two specific points.
pub fn hom_ext_at(x1: &PiModule, x2: &PiModule) -> (usize, usize) {
    let hom = nullity(&hom_system(x1, x2).matrix);
    let z = nullity(&cocycle_system(x1, x2).matrix);
    let graded: usize = x1.dims().counts.iter().zip(&x2.dims().counts).map(|(a, b)| a * b).sum();
    (hom, z + hom - graded)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        let f = Field::default();
        let eps = epsilon(f, 10_000);
        assert!(min_bound(eps, 5) < 2f64.powi(-40));
        assert!(modal_bound(eps, 5) < 2f64.powi(-40));
        assert_eq!(modal_bound(1.0, 1), 1.0);
    }

    #[test]
    fn voting() {
        assert_eq!(modal(&[1, 2, 1]).unwrap(), 1);
        assert!(matches!(modal(&[1, 2, 1, 2]), Err(Error::NoMajority { trials: 4, distinct: 2 })));
        assert_eq!(modal(&[7]).unwrap(), 7);
    }
}
