//! Seeded generation of exact rational parameters that avoid the
//! degenerate loci of the kernels.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use num_traits::Zero;

use crate::exact::ExactScalar;

/// Largest `|k|` such that `x = y q^{2k}` is rejected between two drawn
/// parameters.
pub const GUARD_SHIFT: i64 = 2;

#[derive(Clone, Debug)]
enum Guard {
    /// Reject `x = p s` for a shift factor `s`.
    Ratio(Vec<ExactScalar>),
    /// Reject `x = p + s`.
    Offset(Vec<ExactScalar>),
}

/// Deterministic source of bounded rationals.
///
/// Every value from [`Sampler::fresh`] is nonzero and differs from every
/// earlier fresh value by a factor outside `{q^{2k} : |k| <= GUARD_SHIFT}`,
/// so no kernel, shifted kernel or Izergin determinant built from them hits
/// a pole or a zero of `h`. The additive sampler does the same for
/// differences `k c`, which is what the invariant kernels and the slopes of
/// the scaling path need.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
    bound: i64,
    guard: Guard,
    pool: Vec<ExactScalar>,
}

impl Sampler {
    /// `bound` limits the numerator magnitude and the denominator.
    pub fn new(seed: u64, bound: i64, q: &ExactScalar) -> Self {
        let q2 = q * q;
        let mut shifts = Vec::new();
        let mut p = ExactScalar::from_integer(1.into());
        for _ in 0..=GUARD_SHIFT {
            shifts.push(p.clone());
            shifts.push(ExactScalar::from_integer(1.into()) / &p);
            p *= &q2;
        }
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            bound: bound.max(2),
            guard: Guard::Ratio(shifts),
            pool: Vec::new(),
        }
    }

    /// Guards differences instead of ratios: `x - p` avoids `k c` for
    /// `|k| <= GUARD_SHIFT`.
    pub fn additive(seed: u64, bound: i64, c: &ExactScalar) -> Self {
        let shifts = (-GUARD_SHIFT..=GUARD_SHIFT)
            .map(|k| c * ExactScalar::from_integer(k.into()))
            .collect();
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            bound: bound.max(2),
            guard: Guard::Offset(shifts),
            pool: Vec::new(),
        }
    }

    /// A nonzero rational with no guard applied.
    pub fn scalar(&mut self) -> ExactScalar {
        loop {
            let n: i64 = self.rng.gen_range(-self.bound..=self.bound);
            let d: i64 = self.rng.gen_range(1..=self.bound);
            if n != 0 {
                return ExactScalar::new(n.into(), d.into());
            }
        }
    }

    /// A parameter in general position with respect to all earlier ones.
    pub fn fresh(&mut self) -> ExactScalar {
        loop {
            let x = self.scalar();
            if self.admissible(&x) {
                self.pool.push(x.clone());
                return x;
            }
        }
    }

    pub fn fresh_vec(&mut self, n: usize) -> Vec<ExactScalar> {
        (0..n).map(|_| self.fresh()).collect()
    }

    /// Registers an externally chosen parameter with the guard.
    pub fn reserve(&mut self, x: ExactScalar) {
        self.pool.push(x);
    }

    fn admissible(&self, x: &ExactScalar) -> bool {
        !x.is_zero()
            && self.pool.iter().all(|p| match &self.guard {
                Guard::Ratio(shifts) => shifts.iter().all(|s| &(p * s) != x),
                Guard::Offset(shifts) => shifts.iter().all(|s| &(p + s) != x),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn seeded_draws_repeat() {
        let mut a = Sampler::new(7, 40, &int(2));
        let mut b = Sampler::new(7, 40, &int(2));
        assert_eq!(a.fresh_vec(10), b.fresh_vec(10));
    }

    #[test]
    fn fresh_values_avoid_shifted_coincidences() {
        let q = int(2);
        let mut s = Sampler::new(1, 6, &q);
        let xs = s.fresh_vec(12);
        for (i, x) in xs.iter().enumerate() {
            for y in &xs[i + 1..] {
                for k in [1, 4, 16] {
                    let k = ExactScalar::from_integer(k.into());
                    assert!(x != &(y * &k) && y != &(x * &k));
                }
            }
        }
    }

    #[test]
    fn additive_values_avoid_shifted_differences() {
        let c = ExactScalar::new(1.into(), 2.into());
        let mut s = Sampler::additive(3, 4, &c);
        let xs = s.fresh_vec(10);
        for (i, x) in xs.iter().enumerate() {
            for y in &xs[i + 1..] {
                for k in -2..=2 {
                    assert_ne!(&(y + &c * ExactScalar::from_integer(k.into())), x);
                }
            }
        }
    }
}
