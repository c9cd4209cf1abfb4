//! Ordered reductions that give bit-identical results serially and in parallel.

use rayon::prelude::*;

use crate::clifford::Multivector;

/// Terms are summed in fixed-size chunks, and chunk totals are added in index
/// order, whichever mode runs.
const CHUNK: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

/// `Σ_{i < len} term(i)` starting from `zero`.
pub fn sum_multivectors<F>(exec: Execution, len: usize, zero: Multivector, term: F) -> Multivector
where
    F: Fn(usize) -> Multivector + Sync,
{
    let chunk_sum = |c: usize| {
        let start = c * CHUNK;
        let end = (start + CHUNK).min(len);
        (start..end).fold(zero, |acc, i| acc + term(i))
    };
    let chunks = len.div_ceil(CHUNK);
    let partials: Vec<Multivector> = match exec {
        Execution::Sequential => (0..chunks).map(chunk_sum).collect(),
        Execution::Parallel => (0..chunks).into_par_iter().map(chunk_sum).collect(),
    };
    partials.into_iter().fold(zero, |acc, p| acc + p)
}

/// Real-valued counterpart of [`sum_multivectors`].
pub fn sum_reals<F>(exec: Execution, len: usize, term: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let chunk_sum = |c: usize| {
        let start = c * CHUNK;
        let end = (start + CHUNK).min(len);
        (start..end).fold(0.0, |acc, i| acc + term(i))
    };
    let chunks = len.div_ceil(CHUNK);
    let partials: Vec<f64> = match exec {
        Execution::Sequential => (0..chunks).map(chunk_sum).collect(),
        Execution::Parallel => (0..chunks).into_par_iter().map(chunk_sum).collect(),
    };
    partials.into_iter().sum()
}

/// Maximum of `value(i)`; order-independent.
pub fn max_over<F>(exec: Execution, len: usize, value: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    match exec {
        Execution::Sequential => (0..len).map(value).fold(0.0, f64::max),
        Execution::Parallel => (0..len).into_par_iter().map(value).reduce(|| 0.0, f64::max),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Signature;

    #[test]
    fn modes_agree_bitwise() {
        let s = Signature::negative(2).unwrap();
        let term = |i: usize| Multivector::scalar(s, (i as f64 * 0.37).sin() / (1.0 + i as f64));
        let a = sum_multivectors(Execution::Sequential, 10_007, Multivector::zero(s), term);
        let b = sum_multivectors(Execution::Parallel, 10_007, Multivector::zero(s), term);
        assert_eq!(a.coeffs(), b.coeffs());
        let f = |i: usize| 1.0 / (1.0 + i as f64).powi(2);
        assert_eq!(
            sum_reals(Execution::Sequential, 5000, f).to_bits(),
            sum_reals(Execution::Parallel, 5000, f).to_bits()
        );
    }
}
