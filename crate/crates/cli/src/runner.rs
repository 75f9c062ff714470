//! Parallel trial execution with results returned in trial order.

use rayon::prelude::*;
use rmtgaps_core::Error as CoreError;

use crate::CliError;

/// Trials that finished before the first failing one, plus that failure.
#[derive(Debug)]
pub struct Partial<T> {
    pub completed: Vec<T>,
    pub failed_trial: u64,
    pub error: CoreError,
}

/// Runs `f` on every trial index in `0..trials` on a pool of `workers`
/// threads. The output order is the trial order whatever the scheduling.
pub fn run_trials<T, F>(workers: usize, trials: u64, f: F) -> Result<Result<Vec<T>, Partial<T>>, CliError>
where
    T: Send,
    F: Fn(u64) -> rmtgaps_core::Result<T> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Internal(format!("cannot start worker pool: {e}")))?;
    let results: Vec<rmtgaps_core::Result<T>> = pool.install(|| (0..trials).into_par_iter().map(&f).collect());
    let mut completed = Vec::with_capacity(results.len());
    for (idx, r) in results.into_iter().enumerate() {
        match r {
            Ok(v) => completed.push(v),
            Err(error) => return Ok(Err(Partial { completed, failed_trial: idx as u64, error })),
        }
    }
    Ok(Ok(completed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_independent_of_workers() {
        let one = run_trials(1, 500, |t| Ok(t * t)).unwrap().unwrap();
        let four = run_trials(4, 500, |t| Ok(t * t)).unwrap().unwrap();
        assert_eq!(one, four);
        assert_eq!(one[499], 499 * 499);
    }

    #[test]
    fn stops_at_first_failure() {
        let r = run_trials(2, 10, |t| if t == 6 { Err(CoreError::NonConvergence { trial: Some(t) }) } else { Ok(t) })
            .unwrap();
        let p = r.unwrap_err();
        assert_eq!(p.failed_trial, 6);
        assert_eq!(p.completed, vec![0, 1, 2, 3, 4, 5]);
    }
}
