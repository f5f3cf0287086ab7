//! Benchmark harness: stopping criteria, trial orchestration, persistent
//! trial records, and rank-sum scoring.

mod ranking;

pub use ranking::{aggregate_report, rank_function, FunctionScores, RankingReport};

use std::collections::HashSet;
use std::fs::OpenOptions;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{run, DeParams, ExecutionModel, Problem};
use crate::functions::ObjectiveSpec;

/// Early-stop error threshold shared by the whole benchmark.
pub const TARGET_ERROR: f64 = 1e-8;

/// Evaluation budget per dimension: 100,000 x D gives the proposed
/// 5,000,000 at D=50 and 10,000,000 at D=100.
#[must_use]
pub fn default_budget(dim: usize) -> u64 {
    100_000 * dim as u64
}

/// When a run stops: on reaching `target_error` or exhausting `max_fes`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StoppingRule {
    pub max_fes: u64,
    pub target_error: f64,
}

impl StoppingRule {
    #[must_use]
    pub fn for_dimension(dim: usize) -> Self {
        StoppingRule {
            max_fes: default_budget(dim),
            target_error: TARGET_ERROR,
        }
    }

    #[must_use]
    pub fn with_budget(self, max_fes: u64) -> Self {
        StoppingRule { max_fes, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_fes == 0 {
            return Err(Error::config("evaluation budget must be positive"));
        }
        if self.target_error <= 0.0 {
            return Err(Error::config("target error must be positive"));
        }
        Ok(())
    }
}

/// Outcome of the per-generation termination check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    Continue,
    Solved,
    BudgetExhausted,
}

/// The solved check wins over the budget check when both hold.
#[must_use]
pub fn check_termination(best_error: f64, fe_count: u64, rule: &StoppingRule) -> Termination {
    if best_error <= rule.target_error {
        Termination::Solved
    } else if fe_count >= rule.max_fes {
        Termination::BudgetExhausted
    } else {
        Termination::Continue
    }
}

/// One benchmark trial outcome. Serialized as a single self-describing JSON
/// line, so result files stay parseable after interruption.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TrialRecord {
    pub algorithm_id: String,
    pub function_id: u8,
    pub dimension: usize,
    pub seed: u64,
    pub final_error: f64,
    pub fes_used: u64,
    /// Wall-clock around the optimization loop, millisecond resolution.
    pub wall_clock_seconds: f64,
    pub solved: bool,
}

impl TrialRecord {
    /// Identity of a trial within a results file.
    #[must_use]
    pub fn key(&self) -> (String, u8, usize, u64) {
        (
            self.algorithm_id.clone(),
            self.function_id,
            self.dimension,
            self.seed,
        )
    }
}

/// Append-only JSON-lines store for trial records.
#[derive(Debug)]
pub struct ResultsFile {
    path: PathBuf,
}

impl ResultsFile {
    #[must_use]
    pub fn new(path: impl Into<PathBuf>) -> Self {
        ResultsFile { path: path.into() }
    }

    #[must_use]
    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Strict load: every non-empty line must parse.
    pub fn load(&self) -> Result<Vec<TrialRecord>> {
        let text = std::fs::read_to_string(&self.path)?;
        let mut records = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let rec: TrialRecord = serde_json::from_str(line).map_err(|e| {
                Error::load(&self.path, lineno + 1, format!("bad record: {e}"))
            })?;
            records.push(rec);
        }
        Ok(records)
    }

    /// Resume load: a malformed *final* line (torn write from an interrupted
    /// run) is dropped with a warning; corruption anywhere else is an error.
    pub fn load_resumable(&self) -> Result<(Vec<TrialRecord>, Option<String>)> {
        if !self.path.exists() {
            return Ok((Vec::new(), None));
        }
        let text = std::fs::read_to_string(&self.path)?;
        let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        let mut records = Vec::with_capacity(lines.len());
        let mut warning = None;
        for (i, line) in lines.iter().enumerate() {
            match serde_json::from_str::<TrialRecord>(line) {
                Ok(rec) => records.push(rec),
                Err(e) if i + 1 == lines.len() => {
                    warning = Some(format!(
                        "{}: dropped torn final record ({e})",
                        self.path.display()
                    ));
                }
                Err(e) => {
                    return Err(Error::load(&self.path, i + 1, format!("bad record: {e}")))
                }
            }
        }
        Ok((records, warning))
    }

    /// Appends one record and flushes; each record is a full line, so an
    /// interrupt can tear at most the line being written.
    pub fn append(&self, record: &TrialRecord) -> Result<()> {
        if let Some(parent) = self.path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent)?;
            }
        }
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        let mut line = serde_json::to_string(record)?;
        line.push('\n');
        file.write_all(line.as_bytes())?;
        file.flush()?;
        Ok(())
    }
}

/// A named algorithm configuration competing in the benchmark.
#[derive(Debug, Clone)]
pub struct AlgorithmConfig {
    pub id: String,
    pub model: ExecutionModel,
    pub params: DeParams,
}

/// Whether trials may share cores.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialMode {
    /// One trial at a time; wall-clock numbers are meaningful.
    Timed,
    /// Trials run concurrently; only accuracy fields are meaningful.
    Accuracy,
}

/// A full trial plan: every algorithm runs `n_trials` seeded trials on every
/// function, with trial `t` using `base_seed + t` for all algorithms.
pub struct TrialPlan<'a> {
    pub algorithms: &'a [AlgorithmConfig],
    pub functions: &'a [ObjectiveSpec],
    pub n_trials: u32,
    pub base_seed: u64,
    /// Budget/target override; defaults to the per-dimension rule.
    pub rule: Option<StoppingRule>,
    pub mode: TrialMode,
}

/// Runs every (function, algorithm, trial) job in the plan, skipping jobs
/// already present in `sink` and appending each new record as it completes.
/// Returns the plan's records, completed and new alike, in plan order.
pub fn run_trials(plan: &TrialPlan<'_>, sink: Option<&ResultsFile>) -> Result<Vec<TrialRecord>> {
    if plan.n_trials == 0 {
        return Err(Error::config("n_trials must be at least 1"));
    }
    let existing: Vec<TrialRecord> = match sink {
        Some(s) => s.load_resumable()?.0,
        None => Vec::new(),
    };
    let done: HashSet<_> = existing.iter().map(TrialRecord::key).collect();

    struct Job<'p> {
        spec: &'p ObjectiveSpec,
        algorithm: &'p AlgorithmConfig,
        seed: u64,
    }

    let mut jobs = Vec::new();
    for spec in plan.functions {
        for algorithm in plan.algorithms {
            for t in 0..plan.n_trials {
                let seed = plan.base_seed + u64::from(t);
                let key = (
                    algorithm.id.clone(),
                    spec.function_id().get(),
                    spec.dim(),
                    seed,
                );
                if !done.contains(&key) {
                    jobs.push(Job {
                        spec,
                        algorithm,
                        seed,
                    });
                }
            }
        }
    }

    let sink = sink.map(Mutex::new);
    let run_job = |job: &Job<'_>| -> Result<TrialRecord> {
        let rule = plan
            .rule
            .unwrap_or_else(|| StoppingRule::for_dimension(job.spec.dim()));
        rule.validate()?;
        let record = run_single_trial(job.spec, job.algorithm, &rule, job.seed)?;
        if let Some(s) = &sink {
            s.lock()
                .map_err(|_| Error::runtime("results sink poisoned"))?
                .append(&record)?;
        }
        Ok(record)
    };

    let fresh: Vec<TrialRecord> = match plan.mode {
        TrialMode::Timed => jobs.iter().map(run_job).collect::<Result<_>>()?,
        TrialMode::Accuracy => jobs.par_iter().map(run_job).collect::<Result<_>>()?,
    };

    // Plan-order view over old and new records together.
    let mut by_key: std::collections::HashMap<_, TrialRecord> = existing
        .into_iter()
        .chain(fresh)
        .map(|r| (r.key(), r))
        .collect();
    let mut out = Vec::new();
    for spec in plan.functions {
        for algorithm in plan.algorithms {
            for t in 0..plan.n_trials {
                let key = (
                    algorithm.id.clone(),
                    spec.function_id().get(),
                    spec.dim(),
                    plan.base_seed + u64::from(t),
                );
                if let Some(rec) = by_key.remove(&key) {
                    out.push(rec);
                }
            }
        }
    }
    Ok(out)
}

/// Runs one seeded trial of one algorithm on one function.
pub fn run_single_trial(
    spec: &ObjectiveSpec,
    algorithm: &AlgorithmConfig,
    rule: &StoppingRule,
    seed: u64,
) -> Result<TrialRecord> {
    let objective = |x: &[f64]| spec.evaluate(x);
    let problem = Problem::new(&objective, spec.dim(), spec.bounds());
    let result = run(
        &algorithm.model,
        &problem,
        &algorithm.params,
        rule,
        seed,
        None,
    )?;
    Ok(TrialRecord {
        algorithm_id: algorithm.id.clone(),
        function_id: spec.function_id().get(),
        dimension: spec.dim(),
        seed,
        final_error: result.final_error,
        fes_used: result.fe_count,
        wall_clock_seconds: (result.wall_clock.as_secs_f64() * 1e3).round() / 1e3,
        solved: result.solved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn termination_examples() {
        let rule = StoppingRule {
            max_fes: 1_000,
            target_error: 1e-8,
        };
        assert_eq!(check_termination(5e-9, 100, &rule), Termination::Solved);
        assert_eq!(
            check_termination(1.0, 1_000, &rule),
            Termination::BudgetExhausted
        );
        assert_eq!(check_termination(1.0, 999, &rule), Termination::Continue);
    }

    #[test]
    fn default_budgets_match_the_proposal() {
        assert_eq!(StoppingRule::for_dimension(50).max_fes, 5_000_000);
        assert_eq!(StoppingRule::for_dimension(100).max_fes, 10_000_000);
        assert_eq!(StoppingRule::for_dimension(50).target_error, 1e-8);
    }

    #[test]
    fn stopping_rule_validation() {
        assert!(StoppingRule { max_fes: 0, target_error: 1e-8 }.validate().is_err());
        assert!(StoppingRule { max_fes: 1, target_error: 0.0 }.validate().is_err());
    }

    #[test]
    fn record_lines_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let file = ResultsFile::new(dir.path().join("r.jsonl"));
        let rec = TrialRecord {
            algorithm_id: "de".into(),
            function_id: 3,
            dimension: 50,
            seed: 7,
            final_error: 1.25e-3,
            fes_used: 50_000,
            wall_clock_seconds: 0.123,
            solved: false,
        };
        file.append(&rec).unwrap();
        file.append(&rec).unwrap();
        let loaded = file.load().unwrap();
        assert_eq!(loaded, vec![rec.clone(), rec]);
    }

    #[test]
    fn torn_final_line_is_dropped_on_resume_but_fatal_on_strict_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.jsonl");
        let file = ResultsFile::new(&path);
        let rec = TrialRecord {
            algorithm_id: "de".into(),
            function_id: 1,
            dimension: 10,
            seed: 1,
            final_error: 0.5,
            fes_used: 100,
            wall_clock_seconds: 0.01,
            solved: false,
        };
        file.append(&rec).unwrap();
        let mut raw = std::fs::read_to_string(&path).unwrap();
        raw.push_str("{\"algorithm_id\":\"de\",\"function_id\":1");
        std::fs::write(&path, raw).unwrap();
        let (records, warning) = file.load_resumable().unwrap();
        assert_eq!(records, vec![rec]);
        assert!(warning.is_some());
        assert!(file.load().is_err());
    }

    #[test]
    fn torn_middle_line_is_an_error_even_on_resume() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.jsonl");
        std::fs::write(&path, "{broken}\n{\"also\": \"broken\"}\n").unwrap();
        assert!(ResultsFile::new(&path).load_resumable().is_err());
    }

    #[test]
    fn trial_counts_seed_sharing_and_determinism() {
        use crate::de::ControlParams;
        use crate::exec::IndexSelection;
        use crate::functions::{generate_transform_data, FunctionId, ObjectiveSpec};

        let specs: Vec<ObjectiveSpec> = [1u8, 3]
            .iter()
            .map(|&id| {
                let fid = FunctionId::new(id).unwrap();
                ObjectiveSpec::new(fid, 6, generate_transform_data(5, fid, 6).unwrap()).unwrap()
            })
            .collect();
        let params = DeParams {
            control: ControlParams { f: 0.5, cr: 0.3, np: 8 },
            jde: false,
            index_selection: IndexSelection::Rejection,
        };
        let algorithms = [
            AlgorithmConfig {
                id: "a".into(),
                model: ExecutionModel::Sequential,
                params,
            },
            AlgorithmConfig {
                id: "b".into(),
                model: ExecutionModel::MasterSlave { workers: 2 },
                params,
            },
        ];
        let plan = TrialPlan {
            algorithms: &algorithms,
            functions: &specs,
            n_trials: 3,
            base_seed: 11,
            rule: Some(StoppingRule { max_fes: 160, target_error: 1e-8 }),
            mode: TrialMode::Accuracy,
        };
        let records = run_trials(&plan, None).unwrap();
        // 3 trials x 2 functions x 2 algorithms
        assert_eq!(records.len(), 12);

        // trial t shares seed base+t across algorithms, and the two
        // algorithms are the same trajectory under different models
        for f in [1u8, 3] {
            for t in 0..3u64 {
                let pair: Vec<&TrialRecord> = records
                    .iter()
                    .filter(|r| r.function_id == f && r.seed == 11 + t)
                    .collect();
                assert_eq!(pair.len(), 2);
                assert_eq!(pair[0].final_error.to_bits(), pair[1].final_error.to_bits());
            }
        }

        // rerunning the plan reproduces every error bit for bit
        let again = run_trials(&plan, None).unwrap();
        for (x, y) in records.iter().zip(&again) {
            assert_eq!(x.key(), y.key());
            assert_eq!(x.final_error.to_bits(), y.final_error.to_bits());
        }
    }
}
