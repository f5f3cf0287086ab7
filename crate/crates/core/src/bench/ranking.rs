//! Rank-sum scoring across algorithms.
//!
//! For one function, all trials of all algorithms are ranked together: the
//! best trial receives the highest rank `n*m` and tied trials share the
//! average of their positions. Solved trials always outrank unsolved ones;
//! solved trials compare by wall-clock time (faster is better), unsolved
//! ones by final error (smaller is better). An algorithm's function score is
//! the sum of its trial ranks minus the correction term `n(n+1)/2`, and its
//! final score is the sum over functions.

use std::collections::BTreeMap;

use crate::bench::TrialRecord;
use crate::error::{Error, Result};

/// Per-function rank-sum scores, keyed by algorithm id.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionScores {
    pub function_id: u8,
    pub dimension: usize,
    /// Trials per algorithm (n).
    pub n_trials: usize,
    pub scores: BTreeMap<String, f64>,
}

/// How one trial sorts against the others.
#[derive(Debug, Clone, Copy, PartialEq)]
enum RankKey {
    /// Unsolved trials compare by final error; wall-clock is not consulted.
    Unsolved { error: f64 },
    /// Solved trials compare by wall-clock time.
    Solved { wall_clock: f64 },
}

impl RankKey {
    fn of(t: &TrialRecord) -> Self {
        if t.solved {
            RankKey::Solved {
                wall_clock: t.wall_clock_seconds,
            }
        } else {
            RankKey::Unsolved { error: t.final_error }
        }
    }

    /// Ascending quality: worst trial first, best last.
    fn cmp_quality(&self, other: &Self) -> std::cmp::Ordering {
        use RankKey::*;
        match (self, other) {
            (Unsolved { .. }, Solved { .. }) => std::cmp::Ordering::Less,
            (Solved { .. }, Unsolved { .. }) => std::cmp::Ordering::Greater,
            (Unsolved { error: a }, Unsolved { error: b }) => b.total_cmp(a),
            (Solved { wall_clock: a }, Solved { wall_clock: b }) => b.total_cmp(a),
        }
    }
}

/// Ranks all trials of one function and returns per-algorithm scores.
/// Every algorithm must contribute the same number of trials.
pub fn rank_function(trials: &[TrialRecord]) -> Result<FunctionScores> {
    if trials.is_empty() {
        return Err(Error::usage("cannot rank an empty trial set"));
    }
    let function_id = trials[0].function_id;
    let dimension = trials[0].dimension;
    if trials
        .iter()
        .any(|t| t.function_id != function_id || t.dimension != dimension)
    {
        return Err(Error::usage(
            "rank_function expects trials of a single function and dimension",
        ));
    }
    let mut per_algorithm: BTreeMap<&str, usize> = BTreeMap::new();
    for t in trials {
        *per_algorithm.entry(&t.algorithm_id).or_insert(0) += 1;
    }
    let n = *per_algorithm.values().next().unwrap();
    if per_algorithm.values().any(|&c| c != n) {
        return Err(Error::usage(format!(
            "unequal trial counts per algorithm: {per_algorithm:?}"
        )));
    }

    // Sort worst-first; positions are 1-based ranks, ties averaged.
    let mut order: Vec<usize> = (0..trials.len()).collect();
    order.sort_by(|&a, &b| {
        RankKey::of(&trials[a])
            .cmp_quality(&RankKey::of(&trials[b]))
            .then(a.cmp(&b)) // stable within ties; averaging erases the effect
    });

    let mut rank_of = vec![0.0f64; trials.len()];
    let mut at = 0;
    while at < order.len() {
        let key = RankKey::of(&trials[order[at]]);
        let mut end = at + 1;
        while end < order.len() && RankKey::of(&trials[order[end]]) == key {
            end += 1;
        }
        // positions at+1 ..= end (1-based); average them across the tie run
        let avg = (at + 1 + end) as f64 / 2.0;
        for &idx in &order[at..end] {
            rank_of[idx] = avg;
        }
        at = end;
    }

    let correction = (n * (n + 1)) as f64 / 2.0;
    let mut scores: BTreeMap<String, f64> = per_algorithm
        .keys()
        .map(|&a| (a.to_string(), -correction))
        .collect();
    for (t, &rank) in trials.iter().zip(&rank_of) {
        *scores.get_mut(&t.algorithm_id).unwrap() += rank;
    }

    Ok(FunctionScores {
        function_id,
        dimension,
        n_trials: n,
        scores,
    })
}

/// The cross-function report: per-function scores and ordinal ranks plus
/// summed final scores, laid out one row per algorithm and one column per
/// function with the final rank in the last column.
#[derive(Debug, Clone)]
pub struct RankingReport {
    pub algorithms: Vec<String>,
    /// (function_id, dimension) column order.
    pub functions: Vec<(u8, usize)>,
    pub n_trials: usize,
    /// `scores[f][algorithm]` aligned with `functions`.
    pub per_function_scores: Vec<BTreeMap<String, f64>>,
    /// Ordinal rank per function (1 = best score; ties averaged).
    pub per_function_ranks: Vec<BTreeMap<String, f64>>,
    pub final_scores: BTreeMap<String, f64>,
    pub final_ranks: BTreeMap<String, f64>,
}

/// Ordinal ranks (1 = best) from scores, averaging ties.
fn ordinal_ranks(scores: &BTreeMap<String, f64>) -> BTreeMap<String, f64> {
    let mut order: Vec<(&String, f64)> = scores.iter().map(|(a, &s)| (a, s)).collect();
    order.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(b.0)));
    let mut ranks = BTreeMap::new();
    let mut at = 0;
    while at < order.len() {
        let mut end = at + 1;
        while end < order.len() && order[end].1 == order[at].1 {
            end += 1;
        }
        let avg = (at + 1 + end) as f64 / 2.0;
        for item in &order[at..end] {
            ranks.insert(item.0.clone(), avg);
        }
        at = end;
    }
    ranks
}

/// Sums per-function scores into the final report. Every function must
/// carry scores for the same algorithm set.
pub fn aggregate_report(per_function: &[FunctionScores]) -> Result<RankingReport> {
    if per_function.is_empty() {
        return Err(Error::usage("cannot aggregate an empty score set"));
    }
    let algorithms: Vec<String> = per_function[0].scores.keys().cloned().collect();
    for f in per_function {
        let keys: Vec<String> = f.scores.keys().cloned().collect();
        if keys != algorithms {
            return Err(Error::usage(format!(
                "function F{:02} scores a different algorithm set",
                f.function_id
            )));
        }
    }

    let mut final_scores: BTreeMap<String, f64> =
        algorithms.iter().map(|a| (a.clone(), 0.0)).collect();
    let mut per_function_scores = Vec::with_capacity(per_function.len());
    let mut per_function_ranks = Vec::with_capacity(per_function.len());
    for f in per_function {
        for (a, s) in &f.scores {
            *final_scores.get_mut(a).unwrap() += s;
        }
        per_function_scores.push(f.scores.clone());
        per_function_ranks.push(ordinal_ranks(&f.scores));
    }
    let final_ranks = ordinal_ranks(&final_scores);

    Ok(RankingReport {
        algorithms,
        functions: per_function
            .iter()
            .map(|f| (f.function_id, f.dimension))
            .collect(),
        n_trials: per_function[0].n_trials,
        per_function_scores,
        per_function_ranks,
        final_scores,
        final_ranks,
    })
}

impl RankingReport {
    /// CSV of per-function ordinal ranks with the final rank last.
    #[must_use]
    pub fn ranks_csv(&self) -> String {
        let mut out = String::from("algorithm");
        for (id, _) in &self.functions {
            out.push_str(&format!(",F{id:02}"));
        }
        out.push_str(",final_rank\n");
        for a in &self.algorithms {
            out.push_str(a);
            for ranks in &self.per_function_ranks {
                out.push_str(&format!(",{}", fmt_rank(ranks[a])));
            }
            out.push_str(&format!(",{}\n", fmt_rank(self.final_ranks[a])));
        }
        out
    }

    /// CSV of per-function scores with the final score last.
    #[must_use]
    pub fn scores_csv(&self) -> String {
        let mut out = String::from("algorithm");
        for (id, _) in &self.functions {
            out.push_str(&format!(",F{id:02}"));
        }
        out.push_str(",final_score\n");
        for a in &self.algorithms {
            out.push_str(a);
            for scores in &self.per_function_scores {
                out.push_str(&format!(",{}", scores[a]));
            }
            out.push_str(&format!(",{}\n", self.final_scores[a]));
        }
        out
    }

    /// Human-readable rank table: one row per algorithm, one column per
    /// function, final rank in the last column.
    #[must_use]
    pub fn render_table(&self) -> String {
        let name_width = self
            .algorithms
            .iter()
            .map(String::len)
            .max()
            .unwrap_or(9)
            .max("algorithm".len());
        let mut out = format!("{:name_width$}", "algorithm");
        for (id, _) in &self.functions {
            out.push_str(&format!("  {:>5}", format!("F{id:02}")));
        }
        out.push_str("   rank\n");
        for a in &self.algorithms {
            out.push_str(&format!("{a:name_width$}"));
            for ranks in &self.per_function_ranks {
                out.push_str(&format!("  {:>5}", fmt_rank(ranks[a])));
            }
            out.push_str(&format!("  {:>5}\n", fmt_rank(self.final_ranks[a])));
        }
        out
    }
}

fn fmt_rank(r: f64) -> String {
    if r.fract() == 0.0 {
        format!("{}", r as i64)
    } else {
        format!("{r:.1}")
    }
}
