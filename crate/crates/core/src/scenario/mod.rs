//! Multi-issue negotiation scenarios with linear-additive preference profiles,
//! plus the reference solutions (Nash point, Pareto frontier) and scenario
//! features computed over the full outcome space.

mod gen;
mod io;

pub use gen::{generate_scenario, GeneratorSpec, UtilityShape};
pub use io::{load_scenario, save_scenario};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Hard cap on outcome-space enumeration unless a caller raises it.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// Tolerance for the issue-weight sum invariant.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

/// One negotiable issue: a named, ordered set of categorical value labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Issue {
    pub name: String,
    pub values: Vec<String>,
}

impl Issue {
    pub fn new(name: impl Into<String>, values: Vec<String>) -> Result<Self> {
        let issue = Issue { name: name.into(), values };
        issue.validate()?;
        Ok(issue)
    }

    fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::Validation(format!(
                "issue '{}' has no values (|V_i| >= 1 required)",
                self.name
            )));
        }
        if self.values.len() > u16::MAX as usize {
            return Err(Error::Structural(format!(
                "issue '{}' has {} values; at most {} supported",
                self.name,
                self.values.len(),
                u16::MAX
            )));
        }
        for (i, v) in self.values.iter().enumerate() {
            if self.values[..i].iter().any(|w| w == v) {
                return Err(Error::Validation(format!(
                    "issue '{}' has duplicate value label '{}'",
                    self.name, v
                )));
            }
        }
        Ok(())
    }
}

/// A point in the outcome space: one value index per issue.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Outcome(pub Vec<u16>);

impl Outcome {
    pub fn values(&self) -> &[u16] {
        &self.0
    }
}

/// Linear-additive preference profile: issue weights summing to 1 and a value
/// evaluation in [0,1] per issue value, with each issue's best value at 1.0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreferenceProfile {
    pub weights: Vec<f64>,
    pub evals: Vec<Vec<f64>>,
}

impl PreferenceProfile {
    pub fn new(weights: Vec<f64>, evals: Vec<Vec<f64>>) -> Result<Self> {
        let profile = PreferenceProfile { weights, evals };
        profile.validate(None)?;
        Ok(profile)
    }

    /// Check profile invariants; when `issues` is given, also check that the
    /// profile matches the issue structure.
    pub fn validate(&self, issues: Option<&[Issue]>) -> Result<()> {
        if self.weights.len() != self.evals.len() {
            return Err(Error::Structural(format!(
                "profile has {} weights but {} eval rows",
                self.weights.len(),
                self.evals.len()
            )));
        }
        if self.weights.is_empty() {
            return Err(Error::Validation("profile has no issues".into()));
        }
        let sum: f64 = self.weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(Error::Validation(format!(
                "issue weights sum to {sum}, expected 1 within {WEIGHT_SUM_TOLERANCE}"
            )));
        }
        for (i, w) in self.weights.iter().enumerate() {
            if !(0.0..=1.0).contains(w) {
                return Err(Error::Validation(format!(
                    "issue {i} weight {w} outside [0,1]"
                )));
            }
        }
        for (i, row) in self.evals.iter().enumerate() {
            if row.is_empty() {
                return Err(Error::Validation(format!("issue {i} has no evaluations")));
            }
            if row.iter().any(|e| !(0.0..=1.0).contains(e)) {
                return Err(Error::Validation(format!(
                    "issue {i} has an evaluation outside [0,1]"
                )));
            }
            if !row.iter().any(|e| *e == 1.0) {
                return Err(Error::Validation(format!(
                    "issue {i} has no value with evaluation exactly 1.0"
                )));
            }
        }
        if let Some(issues) = issues {
            if issues.len() != self.weights.len() {
                return Err(Error::Structural(format!(
                    "profile covers {} issues but scenario has {}",
                    self.weights.len(),
                    issues.len()
                )));
            }
            for (i, (issue, row)) in issues.iter().zip(&self.evals).enumerate() {
                if issue.values.len() != row.len() {
                    return Err(Error::Structural(format!(
                        "issue {i} ('{}') has {} values but profile has {} evaluations",
                        issue.name,
                        issue.values.len(),
                        row.len()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Linear-additive utility of an outcome under this profile.
    pub fn utility(&self, outcome: &Outcome) -> Result<f64> {
        let values = outcome.values();
        if values.len() != self.weights.len() {
            return Err(Error::Structural(format!(
                "outcome has {} issues, profile has {}",
                values.len(),
                self.weights.len()
            )));
        }
        for (i, &v) in values.iter().enumerate() {
            if v as usize >= self.evals[i].len() {
                return Err(Error::Structural(format!(
                    "outcome value index {v} out of range for issue {i} ({} values)",
                    self.evals[i].len()
                )));
            }
        }
        Ok(self.utility_raw(values))
    }

    /// Unchecked fast path for hot loops; callers guarantee the outcome shape.
    #[inline]
    pub(crate) fn utility_raw(&self, values: &[u16]) -> f64 {
        debug_assert_eq!(values.len(), self.weights.len());
        self.weights
            .iter()
            .zip(values)
            .enumerate()
            .map(|(i, (w, &v))| w * self.evals[i][v as usize])
            .sum()
    }
}

/// A negotiation scenario: shared issues and one preference profile per side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub id: String,
    pub issues: Vec<Issue>,
    pub profile_self: PreferenceProfile,
    pub profile_opponent: PreferenceProfile,
}

/// Which side's profile an operation should read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Perspective {
    Own,
    Opponent,
}

impl Scenario {
    pub fn new(
        id: impl Into<String>,
        issues: Vec<Issue>,
        profile_self: PreferenceProfile,
        profile_opponent: PreferenceProfile,
    ) -> Result<Self> {
        let scenario = Scenario { id: id.into(), issues, profile_self, profile_opponent };
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn validate(&self) -> Result<()> {
        if self.issues.is_empty() {
            return Err(Error::Validation(format!(
                "scenario '{}' has no issues",
                self.id
            )));
        }
        for issue in &self.issues {
            issue.validate()?;
        }
        self.profile_self.validate(Some(&self.issues))?;
        self.profile_opponent.validate(Some(&self.issues))?;
        Ok(())
    }

    pub fn profile(&self, perspective: Perspective) -> &PreferenceProfile {
        match perspective {
            Perspective::Own => &self.profile_self,
            Perspective::Opponent => &self.profile_opponent,
        }
    }

    pub fn issue_sizes(&self) -> Vec<u16> {
        self.issues.iter().map(|i| i.values.len() as u16).collect()
    }

    /// |Ω| as an unbounded count (product of issue sizes).
    pub fn outcome_count(&self) -> u128 {
        self.issues
            .iter()
            .map(|i| i.values.len() as u128)
            .product()
    }
}

/// Lexicographic iterator over the full outcome space.
pub struct OutcomeIter {
    sizes: Vec<u16>,
    next: Option<Vec<u16>>,
}

impl Iterator for OutcomeIter {
    type Item = Outcome;

    fn next(&mut self) -> Option<Outcome> {
        let current = self.next.clone()?;
        // Advance like an odometer, most-significant digit first.
        let mut vals = current.clone();
        let mut i = vals.len();
        loop {
            if i == 0 {
                self.next = None;
                break;
            }
            i -= 1;
            if vals[i] + 1 < self.sizes[i] {
                vals[i] += 1;
                for v in vals.iter_mut().skip(i + 1) {
                    *v = 0;
                }
                self.next = Some(vals);
                break;
            }
        }
        Some(Outcome(current))
    }
}

/// Enumerate all outcomes in lexicographic order of value indices, under the
/// default cap.
pub fn enumerate_outcomes(scenario: &Scenario) -> Result<OutcomeIter> {
    enumerate_outcomes_capped(scenario, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_outcomes_capped(scenario: &Scenario, cap: u64) -> Result<OutcomeIter> {
    let count = scenario.outcome_count();
    if count > cap as u128 {
        return Err(Error::Capacity { outcomes: count, cap });
    }
    let sizes = scenario.issue_sizes();
    Ok(OutcomeIter { next: Some(vec![0; sizes.len()]), sizes })
}

/// Nash bargaining solution: the outcome maximizing u(ω)·u_o(ω), ties broken
/// by lexicographically smallest outcome.
pub fn nash_solution(scenario: &Scenario) -> Result<Outcome> {
    let mut best: Option<(Outcome, f64)> = None;
    for outcome in enumerate_outcomes(scenario)? {
        let product = scenario.profile_self.utility_raw(outcome.values())
            * scenario.profile_opponent.utility_raw(outcome.values());
        match &best {
            Some((_, p)) if product <= *p => {}
            _ => best = Some((outcome, product)),
        }
    }
    Ok(best.expect("outcome space is non-empty").0)
}

/// All outcomes not strictly dominated in (u, u_o), sorted by descending u.
pub fn pareto_frontier(scenario: &Scenario) -> Result<Vec<Outcome>> {
    let mut points: Vec<(Outcome, f64, f64)> = enumerate_outcomes(scenario)?
        .map(|o| {
            let u = scenario.profile_self.utility_raw(o.values());
            let uo = scenario.profile_opponent.utility_raw(o.values());
            (o, u, uo)
        })
        .collect();
    // Stable sort keeps lexicographic order among equal-u outcomes.
    points.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());

    let mut frontier = Vec::new();
    let mut best_uo_above = f64::NEG_INFINITY; // max u_o among strictly higher u
    let mut i = 0;
    while i < points.len() {
        let mut j = i;
        let mut group_max_uo = f64::NEG_INFINITY;
        while j < points.len() && points[j].1 == points[i].1 {
            group_max_uo = group_max_uo.max(points[j].2);
            j += 1;
        }
        for point in &points[i..j] {
            if point.2 == group_max_uo && point.2 > best_uo_above {
                frontier.push(point.0.clone());
            }
        }
        best_uo_above = best_uo_above.max(group_max_uo);
        i = j;
    }
    Ok(frontier)
}

/// The six scenario features: domain shape plus utility statistics under the
/// chosen profile. Standard deviations are population standard deviations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioFeatures {
    pub num_issues: usize,
    pub avg_values_per_issue: f64,
    pub outcome_space_size: u64,
    pub std_issue_weights: f64,
    pub mean_utility: f64,
    pub std_utility: f64,
}

impl ScenarioFeatures {
    /// Flattened feature block in the documented stable order.
    pub fn as_vec(&self) -> [f64; 6] {
        [
            self.num_issues as f64,
            self.avg_values_per_issue,
            self.outcome_space_size as f64,
            self.std_issue_weights,
            self.mean_utility,
            self.std_utility,
        ]
    }
}

pub fn scenario_features(scenario: &Scenario, perspective: Perspective) -> Result<ScenarioFeatures> {
    let profile = scenario.profile(perspective);
    let n_issues = scenario.issues.len();
    let uniform = 1.0 / n_issues as f64;
    let std_weights = (profile
        .weights
        .iter()
        .map(|w| (w - uniform).powi(2))
        .sum::<f64>()
        / n_issues as f64)
        .sqrt();

    let mut count: u64 = 0;
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for outcome in enumerate_outcomes(scenario)? {
        let u = profile.utility_raw(outcome.values());
        count += 1;
        sum += u;
        sum_sq += u * u;
    }
    let mean = sum / count as f64;
    let variance = (sum_sq / count as f64 - mean * mean).max(0.0);

    Ok(ScenarioFeatures {
        num_issues: n_issues,
        avg_values_per_issue: scenario
            .issues
            .iter()
            .map(|i| i.values.len() as f64)
            .sum::<f64>()
            / n_issues as f64,
        outcome_space_size: count,
        std_issue_weights: std_weights,
        mean_utility: mean,
        std_utility: variance.sqrt(),
    })
}
