//! Iterating a rule system: at each step every match of every rule is
//! applied, either as one parallel coherent transformation or one after
//! another.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::attr::AttrGraph;
use crate::error::{Error, Result};
use crate::rewriting::{
    apply_direct, apply_sequentially, count_independent_pairs, find_matches, pct,
    DirectTransformation, Match, WeakSpan,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Pct,
    Sequential,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pct" => Ok(Mode::Pct),
            "seq" | "sequential" => Ok(Mode::Sequential),
            other => Err(Error::Parse(format!(
                "unknown mode `{other}` (expected pct or seq)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkippedMatch {
    pub rule: String,
    pub index: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoherenceSummary {
    pub transformations: usize,
    pub pairs: usize,
    pub independent_pairs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub step: usize,
    pub matches_per_rule: BTreeMap<String, usize>,
    pub skipped: Vec<SkippedMatch>,
    pub coherence: Option<CoherenceSummary>,
    /// Elements of the common context `D′` (pct mode).
    pub context_elements: Option<usize>,
    pub result_elements: usize,
    pub fixpoint: bool,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    /// The host followed by the result of every step taken.
    pub graphs: Vec<Arc<AttrGraph>>,
    pub reports: Vec<StepReport>,
}

impl RunOutcome {
    pub fn last(&self) -> &Arc<AttrGraph> {
        self.graphs.last().expect("the host is always present")
    }
}

/// Every match of every rule, rules in the given order.
pub fn all_matches(rules: &[Arc<WeakSpan>], host: &Arc<AttrGraph>) -> Result<Vec<Match>> {
    let mut out = Vec::new();
    for rule in rules {
        out.extend(find_matches(rule, host)?);
    }
    Ok(out)
}

fn is_gluing_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::Dangling { .. } | Error::Identification { .. } | Error::UnreadLabels { .. }
    )
}

/// Builds a direct transformation per match, setting aside those whose
/// gluing condition fails.
pub fn transformations(
    matches: &[Match],
) -> Result<(Vec<DirectTransformation>, Vec<SkippedMatch>)> {
    let mut done = Vec::new();
    let mut skipped = Vec::new();
    for (index, m) in matches.iter().enumerate() {
        match apply_direct(m) {
            Ok(t) => done.push(t),
            Err(e) if is_gluing_failure(&e) => skipped.push(SkippedMatch {
                rule: m.rule().name().to_string(),
                index,
                reason: e.to_string(),
            }),
            Err(e) => return Err(e),
        }
    }
    Ok((done, skipped))
}

/// One step of the system on `host`.
pub fn run_step(
    rules: &[Arc<WeakSpan>],
    host: &Arc<AttrGraph>,
    mode: Mode,
    step: usize,
) -> Result<(Arc<AttrGraph>, StepReport)> {
    let mut matches_per_rule = BTreeMap::new();
    let mut matches = Vec::new();
    for rule in rules {
        let found = find_matches(rule, host)?;
        matches_per_rule.insert(rule.name().to_string(), found.len());
        matches.extend(found);
    }
    let (gammas, skipped) = transformations(&matches)?;
    let mut report = StepReport {
        step,
        matches_per_rule,
        skipped,
        coherence: None,
        context_elements: None,
        result_elements: host.element_count(),
        fixpoint: gammas.is_empty(),
    };
    if gammas.is_empty() {
        return Ok((host.clone(), report));
    }
    let p = gammas.len();
    let result = match mode {
        Mode::Pct => {
            let step = pct(&gammas)?;
            report.coherence = Some(CoherenceSummary {
                transformations: p,
                pairs: p * (p - 1) / 2,
                independent_pairs: count_independent_pairs(&gammas)?,
            });
            report.context_elements = Some(step.common_context.element_count());
            step.result
        }
        Mode::Sequential => {
            let order: Vec<usize> = (0..p).collect();
            let steps = apply_sequentially(&gammas, &order)?;
            steps.last().unwrap().result.clone()
        }
    };
    report.result_elements = result.element_count();
    Ok((result, report))
}

/// Runs up to `steps` steps, stopping early at a step without matches.
pub fn cmd_run(
    rules: &[Arc<WeakSpan>],
    host: &Arc<AttrGraph>,
    steps: usize,
    mode: Mode,
) -> Result<RunOutcome> {
    let mut graphs = vec![host.clone()];
    let mut reports = Vec::new();
    for step in 1..=steps {
        let (next, report) = run_step(rules, graphs.last().unwrap(), mode, step)?;
        let stop = report.fixpoint;
        reports.push(report);
        if stop {
            break;
        }
        graphs.push(next);
    }
    Ok(RunOutcome { graphs, reports })
}
