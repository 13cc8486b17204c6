//! Named verification suites over corpora.
//!
//! Each suite checks one instance at a time; corpora are processed in
//! parallel and results are merged in corpus order.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::{bounds_report, essential_bound, essential_pair_count};
use crate::domination::{gamma_exact_bb_with_limit, is_dominating, mop_domination_number, SimpleGraph};
use crate::generators::{enumerate_hts, enumerate_mops, random_good_ht, random_ht, GenError};
use crate::hamiltonian::{dominate_triangulation_with, find_good_cycle, HamTriangulation, PipelineConfig};
use crate::io::GraphInput;
use crate::mop::{MopGraph, Pos};
use crate::reductions::{dominate_mop, find_applicable, find_irreducible_steps};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Thm11,
    Thm12,
    Reductions,
    Lemma31,
    Thm32,
    Pipeline,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Thm11,
        Suite::Thm12,
        Suite::Reductions,
        Suite::Lemma31,
        Suite::Thm32,
        Suite::Pipeline,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Thm11 => "thm11",
            Suite::Thm12 => "thm12",
            Suite::Reductions => "reductions",
            Suite::Lemma31 => "lemma31",
            Suite::Thm32 => "thm32",
            Suite::Pipeline => "pipeline",
        }
    }

    /// Whether the suite reads MOPs (otherwise Hamiltonian triangulations).
    pub fn wants_mops(self) -> bool {
        matches!(self, Suite::Thm11 | Suite::Thm12 | Suite::Reductions)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = SuiteError;
    fn from_str(s: &str) -> Result<Self, SuiteError> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| SuiteError::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error(transparent)]
    Generator(#[from] GenError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub bb_limit: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { bb_limit: 64 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub index: usize,
    pub graph: serde_json::Value,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checked: usize,
    /// Instances to which the suite's hypothesis applied.
    pub applicable: usize,
    /// Individual checks performed (steps, lifts, cycles, ...).
    pub checks: usize,
    pub violations: Vec<Violation>,
    pub passed: bool,
}

#[derive(Debug, Default, Clone, Copy)]
struct Tally {
    applicable: bool,
    checks: usize,
}

type Outcome = Result<Tally, String>;

fn mop_of(g: &GraphInput) -> Result<&MopGraph, String> {
    match g {
        GraphInput::Mop(m) => Ok(m),
        other => Err(format!("expected a mop, got a {}", other.kind())),
    }
}

fn ham_of(g: &GraphInput) -> Result<HamTriangulation, String> {
    g.clone().into_ham().map_err(|e| e.to_string())
}

fn check_degree_two_bound(g: &MopGraph) -> Outcome {
    let rep = bounds_report(g, true);
    if rep.satisfies_thm11 != Some(true) {
        return Err(format!("γ = {:?} exceeds (n+t)/4 = {}", rep.gamma, rep.bound_thm11));
    }
    Ok(Tally { applicable: true, checks: 1 })
}

fn check_essential_bound(g: &MopGraph) -> Outcome {
    if g.n() < 4 {
        return Ok(Tally::default());
    }
    let k = essential_pair_count(g);
    let bound = essential_bound(g.n(), k);
    let gamma = mop_domination_number(g);
    if gamma > bound {
        return Err(format!("γ = {gamma} exceeds ⌈(n+k)/4⌉ = {bound}"));
    }
    let trace = dominate_mop(g).map_err(|e| e.to_string())?;
    if !trace.anomalies.is_empty() {
        return Err(format!("engine anomalies: {:?}", trace.anomalies));
    }
    if !is_dominating(&g.to_simple_graph(), &trace.set.vertices).unwrap_or(false) {
        return Err("engine set does not dominate".into());
    }
    Ok(Tally { applicable: true, checks: 2 })
}

/// All minimum dominating sets by subset enumeration.
fn minimum_sets(g: &MopGraph) -> Vec<Vec<Pos>> {
    let size = mop_domination_number(g);
    let simple = g.to_simple_graph();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(simple: &SimpleGraph, start: Pos, size: usize, cur: &mut Vec<Pos>, out: &mut Vec<Vec<Pos>>) {
        if cur.len() == size {
            if is_dominating(simple, cur).unwrap_or(false) {
                out.push(cur.clone());
            }
            return;
        }
        for v in start..=simple.n() {
            cur.push(v);
            rec(simple, v + 1, size, cur, out);
            cur.pop();
        }
    }
    rec(&simple, 1, size, &mut cur, &mut out);
    out
}

fn check_reductions(g: &MopGraph) -> Outcome {
    let mut tally = Tally::default();
    let basic = find_applicable(g);
    let steps = if basic.is_empty() { find_irreducible_steps(g) } else { basic };
    for step in steps {
        tally.applicable = true;
        let cert = step.certificate();
        if !cert.holds() {
            return Err(format!("{:?} at {:?}: certificate fails {cert:?}", step.kind, step.anchor));
        }
        for set in minimum_sets(&step.post_graph) {
            step.lift(&set)
                .map_err(|e| format!("{:?} at {:?}, post set {set:?}: {e}", step.kind, step.anchor))?;
            tally.checks += 1;
        }
        tally.checks += 1;
    }
    Ok(tally)
}

fn check_good_cycles(t: &HamTriangulation) -> Outcome {
    let full = t.full_graph();
    if crate::domination::dominating_vertex(&full).is_some() {
        return Ok(Tally::default());
    }
    match find_good_cycle(&full) {
        Ok((found, _, tried)) if found.good_cycle_check() => Ok(Tally { applicable: true, checks: tried }),
        Ok(_) => Err("returned cycle is not good".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn check_two_chord_bound(t: &HamTriangulation, config: &SuiteConfig) -> Outcome {
    let k = t.two_chord_graph();
    let n = t.n();
    if 2 * k.two_chord_count() < n + 1 {
        return Ok(Tally::default());
    }
    let d = gamma_exact_bb_with_limit(&k.graph, config.bb_limit).map_err(|e| e.to_string())?;
    if d.size > (2 * n).div_ceil(7) {
        return Err(format!("γ(K) = {} exceeds ⌈2n/7⌉ = {}", d.size, (2 * n).div_ceil(7)));
    }
    Ok(Tally { applicable: true, checks: 1 })
}

fn check_pipeline(t: &HamTriangulation, config: &SuiteConfig) -> Outcome {
    let cfg = PipelineConfig {
        bb_limit: config.bb_limit,
    };
    let (set, rep) = dominate_triangulation_with(t, cfg).map_err(|e| e.to_string())?;
    if !is_dominating(&t.full_graph(), &set.vertices).unwrap_or(false) {
        return Err("pipeline set does not dominate".into());
    }
    if rep.two_chord_bound_holds == Some(false) {
        return Err(format!("γ(K) = {} exceeds ⌈2n/7⌉", rep.attempts[0].size));
    }
    if rep.pigeonhole_holds == Some(false) {
        return Err("min(c_int, c_ext) exceeds n/4".into());
    }
    Ok(Tally {
        applicable: t.n() >= 23,
        checks: rep.attempts.len(),
    })
}

fn check(suite: Suite, g: &GraphInput, config: &SuiteConfig) -> Outcome {
    match suite {
        Suite::Thm11 => check_degree_two_bound(mop_of(g)?),
        Suite::Thm12 => check_essential_bound(mop_of(g)?),
        Suite::Reductions => check_reductions(mop_of(g)?),
        Suite::Lemma31 => check_good_cycles(&ham_of(g)?),
        Suite::Thm32 => check_two_chord_bound(&ham_of(g)?, config),
        Suite::Pipeline => check_pipeline(&ham_of(g)?, config),
    }
}

/// Runs `suite` over `corpus`; the report does not depend on thread count.
pub fn run_suite(suite: Suite, corpus: &[GraphInput], config: &SuiteConfig) -> SuiteReport {
    let outcomes: Vec<Outcome> = corpus.par_iter().map(|g| check(suite, g, config)).collect();
    let mut report = SuiteReport {
        suite,
        checked: corpus.len(),
        applicable: 0,
        checks: 0,
        violations: Vec::new(),
        passed: true,
    };
    for (index, (outcome, g)) in outcomes.into_iter().zip(corpus).enumerate() {
        match outcome {
            Ok(t) => {
                report.applicable += usize::from(t.applicable);
                report.checks += t.checks;
            }
            Err(message) => report.violations.push(Violation {
                index,
                graph: g.to_json(),
                message,
            }),
        }
    }
    report.passed = report.violations.is_empty();
    report
}

/// Exhaustive MOPs for `n_min..=n_max`.
pub fn mop_corpus(n_min: usize, n_max: usize) -> Result<Vec<GraphInput>, SuiteError> {
    let mut out = Vec::new();
    for n in n_min..=n_max {
        out.extend(enumerate_mops(n)?.map(GraphInput::Mop));
    }
    Ok(out)
}

/// Exhaustive Hamiltonian triangulations for `n_min..=n_max`.
pub fn ht_corpus(n_min: usize, n_max: usize) -> Result<Vec<GraphInput>, SuiteError> {
    let mut out = Vec::new();
    for n in n_min..=n_max {
        out.extend(enumerate_hts(n)?.map(GraphInput::Ham));
    }
    Ok(out)
}

/// `count` random triangulations with `n` cycling through `n_min..=n_max`,
/// seeded from `seed + i`; with `good`, only good cycles are kept.
pub fn random_ht_corpus(n_min: usize, n_max: usize, count: usize, seed: u64, good: bool) -> Vec<GraphInput> {
    let span = n_max - n_min + 1;
    (0..count)
        .into_par_iter()
        .map(|i| {
            let n = n_min + i % span;
            let s = seed.wrapping_add(i as u64);
            GraphInput::Ham(if good { random_good_ht(n, s) } else { random_ht(n, s) })
        })
        .collect()
}

/// Random triangulations whose 2-chord count is at least `(n+1)/2`, found
/// by scanning seeds from `seed`.
pub fn dense_two_chord_corpus(n_min: usize, n_max: usize, count: usize, seed: u64) -> Vec<GraphInput> {
    let span = n_max - n_min + 1;
    let mut out = Vec::with_capacity(count);
    let mut s = seed;
    while out.len() < count {
        let n = n_min + out.len() % span;
        let t = random_ht(n, s);
        s = s.wrapping_add(1);
        if 2 * t.two_chord_graph().two_chord_count() > n {
            out.push(GraphInput::Ham(t));
        }
    }
    out
}

/// Corpus used when none is supplied.
pub fn default_corpus(suite: Suite, n_max: Option<usize>, seed: u64) -> Result<Vec<GraphInput>, SuiteError> {
    match suite {
        Suite::Thm11 | Suite::Thm12 => mop_corpus(4, n_max.unwrap_or(13)),
        Suite::Reductions => mop_corpus(7, n_max.unwrap_or(12)),
        Suite::Lemma31 => ht_corpus(4, n_max.unwrap_or(9)),
        Suite::Thm32 => Ok(dense_two_chord_corpus(7, n_max.unwrap_or(26), 200, seed)),
        Suite::Pipeline => Ok(random_ht_corpus(23, n_max.unwrap_or(60), 1000, seed, true)),
    }
}
