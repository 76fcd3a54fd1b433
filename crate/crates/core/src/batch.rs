//! Seeded sweeps over random states, optionally pushed through a local map.

use std::fmt::Write as _;

use rand::Rng as _;
use serde::Serialize;

use crate::channels::{apply_local, LocalProductMap};
use crate::correlations::VerdictKind;
use crate::error::Result;
use crate::random::{random_channel, random_density_with, rng_from_seed};
use crate::report::{analyze, AnalysisOptions};
use crate::state::{partial_trace, von_neumann_entropy, DensityMatrix, Subsystem};

#[derive(Clone, Debug, Serialize)]
pub struct BatchRow {
    pub index: usize,
    /// `state` or `channel`.
    pub kind: &'static str,
    pub l_r: usize,
    pub l_t: usize,
    pub discord_a: f64,
    pub discord_b: f64,
    pub geometric_b: f64,
    pub fidelity: f64,
    pub entropy_a: f64,
    pub verdict: VerdictKind,
}

#[derive(Clone, Debug, Serialize)]
pub struct BatchSummary {
    pub seed: u64,
    pub count: usize,
    pub rank: usize,
    pub channel_given: bool,
    pub monotonicity_checks: usize,
    pub monotonicity_violations: usize,
    pub mean_discord_b: f64,
    pub mean_fidelity: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BatchOutput {
    pub rows: Vec<BatchRow>,
    pub summary: BatchSummary,
}

fn row(index: usize, kind: &'static str, rho: &DensityMatrix, opts: &AnalysisOptions) -> Result<BatchRow> {
    let r = analyze(rho, opts)?;
    Ok(BatchRow {
        index,
        kind,
        l_r: r.l_r,
        l_t: r.l_t,
        discord_a: r.discord_a.discord,
        discord_b: r.discord_b.discord,
        geometric_b: r.geometric_discord_b,
        fidelity: r.rsp.fidelity,
        entropy_a: von_neumann_entropy(&partial_trace(rho, Subsystem::A))?,
        verdict: r.verdict.kind,
    })
}

/// `count` Ginibre states of the given rank from `seed`. With a channel, each
/// post-channel state gets its own row; without one, a random local CPTP map
/// is drawn per state for the `L_R` monotonicity check only.
pub fn run_batch(
    seed: u64,
    count: usize,
    rank: usize,
    channel: Option<&LocalProductMap>,
    opts: &AnalysisOptions,
) -> Result<BatchOutput> {
    let mut states = rng_from_seed(seed);
    let mut channels = rng_from_seed(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut rows = Vec::new();
    let mut violations = 0;
    let mut checks = 0;
    for index in 0..count {
        let rho = random_density_with(&mut states, rank)?;
        let before = row(index, "state", &rho, opts)?;
        let map = match channel {
            Some(m) => m.clone(),
            None => {
                let ka = channels.random_range(1..=4);
                let kb = channels.random_range(1..=4);
                LocalProductMap::new(random_channel(&mut channels, ka), random_channel(&mut channels, kb))
            }
        };
        let after_state = apply_local(&rho, &map)?;
        let after_rank = crate::correlations::correlation_rank(&after_state, opts.rank_tol)?;
        checks += 1;
        if after_rank > before.l_r {
            violations += 1;
        }
        rows.push(before);
        if channel.is_some() {
            rows.push(row(index, "channel", &after_state, opts)?);
        }
    }
    let states_only: Vec<&BatchRow> = rows.iter().filter(|r| r.kind == "state").collect();
    let n = states_only.len().max(1) as f64;
    let summary = BatchSummary {
        seed,
        count,
        rank,
        channel_given: channel.is_some(),
        monotonicity_checks: checks,
        monotonicity_violations: violations,
        mean_discord_b: states_only.iter().map(|r| r.discord_b).sum::<f64>() / n,
        mean_fidelity: states_only.iter().map(|r| r.fidelity).sum::<f64>() / n,
    };
    Ok(BatchOutput { rows, summary })
}

impl BatchOutput {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>6} {:<8} {:>3} {:>3} {:>12} {:>12} {:>12} {:>12} {:>12} verdict",
            "index", "kind", "L_R", "L_T", "discord_A", "discord_B", "geom_B", "fidelity", "S(A)"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:>6} {:<8} {:>3} {:>3} {:>12.9} {:>12.9} {:>12.9} {:>12.9} {:>12.9} {}",
                r.index,
                r.kind,
                r.l_r,
                r.l_t,
                r.discord_a,
                r.discord_b,
                r.geometric_b,
                r.fidelity,
                r.entropy_a,
                r.verdict
            );
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "summary: seed {} count {} rank {} | L_R monotonicity violations {}/{} | mean discord_B {:.9} | mean fidelity {:.9}",
            s.seed, s.count, s.rank, s.monotonicity_violations, s.monotonicity_checks, s.mean_discord_b, s.mean_fidelity
        );
        out
    }
}
