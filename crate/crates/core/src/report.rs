//! Full per-state analysis reports and their table rendering.

use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::bloch::{bloch_decompose, BlochForm};
use crate::correlations::{
    classify_with_tensor_rank, correlation_matrix, numerical_rank, QuantumnessVerdict, DEFAULT_RANK_TOL,
};
use crate::discord::{discord, geometric_discord, DiscordResult};
use crate::error::Result;
use crate::linalg::ComplexMatrix;
use crate::rsp::{rsp_fidelity, RspResult};
use crate::sphere::OptimizerSettings;
use crate::state::{DensityMatrix, Subsystem, Tolerances};

pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

/// Discord at or below this counts as zero for the verdict.
pub const DEFAULT_DISC_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AnalysisOptions {
    pub side: Subsystem,
    pub rank_tol: f64,
    pub disc_tol: f64,
    pub optimizer: OptimizerSettings,
    pub state: Tolerances,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            side: Subsystem::B,
            rank_tol: DEFAULT_RANK_TOL,
            disc_tol: DEFAULT_DISC_TOL,
            optimizer: OptimizerSettings::default(),
            state: Tolerances::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub tool_version: String,
    /// SHA-256 over the little-endian bytes of the 16 (re, im) entries.
    pub input_digest: String,
    pub bloch: BlochForm,
    pub correlation_matrix: Vec<Vec<f64>>,
    pub singular_values: Vec<f64>,
    pub l_r: usize,
    pub l_t: usize,
    pub discord_a: DiscordResult,
    pub discord_b: DiscordResult,
    pub geometric_discord_a: f64,
    pub geometric_discord_b: f64,
    pub rsp: RspResult,
    pub verdict: QuantumnessVerdict,
    pub options: AnalysisOptions,
    pub notes: Vec<String>,
}

pub fn digest(m: &ComplexMatrix) -> String {
    let mut h = Sha256::new();
    for z in m.entries() {
        h.update(z.re.to_le_bytes());
        h.update(z.im.to_le_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

pub fn analyze(rho: &DensityMatrix, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let bloch = bloch_decompose(rho);
    let corr = correlation_matrix(&bloch)?;
    let l_r = corr.rank(opts.rank_tol);
    let l_t = numerical_rank(&bloch.tensor(), opts.rank_tol)?;
    let discord_a = discord(rho, Subsystem::A, &opts.optimizer)?;
    let discord_b = discord(rho, Subsystem::B, &opts.optimizer)?;
    let chosen = match opts.side {
        Subsystem::A => discord_a.discord,
        Subsystem::B => discord_b.discord,
    };
    let verdict = classify_with_tensor_rank(l_r, l_t, chosen, opts.disc_tol);
    let notes = vec![
        "discord optimized over orthogonal projective measurements only".to_string(),
        "R layout: first row (1, y), first column (1, x), block T; 1/4 prefactor dropped".to_string(),
        "mutual information I = S(A) + S(B) - S(AB), entropies in bits".to_string(),
        "efficiency (2F-1)^2 equals 1 at both F = 0 and F = 1".to_string(),
        format!("verdict: {}", verdict.describe()),
    ];
    Ok(AnalysisReport {
        tool_version: TOOL_VERSION.to_string(),
        input_digest: digest(rho.matrix()),
        correlation_matrix: corr.r.to_rows(),
        singular_values: corr.singular_values.clone(),
        bloch,
        l_r,
        l_t,
        discord_a,
        discord_b,
        geometric_discord_a: geometric_discord(rho, Subsystem::A)?,
        geometric_discord_b: geometric_discord(rho, Subsystem::B)?,
        rsp: rsp_fidelity(rho)?,
        verdict,
        options: *opts,
        notes,
    })
}

impl AnalysisReport {
    /// Discord on the side the verdict was computed for.
    pub fn chosen_discord(&self) -> f64 {
        match self.options.side {
            Subsystem::A => self.discord_a.discord,
            Subsystem::B => self.discord_b.discord,
        }
    }

    /// The stored verdict agrees with one recomputed from the report's own
    /// numbers, and every number is finite.
    pub fn is_self_consistent(&self) -> bool {
        let again = classify_with_tensor_rank(self.l_r, self.l_t, self.chosen_discord(), self.options.disc_tol);
        let finite = [
            self.discord_a.discord,
            self.discord_b.discord,
            self.geometric_discord_a,
            self.geometric_discord_b,
            self.rsp.fidelity,
            self.rsp.efficiency,
        ]
        .iter()
        .chain(self.singular_values.iter())
        .chain(self.correlation_matrix.iter().flatten())
        .all(|x| x.is_finite());
        again == self.verdict && finite
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let v3 = |v: &[f64; 3]| format!("({:+.6}, {:+.6}, {:+.6})", v[0], v[1], v[2]);
        let _ = writeln!(out, "{:<24}{}", "tool", self.tool_version);
        let _ = writeln!(out, "{:<24}{}", "input digest", self.input_digest);
        let _ = writeln!(out, "{:<24}{}", "bloch x", v3(&self.bloch.x));
        let _ = writeln!(out, "{:<24}{}", "bloch y", v3(&self.bloch.y));
        for (i, row) in self.bloch.t.iter().enumerate() {
            let label = if i == 0 { "tensor T" } else { "" };
            let _ = writeln!(out, "{:<24}{}", label, v3(row));
        }
        for (i, row) in self.correlation_matrix.iter().enumerate() {
            let label = if i == 0 { "correlation matrix R" } else { "" };
            let cells: Vec<String> = row.iter().map(|x| format!("{x:+.6}")).collect();
            let _ = writeln!(out, "{:<24}{}", label, cells.join(" "));
        }
        let sv: Vec<String> = self.singular_values.iter().map(|x| format!("{x:.6e}")).collect();
        let _ = writeln!(out, "{:<24}{}", "singular values", sv.join(" "));
        let _ = writeln!(out, "{:<24}{}", "L_R", self.l_r);
        let _ = writeln!(out, "{:<24}{}", "L_T", self.l_t);
        for d in [&self.discord_a, &self.discord_b] {
            let n = d.argmax_direction.vector();
            let _ = writeln!(
                out,
                "{:<24}{:.9} (I = {:.9}, J = {:.9}, n = {})",
                format!("discord (measure {})", d.measured_side),
                d.discord,
                d.mutual_info,
                d.classical_corr,
                v3(&n)
            );
        }
        let _ = writeln!(out, "{:<24}{:.9}", "geometric discord (A)", self.geometric_discord_a);
        let _ = writeln!(out, "{:<24}{:.9}", "geometric discord (B)", self.geometric_discord_b);
        let _ = writeln!(
            out,
            "{:<24}{:.9} (T1^2 = {:.6e}, T2^2 = {:.6e})",
            "RSP fidelity", self.rsp.fidelity, self.rsp.t1_sq, self.rsp.t2_sq
        );
        let _ = writeln!(out, "{:<24}{:.9}", "RSP efficiency", self.rsp.efficiency);
        let _ = writeln!(
            out,
            "{:<24}{} (side {})",
            "verdict", self.verdict.kind, self.options.side
        );
        let o = &self.options;
        let _ = writeln!(
            out,
            "{:<24}rank {:e}, discord {:e}, grid {}x{}, refine {}",
            "tolerances",
            o.rank_tol,
            o.disc_tol,
            o.optimizer.coarse_grid.0,
            o.optimizer.coarse_grid.1,
            o.optimizer.refine_iters
        );
        for n in &self.notes {
            let _ = writeln!(out, "{:<24}{}", "note", n);
        }
        out
    }
}

/// Before/after comparison for a local channel application.
#[derive(Clone, Debug, Serialize)]
pub struct ChannelDelta {
    pub before: AnalysisReport,
    pub after: AnalysisReport,
    pub delta_l_r: i64,
    pub delta_l_t: i64,
    pub delta_discord: f64,
    pub delta_fidelity: f64,
    pub cptp_a: bool,
    pub cptp_b: bool,
}

impl ChannelDelta {
    pub fn new(before: AnalysisReport, after: AnalysisReport, cptp_a: bool, cptp_b: bool) -> Self {
        Self {
            delta_l_r: after.l_r as i64 - before.l_r as i64,
            delta_l_t: after.l_t as i64 - before.l_t as i64,
            delta_discord: after.chosen_discord() - before.chosen_discord(),
            delta_fidelity: after.rsp.fidelity - before.rsp.fidelity,
            before,
            after,
            cptp_a,
            cptp_b,
        }
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let (b, a) = (&self.before, &self.after);
        let _ = writeln!(out, "{:<16}{:>16}{:>16}{:>16}", "quantity", "before", "after", "delta");
        let _ = writeln!(out, "{:<16}{:>16}{:>16}{:>16}", "L_R", b.l_r, a.l_r, self.delta_l_r);
        let _ = writeln!(out, "{:<16}{:>16}{:>16}{:>16}", "L_T", b.l_t, a.l_t, self.delta_l_t);
        let _ = writeln!(
            out,
            "{:<16}{:>16.9}{:>16.9}{:>16.9}",
            "discord",
            b.chosen_discord(),
            a.chosen_discord(),
            self.delta_discord
        );
        let _ = writeln!(
            out,
            "{:<16}{:>16.9}{:>16.9}{:>16.9}",
            "RSP fidelity", b.rsp.fidelity, a.rsp.fidelity, self.delta_fidelity
        );
        let _ = writeln!(
            out,
            "{:<16}{:>16}  {:<24}",
            "verdict",
            b.verdict.kind.to_string(),
            a.verdict.kind.to_string()
        );
        if !(self.cptp_a && self.cptp_b) {
            let _ = writeln!(out, "note: non-trace-preserving map, output renormalized");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::VerdictKind;
    use crate::named::{named_state, NamedState};

    #[test]
    fn sigma_report() {
        let r = analyze(&named_state(NamedState::Sigma), &AnalysisOptions::default()).unwrap();
        assert_eq!(r.l_r, 3);
        assert_eq!(r.l_t, 1);
        assert!(r.rsp.fidelity.abs() < 1e-12);
        assert_eq!(r.verdict.kind, VerdictKind::GenuinelyQuantum);
        assert!(r.is_self_consistent());
        assert!(r.to_table().contains("GenuinelyQuantum"));
    }

    #[test]
    fn rho_cl_report_is_classical() {
        let r = analyze(&named_state(NamedState::RhoCl), &AnalysisOptions::default()).unwrap();
        assert_eq!(r.verdict.kind, VerdictKind::Classical);
        assert!(r.discord_b.discord.abs() < 1e-12);
    }

    #[test]
    fn tampered_report_is_inconsistent() {
        let mut r = analyze(&named_state(NamedState::RhoTilde), &AnalysisOptions::default()).unwrap();
        assert_eq!(r.verdict.kind, VerdictKind::LocallyCreatableDiscord);
        r.l_r = 3;
        assert!(!r.is_self_consistent());
    }

    #[test]
    fn digest_depends_on_entries() {
        let a = digest(named_state(NamedState::Sigma).matrix());
        let b = digest(named_state(NamedState::RhoCl).matrix());
        assert_eq!(a.len(), 64);
        assert_ne!(a, b);
    }
}
