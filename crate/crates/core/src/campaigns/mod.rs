//! Reduction campaigns: enumerate candidate triples per case, reduce `Λ₁` for
//! each, and aggregate counts and `J` thresholds into a deterministic report.
//!
//! A work unit is one value of the driving root. Units are independent; a run
//! processes them in chunks on a worker pool, folds the per-unit results in
//! unit order, and optionally checkpoints after every chunk.

pub mod enumerate;
pub mod search;

use crate::pell::SpfSieve;
use crate::reduction::reduce_triple;
use rayon::prelude::*;
use rug::Integer;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use thiserror::Error;

pub use search::{brute_force_search, SearchResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CampaignKind {
    Euler,
    Degree1,
    CaseI,
    CaseII,
    CaseIII,
    CaseIV,
    CaseV,
    BruteForce,
}

impl CampaignKind {
    /// `J` must stay below this for the campaign to yield a contradiction.
    pub fn contradiction_threshold(self) -> u64 {
        match self {
            CampaignKind::Euler => 48,
            _ => 28,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s.to_ascii_lowercase().as_str() {
            "euler" => Self::Euler,
            "degree1" | "deg1" => Self::Degree1,
            "i" | "casei" | "1" => Self::CaseI,
            "ii" | "caseii" | "2" => Self::CaseII,
            "iii" | "caseiii" | "3" => Self::CaseIII,
            "iv" | "caseiv" | "4" => Self::CaseIV,
            "v" | "casev" | "5" => Self::CaseV,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shard {
    pub index: u32,
    pub total: u32,
}

impl Shard {
    pub const FULL: Shard = Shard { index: 0, total: 1 };

    pub fn owns(&self, r_lo: u64, r: u64) -> bool {
        (r - r_lo) % self.total as u64 == self.index as u64
    }
}

pub const M_CAP: u64 = 19_000_000_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignSpec {
    pub kind: CampaignKind,
    pub r_lo: u64,
    pub r_hi: u64,
    pub m_cap: u64,
    /// Pell cases: only `U < u_cap` is used.
    pub u_cap: Option<u64>,
    /// Pell cases: only pairs with `A·B ≤ ad_max`.
    pub ad_max: Option<u64>,
    /// Degree-1: `a ≤ a_max` and `ab ≤ ab_max`.
    pub a_max: Option<u64>,
    pub ab_max: Option<u64>,
    pub shard: Shard,
    /// Enumerate and count without reducing.
    pub dry_run: bool,
}

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error("invalid campaign spec: {0}")]
    Spec(String),
    #[error("checkpoint I/O: {0}")]
    Io(#[from] std::io::Error),
    #[error("checkpoint format: {0}")]
    Format(#[from] serde_json::Error),
    #[error("checkpoint belongs to a different campaign")]
    CheckpointMismatch,
    #[error("cannot merge: {0}")]
    Merge(String),
    #[error("run stopped after {0} units")]
    Interrupted(u64),
}

impl CampaignSpec {
    /// The full-scale parameters for each campaign.
    pub fn full(kind: CampaignKind) -> Self {
        let base = CampaignSpec {
            kind,
            r_lo: 2,
            r_hi: 2,
            m_cap: M_CAP,
            u_cap: None,
            ad_max: None,
            a_max: None,
            ab_max: None,
            shard: Shard::FULL,
            dry_run: false,
        };
        match kind {
            CampaignKind::Euler => CampaignSpec { r_hi: 900_153, ..base },
            CampaignKind::Degree1 => {
                CampaignSpec { r_hi: 2_315_167, a_max: Some(93_595), ab_max: Some(5_360_000_000_000 - 1), ..base }
            }
            CampaignKind::CaseI => {
                CampaignSpec { r_hi: 16_023, ad_max: Some(256_749_472), u_cap: Some(4_120_000_000_000), ..base }
            }
            CampaignKind::CaseII => {
                CampaignSpec { r_hi: 10_095, ad_max: Some(101_891_096 - 1), u_cap: Some(257_000_000), ..base }
            }
            CampaignKind::CaseIII => {
                CampaignSpec { r_hi: 712, ad_max: Some(507_075 - 1), u_cap: Some(2_028_300), ..base }
            }
            CampaignKind::CaseIV => CampaignSpec { r_hi: 333, ad_max: Some(111_360 - 1), u_cap: Some(111_356), ..base },
            CampaignKind::CaseV => CampaignSpec { r_hi: 16_023, ..base },
            CampaignKind::BruteForce => base,
        }
    }

    pub fn with_range(mut self, r_lo: u64, r_hi: u64) -> Self {
        self.r_lo = r_lo;
        self.r_hi = r_hi;
        self
    }

    pub fn with_shard(mut self, index: u32, total: u32) -> Self {
        self.shard = Shard { index, total };
        self
    }

    pub fn validate(&self) -> Result<(), CampaignError> {
        let bad = |m: &str| Err(CampaignError::Spec(m.to_string()));
        if self.kind == CampaignKind::BruteForce {
            return bad("brute force is run through brute_force_search");
        }
        if self.r_lo < 2 {
            return bad("r_lo must be at least 2");
        }
        if self.r_hi < self.r_lo {
            return bad("empty range");
        }
        if self.shard.total == 0 || self.shard.index >= self.shard.total {
            return bad("shard index out of range");
        }
        if self.m_cap == 0 {
            return bad("m_cap must be positive");
        }
        let pell = matches!(
            self.kind,
            CampaignKind::CaseI | CampaignKind::CaseII | CampaignKind::CaseIII | CampaignKind::CaseIV
        );
        if pell && self.u_cap.is_none() {
            return bad("Pell cases need u_cap");
        }
        Ok(())
    }

    /// Identity of the campaign independent of sharding, used to match
    /// checkpoints and merge inputs.
    pub fn campaign_id(&self) -> String {
        let mut s = self.clone();
        s.shard = Shard::FULL;
        serde_json::to_string(&s).expect("spec serializes")
    }

    pub fn units(&self) -> impl Iterator<Item = u64> + '_ {
        (self.r_lo..=self.r_hi).filter(move |&r| self.shard.owns(self.r_lo, r))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub r: u64,
    pub detail: String,
}

/// Deterministic campaign payload. Timing and host data live in
/// [`RunMetadata`] so reports can be diffed byte for byte.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub spec: CampaignSpec,
    pub pairs_checked: u64,
    /// Triples reduced: orbits deduplicated by `U`, degenerate chains kept.
    pub triples_checked: u64,
    /// Same triples weighted by their multiplicity over all `(±V0, U0)` orbits.
    pub triples_raw: u64,
    /// Triples whose third Pell element is nonzero.
    pub triples_nondegenerate: u64,
    pub max_j_threshold: u64,
    /// Maximum over the nondegenerate triples only; degenerate chains have
    /// lower degree and are covered again by the degree-1 campaign.
    pub max_j_nondegenerate: u64,
    pub j_histogram: BTreeMap<u64, u64>,
    pub contradiction_threshold: u64,
    /// Largest `r` whose unit is folded in (checkpoint position).
    pub last_r: Option<u64>,
    pub failures: Vec<Failure>,
}

impl CampaignReport {
    pub fn empty(spec: &CampaignSpec) -> Self {
        CampaignReport {
            spec: spec.clone(),
            pairs_checked: 0,
            triples_checked: 0,
            triples_raw: 0,
            triples_nondegenerate: 0,
            max_j_threshold: 0,
            max_j_nondegenerate: 0,
            j_histogram: BTreeMap::new(),
            contradiction_threshold: spec.kind.contradiction_threshold(),
            last_r: None,
            failures: Vec::new(),
        }
    }

    pub fn success(&self) -> bool {
        self.failures.is_empty() && self.max_j_threshold < self.contradiction_threshold
    }

    fn absorb(&mut self, r: u64, u: UnitReport) {
        self.pairs_checked += u.pairs;
        self.triples_checked += u.triples;
        self.triples_raw += u.raw;
        self.triples_nondegenerate += u.nondegenerate;
        self.max_j_nondegenerate = self.max_j_nondegenerate.max(u.max_nd);
        for (j, n) in u.hist {
            *self.j_histogram.entry(j).or_default() += n;
            self.max_j_threshold = self.max_j_threshold.max(j);
        }
        self.failures.extend(u.failures.into_iter().map(|detail| Failure { r, detail }));
        self.last_r = Some(r);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub const CSV_HEADER: &'static str = "kind,r_lo,r_hi,pairs,triples,triples_raw,triples_nondegenerate,max_j,max_j_nondegenerate,threshold,failures,success";

    pub fn csv_row(&self) -> String {
        format!(
            "{:?},{},{},{},{},{},{},{},{},{},{},{}",
            self.spec.kind,
            self.spec.r_lo,
            self.spec.r_hi,
            self.pairs_checked,
            self.triples_checked,
            self.triples_raw,
            self.triples_nondegenerate,
            self.max_j_threshold,
            self.max_j_nondegenerate,
            self.contradiction_threshold,
            self.failures.len(),
            self.success()
        )
    }
}

/// Non-deterministic side of a run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunMetadata {
    pub wall_time_secs: f64,
    pub workers: usize,
    pub host: String,
    pub merged_from: Vec<Shard>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Deviations from the published enumeration that a reader of the report should know.
pub fn run_notes(kind: CampaignKind) -> Vec<String> {
    match kind {
        CampaignKind::Degree1 => vec![
            "all b are enumerated within the caps, including b <= 10000 which the proof excludes".into(),
            "d-1 = 0 (b = a + 2) is kept; it yields the Euler triple itself".into(),
        ],
        _ => Vec::new(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportFile {
    pub report: CampaignReport,
    pub metadata: RunMetadata,
}

#[derive(Debug, Default, Clone)]
struct UnitReport {
    pairs: u64,
    triples: u64,
    raw: u64,
    nondegenerate: u64,
    max_nd: u64,
    hist: BTreeMap<u64, u64>,
    failures: Vec<String>,
}

fn run_unit(spec: &CampaignSpec, r: u64, sieve: Option<&SpfSieve>) -> UnitReport {
    let cands = enumerate::unit_candidates(spec, r, sieve);
    let mut out = UnitReport { pairs: cands.pairs, failures: cands.problems, ..Default::default() };
    let m = Integer::from(spec.m_cap);
    for c in cands.cases {
        out.triples += 1;
        out.raw += c.raw;
        if !c.degenerate {
            out.nondegenerate += 1;
        }
        if spec.dry_run {
            continue;
        }
        match reduce_triple(&c.triple, &m) {
            Ok(o) => {
                *out.hist.entry(o.j_threshold).or_default() += 1;
                if !c.degenerate {
                    out.max_nd = out.max_nd.max(o.j_threshold);
                }
            }
            Err(e) => out.failures.push(format!("{}: {e}", c.triple)),
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    /// Worker threads; 0 means the rayon default.
    pub workers: usize,
    pub checkpoint: Option<PathBuf>,
    /// Units per chunk; a checkpoint is written after each chunk.
    pub chunk: usize,
    /// Stop (as if killed) after this many units have been folded in this call.
    pub stop_after: Option<u64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { workers: 0, checkpoint: None, chunk: 256, stop_after: None }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Checkpoint {
    pub format_version: u32,
    pub campaign_id: String,
    pub shard: Shard,
    pub last_completed_r: Option<u64>,
    pub partial: CampaignReport,
}

pub const CHECKPOINT_VERSION: u32 = 1;

/// Write-new-then-rename so a crash never leaves a torn file.
pub fn write_checkpoint(path: &Path, cp: &Checkpoint) -> Result<(), CampaignError> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, serde_json::to_vec(cp)?)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

pub fn read_checkpoint(path: &Path) -> Result<Option<Checkpoint>, CampaignError> {
    match std::fs::read(path) {
        Ok(bytes) => Ok(Some(serde_json::from_slice(&bytes)?)),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Progress callback: `(units done, units total)`.
pub type Progress<'a> = &'a (dyn Fn(u64, u64) + Sync);

pub fn run_campaign(spec: &CampaignSpec, opts: &RunOptions) -> Result<CampaignReport, CampaignError> {
    run_campaign_with_progress(spec, opts, &|_, _| {})
}

pub fn run_campaign_with_progress(
    spec: &CampaignSpec,
    opts: &RunOptions,
    progress: Progress<'_>,
) -> Result<CampaignReport, CampaignError> {
    spec.validate()?;
    let mut report = CampaignReport::empty(spec);
    if let Some(path) = &opts.checkpoint {
        if let Some(cp) = read_checkpoint(path)? {
            if cp.format_version != CHECKPOINT_VERSION || cp.campaign_id != spec.campaign_id() || cp.shard != spec.shard
            {
                return Err(CampaignError::CheckpointMismatch);
            }
            report = cp.partial;
        }
    }
    let start_after = report.last_r;
    let units: Vec<u64> = spec.units().filter(|&r| start_after.is_none_or(|l| r > l)).collect();
    let total = spec.units().count() as u64;
    let mut done = total - units.len() as u64;
    let sieve = SpfSieve::new(spec.r_hi + 1);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.workers).build().expect("thread pool");
    let mut folded = 0u64;
    for chunk in units.chunks(opts.chunk.max(1)) {
        let chunk = match opts.stop_after {
            Some(k) if folded + chunk.len() as u64 > k => &chunk[..(k - folded) as usize],
            _ => chunk,
        };
        let results: Vec<UnitReport> =
            pool.install(|| chunk.par_iter().map(|&r| run_unit(spec, r, Some(&sieve))).collect());
        for (&r, u) in chunk.iter().zip(results) {
            report.absorb(r, u);
        }
        folded += chunk.len() as u64;
        done += chunk.len() as u64;
        if let Some(path) = &opts.checkpoint {
            let cp = Checkpoint {
                format_version: CHECKPOINT_VERSION,
                campaign_id: spec.campaign_id(),
                shard: spec.shard,
                last_completed_r: report.last_r,
                partial: report.clone(),
            };
            write_checkpoint(path, &cp)?;
        }
        progress(done, total);
        if opts.stop_after.is_some_and(|k| folded >= k) && done < total {
            return Err(CampaignError::Interrupted(folded));
        }
    }
    Ok(report)
}

/// Combine the shards of one campaign. Order of `parts` does not matter; the
/// result equals an unsharded run byte for byte.
pub fn merge_reports(parts: &[CampaignReport]) -> Result<CampaignReport, CampaignError> {
    let first = parts.first().ok_or_else(|| CampaignError::Merge("no reports".into()))?;
    let id = first.spec.campaign_id();
    let total = first.spec.shard.total;
    let mut sorted: Vec<&CampaignReport> = parts.iter().collect();
    sorted.sort_by_key(|p| p.spec.shard.index);
    for (i, p) in sorted.iter().enumerate() {
        if p.spec.campaign_id() != id {
            return Err(CampaignError::Merge("reports come from different campaigns".into()));
        }
        if p.spec.shard.total != total {
            return Err(CampaignError::Merge("inconsistent shard totals".into()));
        }
        if i > 0 && sorted[i - 1].spec.shard.index == p.spec.shard.index {
            return Err(CampaignError::Merge(format!("shard {} appears twice", p.spec.shard.index)));
        }
    }
    if sorted.len() as u32 != total {
        return Err(CampaignError::Merge(format!("{} of {} shards present", sorted.len(), total)));
    }
    let mut spec = first.spec.clone();
    spec.shard = Shard::FULL;
    let mut out = CampaignReport::empty(&spec);
    for p in &sorted {
        out.pairs_checked += p.pairs_checked;
        out.triples_checked += p.triples_checked;
        out.triples_raw += p.triples_raw;
        out.triples_nondegenerate += p.triples_nondegenerate;
        out.max_j_threshold = out.max_j_threshold.max(p.max_j_threshold);
        out.max_j_nondegenerate = out.max_j_nondegenerate.max(p.max_j_nondegenerate);
        for (j, n) in &p.j_histogram {
            *out.j_histogram.entry(*j).or_default() += n;
        }
        out.failures.extend(p.failures.iter().cloned());
        out.last_r = out.last_r.max(p.last_r);
    }
    out.failures.sort_by_key(|f| f.r);
    Ok(out)
}
