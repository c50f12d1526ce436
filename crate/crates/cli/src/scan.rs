//! Range verification over many `d`.

use std::fmt;

use genus_core::bqf::MAX_ABS_DISC;
use genus_core::genus::{Genus, GenusReport};
use genus_core::intkit::factorize;
use genus_core::quadfield::{has_norm_minus_one, norm_minus_one_by_period_parity, QuadField};
use genus_core::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::{Cache, CacheRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// `rank Cl+[2] = r - 1`.
    Gauss,
    /// Genus map kernel has two elements and the image is all of `Cl+[2]`.
    Kernel,
    /// `(sqrt d)` is narrowly principal exactly when a norm -1 unit exists.
    Wide,
    /// CF unit norm, CF period parity and the class of `(sqrt d)` agree.
    NormMinusOne,
}

impl Check {
    pub const ALL: [Check; 4] = [Check::Gauss, Check::Kernel, Check::Wide, Check::NormMinusOne];

    pub fn name(self) -> &'static str {
        match self {
            Check::Gauss => "gauss",
            Check::Kernel => "kernel",
            Check::Wide => "wide",
            Check::NormMinusOne => "norm_minus_one",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignFilter {
    Both,
    Positive,
    Negative,
}

/// Largest `|d|` a scan accepts.
pub const MAX_ABS_D: i64 = MAX_ABS_DISC / 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanJob {
    pub d_min: i64,
    pub d_max: i64,
    pub sign: SignFilter,
    pub checks: Vec<Check>,
    pub workers: usize,
    pub max_class_number: usize,
}

impl ScanJob {
    pub fn validate(&self) -> Result<()> {
        if self.d_min > self.d_max {
            return Err(Error::invalid(format!("d_min {} exceeds d_max {}", self.d_min, self.d_max)));
        }
        if self.d_min < -MAX_ABS_D || self.d_max > MAX_ABS_D {
            return Err(Error::invalid(format!("scan range must lie within +-{MAX_ABS_D}")));
        }
        if self.checks.is_empty() {
            return Err(Error::invalid("select at least one check"));
        }
        if self.workers == 0 {
            return Err(Error::invalid("at least one worker is required"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckTally {
    pub check: Check,
    pub pass: usize,
    pub fail: usize,
    /// Values of `d` where the check does not apply (e.g. norm -1 for `d < 0`).
    pub not_applicable: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Anomaly {
    pub d: i64,
    pub check: Check,
    pub detail: String,
    pub report: GenusReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub d_min: i64,
    pub d_max: i64,
    pub sign: SignFilter,
    pub checks: Vec<Check>,
    pub examined: usize,
    pub skipped_non_squarefree: usize,
    /// `d = 0` and `d = 1`.
    pub skipped_degenerate: usize,
    pub tallies: Vec<CheckTally>,
    pub anomalies: Vec<Anomaly>,
}

impl ScanSummary {
    pub fn has_anomalies(&self) -> bool {
        !self.anomalies.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "scan d in [{}, {}] ({:?}): {} fields, {} non-squarefree skipped, {} degenerate skipped\n",
            self.d_min, self.d_max, self.sign, self.examined, self.skipped_non_squarefree, self.skipped_degenerate
        );
        for t in &self.tallies {
            out += &format!(
                "  {:<15} pass {:>6}  fail {:>6}  n/a {:>6}\n",
                t.check.name(),
                t.pass,
                t.fail,
                t.not_applicable
            );
        }
        if self.anomalies.is_empty() {
            out += "  no anomalies\n";
        }
        for a in &self.anomalies {
            out += &format!("  ANOMALY d={} check={}: {}\n", a.d, a.check, a.detail);
        }
        out
    }
}

/// Scan result plus cache statistics, which are kept out of the summary so
/// that cold and warm runs print identical summaries.
#[derive(Debug, Clone)]
pub struct ScanOutcome {
    pub summary: ScanSummary,
    pub cache_hits: usize,
    pub computed: usize,
}

/// Per-check verdict: `None` when not applicable, else `(passed, detail)`.
type Verdict = Option<(bool, String)>;

struct PerD {
    d: i64,
    report: GenusReport,
    verdicts: Vec<(Check, Verdict)>,
    from_cache: bool,
}

enum Entry {
    Field(i64),
    NonSquarefree,
    Degenerate,
}

fn classify(d: i64, sign: SignFilter) -> Result<Option<Entry>> {
    let keep = match sign {
        SignFilter::Both => true,
        SignFilter::Positive => d > 0,
        SignFilter::Negative => d < 0,
    };
    if !keep {
        return Ok(None);
    }
    if d == 0 || d == 1 {
        return Ok(Some(Entry::Degenerate));
    }
    Ok(Some(if factorize(d)?.is_squarefree() {
        Entry::Field(d)
    } else {
        Entry::NonSquarefree
    }))
}

fn evaluate(d: i64, checks: &[Check], cache: &Cache, max_h: usize) -> Result<PerD> {
    let field = QuadField::from_d(d)?;
    let (genus, report, from_cache) = match cache.get(field.disc) {
        Some(rec) => (
            Genus::with_group(field.clone(), rec.class_group.clone())?,
            rec.genus_report.clone(),
            true,
        ),
        None => {
            let genus = Genus::new(field.clone(), max_h)?;
            let report = genus.verify_gauss()?;
            cache
                .append(&CacheRecord::new(genus.group.clone(), report.clone()))
                .map_err(|e| Error::invalid(format!("cache write failed: {e}")))?;
            (genus, report, false)
        }
    };
    let mut verdicts = Vec::with_capacity(checks.len());
    for &check in checks {
        let v: Verdict = match check {
            Check::Gauss => Some((
                report.gauss_holds,
                format!("rank2 = {}, r = {}", report.rank2, report.r),
            )),
            Check::Kernel => Some((
                report.kernel_masks.len() == 2 && report.image_is_two_torsion,
                format!(
                    "kernel masks {:?}, image is Cl+[2]: {}",
                    report.kernel_masks, report.image_is_two_torsion
                ),
            )),
            Check::Wide => {
                let w = genus.wide_two_torsion()?;
                Some((
                    w.consistent,
                    format!("c principal: {}, norm -1 unit: {}", w.c_principal, w.norm_minus_one),
                ))
            }
            Check::NormMinusOne if field.is_real => {
                let unit = has_norm_minus_one(&field)?;
                let parity = norm_minus_one_by_period_parity(&field)?;
                let form = genus.wide_two_torsion()?.c_principal;
                Some((
                    unit == parity && parity == form,
                    format!("unit norm: {unit}, odd period: {parity}, (sqrt d) principal: {form}"),
                ))
            }
            Check::NormMinusOne => None,
        };
        verdicts.push((check, v));
    }
    Ok(PerD {
        d,
        report,
        verdicts,
        from_cache,
    })
}

pub fn run_scan(job: &ScanJob, cache: &Cache) -> Result<ScanOutcome> {
    job.validate()?;
    let mut checks = job.checks.clone();
    checks.sort_unstable();
    checks.dedup();

    let mut fields = Vec::new();
    let (mut non_squarefree, mut degenerate) = (0, 0);
    for d in job.d_min..=job.d_max {
        match classify(d, job.sign)? {
            Some(Entry::Field(d)) => fields.push(d),
            Some(Entry::NonSquarefree) => non_squarefree += 1,
            Some(Entry::Degenerate) => degenerate += 1,
            None => {}
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(job.workers)
        .build()
        .map_err(|e| Error::resource(format!("cannot start workers: {e}")))?;
    let results: Vec<Result<PerD>> = pool.install(|| {
        fields
            .par_iter()
            .map(|&d| evaluate(d, &checks, cache, job.max_class_number))
            .collect()
    });

    let mut tallies: Vec<CheckTally> = checks
        .iter()
        .map(|&check| CheckTally {
            check,
            pass: 0,
            fail: 0,
            not_applicable: 0,
        })
        .collect();
    let mut anomalies = Vec::new();
    let (mut hits, mut computed) = (0, 0);
    for res in results {
        let per = res?;
        if per.from_cache {
            hits += 1;
        } else {
            computed += 1;
        }
        for (tally, (check, verdict)) in tallies.iter_mut().zip(per.verdicts) {
            match verdict {
                None => tally.not_applicable += 1,
                Some((true, _)) => tally.pass += 1,
                Some((false, detail)) => {
                    tally.fail += 1;
                    anomalies.push(Anomaly {
                        d: per.d,
                        check,
                        detail,
                        report: per.report.clone(),
                    });
                }
            }
        }
    }
    Ok(ScanOutcome {
        summary: ScanSummary {
            d_min: job.d_min,
            d_max: job.d_max,
            sign: job.sign,
            checks,
            examined: fields.len(),
            skipped_non_squarefree: non_squarefree,
            skipped_degenerate: degenerate,
            tallies,
            anomalies,
        },
        cache_hits: hits,
        computed,
    })
}
