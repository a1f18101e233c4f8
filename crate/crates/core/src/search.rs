//! Corpus-wide search for a target average order, and verification sweeps.
//!
//! Records are processed independently on a worker pool; results are sorted
//! by `(order, id)` before anything is emitted, so the output does not depend
//! on scheduling or on the number of workers.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::arith::{factorize, prime_divisors, Rational};
use crate::bounds::{admissible_order_for, laffey_check, lemma22_verify, miller_check, sylow_factor_check};
use crate::corpus::{corpus_digest, GroupRecord};
use crate::error::{Error, Result};
use crate::proof::replay_proof;
use crate::report::{BoundReport, Verdict};
use crate::series::is_solvable;
use crate::spectrum::{lemma21_check, order_spectrum};
use crate::sylow::{sylow_count, sylow_subgroup};

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub target: Rational,
    pub max_order: Option<u64>,
    /// Skip orders that cannot carry the target average (see [`admissible_order_for`]).
    pub prefilter: bool,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl SearchOptions {
    pub fn new(target: Rational) -> Self {
        SearchOptions {
            target,
            max_order: None,
            prefilter: true,
            jobs: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchMatch {
    pub id: String,
    pub order: u64,
    pub avg_order: Rational,
    pub solvable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub target: Rational,
    pub max_order: Option<u64>,
    pub prefilter: bool,
    pub corpus_digest: String,
    pub scanned: usize,
    pub compared: usize,
    pub filtered_by_order: usize,
    pub filtered_by_prefilter: usize,
    pub matches: Vec<SearchMatch>,
    pub skipped: Vec<(String, String)>,
}

impl SearchReport {
    /// Every scanned record lands in exactly one bucket.
    pub fn is_accounted(&self) -> bool {
        self.scanned == self.compared + self.filtered_by_order + self.filtered_by_prefilter + self.skipped.len()
    }
}

impl fmt::Display for SearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "target {}", self.target)?;
        match self.max_order {
            Some(m) => writeln!(f, "max-order {m}")?,
            None => writeln!(f, "max-order none")?,
        }
        writeln!(f, "prefilter {}", if self.prefilter { "on" } else { "off" })?;
        writeln!(f, "corpus-digest {}", self.corpus_digest)?;
        writeln!(f, "scanned {}", self.scanned)?;
        writeln!(f, "compared {}", self.compared)?;
        writeln!(f, "filtered-order {}", self.filtered_by_order)?;
        writeln!(f, "filtered-prefilter {}", self.filtered_by_prefilter)?;
        writeln!(f, "skipped {}", self.skipped.len())?;
        writeln!(f, "matches {}", self.matches.len())?;
        for m in &self.matches {
            writeln!(
                f,
                "match {} order {} avg {} solvable {}",
                m.id, m.order, m.avg_order, m.solvable
            )?;
        }
        for (id, reason) in &self.skipped {
            writeln!(f, "skip {id} {reason}")?;
        }
        Ok(())
    }
}

enum Outcome {
    Compared(Option<SearchMatch>),
    FilteredOrder,
    FilteredPrefilter,
    Skipped(String),
}

fn with_pool<T: Send>(jobs: Option<usize>, work: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(work()),
        Some(0) => Err(Error::invalid("jobs must be at least 1")),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?;
            Ok(pool.install(work))
        }
    }
}

/// Sort key shared by every report: declared or computed order first, then id.
fn record_key(r: &GroupRecord) -> (u64, &str) {
    (r.known_order().unwrap_or(u64::MAX), r.id.as_str())
}

fn search_one(record: &GroupRecord, options: &SearchOptions) -> Outcome {
    let order = match record.known_order().map(Ok).unwrap_or_else(|| record.group.order()) {
        Ok(o) => o,
        Err(e) => return Outcome::Skipped(e.to_string()),
    };
    if options.max_order.is_some_and(|m| order > m) {
        return Outcome::FilteredOrder;
    }
    if options.prefilter && !admissible_order_for(&options.target, order) {
        return Outcome::FilteredPrefilter;
    }
    let spectrum = match order_spectrum(&record.group) {
        Ok(s) => s,
        Err(e) => return Outcome::Skipped(e.to_string()),
    };
    let avg = spectrum.avg_order();
    if avg != options.target {
        return Outcome::Compared(None);
    }
    match is_solvable(&record.group) {
        Ok(solvable) => Outcome::Compared(Some(SearchMatch {
            id: record.id.clone(),
            order: spectrum.group_order(),
            avg_order: avg,
            solvable,
        })),
        Err(e) => Outcome::Skipped(e.to_string()),
    }
}

pub fn search(records: &[GroupRecord], options: &SearchOptions) -> Result<SearchReport> {
    let outcomes: Vec<(&GroupRecord, Outcome)> = with_pool(options.jobs, || {
        records.par_iter().map(|r| (r, search_one(r, options))).collect()
    })?;
    let mut report = SearchReport {
        target: options.target.clone(),
        max_order: options.max_order,
        prefilter: options.prefilter,
        corpus_digest: corpus_digest(records),
        scanned: records.len(),
        compared: 0,
        filtered_by_order: 0,
        filtered_by_prefilter: 0,
        matches: Vec::new(),
        skipped: Vec::new(),
    };
    for (record, outcome) in outcomes {
        match outcome {
            Outcome::Compared(m) => {
                report.compared += 1;
                report.matches.extend(m);
            }
            Outcome::FilteredOrder => report.filtered_by_order += 1,
            Outcome::FilteredPrefilter => report.filtered_by_prefilter += 1,
            Outcome::Skipped(reason) => report.skipped.push((record.id.clone(), reason)),
        }
    }
    report.matches.sort_by(|a, b| (a.order, &a.id).cmp(&(b.order, &b.id)));
    report.skipped.sort();
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Bounds,
    Lemmas,
    Spectra,
    Proof,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Bounds => "bounds",
            Suite::Lemmas => "lemmas",
            Suite::Spectra => "spectra",
            Suite::Proof => "proof",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bounds" => Ok(Suite::Bounds),
            "lemmas" => Ok(Suite::Lemmas),
            "spectra" => Ok(Suite::Spectra),
            "proof" => Ok(Suite::Proof),
            other => Err(Error::invalid(format!("unknown suite {other:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub text: String,
    pub verdict: Verdict,
}

impl Check {
    fn bound(r: BoundReport) -> Self {
        Check {
            verdict: r.verdict,
            text: r.to_string(),
        }
    }

    fn fact(subject: &str, name: &str, detail: String, ok: bool) -> Self {
        let verdict = if ok { Verdict::Holds } else { Verdict::Violated };
        Check {
            text: format!("{subject} | {name} | {detail} | {verdict}"),
            verdict,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub suite: Suite,
    pub records: usize,
    pub checks: Vec<Check>,
    pub skipped: Vec<(String, String)>,
}

impl VerifyReport {
    pub fn count(&self, verdict: Verdict) -> usize {
        self.checks.iter().filter(|c| c.verdict == verdict).count()
    }

    pub fn violations(&self) -> usize {
        self.count(Verdict::Violated)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{}", c.text)?;
        }
        for (id, reason) in &self.skipped {
            writeln!(f, "skip {id} {reason}")?;
        }
        writeln!(
            f,
            "suite {}: records {}, checks {}, holds {}, equality {}, hypothesis_not_met {}, violated {}, skipped {}",
            self.suite,
            self.records,
            self.checks.len(),
            self.count(Verdict::Holds),
            self.count(Verdict::Equality),
            self.count(Verdict::HypothesisNotMet),
            self.violations(),
            self.skipped.len()
        )
    }
}

fn bounds_checks(r: &GroupRecord) -> Result<Vec<Check>> {
    let g = &r.group;
    let spectrum = order_spectrum(g)?;
    let order = spectrum.group_order();
    let mut out = Vec::new();
    for p in prime_divisors(order) {
        out.push(Check::bound(laffey_check(&r.id, &spectrum, p)?));
    }
    out.push(Check::bound(miller_check(&r.id, g)?));
    for (p, e) in factorize(order) {
        let sylow = sylow_subgroup(g, p)?.order()?;
        let full = p.pow(e);
        out.push(Check::fact(&r.id, &format!("sylow-order(p={p})"), format!("{sylow} == {full}"), sylow == full));
        let count = sylow_count(g, p)?;
        out.push(Check::fact(
            &r.id,
            &format!("sylow-count(p={p})"),
            format!("{count} = 1 mod {p}, divides {}", order / full),
            count % p == 1 && (order / full) % count == 0,
        ));
    }
    Ok(out)
}

fn lemma_checks(r: &GroupRecord) -> Result<Vec<Check>> {
    let g = &r.group;
    let spectrum = order_spectrum(g)?;
    let gap = spectrum.six_bound_gap();
    let small = spectrum.max_order() <= 6;
    Ok(vec![
        Check::fact(
            &r.id,
            "six-bound-gap",
            format!("gap {gap}, max order {}", spectrum.max_order()),
            !gap.is_negative() && (gap.is_zero() == small),
        ),
        Check::bound(lemma21_check(&r.id, &spectrum)),
        Check::bound(lemma22_verify(&r.id, g)?),
        Check::bound(sylow_factor_check(&r.id, g)?),
    ])
}

fn spectra_checks(r: &GroupRecord) -> Result<Vec<Check>> {
    let g = &r.group;
    let spectrum = order_spectrum(g)?;
    let order = g.order()?;
    let mut out = vec![Check {
        text: format!(
            "{} | spectrum | order {order} psi {} avg {} | {}",
            r.id,
            spectrum.psi(),
            spectrum.avg_order(),
            spectrum
        ),
        verdict: Verdict::Holds,
    }];
    for v in spectrum.invariant_violations() {
        out.push(Check::fact(&r.id, "spectrum-invariant", v, false));
    }
    if spectrum.avg_order() < Rational::one() || (spectrum.avg_order() == Rational::one()) != (order == 1) {
        out.push(Check::fact(&r.id, "average-floor", spectrum.avg_order().to_string(), false));
    }
    Ok(out)
}

pub fn verify(records: &[GroupRecord], suite: Suite, jobs: Option<usize>) -> Result<VerifyReport> {
    if suite == Suite::Proof {
        let proof = replay_proof();
        let mut checks: Vec<Check> = proof
            .steps
            .iter()
            .map(|s| Check {
                text: s.to_string(),
                verdict: if s.matches_reference() { Verdict::Holds } else { Verdict::Violated },
            })
            .collect();
        for id in proof.missing() {
            checks.push(Check {
                text: format!("{id} | missing | - | no step produced this value"),
                verdict: Verdict::Violated,
            });
        }
        return Ok(VerifyReport {
            suite,
            records: 0,
            checks,
            skipped: Vec::new(),
        });
    }

    let run = match suite {
        Suite::Bounds => bounds_checks,
        Suite::Lemmas => lemma_checks,
        Suite::Spectra => spectra_checks,
        Suite::Proof => unreachable!(),
    };
    let mut order: Vec<&GroupRecord> = records.iter().collect();
    order.sort_by(|a, b| record_key(a).cmp(&record_key(b)));
    let results: Vec<(&GroupRecord, Result<Vec<Check>>)> =
        with_pool(jobs, || order.par_iter().map(|r| (*r, run(r))).collect())?;

    let mut report = VerifyReport {
        suite,
        records: records.len(),
        checks: Vec::new(),
        skipped: Vec::new(),
    };
    for (record, result) in results {
        match result {
            Ok(checks) => report.checks.extend(checks),
            Err(e @ Error::CapExceeded { .. }) => report.skipped.push((record.id.clone(), e.to_string())),
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}
