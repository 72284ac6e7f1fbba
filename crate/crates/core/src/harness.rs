//! Side-by-side comparison of every construction over a parameter sweep.

use std::io::Write;
use std::path::Path;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{prime_powers_up_to, primes_up_to};
use crate::classic;
use crate::error::{Error, Result};
use crate::ff::FieldCtx;
use crate::fold;
use crate::sequence::{Params, SonarSeq};
use crate::sidon::canonical_alpha;
use crate::verify::check_modular;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub construction: String,
    pub params: Params,
    pub m: u64,
    pub n: u64,
    #[serde(with = "ratio_object")]
    pub density: Ratio<u64>,
    pub verified: bool,
}

impl ComparisonRow {
    pub fn params_string(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

mod ratio_object {
    use num_rational::Ratio;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Repr {
        numer: u64,
        denom: u64,
    }

    pub fn serialize<S: Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
        Repr {
            numer: *r.numer(),
            denom: *r.denom(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<u64>, D::Error> {
        let r = Repr::deserialize(d)?;
        if r.denom == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Ratio::new(r.numer, r.denom))
    }
}

/// A construction that could not run for some parameter (e.g. quadratic at p = 2).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedRow {
    pub construction: String,
    pub parameter: u64,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub rows: Vec<ComparisonRow>,
    pub skipped: Vec<SkippedRow>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticCoeffs {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Default for QuadraticCoeffs {
    fn default() -> Self {
        QuadraticCoeffs { a: 1, b: 0, c: 0 }
    }
}

/// Element choice for a prime-field construction. Elements are integers in
/// the field's canonical encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeChoice {
    pub p: u64,
    pub theta: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoseChoice {
    pub q: u64,
    pub theta: u64,
    pub alpha: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairChoice {
    pub q: u64,
    pub alpha: u64,
    pub beta: u64,
}

/// Which parameters each construction uses. Anything not overridden takes the
/// canonical choice: smallest primitive elements, smallest irreducible
/// modulus, smallest `α` outside the base field, `(a, b, c) = (1, 0, 0)`,
/// and Welch shift `s = 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Policy {
    pub quadratic: QuadraticCoeffs,
    pub welch_shift: i64,
    /// Primitive root for both Welch constructions.
    pub welch: Vec<PrimeChoice>,
    pub ruzsa: Vec<PrimeChoice>,
    pub bose: Vec<BoseChoice>,
    pub shift: Vec<PairChoice>,
    pub golomb: Vec<PairChoice>,
}

impl Policy {
    /// Reads a TOML or JSON policy, chosen by file extension.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let format_err = |message: String| Error::Format {
            path: path.to_path_buf(),
            message,
        };
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => serde_json::from_str(&text).map_err(|e| format_err(e.to_string())),
            _ => toml::from_str(&text).map_err(|e| format_err(e.to_string())),
        }
    }

    fn welch_root(&self, p: u64) -> Option<u64> {
        self.welch.iter().find(|c| c.p == p).map(|c| c.theta)
    }

    fn ruzsa_root(&self, p: u64) -> Option<u64> {
        self.ruzsa.iter().find(|c| c.p == p).map(|c| c.theta)
    }
}

#[derive(Clone, Copy, Debug)]
enum Job {
    Quadratic(u64),
    WelchExp(u64),
    WelchExpShort(u64),
    WelchLog(u64),
    RuzsaModP(u64),
    RuzsaModPMinus1(u64),
    Shift(u64),
    Golomb(u64),
    BoseFold(u64),
}

impl Job {
    fn name(self) -> &'static str {
        match self {
            Job::Quadratic(_) => "quadratic",
            Job::WelchExp(_) => "welch-exp",
            Job::WelchExpShort(_) => "welch-exp-short",
            Job::WelchLog(_) => "welch-log",
            Job::RuzsaModP(_) => "ruzsa-fold-mod-p",
            Job::RuzsaModPMinus1(_) => "ruzsa-fold-mod-p-minus-1",
            Job::Shift(_) => "shift",
            Job::Golomb(_) => "golomb",
            Job::BoseFold(_) => "bose-fold",
        }
    }

    fn parameter(self) -> u64 {
        match self {
            Job::Quadratic(x)
            | Job::WelchExp(x)
            | Job::WelchExpShort(x)
            | Job::WelchLog(x)
            | Job::RuzsaModP(x)
            | Job::RuzsaModPMinus1(x)
            | Job::Shift(x)
            | Job::Golomb(x)
            | Job::BoseFold(x) => x,
        }
    }

    /// `(m, n)` promised by the construction's theorem.
    pub fn dimensions(self) -> (u64, u64) {
        match self {
            Job::Quadratic(p) => (p, p + 1),
            Job::WelchExp(p) => (p, p),
            Job::WelchExpShort(p) => (p, p - 1),
            Job::WelchLog(p) => ((p - 1).max(1), p - 1),
            Job::RuzsaModP(p) => (p - 1, p - 1),
            Job::RuzsaModPMinus1(p) => (p, p - 1),
            Job::Shift(q) => ((q - 1).max(1), q),
            Job::Golomb(q) => (q - 1, q - 2),
            Job::BoseFold(q) => ((q - 1).max(1), q),
        }
    }

    fn run(self, policy: &Policy) -> Result<SonarSeq> {
        let prime_root = |p: u64| -> Result<u64> { Ok(FieldCtx::new(p, 1)?.primitive().0) };
        match self {
            Job::Quadratic(p) => {
                let QuadraticCoeffs { a, b, c } = policy.quadratic;
                classic::quadratic(p, a, b, c)
            }
            Job::WelchExp(p) => {
                let alpha = policy.welch_root(p).map_or_else(|| prime_root(p), Ok)?;
                classic::welch_exp(p, alpha, policy.welch_shift, true)
            }
            Job::WelchExpShort(p) => {
                let alpha = policy.welch_root(p).map_or_else(|| prime_root(p), Ok)?;
                classic::welch_exp(p, alpha, 0, false)
            }
            Job::WelchLog(p) => {
                let alpha = policy.welch_root(p).map_or_else(|| prime_root(p), Ok)?;
                classic::welch_log(p, alpha)
            }
            Job::RuzsaModP(p) => {
                let theta = policy.ruzsa_root(p).map_or_else(|| prime_root(p), Ok)?;
                fold::sonar_from_ruzsa_mod_p(p, theta)
            }
            Job::RuzsaModPMinus1(p) => {
                let theta = policy.ruzsa_root(p).map_or_else(|| prime_root(p), Ok)?;
                fold::sonar_from_ruzsa_mod_p_minus_1(p, theta)
            }
            Job::Shift(q) => {
                let ext = FieldCtx::quadratic_extension(q)?;
                let base = FieldCtx::with_order(q)?;
                let (alpha, beta) = match policy.shift.iter().find(|c| c.q == q) {
                    Some(c) => (ext.elem(c.alpha)?, base.elem(c.beta)?),
                    None => (ext.primitive(), base.primitive()),
                };
                classic::shift(&ext, &base, alpha, beta)
            }
            Job::Golomb(q) => {
                let field = FieldCtx::with_order(q)?;
                let (alpha, beta) = match policy.golomb.iter().find(|c| c.q == q) {
                    Some(c) => (field.elem(c.alpha)?, field.elem(c.beta)?),
                    None => (field.primitive(), field.primitive()),
                };
                classic::golomb(&field, alpha, beta)
            }
            Job::BoseFold(q) => {
                let ext = FieldCtx::quadratic_extension(q)?;
                let (theta, alpha) = match policy.bose.iter().find(|c| c.q == q) {
                    Some(c) => (ext.elem(c.theta)?, ext.elem(c.alpha)?),
                    None => (ext.primitive(), canonical_alpha(&ext)?),
                };
                fold::sonar_from_bose(&ext, theta, alpha)
            }
        }
    }

    /// Precondition failures that make a row inapplicable rather than wrong.
    fn skip_reason(self) -> Option<&'static str> {
        match self {
            Job::Quadratic(2) => Some("quadratic construction needs an odd prime"),
            Job::RuzsaModP(2) | Job::RuzsaModPMinus1(2) => {
                Some("Ruzsa construction needs an odd prime")
            }
            Job::Golomb(q) if q <= 2 => Some("Golomb construction needs q > 2"),
            _ => None,
        }
    }
}

enum Outcome {
    Row(ComparisonRow),
    Skipped(SkippedRow),
}

fn run_job(job: Job, policy: &Policy) -> Result<Outcome> {
    if let Some(reason) = job.skip_reason() {
        return Ok(Outcome::Skipped(SkippedRow {
            construction: job.name().into(),
            parameter: job.parameter(),
            reason: reason.into(),
        }));
    }
    let seq = job.run(policy)?;
    let (m, n) = (seq.m(), seq.n() as u64);
    let fail = |detail: String| Error::VerificationFailed {
        construction: job.name().into(),
        detail,
    };
    if (m, n) != job.dimensions() {
        return Err(fail(format!(
            "dimensions {m}x{n}, expected {:?}",
            job.dimensions()
        )));
    }
    let report = check_modular(&seq, m)?;
    if !report.pass {
        return Err(fail(format!(
            "{} witness {:?}",
            seq.provenance().params_string(),
            report.witness
        )));
    }
    Ok(Outcome::Row(ComparisonRow {
        construction: seq.provenance().construction.clone(),
        params: seq.provenance().params.clone(),
        m,
        n,
        density: Ratio::new(n, m),
        verified: true,
    }))
}

/// Runs every construction for primes `p ≤ p_max` and prime powers
/// `q ≤ q_max`. Rows are sorted by `(construction, m, n, params)`.
pub fn run_comparison(p_max: u64, q_max: u64, policy: &Policy) -> Result<Comparison> {
    if p_max < 3 || q_max < 3 {
        return Err(Error::InvalidBound(p_max.min(q_max)));
    }
    let mut jobs = Vec::new();
    for p in primes_up_to(p_max) {
        jobs.extend([
            Job::Quadratic(p),
            Job::WelchExp(p),
            Job::WelchExpShort(p),
            Job::WelchLog(p),
            Job::RuzsaModP(p),
            Job::RuzsaModPMinus1(p),
        ]);
    }
    for q in prime_powers_up_to(q_max) {
        jobs.extend([Job::Shift(q), Job::Golomb(q), Job::BoseFold(q)]);
    }
    let outcomes = jobs
        .par_iter()
        .map(|&job| run_job(job, policy))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Comparison::default();
    for o in outcomes {
        match o {
            Outcome::Row(r) => out.rows.push(r),
            Outcome::Skipped(s) => out.skipped.push(s),
        }
    }
    out.rows.sort_by(|a, b| {
        (&a.construction, a.m, a.n, a.params_string()).cmp(&(
            &b.construction,
            b.m,
            b.n,
            b.params_string(),
        ))
    });
    out.skipped
        .sort_by(|a, b| (&a.construction, a.parameter).cmp(&(&b.construction, b.parameter)));
    Ok(out)
}

pub const CSV_HEADER: &str = "construction,params,m,n,density,verified";

fn quote(field: &str) -> String {
    format!("\"{}\"", field.replace('"', "\"\""))
}

pub fn write_csv<W: Write>(rows: &[ComparisonRow], mut w: W) -> std::io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            r.construction,
            quote(&r.params_string()),
            r.m,
            r.n,
            r.density,
            r.verified
        )?;
    }
    Ok(())
}

pub fn write_json<W: Write>(rows: &[ComparisonRow], mut w: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, rows)?;
    writeln!(w).map_err(|e| Error::Json(serde_json::Error::io(e)))?;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
}

/// Writes `rows` to `path` in the given format.
pub fn export(rows: &[ComparisonRow], format: ExportFormat, path: &Path) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = std::fs::File::create(path).map_err(io_err)?;
    let mut w = std::io::BufWriter::new(file);
    match format {
        ExportFormat::Csv => write_csv(rows, &mut w).map_err(io_err)?,
        ExportFormat::Json => write_json(rows, &mut w)?,
    }
    w.flush().map_err(io_err)
}

pub fn import_json(path: &Path) -> Result<Vec<ComparisonRow>> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Format {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// The Bose-fold row that reproduces the `q = 9` golden set.
pub fn golden_policy() -> Policy {
    Policy {
        bose: vec![BoseChoice {
            q: 9,
            theta: 6,
            alpha: 6,
        }],
        ruzsa: vec![
            PrimeChoice { p: 7, theta: 3 },
            PrimeChoice { p: 13, theta: 2 },
        ],
        ..Policy::default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_bounds() {
        let c = run_comparison(3, 3, &Policy::default()).unwrap();
        assert!(c.rows.len() >= 6);
        assert!(c.rows.iter().all(|r| r.verified));
        assert!(c
            .skipped
            .iter()
            .any(|s| s.construction == "quadratic" && s.parameter == 2));
        assert!(matches!(
            run_comparison(2, 5, &Policy::default()),
            Err(Error::InvalidBound(2))
        ));
    }

    #[test]
    fn csv_format() {
        let row = ComparisonRow {
            construction: "bose-fold".into(),
            params: [("q", 9), ("theta", 6), ("alpha", 6)]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            m: 8,
            n: 9,
            density: Ratio::new(9, 8),
            verified: true,
        };
        let mut buf = Vec::new();
        write_csv(&[row], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "construction,params,m,n,density,verified\n\
             bose-fold,\"q=9;theta=6;alpha=6\",8,9,9/8,true\n"
        );
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn policy_parsing() {
        let p: Policy = toml::from_str(
            "welch_shift = 2\n[quadratic]\na = 2\nb = 1\nc = 0\n[[bose]]\nq = 9\ntheta = 6\nalpha = 6\n",
        )
        .unwrap();
        assert_eq!(p.quadratic, QuadraticCoeffs { a: 2, b: 1, c: 0 });
        assert_eq!(p.bose[0].theta, 6);
        assert!(toml::from_str::<Policy>("bogus = 1").is_err());
    }
}
