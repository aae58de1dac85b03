use std::fs;
use std::path::Path;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{z_function_parts, z_prime, zero_count_below, zeta_prime_from_z_prime};
use crate::roots;
use crate::specfun::{c, ComplexValue};
use crate::{Error, Result};

/// Grid step of the sign-change scan of Z.
pub const ZERO_SCAN_STEP: f64 = 0.05;
/// Largest ordinate [`find_zeros`] will scan to.
pub const ZERO_SCAN_BUDGET: f64 = 500.0;

#[derive(Debug, Clone, Copy)]
struct Derivatives {
    z_prime: f64,
    zeta_prime: ComplexValue,
}

/// One nontrivial zero 1/2 + it on the critical line. Derivatives are
/// computed on first use.
#[derive(Debug, Clone)]
pub struct ZeroRecord {
    pub index: usize,
    pub t: f64,
    derived: OnceLock<Derivatives>,
}

impl PartialEq for ZeroRecord {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index
            && self.t.to_bits() == other.t.to_bits()
            && self.z_prime().to_bits() == other.z_prime().to_bits()
            && self.zeta_prime_at_rho() == other.zeta_prime_at_rho()
    }
}

impl ZeroRecord {
    pub fn new(index: usize, t: f64) -> Self {
        ZeroRecord { index, t, derived: OnceLock::new() }
    }

    fn with_derivatives(index: usize, t: f64, z_prime: f64, zeta_prime: ComplexValue) -> Self {
        let derived = OnceLock::new();
        let _ = derived.set(Derivatives { z_prime, zeta_prime });
        ZeroRecord { index, t, derived }
    }

    fn derived(&self) -> &Derivatives {
        self.derived.get_or_init(|| {
            let z_prime = z_prime(self.t);
            Derivatives { z_prime, zeta_prime: zeta_prime_from_z_prime(self.t, z_prime) }
        })
    }

    /// Z'(t).
    pub fn z_prime(&self) -> f64 {
        self.derived().z_prime
    }

    /// zeta'(1/2 + it).
    pub fn zeta_prime_at_rho(&self) -> ComplexValue {
        self.derived().zeta_prime
    }

    pub fn rho(&self) -> ComplexValue {
        c(0.5, self.t)
    }
}

/// zeta'(rho) for the upper zero of a record.
pub fn zeta_prime_at_zero(rec: &ZeroRecord) -> ComplexValue {
    rec.zeta_prime_at_rho()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroSource {
    Computed,
    Ingested,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroDatabase {
    pub records: Vec<ZeroRecord>,
    pub source: ZeroSource,
    pub t_max_verified: f64,
}

fn nudge_off_zero(t: f64, dir: f64) -> f64 {
    let mut t = t;
    while t > 0.0 && z_function_parts(t).0.abs() < 1e-6 {
        t += dir * 1e-5;
    }
    t
}

/// Zeros of Z in (t_min, t_max], located by a sign-change scan and Brent
/// refinement, with the count checked against the exact counting formula.
pub fn find_zeros(t_min: f64, t_max: f64) -> Result<Vec<ZeroRecord>> {
    if !(0.0 <= t_min && t_min < t_max && t_max <= ZERO_SCAN_BUDGET) {
        return Err(Error::Domain(format!(
            "find_zeros needs 0 <= t_min < t_max <= {ZERO_SCAN_BUDGET}, got ({t_min}, {t_max})"
        )));
    }
    let lo = if t_min > 0.0 { nudge_off_zero(t_min, -1.0).max(0.0) } else { 0.0 };
    let hi = nudge_off_zero(t_max, 1.0);
    let roots = roots::scan_roots(|t| Ok(z_function_parts(t).0), lo, hi, ZERO_SCAN_STEP, 1e-10)?;
    let expected = zero_count_below(hi)? - zero_count_below(lo)?;
    if roots.len() != expected {
        return Err(Error::MissedZero(format!(
            "found {} sign changes in ({lo}, {hi}) but the counting formula gives {expected}",
            roots.len()
        )));
    }
    let first_index = zero_count_below(lo)? + 1;
    let records: Vec<ZeroRecord> = roots
        .into_par_iter()
        .enumerate()
        .filter(|(_, t)| *t > t_min && *t <= t_max)
        .map(|(k, t)| {
            let zp = z_prime(t);
            ZeroRecord::with_derivatives(first_index + k, t, zp, zeta_prime_from_z_prime(t, zp))
        })
        .collect();
    Ok(records)
}

#[derive(Serialize, Deserialize)]
struct ZeroJson {
    index: usize,
    t: f64,
    z_prime: f64,
    zeta_prime_re: f64,
    zeta_prime_im: f64,
}

#[derive(Serialize, Deserialize)]
struct DbJson {
    zeros: Vec<ZeroJson>,
    t_max_verified: f64,
    #[serde(default = "default_source")]
    source: ZeroSource,
}

fn default_source() -> ZeroSource {
    ZeroSource::Ingested
}

impl ZeroDatabase {
    pub fn empty() -> Self {
        ZeroDatabase { records: Vec::new(), source: ZeroSource::Computed, t_max_verified: 0.0 }
    }

    /// All zeros in (0, t_max].
    pub fn compute(t_max: f64) -> Result<Self> {
        let mut db = ZeroDatabase::empty();
        db.extend_to(t_max)?;
        Ok(db)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn ordinates(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.t).collect()
    }

    /// Appends the zeros in (t_max_verified, t_new]; existing records are left
    /// untouched. Returns the number of records added.
    pub fn extend_to(&mut self, t_new: f64) -> Result<usize> {
        if t_new <= self.t_max_verified {
            return Ok(0);
        }
        let found = find_zeros(self.t_max_verified, t_new)?;
        let next = self.records.len() + 1;
        if let Some(first) = found.first() {
            if first.index != next {
                return Err(Error::Consistency(format!(
                    "new zero at {} has index {} but the database holds {} records",
                    first.t,
                    first.index,
                    next - 1
                )));
            }
        }
        let added = found.len();
        self.records.extend(found);
        self.t_max_verified = t_new;
        Ok(added)
    }

    /// First `n` records, or an error if the database is shorter.
    pub fn first(&self, n: usize) -> Result<&[ZeroRecord]> {
        self.records.get(..n).ok_or_else(|| {
            Error::Domain(format!("{n} zeros requested, database holds {}", self.records.len()))
        })
    }

    /// Index of a record whose ordinate lies within `tol` of t.
    pub fn find_near(&self, t: f64, tol: f64) -> Option<&ZeroRecord> {
        let i = self.records.partition_point(|r| r.t < t);
        [i.wrapping_sub(1), i]
            .into_iter()
            .filter_map(|j| self.records.get(j))
            .find(|r| (r.t - t).abs() <= tol)
    }

    pub fn to_json(&self) -> String {
        let doc = DbJson {
            zeros: self
                .records
                .iter()
                .map(|r| {
                    let zp = r.zeta_prime_at_rho();
                    ZeroJson {
                        index: r.index,
                        t: r.t,
                        z_prime: r.z_prime(),
                        zeta_prime_re: zp.re,
                        zeta_prime_im: zp.im,
                    }
                })
                .collect(),
            t_max_verified: self.t_max_verified,
            source: self.source,
        };
        serde_json::to_string_pretty(&doc).expect("finite floats serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: DbJson = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let mut prev = 0.0;
        let mut records = Vec::with_capacity(doc.zeros.len());
        for (k, z) in doc.zeros.into_iter().enumerate() {
            if !(z.t > prev) {
                return Err(Error::Monotonicity { line: k + 1, value: z.t });
            }
            if z.index != k + 1 {
                return Err(Error::Format(format!("record {} carries index {}", k + 1, z.index)));
            }
            prev = z.t;
            records.push(ZeroRecord::with_derivatives(
                z.index,
                z.t,
                z.z_prime,
                c(z.zeta_prime_re, z.zeta_prime_im),
            ));
        }
        if doc.t_max_verified < prev {
            return Err(Error::Format("t_max_verified below the last zero".into()));
        }
        let db = ZeroDatabase { records, source: doc.source, t_max_verified: doc.t_max_verified };
        db.verify()?;
        Ok(db)
    }

    /// Checks that every ordinate is a sign change of Z and that the zero
    /// count at the top of the verified range matches the exact formula.
    pub fn verify(&self) -> Result<()> {
        let bad = self.records.par_iter().find_any(|r| {
            let d = 1e-5;
            z_function_parts(r.t - d).0.signum() == z_function_parts(r.t + d).0.signum()
        });
        if let Some(r) = bad {
            return Err(Error::Consistency(format!("Z does not change sign at t = {}", r.t)));
        }
        let k = self.records.len();
        if k == 0 {
            return Ok(());
        }
        let last = self.records[k - 1].t;
        let gap = if k >= 2 { last - self.records[k - 2].t } else { last };
        let below = last - (0.5 * gap).min(0.01);
        let n = zero_count_below(below)?;
        if n != k - 1 {
            return Err(Error::MissedZero(format!(
                "{} zeros listed below {below}, counting formula gives {n}",
                k - 1
            )));
        }
        Ok(())
    }
}

/// Parses a plain zero table: one ascending ordinate per line, '#' comments.
pub fn parse_zero_table(text: &str) -> Result<ZeroDatabase> {
    let mut records = Vec::new();
    let mut prev = 0.0;
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let t: f64 = body
            .parse()
            .map_err(|_| Error::Format(format!("line {}: cannot parse {body:?}", i + 1)))?;
        if !t.is_finite() || t <= 0.0 {
            return Err(Error::Format(format!("line {}: ordinate {t} is not positive", i + 1)));
        }
        if t <= prev {
            return Err(Error::Monotonicity { line: i + 1, value: t });
        }
        prev = t;
        records.push(ZeroRecord::new(records.len() + 1, t));
    }
    let db = ZeroDatabase { records, source: ZeroSource::Ingested, t_max_verified: prev };
    db.verify()?;
    Ok(db)
}

/// Loads a zero table from disk. Plain text tables and the JSON documents
/// written by [`persist_zeros`] are both accepted.
pub fn ingest_zeros(path: impl AsRef<Path>) -> Result<ZeroDatabase> {
    let text = fs::read_to_string(path)?;
    if text.trim_start().starts_with('{') {
        ZeroDatabase::from_json(&text)
    } else {
        parse_zero_table(&text)
    }
}

pub fn persist_zeros(db: &ZeroDatabase, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, db.to_json())?;
    Ok(())
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_two_zeros() {
        let z = find_zeros(0.0, 25.0).unwrap();
        assert_eq!(z.len(), 2);
        assert!((z[0].t - 14.134_725_141_734_694).abs() < 1e-9);
        assert!((z[1].t - 21.022_039_638_771_555).abs() < 1e-9);
        assert_eq!((z[0].index, z[1].index), (1, 2));
        assert!(find_zeros(0.0, 14.0).unwrap().is_empty());
    }

    #[test]
    fn derivative_at_first_zero() {
        let z = find_zeros(0.0, 15.0).unwrap();
        assert!((z[0].z_prime() - 0.793_160_433_356_506_2).abs() < 1e-8);
        let want = c(0.783_296_511_867_031_086_67, 0.124_699_829_748_170_565_31);
        assert!((z[0].zeta_prime_at_rho() - want).norm() < 1e-8);
    }

    #[test]
    fn table_parsing() {
        let db = parse_zero_table("14.134725\n21.022040\n").unwrap();
        assert_eq!(db.len(), 2);
        assert_eq!(db.t_max_verified, 21.022040);
        let db = parse_zero_table("").unwrap();
        assert!(db.is_empty() && db.t_max_verified == 0.0);
        assert!(matches!(parse_zero_table("21.02204\n14.134725\n"), Err(Error::Monotonicity { .. })));
        assert!(matches!(parse_zero_table("abc\n"), Err(Error::Format(_))));
        assert!(matches!(parse_zero_table("15.0\n"), Err(Error::Consistency(_))));
        assert!(matches!(parse_zero_table("21.022040\n"), Err(Error::MissedZero(_))));
    }

    #[test]
    fn extend_appends() {
        let mut db = ZeroDatabase::compute(30.0).unwrap();
        let before = db.records.clone();
        let added = db.extend_to(40.0).unwrap();
        assert_eq!(added, 3);
        assert_eq!(&db.records[..before.len()], &before[..]);
        assert_eq!(db.records.last().unwrap().index, 6);
        assert!(matches!(db.extend_to(35.0), Ok(0)));
    }
}
