//! On-disk cache of census tallies, one JSON file per
//! `(p, e, modulus, n, h)`. A file that does not parse, carries another
//! schema or describes another query is reported as stale and recomputed.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use hankelff_core::census::{CensusKey, CensusQuery, CensusReport, CensusTally};
use hankelff_core::ffield::Field;
use serde::{Deserialize, Serialize};

use crate::format::FieldJson;

pub const CACHE_SCHEMA: &str = "hankelff-census/v1";

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: not a {CACHE_SCHEMA} file for this query")]
    SchemaMismatch { path: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub schema: String,
    pub field: FieldJson,
    pub n: usize,
    pub h: usize,
    pub total: String,
    pub records: Vec<CacheRecord>,
}

/// One reconciled count. `kind` is `class`, `rank` or `shape`; `rho`/`pi`
/// are set for classes and `l`/`m` for shapes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub kind: String,
    pub r: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub brute: String,
    pub formula: String,
    #[serde(rename = "match")]
    pub matched: bool,
}

impl CacheRecord {
    pub fn key(&self) -> Option<CensusKey> {
        match (self.kind.as_str(), self.rho, self.pi, self.l, self.m) {
            ("class", Some(rho), Some(pi), None, None) => Some(CensusKey::Class { r: self.r, rho, pi }),
            ("rank", None, None, None, None) => Some(CensusKey::Rank { r: self.r }),
            ("shape", None, None, Some(l), Some(m)) => Some(CensusKey::Shape { l, m, r: self.r }),
            _ => None,
        }
    }
}

/// `(kind, r, rho, pi, l, m)` of a key, as stored in a record.
pub type KeyFields = (&'static str, usize, Option<usize>, Option<usize>, Option<usize>, Option<usize>);

pub fn key_fields(key: &CensusKey) -> KeyFields {
    match *key {
        CensusKey::Class { r, rho, pi } => ("class", r, Some(rho), Some(pi), None, None),
        CensusKey::Rank { r } => ("rank", r, None, None, None, None),
        CensusKey::Shape { l, m, r } => ("shape", r, None, None, Some(l), Some(m)),
    }
}

impl CacheFile {
    pub fn of(field: &Field, report: &CensusReport) -> CacheFile {
        let records = report
            .records
            .iter()
            .map(|rec| {
                let (kind, r, rho, pi, l, m) = key_fields(&rec.key);
                CacheRecord {
                    kind: kind.to_string(),
                    r,
                    rho,
                    pi,
                    l,
                    m,
                    brute: rec.brute.to_string(),
                    formula: rec.formula.value.to_string(),
                    matched: rec.matches(),
                }
            })
            .collect();
        CacheFile {
            schema: CACHE_SCHEMA.to_string(),
            field: FieldJson::of(field),
            n: report.query.n,
            h: report.query.h,
            total: report.total.to_string(),
            records,
        }
    }

    /// The stored brute counts as a tally, or `None` if any entry is
    /// malformed.
    pub fn tally(&self) -> Option<CensusTally> {
        let total: u64 = self.total.parse().ok()?;
        let counts = self
            .records
            .iter()
            .map(|r| Some((r.key()?, r.brute.parse::<u64>().ok()?)))
            .collect::<Option<Vec<_>>>()?;
        Some(CensusTally::from_counts(total, counts.into_iter().filter(|(_, c)| *c > 0)))
    }
}

pub fn cache_path(dir: &Path, field: &Field, query: &CensusQuery) -> PathBuf {
    let fj = FieldJson::of(field);
    let modulus: Vec<String> = fj.modulus.iter().map(|c| c.to_string()).collect();
    let modulus = if modulus.is_empty() { "none".to_string() } else { modulus.join("-") };
    dir.join(format!("census-p{}-e{}-m{}-n{}-h{}.json", fj.p, fj.e, modulus, query.n, query.h))
}

pub fn write(dir: &Path, field: &Field, report: &CensusReport) -> Result<PathBuf, CacheError> {
    let path = cache_path(dir, field, &report.query);
    let mut text = serde_json::to_string_pretty(&CacheFile::of(field, report)).expect("cache files serialize");
    text.push('\n');
    fs::write(&path, text).map_err(|source| CacheError::Io { path: path.clone(), source })?;
    Ok(path)
}

/// `Ok(None)` when there is no file yet.
pub fn read(dir: &Path, field: &Field, query: &CensusQuery) -> Result<Option<CensusTally>, CacheError> {
    let path = cache_path(dir, field, query);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => {
            if !dir.is_dir() {
                return Err(CacheError::Io { path: dir.to_path_buf(), source: e });
            }
            return Ok(None);
        }
        Err(source) => return Err(CacheError::Io { path, source }),
    };
    let stale = || CacheError::SchemaMismatch { path: path.clone() };
    let file: CacheFile = serde_json::from_str(&text).map_err(|_| stale())?;
    if file.schema != CACHE_SCHEMA || file.field != FieldJson::of(field) || file.n != query.n || file.h != query.h {
        return Err(stale());
    }
    file.tally().map(Some).ok_or_else(stale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hankelff_core::census::{census_enumerate, census_reconcile, DEFAULT_BUDGET};

    fn report(field: &Field, n: usize, h: usize) -> (CensusTally, CensusReport) {
        let q = CensusQuery::new(n, h);
        let t = census_enumerate(field, &q, DEFAULT_BUDGET).unwrap();
        let r = census_reconcile(field, &q, &t);
        (t, r)
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let f2 = Field::prime(2).unwrap();
        let (_, rep) = report(&f2, 5, 1);
        let path = write(dir.path(), &f2, &rep).unwrap();
        assert!(path.ends_with("census-p2-e1-mnone-n5-h1.json"));
        let tally = read(dir.path(), &f2, &rep.query).unwrap().unwrap();
        assert_eq!(census_reconcile(&f2, &rep.query, &tally).records, rep.records);
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.contains("\"schema\": \"hankelff-census/v1\""));
    }

    #[test]
    fn stale_and_missing() {
        let dir = tempfile::tempdir().unwrap();
        let f2 = Field::prime(2).unwrap();
        let q = CensusQuery::new(3, 0);
        assert!(read(dir.path(), &f2, &q).unwrap().is_none());
        let path = cache_path(dir.path(), &f2, &q);
        fs::write(&path, "{not json").unwrap();
        assert!(matches!(read(dir.path(), &f2, &q), Err(CacheError::SchemaMismatch { .. })));
        let (_, rep) = report(&f2, 3, 0);
        let mut file = CacheFile::of(&f2, &rep);
        file.schema = "hankelff-census/v0".into();
        fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
        assert!(matches!(read(dir.path(), &f2, &q), Err(CacheError::SchemaMismatch { .. })));
        let missing = dir.path().join("nope");
        match write(&missing, &f2, &rep) {
            Err(CacheError::Io { path, .. }) => assert!(path.starts_with(&missing)),
            other => panic!("expected an io error, got {other:?}"),
        }
        match read(&missing, &f2, &q) {
            Err(CacheError::Io { path, .. }) => assert_eq!(path, missing),
            other => panic!("expected an io error, got {other:?}"),
        }
    }
}
