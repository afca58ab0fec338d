//! Append-only results cache: one tab-separated record per line,
//! `n k d s mode h certified nodes timestamp`.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::search::{Mode, SearchResult};

pub const CACHE_ENV: &str = "CONDINT_CACHE";
pub const DEFAULT_CACHE: &str = "./hcache.tsv";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: malformed cache record: {message}")]
    Malformed { path: String, line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheRecord {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub s: usize,
    pub mode: Mode,
    pub h: usize,
    pub certified: bool,
    pub nodes: u64,
    pub timestamp: String,
}

impl CacheRecord {
    pub fn from_result(r: &SearchResult) -> Self {
        CacheRecord {
            n: r.n,
            k: r.k,
            d: r.d,
            s: r.s,
            mode: r.mode,
            h: r.h,
            certified: r.certified,
            nodes: r.nodes_explored,
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }

    pub fn key(&self) -> (usize, usize, usize, usize, Mode) {
        (self.n, self.k, self.d, self.s, self.mode)
    }

    pub fn to_line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.n,
            self.k,
            self.d,
            self.s,
            self.mode.as_str(),
            self.h,
            self.certified,
            self.nodes,
            self.timestamp
        )
    }

    pub fn parse_line(line: &str) -> Result<Self, String> {
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 9 {
            return Err(format!("expected 9 fields, found {}", f.len()));
        }
        let num = |i: usize| f[i].parse::<usize>().map_err(|_| format!("field {}: bad integer `{}`", i + 1, f[i]));
        Ok(CacheRecord {
            n: num(0)?,
            k: num(1)?,
            d: num(2)?,
            s: num(3)?,
            mode: f[4].parse()?,
            h: num(5)?,
            certified: f[6].parse().map_err(|_| format!("field 7: bad flag `{}`", f[6]))?,
            nodes: f[7].parse().map_err(|_| format!("field 8: bad count `{}`", f[7]))?,
            timestamp: f[8].to_string(),
        })
    }
}

#[derive(Debug, Clone)]
pub struct ResultsCache {
    path: PathBuf,
}

impl ResultsCache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        ResultsCache { path: path.into() }
    }

    /// `$CONDINT_CACHE`, or `./hcache.tsv`.
    pub fn from_env() -> Self {
        Self::new(std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| DEFAULT_CACHE.into()))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn io_err(&self, source: std::io::Error) -> CacheError {
        CacheError::Io {
            path: self.path.display().to_string(),
            source,
        }
    }

    pub fn records(&self) -> Result<Vec<CacheRecord>, CacheError> {
        let text = match std::fs::read_to_string(&self.path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(self.io_err(e)),
        };
        text.lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                CacheRecord::parse_line(l).map_err(|message| CacheError::Malformed {
                    path: self.path.display().to_string(),
                    line: i + 1,
                    message,
                })
            })
            .collect()
    }

    /// Latest certified record for the key, else the latest record.
    pub fn lookup(&self, n: usize, k: usize, d: usize, s: usize, mode: Mode) -> Result<Option<CacheRecord>, CacheError> {
        let matching: Vec<CacheRecord> = self
            .records()?
            .into_iter()
            .filter(|r| r.key() == (n, k, d, s, mode))
            .collect();
        let certified = matching.iter().rev().find(|r| r.certified).cloned();
        Ok(certified.or_else(|| matching.last().cloned()))
    }

    pub fn append(&self, record: &CacheRecord) -> Result<(), CacheError> {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| self.io_err(e))?;
        writeln!(file, "{}", record.to_line()).map_err(|e| self.io_err(e))
    }
}
