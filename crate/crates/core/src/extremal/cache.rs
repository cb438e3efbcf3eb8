use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::{parse, serialize};
use crate::hypergraph::Hypergraph;
use crate::rational::parse_rational;

use super::search::{extremal_search, ExtremalRecord, Mode, SearchKind, SearchOptions};

/// Environment variable overriding the default cache location.
pub const CACHE_ENV: &str = "HYPERLAG_CACHE";

const DEFAULT_FILE: &str = ".hyperlag-cache.jsonl";

#[derive(Debug, Serialize, Deserialize)]
struct Line {
    forbidden_serialized: String,
    n: usize,
    mode: Mode,
    search: SearchKind,
    max_lubell: String,
    witness_serialized: String,
    seed: u64,
    timestamp: u64,
}

/// Append-only JSON-lines store of extremal search results.
#[derive(Debug, Clone)]
pub struct ExtremalCache {
    path: PathBuf,
}

impl ExtremalCache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        ExtremalCache { path: path.into() }
    }

    /// `$HYPERLAG_CACHE` if set, otherwise `.hyperlag-cache.jsonl` in the
    /// working directory.
    pub fn default_path() -> PathBuf {
        std::env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_FILE))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Most recent exhaustive record for `(f, n, mode)`, if any.
    pub fn lookup(&self, f: &Hypergraph, n: usize, mode: Mode) -> Result<Option<ExtremalRecord>> {
        let file = match std::fs::File::open(&self.path) {
            Ok(file) => file,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let key = serialize(f);
        let mut found = None;
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let bad =
                |msg: String| Error::Cache(format!("{}:{}: {msg}", self.path.display(), i + 1));
            let rec: Line = serde_json::from_str(&line).map_err(|e| bad(e.to_string()))?;
            if rec.search != SearchKind::Exhaustive
                || rec.n != n
                || rec.mode != mode
                || rec.forbidden_serialized != key
            {
                continue;
            }
            let max_lubell =
                parse_rational(&rec.max_lubell).ok_or_else(|| bad("bad max_lubell".into()))?;
            let witness = parse(&rec.witness_serialized).map_err(|e| bad(e.to_string()))?;
            found = Some(ExtremalRecord {
                forbidden: f.clone(),
                n,
                mode,
                search: rec.search,
                max_lubell,
                witness,
                seed: rec.seed,
            });
        }
        Ok(found)
    }

    pub fn append(&self, record: &ExtremalRecord) -> Result<()> {
        let line = Line {
            forbidden_serialized: serialize(&record.forbidden),
            n: record.n,
            mode: record.mode,
            search: record.search,
            max_lubell: record.max_lubell.to_string(),
            witness_serialized: serialize(&record.witness),
            seed: record.seed,
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        };
        let mut text = serde_json::to_string(&line).map_err(|e| Error::Cache(e.to_string()))?;
        text.push('\n');
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        file.write_all(text.as_bytes())?;
        Ok(())
    }
}

/// [`extremal_search`] backed by a cache. Exhaustive results are read back
/// when present; every fresh result is appended. The flag reports a cache hit.
pub fn cached_search(
    f: &Hypergraph,
    n: usize,
    mode: Mode,
    search: SearchKind,
    opts: &SearchOptions,
    cache: &ExtremalCache,
) -> Result<(ExtremalRecord, bool)> {
    if search == SearchKind::Exhaustive {
        if let Some(rec) = cache.lookup(f, n, mode)? {
            return Ok((rec, true));
        }
    }
    let rec = extremal_search(f, n, mode, search, opts)?;
    cache.append(&rec)?;
    Ok((rec, false))
}
