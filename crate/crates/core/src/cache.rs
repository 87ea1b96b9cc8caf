//! On-disk cache of decisions keyed by the language, the complex and the
//! engine version.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::complex::SimplicialComplex;
use crate::decide::{Certificate, DecisionResult, Method, Verdict, ENGINE_VERSION};
use crate::error::Result;
use crate::lang::Language;
use crate::procedure::{verify_generates, Procedure};

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "COMMPLEX_CACHE_DIR";

/// A stored verdict. Undecided results are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedDecision {
    pub engine: String,
    pub language: String,
    pub complex: String,
    pub generates: bool,
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    /// Procedure JSON of the witness.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

pub struct DecisionCache {
    dir: PathBuf,
}

/// Hex SHA-256 of the canonical query.
pub fn cache_key(l: &Language, k: &SimplicialComplex) -> String {
    let mut h = Sha256::new();
    h.update(ENGINE_VERSION.as_bytes());
    h.update(b"\n");
    h.update(l.canonical_string().as_bytes());
    h.update(b"\n");
    h.update(k.canonical_string().as_bytes());
    hex::encode(h.finalize())
}

impl DecisionCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(DecisionCache { dir })
    }

    /// The cache named by [`CACHE_DIR_ENV`], if set.
    pub fn from_env() -> Result<Option<Self>> {
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(d) if !d.is_empty() => Self::new(PathBuf::from(d)).map(Some),
            _ => Ok(None),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A stored entry for the query, if any. Entries whose query echo does
    /// not match or whose witness no longer verifies are ignored.
    pub fn get(&self, l: &Language, k: &SimplicialComplex) -> Result<Option<CachedDecision>> {
        let path = self.path(&cache_key(l, k));
        let Ok(text) = std::fs::read_to_string(&path) else {
            return Ok(None);
        };
        let Ok(entry) = serde_json::from_str::<CachedDecision>(&text) else {
            return Ok(None);
        };
        if entry.engine != ENGINE_VERSION
            || entry.language != l.canonical_string()
            || entry.complex != k.canonical_string()
        {
            return Ok(None);
        }
        if let Some(w) = &entry.witness {
            let p = Procedure::from_json(w)?;
            if !verify_generates(&p, l, k)? {
                return Ok(None);
            }
        }
        Ok(Some(entry))
    }

    /// Stores a decided result; undecided ones are skipped.
    pub fn put(&self, l: &Language, k: &SimplicialComplex, r: &DecisionResult) -> Result<()> {
        if r.verdict == Verdict::Undecided {
            return Ok(());
        }
        let entry = CachedDecision {
            engine: ENGINE_VERSION.to_string(),
            language: l.canonical_string(),
            complex: k.canonical_string(),
            generates: r.verdict == Verdict::Generates,
            method: r.method.to_string(),
            certificate: r.certificate.clone(),
            witness: r.witness.as_ref().map(|p| p.to_json()).transpose()?,
        };
        let tmp = self.dir.join(format!("{}.tmp{}", cache_key(l, k), std::process::id()));
        std::fs::write(&tmp, serde_json::to_string_pretty(&entry)?)?;
        std::fs::rename(&tmp, self.path(&cache_key(l, k)))?;
        Ok(())
    }
}

impl CachedDecision {
    pub fn verdict(&self) -> Verdict {
        if self.generates {
            Verdict::Generates
        } else {
            Verdict::DoesNotGenerate
        }
    }

    /// Rebuilds a decision result (statistics are not stored).
    pub fn to_result(&self) -> Result<DecisionResult> {
        let method = match self.method.as_str() {
            "single-word" => Method::SingleWord,
            "upwards-closed" => Method::UpwardsClosed,
            "downwards-closed" => Method::DownwardsClosed,
            "refuter" => Method::Refuter,
            "factorization" => Method::Factorization,
            _ => Method::Search,
        };
        Ok(DecisionResult {
            verdict: self.verdict(),
            method,
            witness: self.witness.as_deref().map(Procedure::from_json).transpose()?,
            certificate: self.certificate.clone(),
            stats: Default::default(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decide::{decide_generates, DecideOptions};
    use crate::{families, Graph};

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DecisionCache::new(dir.path()).unwrap();
        let opts = DecideOptions::default();
        for (l, k) in [
            (families::ev(3).unwrap(), Graph::path(3).to_complex()),
            (families::unique(3).unwrap(), SimplicialComplex::complete_graph(3)),
        ] {
            assert!(cache.get(&l, &k).unwrap().is_none());
            let r = decide_generates(&l, &k, &opts).unwrap();
            cache.put(&l, &k, &r).unwrap();
            let hit = cache.get(&l, &k).unwrap().unwrap();
            assert_eq!(hit.verdict(), r.verdict);
            assert_eq!(hit.certificate, r.certificate);
            let back = hit.to_result().unwrap();
            assert_eq!(back.method, r.method);
        }
        assert_ne!(
            cache_key(&families::ev(3).unwrap(), &SimplicialComplex::full(3)),
            cache_key(&families::od(3).unwrap(), &SimplicialComplex::full(3))
        );
    }
}
