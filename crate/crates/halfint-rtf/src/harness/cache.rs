//! JSON cache of spectral data keyed by weight, Hecke range, truncation and grid.

use std::fs;
use std::path::{Path, PathBuf};

use super::{HarnessError, InStage, Stage};
use crate::spectral::moment::{SpectralConfig, SpectralData};

/// Environment variable naming the cache directory when no directory is given.
pub const CACHE_ENV: &str = "RTF_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cache {
    dir: PathBuf,
}

/// One cached file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheEntry {
    pub path: PathBuf,
    pub bytes: u64,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self, HarnessError> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    /// The explicit directory if given, else `RTF_CACHE_DIR`, else no cache.
    pub fn resolve(explicit: Option<&Path>) -> Result<Option<Self>, HarnessError> {
        match explicit {
            Some(p) => Cache::new(p).map(Some),
            None => match std::env::var_os(CACHE_ENV) {
                Some(p) if !p.is_empty() => Cache::new(PathBuf::from(p)).map(Some),
                _ => Ok(None),
            },
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(config: &SpectralConfig) -> String {
        let g = config.grid;
        format!(
            "spectral-w{}-n{}-N{}-g{}x{}y{}.json",
            config.weight.twice(),
            config.max_hecke,
            config.truncation(),
            g.x_nodes,
            g.y_nodes,
            g.y_max
        )
    }

    pub fn load(&self, config: &SpectralConfig) -> Result<Option<SpectralData>, HarnessError> {
        let path = self.dir.join(Self::key(config));
        if !path.exists() {
            return Ok(None);
        }
        let data: SpectralData = serde_json::from_slice(&fs::read(&path)?)?;
        if data.config != *config {
            return Err(HarnessError::Precondition(format!("cache entry {} has a different configuration", path.display())));
        }
        Ok(Some(data))
    }

    /// Writes through a temporary file and a rename, so readers never see partial entries.
    pub fn store(&self, data: &SpectralData) -> Result<PathBuf, HarnessError> {
        let path = self.dir.join(Self::key(&data.config));
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(data)?)?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    pub fn entries(&self) -> Result<Vec<CacheEntry>, HarnessError> {
        let mut out = Vec::new();
        for e in fs::read_dir(&self.dir)? {
            let e = e?;
            let name = e.file_name();
            let name = name.to_string_lossy();
            if name.starts_with("spectral-") && name.ends_with(".json") {
                out.push(CacheEntry { path: e.path(), bytes: e.metadata()?.len() });
            }
        }
        out.sort_by(|a, b| a.path.cmp(&b.path));
        Ok(out)
    }

    pub fn clear(&self) -> Result<usize, HarnessError> {
        let entries = self.entries()?;
        for e in &entries {
            fs::remove_file(&e.path)?;
        }
        Ok(entries.len())
    }
}

/// Spectral data from the cache when present, built (and stored) otherwise.
pub fn spectral_data(config: SpectralConfig, cache: Option<&Cache>) -> Result<SpectralData, HarnessError> {
    if let Some(c) = cache {
        if let Some(d) = c.load(&config)? {
            return Ok(d);
        }
    }
    SpectralData::build(config).stage(Stage::Spectral)
}

/// Stores data whose Hecke matrices may have been filled in since it was loaded.
pub fn remember(data: &SpectralData, cache: Option<&Cache>) -> Result<(), HarnessError> {
    if let Some(c) = cache {
        c.store(data)?;
    }
    Ok(())
}
