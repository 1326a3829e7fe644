//! File-backed collections of advertised profiles and the discovery scan.
//!
//! A registry is loaded either from a directory of `.svc` files (entries
//! in lexicographic filename order) or from a single `.svcreg` bundle —
//! descriptor documents separated by lines containing exactly `---`.
//! Service names are unique within a registry and iteration order is
//! insertion order, which fixes both the scan order and tie-breaking.
//!
//! Discovery walks the registry in order keeping the first entry with a
//! strictly highest overall score, and stops early the moment an entry
//! scores the maximum 10. Ranked mode scans everything and sorts instead.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::descriptor::{parse_profile, serialize_profile, ParseError, ServiceProfile};
use crate::flownet::SearchStrategy;
use crate::matcher::{match_services, MatchReport};
use crate::simrules::SimilarityTable;

/// Where a registry was loaded from; additions persist only to bundles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegistrySource {
    /// A single `.svcreg` file of `---`-separated descriptors.
    Bundle(PathBuf),
    /// A directory scanned for `.svc` files.
    Directory(PathBuf),
}

/// A registry load or update failure.
#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: not valid UTF-8", path.display())]
    InvalidUtf8 { path: PathBuf },
    #[error("{}:{source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error("duplicate service name `{name}`")]
    DuplicateName { name: String },
}

/// An ordered collection of advertised service profiles.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Registry {
    entries: Vec<ServiceProfile>,
    source: Option<RegistrySource>,
}

/// How [`Registry::discover`] reports its scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscoveryMode {
    /// Linear scan keeping the first strictly-best entry; stops early on
    /// a perfect score.
    Best,
    /// Full scan; every report, sorted by overall score descending with
    /// ties in registry order.
    Ranked,
}

/// Outcome of a discovery scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscoveryResult {
    /// Best-scoring report, or `None` for an empty registry.
    pub best: Option<MatchReport>,
    /// Number of entries actually matched; less than the registry size
    /// only when the early exit fired.
    pub scanned_count: usize,
    /// All reports, sorted; populated in ranked mode only.
    pub ranked: Option<Vec<MatchReport>>,
}

impl Registry {
    /// An empty, unbacked registry.
    pub fn new() -> Registry {
        Registry::default()
    }

    /// Build an in-memory registry, rejecting duplicate names.
    pub fn from_profiles(profiles: Vec<ServiceProfile>) -> Result<Registry, RegistryError> {
        let mut registry = Registry::new();
        for profile in profiles {
            registry.add(profile)?;
        }
        Ok(registry)
    }

    /// Load from a directory of `.svc` files or a bundle file.
    pub fn load(path: impl AsRef<Path>) -> Result<Registry, RegistryError> {
        let path = path.as_ref();
        let metadata = fs::metadata(path).map_err(|source| RegistryError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        if metadata.is_dir() {
            Registry::load_directory(path)
        } else {
            Registry::load_bundle(path)
        }
    }

    fn load_directory(dir: &Path) -> Result<Registry, RegistryError> {
        let read_dir = fs::read_dir(dir).map_err(|source| RegistryError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        let mut files: Vec<PathBuf> = Vec::new();
        for entry in read_dir {
            let entry = entry.map_err(|source| RegistryError::Io {
                path: dir.to_path_buf(),
                source,
            })?;
            let is_file = entry
                .file_type()
                .map_err(|source| RegistryError::Io {
                    path: entry.path(),
                    source,
                })?
                .is_file();
            let path = entry.path();
            if is_file && path.extension().is_some_and(|ext| ext == "svc") {
                files.push(path);
            }
        }
        files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
        let mut registry = Registry::new();
        for file in files {
            let text = read_utf8(&file)?;
            let profile = parse_profile(&text).map_err(|source| RegistryError::Parse {
                path: file.clone(),
                source,
            })?;
            registry.insert(profile)?;
        }
        registry.source = Some(RegistrySource::Directory(dir.to_path_buf()));
        Ok(registry)
    }

    fn load_bundle(path: &Path) -> Result<Registry, RegistryError> {
        let text = read_utf8(path)?;
        let mut registry = Registry::new();
        for (document, start_line) in split_bundle(&text) {
            let profile = parse_profile(document).map_err(|source| RegistryError::Parse {
                path: path.to_path_buf(),
                source: source.offset_lines(start_line),
            })?;
            registry.insert(profile)?;
        }
        registry.source = Some(RegistrySource::Bundle(path.to_path_buf()));
        Ok(registry)
    }

    pub fn entries(&self) -> &[ServiceProfile] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn source(&self) -> Option<&RegistrySource> {
        self.source.as_ref()
    }

    /// Append a profile. Bundle-backed registries are rewritten on disk
    /// first (write a temp file, then rename), so a persistence failure
    /// leaves the in-memory registry unchanged. Directory-backed and
    /// unbacked registries change in memory only.
    pub fn add(&mut self, profile: ServiceProfile) -> Result<(), RegistryError> {
        if self.entries.iter().any(|p| p.name == profile.name) {
            return Err(RegistryError::DuplicateName { name: profile.name });
        }
        if let Some(RegistrySource::Bundle(path)) = &self.source {
            let mut profiles: Vec<&ServiceProfile> = self.entries.iter().collect();
            profiles.push(&profile);
            let documents: Vec<String> = profiles.into_iter().map(serialize_profile).collect();
            write_atomic(path, &bundle_text(&documents))?;
        }
        self.entries.push(profile);
        Ok(())
    }

    fn insert(&mut self, profile: ServiceProfile) -> Result<(), RegistryError> {
        if self.entries.iter().any(|p| p.name == profile.name) {
            return Err(RegistryError::DuplicateName { name: profile.name });
        }
        self.entries.push(profile);
        Ok(())
    }

    /// Scan the registry for the service most similar to `requested`.
    ///
    /// Best mode replaces the running best only on a strictly higher
    /// overall score — the earliest maximal entry wins ties — and stops
    /// the moment an entry scores exactly 10. Ranked mode matches every
    /// entry. The registry itself is never mutated.
    pub fn discover(
        &self,
        requested: &ServiceProfile,
        table: &SimilarityTable,
        strategy: SearchStrategy,
        mode: DiscoveryMode,
    ) -> DiscoveryResult {
        match mode {
            DiscoveryMode::Best => {
                let mut best: Option<MatchReport> = None;
                let mut scanned_count = 0;
                for advertised in &self.entries {
                    let report = match_services(requested, advertised, table, strategy);
                    scanned_count += 1;
                    let improved = best
                        .as_ref()
                        .is_none_or(|current| report.overall > current.overall);
                    let finished = report.overall.is_full();
                    if improved {
                        best = Some(report);
                    }
                    if finished {
                        break;
                    }
                }
                DiscoveryResult {
                    best,
                    scanned_count,
                    ranked: None,
                }
            }
            DiscoveryMode::Ranked => {
                let mut reports: Vec<MatchReport> = self
                    .entries
                    .iter()
                    .map(|advertised| match_services(requested, advertised, table, strategy))
                    .collect();
                // Stable sort keeps registry order among equal scores.
                reports.sort_by_key(|report| std::cmp::Reverse(report.overall));
                DiscoveryResult {
                    best: reports.first().cloned(),
                    scanned_count: self.entries.len(),
                    ranked: Some(reports),
                }
            }
        }
    }
}

fn read_utf8(path: &Path) -> Result<String, RegistryError> {
    let bytes = fs::read(path).map_err(|source| RegistryError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    String::from_utf8(bytes).map_err(|_| RegistryError::InvalidUtf8 {
        path: path.to_path_buf(),
    })
}

/// Split bundle text into descriptor documents with their starting line
/// numbers (0-based offsets for [`ParseError::offset_lines`]). Documents
/// containing only whitespace and comments are skipped, so leading or
/// trailing separators are harmless.
fn split_bundle(text: &str) -> Vec<(&str, u32)> {
    let mut documents = Vec::new();
    let mut offset = 0;
    let mut start = 0;
    let mut start_line = 0u32;
    for (line, raw_line) in text.split_inclusive('\n').enumerate() {
        if raw_line.trim_end_matches(['\n', '\r']) == "---" {
            documents.push((&text[start..offset], start_line));
            start = offset + raw_line.len();
            start_line = line as u32 + 1;
        }
        offset += raw_line.len();
    }
    documents.push((&text[start..], start_line));
    documents.retain(|(document, _)| !is_blank(document));
    documents
}

fn is_blank(document: &str) -> bool {
    document
        .lines()
        .all(|line| line.split('#').next().unwrap_or("").trim().is_empty())
}

/// Render descriptor documents as bundle text.
pub fn bundle_text(documents: &[String]) -> String {
    let mut text = documents.join("\n---\n");
    if !text.is_empty() {
        text.push('\n');
    }
    text
}

fn write_atomic(path: &Path, text: &str) -> Result<(), RegistryError> {
    let mut temp = path.as_os_str().to_owned();
    temp.push(".tmp");
    let temp = PathBuf::from(temp);
    let io_error = |source| RegistryError::Io {
        path: path.to_path_buf(),
        source,
    };
    fs::write(&temp, text).map_err(io_error)?;
    fs::rename(&temp, path).map_err(|source| {
        let _ = fs::remove_file(&temp);
        io_error(source)
    })
}
