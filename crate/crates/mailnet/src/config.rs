//! Flat `key = value` configuration files with `[section]` headers.
//!
//! Used for both run configs and the lexicon resource manifest. Values are
//! unquoted trimmed strings; `#` and `;` start comment lines.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {reason}")]
    Parse {
        path: PathBuf,
        line: usize,
        reason: String,
    },
    #[error("missing key `{key}` in section [{section}] of {path}")]
    MissingKey {
        path: PathBuf,
        section: String,
        key: String,
    },
    #[error("bad value for `{key}` in [{section}]: {reason}")]
    BadValue {
        section: String,
        key: String,
        reason: String,
    },
}

/// A parsed config document. Section order is preserved so that list
/// processing order is exactly the order sections appear in the file.
#[derive(Debug, Clone, Default)]
pub struct Ini {
    sections: Vec<(String, BTreeMap<String, String>)>,
    path: PathBuf,
}

impl Ini {
    pub fn parse(text: &str, path: &Path) -> Result<Ini, ConfigError> {
        let mut sections: Vec<(String, BTreeMap<String, String>)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name.strip_suffix(']').ok_or_else(|| ConfigError::Parse {
                    path: path.to_path_buf(),
                    line: idx + 1,
                    reason: "unterminated section header".into(),
                })?;
                sections.push((name.trim().to_string(), BTreeMap::new()));
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Parse {
                path: path.to_path_buf(),
                line: idx + 1,
                reason: "expected `key = value`".into(),
            })?;
            let section = sections.last_mut().ok_or_else(|| ConfigError::Parse {
                path: path.to_path_buf(),
                line: idx + 1,
                reason: "key outside of any [section]".into(),
            })?;
            section
                .1
                .insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(Ini {
            sections,
            path: path.to_path_buf(),
        })
    }

    pub fn load(path: &Path) -> Result<Ini, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Ini::parse(&text, path)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn sections(&self) -> impl Iterator<Item = &str> {
        self.sections.iter().map(|(name, _)| name.as_str())
    }

    pub fn section(&self, name: &str) -> Option<&BTreeMap<String, String>> {
        self.sections
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, kv)| kv)
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.section(section)?.get(key).map(String::as_str)
    }

    pub fn require(&self, section: &str, key: &str) -> Result<&str, ConfigError> {
        self.get(section, key).ok_or_else(|| ConfigError::MissingKey {
            path: self.path.clone(),
            section: section.to_string(),
            key: key.to_string(),
        })
    }
}

/// Input format of an archive file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArchiveFormat {
    Mbox,
    Jsonl,
}

impl ArchiveFormat {
    pub fn parse(s: &str) -> Option<ArchiveFormat> {
        match s {
            "mbox" => Some(ArchiveFormat::Mbox),
            "jsonl" => Some(ArchiveFormat::Jsonl),
            _ => None,
        }
    }
}

impl fmt::Display for ArchiveFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArchiveFormat::Mbox => "mbox",
            ArchiveFormat::Jsonl => "jsonl",
        })
    }
}

/// PCA input convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcaMode {
    Correlation,
    Covariance,
}

impl PcaMode {
    pub fn parse(s: &str) -> Option<PcaMode> {
        match s {
            "correlation" => Some(PcaMode::Correlation),
            "covariance" => Some(PcaMode::Covariance),
            _ => None,
        }
    }
}

impl fmt::Display for PcaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PcaMode::Correlation => "correlation",
            PcaMode::Covariance => "covariance",
        })
    }
}

/// One archive to analyse.
#[derive(Debug, Clone)]
pub struct ListInput {
    pub name: String,
    pub format: ArchiveFormat,
    pub path: PathBuf,
}

/// Everything a batch run needs. Paths are resolved relative to the config
/// file location at load time.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub lists: Vec<ListInput>,
    pub limit: usize,
    pub f_hub: f64,
    pub f_intermediary: f64,
    pub lexicon_manifest: PathBuf,
    pub strip_quotes: bool,
    pub out_dir: PathBuf,
    pub pca_mode: PcaMode,
    pub seed: u64,
    pub workers: usize,
}

/// Command-line overrides applied on top of a config file.
#[derive(Debug, Clone, Default)]
pub struct RunOverrides {
    pub limit: Option<usize>,
    pub f_hub: Option<f64>,
    pub f_intermediary: Option<f64>,
    pub strip_quotes: Option<bool>,
    pub out_dir: Option<PathBuf>,
}

fn parse_on_off(section: &str, key: &str, v: &str) -> Result<bool, ConfigError> {
    match v {
        "on" | "true" | "1" => Ok(true),
        "off" | "false" | "0" => Ok(false),
        _ => Err(ConfigError::BadValue {
            section: section.into(),
            key: key.into(),
            reason: format!("expected on|off, got `{v}`"),
        }),
    }
}

fn parse_num<T: std::str::FromStr>(section: &str, key: &str, v: &str) -> Result<T, ConfigError> {
    v.parse().map_err(|_| ConfigError::BadValue {
        section: section.into(),
        key: key.into(),
        reason: format!("not a valid number: `{v}`"),
    })
}

impl RunConfig {
    /// Read a config file and apply overrides. Relative paths inside the
    /// file are anchored at the file's parent directory.
    pub fn load(path: &Path, overrides: &RunOverrides) -> Result<RunConfig, ConfigError> {
        let ini = Ini::load(path)?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        let anchor = |p: &str| -> PathBuf {
            let p = Path::new(p);
            if p.is_absolute() {
                p.to_path_buf()
            } else {
                base.join(p)
            }
        };

        let run = "run";
        let get = |key: &str| ini.get(run, key);
        let limit = match get("limit") {
            Some(v) => parse_num(run, "limit", v)?,
            None => 20_000,
        };
        let f_hub = match get("f_hub") {
            Some(v) => parse_num(run, "f_hub", v)?,
            None => 0.05,
        };
        let f_intermediary = match get("f_intermediary") {
            Some(v) => parse_num(run, "f_intermediary", v)?,
            None => 0.15,
        };
        let strip_quotes = match get("strip_quotes") {
            Some(v) => parse_on_off(run, "strip_quotes", v)?,
            None => true,
        };
        let pca_mode = match get("pca_mode") {
            Some(v) => PcaMode::parse(v).ok_or_else(|| ConfigError::BadValue {
                section: run.into(),
                key: "pca_mode".into(),
                reason: format!("expected correlation|covariance, got `{v}`"),
            })?,
            None => PcaMode::Correlation,
        };
        let seed = match get("seed") {
            Some(v) => parse_num(run, "seed", v)?,
            None => 0,
        };
        let workers = match get("workers") {
            Some(v) => parse_num(run, "workers", v)?,
            None => 1,
        };
        let out_dir = anchor(get("out").unwrap_or("out"));
        let lexicon_manifest = anchor(ini.require("lexicon", "manifest")?);

        let mut lists = Vec::new();
        for name in ini.sections() {
            if let Some(list_name) = name.strip_prefix("list.") {
                let fmt_str = ini.require(name, "format")?;
                let format =
                    ArchiveFormat::parse(fmt_str).ok_or_else(|| ConfigError::BadValue {
                        section: name.into(),
                        key: "format".into(),
                        reason: format!("expected mbox|jsonl, got `{fmt_str}`"),
                    })?;
                lists.push(ListInput {
                    name: list_name.to_string(),
                    format,
                    path: anchor(ini.require(name, "path")?),
                });
            }
        }

        let mut config = RunConfig {
            lists,
            limit,
            f_hub,
            f_intermediary,
            lexicon_manifest,
            strip_quotes,
            out_dir,
            pca_mode,
            seed,
            workers: workers.max(1),
        };
        if let Some(v) = overrides.limit {
            config.limit = v;
        }
        if let Some(v) = overrides.f_hub {
            config.f_hub = v;
        }
        if let Some(v) = overrides.f_intermediary {
            config.f_intermediary = v;
        }
        if let Some(v) = overrides.strip_quotes {
            config.strip_quotes = v;
        }
        if let Some(v) = &overrides.out_dir {
            config.out_dir = v.clone();
        }
        Ok(config)
    }
}
