//! Linguistic resources: known-word list, stopwords, synset index,
//! contractions, and the tag lexicon driving part-of-speech tagging.
//!
//! All lookups are case-insensitive; forms are lowercased once at load.
//! The tagger is a most-frequent-tag lexicon with ordered suffix rules and
//! an `NN` default, which is enough fidelity for aggregate tag fractions.

use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use unicode_properties::{GeneralCategoryGroup, UnicodeGeneralCategory};

use crate::config::Ini;

/// Tag assigned to punctuation tokens; excluded from tag-fraction tables.
pub const PUNCT_TAG: &str = "PUNCT";

/// Default tag for words the lexicon and suffix rules know nothing about.
pub const DEFAULT_TAG: &str = "NN";

/// Ordered suffix fallback rules, longest-match-sensitive by position.
/// Digits first so numeric tokens come out as `CD`.
const SUFFIX_RULES: &[(&str, &str)] = &[
    ("0", "CD"),
    ("1", "CD"),
    ("2", "CD"),
    ("3", "CD"),
    ("4", "CD"),
    ("5", "CD"),
    ("6", "CD"),
    ("7", "CD"),
    ("8", "CD"),
    ("9", "CD"),
    ("ness", "NN"),
    ("ment", "NN"),
    ("tion", "NN"),
    ("sion", "NN"),
    ("ance", "NN"),
    ("ence", "NN"),
    ("ship", "NN"),
    ("hood", "NN"),
    ("ism", "NN"),
    ("ity", "NN"),
    ("able", "JJ"),
    ("ible", "JJ"),
    ("ical", "JJ"),
    ("ful", "JJ"),
    ("ous", "JJ"),
    ("ive", "JJ"),
    ("ish", "JJ"),
    ("less", "JJ"),
    ("ary", "JJ"),
    ("ly", "RB"),
    ("ing", "VBG"),
    ("ed", "VBN"),
    ("est", "JJS"),
    ("ize", "VB"),
    ("ise", "VB"),
    ("ies", "NNS"),
    ("s", "NNS"),
];

#[derive(Debug, thiserror::Error)]
pub enum LexiconError {
    #[error("missing resource: {0}")]
    MissingResource(PathBuf),
    #[error("malformed resource {path} at line {line}: {reason}")]
    MalformedResource {
        path: PathBuf,
        line: usize,
        reason: String,
    },
    #[error("content hash mismatch for {path}: manifest says {expected}, file is {actual}")]
    HashMismatch {
        path: PathBuf,
        expected: String,
        actual: String,
    },
    #[error("malformed manifest {0}: {1}")]
    MalformedManifest(PathBuf, String),
}

/// Locations of the five resource files backing a [`Lexicon`].
#[derive(Debug, Clone)]
pub struct LexiconPaths {
    pub wordlist: PathBuf,
    pub stopwords: PathBuf,
    pub contractions: PathBuf,
    pub tags: PathBuf,
    /// Directory holding `index.noun`, `index.verb`, `index.adj`, `index.adv`.
    pub wordnet_dir: PathBuf,
}

/// Content hashes of the loaded resources, for run manifests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResourceHashes {
    pub wordlist: String,
    pub stopwords: String,
    pub contractions: String,
    pub tags: String,
    pub wordnet: String,
}

#[derive(Debug)]
pub struct Lexicon {
    known_words: BTreeSet<String>,
    stopwords: BTreeSet<String>,
    synset_words: BTreeSet<String>,
    contractions: BTreeSet<String>,
    tag_lexicon: BTreeMap<String, Vec<String>>,
    suffix_rules: Vec<(String, String)>,
    hashes: ResourceHashes,
}

/// Membership flags for a single token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TokenClass {
    pub is_punct: bool,
    pub is_word: bool,
    pub is_known: bool,
    pub is_stopword: bool,
    pub has_synset: bool,
    pub is_contraction: bool,
}

/// True when the character belongs to a Unicode punctuation category.
pub fn is_punct_char(c: char) -> bool {
    c.general_category_group() == GeneralCategoryGroup::Punctuation
}

/// Lookup normalization: lowercase, with the typographic apostrophe folded
/// into the ASCII one so `don’t` matches the contraction list.
pub fn normalize_form(token: &str) -> String {
    token.to_lowercase().replace('\u{2019}', "'")
}

const WORDNET_INDEXES: [&str; 4] = ["index.noun", "index.verb", "index.adj", "index.adv"];

fn read_file(path: &Path) -> Result<Vec<u8>, LexiconError> {
    std::fs::read(path).map_err(|_| LexiconError::MissingResource(path.to_path_buf()))
}

fn hex_sha256(chunks: &[&[u8]]) -> String {
    let mut hasher = Sha256::new();
    for c in chunks {
        hasher.update(c);
    }
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

fn load_word_set(path: &Path) -> Result<(BTreeSet<String>, String), LexiconError> {
    let bytes = read_file(path)?;
    let text = String::from_utf8_lossy(&bytes);
    let mut set = BTreeSet::new();
    for (idx, line) in text.lines().enumerate() {
        let word = line.trim();
        if word.is_empty() {
            continue;
        }
        if word.chars().any(char::is_whitespace) {
            return Err(LexiconError::MalformedResource {
                path: path.to_path_buf(),
                line: idx + 1,
                reason: "expected one word per line".into(),
            });
        }
        set.insert(word.to_lowercase());
    }
    Ok((set, hex_sha256(&[&bytes])))
}

impl Lexicon {
    /// Load all five resources; any missing or malformed file fails the
    /// whole load.
    pub fn load(paths: &LexiconPaths) -> Result<Lexicon, LexiconError> {
        let (known_words, wordlist_hash) = load_word_set(&paths.wordlist)?;
        let (stopwords, stopwords_hash) = load_word_set(&paths.stopwords)?;
        let (contractions, contractions_hash) = load_word_set(&paths.contractions)?;

        let tags_bytes = read_file(&paths.tags)?;
        let tags_text = String::from_utf8_lossy(&tags_bytes);
        let mut tag_lexicon = BTreeMap::new();
        for (idx, line) in tags_text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (word, tags) =
                line.split_once('\t')
                    .ok_or_else(|| LexiconError::MalformedResource {
                        path: paths.tags.clone(),
                        line: idx + 1,
                        reason: "expected `word<TAB>tag[,tag...]`".into(),
                    })?;
            let ranked: Vec<String> = tags
                .split(',')
                .map(|t| t.trim().to_string())
                .filter(|t| !t.is_empty())
                .collect();
            if ranked.is_empty() {
                return Err(LexiconError::MalformedResource {
                    path: paths.tags.clone(),
                    line: idx + 1,
                    reason: "no tags listed".into(),
                });
            }
            tag_lexicon.insert(word.trim().to_lowercase(), ranked);
        }
        let tags_hash = hex_sha256(&[&tags_bytes]);

        let mut synset_words = BTreeSet::new();
        let mut wordnet_bytes: Vec<Vec<u8>> = Vec::new();
        for name in WORDNET_INDEXES {
            let path = paths.wordnet_dir.join(name);
            let bytes = read_file(&path)?;
            let text = String::from_utf8_lossy(&bytes);
            for line in text.lines() {
                // license preamble lines start with whitespace
                if line.starts_with(' ') || line.trim().is_empty() {
                    continue;
                }
                if let Some(lemma) = line.split_whitespace().next() {
                    synset_words.insert(lemma.to_lowercase());
                }
            }
            wordnet_bytes.push(bytes);
        }
        let wordnet_hash = hex_sha256(&wordnet_bytes.iter().map(|b| b.as_slice()).collect::<Vec<_>>());

        Ok(Lexicon {
            known_words,
            stopwords,
            synset_words,
            contractions,
            tag_lexicon,
            suffix_rules: SUFFIX_RULES
                .iter()
                .map(|(s, t)| (s.to_string(), t.to_string()))
                .collect(),
            hashes: ResourceHashes {
                wordlist: wordlist_hash,
                stopwords: stopwords_hash,
                contractions: contractions_hash,
                tags: tags_hash,
                wordnet: wordnet_hash,
            },
        })
    }

    /// Load via a manifest file that names the five resources and their
    /// expected content hashes; a mismatch fails the load.
    pub fn load_from_manifest(manifest_path: &Path) -> Result<Lexicon, LexiconError> {
        let (paths, expected) = read_manifest(manifest_path)?;
        let lexicon = Lexicon::load(&paths)?;
        let checks = [
            ("wordlist", &paths.wordlist, &expected.wordlist, &lexicon.hashes.wordlist),
            ("stopwords", &paths.stopwords, &expected.stopwords, &lexicon.hashes.stopwords),
            (
                "contractions",
                &paths.contractions,
                &expected.contractions,
                &lexicon.hashes.contractions,
            ),
            ("tags", &paths.tags, &expected.tags, &lexicon.hashes.tags),
            ("wordnet", &paths.wordnet_dir, &expected.wordnet, &lexicon.hashes.wordnet),
        ];
        for (_, path, expected, actual) in checks {
            if expected != actual {
                return Err(LexiconError::HashMismatch {
                    path: path.clone(),
                    expected: expected.clone(),
                    actual: actual.clone(),
                });
            }
        }
        Ok(lexicon)
    }

    pub fn hashes(&self) -> &ResourceHashes {
        &self.hashes
    }

    pub fn stopword_count(&self) -> usize {
        self.stopwords.len()
    }

    pub fn known_word_count(&self) -> usize {
        self.known_words.len()
    }

    /// Classify one token. A "word" contains at least one letter and no
    /// digits; stopword/synset/contraction membership is surface-form.
    pub fn classify_token(&self, token: &str) -> TokenClass {
        let mut class = TokenClass::default();
        if token.is_empty() {
            return class;
        }
        class.is_punct = token.chars().all(is_punct_char);
        if class.is_punct {
            return class;
        }
        let form = normalize_form(token);
        class.is_word =
            token.chars().any(char::is_alphabetic) && !token.chars().any(char::is_numeric);
        if class.is_word {
            class.is_known = self.known_words.contains(&form);
            class.is_stopword = self.stopwords.contains(&form);
            class.has_synset = self.synset_words.contains(&form);
            class.is_contraction = self.contractions.contains(&form);
        }
        class
    }

    /// Tag one sentence of tokens. Output length always equals input length.
    pub fn pos_tag<S: AsRef<str>>(&self, tokens: &[S]) -> Vec<String> {
        tokens
            .iter()
            .map(|token| self.tag_one(token.as_ref()))
            .collect()
    }

    fn tag_one(&self, token: &str) -> String {
        if !token.is_empty() && token.chars().all(is_punct_char) {
            return PUNCT_TAG.to_string();
        }
        let form = normalize_form(token);
        if let Some(tags) = self.tag_lexicon.get(&form) {
            return tags[0].clone();
        }
        for (suffix, tag) in &self.suffix_rules {
            if form.ends_with(suffix.as_str()) {
                return tag.clone();
            }
        }
        DEFAULT_TAG.to_string()
    }
}

fn read_manifest(path: &Path) -> Result<(LexiconPaths, ResourceHashes), LexiconError> {
    if !path.exists() {
        return Err(LexiconError::MissingResource(path.to_path_buf()));
    }
    let ini = Ini::load(path)
        .map_err(|e| LexiconError::MalformedManifest(path.to_path_buf(), e.to_string()))?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let entry = |section: &str| -> Result<(PathBuf, String), LexiconError> {
        let rel = ini
            .get(section, "path")
            .ok_or_else(|| {
                LexiconError::MalformedManifest(
                    path.to_path_buf(),
                    format!("section [{section}] missing `path`"),
                )
            })?
            .to_string();
        let hash = ini
            .get(section, "sha256")
            .ok_or_else(|| {
                LexiconError::MalformedManifest(
                    path.to_path_buf(),
                    format!("section [{section}] missing `sha256`"),
                )
            })?
            .to_string();
        let p = Path::new(&rel);
        let abs = if p.is_absolute() { p.to_path_buf() } else { base.join(p) };
        Ok((abs, hash))
    };
    let (wordlist, wordlist_hash) = entry("wordlist")?;
    let (stopwords, stopwords_hash) = entry("stopwords")?;
    let (contractions, contractions_hash) = entry("contractions")?;
    let (tags, tags_hash) = entry("tags")?;
    let (wordnet_dir, wordnet_hash) = entry("wordnet")?;
    Ok((
        LexiconPaths {
            wordlist,
            stopwords,
            contractions,
            tags,
            wordnet_dir,
        },
        ResourceHashes {
            wordlist: wordlist_hash,
            stopwords: stopwords_hash,
            contractions: contractions_hash,
            tags: tags_hash,
            wordnet: wordnet_hash,
        },
    ))
}
