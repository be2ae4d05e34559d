//! Tokenization, sentence segmentation, and the per-corpus textual
//! measure families: characters, tokens/words, word sizes, sentence and
//! message sizes, and part-of-speech tag incidences. Also builds the
//! per-author feature matrix consumed by the statistics layer.
//!
//! Ratios whose denominator vanishes come back as `None` (absent) rather
//! than NaN, so batch runs over many authors never abort.

use crate::ingest::MessageStore;
use crate::lexicon::{is_punct_char, normalize_form, Lexicon, TokenClass, PUNCT_TAG};
use crate::network::{Sector, SectorPartition, VertexMetrics};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, thiserror::Error)]
pub enum TextError {
    #[error("corpus has no messages")]
    EmptyCorpus,
    #[error("author `{0}` is not covered by the partition")]
    PartitionMismatch(String),
}

/// What slice of a list a corpus represents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scope {
    General,
    Sector(Sector),
    Author(String),
}

impl Scope {
    pub fn label(&self) -> String {
        match self {
            Scope::General => "g.".to_string(),
            Scope::Sector(s) => s.short().to_string(),
            Scope::Author(a) => a.clone(),
        }
    }
}

/// A bag of (author, body) message texts with a scope tag. Quote stripping
/// happens once, at assembly.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    messages: Vec<(String, String)>,
    scope: Scope,
}

/// Drop quoted reply lines (leading `>` after optional indentation).
pub fn strip_quoted_lines(text: &str) -> String {
    text.lines()
        .filter(|line| !line.trim_start().starts_with('>'))
        .collect::<Vec<_>>()
        .join("\n")
}

impl Corpus {
    pub fn new(messages: Vec<(String, String)>, scope: Scope) -> Corpus {
        Corpus { messages, scope }
    }

    pub fn from_store(store: &MessageStore, strip_quotes: bool) -> Corpus {
        let messages = store
            .messages()
            .iter()
            .map(|m| (m.author.clone(), prepare(&m.body, strip_quotes)))
            .collect();
        Corpus {
            messages,
            scope: Scope::General,
        }
    }

    pub fn for_sector(
        store: &MessageStore,
        partition: &SectorPartition,
        sector: Sector,
        strip_quotes: bool,
    ) -> Corpus {
        let messages = store
            .messages()
            .iter()
            .filter(|m| partition.sector_of(&m.author) == Some(sector))
            .map(|m| (m.author.clone(), prepare(&m.body, strip_quotes)))
            .collect();
        Corpus {
            messages,
            scope: Scope::Sector(sector),
        }
    }

    pub fn for_author(store: &MessageStore, author: &str, strip_quotes: bool) -> Corpus {
        let messages = store
            .messages()
            .iter()
            .filter(|m| m.author == author)
            .map(|m| (m.author.clone(), prepare(&m.body, strip_quotes)))
            .collect();
        Corpus {
            messages,
            scope: Scope::Author(author.to_string()),
        }
    }

    /// A corpus with the same scope tag holding the concatenation of the
    /// given corpora's messages.
    pub fn concat(parts: &[&Corpus], scope: Scope) -> Corpus {
        let messages = parts
            .iter()
            .flat_map(|c| c.messages.iter().cloned())
            .collect();
        Corpus { messages, scope }
    }

    pub fn scope(&self) -> &Scope {
        &self.scope
    }

    pub fn messages(&self) -> &[(String, String)] {
        &self.messages
    }

    pub fn len(&self) -> usize {
        self.messages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.messages.is_empty()
    }

    fn bodies(&self) -> impl Iterator<Item = &str> {
        self.messages.iter().map(|(_, b)| b.as_str())
    }
}

fn prepare(body: &str, strip_quotes: bool) -> String {
    if strip_quotes {
        strip_quoted_lines(body)
    } else {
        body.to_string()
    }
}

/// Maximal runs of letters/digits (with word-internal apostrophes), plus
/// every other non-whitespace character as its own token.
pub fn tokenize(text: &str) -> Vec<&str> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut tokens = Vec::new();
    let mut run_start: Option<usize> = None;
    let end_of = |i: usize| {
        chars
            .get(i + 1)
            .map(|(pos, _)| *pos)
            .unwrap_or_else(|| text.len())
    };
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let is_word_char = c.is_alphanumeric()
            || ((c == '\'' || c == '\u{2019}')
                && run_start.is_some()
                && chars.get(i + 1).map(|(_, n)| n.is_alphanumeric()).unwrap_or(false));
        if is_word_char {
            if run_start.is_none() {
                run_start = Some(pos);
            }
        } else {
            if let Some(start) = run_start.take() {
                tokens.push(&text[start..pos]);
            }
            if !c.is_whitespace() {
                tokens.push(&text[pos..end_of(i)]);
            }
        }
        i += 1;
    }
    if let Some(start) = run_start {
        tokens.push(&text[start..]);
    }
    tokens
}

/// Split on `[.!?]+` followed by whitespace-then-capital or end-of-text;
/// blank lines also terminate sentences. Empty segments are dropped and
/// each sentence keeps its terminal punctuation.
pub fn split_sentences(text: &str) -> Vec<&str> {
    fn push<'a>(sentences: &mut Vec<&'a str>, text: &'a str, from: usize, to: usize) {
        let slice = text[from..to].trim();
        if !slice.is_empty() {
            sentences.push(slice);
        }
    }
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut sentences = Vec::new();
    let mut start = 0usize;
    let mut i = 0;
    while i < chars.len() {
        let (_, c) = chars[i];
        if c == '.' || c == '!' || c == '?' {
            // absorb the whole terminator run
            let mut j = i;
            while j + 1 < chars.len() && matches!(chars[j + 1].1, '.' | '!' | '?') {
                j += 1;
            }
            let run_end = chars
                .get(j + 1)
                .map(|(p, _)| *p)
                .unwrap_or_else(|| text.len());
            // look past whitespace for a capital or end of text
            let mut k = j + 1;
            while k < chars.len() && chars[k].1.is_whitespace() {
                k += 1;
            }
            let boundary = k >= chars.len() || chars[k].1.is_uppercase();
            if boundary {
                push(&mut sentences, text, start, run_end);
                start = run_end;
            }
            i = j + 1;
            continue;
        }
        if c == '\n' {
            // blank-line paragraph break (only spaces/tabs in between)
            let mut k = i + 1;
            while k < chars.len() && (chars[k].1 == ' ' || chars[k].1 == '\t' || chars[k].1 == '\r')
            {
                k += 1;
            }
            if k < chars.len() && chars[k].1 == '\n' {
                push(&mut sentences, text, start, chars[i].0);
                start = chars[i].0;
                i = k;
                continue;
            }
        }
        i += 1;
    }
    push(&mut sentences, text, start, text.len());
    sentences
}

fn population_mu_sigma(values: &[f64]) -> Option<(f64, f64)> {
    if values.is_empty() {
        return None;
    }
    let n = values.len() as f64;
    let mu = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mu) * (v - mu)).sum::<f64>() / n;
    Some((mu, var.sqrt()))
}

fn ratio(numerator: u64, denominator: u64) -> Option<f64> {
    if denominator == 0 {
        None
    } else {
        Some(100.0 * numerator as f64 / denominator as f64)
    }
}

// ------------------------------------------------------------------ chars

/// Character-level incidence percentages.
#[derive(Debug, Clone, PartialEq)]
pub struct CharMetrics {
    pub n_chars: u64,
    pub n_space: u64,
    pub n_letters: u64,
    pub pct_space_of_char: f64,
    pub pct_punct_of_nonspace: f64,
    pub pct_digit_of_nonspace: f64,
    pub pct_letter_of_nonspace: f64,
    pub pct_vowel_of_letters: f64,
    pub pct_upper_of_letters: f64,
    /// Set when a denominator (chars, nonspace, letters) was zero; the
    /// affected percentages read 0.
    pub degenerate: bool,
}

impl CharMetrics {
    pub fn nonspace(&self) -> u64 {
        self.n_chars - self.n_space
    }

    fn opt(&self, value: f64, denominator: u64) -> Option<f64> {
        if denominator == 0 {
            None
        } else {
            Some(value)
        }
    }

    pub fn pct_space_opt(&self) -> Option<f64> {
        self.opt(self.pct_space_of_char, self.n_chars)
    }

    pub fn pct_punct_opt(&self) -> Option<f64> {
        self.opt(self.pct_punct_of_nonspace, self.nonspace())
    }

    pub fn pct_digit_opt(&self) -> Option<f64> {
        self.opt(self.pct_digit_of_nonspace, self.nonspace())
    }

    pub fn pct_letter_opt(&self) -> Option<f64> {
        self.opt(self.pct_letter_of_nonspace, self.nonspace())
    }

    pub fn pct_vowel_opt(&self) -> Option<f64> {
        self.opt(self.pct_vowel_of_letters, self.n_letters)
    }

    pub fn pct_upper_opt(&self) -> Option<f64> {
        self.opt(self.pct_upper_of_letters, self.n_letters)
    }
}

fn is_vowel(c: char) -> bool {
    matches!(c.to_ascii_lowercase(), 'a' | 'e' | 'i' | 'o' | 'u')
}

pub fn char_metrics(corpus: &Corpus) -> Result<CharMetrics, TextError> {
    if corpus.is_empty() {
        return Err(TextError::EmptyCorpus);
    }
    let (mut chars, mut space, mut punct, mut digit, mut letter, mut vowel, mut upper) =
        (0u64, 0u64, 0u64, 0u64, 0u64, 0u64, 0u64);
    for body in corpus.bodies() {
        for c in body.chars() {
            chars += 1;
            if c.is_whitespace() {
                space += 1;
            } else if c.is_alphabetic() {
                letter += 1;
                if is_vowel(c) {
                    vowel += 1;
                }
                if c.is_uppercase() {
                    upper += 1;
                }
            } else if c.is_numeric() {
                digit += 1;
            } else if is_punct_char(c) {
                punct += 1;
            }
        }
    }
    let nonspace = chars - space;
    let pct = |num: u64, den: u64| if den == 0 { 0.0 } else { 100.0 * num as f64 / den as f64 };
    Ok(CharMetrics {
        n_chars: chars,
        n_space: space,
        n_letters: letter,
        pct_space_of_char: pct(space, chars),
        pct_punct_of_nonspace: pct(punct, nonspace),
        pct_digit_of_nonspace: pct(digit, nonspace),
        pct_letter_of_nonspace: pct(letter, nonspace),
        pct_vowel_of_letters: pct(vowel, letter),
        pct_upper_of_letters: pct(upper, letter),
        degenerate: chars == 0 || nonspace == 0 || letter == 0,
    })
}

// ----------------------------------------------------------------- tokens

/// Raw class counts shared by the token/size/histogram measures.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TokenCounts {
    pub tokens: u64,
    pub token_chars: u64,
    pub punct: u64,
    pub words: u64,
    pub kw: u64,
    pub kwss: u64,
    pub kwsw: u64,
    pub ukwsw: u64,
    pub kw_sw_syn: u64,
    pub kw_sw_nosyn: u64,
    pub kw_nonsw_syn: u64,
    pub kw_nonsw_nosyn: u64,
    pub contractions: u64,
    pub distinct_tokens: BTreeSet<String>,
    pub distinct_kw: BTreeSet<String>,
}

impl TokenCounts {
    fn add(&mut self, token: &str, class: &TokenClass) {
        self.tokens += 1;
        self.token_chars += token.chars().count() as u64;
        self.distinct_tokens.insert(normalize_form(token));
        if class.is_punct {
            self.punct += 1;
            return;
        }
        if class.is_contraction {
            self.contractions += 1;
        }
        if !class.is_word {
            return;
        }
        self.words += 1;
        if class.is_stopword && !class.is_known {
            self.ukwsw += 1;
        }
        if class.is_known {
            self.kw += 1;
            self.distinct_kw.insert(normalize_form(token));
            if class.has_synset {
                self.kwss += 1;
            }
            match (class.is_stopword, class.has_synset) {
                (true, true) => {
                    self.kwsw += 1;
                    self.kw_sw_syn += 1;
                }
                (true, false) => {
                    self.kwsw += 1;
                    self.kw_sw_nosyn += 1;
                }
                (false, true) => self.kw_nonsw_syn += 1,
                (false, false) => self.kw_nonsw_nosyn += 1,
            }
        }
    }
}

pub fn token_counts(corpus: &Corpus, lex: &Lexicon) -> TokenCounts {
    let mut counts = TokenCounts::default();
    for body in corpus.bodies() {
        for token in tokenize(body) {
            let class = lex.classify_token(token);
            counts.add(token, &class);
        }
    }
    counts
}

/// Token and known-word incidence ratios; denominators follow the printed
/// table headers exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct TokenMetrics {
    pub n_tokens: u64,
    pub chars_per_token: Option<f64>,
    pub token_diversity: Option<f64>,
    pub pct_punct_tokens: Option<f64>,
    pub pct_known_of_nonpunct: Option<f64>,
    pub lexical_diversity: Option<f64>,
    pub pct_kwss_of_kw: Option<f64>,
    pub pct_kwsw_of_kw: Option<f64>,
    pub pct_ukwsw_of_kw: Option<f64>,
    pub pct_kw_sw_syn_of_kw: Option<f64>,
    pub pct_kw_sw_nosyn_of_kw: Option<f64>,
    pub pct_contractions_of_kw: Option<f64>,
    pub pct_kw_nonsw_nosyn_of_kw: Option<f64>,
    pub pct_kw_nonsw_syn_of_kw: Option<f64>,
}

pub fn token_metrics(corpus: &Corpus, lex: &Lexicon) -> Result<TokenMetrics, TextError> {
    if corpus.is_empty() {
        return Err(TextError::EmptyCorpus);
    }
    let c = token_counts(corpus, lex);
    Ok(TokenMetrics {
        n_tokens: c.tokens,
        chars_per_token: if c.tokens == 0 {
            None
        } else {
            Some(c.token_chars as f64 / c.tokens as f64)
        },
        token_diversity: ratio(c.distinct_tokens.len() as u64, c.tokens),
        pct_punct_tokens: ratio(c.punct, c.tokens),
        pct_known_of_nonpunct: ratio(c.kw, c.tokens - c.punct),
        lexical_diversity: ratio(c.distinct_kw.len() as u64, c.kw),
        pct_kwss_of_kw: ratio(c.kwss, c.kw),
        pct_kwsw_of_kw: ratio(c.kwsw, c.kw),
        pct_ukwsw_of_kw: ratio(c.ukwsw, c.kw),
        pct_kw_sw_syn_of_kw: ratio(c.kw_sw_syn, c.kw),
        pct_kw_sw_nosyn_of_kw: ratio(c.kw_sw_nosyn, c.kw),
        pct_contractions_of_kw: ratio(c.contractions, c.kw),
        pct_kw_nonsw_nosyn_of_kw: ratio(c.kw_nonsw_nosyn, c.kw),
        pct_kw_nonsw_syn_of_kw: ratio(c.kw_nonsw_syn, c.kw),
    })
}

// ------------------------------------------------------------------ sizes

/// Word classes whose size distributions the measures track.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum WordClass {
    /// Known words.
    Kw,
    /// Known words with a synset.
    Kwss,
    /// Stopwords.
    Sw,
    /// Stopwords without a synset.
    Nsssw,
    /// Known non-stopwords without a synset.
    KwNonSwNoSyn,
    /// Known words without a synset.
    KwNoSyn,
    /// Known non-stopwords.
    KwNonSw,
}

impl WordClass {
    pub fn matches(self, class: &TokenClass) -> bool {
        if !class.is_word {
            return false;
        }
        match self {
            WordClass::Kw => class.is_known,
            WordClass::Kwss => class.is_known && class.has_synset,
            WordClass::Sw => class.is_stopword,
            WordClass::Nsssw => class.is_stopword && !class.has_synset,
            WordClass::KwNonSwNoSyn => class.is_known && !class.is_stopword && !class.has_synset,
            WordClass::KwNoSyn => class.is_known && !class.has_synset,
            WordClass::KwNonSw => class.is_known && !class.is_stopword,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            WordClass::Kw => "kw",
            WordClass::Kwss => "kwss",
            WordClass::Sw => "sw",
            WordClass::Nsssw => "nsssw",
            WordClass::KwNonSwNoSyn => "kw-nonsw-nosyn",
            WordClass::KwNoSyn => "kw-nosyn",
            WordClass::KwNonSw => "kw-nonsw",
        }
    }
}

/// Mean and population standard deviation of sizes, over incident
/// occurrences and over distinct forms. Empty classes stay absent.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ClassSizes {
    pub incident: Option<(f64, f64)>,
    pub distinct: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SizeMetrics {
    pub kw: ClassSizes,
    pub kwss: ClassSizes,
    pub sw: ClassSizes,
    pub nsssw: ClassSizes,
}

/// Occurrence lengths and the distinct-form set for one word class.
pub fn class_lengths(corpus: &Corpus, lex: &Lexicon, class: WordClass) -> (Vec<u64>, BTreeSet<String>) {
    let mut incident = Vec::new();
    let mut forms = BTreeSet::new();
    for body in corpus.bodies() {
        for token in tokenize(body) {
            let tc = lex.classify_token(token);
            if class.matches(&tc) {
                incident.push(token.chars().count() as u64);
                forms.insert(normalize_form(token));
            }
        }
    }
    (incident, forms)
}

fn class_sizes(corpus: &Corpus, lex: &Lexicon, class: WordClass) -> ClassSizes {
    let (incident, forms) = class_lengths(corpus, lex, class);
    let incident_f: Vec<f64> = incident.iter().map(|l| *l as f64).collect();
    let distinct_f: Vec<f64> = forms.iter().map(|f| f.chars().count() as f64).collect();
    ClassSizes {
        incident: population_mu_sigma(&incident_f),
        distinct: population_mu_sigma(&distinct_f),
    }
}

pub fn word_size_metrics(corpus: &Corpus, lex: &Lexicon) -> Result<SizeMetrics, TextError> {
    if corpus.is_empty() {
        return Err(TextError::EmptyCorpus);
    }
    Ok(SizeMetrics {
        kw: class_sizes(corpus, lex, WordClass::Kw),
        kwss: class_sizes(corpus, lex, WordClass::Kwss),
        sw: class_sizes(corpus, lex, WordClass::Sw),
        nsssw: class_sizes(corpus, lex, WordClass::Nsssw),
    })
}

// -------------------------------------------------------- sentences, messages

#[derive(Debug, Clone, PartialEq)]
pub struct SentenceMetrics {
    pub n_sents: u64,
    pub chars_per_sent: Option<(f64, f64)>,
    pub tokens_per_sent: Option<(f64, f64)>,
    pub kw_per_sent: Option<(f64, f64)>,
    pub kwssnsw_per_sent: Option<(f64, f64)>,
}

pub fn sentence_metrics(corpus: &Corpus, lex: &Lexicon) -> Result<SentenceMetrics, TextError> {
    if corpus.is_empty() {
        return Err(TextError::EmptyCorpus);
    }
    let mut chars = Vec::new();
    let mut tokens = Vec::new();
    let mut kws = Vec::new();
    let mut kwssnsw = Vec::new();
    for body in corpus.bodies() {
        for sentence in split_sentences(body) {
            chars.push(sentence.chars().count() as f64);
            let toks = tokenize(sentence);
            tokens.push(toks.len() as f64);
            let mut kw_count = 0u64;
            let mut kwssnsw_count = 0u64;
            for t in &toks {
                let c = lex.classify_token(t);
                if c.is_word && c.is_known {
                    kw_count += 1;
                    if c.has_synset && !c.is_stopword {
                        kwssnsw_count += 1;
                    }
                }
            }
            kws.push(kw_count as f64);
            kwssnsw.push(kwssnsw_count as f64);
        }
    }
    Ok(SentenceMetrics {
        n_sents: chars.len() as u64,
        chars_per_sent: population_mu_sigma(&chars),
        tokens_per_sent: population_mu_sigma(&tokens),
        kw_per_sent: population_mu_sigma(&kws),
        kwssnsw_per_sent: population_mu_sigma(&kwssnsw),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MessageMetrics {
    pub n_messages: u64,
    pub chars_per_msg: (f64, f64),
    pub tokens_per_msg: (f64, f64),
    pub sents_per_msg: (f64, f64),
}

pub fn message_metrics(corpus: &Corpus) -> Result<MessageMetrics, TextError> {
    if corpus.is_empty() {
        return Err(TextError::EmptyCorpus);
    }
    let mut chars = Vec::new();
    let mut tokens = Vec::new();
    let mut sents = Vec::new();
    for body in corpus.bodies() {
        chars.push(body.chars().count() as f64);
        tokens.push(tokenize(body).len() as f64);
        sents.push(split_sentences(body).len() as f64);
    }
    Ok(MessageMetrics {
        n_messages: corpus.len() as u64,
        chars_per_msg: population_mu_sigma(&chars).unwrap(),
        tokens_per_msg: population_mu_sigma(&tokens).unwrap(),
        sents_per_msg: population_mu_sigma(&sents).unwrap(),
    })
}

// -------------------------------------------------------------------- POS

pub const NOUN_TAGS: &[&str] = &["NN", "NNS", "NNP", "NNPS"];
pub const MODIFIER_TAGS: &[&str] = &["JJ", "JJR", "JJS", "RB", "RBR", "RBS", "RP"];
pub const VERB_TAGS: &[&str] = &["VB", "VBZ", "VBP", "VBN", "VBD", "VBG", "MD"];
pub const FUNCTION_TAGS: &[&str] = &[
    "IN", "DT", "PRP", "PRP$", "PDT", "TO", "CC", "WRB", "WDT", "WP", "WP$",
];
pub const OTHER_TAGS: &[&str] = &["CD", "EX", "UH", "FW"];

/// Group subtotals shown as `+` rows, in table order.
pub const TAG_GROUPS: &[(&str, &[&str])] = &[
    ("nouns", NOUN_TAGS),
    ("modifiers", MODIFIER_TAGS),
    ("verbs", VERB_TAGS),
    ("function", FUNCTION_TAGS),
    ("other", OTHER_TAGS),
];

/// All tracked tags in table order.
pub fn tracked_tags() -> Vec<&'static str> {
    TAG_GROUPS.iter().flat_map(|(_, tags)| tags.iter().copied()).collect()
}

/// Tag counts over non-punctuation tokens.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PosMetrics {
    pub counts: BTreeMap<String, u64>,
    pub total: u64,
}

impl PosMetrics {
    pub fn pct(&self, tag: &str) -> Option<f64> {
        ratio(self.counts.get(tag).copied().unwrap_or(0), self.total)
    }

    pub fn group_pct(&self, tags: &[&str]) -> Option<f64> {
        let sum: u64 = tags
            .iter()
            .map(|t| self.counts.get(*t).copied().unwrap_or(0))
            .sum();
        ratio(sum, self.total)
    }

    /// True when no taggable (non-punctuation) token was seen.
    pub fn degenerate(&self) -> bool {
        self.total == 0
    }
}

pub fn pos_metrics(corpus: &Corpus, lex: &Lexicon) -> Result<PosMetrics, TextError> {
    if corpus.is_empty() {
        return Err(TextError::EmptyCorpus);
    }
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    let mut total = 0u64;
    for body in corpus.bodies() {
        for sentence in split_sentences(body) {
            let tokens = tokenize(sentence);
            for tag in lex.pos_tag(&tokens) {
                if tag != PUNCT_TAG {
                    *counts.entry(tag).or_insert(0) += 1;
                    total += 1;
                }
            }
        }
    }
    Ok(PosMetrics { counts, total })
}

// ------------------------------------------------------------ feature matrix

/// One row per author: topological metrics followed by textual metrics
/// computed over that author's own messages. Column order is fixed; absent
/// values (degenerate denominators) stay `None` and are handled by the
/// statistics layer with pairwise-complete semantics.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    pub feature_names: Vec<String>,
    pub authors: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl FeatureMatrix {
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let idx = self.feature_names.iter().position(|n| n == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    /// Rows restricted to the authors of one sector.
    pub fn filter_sector(&self, partition: &SectorPartition, sector: Sector) -> FeatureMatrix {
        let mut authors = Vec::new();
        let mut rows = Vec::new();
        for (author, row) in self.authors.iter().zip(&self.rows) {
            if partition.sector_of(author) == Some(sector) {
                authors.push(author.clone());
                rows.push(row.clone());
            }
        }
        FeatureMatrix {
            feature_names: self.feature_names.clone(),
            authors,
            rows,
        }
    }
}

pub fn feature_names() -> Vec<String> {
    let mut names: Vec<String> = [
        "d", "d_i", "d_o", "s", "s_i", "s_o", "bc", "tri", "cc", "sector",
        "n_chars", "pct_space", "pct_punct_char", "pct_digit_char", "pct_letter_char",
        "pct_vowel_letters", "pct_upper_letters",
        "n_tokens", "chars_per_token", "token_diversity", "pct_punct_tokens",
        "pct_kw_nonpunct", "lexical_diversity", "pct_kwss_kw", "pct_kwsw_kw",
        "pct_ukwsw_kw", "pct_kw_sw_syn_kw", "pct_kw_sw_nosyn_kw", "pct_contractions_kw",
        "pct_kw_nonsw_nosyn_kw", "pct_kw_nonsw_syn_kw",
        "mu_skw", "sigma_skw", "mu_skw_d", "sigma_skw_d",
        "mu_skwss", "sigma_skwss", "mu_skwss_d", "sigma_skwss_d",
        "mu_ssw", "sigma_ssw", "mu_ssw_d", "sigma_ssw_d",
        "mu_snsssw", "sigma_snsssw", "mu_snsssw_d", "sigma_snsssw_d",
        "n_sents", "mu_chars_sent", "sigma_chars_sent", "mu_tokens_sent", "sigma_tokens_sent",
        "mu_kw_sent", "sigma_kw_sent", "mu_kwssnsw_sent", "sigma_kwssnsw_sent",
        "mu_chars_msg", "sigma_chars_msg", "mu_tokens_msg", "sigma_tokens_msg",
        "mu_sents_msg", "sigma_sents_msg",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    for tag in tracked_tags() {
        names.push(format!("pos_{tag}"));
    }
    for (group, _) in TAG_GROUPS {
        names.push(format!("pos_{group}"));
    }
    names
}

fn push_pair(row: &mut Vec<Option<f64>>, pair: Option<(f64, f64)>) {
    match pair {
        Some((mu, sigma)) => {
            row.push(Some(mu));
            row.push(Some(sigma));
        }
        None => {
            row.push(None);
            row.push(None);
        }
    }
}

pub fn author_features(
    store: &MessageStore,
    partition: &SectorPartition,
    net_metrics: &VertexMetrics,
    lex: &Lexicon,
    strip_quotes: bool,
) -> Result<FeatureMatrix, TextError> {
    if store.is_empty() {
        return Err(TextError::EmptyCorpus);
    }
    let names = feature_names();
    let mut authors = Vec::new();
    let mut rows = Vec::new();
    for author in store.authors() {
        let sector = partition
            .sector_of(&author)
            .ok_or_else(|| TextError::PartitionMismatch(author.clone()))?;
        let topo = net_metrics
            .get(&author)
            .copied()
            .unwrap_or_default();
        let corpus = Corpus::for_author(store, &author, strip_quotes);
        let chars = char_metrics(&corpus)?;
        let tokens = token_metrics(&corpus, lex)?;
        let sizes = word_size_metrics(&corpus, lex)?;
        let sents = sentence_metrics(&corpus, lex)?;
        let msgs = message_metrics(&corpus)?;
        let pos = pos_metrics(&corpus, lex)?;

        let mut row: Vec<Option<f64>> = Vec::with_capacity(names.len());
        row.extend([
            Some(topo.degree as f64),
            Some(topo.in_degree as f64),
            Some(topo.out_degree as f64),
            Some(topo.strength as f64),
            Some(topo.in_strength as f64),
            Some(topo.out_strength as f64),
            Some(topo.betweenness),
            Some(topo.triangles as f64),
            Some(topo.clustering),
            Some(sector.index() as f64),
        ]);
        row.push(Some(chars.n_chars as f64));
        row.extend([
            chars.pct_space_opt(),
            chars.pct_punct_opt(),
            chars.pct_digit_opt(),
            chars.pct_letter_opt(),
            chars.pct_vowel_opt(),
            chars.pct_upper_opt(),
        ]);
        row.push(Some(tokens.n_tokens as f64));
        row.extend([
            tokens.chars_per_token,
            tokens.token_diversity,
            tokens.pct_punct_tokens,
            tokens.pct_known_of_nonpunct,
            tokens.lexical_diversity,
            tokens.pct_kwss_of_kw,
            tokens.pct_kwsw_of_kw,
            tokens.pct_ukwsw_of_kw,
            tokens.pct_kw_sw_syn_of_kw,
            tokens.pct_kw_sw_nosyn_of_kw,
            tokens.pct_contractions_of_kw,
            tokens.pct_kw_nonsw_nosyn_of_kw,
            tokens.pct_kw_nonsw_syn_of_kw,
        ]);
        for class in [&sizes.kw, &sizes.kwss, &sizes.sw, &sizes.nsssw] {
            push_pair(&mut row, class.incident);
            push_pair(&mut row, class.distinct);
        }
        row.push(Some(sents.n_sents as f64));
        push_pair(&mut row, sents.chars_per_sent);
        push_pair(&mut row, sents.tokens_per_sent);
        push_pair(&mut row, sents.kw_per_sent);
        push_pair(&mut row, sents.kwssnsw_per_sent);
        push_pair(&mut row, Some(msgs.chars_per_msg));
        push_pair(&mut row, Some(msgs.tokens_per_msg));
        push_pair(&mut row, Some(msgs.sents_per_msg));
        for tag in tracked_tags() {
            row.push(pos.pct(tag));
        }
        for (_, tags) in TAG_GROUPS {
            row.push(pos.group_pct(tags));
        }
        debug_assert_eq!(row.len(), names.len());
        authors.push(author);
        rows.push(row);
    }
    Ok(FeatureMatrix {
        feature_names: names,
        authors,
        rows,
    })
}
