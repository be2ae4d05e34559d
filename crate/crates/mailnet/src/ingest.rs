//! Archive ingestion: mbox and JSON-lines parsing into an immutable,
//! indexed message store.
//!
//! Stores are never mutated after construction; truncation returns a new
//! store with dangling references recomputed.

use chrono::{DateTime, TimeZone, Utc};
use log::warn;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("malformed archive: no `From ` separator found in nonempty input")]
    MalformedArchive,
    #[error("line {0}: not a JSON object")]
    MalformedLine(usize),
    #[error("line {line}: missing field `{key}`")]
    MissingField { line: usize, key: &'static str },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// One parsed archive entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawMessage {
    pub id: String,
    pub in_reply_to: Option<String>,
    pub author: String,
    pub date: DateTime<Utc>,
    pub body: String,
}

/// An ordered, indexed collection of messages from one archive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MessageStore {
    messages: Vec<RawMessage>,
    by_id: BTreeMap<String, usize>,
    dangling_refs: BTreeSet<String>,
}

impl MessageStore {
    /// Build a store, enforcing id uniqueness (first occurrence wins; later
    /// duplicates are dropped and logged) and recording unresolvable
    /// `in_reply_to` values.
    pub fn build(messages: Vec<RawMessage>) -> MessageStore {
        let mut kept: Vec<RawMessage> = Vec::with_capacity(messages.len());
        let mut by_id = BTreeMap::new();
        for msg in messages {
            debug_assert!(!msg.id.is_empty() && !msg.author.is_empty());
            if by_id.contains_key(&msg.id) {
                warn!("duplicate message id {} dropped", msg.id);
                continue;
            }
            by_id.insert(msg.id.clone(), kept.len());
            kept.push(msg);
        }
        let dangling_refs = kept
            .iter()
            .filter_map(|m| m.in_reply_to.as_ref())
            .filter(|r| !by_id.contains_key(*r))
            .cloned()
            .collect();
        MessageStore {
            messages: kept,
            by_id,
            dangling_refs,
        }
    }

    pub fn messages(&self) -> &[RawMessage] {
        &self.messages
    }

    pub fn len(&self) -> usize {
        self.messages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.messages.is_empty()
    }

    pub fn position_of(&self, id: &str) -> Option<usize> {
        self.by_id.get(id).copied()
    }

    pub fn get(&self, id: &str) -> Option<&RawMessage> {
        self.position_of(id).map(|i| &self.messages[i])
    }

    pub fn dangling_refs(&self) -> &BTreeSet<String> {
        &self.dangling_refs
    }

    /// Resolved parent of a message, if any.
    pub fn parent_of(&self, msg: &RawMessage) -> Option<&RawMessage> {
        msg.in_reply_to.as_deref().and_then(|r| self.get(r))
    }

    /// Distinct authors in id order.
    pub fn authors(&self) -> BTreeSet<String> {
        self.messages.iter().map(|m| m.author.clone()).collect()
    }

    /// New store holding the first `limit` messages in archive order.
    pub fn truncate(&self, limit: usize) -> MessageStore {
        let n = limit.min(self.messages.len());
        MessageStore::build(self.messages[..n].to_vec())
    }

    /// Canonical JSON-lines dump; `parse_jsonl` of the output round-trips.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for msg in &self.messages {
            let record = serde_json::json!({
                "id": msg.id,
                "in_reply_to": msg.in_reply_to,
                "author": msg.author,
                "date": msg.date.to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
                "body": msg.body,
            });
            out.push_str(&record.to_string());
            out.push('\n');
        }
        out
    }
}

/// Lowercase an address and strip display names / angle brackets /
/// parenthesized comments: `"Ada L." <Ada@Host>` and `ada@host (Ada L.)`
/// both normalize to `ada@host`.
pub fn normalize_author(raw: &str) -> String {
    let raw = raw.trim();
    if let (Some(start), Some(end)) = (raw.find('<'), raw.rfind('>')) {
        if start < end {
            return raw[start + 1..end].trim().to_lowercase();
        }
    }
    // drop trailing "(comment)"
    let mut addr = raw;
    if let Some(open) = raw.find('(') {
        addr = raw[..open].trim();
    }
    // fall back to the first token that looks like an address
    if addr.contains(char::is_whitespace) {
        if let Some(tok) = addr.split_whitespace().find(|t| t.contains('@')) {
            addr = tok;
        }
    }
    addr.trim_matches(|c| c == '"' || c == '\'').to_lowercase()
}

fn decode_quoted_printable(input: &str) -> String {
    let mut out = String::with_capacity(input.len());
    let mut bytes: Vec<u8> = Vec::with_capacity(input.len());
    let mut chars = input.chars().peekable();
    while let Some(c) = chars.next() {
        if c != '=' {
            let mut buf = [0u8; 4];
            bytes.extend_from_slice(c.encode_utf8(&mut buf).as_bytes());
            continue;
        }
        let mut lookahead = chars.clone();
        match (lookahead.next(), lookahead.next()) {
            // soft line break: =\n or =\r\n
            (Some('\n'), _) => {
                chars.next();
            }
            (Some('\r'), Some('\n')) => {
                chars.next();
                chars.next();
            }
            (Some(h), Some(l)) if h.is_ascii_hexdigit() && l.is_ascii_hexdigit() => {
                let hi = h.to_digit(16).unwrap() as u8;
                let lo = l.to_digit(16).unwrap() as u8;
                bytes.push(hi * 16 + lo);
                chars.next();
                chars.next();
            }
            _ => bytes.push(b'='),
        }
    }
    out.push_str(&String::from_utf8_lossy(&bytes));
    out
}

/// Minimal header map with case-insensitive names and unfolded values.
fn parse_headers(lines: &[&str]) -> BTreeMap<String, String> {
    let mut headers = BTreeMap::new();
    let mut current: Option<(String, String)> = None;
    for line in lines {
        if line.starts_with(' ') || line.starts_with('\t') {
            if let Some((_, v)) = current.as_mut() {
                v.push(' ');
                v.push_str(line.trim());
            }
            continue;
        }
        if let Some((name, value)) = current.take() {
            headers.entry(name).or_insert(value);
        }
        if let Some((name, value)) = line.split_once(':') {
            current = Some((name.trim().to_lowercase(), value.trim().to_string()));
        }
    }
    if let Some((name, value)) = current.take() {
        headers.entry(name).or_insert(value);
    }
    headers
}

/// First message-id-shaped token (`<...>`) of a header value, or the
/// trimmed value when no brackets are present.
fn first_msg_id(value: &str) -> Option<String> {
    let value = value.trim();
    if value.is_empty() {
        return None;
    }
    if let Some(start) = value.find('<') {
        if let Some(len) = value[start..].find('>') {
            return Some(value[start..start + len + 1].to_string());
        }
    }
    Some(value.split_whitespace().next()?.to_string())
}

fn parse_date(value: &str) -> Option<DateTime<Utc>> {
    if let Ok(dt) = DateTime::parse_from_rfc2822(value) {
        return Some(dt.with_timezone(&Utc));
    }
    // RFC 2822 with trailing "(TZ)" comments usually parses already; try a
    // couple of laxer shapes seen in the wild.
    let cleaned = value
        .split('(')
        .next()
        .unwrap_or(value)
        .trim()
        .trim_end_matches(',');
    if let Ok(dt) = DateTime::parse_from_rfc2822(cleaned) {
        return Some(dt.with_timezone(&Utc));
    }
    if let Ok(dt) = DateTime::parse_from_rfc3339(cleaned) {
        return Some(dt.with_timezone(&Utc));
    }
    None
}

fn fallback_date(previous: Option<&RawMessage>) -> DateTime<Utc> {
    previous
        .map(|m| m.date)
        .unwrap_or_else(|| Utc.timestamp_opt(0, 0).unwrap())
}

/// Extract the effective text body: decodes quoted-printable and, for
/// multipart messages, keeps the first `text/plain` part.
fn extract_body(headers: &BTreeMap<String, String>, raw_body: &str) -> String {
    let ctype = headers.get("content-type").map(String::as_str).unwrap_or("");
    let cte = headers
        .get("content-transfer-encoding")
        .map(|v| v.to_lowercase())
        .unwrap_or_default();

    if let Some(boundary) = boundary_of(ctype) {
        let marker = format!("--{boundary}");
        for part in raw_body.split(&marker).skip(1) {
            let part = part.trim_start_matches(['\r', '\n']);
            if part.starts_with("--") {
                break;
            }
            let (head, body) = match split_header_block(part) {
                Some(pair) => pair,
                None => continue,
            };
            let part_headers = parse_headers(&head.lines().collect::<Vec<_>>());
            let part_type = part_headers
                .get("content-type")
                .map(String::as_str)
                .unwrap_or("text/plain");
            if part_type.to_lowercase().starts_with("text/plain") {
                let part_cte = part_headers
                    .get("content-transfer-encoding")
                    .map(|v| v.to_lowercase())
                    .unwrap_or_default();
                return if part_cte.contains("quoted-printable") {
                    decode_quoted_printable(body)
                } else {
                    body.to_string()
                };
            }
        }
        return String::new();
    }

    if cte.contains("quoted-printable") {
        decode_quoted_printable(raw_body)
    } else {
        raw_body.to_string()
    }
}

fn boundary_of(content_type: &str) -> Option<String> {
    let lower = content_type.to_lowercase();
    if !lower.starts_with("multipart/") {
        return None;
    }
    let idx = lower.find("boundary=")?;
    let rest = &content_type[idx + "boundary=".len()..];
    let rest = rest.trim();
    let boundary = if let Some(stripped) = rest.strip_prefix('"') {
        stripped.split('"').next()?
    } else {
        rest.split(|c: char| c == ';' || c.is_whitespace()).next()?
    };
    Some(boundary.to_string())
}

fn split_header_block(entry: &str) -> Option<(&str, &str)> {
    if let Some(pos) = entry.find("\n\n") {
        return Some((&entry[..pos], &entry[pos + 2..]));
    }
    entry
        .find("\r\n\r\n")
        .map(|pos| (&entry[..pos], &entry[pos + 4..]))
}

/// Unescape mboxrd-style `>From ` quoting at line starts.
fn unescape_from(body: &str) -> String {
    let mut out = String::with_capacity(body.len());
    for (i, line) in body.split('\n').enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let trimmed = line.trim_start_matches('>');
        if trimmed.starts_with("From ") && line.starts_with('>') {
            out.push_str(&line[1..]);
        } else {
            out.push_str(line);
        }
    }
    out
}

/// Parse an RFC-4155-style mbox byte stream. Invalid UTF-8 is replaced
/// (and logged); entries without Message-ID or From are skipped.
pub fn parse_mbox(source: &[u8]) -> Result<MessageStore, IngestError> {
    let text = match std::str::from_utf8(source) {
        Ok(t) => t.to_string(),
        Err(_) => {
            warn!("archive contains invalid UTF-8; bytes replaced lossily");
            String::from_utf8_lossy(source).into_owned()
        }
    };
    if text.trim().is_empty() {
        return Ok(MessageStore::build(Vec::new()));
    }

    let mut entries: Vec<&str> = Vec::new();
    let mut starts: Vec<usize> = Vec::new();
    if text.starts_with("From ") {
        starts.push(0);
    }
    for (idx, _) in text.match_indices("\nFrom ") {
        starts.push(idx + 1);
    }
    if starts.is_empty() {
        return Err(IngestError::MalformedArchive);
    }
    for (i, &s) in starts.iter().enumerate() {
        let end = starts.get(i + 1).copied().unwrap_or(text.len());
        entries.push(&text[s..end]);
    }

    let mut messages: Vec<RawMessage> = Vec::with_capacity(entries.len());
    for entry in entries {
        // drop the "From " separator line itself
        let entry = match entry.split_once('\n') {
            Some((_, rest)) => rest,
            None => continue,
        };
        let (header_block, raw_body) = match split_header_block(entry) {
            Some(pair) => pair,
            None => (entry, ""),
        };
        let headers = parse_headers(&header_block.lines().collect::<Vec<_>>());
        let id = match headers.get("message-id").and_then(|v| first_msg_id(v)) {
            Some(id) => id,
            None => {
                warn!("mbox entry without Message-ID skipped");
                continue;
            }
        };
        let author = match headers.get("from").map(|v| normalize_author(v)) {
            Some(a) if !a.is_empty() => a,
            _ => {
                warn!("mbox entry {id} without usable From skipped");
                continue;
            }
        };
        let date = headers
            .get("date")
            .and_then(|v| parse_date(v))
            .unwrap_or_else(|| fallback_date(messages.last()));
        let in_reply_to = headers.get("in-reply-to").and_then(|v| first_msg_id(v));
        let body = unescape_from(&extract_body(&headers, raw_body));
        messages.push(RawMessage {
            id,
            in_reply_to,
            author,
            date,
            body,
        });
    }
    Ok(MessageStore::build(messages))
}

/// Parse JSON-lines: one object per line with keys `id`, `in_reply_to`
/// (nullable), `author`, `date` (ISO-8601) and `body`.
pub fn parse_jsonl(source: &[u8]) -> Result<MessageStore, IngestError> {
    let text = match std::str::from_utf8(source) {
        Ok(t) => t.to_string(),
        Err(_) => {
            warn!("archive contains invalid UTF-8; bytes replaced lossily");
            String::from_utf8_lossy(source).into_owned()
        }
    };
    let mut messages = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let value: serde_json::Value =
            serde_json::from_str(line).map_err(|_| IngestError::MalformedLine(line_no))?;
        let obj = value
            .as_object()
            .ok_or(IngestError::MalformedLine(line_no))?;
        let field = |key: &'static str| -> Result<&serde_json::Value, IngestError> {
            obj.get(key).ok_or(IngestError::MissingField { line: line_no, key })
        };
        let id = field("id")?
            .as_str()
            .ok_or(IngestError::MalformedLine(line_no))?
            .to_string();
        let in_reply_to = match field("in_reply_to")? {
            serde_json::Value::Null => None,
            serde_json::Value::String(s) => Some(s.clone()),
            _ => return Err(IngestError::MalformedLine(line_no)),
        };
        let author = normalize_author(
            field("author")?
                .as_str()
                .ok_or(IngestError::MalformedLine(line_no))?,
        );
        let date_str = field("date")?
            .as_str()
            .ok_or(IngestError::MalformedLine(line_no))?;
        let date = parse_date(date_str).unwrap_or_else(|| fallback_date(messages.last()));
        let body = field("body")?
            .as_str()
            .ok_or(IngestError::MalformedLine(line_no))?
            .to_string();
        messages.push(RawMessage {
            id,
            in_reply_to,
            author,
            date,
            body,
        });
    }
    Ok(MessageStore::build(messages))
}
