//! Single-pass token classifier.
//!
//! The scanner only needs to assign a [`TokenClass`] to every byte so the
//! renderer can pick glyph colors. It never fails: unterminated strings and
//! block comments swallow the rest of the input.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::profile::LanguageProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TokenClass {
    Keyword,
    Identifier,
    NumberLiteral,
    StringLiteral,
    CharLiteral,
    Comment,
    Punctuation,
    Whitespace,
}

impl TokenClass {
    pub const ALL: [TokenClass; 8] = [
        TokenClass::Keyword,
        TokenClass::Identifier,
        TokenClass::NumberLiteral,
        TokenClass::StringLiteral,
        TokenClass::CharLiteral,
        TokenClass::Comment,
        TokenClass::Punctuation,
        TokenClass::Whitespace,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TokenClass::Keyword => "keyword",
            TokenClass::Identifier => "identifier",
            TokenClass::NumberLiteral => "number-literal",
            TokenClass::StringLiteral => "string-literal",
            TokenClass::CharLiteral => "char-literal",
            TokenClass::Comment => "comment",
            TokenClass::Punctuation => "punctuation",
            TokenClass::Whitespace => "whitespace",
        }
    }

    pub(crate) fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for TokenClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TokenClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TokenClass::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown token class `{s}`"))
    }
}

/// A classified byte range `[start, end)` of the source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TokenSpan {
    pub start: usize,
    pub end: usize,
    pub class: TokenClass,
}

impl TokenSpan {
    pub fn new(start: usize, end: usize, class: TokenClass) -> Self {
        debug_assert!(start < end);
        TokenSpan { start, end, class }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

fn is_ident_start(b: u8) -> bool {
    b.is_ascii_alphabetic() || b == b'_'
}

fn is_ident_continue(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

struct Scanner<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    profile: &'a LanguageProfile,
    string_delim: [u8; 4],
    char_delim: [u8; 4],
}

impl<'a> Scanner<'a> {
    fn rest(&self) -> &'a [u8] {
        &self.bytes[self.pos..]
    }

    fn char_len_at(&self, i: usize) -> usize {
        self.src[i..].chars().next().map_or(1, char::len_utf8)
    }

    fn delim(&self, buf: &'a [u8; 4], ch: char) -> &'a [u8] {
        &buf[..ch.len_utf8()]
    }

    /// Scans to just past `close`, or to end of input if it never appears.
    fn until_after(&self, from: usize, close: &[u8]) -> usize {
        let hay = &self.bytes[from..];
        match hay.windows(close.len()).position(|w| w == close) {
            Some(p) => from + p + close.len(),
            None => self.bytes.len(),
        }
    }

    /// Quoted literal starting at `self.pos` with `delim`; backslash escapes the next char.
    fn quoted(&self, delim: &[u8]) -> usize {
        let mut i = self.pos + delim.len();
        while i < self.bytes.len() {
            if self.bytes[i] == b'\\' {
                i += 1;
                if i < self.bytes.len() {
                    i += self.char_len_at(i);
                }
                continue;
            }
            if self.bytes[i..].starts_with(delim) {
                return i + delim.len();
            }
            i += self.char_len_at(i);
        }
        self.bytes.len()
    }

    fn next_token(&mut self) -> TokenSpan {
        let start = self.pos;
        let rest = self.rest();
        let line = self.profile.line_comment.as_bytes();
        let block_open = self.profile.block_comment_open.as_bytes();
        let block_close = self.profile.block_comment_close.as_bytes();
        let string_delim = self.delim(&self.string_delim, self.profile.string_delim);
        let char_delim = self.delim(&self.char_delim, self.profile.char_delim);

        // Longer comment opener wins when one is a prefix of the other.
        let block_first = block_open.len() >= line.len();
        let is_block = rest.starts_with(block_open);
        let is_line = rest.starts_with(line);

        let (end, class) = if is_block && (block_first || !is_line) {
            (
                self.until_after(start + block_open.len(), block_close),
                TokenClass::Comment,
            )
        } else if is_line {
            let end = rest
                .iter()
                .position(|&b| b == b'\n')
                .map_or(self.bytes.len(), |p| start + p);
            (end, TokenClass::Comment)
        } else if rest.starts_with(string_delim) {
            (self.quoted(string_delim), TokenClass::StringLiteral)
        } else if rest.starts_with(char_delim) {
            (self.quoted(char_delim), TokenClass::CharLiteral)
        } else {
            let b = rest[0];
            if b.is_ascii_whitespace() {
                let n = rest.iter().take_while(|b| b.is_ascii_whitespace()).count();
                (start + n, TokenClass::Whitespace)
            } else if is_ident_start(b) {
                let n = rest.iter().take_while(|&&b| is_ident_continue(b)).count();
                let class = if self.profile.is_keyword(&self.src[start..start + n]) {
                    TokenClass::Keyword
                } else {
                    TokenClass::Identifier
                };
                (start + n, class)
            } else if b.is_ascii_digit() {
                let mut n = rest.iter().take_while(|b| b.is_ascii_digit()).count();
                if rest.get(n) == Some(&b'.') && rest.get(n + 1).is_some_and(u8::is_ascii_digit) {
                    n += 1;
                    n += rest[n..].iter().take_while(|b| b.is_ascii_digit()).count();
                }
                // suffixes and radix digits (`10L`, `1.5f`, `0xFF`) stay in the literal
                n += rest[n..].iter().take_while(|&&b| is_ident_continue(b)).count();
                (start + n, TokenClass::NumberLiteral)
            } else {
                (start + self.char_len_at(start), TokenClass::Punctuation)
            }
        };
        self.pos = end;
        TokenSpan::new(start, end, class)
    }
}

/// Splits `source` into classified spans that tile it exactly.
pub fn lex(source: &str, profile: &LanguageProfile) -> Vec<TokenSpan> {
    let mut string_delim = [0u8; 4];
    let mut char_delim = [0u8; 4];
    profile.string_delim.encode_utf8(&mut string_delim);
    profile.char_delim.encode_utf8(&mut char_delim);
    let mut scanner = Scanner {
        src: source,
        bytes: source.as_bytes(),
        pos: 0,
        profile,
        string_delim,
        char_delim,
    };
    let mut spans = Vec::new();
    while scanner.pos < scanner.bytes.len() {
        spans.push(scanner.next_token());
    }
    spans
}

/// Decodes `bytes` as UTF-8 and lexes it.
pub fn lex_bytes(
    bytes: &[u8],
    profile: &LanguageProfile,
) -> Result<Vec<TokenSpan>, std::str::Utf8Error> {
    Ok(lex(std::str::from_utf8(bytes)?, profile))
}
