//! Brute-force oracles and fixture builders shared by the integration tests.
//!
//! Every oracle here is written independently of the library code it
//! checks: scalar loops, explicit state machines, full sorts.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use wysiwim::render::{LanguageProfile, RasterImage, TokenClass};

// ---------------------------------------------------------------- lexer

/// Per-byte state machine classifier for ASCII sources. Returns
/// `(start, end, class)` triples.
pub fn lex_oracle(src: &str, p: &LanguageProfile) -> Vec<(usize, usize, TokenClass)> {
    #[derive(Clone, Copy, PartialEq)]
    enum St {
        Idle,
        Line,
        Block { opened_at: usize },
        Quote { delim: u8, escaped: bool, class: TokenClass },
        Word,
        Int,
        Frac,
        Suffix,
        Space,
    }
    let b = src.as_bytes();
    let line = p.line_comment.as_bytes();
    let open = p.block_comment_open.as_bytes();
    let close = p.block_comment_close.as_bytes();
    let sd = p.string_delim as u8;
    let cd = p.char_delim as u8;
    let word = |c: u8| c == b'_' || c.is_ascii_alphanumeric();

    let mut out = Vec::new();
    let mut st = St::Idle;
    let mut start = 0;
    let mut i = 0;
    let emit = |out: &mut Vec<_>, s: usize, e: usize, c: TokenClass| out.push((s, e, c));
    while i <= b.len() {
        let c = b.get(i).copied();
        match st {
            St::Idle => {
                let Some(ch) = c else { break };
                start = i;
                let at = &b[i..];
                let block = at.starts_with(open);
                let lc = at.starts_with(line);
                if block && (open.len() >= line.len() || !lc) {
                    st = St::Block { opened_at: i };
                    i += open.len();
                } else if lc {
                    st = St::Line;
                    i += line.len();
                } else if ch == sd {
                    st = St::Quote { delim: sd, escaped: false, class: TokenClass::StringLiteral };
                    i += 1;
                } else if ch == cd {
                    st = St::Quote { delim: cd, escaped: false, class: TokenClass::CharLiteral };
                    i += 1;
                } else if ch.is_ascii_whitespace() {
                    st = St::Space;
                    i += 1;
                } else if ch == b'_' || ch.is_ascii_alphabetic() {
                    st = St::Word;
                    i += 1;
                } else if ch.is_ascii_digit() {
                    st = St::Int;
                    i += 1;
                } else {
                    emit(&mut out, i, i + 1, TokenClass::Punctuation);
                    i += 1;
                }
            }
            St::Line => match c {
                Some(b'\n') | None => {
                    emit(&mut out, start, i, TokenClass::Comment);
                    st = St::Idle;
                }
                Some(_) => i += 1,
            },
            St::Block { opened_at } => {
                let body = opened_at + open.len();
                if i >= body + close.len() && i >= close.len() && &b[i - close.len()..i] == close {
                    emit(&mut out, start, i, TokenClass::Comment);
                    st = St::Idle;
                } else if c.is_none() {
                    emit(&mut out, start, i, TokenClass::Comment);
                    st = St::Idle;
                } else {
                    i += 1;
                }
            }
            St::Quote { delim, escaped, class } => match c {
                None => {
                    emit(&mut out, start, i, class);
                    st = St::Idle;
                }
                Some(ch) if escaped => {
                    let _ = ch;
                    st = St::Quote { delim, escaped: false, class };
                    i += 1;
                }
                Some(b'\\') => {
                    st = St::Quote { delim, escaped: true, class };
                    i += 1;
                }
                Some(ch) if ch == delim => {
                    emit(&mut out, start, i + 1, class);
                    st = St::Idle;
                    i += 1;
                }
                Some(_) => i += 1,
            },
            St::Word => match c {
                Some(ch) if word(ch) => i += 1,
                _ => {
                    let text = &src[start..i];
                    let class = if p.keywords.iter().any(|k| k == text) {
                        TokenClass::Keyword
                    } else {
                        TokenClass::Identifier
                    };
                    emit(&mut out, start, i, class);
                    st = St::Idle;
                }
            },
            St::Int => match c {
                Some(ch) if ch.is_ascii_digit() => i += 1,
                Some(b'.') if b.get(i + 1).is_some_and(|d| d.is_ascii_digit()) => {
                    st = St::Frac;
                    i += 1;
                }
                Some(ch) if word(ch) => {
                    st = St::Suffix;
                    i += 1;
                }
                _ => {
                    emit(&mut out, start, i, TokenClass::NumberLiteral);
                    st = St::Idle;
                }
            },
            St::Frac | St::Suffix => match c {
                Some(ch) if ch.is_ascii_digit() => i += 1,
                Some(ch) if word(ch) => {
                    st = St::Suffix;
                    i += 1;
                }
                _ => {
                    emit(&mut out, start, i, TokenClass::NumberLiteral);
                    st = St::Idle;
                }
            },
            St::Space => match c {
                Some(ch) if ch.is_ascii_whitespace() => i += 1,
                _ => {
                    emit(&mut out, start, i, TokenClass::Whitespace);
                    st = St::Idle;
                }
            },
        }
    }
    out
}

/// Checks the tiling invariant; returns a description of the first violation.
pub fn check_tiling(src: &str, spans: &[(usize, usize, TokenClass)]) -> Result<(), String> {
    let mut pos = 0;
    let mut rebuilt = String::new();
    for &(s, e, _) in spans {
        if s != pos {
            return Err(format!("span starts at {s}, expected {pos}"));
        }
        if e <= s || e > src.len() {
            return Err(format!("bad span [{s}, {e}) for length {}", src.len()));
        }
        rebuilt.push_str(&src[s..e]);
        pos = e;
    }
    if pos != src.len() {
        return Err(format!("spans end at {pos}, source has {} bytes", src.len()));
    }
    if rebuilt != src {
        return Err("concatenated spans differ from source".into());
    }
    Ok(())
}

// ---------------------------------------------------------------- kernels

pub fn cosine_oracle(a: &[f64], b: &[f64]) -> f64 {
    let mut dot = 0.0;
    let mut aa = 0.0;
    let mut bb = 0.0;
    for i in 0..a.len() {
        dot += a[i] * b[i];
        aa += a[i] * a[i];
        bb += b[i] * b[i];
    }
    dot / (aa.sqrt() * bb.sqrt())
}

/// Pixel-by-pixel bilinear resize straight from the coordinate formula.
pub fn resize_oracle(img: &RasterImage, tw: u32, th: u32) -> Vec<u8> {
    let (sw, sh) = (img.width() as f64, img.height() as f64);
    let mut out = Vec::new();
    for y in 0..th {
        for x in 0..tw {
            let mut sx = (x as f64 + 0.5) * (sw / tw as f64) - 0.5;
            let mut sy = (y as f64 + 0.5) * (sh / th as f64) - 0.5;
            sx = sx.max(0.0).min(sw - 1.0);
            sy = sy.max(0.0).min(sh - 1.0);
            let x0 = sx.floor();
            let y0 = sy.floor();
            let x1 = (x0 + 1.0).min(sw - 1.0);
            let y1 = (y0 + 1.0).min(sh - 1.0);
            let fx = sx - x0;
            let fy = sy - y0;
            for c in 0..3 {
                let px = |xx: f64, yy: f64| img.pixel(xx as u32, yy as u32).channels()[c] as f64;
                let top = px(x0, y0) * (1.0 - fx) + px(x1, y0) * fx;
                let bot = px(x0, y1) * (1.0 - fx) + px(x1, y1) * fx;
                let v = top * (1.0 - fy) + bot * fy;
                out.push(v.round() as u8);
            }
        }
    }
    out
}

/// Brute-force per-patch mean, summing element by element with `get`.
pub fn patch_mean_oracle(t: &wysiwim::InputTensor) -> Vec<f64> {
    let (h, w) = (t.height(), t.width());
    let (ph, pw) = (h / 8, w / 8);
    let mut out = vec![0.0; 192];
    for c in 0..3 {
        for row in 0..h {
            for col in 0..w {
                out[c * 64 + (row / ph) * 8 + col / pw] += t.get(c, row, col);
            }
        }
    }
    out.iter().map(|s| s / (ph * pw) as f64).collect()
}

// ---------------------------------------------------------------- kNN

/// Sorts every entry by (distance, id), takes k, votes. Distances come from
/// `dist` so exact ties in the metric stay exact ties here.
pub fn knn_oracle(
    entries: &[(String, String, Vec<f64>)],
    query: &[f64],
    k: usize,
    dist: impl Fn(&[f64], &[f64]) -> f64,
) -> String {
    let mut all: Vec<(f64, &str, &str)> = entries
        .iter()
        .map(|(id, label, v)| (dist(v, query), id.as_str(), label.as_str()))
        .collect();
    all.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(b.1)));
    let top = &all[..k];
    let mut labels: Vec<&str> = top.iter().map(|t| t.2).collect();
    labels.sort();
    labels.dedup();
    let mut best: Option<(usize, f64, &str)> = None;
    for l in labels {
        let votes = top.iter().filter(|t| t.2 == l).count();
        let nearest = top.iter().find(|t| t.2 == l).unwrap().0;
        let better = match best {
            None => true,
            Some((bv, bd, _)) => votes > bv || (votes == bv && nearest < bd),
        };
        if better {
            best = Some((votes, nearest, l));
        }
    }
    best.unwrap().2.to_string()
}

// ---------------------------------------------------------------- calibration

/// F1 of the rule `score >= t` by direct counting.
pub fn f1_at(pairs: &[(f64, bool)], t: f64) -> f64 {
    let (mut tp, mut fp, mut fn_) = (0.0, 0.0, 0.0);
    for &(s, y) in pairs {
        match (s >= t, y) {
            (true, true) => tp += 1.0,
            (true, false) => fp += 1.0,
            (false, true) => fn_ += 1.0,
            _ => {}
        }
    }
    let p = if tp + fp > 0.0 { tp / (tp + fp) } else { 0.0 };
    let r = if tp + fn_ > 0.0 { tp / (tp + fn_) } else { 0.0 };
    if p + r > 0.0 {
        2.0 * p * r / (p + r)
    } else {
        0.0
    }
}

/// Every threshold that can change a decision: each distinct score itself
/// plus one value below all of them and one above.
pub fn decision_points(pairs: &[(f64, bool)]) -> Vec<f64> {
    let mut s: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    s.dedup();
    let mut out = vec![s[0] - 1.0, s[s.len() - 1] + 1.0];
    out.extend(s);
    out
}

// ---------------------------------------------------------------- fixtures

pub const SEED_SNIPPETS: &[&str] = &[
    "public int add(int a, int b) {\n    return a + b;\n}\n",
    "public static int max(int[] xs) {\n    int best = xs[0];\n    for (int i = 1; i < xs.length; i++) {\n        if (xs[i] > best) best = xs[i];\n    }\n    return best;\n}\n",
    "String greet(String name) {\n    // say hello\n    return \"Hello, \" + name + \"!\";\n}\n",
    "boolean isEven(long n) {\n    return n % 2 == 0;\n}\n",
    "void swap(int[] arr, int i, int j) {\n    int tmp = arr[i];\n    arr[i] = arr[j];\n    arr[j] = tmp;\n}\n",
    "double average(double[] values) {\n    double sum = 0.0;\n    for (double v : values) {\n        sum += v;\n    }\n    return values.length == 0 ? 0.0 : sum / values.length;\n}\n",
    "int factorial(int n) {\n    if (n <= 1) {\n        return 1;\n    }\n    return n * factorial(n - 1);\n}\n",
    "/* reverse a string */\nString reverse(String s) {\n    StringBuilder sb = new StringBuilder(s);\n    return sb.reverse().toString();\n}\n",
    "int countChar(String s, char c) {\n    int n = 0;\n    for (int i = 0; i < s.length(); i++) {\n        if (s.charAt(i) == c) n++;\n    }\n    return n;\n}\n",
    "boolean contains(int[] xs, int target) {\n    for (int x : xs) {\n        if (x == target) {\n            return true;\n        }\n    }\n    return false;\n}\n",
    "long fib(int n) {\n    long a = 0, b = 1;\n    while (n-- > 0) {\n        long t = a + b;\n        a = b;\n        b = t;\n    }\n    return a;\n}\n",
    "int gcd(int a, int b) {\n    while (b != 0) {\n        int t = a % b;\n        a = b;\n        b = t;\n    }\n    return a;\n}\n",
    "void printAll(java.util.List<String> items) {\n    for (String item : items) {\n        System.out.println(item);\n    }\n}\n",
    "int[] copyOf(int[] src) {\n    int[] dst = new int[src.length];\n    System.arraycopy(src, 0, dst, 0, src.length);\n    return dst;\n}\n",
    "boolean isPalindrome(String s) {\n    int i = 0, j = s.length() - 1;\n    while (i < j) {\n        if (s.charAt(i++) != s.charAt(j--)) return false;\n    }\n    return true;\n}\n",
    "double celsiusToFahrenheit(double c) {\n    return c * 9.0 / 5.0 + 32.0;\n}\n",
    "int sumDigits(int n) {\n    int s = 0;\n    while (n > 0) {\n        s += n % 10;\n        n /= 10;\n    }\n    return s;\n}\n",
    "String repeat(char c, int times) {\n    char[] buf = new char[times];\n    java.util.Arrays.fill(buf, c);\n    return new String(buf);\n}\n",
    "boolean isPrime(int n) {\n    if (n < 2) return false;\n    for (int d = 2; d * d <= n; d++) {\n        if (n % d == 0) return false;\n    }\n    return true;\n}\n",
    "int indexOf(int[] xs, int v) {\n    for (int i = 0; i < xs.length; i++) {\n        if (xs[i] == v) return i;\n    }\n    return -1;\n}\n",
];

/// Consistently renames identifiers (whole words only) via `map`.
pub fn rename_identifiers(src: &str, map: &[(&str, &str)]) -> String {
    let mut out = String::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'_' || bytes[i].is_ascii_alphabetic() {
            let s = i;
            while i < bytes.len() && (bytes[i] == b'_' || bytes[i].is_ascii_alphanumeric()) {
                i += 1;
            }
            let w = &src[s..i];
            out.push_str(map.iter().find(|(a, _)| *a == w).map_or(w, |(_, b)| b));
        } else {
            out.push(bytes[i] as char);
            i += 1;
        }
    }
    out
}

/// Re-indents with tabs and collapses runs of spaces.
pub fn reflow_whitespace(src: &str) -> String {
    src.lines()
        .map(|l| {
            let body = l.trim_start();
            let depth = (l.len() - body.len()) / 4;
            let mut collapsed = String::new();
            let mut prev_space = false;
            for ch in body.chars() {
                if ch == ' ' {
                    if !prev_space {
                        collapsed.push(ch);
                    }
                    prev_space = true;
                } else {
                    collapsed.push(ch);
                    prev_space = false;
                }
            }
            format!("{}{}", "\t".repeat(depth), collapsed)
        })
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

/// A snippet derived from seed `i`, varied so every index gives distinct text.
pub fn corpus_snippet(i: usize) -> String {
    let seed = SEED_SNIPPETS[i % SEED_SNIPPETS.len()];
    match i / SEED_SNIPPETS.len() {
        0 => seed.to_string(),
        n => format!("// variant {n}\n{}", reflow_whitespace(seed)),
    }
}

pub struct Corpus {
    pub dir: PathBuf,
    pub manifest: PathBuf,
    pub ids: Vec<String>,
}

/// Writes `(id, label, source)` snippets plus a JSONL manifest into `dir`.
pub fn write_corpus(dir: &Path, items: &[(String, Option<String>, String)]) -> Corpus {
    let src_dir = dir.join("src");
    fs::create_dir_all(&src_dir).unwrap();
    let mut manifest = String::new();
    for (id, label, text) in items {
        let rel = format!("src/{id}.java");
        fs::write(dir.join(&rel), text).unwrap();
        let mut entry = BTreeMap::new();
        entry.insert("id", serde_json::Value::from(id.as_str()));
        entry.insert("path", rel.into());
        entry.insert("language", "java".into());
        if let Some(l) = label {
            entry.insert("label", l.as_str().into());
        }
        manifest.push_str(&serde_json::to_string(&entry).unwrap());
        manifest.push('\n');
    }
    let path = dir.join("manifest.jsonl");
    fs::write(&path, manifest).unwrap();
    Corpus {
        dir: dir.to_path_buf(),
        manifest: path,
        ids: items.iter().map(|i| i.0.clone()).collect(),
    }
}

/// `n` distinct snippets with ids `s000`, `s001`, ...
pub fn numbered_corpus(dir: &Path, n: usize) -> Corpus {
    let items: Vec<_> = (0..n)
        .map(|i| (format!("s{i:03}"), None, corpus_snippet(i)))
        .collect();
    write_corpus(dir, &items)
}

/// Runs the CLI in-process; returns the exit code.
pub fn cli(args: &[&str]) -> i32 {
    let mut full = vec!["wysiwim"];
    full.extend_from_slice(args);
    wysiwim::cli::run(full)
}

pub fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}
