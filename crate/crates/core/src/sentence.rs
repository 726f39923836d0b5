//! Rule-based sentence splitting with exact character offsets.
//!
//! A boundary falls after `.`, `?` or `!` (plus any closing quotes or
//! brackets) when the next non-space character is an uppercase letter or a
//! digit, unless the token carrying the period is a known abbreviation or a
//! run of initials such as `J.` or `U.S.`.

use alloc::string::String;
use alloc::vec::Vec;

const ABBREVIATIONS: &[&str] = &[
    "mr.", "mrs.", "ms.", "dr.", "prof.", "sr.", "jr.", "st.", "mt.", "ft.", "ph.d.", "e.g.",
    "i.e.", "vs.", "cf.", "no.", "nos.", "gen.", "col.", "lt.", "sgt.", "capt.", "rev.", "hon.",
    "gov.", "sen.", "rep.", "jan.", "feb.", "mar.", "apr.", "jun.", "jul.", "aug.", "sep.",
    "sept.", "oct.", "nov.", "dec.", "approx.", "ca.", "fig.", "vol.", "op.",
];

fn is_closer(c: char) -> bool {
    matches!(c, '"' | '\'' | ')' | ']' | '}' | '\u{2019}' | '\u{201d}' | '\u{00bb}')
}

// `A.`, `U.S.`, `e.g.`: one or more single-letter groups, each followed by a period.
fn is_initials(token: &str) -> bool {
    let mut chars = token.chars();
    let mut groups = 0;
    while let Some(c) = chars.next() {
        if !c.is_alphabetic() || chars.next() != Some('.') {
            return false;
        }
        groups += 1;
    }
    groups > 0
}

fn is_abbreviation(token: &str) -> bool {
    let token = token.trim_start_matches(|c: char| !c.is_alphanumeric());
    if token.is_empty() {
        return false;
    }
    let lower = token.to_lowercase();
    ABBREVIATIONS.contains(&lower.as_str()) || is_initials(token)
}

/// Split `paragraph` into `(sentence text, char offset in paragraph)` pairs.
///
/// Sentences are trimmed of surrounding whitespace and never empty; the
/// characters between them are whitespace only.
pub fn split_sentences(paragraph: &str) -> Vec<(String, usize)> {
    let chars: Vec<char> = paragraph.chars().collect();
    let n = chars.len();
    let mut out = Vec::new();
    let mut start = 0;
    let mut i = 0;

    while i < n {
        if matches!(chars[i], '.' | '?' | '!') {
            let mut end = i + 1;
            while end < n && (matches!(chars[end], '.' | '?' | '!') || is_closer(chars[end])) {
                end += 1;
            }
            let mut next = end;
            while next < n && chars[next].is_whitespace() {
                next += 1;
            }
            let boundary = next > end
                && next < n
                && (chars[next].is_uppercase() || chars[next].is_ascii_digit())
                && !(chars[i] == '.' && ends_with_abbreviation(&chars[start..=i]));
            if boundary {
                push_trimmed(&chars, start, end, &mut out);
                start = next;
                i = next;
                continue;
            }
            i = end;
            continue;
        }
        i += 1;
    }
    push_trimmed(&chars, start, n, &mut out);
    out
}

fn ends_with_abbreviation(segment: &[char]) -> bool {
    let tok_start = segment
        .iter()
        .rposition(|c| c.is_whitespace())
        .map_or(0, |p| p + 1);
    let token: String = segment[tok_start..].iter().collect();
    is_abbreviation(&token)
}

fn push_trimmed(chars: &[char], mut start: usize, mut end: usize, out: &mut Vec<(String, usize)>) {
    while start < end && chars[start].is_whitespace() {
        start += 1;
    }
    while end > start && chars[end - 1].is_whitespace() {
        end -= 1;
    }
    if start < end {
        out.push((chars[start..end].iter().collect(), start));
    }
}
