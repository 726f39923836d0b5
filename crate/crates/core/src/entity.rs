//! Named-entity spans and a small rule-based annotator.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::text::char_slice;

/// An entity mention. Offsets are sentence-relative scalar-value offsets,
/// `end` exclusive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Entity {
    pub surface: String,
    #[cfg_attr(feature = "serde", serde(rename = "start"))]
    pub char_start: usize,
    #[cfg_attr(feature = "serde", serde(rename = "end"))]
    pub char_end: usize,
    pub label: String,
}

impl Entity {
    pub fn new(surface: impl Into<String>, char_start: usize, char_end: usize, label: impl Into<String>) -> Self {
        Entity {
            surface: surface.into(),
            char_start,
            char_end,
            label: label.into(),
        }
    }

    /// Checks `char_start < char_end` and that the span slices `text` to `surface`.
    pub fn is_valid_in(&self, text: &str) -> bool {
        self.char_start < self.char_end
            && char_slice(text, self.char_start, self.char_end) == Some(self.surface.as_str())
    }

    /// Case-insensitive surface equality, ignoring labels.
    pub fn same_surface(&self, other: &Entity) -> bool {
        surface_eq(&self.surface, &other.surface)
    }

    /// Entity identity used for retrieval: same surface ignoring case and same label.
    pub fn matches(&self, other: &Entity) -> bool {
        self.label == other.label && self.same_surface(other)
    }
}

pub(crate) fn surface_eq(a: &str, b: &str) -> bool {
    a == b || a.to_lowercase() == b.to_lowercase()
}

/// Word lists per label, matched case-sensitively on word boundaries.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct Gazetteer {
    pub entries: BTreeMap<String, Vec<String>>,
}

impl Gazetteer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, label: &str, phrase: &str) {
        self.entries
            .entry(label.to_string())
            .or_default()
            .push(phrase.to_string());
    }

    pub fn with(mut self, label: &str, phrases: &[&str]) -> Self {
        for p in phrases {
            self.insert(label, p);
        }
        self
    }
}

const MONTHS: &[&str] = &[
    "January", "February", "March", "April", "May", "June", "July", "August", "September",
    "October", "November", "December",
];

const CURRENCY: &[char] = &['$', '€', '£', '¥'];

// Lower rank wins among equal spans.
const RANK_GAZETTEER: u8 = 0;
const RANK_MONEY: u8 = 1;
const RANK_PERCENT: u8 = 2;
const RANK_DATE: u8 = 3;
const RANK_CARDINAL: u8 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
struct Candidate {
    start: usize,
    end: usize,
    rank: u8,
    label: String,
}

/// Deterministic stand-in for a statistical NER system.
///
/// Finds gazetteer phrases, years and `Month DD, YYYY` dates, standalone
/// integers, percentages and currency amounts. Overlaps are resolved left to
/// right, longest first; ties between rules go to the more specific one.
#[derive(Debug, Clone, Default)]
pub struct HeuristicAnnotator {
    gazetteer: Vec<(Vec<char>, String)>,
}

impl HeuristicAnnotator {
    pub fn new(gazetteer: &Gazetteer) -> Self {
        let mut phrases: Vec<(Vec<char>, String)> = gazetteer
            .entries
            .iter()
            .flat_map(|(label, words)| {
                words
                    .iter()
                    .filter(|w| !w.is_empty())
                    .map(move |w| (w.chars().collect(), label.clone()))
            })
            .collect();
        phrases.sort();
        phrases.dedup_by(|a, b| a.0 == b.0);
        HeuristicAnnotator { gazetteer: phrases }
    }

    pub fn annotate(&self, text: &str) -> Vec<Entity> {
        let chars: Vec<char> = text.chars().collect();
        let mut cands = Vec::new();
        self.gazetteer_hits(&chars, &mut cands);
        number_hits(&chars, &mut cands);
        long_date_hits(&chars, &mut cands);

        cands.sort_by(|a, b| {
            a.start
                .cmp(&b.start)
                .then((b.end - b.start).cmp(&(a.end - a.start)))
                .then(a.rank.cmp(&b.rank))
                .then(a.label.cmp(&b.label))
        });

        let mut out = Vec::new();
        let mut cursor = 0;
        for c in cands {
            if c.start < cursor {
                continue;
            }
            cursor = c.end;
            out.push(Entity {
                surface: chars[c.start..c.end].iter().collect(),
                char_start: c.start,
                char_end: c.end,
                label: c.label,
            });
        }
        out
    }

    fn gazetteer_hits(&self, chars: &[char], out: &mut Vec<Candidate>) {
        for start in 0..chars.len() {
            if start > 0 && chars[start - 1].is_alphanumeric() {
                continue;
            }
            for (phrase, label) in &self.gazetteer {
                let end = start + phrase.len();
                if end <= chars.len()
                    && chars[start..end] == phrase[..]
                    && !chars.get(end).is_some_and(|c| c.is_alphanumeric())
                {
                    out.push(Candidate {
                        start,
                        end,
                        rank: RANK_GAZETTEER,
                        label: label.clone(),
                    });
                }
            }
        }
    }
}

/// Maximal run of digits with single `.` or `,` between digits.
fn scan_number(chars: &[char], start: usize) -> usize {
    let mut end = start;
    while end < chars.len() {
        let separator = matches!(chars[end], '.' | ',')
            && end > start
            && chars.get(end + 1).is_some_and(|c| c.is_ascii_digit());
        if !(chars[end].is_ascii_digit() || separator) {
            break;
        }
        end += 1;
    }
    end
}

fn is_grouped_integer(tok: &[char]) -> bool {
    if tok.contains(&'.') {
        return false;
    }
    let groups: Vec<&[char]> = tok.split(|&c| c == ',').collect();
    groups.len() == 1
        || (!groups[0].is_empty()
            && groups[0].len() <= 3
            && groups[1..].iter().all(|g| g.len() == 3))
}

fn year_value(tok: &[char]) -> Option<u32> {
    if tok.len() != 4 || !tok.iter().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let v = tok.iter().fold(0u32, |acc, c| acc * 10 + c.to_digit(10).unwrap_or(0));
    (1000..=2999).contains(&v).then_some(v)
}

fn number_hits(chars: &[char], out: &mut Vec<Candidate>) {
    let mut i = 0;
    while i < chars.len() {
        let prev_ok = i == 0 || !(chars[i - 1].is_alphanumeric() || matches!(chars[i - 1], '.' | ','));
        if !chars[i].is_ascii_digit() || !prev_ok {
            i += 1;
            continue;
        }
        let end = scan_number(chars, i);
        let tok = &chars[i..end];
        let next = chars.get(end).copied();
        let standalone = !next.is_some_and(|c| c.is_alphanumeric());

        if next == Some('%') {
            out.push(Candidate { start: i, end: end + 1, rank: RANK_PERCENT, label: "PERCENT".into() });
        }
        if i > 0 && CURRENCY.contains(&chars[i - 1]) && (i < 2 || !chars[i - 2].is_alphanumeric()) && standalone {
            out.push(Candidate { start: i - 1, end, rank: RANK_MONEY, label: "MONEY".into() });
        }
        if standalone && year_value(tok).is_some() {
            out.push(Candidate { start: i, end, rank: RANK_DATE, label: "DATE".into() });
        }
        if standalone && is_grouped_integer(tok) {
            out.push(Candidate { start: i, end, rank: RANK_CARDINAL, label: "CARDINAL".into() });
        }
        i = end.max(i + 1);
    }
}

// "Month DD, YYYY"
fn long_date_hits(chars: &[char], out: &mut Vec<Candidate>) {
    for start in 0..chars.len() {
        if start > 0 && chars[start - 1].is_alphanumeric() {
            continue;
        }
        for month in MONTHS {
            let m: Vec<char> = month.chars().collect();
            let mut p = start + m.len();
            if p > chars.len() || chars[start..p] != m[..] || chars.get(p) != Some(&' ') {
                continue;
            }
            p += 1;
            let day_end = {
                let mut e = p;
                while e < chars.len() && e - p < 2 && chars[e].is_ascii_digit() {
                    e += 1;
                }
                e
            };
            if day_end == p || chars.get(day_end).is_some_and(|c| c.is_ascii_digit()) {
                continue;
            }
            let day: u32 = chars[p..day_end].iter().fold(0, |a, c| a * 10 + c.to_digit(10).unwrap_or(0));
            if !(1..=31).contains(&day) || chars.get(day_end) != Some(&',') || chars.get(day_end + 1) != Some(&' ') {
                continue;
            }
            let y0 = day_end + 2;
            let y1 = y0 + 4;
            if y1 <= chars.len()
                && year_value(&chars[y0..y1]).is_some()
                && !chars.get(y1).is_some_and(|c| c.is_alphanumeric())
            {
                out.push(Candidate { start, end: y1, rank: RANK_DATE, label: "DATE".into() });
            }
        }
    }
}
