//! Edge words: the combinatorial polygons the classifier works on.
//!
//! A [`Word`] is a finite sequence of signed edge letters read around the
//! boundary of a polygon. Every label appears once (a free boundary edge) or
//! twice (two sides glued together). Sequences are stored exactly as given;
//! cyclic semantics only enter through [`Word::rotate`], [`Word::invert`] and
//! [`cyclic_equal`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("syntax error at byte {offset}: unexpected {found:?}")]
    Syntax { offset: usize, found: String },
    #[error("label `{label}` occurs {count} times (at most twice allowed)")]
    Multiplicity { label: Label, count: usize },
    #[error("invalid label {0:?}: expected a lowercase letter followed by digits")]
    InvalidLabel(String),
}

/// An edge name: one lowercase ASCII letter optionally followed by digits.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(String);

impl Label {
    pub fn new(name: impl Into<String>) -> Result<Self, WordError> {
        let name = name.into();
        if is_name(&name) {
            Ok(Label(name))
        } else {
            Err(WordError::InvalidLabel(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

fn is_name(s: &str) -> bool {
    let mut bytes = s.bytes();
    matches!(bytes.next(), Some(b'a'..=b'z')) && bytes.all(|b| b.is_ascii_digit())
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Label {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Label::new(s)
    }
}

/// One occurrence of an edge: its label and whether it is traversed backwards.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub label: Label,
    pub inverted: bool,
}

impl Letter {
    pub fn new(label: Label, inverted: bool) -> Self {
        Letter { label, inverted }
    }

    pub fn positive(label: Label) -> Self {
        Letter::new(label, false)
    }

    pub fn inverse(&self) -> Letter {
        Letter::new(self.label.clone(), !self.inverted)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverted {
            write!(f, "{}'", self.label)
        } else {
            write!(f, "{}", self.label)
        }
    }
}

/// How the occurrences of one label relate to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Character {
    /// Occurs once: a boundary edge.
    Single,
    /// Occurs twice with the same orientation.
    Concord,
    /// Occurs twice with opposite orientations.
    Discord,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pairing {
    pub first: usize,
    pub second: Option<usize>,
    pub character: Character,
}

impl Pairing {
    pub fn positions(&self) -> impl Iterator<Item = usize> {
        std::iter::once(self.first).chain(self.second)
    }
}

/// Per-label occurrence data, ordered by label.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PairingTable {
    entries: BTreeMap<Label, Pairing>,
}

impl PairingTable {
    pub fn get(&self, label: &Label) -> Option<&Pairing> {
        self.entries.get(label)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Label, &Pairing)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn character(&self, label: &Label) -> Option<Character> {
        self.entries.get(label).map(|p| p.character)
    }

    /// Entries sorted by the index of their first occurrence.
    pub fn by_first_occurrence(&self) -> Vec<(&Label, &Pairing)> {
        let mut v: Vec<_> = self.entries.iter().collect();
        v.sort_by_key(|(_, p)| p.first);
        v
    }

    pub fn has_concord(&self) -> bool {
        self.entries
            .values()
            .any(|p| p.character == Character::Concord)
    }
}

/// A validated edge word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// Builds a word, rejecting any label that occurs three or more times.
    pub fn new(letters: Vec<Letter>) -> Result<Self, WordError> {
        let mut counts: HashMap<&Label, usize> = HashMap::new();
        for l in &letters {
            *counts.entry(&l.label).or_default() += 1;
        }
        // report the first offending label in reading order
        for l in &letters {
            let count = counts[&l.label];
            if count > 2 {
                return Err(WordError::Multiplicity {
                    label: l.label.clone(),
                    count,
                });
            }
        }
        Ok(Word { letters })
    }

    /// Callers guarantee the multiplicity invariant.
    pub(crate) fn from_letters_unchecked(letters: Vec<Letter>) -> Self {
        let w = Word { letters };
        debug_assert!(Word::new(w.letters.clone()).is_ok(), "invalid word {w}");
        w
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter at cyclic position `i`. Panics on the empty word.
    pub fn at(&self, i: usize) -> &Letter {
        &self.letters[i % self.letters.len()]
    }

    pub fn pairing(&self) -> PairingTable {
        let mut entries: BTreeMap<Label, Pairing> = BTreeMap::new();
        for (i, l) in self.letters.iter().enumerate() {
            match entries.get_mut(&l.label) {
                None => {
                    entries.insert(
                        l.label.clone(),
                        Pairing {
                            first: i,
                            second: None,
                            character: Character::Single,
                        },
                    );
                }
                Some(p) => {
                    p.second = Some(i);
                    p.character = if self.letters[p.first].inverted == l.inverted {
                        Character::Concord
                    } else {
                        Character::Discord
                    };
                }
            }
        }
        PairingTable { entries }
    }

    /// Distinct labels, in order of first appearance.
    pub fn labels(&self) -> Vec<&Label> {
        let mut seen = Vec::new();
        for l in &self.letters {
            if !seen.contains(&&l.label) {
                seen.push(&l.label);
            }
        }
        seen
    }

    pub fn contains_label(&self, label: &Label) -> bool {
        self.letters.iter().any(|l| &l.label == label)
    }

    pub fn is_single(&self, label: &Label) -> bool {
        self.letters.iter().filter(|l| &l.label == label).count() == 1
    }

    /// Cyclic left rotation by `k` (any integer, taken mod the length).
    pub fn rotate(&self, k: i64) -> Word {
        let n = self.letters.len();
        if n == 0 {
            return Word::empty();
        }
        let k = k.rem_euclid(n as i64) as usize;
        let mut letters = self.letters.clone();
        letters.rotate_left(k);
        Word { letters }
    }

    /// Reverses the word and flips every letter.
    pub fn invert(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(Letter::inverse).collect(),
        }
    }

    /// Renames labels through `map`; labels missing from the map are kept.
    ///
    /// The map must be injective on the word's labels.
    pub fn relabel(&self, map: &HashMap<Label, Label>) -> Result<Word, WordError> {
        Word::new(
            self.letters
                .iter()
                .map(|l| Letter::new(map.get(&l.label).unwrap_or(&l.label).clone(), l.inverted))
                .collect(),
        )
    }

    /// A label of the form `{prefix}`, `{prefix}1`, `{prefix}2`, ... not used in the word.
    pub fn fresh_label(&self, prefix: char) -> Label {
        let taken = |s: &str| self.letters.iter().any(|l| l.label.as_str() == s);
        let base = prefix.to_string();
        if !taken(&base) {
            return Label(base);
        }
        (1..)
            .map(|i| format!("{prefix}{i}"))
            .find(|s| !taken(s))
            .map(Label)
            .expect("unbounded search")
    }

    /// The subword at cyclic positions `start, start+1, ...` of length `len`.
    pub fn cyclic_slice(&self, start: usize, len: usize) -> Vec<Letter> {
        (0..len).map(|i| self.at(start + i).clone()).collect()
    }

    /// Key identifying the word up to rotation and inversion, and also up
    /// to renaming of labels when `relabel` is set.
    pub fn cyclic_key(&self, relabel: bool) -> Vec<(u32, bool)> {
        if self.letters.is_empty() {
            return Vec::new();
        }
        let n = self.letters.len();
        let inv = self.invert();
        let mut best: Option<Vec<(u32, bool)>> = None;
        for w in [self, &inv] {
            for k in 0..n {
                let key = rotation_key(&w.letters, k, relabel);
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
        }
        best.unwrap()
    }
}

// Labels become small integers: either their rank in first-appearance order
// (relabel) or their rank in the global label order.
fn rotation_key(letters: &[Letter], k: usize, relabel: bool) -> Vec<(u32, bool)> {
    let n = letters.len();
    let mut names: Vec<&Label> = Vec::new();
    let mut key = Vec::with_capacity(n);
    if relabel {
        for i in 0..n {
            let l = &letters[(k + i) % n];
            let idx = match names.iter().position(|x| *x == &l.label) {
                Some(idx) => idx,
                None => {
                    names.push(&l.label);
                    names.len() - 1
                }
            };
            key.push((idx as u32, l.inverted));
        }
    } else {
        let mut sorted: Vec<&Label> = letters.iter().map(|l| &l.label).collect();
        sorted.sort();
        sorted.dedup();
        for i in 0..n {
            let l = &letters[(k + i) % n];
            let idx = sorted.binary_search(&&l.label).unwrap();
            key.push((idx as u32, l.inverted));
        }
    }
    key
}

/// Equality modulo rotation and inversion, and optionally a relabeling of edges.
pub fn cyclic_equal(u: &Word, v: &Word, up_to_relabel: bool) -> bool {
    if u.len() != v.len() {
        return false;
    }
    if !up_to_relabel {
        let mut lu: Vec<_> = u.letters.iter().map(|l| &l.label).collect();
        let mut lv: Vec<_> = v.letters.iter().map(|l| &l.label).collect();
        lu.sort();
        lv.sort();
        if lu != lv {
            return false;
        }
    }
    u.cyclic_key(up_to_relabel) == v.cyclic_key(up_to_relabel)
}

/// Parses the word grammar: whitespace-separated tokens `name'?`, or a
/// compact run of single-letter tokens such as `abab'`.
pub fn parse(text: &str) -> Result<Word, WordError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Word::empty());
    }
    let lead = text.len() - text.trim_start().len();
    let mut letters = Vec::new();
    if trimmed.contains(char::is_whitespace) || is_token(trimmed) {
        for (offset, token) in tokens(text) {
            if !is_token(token) {
                return Err(WordError::Syntax {
                    offset,
                    found: token.to_string(),
                });
            }
            let (name, inverted) = match token.strip_suffix('\'') {
                Some(name) => (name, true),
                None => (token, false),
            };
            letters.push(Letter::new(Label(name.to_string()), inverted));
        }
    } else {
        let bytes = trimmed.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            if !c.is_ascii_lowercase() {
                let found = trimmed[i..].chars().next().unwrap().to_string();
                return Err(WordError::Syntax {
                    offset: lead + i,
                    found,
                });
            }
            let inverted = bytes.get(i + 1) == Some(&b'\'');
            letters.push(Letter::new(Label((c as char).to_string()), inverted));
            i += if inverted { 2 } else { 1 };
        }
    }
    Word::new(letters)
}

fn is_token(tok: &str) -> bool {
    is_name(tok.strip_suffix('\'').unwrap_or(tok))
}

fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = text;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let skip = rest.len() - rest.trim_start().len();
        rest = &rest[skip..];
        offset += skip;
        if rest.is_empty() {
            return None;
        }
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let tok = (offset, &rest[..end]);
        rest = &rest[end..];
        offset += end;
        Some(tok)
    })
}

/// Whitespace-separated rendering, inverse letters marked with `'`.
pub fn render(w: &Word) -> String {
    w.to_string()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Label::new(s).map_err(serde::de::Error::custom)
    }
}
