//! Reduction of an edge word to its normal form.
//!
//! The working word is rewritten in four phases:
//!
//! 1. every concord pair is folded into a crosscap block `a a`, which is
//!    removed and counted;
//! 2. every pair of interleaved discord pairs is turned into a handle block
//!    `a b a' b'`, which is removed and counted;
//! 3. if any crosscap was found, each handle counts as two crosscaps;
//! 4. what is left has only discord pairs that never cross, plus boundary
//!    letters. Adjacent boundary letters are glued, innermost `a a'` pairs
//!    are cancelled and innermost `a x a'` holes are removed and counted.
//!
//! Every rewrite is recorded so the whole derivation can be replayed.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rewrite::{block_at, not_applicable, RewriteError, Rule, Trace};
use crate::word::{Character, Label, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceKind {
    Sphere,
    Orientable,
    Nonorientable,
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SurfaceKind::Sphere => "sphere",
            SurfaceKind::Orientable => "orientable",
            SurfaceKind::Nonorientable => "nonorientable",
        })
    }
}

/// A classified surface: sphere, connected sum of `genus` tori, or of
/// `genus` projective planes, with `boundary` holes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NormalForm {
    kind: SurfaceKind,
    genus: u32,
    boundary: u32,
}

impl NormalForm {
    /// Returns `None` when the genus does not fit the kind.
    pub fn new(kind: SurfaceKind, genus: u32, boundary: u32) -> Option<Self> {
        let ok = match kind {
            SurfaceKind::Sphere => genus == 0,
            SurfaceKind::Orientable | SurfaceKind::Nonorientable => genus >= 1,
        };
        ok.then_some(NormalForm {
            kind,
            genus,
            boundary,
        })
    }

    pub fn sphere(boundary: u32) -> Self {
        NormalForm {
            kind: SurfaceKind::Sphere,
            genus: 0,
            boundary,
        }
    }

    /// Assembles the form from crosscap, handle and hole counts.
    pub fn from_counts(crosscaps: u32, handles: u32, holes: u32) -> Self {
        let (kind, genus) = if crosscaps > 0 {
            (SurfaceKind::Nonorientable, crosscaps + 2 * handles)
        } else if handles > 0 {
            (SurfaceKind::Orientable, handles)
        } else {
            (SurfaceKind::Sphere, 0)
        };
        NormalForm {
            kind,
            genus,
            boundary: holes,
        }
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn boundary(&self) -> u32 {
        self.boundary
    }

    pub fn is_orientable(&self) -> bool {
        self.kind != SurfaceKind::Nonorientable
    }

    /// Euler characteristic of the surface.
    pub fn chi(&self) -> i64 {
        let (g, b) = (i64::from(self.genus), i64::from(self.boundary));
        match self.kind {
            SurfaceKind::Sphere => 2 - b,
            SurfaceKind::Orientable => 2 - 2 * g - b,
            SurfaceKind::Nonorientable => 2 - g - b,
        }
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "kind={} genus={} boundary={} chi={}",
            self.kind,
            self.genus,
            self.boundary,
            self.chi()
        )
    }
}

#[derive(Serialize, Deserialize)]
struct NormalFormRepr {
    kind: SurfaceKind,
    genus: u32,
    boundary: u32,
    chi: i64,
}

impl Serialize for NormalForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        NormalFormRepr {
            kind: self.kind,
            genus: self.genus,
            boundary: self.boundary,
            chi: self.chi(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NormalForm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let r = NormalFormRepr::deserialize(deserializer)?;
        let f = NormalForm::new(r.kind, r.genus, r.boundary)
            .ok_or_else(|| serde::de::Error::custom("genus does not match kind"))?;
        if f.chi() != r.chi {
            return Err(serde::de::Error::custom(
                "chi does not match kind, genus and boundary",
            ));
        }
        Ok(f)
    }
}

/// Replaces two adjacent boundary letters at cyclic positions `pos`,
/// `pos + 1` by one fresh boundary letter.
pub fn glue_singles(w: &Word, pos: usize) -> Result<Word, RewriteError> {
    const RULE: &str = "glue_singles";
    let n = w.len();
    if n < 2 || pos >= n {
        return Err(not_applicable(RULE, format!("position {pos} out of range")));
    }
    let next = (pos + 1) % n;
    if !w.is_single(&w.at(pos).label) || !w.is_single(&w.at(next).label) {
        return Err(not_applicable(
            RULE,
            format!("positions {pos} and {next} are not both single letters"),
        ));
    }
    let glued = Letter::positive(w.fresh_label('z'));
    let mut letters = w.letters().to_vec();
    letters[pos] = glued;
    letters.remove(next);
    Ok(Word::from_letters_unchecked(letters))
}

/// Removes a hole `a x a'`: a discord pair enclosing exactly one boundary
/// letter on one side. The side running forward from the first stored
/// occurrence is preferred.
pub fn hive_hole(w: &Word, label: &Label) -> Result<Word, RewriteError> {
    const RULE: &str = "hive_hole";
    let table = w.pairing();
    let p = table
        .get(label)
        .ok_or_else(|| not_applicable(RULE, format!("label `{label}` not in word")))?;
    if p.character != Character::Discord {
        return Err(not_applicable(
            RULE,
            format!("label `{label}` is not a discord pair"),
        ));
    }
    let (i, j) = (p.first, p.second.unwrap());
    let n = w.len();
    let single_at = |k: usize| w.is_single(&w.at(k).label);
    let hole = if j == i + 2 && single_at(i + 1) {
        [i, i + 1, j]
    } else if (i + n - j) % n == 2 && single_at(j + 1) {
        [j, (j + 1) % n, i]
    } else {
        return Err(not_applicable(
            RULE,
            format!("`{label}` does not enclose exactly one single letter"),
        ));
    };
    let letters = w
        .letters()
        .iter()
        .enumerate()
        .filter(|(k, _)| !hole.contains(k))
        .map(|(_, l)| l.clone())
        .collect();
    Ok(Word::from_letters_unchecked(letters))
}

fn remove_block(w: &Word, pos: usize, len: usize) -> Word {
    let n = w.len();
    let letters = w
        .letters()
        .iter()
        .enumerate()
        .filter(|(k, _)| (k + n - pos) % n >= len)
        .map(|(_, l)| l.clone())
        .collect();
    Word::from_letters_unchecked(letters)
}

/// Removes the crosscap block `x x` at cyclic position `pos`.
pub fn hive_crosscap(w: &Word, pos: usize) -> Result<Word, RewriteError> {
    match block_at(w, pos) {
        Some(2) => Ok(remove_block(w, pos, 2)),
        _ => Err(not_applicable(
            "hive_crosscap",
            format!("no crosscap at {pos}"),
        )),
    }
}

/// Removes the handle block `x y x' y'` at cyclic position `pos`.
pub fn hive_handle(w: &Word, pos: usize) -> Result<Word, RewriteError> {
    match block_at(w, pos) {
        Some(4) => Ok(remove_block(w, pos, 4)),
        _ => Err(not_applicable("hive_handle", format!("no handle at {pos}"))),
    }
}

/// Two chords `(i1, i2)` and `(j1, j2)` with `i1 < i2`, `j1 < j2` cross.
fn crosses((i1, i2): (usize, usize), (j1, j2): (usize, usize)) -> bool {
    (i1 < j1 && j1 < i2) != (i1 < j2 && j2 < i2)
}

struct Reducer {
    word: Word,
    trace: Trace,
    crosscaps: u32,
    handles: u32,
    holes: u32,
}

impl Reducer {
    fn step(&mut self, rule: Rule) {
        // the reducer only selects rules whose preconditions it has checked
        self.word = self
            .trace
            .apply(&self.word, rule)
            .unwrap_or_else(|e| panic!("normalizer chose an inapplicable rule: {e}"));
    }

    fn pairs(&self) -> Vec<(Label, usize, usize, Character)> {
        self.word
            .pairing()
            .by_first_occurrence()
            .into_iter()
            .filter_map(|(l, p)| p.second.map(|s| (l.clone(), p.first, s, p.character)))
            .collect()
    }

    fn extract_crosscaps(&mut self) {
        while let Some((label, _, second, _)) =
            self.pairs().into_iter().find(|p| p.3 == Character::Concord)
        {
            self.step(Rule::FoldConcord { label });
            // the folded block ends where the second occurrence was
            self.step(Rule::HiveCrosscap { pos: second - 1 });
            self.crosscaps += 1;
        }
    }

    fn extract_handles(&mut self) {
        loop {
            let pairs = self.pairs();
            let found = pairs.iter().find_map(|a| {
                pairs
                    .iter()
                    .find(|b| crosses((a.1, a.2), (b.1, b.2)))
                    .map(|b| (a.0.clone(), b.0.clone()))
            });
            let Some((a, b)) = found else { break };
            self.step(Rule::InterleaveToHandle { a, b });
            self.step(Rule::HiveHandle { pos: 0 });
            self.handles += 1;
        }
    }

    fn glue_all_singles(&mut self) {
        loop {
            let n = self.word.len();
            if n < 2 {
                return;
            }
            let single = |k: usize| self.word.is_single(&self.word.at(k).label);
            let Some(pos) = (0..n).find(|&k| single(k) && single(k + 1)) else {
                return;
            };
            self.step(Rule::GlueSingles { pos });
        }
    }

    fn remove_innermost(&mut self) {
        loop {
            self.glue_all_singles();
            let pairs = self.pairs();
            if pairs.is_empty() {
                if self.word.len() == 1 {
                    self.holes += 1;
                }
                return;
            }
            let n = self.word.len();
            let single = |k: usize| self.word.is_single(&self.word.at(k).label);
            let arc_clear = |from: usize, len: usize| (0..len).all(|k| single(from + k));
            let (label, first, second, _) = pairs
                .into_iter()
                .find(|&(_, i, j, _)| {
                    arc_clear(i + 1, j - i - 1) || arc_clear(j + 1, n - (j - i) - 1)
                })
                .expect("non-crossing pairs always have an innermost one");
            if second == first + 1 {
                self.step(Rule::Cancel { pos: first });
            } else if first == 0 && second == n - 1 {
                self.step(Rule::Cancel { pos: second });
            } else {
                self.step(Rule::HiveHole { label });
                self.holes += 1;
            }
        }
    }
}

/// Classifies `w` and returns the derivation that reduces it.
///
/// The trace ends on the empty word, or on a single boundary letter when
/// the last hole is made only of boundary edges.
pub fn normalize(w: &Word) -> (NormalForm, Trace) {
    let mut r = Reducer {
        word: w.clone(),
        trace: Trace::new(),
        crosscaps: 0,
        handles: 0,
        holes: 0,
    };
    r.extract_crosscaps();
    debug_assert!(!r.word.pairing().has_concord());
    r.extract_handles();
    r.remove_innermost();
    debug_assert!(r.word.len() <= 1);
    (
        NormalForm::from_counts(r.crosscaps, r.handles, r.holes),
        r.trace,
    )
}

/// Reads the normal form back off a normalization trace.
pub fn tally(start: &Word, trace: &Trace) -> NormalForm {
    let count = |f: fn(&Rule) -> bool| trace.steps().iter().filter(|s| f(&s.rule)).count() as u32;
    let crosscaps = count(|r| matches!(r, Rule::HiveCrosscap { .. }));
    let handles = count(|r| matches!(r, Rule::HiveHandle { .. }));
    let residual = u32::from(trace.result(start).len() == 1);
    let holes = count(|r| matches!(r, Rule::HiveHole { .. })) + residual;
    NormalForm::from_counts(crosscaps, handles, holes)
}

/// The standard word for a normal form.
///
/// Handles are `a1 b1 a1' b1' …`, crosscaps `a1 a1 a2 a2 …`. A single hole
/// is a trailing boundary letter `x1`; with more holes, all but the last are
/// written `h1 x1 h1' …` so that they stay separate boundary components.
pub fn canonical_word(f: &NormalForm) -> Word {
    let mut letters = Vec::new();
    let pos = |s: String| Letter::positive(Label::new(s).expect("generated label"));
    for i in 1..=f.genus {
        match f.kind {
            SurfaceKind::Sphere => {}
            SurfaceKind::Orientable => {
                let (a, b) = (pos(format!("a{i}")), pos(format!("b{i}")));
                letters.extend([a.clone(), b.clone(), a.inverse(), b.inverse()]);
            }
            SurfaceKind::Nonorientable => {
                let a = pos(format!("a{i}"));
                letters.extend([a.clone(), a]);
            }
        }
    }
    for i in 1..=f.boundary {
        let x = pos(format!("x{i}"));
        if i < f.boundary {
            let h = pos(format!("h{i}"));
            letters.extend([h.clone(), x, h.inverse()]);
        } else {
            letters.push(x);
        }
    }
    Word::from_letters_unchecked(letters)
}

/// Whether two words describe the same surface.
pub fn equivalent(u: &Word, v: &Word) -> bool {
    normalize(u).0 == normalize(v).0
}
