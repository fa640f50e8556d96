//! Cut-and-paste rewrite rules on edge words, and the traces that record them.
//!
//! Every rule addresses letters by absolute index into the stored sequence
//! (positions are read cyclically) and fails with [`RewriteError::NotApplicable`]
//! rather than silently returning its input.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::normalize::{glue_singles, hive_crosscap, hive_handle, hive_hole};
use crate::word::{Character, Label, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("{rule} not applicable: {reason}")]
    NotApplicable { rule: &'static str, reason: String },
    #[error("replay mismatch at step {step} ({field}): expected `{expected}`, got `{found}`")]
    ReplayMismatch {
        step: usize,
        field: &'static str,
        expected: Word,
        found: Word,
    },
}

pub(crate) fn not_applicable(rule: &'static str, reason: impl Into<String>) -> RewriteError {
    RewriteError::NotApplicable {
        rule,
        reason: reason.into(),
    }
}

fn require_character(
    w: &Word,
    rule: &'static str,
    label: &Label,
    want: Character,
) -> Result<(usize, usize), RewriteError> {
    let table = w.pairing();
    let p = table
        .get(label)
        .ok_or_else(|| not_applicable(rule, format!("label `{label}` not in word")))?;
    if p.character != want {
        return Err(not_applicable(
            rule,
            format!("label `{label}` is {:?}, need {want:?}", p.character),
        ));
    }
    Ok((p.first, p.second.expect("paired label")))
}

/// Removes an adjacent inverse pair `x x'` (or `x' x`) at cyclic positions
/// `pos`, `pos + 1`.
pub fn cancel(w: &Word, pos: usize) -> Result<Word, RewriteError> {
    let n = w.len();
    if n < 2 || pos >= n {
        return Err(not_applicable(
            "cancel",
            format!("position {pos} out of range"),
        ));
    }
    let next = (pos + 1) % n;
    let (x, y) = (w.at(pos), w.at(next));
    if x.label != y.label || x.inverted == y.inverted {
        return Err(not_applicable(
            "cancel",
            format!("`{x} {y}` is not an inverse pair"),
        ));
    }
    let letters = w
        .letters()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != pos && *i != next)
        .map(|(_, l)| l.clone())
        .collect();
    Ok(Word::from_letters_unchecked(letters))
}

/// `a β β' a'` becomes `a β' β a'` for a discord label.
///
/// The enclosed subword runs cyclically from the positive occurrence of
/// `label` to the inverted one; `split` is the absolute index of the first
/// letter of `β'` (the index of the closing occurrence when `β'` is empty).
pub fn transpose_discord(w: &Word, label: &Label, split: usize) -> Result<Word, RewriteError> {
    const RULE: &str = "transpose_discord";
    let (i, j) = require_character(w, RULE, label, Character::Discord)?;
    let n = w.len();
    let (open, close) = if w.letters()[i].inverted {
        (j, i)
    } else {
        (i, j)
    };
    let enclosed = (close + n - open - 1) % n;
    if split >= n {
        return Err(not_applicable(RULE, format!("split {split} out of range")));
    }
    let offset = (split + n - open - 1) % n;
    if offset > enclosed {
        return Err(not_applicable(
            RULE,
            format!("split {split} is not between the occurrences of `{label}`"),
        ));
    }
    let inner = w.cyclic_slice(open + 1, enclosed);
    let (beta, beta_prime) = inner.split_at(offset);
    let mut letters = w.letters().to_vec();
    for (k, l) in beta_prime.iter().chain(beta).enumerate() {
        letters[(open + 1 + k) % n] = l.clone();
    }
    Ok(Word::from_letters_unchecked(letters))
}

/// `α a β a γ` becomes `α β' a a γ` (with `β'` the inverse of `β`) for a
/// concord label. A pair written `a' … a'` is renamed to its inverse, so
/// the output block always reads `a a`.
pub fn fold_concord(w: &Word, label: &Label) -> Result<Word, RewriteError> {
    let (i, j) = require_character(w, "fold_concord", label, Character::Concord)?;
    let ls = w.letters();
    let beta = Word::from_letters_unchecked(ls[i + 1..j].to_vec()).invert();
    let a = Letter::positive(label.clone());
    let letters = ls[..i]
        .iter()
        .cloned()
        .chain(beta.into_letters())
        .chain([a.clone(), a])
        .chain(ls[j + 1..].iter().cloned())
        .collect();
    Ok(Word::from_letters_unchecked(letters))
}

/// Length of the crosscap (`x x`) or handle (`x y x' y'`) block starting at
/// cyclic position `start`, if there is one.
pub fn block_at(w: &Word, start: usize) -> Option<usize> {
    let n = w.len();
    if n < 2 || start >= n {
        return None;
    }
    let (x, y) = (w.at(start), w.at(start + 1));
    if x == y {
        return Some(2);
    }
    if n >= 4
        && x.label != y.label
        && *w.at(start + 2) == x.inverse()
        && *w.at(start + 3) == y.inverse()
    {
        return Some(4);
    }
    None
}

/// Moves a crosscap or handle block so that it sits immediately before the
/// letter currently at `dest`.
pub fn slide_block(w: &Word, block_start: usize, dest: usize) -> Result<Word, RewriteError> {
    const RULE: &str = "slide_block";
    let n = w.len();
    let len = block_at(w, block_start)
        .ok_or_else(|| not_applicable(RULE, format!("no block at position {block_start}")))?;
    if dest >= n {
        return Err(not_applicable(
            RULE,
            format!("destination {dest} out of range"),
        ));
    }
    if dest == block_start || dest == (block_start + len) % n {
        return Ok(w.clone());
    }
    if (dest + n - block_start) % n < len {
        return Err(not_applicable(RULE, "destination lies inside the block"));
    }
    let in_block = |i: usize| (i + n - block_start) % n < len;
    let mut rest: Vec<Letter> = Vec::with_capacity(n);
    let mut insert_at = 0;
    for (i, l) in w.letters().iter().enumerate() {
        if in_block(i) {
            continue;
        }
        if i == dest {
            insert_at = rest.len();
        }
        rest.push(l.clone());
    }
    let block = w.cyclic_slice(block_start, len);
    rest.splice(insert_at..insert_at, block);
    Ok(Word::from_letters_unchecked(rest))
}

/// `α a β b γ a' δ b' ε` becomes `a b a' b' ε α δ γ β` for two discord
/// labels whose occurrences alternate, read in storage order.
pub fn interleave_to_handle(w: &Word, a: &Label, b: &Label) -> Result<Word, RewriteError> {
    const RULE: &str = "interleave_to_handle";
    let (i1, i2) = require_character(w, RULE, a, Character::Discord)?;
    let (j1, j2) = require_character(w, RULE, b, Character::Discord)?;
    if !(i1 < j1 && j1 < i2 && i2 < j2) {
        return Err(not_applicable(
            RULE,
            format!("`{a}` and `{b}` do not read a…b…a…b"),
        ));
    }
    let ls = w.letters();
    let (x, y) = (ls[i1].clone(), ls[j1].clone());
    let head = [x.clone(), y.clone(), x.inverse(), y.inverse()];
    let letters = head
        .into_iter()
        .chain(ls[j2 + 1..].iter().cloned()) // ε
        .chain(ls[..i1].iter().cloned()) // α
        .chain(ls[i2 + 1..j2].iter().cloned()) // δ
        .chain(ls[j1 + 1..i2].iter().cloned()) // γ
        .chain(ls[i1 + 1..j1].iter().cloned()) // β
        .collect();
    Ok(Word::from_letters_unchecked(letters))
}

/// A rule together with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", content = "params", rename_all = "snake_case")]
pub enum Rule {
    Cancel { pos: usize },
    TransposeDiscord { label: Label, split: usize },
    FoldConcord { label: Label },
    SlideBlock { block_start: usize, dest: usize },
    InterleaveToHandle { a: Label, b: Label },
    Rotate { k: i64 },
    Invert {},
    GlueSingles { pos: usize },
    HiveHole { label: Label },
    HiveCrosscap { pos: usize },
    HiveHandle { pos: usize },
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Cancel { .. } => "cancel",
            Rule::TransposeDiscord { .. } => "transpose_discord",
            Rule::FoldConcord { .. } => "fold_concord",
            Rule::SlideBlock { .. } => "slide_block",
            Rule::InterleaveToHandle { .. } => "interleave_to_handle",
            Rule::Rotate { .. } => "rotate",
            Rule::Invert {} => "invert",
            Rule::GlueSingles { .. } => "glue_singles",
            Rule::HiveHole { .. } => "hive_hole",
            Rule::HiveCrosscap { .. } => "hive_crosscap",
            Rule::HiveHandle { .. } => "hive_handle",
        }
    }

    pub fn apply(&self, w: &Word) -> Result<Word, RewriteError> {
        match self {
            Rule::Cancel { pos } => cancel(w, *pos),
            Rule::TransposeDiscord { label, split } => transpose_discord(w, label, *split),
            Rule::FoldConcord { label } => fold_concord(w, label),
            Rule::SlideBlock { block_start, dest } => slide_block(w, *block_start, *dest),
            Rule::InterleaveToHandle { a, b } => interleave_to_handle(w, a, b),
            Rule::Rotate { k } => Ok(w.rotate(*k)),
            Rule::Invert {} => Ok(w.invert()),
            Rule::GlueSingles { pos } => glue_singles(w, *pos),
            Rule::HiveHole { label } => hive_hole(w, label),
            Rule::HiveCrosscap { pos } => hive_crosscap(w, *pos),
            Rule::HiveHandle { pos } => hive_handle(w, *pos),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        match self {
            Rule::Cancel { pos }
            | Rule::GlueSingles { pos }
            | Rule::HiveCrosscap { pos }
            | Rule::HiveHandle { pos } => write!(f, " pos={pos}"),
            Rule::TransposeDiscord { label, split } => write!(f, " label={label} split={split}"),
            Rule::FoldConcord { label } | Rule::HiveHole { label } => write!(f, " label={label}"),
            Rule::SlideBlock { block_start, dest } => {
                write!(f, " block_start={block_start} dest={dest}")
            }
            Rule::InterleaveToHandle { a, b } => write!(f, " a={a} b={b}"),
            Rule::Rotate { k } => write!(f, " k={k}"),
            Rule::Invert {} => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteStep {
    #[serde(flatten)]
    pub rule: Rule,
    pub before: Word,
    pub after: Word,
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |w: &Word| {
            if w.is_empty() {
                "(empty)".to_string()
            } else {
                w.to_string()
            }
        };
        write!(
            f,
            "{}: {} -> {}",
            self.rule,
            show(&self.before),
            show(&self.after)
        )
    }
}

/// An ordered derivation; each step starts where the previous one ended.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Trace {
    steps: Vec<RewriteStep>,
}

impl Trace {
    pub fn new() -> Self {
        Trace::default()
    }

    pub fn steps(&self) -> &[RewriteStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Applies `rule` to `w`, records the step and returns the result.
    pub fn apply(&mut self, w: &Word, rule: Rule) -> Result<Word, RewriteError> {
        let after = rule.apply(w)?;
        self.steps.push(RewriteStep {
            rule,
            before: w.clone(),
            after: after.clone(),
        });
        Ok(after)
    }

    /// The word the trace ends on, given its starting word.
    pub fn result(&self, start: &Word) -> Word {
        self.steps
            .last()
            .map_or_else(|| start.clone(), |s| s.after.clone())
    }
}

impl From<Vec<RewriteStep>> for Trace {
    fn from(steps: Vec<RewriteStep>) -> Self {
        Trace { steps }
    }
}

/// Re-executes every step of `trace` from `w`, checking each recorded
/// intermediate word.
pub fn replay(w: &Word, trace: &Trace) -> Result<Word, RewriteError> {
    let mut current = w.clone();
    for (step_no, step) in trace.steps.iter().enumerate() {
        if step.before != current {
            return Err(RewriteError::ReplayMismatch {
                step: step_no,
                field: "before",
                expected: step.before.clone(),
                found: current,
            });
        }
        let next = step.rule.apply(&current)?;
        if next != step.after {
            return Err(RewriteError::ReplayMismatch {
                step: step_no,
                field: "after",
                expected: step.after.clone(),
                found: next,
            });
        }
        current = next;
    }
    Ok(current)
}
